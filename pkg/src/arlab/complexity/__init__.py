from .formulas import (
    NEG_INF,
    NrcDiagnostics,
    bracket_bispecial,
    inrc_formula,
    nrc_details,
    nrc_formula,
    s_last_occurrence,
)
from .oracles import (
    LevelStats,
    NrcResult,
    OracleValue,
    WindowCertificate,
    inrc_oracle,
    nrc_oracle,
    profile,
    recurrence_by_windows,
    recurrence_oracle,
    stable_profile,
)
from .table import CSV_COLUMNS, ComplexityTable, TableRow, complexity_table
from .verify import VerifyReport, random_directives, verify_directive, verify_many

__all__ = [
    "NEG_INF", "NrcDiagnostics", "bracket_bispecial", "inrc_formula", "nrc_details",
    "nrc_formula", "s_last_occurrence", "LevelStats", "NrcResult", "OracleValue",
    "WindowCertificate", "inrc_oracle", "nrc_oracle", "profile", "recurrence_by_windows",
    "recurrence_oracle", "stable_profile", "CSV_COLUMNS", "ComplexityTable", "TableRow",
    "complexity_table", "VerifyReport", "random_directives", "verify_directive", "verify_many",
]
