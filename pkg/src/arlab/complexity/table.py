"""Per-n complexity tables joining the closed forms with the oracles."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field

from ..errors import DomainError
from ..words import ARWordPrefix, DirectiveSequence, default_budget
from . import formulas
from .oracles import MIN_ORACLE_LENGTH, WindowCertificate, stable_profile

CSV_COLUMNS = (
    "n", "C", "nrC_formula", "nrC_oracle", "inrC_formula", "inrC_oracle",
    "R_oracle", "k", "agree_nrc", "agree_inrc", "stable",
)


@dataclass
class TableRow:
    n: int
    nrc_formula: int
    inrc_formula: int
    k: int
    complexity: int | None = None
    nrc_oracle: int | None = None
    inrc_oracle: int | None = None
    recurrence: int | None = None
    stable: bool = False
    certificate: WindowCertificate | None = field(default=None, repr=False)

    @property
    def agree_nrc(self) -> bool | None:
        return None if self.nrc_oracle is None else self.nrc_formula == self.nrc_oracle

    @property
    def agree_inrc(self) -> bool | None:
        return None if self.inrc_oracle is None else self.inrc_formula == self.inrc_oracle

    def chain_holds(self) -> bool | None:
        """inrC <= nrC <= C <= R - n + 1 on the oracle values."""
        values = (self.inrc_oracle, self.nrc_oracle, self.complexity, self.recurrence)
        if any(v is None for v in values):
            return None
        inrc, nrc, c, r = values
        return inrc <= nrc <= c <= r - self.n + 1

    def record(self) -> dict:
        return {
            "n": self.n,
            "C": self.complexity,
            "nrC_formula": self.nrc_formula,
            "nrC_oracle": self.nrc_oracle,
            "inrC_formula": self.inrc_formula,
            "inrC_oracle": self.inrc_oracle,
            "R_oracle": self.recurrence,
            "k": self.k,
            "agree_nrc": self.agree_nrc,
            "agree_inrc": self.agree_inrc,
            "stable": self.stable,
        }


def certificate_record(cert: WindowCertificate | None, d: int) -> dict | None:
    if cert is None:
        return None
    from ..words import format_letters

    out = asdict(cert)
    for key in ("right_special", "left_special"):
        if out[key] is not None:
            out[key] = format_letters(out[key], d)
    return out


def _csv_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


@dataclass
class ComplexityTable:
    directive: DirectiveSequence
    rows: list[TableRow]

    def to_csv(self, extra: dict[str, list] | None = None) -> str:
        extra = extra or {}
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS + tuple(extra))
        for i, row in enumerate(self.rows):
            rec = row.record()
            writer.writerow([_csv_value(rec[c]) for c in CSV_COLUMNS] + [_csv_value(v[i]) for v in extra.values()])
        return buf.getvalue()

    def records(self) -> list[dict]:
        return [row.record() for row in self.rows]

    def to_json(self) -> str:
        return json.dumps(self.records(), indent=2)

    @property
    def stable_fraction(self) -> float:
        return sum(r.stable for r in self.rows) / len(self.rows) if self.rows else 0.0


def complexity_table(
    ds: DirectiveSequence,
    n_max: int,
    budget: int | None = None,
    oracles: bool = True,
) -> ComplexityTable:
    """Formula columns for every ``n <= n_max``; oracle columns when the budget
    allows a prefix of at least ``n_max + 1`` symbols."""
    ds.require_valid()
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    if budget is None:
        budget = default_budget()
    rows = []
    for n in range(1, n_max + 1):
        rows.append(TableRow(
            n=n,
            nrc_formula=formulas.nrc_formula(ds, n),
            inrc_formula=formulas.inrc_formula(ds, n),
            k=formulas.bracket_bispecial(ds, n),
        ))
    if oracles and budget > n_max:
        from ..words import generate_prefix

        start = min(budget, max(MIN_ORACLE_LENGTH, 16 * (n_max + 1)))
        levels = stable_profile(generate_prefix(ds, start, budget), n_max)
        for row in rows:
            level = levels[row.n]
            s = level.stats
            row.complexity = s.complexity
            row.nrc_oracle = s.nrc
            row.inrc_oracle = s.inrc
            row.recurrence = s.recurrence
            row.certificate = s.certificate
            row.stable = level.stable
    return ComplexityTable(ds, rows)
