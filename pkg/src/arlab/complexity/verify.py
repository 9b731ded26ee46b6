"""Formula-versus-oracle verification runs with machine-readable reports."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..errors import ConsistencyError
from ..words import DirectiveSequence, random_directive
from . import formulas
from .table import certificate_record, complexity_table


@dataclass
class VerifyReport:
    directive: str
    d: int
    n_max: int
    rows: list[dict] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)
    stable_fraction: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "directive": self.directive,
            "d": self.d,
            "n_max": self.n_max,
            "rows": self.rows,
            "failures": self.failures,
            "stable_fraction": self.stable_fraction,
        }


def verify_directive(ds: DirectiveSequence, n_max: int, budget: int | None = None) -> VerifyReport:
    table = complexity_table(ds, n_max, budget)
    report = VerifyReport(str(ds), ds.d, n_max, stable_fraction=table.stable_fraction)

    def fail(check: str, row=None, **info):
        entry = {"directive": str(ds), "check": check, **info}
        if row is not None:
            entry["n"] = row.n
            entry["row"] = row.record()
            entry["certificate"] = certificate_record(row.certificate, ds.d)
        report.failures.append(entry)

    for row in table.rows:
        report.rows.append({"directive": str(ds), **row.record()})
        if not row.stable:
            continue
        if not row.agree_nrc:
            fail("nrc_formula_vs_oracle", row)
        if not row.agree_inrc:
            fail("inrc_formula_vs_oracle", row)
        if row.chain_holds() is False:
            fail("chain_inequality", row)
        if not row.certificate.endpoints_ok:
            fail("certificate_special_endpoints", row)

    # shape of the closed forms inside each bispecial bracket
    by_bracket: dict[int, list] = {}
    for row in table.rows:
        by_bracket.setdefault(row.k, []).append(row)
        if ds.d == 2 and row.nrc_formula != row.n + 1:
            fail("sturmian_n_plus_one", row)
    for k, rows in by_bracket.items():
        if len({r.nrc_formula - r.n for r in rows}) != 1:
            fail("nrc_piecewise_linear", k=k)
        if len({r.inrc_formula for r in rows}) != 1:
            fail("inrc_constant_on_bracket", k=k)
    return report


def verify_many(
    directives: list[DirectiveSequence], n_max: int, budget: int | None = None
) -> VerifyReport:
    label = ";".join(map(str, directives)) if len(directives) <= 1 else f"{len(directives)} directives"
    total = VerifyReport(label, directives[0].d if directives else 0, n_max)
    fractions = []
    for ds in directives:
        try:
            rep = verify_directive(ds, n_max, budget)
        except ConsistencyError as exc:
            total.failures.append({"directive": str(ds), "check": "tie_lengths", "detail": str(exc)})
            continue
        total.rows.extend(rep.rows)
        total.failures.extend(rep.failures)
        fractions.append(rep.stable_fraction)
    total.stable_fraction = sum(fractions) / len(fractions) if fractions else 0.0
    return total


def random_directives(count: int, d: int, seed: int) -> list[DirectiveSequence]:
    rng = random.Random(seed)
    return [random_directive(d, rng) for _ in range(count)]


def tie_lengths(ds: DirectiveSequence, k: int) -> dict[int, int]:
    """``|psi_{k+1}(a)|`` for every letter minimizing the last occurrence before ``k``."""
    lengths = formulas.lengths_for(ds)
    ik = ds.letter(k)
    last = {b: formulas.s_last_occurrence(ds, k, b) for b in range(ds.d) if b != ik}
    lowest = min(last.values())
    return {b: lengths.psi_lengths(k + 1)[b] for b, s in last.items() if s == lowest}
