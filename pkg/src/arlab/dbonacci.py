"""Exact fast path for the d-bonacci word: D_k numbers, bispecial lengths and
both complexity functions, with the Fibonacci/Tribonacci range rules.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError, DomainError
from .words import (
    FiniteWord,
    Matrix,
    apply,
    dbonacci_morphism,
    identity_matrix,
    mat_mul,
    mat_vec,
)


def _check_order(d: int) -> None:
    if not isinstance(d, int) or d < 2:
        raise DomainError(f"d-bonacci order must be an integer >= 2, got {d!r}")


def dbonacci_matrix(d: int) -> Matrix:
    _check_order(d)
    return dbonacci_morphism(d).incidence()


@dataclass(frozen=True)
class DBonacciNumbers:
    """``D_{-d} .. D_{k_max}`` with ``D_{-1} = 1`` and ``D_{-j} = 0`` for ``j >= 2``."""

    d: int
    values: tuple[int, ...]

    @property
    def k_max(self) -> int:
        return len(self.values) - self.d - 1

    def __getitem__(self, k: int) -> int:
        if not -self.d <= k <= self.k_max:
            raise IndexError(f"D_{k} outside computed range {-self.d}..{self.k_max}")
        return self.values[k + self.d]

    def vector(self, n: int) -> tuple[int, ...]:
        """``(D_n, D_{n-1}, ..., D_{n-d+1})``."""
        return tuple(self[n - j] for j in range(self.d))


_cache: dict[int, list[int]] = {}


def _values(d: int, k_max: int) -> list[int]:
    vals = _cache.setdefault(d, [0] * (d - 1) + [1])  # D_{-d} .. D_{-1}
    while len(vals) - d - 1 < k_max:
        k = len(vals) - d
        vals.append(2**k if k < d else sum(vals[-d:]))
    return vals


def dbonacci_numbers(d: int, k_max: int) -> DBonacciNumbers:
    _check_order(d)
    if k_max < 0:
        raise DomainError("k_max must be nonnegative")
    nums = DBonacciNumbers(d, tuple(_values(d, k_max)[: k_max + d + 1]))
    matrix = dbonacci_matrix(d)
    vec = nums.vector(-1)
    for n in range(min(k_max, 30) + 1):
        vec = mat_vec(matrix, vec)
        if vec != nums.vector(n):
            raise ConsistencyError(f"D({n}) differs from M^{n + 1} e for d={d}")
    return nums


def dbonacci_number(d: int, k: int) -> int:
    _check_order(d)
    if k < -d:
        raise DomainError(f"D_k is defined for k >= {-d}")
    return _values(d, max(k, 0))[k + d]


def bispecial_length_dbonacci(d: int, k: int) -> int:
    """``|B(k)| = (sum_{i<d} (d - i) D_{k-i-1} - d) / (d - 1)``, checked integral."""
    _check_order(d)
    if k < 0:
        raise DomainError("bispecial index must be nonnegative")
    total = sum((d - i) * dbonacci_number(d, k - i - 1) for i in range(d))
    value = Fraction(total, d - 1) - Fraction(d, d - 1)
    if value.denominator != 1:
        raise ConsistencyError(f"|B({k})| = {value} is not an integer for d={d}")
    return int(value)


def bispecial_length_by_claim(d: int, k: int) -> int:
    """Length of ``B(k)`` from ``B(k) = tau(B(k-1)) 0`` on Parikh vectors."""
    matrix = dbonacci_matrix(d)
    v = (0,) * d
    for _ in range(k):
        v = mat_vec(matrix, v)
        v = (v[0] + 1,) + v[1:]
    return sum(v)


def bispecial_word_dbonacci(d: int, k: int) -> FiniteWord:
    tau = dbonacci_morphism(d)
    zero = FiniteWord(b"\x00", d)
    b = FiniteWord.empty(d)
    for _ in range(k):
        b = apply(tau, b) + zero
    return b


def tau_power_length(d: int, k: int) -> int:
    """``|tau^k(0)|``, which equals ``D_k``."""
    _check_order(d)
    if k < 0:
        raise DomainError("exponent must be nonnegative")
    return dbonacci_number(d, k)


def tau_power_length_iterated(d: int, k: int) -> int:
    tau = dbonacci_morphism(d)
    w = FiniteWord(b"\x00", d)
    for _ in range(k):
        w = apply(tau, w)
    return len(w)


def tau_power_length_by_matrix(d: int, k: int) -> int:
    """``|tau^k(0)|`` as the first column sum of ``M^k``."""
    matrix = dbonacci_matrix(d)
    power = identity_matrix(d)
    for _ in range(k):
        power = mat_mul(matrix, power)
    return sum(row[0] for row in power)


def bracket_dbonacci(d: int, n: int) -> int:
    """The ``k >= 1`` with ``|B(k-1)| < n <= |B(k)|``."""
    _check_order(d)
    if n < 1:
        raise DomainError("n must be at least 1")
    k = 1
    while bispecial_length_dbonacci(d, k) < n:
        k += 1
    return k


def nrc_dbonacci(d: int, n: int) -> int:
    k = bracket_dbonacci(d, n)
    return dbonacci_number(d, k + 1) - 1 - bispecial_length_dbonacci(d, k) + n


def inrc_dbonacci(d: int, n: int) -> int:
    return dbonacci_number(d, bracket_dbonacci(d, n))


def fibonacci_inrc_range(k: int) -> tuple[int, int]:
    """Half-open ``(F_k - 2, F_{k+1} - 2]`` on which inrC of Fibonacci is ``F_k``."""
    return dbonacci_number(2, k) - 2, dbonacci_number(2, k + 1) - 2


def tribonacci_inrc_range(k: int) -> tuple[int, int]:
    """``((T_k + T_{k-2} - 3)/2, (T_{k+1} + T_{k-1} - 3)/2]`` for Tribonacci."""
    t = [dbonacci_number(3, j) for j in range(k - 2, k + 2)]
    lo = Fraction(t[2] + t[0] - 3, 2)
    hi = Fraction(t[3] + t[1] - 3, 2)
    if lo.denominator != 1 or hi.denominator != 1:
        raise ConsistencyError(f"Tribonacci range for k={k} is not integral")
    return int(lo), int(hi)


def _range_rule(n: int, ranges, d: int) -> int:
    if n < 1:
        raise DomainError("n must be at least 1")
    k = 1
    while True:
        lo, hi = ranges(k)
        if lo < n <= hi:
            return dbonacci_number(d, k)
        k += 1


def fibonacci_inrc(n: int) -> int:
    return _range_rule(n, fibonacci_inrc_range, 2)


def tribonacci_inrc(n: int) -> int:
    return _range_rule(n, tribonacci_inrc_range, 3)
