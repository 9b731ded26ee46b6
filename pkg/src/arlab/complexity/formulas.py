"""Closed-form nrC and inrC of Arnoux-Rauzy words from the directive sequence.

Nothing here materializes a word: every length is a column sum of a product
of elementary incidence matrices, in exact integers.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

from ..analysis import SAdicLengths
from ..errors import ConsistencyError, DomainError
from ..words import DirectiveSequence


@functools.total_ordering
class _NegativeInfinity:
    """Last occurrence of a letter that never occurred. Below every index,
    equal only to itself."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("-inf")

    def __repr__(self):
        return "-inf"


NEG_INF = _NegativeInfinity()


@functools.lru_cache(maxsize=256)
def lengths_for(ds: DirectiveSequence) -> SAdicLengths:
    return SAdicLengths(ds)


def s_last_occurrence(ds: DirectiveSequence, k: int, a: int):
    """Largest ``l < k`` with ``i_l = a``, or NEG_INF."""
    if not 0 <= a < ds.d:
        raise DomainError(f"letter {a} outside alphabet of size {ds.d}")
    for ell in range(k - 1, -1, -1):
        if ds.letter(ell) == a:
            return ell
    return NEG_INF


def bracket_bispecial(ds: DirectiveSequence, n: int) -> int:
    return lengths_for(ds).bracket(n)


@dataclass(frozen=True)
class NrcDiagnostics:
    n: int
    value: int
    k: int
    letter: int
    minimizers: tuple[int, ...]
    bispecial_length: int
    # |psi_k(i_k a)| = |psi_{k+1}(a)|: the longest admissible pair of return words
    pair_length: int
    # nrC at n = |B(k)|; other n in the bracket differ by n - |B(k)|
    at_bispecial: int
    return_lengths: tuple[int, ...]


def nrc_details(ds: DirectiveSequence, n: int) -> NrcDiagnostics:
    lengths = lengths_for(ds)
    k = lengths.bracket(n)
    ik = ds.letter(k)
    last = {b: s_last_occurrence(ds, k, b) for b in range(ds.d) if b != ik}
    lowest = min(last.values())
    minimizers = tuple(b for b, s in last.items() if s == lowest)
    after = lengths.psi_lengths(k + 1)
    pair = after[minimizers[0]]
    if any(after[b] != pair for b in minimizers):
        raise ConsistencyError(
            f"letters {minimizers} minimize S(k={k}) but give lengths {[after[b] for b in minimizers]}"
        )
    bl = lengths.bispecial_length(k)
    return NrcDiagnostics(
        n=n,
        value=pair - 1 - bl + n,
        k=k,
        letter=minimizers[0],
        minimizers=minimizers,
        bispecial_length=bl,
        pair_length=pair,
        at_bispecial=pair - 1,
        return_lengths=lengths.psi_lengths(k),
    )


def nrc_formula(ds: DirectiveSequence, n: int) -> int:
    """nrC(n) = |phi_{i_0}...phi_{i_k}(a)| - 1 - |B(k)| + n with the bracket ``k``
    of ``n`` and ``a != i_k`` whose last occurrence before ``k`` is earliest."""
    return nrc_details(ds, n).value


def inrc_formula(ds: DirectiveSequence, n: int) -> int:
    """inrC(n) = |phi_{i_0}...phi_{i_{k-1}}(i_k)| for the standard word."""
    lengths = lengths_for(ds)
    k = lengths.bracket(n)
    return lengths.psi_lengths(k)[ds.letter(k)]
