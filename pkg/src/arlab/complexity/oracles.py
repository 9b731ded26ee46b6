"""Brute-force oracles for C, nrC, inrC and R read off a finite prefix.

All lengths ``n = 1..n_max`` are handled in one pass over the buffer. Factors
of length ``n`` get integer ids by rank refinement: the id of the factor at
``i`` for length ``n + 1`` is the rank of the pair (id at length ``n``,
letter ``i + n``). This is exact, with no fingerprints and no collisions to
re-check, and every step is a vectorized numpy pass.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..analysis import factor_set
from ..errors import DomainError
from ..words import ARWordPrefix, FiniteWord, generate_prefix

MIN_ORACLE_LENGTH = 1024


@dataclass(frozen=True)
class WindowCertificate:
    """``length`` consecutive pairwise distinct length-n factors starting at ``start``.

    ``right_special`` is the factor just before the window and ``left_special``
    the factor just after it; ``endpoints_ok`` records whether they really are
    right/left special and both reoccur inside the window.
    """

    start: int
    length: int
    right_special: bytes | None
    left_special: bytes | None
    endpoints_ok: bool


@dataclass(frozen=True)
class LevelStats:
    n: int
    complexity: int
    nrc: int
    certificate: WindowCertificate
    inrc: int | None
    recurrence: int | None

    def covered_by(self, length: int) -> bool:
        """Whether a buffer of ``length`` symbols covers the certificate and one
        recurrence window beyond it."""
        if self.inrc is None or self.recurrence is None:
            return False
        c = self.certificate
        return length >= c.start + c.length + self.n + self.recurrence


def _previous_same(ids: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """For each position, the previous position holding the same id (or -1),
    plus the sorted order and the same-id mask over it."""
    # small unsigned keys let numpy use a radix sort
    keys = ids.astype(np.uint16) if len(ids) and ids.max() < 2**16 else ids
    order = np.argsort(keys, kind="stable")
    s = ids[order]
    same = s[1:] == s[:-1]
    prev = np.full(len(ids), -1, dtype=np.int64)
    prev[order[1:][same]] = order[:-1][same]
    return prev, order, same


def _next_same(prev: np.ndarray) -> np.ndarray:
    nxt = np.full(len(prev), -1, dtype=np.int64)
    has = prev >= 0
    nxt[prev[has]] = np.flatnonzero(has)
    return nxt


def _certificate(
    buf: bytes,
    n: int,
    ids: np.ndarray,
    prev: np.ndarray,
    win: np.ndarray,
    m: int,
    left_sp: np.ndarray,
    right_sp: np.ndarray,
) -> WindowCertificate:
    count = len(ids)
    starts = np.flatnonzero(win == m) - m + 1
    inner = starts[(starts >= 1) & (starts + m < count)]
    if len(inner):
        nxt = _next_same(prev)
        before = ids[inner - 1]
        after = ids[inner + m]
        before_in = (nxt[inner - 1] >= 0) & (nxt[inner - 1] <= inner + m - 1)
        after_in = prev[inner + m] >= inner
        ok = right_sp[before] & left_sp[after] & before_in & after_in
        hits = np.flatnonzero(ok)
        if len(hits):
            h = int(inner[hits[0]])
            return WindowCertificate(h, m, buf[h - 1:h - 1 + n], buf[h + m:h + m + n], True)
    h = int(starts[0])
    rs = buf[h - 1:h - 1 + n] if h >= 1 else None
    ls = buf[h + m:h + m + n] if h + m < count else None
    return WindowCertificate(h, m, rs, ls, False)


def profile(buf: bytes, n_max: int) -> list[LevelStats]:
    """Oracle values for ``n = 1..min(n_max, len(buf))`` on one buffer."""
    letters = np.frombuffer(buf, dtype=np.uint8).astype(np.int64)
    total = len(letters)
    width = int(letters.max()) + 1 if total else 1
    ids = letters.copy()
    out = []
    for n in range(1, min(n_max, total) + 1):
        count = len(ids)
        prev, order, same = _previous_same(ids)
        distinct = int(count - np.count_nonzero(same))

        lo = np.maximum.accumulate(prev + 1)
        win = np.arange(count) - lo + 1
        m = int(win.max())

        repeats = np.flatnonzero(prev >= 0)
        inrc = int(repeats[0]) if len(repeats) else None

        occurs = np.bincount(ids)
        present = occurs[occurs > 0]
        if present.min() >= 2:
            gaps = order[1:][same] - order[:-1][same]
            recurrence = n - 1 + int(gaps.max())
        else:
            recurrence = None

        size = int(ids.max()) + 1
        follows = np.zeros((size, width), dtype=bool)
        follows[ids[:-1], letters[n:]] = True
        precedes = np.zeros((size, width), dtype=bool)
        precedes[ids[1:], letters[:total - n]] = True
        right_sp = follows.sum(axis=1) >= 2
        left_sp = precedes.sum(axis=1) >= 2

        cert = _certificate(buf, n, ids, prev, win, m, left_sp, right_sp)
        out.append(LevelStats(n, distinct, m, cert, inrc, recurrence))

        # ids for length n + 1 are the ranks of the observed (id, next letter) pairs
        flat = follows.ravel()
        rank = np.cumsum(flat) - 1
        ids = rank[ids[:-1] * width + letters[n:]]
    return out


@dataclass(frozen=True)
class StableLevel:
    stats: LevelStats
    stable: bool
    buffer_length: int


def stable_profile(prefix: ARWordPrefix, n_max: int) -> dict[int, StableLevel]:
    """Profile ``prefix`` and its doublings until each level repeats exactly.

    A level is stable once its values and certificate agree between a buffer
    and its doubling and the smaller buffer covers the certificate plus one
    recurrence window. Levels still moving when the budget runs out are
    returned from the largest buffer with ``stable=False``.
    """
    if n_max < 1:
        raise DomainError("oracles are defined for n >= 1")
    current = prefix
    want = max(MIN_ORACLE_LENGTH, 16 * (n_max + 1))
    if current.directive is not None and len(current) < want:
        current = generate_prefix(current.directive, min(want, current.budget), current.budget)
    if len(current) < n_max:
        raise DomainError(f"prefix of length {len(current)} is shorter than n={n_max}")

    stats = {s.n: s for s in profile(current.symbols, n_max)}
    done: dict[int, StableLevel] = {}
    pending = set(range(1, n_max + 1))
    while pending and current.can_grow:
        bigger = current.grow()
        bigger_stats = {s.n: s for s in profile(bigger.symbols, n_max)}
        for n in sorted(pending):
            s = stats[n]
            if s == bigger_stats[n] and s.covered_by(len(current)):
                done[n] = StableLevel(s, True, len(current))
                pending.discard(n)
        current, stats = bigger, bigger_stats
    for n in pending:
        done[n] = StableLevel(stats[n], False, len(current))
    return done


@dataclass(frozen=True)
class NrcResult:
    value: int
    certificate: WindowCertificate
    stable: bool


@dataclass(frozen=True)
class OracleValue:
    value: int | None
    stable: bool


def _level(prefix: ARWordPrefix, n: int) -> StableLevel:
    if n < 1:
        raise DomainError("oracles are defined for n >= 1")
    if len(prefix) < n and prefix.directive is None:
        raise DomainError(f"prefix of length {len(prefix)} is shorter than n={n}")
    return stable_profile(prefix, n)[n]


def nrc_oracle(prefix: ARWordPrefix, n: int) -> NrcResult:
    level = _level(prefix, n)
    return NrcResult(level.stats.nrc, level.stats.certificate, level.stable)


def inrc_oracle(prefix: ARWordPrefix, n: int) -> OracleValue:
    level = _level(prefix, n)
    return OracleValue(level.stats.inrc, level.stable)


def recurrence_oracle(prefix: ARWordPrefix, n: int) -> OracleValue:
    """``R(n) = n - 1 + `` the longest return word to any length-n factor."""
    level = _level(prefix, n)
    if level.stats.recurrence is None:
        raise DomainError(f"some factor of length {n} occurs only once in the buffer")
    return OracleValue(level.stats.recurrence, level.stable)


def recurrence_by_windows(prefix: ARWordPrefix, n: int) -> int:
    """``R(n)`` straight from the definition: the least ``m`` such that every
    length-m window of the buffer contains every length-n factor.

    Only windows starting before the last occurrence of the rarest factor are
    inspected, so every inspected window is complete.
    """
    positions = [np.asarray(p, dtype=np.int64) for p in factor_set(prefix, n).occurrences.values()]
    last_start = min(int(p[-1]) for p in positions)
    starts = np.arange(last_start + 1)
    reach = np.zeros(len(starts), dtype=np.int64)
    for p in positions:
        np.maximum(reach, p[np.searchsorted(p, starts)], out=reach)
    return int((reach - starts).max()) + n


def first_repeat_position(word: FiniteWord, n: int) -> int | None:
    """Direct scan used as a cross-check for the initial oracle."""
    seen = set()
    buf = word.symbols
    for i in range(len(buf) - n + 1):
        f = buf[i:i + n]
        if f in seen:
            return i
        seen.add(f)
    return None
