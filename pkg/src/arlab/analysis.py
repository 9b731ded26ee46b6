"""Factor-level analysis: languages, special factors, Rauzy graphs, bispecial
factors, return words and derived words.

Facts about the infinite word are read off a finite prefix and accepted only
when they survive one doubling of the prefix (see :func:`stabilize`).
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, TypeVar

from .errors import DomainError, InconclusiveError
from .words import (
    ARWordPrefix,
    DirectiveSequence,
    FiniteWord,
    Matrix,
    column_sums,
    default_budget,
    elementary_incidence,
    elementary_morphism,
    format_letters,
    identity_matrix,
    mat_mul,
    mat_vec,
    psi_images,
)

T = TypeVar("T")


def stabilize(prefix: ARWordPrefix, compute: Callable[[ARWordPrefix], T], min_length: int = 0):
    """Evaluate ``compute`` on ``prefix`` and on its doubling until two agree.

    Returns ``(value, prefix_used, stable)``. A prefix without a directive
    cannot grow; its value is returned with ``stable=False``. A growable prefix
    that keeps changing until the budget is hit raises InconclusiveError.
    """
    if len(prefix) < min_length:
        if not prefix.can_grow and prefix.directive is None:
            raise DomainError(f"prefix of length {len(prefix)} is shorter than {min_length}")
        prefix = _grow_to(prefix, min_length)
    value = compute(prefix)
    if prefix.directive is None:
        return value, prefix, False
    while True:
        if not prefix.can_grow:
            raise InconclusiveError(
                f"result did not stabilize within the budget of {prefix.budget} symbols"
            )
        bigger = prefix.grow()
        bigger_value = compute(bigger)
        if bigger_value == value:
            return value, prefix, True
        prefix, value = bigger, bigger_value


def _grow_to(prefix: ARWordPrefix, length: int) -> ARWordPrefix:
    from .words import generate_prefix

    if prefix.directive is None:
        raise DomainError("prefix without a directive cannot be extended")
    return generate_prefix(prefix.directive, min(length, prefix.budget), prefix.budget)


# ---------------------------------------------------------------------------
# factors


@dataclass(frozen=True)
class FactorSet:
    n: int
    d: int
    occurrences: dict[bytes, list[int]] = field(compare=False)

    @property
    def factors(self) -> frozenset[bytes]:
        return frozenset(self.occurrences)

    def words(self) -> list[FiniteWord]:
        return [FiniteWord(f, self.d) for f in sorted(self.occurrences)]

    def __len__(self) -> int:
        return len(self.occurrences)

    def __contains__(self, w) -> bool:
        key = w.symbols if isinstance(w, FiniteWord) else bytes(w)
        return key in self.occurrences

    def __eq__(self, other) -> bool:
        return isinstance(other, FactorSet) and (self.n, self.factors) == (other.n, other.factors)

    def __hash__(self) -> int:
        return hash((self.n, self.factors))


def _scan(buf: bytes, n: int) -> dict[bytes, list[int]]:
    occ: dict[bytes, list[int]] = defaultdict(list)
    for i in range(len(buf) - n + 1):
        occ[buf[i:i + n]].append(i)
    return dict(occ)


def factor_set(prefix: ARWordPrefix, n: int) -> FactorSet:
    """All length-``n`` factors of the buffer with their (ascending) positions."""
    if n < 0:
        raise DomainError("factor length must be nonnegative")
    if n > len(prefix):
        raise DomainError(f"factor length {n} exceeds prefix length {len(prefix)}")
    return FactorSet(n, prefix.d, _scan(prefix.symbols, n))


def factor_complexity(prefix: ARWordPrefix, n: int) -> int:
    return len(factor_set(prefix, n))


def stable_factor_complexity(prefix: ARWordPrefix, n: int) -> tuple[int, bool]:
    value, _, stable = stabilize(prefix, lambda p: factor_complexity(p, n), min_length=n)
    return value, stable


@dataclass(frozen=True)
class SpecialFactors:
    n: int
    left: frozenset[bytes]
    right: frozenset[bytes]
    stable: bool = field(default=False, compare=False)


def _extensions(buf: bytes, n: int) -> tuple[dict[bytes, set[int]], dict[bytes, set[int]]]:
    after: dict[bytes, set[int]] = defaultdict(set)
    before: dict[bytes, set[int]] = defaultdict(set)
    for i in range(len(buf) - n + 1):
        w = buf[i:i + n]
        if i + n < len(buf):
            after[w].add(buf[i + n])
        if i > 0:
            before[w].add(buf[i - 1])
    return before, after


def _special_on(prefix: ARWordPrefix, n: int) -> tuple[frozenset[bytes], frozenset[bytes]]:
    before, after = _extensions(prefix.symbols, n)
    left = frozenset(w for w, s in before.items() if len(s) >= 2)
    right = frozenset(w for w, s in after.items() if len(s) >= 2)
    return left, right


def special_factors(prefix: ARWordPrefix, n: int) -> SpecialFactors:
    """Left and right special factors of length ``n``, grown until stable."""
    if n < 0:
        raise DomainError("factor length must be nonnegative")
    (left, right), _, stable = stabilize(
        prefix, lambda p: _special_on(p, n), min_length=max(4 * (n + 1), 16)
    )
    return SpecialFactors(n, left, right, stable)


# ---------------------------------------------------------------------------
# bispecial factors through the S-adic recursion


class SAdicLengths:
    """Exact lengths attached to a directive, without materializing words.

    ``psi_k = phi_{i_0} ... phi_{i_{k-1}}`` is tracked through the product of
    incidence matrices. Bispecial lengths use ``B(k) = psi_{k-1}(i_{k-1}) B(k-1)``,
    which unrolls the recursion ``B_v(k+1) = phi_i(B_u(k)) i``.
    Values are memoized; the cache only ever grows.
    """

    def __init__(self, ds: DirectiveSequence):
        ds.require_valid()
        self.ds = ds
        self.d = ds.d
        self._products: list[Matrix] = [identity_matrix(ds.d)]
        self._lengths: list[tuple[int, ...]] = [(1,) * ds.d]
        self._bispecial: list[int] = [0]

    def _extend(self, k: int) -> None:
        while len(self._products) <= k:
            j = len(self._products) - 1
            nxt = mat_mul(self._products[j], elementary_incidence(self.ds.letter(j), self.d))
            self._products.append(nxt)
            self._lengths.append(column_sums(nxt))

    def psi_matrix(self, k: int) -> Matrix:
        self._extend(k)
        return self._products[k]

    def psi_lengths(self, k: int) -> tuple[int, ...]:
        """``|psi_k(a)|`` for every letter ``a``."""
        self._extend(k)
        return self._lengths[k]

    def bispecial_length(self, k: int) -> int:
        if k < 0:
            raise DomainError("bispecial index must be nonnegative")
        while len(self._bispecial) <= k:
            j = len(self._bispecial) - 1
            self._bispecial.append(self._bispecial[j] + self.psi_lengths(j)[self.ds.letter(j)])
        return self._bispecial[k]

    def bracket(self, n: int) -> int:
        """The unique ``k`` with ``|B(k-1)| < n <= |B(k)|``."""
        if n < 1:
            raise DomainError("bracketing is defined for n >= 1")
        k = 1
        while self.bispecial_length(k) < n:
            k += 1
        return k


def bispecial_parikh(ds: DirectiveSequence, k: int) -> tuple[int, ...]:
    """Parikh vector of ``B(k)`` by iterating the recursion on Parikh vectors."""
    ds.require_valid()
    v = (0,) * ds.d
    for j in range(k - 1, -1, -1):
        i = ds.letter(j)
        v = mat_vec(elementary_incidence(i, ds.d), v)
        v = tuple(c + (a == i) for a, c in enumerate(v))
    return v


@dataclass(frozen=True)
class BispecialRecord:
    k: int
    length: int
    return_lengths: tuple[int, ...]
    factor: FiniteWord | None = None
    return_words: tuple[FiniteWord, ...] | None = None

    @property
    def materialized(self) -> bool:
        return self.factor is not None


def bispecial(ds: DirectiveSequence, k: int, budget: int | None = None) -> BispecialRecord:
    """``B(k)`` and its return words ``psi_k(0), ..., psi_k(d-1)``.

    Words are materialized only when they fit in ``budget``; the lengths are
    always exact.
    """
    if k < 0:
        raise DomainError("bispecial index must be nonnegative")
    lengths = SAdicLengths(ds)
    if budget is None:
        budget = default_budget()
    length = lengths.bispecial_length(k)
    ret_lengths = lengths.psi_lengths(k)
    if max(length, max(ret_lengths)) > budget:
        return BispecialRecord(k, length, ret_lengths)
    b = FiniteWord.empty(ds.d)
    for j in range(k - 1, -1, -1):
        i = ds.letter(j)
        b = elementary_morphism(i, ds.d)(b) + FiniteWord(bytes([i]), ds.d)
    returns = tuple(psi_images(ds, k, budget))
    return BispecialRecord(k, length, ret_lengths, b, returns)


# ---------------------------------------------------------------------------
# return words and derived words


def occurrences(buf: bytes, w: bytes) -> list[int]:
    if not w:
        return list(range(len(buf) + 1))
    out = []
    i = buf.find(w)
    while i >= 0:
        out.append(i)
        i = buf.find(w, i + 1)
    return out


def return_words_bruteforce(prefix: ARWordPrefix, w: FiniteWord) -> frozenset[FiniteWord]:
    """Gaps between consecutive occurrences of ``w`` in the buffer."""
    buf = prefix.symbols
    occ = occurrences(buf, w.symbols)
    if len(occ) < 2:
        raise DomainError(f"factor {w} occurs {len(occ)} time(s); need at least 2")
    return frozenset(FiniteWord(buf[i:j], prefix.d) for i, j in zip(occ, occ[1:]))


@dataclass(frozen=True)
class DerivedWord:
    """Coding of the prefix by return words, numbered by first appearance."""

    base: FiniteWord
    coding: bytes
    return_words: tuple[FiniteWord, ...]

    def decode(self) -> bytes:
        return b"".join(self.return_words[c].symbols for c in self.coding)

    def __str__(self) -> str:
        return format_letters(self.coding, max(len(self.return_words), 1))


def derived_word(prefix: ARWordPrefix, w: FiniteWord, length: int) -> DerivedWord:
    if not w.is_prefix_of(prefix.buffer):
        raise DomainError(f"{w} is not a prefix of the word")
    if not w:
        return DerivedWord(w, prefix.symbols[:length], tuple(FiniteWord(bytes([a]), prefix.d) for a in range(prefix.d)))
    while True:
        buf = prefix.symbols
        occ = occurrences(buf, w.symbols)
        if len(occ) > length:
            break
        if not prefix.can_grow:
            raise InconclusiveError(f"prefix holds only {len(occ) - 1} complete return words to {w}")
        prefix = prefix.grow()
    numbering: dict[bytes, int] = {}
    coding = bytearray()
    for i, j in zip(occ, occ[1:length + 1]):
        r = buf[i:j]
        coding.append(numbering.setdefault(r, len(numbering)))
    returns = tuple(FiniteWord(r, prefix.d) for r in numbering)
    return DerivedWord(w, bytes(coding), returns)


def order_isomorphic(a: bytes, b: bytes) -> bool:
    """True when a letter bijection maps ``a`` onto ``b``."""
    if len(a) != len(b):
        return False
    pairs = set(zip(a, b))
    return len(pairs) == len(set(a)) == len(set(b))


# ---------------------------------------------------------------------------
# Rauzy graphs


@dataclass(frozen=True)
class RauzyGraph:
    n: int
    d: int
    vertices: frozenset[bytes]
    edges: frozenset[bytes]
    first_seen: dict[bytes, int] = field(default_factory=dict, compare=False, hash=False)

    def successors(self, v: bytes) -> list[bytes]:
        return sorted(e[1:] for e in self.edges if e[:-1] == v)

    def predecessors(self, v: bytes) -> list[bytes]:
        return sorted(e[:-1] for e in self.edges if e[1:] == v)

    def out_degree(self, v: bytes) -> int:
        return len(self.successors(v))

    def in_degree(self, v: bytes) -> int:
        return len(self.predecessors(v))

    @property
    def left_special(self) -> frozenset[bytes]:
        return frozenset(v for v in self.vertices if self.in_degree(v) >= 2)

    @property
    def right_special(self) -> frozenset[bytes]:
        return frozenset(v for v in self.vertices if self.out_degree(v) >= 2)

    @property
    def bispecial(self) -> frozenset[bytes]:
        return self.left_special & self.right_special

    def cycle_lengths(self, start: bytes) -> list[int]:
        """Vertex counts of the cycles leaving ``start`` and first coming back.

        Each walk follows the unique out-edge of every vertex other than
        ``start``; a walk that branches elsewhere is reported as -1.
        """
        sizes = []
        for nxt in self.successors(start):
            count, v = 1, nxt
            while v != start:
                succ = self.successors(v)
                if len(succ) != 1 or count > len(self.vertices):
                    count = -1
                    break
                count += 1
                v = succ[0]
            sizes.append(count)
        return sorted(sizes)

    def label(self, v: bytes) -> str:
        if len(v) > 32:
            return f"len={len(v)}@{self.first_seen.get(v, -1)}"
        return format_letters(v, self.d) if v else "ε"

    def to_dot(self) -> str:
        names = {v: f"v{i}" for i, v in enumerate(sorted(self.vertices, key=lambda x: (len(x), x)))}
        left, right = self.left_special, self.right_special
        lines = [f"digraph rauzy_{self.n} {{", f'  label="Rauzy graph of order {self.n}";']
        for v, name in names.items():
            marks = "".join(m for m, s in (("L", left), ("R", right)) if v in s)
            if marks == "LR":
                marks = "B"
            text = self.label(v) + (f" [{marks}]" if marks else "")
            style = ', shape=doublecircle' if marks == "B" else ""
            lines.append(f'  {name} [label="{text}"{style}];')
        for e in sorted(self.edges):
            lines.append(f'  {names[e[:-1]]} -> {names[e[1:]]} [label="{format_letters(e[-1:], self.d)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _graph_on(prefix: ARWordPrefix, n: int) -> RauzyGraph:
    buf = prefix.symbols
    vertices = _scan(buf, n)
    edges = _scan(buf, n + 1)
    first = {v: occ[0] for v, occ in vertices.items()}
    return RauzyGraph(n, prefix.d, frozenset(vertices), frozenset(edges), first)


def rauzy_graph(prefix: ARWordPrefix, n: int) -> RauzyGraph:
    if n < 0:
        raise DomainError("graph order must be nonnegative")
    if n + 1 > len(prefix) and prefix.directive is None:
        raise DomainError(f"prefix of length {len(prefix)} too short for order {n}")
    graph, _, _ = stabilize(prefix, lambda p: _graph_on(p, n), min_length=max(4 * (n + 2), 16))
    return graph


@dataclass(frozen=True)
class RauzySpecialReport:
    n: int
    applicable: bool
    passed: bool
    witnesses: tuple[str, ...] = ()


def check_rauzy_special_property(
    prefix: ARWordPrefix,
    n: int,
    nrc: int,
    complexity: int,
    right_endpoint: bytes,
    left_endpoint: bytes,
) -> RauzySpecialReport:
    """When nrC(n) = C(n), every right special ``w`` other than the window's
    right endpoint sends all but at most one of its successors to left
    special vertices, and symmetrically for left special vertices.
    """
    if nrc != complexity:
        return RauzySpecialReport(n, False, True, (f"nrC={nrc} differs from C={complexity}",))
    graph = rauzy_graph(prefix, n)
    left, right = graph.left_special, graph.right_special
    bad = []
    for w in sorted(graph.vertices):
        if w != right_endpoint:
            succ = graph.successors(w)
            if sum(v in left for v in succ) < len(succ) - 1:
                bad.append(f"N+({graph.label(w)}) has too few left special vertices")
        if w != left_endpoint:
            pred = graph.predecessors(w)
            if sum(v in right for v in pred) < len(pred) - 1:
                bad.append(f"N-({graph.label(w)}) has too few right special vertices")
    return RauzySpecialReport(n, True, not bad, tuple(bad))
