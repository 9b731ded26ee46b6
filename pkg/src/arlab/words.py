"""Finite words, morphisms, directive sequences and standard Arnoux-Rauzy prefixes.

Letters are small integers ``0 <= a < d`` with ``d <= 64``, so a word is stored
as a ``bytes`` object: slicing, hashing and substring search then run at C
speed while factor identity stays exact.
"""
from __future__ import annotations

import os
import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    AlphabetMismatch,
    BudgetExceeded,
    DirectiveParseError,
    DomainError,
    InvalidDirective,
)

MAX_ALPHABET = 64
DEFAULT_BUDGET = 2**28

Matrix = tuple[tuple[int, ...], ...]


def default_budget() -> int:
    """Symbol budget for materialized buffers (``ARLAB_BUDGET`` overrides)."""
    raw = os.environ.get("ARLAB_BUDGET")
    if raw is None or raw.strip() == "":
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"ARLAB_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise DomainError("ARLAB_BUDGET must be positive")
    return value


def _check_alphabet(d: int) -> None:
    if not isinstance(d, int) or not 1 <= d <= MAX_ALPHABET:
        raise DomainError(f"alphabet size must be in 1..{MAX_ALPHABET}, got {d!r}")


# ---------------------------------------------------------------------------
# exact integer matrices


def identity_matrix(d: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def mat_vec(a: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def column_sums(a: Matrix) -> tuple[int, ...]:
    return tuple(sum(col) for col in zip(*a))


# ---------------------------------------------------------------------------
# words


@dataclass(frozen=True)
class FiniteWord:
    symbols: bytes
    d: int

    def __post_init__(self):
        _check_alphabet(self.d)
        if not isinstance(self.symbols, bytes):
            object.__setattr__(self, "symbols", bytes(self.symbols))
        if self.symbols and max(self.symbols) >= self.d:
            raise DomainError(f"letter {max(self.symbols)} outside alphabet of size {self.d}")

    @classmethod
    def from_letters(cls, letters: Iterable[int], d: int) -> FiniteWord:
        return cls(bytes(letters), d)

    @classmethod
    def parse(cls, text: str, d: int) -> FiniteWord:
        """Read ``"0102"`` (d <= 10) or ``"0,1,11"`` / ``"[0,1,11]"``."""
        return cls(_parse_letters(text, d), d)

    @classmethod
    def empty(cls, d: int) -> FiniteWord:
        return cls(b"", d)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return FiniteWord(self.symbols[index], self.d)
        return self.symbols[index]

    def __add__(self, other: FiniteWord) -> FiniteWord:
        if other.d != self.d:
            raise AlphabetMismatch(f"cannot concatenate words over {self.d} and {other.d} letters")
        return FiniteWord(self.symbols + other.symbols, self.d)

    def __str__(self) -> str:
        return format_letters(self.symbols, self.d)

    def reversed(self) -> FiniteWord:
        return FiniteWord(self.symbols[::-1], self.d)

    def is_palindrome(self) -> bool:
        return self.symbols == self.symbols[::-1]

    def is_prefix_of(self, other: FiniteWord) -> bool:
        return other.symbols.startswith(self.symbols)


def format_letters(symbols: bytes, d: int) -> str:
    if d <= 10:
        return "".join(map(str, symbols))
    return ",".join(map(str, symbols))


def _parse_letters(text: str, d: int) -> bytes:
    text = text.strip()
    if text.startswith("[") and text.endswith("]"):
        text = text[1:-1].strip()
        if not text:
            return b""
        parts = text.split(",")
    elif "," in text:
        parts = text.split(",")
    else:
        parts = list(text)
    try:
        letters = [int(p) for p in parts]
    except ValueError:
        raise DirectiveParseError(f"not a letter sequence: {text!r}") from None
    bad = [a for a in letters if not 0 <= a < d]
    if bad:
        raise DirectiveParseError(f"letter {bad[0]} outside alphabet of size {d}")
    return bytes(letters)


def parikh(w: FiniteWord) -> tuple[int, ...]:
    counts = [0] * w.d
    for a in range(w.d):
        counts[a] = w.symbols.count(a)
    return tuple(counts)


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class Morphism:
    d: int
    images: tuple[bytes, ...]

    def __post_init__(self):
        _check_alphabet(self.d)
        if len(self.images) != self.d:
            raise DomainError(f"expected {self.d} images, got {len(self.images)}")
        for a, img in enumerate(self.images):
            if not img:
                raise DomainError(f"image of letter {a} is empty")
            if max(img) >= self.d:
                raise DomainError(f"image of letter {a} leaves the alphabet")

    @classmethod
    def from_strings(cls, images: Sequence[str], d: int) -> Morphism:
        return cls(d, tuple(_parse_letters(s, d) for s in images))

    @classmethod
    def identity(cls, d: int) -> Morphism:
        return cls(d, tuple(bytes([a]) for a in range(d)))

    def image(self, a: int) -> FiniteWord:
        return FiniteWord(self.images[a], self.d)

    def __call__(self, w: FiniteWord) -> FiniteWord:
        return apply(self, w)

    def incidence(self) -> Matrix:
        """``M[a][b]`` = number of occurrences of ``a`` in the image of ``b``."""
        return tuple(
            tuple(self.images[b].count(a) for b in range(self.d)) for a in range(self.d)
        )

    def __str__(self) -> str:
        return ", ".join(
            f"{a}->{format_letters(img, self.d)}" for a, img in enumerate(self.images)
        )


def apply(m: Morphism, w: FiniteWord) -> FiniteWord:
    if m.d != w.d:
        raise AlphabetMismatch(f"morphism over {m.d} letters applied to word over {w.d}")
    images = m.images
    return FiniteWord(b"".join([images[c] for c in w.symbols]), m.d)


def compose(outer: Morphism, inner: Morphism) -> Morphism:
    """Return ``outer o inner``, i.e. ``a -> outer(inner(a))``."""
    if outer.d != inner.d:
        raise AlphabetMismatch(f"cannot compose morphisms over {outer.d} and {inner.d} letters")
    images = outer.images
    return Morphism(outer.d, tuple(b"".join([images[c] for c in img]) for img in inner.images))


def power(m: Morphism, k: int) -> Morphism:
    result = Morphism.identity(m.d)
    for _ in range(k):
        result = compose(m, result)
    return result


def elementary_morphism(i: int, d: int) -> Morphism:
    """The Arnoux-Rauzy morphism ``i -> i`` and ``j -> ij`` for ``j != i``."""
    _check_alphabet(d)
    if not isinstance(i, int) or not 0 <= i < d:
        raise DomainError(f"letter {i!r} outside alphabet of size {d}")
    return Morphism(d, tuple(bytes([i]) if j == i else bytes([i, j]) for j in range(d)))


def elementary_incidence(i: int, d: int) -> Matrix:
    # identity plus a row of ones at i (the diagonal entry stays 1)
    return tuple(
        tuple(1 if (a == i or a == b) else 0 for b in range(d)) for a in range(d)
    )


def dbonacci_morphism(d: int) -> Morphism:
    if not isinstance(d, int) or d < 2:
        raise DomainError(f"d-bonacci morphism needs d >= 2, got {d!r}")
    _check_alphabet(d)
    return Morphism(d, tuple(bytes([0, a + 1]) for a in range(d - 1)) + (b"\x00",))


# ---------------------------------------------------------------------------
# directive sequences


@dataclass(frozen=True)
class DirectiveSequence:
    """Eventually periodic directive ``preperiod . period^omega``."""

    d: int
    preperiod: bytes
    period: bytes

    def __post_init__(self):
        _check_alphabet(self.d)
        for part in ("preperiod", "period"):
            value = getattr(self, part)
            if not isinstance(value, bytes):
                object.__setattr__(self, part, bytes(value))
        if not self.period:
            raise DirectiveParseError("directive period must be nonempty")
        letters = self.preperiod + self.period
        if max(letters) >= self.d:
            raise DomainError(f"directive letter {max(letters)} outside alphabet of size {self.d}")

    @classmethod
    def parse(cls, text: str, d: int | None = None) -> DirectiveSequence:
        """Parse ``pre:period``; ``d`` defaults to one more than the largest letter."""
        if text.count(":") != 1:
            raise DirectiveParseError(f"directive must look like 'pre:period', got {text!r}")
        pre_text, per_text = text.split(":")
        bound = MAX_ALPHABET if d is None else d
        pre = _parse_letters(pre_text, bound)
        per = _parse_letters(per_text, bound)
        if not per:
            raise DirectiveParseError("directive period must be nonempty")
        if d is None:
            d = max(2, max(pre + per) + 1)
        return cls(d, pre, per)

    @property
    def is_valid_ar(self) -> bool:
        return set(self.period) == set(range(self.d))

    def missing_letters(self) -> list[int]:
        return sorted(set(range(self.d)) - set(self.period))

    def require_valid(self) -> None:
        if not self.is_valid_ar:
            missing = ", ".join(map(str, self.missing_letters()))
            raise InvalidDirective(
                f"directive {self} is not Arnoux-Rauzy: letter(s) {missing} missing from the period"
            )

    def letter(self, n: int) -> int:
        return directive_letter(self, n)

    def letters(self, count: int) -> bytes:
        return bytes(self.letter(n) for n in range(count))

    def shift(self, k: int) -> DirectiveSequence:
        """Directive ``(i_{n+k})_{n >= 0}``."""
        if k <= len(self.preperiod):
            return DirectiveSequence(self.d, self.preperiod[k:], self.period)
        r = (k - len(self.preperiod)) % len(self.period)
        return DirectiveSequence(self.d, b"", self.period[r:] + self.period[:r])

    def __str__(self) -> str:
        if self.d <= 10:
            return f"{format_letters(self.preperiod, self.d)}:{format_letters(self.period, self.d)}"
        pre = ",".join(map(str, self.preperiod))
        per = ",".join(map(str, self.period))
        return f"[{pre}]:[{per}]"


def directive_letter(ds: DirectiveSequence, n: int) -> int:
    if n < 0:
        raise DomainError("directive index must be nonnegative")
    if n < len(ds.preperiod):
        return ds.preperiod[n]
    return ds.period[(n - len(ds.preperiod)) % len(ds.period)]


def dbonacci_directive(d: int) -> DirectiveSequence:
    if not isinstance(d, int) or d < 2:
        raise DomainError(f"d-bonacci directive needs d >= 2, got {d!r}")
    return DirectiveSequence(d, b"", bytes(range(d)))


def random_directive(
    d: int, rng: random.Random, max_preperiod: int = 3, extra_period: int | None = None
) -> DirectiveSequence:
    """A random VALID-AR directive: every letter appears in the period."""
    extra = d if extra_period is None else extra_period
    pre = bytes(rng.randrange(d) for _ in range(rng.randint(0, max_preperiod)))
    per = list(range(d)) + [rng.randrange(d) for _ in range(rng.randint(0, extra))]
    rng.shuffle(per)
    return DirectiveSequence(d, pre, bytes(per))


# ---------------------------------------------------------------------------
# prefix generation


@dataclass(frozen=True)
class ARWordPrefix:
    """A materialized prefix of the standard Arnoux-Rauzy word of ``directive``.

    ``directive`` is None for a word read from elsewhere; such a prefix cannot grow.
    """

    directive: DirectiveSequence | None
    buffer: FiniteWord
    depth: int = 0
    budget: int = field(default=DEFAULT_BUDGET, compare=False)

    @classmethod
    def from_word(cls, word: FiniteWord) -> ARWordPrefix:
        return cls(None, word, 0, max(len(word), 1))

    @property
    def d(self) -> int:
        return self.buffer.d

    @property
    def symbols(self) -> bytes:
        return self.buffer.symbols

    def __len__(self) -> int:
        return len(self.buffer)

    @property
    def can_grow(self) -> bool:
        return self.directive is not None and 2 * max(len(self), 1) <= self.budget

    def grow(self, factor: int = 2) -> ARWordPrefix:
        """A new, longer prefix of the same word (the receiver is untouched)."""
        if self.directive is None:
            raise BudgetExceeded("prefix has no directive and cannot be extended")
        return generate_prefix(self.directive, factor * max(len(self), 1), self.budget)


def generate_prefix(ds: DirectiveSequence, length: int, budget: int | None = None) -> ARWordPrefix:
    """Prefix of exactly ``length`` symbols of the standard AR word directed by ``ds``.

    Tracks the images of ``psi_k = phi_{i_0} ... phi_{i_{k-1}}`` through
    ``psi_{k+1}(a) = psi_k(i_k) psi_k(a)`` for ``a != i_k``; the word is the
    limit of the nested prefixes ``psi_k(i_k)``. Images are clipped at
    ``length`` since only that much of them can ever be read.
    """
    ds.require_valid()
    if budget is None:
        budget = default_budget()
    if length < 0:
        raise DomainError("prefix length must be nonnegative")
    if length > budget:
        raise BudgetExceeded(f"prefix of {length} symbols exceeds the budget of {budget}")
    images = [bytes([a]) for a in range(ds.d)]
    k = 0
    while len(images[ds.letter(k)]) < length:
        i = ds.letter(k)
        head = images[i]
        images = [head if a == i else (head + images[a])[:length] for a in range(ds.d)]
        k += 1
    word = FiniteWord(images[ds.letter(k)][:length], ds.d)
    return ARWordPrefix(ds, word, k, budget)


def psi_images(ds: DirectiveSequence, k: int, budget: int | None = None) -> list[FiniteWord]:
    """Materialized images ``phi_{i_0} ... phi_{i_{k-1}}(a)`` for every letter."""
    if budget is None:
        budget = default_budget()
    images = [bytes([a]) for a in range(ds.d)]
    for j in range(k):
        i = ds.letter(j)
        head = images[i]
        images = [head if a == i else head + images[a] for a in range(ds.d)]
        if max(map(len, images)) > budget:
            raise BudgetExceeded(f"images of psi_{j + 1} exceed the budget of {budget}")
    return [FiniteWord(img, ds.d) for img in images]
