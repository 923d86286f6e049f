"""Projective sign vectors and the sign-variation posets built from them.

A sign vector of length ``n`` is stored as two ``n``-bit masks: ``support``
(bit ``i-1`` set when entry ``i`` is nonzero) and ``neg`` (bit set when
entry ``i`` is ``-``; always a subset of ``support``).  Vectors are kept in
canonical projective form, first nonzero entry ``+``, so two vectors are
projectively equivalent exactly when their masks are equal.

Positions are 1-indexed throughout the public API.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_N = 16

FlipSet = frozenset  # frozenset[int] of 1-indexed positions

_CHARS = {"+": 1, "-": -1, "0": 0}


class SignVectorError(ValueError):
    pass


class AllZeroError(SignVectorError):
    pass


def _lowest_bit(mask: int) -> int:
    return mask & -mask


@dataclass(frozen=True, slots=True)
class SignVector:
    n: int
    support: int
    neg: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise SignVectorError(f"length {self.n} outside 1..{MAX_N}")
        full = (1 << self.n) - 1
        if self.support & ~full or self.neg & ~self.support:
            raise SignVectorError("masks inconsistent with length")
        if self.support == 0:
            raise AllZeroError("the zero vector is not a projective sign vector")
        if self.neg & _lowest_bit(self.support):
            raise SignVectorError("not canonical: first nonzero entry must be +")

    @classmethod
    def from_masks(cls, n: int, support: int, neg: int) -> "SignVector":
        """Build from raw masks, negating to canonical form when needed."""
        neg &= support
        if neg & _lowest_bit(support):
            neg ^= support
        return cls(n, support, neg)

    @classmethod
    def from_entries(cls, entries: Sequence[int]) -> "SignVector":
        support = neg = 0
        for i, e in enumerate(entries):
            if e > 0:
                support |= 1 << i
            elif e < 0:
                support |= 1 << i
                neg |= 1 << i
        if support == 0:
            raise AllZeroError("the zero vector is not a projective sign vector")
        return cls.from_masks(len(entries), support, neg)

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(
            0 if not self.support >> i & 1 else (-1 if self.neg >> i & 1 else 1)
            for i in range(self.n)
        )

    def negated_entries(self) -> tuple[int, ...]:
        return tuple(-e for e in self.entries)

    def restrict(self, support: int) -> "SignVector":
        """Zero out every entry outside ``support`` (must stay nonzero)."""
        return SignVector.from_masks(self.n, self.support & support, self.neg & support)

    def __str__(self) -> str:
        return "".join("0" if e == 0 else ("+" if e > 0 else "-") for e in self.entries)

    def __repr__(self) -> str:
        return f"SignVector({str(self)!r})"

    def sort_key(self) -> str:
        return str(self)


Chain = tuple  # tuple[SignVector, ...], strictly increasing under leq


def parse(text: str) -> SignVector:
    """Parse ``"0+-"``-style text into its canonical representative."""
    if not text:
        raise SignVectorError("empty sign vector")
    bad = set(text) - set(_CHARS)
    if bad:
        raise SignVectorError(f"illegal characters {sorted(bad)} in {text!r}")
    if len(text) > MAX_N:
        raise SignVectorError(f"length {len(text)} exceeds {MAX_N}")
    return SignVector.from_entries([_CHARS[c] for c in text])


def parse_chain(text: str) -> tuple[SignVector, ...]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    return tuple(parse(p) for p in parts)


def _nonzero_signs(entries: Iterable[int]) -> list[int]:
    return [e for e in entries if e != 0]


def var(v: SignVector) -> int:
    """Number of sign changes once zeros are deleted."""
    signs = _nonzero_signs(v.entries)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def wt(v: SignVector) -> int:
    return v.support.bit_count()


def bar_of_entries(entries: Sequence[int]) -> frozenset[int]:
    """Cyclic sign flips of a raw entry sequence; the zero vector has none."""
    signs = _nonzero_signs(entries)
    if not signs:
        return frozenset()
    last = signs[-1]
    flips = []
    for i, e in enumerate(entries, start=1):
        if e == 0:
            continue
        if e != last:
            flips.append(i)
        last = e
    return frozenset(flips)


def bar(v: SignVector) -> frozenset[int]:
    """Positions whose nearest cyclically preceding nonzero entry has the opposite sign."""
    return bar_of_entries(v.entries)


def bar_mask(v: SignVector) -> int:
    """``bar(v)`` as a bitmask (bit ``i-1`` for position ``i``)."""
    # entry i differs from the previous nonzero entry, with the last nonzero
    # entry wrapping around to precede the first
    mask = 0
    support, neg = v.support, v.neg
    top = support.bit_length() - 1
    prev = neg >> top & 1
    s = support
    while s:
        low = _lowest_bit(s)
        cur = 1 if neg & low else 0
        if cur != prev:
            mask |= low
        prev = cur
        s ^= low
    return mask


def mask_to_positions(mask: int) -> frozenset[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def leq(a: SignVector, b: SignVector) -> bool:
    """``a <= b``: ``a`` is ``±b`` with some entries replaced by zero."""
    if a.n != b.n:
        raise SignVectorError("sign vectors of different lengths are incomparable")
    if a.support & ~b.support:
        return False
    diff = (a.neg ^ b.neg) & a.support
    return diff == 0 or diff == a.support


def lt(a: SignVector, b: SignVector) -> bool:
    return a.support != b.support and leq(a, b)


def is_chain(vectors: Sequence[SignVector]) -> bool:
    return all(lt(a, b) for a, b in zip(vectors, vectors[1:]))


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def enumerate_pv(n: int, m: int) -> tuple[SignVector, ...]:
    """All canonical vectors of length ``n`` with ``var <= m``, sorted by text."""
    if not 1 <= n <= MAX_N:
        raise SignVectorError(f"n={n} outside 1..{MAX_N}")
    if not 0 <= m <= n - 1:
        raise SignVectorError(f"m={m} outside 0..{n - 1}")
    out = []
    for support in range(1, 1 << n):
        free = support ^ _lowest_bit(support)
        for neg in _submasks(free):
            v = SignVector(n, support, neg)
            if var(v) <= m:
                out.append(v)
    out.sort(key=SignVector.sort_key)
    return tuple(out)
