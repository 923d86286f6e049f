"""Signed permutations, their descents, and the saturated chains they index."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .signvec import SignVector, wt


class SignedPermError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class SignedPerm:
    """A signed permutation in window notation, e.g. ``(-2, 3, 4, -1)``."""

    window: tuple[int, ...]

    def __post_init__(self):
        w = self.window
        n = len(w)
        if n == 0:
            raise SignedPermError("empty window")
        if any(a == 0 for a in w):
            raise SignedPermError("window entries must be nonzero")
        if any(abs(a) > n for a in w):
            raise SignedPermError(f"entry out of range for n={n}: {w}")
        if len({abs(a) for a in w}) != n:
            raise SignedPermError(f"repeated absolute value in {w}")

    @classmethod
    def from_pair(cls, perm, negatives) -> "SignedPerm":
        neg = set(negatives)
        return cls(tuple(-a if a in neg else a for a in perm))

    @classmethod
    def identity(cls, n: int) -> "SignedPerm":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.window)

    @property
    def perm(self) -> tuple[int, ...]:
        return tuple(abs(a) for a in self.window)

    @property
    def negatives(self) -> frozenset[int]:
        """Absolute values carried with a negative sign (the set X of the pair view)."""
        return frozenset(-a for a in self.window if a < 0)

    def __str__(self) -> str:
        return ",".join(str(a) for a in self.window)

    def pretty(self) -> str:
        """Compact one-line form with overbars as combining macrons (n <= 9)."""
        return "".join(str(abs(a)) + ("̄" if a < 0 else "") for a in self.window)


@dataclass(frozen=True, slots=True)
class DescentData:
    descent_set: frozenset[int]

    @property
    def des(self) -> int:
        return len(self.descent_set)


def parse_window(text: str) -> SignedPerm:
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(p == "" for p in parts):
        raise SignedPermError(f"malformed window {text!r}")
    try:
        window = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise SignedPermError(f"malformed window {text!r}") from exc
    return SignedPerm(window)


def is_even_signed(p: SignedPerm) -> bool:
    return sum(1 for a in p.window if a < 0) % 2 == 0


def descent_data(p: SignedPerm) -> DescentData:
    w = (0,) + p.window
    return DescentData(frozenset(i for i in range(p.n) if w[i] > w[i + 1]))


def _even_sign_sets(n: int, m: int) -> list[tuple[int, ...]]:
    sets = [
        c
        for k in range(0, min(m, n) + 1, 2)
        for c in itertools.combinations(range(1, n + 1), k)
    ]
    sets.sort()
    return sets


def enumerate_sdn(n: int, m: int | None = None) -> Iterator[SignedPerm]:
    """Even signed permutations with at most ``m`` negatives (all when ``m`` is None).

    Order is lexicographic on (absolute word, sorted negative set).
    """
    if n < 1:
        raise SignedPermError("n must be positive")
    if m is None:
        m = n
    if not 0 <= m <= n:
        raise SignedPermError(f"m={m} outside 0..{n}")
    sign_sets = _even_sign_sets(n, m)
    for perm in itertools.permutations(range(1, n + 1)):
        for neg in sign_sets:
            yield SignedPerm.from_pair(perm, neg)


def _even_sign_rows(n: int) -> np.ndarray:
    """Rows of +/-1 indexed by absolute value, one per even-size negative set."""
    masks = np.arange(1 << n, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(n)) & 1
    even = bits.sum(axis=1) % 2 == 0
    return (1 - 2 * bits[even]).astype(np.int8)


def eulerian_d(n: int, chunk: int = 5040) -> list[int]:
    """``D(n, k)`` for ``k = 0..n`` by counting descents over every element of S^D_n."""
    if n < 1:
        raise SignedPermError("n must be positive")
    signs = _even_sign_rows(n)
    counts = np.zeros(n + 1, dtype=np.int64)
    perms = itertools.permutations(range(1, n + 1))
    while True:
        block = np.array(list(itertools.islice(perms, chunk)), dtype=np.int8)
        if block.size == 0:
            break
        # window[s, p, i] = perm[p, i] * sign of value perm[p, i] under sign row s
        windows = block[None, :, :] * signs[:, block - 1]
        w = np.concatenate(
            [np.zeros(windows.shape[:2] + (1,), dtype=np.int8), windows], axis=2
        )
        des = (w[..., :-1] > w[..., 1:]).sum(axis=2)
        counts += np.bincount(des.ravel(), minlength=n + 1)
    return [int(c) for c in counts]


def eulerian_d_bruteforce(n: int) -> list[int]:
    """Reference count through the scalar ``descent_data`` path."""
    counts = [0] * (n + 1)
    for p in enumerate_sdn(n):
        counts[descent_data(p).des] += 1
    return counts


def zero_free_vector(n: int, flips: frozenset[int]) -> SignVector:
    """The zero-free canonical vector whose cyclic sign flips are ``flips``."""
    if len(flips) % 2:
        raise SignedPermError("a zero-free vector has an even number of cyclic flips")
    entries = [1]
    for i in range(2, n + 1):
        entries.append(-entries[-1] if i in flips else entries[-1])
    return SignVector.from_entries(entries)


def chain_of_perm(p: SignedPerm, n: int | None = None) -> tuple[SignVector, ...]:
    """The saturated chain indexed by an even signed permutation.

    The i-th element has support equal to the last i absolute values of the
    window; all elements carry the signs of the zero-free top vector.
    """
    n = p.n if n is None else n
    if n != p.n:
        raise SignedPermError(f"permutation has length {p.n}, expected {n}")
    if not is_even_signed(p):
        raise SignedPermError(f"{p} is not even-signed")
    top = zero_free_vector(n, p.negatives)
    chain = []
    support = 0
    for a in reversed(p.perm):
        support |= 1 << (a - 1)
        chain.append(top.restrict(support))
    return tuple(chain)


def bottom_chain(p: SignedPerm, n: int | None = None) -> tuple[SignVector, ...]:
    """Subchain of :func:`chain_of_perm` at weights ``n - i`` for each descent ``i``."""
    full = chain_of_perm(p, n)
    n = p.n
    weights = {n - i for i in descent_data(p).descent_set}
    return tuple(v for v in full if wt(v) in weights)


def d_table_json(n: int, table: list[int] | None = None) -> dict:
    return {"n": n, "D": list(table if table is not None else eulerian_d(n))}
