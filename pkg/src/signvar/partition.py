"""The map from faces of Delta_{n,m} to even signed permutations and its fibers."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .ordercomplex import DEFAULT_FACE_CAP, CapExceeded, OrderComplex, build_complex, f_vector, h_vector
from .poset import boolean_members, is_boolean, Interval
from .signvec import SignVector, bar_mask, is_chain
from .sperm import (
    SignedPerm,
    bottom_chain,
    chain_of_perm,
    descent_data,
    enumerate_sdn,
    is_even_signed,
)

DEFAULT_FIBER_CAP = 10_000_000


class ChainError(ValueError):
    pass


@dataclass(frozen=True)
class PhiResult:
    perm: SignedPerm
    blocks: tuple[tuple[int, ...], ...]  # words for I_{r+1}, I_r, ..., I_1 in window order
    lengths: tuple[int, ...]  # lengths[i] = letters contributed by blocks above index i

    def ell(self, i: int) -> int:
        return self.lengths[i]


def _blocks(n: int, supports: Sequence[int], flips: int) -> list[tuple[int, ...]]:
    """Blocks ``I_1 .. I_{r+1}`` as sorted signed words (low index first)."""
    out = []
    prev = 0
    full = (1 << n) - 1
    for s in list(supports) + [full]:
        new = s & ~prev
        word = []
        i = 1
        bits = new
        while bits:
            if bits & 1:
                word.append(-i if flips >> (i - 1) & 1 else i)
            bits >>= 1
            i += 1
        word.sort()
        out.append(tuple(word))
        prev = s
    return out


def phi_window(n: int, supports: Sequence[int], flips: int) -> tuple[int, ...]:
    """Window of the image of a chain given its support masks and the top's flip mask."""
    window: list[int] = []
    for word in reversed(_blocks(n, supports, flips)):
        window.extend(word)
    return tuple(window)


def _validate(C: Sequence[SignVector], n: int) -> None:
    if any(v.n != n for v in C):
        raise ChainError(f"chain entries must all have length {n}")
    if not is_chain(C):
        raise ChainError("not a strictly increasing chain")


def phi(C: Sequence[SignVector], n: int) -> PhiResult:
    """Image of a chain (possibly empty) under the face-to-permutation map."""
    C = tuple(C)
    _validate(C, n)
    flips = bar_mask(C[-1]) if C else 0
    blocks = _blocks(n, [v.support for v in C], flips)
    r = len(C)
    # lengths[i] = |I_{i+1} u ... u I_{r+1}|, i = 0..r+1
    lengths = [0] * (r + 2)
    for i in range(r, -1, -1):
        lengths[i] = lengths[i + 1] + len(blocks[i])
    window = tuple(a for word in reversed(blocks) for a in word)
    return PhiResult(SignedPerm(window), tuple(reversed(blocks)), tuple(lengths))


def _remove(C: Sequence[SignVector], positions: Iterable[int]) -> tuple[SignVector, ...]:
    drop = set(positions)
    return tuple(v for k, v in enumerate(C, start=1) if k not in drop)


def _flips_of_top(C: Sequence[SignVector]) -> int:
    return bar_mask(C[-1]) if C else 0


def check_removal(C: Sequence[SignVector], i: int, n: int) -> bool:
    """Whether deleting the ``i``-th element (1-indexed) leaves the image unchanged."""
    if not 1 <= i <= len(C):
        raise IndexError(f"position {i} outside 1..{len(C)}")
    return phi(_remove(C, [i]), n).perm == phi(C, n).perm


def removal_criterion(C: Sequence[SignVector], i: int, n: int) -> bool:
    """Descent-based prediction for :func:`check_removal`, without recomputing the map."""
    res = phi(C, n)
    des = descent_data(res.perm).descent_set
    k = len(C)
    if res.ell(i) in des:
        return False
    if i < k:
        return True
    return _flips_of_top(C) == _flips_of_top(C[:-1])


def check_subset_removal(C: Sequence[SignVector], I: Iterable[int], n: int) -> bool:
    I = set(I)
    if any(not 1 <= i <= len(C) for i in I):
        raise IndexError("removal positions out of range")
    return phi(_remove(C, I), n).perm == phi(C, n).perm


def subset_removal_criterion(C: Sequence[SignVector], I: Iterable[int], n: int) -> bool:
    I = set(I)
    res = phi(C, n)
    des = descent_data(res.perm).descent_set
    if any(res.ell(i) in des for i in I):
        return False
    return _flips_of_top(_remove(C, I)) == _flips_of_top(C)


@dataclass
class PartitionCertificate:
    n: int
    m: int
    fibers: dict[SignedPerm, list[tuple[int, ...]]]
    intervals: dict[SignedPerm, tuple[tuple[int, ...], tuple[int, ...]]]
    checks: dict[str, bool]
    h_from_f: list[int]
    h_from_partition: list[int]
    failures: list[dict] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return all(self.checks.values())

    @property
    def verdict(self) -> str:
        return "verified" if self.verified else "failed"

    def to_json(self, with_fibers: bool = False) -> dict:
        out = {
            "n": self.n,
            "m": self.m,
            "verdict": self.verdict,
            "checks": dict(sorted(self.checks.items())),
            "h_from_f": self.h_from_f,
            "h_from_partition": self.h_from_partition,
            "num_fibers": len(self.fibers),
        }
        if self.failures:
            out["failures"] = self.failures
        if with_fibers:
            out["fibers"] = [
                {
                    "perm": list(p.window),
                    "bottom": list(self.intervals[p][0]) if p in self.intervals else None,
                    "top": list(self.intervals[p][1]) if p in self.intervals else None,
                    "faces": sorted(list(f) for f in faces),
                }
                for p, faces in sorted(self.fibers.items(), key=lambda kv: kv[0].window)
            ]
        return out


def expected_image(n: int, m: int) -> set[SignedPerm] | None:
    """The image predicted by the bijection lemma, or None when no prediction applies."""
    if m == n - 1:
        return set(enumerate_sdn(n))
    if m % 2 == 0:
        return set(enumerate_sdn(n, m))
    return None


def partition(
    n: int,
    m: int,
    K: OrderComplex | None = None,
    cap: int = DEFAULT_FACE_CAP,
    fiber_cap: int = DEFAULT_FIBER_CAP,
) -> PartitionCertificate:
    if K is None:
        K = build_complex(n, m, cap)
    P = K.poset
    supports = [v.support for v in P.elements]
    flip_masks = [bar_mask(v) for v in P.elements]

    fibers: dict[tuple[int, ...], list[tuple[int, ...]]] = defaultdict(list)
    total = 0
    for face in K.iter_faces():
        flips = flip_masks[face[-1]] if face else 0
        fibers[phi_window(n, [supports[i] for i in face], flips)].append(face)
        total += 1
        if total > fiber_cap:
            raise CapExceeded("fiber", total, fiber_cap)
    perms = {SignedPerm(w): faces for w, faces in fibers.items()}

    checks: dict[str, bool] = {}
    failures: list[dict] = []

    def fail(check: str, **witness):
        checks[check] = False
        if len(failures) < 20:
            failures.append({"check": check, **witness})

    checks["cover"] = total == K.num_faces
    checks["even_signed"] = True
    checks["interval_in_complex"] = True
    checks["fiber_is_interval"] = True
    checks["boolean"] = True
    checks["fiber_size"] = True

    face_set = K.face_set()
    intervals = {}
    for p, faces in perms.items():
        if not is_even_signed(p):
            fail("even_signed", perm=list(p.window))
            continue
        top_chain = chain_of_perm(p)
        bot_chain = bottom_chain(p)
        try:
            top = K.face_of(top_chain)
            bot = K.face_of(bot_chain)
        except KeyError:
            fail("interval_in_complex", perm=list(p.window), top=[str(v) for v in top_chain])
            continue
        intervals[p] = (bot, top)
        if top not in face_set:
            fail("interval_in_complex", perm=list(p.window), top=list(top))
            continue
        lo, hi = frozenset(bot), frozenset(top)
        members = frozenset(s for s in boolean_members(lo, hi) if _as_face(K, s) in face_set)
        if not is_boolean(Interval(lo, hi, members)):
            fail("boolean", perm=list(p.window))
        if set(map(frozenset, faces)) != members:
            fail("fiber_is_interval", perm=list(p.window), fiber_size=len(faces), interval_size=len(members))
        if len(faces) != 1 << (n - descent_data(p).des):
            fail("fiber_size", perm=list(p.window), fiber_size=len(faces))

    expected = expected_image(n, m)
    if expected is not None:
        checks["image"] = set(perms) == expected
        if not checks["image"]:
            extra = sorted(p.window for p in set(perms) - expected)[:5]
            missing = sorted(p.window for p in expected - set(perms))[:5]
            failures.append({"check": "image", "extra": [list(w) for w in extra], "missing": [list(w) for w in missing]})

    f = f_vector(K)
    h = h_vector(f, len(f) - 1)
    counts = [0] * len(h)
    for p in perms:
        d = descent_data(p).des
        if d >= len(counts):
            counts.extend([0] * (d + 1 - len(counts)))
        counts[d] += 1
    checks["h_identity"] = counts == h
    if not checks["h_identity"]:
        failures.append({"check": "h_identity", "h_from_f": h, "descent_counts": counts})

    return PartitionCertificate(n, m, perms, intervals, checks, h, counts, failures)


def _as_face(K: OrderComplex, ids: Iterable[int]) -> tuple[int, ...]:
    rank = K.poset.rank
    return tuple(sorted(ids, key=lambda i: rank[i]))
