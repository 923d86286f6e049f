"""The order complex of P_{n,m}: faces, f/h/flag vectors, Euler characteristic, homology."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from . import homology
from .poset import RankedPoset, build_pnm

DEFAULT_FACE_CAP = 5_000_000


class CapExceeded(RuntimeError):
    def __init__(self, what: str, count: int, cap: int):
        super().__init__(f"{what} cap exceeded: reached {count} with cap {cap}")
        self.count = count
        self.cap = cap


@dataclass
class OrderComplex:
    """All chains of ``poset``, grouped so that ``faces[k]`` holds the ``k``-element chains.

    ``faces[0]`` is ``[()]``, the empty face.  Each face is a tuple of
    element IDs in increasing rank order.
    """

    poset: RankedPoset
    faces: list[list[tuple[int, ...]]]
    _face_set: set | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def m(self) -> int:
        return self.poset.m

    @property
    def dim(self) -> int:
        return len(self.faces) - 2

    @property
    def num_faces(self) -> int:
        return sum(len(layer) for layer in self.faces)

    @property
    def facets(self) -> list[tuple[int, ...]]:
        return self.faces[-1]

    def face_set(self) -> set[tuple[int, ...]]:
        if self._face_set is None:
            self._face_set = {f for layer in self.faces for f in layer}
        return self._face_set

    def __contains__(self, face) -> bool:
        return tuple(face) in self.face_set()

    def iter_faces(self):
        for layer in self.faces:
            yield from layer

    def chain(self, face: Sequence[int]):
        return tuple(self.poset.elements[i] for i in face)

    def face_of(self, chain) -> tuple[int, ...]:
        ids = [self.poset.id_of(v) for v in chain]
        ids.sort(key=lambda i: self.poset.rank[i])
        return tuple(ids)


def enumerate_chains(poset: RankedPoset, cap: int = DEFAULT_FACE_CAP) -> list[list[tuple[int, ...]]]:
    by_size: list[list[tuple[int, ...]]] = [[()]]
    count = 1
    above = poset.above
    # ascending rank so every chain extends upward from its last element
    order = sorted(range(len(poset)), key=lambda i: (poset.rank[i], i))
    stack = [(i,) for i in reversed(order)]
    while stack:
        chain = stack.pop()
        k = len(chain)
        if k == len(by_size):
            by_size.append([])
        by_size[k].append(chain)
        count += 1
        if count > cap:
            raise CapExceeded("face", count, cap)
        for j in reversed(above[chain[-1]]):
            stack.append(chain + (j,))
    for layer in by_size:
        layer.sort()
    return by_size


def build_complex(n: int, m: int, cap: int = DEFAULT_FACE_CAP, poset: RankedPoset | None = None) -> OrderComplex:
    if poset is None:
        poset = build_pnm(n, m)
    return OrderComplex(poset, enumerate_chains(poset, cap))


def f_vector(K: OrderComplex) -> list[int]:
    return [len(layer) for layer in K.faces]


def h_vector(f: Sequence[int], d: int) -> list[int]:
    """``h_0..h_d`` from ``f = (f_{-1}, ..., f_{d-1})``, ``d`` = vertices per facet."""
    if len(f) != d + 1:
        raise ValueError(f"f-vector of length {len(f)} does not match d={d}")
    return [
        sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1))
        for k in range(d + 1)
    ]


def complex_h_vector(K: OrderComplex) -> list[int]:
    f = f_vector(K)
    return h_vector(f, len(f) - 1)


def rank_mask(K: OrderComplex, face: Sequence[int]) -> int:
    mask = 0
    for i in face:
        mask |= 1 << K.poset.rank[i]
    return mask


def flag_vectors(K: OrderComplex) -> dict[tuple[int, ...], tuple[int, int]]:
    """Map each rank set ``S`` (sorted tuple) to ``(flag_f_S, flag_h_S)``."""
    ranks = K.n
    flag_f = [0] * (1 << ranks)
    for face in K.iter_faces():
        flag_f[rank_mask(K, face)] += 1
    out = {}
    for s in range(1 << ranks):
        h = 0
        t = s
        while True:
            h += (-1) ** (s ^ t).bit_count() * flag_f[t]
            if t == 0:
                break
            t = (t - 1) & s
        out[tuple(r for r in range(ranks) if s >> r & 1)] = (flag_f[s], h)
    return out


def reduced_euler(K: OrderComplex) -> int:
    # f[0] is f_{-1}; sum of (-1)^i f_i for i >= -1
    return sum(c if k % 2 else -c for k, c in enumerate(f_vector(K)))


def boundary_columns(K: OrderComplex, k: int) -> list[dict[int, int]]:
    """Sparse columns of the boundary map from k-element faces to (k-1)-element faces."""
    lower = {f: i for i, f in enumerate(K.faces[k - 1])}
    cols = []
    for face in K.faces[k]:
        col = {}
        for pos in range(k):
            col[lower[face[:pos] + face[pos + 1:]]] = -1 if pos % 2 else 1
        cols.append(col)
    return cols


def homology_ranks(K: OrderComplex, mode: str = "auto", cap: int = DEFAULT_FACE_CAP) -> tuple[list[int], str]:
    """Reduced rational Betti numbers in degrees ``0..dim`` and the rank mode used.

    The mode is ``"exact"`` when every boundary rank was computed exactly,
    otherwise ``"mod-p"``.
    """
    if K.num_faces > cap:
        raise CapExceeded("boundary matrix", K.num_faces, cap)
    sizes = f_vector(K)
    top = len(sizes) - 1
    ranks = [0] * (top + 2)
    modes = set()
    # ranks[k]: rank of the map from k-element faces down, k = 1..top
    for k in range(1, top + 1):
        r, used = homology.matrix_rank(boundary_columns(K, k), mode)
        ranks[k] = r
        modes.add(used)
    betti = [sizes[k] - ranks[k] - ranks[k + 1] for k in range(1, top + 1)]
    return betti, ("exact" if modes <= {"exact"} else "mod-p")


def complex_report(K: OrderComplex, with_flag: bool = False, with_betti: bool = True) -> dict:
    f = f_vector(K)
    report = {
        "n": K.n,
        "m": K.m,
        "f": f,
        "h": h_vector(f, len(f) - 1),
        "euler_reduced": reduced_euler(K),
    }
    if with_betti:
        betti, mode = homology_ranks(K)
        report["betti"] = betti
        report["homology_mode"] = mode
    if with_flag:
        report["flag"] = [
            {"S": list(s), "f": ff, "h": hh} for s, (ff, hh) in sorted(flag_vectors(K).items())
        ]
    return report
