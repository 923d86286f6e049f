"""Numerical instances of the Dehn-Sommerville relations and the h-vector identities."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .ordercomplex import DEFAULT_FACE_CAP, OrderComplex, build_complex, f_vector, h_vector, reduced_euler
from .partition import PartitionCertificate, partition
from .sperm import descent_data, enumerate_sdn, eulerian_d


@dataclass(frozen=True)
class IdentityReport:
    name: str
    parameters: dict = field(hash=False)
    lhs: int
    rhs: int

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "parameters": dict(sorted(self.parameters.items())),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "pass": self.passed,
        }


def dehn_sommerville(h: Sequence[int], d: int, euler_reduced: int) -> list[IdentityReport]:
    """``h_{d-j} - h_j`` against ``(-1)^j C(d,j) ((-1)^(d-1) chi - 1)`` for ``j = 0..d``."""
    if len(h) != d + 1:
        raise ValueError(f"h-vector of length {len(h)} does not match d={d}")
    scale = (-1) ** (d - 1) * euler_reduced - 1
    return [
        IdentityReport(
            "dehn_sommerville",
            {"d": d, "j": j, "euler_reduced": euler_reduced},
            h[d - j] - h[j],
            (-1) ** j * comb(d, j) * scale,
        )
        for j in range(d + 1)
    ]


def corollary_ds(n: int, table: Sequence[int] | None = None) -> list[IdentityReport]:
    """Symmetry of ``D(n, .)`` for even ``n``, shifted by signed binomials for odd ``n``."""
    D = list(table) if table is not None else eulerian_d(n)
    out = []
    for j in range(n + 1):
        rhs = D[n - j] + (0 if n % 2 == 0 else (-1) ** j * comb(n, j))
        out.append(IdentityReport("corollary_ds", {"n": n, "j": j}, D[j], rhs))
    return out


def euler_parity(n: int, euler_reduced: int) -> IdentityReport:
    """Reduced Euler characteristic of the full complex: -1 for even n, 0 for odd n."""
    return IdentityReport("euler_parity", {"n": n}, euler_reduced, -1 if n % 2 == 0 else 0)


def _counts_by(values, size: int) -> list[int]:
    counts = [0] * size
    for v in values:
        if v >= len(counts):
            counts.extend([0] * (v + 1 - len(counts)))
        counts[v] += 1
    return counts


def cross_check(
    n: int,
    m: int,
    K: OrderComplex | None = None,
    cert: PartitionCertificate | None = None,
    cap: int = DEFAULT_FACE_CAP,
) -> list[IdentityReport]:
    """Compare h from the f-vector with descent counts and partition bottoms, per ``j``."""
    if not (m % 2 == 0 or m == n - 1):
        raise ValueError(f"(n, m) = ({n}, {m}): requires m even or m = n - 1")
    if K is None:
        K = build_complex(n, m, cap)
    if cert is None:
        cert = partition(n, m, K)
    f = f_vector(K)
    h = h_vector(f, len(f) - 1)
    size = len(h)

    group = None if m == n - 1 else m
    by_descents = _counts_by((descent_data(p).des for p in enumerate_sdn(n, group)), size)
    by_bottoms = _counts_by((len(bot) for bot, _ in cert.intervals.values()), size)

    out = []
    for j in range(size):
        params = {"n": n, "m": m, "j": j}
        out.append(IdentityReport("h_vs_descents", params, h[j], by_descents[j]))
        out.append(IdentityReport("h_vs_partition", params, h[j], by_bottoms[j]))
    if len(by_descents) > size or len(by_bottoms) > size:
        out.append(IdentityReport("h_length", {"n": n, "m": m}, size, max(len(by_descents), len(by_bottoms))))
    if m == n - 1:
        D = eulerian_d(n)
        out.extend(
            IdentityReport("h_vs_eulerian_d", {"n": n, "m": m, "j": j}, h[j], D[j])
            for j in range(size)
        )
    out.append(IdentityReport("partition_verified", {"n": n, "m": m}, int(cert.verified), 1))
    return out


def h_nonnegative(h: Sequence[int], n: int, m: int) -> IdentityReport:
    return IdentityReport("h_nonnegative", {"n": n, "m": m}, sum(1 for x in h if x < 0), 0)


def cm_grid(n_max: int) -> list[tuple[int, int]]:
    """Parameters with m even or m = n - 1, for n = 1..n_max."""
    return [(n, m) for n in range(1, n_max + 1) for m in range(n) if m % 2 == 0 or m == n - 1]


def verify_point(n: int, m: int, cap: int = DEFAULT_FACE_CAP, K: OrderComplex | None = None) -> list[IdentityReport]:
    """Every identity check for one grid point of the CM grid."""
    if K is None:
        K = build_complex(n, m, cap)
    cert = partition(n, m, K)
    reports = cross_check(n, m, K, cert)
    f = f_vector(K)
    h = h_vector(f, len(f) - 1)
    reports.append(h_nonnegative(h, n, m))
    if m == n - 1:
        chi = reduced_euler(K)
        reports.append(euler_parity(n, chi))
        reports.extend(dehn_sommerville(h, len(h) - 1, chi))
    return reports


def verify_grid(n_max: int, cap: int = DEFAULT_FACE_CAP, corollary_n_max: int | None = None) -> list[IdentityReport]:
    reports = []
    for n, m in cm_grid(n_max):
        reports.extend(verify_point(n, m, cap))
    for n in range(1, (corollary_n_max or n_max) + 1):
        reports.extend(corollary_ds(n))
    return reports
