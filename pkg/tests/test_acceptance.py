"""Exit criteria, one test per criterion, each at its stated tolerance."""

import random
import time
from math import comb, factorial

import pytest

from signvar.identities import cm_grid, corollary_ds, cross_check, dehn_sommerville
from signvar.ordercomplex import build_complex, f_vector, h_vector, homology_ranks, reduced_euler
from signvar.partition import (
    check_removal,
    check_subset_removal,
    partition,
    phi,
    removal_criterion,
    subset_removal_criterion,
)
from signvar.signvec import bar, bar_of_entries, enumerate_pv, parse_chain, var
from signvar.sperm import bottom_chain, chain_of_perm, descent_data, enumerate_sdn, eulerian_d, parse_window

from test_partition import random_chain

GRID = cm_grid(5)


def timed(fn, repeat=1):
    best, value = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t)
    return value, best


def test_01_golden_examples(criterion):
    c1 = parse_chain("0+-00000+,0+-0-+00+,0+---+-++")
    c2 = parse_chain("0+-00000-,0+-0-+00-,0+---+-+-")
    r1, t1 = timed(lambda: phi(c1, 9), repeat=5)
    r2, t2 = timed(lambda: phi(c2, 9), repeat=5)
    p = parse_window("-2,3,1,5,-4")
    (top, bot), t3 = timed(lambda: (chain_of_perm(p), bottom_chain(p)), repeat=5)
    ok = (
        r1.perm.window == (1, -8, -7, 4, -6, 5, -3, 2, 9)
        and [r1.ell(i) for i in (4, 3, 2, 1, 0)] == [0, 1, 4, 6, 9]
        and r2.perm.window == (1, -8, -7, 4, -6, 5, -9, -3, -2)
        and [str(v) for v in top] == ["000+0", "000++", "+00++", "+0-++", "+--++"]
        and [str(v) for v in bot] == ["000+0", "+00++", "+--++"]
    )
    slowest = max(t1, t2, t3)
    criterion(ok and slowest < 1e-3, f"slowest op {slowest * 1e6:.0f} us")


def test_02_f_h_golden(criterion):
    def run():
        k21, k32 = build_complex(2, 1), build_complex(3, 2)
        f21 = f_vector(k21)
        return f21, h_vector(f21, 2), f_vector(k32)

    (f21, h21, f32), elapsed = timed(run)
    ok = f21 == [1, 4, 4] and h21 == [1, 2, 1] and f32 == [1, 13, 36, 24]
    criterion(ok and elapsed < 1.0, f"{elapsed:.3f} s")


def test_03_facet_bijection(criterion):
    start = time.perf_counter()
    ok = True
    for n in range(1, 7):
        K = build_complex(n, n - 1)
        facets = [K.chain(f) for f in K.facets]
        ok &= len(facets) == 2 ** (n - 1) * factorial(n)
        forward = {phi(c, n).perm: c for c in facets}
        ok &= len(forward) == len(facets)
        ok &= all(chain_of_perm(p) == c for p, c in forward.items())
        ok &= all(phi(chain_of_perm(p), n).perm == p for p in enumerate_sdn(n))
        ok &= set(forward) == set(enumerate_sdn(n))
        if n == 5:
            elapsed_5 = time.perf_counter() - start
    elapsed = time.perf_counter() - start
    criterion(ok and elapsed < 120, f"n<=5 {elapsed_5:.1f} s, n<=6 {elapsed:.1f} s")


@pytest.fixture(scope="module")
def certificates():
    start = time.perf_counter()
    out = {}
    for n, m in GRID:
        K = build_complex(n, m)
        out[(n, m)] = (K, partition(n, m, K))
    return out, time.perf_counter() - start


def test_04_partition_certificates(criterion, certificates):
    certs, elapsed = certificates
    ok = True
    for (n, m), (K, cert) in certs.items():
        ok &= cert.verified
        ok &= all(len(faces) == 2 ** (n - descent_data(p).des) for p, faces in cert.fibers.items())
        ok &= sum(len(faces) for faces in cert.fibers.values()) == K.num_faces
    criterion(ok and elapsed < 300, f"{len(certs)} grid points in {elapsed:.1f} s")


def test_05_h_identity(criterion, certificates):
    certs, _ = certificates
    ok = True
    for (n, m), (K, cert) in certs.items():
        reports = cross_check(n, m, K, cert)
        ok &= all(r.passed for r in reports)
        if m == n - 1:
            f = f_vector(K)
            ok &= h_vector(f, len(f) - 1) == eulerian_d(n)
    criterion(ok, f"grid {GRID}")


def test_06_corollary_ds(criterion):
    ok = True
    for n in range(1, 8):
        ok &= all(r.passed for r in corollary_ds(n))
    D8, elapsed = timed(lambda: eulerian_d(8))
    ok &= sum(D8) == 5_160_960
    ok &= all(r.passed for r in corollary_ds(8, D8))
    criterion(ok and elapsed < 60, f"D(8,.) in {elapsed:.2f} s")


def test_07_dehn_sommerville(criterion):
    ok = True
    for n in range(2, 6):
        K = build_complex(n, n - 1)
        f = f_vector(K)
        h = h_vector(f, len(f) - 1)
        chi = reduced_euler(K)
        ok &= chi == (-1 if n % 2 == 0 else 0)
        ok &= all(r.passed for r in dehn_sommerville(h, n, chi))
    criterion(ok)


def test_08_rational_homology(criterion):
    start = time.perf_counter()
    ok = True
    modes = set()
    for n, m in [(2, 1), (3, 2), (4, 3), (4, 2), (5, 2)]:
        betti, mode = homology_ranks(build_complex(n, m))
        modes.add(mode)
        expected = [0] * n
        if m % 2:
            expected[m] = 1
        ok &= betti == expected
    elapsed = time.perf_counter() - start
    criterion(ok and elapsed < 300, f"{elapsed:.1f} s, rank mode {sorted(modes)}")


def test_09_property_suites(criterion):
    ok = True
    for n in range(1, 9):
        for v in enumerate_pv(n, n - 1):
            flips = bar(v)
            ok &= len(flips) % 2 == 0
            ok &= all(v.entries[i - 1] != 0 for i in flips)
            ok &= bar_of_entries(v.negated_entries()) == flips
            k = var(v)
            ok &= len(flips) == k + (k % 2)
    trials = 0
    for n in range(1, 7):
        rng = random.Random(90 + n)
        for _ in range(10_000):
            chain = random_chain(rng, n)
            i = rng.randint(1, len(chain))
            ok &= check_removal(chain, i, n) == removal_criterion(chain, i, n)
            I = {j for j in range(1, len(chain) + 1) if rng.random() < 0.5}
            ok &= check_subset_removal(chain, I, n) == subset_removal_criterion(chain, I, n)
            trials += 1
    for n, m in GRID:
        f = f_vector(build_complex(n, m))
        ok &= min(h_vector(f, len(f) - 1)) >= 0
    criterion(ok, f"{trials} randomized chains, bar exhaustive n<=8")
