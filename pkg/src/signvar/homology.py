"""Ranks of sparse integer matrices, exact or modulo a large prime."""

from __future__ import annotations

from math import gcd

PRIME = (1 << 61) - 1

# columns above this count switch from exact integer elimination to mod-PRIME
EXACT_COLUMN_LIMIT = 50_000


def _content(v: dict[int, int]) -> int:
    g = 0
    for x in v.values():
        g = gcd(g, x)
        if g == 1:
            break
    return g


def rank_exact(columns: list[dict[int, int]]) -> int:
    """Rank over Q by fraction-free elimination on sparse integer columns.

    Each reduced column is divided by the gcd of its entries, which keeps the
    integers small for boundary matrices.
    """
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for col in columns:
        v = {k: x for k, x in col.items() if x}
        while v:
            p = max(v)
            u = pivots.get(p)
            if u is None:
                g = _content(v)
                if g > 1:
                    v = {k: x // g for k, x in v.items()}
                pivots[p] = v
                rank += 1
                break
            a, b = v[p], u[p]
            g = gcd(a, b)
            a, b = a // g, b // g
            w = {k: b * x for k, x in v.items()}
            for k, x in u.items():
                y = w.get(k, 0) - a * x
                if y:
                    w[k] = y
                else:
                    w.pop(k, None)
            g = _content(w)
            if g > 1:
                w = {k: x // g for k, x in w.items()}
            v = w
    return rank


def rank_mod_p(columns: list[dict[int, int]], prime: int = PRIME) -> int:
    """Rank over GF(prime); a lower bound for the rank over Q."""
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for col in columns:
        v = {k: x % prime for k, x in col.items() if x % prime}
        while v:
            p = max(v)
            u = pivots.get(p)
            if u is None:
                inv = pow(v[p], -1, prime)
                pivots[p] = {k: x * inv % prime for k, x in v.items()}
                rank += 1
                break
            a = v[p]
            for k, x in u.items():
                y = (v.get(k, 0) - a * x) % prime
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
    return rank


def matrix_rank(columns: list[dict[int, int]], mode: str = "auto") -> tuple[int, str]:
    """Return ``(rank, mode_used)`` with mode ``"exact"`` or ``"mod-p"``."""
    if mode == "auto":
        mode = "exact" if len(columns) <= EXACT_COLUMN_LIMIT else "mod-p"
    if mode == "exact":
        return rank_exact(columns), "exact"
    if mode == "mod-p":
        return rank_mod_p(columns), "mod-p"
    raise ValueError(f"unknown rank mode {mode!r}")
