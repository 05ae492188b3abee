"""Degree-wise linear algebra on homogeneous ideals.

The degree-k piece of an ideal generated by homogeneous g_j is spanned by the
products m*g_j with m a monomial of degree k - deg g_j. Containment of
homogeneous ideals can be decided one generator degree at a time on these
finite-dimensional pieces.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from operator import add

import numpy as np

from . import monomial as mono
from .groebner import to_integer, to_modp

# largest prime below 2^31; products of two residues fit in int64
CERT_PRIME = 2147483647


def monomials_of_degree(n: int, k: int) -> list:
    out = []
    for combo in combinations_with_replacement(range(n), k):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def monomial_piece(gens, n: int, k: int) -> list:
    """Degree-k monomials of the monomial ideal with minimal generators ``gens``."""
    if k < 0:
        return []
    return [e for e in monomials_of_degree(n, k) if mono.contains(gens, e)]


def piece_rows(polys, n: int, k: int) -> list:
    """Term dicts spanning the degree-k piece of the ideal generated by ``polys``."""
    rows = []
    for g in polys:
        terms = dict(g.terms)
        dg = sum(next(iter(terms)))
        if dg > k:
            continue
        for u in monomials_of_degree(n, k - dg):
            rows.append({tuple(map(add, e, u)): c for e, c in terms.items()})
    return rows


def rank_modp(rows, p: int = CERT_PRIME, stop: int | None = None) -> int:
    """Rank of the coefficient matrix of ``rows`` over F_p (early exit at ``stop``)."""
    rows = [to_modp(r, p) for r in rows]
    rows = [r for r in rows if r]
    if not rows:
        return 0
    cols = {}
    for r in rows:
        for e in r:
            cols.setdefault(e, len(cols))
    M = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for i, r in enumerate(rows):
        for e, c in r.items():
            M[i, cols[e]] = c
    rank = 0
    nrows, ncols = M.shape
    for c in range(ncols):
        if rank == nrows or (stop is not None and rank >= stop):
            break
        nz = np.flatnonzero(M[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        inv = pow(int(M[rank, c]), -1, p)
        M[rank] = M[rank] * inv % p
        below = M[rank + 1 :, c].copy()
        mask = below != 0
        if mask.any():
            sub = M[rank + 1 :][mask]
            sub = (sub - (below[mask, None] * M[rank]) % p) % p
            M[rank + 1 :][mask] = sub
        rank += 1
    return rank


def rank_exact(rows) -> int:
    """Rank over Q by fraction-free elimination on integer rows."""
    piv: dict = {}
    rank = 0
    for r in rows:
        v = to_integer(r)
        while v:
            m = max(v)
            row = piv.get(m)
            if row is None:
                piv[m] = v
                rank += 1
                break
            a, b = row[m], v[m]
            out = {e: c * a for e, c in v.items()}
            for e, c in row.items():
                w = out.get(e, 0) - c * b
                if w:
                    out[e] = w
                else:
                    out.pop(e, None)
            v = to_integer(out)
    return rank
