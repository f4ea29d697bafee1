"""Independent brute-force syzygy dimensions, for cross-checking.

Nothing here imports the package.  Monomials are multisets of variable
indices (combinations_with_replacement), wedge indices are plain lex
combinations, matrices are dicts keyed by basis tuples, and ranks are
exact over Q via tests/oracles.py.  Deliberately different bookkeeping
from the package at every step.
"""

from __future__ import annotations

import itertools

from oracles import fraction_sparse_rank


def monos(kind: str, dims, cls) -> list:
    """Section monomials of O(cls) as tuples of sorted variable multisets."""
    if kind == "pn":
        (n,) = dims
        (m,) = cls
        if m < 0:
            return []
        return [
            (c,) for c in itertools.combinations_with_replacement(range(n + 1), m)
        ]
    s, t = dims
    a, b = cls
    if a < 0 or b < 0:
        return []
    left = itertools.combinations_with_replacement(range(s + 1), a)
    out = []
    for l in left:
        for r in itertools.combinations_with_replacement(range(t + 1), b):
            out.append((l, r))
    return out


def mono_mul(x, y):
    """Product of two multiset monomials, factorwise."""
    return tuple(tuple(sorted(a + b)) for a, b in zip(x, y))


def cls_add(c1, c2):
    return tuple(a + b for a, b in zip(c1, c2))


def cls_scale(k, c):
    return tuple(k * a for a in c)


def koszul_matrix(kind, dims, A, B, d, p, q) -> dict:
    """dict[(row_key, col_key)] -> sign for the arrow out of (p, q)."""
    L = cls_scale(d, A)
    V = monos(kind, dims, L)
    src = monos(kind, dims, cls_add(B, cls_scale(q, L)))
    mat = {}
    if p < 1 or not src:
        return mat
    for S in itertools.combinations(range(len(V)), p):
        for f in src:
            col = (S, f)
            for j, idx in enumerate(S):
                row = (tuple(x for x in S if x != idx), mono_mul(f, V[idx]))
                mat[(row, col)] = 1 if j % 2 == 0 else -1
    return mat


def _comb(n, k):
    import math

    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def _rank_q(mat) -> int:
    """Exact rational rank of a dict matrix keyed by (row_key, col_key)."""
    if not mat:
        return 0
    row_keys = {}
    col_keys = {}
    triples = []
    for (rk, ck), v in mat.items():
        r = row_keys.setdefault(rk, len(row_keys))
        c = col_keys.setdefault(ck, len(col_keys))
        triples.append((r, c, v))
    return fraction_sparse_rank(triples, len(row_keys), len(col_keys))


def kpq(kind, dims, A, B, d, p, q) -> int:
    """dim K_{p,q} over Q, assembled and reduced independently."""
    L = cls_scale(d, A)
    V = monos(kind, dims, L)
    mid = monos(kind, dims, cls_add(B, cls_scale(q, L)))
    middle = _comb(len(V), p) * len(mid)
    if middle == 0:
        return 0
    out_m = koszul_matrix(kind, dims, A, B, d, p, q)
    in_m = koszul_matrix(kind, dims, A, B, d, p + 1, q - 1)
    dim = middle - _rank_q(out_m) - _rank_q(in_m)
    assert dim >= 0
    return dim
