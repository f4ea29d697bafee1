"""Syzygy spaces from explicit multiplication maps on section monomials.

For a polarized variety with a monomial model (projective spaces and
products of two projective spaces), the graded pieces of the minimal free
resolution of the section ring of L = O(d*A), twisted by an auxiliary
class B, are middle cohomologies of

    wedge^{p+1} V (x) H0(B + (q-1)L)  ->  wedge^p V (x) H0(B + qL)
                                      ->  wedge^{p-1} V (x) H0(B + (q+1)L)

with V = H0(dA).  Each arrow sends e_S (x) f to the signed sum over
removing one index from S and multiplying f by that section.  The arrows
are sparse with entries +-1, so dimensions reduce to two certified ranks
over word-sized prime fields.

Wedge bases are never materialized: a p-subset S = {s_0 < ... < s_{p-1}}
is addressed by its colexicographic rank sum(C(s_i, i+1)), and the rank of
S minus one element comes from prefix/suffix sums of the same binomials,
so assembly is linear in the number of nonzero entries.

Column layout: subset_rank * n_source_monomials + monomial_index; rows the
same with the target twist.  Signs: removing the element at position j
(0-based) carries (-1)^j.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import geometry as geo
from .exactalg import (
    _HAVE_NUMBA,
    AGREED,
    DEFAULT_FIELDS,
    PRIME_SENSITIVE,
    PrimeField,
    RankOptions,
    SparseMatrix,
    certified_rank,
    multiply,
    njit,
)

DEFAULT_SIZE_CAP = 5_000_000


class ModelError(ValueError):
    """The variety has no monomial model for section spaces."""


class SizeCapExceeded(RuntimeError):
    """A term of the requested complex exceeds the configured size cap."""

    def __init__(self, term: str, requested: int, cap: int):
        self.term = term
        self.requested = requested
        self.cap = cap
        super().__init__(
            f"{term} dimension {requested} exceeds size cap {cap}; "
            "raise the cap to force the computation"
        )


# ---------------------------------------------------------------------------
# monomial section models


def _exponents_desc(total: int, nvars: int):
    """Degree-`total` exponent tuples in descending lexicographic order."""
    if nvars == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for rest in _exponents_desc(total - head, nvars - 1):
            yield (head,) + rest


def monomial_basis(v: geo.Variety, c) -> list[tuple[int, ...]]:
    """Ordered monomial basis of H0(O(c)), empty when c is not effective.

    pn: degree-c monomials in n+1 variables, descending lex.
    pp: concatenated exponent vectors, first factor block-major, each
        block descending lex.
    """
    c = tuple(c)
    if v.kind == "gr24":
        raise ModelError(
            "gr24 has no monomial section model; Koszul tables are only "
            "available for pn and pp varieties"
        )
    if v.kind == "pn":
        if c[0] < 0:
            return []
        return list(_exponents_desc(c[0], v.dims[0] + 1))
    a, b = c
    if a < 0 or b < 0:
        return []
    s, t = v.dims
    out = []
    for e1 in _exponents_desc(a, s + 1):
        for e2 in _exponents_desc(b, t + 1):
            out.append(e1 + e2)
    return out


class _ModelCache:
    """Shared bases and multiplication tables for one (variety, A, d)."""

    def __init__(self, v: geo.Variety, A, d: int):
        if d < 1:
            raise ValueError(f"need d >= 1, got {d}")
        self.v = v
        self.A = tuple(A)
        self.d = d
        self.L = geo.vscale(d, self.A)
        self.v_basis = monomial_basis(v, self.L)
        self.N = len(self.v_basis)
        self._bases: dict[tuple, tuple[list, dict]] = {}
        self._prod: dict[tuple, np.ndarray] = {}

    def basis(self, c) -> tuple[list, dict]:
        c = tuple(c)
        got = self._bases.get(c)
        if got is None:
            mons = monomial_basis(self.v, c)
            if len(mons) != geo.h0(self.v, c):
                raise RuntimeError(f"basis size mismatch at twist {c}")
            got = (mons, {m: i for i, m in enumerate(mons)})
            self._bases[c] = got
        return got

    def prod_table(self, src_twist) -> np.ndarray:
        """(n_src, N) table of target indices for monomial * section products."""
        src_twist = tuple(src_twist)
        tab = self._prod.get(src_twist)
        if tab is None:
            src, _ = self.basis(src_twist)
            _, tgt_index = self.basis(geo.vadd(src_twist, self.L))
            tab = np.empty((len(src), self.N), dtype=np.int64)
            for i, m in enumerate(src):
                for j, w in enumerate(self.v_basis):
                    tab[i, j] = tgt_index[tuple(x + y for x, y in zip(m, w))]
            self._prod[src_twist] = tab
        return tab


# ---------------------------------------------------------------------------
# colex subset addressing


def subset_colex_rank(s) -> int:
    """Colex rank of a sorted subset: sum of C(s_i, i+1)."""
    return sum(math.comb(x, i + 1) for i, x in enumerate(s))


def iter_subsets_colex(n: int, p: int):
    """All p-subsets of {0..n-1} in colexicographic order."""
    if p < 0 or p > n:
        return
    s = list(range(p))
    while True:
        yield tuple(s)
        for i in range(p):
            nxt = s[i + 1] if i + 1 < p else n
            if s[i] + 1 < nxt:
                s[i] += 1
                for j in range(i):
                    s[j] = j
                break
        else:
            return


def _choose_table(n: int, p: int) -> np.ndarray:
    """C(m, k) for m < n, k <= p.  Values bounded by C(n-1, p)."""
    tab = np.zeros((max(n, 1), p + 1), dtype=np.int64)
    for m in range(n):
        for k in range(min(m, p) + 1):
            tab[m, k] = math.comb(m, k)
    return tab


@njit(cache=True, nogil=True)
def _assemble_jit(N, p, n_src, n_tgt, prod, choose, rows, cols, vals):  # pragma: no cover
    s = np.arange(p)
    suf = np.zeros(p + 1, np.int64)
    k = 0
    more = True
    while more:
        for i in range(p - 1, -1, -1):
            suf[i] = suf[i + 1] + choose[s[i], i]
        pref = np.int64(0)
        sub_rank = np.int64(0)
        for i in range(p):
            sub_rank += choose[s[i], i + 1]
        base_col = sub_rank * n_src
        for j in range(p):
            minus_rank = pref + suf[j + 1]
            vj = s[j]
            sign = 1 if j % 2 == 0 else -1
            base_row = minus_rank * n_tgt
            for mono in range(n_src):
                rows[k] = base_row + prod[mono, vj]
                cols[k] = base_col + mono
                vals[k] = sign
                k += 1
            pref += choose[s[j], j + 1]
        more = False
        for i in range(p):
            nxt = s[i + 1] if i + 1 < p else N
            if s[i] + 1 < nxt:
                s[i] += 1
                for j2 in range(i):
                    s[j2] = j2
                more = True
                break
    return k


def _assemble_py(N, p, n_src, n_tgt, prod, choose, rows, cols, vals):
    k = 0
    for s in iter_subsets_colex(N, p):
        suf = [0] * (p + 1)
        for i in range(p - 1, -1, -1):
            suf[i] = suf[i + 1] + int(choose[s[i], i])
        pref = 0
        base_col = subset_colex_rank(s) * n_src
        for j in range(p):
            base_row = (pref + suf[j + 1]) * n_tgt
            vj = s[j]
            sign = 1 if j % 2 == 0 else -1
            for mono in range(n_src):
                rows[k] = base_row + prod[mono, vj]
                cols[k] = base_col + mono
                vals[k] = sign
                k += 1
            pref += int(choose[s[j], j + 1])
    return k


def koszul_differential(
    v: geo.Variety,
    A,
    d: int,
    twist,
    p: int,
    field: PrimeField | None = None,
    cache: _ModelCache | None = None,
) -> SparseMatrix:
    """The arrow wedge^p V (x) H0(twist) -> wedge^{p-1} V (x) H0(twist + dA).

    Entries are +-1 (reduced into [1, p-1] when a field is given).
    """
    if p < 0:
        raise ValueError(f"need p >= 0, got {p}")
    cache = cache or _ModelCache(v, A, d)
    twist = tuple(twist)
    src, _ = cache.basis(twist)
    tgt, _ = cache.basis(geo.vadd(twist, cache.L))
    N = cache.N
    n_src, n_tgt = len(src), len(tgt)
    n_cols = math.comb(N, p) * n_src
    n_rows = math.comb(N, p - 1) * n_tgt if p >= 1 else 0
    if p == 0 or p > N or n_src == 0:
        z = np.zeros(0, dtype=np.int64)
        return SparseMatrix(n_rows, n_cols, z, z, z, _checked=True)
    nnz = math.comb(N, p) * p * n_src
    rows = np.empty(nnz, dtype=np.int64)
    cols = np.empty(nnz, dtype=np.int64)
    vals = np.empty(nnz, dtype=np.int64)
    prod = cache.prod_table(twist)
    choose = _choose_table(N, p)
    if _HAVE_NUMBA:
        k = _assemble_jit(N, p, n_src, n_tgt, prod, choose, rows, cols, vals)
    else:
        k = _assemble_py(N, p, n_src, n_tgt, prod, choose, rows, cols, vals)
    if k != nnz:
        raise RuntimeError(f"assembly produced {k} entries, expected {nnz}")
    m = SparseMatrix.from_arrays(n_rows, n_cols, rows, cols, vals)
    if field is not None:
        return m.reduced(field)
    return m


# ---------------------------------------------------------------------------
# certified cell dimensions


@dataclass(frozen=True)
class KpqCell:
    """One syzygy space dimension with its certification tag."""

    p: int
    q: int
    dim: int
    middle_dim: int
    rank_out: int
    rank_in: int
    tag: str


def _twist(B, q: int, L):
    return geo.vadd(tuple(B), geo.vscale(q, L))


def _cap_violation(
    cache: _ModelCache, B, p: int, q: int, size_cap: int
) -> tuple[str, int] | None:
    """(term name, dimension) if a term of the (p, q) complex exceeds the cap."""
    N = cache.N

    def h(j):
        return geo.h0(cache.v, _twist(B, j, cache.L))

    middle = math.comb(N, p) * h(q)
    if middle > size_cap:
        return "middle term", middle
    if h(q - 1) > 0 and p + 1 <= N:
        left = math.comb(N, p + 1) * h(q - 1)
        if left > size_cap:
            return "incoming domain", left
    if p >= 1 and h(q) > 0:
        right = math.comb(N, p - 1) * h(q + 1)
        if right > size_cap:
            return "outgoing target", right
    return None


def _needs_matrix(cache: _ModelCache, B, pp: int, qq: int) -> bool:
    """Whether the arrow from wedge^pp (x) H0(B + qq L) is nonzero-shaped."""
    if pp < 1 or pp > cache.N:
        return False
    return geo.h0(cache.v, _twist(B, qq, cache.L)) > 0


def _rank_of_arrow(
    cache: _ModelCache,
    B,
    pp: int,
    qq: int,
    fields: tuple[PrimeField, PrimeField],
    options: RankOptions | None,
) -> tuple[int, str]:
    m = koszul_differential(
        cache.v, cache.A, cache.d, _twist(B, qq, cache.L), pp, cache=cache
    )
    return certified_rank(m, fields[0], fields[1], options)


def kpq_dim(
    v: geo.Variety,
    A,
    B,
    d: int,
    p: int,
    q: int,
    *,
    fields: tuple[PrimeField, PrimeField] = DEFAULT_FIELDS,
    options: RankOptions | None = None,
    size_cap: int = DEFAULT_SIZE_CAP,
    cache: _ModelCache | None = None,
    memo: dict | None = None,
) -> KpqCell:
    """Certified dimension of the (p, q) syzygy space for (B; O(dA)).

    memo maps (p, source twist) to a certified arrow rank so that the
    shared arrow between vertically adjacent cells is ranked once.
    """
    if p < 0 or q < 0:
        raise ValueError(f"need p, q >= 0, got ({p}, {q})")
    cache = cache or _ModelCache(v, A, d)
    B = tuple(B)
    hit = _cap_violation(cache, B, p, q, size_cap)
    if hit is not None:
        raise SizeCapExceeded(f"{hit[0]} at (p={p}, q={q})", hit[1], size_cap)
    N = cache.N
    h_q = geo.h0(v, _twist(B, q, cache.L))
    middle = math.comb(N, p) * h_q
    if middle == 0:
        return KpqCell(p, q, 0, 0, 0, 0, AGREED)

    def arrow_rank(pp: int, qq: int) -> tuple[int, str]:
        if not _needs_matrix(cache, B, pp, qq):
            return 0, AGREED
        key = (pp, _twist(B, qq, cache.L))
        if memo is not None and key in memo:
            return memo[key]
        got = _rank_of_arrow(cache, B, pp, qq, fields, options)
        if memo is not None:
            memo[key] = got
        return got

    rank_out, tag_out = arrow_rank(p, q)
    rank_in, tag_in = arrow_rank(p + 1, q - 1)
    dim = middle - rank_out - rank_in
    if dim < 0:
        raise RuntimeError(
            f"negative dimension {dim} at (p={p}, q={q}); rank bookkeeping broken"
        )
    tag = AGREED if tag_out == AGREED and tag_in == AGREED else PRIME_SENSITIVE
    return KpqCell(p, q, dim, middle, rank_out, rank_in, tag)


# ---------------------------------------------------------------------------
# tables


@dataclass
class BettiTable:
    """Grid of certified syzygy dimensions for one (variety, A, B, d)."""

    variety: geo.Variety
    A: tuple
    B: tuple
    d: int
    r_d: int
    p_limit: int
    q_values: tuple[int, ...]
    primes: tuple[int, int]
    cells: dict
    uncomputed: dict

    def cell(self, p: int, q: int) -> KpqCell | None:
        return self.cells.get((p, q))

    def dim(self, p: int, q: int) -> int | None:
        c = self.cells.get((p, q))
        return None if c is None else c.dim

    def support(self, q: int, p_from: int = 1) -> tuple[int, ...]:
        """Computed p >= p_from with nonzero dimension in row q."""
        return tuple(
            sorted(
                p
                for (p, qq), c in self.cells.items()
                if qq == q and p >= p_from and c.dim > 0
            )
        )

    def row_missing(self, q: int, p_from: int, p_to: int) -> tuple[int, ...]:
        """p in [p_from, p_to] without a computed cell in row q."""
        return tuple(
            p for p in range(p_from, p_to + 1) if (p, q) not in self.cells
        )

    @property
    def all_agreed(self) -> bool:
        return all(c.tag == AGREED for c in self.cells.values())

    def as_dict(self) -> dict:
        cells = [
            {
                "p": p,
                "q": q,
                "dim": str(c.dim),
                "middle_dim": str(c.middle_dim),
                "rank_out": str(c.rank_out),
                "rank_in": str(c.rank_in),
                "tag": c.tag,
            }
            for (p, q), c in sorted(self.cells.items())
        ]
        skipped = [
            {"p": p, "q": q, "reason": reason}
            for (p, q), reason in sorted(self.uncomputed.items())
        ]
        return {
            "variety": geo.format_variety(self.variety),
            "A": geo.format_class(self.A),
            "B": geo.format_class(self.B),
            "d": self.d,
            "r_d": str(self.r_d),
            "p_limit": self.p_limit,
            "q_values": list(self.q_values),
            "primes": [int(x) for x in self.primes],
            "cells": cells,
            "uncomputed": skipped,
        }


def betti_table(
    v: geo.Variety,
    A,
    B,
    d: int,
    *,
    p_limit: int | None = None,
    q_values=None,
    fields: tuple[PrimeField, PrimeField] = DEFAULT_FIELDS,
    options: RankOptions | None = None,
    size_cap: int = DEFAULT_SIZE_CAP,
    threads: int | None = None,
    progress=None,
) -> BettiTable:
    """Compute a table of syzygy dimensions, sharing arrow ranks between cells.

    Cells whose complex would exceed size_cap are recorded in `uncomputed`
    with a reason instead of failing the whole table.  `threads` parallelizes
    the arrow-rank computations; results are independent of thread count.
    """
    cache = _ModelCache(v, A, d)
    A, B = cache.A, tuple(B)
    n = v.dim
    if cache.N == 0:
        raise ValueError(f"O({geo.format_class(cache.L)}) has no sections")
    r_d = cache.N - 1
    if p_limit is None:
        p_limit = max(r_d - n, 0)
    if p_limit < 0:
        raise ValueError(f"need p_limit >= 0, got {p_limit}")
    if q_values is None:
        q_values = tuple(range(0, n + 2))
    else:
        q_values = tuple(sorted(set(int(q) for q in q_values)))
        if q_values and q_values[0] < 0:
            raise ValueError("q values must be nonnegative")

    wanted = [(p, q) for q in q_values for p in range(0, p_limit + 1)]
    uncomputed: dict = {}
    feasible = []
    for p, q in wanted:
        hit = _cap_violation(cache, B, p, q, size_cap)
        if hit is None:
            feasible.append((p, q))
        else:
            uncomputed[(p, q)] = (
                f"{hit[0]} dimension {hit[1]} exceeds size cap {size_cap}"
            )

    memo: dict = {}
    if threads and threads > 1:
        keys = set()
        for p, q in feasible:
            if _needs_matrix(cache, B, p, q):
                keys.add((p, q))
            if _needs_matrix(cache, B, p + 1, q - 1):
                keys.add((p + 1, q - 1))
        ordered = sorted(keys)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            ranks = list(
                pool.map(
                    lambda k: _rank_of_arrow(cache, B, k[0], k[1], fields, options),
                    ordered,
                )
            )
        for (pp, qq), got in zip(ordered, ranks):
            memo[(pp, _twist(B, qq, cache.L))] = got

    cells = {}
    done = 0
    for p, q in feasible:
        cells[(p, q)] = kpq_dim(
            v, A, B, d, p, q,
            fields=fields, options=options, size_cap=size_cap,
            cache=cache, memo=memo,
        )
        done += 1
        if progress is not None:
            progress(done, len(feasible), (p, q))

    return BettiTable(
        variety=v,
        A=A,
        B=B,
        d=d,
        r_d=r_d,
        p_limit=p_limit,
        q_values=q_values,
        primes=(fields[0].p, fields[1].p),
        cells=cells,
        uncomputed=uncomputed,
    )


def render_betti(t: BettiTable) -> str:
    """Plain-text grid: rows q, columns p, '.' for zero, '?' for skipped."""
    head = (
        f"variety={geo.format_variety(t.variety)} A={geo.format_class(t.A)} "
        f"B={geo.format_class(t.B)} d={t.d} r_d={t.r_d} p_limit={t.p_limit}\n"
        f"primes={t.primes[0]},{t.primes[1]}"
    )
    ps = list(range(0, t.p_limit + 1))
    grid = []
    for q in t.q_values:
        row = []
        for p in ps:
            c = t.cells.get((p, q))
            if c is None:
                row.append("?" if (p, q) in t.uncomputed else "")
            else:
                row.append("." if c.dim == 0 else str(c.dim))
        grid.append(row)
    widths = [
        max([len(f"{p}")] + [len(grid[i][j]) for i in range(len(grid))])
        for j, p in enumerate(ps)
    ]
    lines = [head]
    lines.append(
        "  q\\p " + " ".join(f"{p:>{w}}" for p, w in zip(ps, widths))
    )
    for q, row in zip(t.q_values, grid):
        lines.append(
            f"  {q:>3} " + " ".join(f"{s:>{w}}" for s, w in zip(row, widths))
        )
    if t.uncomputed:
        lines.append(f"  ({len(t.uncomputed)} cells skipped by size cap)")
    if not t.all_agreed:
        lines.append("  (some cells are prime-sensitive)")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# consistency checks


def composite_is_zero(
    v: geo.Variety,
    A,
    d: int,
    B,
    p: int,
    q: int,
    field: PrimeField,
    cache: _ModelCache | None = None,
) -> bool:
    """Whether the two consecutive arrows through (p, q) compose to zero."""
    cache = cache or _ModelCache(v, A, d)
    B = tuple(B)
    m_out = koszul_differential(v, A, d, _twist(B, q, cache.L), p, cache=cache)
    m_in = koszul_differential(v, A, d, _twist(B, q - 1, cache.L), p + 1, cache=cache)
    return multiply(m_out, m_in, field).nnz == 0


def antidiagonal_euler(
    v: geo.Variety,
    A,
    B,
    d: int,
    c: int,
    *,
    fields: tuple[PrimeField, PrimeField] = DEFAULT_FIELDS,
    options: RankOptions | None = None,
    size_cap: int = DEFAULT_SIZE_CAP,
    cache: _ModelCache | None = None,
    memo: dict | None = None,
) -> tuple[int, int]:
    """Alternating sums along the strand p + q = c: (terms, cohomology).

    The two sums agree whenever the shared-arrow bookkeeping is consistent,
    so a mismatch certifies an implementation error.  Requires B - dA to be
    non-effective so the strand starts at q = 0.
    """
    cache = cache or _ModelCache(v, A, d)
    B = tuple(B)
    if geo.h0(v, _twist(B, -1, cache.L)) > 0:
        raise ValueError("strand check needs h0(B - dA) == 0")
    if memo is None:
        memo = {}
    lhs = 0
    rhs = 0
    for p in range(0, min(c, cache.N) + 1):
        q = c - p
        sign = 1 if p % 2 == 0 else -1
        lhs += sign * math.comb(cache.N, p) * geo.h0(v, _twist(B, q, cache.L))
        cell = kpq_dim(
            v, A, B, d, p, q,
            fields=fields, options=options, size_cap=size_cap,
            cache=cache, memo=memo,
        )
        rhs += sign * cell.dim
    return lhs, rhs


# ---------------------------------------------------------------------------
# duality and range verification


@dataclass(frozen=True)
class DualityReport:
    """Outcome of reflecting one table into another."""

    checked: int
    violations: tuple
    range_mismatches: tuple

    @property
    def ok(self) -> bool:
        return not self.violations and not self.range_mismatches


def duality_check(t: BettiTable, t_dual: BettiTable) -> DualityReport:
    """Compare dim(p, q) in t with dim(r_d - p - n, n - q) in t_dual.

    Rows q in [1, n] of t are checked.  Reflected cells with negative p are
    compared against zero; reflected cells missing from t_dual are reported
    as range mismatches rather than violations.
    """
    from .bounds import Setup, dual_twist

    if t.variety != t_dual.variety or t.A != t_dual.A or t.d != t_dual.d:
        raise ValueError("tables must share variety, A and d")
    want = dual_twist(Setup(t.variety, t.A, t.B, t.d)).cls
    if tuple(t_dual.B) != want:
        raise ValueError(
            f"second table has B={geo.format_class(t_dual.B)}, "
            f"expected the dual twist {geo.format_class(want)}"
        )
    n = t.variety.dim
    checked = 0
    violations = []
    mismatches = []
    for (p, q), cell in sorted(t.cells.items()):
        if not (1 <= q <= n):
            continue
        p2, q2 = t.r_d - p - n, n - q
        if p2 < 0:
            checked += 1
            if cell.dim != 0:
                violations.append(
                    {"p": p, "q": q, "dim": cell.dim, "dual_p": p2,
                     "dual_q": q2, "dual_dim": 0}
                )
            continue
        other = t_dual.cells.get((p2, q2))
        if other is None:
            mismatches.append({"p": p, "q": q, "dual_p": p2, "dual_q": q2})
            continue
        checked += 1
        if cell.dim != other.dim:
            violations.append(
                {"p": p, "q": q, "dim": cell.dim, "dual_p": p2,
                 "dual_q": q2, "dual_dim": other.dim}
            )
    return DualityReport(checked, tuple(violations), tuple(mismatches))


@dataclass(frozen=True)
class VerificationReport:
    """A predicted nonvanishing interval held against a computed table."""

    q: int
    p_lo: int
    p_hi: int
    degenerate: bool
    containment: bool | None
    equality: bool | None
    support: tuple[int, ...]
    missing: tuple[int, ...]


def verify(pred, table: BettiTable) -> VerificationReport:
    """Check that every cell in [max(p_min,1), p_max] x {q} is nonzero.

    containment None means cells in the interval were not computed (either
    skipped or beyond the table's p_limit).  equality compares the interval
    with the entire computed support at p >= 1, None when missing cells
    make the call impossible.  The interval is never materialized, so a
    prediction far wider than the table stays cheap.
    """
    q = pred.q
    lo = max(pred.p_min, 1)
    hi = pred.p_max
    degenerate = lo > hi
    support = table.support(q)
    row = {p: c for (p, qq), c in table.cells.items() if qq == q}
    zeros = tuple(sorted(p for p, c in row.items() if lo <= p <= hi and c.dim == 0))
    beyond_limit = (not degenerate) and hi > table.p_limit
    missing = (
        tuple(p for p in range(lo, min(hi, table.p_limit) + 1) if p not in row)
        if not degenerate
        else ()
    )
    if degenerate:
        containment = True
    elif zeros:
        containment = False
    elif missing or beyond_limit:
        containment = None
    else:
        containment = True

    extra = tuple(p for p in support if p < lo or p > hi)
    row_missing = table.row_missing(q, 1, table.p_limit)
    if extra or zeros:
        equality = False
    elif row_missing or beyond_limit:
        equality = None
    elif degenerate:
        equality = support == ()
    else:
        width = hi - lo + 1
        equality = len(support) == width and support == tuple(range(lo, hi + 1))
    return VerificationReport(
        q=q,
        p_lo=lo,
        p_hi=hi,
        degenerate=degenerate,
        containment=containment,
        equality=equality,
        support=support,
        missing=missing,
    )
