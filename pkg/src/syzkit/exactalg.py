"""Exact sparse linear algebra over word-sized prime fields.

Ranks are computed by structured Gaussian elimination: the nonzero pattern
is first split into connected components (rows and columns sharing no
entries never interact, and the block structure of equivariant matrices
surfaces this way without any geometry in sight), then each component is
eliminated with a Markowitz-style minimum-fill pivot rule, falling back to
a dense kernel once fill-in crosses a density threshold or the active
block is small.  All arithmetic is int64 with one product per reduction,
so any modulus below 2^31 is overflow-safe.

An iterative black-box method in the Wiedemann style is available behind
an options switch for very large matrices; it is Monte Carlo (random
diagonal preconditioning plus the minimal polynomial degree) and is never
selected by default.

Certification: `certified_rank` runs the computation modulo two distinct
primes and tags the result "agreed-two-primes" or "prime-sensitive".
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass

import numpy as np

try:  # pragma: no cover - exercised via the numpy fallback tests
    if os.environ.get("SYZKIT_NO_NUMBA"):
        raise ImportError
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


AGREED = "agreed-two-primes"
PRIME_SENSITIVE = "prime-sensitive"

# the two largest primes below 2^31
DEFAULT_P1 = 2147483647
DEFAULT_P2 = 2147483629

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin; this base set is exact below 3.3e24
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    """F_p for a prime with 2^20 < p < 2^31 (word-sized, double-width safe)."""

    p: int

    def __post_init__(self):
        if not (1 << 20) < self.p < (1 << 31):
            raise ValueError(f"modulus {self.p} outside (2^20, 2^31)")
        if not _is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")


DEFAULT_FIELDS = (PrimeField(DEFAULT_P1), PrimeField(DEFAULT_P2))


@dataclass(frozen=True)
class RankOptions:
    """Algorithm knobs for `rank`; defaults match the shipped behavior."""

    strategy: str = "elimination"  # "elimination" | "wiedemann"
    wiedemann_min_nnz: int = 1_000_000
    dense_floor: int = 1 << 18  # active cells at or below this go dense
    fill_threshold: float = 0.2
    densify_cell_cap: int = 50_000_000  # never materialize more cells than this
    seed: int = 1729


DEFAULT_OPTIONS = RankOptions()


class SparseMatrix:
    """Sparse integer matrix stored as sorted row-major (row, col, value).

    Entries are nonzero integers; `reduced` maps them into [1, p-1] for a
    given field, dropping anything divisible by p.  Construction validates
    ordering, bounds and duplicates.
    """

    __slots__ = ("n_rows", "n_cols", "rows", "cols", "vals")

    def __init__(self, n_rows, n_cols, rows, cols, vals, _checked=False):
        self.n_rows = int(n_rows)
        self.n_cols = int(n_cols)
        self.rows = np.asarray(rows, dtype=np.int64)
        self.cols = np.asarray(cols, dtype=np.int64)
        self.vals = np.asarray(vals, dtype=np.int64)
        if self.n_rows < 0 or self.n_cols < 0:
            raise ValueError("negative dimensions")
        if not (self.rows.shape == self.cols.shape == self.vals.shape):
            raise ValueError("triple arrays differ in length")
        if not _checked:
            self._validate()

    def _validate(self):
        if self.rows.size == 0:
            return
        if self.rows.min() < 0 or self.rows.max() >= self.n_rows:
            raise ValueError("row index out of range")
        if self.cols.min() < 0 or self.cols.max() >= self.n_cols:
            raise ValueError("column index out of range")
        if np.any(self.vals == 0):
            raise ValueError("explicit zero entry")
        key = self.rows * self.n_cols + self.cols
        if np.any(np.diff(key) <= 0):
            raise ValueError("entries not sorted row-major or duplicated")

    @classmethod
    def from_triples(cls, n_rows, n_cols, triples):
        triples = list(triples)
        if not triples:
            empty = np.zeros(0, dtype=np.int64)
            return cls(n_rows, n_cols, empty, empty, empty, _checked=True)
        rows = np.array([t[0] for t in triples], dtype=np.int64)
        cols = np.array([t[1] for t in triples], dtype=np.int64)
        vals = np.array([t[2] for t in triples], dtype=np.int64)
        order = np.lexsort((cols, rows))
        m = cls(n_rows, n_cols, rows[order], cols[order], vals[order])
        return m

    @classmethod
    def from_arrays(cls, n_rows, n_cols, rows, cols, vals):
        """Build from unsorted parallel arrays, sorting row-major."""
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        vals = np.asarray(vals, dtype=np.int64)
        order = np.lexsort((cols, rows))
        return cls(n_rows, n_cols, rows[order], cols[order], vals[order])

    @classmethod
    def from_dense(cls, array):
        a = np.asarray(array, dtype=np.int64)
        rows, cols = np.nonzero(a)
        return cls(a.shape[0], a.shape[1], rows, cols, a[rows, cols], _checked=True)

    @property
    def nnz(self) -> int:
        return int(self.rows.size)

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix.from_arrays(
            self.n_cols, self.n_rows, self.cols, self.rows, self.vals
        )

    def reduced(self, f: PrimeField) -> "SparseMatrix":
        """Entries mapped into [1, p-1]; entries divisible by p are dropped."""
        vals = self.vals % f.p
        keep = vals != 0
        return SparseMatrix(
            self.n_rows,
            self.n_cols,
            self.rows[keep],
            self.cols[keep],
            vals[keep],
            _checked=True,
        )

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.n_rows, self.n_cols), dtype=np.int64)
        a[self.rows, self.cols] = self.vals
        return a

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and self.n_rows == other.n_rows
            and self.n_cols == other.n_cols
            and np.array_equal(self.rows, other.rows)
            and np.array_equal(self.cols, other.cols)
            and np.array_equal(self.vals, other.vals)
        )

    def __repr__(self):
        return f"SparseMatrix({self.n_rows}x{self.n_cols}, nnz={self.nnz})"


# ---------------------------------------------------------------------------
# dense kernels


@njit(cache=True)
def _modpow(base, exp, p):  # pragma: no cover - numba-compiled
    result = np.int64(1)
    base = base % p
    while exp > 0:
        if exp & 1:
            result = result * base % p
        base = base * base % p
        exp >>= 1
    return result


@njit(cache=True)
def _dense_rank_jit(A, p):  # pragma: no cover - numba-compiled
    m, n = A.shape
    rank = 0
    for col in range(n):
        if rank == m:
            break
        piv = -1
        for i in range(rank, m):
            if A[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(col, n):
                tmp = A[rank, j]
                A[rank, j] = A[piv, j]
                A[piv, j] = tmp
        inv = _modpow(A[rank, col], p - 2, p)
        for j in range(col, n):
            A[rank, j] = A[rank, j] * inv % p
        for i in range(rank + 1, m):
            f = A[i, col]
            if f != 0:
                for j in range(col, n):
                    A[i, j] = (A[i, j] - f * A[rank, j]) % p
        rank += 1
    return rank


def _dense_rank_numpy(A: np.ndarray, p: int) -> int:
    m, n = A.shape
    rank = 0
    for col in range(n):
        if rank == m:
            break
        nz = np.flatnonzero(A[rank:, col])
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            A[[rank, piv], col:] = A[[piv, rank], col:]
        inv = pow(int(A[rank, col]), p - 2, p)
        A[rank, col:] = A[rank, col:] * inv % p
        f = A[rank + 1 :, col]
        hot = np.flatnonzero(f)
        if hot.size:
            block = A[rank + 1 :, col:]
            # one product per entry keeps everything below 2^62
            block[hot] = (block[hot] - f[hot, None] * A[rank, col:]) % p
        rank += 1
    return rank


def _dense_rank(A: np.ndarray, p: int) -> int:
    if _HAVE_NUMBA:
        return int(_dense_rank_jit(A, np.int64(p)))
    return _dense_rank_numpy(A, p)


# ---------------------------------------------------------------------------
# connected components of the bipartite nonzero pattern


@njit(cache=True)
def _component_labels_jit(rows, cols, n_rows):  # pragma: no cover
    nnz = rows.shape[0]
    hi = n_rows
    for k in range(nnz):
        c = cols[k] + n_rows
        if c >= hi:
            hi = c + 1
    parent = np.arange(hi)
    for k in range(nnz):
        a = rows[k]
        b = cols[k] + n_rows
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a < b:
            parent[b] = a
        elif b < a:
            parent[a] = b
    out = np.empty(nnz, dtype=np.int64)
    for k in range(nnz):
        a = rows[k]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        out[k] = a
    return out


def _component_labels_py(rows, cols, n_rows):
    parent = list(range(n_rows + (int(cols.max()) + 1 if cols.size else 0)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for r, c in zip(rows.tolist(), cols.tolist()):
        a, b = find(r), find(c + n_rows)
        if a < b:
            parent[b] = a
        elif b < a:
            parent[a] = b
    return np.array([find(r) for r in rows.tolist()], dtype=np.int64)


def _component_labels(rows, cols, n_rows):
    if _HAVE_NUMBA:
        return _component_labels_jit(rows, cols, np.int64(n_rows))
    return _component_labels_py(rows, cols, n_rows)


# ---------------------------------------------------------------------------
# sparse elimination with minimum-fill pivoting


def _markowitz_rank(rows_np, cols_np, vals_np, p: int, opts: RankOptions) -> int:
    """Eliminate one connected component held as triple arrays (local indices)."""
    rows: dict[int, dict[int, int]] = {}
    col_rows: dict[int, set] = {}
    for r, c, v in zip(rows_np.tolist(), cols_np.tolist(), vals_np.tolist()):
        rows.setdefault(r, {})[c] = v
        col_rows.setdefault(c, set()).add(r)

    counts = {c: len(s) for c, s in col_rows.items()}
    buckets: dict[int, set] = {}
    for c, k in counts.items():
        buckets.setdefault(k, set()).add(c)
    min_count = min(buckets) if buckets else 0
    nnz = int(rows_np.size)
    rank = 0

    def move(c, old, new):
        buckets[old].discard(c)
        if not buckets[old]:
            del buckets[old]
        buckets.setdefault(new, set()).add(c)
        counts[c] = new

    def densify_and_finish():
        act_rows = sorted(rows)
        act_cols = sorted(col_rows)
        ri = {r: i for i, r in enumerate(act_rows)}
        ci = {c: j for j, c in enumerate(act_cols)}
        A = np.zeros((len(act_rows), len(act_cols)), dtype=np.int64)
        for r in act_rows:
            i = ri[r]
            for c, v in rows[r].items():
                A[i, ci[c]] = v
        return _dense_rank(A, p)

    while rows and col_rows:
        active_cells = len(rows) * len(col_rows)
        can_densify = active_cells <= opts.densify_cell_cap
        if can_densify and (
            active_cells <= opts.dense_floor
            or nnz > opts.fill_threshold * active_cells
        ):
            return rank + densify_and_finish()

        while min_count not in buckets:
            min_count += 1
        candidates = heapq.nsmallest(8, buckets[min_count])
        best = None
        for c in candidates:
            for r in col_rows[c]:
                cost = (len(rows[r]) - 1) * (min_count - 1)
                key = (cost, len(rows[r]), c, r)
                if best is None or key < best[0]:
                    best = (key, r, c)
        _, pr, pc = best

        prow = rows.pop(pr)
        for c in prow:
            s = col_rows[c]
            s.discard(pr)
            if s:
                move(c, counts[c], counts[c] - 1)
            else:
                del col_rows[c]
                move(c, counts[c], 0)
                buckets[0].discard(c)
                if not buckets[0]:
                    del buckets[0]
                del counts[c]
        nnz -= len(prow)
        piv_inv = pow(prow[pc], p - 2, p)

        targets = sorted(col_rows.get(pc, ()))
        for r in targets:
            row = rows[r]
            f = row[pc] * piv_inv % p
            for c, v in prow.items():
                if c == pc:
                    continue
                cur = row.get(c)
                if cur is None:
                    nv = -f * v % p
                    if nv:
                        row[c] = nv
                        col_rows[c].add(r)
                        move(c, counts[c], counts[c] + 1)
                        nnz += 1
                else:
                    nv = (cur - f * v) % p
                    if nv:
                        row[c] = nv
                    else:
                        del row[c]
                        col_rows[c].discard(r)
                        move(c, counts[c], counts[c] - 1)
                        nnz -= 1
            del row[pc]
            nnz -= 1
            s = col_rows.get(pc)
            if s is not None:
                s.discard(r)
            if not row:
                del rows[r]
        if pc in col_rows and not col_rows[pc]:
            del col_rows[pc]
        if pc in counts:
            k = counts.pop(pc)
            buckets[k].discard(pc)
            if not buckets[k]:
                del buckets[k]
        min_count = 1
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# Wiedemann-style black-box rank (Monte Carlo, opt-in)


def _matvec_builders(rows, cols, vals, m, n, p):
    def apply_A(x):
        prod = vals * x[cols] % p
        out = np.zeros(m, dtype=np.int64)
        np.add.at(out, rows, prod)
        return out % p

    def apply_At(y):
        prod = vals * y[rows] % p
        out = np.zeros(n, dtype=np.int64)
        np.add.at(out, cols, prod)
        return out % p

    return apply_A, apply_At


def _berlekamp_massey(seq: list[int], p: int) -> list[int]:
    """Minimal LFSR connection polynomial C with C[0] = 1, over F_p."""
    C = [1]
    B = [1]
    L, m, b = 0, 1, 1
    for i, s in enumerate(seq):
        delta = s % p
        for j in range(1, L + 1):
            delta = (delta + C[j] * seq[i - j]) % p
        if delta == 0:
            m += 1
            continue
        coef = delta * pow(b, p - 2, p) % p
        if 2 * L <= i:
            T = list(C)
            if len(C) < len(B) + m:
                C = C + [0] * (len(B) + m - len(C))
            for j, bj in enumerate(B):
                C[j + m] = (C[j + m] - coef * bj) % p
            L = i + 1 - L
            B = T
            b = delta
            m = 1
        else:
            if len(C) < len(B) + m:
                C = C + [0] * (len(B) + m - len(C))
            for j, bj in enumerate(B):
                C[j + m] = (C[j + m] - coef * bj) % p
            m += 1
    return C[: L + 1]


def _wiedemann_rank(rows, cols, vals, m, n, p, seed: int) -> int:
    """Monte Carlo rank via the minimal polynomial of A^T D A.

    With a random diagonal D the nonzero spectrum of A^T D A is simple with
    high probability, so the minimal polynomial has degree rank+1 when the
    product is singular (x divides it) and rank otherwise.
    """
    rng = np.random.default_rng(seed)
    apply_A, apply_At = _matvec_builders(rows, cols, vals, m, n, p)
    diag = rng.integers(1, p, size=m, dtype=np.int64)

    def apply_B(x):
        return apply_At(diag * apply_A(x) % p)

    u = rng.integers(0, p, size=n, dtype=np.int64)
    w = rng.integers(0, p, size=n, dtype=np.int64)
    seq = []
    for _ in range(2 * n + 2):
        # reduce each product before summing so the int64 dot cannot overflow
        seq.append(int((u * w % p).sum() % p))
        w = apply_B(w)
    C = _berlekamp_massey(seq, p)
    L = len(C) - 1
    if L == 0:
        return 0
    minpoly_const = C[L]  # reversal of C is the minimal polynomial
    return L - 1 if minpoly_const == 0 else L


# ---------------------------------------------------------------------------
# public operations


def rank(m: SparseMatrix, f: PrimeField, options: RankOptions | None = None) -> int:
    """Rank of m over F_p; deterministic for a given (matrix, field, options)."""
    opts = options or DEFAULT_OPTIONS
    red = m.reduced(f)
    if red.nnz == 0:
        return 0
    labels = _component_labels(red.rows, red.cols, red.n_rows)
    order = np.argsort(labels, kind="stable")
    rows, cols, vals = red.rows[order], red.cols[order], red.vals[order]
    sorted_labels = labels[order]
    starts = np.flatnonzero(np.r_[True, np.diff(sorted_labels) != 0])
    bounds = np.r_[starts, sorted_labels.size]
    total = 0
    for a, b in zip(bounds[:-1], bounds[1:]):
        rs, cs, vs = rows[a:b], cols[a:b], vals[a:b]
        ur, ri = np.unique(rs, return_inverse=True)
        uc, ci = np.unique(cs, return_inverse=True)
        m_loc, n_loc = ur.size, uc.size
        if m_loc == 1 or n_loc == 1:
            total += 1
            continue
        nnz_loc = rs.size
        if opts.strategy == "wiedemann" and nnz_loc > opts.wiedemann_min_nnz:
            total += _wiedemann_rank(ri, ci, vs, m_loc, n_loc, f.p, opts.seed)
            continue
        if m_loc * n_loc <= opts.dense_floor:
            A = np.zeros((m_loc, n_loc), dtype=np.int64)
            A[ri, ci] = vs
            total += _dense_rank(A, f.p)
        else:
            total += _markowitz_rank(ri, ci, vs, f.p, opts)
    return total


def certified_rank(
    m: SparseMatrix,
    f1: PrimeField,
    f2: PrimeField,
    options: RankOptions | None = None,
) -> tuple[int, str]:
    """Rank modulo two primes with an agreement tag.

    Each modular rank is a lower bound for the rational rank, so on
    disagreement the max is returned, tagged "prime-sensitive".
    """
    if f1.p == f2.p:
        raise ValueError("certification needs two distinct primes")
    r1 = rank(m, f1, options)
    r2 = rank(m, f2, options)
    if r1 == r2:
        return r1, AGREED
    return max(r1, r2), PRIME_SENSITIVE


def multiply(a: SparseMatrix, b: SparseMatrix, f: PrimeField) -> SparseMatrix:
    """Exact sparse product a @ b over F_p."""
    if a.n_cols != b.n_rows:
        raise ValueError(f"cannot multiply {a.n_cols} columns into {b.n_rows} rows")
    p = f.p
    ar = a.reduced(f)
    br = b.reduced(f)
    by_row: dict[int, list[tuple[int, int]]] = {}
    for r, c, v in zip(br.rows.tolist(), br.cols.tolist(), br.vals.tolist()):
        by_row.setdefault(r, []).append((c, v))
    acc: dict[tuple[int, int], int] = {}
    for i, k, w in zip(ar.rows.tolist(), ar.cols.tolist(), ar.vals.tolist()):
        hits = by_row.get(k)
        if not hits:
            continue
        for j, v in hits:
            key = (i, j)
            acc[key] = (acc.get(key, 0) + w * v) % p
    triples = [(i, j, v) for (i, j), v in acc.items() if v]
    return SparseMatrix.from_triples(a.n_rows, b.n_cols, triples)


def dump_matrix(m: SparseMatrix, f: PrimeField) -> str:
    """Debug text form: `rows cols prime nnz` then one `row col value` per line."""
    red = m.reduced(f)
    lines = [f"{red.n_rows} {red.n_cols} {f.p} {red.nnz}"]
    for r, c, v in zip(red.rows.tolist(), red.cols.tolist(), red.vals.tolist()):
        lines.append(f"{r} {c} {v}")
    return "\n".join(lines) + "\n"


def load_matrix(text: str) -> tuple[SparseMatrix, PrimeField]:
    lines = text.strip().splitlines()
    n_rows, n_cols, p, nnz = (int(x) for x in lines[0].split())
    if len(lines) - 1 != nnz:
        raise ValueError(f"header says {nnz} entries, found {len(lines) - 1}")
    triples = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
    return SparseMatrix.from_triples(n_rows, n_cols, triples), PrimeField(p)
