"""Predicted nonvanishing ranges for syzygies of high-degree embeddings.

For a variety X polarized by a very ample class A, a twist B of adjoint type
(B = K_X + bA + P with b >= n+1 and P globally generated) and the embedding
line bundle L_d = dA, this module predicts an interval of p with
K_{p,q}(X, B; L_d) != 0.  The interval endpoints are section counts of two
auxiliary complete intersection schemes, computed by inclusion-exclusion,
plus two effectivity flags that say when the prediction actually applies.

The per-family closed forms mirror the same quantities as explicit binomial
sums; they must agree with the generic route exactly, which the test suite
checks on a grid.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import (
    VERY_AMPLE,
    Variety,
    canonical_class,
    binom,
    format_class,
    grassmannian24,
    h0,
    positivity,
    product_space,
    projective_space,
    vadd,
    vscale,
    vsub,
)


class SetupError(ValueError):
    """A polarized setup violates the adjoint-type shape or a precondition."""


@dataclass(frozen=True)
class Setup:
    """A polarized variety with twist: (X, A, B, d) and optionally the row q.

    q is None for operations that range over a whole table.
    """

    variety: Variety
    A: tuple[int, ...]
    B: tuple[int, ...]
    d: int
    q: int | None = None


@dataclass(frozen=True)
class Decomposition:
    """B = K_X + b*A + P with P effective; b is chosen maximal."""

    b: int
    P: tuple[int, ...]


@dataclass(frozen=True)
class DualTwist:
    """The reflected twist B' = d*A - B + K_X with its adjoint-shape report."""

    cls: tuple[int, ...]
    b_prime: int
    p_prime: tuple[int, ...]
    shape_ok: bool


@dataclass(frozen=True)
class RangePrediction:
    q: int
    n_d: int
    N_d: int
    p_min: int
    p_max: int
    sharp: bool
    effective_ok: bool
    expansion_gap_ok: bool


def decompose(v: Variety, A: tuple[int, ...], B: tuple[int, ...]) -> Decomposition:
    """Write B = K_X + b*A + P with b maximal such that P stays effective."""
    if positivity(v, A) != VERY_AMPLE:
        raise SetupError(f"polarization {format_class(A)} is not very ample")
    diff = vsub(B, canonical_class(v))
    b = min(x // a for x, a in zip(diff, A))
    return Decomposition(b, vsub(diff, vscale(b, A)))


def validate_setup(s: Setup) -> Decomposition:
    """Check the adjoint-type conditions; returns the decomposition of B.

    Requires A very ample, b >= n+1 and P globally generated.  q, when
    present, must lie in [1, n].  d only enters the effectivity flags, so
    any integer d is accepted here.
    """
    n = s.variety.dim
    dec = decompose(s.variety, s.A, s.B)
    if dec.b < n + 1:
        raise SetupError(
            f"twist {format_class(s.B)} has adjoint coefficient b = {dec.b} < n+1 = {n + 1}"
        )
    # P >= 0 holds by maximality of b; kept as a guard against edits
    if any(x < 0 for x in dec.P):
        raise SetupError(f"remainder {format_class(dec.P)} is not globally generated")
    if s.q is not None and not 1 <= s.q <= n:
        raise SetupError(f"q = {s.q} outside [1, {n}]")
    return dec


def phi(v: Variety, divisors: list[tuple[int, ...]], L: tuple[int, ...]) -> int:
    """Inclusion-exclusion section count of a complete intersection.

    phi(H_1, ..., H_c; L) = sum over subsets J of (-1)^|J| h0(L - sum_J H_j).
    Classes pushed outside the effective cone contribute 0 through h0, so
    the sum is evaluable verbatim for any integer inputs.
    """
    c = len(divisors)
    if c > 30:
        raise ValueError(f"{c} divisors is past the subset-enumeration limit")
    total = 0
    for mask in range(1 << c):
        cls = L
        for j in range(c):
            if mask >> j & 1:
                cls = vsub(cls, divisors[j])
        total += -h0(v, cls) if bin(mask).count("1") % 2 else h0(v, cls)
    return total


def _adapted_divisors(
    v: Variety, A: tuple[int, ...], B: tuple[int, ...], q: int
) -> list[tuple[int, ...]]:
    # one divisor of class -K - (n-q)A + B, then (n-q) copies of A
    n = v.dim
    first = vadd(vsub(vscale(-1, canonical_class(v)), vscale(n - q, A)), B)
    return [first] + [A] * (n - q)


def adapted_ci(s: Setup) -> list[tuple[int, ...]]:
    """The adapted complete intersection classes for (X, B, A, n, q).

    Length n+1-q.  The leading class must be very ample; if it is not, the
    setup is reported as unusable rather than silently adjusted.
    """
    if s.q is None:
        raise SetupError("adapted_ci needs q")
    n = s.variety.dim
    if not 1 <= s.q <= n:
        raise SetupError(f"q = {s.q} outside [1, {n}]")
    divisors = _adapted_divisors(s.variety, s.A, s.B, s.q)
    if positivity(s.variety, divisors[0]) != VERY_AMPLE:
        raise SetupError(
            f"leading adapted class {format_class(divisors[0])} is not very ample"
        )
    return divisors


def dual_twist(s: Setup) -> DualTwist:
    """B' = d*A - B + K_X, with its own adjoint-shape decomposition."""
    n = s.variety.dim
    cls = vadd(vsub(vscale(s.d, s.A), s.B), canonical_class(s.variety))
    diff = vsub(cls, canonical_class(s.variety))
    b_prime = min(x // a for x, a in zip(diff, s.A))
    p_prime = vsub(diff, vscale(b_prime, s.A))
    return DualTwist(cls, b_prime, p_prime, b_prime >= n + 1)


def effective_conditions(s: Setup) -> bool:
    """True iff (d - n)A - B is very ample."""
    n = s.variety.dim
    cls = vsub(vscale(s.d - n, s.A), s.B)
    return positivity(s.variety, cls) == VERY_AMPLE


def predict_range(s: Setup) -> RangePrediction:
    """Predicted interval of p with K_{p,q}(X, B; dA) nonzero.

    For q < n: [n_d - q, h0(dA) - N_d - q - 1] where n_d and N_d are the
    section counts in degree d of the adapted complete intersection and its
    dual.  For q = n the interval is the sharp one,
    [h0(dA) - h0((d-b)A) - n, h0(dA) - n - 1].

    N_d is computed twice, from the direct display (d-q)A - B plus q copies
    of A and from the adapted complete intersection of the dual twist at
    index n-q; the two divisor lists are asserted equal.

    The interval is reported verbatim even when d fails the effectivity
    conditions; the flags say whether the prediction applies.
    """
    dec = validate_setup(s)
    if s.q is None:
        raise SetupError("predict_range needs q")
    v, q, n = s.variety, s.q, s.variety.dim
    L = vscale(s.d, s.A)
    hL = h0(v, L)

    n_d = phi(v, _adapted_divisors(v, s.A, s.B, q), L)

    direct = [vsub(vscale(s.d - q, s.A), s.B)] + [s.A] * q
    via_dual = _adapted_divisors(v, s.A, dual_twist(s).cls, n - q)
    if direct != via_dual:
        raise AssertionError(f"dual CI mismatch: {direct} vs {via_dual}")
    N_d = phi(v, direct, L)

    if q < n:
        p_min = n_d - q
        p_max = hL - N_d - q - 1
    else:
        p_min = hL - h0(v, vscale(s.d - dec.b, s.A)) - n
        p_max = hL - n - 1

    return RangePrediction(
        q=q,
        n_d=n_d,
        N_d=N_d,
        p_min=p_min,
        p_max=p_max,
        sharp=q == n,
        effective_ok=effective_conditions(s),
        expansion_gap_ok=hL - n_d > n,
    )


def closed_form_range_pn(n: int, k: int, q: int, d: int) -> RangePrediction:
    """Closed-form range on P^n with B of degree k >= 0 and A = O(1)."""
    if k < 0:
        raise SetupError("P^n closed form needs k >= 0")
    if not 1 <= q <= n:
        raise SetupError(f"q = {q} outside [1, {n}]")
    v = projective_space(n)
    n_d = binom(q + d, q) - binom(d - k - 1, q)
    N_d = binom(d + n - q, n - q) - binom(k + n, n - q)
    h_L = binom(d + n, n)
    return RangePrediction(
        q=q,
        n_d=n_d,
        N_d=N_d,
        p_min=n_d - q,
        p_max=h_L - N_d - q - 1,
        sharp=q == n,
        effective_ok=effective_conditions(Setup(v, (1,), (k,), d, q)),
        expansion_gap_ok=h_L - n_d > n,
    )


def closed_form_range_product(
    s: int, t: int, u: int, v: int, q: int, d: int
) -> RangePrediction:
    """Closed-form range on P^s x P^t with B of type (u, v) and A = O(1, 1).

    Stated regime: u >= t+1 and v >= s+1.  Both section counts expand by
    the Kuenneth formula over the adapted complete intersection, whose
    leading class is (u+q+1-t, v+q+1-s).

    At q = s + t the interval switches to the sharp one, like predict_range
    does: the generic double-binomial display stays valid but is strictly
    shorter whenever u - t != v - s, and its N_d term misbehaves at small d.
    """
    if u < t + 1 or v < s + 1:
        raise SetupError("product closed form needs u >= t+1 and v >= s+1")
    n = s + t
    if not 1 <= q <= n:
        raise SetupError(f"q = {q} outside [1, {n}]")
    var = product_space(s, t)

    n_d = 0
    for i in range(n - q + 1):
        sign = -1 if i % 2 else 1
        c = binom(n - q, i)
        n_d += sign * c * binom(d - i + s, s) * binom(d - i + t, t)
        n_d -= sign * c * binom(d - i - u - q + t + s - 1, s) * binom(
            d - i - v - q + s + t - 1, t
        )

    N_d = 0
    for i in range(q + 1):
        sign = -1 if i % 2 else 1
        c = binom(q, i)
        N_d += sign * c * binom(d - i + s, s) * binom(d - i + t, t)
        N_d -= sign * c * binom(q + u - i + s, s) * binom(q + v - i + t, t)

    h_L = binom(d + s, s) * binom(d + t, t)
    if q < n:
        p_min = n_d - q
        p_max = h_L - N_d - q - 1
    else:
        b = min(u + s + 1, v + t + 1)
        p_min = h_L - binom(d - b + s, s) * binom(d - b + t, t) - n
        p_max = h_L - n - 1
    return RangePrediction(
        q=q,
        n_d=n_d,
        N_d=N_d,
        p_min=p_min,
        p_max=p_max,
        sharp=q == n,
        effective_ok=effective_conditions(Setup(var, (1, 1), (u, v), d, q)),
        expansion_gap_ok=h_L - n_d > n,
    )


def closed_form_range_gr24(k: int, q: int, d: int) -> RangePrediction:
    """Closed-form range on Gr(2,4) with B = O(k), k >= 1, A = O(1)."""
    if k < 1:
        raise SetupError("Gr(2,4) closed form needs k >= 1")
    if not 1 <= q <= 4:
        raise SetupError(f"q = {q} outside [1, 4]")
    var = grassmannian24()

    def f(m: int) -> int:
        return h0(var, (m,))

    n_d = 0
    for i in range(4 - q + 1):
        sign = -1 if i % 2 else 1
        c = binom(4 - q, i)
        n_d += sign * c * (f(d - i) - f(d - i - k - q))

    N_d = 0
    for i in range(q + 1):
        sign = -1 if i % 2 else 1
        c = binom(q, i)
        N_d += sign * c * (f(d - i) - f(k + q - i))

    return RangePrediction(
        q=q,
        n_d=n_d,
        N_d=N_d,
        p_min=n_d - q,
        p_max=f(d) - N_d - q - 1,
        sharp=q == 4,
        effective_ok=effective_conditions(Setup(var, (1,), (k,), d, q)),
        expansion_gap_ok=f(d) - n_d > 4,
    )
