"""Ambient varieties and line bundle arithmetic.

Three families are supported, each with Picard group Z^rho and a fixed basis:

* ``pn``   projective space P^n, classes O(m), rho = 1
* ``pp``   a product P^s x P^t, classes O(a, b), rho = 2
* ``gr24`` the Grassmannian Gr(2,4) of lines in P^3, classes O(m) via the
  Pluecker polarization, rho = 1

A divisor class is a plain tuple of ints of length rho.  Everything here is
closed-form: section counts, canonical classes, and a coordinatewise
positivity trichotomy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

VERY_AMPLE = "very_ample"
GLOBALLY_GENERATED_ONLY = "globally_generated_only"
NOT_GLOBALLY_GENERATED = "not_globally_generated"


@dataclass(frozen=True)
class Variety:
    """One of the supported ambient varieties.

    ``kind`` is "pn", "pp" or "gr24"; ``dims`` holds (n,), (s, t) or ().
    """

    kind: str
    dims: tuple[int, ...]

    @property
    def dim(self) -> int:
        if self.kind == "pn":
            return self.dims[0]
        if self.kind == "pp":
            return self.dims[0] + self.dims[1]
        return 4

    @property
    def picard_rank(self) -> int:
        return 2 if self.kind == "pp" else 1

    def __str__(self) -> str:
        return format_variety(self)


def projective_space(n: int) -> Variety:
    if n < 1:
        raise ValueError("projective space needs n >= 1")
    return Variety("pn", (n,))


def product_space(s: int, t: int) -> Variety:
    if s < 1 or t < 1:
        raise ValueError("product factors need s, t >= 1")
    return Variety("pp", (s, t))


def grassmannian24() -> Variety:
    return Variety("gr24", ())


def parse_variety(text: str) -> Variety:
    """Parse "pn:<n>", "pp:<s>,<t>" or "gr24"."""
    text = text.strip()
    if text == "gr24":
        return grassmannian24()
    head, sep, tail = text.partition(":")
    if head == "pn" and sep:
        return projective_space(int(tail))
    if head == "pp" and sep:
        parts = tail.split(",")
        if len(parts) != 2:
            raise ValueError(f"bad product variety {text!r}, want pp:<s>,<t>")
        return product_space(int(parts[0]), int(parts[1]))
    raise ValueError(f"unknown variety {text!r}")


def format_variety(v: Variety) -> str:
    if v.kind == "pn":
        return f"pn:{v.dims[0]}"
    if v.kind == "pp":
        return f"pp:{v.dims[0]},{v.dims[1]}"
    return "gr24"


def parse_class(text: str) -> tuple[int, ...]:
    """Parse a divisor class given as comma-separated integers."""
    return tuple(int(part) for part in text.strip().split(","))


def format_class(c: tuple[int, ...]) -> str:
    return ",".join(str(x) for x in c)


def vadd(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def vscale(k: int, a: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(k * x for x in a)


def binom(m: int, k: int) -> int:
    """Binomial coefficient with C(m, k) = 0 whenever m < k or k < 0.

    m may be negative; that also yields 0.  This is exactly the convention
    under which C(a + n, n) equals the section count of O(a) on P^n for
    every integer a, so closed-form range formulas can be evaluated
    verbatim at small twists.
    """
    if k < 0 or m < k:
        return 0
    return math.comb(m, k)


def _check_class(v: Variety, c: tuple[int, ...]) -> None:
    if len(c) != v.picard_rank:
        raise ValueError(
            f"class {c!r} has {len(c)} coordinates, {format_variety(v)} needs "
            f"{v.picard_rank}"
        )


def h0(v: Variety, c: tuple[int, ...]) -> int:
    """Number of global sections of the line bundle with class c.

    Zero for classes outside the effective cone.  On gr24 this is
    f(m) = (m+1)(m+2)^2(m+3)/12 for m >= 0, the dimension of the degree-m
    piece of the Pluecker coordinate ring.
    """
    _check_class(v, c)
    if v.kind == "pn":
        n = v.dims[0]
        return binom(c[0] + n, n)
    if v.kind == "pp":
        s, t = v.dims
        return binom(c[0] + s, s) * binom(c[1] + t, t)
    m = c[0]
    if m < 0:
        # the quartic (m+1)(m+2)^2(m+3)/12 is nonzero again at m <= -4,
        # so the effective-cone cutoff must be explicit here
        return 0
    return (m + 1) * (m + 2) ** 2 * (m + 3) // 12


def canonical_class(v: Variety) -> tuple[int, ...]:
    if v.kind == "pn":
        return (-(v.dims[0] + 1),)
    if v.kind == "pp":
        return (-(v.dims[0] + 1), -(v.dims[1] + 1))
    return (-4,)


def positivity(v: Variety, c: tuple[int, ...]) -> str:
    """Coordinatewise positivity trichotomy of a divisor class.

    On these varieties a class is very ample iff every coordinate is >= 1
    and globally generated iff every coordinate is >= 0.
    """
    _check_class(v, c)
    if all(x >= 1 for x in c):
        return VERY_AMPLE
    if all(x >= 0 for x in c):
        return GLOBALLY_GENERATED_ONLY
    return NOT_GLOBALLY_GENERATED
