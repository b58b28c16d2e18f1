"""Levi-flat hypervarieties from rational maps, plus a registry of worked examples."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

from .coefficient import I
from .errors import LeviflatError, NotRealValuedError, VariableCountError
from .geometry import ProjectiveContext, bihomogenize
from .poly import MixedPoly
from .polyio import format_poly, parse, to_json

__all__ = [
    "RationalMap",
    "ExampleRecord",
    "EXAMPLE_NAMES",
    "curve_degree",
    "worked_example",
    "pullback",
    "quadratic_cone",
    "real_part",
    "imaginary_part",
]


@dataclass(frozen=True)
class RationalMap:
    """``F = f / g`` for holomorphic polynomials ``f`` and ``g``.

    Coprimality is the caller's responsibility. If ``f`` and ``g`` share a
    factor the pullback still contains the true pullback, plus that factor's
    zero set.
    """

    f: MixedPoly
    g: MixedPoly

    def __post_init__(self):
        if self.f.num_vars != self.g.num_vars:
            raise VariableCountError("f and g must have the same number of variables")
        if not (self.f.is_holomorphic and self.g.is_holomorphic):
            raise ValueError("f and g must be holomorphic")
        if self.g.is_zero():
            raise ZeroDivisionError("the denominator g is the zero polynomial")

    @property
    def num_vars(self) -> int:
        return self.f.num_vars


def curve_degree(S: MixedPoly) -> int:
    """Largest ``zeta``- or ``zeta-bar``-degree among the terms of ``S``."""
    if S.is_zero():
        raise ValueError("the zero curve polynomial has undefined degree")
    return max(S.holomorphic_degree(), S.antiholomorphic_degree())


def pullback(F: RationalMap, S: MixedPoly) -> MixedPoly:
    """Defining polynomial of the closure of ``F^{-1}(S = 0)``.

    For ``S = sum c_jk zeta^j conj(zeta)^k`` of degree ``d`` this is
    ``sum c_jk f^j g^(d-j) conj(f)^k conj(g)^(d-k)``, which equals
    ``|g|^(2d) S(f/g)`` wherever ``g != 0``.
    """
    if S.num_vars != 1:
        raise VariableCountError("the curve polynomial must be in one variable")
    if not S.is_real_valued():
        raise NotRealValuedError("the curve polynomial must be real-valued")
    d = curve_degree(S)
    f, g = F.f, F.g
    fb, gb = f.conjugate(), g.conjugate()
    k = F.num_vars
    cache: Dict[Tuple[str, int], MixedPoly] = {}

    def pw(name: str, base: MixedPoly, n: int) -> MixedPoly:
        key = (name, n)
        if key not in cache:
            cache[key] = base ** n
        return cache[key]

    Q = MixedPoly.zero(k)
    for (j,), (l,), c in S.items():
        term = (pw("f", f, j) * pw("g", g, d - j)) * (pw("fb", fb, l) * pw("gb", gb, d - l))
        Q = Q + term.scale(c)
    return Q


def real_part(k: int, index: int) -> MixedPoly:
    """``x_index = (z + conj(z)) / 2`` in ``k`` variables."""
    return (MixedPoly.var(k, index) + MixedPoly.conj_var(k, index)).scale(Fraction(1, 2))


def imaginary_part(k: int, index: int) -> MixedPoly:
    """``y_index = (z - conj(z)) / 2i`` in ``k`` variables."""
    return (MixedPoly.var(k, index) - MixedPoly.conj_var(k, index)).scale(-I / 2)


def quadratic_cone(n: int) -> MixedPoly:
    """``(1/2i)(z1 conj(z2) - conj(z1) z2)`` in ``n + 1`` variables (``Im(z1 conj(z2))``)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    k = n + 1
    z1, z2 = MixedPoly.var(k, 1), MixedPoly.var(k, 2)
    w1, w2 = MixedPoly.conj_var(k, 1), MixedPoly.conj_var(k, 2)
    return (z1 * w2 - w1 * z2).scale(-I / 2)


@dataclass(frozen=True)
class ExampleRecord:
    """A named polynomial with expected invariants.

    ``expected`` maps an invariant name to ``(value, basis)`` where basis is
    ``"published"`` for values stated alongside the original example and
    ``"derived"`` for values computed here by independent means.
    """

    name: str
    polynomial: MixedPoly
    description: str
    affine: Optional[MixedPoly] = None
    expected: Dict[str, Tuple[object, str]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "polynomial": to_json(self.polynomial),
            "text": format_poly(self.polynomial),
            "affine": None if self.affine is None else to_json(self.affine),
            "affine_text": None if self.affine is None else format_poly(self.affine),
            "expected": {k: {"value": _jsonable(v), "basis": b} for k, (v, b) in self.expected.items()},
        }


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    return v


CUSP_TEXT = (
    "z2^3*~z1^3 + 3*z1*z2^2*~z1^2*~z2 + 2*z2^3*~z1^2*~z2 + 3*z1^2*z2*~z1*~z2^2"
    " - 4*z1*z2^2*~z1*~z2^2 + z1^3*~z2^3 + 2*z1^2*z2*~z2^3"
)
CUSP_AFFINE_TEXT = "z1^3 + 3*z1^2*~z1 + 3*z1*~z1^2 + ~z1^3 + 2*z1^2 - 4*z1*~z1 + 2*~z1^2"
UMBRELLA_TEXT = (
    "z2^3*~z1^3 + 3*z2^2*~z2*z1*~z1^2 + 3*z2*~z2^2*z1^2*~z1"
    " - 8*z2^2*~z2^2*z1*~z1 + ~z2^3*z1^3"
)
UMBRELLA_AFFINE_TEXT = "~z1^3 + 3*z1*~z1^2 + 3*z1^2*~z1 - 8*z1*~z1 + z1^3"
QUARTIC_TEXT = (
    "z1^2*~z3^2 + z1*z2*~z2*~z3 + z2^2*~z1*~z3 + z1*z3*~z2^2"
    " - 2*z1*z3*~z1*~z3 + z2*z3*~z1*~z2 + z3^2*~z1^2"
)
# resultant in t of z1 + z2 t + z3 t^2 and its conjugate; QUARTIC_TEXT is this
# polynomial composed with (z1, z2, z3) -> (-z1, i z2, z3)
QUARTIC_RESULTANT_TEXT = "(z3*~z1 - z1*~z3)^2 - (z3*~z2 - z2*~z3)*(z2*~z1 - z1*~z2)"
QUARTIC_FAMILY = "z1 = i*t*z2 + t^2*z3"
RESULTANT_FAMILY = "z1 = -(t*z2 + t^2*z3)"


def _cusp() -> ExampleRecord:
    return ExampleRecord(
        "cusp-curve",
        parse(CUSP_TEXT, 2),
        "bihomogenized cusp x^3 - y^2 = 0 (z = x + iy, homogenizing variable z2)",
        affine=parse(CUSP_AFFINE_TEXT, 1),
        expected={
            "rank": (4, "published"),
            "signature": ((2, 2), "published"),
            "leviflat": (True, "published"),
        },
    )


def _umbrella() -> ExampleRecord:
    return ExampleRecord(
        "cartan-umbrella",
        parse(UMBRELLA_TEXT, 2),
        "bihomogenized curve y^2 + x^2 - x^3 = 0 with an isolated real point",
        affine=parse(UMBRELLA_AFFINE_TEXT, 1),
        expected={"leviflat": (True, "published")},
    )


def _quartic() -> ExampleRecord:
    return ExampleRecord(
        "nodegen-quartic",
        parse(QUARTIC_TEXT, 3),
        "degree-4 cone swept by the planes z1 + z2 t + z3 t^2 = 0, t real",
        expected={
            "rank": (6, "published"),
            "signature": ((3, 3), "derived"),
            "leviflat": (True, "published"),
            "leaf_family": (QUARTIC_FAMILY, "derived"),
            "degenerate_points": ("origin only", "published"),
        },
    )


def _cone() -> ExampleRecord:
    return ExampleRecord(
        "quadratic-cone",
        quadratic_cone(2),
        "Im(z1 conj(z2)) = 0 in C^3, the quadratic Levi-flat cone",
        expected={
            "rank": (2, "published"),
            "signature": ((1, 1), "derived"),
            "leviflat": (True, "published"),
            "degenerate_points": ("z1 = z2 = 0", "published"),
        },
    )


def _brunella() -> ExampleRecord:
    # z = x + iy, w = s + it:  t^2 - 4(y^2 + s) y^2
    k = 2
    y, s, t = imaginary_part(k, 1), real_part(k, 2), imaginary_part(k, 2)
    rho = t * t - (y * y + s).scale(4) * (y * y)
    return ExampleRecord(
        "brunella",
        bihomogenize(rho, ProjectiveContext(2)),
        "t^2 = 4(y^2 + s)y^2 with a totally real singular stick (z = x+iy, w = s+it)",
        affine=rho,
        expected={"leviflat": (True, "published")},
    )


_REGISTRY: Dict[str, Callable[[], ExampleRecord]] = {
    "cartan-umbrella": _umbrella,
    "cusp-curve": _cusp,
    "nodegen-quartic": _quartic,
    "quadratic-cone": _cone,
    "brunella": _brunella,
}

EXAMPLE_NAMES = tuple(_REGISTRY)


def worked_example(name: str) -> ExampleRecord:
    """Look up a worked example by its stable name (see ``EXAMPLE_NAMES``)."""
    try:
        factory = _REGISTRY[name]
    except KeyError:
        raise LeviflatError(
            f"unknown example {name!r}; choose from {', '.join(EXAMPLE_NAMES)}") from None
    return factory()
