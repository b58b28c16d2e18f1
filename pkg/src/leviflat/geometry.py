"""Projective bookkeeping: bihomogenization, Segre polynomials, degeneracy, Veronese."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .coefficient import ONE, Coefficient, as_coefficient
from .errors import NotBihomogeneousError, NotRealValuedError, VariableCountError
from .hermitian import coefficient_matrix, monomial_basis, rank_signature
from .poly import MixedPoly
from .polyio import coefficient_to_json, format_poly, to_json

__all__ = [
    "ProjectiveContext",
    "DegeneracyReport",
    "bihomogenize",
    "dehomogenize",
    "segre_polynomial",
    "is_algebraic_degenerate",
    "degenerate_locus_generators",
    "row_reduce_generators",
    "veronese_point",
    "veronese_lift",
]


@dataclass(frozen=True)
class ProjectiveContext:
    """Projective space of dimension ``n`` with homogeneous coordinates ``z_1..z_{n+1}``.

    ``hom_index`` (1-based) is the coordinate that plays the homogenizing
    role; it defaults to the last one.
    """

    n: int
    hom_index: Optional[int] = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if self.hom_index is None:
            object.__setattr__(self, "hom_index", self.n + 1)
        if not 1 <= self.hom_index <= self.n + 1:
            raise ValueError(f"hom_index must lie in 1..{self.n + 1}")

    @property
    def num_vars(self) -> int:
        return self.n + 1


def bihomogenize(
    rho: MixedPoly, ctx: Optional[ProjectiveContext] = None, allow_imaginary: bool = False
) -> MixedPoly:
    """Bihomogenize an affine defining polynomial.

    With ``D`` the largest ``z``- or ``z-bar``-degree of any term, the
    bidegree-``(j, k)`` part is multiplied by ``w^(D-j) conj(w)^(D-k)``, where
    ``w`` is the homogenizing coordinate. The result has bidegree ``(D, D)``.
    """
    if ctx is None:
        ctx = ProjectiveContext(rho.num_vars)
    if ctx.num_vars != rho.num_vars + 1:
        raise VariableCountError(
            f"context expects {ctx.num_vars - 1} affine variables, got {rho.num_vars}")
    if not rho.is_real_valued() and not (allow_imaginary and rho.is_imaginary_valued()):
        raise NotRealValuedError("bihomogenize needs a real-valued polynomial")
    if rho.is_zero():
        return MixedPoly.zero(ctx.num_vars)
    D = max(rho.holomorphic_degree(), rho.antiholomorphic_degree())
    lifted = rho.insert_variable(ctx.hom_index)
    k = ctx.num_vars
    h = ctx.hom_index - 1
    out = {}
    for e, c in lifted.flat_terms().items():
        e = list(e)
        e[h] = D - sum(e[:k])
        e[k + h] = D - sum(e[k:])
        out[tuple(e)] = c
    return MixedPoly(k, out)


def dehomogenize(P: MixedPoly, chart: Optional[int] = None) -> MixedPoly:
    """Set the ``chart`` coordinate and its conjugate to 1 and drop it."""
    if not P.is_bihomogeneous():
        raise NotBihomogeneousError("dehomogenize needs a bihomogeneous polynomial")
    k = P.num_vars
    chart = k if chart is None else chart
    if not 1 <= chart <= k:
        raise IndexError(f"chart {chart} out of range 1..{k}")
    h = chart - 1
    out = {}
    for e, c in P.flat_terms().items():
        key = e[:h] + e[h + 1:k] + e[k:k + h] + e[k + h + 1:]
        out[key] = out.get(key, 0) + c
    return MixedPoly(k - 1, out)


def segre_polynomial(P: MixedPoly, point: Sequence) -> MixedPoly:
    """The holomorphic polynomial ``z -> P(z, conj(point))``."""
    k = P.num_vars
    if len(point) != k:
        raise VariableCountError(f"point has {len(point)} coordinates, expected {k}")
    pbar = [as_coefficient(c).conjugate() for c in point]
    zeros = (0,) * k
    out = {}
    for e, c in P.flat_terms().items():
        for value, n in zip(pbar, e[k:]):
            if n:
                c = c * value ** n
        if c:
            key = e[:k] + zeros
            out[key] = out.get(key, 0) + c
    return MixedPoly(k, out)


def is_algebraic_degenerate(P: MixedPoly, point: Sequence) -> bool:
    """True iff the Segre polynomial at ``point`` vanishes identically."""
    return segre_polynomial(P, point).is_zero()


@dataclass(frozen=True)
class DegeneracyReport:
    """Generators ``h_a`` whose common zeros are the algebraic degenerate points.

    ``dimension_bound`` is ``n - r`` when the rank ``r`` is at most the
    projective dimension ``n``; the degenerate locus in projective space then
    has dimension at least this value (its affine cone one more).
    """

    generators: Tuple[MixedPoly, ...]
    rank: int
    n: int
    dimension_bound: Optional[int] = None

    def vanishes_at(self, point: Sequence) -> bool:
        return all(not g.evaluate(point) for g in self.generators)

    def to_json(self) -> dict:
        return {
            "generators": [format_poly(g) for g in self.generators],
            "generator_documents": [to_json(g) for g in self.generators],
            "rank": self.rank,
            "n": self.n,
            "dimension_bound": self.dimension_bound,
            "affine_dimension_bound": None if self.dimension_bound is None else self.dimension_bound + 1,
        }


def degenerate_locus_generators(P: MixedPoly, reduce: bool = False) -> DegeneracyReport:
    """One generator ``h_a(w) = sum_b conj(c[a][b]) w^b`` per basis row ``a``.

    Zero rows are dropped. With ``reduce`` the generators are replaced by the
    nonzero rows of the reduced row echelon form of their coefficient vectors.
    """
    form = coefficient_matrix(P)
    k = form.num_vars
    zeros = (0,) * k
    gens = []
    for row in form.matrix:
        if any(row):
            gens.append(MixedPoly(k, {b + zeros: c.conjugate() for b, c in zip(form.basis, row) if c}))
    if reduce:
        gens = row_reduce_generators(gens)
    r = rank_signature(form).rank
    n = k - 1
    bound = n - r if r <= n else None
    return DegeneracyReport(tuple(gens), r, n, bound)


def row_reduce_generators(gens: Sequence[MixedPoly]) -> List[MixedPoly]:
    """Reduced row echelon form of holomorphic polynomials over their monomials."""
    if not gens:
        return []
    k = gens[0].num_vars
    monos = sorted({e for g in gens for e in g.flat_terms()},
                   key=lambda e: (sum(e), e), reverse=True)
    rows = [[g.coefficient(m) for m in monos] for g in gens]
    pivot_row = 0
    for col in range(len(monos)):
        sel = next((r for r in range(pivot_row, len(rows)) if rows[r][col]), None)
        if sel is None:
            continue
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        lead = rows[pivot_row][col]
        rows[pivot_row] = [v / lead for v in rows[pivot_row]]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[pivot_row])]
        pivot_row += 1
        if pivot_row == len(rows):
            break
    return [MixedPoly(k, {m: v for m, v in zip(monos, row) if v}) for row in rows[:pivot_row]]


def veronese_point(point: Sequence, degree: int) -> Tuple[Coefficient, ...]:
    """Values of all degree-``degree`` monomials at ``point``, in canonical order."""
    if degree < 1:
        raise ValueError("degree must be at least 1")
    zs = [as_coefficient(c) for c in point]
    out = []
    for m in monomial_basis(len(zs), degree):
        v = ONE
        for z, n in zip(zs, m):
            if n:
                v = v * z ** n
        out.append(v)
    return tuple(out)


def veronese_lift(form: MixedPoly, degree: Optional[int] = None) -> MixedPoly:
    """Rewrite a degree-``d`` holomorphic form ``sum c_a z^a`` as the linear
    form ``sum c_a W_a`` on the Veronese target space.

    Evaluating the result at ``veronese_point(z, d)`` equals evaluating
    ``form`` at ``z``.
    """
    if not form.is_holomorphic:
        raise ValueError("veronese_lift needs a holomorphic form")
    k = form.num_vars
    if degree is None:
        degree = form.degree()
        if degree is None:
            raise ValueError("the zero form has undefined degree; pass degree explicitly")
    if degree < 1:
        raise ValueError("degree must be at least 1")
    basis = monomial_basis(k, degree)
    index = {m: i for i, m in enumerate(basis)}
    N = len(basis)
    out = {}
    for a, _, c in form.items():
        if sum(a) != degree:
            raise NotBihomogeneousError(f"term of degree {sum(a)} in a degree-{degree} form")
        e = [0] * (2 * N)
        e[index[a]] = 1
        out[tuple(e)] = c
    return MixedPoly(N, out)


def segre_report(P: MixedPoly, point: Sequence) -> dict:
    q = segre_polynomial(P, point)
    return {
        "point": [coefficient_to_json(as_coefficient(c)) for c in point],
        "segre_polynomial": format_poly(q),
        "document": to_json(q),
        "degenerate": q.is_zero(),
    }
