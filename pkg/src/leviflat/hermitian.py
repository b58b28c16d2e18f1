"""Hermitian coefficient forms of bihomogeneous polynomials.

A real-valued bihomogeneous ``P = sum c[a][b] z^a conj(z)^b`` has a
Hermitian coefficient matrix ``C``. Its rank and inertia are computed by
exact congruence diagonalization, which also yields holomorphic polynomials
``p_j`` and positive rational weights with
``P = sum_+ w_j |p_j|^2 - sum_- w_j |p_j|^2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import List, NamedTuple, Optional, Tuple

from .coefficient import I, ZERO, Coefficient
from .errors import NotBihomogeneousError, NotHermitianError, NotRealValuedError
from .poly import MixedPoly, term_key
from .polyio import coefficient_to_json, format_poly, rational_to_str, to_json

__all__ = [
    "HermitianForm",
    "Inertia",
    "SignedDecomposition",
    "coefficient_matrix",
    "holomorphic_decomposition",
    "monomial_basis",
    "rank_signature",
    "reexpand",
    "hermitian_report",
]

Monomial = Tuple[int, ...]


def monomial_basis(num_vars: int, degree: int) -> List[Monomial]:
    """All exponent vectors of total ``degree``, in decreasing graded-lex order."""
    if num_vars == 0:
        return [()] if degree == 0 else []

    def rec(k, d):
        if k == 1:
            yield (d,)
            return
        for first in range(d, -1, -1):
            for rest in rec(k - 1, d - first):
                yield (first,) + rest

    return list(rec(num_vars, degree))


@dataclass(frozen=True)
class HermitianForm:
    """Ordered monomial basis plus coefficient matrix ``matrix[a][b]``.

    ``normalized`` records that the source polynomial was imaginary-valued and
    was multiplied by ``-i`` before building the matrix.
    """

    num_vars: int
    basis: Tuple[Monomial, ...]
    matrix: Tuple[Tuple[Coefficient, ...], ...]
    normalized: bool = False

    @property
    def size(self) -> int:
        return len(self.basis)

    def is_hermitian(self) -> bool:
        return _is_hermitian(self.matrix)

    def reexpand(self) -> MixedPoly:
        """``sum matrix[a][b] z^a conj(z)^b`` as a MixedPoly."""
        flat = {}
        for a, row in zip(self.basis, self.matrix):
            for b, c in zip(self.basis, row):
                if c:
                    flat[a + b] = c
        return MixedPoly(self.num_vars, flat)

    def to_json(self) -> dict:
        return {
            "basis": [list(m) for m in self.basis],
            "matrix": [[coefficient_to_json(c) for c in row] for row in self.matrix],
            "normalized": self.normalized,
        }


class Inertia(NamedTuple):
    rank: int
    positives: int
    negatives: int


@dataclass(frozen=True)
class SignedDecomposition:
    """Holomorphic ``p_j`` with signs: ``P = sum w|plus|^2 - sum w|minus|^2``.

    Weights are positive rationals; they are 1 whenever the pivot could be
    absorbed into ``p_j`` as the modulus of a Gaussian rational.
    """

    num_vars: int
    plus: Tuple[MixedPoly, ...]
    minus: Tuple[MixedPoly, ...]
    plus_weights: Tuple[Fraction, ...] = field(default=())
    minus_weights: Tuple[Fraction, ...] = field(default=())

    def __post_init__(self):
        if not self.plus_weights:
            object.__setattr__(self, "plus_weights", (Fraction(1),) * len(self.plus))
        if not self.minus_weights:
            object.__setattr__(self, "minus_weights", (Fraction(1),) * len(self.minus))
        if len(self.plus_weights) != len(self.plus) or len(self.minus_weights) != len(self.minus):
            raise ValueError("one weight per polynomial is required")
        if any(w <= 0 for w in self.plus_weights + self.minus_weights):
            raise ValueError("weights must be positive")

    @property
    def rank(self) -> int:
        return len(self.plus) + len(self.minus)

    @property
    def signature(self) -> Tuple[int, int]:
        return len(self.plus), len(self.minus)

    def reexpand(self) -> MixedPoly:
        return reexpand(self)

    def to_json(self) -> dict:
        def entries(polys, weights):
            return [
                {"weight": rational_to_str(w), "text": format_poly(p), "document": to_json(p)}
                for p, w in zip(polys, weights)
            ]

        return {
            "plus": entries(self.plus, self.plus_weights),
            "minus": entries(self.minus, self.minus_weights),
        }


def coefficient_matrix(
    P: MixedPoly, normalize_imaginary: bool = False, full_basis: bool = False
) -> HermitianForm:
    """Hermitian coefficient matrix of a bihomogeneous polynomial.

    The basis is the set of occurring monomials unless ``full_basis`` is set,
    in which case every monomial of the bidegree is used. An imaginary-valued
    ``P`` is accepted only with ``normalize_imaginary``; it is then replaced by
    ``-i * P`` and the returned form is flagged ``normalized``.
    """
    if P.is_zero():
        raise NotBihomogeneousError("the zero polynomial has undefined degree")
    if not P.is_bihomogeneous():
        raise NotBihomogeneousError(f"expected a single bidegree (d, d), got {sorted(P.bidegrees())}")
    normalized = False
    if not P.is_real_valued():
        if normalize_imaginary and P.is_imaginary_valued():
            P = P * (-I)
            normalized = True
        else:
            raise NotRealValuedError("polynomial is not real-valued")
    k = P.num_vars
    d = P.bidegree()[0]
    if full_basis:
        basis = monomial_basis(k, d)
    else:
        occurring = set()
        for a, b, _ in P.items():
            occurring.add(a)
            occurring.add(b)
        basis = sorted(occurring, key=term_key, reverse=True)
    terms = P.terms
    matrix = tuple(
        tuple(terms.get((a, b), ZERO) for b in basis) for a in basis
    )
    return HermitianForm(k, tuple(basis), matrix, normalized)


def _is_hermitian(matrix) -> bool:
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        return False
    return all(
        matrix[i][j] == matrix[j][i].conjugate() for i in range(n) for j in range(i, n)
    )


def _as_matrix(form) -> List[List[Coefficient]]:
    rows = form.matrix if isinstance(form, HermitianForm) else form
    matrix = [[c if isinstance(c, Coefficient) else Coefficient(c) for c in row] for row in rows]
    if not _is_hermitian(matrix):
        raise NotHermitianError("matrix is not Hermitian")
    return matrix


def _congruence(matrix: List[List[Coefficient]]) -> List[Tuple[Fraction, List[Coefficient]]]:
    """Write ``C = sum d_j a_j a_j^*`` with nonzero real ``d_j``.

    Pivots on the first nonzero diagonal entry of the remaining block. When
    the remaining diagonal vanishes, the first nonzero off-diagonal entry
    ``c = C[s][t]`` splits a hyperbolic pair: with ``x``, ``y`` the columns
    ``s``, ``t`` the rank-two piece ``x y^*/conj(c) + y x^*/c`` equals
    ``(u u^* - v v^*)/2`` for ``u = x + y/c`` and ``v = x - y/c``.
    """
    M = [row[:] for row in matrix]
    n = len(M)
    active = list(range(n))
    pieces: List[Tuple[Fraction, List[Coefficient]]] = []
    while active:
        pivot = next((k for k in active if M[k][k]), None)
        if pivot is not None:
            d = M[pivot][pivot].re
            col = [M[i][pivot] for i in range(n)]
            pieces.append((d, [c / d for c in col]))
            active.remove(pivot)
            conj_col = [c.conjugate() for c in col]
            for i in active:
                if col[i]:
                    ci = col[i] / d
                    row = M[i]
                    for j in active:
                        if conj_col[j]:
                            row[j] = row[j] - ci * conj_col[j]
            for i in range(n):
                M[i][pivot] = ZERO
                M[pivot][i] = ZERO
            continue
        pair = next(
            ((s, t) for idx, s in enumerate(active) for t in active[idx + 1:] if M[s][t]),
            None,
        )
        if pair is None:
            break
        s, t = pair
        c = M[s][t]
        x = [M[i][s] for i in range(n)]
        y = [M[i][t] for i in range(n)]
        y_over_c = [v / c for v in y]
        half = Fraction(1, 2)
        pieces.append((half, [a + b for a, b in zip(x, y_over_c)]))
        pieces.append((-half, [a - b for a, b in zip(x, y_over_c)]))
        active.remove(s)
        active.remove(t)
        cbar = c.conjugate()
        xc = [v.conjugate() for v in x]
        yc = [v.conjugate() for v in y]
        for i in active:
            for j in active:
                delta = x[i] * yc[j] / cbar + y[i] * xc[j] / c
                if delta:
                    M[i][j] = M[i][j] - delta
        for i in range(n):
            for k in (s, t):
                M[i][k] = ZERO
                M[k][i] = ZERO
    return pieces


def rank_signature(form) -> Inertia:
    """Exact rank and inertia ``(rank, n+, n-)`` of a Hermitian matrix.

    Accepts a :class:`HermitianForm` or a square nested sequence of scalars.
    """
    pieces = _congruence(_as_matrix(form))
    pos = sum(1 for d, _ in pieces if d > 0)
    neg = len(pieces) - pos
    return Inertia(pos + neg, pos, neg)


def _gaussian_sqrt(q: Fraction, limit: int = 10 ** 8) -> Optional[Coefficient]:
    """A Gaussian rational ``g`` with ``|g|^2 == q``, if a cheap one exists."""
    a, b = q.numerator, q.denominator
    n = a * b
    if n > limit:
        r, s = isqrt(a), isqrt(b)
        if r * r == a and s * s == b:
            return Coefficient(Fraction(r, s))
        return None
    for x in range(isqrt(n), -1, -1):
        y2 = n - x * x
        y = isqrt(y2)
        if y * y == y2:
            return Coefficient(Fraction(x, b), Fraction(y, b))
    return None


def holomorphic_decomposition(form: HermitianForm) -> SignedDecomposition:
    """Signed decomposition ``P = sum +-w_j |p_j|^2`` with ``rank`` terms.

    ``p_j = sum_a v_j[a] z^a`` for the congruence vectors ``v_j``; these are
    linearly independent, and there are exactly ``n+`` positive and ``n-``
    negative terms.
    """
    if not isinstance(form, HermitianForm):
        raise TypeError("holomorphic_decomposition needs a HermitianForm")
    pieces = _congruence(_as_matrix(form))
    k = form.num_vars
    zeros = (0,) * k
    plus, minus, wplus, wminus = [], [], [], []
    for d, vec in pieces:
        weight = abs(d)
        g = _gaussian_sqrt(weight)
        if g is not None:
            vec = [g * v for v in vec]
            weight = Fraction(1)
        poly = MixedPoly(k, {m + zeros: v for m, v in zip(form.basis, vec) if v})
        if d > 0:
            plus.append(poly)
            wplus.append(weight)
        else:
            minus.append(poly)
            wminus.append(weight)
    return SignedDecomposition(k, tuple(plus), tuple(minus), tuple(wplus), tuple(wminus))


def reexpand(D: SignedDecomposition) -> MixedPoly:
    """``sum w |p|^2`` over ``plus`` minus the same over ``minus``."""
    total = MixedPoly.zero(D.num_vars)
    for p, w in zip(D.plus, D.plus_weights):
        total = total + (p * p.conjugate()).scale(w)
    for p, w in zip(D.minus, D.minus_weights):
        total = total - (p * p.conjugate()).scale(w)
    return total


def hermitian_report(
    P: MixedPoly, normalize_imaginary: bool = False, full_basis: bool = False
) -> dict:
    """JSON-ready report: basis, matrix, rank, inertia and decomposition."""
    form = coefficient_matrix(P, normalize_imaginary=normalize_imaginary, full_basis=full_basis)
    inertia = rank_signature(form)
    report = form.to_json()
    report.update(
        rank=inertia.rank,
        positives=inertia.positives,
        negatives=inertia.negatives,
        decomposition=holomorphic_decomposition(form).to_json(),
    )
    return report
