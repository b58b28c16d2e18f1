"""Sparse exact polynomials in ``z_1..z_k`` and their conjugates.

A :class:`MixedPoly` in ``k`` variables stores its terms as a dict keyed by
flat exponent tuples of length ``2k``: the first ``k`` entries are the
exponents of ``z`` (the multi-index alpha), the last ``k`` those of ``z-bar``
(beta). Term order is graded lexicographic on that flat tuple, so
``z_1 > z_2 > ... > z_k`` and ``z`` exponents are compared before ``z-bar``
exponents.

A :class:`ComplexifiedPoly` uses the identical layout but reads the second
half as independent variables ``w_1..w_k``.

Degree queries on the zero polynomial return ``None`` (undefined degree).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Iterator, Mapping, Optional, Sequence, Tuple

from .coefficient import ONE, ZERO, Coefficient, as_coefficient
from .errors import LeviflatError, VariableCountError

__all__ = [
    "MixedPoly",
    "ComplexifiedPoly",
    "HoloPoly",
    "bidegree_split",
    "divide_exact",
    "term_key",
]

Exponents = Tuple[int, ...]


def term_key(exps: Exponents) -> Tuple[int, Exponents]:
    """Sort key for the canonical graded-lex order (larger key = larger term)."""
    return (sum(exps), exps)


class _SparsePoly:
    __slots__ = ("_nv", "_terms", "_hash")

    def __init__(self, num_vars: int, terms: Optional[Mapping[Exponents, Coefficient]] = None):
        if num_vars < 0:
            raise ValueError("num_vars must be nonnegative")
        width = 2 * num_vars
        clean: Dict[Exponents, Coefficient] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != width:
                raise VariableCountError(
                    f"exponent vector {exps} does not have length {width}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = as_coefficient(c)
            if c:
                clean[exps] = clean.get(exps, ZERO) + c
        self._nv = num_vars
        self._terms = {k: v for k, v in clean.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, num_vars: int, terms: Dict[Exponents, Coefficient]):
        obj = object.__new__(cls)
        obj._nv = num_vars
        obj._terms = terms
        obj._hash = None
        return obj

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int):
        return cls._raw(num_vars, {})

    @classmethod
    def constant(cls, num_vars: int, value) -> "_SparsePoly":
        c = as_coefficient(value)
        if not c:
            return cls.zero(num_vars)
        return cls._raw(num_vars, {(0,) * (2 * num_vars): c})

    # -- basic protocol ---------------------------------------------------------

    @property
    def num_vars(self) -> int:
        return self._nv

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if type(other) is type(self):
            return self._nv == other._nv and self._terms == other._terms
        if isinstance(other, (int, Fraction, Coefficient)):
            return self == self.constant(self._nv, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self._nv, frozenset(self._terms.items())))
        return self._hash

    def flat_terms(self) -> Dict[Exponents, Coefficient]:
        """Copy of the term dict keyed by flat exponent tuples."""
        return dict(self._terms)

    def sorted_flat_terms(self) -> list:
        """Terms in decreasing canonical order."""
        return sorted(self._terms.items(), key=lambda kv: term_key(kv[0]), reverse=True)

    def coefficient(self, exps: Exponents) -> Coefficient:
        return self._terms.get(tuple(exps), ZERO)

    def degree(self) -> Optional[int]:
        """Total degree, or ``None`` for the zero polynomial."""
        if not self._terms:
            return None
        return max(sum(e) for e in self._terms)

    def leading_term(self) -> Tuple[Exponents, Coefficient]:
        if not self._terms:
            raise LeviflatError("the zero polynomial has no leading term")
        exps = max(self._terms, key=term_key)
        return exps, self._terms[exps]

    # -- ring operations --------------------------------------------------------

    def _check(self, other):
        if isinstance(other, (int, Fraction, Coefficient)):
            return self.constant(self._nv, other)
        if type(other) is not type(self):
            return NotImplemented
        if other._nv != self._nv:
            raise VariableCountError(
                f"variable count mismatch: {self._nv} vs {other._nv}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out.get(k)
            if s is None:
                out[k] = v
            else:
                s = s + v
                if s:
                    out[k] = s
                else:
                    del out[k]
        return self._raw(self._nv, out)

    __radd__ = __add__

    def __neg__(self):
        return self._raw(self._nv, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Coefficient)):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        out: Dict[Exponents, Coefficient] = {}
        get = out.get
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                k = tuple([a + b for a, b in zip(k1, k2)])
                prev = get(k)
                out[k] = v1 * v2 if prev is None else prev + v1 * v2
        return self._raw(self._nv, {k: v for k, v in out.items() if v})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Coefficient)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "_SparsePoly":
        c = as_coefficient(c)
        if not c:
            return self.zero(self._nv)
        return self._raw(self._nv, {k: v * c for k, v in self._terms.items()})

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = self.constant(self._nv, ONE)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def map_coefficients(self, fn: Callable[[Coefficient], Coefficient]):
        return type(self)(self._nv, {k: fn(v) for k, v in self._terms.items()})


class MixedPoly(_SparsePoly):
    """Exact polynomial in ``z_1..z_k`` and ``z-bar_1..z-bar_k``.

    Build one with :meth:`var`, :meth:`conj_var`, :meth:`constant` and the
    arithmetic operators, with :meth:`from_terms`, or by parsing text with
    :func:`leviflat.polyio.parse`.
    """

    __slots__ = ()

    @classmethod
    def var(cls, num_vars: int, index: int) -> "MixedPoly":
        """The holomorphic coordinate ``z_index`` (1-based)."""
        _check_index(num_vars, index)
        exps = [0] * (2 * num_vars)
        exps[index - 1] = 1
        return cls._raw(num_vars, {tuple(exps): ONE})

    @classmethod
    def conj_var(cls, num_vars: int, index: int) -> "MixedPoly":
        """The antiholomorphic coordinate ``z-bar_index`` (1-based)."""
        _check_index(num_vars, index)
        exps = [0] * (2 * num_vars)
        exps[num_vars + index - 1] = 1
        return cls._raw(num_vars, {tuple(exps): ONE})

    @classmethod
    def monomial(cls, alpha: Sequence[int], beta: Optional[Sequence[int]] = None, coeff=1):
        beta = tuple(beta) if beta is not None else (0,) * len(alpha)
        if len(beta) != len(alpha):
            raise VariableCountError("alpha and beta differ in length")
        return cls(len(alpha), {tuple(alpha) + beta: coeff})

    @classmethod
    def from_terms(cls, num_vars: int, terms: Mapping[Tuple[Exponents, Exponents], object]):
        """Build from a ``{(alpha, beta): coefficient}`` mapping."""
        flat = {}
        for (alpha, beta), c in terms.items():
            if len(alpha) != num_vars or len(beta) != num_vars:
                raise VariableCountError(
                    f"exponent vectors must have length {num_vars}: {alpha}, {beta}")
            key = tuple(alpha) + tuple(beta)
            flat[key] = flat.get(key, ZERO) + as_coefficient(c)
        return cls(num_vars, flat)

    def __repr__(self):
        from .polyio import format_poly

        return f"MixedPoly({self._nv}, {format_poly(self)!r})"

    def __str__(self):
        from .polyio import format_poly

        return format_poly(self)

    # -- views ----------------------------------------------------------------

    def items(self) -> Iterator[Tuple[Exponents, Exponents, Coefficient]]:
        """Yield ``(alpha, beta, coefficient)`` in decreasing canonical order."""
        k = self._nv
        for exps, c in self.sorted_flat_terms():
            yield exps[:k], exps[k:], c

    @property
    def terms(self) -> Dict[Tuple[Exponents, Exponents], Coefficient]:
        k = self._nv
        return {(e[:k], e[k:]): c for e, c in self._terms.items()}

    @property
    def is_holomorphic(self) -> bool:
        k = self._nv
        return all(not any(e[k:]) for e in self._terms)

    def holomorphic_degree(self) -> Optional[int]:
        if not self._terms:
            return None
        k = self._nv
        return max(sum(e[:k]) for e in self._terms)

    def antiholomorphic_degree(self) -> Optional[int]:
        if not self._terms:
            return None
        k = self._nv
        return max(sum(e[k:]) for e in self._terms)

    def bidegrees(self) -> set:
        k = self._nv
        return {(sum(e[:k]), sum(e[k:])) for e in self._terms}

    def bidegree(self) -> Optional[Tuple[int, int]]:
        """Common bidegree ``(j, k)`` of all terms.

        Returns ``None`` for the zero polynomial; raises if the terms do not
        share a single bidegree.
        """
        from .errors import NotBihomogeneousError

        degs = self.bidegrees()
        if not degs:
            return None
        if len(degs) != 1:
            raise NotBihomogeneousError(f"terms have several bidegrees: {sorted(degs)}")
        return next(iter(degs))

    def is_bihomogeneous(self) -> bool:
        """True for a nonzero polynomial whose terms all have bidegree ``(d, d)``."""
        degs = self.bidegrees()
        return len(degs) == 1 and len({*next(iter(degs))}) == 1

    # -- conjugation ----------------------------------------------------------

    def conjugate(self) -> "MixedPoly":
        """Swap alpha and beta in every term and conjugate the coefficients."""
        k = self._nv
        return MixedPoly._raw(k, {e[k:] + e[:k]: c.conjugate() for e, c in self._terms.items()})

    def is_real_valued(self) -> bool:
        return self.conjugate() == self

    def is_imaginary_valued(self) -> bool:
        """True when ``conjugate(P) == -P`` (purely imaginary values)."""
        return self.conjugate() == -self

    # -- calculus and evaluation ----------------------------------------------

    def partial(self, index: int, kind: str = "holo") -> "MixedPoly":
        """Formal Wirtinger derivative in ``z_index`` (``kind='holo'``) or
        ``z-bar_index`` (``kind='antiholo'``)."""
        _check_index(self._nv, index)
        if kind not in ("holo", "antiholo"):
            raise ValueError("kind must be 'holo' or 'antiholo'")
        pos = index - 1 if kind == "holo" else self._nv + index - 1
        out = {}
        for e, c in self._terms.items():
            n = e[pos]
            if n:
                e2 = e[:pos] + (n - 1,) + e[pos + 1:]
                out[e2] = c * n
        return MixedPoly._raw(self._nv, out)

    def evaluate(self, point: Sequence) -> Coefficient:
        """Exact value at ``point``; the ``z-bar`` slots see exact conjugates."""
        if len(point) != self._nv:
            raise VariableCountError(
                f"point has {len(point)} coordinates, polynomial has {self._nv} variables")
        zs = [as_coefficient(p) for p in point]
        values = zs + [z.conjugate() for z in zs]
        return _evaluate_flat(self._terms, values)

    def substitute(
        self,
        assignment: Mapping[int, object],
        conj_assignment: Optional[Mapping[int, object]] = None,
        num_vars: Optional[int] = None,
    ) -> "MixedPoly":
        """Compose with polynomial images of the variables.

        ``assignment[i]`` replaces ``z_i`` and ``conj_assignment[i]`` replaces
        ``z-bar_i`` (both 1-based). Images are MixedPoly in a common target
        ring or exact scalars. Every variable occurring in ``self`` must be
        assigned. When ``conj_assignment`` is omitted the conjugates of the
        ``assignment`` images are used.
        """
        conj_assignment = (
            {i: _conj_image(v) for i, v in assignment.items()}
            if conj_assignment is None else conj_assignment
        )
        target = num_vars
        for v in list(assignment.values()) + list(conj_assignment.values()):
            if isinstance(v, MixedPoly):
                if target is None:
                    target = v.num_vars
                elif v.num_vars != target:
                    raise VariableCountError("substitution images live in different rings")
        if target is None:
            target = self._nv
        k = self._nv
        images = []
        for slot in range(2 * k):
            table = assignment if slot < k else conj_assignment
            idx = slot % k + 1
            images.append(table.get(idx))
        used = set()
        for e in self._terms:
            used.update(i for i, n in enumerate(e) if n)
        for slot in sorted(used):
            if images[slot] is None:
                name = f"z{slot % k + 1}" if slot < k else f"~z{slot % k + 1}"
                raise KeyError(f"no substitution given for {name}")
        images = [
            None if img is None else
            (img if isinstance(img, MixedPoly) else MixedPoly.constant(target, img))
            for img in images
        ]
        powers: Dict[Tuple[int, int], MixedPoly] = {}

        def power(slot: int, n: int) -> MixedPoly:
            key = (slot, n)
            if key not in powers:
                powers[key] = images[slot] if n == 1 else power(slot, n - 1) * images[slot]
            return powers[key]

        result = MixedPoly.zero(target)
        for e, c in self._terms.items():
            term = MixedPoly.constant(target, c)
            for slot, n in enumerate(e):
                if n:
                    term = term * power(slot, n)
            result = result + term
        return result

    def complexify(self) -> "ComplexifiedPoly":
        """Replace each ``z-bar_i`` by an independent variable ``w_i``."""
        return ComplexifiedPoly._raw(self._nv, dict(self._terms))

    # -- variable bookkeeping ---------------------------------------------------

    def insert_variable(self, position: int) -> "MixedPoly":
        """Embed into ``k + 1`` variables with a new (absent) variable at 1-based ``position``."""
        k = self._nv
        if not 1 <= position <= k + 1:
            raise IndexError(f"position {position} out of range 1..{k + 1}")
        p = position - 1
        out = {}
        for e, c in self._terms.items():
            a, b = e[:k], e[k:]
            out[a[:p] + (0,) + a[p:] + b[:p] + (0,) + b[p:]] = c
        return MixedPoly._raw(k + 1, out)


HoloPoly = MixedPoly
"""A MixedPoly with no ``z-bar`` dependence (check ``is_holomorphic``)."""


class ComplexifiedPoly(_SparsePoly):
    """Polynomial in ``z_1..z_k, w_1..w_k`` with ``w`` independent of ``z``."""

    __slots__ = ()

    def __repr__(self):
        from .polyio import format_complexified

        return f"ComplexifiedPoly({self._nv}, {format_complexified(self)!r})"

    def restrict_diagonal(self) -> MixedPoly:
        """Set ``w = z-bar``; inverse of :meth:`MixedPoly.complexify`."""
        return MixedPoly._raw(self._nv, dict(self._terms))

    def evaluate(self, values: Sequence) -> Coefficient:
        """Exact value at ``(z_1..z_k, w_1..w_k)``."""
        if len(values) != 2 * self._nv:
            raise VariableCountError(f"expected {2 * self._nv} values, got {len(values)}")
        return _evaluate_flat(self._terms, [as_coefficient(v) for v in values])

    def divide_exact(self, divisor: "ComplexifiedPoly") -> Optional["ComplexifiedPoly"]:
        """Quotient ``q`` with ``divisor * q == self``, or ``None`` if none exists."""
        return divide_exact(self, divisor)


def divide_exact(a: ComplexifiedPoly, b: ComplexifiedPoly) -> Optional[ComplexifiedPoly]:
    """Exact division by a single divisor using leading-term elimination.

    If ``b`` divides ``a`` every remainder stays a multiple of ``b``, so its
    leading monomial is divisible by that of ``b``; the first remainder
    violating this proves non-divisibility. Returns ``None`` in that case.
    """
    if type(a) is not type(b):
        raise TypeError("divide_exact needs two polynomials of the same kind")
    if a.num_vars != b.num_vars:
        raise VariableCountError(f"variable count mismatch: {a.num_vars} vs {b.num_vars}")
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    lm_b, lc_b = b.leading_term()
    deg_b = sum(lm_b)
    b_terms = list(b._terms.items())
    rem = dict(a._terms)
    quot: Dict[Exponents, Coefficient] = {}
    while rem:
        lm_r = max(rem, key=term_key)
        if sum(lm_r) < deg_b:
            return None
        shift = tuple([x - y for x, y in zip(lm_r, lm_b)])
        if any(s < 0 for s in shift):
            return None
        t = rem[lm_r] / lc_b
        quot[shift] = t
        for e, c in b_terms:
            k = tuple([x + y for x, y in zip(e, shift)])
            v = rem.get(k, ZERO) - c * t
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return type(a)._raw(a.num_vars, quot)


def bidegree_split(p: MixedPoly) -> Dict[Tuple[int, int], MixedPoly]:
    """Split into parts homogeneous of degree ``j`` in ``z`` and ``k`` in ``z-bar``."""
    k = p.num_vars
    parts: Dict[Tuple[int, int], dict] = {}
    for e, c in p._terms.items():
        parts.setdefault((sum(e[:k]), sum(e[k:])), {})[e] = c
    return {bd: MixedPoly._raw(k, t) for bd, t in sorted(parts.items(), reverse=True)}


def _evaluate_flat(terms: Mapping[Exponents, Coefficient], values: Sequence[Coefficient]) -> Coefficient:
    cache: Dict[Tuple[int, int], Coefficient] = {}
    total = ZERO
    for e, c in terms.items():
        acc = c
        for slot, n in enumerate(e):
            if n:
                key = (slot, n)
                pw = cache.get(key)
                if pw is None:
                    pw = cache[key] = values[slot] ** n
                acc = acc * pw
        total = total + acc
    return total


def _conj_image(v):
    if isinstance(v, MixedPoly):
        return v.conjugate()
    return as_coefficient(v).conjugate()


def _check_index(num_vars: int, index: int) -> None:
    if not 1 <= index <= num_vars:
        raise IndexError(f"variable index {index} out of range 1..{num_vars}")
