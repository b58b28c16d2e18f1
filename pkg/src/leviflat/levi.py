"""Levi-flatness certificates from the bordered complex Hessian.

A real hypersurface ``rho = 0`` is Levi-flat on its smooth part exactly when

    rank [[rho, rho_z], [rho_zbar, rho_{z zbar}]] <= 2   on rho = 0,

i.e. when every 3x3 minor of that bordered matrix vanishes on the zero set.
The certificate proves this exactly by dividing each complexified minor by the
complexified ``rho``. Refutations come from floating-point sampling of smooth
surface points and are re-checked in exact arithmetic at the witness.

Floating point appears only in the sampling path.
"""

from __future__ import annotations

import enum
import logging
import re
from dataclasses import dataclass, field
from itertools import combinations
from math import sqrt
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .coefficient import Coefficient
from .errors import NotRealValuedError, ParseError, VariableCountError
from .poly import MixedPoly, divide_exact
from .polyio import parse

__all__ = [
    "BorderedHessian",
    "LeafFamily",
    "LeviCertificate",
    "LeviConfig",
    "SamplePoint",
    "SampleResult",
    "Verdict",
    "Witness",
    "bordered_hessian",
    "certificate_summary",
    "certify_leviflat",
    "check_leaf_family",
    "levi_minors",
    "minor_indices",
    "parse_family",
    "sample_hypersurface",
]

logger = logging.getLogger(__name__)


class Verdict(str, enum.Enum):
    CERTIFIED = "certified"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class LeviConfig:
    """Sampling and threshold settings for :func:`certify_leviflat`."""

    seed: int = 0
    samples: int = 64
    box: Tuple[float, float] = (-2.0, 2.0)
    surface_tol: float = 1e-12
    gradient_tol: float = 1e-8
    refute_tol: float = 1e-6
    max_segments: Optional[int] = None
    bisection_steps: int = 200

    def thresholds(self) -> dict:
        return {
            "surface_residual": self.surface_tol,
            "smoothness_gradient": self.gradient_tol,
            "refutation": self.refute_tol,
        }


# -- bordered Hessian -----------------------------------------------------------


@dataclass(frozen=True)
class BorderedHessian:
    """``(k+1) x (k+1)`` matrix of exact Wirtinger derivatives.

    Row 0 is ``(rho, rho_{z_1}, ..., rho_{z_k})``, column 0 is
    ``(rho, rho_{zbar_1}, ..., rho_{zbar_k})`` and entry ``(i, j)`` of the
    interior is ``d^2 rho / dzbar_i dz_j``.
    """

    rho: MixedPoly
    entries: Tuple[Tuple[MixedPoly, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> MixedPoly:
        m = [[self.entries[r][c] for c in cols] for r in rows]
        return _det3(m)

    def evaluate(self, point: Sequence) -> List[List[Coefficient]]:
        return [[e.evaluate(point) for e in row] for row in self.entries]


def bordered_hessian(rho: MixedPoly) -> BorderedHessian:
    if not rho.is_real_valued():
        raise NotRealValuedError("the bordered Hessian needs a real-valued rho")
    k = rho.num_vars
    dz = [rho.partial(j, "holo") for j in range(1, k + 1)]
    dzbar = [rho.partial(i, "antiholo") for i in range(1, k + 1)]
    rows = [tuple([rho] + dz)]
    for i in range(k):
        rows.append(tuple([dzbar[i]] + [dzbar[i].partial(j, "holo") for j in range(1, k + 1)]))
    return BorderedHessian(rho, tuple(rows))


def _det3(m) -> MixedPoly:
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def minor_indices(size: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    triples = list(combinations(range(size), 3))
    return [(r, c) for r in triples for c in triples]


def levi_minors(rho: MixedPoly) -> List[MixedPoly]:
    """All ``C(k+1, 3)**2`` 3x3 minors of the bordered Hessian, rows-major order."""
    if rho.num_vars < 2:
        raise VariableCountError("Levi minors need at least 2 variables")
    H = bordered_hessian(rho)
    return [H.minor(r, c) for r, c in minor_indices(H.size)]


# -- numeric sampling -----------------------------------------------------------


class _NumericPoly:
    """Vectorized floating evaluation of a MixedPoly."""

    def __init__(self, p: MixedPoly):
        self.k = p.num_vars
        items = list(p.flat_terms().items())
        width = 2 * self.k
        self.exps = np.array([e for e, _ in items], dtype=np.int64).reshape(len(items), width)
        self.coeffs = np.array([complex(c) for _, c in items], dtype=complex)

    def _monomials(self, z: np.ndarray) -> np.ndarray:
        vals = np.concatenate([z, np.conj(z)], axis=-1)
        return np.prod(vals[:, None, :] ** self.exps[None, :, :], axis=2) * self.coeffs

    def __call__(self, z: np.ndarray) -> np.ndarray:
        if not len(self.coeffs):
            return np.zeros(z.shape[0], dtype=complex)
        return self._monomials(z).sum(axis=1)

    def scale(self, z: np.ndarray) -> np.ndarray:
        """Sum of absolute term values, a local magnitude for residual tests."""
        if not len(self.coeffs):
            return np.zeros(z.shape[0])
        return np.abs(self._monomials(z)).sum(axis=1)


@dataclass(frozen=True)
class SamplePoint:
    coordinates: Tuple[complex, ...]
    residual: float
    gradient_norm: float


@dataclass
class SampleResult:
    """Points found by :func:`sample_hypersurface` plus a diagnostic message."""

    points: List[SamplePoint]
    diagnostic: str = ""
    segments_tried: int = 0

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]


def _to_complex(x: np.ndarray, k: int) -> np.ndarray:
    return x[..., :k] + 1j * x[..., k:]


def sample_hypersurface(
    rho: MixedPoly,
    box: Tuple[float, float] = (-2.0, 2.0),
    count: int = 64,
    seed: int = 0,
    config: Optional[LeviConfig] = None,
) -> SampleResult:
    """Deterministic smooth points of ``rho = 0`` inside a box.

    Random segments with endpoints uniform in ``box`` (applied to every real
    coordinate) are kept when the real-valued ``rho`` changes sign along them
    and are bisected until the residual meets ``surface_tol * (1 + scale)``,
    where ``scale`` is the sum of absolute term values at the point. Points
    with real gradient norm ``<= gradient_tol`` are discarded.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    if not rho.is_real_valued():
        raise NotRealValuedError("sampling needs a real-valued rho")
    cfg = config or LeviConfig()
    k = rho.num_vars
    lo, hi = float(box[0]), float(box[1])
    f = _NumericPoly(rho)
    grads = [_NumericPoly(rho.partial(j, "antiholo")) for j in range(1, k + 1)]
    max_segments = cfg.max_segments or 200 * count
    rng = np.random.default_rng(seed)
    points: List[SamplePoint] = []
    tried = 0
    batch = max(4 * count, 64)
    while len(points) < count and tried < max_segments:
        n = min(batch, max_segments - tried)
        a = rng.uniform(lo, hi, size=(n, 2 * k))
        b = rng.uniform(lo, hi, size=(n, 2 * k))
        tried += n
        fa = f(_to_complex(a, k)).real
        fb = f(_to_complex(b, k)).real
        keep = np.sign(fa) * np.sign(fb) < 0
        if not keep.any():
            continue
        a, b, fa = a[keep], b[keep], fa[keep]
        for _ in range(cfg.bisection_steps):
            mid = 0.5 * (a + b)
            fm = f(_to_complex(mid, k)).real
            same = np.sign(fm) == np.sign(fa)
            a = np.where(same[:, None], mid, a)
            fa = np.where(same, fm, fa)
            b = np.where(same[:, None], b, mid)
        cands = [a, b]
        zs = [_to_complex(c, k) for c in cands]
        res = [np.abs(f(z).real) for z in zs]
        choose_b = res[1] < res[0]
        z = np.where(choose_b[:, None], zs[1], zs[0])
        residual = np.minimum(res[0], res[1])
        scale = f.scale(z)
        gnorm = 2.0 * np.sqrt(sum(np.abs(g(z)) ** 2 for g in grads))
        for idx in range(z.shape[0]):
            if residual[idx] > cfg.surface_tol * (1.0 + scale[idx]):
                continue
            if gnorm[idx] <= cfg.gradient_tol:
                continue
            points.append(SamplePoint(tuple(complex(v) for v in z[idx]),
                                      float(residual[idx]), float(gnorm[idx])))
            if len(points) == count:
                break
    diagnostic = ""
    if not points:
        diagnostic = "no sign change found in the box; rho may be sign-definite there"
        logger.info("sample_hypersurface: %s", diagnostic)
    elif len(points) < count:
        diagnostic = f"only {len(points)} of {count} points found in {tried} segments"
    return SampleResult(points, diagnostic, tried)


# -- certificate ------------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    point: Tuple[complex, ...]
    residual: float
    minor_value: float
    minor_index: Tuple[Tuple[int, ...], Tuple[int, ...]]
    exact_minor_value: float
    exact_residual: float

    def to_json(self) -> dict:
        return {
            "point": [[v.real, v.imag] for v in self.point],
            "residual": self.residual,
            "minor_value": self.minor_value,
            "minor_index": [list(self.minor_index[0]), list(self.minor_index[1])],
            "exact_minor_value": self.exact_minor_value,
            "exact_residual": self.exact_residual,
        }


@dataclass
class LeviCertificate:
    verdict: Verdict
    minors_total: int
    minors_divisible: int
    divisible: List[bool]
    thresholds: dict
    witness: Optional[Witness] = None
    samples_checked: int = 0
    diagnostic: str = ""

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "minors_total": self.minors_total,
            "minors_divisible": self.minors_divisible,
            "witness": None if self.witness is None else self.witness.to_json(),
            "thresholds": dict(self.thresholds),
            "samples_checked": self.samples_checked,
            "diagnostic": self.diagnostic,
        }


def _normalized_minors(H: np.ndarray, index) -> Tuple[np.ndarray, np.ndarray]:
    """Per point: max normalized |minor| and the index of the first maximizer."""
    scale = (1.0 + np.abs(H).reshape(H.shape[0], -1).max(axis=1)) ** 3
    values = np.stack(
        [np.abs(np.linalg.det(H[:, list(r)][:, :, list(c)])) for r, c in index], axis=1)
    values = values / scale[:, None]
    return values.max(axis=1), values.argmax(axis=1)


def _exact_check(Hpoly: BorderedHessian, rho: MixedPoly, z: Sequence[complex], rows, cols):
    point = [Coefficient.from_complex(v) for v in z]
    M = Hpoly.evaluate(point)
    sub = [[M[r][c] for c in cols] for r in rows]
    (a, b, c), (d, e, f), (g, h, i) = sub
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    biggest = max(sqrt(float(x.norm())) for row in M for x in row)
    normalized = sqrt(float(det.norm())) / (1.0 + biggest) ** 3
    residual = abs(float(rho.evaluate(point).re))
    return normalized, residual


def certify_leviflat(rho: MixedPoly, config: Optional[LeviConfig] = None) -> LeviCertificate:
    """Certify, refute, or give up on Levi-flatness of ``rho = 0``.

    CERTIFIED: every complexified minor is divisible by the complexified
    ``rho``, so all minors vanish on the zero set. REFUTED: a smooth sampled
    point with residual within tolerance has a normalized minor at least
    ``refute_tol``, confirmed by exact re-evaluation. Otherwise INCONCLUSIVE;
    divisibility by ``rho`` itself (not its square-free part) is sufficient
    but not necessary, so non-reduced inputs can land here.
    """
    if rho.is_zero():
        raise ValueError("cannot certify the zero polynomial")
    cfg = config or LeviConfig()
    H = bordered_hessian(rho)
    if rho.num_vars < 2:
        raise VariableCountError("Levi minors need at least 2 variables")
    index = minor_indices(H.size)
    crho = rho.complexify()
    cache: Dict[MixedPoly, bool] = {}
    divisible = []
    for r, c in index:
        m = H.minor(r, c)
        if m not in cache:
            cache[m] = m.is_zero() or divide_exact(m.complexify(), crho) is not None
        divisible.append(cache[m])
    n_div = sum(divisible)
    base = dict(minors_total=len(index), minors_divisible=n_div, divisible=divisible,
                thresholds=cfg.thresholds())
    if n_div == len(index):
        return LeviCertificate(Verdict.CERTIFIED, **base)

    sample = sample_hypersurface(rho, cfg.box, cfg.samples, cfg.seed, cfg)
    if not sample.points:
        return LeviCertificate(Verdict.INCONCLUSIVE, diagnostic=sample.diagnostic, **base)
    z = np.array([p.coordinates for p in sample.points], dtype=complex)
    entries = [[_NumericPoly(e) for e in row] for row in H.entries]
    Hnum = np.stack([np.stack([e(z) for e in row], axis=1) for row in entries], axis=1)
    best, which = _normalized_minors(Hnum, index)
    surface_scale = _NumericPoly(rho).scale(z)
    for idx in np.flatnonzero(best >= cfg.refute_tol):
        rows, cols = index[int(which[idx])]
        exact_value, exact_res = _exact_check(H, rho, sample.points[idx].coordinates, rows, cols)
        if (exact_value >= cfg.refute_tol
                and exact_res <= cfg.surface_tol * (1.0 + surface_scale[idx])):
            pt = sample.points[idx]
            witness = Witness(pt.coordinates, pt.residual, float(best[idx]), (rows, cols),
                              exact_value, exact_res)
            return LeviCertificate(Verdict.REFUTED, witness=witness,
                                   samples_checked=len(sample.points), **base)
    diag = "no minor exceeded the refutation threshold at sampled surface points"
    if sample.diagnostic:
        diag += "; " + sample.diagnostic
    return LeviCertificate(Verdict.INCONCLUSIVE, samples_checked=len(sample.points),
                           diagnostic=diag, **base)


# -- leaf families ---------------------------------------------------------------


@dataclass(frozen=True)
class LeafFamily:
    """Substitution ``z_j -> image_j(z, t)`` for a real parameter ``t``.

    Images live in ``num_vars + 1`` variables; the last one is ``t``. Variables
    without an image are left unchanged.
    """

    num_vars: int
    images: Mapping[int, MixedPoly] = field(default_factory=dict)

    @property
    def param_index(self) -> int:
        return self.num_vars + 1

    def validate(self) -> None:
        for j, img in self.images.items():
            if not 1 <= j <= self.num_vars:
                raise ValueError(f"family assigns unknown variable z{j}")
            if img.num_vars != self.num_vars + 1:
                raise ValueError(f"image of z{j} must live in {self.num_vars + 1} variables")
            if not img.is_holomorphic:
                raise ValueError(f"image of z{j} must not involve conjugates")


def _realify(p: MixedPoly, index: int) -> MixedPoly:
    """Identify ``conj(z_index)`` with ``z_index`` (a real parameter)."""
    k = p.num_vars
    h = index - 1
    out = {}
    for e, c in p.flat_terms().items():
        e = list(e)
        e[h] += e[k + h]
        e[k + h] = 0
        key = tuple(e)
        out[key] = out.get(key, 0) + c
    return MixedPoly(k, out)


def check_leaf_family(P: MixedPoly, family: LeafFamily) -> bool:
    """True iff substituting the family makes ``P`` vanish identically in ``(z, t)``."""
    if family.num_vars != P.num_vars:
        raise VariableCountError("family and polynomial have different variable counts")
    family.validate()
    k = P.num_vars
    assign, conj_assign = {}, {}
    for j in range(1, k + 1):
        img = family.images.get(j)
        if img is None:
            img = MixedPoly.var(k + 1, j)
        assign[j] = img
        conj_assign[j] = _realify(img.conjugate(), family.param_index)
    return P.substitute(assign, conj_assign, num_vars=k + 1).is_zero()


_ASSIGN_RE = re.compile(r"^\s*z([1-9]\d*)\s*=(.*)$", re.S)


def parse_family(text: str, num_vars: int, param: str = "t") -> LeafFamily:
    """Parse ``"z1 = -(t*z2 + t^2*z3); ..."`` into a :class:`LeafFamily`."""
    images = {}
    for piece in filter(str.strip, text.split(";")):
        m = _ASSIGN_RE.match(piece)
        if not m:
            raise ParseError(f"expected 'zK = expression', got {piece.strip()!r}")
        j = int(m.group(1))
        images[j] = parse(m.group(2), num_vars + 1, names={param: num_vars + 1})
    family = LeafFamily(num_vars, images)
    family.validate()
    return family


def certificate_summary(cert: LeviCertificate) -> str:
    lines = [f"verdict: {cert.verdict.value}",
             f"minors divisible: {cert.minors_divisible}/{cert.minors_total}"]
    if cert.witness is not None:
        w = cert.witness
        lines.append("witness: " + ", ".join(f"{v.real:.6g}{v.imag:+.6g}i" for v in w.point))
        lines.append(f"residual: {w.residual:.3e}  normalized minor: {w.minor_value:.3e}")
    if cert.diagnostic:
        lines.append(f"note: {cert.diagnostic}")
    return "\n".join(lines)

