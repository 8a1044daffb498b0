"""Discrete short-time Fourier transform and weighted mixed norms.

The STFT uses a unit-L2 Gaussian window and is computed by Gauss-Hermite
quadrature per phase-space grid point:

    V(x, xi) = integral f(t) window(t - x) exp(-i t xi) dt.

Mixed norms take the inner ell^p over the spatial axes (cell volume dx^d)
and the outer ell^q over the frequency axes with cell volume (dxi/(2 pi))^d;
the 1/(2 pi) per frequency axis makes the discrete (2,2)-norm with constant
weight reproduce the L2 norm (the energy identity), which anchors all the
fitted constants.  p or q below 1 are admitted as quasi-norms: same formula,
no triangle inequality claimed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from .logscalar import LogScalar
from .classify import EnvelopeFit, fit_radius_from_norms
from .quadrature import gauss_hermite_rule
from .series import HermiteSeries, synthesize_many
from .spectral import NormSequence, apply_H, lp_norm, turning_point_extent

__all__ = ["Weight", "StftGrid", "StftField", "MixedNormParams", "stft",
           "modulation_norm", "norm_sequence_mod", "norm_equiv_harness",
           "NormEquivReport", "StftGridError"]

_MAX_FIELD_ENTRIES = 1 << 24


class StftGridError(ValueError):
    pass


@dataclass(frozen=True)
class Weight:
    """Phase-space weight: (1 + |x|^2 + |xi|^2)^(+/-N) or constant 1.

    ``kind`` is "polynomial", "reciprocal" or "constant".  Polynomial-type
    weights are moderate: w(z + y) <= C w(z) (1 + |y|)^(2N) with C = 2^N.
    """

    kind: str = "constant"
    N: int = 0

    def __post_init__(self):
        if self.kind not in ("polynomial", "reciprocal", "constant"):
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if self.kind != "constant" and self.N < 1:
            raise ValueError("polynomial weights need N >= 1")

    @classmethod
    def parse(cls, text: str) -> "Weight":
        t = text.strip().lower()
        if t in ("const", "constant", "1"):
            return cls("constant", 0)
        if t.startswith("1/v"):
            return cls("reciprocal", int(t[3:]))
        if t.startswith("v"):
            return cls("polynomial", int(t[1:]))
        raise ValueError(f"cannot parse weight {text!r} (use const, vN or 1/vN)")

    def label(self) -> str:
        return {"constant": "const", "polynomial": f"v{self.N}",
                "reciprocal": f"1/v{self.N}"}[self.kind]

    def log_on(self, radial_sq: np.ndarray) -> np.ndarray:
        """log weight given |x|^2 + |xi|^2 on the grid."""
        if self.kind == "constant":
            return np.zeros_like(radial_sq)
        body = self.N * np.log1p(radial_sq)
        return body if self.kind == "polynomial" else -body

    def moderation_constant(self, n_samples: int = 10_000, box: float = 20.0,
                            seed: int = 7) -> float:
        """Fitted C with w(z+y) <= C w(z) (1+|y|)^(2N) on random triples."""
        if self.kind == "constant":
            return 1.0
        rng = np.random.default_rng(seed)
        z = rng.uniform(-box, box, size=(n_samples, 2))
        y = rng.uniform(-box, box, size=(n_samples, 2))
        log_w_zy = self.log_on(np.sum((z + y) ** 2, axis=1))
        log_w_z = self.log_on(np.sum(z**2, axis=1))
        # 1/v_N is moderate with the same exponent as v_N
        bound = 2.0 * self.N * np.log1p(np.linalg.norm(y, axis=1))
        return float(np.exp(np.max(log_w_zy - log_w_z - bound)))


@dataclass(frozen=True)
class StftGrid:
    """Uniform phase-space grid and window/quadrature controls."""

    spatial_step: float
    freq_step: float
    spatial_extent: float
    freq_extent: float
    window_width: float = 1.0
    quad_order: int | None = None

    def __post_init__(self):
        if self.spatial_step <= 0 or self.freq_step <= 0:
            raise ValueError("grid steps must be positive")
        if self.window_width <= 0:
            raise ValueError("window width must be positive")

    @classmethod
    def default_for(cls, series: HermiteSeries, step: float = 0.25,
                    padding: float = 6.0) -> "StftGrid":
        M, d = series.max_degree, series.dimension
        return cls(spatial_step=step, freq_step=step,
                   spatial_extent=turning_point_extent(M, d, padding),
                   freq_extent=math.sqrt(2.0 * (2 * M + d)) + padding)

    def x_axis(self) -> np.ndarray:
        n = int(math.floor(self.spatial_extent / self.spatial_step))
        return self.spatial_step * np.arange(-n, n + 1)

    def xi_axis(self) -> np.ndarray:
        n = int(math.floor(self.freq_extent / self.freq_step))
        return self.freq_step * np.arange(-n, n + 1)

    def validate_for(self, series: HermiteSeries) -> None:
        M, d = series.max_degree, series.dimension
        if self.spatial_step > 0.5 * self.window_width or self.freq_step > 0.5 / self.window_width:
            raise StftGridError(
                f"steps ({self.spatial_step}, {self.freq_step}) undersample the "
                f"window-scale structure of the transform (need <= "
                f"{0.5 * self.window_width:.3g} spatial, {0.5 / self.window_width:.3g} frequency)")
        if self.freq_extent < math.sqrt(2 * M + d):
            raise StftGridError(
                f"frequency extent {self.freq_extent:.3g} does not cover the "
                f"spectral support ~sqrt(2M+d) = {math.sqrt(2 * M + d):.3g}")
        if self.spatial_extent < math.sqrt(2 * M):
            raise StftGridError("spatial extent does not cover the turning points")


@dataclass(frozen=True)
class StftField:
    """Sampled transform: values indexed by d spatial then d frequency axes."""

    dimension: int
    values: np.ndarray
    x_axis: np.ndarray
    xi_axis: np.ndarray
    grid: StftGrid


@dataclass(frozen=True)
class MixedNormParams:
    p: float
    q: float
    weight: Weight = field(default_factory=Weight)

    def __post_init__(self):
        if self.p <= 0 or self.q <= 0:
            raise ValueError("p and q must be positive (inf allowed)")

    def label(self) -> str:
        def fmt(v):
            return "inf" if v == math.inf else f"{v:g}"
        return f"mod:{fmt(self.p)},{fmt(self.q)},{self.weight.label()}"


def _stft_1d_columns(series: HermiteSeries, grid: StftGrid) -> np.ndarray:
    """V(x, xi) for a 1-d series on the full grid, shape (nx, nxi)."""
    x = grid.x_axis()
    xi = grid.xi_axis()
    w = grid.window_width
    a = 0.5 * (1.0 + 1.0 / w**2)
    M = series.max_degree
    n = grid.quad_order or max(96, M + 48 + int(math.ceil(grid.freq_extent**2 / (2.0 * a))))
    rule = gauss_hermite_rule(n)
    u = rule.nodes
    wmod = rule.modified_weights
    mu = x / (1.0 + w**2)                      # center of the combined Gaussian
    T = mu[:, None] + u[None, :] / math.sqrt(a)   # (nx, nq)
    fvals = synthesize_many(series, T.ravel()).reshape(T.shape)
    win = (math.pi * w**2) ** -0.25 * np.exp(-((T - x[:, None]) ** 2) / (2.0 * w**2))
    A = fvals * win * wmod[None, :]
    kernel = np.exp(-1j * np.outer(u / math.sqrt(a), xi))   # (nq, nxi)
    phase = np.exp(-1j * np.outer(mu, xi))                  # (nx, nxi)
    return (A @ kernel) * phase / math.sqrt(a)


def stft(series: HermiteSeries, grid: StftGrid | None = None) -> StftField:
    """Short-time Fourier transform with Gaussian window, d <= 2.

    For d = 2 the transform is assembled from per-axis transforms of the
    Hermite basis (the window and basis factorize), which keeps the cost at
    d times the 1-d work plus the final combination.
    """
    if series.dimension > 2:
        raise ValueError("stft is limited to dimension <= 2")
    grid = grid or StftGrid.default_for(series)
    grid.validate_for(series)
    x = grid.x_axis()
    xi = grid.xi_axis()
    d = series.dimension
    if (x.size * xi.size) ** d > _MAX_FIELD_ENTRIES:
        raise StftGridError(
            f"field would hold {(x.size * xi.size) ** d} entries; coarsen the grid")
    if d == 1:
        vals = _stft_1d_columns(series, grid)
        return StftField(1, vals, x, xi, grid)
    degs = series.degrees_per_axis()
    basis = {}
    for k in range(max(degs) + 1):
        unit = HermiteSeries(dimension=1, max_degree=k, coefficients={(k,): 1.0})
        basis[k] = _stft_1d_columns(unit, grid)
    vals = np.zeros((x.size, x.size, xi.size, xi.size), dtype=complex)
    for alpha, c in series.items():
        b1, b2 = basis[alpha[0]], basis[alpha[1]]
        vals += c * np.einsum("ac,bd->abcd", b1, b2)
    return StftField(2, vals, x, xi, grid)


def modulation_norm(fld: StftField, params: MixedNormParams) -> LogScalar:
    """Discrete weighted mixed norm of an STFT field.

    Inner ell^p over the spatial axes, outer ell^q over the frequency axes;
    p or q = inf take sups.  Computed in the log domain.
    """
    d = fld.dimension
    vals = np.abs(fld.values)
    x, xi = fld.x_axis, fld.xi_axis
    if d == 1:
        radial = x[:, None] ** 2 + xi[None, :] ** 2
    else:
        radial = (x[:, None, None, None] ** 2 + x[None, :, None, None] ** 2
                  + xi[None, None, :, None] ** 2 + xi[None, None, None, :] ** 2)
    with np.errstate(divide="ignore"):
        log_f = np.log(vals) + params.weight.log_on(radial)
    if not np.any(np.isfinite(log_f)):
        return LogScalar.zero()
    x_axes = tuple(range(d))
    f_axes = tuple(range(d, 2 * d))
    log_dx = d * math.log(fld.grid.spatial_step)
    log_dxi = d * (math.log(fld.grid.freq_step) - math.log(2.0 * math.pi))
    if params.p == math.inf:
        inner = np.max(log_f, axis=x_axes)
    else:
        inner = (logsumexp(params.p * log_f, axis=x_axes) + log_dx) / params.p
    if params.q == math.inf:
        out = float(np.max(inner))
    else:
        finite = inner[np.isfinite(inner)]
        if finite.size == 0:
            return LogScalar.zero()
        out = float((logsumexp(params.q * finite) + log_dxi) / params.q)
    return LogScalar.from_log(out)


def norm_sequence_mod(series: HermiteSeries, n_max: int, params: MixedNormParams,
                      grid: StftGrid | None = None, sigma: float = 1.0,
                      n_min: int = 0) -> NormSequence:
    """Modulation norms of H^N f for N = n_min..n_max (desk scale: d = 1)."""
    grid = grid or StftGrid.default_for(series)
    vals = []
    for N in range(n_min, n_max + 1):
        fld = stft(apply_H(series, N), grid)
        vals.append((N, modulation_norm(fld, params)))
    return NormSequence(dimension=series.dimension, sigma=sigma,
                        values=tuple(vals), norm_kind=params.label(),
                        max_degree=series.max_degree)


@dataclass(frozen=True)
class NormEquivReport:
    """Lebesgue-route vs modulation-route envelope comparison.

    Flavors must agree; the per-power radius gaps are reported with their
    window stability, and the embedding constants between the two norm
    families are fitted, never assumed.
    """

    p0: float
    params_label: str
    n0: int
    lp_fit: EnvelopeFit
    mod_fit: EnvelopeFit
    flavors_agree: bool
    gap_window: float
    gap_shifted: float
    gap_stable: bool
    embed_upper: float
    embed_lower: float

    def to_json_dict(self) -> dict:
        return {
            "p0": self.p0 if self.p0 != math.inf else "inf",
            "params": self.params_label,
            "n0": self.n0,
            "lp_fit": self.lp_fit.to_json_dict(),
            "mod_fit": self.mod_fit.to_json_dict(),
            "flavors_agree": self.flavors_agree,
            "gap_window": self.gap_window,
            "gap_shifted": self.gap_shifted,
            "gap_stable": self.gap_stable,
            "embed_upper_constant": self.embed_upper,
            "embed_lower_constant": self.embed_lower,
        }


def _conjugate(p: float) -> float:
    if p == 1:
        return math.inf
    if p == math.inf:
        return 1.0
    return p / (p - 1.0)


def norm_equiv_harness(series: HermiteSeries, sigma: float, p0: float,
                       params: MixedNormParams, n_max: int = 16, n0: int = 0,
                       grid: StftGrid | None = None) -> NormEquivReport:
    """Check that the envelope verdict survives swapping L^{p0} for a
    weighted modulation norm.

    Fits the radius sequence from both norm families, requires flavor
    agreement, reports the per-power radius gap with window stability, and
    fits the embedding constants relating the (p0, q1)/(p0, q2) modulation
    norms to L^{p0} with q1 = min(p0, p0'), q2 = max(p0, p0').
    """
    if series.dimension != 1:
        raise ValueError("the harness runs at desk scale: dimension 1 only")
    if n_max > 25:
        raise ValueError("keep n_max <= 25: each power costs a full transform")
    grid = grid or StftGrid.default_for(series)
    lp_vals = []
    for N in range(0, n_max + 1):
        lp_vals.append((N, lp_norm(apply_H(series, N), p0)))
    lp_seq = NormSequence(dimension=1, sigma=sigma, values=tuple(lp_vals),
                          norm_kind=("linf" if p0 == math.inf else f"lp:{p0:g}"),
                          max_degree=series.max_degree)
    mod_seq = norm_sequence_mod(series, n_max, params, grid, sigma, n_min=n0)

    lp_fit = fit_radius_from_norms(lp_seq, sigma)
    mod_fit = fit_radius_from_norms(mod_seq, sigma)

    # per-power radius gaps on the common tail window
    common = sorted(set(int(k) for k in lp_fit.orders) & set(int(k) for k in mod_fit.orders))
    lp_by = {int(k): v for k, v in zip(lp_fit.orders, lp_fit.log_radii)}
    mod_by = {int(k): v for k, v in zip(mod_fit.orders, mod_fit.log_radii)}
    gaps = np.array([abs(lp_by[k] - mod_by[k]) for k in common])
    half = len(common) // 2
    quarter = len(common) // 4
    gap_window = float(np.max(gaps[half:])) if gaps.size > half else math.nan
    gap_shifted = (float(np.max(gaps[quarter: quarter + (len(common) - half)]))
                   if gaps.size else math.nan)
    gap_stable = (math.isfinite(gap_window)
                  and abs(gap_window - gap_shifted) <= 0.25 * max(gap_window, gap_shifted, 1e-3))

    q1, q2 = min(p0, _conjugate(p0)), max(p0, _conjugate(p0))
    w_const = MixedNormParams(p0, q1, Weight())
    w_const2 = MixedNormParams(p0, q2, Weight())
    embed_lower = -math.inf
    embed_upper = -math.inf
    for N in range(0, min(n_max, 6) + 1):
        g = apply_H(series, N)
        fld = stft(g, grid)
        log_lp = lp_norm(g, p0).log_magnitude
        log_m_q1 = modulation_norm(fld, w_const).log_magnitude
        log_m_q2 = modulation_norm(fld, w_const2).log_magnitude
        embed_upper = max(embed_upper, log_m_q2 - log_lp)   # ||f||_{M^{p0,q2}} <= C ||f||_{Lp0}
        embed_lower = max(embed_lower, log_lp - log_m_q1)   # ||f||_{Lp0} <= C' ||f||_{M^{p0,q1}}
    return NormEquivReport(
        p0=p0, params_label=params.label(), n0=n0,
        lp_fit=lp_fit, mod_fit=mod_fit,
        flavors_agree=lp_fit.verdict == mod_fit.verdict,
        gap_window=gap_window, gap_shifted=gap_shifted, gap_stable=bool(gap_stable),
        embed_upper=math.exp(embed_upper), embed_lower=math.exp(embed_lower),
    )
