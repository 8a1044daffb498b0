"""Stable evaluation of L2-orthonormal Hermite functions.

The functions h_k are normalized so that {h_k} is orthonormal in L2(R) and
(x^2 - d^2/dx^2) h_k = (2k + 1) h_k.  Evaluation uses the three-term
recurrence

    h_{k+1}(x) = x sqrt(2/(k+1)) h_k(x) - sqrt(k/(k+1)) h_{k-1}(x)

seeded with h_0(x) = pi^{-1/4} exp(-x^2/2).  A running rescale keeps the
recurrence meaningful even where the seed underflows float64 (large |x|,
large k), so values are accurate for k up to 10^4 and |x| up to 50.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["hermite_eval", "hermite_eval_multi", "hermite_matrix"]

_LOG_PI_QUARTER = 0.25 * math.log(math.pi)
_RESCALE_AT = 1e120


def hermite_eval(k: int, x: float) -> float:
    """Value of the orthonormal Hermite function h_k at a real point.

    Total on k >= 0 and finite x; returns 0.0 when the true value is below
    the float64 range (genuine underflow, not loss of the recurrence).
    """
    if k < 0:
        raise ValueError(f"degree must be >= 0, got {k}")
    if not math.isfinite(x):
        raise ValueError(f"evaluation point must be finite, got {x!r}")
    log_scale = -0.5 * x * x - _LOG_PI_QUARTER
    u_prev, u = 0.0, 1.0
    for j in range(k):
        u_prev, u = u, x * math.sqrt(2.0 / (j + 1)) * u - math.sqrt(j / (j + 1)) * u_prev
        au = abs(u)
        if au > _RESCALE_AT:
            log_scale += math.log(au)
            u /= au
            u_prev /= au
    if log_scale < -745.0:
        return 0.0
    return u * math.exp(log_scale)


def hermite_eval_multi(alpha, x) -> float:
    """Tensor-product Hermite function: prod_i h_{alpha_i}(x_i)."""
    alpha = tuple(int(a) for a in alpha)
    pt = np.atleast_1d(np.asarray(x, dtype=float))
    if len(alpha) != pt.size:
        raise ValueError(f"index has length {len(alpha)} but point has length {pt.size}")
    out = 1.0
    for a, xi in zip(alpha, pt):
        out *= hermite_eval(a, float(xi))
        if out == 0.0:
            # the remaining factors are bounded, so the product stays 0
            break
    return out


def hermite_matrix(kmax: int, x) -> np.ndarray:
    """All h_k(x) for k = 0..kmax at the points x, shape (kmax+1, len(x)).

    Vectorized form of the rescaled recurrence; the workhorse behind the
    transforms and quadrature weights.
    """
    if kmax < 0:
        raise ValueError(f"kmax must be >= 0, got {kmax}")
    pts = np.atleast_1d(np.asarray(x, dtype=float))
    if not np.all(np.isfinite(pts)):
        raise ValueError("evaluation points must be finite")
    out = np.empty((kmax + 1, pts.size))
    log_scale = -0.5 * pts * pts - _LOG_PI_QUARTER
    u_prev = np.zeros(pts.size)
    u = np.ones(pts.size)
    out[0] = np.exp(log_scale)
    for k in range(kmax):
        u_prev, u = u, pts * math.sqrt(2.0 / (k + 1)) * u - math.sqrt(k / (k + 1)) * u_prev
        big = np.abs(u) > _RESCALE_AT
        if big.any():
            s = np.abs(u[big])
            log_scale[big] += np.log(s)
            u[big] /= s
            u_prev[big] /= s
        out[k + 1] = u * np.exp(log_scale)
    return out


def log_abs_hermite_sumsq(n: int, x) -> np.ndarray:
    """log( sum_{k<n} h_k(x)^2 ) per point, fully in the log domain.

    Used for Christoffel weights: the sum spans hundreds of orders of
    magnitude near the edge nodes of large quadrature rules, so it is
    accumulated as a running log-sum-exp alongside the rescaled recurrence.
    """
    if n < 1:
        raise ValueError(f"need at least one term, got n={n}")
    pts = np.atleast_1d(np.asarray(x, dtype=float))
    log_scale = -0.5 * pts * pts - _LOG_PI_QUARTER
    u_prev = np.zeros(pts.size)
    u = np.ones(pts.size)
    # running log of sum h_k^2; term k contributes 2*(log_scale + log|u|)
    acc = 2.0 * log_scale  # k = 0 term, u = 1
    for k in range(n - 1):
        u_prev, u = u, pts * math.sqrt(2.0 / (k + 1)) * u - math.sqrt(k / (k + 1)) * u_prev
        big = np.abs(u) > _RESCALE_AT
        if big.any():
            s = np.abs(u[big])
            log_scale[big] += np.log(s)
            u[big] /= s
            u_prev[big] /= s
        with np.errstate(divide="ignore"):
            term = 2.0 * (log_scale + np.log(np.abs(u)))
        hi = np.maximum(acc, term)
        lo = np.minimum(acc, term)
        acc = hi + np.log1p(np.exp(lo - hi))
    return acc
