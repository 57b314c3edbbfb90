"""Transition extraction from violation curves, finite-size scaling fits, and
finite-temperature crossover lines.

Transition location: fit a cubic to the delta(lambda) curve over a small
range and read off the signature point - the root of the second derivative
for derivative-extremum signatures, or the interior minimizer for the
minimum signature. The fit range can be chosen automatically: the curve's
steepest region (for derivative signatures) or its interior minimum (for the
minimum signature) is found first, using a locally regressed slope rather
than pointwise differences because digit counts move in discrete steps and
make raw gradients noisy.

Crossover lines: at each temperature in a grid, the chosen quantity's ridge
extrema on either side of lambda = 1 are located on a lambda grid scaled by
the temperature and refined by a parabolic fit - three-point interpolation
for the smooth magnetization derivative, a least-squares parabola over a
wider neighbourhood for violation ridges, whose digit-count staircase makes
pointwise interpolation noisy - and each branch's (lambda, T) points are
fitted with a straight line.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import numerics, xy_exact
from .errors import (
    ConfigurationError,
    InsufficientRidgeError,
    MixedSideError,
    NoTransitionError,
)
from .firstdigit import DistKind, ReferenceDistribution, histogram, rescale_unit
from .numerics import LineFit, PolyFit
from .violation import Metric, violation
from .windowscan import ScanResult

LAMBDA_C = 1.0

# Auto fit-range defaults; half-widths in lambda.
FIT_HALF_WIDTH = 0.05
SMOOTH_HALF_WIDTH = 0.03

# Crossover-ridge defaults. Lambda grids are expressed in units of t_tilde
# around lambda = 1; the violation window width is window_ratio * t_tilde.
RIDGE_SPAN = 3.0
RIDGE_STEP = 0.025
RIDGE_WINDOW_RATIO = 1.0
RIDGE_SAMPLES = 12_000
# half-width, in grid points, of the refinement parabola on violation ridges
RIDGE_REFINE_POINTS = 12


class Signature(enum.Enum):
    DERIVATIVE_MAX = "derivative-max"
    DERIVATIVE_MIN = "derivative-min"
    MINIMUM = "minimum"
    # either derivative extremum; the estimate records which one was found
    DERIVATIVE_EXTREMUM = "derivative"


def default_signature(dist: ReferenceDistribution) -> Signature:
    """Documented per-distribution default: the uniform law dips at the
    transition, the others flip steepness there."""
    if dist.kind is DistKind.UNIFORM:
        return Signature.MINIMUM
    return Signature.DERIVATIVE_EXTREMUM


@dataclass(frozen=True)
class TransitionEstimate:
    lambda_c_n: float
    n_sites: int | None
    fit: PolyFit
    signature: Signature
    fit_range: tuple[float, float]
    fit_center: float


@dataclass(frozen=True)
class ScalingFit:
    exponent: float
    prefactor: float
    line: LineFit
    pairs: tuple[tuple[int, float], ...]


@dataclass(frozen=True)
class CrossoverLines:
    left: LineFit
    right: LineFit
    ridge_points: tuple[tuple[float, float, str], ...]
    warnings: tuple[str, ...] = ()


def local_slopes(x: np.ndarray, y: np.ndarray, half: float) -> np.ndarray:
    """Least-squares slope of y over the points within +-half of each x."""
    s = np.full(x.size, np.nan)
    for i, c in enumerate(x):
        sel = (x >= c - half) & (x <= c + half)
        if sel.sum() >= 4:
            xs, ys = x[sel], y[sel]
            dx = xs - xs.mean()
            s[i] = (dx * (ys - ys.mean())).sum() / (dx * dx).sum()
    return s


def auto_fit_range(
    result: ScanResult,
    signature: Signature,
    fit_half: float = FIT_HALF_WIDTH,
    smooth_half: float = SMOOTH_HALF_WIDTH,
) -> tuple[float, float]:
    """Center a fit window on the curve's signature feature.

    Only interior windows participate: windows clipped by the scan range have
    off-grid midpoints and their one-sided sampling fakes steep gradients.
    """
    mids = result.lambdas()
    deltas = result.deltas()
    a, b = result.config.lambda_range
    eps = result.config.window_width
    interior = (mids >= a + eps / 2 - 1e-12) & (mids <= b - eps / 2 + 1e-12)
    if interior.sum() < 4:
        raise NoTransitionError("too few interior scan points to center a fit range")
    x, y = mids[interior], deltas[interior]
    if signature is Signature.MINIMUM:
        center = x[np.argmin(y)]
    else:
        slopes = local_slopes(x, y, smooth_half)
        if not np.isfinite(slopes).any():
            raise NoTransitionError("no window had enough neighbours for a slope estimate")
        center = x[np.nanargmax(np.abs(slopes))]
    return float(center - fit_half), float(center + fit_half)


def _shifted_cubic(coeffs: np.ndarray, x0: float) -> np.ndarray:
    """Re-express a cubic fitted in u = x - x0 in the raw coordinate."""
    d, c, b, a = coeffs
    return np.array(
        [
            d - c * x0 + b * x0 * x0 - a * x0 ** 3,
            c - 2.0 * b * x0 + 3.0 * a * x0 * x0,
            b - 3.0 * a * x0,
            a,
        ]
    )


def locate_transition(
    result: ScanResult,
    fit_range: tuple[float, float],
    signature: Signature,
) -> TransitionEstimate:
    """Cubic-fit the curve inside fit_range and return the signature point."""
    lo, hi = fit_range
    if not lo < hi:
        raise ConfigurationError("fit_range must be an increasing pair")
    mids = result.lambdas()
    deltas = result.deltas()
    sel = (mids >= lo - 1e-12) & (mids <= hi + 1e-12)
    if sel.sum() < 8:
        raise ConfigurationError(
            f"need at least 8 scan points inside fit_range, found {int(sel.sum())}"
        )
    x, y = mids[sel], deltas[sel]
    x0 = float(x.mean())
    fit_u = numerics.polyfit(np.column_stack([x - x0, y]), 3)
    d0, c1, b2, a3 = fit_u.coefficients
    fit = PolyFit(
        coefficients=_shifted_cubic(fit_u.coefficients, x0),
        degree=3,
        rms_residual=fit_u.rms_residual,
    )
    if signature is Signature.MINIMUM:
        # interior minimizer of the cubic: root of f' with f'' > 0
        if a3 == 0.0 and b2 == 0.0:
            raise NoTransitionError("fit has no curvature; no interior minimum")
        roots = np.atleast_1d(np.roots([3.0 * a3, 2.0 * b2, c1]))
        roots = roots[np.isreal(roots)].real
        good = [
            r
            for r in roots
            if 6.0 * a3 * r + 2.0 * b2 > 0.0 and x.min() - x0 <= r <= x.max() - x0
        ]
        if not good:
            raise NoTransitionError("cubic has no interior minimum inside fit_range")
        u_star = min(good, key=abs)
        kind = Signature.MINIMUM
    else:
        if a3 == 0.0:
            raise NoTransitionError("cubic fit degenerated to a parabola; no inflection")
        u_star = -b2 / (3.0 * a3)
        kind = Signature.DERIVATIVE_MAX if a3 < 0.0 else Signature.DERIVATIVE_MIN
        if signature is not Signature.DERIVATIVE_EXTREMUM and kind is not signature:
            raise NoTransitionError(
                f"inflection is a {kind.value} of the derivative, not {signature.value}"
            )
        if not (x.min() - x0 <= u_star <= x.max() - x0):
            raise NoTransitionError("derivative extremum falls outside fit_range")

    return TransitionEstimate(
        lambda_c_n=float(x0 + u_star),
        n_sites=result.config.n_sites,
        fit=fit,
        signature=kind,
        fit_range=(float(lo), float(hi)),
        fit_center=x0,
    )


def scaling_exponent(
    estimates,
    lambda_c: float = LAMBDA_C,
) -> ScalingFit:
    """Fit ln(lambda_c - lambda_c_n) against ln n_sites.

    The transition shift lambda_c^N = lambda_c + k N^alpha turns into a line
    with slope alpha and intercept ln(-k); all estimates must approach the
    critical point from the same side for the logs to exist.
    """
    ests = list(estimates)
    if len(ests) < 3:
        raise ConfigurationError("scaling fit needs at least 3 transition estimates")
    sizes = [e.n_sites for e in ests]
    if any(n is None for n in sizes):
        raise ConfigurationError("scaling fit needs finite-chain estimates (n_sites set)")
    if len(set(sizes)) != len(sizes):
        raise ConfigurationError("n_sites values must be distinct")
    offenders = [int(e.n_sites) for e in ests if e.lambda_c_n >= lambda_c]
    if offenders:
        raise MixedSideError(offenders)
    pts = np.array(
        [[math.log(e.n_sites), math.log(lambda_c - e.lambda_c_n)] for e in ests]
    )
    line = numerics.linfit(pts)
    return ScalingFit(
        exponent=line.slope,
        prefactor=-math.exp(line.intercept),
        line=line,
        pairs=tuple((int(e.n_sites), float(e.lambda_c_n)) for e in ests),
    )


class CrossoverQuantity(enum.Enum):
    DMZDT = "dmzdt"
    BVP = "bvp"


@dataclass(frozen=True)
class RidgeGrid:
    """Per-temperature lambda grid around lambda = 1, in units of t_tilde."""

    span: float = RIDGE_SPAN
    step: float = RIDGE_STEP

    def centers(self, t_tilde: float) -> np.ndarray:
        u = np.arange(-self.span, self.span + 1e-12, self.step)
        return 1.0 + t_tilde * u


def _bvp_deltas(
    centers: np.ndarray,
    gamma: float,
    t_tilde: float,
    eps: float,
    samples: int,
    dist: ReferenceDistribution,
    metric: Metric,
) -> np.ndarray:
    beta = 1.0 / t_tilde
    offsets = np.linspace(-eps / 2.0, eps / 2.0, samples)
    out = np.empty(centers.size)
    for i, c in enumerate(centers):
        values = xy_exact.mz_infinite_many(c + offsets, gamma, beta)
        out[i] = violation(histogram(rescale_unit(values)), dist, metric)
    return out


def _refine3(x: np.ndarray, y: np.ndarray, k: int) -> float:
    h = x[1] - x[0]
    denom = y[k - 1] - 2.0 * y[k] + y[k + 1]
    if denom == 0.0:
        return float(x[k])
    return float(x[k] + 0.5 * h * (y[k - 1] - y[k + 1]) / denom)


def _refine_window(x: np.ndarray, y: np.ndarray, k: int, half: int, want_max: bool) -> float:
    """Vertex of a least-squares parabola over +-half grid points around k.

    Violation curves carry digit-staircase wiggles comparable to the grid
    step, so the extremum neighbourhood is regressed instead of interpolated;
    a wrong-curvature fit falls back to three-point interpolation.
    """
    lo, hi = max(0, k - half), min(x.size, k + half + 1)
    xs, ys = x[lo:hi], y[lo:hi]
    x0 = xs.mean()
    a, b, _ = np.polyfit(xs - x0, ys, 2)
    if (a < 0.0) != want_max or a == 0.0:
        return _refine3(x, y, k)
    return float(x0 - b / (2.0 * a))


def _branch_extremum(
    centers: np.ndarray,
    values: np.ndarray,
    side: str,
    want_max: bool,
    refine_points: int = 0,
) -> float | None:
    mask = centers < 1.0 if side == "left" else centers > 1.0
    idx = np.flatnonzero(mask)
    vals = values[idx]
    k = idx[int(np.nanargmax(vals) if want_max else np.nanargmin(vals))]
    # the extremum must be bracketed inside this side's subgrid
    if k <= idx[0] or k >= idx[-1]:
        return None
    if refine_points:
        return _refine_window(centers, values, k, refine_points, want_max)
    return _refine3(centers, values, k)


def _ridge_slice(
    quantity: CrossoverQuantity,
    gamma: float,
    t: float,
    grid: RidgeGrid,
    window_ratio: float,
    samples: int,
    dist: ReferenceDistribution,
    metric: Metric,
) -> tuple[float | None, float | None]:
    centers = grid.centers(t)
    if quantity is CrossoverQuantity.DMZDT:
        values = xy_exact.dmz_dT_many(centers, gamma, t)
        # ridge of maxima on the ordered side, minima on the paramagnetic side;
        # the surface is smooth, so three-point interpolation is unbiased
        left = _branch_extremum(centers, values, "left", want_max=True)
        right = _branch_extremum(centers, values, "right", want_max=False)
    else:
        values = _bvp_deltas(centers, gamma, t, window_ratio * t, samples, dist, metric)
        # the violation curve dips left of the transition and peaks right of it
        left = _branch_extremum(
            centers, values, "left", want_max=False, refine_points=RIDGE_REFINE_POINTS
        )
        right = _branch_extremum(
            centers, values, "right", want_max=True, refine_points=RIDGE_REFINE_POINTS
        )
    return left, right


def crossover_lines(
    quantity: CrossoverQuantity | str,
    gamma: float,
    t_grid,
    lambda_grid: RidgeGrid | None = None,
    *,
    window_ratio: float = RIDGE_WINDOW_RATIO,
    samples: int = RIDGE_SAMPLES,
    dist: ReferenceDistribution = ReferenceDistribution.benford(),
    metric: Metric = Metric.MEAN_DEVIATION,
    workers: int = 1,
) -> CrossoverLines:
    """Fit the two finite-temperature crossover lines T = s (lambda - 1).

    For each temperature the quantity's extremum is located on each side of
    lambda = 1; unbracketed extrema drop that branch point with a warning.
    Each branch needs at least 3 surviving points.
    """
    quantity = CrossoverQuantity(quantity)
    ts = [float(t) for t in t_grid]
    if any(not (t > 0) for t in ts):
        raise ConfigurationError("t_grid values must be positive")
    grid = lambda_grid or RidgeGrid()

    def run(t: float):
        return _ridge_slice(quantity, gamma, t, grid, window_ratio, samples, dist, metric)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            slices = list(pool.map(run, ts))
    else:
        slices = [run(t) for t in ts]

    warnings: list[str] = []
    points: list[tuple[float, float, str]] = []
    branches: dict[str, list[tuple[float, float]]] = {"left": [], "right": []}
    for t, (lam_left, lam_right) in zip(ts, slices):
        for branch, lam in (("left", lam_left), ("right", lam_right)):
            if lam is None:
                warnings.append(
                    f"t_tilde={t:g}: {branch} extremum not bracketed; point omitted"
                )
            else:
                branches[branch].append((lam, t))
                points.append((lam, t, branch))

    lines = {}
    for branch, pts in branches.items():
        if len(pts) < 3:
            raise InsufficientRidgeError(
                f"{branch} branch has {len(pts)} ridge points; need at least 3"
            )
        lines[branch] = numerics.linfit(np.asarray(pts))

    return CrossoverLines(
        left=lines["left"],
        right=lines["right"],
        ridge_points=tuple(points),
        warnings=tuple(warnings),
    )
