"""Floating-point complex-time trajectory tracing.

Integration runs along straight rays t = s * direction with an embedded
Dormand-Prince 5(4) pair and proportional step control.  Exact coefficients
are converted to complex doubles once per field; no exact arithmetic happens
inside the stepper.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    InvalidInput,
    NearPole,
    PathThroughSingularity,
    StepUnderflow,
    UndefinedOnTrace,
)
from .foliation import TimesFormData, VectorField2
from .ratfunc import RatFunc

DEFAULT_ESCAPE_RADIUS = 1e8
DEFAULT_POLE_GUARD = 1e-12

# Dormand-Prince 5(4): 7 stages, FSAL, 5th order propagation with embedded
# 4th order error estimate.
_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_DP_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_DP_B4 = np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)


@dataclass(frozen=True)
class ComplexPoint:
    x: complex
    y: complex

    def norm(self) -> float:
        return math.hypot(abs(self.x), abs(self.y))

    def is_finite(self) -> bool:
        return all(
            math.isfinite(v)
            for v in (self.x.real, self.x.imag, self.y.real, self.y.imag)
        )


@dataclass(frozen=True)
class TraceSample:
    t: complex
    point: ComplexPoint
    conserved: Optional[complex] = None


@dataclass
class TraceStats:
    steps: int = 0
    rejected_steps: int = 0
    max_drift: Optional[float] = None


@dataclass
class TraceResult:
    samples: List[TraceSample]
    status: str  # "completed" | "escaped" | "singular" | "step-underflow"
    stats: TraceStats = field(default_factory=TraceStats)

    @property
    def endpoint(self) -> ComplexPoint:
        return self.samples[-1].point


class _CompiledRat:
    """One-time conversion of a RatFunc to complex-double term lists."""

    __slots__ = ("num_terms", "den_terms", "den_is_one")

    def __init__(self, r: RatFunc):
        self.num_terms = [(i, j, complex(c)) for (i, j), c in r.num.terms.items()]
        self.den_terms = [(i, j, complex(c)) for (i, j), c in r.den.terms.items()]
        self.den_is_one = r.den.is_constant() and r.den.constant_value().is_one()

    @staticmethod
    def _horner_free(terms, x: complex, y: complex) -> complex:
        return sum(c * x**i * y**j for i, j, c in terms)

    def __call__(self, x: complex, y: complex, guard: float = DEFAULT_POLE_GUARD) -> complex:
        n = self._horner_free(self.num_terms, x, y)
        if self.den_is_one:
            return n
        d = self._horner_free(self.den_terms, x, y)
        if abs(d) < guard * (1.0 + abs(n)):
            raise NearPole(f"denominator magnitude {abs(d):.3e} below guard")
        return n / d


class FieldEvaluator:
    """Cached floating-point evaluation of a rational vector field."""

    def __init__(self, X: VectorField2, pole_guard: float = DEFAULT_POLE_GUARD):
        self.fx = _CompiledRat(X.comp_x)
        self.fy = _CompiledRat(X.comp_y)
        self.pole_guard = pole_guard

    def __call__(self, x: complex, y: complex) -> Tuple[complex, complex]:
        return (
            self.fx(x, y, self.pole_guard),
            self.fy(x, y, self.pole_guard),
        )


def eval_field(X: VectorField2, z: ComplexPoint) -> Tuple[complex, complex]:
    """One-off evaluation of X at a point (NearPole when too close to a pole)."""
    return FieldEvaluator(X)(z.x, z.y)


def integrate_ray(
    X: VectorField2,
    z0: ComplexPoint,
    direction: complex,
    T: float,
    tol: float,
    *,
    escape_radius: float = DEFAULT_ESCAPE_RADIUS,
    pole_guard: float = DEFAULT_POLE_GUARD,
    first_integral=None,
    max_step: Optional[float] = None,
    fixed_step: Optional[float] = None,
) -> TraceResult:
    """Integrate dz/dt = X(z) for t = s * direction, s in [0, T].

    Samples are recorded at accepted steps.  The trace stops early with
    status "escaped" beyond the escape radius, "singular" next to a pole or
    zero of X, and "step-underflow" when the step drops below 1e-15 * T.

    ``fixed_step`` disables the error control and marches with a constant
    step; used for raw order-of-convergence measurements.
    """
    if not (1e-14 <= tol <= 1e-3):
        raise InvalidInput(f"tol = {tol} outside [1e-14, 1e-3]")
    if T < 0:
        raise InvalidInput("T must be nonnegative")
    if abs(abs(direction) - 1.0) > 1e-12:
        raise InvalidInput("direction must be a unit complex number")

    ev = FieldEvaluator(X, pole_guard)
    gval: Callable[[complex, complex], Optional[complex]]
    if first_integral is not None:
        def gval(x, y):
            try:
                return first_integral.eval_complex(x, y)
            except Exception:
                return None
    else:
        def gval(x, y):
            return None

    w = np.array([z0.x, z0.y], dtype=complex)
    samples = [TraceSample(0.0, ComplexPoint(*w), gval(*w))]
    stats = TraceStats()
    if T == 0:
        return TraceResult(samples, "completed", stats)

    def f(wv: np.ndarray) -> np.ndarray:
        fx, fy = ev(wv[0], wv[1])
        return direction * np.array([fx, fy], dtype=complex)

    s = 0.0
    try:
        k_first = f(w)
    except NearPole:
        return TraceResult(samples, "singular", stats)
    h = min(T, max(1e-6 * T, tol ** (1 / 5)))
    if fixed_step is not None:
        h = fixed_step
    if max_step is not None:
        h = min(h, max_step)
    h_floor = 1e-15 * T

    while s < T:
        h = min(h, T - s)
        if h < h_floor:
            return TraceResult(samples, "step-underflow", stats)
        ks = [k_first]
        try:
            for i in range(1, 7):
                wi = w + h * sum(a * k for a, k in zip(_DP_A[i], ks))
                ks.append(f(wi))
        except NearPole:
            stats.rejected_steps += 1
            h *= 0.5
            if h < h_floor:
                return TraceResult(samples, "singular", stats)
            continue
        karr = np.array(ks)
        w5 = w + h * (_DP_B5 @ karr)
        w4 = w + h * (_DP_B4 @ karr)
        scale = tol * (1.0 + np.abs(w5))
        err = float(np.max(np.abs(w5 - w4) / scale))
        if fixed_step is not None:
            err = 0.0
        if err <= 1.0:
            s += h
            w = w5
            k_first = ks[-1]  # FSAL
            stats.steps += 1
            pt = ComplexPoint(*w)
            samples.append(TraceSample(s * direction, pt, gval(*w)))
            if not pt.is_finite():
                return TraceResult(samples, "singular", stats)
            if pt.norm() > escape_radius:
                return TraceResult(samples, "escaped", stats)
        else:
            stats.rejected_steps += 1
        if fixed_step is not None:
            h = fixed_step
        else:
            factor = 0.9 * (1.0 / max(err, 1e-10)) ** 0.2
            h *= min(5.0, max(0.2, factor))
            if max_step is not None:
                h = min(h, max_step)
    return TraceResult(samples, "completed", stats)


def conservation_check(tr: TraceResult, G, *, floor: float = 1e-12) -> float:
    """Max relative drift of G along the trace; fills sample values as needed."""
    if len(tr.samples) < 2:
        raise InvalidInput("trace has fewer than 2 samples")
    values = []
    for smp in tr.samples:
        v = smp.conserved
        if v is None:
            try:
                v = G.eval_complex(smp.point.x, smp.point.y)
            except Exception as exc:
                raise UndefinedOnTrace(str(exc)) from exc
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise UndefinedOnTrace(f"G not finite at t = {smp.t}")
        values.append(v)
    base = values[0]
    denom = max(abs(base), floor)
    drift = max(abs(v - base) for v in values) / denom
    tr.stats.max_drift = drift
    return drift


def _line_integral(points: Sequence[ComplexPoint], ax: _CompiledRat, ay: _CompiledRat) -> complex:
    total = 0.0 + 0.0j
    prev = points[0]
    fprev = (ax(prev.x, prev.y), ay(prev.x, prev.y))
    for cur in points[1:]:
        fcur = (ax(cur.x, cur.y), ay(cur.x, cur.y))
        total += 0.5 * (fprev[0] + fcur[0]) * (cur.x - prev.x)
        total += 0.5 * (fprev[1] + fcur[1]) * (cur.y - prev.y)
        prev, fprev = cur, fcur
    return total


def elapsed_time_via_tau(tf: TimesFormData, tr: TraceResult) -> complex:
    """Integrate the one-form of times along the traced path.

    Trapezoid sums on the full and the half-resolution sample grids are
    combined by one Richardson step; the result approximates the complex
    flow time between the trace endpoints.
    """
    if len(tr.samples) < 2:
        return 0.0
    eta_x = _CompiledRat(RatFunc.from_bipoly(tf.eta_of_X))
    for smp in tr.samples:
        scale = 1.0 + smp.point.norm()
        if abs(eta_x(smp.point.x, smp.point.y)) < 1e-12 * scale:
            raise PathThroughSingularity(
                f"trace touches the zero set of eta(X) at t = {smp.t}"
            )
    ax = _CompiledRat(tf.tau.coef_dx)
    ay = _CompiledRat(tf.tau.coef_dy)
    pts = [smp.point for smp in tr.samples]
    fine = _line_integral(pts, ax, ay)
    coarse_pts = pts[::2]
    if coarse_pts[-1] is not pts[-1]:
        coarse_pts = coarse_pts + [pts[-1]]
    coarse = _line_integral(coarse_pts, ax, ay)
    return fine + (fine - coarse) / 3.0


@dataclass(frozen=True)
class EscapeProfile:
    """Heuristic diagnostics only; no properness claim is ever made."""

    min_dist_x_axis: float
    min_dist_fiber: Optional[float]
    growth_exponent: Optional[float]


def escape_profile(tr: TraceResult, params=None) -> EscapeProfile:
    """Distance of the trace to the invariant curves x = 0 and (given params)
    x^l y + p(x) = 0, plus the log-log growth exponent of |z| over time."""
    pts = [smp.point for smp in tr.samples]
    min_x = min(abs(p.x) for p in pts)
    min_fiber = None
    if params is not None:
        from .normal_forms import fiber_factor

        fib = _CompiledRat(RatFunc.from_bipoly(fiber_factor(params)))
        min_fiber = min(abs(fib(p.x, p.y)) for p in pts)
    growth = None
    ts = [abs(smp.t) for smp in tr.samples]
    if len(pts) >= 4 and ts[-1] > 0:
        xs, ys = [], []
        for t_abs, p in zip(ts, pts):
            r = p.norm()
            if t_abs > 0 and r > 0:
                xs.append(math.log(t_abs))
                ys.append(math.log(r))
        half = len(xs) // 2
        if len(xs) - half >= 2:
            slope = np.polyfit(xs[half:], ys[half:], 1)[0]
            growth = float(slope)
    return EscapeProfile(min_x, min_fiber, growth)


def trace_to_csv_rows(tr: TraceResult):
    """Rows for the fixed-header trace CSV (17 significant digits)."""
    header = ["t_re", "t_im", "x_re", "x_im", "y_re", "y_im", "G_re", "G_im"]
    rows = [header]
    for smp in tr.samples:
        g = smp.conserved
        gre, gim = (f"{g.real:.17g}", f"{g.imag:.17g}") if g is not None else ("nan", "nan")
        t = complex(smp.t)
        rows.append(
            [
                f"{t.real:.17g}",
                f"{t.imag:.17g}",
                f"{smp.point.x.real:.17g}",
                f"{smp.point.x.imag:.17g}",
                f"{smp.point.y.real:.17g}",
                f"{smp.point.y.imag:.17g}",
                gre,
                gim,
            ]
        )
    return rows
