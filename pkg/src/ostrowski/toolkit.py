"""Test-function factory, s-convexity falsification, and the reference
integrator used as the brute-force oracle by the verification routines.

The integrator is a globally adaptive scheme with a fixed high-order rule
per panel (15-point Kronrod extension of 7-point Gauss) and the nested-rule
difference as the per-panel error estimate. Refinement always bisects the
worst panel at its exact midpoint, so results are deterministic for fixed
inputs and reproducible across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Optional, Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly

from .core import (
    ConvergenceError,
    DomainError,
    Function1D,
    Interval,
    SParam,
    as_sparam,
    validate_eval_point,
)

__all__ = [
    "BrecknerFunction",
    "SConvexityReport",
    "make_breckner",
    "check_sconvex",
    "reference_integrate",
    "true_deviation",
    "parse_function_spec",
]


# ----------------------------------------------------------------------
# Canonical s-convex test family
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class BrecknerFunction:
    """Piecewise power function: f(0) = u, f(t) = v*t^s + w for t > 0.

    When v >= 0 and 0 <= w <= u the function is s-convex in the second
    sense; that sufficient condition is exposed as ``is_known_member``.
    Membership outside that parameter region is neither claimed nor denied
    (use check_sconvex to falsify).
    """

    u: float
    v: float
    w: float
    s: float

    def __post_init__(self) -> None:
        as_sparam(self.s)

    @property
    def is_known_member(self) -> bool:
        return self.v >= 0.0 and 0.0 <= self.w <= self.u

    def value(self, t: float) -> float:
        if t < 0.0:
            raise DomainError(f"Breckner function is defined on [0, inf), got t={t!r}")
        if t == 0.0:
            return self.u
        return self.v * t**self.s + self.w

    def slope(self, t: float) -> float:
        if t < 0.0:
            raise DomainError(f"Breckner function is defined on [0, inf), got t={t!r}")
        if t == 0.0:
            # v*s*t^(s-1) diverges at 0 for s < 1; only the linear case extends.
            if self.s == 1.0:
                return self.v
            raise DomainError("Breckner derivative undefined at t=0 for s < 1")
        return self.v * self.s * t ** (self.s - 1.0)

    @property
    def label(self) -> str:
        return f"breckner:{self.u:g},{self.v:g},{self.w:g},{self.s:g}"


def make_breckner(u: float, v: float, w: float, s: "float | SParam") -> Function1D:
    """Build a Function1D for the piecewise power family above."""
    fn = BrecknerFunction(float(u), float(v), float(w), as_sparam(s).s)
    return Function1D(f=fn.value, df=fn.slope, label=fn.label)


# ----------------------------------------------------------------------
# s-convexity grid falsification
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SConvexityReport:
    """Outcome of a grid search for violations of the s-convexity inequality.

    A grid check can only falsify a universally quantified statement, never
    certify it; ``context`` says so explicitly. ``worst_violation`` is the
    largest observed value of f(a*x + (1-a)*y) - a^s f(x) - (1-a)^s f(y);
    the report is consistent iff that maximum is <= 0.
    """

    is_consistent: bool
    worst_violation: float
    witness: Tuple[float, float, float]  # (x, y, alpha)
    context: str


def check_sconvex(
    fn: Function1D,
    s: "float | SParam",
    domain: Interval,
    grid_n: int = 21,
) -> SConvexityReport:
    """Evaluate the defining s-convexity inequality on a grid.

    All (x, y, alpha) triples from a grid_n-point grid over
    domain x domain x [0, 1] are tested; the alpha grid contains 0 and 1
    exactly so the boundary equalities are exercised. Points where the
    inequality is an exact equality round each side independently, so a
    positive difference within a few ulps of the operand scale is treated
    as equality, not as a violation.
    """
    s_val = as_sparam(s).s
    if grid_n < 2:
        raise DomainError(f"grid_n must be >= 2, got {grid_n!r}")
    pts = np.linspace(domain.a, domain.b, grid_n)
    alphas = np.linspace(0.0, 1.0, grid_n)
    wx = alphas**s_val
    wy = (1.0 - alphas) ** s_val
    eps = np.finfo(float).eps
    try:
        fvals = np.array([fn.f(float(t)) for t in pts], dtype=float)
    except Exception as exc:
        raise DomainError(f"evaluator failed on the domain grid: {exc}") from exc

    worst = -math.inf
    witness = (float(pts[0]), float(pts[0]), 0.0)
    for i, x in enumerate(pts):
        for j, y in enumerate(pts):
            z = alphas * x + (1.0 - alphas) * y
            try:
                fz = np.array([fn.f(float(t)) for t in z], dtype=float)
            except Exception as exc:
                raise DomainError(
                    f"evaluator failed at a combination point: {exc}"
                ) from exc
            rhs = wx * fvals[i] + wy * fvals[j]
            raw = fz - rhs
            noise = 8.0 * eps * np.maximum(
                1.0, np.maximum(np.abs(fz), np.abs(wx * fvals[i]) + np.abs(wy * fvals[j]))
            )
            viol = np.where((raw > 0.0) & (raw <= noise), 0.0, raw)
            k = int(np.argmax(viol))
            if viol[k] > worst:
                worst = float(viol[k])
                witness = (float(x), float(y), float(alphas[k]))

    return SConvexityReport(
        is_consistent=worst <= 0.0,
        worst_violation=worst,
        witness=witness,
        context=(
            f"grid falsifier (not a certifier): {grid_n} points per axis on "
            f"[{domain.a:g}, {domain.b:g}]^2 x [0,1], s={s_val:g}; "
            "sub-rounding positives count as equality"
        ),
    )


# ----------------------------------------------------------------------
# Reference integrator (the oracle)
# ----------------------------------------------------------------------

# 15-point Kronrod rule with embedded 7-point Gauss (standard published
# abscissae/weights for [-1, 1]). The even-index nodes carry zero Gauss
# weight; the difference |K15 - G7| serves as the panel error estimate.
_NODES = np.array(
    [
        -0.991455371120813,
        -0.949107912342759,
        -0.864864423359769,
        -0.741531185599394,
        -0.586087235467691,
        -0.405845151377397,
        -0.207784955007898,
        0.0,
        0.207784955007898,
        0.405845151377397,
        0.586087235467691,
        0.741531185599394,
        0.864864423359769,
        0.949107912342759,
        0.991455371120813,
    ]
)
_W_KRONROD = np.array(
    [
        0.022935322010529,
        0.063092092629979,
        0.104790010322250,
        0.140653259715525,
        0.169004726639267,
        0.190350578064785,
        0.204432940075298,
        0.209482141084728,
        0.204432940075298,
        0.190350578064785,
        0.169004726639267,
        0.140653259715525,
        0.104790010322250,
        0.063092092629979,
        0.022935322010529,
    ]
)
_W_GAUSS = np.array(
    [
        0.0,
        0.129484966168870,
        0.0,
        0.279705391489277,
        0.0,
        0.381830050505119,
        0.0,
        0.417959183673469,
        0.0,
        0.381830050505119,
        0.0,
        0.279705391489277,
        0.0,
        0.129484966168870,
        0.0,
    ]
)


def _panel(fn: Function1D, lo: float, hi: float) -> Tuple[float, float]:
    """One Kronrod/Gauss evaluation on [lo, hi]: (integral, error estimate)."""
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    xs = mid + half * _NODES
    fs = np.array([fn.f(float(t)) for t in xs], dtype=float)
    if not np.all(np.isfinite(fs)):
        raise ConvergenceError(
            f"integrand {fn.label or '<anonymous>'} returned a non-finite value "
            f"on [{lo:g}, {hi:g}]"
        )
    k15 = half * float(_W_KRONROD @ fs)
    g7 = half * float(_W_GAUSS @ fs)
    return k15, abs(k15 - g7)


#: Default panel budget for the reference integrator.
DEFAULT_ORACLE_PANELS = 10_000


def reference_integrate(
    fn: Function1D,
    iv: Interval,
    tol: float,
    max_panels: Optional[int] = None,
) -> float:
    """Integrate fn over iv to absolute accuracy tol.

    Globally adaptive: the panel with the largest error estimate is bisected
    at its exact midpoint until the summed estimates drop below tol. Raises
    ConvergenceError once max_panels panels exist without convergence, which
    signals a pathological integrand rather than a tolerance slightly out of
    reach.
    """
    if not tol > 0.0:
        raise DomainError(f"tolerance must be positive, got {tol!r}")
    if max_panels is None:
        max_panels = DEFAULT_ORACLE_PANELS
    value, err = _panel(fn, iv.a, iv.b)
    # heap orders by largest estimate; ties fall back to the left endpoint
    heap = [(-err, iv.a, iv.b, value)]
    total_err = err
    min_width = (iv.b - iv.a) * 1e-15

    while total_err > tol:
        if len(heap) >= max_panels:
            raise ConvergenceError(
                f"integral of {fn.label or '<anonymous>'} did not reach "
                f"tol={tol:g} within {max_panels} panels (estimate {total_err:g})"
            )
        neg_err, lo, hi, _ = heappop(heap)
        if hi - lo < min_width:
            raise ConvergenceError(
                f"panel [{lo!r}, {hi!r}] cannot be subdivided further; "
                f"integrand is too irregular for tol={tol:g}"
            )
        mid = 0.5 * (lo + hi)
        v1, e1 = _panel(fn, lo, mid)
        v2, e2 = _panel(fn, mid, hi)
        total_err += e1 + e2 - (-neg_err)
        heappush(heap, (-e1, lo, mid, v1))
        heappush(heap, (-e2, mid, hi, v2))

    # deterministic compensated total: panels summed in left-to-right order
    panels = sorted((lo, v) for _, lo, _, v in heap)
    return math.fsum(v for _, v in panels)


def true_deviation(
    fn: Function1D, iv: Interval, x: float, tol: float = 1e-10
) -> float:
    """|f(x) - average of f over [a, b]|, the left-hand side of every bound.

    The average is computed by the reference integrator with the integral
    tolerance scaled by the width so the returned deviation is accurate to
    roughly tol.
    """
    x = validate_eval_point(iv, x)
    integral = reference_integrate(fn, iv, tol * iv.width)
    return abs(fn.f(x) - integral / iv.width)


# ----------------------------------------------------------------------
# Function registry for the CLI
# ----------------------------------------------------------------------

def _parse_floats(text: str, spec: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok != ""]
    except ValueError as exc:
        raise DomainError(f"could not parse numbers in function spec {spec!r}") from exc


def _make_poly(coeffs: list[float]) -> Function1D:
    cs = np.asarray(coeffs, dtype=float)
    ds = npoly.polyder(cs) if len(cs) > 1 else np.zeros(1)
    label = "poly:" + ",".join(f"{c:g}" for c in coeffs)
    return Function1D(
        f=lambda t: float(npoly.polyval(t, cs)),
        df=lambda t: float(npoly.polyval(t, ds)),
        label=label,
    )


def _make_powabs(k: float) -> Function1D:
    if not k > 0.0:
        raise DomainError(f"powabs exponent must be positive, got {k!r}")

    def f(t: float) -> float:
        return abs(t) ** k

    def df(t: float) -> float:
        if t == 0.0:
            if k > 1.0:
                return 0.0
            raise DomainError(f"|t|^{k:g} has no derivative at t=0")
        return k * abs(t) ** (k - 1.0) * math.copysign(1.0, t)

    return Function1D(f=f, df=df, label=f"powabs:{k:g}")


def parse_function_spec(spec: str) -> Function1D:
    """Parse a registry string into a Function1D.

    Supported forms (whitespace is ignored):
      breckner:u,v,w,s   piecewise power family above
      poly:c0,c1,...     polynomial c0 + c1*t + c2*t^2 + ...
      powabs:k           f(t) = |t|^k
    """
    text = "".join(str(spec).split())
    kind, sep, rest = text.partition(":")
    kind = kind.lower()
    if not sep:
        raise DomainError(f"function spec {spec!r} is missing ':' (kind:params)")
    if kind == "breckner":
        vals = _parse_floats(rest, spec)
        if len(vals) != 4:
            raise DomainError(f"breckner spec needs u,v,w,s; got {spec!r}")
        return make_breckner(*vals)
    if kind == "poly":
        vals = _parse_floats(rest, spec)
        if not vals:
            raise DomainError(f"poly spec needs at least one coefficient: {spec!r}")
        return _make_poly(vals)
    if kind == "powabs":
        vals = _parse_floats(rest, spec)
        if len(vals) != 1:
            raise DomainError(f"powabs spec needs exactly one exponent: {spec!r}")
        return _make_powabs(vals[0])
    raise DomainError(
        f"unknown function kind {kind!r}; expected breckner, poly, or powabs"
    )
