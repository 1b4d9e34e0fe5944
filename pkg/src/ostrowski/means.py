"""Arithmetic, logarithmic, and power-logarithmic means of positive reals,
and bounds on the gap |A^s - L_s^s| between the s-th power of the
arithmetic mean and the s-th power mean of order s.

That gap is exactly the deviation of f(t) = t^s at the midpoint of [a, b]
from its average, so every midpoint bound specializes to a mean inequality
by substituting |f'(t)| = s t^(s-1) at the required points. The three
variants are exposed through :func:`means_gap_bound`.

The underlying midpoint bounds assume s-convexity of the slope magnitude
(or a power of it); the gap statements inherit that hypothesis without
restating it, and this module does not re-verify it per call. The
resulting inequalities themselves are checked numerically in the test
suite over the documented parameter grid.
"""

from __future__ import annotations

import math
from typing import Optional

from .core import (
    BoundResult,
    ConvergenceError,
    DomainError,
    EndpointData,
    Interval,
    SParam,
    as_sparam,
    make_conjugate,
)
from .toolkit import make_breckner, true_deviation

__all__ = [
    "arithmetic_mean",
    "logarithmic_mean",
    "p_logarithmic_mean",
    "means_gap",
    "means_gap_bound",
    "slope_endpoint_data",
    "GAP_VARIANTS",
]


def _require_positive(name: str, value: float) -> float:
    value = float(value)
    if not (math.isfinite(value) and value > 0.0):
        raise DomainError(f"{name} must be a positive real, got {value!r}")
    return value


def arithmetic_mean(a: float, b: float) -> float:
    """(a + b)/2 for positive a, b."""
    a = _require_positive("a", a)
    b = _require_positive("b", b)
    return (a + b) / 2.0


def logarithmic_mean(a: float, b: float) -> float:
    """(b - a)/(ln b - ln a), with the a == b case returning a."""
    a = _require_positive("a", a)
    b = _require_positive("b", b)
    if a == b:
        return a
    return (b - a) / (math.log(b) - math.log(a))


def p_logarithmic_mean(a: float, b: float, r: float) -> float:
    """[(b^(r+1) - a^(r+1)) / ((r+1)(b - a))]^(1/r), a when a == b.

    The orders r = -1 and r = 0 are conventionally the logarithmic and
    identric means; they are not evaluated through this formula and are
    rejected here (the identric mean is out of scope entirely).
    """
    a = _require_positive("a", a)
    b = _require_positive("b", b)
    r = float(r)
    if r == -1.0 or r == 0.0:
        raise DomainError(
            f"order r={r:g} is not defined by the power formula; "
            "use logarithmic_mean for r=-1"
        )
    if a == b:
        return a
    return ((b ** (r + 1.0) - a ** (r + 1.0)) / ((r + 1.0) * (b - a))) ** (1.0 / r)


def _gap_sparam(s: "float | SParam") -> float:
    s_val = as_sparam(s).s
    # the gap statements hold on the open range; at s = 1 the gap is
    # identically zero and the formulas below lose meaning (a^(s-1) etc.)
    if s_val == 1.0:
        raise DomainError("gap bounds are stated for s in (0, 1) strictly")
    return s_val


def means_gap(
    a: float, b: float, s: "float | SParam", oracle_tol: Optional[float] = 1e-10
) -> float:
    """|A(a,b)^s - (b^(s+1) - a^(s+1)) / ((s+1)(b-a))| for 0 < a < b.

    The second term is the s-th power of the s-logarithmic mean, i.e. the
    average of t^s over [a, b], so the gap equals the midpoint deviation of
    t^s. When oracle_tol is given the closed form is cross-checked against
    the reference integrator and a disagreement raises ConvergenceError.
    """
    a = _require_positive("a", a)
    b = _require_positive("b", b)
    if not a < b:
        raise DomainError("gap requires 0 < a < b")
    s_val = _gap_sparam(s)
    mean_power = ((a + b) / 2.0) ** s_val
    avg_ts = (b ** (s_val + 1.0) - a ** (s_val + 1.0)) / ((s_val + 1.0) * (b - a))
    gap = abs(mean_power - avg_ts)
    if oracle_tol is not None:
        oracle = true_deviation(
            make_breckner(0.0, 1.0, 0.0, s_val),
            Interval(a, b),
            (a + b) / 2.0,
            tol=oracle_tol,
        )
        if abs(gap - oracle) > 10.0 * oracle_tol:
            raise ConvergenceError(
                f"closed-form gap {gap!r} disagrees with oracle {oracle!r} "
                f"beyond 10*tol={10.0 * oracle_tol:g}"
            )
    return gap


GAP_VARIANTS = ("p1", "p2", "p3")


def means_gap_bound(
    a: float,
    b: float,
    s: "float | SParam",
    variant: str,
    p: Optional[float] = None,
    q: Optional[float] = None,
) -> BoundResult:
    """Bound |A^s - L_s^s| by one of the three midpoint specializations.

    p1: (b-a) s/((s+1)(s+2)) (1 - 2^-(s+1)) [a^(s-1) + b^(s-1)]
    p2: s (b-a)/4 (p+1)^(-1/p) [((A^e + b^e)/(s+1))^(1/q)
                               + ((a^e + A^e)/(s+1))^(1/q)],  e = q(s-1)
    p3: s (b-a)/8 (2/3)^(1/q) { A(a^e, 3 b^e)^(1/q) + A(3 a^e, b^e)^(1/q) }

    p2 needs p > 1 (q is its conjugate); p3 needs q >= 1.
    """
    a = _require_positive("a", a)
    b = _require_positive("b", b)
    if not a < b:
        raise DomainError("gap bounds require 0 < a < b")
    s_val = _gap_sparam(s)
    width = b - a
    inputs = {"a": a, "b": b, "s": s_val}

    if variant == "p1":
        value = (
            width
            * s_val
            / ((s_val + 1.0) * (s_val + 2.0))
            * (1.0 - 2.0 ** -(s_val + 1.0))
            * (a ** (s_val - 1.0) + b ** (s_val - 1.0))
        )
    elif variant == "p2":
        if p is None:
            raise DomainError("variant p2 requires the exponent p")
        cp = make_conjugate(p)
        inputs.update(p=cp.p, q=cp.q)
        e = cp.q * (s_val - 1.0)
        mean_pow = arithmetic_mean(a, b) ** e
        value = (
            s_val
            * width
            / 4.0
            / (cp.p + 1.0) ** (1.0 / cp.p)
            * (
                ((mean_pow + b**e) / (s_val + 1.0)) ** (1.0 / cp.q)
                + ((a**e + mean_pow) / (s_val + 1.0)) ** (1.0 / cp.q)
            )
        )
    elif variant == "p3":
        if q is None:
            raise DomainError("variant p3 requires the exponent q")
        q = float(q)
        if q < 1.0:
            raise DomainError(f"variant p3 requires q >= 1, got {q!r}")
        inputs.update(q=q)
        e = q * (s_val - 1.0)
        value = (
            s_val
            * width
            / 8.0
            * (2.0 / 3.0) ** (1.0 / q)
            * (
                arithmetic_mean(a**e, 3.0 * b**e) ** (1.0 / q)
                + arithmetic_mean(3.0 * a**e, b**e) ** (1.0 / q)
            )
        )
    else:
        raise DomainError(
            f"unknown gap bound variant {variant!r}; expected one of {GAP_VARIANTS}"
        )

    return BoundResult(value=value, theorem_id=variant, inputs=inputs)


def slope_endpoint_data(a: float, b: float, s: "float | SParam") -> EndpointData:
    """Exact |d/dt t^s| = s t^(s-1) at the endpoints, as EndpointData.

    Convenience for cross-checking the gap bounds against the general
    midpoint bounds; the midpoint sample s A^(s-1) goes in dx.
    """
    s_val = _gap_sparam(s)
    a = _require_positive("a", a)
    b = _require_positive("b", b)
    mid = (a + b) / 2.0
    return EndpointData(
        da=s_val * a ** (s_val - 1.0),
        db=s_val * b ** (s_val - 1.0),
        dx=s_val * mid ** (s_val - 1.0),
    )
