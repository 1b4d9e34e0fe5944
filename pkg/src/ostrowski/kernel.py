"""Montgomery kernel machinery and the classical baseline inequalities.

The kernel p(t) is the piecewise-linear weight (t below the breakpoint,
t - 1 above it) whose integral against f'(ta + (1-t)b) reproduces the
deviation f(x) - average(f). On top of it sit the classical position-
dependent bound for bounded derivatives, the Hermite-Hadamard bracket for
s-convex functions, and the midpoint baselines that the sharper bounds in
:mod:`ostrowski.bounds` reduce to.

Every integral here goes through an injected reference integrator; this
module never hard-codes an integration scheme.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .core import (
    BoundResult,
    ConjugatePair,
    DomainError,
    Function1D,
    Interval,
    SParam,
    VerificationRecord,
    as_sparam,
    validate_eval_point,
)
from .toolkit import reference_integrate

__all__ = [
    "KernelBreakpoint",
    "montgomery_kernel",
    "verify_montgomery_identity",
    "classic_ostrowski_bound",
    "HadamardBounds",
    "hadamard_sconvex_bounds",
    "alomari_bound",
    "baseline_midpoint_bound",
    "MIDPOINT_VARIANTS",
]

Integrator = Callable[[Function1D, Interval, float], float]


@dataclass(frozen=True)
class KernelBreakpoint:
    """The kernel's sign-change location lambda = (b - x)/(b - a) in [0, 1]."""

    lam: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.lam <= 1.0:
            raise DomainError(f"kernel breakpoint must lie in [0, 1], got {self.lam!r}")

    @classmethod
    def from_point(cls, iv: Interval, x: float) -> "KernelBreakpoint":
        x = validate_eval_point(iv, x)
        # single canonical expression so branch selection is bit-stable
        return cls((iv.b - x) / (iv.b - iv.a))


def montgomery_kernel(t: float, iv: Interval, x: float) -> float:
    """Piecewise kernel: t on [0, lambda], t - 1 on (lambda, 1]."""
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"kernel argument t must lie in [0, 1], got {t!r}")
    lam = KernelBreakpoint.from_point(iv, x).lam
    return t if t <= lam else t - 1.0


def verify_montgomery_identity(
    fn: Function1D,
    iv: Interval,
    x: float,
    tol: float = 1e-9,
    integrator: Optional[Integrator] = None,
) -> VerificationRecord:
    """Check f(x) - average(f) == (a-b) * integral of p(t) f'(ta + (1-t)b).

    Both sides are computed with the reference integrator, the right side
    split at the kernel breakpoint so each piece is smooth. The record's
    lhs is |LHS - RHS| compared against 0 with slack tol; the raw side
    values are kept in the context string.
    """
    if fn.df is None:
        raise DomainError("identity check requires a derivative evaluator")
    x = validate_eval_point(iv, x)
    integrate = integrator if integrator is not None else reference_integrate
    a, b = iv.a, iv.b
    lam = KernelBreakpoint.from_point(iv, x).lam

    piece_tol = tol / (10.0 * iv.width)
    lhs_val = fn.f(x) - integrate(fn, iv, tol * iv.width / 10.0) / iv.width

    def dline(t: float) -> float:
        return fn.deriv(t * a + (1.0 - t) * b)

    rhs_val = 0.0
    if lam > 0.0:
        low = Function1D(lambda t: t * dline(t), label="kernel-low")
        rhs_val += integrate(low, Interval(0.0, lam), piece_tol)
    if lam < 1.0:
        high = Function1D(lambda t: (t - 1.0) * dline(t), label="kernel-high")
        rhs_val += integrate(high, Interval(lam, 1.0), piece_tol)
    rhs_val *= a - b

    return VerificationRecord.check(
        lhs=abs(lhs_val - rhs_val),
        rhs=0.0,
        tol=tol,
        context=(
            f"montgomery identity fn={fn.label or '<anonymous>'} "
            f"iv=[{a:g},{b:g}] x={x:.17g} lhs={lhs_val:.17g} rhs={rhs_val:.17g}"
        ),
    )


def classic_ostrowski_bound(iv: Interval, x: float, m: float) -> BoundResult:
    """M(b-a) [1/4 + (x - midpoint)^2 / (b-a)^2] for sup|f'| <= M.

    Valid on any real interval; no nonnegativity restriction applies.
    """
    x = validate_eval_point(iv, x)
    m = float(m)
    if not math.isfinite(m) or m < 0.0:
        raise DomainError(f"derivative sup bound M must be >= 0, got {m!r}")
    width = iv.width
    value = m * width * (0.25 + ((x - iv.midpoint) / width) ** 2)
    return BoundResult(
        value=value,
        theorem_id="eq11",
        inputs={"a": iv.a, "b": iv.b, "x": x, "M": m},
    )


@dataclass(frozen=True)
class HadamardBounds:
    """The two-sided average bracket for an s-convex function.

    lower = 2^(s-1) f(midpoint), upper = (f(a) + f(b))/(s+1), and mean is
    the oracle value of the average. Each side carries its own record.
    """

    lower: float
    mean: float
    upper: float
    lower_record: VerificationRecord
    upper_record: VerificationRecord

    @property
    def holds(self) -> bool:
        return self.lower_record.holds and self.upper_record.holds


def hadamard_sconvex_bounds(
    fn: Function1D,
    iv: Interval,
    s: "float | SParam",
    tol: float = 1e-9,
    integrator: Optional[Integrator] = None,
) -> HadamardBounds:
    """Check 2^(s-1) f(mid) <= average(f) <= (f(a) + f(b))/(s+1)."""
    iv.require_nonnegative()
    s_val = as_sparam(s).s
    integrate = integrator if integrator is not None else reference_integrate
    mean = integrate(fn, iv, tol * iv.width / 10.0) / iv.width
    lower = 2.0 ** (s_val - 1.0) * fn.f(iv.midpoint)
    upper = (fn.f(iv.a) + fn.f(iv.b)) / (s_val + 1.0)
    base = f"fn={fn.label or '<anonymous>'} iv=[{iv.a:g},{iv.b:g}] s={s_val:g}"
    return HadamardBounds(
        lower=lower,
        mean=mean,
        upper=upper,
        lower_record=VerificationRecord.check(
            lower, mean, tol, context=f"hadamard lower {base}"
        ),
        upper_record=VerificationRecord.check(
            mean, upper, tol, context=f"hadamard upper {base}"
        ),
    )


def alomari_bound(
    iv: Interval,
    x: float,
    s: "float | SParam",
    cp: ConjugatePair,
    m: float,
) -> BoundResult:
    """M/(1+p)^(1/p) * (2/(s+1))^(1/q) * ((x-a)^2 + (b-x)^2)/(b-a).

    Uniform-derivative bound for |f'|^q s-convex with |f'| <= M; the
    position factor depends only on (x-a)^2 + (b-x)^2, hence is symmetric
    about the midpoint.
    """
    iv.require_nonnegative()
    x = validate_eval_point(iv, x)
    s_val = as_sparam(s).s
    m = float(m)
    if not math.isfinite(m) or m < 0.0:
        raise DomainError(f"derivative sup bound M must be >= 0, got {m!r}")
    bracket = ((x - iv.a) ** 2 + (iv.b - x) ** 2) / iv.width
    value = (
        m
        / (1.0 + cp.p) ** (1.0 / cp.p)
        * (2.0 / (s_val + 1.0)) ** (1.0 / cp.q)
        * bracket
    )
    return BoundResult(
        value=value,
        theorem_id="ee",
        inputs={"a": iv.a, "b": iv.b, "x": x, "s": s_val, "p": cp.p, "q": cp.q, "M": m},
    )


MIDPOINT_VARIANTS = ("eq14", "eq15", "eq16")


def baseline_midpoint_bound(
    variant: str,
    iv: Interval,
    cp: Optional[ConjugatePair],
    da: float,
    db: float,
) -> BoundResult:
    """The three classical midpoint-deviation baselines.

    eq14: (b-a)/4 * (da + db)/2                       (|f'| convex)
    eq15: (b-a)/16 * (4/(p+1))^(1/p)
          * [(da^q + 3 db^q)^(1/q) + (3 da^q + db^q)^(1/q)]
    eq16: (b-a)/4 * (4/(p+1))^(1/p) * (da + db)

    eq14 ignores cp; eq15/eq16 require it. The q exponent always comes from
    the stored conjugate pair, never recomputed from p.
    """
    if variant not in MIDPOINT_VARIANTS:
        raise DomainError(
            f"unknown midpoint baseline {variant!r}; expected one of {MIDPOINT_VARIANTS}"
        )
    da = float(da)
    db = float(db)
    if da < 0.0 or db < 0.0:
        raise DomainError("derivative magnitudes must be nonnegative")
    width = iv.width
    inputs = {"a": iv.a, "b": iv.b, "da": da, "db": db}

    if variant == "eq14":
        value = width / 4.0 * (da + db) / 2.0
    else:
        if cp is None:
            raise DomainError(f"variant {variant} requires conjugate exponents")
        inputs.update(p=cp.p, q=cp.q)
        holder = (4.0 / (cp.p + 1.0)) ** (1.0 / cp.p)
        if variant == "eq15":
            q = cp.q
            inner = (da**q + 3.0 * db**q) ** (1.0 / q) + (
                3.0 * da**q + db**q
            ) ** (1.0 / q)
            value = width / 16.0 * holder * inner
        else:  # eq16
            value = width / 4.0 * holder * (da + db)

    return BoundResult(value=value, theorem_id=variant, inputs=inputs)
