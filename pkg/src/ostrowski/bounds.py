"""Position-dependent deviation bounds for functions whose derivative
magnitude (or a power of it) is s-convex.

Five families, each bounding |f(x) - average of f over [a, b]| from
derivative data alone:

  bound_sconvex_abs      |f'| s-convex; kernel moments integrated exactly
  bound_holder_split     |f'|^q s-convex; Hoelder applied per kernel branch
  bound_holder_hadamard  |f'|^q s-convex; average bracket applied on [x,b], [a,x]
  bound_holder_global    |f'|^q s-convex; Hoelder applied to the whole kernel
  bound_power_mean       |f'|^q s-convex; power-mean refinement, q >= 1

plus their midpoint specializations. Position enters through the
normalized offsets lam = (b-x)/(b-a) and mu = (x-a)/(b-a); every bound is
invariant under the reflection x -> a+b-x combined with swapping the
endpoint derivative values.

Powers of the offsets at 0 are exact: 0.0**e == 0.0 for e > 0 in IEEE
arithmetic, so no special-casing is needed (s > 0 keeps exponents positive).
"""

from __future__ import annotations

from typing import Tuple

from .core import (
    BoundResult,
    ConjugatePair,
    DomainError,
    EndpointData,
    Interval,
    SParam,
    as_sparam,
    validate_eval_point,
)

__all__ = [
    "kernel_moment_bracket",
    "bound_sconvex_abs",
    "midpoint_sconvex_abs",
    "bound_holder_split",
    "bound_holder_hadamard",
    "midpoint_e5",
    "bound_holder_global",
    "bound_power_mean",
    "midpoint_power_mean",
]


def _offsets(iv: Interval, x: float) -> Tuple[float, float]:
    """Normalized distances (lam, mu) = ((b-x)/(b-a), (x-a)/(b-a))."""
    width = iv.b - iv.a
    return (iv.b - x) / width, (x - iv.a) / width


def _prep(iv: Interval, x: float) -> Tuple[float, float]:
    iv.require_nonnegative()
    x = validate_eval_point(iv, x)
    return _offsets(iv, x)


def kernel_moment_bracket(r: float, s: float) -> float:
    """2(s+1) r^(s+2) - (s+2) r^(s+1) + 1 for r in [0, 1].

    This is (s+1)(s+2) times the integral of |kernel| against the s-convex
    weight on one branch; it is the symmetric form used in the bound
    statement (an equivalent asymmetric form appears only as a test oracle).
    """
    return 2.0 * (s + 1.0) * r ** (s + 2.0) - (s + 2.0) * r ** (s + 1.0) + 1.0


def bound_sconvex_abs(
    iv: Interval, x: float, s: "float | SParam", ep: EndpointData
) -> BoundResult:
    """(b-a)/((s+1)(s+2)) * [B(lam) |f'(a)| + B(mu) |f'(b)|].

    B is :func:`kernel_moment_bracket`. Requires |f'| itself s-convex.
    """
    lam, mu = _prep(iv, x)
    s_val = as_sparam(s).s
    value = (
        iv.width
        / ((s_val + 1.0) * (s_val + 2.0))
        * (
            kernel_moment_bracket(lam, s_val) * ep.da
            + kernel_moment_bracket(mu, s_val) * ep.db
        )
    )
    return BoundResult(
        value=value,
        theorem_id="t20",
        inputs={"a": iv.a, "b": iv.b, "x": x, "s": s_val, "da": ep.da, "db": ep.db},
    )


def midpoint_sconvex_abs(
    iv: Interval, s: "float | SParam", ep: EndpointData
) -> BoundResult:
    """(b-a)/((s+1)(s+2)) * (1 - 2^-(s+1)) * (|f'(a)| + |f'(b)|).

    Midpoint specialization of :func:`bound_sconvex_abs`, implemented from
    its own closed form.
    """
    iv.require_nonnegative()
    s_val = as_sparam(s).s
    value = (
        iv.width
        / ((s_val + 1.0) * (s_val + 2.0))
        * (1.0 - 2.0 ** -(s_val + 1.0))
        * (ep.da + ep.db)
    )
    return BoundResult(
        value=value,
        theorem_id="t20-mid",
        inputs={"a": iv.a, "b": iv.b, "s": s_val, "da": ep.da, "db": ep.db},
    )


def bound_holder_split(
    iv: Interval,
    x: float,
    s: "float | SParam",
    cp: ConjugatePair,
    ep: EndpointData,
) -> BoundResult:
    """Two-term bound from Hoelder's inequality on each kernel branch.

    (b-a) (p+1)^(-1/p) (s+1)^(-1/q) *
      { lam^(1+1/p) (lam^(s+1) da^q + [1 - mu^(s+1)] db^q)^(1/q)
      + mu^(1+1/p) ([1 - lam^(s+1)] da^q + mu^(s+1) db^q)^(1/q) }
    """
    lam, mu = _prep(iv, x)
    s_val = as_sparam(s).s
    p, q = cp.p, cp.q
    daq, dbq = ep.da**q, ep.db**q
    term_low = lam ** (1.0 + 1.0 / p) * (
        lam ** (s_val + 1.0) * daq + (1.0 - mu ** (s_val + 1.0)) * dbq
    ) ** (1.0 / q)
    term_high = mu ** (1.0 + 1.0 / p) * (
        (1.0 - lam ** (s_val + 1.0)) * daq + mu ** (s_val + 1.0) * dbq
    ) ** (1.0 / q)
    value = (
        iv.width
        / (p + 1.0) ** (1.0 / p)
        / (s_val + 1.0) ** (1.0 / q)
        * (term_low + term_high)
    )
    return BoundResult(
        value=value,
        theorem_id="teo1",
        inputs={
            "a": iv.a, "b": iv.b, "x": x, "s": s_val,
            "p": p, "q": q, "da": ep.da, "db": ep.db,
        },
    )


def bound_holder_hadamard(
    iv: Interval,
    x: float,
    s: "float | SParam",
    cp: ConjugatePair,
    ep: EndpointData,
) -> BoundResult:
    """Hoelder bound with the average bracket applied on [x, b] and [a, x].

    1/((b-a)(p+1)^(1/p)) * { (b-x)^2 ((dx^q + db^q)/(s+1))^(1/q)
                           + (x-a)^2 ((da^q + dx^q)/(s+1))^(1/q) }

    Needs |f'(x)| in addition to the endpoint values; the bound is not
    obviously monotone in dx, so no default is substituted.
    """
    iv.require_nonnegative()
    x = validate_eval_point(iv, x)
    s_val = as_sparam(s).s
    dx = ep.require_dx()
    p, q = cp.p, cp.q
    value = (
        1.0
        / (iv.width * (p + 1.0) ** (1.0 / p))
        * (
            (iv.b - x) ** 2 * ((dx**q + ep.db**q) / (s_val + 1.0)) ** (1.0 / q)
            + (x - iv.a) ** 2 * ((ep.da**q + dx**q) / (s_val + 1.0)) ** (1.0 / q)
        )
    )
    return BoundResult(
        value=value,
        theorem_id="t21",
        inputs={
            "a": iv.a, "b": iv.b, "x": x, "s": s_val,
            "p": p, "q": q, "da": ep.da, "dx": dx, "db": ep.db,
        },
    )


def midpoint_e5(iv: Interval, cp: ConjugatePair, ep: EndpointData) -> BoundResult:
    """(b-a)/(p+1)^(1/p) * (|f'(a)| + |f'(b)|)/4.

    Midpoint form under equal derivative samples; sharper than the eq16
    baseline by exactly the factor 4^(-1/p).
    """
    iv.require_nonnegative()
    value = iv.width / (cp.p + 1.0) ** (1.0 / cp.p) * (ep.db + ep.da) / 4.0
    return BoundResult(
        value=value,
        theorem_id="e5",
        inputs={"a": iv.a, "b": iv.b, "p": cp.p, "q": cp.q, "da": ep.da, "db": ep.db},
    )


def bound_holder_global(
    iv: Interval,
    x: float,
    s: "float | SParam",
    cp: ConjugatePair,
    ep: EndpointData,
) -> BoundResult:
    """Hoelder applied to the kernel as a whole.

    (b-a)/(p+1)^(1/p) * [lam^(p+1) + mu^(p+1)]^(1/p)
                      * ((da^q + db^q)/(s+1))^(1/q)
    """
    lam, mu = _prep(iv, x)
    s_val = as_sparam(s).s
    p, q = cp.p, cp.q
    value = (
        iv.width
        / (p + 1.0) ** (1.0 / p)
        * (lam ** (p + 1.0) + mu ** (p + 1.0)) ** (1.0 / p)
        * ((ep.da**q + ep.db**q) / (s_val + 1.0)) ** (1.0 / q)
    )
    return BoundResult(
        value=value,
        theorem_id="z",
        inputs={
            "a": iv.a, "b": iv.b, "x": x, "s": s_val,
            "p": p, "q": q, "da": ep.da, "db": ep.db,
        },
    )


def _c1(r: float, s: float) -> float:
    """r^(s+2)/(s+2): moment of t * t^s over one kernel branch."""
    return r ** (s + 2.0) / (s + 2.0)


def _c2(r: float, s: float) -> float:
    """r^(s+2)/(s+2) - r^(s+1)/(s+1) + 1/((s+1)(s+2)): the cross moment.

    Nonnegative for r in [0, 1] (it is the integral of t(1-t)^s over one
    kernel branch) but vanishes at r = 1, where rounding can leave a tiny
    negative residue that a fractional power must not see.
    """
    value = (
        r ** (s + 2.0) / (s + 2.0)
        - r ** (s + 1.0) / (s + 1.0)
        + 1.0 / ((s + 1.0) * (s + 2.0))
    )
    return max(0.0, value)


def bound_power_mean(
    iv: Interval,
    x: float,
    s: "float | SParam",
    q: float,
    ep: EndpointData,
) -> BoundResult:
    """Power-mean refinement; accepts any q >= 1 (no conjugate needed).

    (b-a) (1/2)^(1-1/q) * { lam^(2(1-1/q)) [C1(lam) da^q + C2(mu) db^q]^(1/q)
                          + mu^(2(1-1/q)) [C1(mu) db^q + C2(lam) da^q]^(1/q) }

    At q = 1 the power-mean step degenerates to the identity and the value
    coincides with :func:`bound_sconvex_abs`.
    """
    lam, mu = _prep(iv, x)
    s_val = as_sparam(s).s
    q = float(q)
    if q < 1.0:
        raise DomainError(f"power-mean exponent requires q >= 1, got {q!r}")
    daq, dbq = ep.da**q, ep.db**q
    exp_out = 2.0 * (1.0 - 1.0 / q)
    term_low = lam**exp_out * (_c1(lam, s_val) * daq + _c2(mu, s_val) * dbq) ** (
        1.0 / q
    )
    term_high = mu**exp_out * (_c1(mu, s_val) * dbq + _c2(lam, s_val) * daq) ** (
        1.0 / q
    )
    value = iv.width * 0.5 ** (1.0 - 1.0 / q) * (term_low + term_high)
    return BoundResult(
        value=value,
        theorem_id="t22",
        inputs={
            "a": iv.a, "b": iv.b, "x": x, "s": s_val,
            "q": q, "da": ep.da, "db": ep.db,
        },
    )


def midpoint_power_mean(iv: Interval, q: float, ep: EndpointData) -> BoundResult:
    """(b-a)/8 * (1/3)^(1/q) * [(da^q + 3 db^q)^(1/q) + (3 da^q + db^q)^(1/q)].

    Stated midpoint companion of :func:`bound_power_mean` at s = 1,
    implemented literally as displayed. Note: the general bound specialized
    to the midpoint carries inner weights (1, 2), not the (1, 3) written
    here, so the two do not coincide; this form is the weaker of the two.
    """
    iv.require_nonnegative()
    q = float(q)
    if q < 1.0:
        raise DomainError(f"power-mean exponent requires q >= 1, got {q!r}")
    daq, dbq = ep.da**q, ep.db**q
    value = (
        iv.width
        / 8.0
        * (1.0 / 3.0) ** (1.0 / q)
        * ((daq + 3.0 * dbq) ** (1.0 / q) + (3.0 * daq + dbq) ** (1.0 / q))
    )
    return BoundResult(
        value=value,
        theorem_id="t22-mid",
        inputs={"a": iv.a, "b": iv.b, "q": q, "da": ep.da, "db": ep.db},
    )
