"""Closed-form values, bounds, and auxiliary formulas for the skew constant.

Everything here is plain arithmetic in the parameters (xi, nu, p): no
optimization, no space objects.  The central quantity is the sphere-
restricted skew constant

    C(xi, nu, p, X) = sup { (||xi x + nu y||^p + ||nu x - xi y||^p)
                            / (2^(p-1) (xi^p + nu^p)) : x, y unit },

for xi, nu > 0 and p >= 1.  The functions below evaluate published closed
forms for specific norms and the general bounds that every space satisfies.
Printed formulas are evaluated exactly as printed, even where they disagree
with direct optimization; the verifier layer documents such gaps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .estimators import SkewParams

__all__ = [
    "BoundPair",
    "bounds_general",
    "value_l1",
    "value_linf",
    "value_l1_linf_printed",
    "value_lr_printed",
    "value_weighted_c0",
    "delta_lr",
    "thm26_upper",
    "thm28_lower",
    "thm38_bounds",
    "thm33_objective",
    "normal_structure_threshold",
    "power_mean_check",
]


@dataclass(frozen=True)
class BoundPair:
    """A lower/upper pair with lower <= upper (infinities allowed)."""

    lower: float
    upper: float

    def __post_init__(self):
        if not (self.lower <= self.upper):
            raise ValueError(f"invalid bound pair: {self.lower} > {self.upper}")

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.lower - slack <= value <= self.upper + slack


def _denominator(params: SkewParams) -> float:
    return 2.0 ** (params.p - 1.0) * (params.xi**params.p + params.nu**params.p)


def bounds_general(params: SkewParams) -> BoundPair:
    """Two-sided bounds valid in every normed space.

    lower: ((xi+nu)^p + |nu-xi|^p) / (2^(p-1) (xi^p + nu^p)), attained at
           y = x; upper: (xi+nu)^p / (2^(p-2) (xi^p + nu^p)).
    """
    xi, nu, p = params.xi, params.nu, params.p
    lower = ((xi + nu) ** p + abs(nu - xi) ** p) / _denominator(params)
    upper = (xi + nu) ** p / (2.0 ** (p - 2.0) * (xi**p + nu**p))
    return BoundPair(lower, upper)


def value_l1(params: SkewParams) -> float:
    """Exact value on two-dimensional 1-norm space: the general upper bound."""
    return bounds_general(params).upper


def value_linf(params: SkewParams) -> float:
    """Exact value on two-dimensional sup-norm space: the general upper bound."""
    return bounds_general(params).upper


def value_l1_linf_printed(params: SkewParams) -> float:
    """Printed value for the sign-mixed hexagonal norm, stated for xi >= nu:

        (xi^p + (xi^p + nu^p)) / (2^(p-1) (xi^p + nu^p)).

    Raises for xi < nu; the printed derivation does not cover that case.
    Direct vertex enumeration exceeds this expression, which the verifier
    layer records as a documented discrepancy.
    """
    if params.xi < params.nu:
        raise ValueError("printed hexagonal-norm value requires xi >= nu")
    xi, nu, p = params.xi, params.nu, params.p
    return (xi**p + (xi**p + nu**p)) / _denominator(params)


def value_lr_printed(params: SkewParams, r: float) -> float:
    """Printed piecewise value for the r-power norm, r >= 2.

    p < r:   [2^(1-1/r) min(xi,nu) + |xi-nu|]^p / (2^(p-2) (xi^p + nu^p))
    p >= r:  (xi+nu)^p / (2^(p-1) (xi^p + nu^p))

    The p >= r branch sits below the general lower bound whenever xi != nu
    (it omits the |xi-nu|^p term); it is evaluated as printed and the gap is
    documented by the verifier layer.
    """
    if not (r >= 2.0):
        raise ValueError("printed r-power value requires r >= 2")
    xi, nu, p = params.xi, params.nu, params.p
    if p < r:
        m = min(xi, nu)
        top = (2.0 ** (1.0 - 1.0 / r) * m + abs(xi - nu)) ** p
        return top / (2.0 ** (p - 2.0) * (xi**p + nu**p))
    return (xi + nu) ** p / _denominator(params)


def value_weighted_c0(params: SkewParams) -> float:
    """Printed value for the weighted strictly convex renorming:

        (|xi-nu|^p + (xi+nu)^p) / (2^(p-1) (xi^p + nu^p)),

    identical to the general lower bound.  Direct optimization on the
    truncated space exceeds this; see the verifier layer.
    """
    xi, nu, p = params.xi, params.nu, params.p
    return (abs(xi - nu) ** p + (xi + nu) ** p) / _denominator(params)


def delta_lr(eps: float, r: float) -> float:
    """Modulus of convexity of the r-power norm for r >= 2:

        delta(eps) = 1 - (1 - (eps/2)^r)^(1/r),  0 <= eps <= 2.
    """
    if not (r >= 2.0):
        raise ValueError("closed-form modulus requires r >= 2")
    if not (0.0 <= eps <= 2.0):
        raise ValueError("eps must lie in [0, 2]")
    return 1.0 - (1.0 - (eps / 2.0) ** r) ** (1.0 / r)


def thm26_upper(params: SkewParams, tilde_value: float) -> float:
    """Upper bound on the unrestricted constant in terms of the sphere value:

        2^(2-p) [1 + (2^(1/q) t^(1/p) - 1)^q]^(p-1),  1/p + 1/q = 1,

    where t is the sphere-restricted value.  Requires p > 1 (q is undefined
    at p = 1).  Increasing in t, so an underestimate of t never weakens a
    verification on the safe side.
    """
    if params.p <= 1.0:
        raise ValueError("the conjugate exponent requires p > 1")
    if tilde_value <= 0.0:
        raise ValueError("sphere-restricted value must be positive")
    p = params.p
    q = params.q
    base = 2.0 ** (1.0 / q) * tilde_value ** (1.0 / p) - 1.0
    if base < 0.0:
        # cannot occur for values above the general lower bound; guard anyway
        base = 0.0
    return 2.0 ** (2.0 - p) * (1.0 + base**q) ** (p - 1.0)


def thm28_lower(params: SkewParams, gen_tilde_value: float) -> float:
    """Lower bound on the skew value from the symmetric (xi = nu) constant:

        2 min(xi,nu)^p / (xi^p + nu^p) * C~(p)(X).
    """
    xi, nu, p = params.xi, params.nu, params.p
    return 2.0 * min(xi, nu) ** p / (xi**p + nu**p) * gen_tilde_value


def thm38_bounds(params: SkewParams, james_value: float) -> BoundPair:
    """Two-sided bounds on the skew value in terms of the James constant J:

        lower: [max(xi,nu) J - |xi-nu|]^p / (2^(p-2) (xi^p + nu^p))
        upper: 1 + [min(xi,nu) J + |xi-nu|]^p / (2^(p-1) (xi^p + nu^p))
    """
    if not (math.sqrt(2.0) - 1e-9 <= james_value <= 2.0 + 1e-9):
        raise ValueError("James constant must lie in [sqrt(2), 2]")
    xi, nu, p = params.xi, params.nu, params.p
    d = abs(xi - nu)
    lower = (max(xi, nu) * james_value - d) ** p / (
        2.0 ** (p - 2.0) * (xi**p + nu**p)
    )
    upper = 1.0 + (min(xi, nu) * james_value + d) ** p / _denominator(params)
    return BoundPair(lower, upper)


def thm33_objective(params: SkewParams, eps: float, delta_eps: float) -> float:
    """Integrand of the convexity-modulus representation of the skew value:

        ([2 min(xi,nu) (1 - delta(eps)) + |xi-nu|]^p
         + [min(xi,nu) eps + |xi-nu|]^p) / (2^(p-1) (xi^p + nu^p)).

    The skew constant equals the supremum of this expression over
    eps in [0, 2] when delta_eps is the true modulus of convexity.
    """
    if not (0.0 <= eps <= 2.0):
        raise ValueError("eps must lie in [0, 2]")
    if not (0.0 <= delta_eps <= 1.0):
        raise ValueError("delta must lie in [0, 1]")
    xi, nu, p = params.xi, params.nu, params.p
    m = min(xi, nu)
    d = abs(xi - nu)
    first = (2.0 * m * (1.0 - delta_eps) + d) ** p
    second = (m * eps + d) ** p
    return (first + second) / _denominator(params)


def normal_structure_threshold(params: SkewParams) -> float:
    """Strict threshold below which the skew value certifies normal structure:

        ((xi+nu)^p + nu^p) / (2^(p-1) (xi^p + nu^p)).

    Always strictly below the general upper bound.
    """
    xi, nu, p = params.xi, params.nu, params.p
    return ((xi + nu) ** p + nu**p) / _denominator(params)


def power_mean_check(x: float, y: float, p: float, slack: float = 1e-12) -> bool:
    """Check the power-mean inequality (x+y)^p <= 2^(p-1) (x^p + y^p)
    for x, y >= 0 and p >= 1, within a floating-point slack."""
    if x < 0.0 or y < 0.0 or p < 1.0:
        raise ValueError("requires x, y >= 0 and p >= 1")
    return (x + y) ** p <= 2.0 ** (p - 1.0) * (x**p + y**p) + slack
