"""Sum rule for eps-subdifferentials through an attained infimal convolution."""

import logging
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from nearly_convex.calculus.subdifferential import esub_interval, esub_membership, value_at
from nearly_convex.core.constants import TOL_EQ, XI_SEARCH_BOUND
from nearly_convex.core.errors import (
    NoSplitFoundError,
    NotInSumSubdifferentialError,
    PointNotInSetError,
    QualificationFailedError,
)
from nearly_convex.core.interval import Interval, IntervalSet, ri_intersect_nonempty
from nearly_convex.core.search import march_to_level, ternary_min_anchored
from nearly_convex.func.conjugate import conjugate
from nearly_convex.func.piecewise import NearlyConvexFn1D, add_functions, indicator_function

logger = logging.getLogger("Calculus")


class SplitCertificate(BaseModel):
    """(eps1, eps2, xi1, xi2) with xi_i in the eps_i-subdifferential of the i-th part."""

    model_config = ConfigDict(frozen=True)

    eps1: float
    eps2: float
    xi1: float
    xi2: float

    @field_validator("eps1", "eps2")
    @classmethod
    def _nonnegative(cls, value: float) -> float:
        if value < 0:
            raise ValueError("split tolerances must be nonnegative")
        return value

    def matches(self, eps: float, xi: float, tol: float = 1e-10) -> bool:
        """Whether the parts add up to (eps, xi)."""
        scale = max(1.0, abs(eps), abs(xi))
        return abs(self.eps1 + self.eps2 - eps) <= tol * scale and abs(self.xi1 + self.xi2 - xi) <= tol * scale


def check_qualification(f1: NearlyConvexFn1D, f2: NearlyConvexFn1D) -> None:
    """Raise :class:`QualificationFailedError` unless ri dom f1 meets ri dom f2."""
    if not ri_intersect_nonempty(f1.domain, f2.domain):
        raise QualificationFailedError(
            f"ri(dom {f1.name}) and ri(dom {f2.name}) do not intersect: {f1.domain} vs {f2.domain}"
        )


def infimal_convolution(f1: NearlyConvexFn1D, f2: NearlyConvexFn1D, xi: float) -> Tuple[float, float]:
    """(f1* □ f2*)(xi) and a slope xi1 attaining it.

    Among several minimizers the one closest to ``xi / 2`` is returned.

    Raises:
        QualificationFailedError: if the relative interiors of the domains
            do not meet.
    """
    check_qualification(f1, f2)

    def q(xi1: np.ndarray) -> np.ndarray:
        xi1 = np.asarray(xi1, dtype=float)
        return conjugate(f1, xi1) + conjugate(f2, xi - xi1)

    grid = np.unique(np.concatenate([
        xi * np.linspace(-1.0, 2.0, 31),
        -np.logspace(-6, 9, 46),
        np.logspace(-6, 9, 46),
        [0.0, 0.5 * xi],
    ]))
    values = q(grid)
    k = int(np.argmin(values))
    lo = float(grid[max(k - 1, 0)])
    hi = float(grid[min(k + 1, len(grid) - 1)])
    if k == 0:
        lo = -XI_SEARCH_BOUND
    if k == len(grid) - 1:
        hi = XI_SEARCH_BOUND
    xi1, best = ternary_min_anchored(lambda t: float(q(np.array([t]))[0]), lo, hi, float(grid[k]))
    if not np.isfinite(best):
        return best, xi1
    # flat bottoms: move to the minimizer nearest the balanced split
    threshold = best + TOL_EQ * max(1.0, abs(best))
    left = march_to_level(q, xi1, -1.0, threshold)
    right = march_to_level(q, xi1, 1.0, threshold)
    balanced = min(max(0.5 * xi, left), right)
    value = float(q(np.array([balanced]))[0])
    if value <= threshold:
        xi1, best = balanced, min(best, value)
    logger.debug("infimal convolution at %g: value %g at xi1=%g", xi, best, xi1)
    return best, xi1


def sum_rule_decompose(f1: NearlyConvexFn1D, f2: NearlyConvexFn1D, x_bar: float, eps: float,
                       xi: float) -> SplitCertificate:
    """Split ``xi`` in d_eps(f1 + f2)(x_bar) into xi1 + xi2 with matching tolerances.

    The infimal convolution gives (xi1, xi2); each part's own tolerance is
    eps_i = f_i*(xi_i) + f_i(x_bar) - xi_i*x_bar and the leftover
    eps - eps1 - eps2 is shared equally.

    Raises:
        QualificationFailedError: if ri dom f1 and ri dom f2 do not meet.
        NotInSumSubdifferentialError: if ``xi`` is not in d_eps(f1 + f2)(x_bar).
        NoSplitFoundError: if the certificate fails its own membership check.
    """
    check_qualification(f1, f2)
    total = add_functions(f1, f2)
    if not esub_membership(total, x_bar, eps, xi):
        raise NotInSumSubdifferentialError(
            f"{xi:g} is not in the {eps:g}-subdifferential of {total.name} at {x_bar:g}"
        )
    _, xi1 = infimal_convolution(f1, f2, xi)
    xi2 = xi - xi1
    own1 = max(0.0, conjugate(f1, xi1) + value_at(f1, x_bar) - xi1 * x_bar)
    own2 = max(0.0, conjugate(f2, xi2) + value_at(f2, x_bar) - xi2 * x_bar)
    slack = eps - own1 - own2
    eps1 = own1 + 0.5 * slack
    eps2 = eps - eps1
    if eps2 < 0:
        eps1, eps2 = eps, 0.0
    if eps1 < 0:
        eps1, eps2 = 0.0, eps
    certificate = SplitCertificate(eps1=eps1, eps2=eps2, xi1=xi1, xi2=xi2)
    if not (esub_membership(f1, x_bar, eps1, xi1) and esub_membership(f2, x_bar, eps2, xi2)):
        raise NoSplitFoundError("the split from the infimal convolution failed verification", 0)
    logger.info("sum rule split at x=%g: %s", x_bar, certificate)
    return certificate


def normal_intersection_decompose(omega1: Interval, omega2: Interval, x_bar: float, eps: float,
                                  xi: float) -> SplitCertificate:
    """Split an eps-normal to omega1 ∩ omega2 into eps_i-normals to each set.

    Raises:
        PointNotInSetError: if ``x_bar`` is outside either set.
        QualificationFailedError: if ri omega1 and ri omega2 do not meet.
    """
    for omega in (omega1, omega2):
        if not omega.contains(x_bar):
            raise PointNotInSetError(f"{x_bar:g} is not in {omega}")
    return sum_rule_decompose(indicator_function(omega1, "omega1"), indicator_function(omega2, "omega2"),
                              x_bar, eps, xi)


class ExactSumRuleReport(BaseModel):
    """Both sides of d(f1 + f2)(x) = d f1(x) + d f2(x) at one point."""

    qualification: bool
    sum_set: IntervalSet
    parts_set: IntervalSet
    holds: bool


def exact_sum_rule_holds(f1: NearlyConvexFn1D, f2: NearlyConvexFn1D, x_bar: float) -> ExactSumRuleReport:
    """Compare the exact subdifferential of the sum with the sum of subdifferentials."""
    lhs = esub_interval(add_functions(f1, f2), x_bar, 0.0)
    rhs = esub_interval(f1, x_bar, 0.0).minkowski_sum(esub_interval(f2, x_bar, 0.0))
    holds = lhs.is_subset_of(rhs) and rhs.is_subset_of(lhs)
    return ExactSumRuleReport(
        qualification=ri_intersect_nonempty(f1.domain, f2.domain),
        sum_set=lhs,
        parts_set=rhs,
        holds=holds,
    )
