"""Closed-form lower bounds on the probability of sampling a simple hypergraph.

Bounds may be negative (vacuous); ``BoundValue.value`` keeps the raw number
and ``clamped`` the probability-range version. Floating-point values are
computed in log space so they stay finite for very large ``sigma``; where
``sigma <= EXACT_SIGMA_MAX`` an exact :class:`~fractions.Fraction` is also
attached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .allocation import BoxAllocation
from .core import DegreeSequence, check_uniformity
from .errors import InvalidM
from .sampler import compute_m

EXACT_SIGMA_MAX = 10**6


@dataclass(frozen=True)
class BoundValue:
    name: str
    value: float
    components: dict = field(default_factory=dict)
    precondition_ok: bool | None = None
    exact: Fraction | None = None

    @property
    def clamped(self) -> float:
        return max(0.0, min(1.0, self.value))

    @property
    def vacuous(self) -> bool:
        return self.value <= 0

    def to_dict(self) -> dict:
        out = {
            "value": self.value,
            "clamped": self.clamped,
            "precondition_ok": self.precondition_ok,
            "components": self.components,
        }
        if self.exact is not None:
            out["exact"] = str(self.exact)
        return out


# -- formula cores (also used directly by property tests) -------------------


def theorem1_deficit(d1: int, sigma: int, k: int) -> float:
    """``(k+1)/2 * (3k/2)^(k-2) * d1^k / sigma^(k-2)`` evaluated in log space."""
    log = (math.log((k + 1) / 2) + (k - 2) * math.log(1.5 * k)
           + k * math.log(d1) - (k - 2) * math.log(sigma))
    return math.exp(log)


def theorem1_deficit_exact(d1: int, sigma: int, k: int) -> Fraction:
    return Fraction(k + 1, 2) * Fraction(3 * k, 2) ** (k - 2) * Fraction(d1**k, sigma ** (k - 2))


def theorem2_deficit(dm: int, sigma: int, k: int) -> float:
    return math.exp(math.log(3 * k * (k + 1) / 4) + 3 * math.log(dm) - math.log(sigma))


def theorem2_deficit_exact(dm: int, sigma: int, k: int) -> Fraction:
    return Fraction(3 * k * (k + 1) * dm**3, 4 * sigma)


# -- bounds -------------------------------------------------------------------


def bound_theorem1(pi: DegreeSequence, k: int) -> BoundValue:
    """Simple-probability bound for the plain greedy sampler.

    ``precondition_ok`` reports ``k(k+1) d_{k+2} <= sigma``, which guarantees
    the greedy allocation is admissible.
    """
    check_uniformity(k)
    d1, sigma = pi.degrees[0], pi.sigma
    deficit = theorem1_deficit(d1, sigma, k)
    exact = None
    if sigma <= EXACT_SIGMA_MAX:
        exact = 1 - theorem1_deficit_exact(d1, sigma, k)
    d_k2 = pi.d(k + 2)
    return BoundValue(
        "theorem1",
        1.0 - deficit,
        {"d1": d1, "sigma": sigma, "d_k_plus_2": d_k2, "deficit": deficit},
        precondition_ok=k * (k + 1) * d_k2 <= sigma,
        exact=exact,
    )


def bound_theorem2(pi: DegreeSequence, k: int, m: int) -> BoundValue:
    """Simple-probability bound for the split sampler with tail start ``m``.

    Both admissibility conditions are folded into ``precondition_ok``; the
    components also record whether ``m`` is the maximal choice.
    """
    check_uniformity(k, minimum=4)
    if not 1 <= m <= pi.n:
        raise InvalidM(f"m = {m} is outside 1..{pi.n}")
    dm, sigma = pi.d(m), pi.sigma
    d_km2 = pi.d(k - 2)
    cond_head = k * (k + 1) * d_km2 <= sigma
    cond_tail = 5 * k * (k + 1) * dm <= 4 * sigma
    deficit = theorem2_deficit(dm, sigma, k)
    exact = None
    if sigma <= EXACT_SIGMA_MAX:
        exact = 1 - theorem2_deficit_exact(dm, sigma, k)
    return BoundValue(
        "theorem2",
        1.0 - deficit,
        {
            "m": m,
            "d_m": dm,
            "sigma": sigma,
            "d_k_minus_2": d_km2,
            "head_condition": cond_head,
            "tail_condition": cond_tail,
            "m_is_maximal": m == compute_m(pi, k),
            "deficit": deficit,
        },
        precondition_ok=cond_head and cond_tail,
        exact=exact,
    )


def _theorem3_terms(alloc: BoxAllocation, exact: bool) -> list:
    sizes = alloc.sizes
    maxes = [alloc.max_degree(j) for j in range(len(sizes))]
    one = Fraction(1) if exact else 1.0
    terms = []
    for ell in range(len(sizes)):
        others = [j for j in range(len(sizes)) if j != ell]
        if any(sizes[j] == 0 for j in others):
            # no edge avoids box ell, so no parallel pair can form there
            terms.append(0 * one)
            continue
        pairs = min(sizes[j] * (sizes[j] - 1) for j in others) * one / 2
        prod = one
        for j in others:
            prod = prod * maxes[j] / sizes[j]
        terms.append(pairs * prod)
    return terms


def bound_theorem3(alloc: BoxAllocation, pi: DegreeSequence) -> BoundValue:
    """Allocation-specific lower bound on P(no parallel edges).

    For every box ``ell`` the term is the smallest pair count
    ``|B_j|(|B_j|-1)/2`` over the other boxes times the product of
    ``max degree / size`` over the other boxes.
    """
    terms = _theorem3_terms(alloc, exact=False)
    exact = None
    if pi.sigma <= EXACT_SIGMA_MAX:
        exact = 1 - sum(_theorem3_terms(alloc, exact=True))
    return BoundValue(
        "theorem3",
        1.0 - math.fsum(terms),
        {"sizes": list(alloc.sizes), "terms": terms},
        precondition_ok=None,
        exact=exact,
    )


def config_model_loop_lower_bound(pi: DegreeSequence | list[int], k: int,
                                  exact: bool = False) -> float | Fraction:
    """Lower bound on the expected loop count of the configuration model."""
    degrees = list(pi)
    sigma = sum(degrees)
    if sigma < 2:
        raise ValueError("need sigma >= 2")
    value = Fraction(sum(comb(d, 2) for d in degrees), comb(k, 2) * (sigma - 1))
    return value if exact else float(value)


def corollary_conditions(pi: DegreeSequence, k: int, C: float = 1.0, alpha: float = 0.0) -> dict:
    """Finite-n diagnostics for the asymptotic simplicity conditions.

    ``ratio_below_one`` is a finite-n proxy for ``d_1^k = o(sigma^(k-2))``;
    it is a heuristic flag, not a statement about the limit.
    """
    check_uniformity(k)
    n, d1, dn, sigma = pi.n, pi.degrees[0], pi.degrees[-1], pi.sigma
    rho = d1 / dn
    ratio = math.exp(k * math.log(d1) - (k - 2) * math.log(sigma))
    alpha_ok = alpha < 1 - 2 / k
    return {
        "n": n,
        "C": C,
        "alpha": alpha,
        "alpha_below_threshold": alpha_ok,
        "d1_within_power": d1 <= C * n**alpha,
        "degree_power_condition": alpha_ok and d1 <= C * n**alpha,
        "rho": rho,
        "d1_sq_rho_over_n_pow": d1**2 * (rho / n) ** (k - 2),
        "d1_pow_k_over_sigma_pow": ratio,
        "ratio_below_one": ratio < 1,
        "ratio_is_finite_n_proxy": True,
    }
