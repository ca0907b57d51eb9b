"""Strong-openness effectiveness quantities for diagonal toric weights.

Everything here is driven by the combinatorics of monomial multiplier
ideals: jumping numbers, the growth exponent gamma of a coefficient
functional (computed both combinatorially and as a sublevel-kernel limit),
and the effectiveness report comparing the guaranteed membership exponent
with the true one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bergman import b_circle, extremal_functional, minimal_l2
from .domains import DiagonalDomain, ToricWeight, sublevel_domain, weighted_integral
from .errors import BerglabError, UnboundedFunctionalError, ZeroFunctionalError
from .exactnum import PiValue, value_float
from .ideals import (
    MonomialIdeal,
    monomial_jet_ideal,
    multiplier_ideal,
    multiplier_ideal_plus,
    next_jump,
)
from .indices import degree
from .jets import Functional, Jet, pair


def _monomial_gamma(beta, phi: ToricWeight) -> Fraction:
    return min(Fraction(beta[j] + 1) / phi.a[j] for j in phi.active())


def jumping_number(F: Jet, phi: ToricWeight) -> Fraction:
    """sup{c >= 0 : |F|^2 exp(-c*phi) is integrable at the origin}.

    For a diagonal toric weight monomials are orthogonal in every weighted
    norm, so a polynomial survives exactly as long as each monomial in its
    Newton support does: the minimum of the monomial values.
    """
    if F.is_zero():
        raise ValueError("the zero germ has no jumping number")
    if F.n != phi.n:
        raise ValueError("jet and weight dimensions differ")
    return min(_monomial_gamma(beta, phi) for beta in F.coeffs)


def xi_cse_combinatorial(xi: Functional, phi: ToricWeight) -> Fraction:
    """Smallest c at which xi annihilates the multiplier ideal of c*phi:
    the maximum of the monomial jumping values over the support."""
    if xi.is_zero():
        raise ZeroFunctionalError("gamma of the zero functional")
    if xi.n != phi.n:
        raise ValueError("functional and weight dimensions differ")
    return max(_monomial_gamma(beta, phi) for beta in xi.entries)


@dataclass
class CseLimitResult:
    """Tail growth rate of log K over sublevel domains."""

    slope: float
    table: list  # (t, log K)
    min_second_difference: float
    convex: bool

    def to_json(self):
        return {
            "slope": self.slope,
            "table": [[t, lk] for t, lk in self.table],
            "min_second_difference": self.min_second_difference,
            "convex": self.convex,
        }


def xi_cse_limit(xi: Functional, phi: ToricWeight, D: DiagonalDomain, t_grid) -> CseLimitResult:
    """Growth rate of log K_{xi} on the sublevel domains {phi < -t} ∩ D.

    Returns the least-squares slope of the tail (the later half of the
    grid) together with a discrete convexity certificate: consecutive
    divided-difference slopes must be nondecreasing.
    """
    from .bergman import kernel_at_origin

    t_grid = [float(t) for t in t_grid]
    if len(t_grid) < 4:
        raise ValueError("t grid needs at least 4 points")
    if any(b <= a for a, b in zip(t_grid, t_grid[1:])):
        raise ValueError("t grid must be strictly increasing")
    table = []
    for t in t_grid:
        sub = sublevel_domain(D, phi, t)
        k = kernel_at_origin(sub, xi)
        k = value_float(k)
        if not math.isfinite(k) or k <= 0:
            raise UnboundedFunctionalError(
                f"kernel not finite and positive at t={t}"
            )
        table.append((t, math.log(k)))
    slopes = [
        (l2 - l1) / (t2 - t1)
        for (t1, l1), (t2, l2) in zip(table, table[1:])
    ]
    second = [b - a for a, b in zip(slopes, slopes[1:])]
    min_second = min(second) if second else 0.0
    tail = table[len(table) // 2 :]
    ts = np.array([t for t, _ in tail])
    ls = np.array([l for _, l in tail])
    slope = float(np.polyfit(ts, ls, 1)[0])
    return CseLimitResult(slope, table, min_second, min_second >= -1e-8)


@dataclass
class MinimizationReport:
    """Check that the jumping number is the least gamma over functionals
    pairing nontrivially with F."""

    closed_form: Fraction
    family: list  # (label, gamma, pairs_with_F)
    attained: Fraction
    all_above: bool

    @property
    def consistent(self) -> bool:
        return self.attained == self.closed_form and self.all_above

    def to_json(self):
        return {
            "closed_form": str(self.closed_form),
            "attained": str(self.attained),
            "all_above": self.all_above,
            "consistent": self.consistent,
            "family": [
                {"xi": label, "gamma": str(g), "pairs": p}
                for label, g, p in self.family
            ],
        }


def verify_corollary_min(F: Jet, phi: ToricWeight, degree_bound: int) -> MinimizationReport:
    """Minimize gamma over a search family of functionals pairing
    nontrivially with F: the coordinate deltas on F's Newton support, plus
    the extremal functional of the just-beyond multiplier ideal."""
    c0 = jumping_number(F, phi)
    family = []
    candidates = []
    for beta in sorted(F.coeffs, key=degree):
        if degree(beta) > degree_bound:
            continue
        candidates.append((f"delta_{beta}", Functional.delta(F.n, beta)))
    iplus = multiplier_ideal_plus(phi, c0)
    J = monomial_jet_ideal(iplus)
    domain = DiagonalDomain.polydisc([1] * F.n)
    Fw = Jet(F.n, max(F.degree_bound, J.level - 1), F.coeffs)
    eta = extremal_functional(domain, Fw, J)
    if not eta.is_zero():
        candidates.append(("extremal_eta", eta))
    attained = None
    all_above = True
    for label, xi in candidates:
        gamma = xi_cse_combinatorial(xi, phi)
        pairs = bool(pair(xi, Jet(F.n, max(F.degree_bound, xi.order()), F.coeffs)))
        family.append((label, gamma, pairs))
        if pairs:
            if gamma < c0:
                all_above = False
            attained = gamma if attained is None else min(attained, gamma)
    if attained is None:
        raise BerglabError("no functional in the search family pairs with F")
    return MinimizationReport(c0, family, attained, all_above)


@dataclass
class EffectivenessReport:
    """Guaranteed versus true membership exponents for (D, F, phi)."""

    integral: object  # A; PiValue in exact mode
    jump: Fraction  # the jumping number of F
    ideal_plus: MonomialIdeal
    c_value: object  # minimal L2 against the just-beyond ideal
    b_value: object  # same quantity through the kernel-ratio route
    ratio: object  # R = A / C
    p_max: object  # guaranteed exponent bound R/(R-1)
    p_star: Fraction  # true membership threshold
    sharp: bool
    diagnostics: dict = field(default_factory=dict)

    def to_json(self):
        def enc(v):
            if isinstance(v, PiValue):
                return v.to_json()
            if isinstance(v, Fraction):
                return str(v)
            return v

        return {
            "integral": enc(self.integral),
            "jumping_number": str(self.jump),
            "ideal_plus": [list(g) for g in self.ideal_plus.generators],
            "c_value": enc(self.c_value),
            "b_value": enc(self.b_value),
            "ratio": enc(self.ratio),
            "p_max": enc(self.p_max),
            "p_star": str(self.p_star),
            "sharp": self.sharp,
            "diagnostics": self.diagnostics,
        }

    def text_table(self) -> str:
        rows = [
            ("A (weighted integral)", self.integral),
            ("jumping number", self.jump),
            ("C (minimal L2)", self.c_value),
            ("B (kernel ratio)", self.b_value),
            ("R = A/C", self.ratio),
            ("p_max = R/(R-1)", self.p_max),
            ("p* (membership threshold)", self.p_star),
            ("sharp", self.sharp),
        ]
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def membership_threshold(F: Jet, phi: ToricWeight) -> Fraction:
    """sup{p : F in the multiplier ideal of p*phi}, found by walking the
    jump set until membership first fails.  Membership is monotone in p, so
    the first failing jump is the threshold."""
    if F.is_zero():
        raise ValueError("the zero germ has no membership threshold")
    p = Fraction(0)
    bound = jumping_number(F, phi) + 2  # membership must fail by here
    while p <= bound:
        p = next_jump(phi, p)
        if not multiplier_ideal(phi, p).contains_jet(F):
            return p
    raise BerglabError("membership sweep failed to terminate")


def effectiveness_report(D: DiagonalDomain, F: Jet, phi: ToricWeight) -> EffectivenessReport:
    """Assemble the effectiveness quantities: the weighted integral A, the
    minimal L2 value C against the just-beyond multiplier ideal, the ratio
    R = A/C, the guaranteed exponent p_max with p/(p-1) > R, and the true
    threshold p* from an exact membership sweep."""
    A = weighted_integral(D, F, phi, 1)
    if value_float(A) == math.inf:
        raise BerglabError(
            "the weighted integral of F diverges; no effectiveness bound applies"
        )
    c0 = jumping_number(F, phi)
    iplus = multiplier_ideal_plus(phi, c0)
    J = monomial_jet_ideal(iplus)
    Fw = Jet(F.n, max(F.degree_bound, J.level - 1), F.coeffs)
    proj = minimal_l2(D, Fw, J)
    bc = b_circle(D, Fw, J)
    cv, bv = proj.value, bc.value
    if isinstance(cv, PiValue) and isinstance(bv, PiValue):
        if cv != bv:
            raise BerglabError(f"kernel-ratio route disagrees exactly: {cv} vs {bv}")
    else:
        cf, bf = value_float(cv), value_float(bv)
        if abs(cf - bf) > 1e-9 * max(1.0, abs(cf)):
            raise BerglabError(
                f"kernel-ratio route disagrees: {cf} vs {bf}"
            )
    exact = isinstance(A, PiValue) and isinstance(cv, PiValue)
    if exact and A.pi_power == cv.pi_power:
        R = Fraction(A.coeff) / Fraction(cv.coeff)
        p_max = math.inf if R == 1 else R / (R - 1)
    else:
        Rf = value_float(A) / value_float(cv)
        R = Rf
        p_max = math.inf if abs(Rf - 1) < 1e-15 else Rf / (Rf - 1)
    p_star = membership_threshold(F, phi)
    if isinstance(p_max, Fraction):
        sharp = p_max == p_star
    else:
        sharp = math.isfinite(p_max) and abs(p_max - float(p_star)) <= 1e-9 * max(
            1.0, float(p_star)
        )
    diag = {
        "jet_level": J.level,
        "b_gap": abs(value_float(cv) - value_float(bv)),
    }
    return EffectivenessReport(
        A, c0, iplus, cv, bv, R, p_max, p_star, sharp, diag
    )
