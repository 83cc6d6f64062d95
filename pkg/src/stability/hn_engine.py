"""
Stability conditions on the standard heart of a quiver
Central charges, semistability, Harder-Narasimhan filtrations and masses m_{sigma,t}.
"""
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional, Sequence, Set, Tuple

import numpy as np
from loguru import logger

from src.algebra.laurent import LaurentPoly
from src.geometry.charge_geometry import (
    ZERO,
    Charge,
    HNPolygon,
    Phase,
    compare_phase,
    ensure_upper_half,
    left_hull,
    mass_from_factors,
    phase,
)
from src.representations.representation import (
    Representation,
    ShortExactSeq,
    Subrep,
    check_cap,
    quotient,
    relative_subrep,
    restrict,
    subrep_contains,
    zero_subrep,
)
from src.representations.subreps import subrep_enumerate
from src.utils.errors import HNConsistencyError


@dataclass(frozen=True)
class CentralCharge:
    """z_i = Z(S_i), each in the semi-closed upper half-plane"""
    z: Tuple[Charge, ...]

    def __post_init__(self):
        values = tuple(c if isinstance(c, Charge) else Charge(*c) for c in self.z)
        for c in values:
            ensure_upper_half(c)
        object.__setattr__(self, 'z', values)

    def __call__(self, d: Sequence[int]) -> Charge:
        if len(d) != len(self.z):
            raise ValueError(f"dimension vector of length {len(d)} for {len(self.z)} charges")
        total = ZERO
        for coefficient, charge in zip(d, self.z):
            if coefficient:
                total = total + charge.scale(coefficient)
        return total


@dataclass(frozen=True)
class StabilityCondition:
    """An algebraic stability condition: a central charge on the standard heart"""
    charge: CentralCharge
    heart: str = "standard"
    name: str = field(default="", compare=False)

    @classmethod
    def from_pairs(cls, pairs: Sequence[Tuple[Any, Any]], name: str = "") -> 'StabilityCondition':
        return cls(charge=CentralCharge(tuple(Charge(re, im) for re, im in pairs)), name=name)

    @classmethod
    def standard(cls, n: int) -> 'StabilityCondition':
        """sigma_0: every simple has charge i"""
        return cls.from_pairs([(0, 1)] * n, name="sigma0")

    @property
    def n(self) -> int:
        return len(self.charge.z)

    def rotated(self, factor: Charge) -> 'StabilityCondition':
        """Multiply every charge by factor; the result must stay in bH"""
        return StabilityCondition(
            charge=CentralCharge(tuple(z.times(factor) for z in self.charge.z)),
            heart=self.heart,
            name=f"{self.name or 'sigma'}*({factor.re},{factor.im})",
        )

    def to_dict(self) -> Dict[str, Any]:
        return {'name': self.name, 'charges': [[str(z.re), str(z.im)] for z in self.charge.z]}


def charge_of(sigma: StabilityCondition, d: Sequence[int]) -> Charge:
    """Z(E) = sum d_i z_i"""
    return sigma.charge(d)


def _phase_of(sigma: StabilityCondition, rep: Representation) -> Phase:
    return phase(charge_of(sigma, rep.dims))


def is_semistable(sigma: StabilityCondition, rep: Representation, cap: Optional[int] = None) -> bool:
    """No nonzero subrep has larger phase than rep"""
    if rep.is_zero():
        return True
    total = charge_of(sigma, rep.dims)
    for sub in subrep_enumerate(rep, cap):
        if sub.total_dim == 0:
            continue
        if compare_phase(charge_of(sigma, sub.dim_vector), total) > 0:
            return False
    return True


@dataclass(frozen=True)
class HNFiltration:
    """0 = E_0 < E_1 < ... < E_m = E with semistable factors of decreasing phase"""
    rep: Representation
    sigma: StabilityCondition
    steps: Tuple[Subrep, ...]
    factors: Tuple[Representation, ...]
    charges: Tuple[Charge, ...]
    phases: Tuple[Phase, ...]

    @property
    def length(self) -> int:
        return len(self.factors)

    def step_charges(self) -> Tuple[Charge, ...]:
        return tuple(charge_of(self.sigma, s.dim_vector) for s in self.steps)

    def mass(self, t: float) -> float:
        return mass_from_factors(list(zip(self.charges, self.phases)), t)

    def log_mass(self, t: float) -> float:
        terms = [math.log(abs(c)) + float(ph) * t for c, ph in zip(self.charges, self.phases)]
        return float(np.logaddexp.reduce(terms))

    def to_dict(self, t: float = 0.0) -> Dict[str, Any]:
        return {
            'steps': [list(s.dim_vector) for s in self.steps],
            'factor_dims': [list(f.dims) for f in self.factors],
            'factor_charges': [[str(c.re), str(c.im)] for c in self.charges],
            'phases': [float(ph) for ph in self.phases],
            'mass': self.mass(t),
            't': t,
        }


def hn_filtration(sigma: StabilityCondition, rep: Representation, cap: Optional[int] = None) -> HNFiltration:
    """Greedy extraction of maximal destabilizing subobjects.

    At step E_k the next step is the subrep B > E_k maximizing the phase of
    Z(B) - Z(E_k), then the total dimension; that choice must be unique.
    """
    if rep.is_zero():
        raise ValueError("the zero object has no HN filtration")
    if sigma.n != rep.quiver.n:
        raise ValueError(f"stability condition has {sigma.n} charges, quiver has {rep.quiver.n} vertices")
    check_cap(rep, cap)
    return _hn_cached(sigma, rep)


@lru_cache(maxsize=4096)
def _hn_cached(sigma: StabilityCondition, rep: Representation) -> HNFiltration:
    subs = subrep_enumerate(rep, rep.total_dim)
    current = zero_subrep(rep)
    steps = [current]
    while current.total_dim < rep.total_dim:
        base = charge_of(sigma, current.dim_vector)
        best: List[Subrep] = []
        best_charge = None
        for candidate in subs:
            if candidate.total_dim <= current.total_dim or not subrep_contains(rep, candidate, current):
                continue
            step_charge = charge_of(sigma, candidate.dim_vector) - base
            if best_charge is None:
                best, best_charge = [candidate], step_charge
                continue
            order = compare_phase(step_charge, best_charge)
            if order > 0:
                best, best_charge = [candidate], step_charge
            elif order == 0:
                best.append(candidate)
        top_dim = max(b.total_dim for b in best)
        maximal = [b for b in best if b.total_dim == top_dim]
        if len(maximal) != 1:
            raise HNConsistencyError(
                f"{len(maximal)} maximal destabilizers of dimension {top_dim} above step dims {list(current.dim_vector)} "
                f"in {rep.describe()}"
            )
        current = maximal[0]
        steps.append(current)

    factors = []
    for lower, upper in zip(steps, steps[1:]):
        outer = restrict(rep, upper)
        factors.append(quotient(outer, relative_subrep(rep, upper, lower)))
    charges = tuple(charge_of(sigma, f.dims) for f in factors)
    phases = tuple(phase(c) for c in charges)
    for a, b in zip(phases, phases[1:]):
        if not a > b:
            raise HNConsistencyError(f"HN phases not strictly decreasing: {[float(x) for x in phases]}")
    logger.debug(f"HN filtration of {rep.describe()}: {len(factors)} factors, phases {[float(x) for x in phases]}")
    return HNFiltration(rep=rep, sigma=sigma, steps=tuple(steps), factors=tuple(factors), charges=charges, phases=phases)


def clear_hn_cache() -> None:
    _hn_cached.cache_clear()


def mass(sigma: StabilityCondition, rep: Representation, t: float, cap: Optional[int] = None) -> float:
    """m_{sigma,t}(E) = sum |Z(A_i)| e^{phi_i t} over the HN factors; 0 for the zero object"""
    if rep.is_zero():
        return 0.0
    return hn_filtration(sigma, rep, cap).mass(t)


def log_mass(sigma: StabilityCondition, rep: Representation, t: float, cap: Optional[int] = None) -> float:
    if rep.is_zero():
        return -math.inf
    return hn_filtration(sigma, rep, cap).log_mass(t)


def phase_range(sigma: StabilityCondition, rep: Representation, cap: Optional[int] = None) -> Tuple[Phase, Phase]:
    """(phi^+, phi^-): phases of the first and last HN factors"""
    hn = hn_filtration(sigma, rep, cap)
    return hn.phases[0], hn.phases[-1]


def subobject_charges(sigma: StabilityCondition, rep: Representation,
                      cap: Optional[int] = None) -> Set[Charge]:
    """Z(A) for every subrepresentation A, 0 and Z(rep) included"""
    return {charge_of(sigma, s.dim_vector) for s in subrep_enumerate(rep, cap)}


def hn_polygon_oracle(sigma: StabilityCondition, rep: Representation,
                      cap: Optional[int] = None) -> Tuple[HNPolygon, bool]:
    """Left hull of all subobject charges versus the HN step charges"""
    total = charge_of(sigma, rep.dims)
    polygon = left_hull(subobject_charges(sigma, rep, cap), total)
    if rep.is_zero():
        return polygon, True
    hn_points = hn_filtration(sigma, rep, cap).step_charges()
    agreement = tuple(polygon.extremal_points) == tuple(hn_points)
    if not agreement:
        logger.warning(f"Polygon/HN mismatch for {rep.describe()}: hull {len(polygon.extremal_points)} vs HN {len(hn_points)} points")
    return polygon, agreement


@dataclass(frozen=True)
class CohomologyProfile:
    """An object recorded by its cohomology modules H^k placed in degree k"""
    entries: Tuple[Tuple[Representation, int], ...]

    def __post_init__(self):
        degrees = [k for _, k in self.entries]
        if len(set(degrees)) != len(degrees):
            raise ValueError(f"cohomology degrees must be distinct, got {degrees}")
        object.__setattr__(self, 'entries', tuple(sorted(self.entries, key=lambda e: e[1])))

    @classmethod
    def single(cls, module: Representation, degree: int = 0) -> 'CohomologyProfile':
        return cls(((module, degree),))

    def degrees(self) -> List[int]:
        return [k for _, k in self.entries]

    def module(self, degree: int) -> Optional[Representation]:
        return next((m for m, k in self.entries if k == degree), None)

    def shift(self, m: int) -> 'CohomologyProfile':
        """E[m]: H^k(E[m]) = H^{k+m}(E)"""
        return CohomologyProfile(tuple((module, k - m) for module, k in self.entries))

    def poincare_polynomial(self) -> LaurentPoly:
        """P(u) = sum_k dim H^k u^k"""
        return LaurentPoly({k: module.total_dim for module, k in self.entries})

    def dimension_classes(self) -> Dict[int, Tuple[int, ...]]:
        return {k: module.dims for module, k in self.entries}


def mass_of_complex(sigma: StabilityCondition, profile: CohomologyProfile, t: float,
                    cap: Optional[int] = None) -> float:
    """sum_k m_{sigma,t}(H^k) e^{-kt}"""
    return math.fsum(mass(sigma, module, t, cap) * math.exp(-k * t) for module, k in profile.entries)


def log_mass_of_complex(sigma: StabilityCondition, profile: CohomologyProfile, t: float,
                        cap: Optional[int] = None) -> float:
    terms = [
        log_mass(sigma, module, t, cap) - k * t
        for module, k in profile.entries
        if not module.is_zero()
    ]
    if not terms:
        return -math.inf
    return float(np.logaddexp.reduce(terms))


def support_constant_sample(sigma: StabilityCondition, corpus: Sequence[Representation],
                            norm: Optional[Callable[[Sequence[int]], float]] = None,
                            cap: Optional[int] = None) -> float:
    """min |Z(E)| / ||[E]|| over the sigma-semistable members of corpus"""
    norm_fn = norm or (lambda d: float(np.linalg.norm(np.asarray(d, dtype=float))))
    semistables = [rep for rep in corpus if not rep.is_zero() and is_semistable(sigma, rep, cap)]
    if not semistables:
        raise ValueError("support constant needs at least one nonzero semistable object")
    ratios = [abs(charge_of(sigma, rep.dims)) / norm_fn(rep.dims) for rep in semistables]
    return min(ratios)


@dataclass(frozen=True)
class StabDistanceSample:
    phase_gap: float
    charge_gap: float
    mass_ratio_min: float
    mass_ratio_max: float

    @property
    def mass_ratio_range(self) -> Tuple[float, float]:
        return self.mass_ratio_min, self.mass_ratio_max

    def to_dict(self) -> Dict[str, float]:
        return {
            'phase_gap': self.phase_gap,
            'charge_gap': self.charge_gap,
            'mass_ratio_min': self.mass_ratio_min,
            'mass_ratio_max': self.mass_ratio_max,
        }


def stab_distance_sample(sigma: StabilityCondition, tau: StabilityCondition,
                         corpus: Sequence[Representation], t: float,
                         cap: Optional[int] = None) -> StabDistanceSample:
    """Sampled d(P, Q), ||Z - W||_sigma and the range of m_sigma / m_tau over corpus"""
    reps = [rep for rep in corpus if not rep.is_zero()]
    if not reps:
        raise ValueError("distance sample needs a nonempty corpus")
    phase_gap = 0.0
    charge_gap = 0.0
    ratios = []
    for rep in reps:
        upper_s, lower_s = phase_range(sigma, rep, cap)
        upper_t, lower_t = phase_range(tau, rep, cap)
        phase_gap = max(phase_gap, abs(float(upper_s - upper_t)), abs(float(lower_s - lower_t)))
        if is_semistable(sigma, rep, cap):
            z = charge_of(sigma, rep.dims)
            w = charge_of(tau, rep.dims)
            charge_gap = max(charge_gap, abs(z - w) / abs(z))
        ratios.append(mass(sigma, rep, t, cap) / mass(tau, rep, t, cap))
    return StabDistanceSample(phase_gap=phase_gap, charge_gap=charge_gap,
                              mass_ratio_min=min(ratios), mass_ratio_max=max(ratios))


@dataclass(frozen=True)
class HeartRefinement:
    """Both sides of m_t(A) <= m_t(B) + e^{-t} m_t(C) for 0 -> A -> B -> C -> 0"""
    lhs: float
    rhs: float
    quotient_in_phase_one: bool

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs + 1e-9 * max(1.0, self.rhs)


def heart_triangle_refinement(sigma: StabilityCondition, ses: ShortExactSeq, t: float,
                              cap: Optional[int] = None) -> HeartRefinement:
    sub = restrict(ses.total, ses.sub)
    lhs = mass(sigma, sub, t, cap)
    rhs = mass(sigma, ses.total, t, cap) + math.exp(-t) * mass(sigma, ses.quotient, t, cap)
    in_phase_one = (
        not ses.quotient.is_zero()
        and all(ph == 1 for ph in hn_filtration(sigma, ses.quotient, cap).phases)
    )
    return HeartRefinement(lhs=lhs, rhs=rhs, quotient_in_phase_one=in_phase_one)
