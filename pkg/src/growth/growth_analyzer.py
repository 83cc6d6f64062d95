"""
Growth-rate estimation for Mass Growth Lab
Mass growth series of twist orbits, entropy closed forms, spectral lower
bounds, no-cancellation upper bounds and the delta_t sandwich.
"""
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from src.algebra.laurent import poly_sum
from src.algebra.quiver import Quiver, graded_hom_table
from src.config.settings import get_settings
from src.growth.spectral import log_spectral_radius
from src.representations.representation import Representation, direct_sum, simple_rep
from src.stability.hn_engine import (
    CohomologyProfile,
    StabilityCondition,
    log_mass,
    mass,
    mass_of_complex,
)
from src.twists.twist_calculus import (
    GradedClass,
    closed_form_poincare,
    twist_k_matrix,
    twist_power_profile,
    word_power_orbit,
)
from src.twists.words import SHIFT, TWIST, TwistWord, format_word
from src.utils.errors import PropertyViolation
from src.utils.parallel import ordered_map

MIN_SAMPLES = 8


@dataclass(frozen=True)
class GrowthSeries:
    """(n, log a_n) samples; values are kept in log form so long orbits never overflow"""
    samples: Tuple[Tuple[int, float], ...]
    label: str = ""

    def __post_init__(self):
        ns = [n for n, _ in self.samples]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ValueError("sample indices must be strictly increasing")
        for n, log_value in self.samples:
            if not math.isfinite(log_value):
                raise ValueError(f"sample {n} is not a positive finite value")

    @classmethod
    def from_values(cls, values: Sequence[float], label: str = "", start: int = 0) -> 'GrowthSeries':
        logs = []
        for n, value in enumerate(values, start=start):
            if not value > 0:
                raise ValueError(f"sample {n} has nonpositive value {value}")
            logs.append((n, math.log(value)))
        return cls(tuple(logs), label)

    @classmethod
    def from_logs(cls, log_values: Sequence[float], label: str = "", start: int = 0) -> 'GrowthSeries':
        return cls(tuple((n, float(v)) for n, v in enumerate(log_values, start=start)), label)

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def ns(self) -> List[int]:
        return [n for n, _ in self.samples]

    @property
    def log_values(self) -> List[float]:
        return [v for _, v in self.samples]

    @property
    def values(self) -> List[float]:
        """exp of the stored logs, inf where that overflows"""
        return [math.exp(v) if v < 709.0 else math.inf for v in self.log_values]


@dataclass(frozen=True)
class GrowthEstimate:
    """Tail regression and increment-average estimates of limsup (1/n) log a_n"""
    slope_regression: float
    slope_increment: float
    residual_variance: float
    tail_start: int
    tail_end: int
    label: str = ""

    @property
    def slope(self) -> float:
        return self.slope_regression

    @property
    def gap(self) -> float:
        return abs(self.slope_regression - self.slope_increment)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'label': self.label,
            'slope_regression': self.slope_regression,
            'slope_increment': self.slope_increment,
            'method_gap': self.gap,
            'residual_variance': self.residual_variance,
            'tail_window': [self.tail_start, self.tail_end],
        }


def estimate_growth_rate(series: GrowthSeries) -> GrowthEstimate:
    """Fit the last half of the samples both ways"""
    if len(series) < MIN_SAMPLES:
        raise ValueError(f"growth estimation needs at least {MIN_SAMPLES} samples, got {len(series)}")
    tail = series.samples[len(series) // 2:]
    ns = np.array([n for n, _ in tail], dtype=float)
    logs = np.array([v for _, v in tail], dtype=float)

    slope, intercept = np.polyfit(ns, logs, 1)
    residuals = logs - (slope * ns + intercept)
    increments = np.diff(logs) / np.diff(ns)

    estimate = GrowthEstimate(
        slope_regression=float(slope),
        slope_increment=float(np.mean(increments)),
        residual_variance=float(np.var(residuals)),
        tail_start=int(ns[0]),
        tail_end=int(ns[-1]),
        label=series.label,
    )
    logger.debug(f"Growth estimate {series.label}: regression {estimate.slope_regression:.6f}, "
                 f"increment {estimate.slope_increment:.6f}")
    return estimate


# -- series -------------------------------------------------------------------

def _check_n_max(n_max: int) -> None:
    if n_max < MIN_SAMPLES:
        raise ValueError(f"n_max must be at least {MIN_SAMPLES}")


def twist_mass_series(sigma: StabilityCondition, quiver: Quiver, N: int, i: int, t: float,
                      n_max: Optional[int] = None) -> GrowthSeries:
    """log m_{sigma,t}(Phi_i^n G) for n = 0..n_max with G the sum of the simples"""
    n_max = n_max if n_max is not None else get_settings().n_max
    _check_n_max(n_max)
    # Profiles reuse a handful of modules; their masses are computed once
    module_logs: Dict[Representation, float] = {}
    logs = []
    for n in range(n_max + 1):
        terms = []
        for j in range(quiver.n):
            for module, degree in twist_power_profile(quiver, N, i, n, j).profile.entries:
                if module not in module_logs:
                    module_logs[module] = log_mass(sigma, module, t)
                terms.append(module_logs[module] - degree * t)
        logs.append(float(np.logaddexp.reduce(terms)))
    label = f"mass {sigma.name or 'sigma'} T{i + 1} N={N} t={t:g}"
    return GrowthSeries.from_logs(logs, label)


def poincare_series(quiver: Quiver, N: int, i: int, t: float, n_max: Optional[int] = None) -> GrowthSeries:
    """log P_t(Phi_i^n G) from the closed forms"""
    n_max = n_max if n_max is not None else get_settings().n_max
    _check_n_max(n_max)
    logs = [
        poly_sum(closed_form_poincare(quiver, N, i, n, j) for j in range(quiver.n)).log_evaluate(t)
        for n in range(n_max + 1)
    ]
    return GrowthSeries.from_logs(logs, f"poincare T{i + 1} N={N} t={t:g}")


def upper_profile_series(quiver: Quiver, N: int, word: TwistWord, t: float,
                         n_max: Optional[int] = None) -> GrowthSeries:
    """log of the no-cancellation Poincare values of word^n applied to G"""
    n_max = n_max if n_max is not None else get_settings().n_max
    _check_n_max(n_max)
    orbit = word_power_orbit(quiver, N, word, GradedClass.generator(quiver.n), n_max)
    logs = [graded.poincare().log_evaluate(t) for graded in orbit]
    return GrowthSeries.from_logs(logs, f"upper {format_word(word) or 'id'} N={N} t={t:g}")


# -- closed forms -------------------------------------------------------------

def entropy_twist_power(N: int, t: float, quiver: Optional[Quiver] = None) -> float:
    """h_t(Phi_i) = max(0, (1 - N) t)"""
    if N < 3:
        raise ValueError(f"Calabi-Yau dimension must be >= 3, got {N}")
    if quiver is not None:
        if quiver.n == 1 and not quiver.arrows:
            raise ValueError("twist entropy formula needs a quiver other than one vertex without arrows")
        if not quiver.is_connected():
            raise ValueError("twist entropy formula needs a connected quiver")
    return max(0.0, (1 - N) * t)


def entropy_shift(m: int, t: float) -> float:
    """h_t([m]) = m t"""
    return m * t


def exact_entropy(quiver: Quiver, N: int, word: TwistWord, t: float) -> Optional[float]:
    """Closed-form entropy for a single twist or shift, None otherwise"""
    generator = word.single_generator()
    if generator is None:
        return None
    if generator.kind == SHIFT:
        return entropy_shift(generator.value, t)
    if generator.kind == TWIST:
        try:
            return entropy_twist_power(N, t, quiver)
        except ValueError:
            return None
    return None


# -- reports -----------------------------------------------------------------

@dataclass
class EntropyReport:
    """lower <= exact <= upper whenever the entries are present"""
    word: str
    t: float
    lower: Optional[float]
    exact: Optional[float]
    upper: float
    lower_log_rho: Optional[float] = None
    mass_estimate: Optional[GrowthEstimate] = None
    upper_estimate: Optional[GrowthEstimate] = None
    notes: List[str] = field(default_factory=list)

    def violations(self, tolerance: float) -> List[str]:
        found = []
        if self.lower is not None and self.lower > self.upper + tolerance:
            found.append(f"lower {self.lower:.6f} exceeds upper {self.upper:.6f}")
        if self.exact is not None:
            if self.lower is not None and self.lower > self.exact + tolerance:
                found.append(f"lower {self.lower:.6f} exceeds exact {self.exact:.6f}")
            if self.exact > self.upper + tolerance:
                found.append(f"exact {self.exact:.6f} exceeds upper {self.upper:.6f}")
        return found

    def to_dict(self) -> Dict[str, Any]:
        primary = self.mass_estimate or self.upper_estimate
        diagnostics: Dict[str, Any] = {'notes': list(self.notes), 'lower': self.lower}
        if self.mass_estimate is not None:
            diagnostics['mass_growth'] = self.mass_estimate.to_dict()
        if self.upper_estimate is not None:
            diagnostics['upper_series'] = self.upper_estimate.to_dict()
        return {
            'word': self.word,
            't': self.t,
            'slope_regression': primary.slope_regression if primary else None,
            'slope_increment': primary.slope_increment if primary else None,
            'lower_log_rho': self.lower_log_rho,
            'exact': self.exact,
            'upper_bound': self.upper,
            'diagnostics': diagnostics,
        }


def spectral_bound_report(quiver: Quiver, N: int, word: TwistWord,
                          sigma: Optional[StabilityCondition] = None,
                          n_max: Optional[int] = None, t: float = 0.0,
                          tolerance: Optional[float] = None) -> EntropyReport:
    """Sandwich log rho([w]) <= h_{sigma,t}(w) <= upper-profile slope.

    lower is log rho at t = 0; a single twist also gets the mass growth
    estimate of its orbit, which becomes the lower bound when t != 0.
    """
    settings = get_settings()
    n_max = n_max if n_max is not None else settings.n_max
    tolerance = tolerance if tolerance is not None else settings.sandwich_tolerance
    graded_hom_table(quiver, N)
    word.validate(quiver.n)
    notes: List[str] = []

    lower_log_rho = log_spectral_radius(twist_k_matrix(quiver, N, word)) if t == 0 else None

    mass_estimate = None
    generator = word.single_generator()
    if generator is not None and generator.kind == TWIST:
        sigma = sigma or StabilityCondition.standard(quiver.n)
        mass_estimate = estimate_growth_rate(twist_mass_series(sigma, quiver, N, generator.value, t, n_max))
    elif t != 0:
        notes.append("bounds-only: no mass-growth series for a general word")

    lower = lower_log_rho if t == 0 else (mass_estimate.slope if mass_estimate else None)
    upper_estimate = estimate_growth_rate(upper_profile_series(quiver, N, word, t, n_max))
    exact = exact_entropy(quiver, N, word, t)
    if exact is None:
        notes.append("no closed form for this word")

    report = EntropyReport(
        word=format_word(word),
        t=t,
        lower=lower,
        exact=exact,
        upper=upper_estimate.slope,
        lower_log_rho=lower_log_rho,
        mass_estimate=mass_estimate,
        upper_estimate=upper_estimate,
        notes=notes,
    )
    problems = report.violations(tolerance)
    if problems:
        logger.error(f"Entropy sandwich violated for '{report.word}' at t={t}: {problems}")
        raise PropertyViolation("; ".join(problems), counterexample=report.to_dict())
    logger.info(f"Entropy report '{report.word}' t={t:g}: lower={lower}, exact={exact}, upper={report.upper:.6f}")
    return report


# -- delta_t sandwich ----------------------------------------------------------

@dataclass(frozen=True)
class DeltaBounds:
    lower: float
    upper: float

    def as_tuple(self) -> Tuple[float, float]:
        return self.lower, self.upper


def generator_rep(quiver: Quiver, p: Optional[int] = None) -> Representation:
    """G = S_1 + ... + S_n"""
    total = simple_rep(quiver, 0, p)
    for i in range(1, quiver.n):
        total = direct_sum(total, simple_rep(quiver, i, total.p))
    return total


def delta_bounds(sigma: StabilityCondition, obj: Union[Representation, CohomologyProfile], t: float) -> DeltaBounds:
    """m_sigma(E) / m_sigma(G) <= delta_t(G, E) <= P_t(E)"""
    if isinstance(obj, Representation):
        if obj.is_zero():
            raise ValueError("delta bounds of the zero object")
        profile = CohomologyProfile.single(obj)
        quiver, p = obj.quiver, obj.p
    else:
        if not obj.entries or all(m.is_zero() for m, _ in obj.entries):
            raise ValueError("delta bounds of the zero object")
        profile = obj
        quiver, p = obj.entries[0][0].quiver, obj.entries[0][0].p
    lower = mass_of_complex(sigma, profile, t) / mass(sigma, generator_rep(quiver, p), t)
    upper = profile.poincare_polynomial().evaluate(t)
    return DeltaBounds(lower=lower, upper=upper)


# -- deformation invariance ----------------------------------------------------

def deformation_slopes(quiver: Quiver, N: int, i: int, t: float,
                       charges: Sequence[StabilityCondition], n_max: Optional[int] = None) -> List[float]:
    def slope_for(sigma: StabilityCondition) -> float:
        return estimate_growth_rate(twist_mass_series(sigma, quiver, N, i, t, n_max)).slope

    return ordered_map(slope_for, list(charges))


def deformation_invariance_check(quiver: Quiver, N: int, i: int, t: float,
                                 charges: Sequence[StabilityCondition], n_max: Optional[int] = None,
                                 tolerance: Optional[float] = None) -> bool:
    """All pairwise slope gaps of the twist mass growth below tolerance"""
    tolerance = tolerance if tolerance is not None else get_settings().growth_gap_tolerance
    if len(charges) < 2:
        return True
    slopes = deformation_slopes(quiver, N, i, t, charges, n_max)
    gap = max(slopes) - min(slopes)
    logger.info(f"Deformation check T{i + 1} t={t:g}: slopes {[round(s, 6) for s in slopes]}, gap {gap:.6f}")
    return gap < tolerance
