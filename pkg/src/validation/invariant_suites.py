"""
Invariant suites for Mass Growth Lab
Runs the property checks of every module and collects issues, passed checks
and counterexamples into a deterministic summary.
"""
import itertools
import math
from typing import Any, Callable, Dict, List, Optional

import numpy as np
import sympy
from loguru import logger

from src.algebra.quiver import a_n_quiver, cyn_euler_matrix, graded_hom_table, kronecker_quiver
from src.config.settings import get_settings
from src.geometry.charge_geometry import (
    Charge,
    compare_phase,
    g_t,
    gt_triangle_defect,
    left_hull,
    polygon_contains,
    right_of_path,
    slope_defect_function,
)
from src.growth.growth_analyzer import (
    delta_bounds,
    deformation_slopes,
    entropy_twist_power,
    estimate_growth_rate,
    spectral_bound_report,
    twist_mass_series,
)
from src.representations.representation import composition_series, restrict
from src.representations.subreps import short_exact_sequences, subrep_enumerate
from src.stability.corpus import build_corpus, standard_charge_family
from src.stability.hn_engine import (
    StabilityCondition,
    charge_of,
    hn_filtration,
    hn_polygon_oracle,
    heart_triangle_refinement,
    is_semistable,
    mass,
)
from src.twists.twist_calculus import (
    GradedClass,
    closed_form_poincare,
    k_class_consistency,
    poincare_recursion_check,
    twist_k_matrix,
    twist_power_profile,
    word_upper_profile,
)
from src.twists.words import TwistWord, inverse_twist, parse_word, shift, twist
from src.utils.errors import HNConsistencyError, PropertyViolation, UnknownSuiteError
from src.utils.parallel import ordered_map

SUITE_NAMES = ("geometry", "hn", "polygon", "mass-triangle", "twist", "growth")
T_GRID = (-1.0, 0.0, 1.0)
FLOAT_TOLERANCE = 1e-9

# Charges for the deformation check on A_2
DEFORMATION_CHARGES = [
    StabilityCondition.from_pairs([(0, 1), (0, 1)], name="sigma0"),
    StabilityCondition.from_pairs([(0, 1), (-1, 1)], name="z=(i,-1+i)"),
    StabilityCondition.from_pairs([(0, 2), (-3, 1)], name="z=(2i,-3+i)"),
    StabilityCondition.from_pairs([(1, 1), (0, 1)], name="z=(1+i,i)"),
    StabilityCondition.from_pairs([(-1, 2), (1, 3)], name="z=(-1+2i,1+3i)"),
]


def _result() -> Dict[str, List[Any]]:
    return {'issues': [], 'warnings': [], 'passed_checks': [], 'counterexamples': []}


class InvariantSuiteRunner:
    """Runs named invariant suites over seeded corpora"""

    def __init__(self, seed: Optional[int] = None, corpus_size: int = 200,
                 geometry_samples: int = 100_000, n_max: Optional[int] = None,
                 max_sequences: int = 1500):
        settings = get_settings()
        self.seed = seed if seed is not None else settings.seed
        self.corpus_size = corpus_size
        self.geometry_samples = geometry_samples
        self.n_max = n_max if n_max is not None else settings.n_max
        self.max_sequences = max_sequences
        self.tolerance = settings.float_tolerance
        self._corpus = None

        self.suites: Dict[str, Callable[[], Dict[str, List[Any]]]] = {
            "geometry": self._suite_geometry,
            "hn": self._suite_hn,
            "polygon": self._suite_polygon,
            "mass-triangle": self._suite_mass_triangle,
            "twist": self._suite_twist,
            "growth": self._suite_growth,
        }

    @property
    def corpus(self):
        if self._corpus is None:
            self._corpus = build_corpus(self.seed, self.corpus_size)
        return self._corpus

    def run(self, suite: str) -> Dict[str, Any]:
        """Run one suite or 'all'; the summary has no timestamps so reruns are identical"""
        if suite == "all":
            names = list(SUITE_NAMES)
        elif suite in self.suites:
            names = [suite]
        else:
            raise UnknownSuiteError(f"unknown suite '{suite}'; choose from {', '.join(SUITE_NAMES + ('all',))}")

        summary: Dict[str, Any] = {
            'suite': suite,
            'seed': self.seed,
            'issues': [],
            'warnings': [],
            'passed_checks': [],
            'counterexamples': [],
            'suites': {},
        }
        for name in names:
            logger.info(f"Running invariant suite '{name}'")
            try:
                result = self.suites[name]()
            except HNConsistencyError as e:
                result = _result()
                result['issues'].append(f"{name}: HN consistency failure: {e}")
            for key in ('issues', 'warnings', 'passed_checks', 'counterexamples'):
                summary[key].extend(result[key])
            summary['suites'][name] = {
                'passed': not result['issues'],
                'issues': len(result['issues']),
                'passed_checks': len(result['passed_checks']),
            }

        total = len(summary['passed_checks']) + len(summary['issues'])
        summary['overall_score'] = (len(summary['passed_checks']) / total) * 100 if total else 100.0
        summary['passed'] = not summary['issues']
        if summary['passed']:
            logger.info(f"Suite '{suite}' passed ({len(summary['passed_checks'])} checks)")
        else:
            logger.error(f"Suite '{suite}' failed with {len(summary['issues'])} issues")
        return summary

    # -- geometry ------------------------------------------------------------

    def _suite_geometry(self) -> Dict[str, List[Any]]:
        result = _result()
        rng = np.random.default_rng(self.seed)
        count = self.geometry_samples

        # g_t triangle inequality on random pairs
        r1, r2 = 2.0 * (1.0 - rng.random(count)), 2.0 * (1.0 - rng.random(count))
        p1, p2 = 1.0 - rng.random(count), 1.0 - rng.random(count)
        t = rng.uniform(-3.0, 3.0, count)
        z1 = r1 * np.exp(1j * np.pi * p1)
        z2 = r2 * np.exp(1j * np.pi * p2)
        gt_failures = 0
        for k in range(count):
            a, b, t_value = Charge.from_complex(z1[k]), Charge.from_complex(z2[k]), float(t[k])
            defect = gt_triangle_defect(a, b, t_value)
            if defect < -1e-12 * max(1.0, g_t(a, t_value) + g_t(b, t_value)):
                gt_failures += 1
                if gt_failures == 1:
                    result['counterexamples'].append({
                        'check': 'gt_triangle', 'z1': a.to_pair(), 'z2': b.to_pair(), 't': t_value, 'defect': defect,
                    })
        if gt_failures:
            result['issues'].append(f"g_t triangle inequality failed on {gt_failures} of {count} samples")
        else:
            result['passed_checks'].append(f"g_t triangle inequality on {count} samples")

        # f(x) increasing on both intervals, limit t/pi at 0
        grid_left = np.linspace(-1 + 1e-3, -1e-3, 1000)
        grid_right = np.linspace(1e-3, 1 - 1e-3, 1000)
        f_failures = 0
        for t_value in (-2.0, -1.0, 0.0, 1.0, 2.0):
            for grid in (grid_left, grid_right):
                values = [slope_defect_function(float(x), t_value) for x in grid]
                drops = [k for k in range(len(values) - 1)
                         if values[k + 1] < values[k] - 1e-12 * max(1.0, abs(values[k]))]
                if drops:
                    f_failures += 1
                    result['issues'].append(f"slope defect function decreases at t={t_value}")
                    result['counterexamples'].append({'check': 'f_monotone', 't': t_value, 'x': float(grid[drops[0]])})
            for x in (1e-6, -1e-6):
                if abs(slope_defect_function(x, t_value) - t_value / math.pi) >= 1e-4:
                    f_failures += 1
                    result['issues'].append(f"f({x}) does not approach t/pi at t={t_value}")
        if not f_failures:
            result['passed_checks'].append("slope defect function monotone with limit t/pi")

        # left hull shape on random exact point sets
        hull_failures = 0
        for _ in range(200):
            total = Charge(int(rng.integers(-6, 7)), int(rng.integers(1, 8)))
            points = {Charge(0, 0), total}
            for _ in range(int(rng.integers(1, 8))):
                candidate = Charge(int(rng.integers(-6, 7)), int(rng.integers(0, 8)))
                rest = total - candidate
                if (candidate.im > 0 or (candidate.im == 0 and candidate.re < 0)) and \
                        (rest.im > 0 or (rest.im == 0 and rest.re < 0)):
                    points.add(candidate)
            polygon = left_hull(points, total)
            edges = polygon.edges()
            decreasing = all(compare_phase(a, b) > 0 for a, b in zip(edges, edges[1:]))
            bounded = all(right_of_path(polygon, p) for p in points)
            if not (decreasing and bounded):
                hull_failures += 1
                if hull_failures == 1:
                    result['counterexamples'].append({
                        'check': 'left_hull', 'total': total.to_pair(), 'points': sorted(p.to_pair() for p in points),
                    })
        if hull_failures:
            result['issues'].append(f"left hull shape failed on {hull_failures} point sets")
        else:
            result['passed_checks'].append("left hull edges decrease and bound every point")
        return result

    # -- HN filtrations ----------------------------------------------------------

    def _hn_checks_for(self, rep) -> Dict[str, List[Any]]:
        result = _result()
        family = standard_charge_family(rep.quiver.n)
        sigma0 = family[0]
        for sigma in family:
            hn = hn_filtration(sigma, rep)
            total = charge_of(sigma, rep.dims)
            telescoped = Charge(0, 0)
            for c in hn.charges:
                telescoped = telescoped + c
            if telescoped != total:
                result['issues'].append(f"HN charges of {rep.describe()} do not sum to Z(E) under {sigma.name}")
            if not all(is_semistable(sigma, factor) for factor in hn.factors):
                result['issues'].append(f"non-semistable HN factor of {rep.describe()} under {sigma.name}")
                result['counterexamples'].append({'check': 'hn_factor', 'rep': list(rep.dims), 'sigma': sigma.to_dict()})
            if abs(total) > mass(sigma, rep, 0.0) + FLOAT_TOLERANCE:
                result['issues'].append(f"|Z(E)| exceeds the mass of {rep.describe()} under {sigma.name}")
            for t in T_GRID:
                bounds = delta_bounds(sigma, rep, t)
                if bounds.lower > bounds.upper + FLOAT_TOLERANCE:
                    result['issues'].append(f"delta bounds crossed for {rep.describe()} at t={t}")
                    result['counterexamples'].append({'check': 'delta_bounds', 'rep': list(rep.dims), 't': t,
                                                      'lower': bounds.lower, 'upper': bounds.upper})
        for t in T_GRID:
            expected = rep.total_dim * math.exp(t / 2)
            if abs(mass(sigma0, rep, t) - expected) > 1e-12 * expected:
                result['issues'].append(f"sigma0 mass of {rep.describe()} differs from dim e^(t/2) at t={t}")
        if composition_series(rep).length != rep.total_dim:
            result['issues'].append(f"composition series length of {rep.describe()} is not its dimension")
        if not result['issues']:
            result['passed_checks'].append(f"HN invariants for {rep.describe()}")
        return result

    def _suite_hn(self) -> Dict[str, List[Any]]:
        return self._merge(ordered_map(self._hn_checks_for, self.corpus))

    # -- polygons ------------------------------------------------------------------

    def _polygon_checks_for(self, rep) -> Dict[str, List[Any]]:
        result = _result()
        subs = subrep_enumerate(rep)
        for sigma in standard_charge_family(rep.quiver.n):
            polygon, agreement = hn_polygon_oracle(sigma, rep)
            if not agreement:
                result['issues'].append(f"HN polygon disagrees with HN steps for {rep.describe()} under {sigma.name}")
                result['counterexamples'].append({
                    'check': 'polygon_oracle', 'rep': list(rep.dims), 'sigma': sigma.to_dict(),
                    'hull': [p.to_pair() for p in polygon.extremal_points],
                })
                continue
            points = sorted({charge_of(sigma, s.dim_vector) for s in subs}, key=lambda c: (c.re, c.im))
            if not all(polygon_contains(polygon, p) for p in points):
                result['issues'].append(f"a subobject charge lies outside the HN polygon of {rep.describe()}")
            # Dropping points can only shrink the polygon
            kept = {p for index, p in enumerate(points) if index % 2 == 0} | {Charge(0, 0), polygon.total}
            smaller = left_hull(kept, polygon.total)
            if not all(polygon_contains(polygon, p) for p in smaller.extremal_points):
                result['issues'].append(f"polygon monotonicity failed for {rep.describe()} under {sigma.name}")
        if not result['issues']:
            result['passed_checks'].append(f"polygon oracle for {rep.describe()}")
        return result

    def _suite_polygon(self) -> Dict[str, List[Any]]:
        return self._merge(ordered_map(self._polygon_checks_for, self.corpus))

    # -- mass triangle inequality -----------------------------------------------

    def _suite_mass_triangle(self) -> Dict[str, List[Any]]:
        result = _result()
        sequences = list(itertools.islice(
            (ses for rep in self.corpus for ses in short_exact_sequences(rep)), self.max_sequences
        ))
        violations = 0
        refined = 0
        for index, ses in enumerate(sequences):
            family = standard_charge_family(ses.total.quiver.n)
            sigma = family[index % len(family)]
            sub = restrict(ses.total, ses.sub)
            for t in T_GRID:
                lhs = mass(sigma, ses.total, t)
                rhs = mass(sigma, sub, t) + mass(sigma, ses.quotient, t)
                if lhs > rhs + FLOAT_TOLERANCE:
                    violations += 1
                    result['counterexamples'].append({
                        'check': 'mass_triangle', 'total': list(ses.total.dims), 'sub': list(ses.sub.dim_vector),
                        'sigma': sigma.to_dict(), 't': t, 'lhs': lhs, 'rhs': rhs,
                    })
            # Engineered phase-1 quotients: the sink simple sits on the negative real axis
            phase_one = family[-1]
            for t in T_GRID:
                refinement = heart_triangle_refinement(phase_one, ses, t)
                if not refinement.quotient_in_phase_one:
                    break
                refined += 1
                if not refinement.holds:
                    violations += 1
                    result['counterexamples'].append({
                        'check': 'heart_refinement', 'total': list(ses.total.dims), 'sub': list(ses.sub.dim_vector),
                        't': t, 'lhs': refinement.lhs, 'rhs': refinement.rhs,
                    })
        if violations:
            result['issues'].append(f"mass triangle inequality failed {violations} times")
        else:
            result['passed_checks'].append(f"mass triangle inequality on {len(sequences)} short exact sequences")
            result['passed_checks'].append(f"heart refinement on {refined} phase-one cases")
        if len(sequences) < 1000:
            result['warnings'].append(f"only {len(sequences)} short exact sequences available")
        return result

    # -- twist calculus --------------------------------------------------------------

    def _suite_twist(self) -> Dict[str, List[Any]]:
        result = _result()
        quivers = [a_n_quiver(2), a_n_quiver(3), kronecker_quiver(3)]
        rng = np.random.default_rng(self.seed)

        for quiver in quivers:
            for N in (3, 4):
                table = graded_hom_table(quiver, N)
                if not table.is_cy_symmetric():
                    result['issues'].append(f"hom table of {quiver.label()} not CY-{N} symmetric")
                chi = cyn_euler_matrix(quiver, N)
                symmetric = np.array_equal(chi, chi.T) if N % 2 == 0 else np.array_equal(chi, -chi.T)
                if not symmetric:
                    result['issues'].append(f"Euler matrix of {quiver.label()} has the wrong symmetry for N={N}")

                mismatches = [
                    (i, j, k)
                    for i in range(quiver.n) for j in range(quiver.n) for k in range(51)
                    if not poincare_recursion_check(quiver, N, i, k, j)
                ]
                if mismatches:
                    i, j, k = mismatches[0]
                    result['issues'].append(f"closed form mismatch on {quiver.label()} N={N}")
                    result['counterexamples'].append({'check': 'poincare', 'quiver': quiver.label(), 'N': N,
                                                      'i': i + 1, 'j': j + 1, 'k': k})

                for i in range(quiver.n):
                    product = twist_k_matrix(quiver, N, TwistWord((twist(i), inverse_twist(i))))
                    if not np.array_equal(product.astype(np.int64), np.eye(quiver.n, dtype=np.int64)):
                        result['issues'].append(f"T{i + 1} T{i + 1}' is not the identity on {quiver.label()} N={N}")
                    if N % 2 == 1:
                        det = sympy.Matrix(twist_k_matrix(quiver, N, TwistWord((twist(i),))).tolist()).det()
                        if det != 1:
                            result['issues'].append(f"T{i + 1} is not a transvection on {quiver.label()} N={N}")
                    for j in range(quiver.n):
                        single = word_upper_profile(quiver, N, TwistWord((twist(i),)), GradedClass.simple(quiver.n, j))
                        if single.poincare() != twist_power_profile(quiver, N, i, 1, j).poincare:
                            result['issues'].append(f"single twist upper profile is not exact for T{i + 1} S{j + 1}")
                        for k in range(1, 11):
                            bound = word_upper_profile(quiver, N, TwistWord((twist(i),) * k),
                                                       GradedClass.simple(quiver.n, j)).poincare()
                            exact = closed_form_poincare(quiver, N, i, k, j)
                            if any(bound.evaluate(t) < exact.evaluate(t) * (1 - FLOAT_TOLERANCE) for t in T_GRID):
                                result['issues'].append(f"upper profile below exact value for T{i + 1}^{k} S{j + 1}")

                generators = [twist(v) for v in range(quiver.n)] + \
                             [inverse_twist(v) for v in range(quiver.n)] + [shift(1), shift(-2)]
                for _ in range(20):
                    w1 = TwistWord(tuple(generators[int(g)] for g in rng.integers(0, len(generators), int(rng.integers(0, 5)))))
                    w2 = TwistWord(tuple(generators[int(g)] for g in rng.integers(0, len(generators), int(rng.integers(0, 5)))))
                    joined = TwistWord(w1.generators + w2.generators)
                    if not np.array_equal(twist_k_matrix(quiver, N, joined),
                                          twist_k_matrix(quiver, N, w1).dot(twist_k_matrix(quiver, N, w2))):
                        result['issues'].append(f"K-matrix not multiplicative for '{joined}'")
                    for j in range(quiver.n):
                        if not k_class_consistency(quiver, N, joined, j):
                            result['issues'].append(f"K-class mismatch for '{joined}' on S{j + 1}")
                            result['counterexamples'].append({'check': 'k_class', 'quiver': quiver.label(), 'N': N,
                                                              'word': str(joined), 'j': j + 1})

        if not result['issues']:
            result['passed_checks'].append("twist calculus closed forms, K-theory and upper bounds")
        return result

    # -- growth --------------------------------------------------------------------

    def _suite_growth(self) -> Dict[str, List[Any]]:
        result = _result()
        settings = get_settings()
        quiver = a_n_quiver(2)
        N = 3
        n_max = self.n_max

        for sigma in DEFORMATION_CHARGES[:2]:
            for t in T_GRID:
                estimate = estimate_growth_rate(twist_mass_series(sigma, quiver, N, 0, t, n_max))
                exact = entropy_twist_power(N, t, quiver)
                if abs(estimate.slope - exact) >= settings.sandwich_tolerance:
                    result['issues'].append(f"twist entropy {estimate.slope:.6f} vs {exact} under {sigma.name} at t={t}")
                    result['counterexamples'].append({'check': 'twist_entropy', 'sigma': sigma.to_dict(), 't': t,
                                                      'estimate': estimate.to_dict(), 'exact': exact})
                if estimate.gap >= 0.01:
                    result['issues'].append(f"estimators disagree by {estimate.gap:.6f} under {sigma.name} at t={t}")
                if t >= 0 and sigma.name == "sigma0" and abs(estimate.slope - exact) > math.log(n_max + 2) / n_max:
                    result['issues'].append(f"sigma0 slope error above log(n+2)/n at t={t}")

        for t in T_GRID:
            slopes = deformation_slopes(quiver, N, 0, t, DEFORMATION_CHARGES, n_max)
            if max(slopes) - min(slopes) >= settings.growth_gap_tolerance:
                result['issues'].append(f"mass growth depends on the charge at t={t}: {slopes}")
                result['counterexamples'].append({'check': 'deformation', 't': t, 'slopes': slopes})

        kronecker = kronecker_quiver(3)
        try:
            report = spectral_bound_report(kronecker, 3, parse_word("T1 T2"), n_max=min(n_max, 60))
            single = spectral_bound_report(quiver, N, parse_word("T1"), n_max=min(n_max, 60))
        except PropertyViolation as e:
            result['issues'].append(f"entropy sandwich violated: {e}")
            result['counterexamples'].append({'check': 'sandwich', **e.counterexample})
            return result
        expected = math.log((7 + math.sqrt(45)) / 2)
        if report.lower_log_rho is None or abs(report.lower_log_rho - expected) > 1e-9:
            result['issues'].append(f"log spectral radius of T1 T2 on K3 is {report.lower_log_rho}, expected {expected}")
        if single.lower_log_rho is None or abs(single.lower_log_rho - single.exact) > 1e-9:
            result['issues'].append("log spectral radius of a single twist differs from its entropy at t=0")

        if not result['issues']:
            result['passed_checks'].append("twist entropy reproduction and estimator agreement")
            result['passed_checks'].append("deformation invariance of mass growth")
            result['passed_checks'].append("spectral lower bounds below the upper profile slope")
        return result

    @staticmethod
    def _merge(results: List[Dict[str, List[Any]]]) -> Dict[str, List[Any]]:
        merged = _result()
        for r in results:
            for key in merged:
                merged[key].extend(r[key])
        return merged


invariant_suite_runner = InvariantSuiteRunner()
