#!/usr/bin/env python3
"""
Mass Growth Lab - Main Application
Stability masses, HN filtrations and growth of spherical twists on CY-N quiver categories
"""

import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from dotenv import load_dotenv

# Add src to path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from src.config.run_config import RunConfig, load_run_config
from src.config.settings import get_settings
from src.geometry.svg import write_polygon_svg
from src.growth.growth_analyzer import (
    GrowthSeries,
    delta_bounds,
    spectral_bound_report,
    twist_mass_series,
    upper_profile_series,
)
from src.growth.reports import dumps_report, write_report_json, write_series_csv
from src.growth.spectral import characteristic_polynomial, log_spectral_radius, spectral_radius
from src.representations.representation import rep_to_dict
from src.stability.corpus import build_corpus, standard_charge_family
from src.stability.hn_engine import (
    hn_filtration,
    hn_polygon_oracle,
    log_mass,
    mass,
    phase_range,
    subobject_charges,
)
from src.twists.twist_calculus import (
    GradedClass,
    matrix_to_int,
    twist_k_matrix,
    twist_profiles_table,
    word_power_orbit,
)
from src.twists.words import TWIST, format_word
from src.utils.errors import EXIT_OK, EXIT_PROPERTY_VIOLATION, ConfigValidationError, ErrorClassifier
from src.utils.logger import get_logger, setup_logging
from src.validation.invariant_suites import SUITE_NAMES, InvariantSuiteRunner, invariant_suite_runner

# Load environment variables
load_dotenv()

COMMANDS = ("hn", "mass", "polygon", "growth", "spectral", "twist-orbit", "check")
TWIST_ORBIT_DEFAULT_NMAX = 20
BOUNDS_ONLY_NOTICE = "bounds-only: exact mass growth is only computed for a single twist; reporting bounds"

Report = Dict[str, Any]


def parse_t_list(text: str) -> List[float]:
    try:
        values = [float(part) for part in text.replace(" ", "").split(",") if part]
    except ValueError:
        raise ConfigValidationError(f"--t expects a comma-separated list of numbers, got '{text}'")
    if not values:
        raise ConfigValidationError("--t must name at least one value")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mass-growth-lab",
        description="Stability masses, HN filtrations and twist growth on CY-N quiver categories",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("suite", nargs="?", help="suite name for 'check': " + ", ".join(SUITE_NAMES + ("all",)))
    parser.add_argument("--config", help="JSON run config")
    parser.add_argument("--t", dest="t_grid", help='comma-separated t values, e.g. "-1,0,1"')
    parser.add_argument("--nmax", type=int, help="largest power in growth series")
    parser.add_argument("--seed", type=int, help="seed for random representations and corpora")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--svg", action="store_true", help="also write HN polygons as SVG")
    return parser


class MassGrowthApp:
    """Runs one command and writes its artifacts"""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.logger = get_logger("MassGrowthLab")
        self._config: Optional[RunConfig] = None

    # -- inputs ------------------------------------------------------------------

    @property
    def config(self) -> RunConfig:
        if self._config is None:
            if not self.args.config:
                raise ConfigValidationError(f"'{self.args.command}' needs --config")
            overrides = {
                't_grid': parse_t_list(self.args.t_grid) if self.args.t_grid else None,
                'n_max': self.args.nmax,
                'seed': self.args.seed,
            }
            self._config = load_run_config(self.args.config, overrides)
        return self._config

    @property
    def output_dir(self) -> Path:
        if self._config is not None:
            return self._config.output_directory(self.args.out)
        return Path(self.args.out or get_settings().output_directory)

    def _emit(self, report: Report, name: str) -> None:
        write_report_json(report, self.output_dir / name)
        sys.stdout.write(dumps_report(report))

    # -- commands ------------------------------------------------------------------

    def run(self) -> int:
        handler = {
            "hn": self.cmd_hn,
            "mass": self.cmd_mass,
            "polygon": self.cmd_polygon,
            "growth": self.cmd_growth,
            "spectral": self.cmd_spectral,
            "twist-orbit": self.cmd_twist_orbit,
            "check": self.cmd_check,
        }[self.args.command]
        self.logger.info(f"Running command '{self.args.command}'")
        return handler()

    def cmd_hn(self) -> int:
        config = self.config
        rep = config.build_representation()
        sigma = config.stability_condition()
        report: Report = {
            'command': 'hn',
            'quiver': config.quiver.label(),
            'representation': rep_to_dict(rep),
            'stability': sigma.to_dict(),
        }
        if rep.is_zero():
            report['hn'] = {'steps': [], 'factor_dims': [], 'phases': []}
            report['masses'] = [{'t': t, 'mass': 0.0} for t in config.t_grid]
        else:
            hn = hn_filtration(sigma, rep, config.cap)
            report['hn'] = hn.to_dict(config.t_grid[0])
            report['masses'] = [{'t': t, 'mass': hn.mass(t), 'log_mass': hn.log_mass(t)} for t in config.t_grid]
            if self.args.svg:
                polygon, _ = hn_polygon_oracle(sigma, rep, config.cap)
                write_polygon_svg(self.output_dir / config.output.svg, polygon,
                                  subobject_charges(sigma, rep, config.cap))
        self._emit(report, config.output.json_report)
        return EXIT_OK

    def cmd_mass(self) -> int:
        config = self.config
        rep = config.build_representation()
        rows = []
        for sigma in config.stability_conditions():
            for t in config.t_grid:
                row: Report = {'stability': sigma.name, 't': t, 'mass': mass(sigma, rep, t, config.cap)}
                if not rep.is_zero():
                    phase_max, phase_min = phase_range(sigma, rep, config.cap)
                    bounds = delta_bounds(sigma, rep, t)
                    row.update({
                        'log_mass': log_mass(sigma, rep, t, config.cap),
                        'phase_max': float(phase_max),
                        'phase_min': float(phase_min),
                        'delta_lower': bounds.lower,
                        'delta_upper': bounds.upper,
                    })
                rows.append(row)
        report = {'command': 'mass', 'quiver': config.quiver.label(), 'representation': rep_to_dict(rep), 'rows': rows}
        self._emit(report, config.output.json_report)
        return EXIT_OK

    def cmd_polygon(self) -> int:
        config = self.config
        if config.representation is not None:
            rep = config.build_representation()
            sigma = config.stability_condition()
            polygon, agreement = hn_polygon_oracle(sigma, rep, config.cap)
            svg_path = write_polygon_svg(self.output_dir / config.output.svg, polygon,
                                         subobject_charges(sigma, rep, config.cap))
            report: Report = {
                'command': 'polygon',
                'representation': rep_to_dict(rep),
                'stability': sigma.to_dict(),
                'extremal_points': [[str(p.re), str(p.im)] for p in polygon.extremal_points],
                'agreement': agreement,
                'svg': svg_path.name if svg_path else None,
            }
            self._emit(report, config.output.json_report)
            return EXIT_OK if agreement else EXIT_PROPERTY_VIOLATION

        corpus = build_corpus(config.seed, quivers=[config.quiver], p=config.field)
        checked = 0
        failures = []
        for rep in corpus:
            for sigma in standard_charge_family(config.n):
                checked += 1
                polygon, agreement = hn_polygon_oracle(sigma, rep, config.cap)
                if not agreement:
                    failures.append({'representation': rep_to_dict(rep), 'stability': sigma.to_dict()})
        report = {
            'command': 'polygon',
            'quiver': config.quiver.label(),
            'checked': checked,
            'agreement_rate': (checked - len(failures)) / checked if checked else 1.0,
            'counterexamples': failures,
        }
        self._emit(report, config.output.json_report)
        return EXIT_OK if not failures else EXIT_PROPERTY_VIOLATION

    def _series_name(self, stem_name: str, t: float) -> str:
        stem = Path(stem_name)
        if len(self.config.t_grid) == 1:
            return stem_name
        return f"{stem.stem}_t{t:g}{stem.suffix}"

    def cmd_growth(self) -> int:
        config = self.config
        word = config.twist_word()
        sigma = config.stability_condition()
        generator = word.single_generator()
        exact_mode = generator is not None and generator.kind == TWIST
        if not exact_mode:
            self.logger.warning(BOUNDS_ONLY_NOTICE)
            sys.stderr.write(BOUNDS_ONLY_NOTICE + "\n")

        rows = []
        for t in config.t_grid:
            entropy = spectral_bound_report(config.quiver, config.cy_dimension, word, sigma, config.n_max, t)
            rows.append(entropy.to_dict())
            if exact_mode:
                series: GrowthSeries = twist_mass_series(sigma, config.quiver, config.cy_dimension,
                                                         generator.value, t, config.n_max)
            else:
                series = upper_profile_series(config.quiver, config.cy_dimension, word, t, config.n_max)
            write_series_csv(series, self.output_dir / self._series_name(config.output.csv, t))

        report = {
            'command': 'growth',
            'quiver': config.quiver.label(),
            'N': config.cy_dimension,
            'word': format_word(word),
            'mode': 'exact' if exact_mode else 'bounds-only',
            'stability': sigma.to_dict(),
            'rows': rows,
        }
        self._emit(report, config.output.json_report)
        return EXIT_OK

    def cmd_spectral(self) -> int:
        config = self.config
        word = config.twist_word()
        matrix = twist_k_matrix(config.quiver, config.cy_dimension, word)
        report = {
            'command': 'spectral',
            'quiver': config.quiver.label(),
            'N': config.cy_dimension,
            'word': format_word(word),
            'k_matrix': matrix_to_int(matrix),
            'characteristic_polynomial': characteristic_polynomial(matrix),
            'spectral_radius': spectral_radius(matrix),
            'log_spectral_radius': log_spectral_radius(matrix),
        }
        self._emit(report, config.output.json_report)
        return EXIT_OK

    def cmd_twist_orbit(self) -> int:
        config = self.config
        word = config.twist_word()
        n_max = config.n_max if config.n_max is not None else TWIST_ORBIT_DEFAULT_NMAX
        orbit = word_power_orbit(config.quiver, config.cy_dimension, word, GradedClass.generator(config.n), n_max)
        report: Report = {
            'command': 'twist-orbit',
            'quiver': config.quiver.label(),
            'N': config.cy_dimension,
            'word': format_word(word),
            'orbit': [
                {'n': n, 'upper_profile': graded.to_dict(), 'k_class': list(graded.k_class())}
                for n, graded in enumerate(orbit)
            ],
        }
        generator = word.single_generator()
        if generator is not None and generator.kind == TWIST:
            profiles = twist_profiles_table(config.quiver, config.cy_dimension, range(n_max + 1))
            report['exact_profiles'] = [p.to_dict() for p in profiles if p.i == generator.value]
        self._emit(report, config.output.json_report)
        return EXIT_OK

    def cmd_check(self) -> int:
        suite = self.args.suite
        if not suite:
            raise ConfigValidationError("'check' needs a suite name: " + ", ".join(SUITE_NAMES + ("all",)))
        if self.args.seed is not None or self.args.nmax is not None:
            runner = InvariantSuiteRunner(seed=self.args.seed, n_max=self.args.nmax)
        else:
            runner = invariant_suite_runner
        result = runner.run(suite)
        self._emit(result, f"check_{suite}.json")
        return EXIT_OK if result['passed'] else EXIT_PROPERTY_VIOLATION


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point; returns the process exit code"""
    setup_logging()
    logger = get_logger("Main")

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        return MassGrowthApp(args).run()
    except Exception as e:
        info = ErrorClassifier.classify_error(e, {'command': args.command})
        logger.error(f"{args.command} failed: {info.message}")
        sys.stderr.write(dumps_report(info.to_dict()))
        return info.exit_code


if __name__ == "__main__":
    sys.exit(main())
