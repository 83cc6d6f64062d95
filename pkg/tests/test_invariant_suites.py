import pytest

from src.utils.errors import UnknownSuiteError
from src.validation.invariant_suites import SUITE_NAMES, InvariantSuiteRunner


@pytest.fixture
def runner():
    return InvariantSuiteRunner(seed=7, corpus_size=12, geometry_samples=2000, n_max=16, max_sequences=40)


def test_unknown_suite(runner):
    with pytest.raises(UnknownSuiteError, match="unknown suite 'bogus'"):
        runner.run("bogus")


def test_suite_names_cover_every_module(runner):
    assert set(runner.suites) == set(SUITE_NAMES)


def test_geometry_suite_passes_and_is_deterministic(runner):
    summary = runner.run("geometry")
    assert summary['passed'], summary['issues']
    assert summary['overall_score'] == 100.0
    assert summary['suites']['geometry']['passed']
    assert summary == InvariantSuiteRunner(seed=7, geometry_samples=2000).run("geometry")


def test_twist_suite_passes(runner):
    summary = runner.run("twist")
    assert summary['passed'], summary['issues']
    assert summary['counterexamples'] == []


def test_hn_and_polygon_suites_pass(runner):
    for name in ("hn", "polygon"):
        summary = runner.run(name)
        assert summary['passed'], summary['issues']
        assert len(summary['passed_checks']) == 12


def test_mass_triangle_suite_warns_on_small_corpus(runner):
    summary = runner.run("mass-triangle")
    assert summary['passed'], summary['issues']
    assert len(summary['warnings']) == 1
    assert summary['warnings'][0].startswith("only ")
