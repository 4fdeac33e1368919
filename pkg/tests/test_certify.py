"""Tests for the randomized certification campaign."""

import numpy as np
import pytest

from src.phinmod.admissibility import is_admissible
from src.phinmod.catalog import FamilyId
from src.phinmod.certify import (
    CATALOG_SOUNDNESS,
    COMMUTANTS,
    RANDOM_MODULES,
    ROUND_TRIPS,
    CertifyConfig,
    certify,
    check_catalog_soundness,
    check_commutants,
    random_module,
)
from src.phinmod.families import CATALOG
from src.phinmod.module import HodgeType, validate_module


def small_config(**changes):
    settings = dict(hodge=HodgeType(1, 2), samples=4, seed=7, oracle_samples=10)
    settings.update(changes)
    return CertifyConfig(**settings)


def test_empty_campaign_passes():
    """Test that zero samples runs nothing and passes."""
    report = certify(small_config(samples=0))
    assert report.passed
    assert report.checks == {}
    assert report.to_json()["config"]["round_trips"] == 0
    assert "empty campaign" in report.summary()


def test_trip_count_default():
    """Test the default number of round trips."""
    assert small_config(samples=40).trip_count == 10
    assert small_config(samples=2).trip_count == 1
    assert small_config(samples=40, round_trips=3).trip_count == 3


def test_random_modules_are_valid(field):
    """Test that the generator produces valid modules with the right totals."""
    hodge = HodgeType(1, 2)
    for i in range(10):
        m = random_module(hodge, field, np.random.default_rng([3, i]))
        assert validate_module(m) == []
        assert is_admissible(m).newton_total == hodge.total


@pytest.fixture(scope="module")
def baseline():
    return certify(small_config())


def test_campaign_passes(baseline):
    """Test a small campaign against the shipped catalog."""
    assert baseline.passed, baseline.counterexample
    assert set(baseline.checks) == {RANDOM_MODULES, ROUND_TRIPS, COMMUTANTS, CATALOG_SOUNDNESS}
    assert baseline.checks[RANDOM_MODULES].passed == 4
    assert baseline.checks[COMMUTANTS].passed == 12


@pytest.mark.parametrize("workers", [1, 2])
def test_report_is_deterministic(baseline, workers):
    """Test that the report depends only on the seed, not on the worker count."""
    assert certify(small_config(workers=workers)).to_json() == baseline.to_json()


def test_commutant_checks_pass(field):
    """Test the lemma checks for every shape."""
    outcomes = check_commutants(small_config())
    assert len(outcomes) == 12
    assert all(o.failure is None for o in outcomes)


class TestFaultInjection:

    @pytest.fixture
    def broken_catalog(self):
        """Cris14 without its valuation constraint admits destabilized patterns."""
        return CATALOG.replace(FamilyId.CRIS14, constraints=())

    def test_soundness_check_detects(self, broken_catalog):
        """Test that the catalog check rejects the corrupted family."""
        outcomes = check_catalog_soundness(small_config(), broken_catalog)
        failures = [o.failure for o in outcomes if o.failure is not None]
        assert failures
        assert any("Cris14" in f for f in failures)

    def test_campaign_reports_counterexample(self, broken_catalog):
        """Test that a failing campaign carries a counterexample module."""
        report = certify(small_config(samples=1), broken_catalog)
        assert not report.passed
        assert report.checks[CATALOG_SOUNDNESS].failed > 0
        doc = report.to_json()
        assert doc["passed"] is False
        assert "module" in doc["counterexample"]
        assert "FAIL" in report.summary()
