"""Randomized certification campaign.

Every decision procedure is cross-checked against an independent oracle:

- admissibility: random modules in random bases are compared with sampled
  stable subspaces, and inadmissible verdicts must carry a real witness;
- classification: admissible random modules must classify, and random
  family instances carried through a basis change must classify back to
  an equivalent instance;
- commutants: the brute-force commutant of every standard shape must
  match its lemma;
- catalog: representatives of satisfiable instances must be admissible
  and classify back to their own family.

Sample ``i`` of a check draws from ``default_rng([seed, check, i])`` so a
report depends only on the configuration, never on worker scheduling.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .admissibility import is_admissible, oracle_violations, witness_is_concrete
from .catalog import Catalog, CatalogEntry, FamilyInstance, NEWTON_WEIGHTS, eigen_violations, valuation_solutions
from .classifier import classify
from .codec import module_to_json
from .equivalence import param_equivalent
from .error_handler import PhinModError
from .families import CATALOG
from .iso import commutant_shape_check
from .linalg import Matrix, echelon_basis
from .logger import logger
from .module import (
    DIM, Filtration, HodgeType, JordanHint, PhiNModule, ShapeId, standard_monodromy, standard_phi,
)
from .valued_field import FieldElement, FieldSpec, make_field

SHAPES_BY_RANK: Dict[int, List[ShapeId]] = {
    rank: [s for s in ShapeId if s.n_rank == rank] for rank in (0, 1, 2)
}

# check identifiers, also the second seed component
RANDOM_MODULES = "random_modules"
ROUND_TRIPS = "round_trips"
COMMUTANTS = "commutants"
CATALOG_SOUNDNESS = "catalog_soundness"
_CHECK_SEEDS = {RANDOM_MODULES: 1, ROUND_TRIPS: 2, COMMUTANTS: 3, CATALOG_SOUNDNESS: 4}


@dataclass(frozen=True)
class CertifyConfig:
    """Parameters of one campaign.

    Attributes:
        hodge: Hodge type under test
        samples: Number of random modules; 0 runs an empty campaign
        seed: Base seed
        prime: Residue characteristic of the model field
        ramification: Ramification index of the model field
        workers: Thread count for sample evaluation
        oracle_samples: Stable subspaces sampled per admissible module
        round_trips: Number of classify round trips (default samples // 4)
    """

    hodge: HodgeType
    samples: int
    seed: int
    prime: int = 2
    ramification: int = 6
    workers: int = 1
    oracle_samples: int = 200
    round_trips: Optional[int] = None

    @property
    def field(self) -> FieldSpec:
        return make_field(self.prime, self.ramification)

    @property
    def trip_count(self) -> int:
        if self.round_trips is not None:
            return self.round_trips
        return max(1, self.samples // 4) if self.samples else 0

    def to_json(self) -> dict:
        return {
            "hodge": self.hodge.to_json(),
            "samples": self.samples,
            "seed": self.seed,
            "field": {"prime": self.prime, "ramification": self.ramification},
            "oracle_samples": self.oracle_samples,
            "round_trips": self.trip_count,
        }


@dataclass(frozen=True)
class SampleOutcome:
    """Result of one sample: None on success, otherwise a failure."""

    failure: Optional[str] = None
    module: Optional[PhiNModule] = None


@dataclass
class CheckTally:
    passed: int = 0
    failed: int = 0

    def to_json(self) -> dict:
        return {"passed": self.passed, "failed": self.failed}


@dataclass
class CertifyReport:
    """Pass/fail counts per check and the first counterexample found."""

    config: CertifyConfig
    checks: Dict[str, CheckTally] = dataclass_field(default_factory=dict)
    counterexample: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return all(t.failed == 0 for t in self.checks.values())

    def record(self, check: str, outcome: SampleOutcome) -> None:
        tally = self.checks.setdefault(check, CheckTally())
        if outcome.failure is None:
            tally.passed += 1
            return
        tally.failed += 1
        if self.counterexample is None:
            self.counterexample = {"check": check, "failure": outcome.failure}
            if outcome.module is not None:
                self.counterexample["module"] = module_to_json(outcome.module)

    def summary(self) -> str:
        parts = [f"{name}: {t.passed} passed, {t.failed} failed" for name, t in self.checks.items()]
        status = "PASS" if self.passed else "FAIL"
        return f"certify r={self.config.hodge.r} s={self.config.hodge.s} {status}" + (
            "; " + "; ".join(parts) if parts else " (empty campaign)"
        )

    def to_json(self) -> dict:
        doc = {
            "config": self.config.to_json(),
            "passed": self.passed,
            "checks": {name: t.to_json() for name, t in self.checks.items()},
        }
        if self.counterexample is not None:
            doc["counterexample"] = self.counterexample
        return doc


def sample_rng(seed: int, check: str, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, _CHECK_SEEDS[check], index])


def random_basis_change(field: FieldSpec, rng: np.random.Generator, size: int = 2) -> Matrix:
    """A random invertible matrix with small integer entries."""
    while True:
        rows = [[int(rng.integers(-size, size + 1)) for _ in range(DIM)] for _ in range(DIM)]
        g = Matrix(field, rows)
        if not g.determinant().is_zero():
            return g


def _small_rational(field: FieldSpec, rng: np.random.Generator, special: float = 0.3) -> FieldElement:
    # special values 0 and 1 hit the boundary patterns of the catalog
    if rng.random() < special:
        return field.element(int(rng.integers(0, 2)))
    num = int(rng.integers(-4, 5))
    den = int(rng.integers(1, 4))
    return field.element(Fraction(num, den))


def random_valuations(shape: ShapeId, hodge: HodgeType, field: FieldSpec,
                      rng: np.random.Generator) -> Optional[Tuple[Fraction, ...]]:
    """Eigenvalue valuations on the grid with t_N(D) = r + s, or None."""
    weights, offset = NEWTON_WEIGHTS[shape]
    grid = field.grid_valuations(0, hodge.total)
    head = [grid[int(rng.integers(0, len(grid)))] for _ in weights[:-1]]
    last = Fraction(hodge.total - offset - sum(w * v for w, v in zip(weights, head)), weights[-1])
    if last < 0 or (last * field.ramification).denominator != 1:
        return None
    return tuple(head) + (last,)


def _random_eigen(shape: ShapeId, valuations: Sequence[Fraction], field: FieldSpec,
                  rng: np.random.Generator, attempts: int = 20) -> Optional[Tuple[FieldElement, ...]]:
    for _ in range(attempts):
        eigen = tuple(field.element_with_valuation(v, rng) for v in valuations)
        if not eigen_violations(shape, eigen):
            return eigen
    return None


def random_filtration(field: FieldSpec, rng: np.random.Generator) -> Filtration:
    """A random flag: a line inside a plane, coordinates small rationals."""
    while True:
        v1 = [_small_rational(field, rng) for _ in range(DIM)]
        v2 = [_small_rational(field, rng) for _ in range(DIM)]
        L1 = echelon_basis(field, [v1], DIM)
        L2 = echelon_basis(field, [v1, v2], DIM)
        if L1.dim == 1 and L2.dim == 2:
            return Filtration(L1, L2)


def random_module(hodge: HodgeType, field: FieldSpec, rng: np.random.Generator) -> PhiNModule:
    """A random valid module in a random basis.

    The monodromy rank is uniform on {0, 1, 2}, the shape uniform among
    those of that rank, and the eigenvalue valuations meet t_N(D) = r + s.
    Crystalline modules carry a Jordan hint.
    """
    while True:
        n_rank = int(rng.integers(0, 3))
        shapes = SHAPES_BY_RANK[n_rank]
        shape = shapes[int(rng.integers(0, len(shapes)))]
        valuations = random_valuations(shape, hodge, field, rng)
        if valuations is None:
            continue
        eigen = _random_eigen(shape, valuations, field, rng)
        if eigen is not None:
            break
    phi = standard_phi(field, shape, eigen)
    hint = None
    if n_rank == 0:
        hint = JordanHint(tuple(phi[i, i] for i in range(DIM)))
    module = PhiNModule(field, hodge, phi, standard_monodromy(field, n_rank),
                        random_filtration(field, rng), hint)
    return module.transported(random_basis_change(field, rng))


def _random_fil_params(entry: CatalogEntry, field: FieldSpec,
                       rng: np.random.Generator) -> Tuple[FieldElement, ...]:
    while True:
        params = tuple(_small_rational(field, rng) for _ in entry.fil_domains)
        ok = all(
            not ((domain == "nonzero" and x.is_zero()) or (domain == "not01" and (x.is_zero() or x == 1)))
            for x, domain in zip(params, entry.fil_domains)
        )
        if entry.projective and all(x.is_zero() for x in params):
            ok = False
        if ok:
            return params


@lru_cache(maxsize=None)
def _satisfiable(catalog: Catalog, hodge: HodgeType, ramification: int) -> Tuple[Tuple, ...]:
    grid = make_field(2, ramification).grid_valuations(0, hodge.total)
    found = []
    for entry in catalog:
        solutions = tuple(valuation_solutions(entry, hodge, grid, ramification))
        if solutions:
            found.append((entry, solutions))
    return tuple(found)


def random_instance(catalog: Catalog, hodge: HodgeType, field: FieldSpec, rng: np.random.Generator,
                    entry: Optional[CatalogEntry] = None,
                    valuations: Optional[Tuple[Fraction, ...]] = None) -> Optional[FamilyInstance]:
    """A random instance satisfying every catalog constraint, or None.

    Args:
        catalog: Catalog to draw from
        hodge: Hodge type
        field: Model field
        rng: numpy random generator
        entry: Restrict to one family
        valuations: Fix the eigenvalue valuations
    """
    satisfiable = _satisfiable(catalog, hodge, field.ramification)
    if entry is not None:
        satisfiable = tuple(item for item in satisfiable if item[0].id is entry.id)
    if not satisfiable:
        return None
    entry, solutions = satisfiable[int(rng.integers(0, len(satisfiable)))]
    if valuations is None:
        valuations = solutions[int(rng.integers(0, len(solutions)))]
    for _ in range(20):
        eigen = _random_eigen(entry.shape, valuations, field, rng)
        if eigen is None:
            return None
        fi = FamilyInstance(entry.id, eigen, _random_fil_params(entry, field, rng), hodge)
        if not catalog.violations(fi):
            return fi
    return None


def _guarded(run: Callable[[], SampleOutcome], module_of: Callable[[], Optional[PhiNModule]]) -> SampleOutcome:
    try:
        return run()
    except (PhinModError, AssertionError) as e:
        return SampleOutcome(f"{type(e).__name__}: {e}", module_of())


def check_random_module(cfg: CertifyConfig, index: int, catalog: Catalog = CATALOG) -> SampleOutcome:
    """Admissibility and classification of one random module against the oracle."""
    rng = sample_rng(cfg.seed, RANDOM_MODULES, index)
    m = random_module(cfg.hodge, cfg.field, rng)

    def run() -> SampleOutcome:
        result = is_admissible(m)
        if not result.admissible:
            if not witness_is_concrete(m, result):
                return SampleOutcome("inadmissible verdict without a concrete witness", m)
            return SampleOutcome()
        bad = oracle_violations(m, cfg.oracle_samples, rng)
        if bad:
            return SampleOutcome(f"admissible verdict but subspace {bad[0].to_strings()} has t_H > t_N", m)
        found = classify(m, catalog)
        representative = catalog.instantiate(found.instance)
        if m.transported(found.transition) != representative:
            return SampleOutcome(f"transition does not reach the representative of {found.instance}", m)
        return SampleOutcome()

    return _guarded(run, lambda: m)


def check_round_trip(cfg: CertifyConfig, index: int, catalog: Catalog = CATALOG) -> SampleOutcome:
    """Classify a random instance written in a random basis."""
    rng = sample_rng(cfg.seed, ROUND_TRIPS, index)
    fi = random_instance(catalog, cfg.hodge, cfg.field, rng)
    if fi is None:
        return SampleOutcome()
    module = catalog.instantiate(fi)
    if module.n_rank == 0:
        hint = JordanHint(tuple(module.phi[i, i] for i in range(DIM)))
        module = PhiNModule(module.field, module.hodge, module.phi, module.N, module.fil, hint)
    m = module.transported(random_basis_change(cfg.field, rng))

    def run() -> SampleOutcome:
        found = classify(m, catalog)
        if not param_equivalent(fi, found.instance, catalog):
            return SampleOutcome(f"{fi} classified as inequivalent {found.instance}", m)
        return SampleOutcome()

    return _guarded(run, lambda: m)


def check_commutants(cfg: CertifyConfig) -> List[SampleOutcome]:
    outcomes = []
    for shape in ShapeId:
        mismatches = commutant_shape_check(shape, cfg.field)
        outcomes.append(SampleOutcome(f"{shape.value}: " + "; ".join(mismatches)) if mismatches
                        else SampleOutcome())
    return outcomes


def check_catalog_soundness(cfg: CertifyConfig, catalog: Catalog = CATALOG) -> List[SampleOutcome]:
    """Boundary and interior valuations of every satisfiable family."""
    outcomes = []
    for k, (entry, solutions) in enumerate(_satisfiable(catalog, cfg.hodge, cfg.ramification)):
        picks = {solutions[0], solutions[len(solutions) // 2], solutions[-1]}
        for j, valuations in enumerate(sorted(picks)):
            rng = np.random.default_rng([cfg.seed, _CHECK_SEEDS[CATALOG_SOUNDNESS], k, j])
            fi = random_instance(catalog, cfg.hodge, cfg.field, rng, entry, valuations)
            if fi is None:
                continue
            m = catalog.instantiate(fi)
            outcomes.append(_soundness_outcome(fi, m, catalog))
    return outcomes


def _soundness_outcome(fi: FamilyInstance, m: PhiNModule, catalog: Catalog) -> SampleOutcome:
    def run() -> SampleOutcome:
        result = is_admissible(m)
        if not result.admissible:
            return SampleOutcome(f"representative of {fi} is not admissible: {result.describe()}", m)
        found = classify(m, catalog)
        if not param_equivalent(fi, found.instance, catalog):
            return SampleOutcome(f"representative of {fi} classified as {found.instance}", m)
        return SampleOutcome()

    return _guarded(run, lambda: m)


def _map(cfg: CertifyConfig, fn: Callable[[int], SampleOutcome], count: int) -> List[SampleOutcome]:
    if cfg.workers <= 1:
        return [fn(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        return list(pool.map(fn, range(count)))


def certify(cfg: CertifyConfig, catalog: Catalog = CATALOG) -> CertifyReport:
    """Run a certification campaign.

    Args:
        cfg: Campaign configuration
        catalog: Catalog under test

    Returns:
        CertifyReport; ``report.passed`` is False on any oracle disagreement
    """
    report = CertifyReport(cfg)
    if cfg.samples <= 0:
        logger.info("certify: empty campaign")
        return report
    logger.info(f"certify r={cfg.hodge.r} s={cfg.hodge.s}: {cfg.samples} modules, seed {cfg.seed}")
    for outcome in _map(cfg, lambda i: check_random_module(cfg, i, catalog), cfg.samples):
        report.record(RANDOM_MODULES, outcome)
    for outcome in _map(cfg, lambda i: check_round_trip(cfg, i, catalog), cfg.trip_count):
        report.record(ROUND_TRIPS, outcome)
    for outcome in check_commutants(cfg):
        report.record(COMMUTANTS, outcome)
    for outcome in check_catalog_soundness(cfg, catalog):
        report.record(CATALOG_SOUNDNESS, outcome)
    if not report.passed:
        logger.warning(f"certify found a counterexample: {report.counterexample['failure']}")
    return report
