"""Tests for module types, validation and the invariants t_H and t_N."""

from fractions import Fraction

import pytest

from src.phinmod.error_handler import HodgeTypeError, InconsistentFamilyError, ModuleValidationError
from src.phinmod.iso import sample_eigen
from src.phinmod.linalg import Matrix, Subspace
from src.phinmod.module import (
    DIM,
    Filtration,
    HodgeType,
    PhiNModule,
    ShapeId,
    build_family,
    ensure_valid,
    family_max_hodge,
    family_max_member,
    hodge_invariant,
    invariant_families,
    newton_invariant,
    standard_monodromy,
    standard_phi,
    validate_module,
)

GENERIC_FIL = ((1, 2, 3), [(1, 2, 3), (0, 1, 5)])


def make_module(field, phi, N, fil=GENERIC_FIL, r=1, s=2):
    return PhiNModule(field, HodgeType(r, s), Matrix(field, phi) if isinstance(phi, list) else phi,
                      Matrix(field, N) if isinstance(N, list) else N,
                      Filtration.from_vectors(field, *fil))


class TestHodgeType:

    def test_requires_increasing_weights(self):
        """Test that r >= s is refused with the documented message."""
        with pytest.raises(HodgeTypeError, match="Hodge type requires 0<r<s"):
            HodgeType(2, 2)
        with pytest.raises(HodgeTypeError):
            HodgeType(0, 3)

    def test_total(self):
        """Test t_H(D) = r + s."""
        assert HodgeType(2, 5).total == 7


class TestValidation:

    def test_standard_shapes_are_valid(self, field):
        """Test that every standard (phi, N) satisfies N phi = p phi N."""
        for shape in ShapeId:
            m = make_module(field, standard_phi(field, shape, sample_eigen(field, shape)),
                            standard_monodromy(field, shape.n_rank))
            assert validate_module(m) == [], shape
            assert m.n_rank == shape.n_rank

    def test_non_nilpotent_monodromy(self, field):
        """Test the N not nilpotent violation."""
        m = make_module(field, [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
                        [[1, 0, 0], [0, 0, 0], [0, 0, 0]])
        assert "N not nilpotent" in validate_module(m)

    def test_commutation_relation(self, field):
        """Test the N phi = p phi N violation."""
        m = make_module(field, [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
                        [[0, 0, 0], [1, 0, 0], [0, 0, 0]])
        assert validate_module(m) == ["N phi != p phi N"]

    def test_singular_phi(self, field):
        """Test the phi not invertible violation."""
        m = make_module(field, [[1, 0, 0], [0, 0, 0], [0, 0, 1]], [[0] * 3] * 3)
        assert "phi not invertible" in validate_module(m)

    def test_filtration_not_nested(self, field):
        """Test that Fil^s must lie inside Fil^r."""
        m = make_module(field, Matrix.identity(field, 3), Matrix.zeros(field, 3, 3),
                        fil=((1, 0, 0), [(0, 1, 0), (0, 0, 1)]))
        assert validate_module(m) == ["Fil^s is not contained in Fil^r"]

    def test_ensure_valid_raises(self, field):
        """Test that ensure_valid lists every violation."""
        m = make_module(field, [[1, 0, 0], [0, 0, 0], [0, 0, 1]],
                        [[1, 0, 0], [0, 0, 0], [0, 0, 0]])
        with pytest.raises(ModuleValidationError) as exc:
            ensure_valid(m)
        assert "phi not invertible" in exc.value.violations
        assert "N not nilpotent" in exc.value.violations


class TestTransport:

    def test_transport_composes(self, field, unit_basis_change):
        """Test that transported(A).transported(B) == transported(B @ A)."""
        m = make_module(field, standard_phi(field, ShapeId.RANK1_5, [1, 3]),
                        standard_monodromy(field, 1))
        b = Matrix(field, [[1, 0, 0], [2, 1, 0], [0, 0, 1]])
        assert m.transported(unit_basis_change).transported(b) == m.transported(b @ unit_basis_change)

    def test_transport_preserves_validity(self, field, unit_basis_change):
        """Test that a basis change keeps the module valid."""
        m = make_module(field, standard_phi(field, ShapeId.RANK2, [1]), standard_monodromy(field, 2))
        assert validate_module(m.transported(unit_basis_change)) == []


class TestInvariants:

    def test_hodge_invariant(self, field):
        """Test t_H on D, Fil^s and a transverse line."""
        fil = Filtration.from_vectors(field, (1, 0, 0), [(1, 0, 0), (0, 1, 0)])
        h = HodgeType(2, 5)
        assert hodge_invariant(Subspace.full(field, DIM), fil, h) == 7
        assert hodge_invariant(Subspace.coordinate(field, DIM, [1]), fil, h) == 5
        assert hodge_invariant(Subspace.coordinate(field, DIM, [2]), fil, h) == 2
        assert hodge_invariant(Subspace.coordinate(field, DIM, [3]), fil, h) == 0

    def test_newton_invariant(self, field):
        """Test t_N as the valuation of the restricted determinant."""
        phi = standard_phi(field, ShapeId.CRYS6, [4, 2, 3])
        assert newton_invariant(Subspace.full(field, DIM), phi) == 3
        assert newton_invariant(Subspace.coordinate(field, DIM, [2, 3]), phi) == 1
        assert newton_invariant(Subspace.zero(field, DIM), phi) == 0

    def test_newton_invariant_fractional(self, field):
        """Test a fractional slope from the ramified uniformizer."""
        u = field.uniformizer
        phi = standard_phi(field, ShapeId.CRYS1, [u])
        assert newton_invariant(Subspace.coordinate(field, DIM, [1]), phi) == Fraction(1, 6)


class TestInvariantFamilies:

    @pytest.mark.parametrize("shape", list(ShapeId))
    def test_families_are_stable(self, field, shape, rng):
        """Test that sampled members of every family are (phi, N)-stable."""
        phi = standard_phi(field, shape, sample_eigen(field, shape))
        N = standard_monodromy(field, shape.n_rank)
        for family in invariant_families(phi, N, shape):
            for member in family.members(rng, 3):
                assert member.dim == family.dim
                assert member.is_invariant(phi) and member.is_invariant(N)
                assert newton_invariant(member, phi) == family.newton

    def test_unstable_family_refused(self, field):
        """Test that a family containing a non-stable member is rejected."""
        phi = standard_phi(field, ShapeId.RANK2, [1])
        N = standard_monodromy(field, 2)
        e1 = Subspace.coordinate(field, DIM, [1])
        with pytest.raises(InconsistentFamilyError):
            build_family(phi, N, e1, e1, 1)

    def test_family_max_hodge(self, field):
        """Test the greedy maximum of t_H over a pencil of lines."""
        phi = standard_phi(field, ShapeId.CRYS1, [1])
        N = standard_monodromy(field, 0)
        fil = Filtration.from_vectors(field, (1, 1, 0), [(1, 1, 0), (0, 0, 1)])
        h = HodgeType(1, 3)
        zero, full = Subspace.zero(field, DIM), Subspace.full(field, DIM)
        lines = build_family(phi, N, zero, full, 1)
        planes = build_family(phi, N, zero, full, 2)
        assert family_max_hodge(lines, fil, h) == 3
        assert family_max_hodge(planes, fil, h) == 4
        best = family_max_member(planes, fil)
        assert best == fil.L2
        assert hodge_invariant(best, fil, h) == 4
