from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from racah.exact import Poly1
from racah.operators import Matrix, commutator, to_matrix
from racah.su11 import RacahParams, check_racah_relations, check_z3_relations, racah_casimir_check
from racah.su2 import (
    IncompatibleRadicals,
    SquaredEntryMatrix,
    bargmann_su2,
    check_su2_relations,
    equitable_quadratics,
    g_sum_identity,
    monomial_to_orthonormal,
    orthonormal_generators,
    quadratic_elements,
    racah_generators_su2,
    signed_root,
    spectral_agreement,
    su2_matrix_model,
    verify_identification,
)

from conftest import positive_nu


class TestBargmannSu2:
    def test_actions(self):
        half = bargmann_su2(Fraction(1, 2))
        assert half.J0.apply(Poly1([1])) == Fraction(-1, 2)
        M = 3
        real = bargmann_su2(Fraction(M, 2))
        for n in range(M + 1):
            assert real.Jplus.apply(Poly1.monomial(n)) == Poly1.monomial(n + 1, n - M)

    def test_casimir(self):
        assert bargmann_su2(1).casimir == 2

    @pytest.mark.parametrize("j", [0, Fraction(1, 2), 2, Fraction(7, 2)])
    def test_relations(self, j):
        assert check_su2_relations(bargmann_su2(j)).passed

    def test_rejects_non_half_integer(self):
        with pytest.raises(ValueError):
            bargmann_su2(Fraction(1, 3))


class TestQuadraticElements:
    def test_constant_addend(self):
        # with all E_i = 0 only the scalar addend (M+2nu2)(M+4nu1+2nu2-2)/4 survives
        zero = Matrix.zeros(1)
        G1 = equitable_quadratics(zero, zero, zero, RacahParams.of(1, 1, 1, 1))[0]
        assert G1 == Fraction(15, 4)

    def test_sum(self):
        assert sum(quadratic_elements(RacahParams.of(1, 1, 1, 1))) == 12

    @given(positive_nu, positive_nu, positive_nu, st.integers(0, 5))
    @settings(max_examples=20)
    def test_sum_random(self, a, b, c, M):
        assert g_sum_identity(RacahParams.of(a, b, c, M)).passed

    @pytest.mark.parametrize("nus, M", [((1, 1, 1), 1), (("1/2", "3/2", 2), 3)])
    def test_identification(self, nus, M):
        report = verify_identification(RacahParams.of(*nus, M))
        assert report.passed
        assert len(report.metadata["relations"]) == 3

    def test_identification_negative_control(self):
        p = RacahParams.of(1, 1, 1, 1)
        G1, G2, G3 = quadratic_elements(p)
        report = verify_identification(p, (G1 + 1, G2, G3))
        assert not report.passed
        assert report.residual == 1
        assert not g_sum_identity(p, (G1 + 1, G2, G3)).passed

    def test_racah_realization(self):
        gens = racah_generators_su2(RacahParams.of("2/3", "5/2", "1/4", 4))
        assert check_racah_relations(gens).passed
        assert check_z3_relations(gens).passed
        assert racah_casimir_check(gens).passed


class TestSquaredEntries:
    def test_signed_root(self):
        assert signed_root(1, 8) == (2, 2)
        assert signed_root(-1, Fraction(3, 4)) == (Fraction(-1, 2), 3)
        assert signed_root(1, Fraction(1, 2)) == (Fraction(1, 2), 2)

    def test_incompatible_radicals(self):
        a = SquaredEntryMatrix.from_signed(2, {(0, 1): (1, 2)})
        b = SquaredEntryMatrix.from_signed(2, {(0, 1): (1, 3)})
        with pytest.raises(IncompatibleRadicals):
            a + b

    def test_products_rationalize(self):
        a = SquaredEntryMatrix.from_signed(2, {(0, 1): (1, 2), (1, 0): (1, 2)})
        assert a * a == 2

    @given(st.integers(1, 6))
    def test_float_consistency(self, M):
        model = su2_matrix_model(M)
        lhs = (model["J+"] * model["J-"] - model["J-"] * model["J+"]).to_float()
        assert np.allclose(lhs, 2 * model["J0"].to_float())

    def test_json_roundtrip(self):
        for mat in su2_matrix_model(3).values():
            assert SquaredEntryMatrix.from_json(mat.to_json()) == mat


class TestMatrixModel:
    def test_entries(self):
        assert su2_matrix_model(2)["E3"].diag() == [-2, 0, 2]
        assert su2_matrix_model(2)["J+"].entry(1, 0) == (1, 2)
        assert su2_matrix_model(1)["E2"].entry(0, 1) == (-1, 4)

    @pytest.mark.parametrize("M", [0, 1, 4])
    def test_exact_relations(self, M):
        m = su2_matrix_model(M)
        assert commutator(m["J0"], m["J+"]) == m["J+"]
        assert commutator(m["J+"], m["J-"]) == 2 * m["J0"]
        for a, b in (("E1", "E2"), ("E2", "E3"), ("E3", "E1")):
            assert commutator(m[a], m[b]) == 2 * (m[a] + m[b])

    @pytest.mark.parametrize("M", [1, 3])
    def test_monomial_conversion(self, M):
        real = bargmann_su2(Fraction(M, 2))
        model = su2_matrix_model(M)
        for name, op in (("J0", real.J0), ("J+", real.Jplus), ("J-", real.Jminus), ("E1", real.E1)):
            assert monomial_to_orthonormal(to_matrix(op, M)) == model[name]

    def test_orthonormal_a_entries(self):
        p = RacahParams.of("1/2", "3/2", 2, 3)
        A = orthonormal_generators(p)["A"]
        n1, M = p.nu1, p.M
        for n in range(M):
            assert A.entry(n + 1, n) == (1, ((n + 2 * n1) / 2) ** 2 * (n + 1) * (M - n))
        assert A.diag() == [Fraction(-(n + 2) * (n + 1), 2) for n in range(M + 1)]

    @pytest.mark.parametrize("M", range(6))
    def test_spectral_agreement(self, M):
        assert spectral_agreement(M).passed
