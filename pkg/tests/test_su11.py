from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from racah.exact import Poly1, Poly3, graded_monomials, terminating_2f1
from racah.operators import DiffOp1, DiffOp3, Matrix, commutator
from racah.su11 import (
    DegreeTooHigh,
    RacahGenerators,
    RacahParams,
    StructureParams,
    bargmann_su11,
    casimir_sum_identity,
    casimir_value,
    check_casimir_commutation,
    check_racah_relations,
    check_su11_relations,
    check_z3_cyclic,
    check_z3_relations,
    equitable_one_variable,
    full_casimir,
    intermediate_casimir,
    lowest_weight_space,
    racah_casimir_check,
    racah_generators_1var,
    racah_generators_3var,
    reduction_identity,
    s_sum_identity,
    sturm_liouville_operators,
    su11_casimir,
    three_variable_model,
)

from conftest import positive_nu

ONE = RacahParams.of(1, 1, 1, 1)


def act(op, f):
    """Apply an operator or scalar by direct action only (no composition)."""
    if isinstance(op, (int, Fraction)):
        return f * op
    return op.apply(f)


def relation_defect(A, B, sp, f):
    """Racah relations evaluated on f using only sequential application."""
    Af, Bf = act(A, f), act(B, f)
    Cf = act(A, Bf) - act(B, Af)

    def C(g):
        return act(A, act(B, g)) - act(B, act(A, g))

    ABf = act(A, Bf) + act(B, Af)
    bc = act(B, Cf) - C(Bf) - (act(B, Bf) + ABf + act(sp.d, Bf) + act(sp.e1, f))
    ca = C(Af) - act(A, Cf) - (act(A, Af) + ABf + act(sp.d, Af) + act(sp.e2, f))
    return bc, ca


class TestParams:
    def test_validation(self):
        with pytest.raises(ValueError):
            RacahParams.of(0, 1, 1, 1)
        with pytest.raises(ValueError):
            RacahParams.of(1, 1, 1, -1)
        with pytest.raises(TypeError):
            RacahParams.of(0.5, 1, 1, 1)

    def test_derived_values(self):
        p = RacahParams.of("1/2", 1, "3/2", 2)
        assert p.nu4 == 5
        assert p.lam(4) == 20
        assert p.dimension == 3
        assert p.cyclic() == RacahParams.of(1, "3/2", "1/2", 2)
        assert RacahParams.from_json(p.to_json()) == p


class TestBargmann:
    def test_actions(self):
        K = bargmann_su11(1, "x")
        x = Poly3.variables()[0]
        for n in range(4):
            assert K.K0.apply(x**n) == (n + 1) * x**n
        assert K.Kminus.apply(x**3) == 3 * x**2

    @given(positive_nu)
    def test_casimir_is_scalar(self, nu):
        assert su11_casimir(bargmann_su11(nu, "y")) == nu * (nu - 1)

    @given(positive_nu, positive_nu, positive_nu)
    @settings(max_examples=10)
    def test_relations(self, a, b, c):
        assert check_su11_relations(RacahParams.of(a, b, c, 0)).passed

    def test_negative_control(self):
        K = three_variable_model(ONE).K[1]
        bad = K._replace(K0=K.K0 + DiffOp3.multiplication(Poly3.variables()[1]))
        report = check_su11_relations(ONE, {1: bad})
        assert not report.passed and report.residual is not None


class TestCasimirs:
    def test_q12_on_constant(self):
        assert intermediate_casimir(ONE, "12").apply(Poly3.constant(1)) == 2

    def test_commutation(self):
        report = check_casimir_commutation(RacahParams.of("2/3", "5/4", 3, 0))
        assert report.passed
        assert all(report.metadata["noncommuting"].values())

    @pytest.mark.parametrize("nus", [(1, 1, 1), ("1/2", "3/2", "5/2")])
    def test_sum_identity(self, nus):
        assert casimir_sum_identity(RacahParams.of(*nus, 0)).passed

    def test_sum_identity_negative_control(self):
        x = Poly3.variables()[0]
        q12 = intermediate_casimir(ONE, "12") + DiffOp3.multiplication(x)
        report = casimir_sum_identity(ONE, {"12": q12})
        assert not report.passed
        assert not report.residual.is_zero()

    def test_full_casimir_on_lowest_weight_space(self):
        p = RacahParams.of("1/2", 2, "1/3", 3)
        Q4 = full_casimir(p)
        for psi in lowest_weight_space(p).basis():
            assert Q4.apply(psi) == psi * p.lam(4)


class TestRelationsOracle:
    def test_three_variable_by_application(self):
        gens = racah_generators_3var(RacahParams.of(1, 1, 1, 0))
        sp = gens.structure()
        for a, b, c in graded_monomials(6):
            f = Poly3.monomial(a, b, c)
            bc, ca = relation_defect(gens.A, gens.B, sp, f)
            assert bc.is_zero() and ca.is_zero()

    def test_one_variable_by_application(self):
        p = RacahParams.of(1, 2, 3, 4)
        gens = racah_generators_1var(p)
        sp = gens.structure()
        for k in range(9):
            bc, ca = relation_defect(gens.A, gens.B, sp, Poly1.monomial(k))
            assert bc.is_zero() and ca.is_zero()


class TestRacahRelations:
    def test_three_variable(self):
        assert check_racah_relations(racah_generators_3var(ONE)).passed

    def test_one_variable(self):
        assert check_racah_relations(racah_generators_1var(RacahParams.of(1, 2, 3, 4))).passed

    @pytest.mark.parametrize("pair", [("23", "31"), ("31", "12"), ("23", "12")])
    def test_other_pairs(self, pair):
        p = RacahParams.of("1/2", "7/3", 2, 3)
        assert check_racah_relations(racah_generators_3var(p, *pair)).passed
        assert check_racah_relations(racah_generators_1var(p, *pair)).passed

    def test_zero_generators_need_zero_e(self):
        zero = Matrix.zeros(2)
        gens = RacahGenerators.from_ab(zero, zero, (1, 2, 3, 4), "zero")
        assert not check_racah_relations(gens).passed
        gens = RacahGenerators.from_ab(zero, zero, (5, 5, 5, 5), "zero")
        assert check_racah_relations(gens).passed

    def test_negative_control(self):
        gens = racah_generators_1var(RacahParams.of(1, 2, 3, 4))
        bad = RacahGenerators.from_ab(gens.A + DiffOp1.d(), gens.B, gens.lambdas, "bad")
        report = check_racah_relations(bad)
        assert not report.passed and report.metadata["failed"]


class TestCasimirValue:
    def test_zero_lambdas(self):
        assert casimir_value(0, 0, 0, 0) == 0

    def test_hand_value(self):
        # lambda = (0, 0, 0, 12): every product contains a vanishing constant
        assert casimir_value(0, 0, 0, 12) == 0
        l1, l2, l3, l4 = 1, 2, 3, 4
        by_hand = ((1 - 2 + 3 - 4) * (3 - 8) - 2 - 6 - 12 - 4) / Fraction(4)
        value = casimir_value(l1, l2, l3, l4)
        assert isinstance(value, Fraction) and value == by_hand

    def test_one_variable_value(self):
        p = RacahParams.of(1, 1, 1, 1)
        report = racah_casimir_check(racah_generators_1var(p))
        assert report.passed
        assert Fraction(report.metadata["value"]) == casimir_value(0, 0, 0, 12)

    def test_nonzero_value_by_hand(self):
        # nu = (2, 1, 1), M = 0: lambda = (2, 0, 0, 12), Q = (-10 * 0 - 24) / 4
        report = racah_casimir_check(racah_generators_1var(RacahParams.of(2, 1, 1, 0)))
        assert report.passed and report.metadata["value"] == "-6"

    def test_three_variable_central(self):
        assert racah_casimir_check(racah_generators_3var(RacahParams.of("3/2", "1/5", 2, 0))).passed

    def test_negative_control(self):
        gens = racah_generators_1var(RacahParams.of(1, 1, 1, 2))
        sp = StructureParams.from_lambdas(0, 0, 0, 13)
        assert not racah_casimir_check(gens, sp).passed


class TestZ3:
    def test_f1_vanishes_for_equal_lambdas(self):
        sp = StructureParams.from_lambdas(7, 7, 7, 7)
        assert sp.f1 == sp.f2 == sp.f3 == 0

    @pytest.mark.parametrize("M", [0, 2])
    def test_three_variable(self, M):
        gens = racah_generators_3var(RacahParams.of(1, 1, 1, M))
        assert check_z3_relations(gens).passed
        assert check_z3_cyclic(gens).passed

    def test_sum_on_constants(self):
        gens = racah_generators_3var(ONE)
        total = gens.X + gens.Y + gens.Z
        assert total.apply(Poly3.constant(1)) == 6  # nu4 = 3 on degree 0

    @pytest.mark.parametrize(
        "nus, M, lam4", [((1, 1, 1), 1, 12), (("1/2", 1, "3/2"), 2, 20)]
    )
    def test_one_variable_sum(self, nus, M, lam4):
        X, Y, Z = equitable_one_variable(RacahParams.of(*nus, M))
        assert X + Y + Z == lam4

    @given(positive_nu, positive_nu, positive_nu, st.integers(0, 4))
    @settings(max_examples=20)
    def test_one_variable_random(self, a, b, c, M):
        gens = racah_generators_1var(RacahParams.of(a, b, c, M))
        assert check_z3_relations(gens).passed

    def test_cyclic_relabelling_of_params(self):
        # the 23,31 pair of params equals the 12,23 pair of the cycled params
        p = RacahParams.of("1/2", "5/3", 2, 2)
        g1 = racah_generators_1var(p, "23", "31")
        assert check_z3_relations(g1).passed
        assert g1.lambdas == racah_generators_1var(p.cyclic()).lambdas

    def test_omega_relation(self):
        gens = racah_generators_3var(ONE)
        assert commutator(gens.X, gens.Y) == 2 * gens.Omega

    def test_negative_control(self):
        gens = racah_generators_1var(RacahParams.of(1, 2, 3, 2))
        bad = RacahGenerators.from_xyz(gens.X + DiffOp1.u(), gens.Y, gens.Z, gens.lambdas, "bad")
        assert not check_z3_relations(bad).passed


class TestLowestWeightSpace:
    def test_embeddings(self):
        x, y, z = Poly3.variables()
        assert lowest_weight_space(ONE).embed(Poly1([1])) == z - y
        assert lowest_weight_space(ONE).embed(Poly1([0, 1])) == x - y
        two = lowest_weight_space(RacahParams.of(1, 1, 1, 2))
        assert two.embed(Poly1([0, 0, 1])) == (x - y) ** 2

    def test_conditions(self):
        space = lowest_weight_space(RacahParams.of(1, 2, 3, 3))
        assert all(space.satisfies_conditions(psi) for psi in space.basis())
        x = Poly3.variables()[0]
        assert not space.satisfies_conditions(x**3)

    def test_degree_guard(self):
        with pytest.raises(DegreeTooHigh):
            lowest_weight_space(ONE).embed(Poly1([0, 0, 1]))

    def test_a_on_lowest_state(self):
        p = RacahParams.of("1/2", "3/4", 2, 2)
        gens = racah_generators_3var(p)
        phi = terminating_2f1(-p.M, 2 * p.nu1, 2 * p.nu1 + 2 * p.nu2)  # n12 = 0
        psi = lowest_weight_space(p).embed(phi)
        expected = -(p.nu1 + p.nu2) * (p.nu1 + p.nu2 - 1) / 2
        assert gens.A.apply(psi) == psi * expected


class TestReduction:
    def test_s23_constant(self):
        S23 = sturm_liouville_operators(ONE)[1]
        assert S23.apply(Poly1([1])) == 6

    def test_s_sum(self):
        p = RacahParams.of("1/3", "2/5", 3, 4)
        assert s_sum_identity(p).passed
        S = sum(sturm_liouville_operators(p), DiffOp1())
        assert S == sum(p.lambdas, Fraction(0))

    def test_reduction_by_poly3_expansion(self):
        p = RacahParams.of(1, 1, 1, 2)
        model = three_variable_model(p)
        S = dict(zip(("12", "23", "31"), sturm_liouville_operators(p)))
        x, y, z = Poly3.variables()
        for label in S:
            for k in range(3):
                lhs = model.casimir(label).apply((x - y) ** k * (z - y) ** (2 - k))
                image = S[label].apply(Poly1.monomial(k))
                rhs = sum(
                    ((x - y) ** i * (z - y) ** (2 - i) * c for i, c in enumerate(image.coeffs)),
                    Poly3(),
                )
                assert lhs == rhs
        assert reduction_identity(p).passed

    def test_negative_controls(self):
        S12, S23, S31 = sturm_liouville_operators(ONE)
        assert not reduction_identity(ONE, {"12": S12 + 1}).passed
        assert not s_sum_identity(ONE, (S12, S23 + DiffOp1.d(), S31)).passed
