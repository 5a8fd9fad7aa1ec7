from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from racah.exact import Poly1, Poly3, graded_monomials
from racah.operators import (
    DiffOp1,
    DiffOp3,
    Matrix,
    NotInvariant,
    SingularMatrix,
    commutator,
    to_matrix,
    to_matrix3,
)

from conftest import polys, small_fractions


@st.composite
def diffops(draw, max_order=2):
    return DiffOp1({k: draw(polys(max_degree=3)) for k in range(max_order + 1)})


@st.composite
def matrices(draw, n=3):
    return Matrix([[draw(small_fractions) for _ in range(n)] for _ in range(n)])


class TestDiffOp1:
    def test_canonical_commutator(self):
        assert commutator(DiffOp1.d(), DiffOp1.u()) == 1

    def test_normal_ordering_example(self):
        d, u = DiffOp1.d(), DiffOp1.u()
        # d u^2 = u^2 d + 2u
        assert d * (u * u) == DiffOp1({1: Poly1([0, 0, 1]), 0: Poly1([0, 2])})

    @given(diffops(), diffops(), polys())
    def test_composition_matches_sequential_application(self, a, b, f):
        assert (a * b).apply(f) == a.apply(b.apply(f))

    @given(diffops(), diffops(), diffops())
    def test_associativity(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    @given(diffops(), diffops(), diffops())
    def test_jacobi(self, a, b, c):
        total = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))
        assert total.is_zero()

    @given(diffops(), small_fractions, small_fractions, polys())
    def test_affine_change_of_variable(self, op, alpha, beta, f):
        if alpha == 0:
            return
        # (op f)(alpha v + beta) computed two ways
        lhs = op.apply(f).substitute_affine(alpha, beta)
        rhs = op.substitute_affine(alpha, beta).apply(f.substitute_affine(alpha, beta))
        assert lhs == rhs

    def test_scalar_coercion(self):
        op = DiffOp1.d() + 3
        assert op.apply(Poly1([1, 1])) == Poly1([4, 3])
        assert (op - op) == 0
        assert DiffOp1.scalar(5).as_scalar() == 5
        assert DiffOp1.d().as_scalar() is None

    @given(diffops())
    def test_json_roundtrip(self, op):
        assert DiffOp1.from_json(op.to_json()) == op


class TestDiffOp3:
    def test_commuting_axes(self):
        x, y, z = Poly3.variables()
        dx, dy = DiffOp3.d(0), DiffOp3.d(1)
        X = DiffOp3.multiplication(x)
        assert commutator(dx, X) == 1
        assert commutator(dy, X).is_zero()
        assert commutator(dx, dy).is_zero()

    def test_composition_matches_application(self):
        x, y, z = Poly3.variables()
        a = DiffOp3({(1, 0, 0): x * y, (0, 0, 2): z})
        b = DiffOp3({(0, 1, 0): x * x, (0, 0, 0): y - z})
        f = x**3 * y**2 * z + z**4 - x * y
        assert (a * b).apply(f) == a.apply(b.apply(f))

    def test_json_roundtrip(self):
        x, y, z = Poly3.variables()
        op = DiffOp3({(1, 0, 2): x * z - 1, (0, 0, 0): Poly3.constant(Fraction(2, 3))})
        assert DiffOp3.from_json(op.to_json()) == op

    def test_to_matrix3(self):
        x, y, z = Poly3.variables()
        euler = DiffOp3({(1, 0, 0): x, (0, 1, 0): y, (0, 0, 1): z})
        mat = to_matrix3(euler, 2)
        assert mat.diag() == [sum(m) for m in graded_monomials(2)]
        with pytest.raises(NotInvariant):
            to_matrix3(DiffOp3.multiplication(x), 2)


class TestToMatrix:
    def test_columns_hold_images(self):
        u = Poly1.variable()
        mat = to_matrix(DiffOp1({1: u}), 3)
        assert mat == Matrix.diagonal([0, 1, 2, 3])

    def test_degree_raising_rejected(self):
        with pytest.raises(NotInvariant):
            to_matrix(DiffOp1.u(), 2)

    @given(diffops(max_order=2), diffops(max_order=2))
    def test_homomorphism_on_invariant_operators(self, a, b):
        # restrict to derivative-only parts, which always preserve degree
        a = DiffOp1({k: Poly1([a.coefficient(k).coeff(0)]) for k in range(3)})
        b = DiffOp1({k: Poly1([b.coefficient(k).coeff(0)]) for k in range(3)})
        assert to_matrix(a * b, 4) == to_matrix(a, 4) * to_matrix(b, 4)


class TestMatrix:
    @given(matrices(), matrices())
    def test_det_multiplicative(self, a, b):
        assert (a * b).det() == a.det() * b.det()

    @given(matrices())
    def test_inverse(self, a):
        if a.det() == 0:
            with pytest.raises(SingularMatrix):
                a.inverse()
        else:
            assert a * a.inverse() == 1

    @given(matrices())
    def test_nullspace(self, a):
        null = a.nullspace()
        assert len(null) == 3 - a.rank()
        for v in null:
            assert all(c == 0 for c in a.apply(v))

    @given(matrices())
    def test_charpoly_cayley_hamilton(self, a):
        p = a.charpoly()
        assert p.degree == 3 and p.coeff(3) == 1
        acc = Matrix.zeros(3)
        power = Matrix.identity(3)
        for k in range(4):
            acc = acc + power * p.coeff(k)
            power = power * a
        assert acc.is_zero()

    @given(matrices())
    def test_charpoly_against_numpy(self, a):
        ref = np.poly(a.to_float())[::-1]
        ours = [float(c) for c in a.charpoly().coeffs] + [0.0] * 4
        assert np.allclose(ours[:4], ref, atol=1e-8)

    def test_solve(self):
        a = Matrix([[2, 1], [1, 3]])
        rhs = Matrix([[1], [2]])
        x = a.solve(rhs)
        assert a * x == rhs
        assert x == Matrix([["1/5"], ["3/5"]])

    def test_json_roundtrip(self):
        a = Matrix([["1/2", 0], [-3, "7/9"]])
        assert Matrix.from_json(a.to_json()) == a

    def test_bandwidth(self):
        assert Matrix.diagonal([1, 2, 3]).bandwidth() == 0
        assert Matrix([[1, 1, 0], [0, 1, 1], [0, 0, 1]]).bandwidth() == 1
