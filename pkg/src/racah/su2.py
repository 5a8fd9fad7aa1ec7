"""Equitable su(2) in the Bargmann picture and its finite matrix models.

The quadratic elements G1, G2, G3 built from the equitable generators
E1, E2, E3 coincide with the shifted one-variable reductions
S12 - lambda1, S23 - lambda2, S31 - lambda3 when j = M/2.

In the orthonormal basis of the (M+1)-dimensional module, off-diagonal
matrix entries are square roots of rationals. :class:`SquaredEntryMatrix`
keeps each entry as ``q * sqrt(r)`` with ``q`` rational and ``r`` a
squarefree positive integer, and exports ``(sign, q^2 r)``. Entries that
would need two different radicands in one sum raise
:class:`IncompatibleRadicals`; for matrices diagonally similar to rational
ones, which is every case here, that never happens.

The monomial basis u^n and the orthonormal basis e_n are related by
e_n = (-1)^n sqrt(binom(M, n)) u^n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt
from .exact import Poly1, ScalarLike, format_scalar, scalar
from .operators import DiffOp1, Matrix, anticommutator, commutator, to_matrix
from .report import VerificationReport, residual_report, stopwatch
from .su11 import RacahGenerators, RacahParams, sturm_liouville_operators


class IncompatibleRadicals(ValueError):
    """A sum mixes square roots that are not rational multiples of each other."""


@dataclass(frozen=True)
class Su2Realization:
    j: Fraction
    J0: DiffOp1
    Jplus: DiffOp1
    Jminus: DiffOp1
    E1: DiffOp1
    E2: DiffOp1
    E3: DiffOp1

    @property
    def dimension(self) -> int:
        return int(2 * self.j) + 1

    @property
    def casimir(self) -> DiffOp1:
        # J0^2 - J0 + J+J-: with [J+, J-] = 2 J0 this is the central element.
        return self.J0 * self.J0 - self.J0 + self.Jplus * self.Jminus


def bargmann_su2(j: ScalarLike) -> Su2Realization:
    """J- = -d, J+ = u^2 d - 2j u, J0 = u d - j on polynomials of degree <= 2j."""
    j = scalar(j)
    if j < 0 or (2 * j).denominator != 1:
        raise ValueError(f"2j must be a non-negative integer, got j = {j}")
    u = Poly1.variable()
    J0 = DiffOp1({1: u, 0: -j})
    Jp = DiffOp1({1: u * u, 0: u * (-2 * j)})
    Jm = DiffOp1({1: -1})
    real = Su2Realization(
        j, J0, Jp, Jm, E1=2 * (Jp - J0), E2=-2 * (Jm + J0), E3=2 * J0
    )
    report = check_su2_relations(real)
    if not report.passed:
        raise AssertionError(f"su(2) realization failed: {report.metadata['failed']}")
    return real


def check_su2_relations(real: Su2Realization) -> VerificationReport:
    j = real.j
    with stopwatch() as t:
        residuals = {
            "[J0,J+]-J+": commutator(real.J0, real.Jplus) - real.Jplus,
            "[J0,J-]+J-": commutator(real.J0, real.Jminus) + real.Jminus,
            "[J+,J-]-2J0": commutator(real.Jplus, real.Jminus) - 2 * real.J0,
            "Delta-j(j+1)": real.casimir - j * (j + 1),
            "[E1,E2]": commutator(real.E1, real.E2) - 2 * (real.E1 + real.E2),
            "[E2,E3]": commutator(real.E2, real.E3) - 2 * (real.E2 + real.E3),
            "[E3,E1]": commutator(real.E3, real.E1) - 2 * (real.E3 + real.E1),
        }
        for op in (real.J0, real.Jplus, real.Jminus):
            to_matrix(op, real.dimension - 1)
    return residual_report("su2_relations", {"j": format_scalar(j)}, residuals, t[0])


def equitable_quadratics(E1, E2, E3, params: RacahParams):
    """G1, G2, G3 from any representation of the equitable generators."""
    n1, n2, n3 = params.nus
    M = params.M
    eighth = Fraction(1, 8)
    G1 = (
        -eighth * anticommutator(E1, E3)
        + (n2 - n1) / 2 * (E3 + E1)
        + (1 - M - 2 * n1 - 2 * n2) / 4 * (E1 - E3)
        + (M + 2 * n2) * (M + 4 * n1 + 2 * n2 - 2) / 4
    )
    G2 = (
        -eighth * anticommutator(E2, E3)
        + (n3 - n2) / 2 * (E2 + E3)
        + (1 - M - 2 * n2 - 2 * n3) / 4 * (E3 - E2)
        + (M + 2 * n3) * (M + 4 * n2 + 2 * n3 - 2) / 4
    )
    G3 = (
        -eighth * anticommutator(E1, E2)
        + (n1 - n3) / 2 * (E1 + E2)
        + (1 - M - 2 * n1 - 2 * n3) / 4 * (E2 - E1)
        + (M + 2 * n1) * (M + 4 * n3 + 2 * n1 - 2) / 4
    )
    return G1, G2, G3


def quadratic_elements(params: RacahParams) -> tuple[DiffOp1, DiffOp1, DiffOp1]:
    """G1, G2, G3 as differential operators, Bargmann realization with j = M/2."""
    su2 = bargmann_su2(Fraction(params.M, 2))
    return equitable_quadratics(su2.E1, su2.E2, su2.E3, params)


def g_sum_identity(params: RacahParams, G=None) -> VerificationReport:
    """G1 + G2 + G3 = lambda4."""
    with stopwatch() as t:
        G = G if G is not None else quadratic_elements(params)
        residual = sum(G, DiffOp1()) - params.lam(4)
    return residual_report("g_sum", params, {"G1+G2+G3-lambda4": residual}, t[0])


def verify_identification(params: RacahParams, G=None) -> VerificationReport:
    """G_i = S_ij - lambda_i for (i, ij) in (1, 12), (2, 23), (3, 31)."""
    with stopwatch() as t:
        G = G if G is not None else quadratic_elements(params)
        S = sturm_liouville_operators(params)
        residuals = {
            f"G{i}-(S{lab}-lambda{i})": G[i - 1] - (S[i - 1] - params.lam(i))
            for i, lab in zip((1, 2, 3), ("12", "23", "31"))
        }
    return residual_report("identification", params, residuals, t[0])


def racah_generators_su2(params: RacahParams) -> RacahGenerators:
    """X, Y, Z = G1, G2, G3; A = -G1/2 - lambda1/2, B = -G2/2 - lambda2/2."""
    G1, G2, G3 = quadratic_elements(params)
    return RacahGenerators.from_xyz(G1, G2, G3, params.lambdas, "su2")


def _split_square(n: int) -> tuple[int, int]:
    """Write n > 0 as s^2 * r with r squarefree; returns (s, r)."""
    s, r = 1, 1
    p = 2
    while p * p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                r *= p
        p += 1 if p == 2 else 2
    # n now has at most two prime factors above the cube-root bound
    root = isqrt(n)
    if root * root == n:
        s *= root
    else:
        r *= n
    return s, r


def signed_root(sign: int, magnitude_squared: ScalarLike) -> tuple[Fraction, int]:
    """(q, r) with q * sqrt(r) = sign * sqrt(magnitude_squared)."""
    m2 = scalar(magnitude_squared)
    if m2 < 0:
        raise ValueError("squared magnitude must be non-negative")
    if not m2 or not sign:
        return Fraction(0), 1
    a, b = m2.numerator, m2.denominator
    s, r = _split_square(a * b)
    return Fraction(s * (1 if sign > 0 else -1), b), r


class SquaredEntryMatrix:
    """Square matrix whose entries are rational multiples of square roots."""

    __slots__ = ("size", "entries")

    def __init__(self, size: int, entries: dict | None = None):
        self.size = size
        self.entries: dict[tuple[int, int], tuple[Fraction, int]] = {
            k: v for k, v in (entries or {}).items() if v[0]
        }

    @classmethod
    def from_signed(cls, size: int, signed: dict) -> "SquaredEntryMatrix":
        """Build from {(i, j): (sign, magnitude_squared)}."""
        return cls(size, {k: signed_root(s, m2) for k, (s, m2) in signed.items()})

    @classmethod
    def from_rational(cls, mat: Matrix) -> "SquaredEntryMatrix":
        return cls(
            mat.rows,
            {(i, j): (v, 1) for i, r in enumerate(mat.entries) for j, v in enumerate(r) if v},
        )

    @classmethod
    def identity(cls, size: int) -> "SquaredEntryMatrix":
        return cls(size, {(i, i): (Fraction(1), 1) for i in range(size)})

    def entry(self, i: int, j: int) -> tuple[int, Fraction]:
        """(sign, magnitude squared) of entry (i, j)."""
        q, r = self.entries.get((i, j), (Fraction(0), 1))
        return (0 if not q else (1 if q > 0 else -1)), q * q * r

    def diag(self) -> list[Fraction]:
        out = []
        for i in range(self.size):
            q, r = self.entries.get((i, i), (Fraction(0), 1))
            if r != 1:
                raise IncompatibleRadicals(f"diagonal entry {i} is irrational")
            out.append(q)
        return out

    def offdiag(self) -> list[dict]:
        rows = []
        for (i, j) in sorted(self.entries):
            if i != j:
                sign, m2 = self.entry(i, j)
                # column j is the image of basis vector j
                rows.append({"from": j, "to": i, "sign": sign, "magnitude_squared": m2})
        return rows

    def is_zero(self) -> bool:
        return not self.entries

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SquaredEntryMatrix.identity(self.size) * other
        return (
            isinstance(other, SquaredEntryMatrix)
            and self.size == other.size
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.size, frozenset(self.entries.items())))

    def __repr__(self) -> str:
        return f"SquaredEntryMatrix(size={self.size}, nonzero={len(self.entries)})"

    @staticmethod
    def _accumulate(acc: dict, key, q: Fraction, r: int) -> None:
        if not q:
            return
        if key in acc:
            q0, r0 = acc[key]
            if r0 != r:
                raise IncompatibleRadicals(f"sqrt({r0}) + sqrt({r}) at {key}")
            acc[key] = (q0 + q, r0)
        else:
            acc[key] = (q, r)

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return SquaredEntryMatrix.identity(self.size) * other
        if isinstance(other, SquaredEntryMatrix):
            if other.size != self.size:
                raise ValueError("size mismatch")
            return other
        return None

    def __neg__(self) -> "SquaredEntryMatrix":
        return SquaredEntryMatrix(self.size, {k: (-q, r) for k, (q, r) in self.entries.items()})

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = dict(self.entries)
        for k, (q, r) in o.entries.items():
            self._accumulate(acc, k, q, r)
        return SquaredEntryMatrix(self.size, acc)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SquaredEntryMatrix(
                self.size, {k: (q * other, r) for k, (q, r) in self.entries.items()}
            )
        if not isinstance(other, SquaredEntryMatrix):
            return NotImplemented
        by_row: dict[int, list] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        acc: dict = {}
        for (i, k), (q1, r1) in self.entries.items():
            for j, (q2, r2) in by_row.get(k, ()):
                s, r = _split_square(r1 * r2)
                self._accumulate(acc, (i, j), q1 * q2 * s, r)
        return SquaredEntryMatrix(self.size, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def to_float(self):
        import numpy as np

        out = np.zeros((self.size, self.size))
        for (i, j), (q, r) in self.entries.items():
            out[i, j] = float(q) * float(r) ** 0.5
        return out

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "diag": [format_scalar(v) for v in self.diag()],
            "offdiag": [
                {**e, "magnitude_squared": format_scalar(e["magnitude_squared"])}
                for e in self.offdiag()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SquaredEntryMatrix":
        size = data.get("size", len(data["diag"]))
        signed = {(i, i): (1 if scalar(v) > 0 else -1, scalar(v) ** 2) for i, v in enumerate(data["diag"])}
        for e in data["offdiag"]:
            signed[(e["to"], e["from"])] = (e["sign"], scalar(e["magnitude_squared"]))
        return cls.from_signed(size, signed)


def _signed(v: Fraction) -> tuple[int, Fraction]:
    return (1 if v >= 0 else -1), v * v


def su2_matrix_model(M: int) -> dict[str, SquaredEntryMatrix]:
    """J0, J+-, E1, E2, E3 on the orthonormal basis e_0..e_M of the spin-M/2 module."""
    if M < 0:
        raise ValueError("M must be non-negative")
    size = M + 1
    half = Fraction(M, 2)
    J0, Jp, Jm, E1, E2, E3 = ({} for _ in range(6))
    for n in range(size):
        J0[(n, n)] = _signed(n - half)
        E3[(n, n)] = _signed(Fraction(2 * n - M))
        E1[(n, n)] = E2[(n, n)] = _signed(Fraction(M - 2 * n))
        if n < M:
            up = (n + 1) * (M - n)
            Jp[(n + 1, n)] = (1, up)
            E1[(n + 1, n)] = (1, 4 * up)
        if n > 0:
            down = n * (M - n + 1)
            Jm[(n - 1, n)] = (1, down)
            E2[(n - 1, n)] = (-1, 4 * down)
    build = SquaredEntryMatrix.from_signed
    return {
        "J0": build(size, J0),
        "J+": build(size, Jp),
        "J-": build(size, Jm),
        "E1": build(size, E1),
        "E2": build(size, E2),
        "E3": build(size, E3),
    }


def orthonormal_scaling(M: int) -> list[tuple[int, int]]:
    """(sign, c_n^2) for e_n = c_n u^n."""
    return [((-1) ** n, comb(M, n)) for n in range(M + 1)]


def monomial_to_orthonormal(mat: Matrix) -> SquaredEntryMatrix:
    """Conjugate a monomial-basis matrix into the orthonormal basis.

    X_on[m, n] = X[m, n] * c_n / c_m.
    """
    M = mat.rows - 1
    scale = orthonormal_scaling(M)
    signed = {}
    for m, row in enumerate(mat.entries):
        for n, v in enumerate(row):
            if v:
                sign = (1 if v > 0 else -1) * scale[n][0] * scale[m][0]
                signed[(m, n)] = (sign, v * v * Fraction(scale[n][1], scale[m][1]))
    return SquaredEntryMatrix.from_signed(mat.rows, signed)


def orthonormal_generators(params: RacahParams) -> dict[str, SquaredEntryMatrix]:
    """G1, G2, G3 and A, B assembled from the orthonormal E matrices."""
    E = su2_matrix_model(params.M)
    G1, G2, G3 = equitable_quadratics(E["E1"], E["E2"], E["E3"], params)
    l1, l2 = params.lam(1), params.lam(2)
    return {"G1": G1, "G2": G2, "G3": G3, "A": -G1 / 2 - l1 / 2, "B": -G2 / 2 - l2 / 2}


def spectral_agreement(M: int, rtol: float = 1e-10) -> VerificationReport:
    """Float characteristic polynomials of the orthonormal E_i against exact ones.

    The exact side is the characteristic polynomial of ``to_matrix(E_i, M)``
    from the Bargmann realization.
    """
    import numpy as np

    with stopwatch() as t:
        model = su2_matrix_model(M)
        real = bargmann_su2(Fraction(M, 2))
        worst = 0.0
        mismatched = []
        for name, op in (("E1", real.E1), ("E2", real.E2), ("E3", real.E3)):
            exact = [float(c) for c in reversed(to_matrix(op, M).charpoly().coeffs)]
            approx = np.poly(model[name].to_float())
            scale = max(1.0, max(abs(c) for c in exact))
            err = float(np.max(np.abs(np.asarray(exact) - approx))) / scale
            worst = max(worst, err)
            if err > rtol:
                mismatched.append(name)
    return VerificationReport(
        check_name="su2_spectral_agreement",
        params={"M": M},
        status="fail" if mismatched else "pass",
        residual=None,
        elapsed_ms=t[0],
        metadata={"max_relative_error": worst, "rtol": rtol, **({"failed": mismatched} if mismatched else {})},
    )

