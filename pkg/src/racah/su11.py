"""The su(1,1) Racah problem in the three-variable Bargmann picture.

Three commuting copies of su(1,1) act on polynomials in x, y, z. Their
pairwise sums give the intermediate Casimirs Q12, Q23, Q31; the triple sum
gives the full Casimir Q4. On the lowest-weight space of total degree M the
intermediate Casimirs reduce to the one-variable operators S12, S23, S31.

The relation checkers are realization-agnostic: they take a
:class:`RacahGenerators` whose members may be ``DiffOp3``, ``DiffOp1`` or
``Matrix`` values, together with the four structure constants. In the
three-variable model the full Casimir is not a multiple of the identity on
all polynomials, so there the fourth constant is the operator Q4 itself.
It commutes with every intermediate Casimir, so each identity is still an
exact equality of normal-ordered operators for all M at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, NamedTuple

from .exact import Poly1, Poly3, ScalarLike, format_scalar, scalar
from .operators import DiffOp1, DiffOp3, anticommutator, commutator
from .report import VerificationReport, residual_report, stopwatch

VARIABLES = ("x", "y", "z")
PAIR_LABELS = ("12", "23", "31")

# Eigenvalue ladder of Q23 on the lowest-weight space uses nu23 = nu2+nu3+n23;
# one display of the 6j setup writes nu1+nu2+n23 instead.
NU23_NOTE = "nu23 = nu2 + nu3 + n23 used throughout (nu1 + nu2 + n23 variant treated as a typo)"


class DegreeTooHigh(ValueError):
    """A polynomial of degree > M cannot be embedded at level M."""


@dataclass(frozen=True)
class RacahParams:
    """Representation labels nu1, nu2, nu3 > 0 and the level M >= 0."""

    nu1: Fraction
    nu2: Fraction
    nu3: Fraction
    M: int

    def __post_init__(self):
        for name in ("nu1", "nu2", "nu3"):
            v = scalar(getattr(self, name))
            if v <= 0:
                raise ValueError(f"{name} must be positive, got {v}")
            object.__setattr__(self, name, v)
        if isinstance(self.M, bool) or int(self.M) != self.M or self.M < 0:
            raise ValueError(f"M must be a non-negative integer, got {self.M!r}")
        object.__setattr__(self, "M", int(self.M))

    @classmethod
    def of(cls, nu1: ScalarLike, nu2: ScalarLike, nu3: ScalarLike, M: int) -> "RacahParams":
        return cls(scalar(nu1), scalar(nu2), scalar(nu3), M)

    @property
    def nus(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.nu1, self.nu2, self.nu3)

    def nu(self, i: int) -> Fraction:
        return self.nu4 if i == 4 else self.nus[i - 1]

    @property
    def nu4(self) -> Fraction:
        return self.nu1 + self.nu2 + self.nu3 + self.M

    def lam(self, i: int) -> Fraction:
        v = self.nu(i)
        return v * (v - 1)

    @property
    def lambdas(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return tuple(self.lam(i) for i in (1, 2, 3, 4))

    @property
    def dimension(self) -> int:
        return int(self.nu4 - self.nu1 - self.nu2 - self.nu3) + 1

    def cyclic(self) -> "RacahParams":
        """(nu1, nu2, nu3) -> (nu2, nu3, nu1)."""
        return RacahParams(self.nu2, self.nu3, self.nu1, self.M)

    def to_json(self) -> dict:
        return {
            "nu1": format_scalar(self.nu1),
            "nu2": format_scalar(self.nu2),
            "nu3": format_scalar(self.nu3),
            "M": self.M,
        }

    @classmethod
    def from_json(cls, data: dict) -> "RacahParams":
        return cls.of(data["nu1"], data["nu2"], data["nu3"], data["M"])

    def __str__(self) -> str:
        nus = ",".join(format_scalar(v) for v in self.nus)
        return f"nu=({nus}) M={self.M}"


def _exact(values):
    # plain ints would turn the quarter and half factors into floats
    return tuple(Fraction(v) if isinstance(v, int) else v for v in values)


def casimir_value(l1, l2, l3, l4):
    """Value taken by the Racah-algebra Casimir in terms of the four constants."""
    l1, l2, l3, l4 = _exact((l1, l2, l3, l4))
    return (
        (l1 - l2 + l3 - l4) * (l1 * l3 - l2 * l4)
        - l1 * l2
        - l2 * l3
        - l3 * l4
        - l4 * l1
    ) / 4


@dataclass(frozen=True)
class StructureParams:
    """Structure constants of the Racah algebra and its equitable form.

    Entries are scalars, except in the three-variable model where the
    fourth constant (and everything built from it) is the central operator
    Q4.
    """

    d: Any
    e1: Any
    e2: Any
    f1: Any
    f2: Any
    f3: Any
    lambdas: tuple = field(repr=False)

    @classmethod
    def from_lambdas(cls, l1, l2, l3, l4) -> "StructureParams":
        l1, l2, l3, l4 = _exact((l1, l2, l3, l4))
        return cls(
            d=(l1 + l2 + l3 + l4) / 2,
            e1=(l1 - l4) * (l2 - l3) / 4,
            e2=(l1 - l2) * (l4 - l3) / 4,
            f1=l1 * (l2 + l4) + l3 * (l2 - l4) - 2 * l1 * l3,
            f2=l2 * (l3 + l4) + l1 * (l3 - l4) - 2 * l2 * l1,
            f3=l3 * (l1 + l4) + l2 * (l1 - l4) - 2 * l3 * l2,
            lambdas=(l1, l2, l3, l4),
        )

    @classmethod
    def from_params(cls, params: RacahParams) -> "StructureParams":
        return cls.from_lambdas(*params.lambdas)

    @property
    def casimir_value(self):
        return casimir_value(*self.lambdas)


@dataclass(frozen=True)
class RacahGenerators:
    """A, B, C = [A,B] with the equitable triple X, Y, Z and Omega = 2C."""

    A: Any
    B: Any
    C: Any
    X: Any
    Y: Any
    Z: Any
    Omega: Any
    lambdas: tuple
    realization: str = ""

    @classmethod
    def from_ab(cls, A, B, lambdas, realization="", X=None, Y=None, Z=None):
        l1, l2, _, l4 = lambdas
        C = commutator(A, B)
        X = -2 * A - l1 if X is None else X
        Y = -2 * B - l2 if Y is None else Y
        Z = l4 - X - Y if Z is None else Z
        return cls(A, B, C, X, Y, Z, 2 * C, tuple(lambdas), realization)

    @classmethod
    def from_xyz(cls, X, Y, Z, lambdas, realization=""):
        l1, l2 = lambdas[0], lambdas[1]
        A = -(X + l1) / 2
        B = -(Y + l2) / 2
        return cls.from_ab(A, B, lambdas, realization, X=X, Y=Y, Z=Z)

    def structure(self) -> StructureParams:
        return StructureParams.from_lambdas(*self.lambdas)

    def map(self, fn, realization=None) -> "RacahGenerators":
        """Apply ``fn`` to every generator and constant (e.g. a projection to matrices)."""
        lam = tuple(l if isinstance(l, (int, Fraction)) else fn(l) for l in self.lambdas)
        return RacahGenerators(
            fn(self.A), fn(self.B), fn(self.C), fn(self.X), fn(self.Y), fn(self.Z),
            fn(self.Omega), lam, realization or self.realization,
        )


class Su11Triple(NamedTuple):
    K0: Any
    Kminus: Any
    Kplus: Any


def bargmann_su11(nu: ScalarLike, variable: str | int = "x") -> Su11Triple:
    """K0 = v d_v + nu, K- = d_v, K+ = v^2 d_v + 2 nu v in variable v."""
    nu = scalar(nu)
    if nu <= 0:
        raise ValueError("nu must be positive")
    axis = VARIABLES.index(variable) if isinstance(variable, str) else int(variable)
    e = [0, 0, 0]
    e[axis] = 1
    v = tuple(e)
    v2 = tuple(2 * k for k in e)
    K0 = DiffOp3({v: Poly3({v: 1}), (0, 0, 0): Poly3.constant(nu)})
    Km = DiffOp3({v: Poly3.constant(1)})
    Kp = DiffOp3({v: Poly3({v2: 1}), (0, 0, 0): Poly3({v: 2 * nu})})
    return Su11Triple(K0, Km, Kp)


def su11_casimir(K: Su11Triple):
    return K.K0 * K.K0 - K.K0 - K.Kplus * K.Kminus


def normalize_pair(pair) -> str:
    """Map (1,2), "21", (2,1) ... onto the cyclic labels "12", "23", "31"."""
    digits = frozenset(int(c) for c in (str(pair[0]) + str(pair[1]) if not isinstance(pair, str) else pair))
    labels = {frozenset({1, 2}): "12", frozenset({2, 3}): "23", frozenset({1, 3}): "31"}
    if digits not in labels:
        raise ValueError(f"not a pair of distinct labels in 1..3: {pair!r}")
    return labels[digits]


@dataclass(frozen=True)
class ThreeVariableModel:
    K: dict
    casimirs: dict

    def casimir(self, label) -> DiffOp3:
        label = str(label)
        if label not in ("1", "2", "3", "4"):
            label = normalize_pair(label)
        return self.casimirs[label]


@lru_cache(maxsize=64)
def _three_variable_model(nu1: Fraction, nu2: Fraction, nu3: Fraction) -> ThreeVariableModel:
    K = {i: bargmann_su11(nu, i - 1) for i, nu in zip((1, 2, 3), (nu1, nu2, nu3))}

    def summed(*ids):
        return Su11Triple(*(sum((K[i][k] for i in ids[1:]), K[ids[0]][k]) for k in range(3)))

    K["12"], K["23"], K["31"] = summed(1, 2), summed(2, 3), summed(3, 1)
    K["4"] = summed(1, 2, 3)
    return ThreeVariableModel(K, {str(k): su11_casimir(t) for k, t in K.items()})


def three_variable_model(params: RacahParams) -> ThreeVariableModel:
    """Generators and Casimirs of the three-variable model (independent of M)."""
    return _three_variable_model(params.nu1, params.nu2, params.nu3)


def intermediate_casimir(params: RacahParams, pair) -> DiffOp3:
    return three_variable_model(params).casimir(normalize_pair(pair))


def full_casimir(params: RacahParams) -> DiffOp3:
    return three_variable_model(params).casimir("4")


def check_su11_relations(params: RacahParams, K: dict | None = None) -> VerificationReport:
    """su(1,1) commutation relations across the three copies, and Q(i) = nu_i(nu_i - 1).

    ``K`` overrides the generator triples by copy index (negative controls).
    """
    with stopwatch() as t:
        K = {**three_variable_model(params).K, **(K or {})}
        residuals = {}
        for i in (1, 2, 3):
            for j in (1, 2, 3):
                delta = 1 if i == j else 0
                Ki, Kj = K[i], K[j]
                residuals[f"[K0({i}),K+({j})]"] = commutator(Ki.K0, Kj.Kplus) - Ki.Kplus * delta
                residuals[f"[K0({i}),K-({j})]"] = commutator(Ki.K0, Kj.Kminus) + Ki.Kminus * delta
                residuals[f"[K-({i}),K+({j})]"] = commutator(Ki.Kminus, Kj.Kplus) - Ki.K0 * (2 * delta)
            residuals[f"Q({i})-lambda{i}"] = su11_casimir(K[i]) - params.lam(i)
    return residual_report("su11_relations", params, residuals, t[0])


def casimir_sum_identity(params: RacahParams, casimirs: dict | None = None) -> VerificationReport:
    """Q4 = Q12 + Q23 + Q31 - Q1 - Q2 - Q3 as a normal-ordered identity.

    ``casimirs`` overrides the built operators by label (used for negative
    controls).
    """
    with stopwatch() as t:
        q = dict(three_variable_model(params).casimirs)
        q.update(casimirs or {})
        residual = q["12"] + q["23"] + q["31"] - q["1"] - q["2"] - q["3"] - q["4"]
    return residual_report("casimir_decomposition", params, {"elem": residual}, t[0])


def check_casimir_commutation(params: RacahParams) -> VerificationReport:
    """Each Q(ij) commutes with Q(i), Q(j) and Q4; Q12 and Q23 do not commute."""
    with stopwatch() as t:
        q = three_variable_model(params).casimirs
        residuals = {}
        for label in PAIR_LABELS:
            for other in (label[0], label[1], "4"):
                residuals[f"[Q({label}),Q({other})]"] = commutator(q[label], q[other])
        noncommuting = {
            f"[Q({a}),Q({b})]": not commutator(q[a], q[b]).is_zero()
            for a, b in (("12", "23"), ("23", "31"), ("31", "12"))
        }
    report = residual_report(
        "casimir_commutation", params, residuals, t[0], {"noncommuting": noncommuting}
    )
    if report.passed and not all(noncommuting.values()):
        report.status = "fail"
        report.metadata["failed"] = [k for k, v in noncommuting.items() if not v]
    return report


def pair_lambdas(lambdas: tuple, first: str, second: str) -> tuple:
    """Relabelled constants for the ordered pair (Q(ab), Q(bc)).

    The shared index b plays the role of 2, a of 1 and c of 3; the fourth
    constant is unchanged.
    """
    a, b = set(first), set(second)
    shared = a & b
    if len(shared) != 1 or first == second:
        raise ValueError(f"pair {first!r}, {second!r} must share exactly one index")
    (mid,) = shared
    (lo,) = a - shared
    (hi,) = b - shared
    return (lambdas[int(lo) - 1], lambdas[int(mid) - 1], lambdas[int(hi) - 1], lambdas[3])


def racah_generators_3var(params: RacahParams, first: str = "12", second: str = "23") -> RacahGenerators:
    """A = -Q(first)/2, B = -Q(second)/2 in three variables.

    For the default pair, X, Y, Z are Q12 - Q1, Q23 - Q2, Q31 - Q3 directly; the
    fourth constant is the operator Q4.
    """
    model = three_variable_model(params)
    first, second = normalize_pair(first), normalize_pair(second)
    q = model.casimirs
    singles = tuple(q[str(i)].as_scalar() for i in (1, 2, 3))
    lambdas = pair_lambdas((*singles, q["4"]), first, second)
    A, B = -q[first] / 2, -q[second] / 2
    if (first, second) == ("12", "23"):
        return RacahGenerators.from_ab(
            A, B, lambdas, "3var", X=q["12"] - q["1"], Y=q["23"] - q["2"], Z=q["31"] - q["3"]
        )
    return RacahGenerators.from_ab(A, B, lambdas, f"3var[{first},{second}]")


def racah_residuals(gens: RacahGenerators, sp: StructureParams | None = None) -> dict:
    sp = sp or gens.structure()
    A, B, C = gens.A, gens.B, gens.C
    AB = anticommutator(A, B)
    return {
        "[A,B]-C": commutator(A, B) - C,
        "[B,C]": commutator(B, C) - (B * B + AB + sp.d * B + sp.e1),
        "[C,A]": commutator(C, A) - (A * A + AB + sp.d * A + sp.e2),
    }


def check_racah_relations(gens: RacahGenerators, sp: StructureParams | None = None) -> VerificationReport:
    """Defining relations of the Racah algebra for (A, B, C)."""
    with stopwatch() as t:
        residuals = racah_residuals(gens, sp)
    return residual_report(
        f"racah_relations[{gens.realization}]", None, residuals, t[0],
        {"realization": gens.realization},
    )


def racah_casimir(gens: RacahGenerators, sp: StructureParams | None = None):
    sp = sp or gens.structure()
    A, B, C = gens.A, gens.B, gens.C
    A2, B2 = A * A, B * B
    return (
        anticommutator(A2, B)
        + anticommutator(A, B2)
        + A2
        + B2
        + C * C
        + (sp.d + 1) * anticommutator(A, B)
        + (2 * sp.e1 + sp.d) * A
        + (2 * sp.e2 + sp.d) * B
    )


def racah_casimir_check(gens: RacahGenerators, sp: StructureParams | None = None) -> VerificationReport:
    """The Racah Casimir is central and equals its closed-form value."""
    sp = sp or gens.structure()
    with stopwatch() as t:
        Q = racah_casimir(gens, sp)
        residuals = {
            "[Q,A]": commutator(Q, gens.A),
            "[Q,B]": commutator(Q, gens.B),
            "Q-value": Q - sp.casimir_value,
        }
    meta = {"realization": gens.realization}
    value = sp.casimir_value
    if isinstance(value, (int, Fraction)):
        meta["value"] = format_scalar(value)
    return residual_report(f"racah_casimir[{gens.realization}]", None, residuals, t[0], meta)


def z3_residuals(X, Y, Z, Omega, l1, l2, l3, l4) -> dict:
    sp = StructureParams.from_lambdas(l1, l2, l3, l4)
    return {
        "X+Y+Z-lambda4": X + Y + Z - l4,
        "[X,Y]-2Omega": commutator(X, Y) - 2 * Omega,
        "[Y,Z]-2Omega": commutator(Y, Z) - 2 * Omega,
        "[Z,X]-2Omega": commutator(Z, X) - 2 * Omega,
        "[X,Omega]": commutator(X, Omega)
        - (Y * X - X * Z + (l1 - l2 + l3) * Y - (l1 + l2 - l3) * Z + sp.f1),
        "[Y,Omega]": commutator(Y, Omega)
        - (Z * Y - Y * X + (l2 - l3 + l1) * Z - (l2 + l3 - l1) * X + sp.f2),
        "[Z,Omega]": commutator(Z, Omega)
        - (X * Z - Z * Y + (l3 - l1 + l2) * X - (l3 + l1 - l2) * Y + sp.f3),
    }


def check_z3_relations(gens: RacahGenerators, sp: StructureParams | None = None) -> VerificationReport:
    """Equitable relations for (X, Y, Z, Omega), including X + Y + Z = lambda4."""
    lambdas = sp.lambdas if sp is not None else gens.lambdas
    with stopwatch() as t:
        residuals = z3_residuals(gens.X, gens.Y, gens.Z, gens.Omega, *lambdas)
    return residual_report(
        f"z3_relations[{gens.realization}]", None, residuals, t[0],
        {"realization": gens.realization},
    )



def check_z3_cyclic(gens: RacahGenerators, sp: StructureParams | None = None) -> VerificationReport:
    """The equitable relations are stable under X -> Y -> Z -> X with lambda1 -> lambda2 -> lambda3.

    Both nontrivial cyclic shifts of (X, Y, Z) and (lambda1, lambda2, lambda3)
    are fed back through the same relation set.
    """
    l1, l2, l3, l4 = sp.lambdas if sp is not None else gens.lambdas
    X, Y, Z, W = gens.X, gens.Y, gens.Z, gens.Omega
    with stopwatch() as t:
        residuals = {}
        for shift, args in (
            ("YZX", (Y, Z, X, W, l2, l3, l1, l4)),
            ("ZXY", (Z, X, Y, W, l3, l1, l2, l4)),
        ):
            for name, r in z3_residuals(*args).items():
                residuals[f"{shift}:{name}"] = r
    return residual_report(
        f"z3_cyclic[{gens.realization}]", None, residuals, t[0],
        {"realization": gens.realization},
    )

class LowestWeightSpace:
    """Polynomials psi(x,y,z) of total degree M annihilated by K-(4).

    Every such psi is (z-y)^M Phi((x-y)/(z-y)) for a polynomial Phi of
    degree <= M.
    """

    def __init__(self, params: RacahParams):
        self.params = params
        self.M = params.M
        x, y, z = Poly3.variables()
        self._rel_x = x - y
        self._rel_z = z - y
        self.euler = DiffOp3(
            {(1, 0, 0): x, (0, 1, 0): y, (0, 0, 1): z}
        )
        self.total_lowering = DiffOp3.d(0) + DiffOp3.d(1) + DiffOp3.d(2)

    @property
    def dimension(self) -> int:
        return self.M + 1

    def embed(self, phi: Poly1) -> Poly3:
        if phi.degree > self.M:
            raise DegreeTooHigh(f"deg Phi = {phi.degree} exceeds M = {self.M}")
        out = Poly3()
        for k, c in enumerate(phi.coeffs):
            if c:
                out = out + (self._rel_x**k) * (self._rel_z ** (self.M - k)) * c
        return out

    def basis(self) -> list[Poly3]:
        return [self.embed(Poly1.monomial(k)) for k in range(self.M + 1)]

    def satisfies_conditions(self, psi: Poly3) -> bool:
        """Homogeneous of degree M and killed by d_x + d_y + d_z."""
        return self.euler.apply(psi) == psi * self.M and self.total_lowering.apply(psi).is_zero()

    def describe(self) -> dict:
        return {
            "dimension": self.dimension,
            "form": "psi(x,y,z) = (z-y)^M Phi((x-y)/(z-y)), deg Phi <= M",
            "conditions": ["(x dx + y dy + z dz) psi = M psi", "(dx + dy + dz) psi = 0"],
            "note": NU23_NOTE,
        }


def lowest_weight_space(params: RacahParams) -> LowestWeightSpace:
    return LowestWeightSpace(params)


def sturm_liouville_operators(params: RacahParams) -> tuple[DiffOp1, DiffOp1, DiffOp1]:
    """One-variable reductions S12, S23, S31 of the intermediate Casimirs."""
    n1, n2, n3 = params.nus
    M = params.M
    u = Poly1.variable()
    one = Poly1([1])
    S12 = DiffOp1(
        {
            2: u * u * (one - u),
            1: u * (u * (M - 1 - 2 * n1) + 2 * (n1 + n2)),
            0: u * (2 * M * n1) + (n1 + n2) * (n1 + n2 - 1),
        }
    )
    S23 = DiffOp1(
        {
            2: u * (u - one),
            1: u * (2 * (1 - M - n2 - n3)) + (M - 1 + 2 * n3),
            0: Poly1.constant((M + n2 + n3) * (M + n2 + n3 - 1)),
        }
    )
    S31 = DiffOp1(
        {
            2: u * (u - one) * (u - one),
            1: (one - u) * (u * (M - 1 - 2 * n1) + (1 - M - 2 * n3)),
            0: (one - u) * (2 * M * n1) + (n1 + n3) * (n1 + n3 - 1),
        }
    )
    return S12, S23, S31


def reduction_identity(params: RacahParams, S: dict | None = None) -> VerificationReport:
    """Q(ij) embed(u^k) = embed(S_ij u^k) for every k <= M and each pair.

    ``S`` overrides the one-variable operators by pair label.
    """
    with stopwatch() as t:
        space = lowest_weight_space(params)
        model = three_variable_model(params)
        S = {**dict(zip(PAIR_LABELS, sturm_liouville_operators(params))), **(S or {})}
        residuals = {}
        for label in PAIR_LABELS:
            Q = model.casimir(label)
            for k in range(params.M + 1):
                phi = Poly1.monomial(k)
                image = S[label].apply(phi)
                if image.degree > params.M:
                    # leaves the level-M space; the leaked part is the residual
                    residuals[f"Q({label})u^{k}"] = Poly1(image.coeffs[params.M + 1:])
                    continue
                residuals[f"Q({label})u^{k}"] = Q.apply(space.embed(phi)) - space.embed(image)
    return residual_report("hyper_reduction", params, residuals, t[0])


def s_sum_identity(params: RacahParams, S=None) -> VerificationReport:
    """S12 + S23 + S31 = lambda1 + lambda2 + lambda3 + lambda4."""
    with stopwatch() as t:
        S = S if S is not None else sturm_liouville_operators(params)
        residual = sum(S, DiffOp1()) - sum(params.lambdas, Fraction(0))
    return residual_report("s_sum", params, {"S12+S23+S31": residual}, t[0])


def equitable_one_variable(params: RacahParams) -> tuple[DiffOp1, DiffOp1, DiffOp1]:
    S12, S23, S31 = sturm_liouville_operators(params)
    l1, l2, l3, _ = params.lambdas
    return S12 - l1, S23 - l2, S31 - l3


def racah_generators_1var(params: RacahParams, first: str = "12", second: str = "23") -> RacahGenerators:
    """kappa1 = -S(first)/2, kappa2 = -S(second)/2; X, Y, Z from the shifted S-operators."""
    S = dict(zip(PAIR_LABELS, sturm_liouville_operators(params)))
    first, second = normalize_pair(first), normalize_pair(second)
    lambdas = pair_lambdas(params.lambdas, first, second)
    A, B = -S[first] / 2, -S[second] / 2
    if (first, second) == ("12", "23"):
        X, Y, Z = equitable_one_variable(params)
        return RacahGenerators.from_ab(A, B, lambdas, "1var", X=X, Y=Y, Z=Z)
    return RacahGenerators.from_ab(A, B, lambdas, f"1var[{first},{second}]")
