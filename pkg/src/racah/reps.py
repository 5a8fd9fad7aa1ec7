"""Finite-dimensional Racah-algebra representations and 6j overlaps.

On the level-M lowest-weight space, S12 is lower bidiagonal and S23 upper
bidiagonal in the monomial basis 1, u, ..., u^M. S31 is lower bidiagonal
in the shifted basis (1-u)^n. Each therefore has exact eigenvectors by
triangular back-substitution, giving an independent check on the printed
hypergeometric eigenfunctions.

Eigenfunction normalization follows the hypergeometric forms:

* Phi12_n = u^n 2F1(n-M, n+2nu1; 2n+2nu1+2nu2; u), so its u^n coefficient is 1;
* Phi23_n = 2F1(n-M, 1-M-n-2nu2-2nu3; 1-M-2nu3; u), so its constant term is 1;
* Phi31_n = (1-u)^M 2F1(n-M, 1-M-n-2nu3-2nu1; 1-M-2nu1; 1/(1-u)), so its
  u^M coefficient is (-1)^M.

W[n_a, n_b] is defined by Phi_a[n_a] = sum_b W[n_a, n_b] Phi_b[n_b].
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .exact import Poly1, format_scalar, pochhammer, terminating_2f1
from .operators import Matrix, SingularMatrix, to_matrix
from .report import VerificationReport, combine, residual_report, stopwatch
from .su11 import (
    NU23_NOTE,
    PAIR_LABELS,
    RacahGenerators,
    RacahParams,
    check_racah_relations,
    check_z3_relations,
    normalize_pair,
    racah_casimir_check,
    sturm_liouville_operators,
)
from .su2 import SquaredEntryMatrix, _split_square, orthonormal_generators

BASES = ("monomial", "udld", "orthonormal")

HYPERGEOMETRIC_NORMALIZATION = (
    "hypergeometric: Phi12_n has u^n coefficient 1; Phi23_n has constant term 1; "
    "Phi31_n has u^M coefficient (-1)^M"
)


class DegenerateParameters(ValueError):
    """Repeated eigenvalues: eigenbases are not unique."""


class SingularSystem(ValueError):
    """An eigenfunction family is linearly dependent."""


class NotLeonard(ValueError):
    """The transformed operator is not irreducible tridiagonal."""

    def __init__(self, message: str, certificate: "Certificate | None" = None):
        super().__init__(message)
        self.certificate = certificate


class SpectrumMismatch(ValueError):
    """An operator does not have the expected simple spectrum."""


class ZeroOffdiagonal(ValueError):
    """A bidiagonal operator has a vanishing off-diagonal entry."""


def pair_nus(params: RacahParams, label: str) -> Fraction:
    """Base value nu_a + nu_b of the eigenvalue ladder for Q(ab)."""
    label = normalize_pair(label)
    return params.nu(int(label[0])) + params.nu(int(label[1]))


def ladder(params: RacahParams, label: str) -> list[Fraction]:
    """Eigenvalues nu_ab (nu_ab - 1) with nu_ab = nu_a + nu_b + n, n = 0..M."""
    base = pair_nus(params, label)
    return [(base + n) * (base + n - 1) for n in range(params.M + 1)]


def spectra(params: RacahParams) -> dict:
    """Closed-form eigenvalues of A = -S12/2 and B = -S23/2 in basis order."""
    n1, n2, n3 = params.nus
    M = params.M
    lam_A = [-(n + n1 + n2) * (n + n1 + n2 - 1) / 2 for n in range(M + 1)]
    lam_B = [-(M - n + n2 + n3) * (M - n + n2 + n3 - 1) / 2 for n in range(M + 1)]
    return {
        "lambda_A": lam_A,
        "lambda_B": lam_B,
        "nu12": [n1 + n2 + n for n in range(M + 1)],
        "nu23": [n2 + n3 + n for n in range(M + 1)],
    }


def s_matrices(params: RacahParams) -> dict[str, Matrix]:
    """S12, S23, S31 on polynomials of degree <= M, monomial basis."""
    return {
        label: to_matrix(op, params.M)
        for label, op in zip(PAIR_LABELS, sturm_liouville_operators(params))
    }


@dataclass
class RepRealization:
    params: RacahParams
    basis: str
    A: Any
    B: Any
    C: Any = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.C is None:
            self.C = self.A * self.B - self.B * self.A


def _check_simple(values, what: str) -> None:
    seen = set()
    for v in values:
        if v in seen:
            raise DegenerateParameters(f"{what} has repeated eigenvalue {format_scalar(v)}")
        seen.add(v)


def build_rep(params: RacahParams, basis: str = "monomial") -> RepRealization:
    """(M+1)-dimensional representation of A, B in the requested basis.

    ``monomial``: matrices of -S12/2, -S23/2 on 1, u, ..., u^M;
    ``udld``: A lower bidiagonal with unit off-diagonal, B upper bidiagonal
    with off-diagonal phi_n; ``orthonormal``: squared-entry matrices of
    -G1/2 - lambda1/2 and -G2/2 - lambda2/2 from the su(2) model.
    """
    if basis not in BASES:
        raise ValueError(f"unknown basis {basis!r}; expected one of {BASES}")
    sp = spectra(params)
    _check_simple(sp["lambda_A"], "A")
    _check_simple(sp["lambda_B"], "B")
    size = params.M + 1
    if basis == "monomial":
        S = s_matrices(params)
        return RepRealization(params, basis, S["12"] * Fraction(-1, 2), S["23"] * Fraction(-1, 2))
    if basis == "orthonormal":
        og = orthonormal_generators(params)
        return RepRealization(params, basis, og["A"], og["B"])
    A = [[Fraction(0)] * size for _ in range(size)]
    B = [[Fraction(0)] * size for _ in range(size)]
    for n in range(size):
        A[n][n] = sp["lambda_A"][n]
        B[n][n] = sp["lambda_B"][n]
        if n + 1 < size:
            A[n + 1][n] = Fraction(1)
        if n > 0:
            B[n - 1][n] = udld_phi(params, n)
    return RepRealization(params, basis, Matrix(A), Matrix(B))


def udld_phi(params: RacahParams, n: int) -> Fraction:
    """phi_n = n (M-n+1) (n+2nu1-1) (M-n+2nu3) / 4."""
    M, n1, n3 = params.M, params.nu1, params.nu3
    return n * (M - n + 1) * (n + 2 * n1 - 1) * (M - n + 2 * n3) / 4


def racah_generators_matrix(params: RacahParams, basis: str = "monomial") -> RacahGenerators:
    """Racah generators as (M+1)x(M+1) matrices in the chosen basis."""
    rep = build_rep(params, basis)
    return RacahGenerators.from_ab(rep.A, rep.B, params.lambdas, f"matrix[{basis}]")


def check_matrix_representation(params: RacahParams, basis: str = "monomial") -> VerificationReport:
    """Racah relations, Z3 relations and the Casimir value on the matrix representation."""
    gens = racah_generators_matrix(params, basis)
    parts = [check_racah_relations(gens), check_z3_relations(gens), racah_casimir_check(gens)]
    for r in parts:
        r.params = params
    return combine(f"matrix_representation[{basis}]", params, parts)


def _triangular_kind(mat: Matrix) -> str:
    n = mat.rows
    lower = all(not mat[i, j] for i in range(n) for j in range(i + 1, n))
    upper = all(not mat[i, j] for i in range(n) for j in range(i))
    if lower:
        return "lower"
    if upper:
        return "upper"
    raise ValueError("matrix is not triangular")


def triangular_eigenvectors(mat: Matrix) -> list[tuple[Fraction, list[Fraction]]]:
    """Exact eigenpairs of a triangular matrix by back-substitution.

    Pair k belongs to diagonal entry k; its eigenvector has entry k equal to 1
    and vanishes on the far side of k.
    """
    kind = _triangular_kind(mat)
    diag = mat.diag()
    _check_simple(diag, "triangular matrix")
    n = mat.rows
    out = []
    for k, lam in enumerate(diag):
        v = [Fraction(0)] * n
        v[k] = Fraction(1)
        order = range(k + 1, n) if kind == "lower" else range(k - 1, -1, -1)
        for i in order:
            span = range(k, i) if kind == "lower" else range(i + 1, k + 1)
            acc = sum((mat[i, j] * v[j] for j in span), Fraction(0))
            v[i] = acc / (lam - diag[i])
        out.append((lam, v))
    return out


def eigenbasis(mat: Matrix, eigenvalues) -> Matrix:
    """Columns are eigenvectors for the given (distinct) eigenvalues, in that order."""
    _check_simple(eigenvalues, "requested spectrum")
    cols = []
    for lam in eigenvalues:
        null = (mat - lam).nullspace()
        if len(null) != 1:
            raise SpectrumMismatch(
                f"eigenvalue {format_scalar(lam)} has geometric multiplicity {len(null)}"
            )
        cols.append(null[0])
    return Matrix.from_columns(cols)


@dataclass(frozen=True)
class EigenSolution:
    label: str
    n: int
    nu_pair: Fraction
    phi: Poly1

    @property
    def eigenvalue(self) -> Fraction:
        return self.nu_pair * (self.nu_pair - 1)


def hypergeometric_eigenfunction(params: RacahParams, label: str, n: int) -> Poly1:
    n1, n2, n3 = params.nus
    M = params.M
    label = normalize_pair(label)
    if label == "12":
        return Poly1.monomial(n) * terminating_2f1(n - M, n + 2 * n1, 2 * n + 2 * n1 + 2 * n2)
    if label == "23":
        return terminating_2f1(n - M, 1 - M - n - 2 * n2 - 2 * n3, 1 - M - 2 * n3)
    series = terminating_2f1(n - M, 1 - M - n - 2 * n3 - 2 * n1, 1 - M - 2 * n1)
    return series.homogenize(Poly1([1, -1]), M)


def eigen_solutions(params: RacahParams, label: str) -> list[EigenSolution]:
    """The M+1 hypergeometric eigenfunctions of S_label, each checked by direct application."""
    label = normalize_pair(label)
    S = dict(zip(PAIR_LABELS, sturm_liouville_operators(params)))[label]
    base = pair_nus(params, label)
    out = []
    for n in range(params.M + 1):
        phi = hypergeometric_eigenfunction(params, label, n)
        sol = EigenSolution(label, n, base + n, phi)
        if phi.degree > params.M or S.apply(phi) != phi * sol.eigenvalue:
            raise SpectrumMismatch(f"Phi{label}_{n} is not an eigenfunction of S{label}")
        out.append(sol)
    return out


def _normalizer(label: str, M: int) -> Callable[[Poly1, int], Fraction]:
    if label == "12":
        return lambda p, n: p.coeff(n)
    if label == "23":
        return lambda p, n: p.coeff(0)
    return lambda p, n: p.coeff(M) * (-1) ** M


def _coefficient_columns(polys: list[Poly1], M: int) -> Matrix:
    return Matrix.from_columns([[p.coeff(k) for k in range(M + 1)] for p in polys])


@dataclass
class OverlapTable:
    """Overlap coefficients W[n_a, n_b] between two eigenfunction families."""

    W: Matrix
    params: RacahParams
    pair: tuple[str, str] = ("12", "23")
    normalization: str = HYPERGEOMETRIC_NORMALIZATION
    method: str = ""
    metadata: dict = field(default_factory=dict)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, OverlapTable) and self.W == other.W and self.pair == other.pair

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "pair": list(self.pair),
            "normalization": self.normalization,
            "method": self.method,
            "W": [[format_scalar(v) for v in row] for row in self.W.entries],
            "metadata": self.metadata,
        }

    @classmethod
    def from_json(cls, data: dict) -> "OverlapTable":
        return cls(
            W=Matrix(data["W"]),
            params=RacahParams.from_json(data["params"]),
            pair=tuple(data.get("pair", ("12", "23"))),
            normalization=data["normalization"],
            method=data.get("method", ""),
            metadata=data.get("metadata", {}),
        )

    def to_csv(self) -> str:
        a, b = self.pair
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"n{a}\\n{b}"] + [str(m) for m in range(self.W.cols)])
        for n, row in enumerate(self.W.entries):
            writer.writerow([str(n)] + [format_scalar(v) for v in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, params: RacahParams) -> "OverlapTable":
        rows = list(csv.reader(io.StringIO(text)))
        header = rows[0][0]
        a, b = header[1:].split("\\n")
        return cls(W=Matrix([r[1:] for r in rows[1:]]), params=params, pair=(a, b))


def _resolve_pair(pair) -> tuple[str, str]:
    a, b = (normalize_pair(p) for p in pair)
    if a == b:
        raise ValueError("overlap needs two different intermediate Casimirs")
    return a, b


def racah_overlaps_hypergeometric(params: RacahParams, pair=("12", "23")) -> OverlapTable:
    """W from the printed 2F1 eigenfunctions, solving one exact linear system."""
    a, b = _resolve_pair(pair)
    M = params.M
    Va = _coefficient_columns([s.phi for s in eigen_solutions(params, a)], M)
    Vb = _coefficient_columns([s.phi for s in eigen_solutions(params, b)], M)
    try:
        Wt = Vb.solve(Va)
    except SingularMatrix as exc:
        raise SingularSystem(f"Phi{b} family is linearly dependent") from exc
    return OverlapTable(Wt.T, params, (a, b), method="hypergeometric")


def matrix_eigenfunctions(params: RacahParams, label: str) -> list[tuple[int, Poly1, Fraction]]:
    """Eigenfunctions of S_label from triangular back-substitution.

    Returns (n, unnormalized polynomial, normalization factor) triples; the
    normalized eigenfunction is polynomial * factor.
    """
    label = normalize_pair(label)
    M = params.M
    S = dict(zip(PAIR_LABELS, sturm_liouville_operators(params)))[label]
    if label == "31":
        # u = 1 - v: S31 becomes lower bidiagonal in powers of v
        mat = to_matrix(S.substitute_affine(-1, 1), M)
    else:
        mat = to_matrix(S, M)
    ladder_index = {value: n for n, value in enumerate(ladder(params, label))}
    norm = _normalizer(label, M)
    out = []
    for lam, vec in triangular_eigenvectors(mat):
        if lam not in ladder_index:
            raise SpectrumMismatch(f"S{label} eigenvalue {format_scalar(lam)} is off the ladder")
        poly = Poly1(vec)
        if label == "31":
            poly = poly.substitute_affine(-1, 1)
        n = ladder_index[lam]
        scale = norm(poly, n)
        if not scale:
            raise SingularSystem(f"S{label} eigenvector {n} has zero normalization coefficient")
        out.append((n, poly, 1 / scale))
    out.sort(key=lambda t: t[0])
    return out


def racah_overlaps_matrix(params: RacahParams, pair=("12", "23")) -> OverlapTable:
    """W from exact eigenvectors of the bidiagonal S-matrices.

    The raw change-of-basis matrix between back-substituted eigenvectors is
    rescaled row- and column-wise to the hypergeometric normalization.
    """
    a, b = _resolve_pair(pair)
    M = params.M
    fam_a = matrix_eigenfunctions(params, a)
    fam_b = matrix_eigenfunctions(params, b)
    Va = _coefficient_columns([p for _, p, _ in fam_a], M)
    Vb = _coefficient_columns([p for _, p, _ in fam_b], M)
    try:
        raw = Vb.solve(Va).T
    except SingularMatrix as exc:
        raise SingularSystem(f"S{b} eigenvectors are linearly dependent") from exc
    rows = [
        [raw[n, m] * fam_a[n][2] / fam_b[m][2] for m in range(M + 1)]
        for n in range(M + 1)
    ]
    return OverlapTable(Matrix(rows), params, (a, b), method="matrix")


def overlap_agreement(params: RacahParams, pair=("12", "23")) -> VerificationReport:
    with stopwatch() as t:
        hyp = racah_overlaps_hypergeometric(params, pair)
        mat = racah_overlaps_matrix(params, pair)
        det = hyp.W.det()
    report = residual_report(
        f"overlap_agreement[{hyp.pair[0]},{hyp.pair[1]}]", params,
        {"W_hyp-W_mat": hyp.W - mat.W}, t[0],
        {"det_W": format_scalar(det), "note": NU23_NOTE},
    )
    if report.passed and not det:
        report.status = "fail"
        report.metadata["failed"] = ["det_W"]
    return report


def is_irreducible_tridiagonal(mat: Matrix) -> bool:
    n = mat.rows
    for i in range(n):
        for j in range(n):
            if abs(i - j) > 1 and mat[i, j]:
                return False
    return all(mat[i + 1, i] and mat[i, i + 1] for i in range(n - 1))


@dataclass
class Certificate:
    kind: str
    passed: bool
    labels: tuple
    matrices: dict
    params: RacahParams | None = None
    metadata: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "status": "pass" if self.passed else "fail",
            "labels": list(self.labels),
            "params": self.params.to_json() if self.params else None,
            "matrices": {k: m.to_json() for k, m in self.matrices.items()},
            "metadata": self.metadata,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        return cls(
            kind=data["kind"],
            passed=data["status"] == "pass",
            labels=tuple(data["labels"]),
            matrices={k: Matrix.from_json(m) for k, m in data["matrices"].items()},
            params=RacahParams.from_json(data["params"]) if data["params"] else None,
            metadata=data.get("metadata", {}),
        )


def leonard_pair_check(P: Matrix, R: Matrix, spec_P, spec_R, labels=("P", "R")) -> Certificate:
    """Each of P, R must be irreducible tridiagonal in the other's eigenbasis."""
    VP = eigenbasis(P, spec_P)
    VR = eigenbasis(R, spec_R)
    R_in_P = VP.inverse() * R * VP
    P_in_R = VR.inverse() * P * VR
    ok_R = is_irreducible_tridiagonal(R_in_P)
    ok_P = is_irreducible_tridiagonal(P_in_R)
    a, b = labels
    cert = Certificate(
        kind="leonard_pair",
        passed=ok_R and ok_P,
        labels=(a, b),
        matrices={f"{b}_in_{a}_eigenbasis": R_in_P, f"{a}_in_{b}_eigenbasis": P_in_R},
        metadata={f"{b}_in_{a}_eigenbasis": ok_R, f"{a}_in_{b}_eigenbasis": ok_P},
    )
    if not cert.passed:
        raise NotLeonard(f"bandwidth or irreducibility violation for pair {labels}", cert)
    return cert


def leonard_pair_certificate(rep: RepRealization) -> Certificate:
    """Leonard-pair certificate for a rational (monomial or UD-LD) representation."""
    if not isinstance(rep.A, Matrix):
        raise TypeError("Leonard certificates need a rational matrix representation")
    spec_A = rep.A.diag()
    spec_B = rep.B.diag()
    for mat in (rep.A, rep.B):
        _triangular_kind(mat)
    _check_simple(spec_A, "A")
    _check_simple(spec_B, "B")
    cert = leonard_pair_check(rep.A, rep.B, spec_A, spec_B, ("A", "B"))
    cert.params = rep.params
    cert.metadata["basis"] = rep.basis
    return cert


def leonard_triple_certificate(params: RacahParams, matrices: dict | None = None) -> Certificate:
    """Pairwise Leonard-pair certificates for S12, S23, S31 on the level-M space.

    Six checks in all: each operator against the eigenbasis of each other one.
    """
    mats = dict(s_matrices(params))
    mats.update(matrices or {})
    spectra_ = {label: ladder(params, label) for label in PAIR_LABELS}
    bases = {label: eigenbasis(mats[label], spectra_[label]) for label in PAIR_LABELS}
    inverses = {label: bases[label].inverse() for label in PAIR_LABELS}
    out: dict[str, Matrix] = {}
    status: dict[str, bool] = {}
    for a in PAIR_LABELS:
        for b in PAIR_LABELS:
            if a == b:
                continue
            key = f"S{b}_in_S{a}_eigenbasis"
            out[key] = inverses[a] * mats[b] * bases[a]
            status[key] = is_irreducible_tridiagonal(out[key])
    cert = Certificate(
        kind="leonard_triple",
        passed=all(status.values()),
        labels=PAIR_LABELS,
        matrices=out,
        params=params,
        metadata=status,
    )
    if not cert.passed:
        bad = [k for k, v in status.items() if not v]
        raise NotLeonard(f"not a Leonard triple: {bad}", cert)
    return cert


def _radical_mul(a: tuple[Fraction, int], b: tuple[Fraction, int]) -> tuple[Fraction, int]:
    s, r = _split_square(a[1] * b[1])
    return a[0] * b[0] * s, r


def _radical_inv(a: tuple[Fraction, int]) -> tuple[Fraction, int]:
    q, r = a
    return 1 / (q * r), r


def udld_transform(rep: RepRealization) -> RepRealization:
    """Diagonal rescaling that makes A's off-diagonal all ones.

    The new basis is e~_n = s_n e_n with s_0 = 1 and s_{n+1} = s_n A[n+1, n].
    B's off-diagonal must then equal phi_n exactly.
    """
    params = rep.params
    size = params.M + 1
    if isinstance(rep.A, SquaredEntryMatrix):
        A_ent, B_ent = dict(rep.A.entries), dict(rep.B.entries)
    else:
        A_ent = {(i, j): (v, 1) for i, r in enumerate(rep.A.entries) for j, v in enumerate(r) if v}
        B_ent = {(i, j): (v, 1) for i, r in enumerate(rep.B.entries) for j, v in enumerate(r) if v}
    scale = [(Fraction(1), 1)]
    for n in range(size - 1):
        a = A_ent.get((n + 1, n))
        if a is None:
            raise ZeroOffdiagonal(f"A[{n + 1},{n}] = 0")
        scale.append(_radical_mul(scale[-1], a))
    inv = [_radical_inv(s) for s in scale]

    def conjugate(entries, what):
        rows = [[Fraction(0)] * size for _ in range(size)]
        for (m, n), v in entries.items():
            q, r = _radical_mul(_radical_mul(v, scale[n]), inv[m])
            if r != 1:
                raise ValueError(f"{what}[{m},{n}] is irrational after rescaling")
            rows[m][n] = q
        return Matrix(rows)

    A = conjugate(A_ent, "A")
    B = conjugate(B_ent, "B")
    bad_A = [n for n in range(size - 1) if A[n + 1, n] != 1]
    bad_B = [n for n in range(1, size) if B[n - 1, n] != udld_phi(params, n)]
    if bad_A or bad_B:
        raise ValueError(f"UD-LD transform mismatch: A at {bad_A}, B at {bad_B}")
    meta = {
        "source_basis": rep.basis,
        "scale_squared": [format_scalar(q * q * r) for q, r in scale],
    }
    if rep.basis == "orthonormal":
        n1, M = params.nu1, params.M
        expected = [
            Fraction(pochhammer(-M, n) * (-1) ** n * pochhammer(1, n)) * pochhammer(2 * n1, n) ** 2 / 4**n
            for n in range(size)
        ]
        meta["matches_printed_scaling"] = [q * q * r for q, r in scale] == expected
    return RepRealization(params, "udld", A, B, metadata=meta)


def recurrence_check(table: OverlapTable) -> VerificationReport:
    """Rebuild W row by row from its three-term recurrence and compare.

    With T the (tridiagonal) matrix of S_b in the Phi_a eigenbasis and
    mu_m the S_b eigenvalues,
    T[n-1,n] W[n-1,m] + T[n,n] W[n,m] + T[n+1,n] W[n+1,m] = mu_m W[n,m].
    """
    params = table.params
    a, b = table.pair
    M = params.M
    with stopwatch() as t:
        mats = s_matrices(params)
        Va = _coefficient_columns([s.phi for s in eigen_solutions(params, a)], M)
        T = Va.inverse() * mats[b] * Va
        mu = ladder(params, b)
        W = table.W
        rebuilt = [list(W.row(0))]
        closing = []
        for n in range(M + 1):
            for m in range(M + 1):
                prev = rebuilt[n - 1][m] * T[n - 1, n] if n > 0 else Fraction(0)
                rest = (mu[m] - T[n, n]) * rebuilt[n][m] - prev
                if n < M:
                    if m == 0:
                        rebuilt.append([Fraction(0)] * (M + 1))
                    if not T[n + 1, n]:
                        raise ZeroOffdiagonal(f"T[{n + 1},{n}] = 0")
                    rebuilt[n + 1][m] = rest / T[n + 1, n]
                else:
                    closing.append(rest)
        residuals = {
            "tridiagonal": Fraction(0) if is_irreducible_tridiagonal(T) else Fraction(1),
            "rebuilt-W": Matrix(rebuilt) - W,
            "closing_row": closing,
        }
    return residual_report(f"w_recurrence[{a},{b}]", params, residuals, t[0])


__all__ = [
    "BASES",
    "Certificate",
    "DegenerateParameters",
    "EigenSolution",
    "NotLeonard",
    "OverlapTable",
    "RepRealization",
    "SingularSystem",
    "SpectrumMismatch",
    "ZeroOffdiagonal",
    "build_rep",
    "check_matrix_representation",
    "eigen_solutions",
    "eigenbasis",
    "leonard_pair_certificate",
    "leonard_triple_certificate",
    "overlap_agreement",
    "racah_overlaps_hypergeometric",
    "racah_generators_matrix",
    "racah_overlaps_matrix",
    "recurrence_check",
    "spectra",
    "triangular_eigenvectors",
    "udld_transform",
]
