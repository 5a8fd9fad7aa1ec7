"""Differential operators with polynomial coefficients, and exact matrices.

Operators are kept in normal order: every polynomial coefficient stands to
the left of every derivative, ``sum_k p_k(u) d^k``. Products are
renormalised with the Leibniz rule, so two operators are equal exactly when
their normal-ordered term maps coincide.

``*`` is the ring product throughout (operator composition, matrix product);
an ``int`` or ``Fraction`` mixed into a sum stands for that multiple of the
identity. This lets the same relation-checking code run over operators in
one or three variables and over matrices.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .exact import (
    Poly1,
    Poly3,
    binomial_multi,
    format_scalar,
    graded_monomials,
    scalar,
)


class NotInvariant(ValueError):
    """An operator maps the finite polynomial space outside itself."""


def commutator(a, b):
    return a * b - b * a


def anticommutator(a, b):
    return a * b + b * a


def compose(a, b):
    return a * b


def apply(op, f):
    return op.apply(f)


class _DiffOpBase:
    poly_type: type
    zero_order: tuple | int

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for k, p in (terms or {}).items():
            if not isinstance(p, self.poly_type):
                p = self.poly_type.constant(p)
            if p:
                k = self._key(k)
                clean[k] = clean[k] + p if k in clean else p
        self.terms = {k: p for k, p in clean.items() if p}

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = {k: p for k, p in terms.items() if p}
        return obj

    @classmethod
    def identity(cls):
        return cls.scalar(1)

    @classmethod
    def scalar(cls, c):
        return cls({cls.zero_order: cls.poly_type.constant(c)})

    @classmethod
    def multiplication(cls, p):
        return cls({cls.zero_order: p})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def as_scalar(self) -> Fraction | None:
        """Return c if the operator is c times the identity, else None."""
        if not self.terms:
            return Fraction(0)
        if set(self.terms) != {self.zero_order}:
            return None
        p = self.terms[self.zero_order]
        c = _constant_term(p)
        return c if p == self.poly_type.constant(c) else None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.scalar(other)
        return type(other) is type(self) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((type(self).__name__, frozenset(self.terms.items())))

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scalar(other)
        if type(other) is type(self):
            return other
        return None

    def __neg__(self):
        return self._raw({k: -p for k, p in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for k, p in other.terms.items():
            out[k] = out[k] + p if k in out else p
        return self._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self._raw({})
            return self._raw({k: p * other for k, p in self.terms.items()})
        if type(other) is not type(self):
            return NotImplemented
        return self._compose(other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        out = self.identity()
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, f):
        return self.apply(f)


def _constant_term(p) -> Fraction:
    if isinstance(p, Poly1):
        return p.coeff(0)
    return p.terms.get((0, 0, 0), Fraction(0))


class DiffOp1(_DiffOpBase):
    """Operator sum_k p_k(u) d^k/du^k on polynomials in u."""

    poly_type = Poly1
    zero_order = 0

    @staticmethod
    def _key(k) -> int:
        k = int(k)
        if k < 0:
            raise ValueError("negative derivative order")
        return k

    @classmethod
    def d(cls, k: int = 1) -> "DiffOp1":
        return cls({k: Poly1([1])})

    @classmethod
    def u(cls) -> "DiffOp1":
        return cls({0: Poly1.variable()})

    @property
    def order(self) -> int:
        return max(self.terms, default=-1)

    def coefficient(self, k: int) -> Poly1:
        return self.terms.get(k, Poly1())

    def apply(self, f: Poly1) -> Poly1:
        out = Poly1()
        for k, p in self.terms.items():
            df = f.derivative(k)
            if df:
                out = out + p * df
        return out

    def _compose(self, other: "DiffOp1") -> "DiffOp1":
        out: dict[int, Poly1] = {}
        derivs: dict[tuple[int, int], Poly1] = {}
        for k, p in self.terms.items():
            for l, q in other.terms.items():
                for i in range(min(k, q.degree) + 1):
                    dq = derivs.get((l, i))
                    if dq is None:
                        dq = derivs[(l, i)] = q.derivative(i)
                    term = p * dq * comb(k, i)
                    key = k - i + l
                    out[key] = out[key] + term if key in out else term
        return DiffOp1._raw(out)

    def substitute_affine(self, alpha, beta) -> "DiffOp1":
        """Rewrite the operator in the variable v where u = alpha*v + beta."""
        alpha, beta = scalar(alpha), scalar(beta)
        if not alpha:
            raise ValueError("affine change of variable needs alpha != 0")
        return DiffOp1._raw(
            {
                k: p.substitute_affine(alpha, beta) * (1 / alpha**k)
                for k, p in self.terms.items()
            }
        )

    def __repr__(self) -> str:
        return f"DiffOp1({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            d = "" if k == 0 else ("d" if k == 1 else f"d^{k}")
            parts.append(f"({self.terms[k]}){'*' + d if d else ''}")
        return " + ".join(parts)

    def to_json(self) -> list[dict]:
        return [
            {"derivative_order": k, "coefficient": self.terms[k].to_json()}
            for k in sorted(self.terms)
        ]

    @classmethod
    def from_json(cls, data) -> "DiffOp1":
        return cls(
            {t["derivative_order"]: Poly1.from_json(t["coefficient"]) for t in data}
        )


Orders = tuple[int, int, int]


class DiffOp3(_DiffOpBase):
    """Operator sum p_k(x,y,z) d^kx/dx d^ky/dy d^kz/dz on polynomials."""

    poly_type = Poly3
    zero_order = (0, 0, 0)

    @staticmethod
    def _key(k) -> Orders:
        k = tuple(int(v) for v in k)
        if len(k) != 3 or min(k) < 0:
            raise ValueError(f"bad derivative orders {k}")
        return k

    @classmethod
    def d(cls, axis: int, k: int = 1) -> "DiffOp3":
        orders = [0, 0, 0]
        orders[axis] = k
        return cls({tuple(orders): Poly3.constant(1)})

    @property
    def order(self) -> int:
        return max((sum(k) for k in self.terms), default=-1)

    def coefficient(self, k: Orders) -> Poly3:
        return self.terms.get(tuple(k), Poly3())

    def apply(self, f: Poly3) -> Poly3:
        out = Poly3()
        for k, p in self.terms.items():
            df = f.partial(k)
            if df:
                out = out + p * df
        return out

    def _compose(self, other: "DiffOp3") -> "DiffOp3":
        out: dict[Orders, Poly3] = {}
        derivs: dict[tuple[Orders, Orders], Poly3] = {}
        for k, p in self.terms.items():
            for l, q in other.terms.items():
                for i0 in range(k[0] + 1):
                    for i1 in range(k[1] + 1):
                        for i2 in range(k[2] + 1):
                            i = (i0, i1, i2)
                            dq = derivs.get((l, i))
                            if dq is None:
                                dq = derivs[(l, i)] = q.partial(i)
                            if not dq:
                                continue
                            term = p * dq * binomial_multi(k, i)
                            key = (k[0] - i0 + l[0], k[1] - i1 + l[1], k[2] - i2 + l[2])
                            out[key] = out[key] + term if key in out else term
        return DiffOp3._raw(out)

    def __repr__(self) -> str:
        return f"DiffOp3({len(self.terms)} terms, order {self.order})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            d = "*".join(
                f"d{v}" if n == 1 else f"d{v}^{n}" for v, n in zip("xyz", k) if n
            )
            parts.append(f"({self.terms[k]}){'*' + d if d else ''}")
        return " + ".join(parts)

    def to_json(self) -> list[dict]:
        return [
            {"derivative_orders": list(k), "coefficient": self.terms[k].to_json()}
            for k in sorted(self.terms)
        ]

    @classmethod
    def from_json(cls, data) -> "DiffOp3":
        return cls(
            {
                tuple(t["derivative_orders"]): Poly3.from_json(t["coefficient"])
                for t in data
            }
        )


class SingularMatrix(ZeroDivisionError):
    pass


class Matrix:
    """Dense matrix over the rationals.

    Column ``n`` of an operator matrix holds the coordinates of the image of
    basis vector ``n``.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable]):
        rows = tuple(tuple(scalar(v) for v in row) for row in entries)
        if not rows or not rows[0]:
            raise ValueError("matrix needs at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = width
        self.entries = rows

    @classmethod
    def _raw(cls, rows: list[list[Fraction]]) -> "Matrix":
        obj = cls.__new__(cls)
        obj.rows = len(rows)
        obj.cols = len(rows[0])
        obj.entries = tuple(tuple(r) for r in rows)
        return obj

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls._raw([[Fraction(0)] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.diagonal([1] * n)

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        n = len(values)
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i, v in enumerate(values):
            rows[i][i] = scalar(v)
        return cls._raw(rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "Matrix":
        return cls([list(r) for r in zip(*columns)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def column(self, j: int) -> list[Fraction]:
        return [r[j] for r in self.entries]

    def diag(self) -> list[Fraction]:
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]

    def transpose(self) -> "Matrix":
        return Matrix._raw([list(c) for c in zip(*self.entries)])

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def as_scalar(self) -> Fraction | None:
        if not self.is_square():
            return None
        c = self.entries[0][0]
        for i, r in enumerate(self.entries):
            for j, v in enumerate(r):
                if v != (c if i == j else 0):
                    return None
        return c

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)) and self.is_square():
            other = Matrix.identity(self.rows) * other
        return isinstance(other, Matrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        body = "; ".join(", ".join(format_scalar(v) for v in r) for r in self.entries)
        return f"Matrix([{body}])"

    def _coerce(self, other) -> "Matrix | None":
        if isinstance(other, (int, Fraction)):
            if not self.is_square():
                raise ValueError("scalar shift needs a square matrix")
            return Matrix.identity(self.rows) * other
        if isinstance(other, Matrix):
            if other.shape != self.shape:
                raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
            return other
        return None

    def __neg__(self) -> "Matrix":
        return Matrix._raw([[-v for v in r] for r in self.entries])

    def __add__(self, other) -> "Matrix":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Matrix._raw(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, o.entries)]
        )

    __radd__ = __add__

    def __sub__(self, other) -> "Matrix":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Matrix._raw(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, o.entries)]
        )

    def __rsub__(self, other) -> "Matrix":
        return (-self) + other

    def __mul__(self, other) -> "Matrix":
        if isinstance(other, (int, Fraction)):
            return Matrix._raw([[v * other for v in r] for r in self.entries])
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        rhs = other.entries
        rhs_sparse = [[(j, v) for j, v in enumerate(r) if v] for r in rhs]
        out = []
        for r in self.entries:
            acc = [Fraction(0)] * other.cols
            for k, a in enumerate(r):
                if a:
                    for j, b in rhs_sparse[k]:
                        acc[j] += a * b
            out.append(acc)
        return Matrix._raw(out)

    def __rmul__(self, other) -> "Matrix":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __matmul__(self, other) -> "Matrix":
        return self * other

    def __truediv__(self, other) -> "Matrix":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def apply(self, vector: Sequence) -> list[Fraction]:
        return [sum((a * b for a, b in zip(r, vector)), Fraction(0)) for r in self.entries]

    def _echelon(self):
        """Row-reduce a copy; returns (reduced rows, pivot columns, sign)."""
        rows = [list(r) for r in self.entries]
        pivots = []
        sign = 1
        r = 0
        for c in range(self.cols):
            p = next((i for i in range(r, self.rows) if rows[i][c]), None)
            if p is None:
                continue
            if p != r:
                rows[r], rows[p] = rows[p], rows[r]
                sign = -sign
            pv = rows[r][c]
            for i in range(self.rows):
                if i != r and rows[i][c]:
                    f = rows[i][c] / pv
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return rows, pivots, sign

    def rank(self) -> int:
        return len(self._echelon()[1])

    def det(self) -> Fraction:
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        rows, pivots, sign = self._echelon()
        if len(pivots) < self.rows:
            return Fraction(0)
        out = Fraction(sign)
        for i in range(self.rows):
            out *= rows[i][i]
        return out

    def nullspace(self) -> list[list[Fraction]]:
        rows, pivots, _ = self._echelon()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for r, c in enumerate(pivots):
                v[c] = -rows[r][f] / rows[r][c]
            basis.append(v)
        return basis

    def solve(self, rhs: "Matrix") -> "Matrix":
        """Solve self * X = rhs by Gauss-Jordan elimination."""
        if not self.is_square():
            raise ValueError("solve needs a square system")
        aug = Matrix._raw([list(a) + list(b) for a, b in zip(self.entries, rhs.entries)])
        rows, pivots, _ = aug._echelon()
        if pivots[: self.rows] != list(range(self.rows)):
            raise SingularMatrix("singular linear system")
        return Matrix._raw(
            [[v / rows[i][i] for v in rows[i][self.cols :]] for i in range(self.rows)]
        )

    def inverse(self) -> "Matrix":
        return self.solve(Matrix.identity(self.rows))

    def charpoly(self) -> Poly1:
        """det(t I - self) via the Faddeev-LeVerrier recursion."""
        if not self.is_square():
            raise ValueError("characteristic polynomial of a non-square matrix")
        n = self.rows
        coeffs = [Fraction(0)] * (n + 1)
        coeffs[n] = Fraction(1)
        mk = Matrix.zeros(n)
        for k in range(1, n + 1):
            mk = self * (mk + coeffs[n - k + 1])
            coeffs[n - k] = -sum(mk.diag(), Fraction(0)) / k
        return Poly1(coeffs)

    def bandwidth(self) -> int:
        """Largest |i-j| over nonzero entries (-1 for the zero matrix)."""
        return max(
            (abs(i - j) for i, r in enumerate(self.entries) for j, v in enumerate(r) if v),
            default=-1,
        )

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[format_scalar(v) for v in r] for r in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Matrix":
        m = cls(data["entries"])
        if m.shape != (data["rows"], data["cols"]):
            raise ValueError("matrix shape does not match its entries")
        return m

    def to_float(self):
        import numpy as np

        return np.array([[float(v) for v in r] for r in self.entries])


def to_matrix(op: DiffOp1, M: int) -> Matrix:
    """Matrix of ``op`` on polynomials of degree <= M in the basis 1, u, ..., u^M."""
    if M < 0:
        raise ValueError("M must be non-negative")
    columns = []
    for n in range(M + 1):
        image = op.apply(Poly1.monomial(n))
        if image.degree > M:
            raise NotInvariant(f"image of u^{n} has degree {image.degree} > {M}")
        columns.append([image.coeff(m) for m in range(M + 1)])
    return Matrix.from_columns(columns)


def to_matrix3(op: DiffOp3, D: int) -> Matrix:
    """Matrix of ``op`` on trivariate polynomials of total degree <= D.

    The basis is the monomial list of :func:`graded_monomials`, ordered by
    (total degree, exponent of x, exponent of y) ascending.
    """
    basis = graded_monomials(D)
    index = {e: i for i, e in enumerate(basis)}
    columns = []
    for e in basis:
        image = op.apply(Poly3({e: 1}))
        col = [Fraction(0)] * len(basis)
        for f, c in image.terms.items():
            if f not in index:
                raise NotInvariant(f"image of x^{e[0]}y^{e[1]}z^{e[2]} leaves degree <= {D}")
            col[index[f]] = c
        columns.append(col)
    return Matrix.from_columns(columns)

