"""Exact scalars, polynomials and terminating hypergeometric sums.

Scalars are :class:`fractions.Fraction` values. ``Poly1`` is a dense
univariate polynomial in ``u``; ``Poly3`` is a sparse polynomial in
``x, y, z``. Both are immutable and kept in canonical form, so ``==`` is
structural equality.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterable, Mapping, Sequence, Union

Scalar = Fraction
ScalarLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")


class NonTerminating(ValueError):
    """Neither numerator parameter of a 2F1 is a non-positive integer."""


class PoleInC(ZeroDivisionError):
    """A Pochhammer symbol of the denominator parameter vanishes."""


def scalar(value: ScalarLike) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Accepts ints, Fractions and strings of the form ``"p"`` or ``"p/q"``.
    Floats and decimal strings are rejected.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(value.replace(" ", ""))
    raise TypeError(f"cannot convert {type(value).__name__} to an exact scalar")


def format_scalar(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def is_nonpositive_integer(q: Fraction) -> bool:
    return q.denominator == 1 and q <= 0


def pochhammer(a: ScalarLike, i: int) -> Fraction:
    """Rising factorial (a)_i = a (a+1) ... (a+i-1)."""
    if i < 0:
        raise ValueError("pochhammer index must be non-negative")
    a = scalar(a)
    out = Fraction(1)
    for k in range(i):
        out *= a + k
        if not out:
            break
    return out


def terminating_2f1(a: ScalarLike, b: ScalarLike, c: ScalarLike) -> "Poly1":
    """Terminating Gauss series sum_i (a)_i (b)_i / ((c)_i i!) u^i.

    The sum stops at the smaller of -a, -b among those that are
    non-positive integers; all later terms vanish identically.
    """
    a, b, c = scalar(a), scalar(b), scalar(c)
    stops = [-int(p) for p in (a, b) if is_nonpositive_integer(p)]
    if not stops:
        raise NonTerminating(f"2F1({a}, {b}; {c}) does not terminate")
    top = min(stops)
    coeffs = [Fraction(1)]
    term = Fraction(1)
    for i in range(top):
        if c + i == 0:
            raise PoleInC(f"(c)_{i + 1} = 0 for c = {c}")
        term = term * (a + i) * (b + i) / ((c + i) * (i + 1))
        coeffs.append(term)
    return Poly1(coeffs)


class Poly1:
    """Dense polynomial in one variable; ``coeffs[n]`` multiplies u^n."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[ScalarLike] = ()):
        cs = [scalar(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: list[Fraction]) -> "Poly1":
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        obj = cls.__new__(cls)
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def constant(cls, c: ScalarLike) -> "Poly1":
        return cls([c])

    @classmethod
    def monomial(cls, n: int, c: ScalarLike = 1) -> "Poly1":
        return cls([0] * n + [c])

    @classmethod
    def variable(cls) -> "Poly1":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, n: int) -> Fraction:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly1([other])
        return isinstance(other, Poly1) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("Poly1", self.coeffs))

    def __repr__(self) -> str:
        return f"Poly1({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for n, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if n == 0 else ("u" if n == 1 else f"u^{n}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{format_scalar(c)}{'*' + mono if mono else ''}")
        return " + ".join(parts).replace("+ -", "- ")

    def __neg__(self) -> "Poly1":
        return Poly1._raw([-c for c in self.coeffs])

    def __add__(self, other) -> "Poly1":
        if isinstance(other, (int, Fraction)):
            other = Poly1([other])
        if not isinstance(other, Poly1):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for n, c in enumerate(b):
            out[n] += c
        return Poly1._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly1":
        if isinstance(other, (int, Fraction)):
            other = Poly1([other])
        if not isinstance(other, Poly1):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly1":
        return (-self) + other

    def __mul__(self, other) -> "Poly1":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly1()
            return Poly1._raw([c * other for c in self.coeffs])
        if not isinstance(other, Poly1):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly1()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return Poly1._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly1":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int) -> "Poly1":
        out = Poly1([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def evaluate(self, u: ScalarLike) -> Fraction:
        u = scalar(u)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * u + c
        return acc

    __call__ = evaluate

    def derivative(self, k: int = 1) -> "Poly1":
        if k == 0:
            return self
        cs = self.coeffs
        out = []
        for n in range(k, len(cs)):
            falling = 1
            for t in range(k):
                falling *= n - t
            out.append(cs[n] * falling)
        return Poly1._raw(out)

    def substitute_affine(self, alpha: ScalarLike, beta: ScalarLike) -> "Poly1":
        """Return p(alpha*u + beta)."""
        lin = Poly1([beta, alpha])
        acc = Poly1()
        for c in reversed(self.coeffs):
            acc = acc * lin + c
        return acc

    def homogenize(self, linear: "Poly1", degree: int) -> "Poly1":
        """Return ``linear^degree * p(1/linear)`` for deg(p) <= degree."""
        if self.degree > degree:
            raise ValueError("polynomial degree exceeds homogenization degree")
        acc = Poly1()
        for i, c in enumerate(self.coeffs):
            if c:
                acc = acc + linear ** (degree - i) * c
        return acc

    def to_json(self) -> list[str]:
        return [format_scalar(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Poly1":
        return cls(data)


Exponent = tuple[int, int, int]


class Poly3:
    """Sparse polynomial in x, y, z keyed by exponent triples."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponent, ScalarLike] | None = None):
        clean: dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            c = scalar(c)
            if c:
                e = tuple(int(k) for k in e)
                if len(e) != 3 or min(e) < 0:
                    raise ValueError(f"bad exponent {e}")
                clean[e] = clean.get(e, Fraction(0)) + c
        self.terms: dict[Exponent, Fraction] = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, terms: dict[Exponent, Fraction]) -> "Poly3":
        obj = cls.__new__(cls)
        obj.terms = {e: c for e, c in terms.items() if c}
        return obj

    @classmethod
    def constant(cls, c: ScalarLike) -> "Poly3":
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, a: int, b: int, c: int, coeff: ScalarLike = 1) -> "Poly3":
        return cls({(a, b, c): coeff})

    @classmethod
    def variables(cls) -> tuple["Poly3", "Poly3", "Poly3"]:
        return cls({(1, 0, 0): 1}), cls({(0, 1, 0): 1}), cls({(0, 0, 1): 1})

    @property
    def total_degree(self) -> int:
        """Maximal a+b+c over stored terms; -1 for zero."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly3.constant(other)
        return isinstance(other, Poly3) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(("Poly3", frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Poly3({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=graded_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip("xyz", e) if k
            )
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(format_scalar(c) + ("*" + mono if mono else ""))
        return " + ".join(parts).replace("+ -", "- ")

    def __neg__(self) -> "Poly3":
        return Poly3._raw({e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> "Poly3":
        if isinstance(other, (int, Fraction)):
            other = Poly3.constant(other)
        if not isinstance(other, Poly3):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly3._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly3":
        if isinstance(other, (int, Fraction)):
            other = Poly3.constant(other)
        if not isinstance(other, Poly3):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) - c
        return Poly3._raw(out)

    def __rsub__(self, other) -> "Poly3":
        return (-self) + other

    def __mul__(self, other) -> "Poly3":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly3()
            return Poly3._raw({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, Poly3):
            return NotImplemented
        out: dict[Exponent, Fraction] = {}
        for (a1, b1, c1), p in self.terms.items():
            for (a2, b2, c2), q in other.terms.items():
                e = (a1 + a2, b1 + b2, c1 + c2)
                out[e] = out.get(e, 0) + p * q
        return Poly3._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly3":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int) -> "Poly3":
        out = Poly3.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def evaluate(self, x: ScalarLike, y: ScalarLike, z: ScalarLike) -> Fraction:
        x, y, z = scalar(x), scalar(y), scalar(z)
        return sum(
            (c * x**a * y**b * z**e for (a, b, e), c in self.terms.items()),
            Fraction(0),
        )

    __call__ = evaluate

    def partial(self, orders: Exponent) -> "Poly3":
        """Mixed partial derivative d^kx/dx d^ky/dy d^kz/dz."""
        kx, ky, kz = orders
        if not (kx or ky or kz):
            return self
        out: dict[Exponent, Fraction] = {}
        for (a, b, c), q in self.terms.items():
            if a < kx or b < ky or c < kz:
                continue
            out[(a - kx, b - ky, c - kz)] = q * (
                _falling(a, kx) * _falling(b, ky) * _falling(c, kz)
            )
        return Poly3._raw(out)

    def substitute(self, x: "Poly3", y: "Poly3", z: "Poly3") -> "Poly3":
        """Compose with polynomial substitutions for x, y, z."""
        out = Poly3()
        for (a, b, c), q in self.terms.items():
            out = out + (x**a) * (y**b) * (z**c) * q
        return out

    def to_json(self) -> list:
        return [
            [list(e), format_scalar(self.terms[e])]
            for e in sorted(self.terms, key=graded_key)
        ]

    @classmethod
    def from_json(cls, data: Sequence) -> "Poly3":
        return cls({tuple(e): c for e, c in data})


def _falling(n: int, k: int) -> int:
    out = 1
    for t in range(k):
        out *= n - t
    return out


def graded_key(e: Exponent) -> tuple[int, int, int]:
    """Sort key for the graded-lex order (total degree, a, b)."""
    return (sum(e), e[0], e[1])


def graded_monomials(max_degree: int) -> list[Exponent]:
    """Exponent triples of total degree <= ``max_degree`` in graded-lex order."""
    exps = [
        (a, b, c)
        for a, b, c in product(range(max_degree + 1), repeat=3)
        if a + b + c <= max_degree
    ]
    return sorted(exps, key=graded_key)


def binomial_multi(top: Exponent, bottom: Exponent) -> int:
    return comb(top[0], bottom[0]) * comb(top[1], bottom[1]) * comb(top[2], bottom[2])
