"""Exact Gaussian-rational scalars and small dense linear algebra over Q(i).

Matrices are tuples of row tuples. The helpers work for any scalar type that
supports +, -, *, / and comparison with 0, so they are shared by exact
(``QI``) and floating (``complex``) code paths.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Sequence


class QI:
    """A Gaussian rational re + im*i with Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("QI is immutable")

    @staticmethod
    def coerce(x) -> "QI":
        if isinstance(x, QI):
            return x
        if isinstance(x, (int, Rational)):
            return QI(x, 0)
        if isinstance(x, complex) and x.real.is_integer() and x.imag.is_integer():
            return QI(int(x.real), int(x.imag))
        raise TypeError(f"cannot convert {x!r} to an exact Gaussian rational")

    def _other(self, other):
        if isinstance(other, QI):
            return other
        if isinstance(other, (int, Rational)):
            return QI(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return complex(self) + other
        return QI(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return complex(self) - other
        return QI(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return other - complex(self)
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return complex(self) * other
        return QI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return complex(self) / other
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by exact zero")
        return QI((self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return other / complex(self)
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return complex(self) ** n
        if n < 0:
            return QI(1) / (self ** (-n))
        out = QI(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self):
        return QI(self.re, -self.im)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def __repr__(self):
        return f"QI({self.re}, {self.im})"

    def __str__(self):
        return to_string(self)


I = QI(0, 1)
ZERO = QI(0)
ONE = QI(1)

_QI_RE = re.compile(r"^\s*([-+]?\d+(?:/\d+)?)\s*\+\s*([-+]?\d+(?:/\d+)?)\s*i\s*$")


def to_string(x) -> str:
    """Render as the "re+im i" string used in JSON exports."""
    q = QI.coerce(x)
    return f"{q.re}+{q.im}i"


def from_string(s: str) -> QI:
    m = _QI_RE.match(s)
    if not m:
        raise ValueError(f"not a Gaussian rational string: {s!r}")
    return QI(Fraction(m.group(1)), Fraction(m.group(2)))


def is_exact(x) -> bool:
    return isinstance(x, (QI, int, Rational))


def is_zero(x, tol: float = 0.0) -> bool:
    if is_exact(x):
        return x == 0
    return abs(x) <= tol


# -- dense matrices as tuples of tuples ------------------------------------------------

Matrix = tuple


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple(tuple(ZERO for _ in range(m)) for _ in range(n))


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    """Freeze a nested sequence, converting exact-looking entries to QI."""
    out = []
    for row in rows:
        r = []
        for x in row:
            try:
                r.append(QI.coerce(x))
            except TypeError:
                r.append(complex(x))
        out.append(tuple(r))
    return tuple(out)


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(s, a: Matrix) -> Matrix:
    return tuple(tuple(s * x for x in row) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k = shape(a)
    k2, m = shape(b)
    if k != k2:
        raise ValueError(f"shape mismatch {shape(a)} x {shape(b)}")
    cols = list(zip(*b))
    out = []
    for row in a:
        r = []
        for col in cols:
            acc = ZERO
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            r.append(acc)
        out.append(tuple(r))
    return tuple(out)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def is_zero_matrix(a: Matrix, tol: float = 0.0) -> bool:
    return all(is_zero(x, tol) for row in a for x in row)


def row_reduce(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form. Returns (rref rows, pivot columns).

    Pivots are chosen as the first nonzero entry, which is exact for QI input.
    """
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_reduce(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[tuple]:
    """Basis of {y : A y = 0} over Q(i)."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [tuple(ONE if i == j else ZERO for i in range(ncols)) for j in range(ncols)]
    red, pivots = row_reduce(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(tuple(v))
    return basis


def inverse(a: Matrix) -> Matrix:
    n, m = shape(a)
    if n != m:
        raise ValueError("inverse of non-square matrix")
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    red, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in red)


def det(a: Matrix):
    """Determinant by fraction-exact elimination."""
    n, _ = shape(a)
    m = [list(r) for r in a]
    sign = ONE
    out = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        out = out * m[c][c]
        inv = ONE / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return sign * out
