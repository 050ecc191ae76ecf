"""Second-order forward-mode jets: value, gradient and Hessian in n variables."""

from __future__ import annotations

import cmath
from typing import Callable, Sequence

import numpy as np


class Jet2:
    """Truncated Taylor datum f, df, d2f with complex entries."""

    __slots__ = ("value", "grad", "hess")
    __array_priority__ = 100

    def __init__(self, value, grad, hess):
        self.value = complex(value)
        self.grad = np.asarray(grad, dtype=complex)
        self.hess = np.asarray(hess, dtype=complex)

    @property
    def n(self) -> int:
        return len(self.grad)

    @classmethod
    def constant(cls, c, n: int) -> "Jet2":
        return cls(c, np.zeros(n, complex), np.zeros((n, n), complex))

    @classmethod
    def variable(cls, x, i: int, n: int) -> "Jet2":
        g = np.zeros(n, complex)
        g[i] = 1.0
        return cls(x, g, np.zeros((n, n), complex))

    def _lift(self, other) -> "Jet2":
        if isinstance(other, Jet2):
            return other
        return Jet2.constant(complex(other), self.n)

    def chain(self, f0, f1, f2) -> "Jet2":
        """Apply a scalar function with derivatives f0, f1, f2 at self.value."""
        g = f1 * self.grad
        h = f1 * self.hess + f2 * np.outer(self.grad, self.grad)
        return Jet2(f0, g, h)

    def __add__(self, other):
        o = self._lift(other)
        return Jet2(self.value + o.value, self.grad + o.grad, self.hess + o.hess)

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.value, -self.grad, -self.hess)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet2):
            c = complex(other)
            return Jet2(self.value * c, self.grad * c, self.hess * c)
        a, b = self, other
        h = (a.value * b.hess + b.value * a.hess
             + np.outer(a.grad, b.grad) + np.outer(b.grad, a.grad))
        return Jet2(a.value * b.value, a.value * b.grad + b.value * a.grad, h)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet2":
        v = self.value
        if v == 0:
            raise ZeroDivisionError("jet division by zero")
        return self.chain(1 / v, -1 / v ** 2, 2 / v ** 3)

    def __truediv__(self, other):
        if not isinstance(other, Jet2):
            c = complex(other)
            if c == 0:
                raise ZeroDivisionError("jet division by zero")
            return self * (1 / c)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * complex(other)

    def __pow__(self, p):
        if isinstance(p, Jet2):
            return exp(p * log(self))
        if isinstance(p, int) and p >= 0:
            out = Jet2.constant(1.0, self.n)
            base = self
            while p:
                if p & 1:
                    out = out * base
                base = base * base
                p >>= 1
            return out
        p = complex(p)
        v = self.value
        if v == 0:
            raise ZeroDivisionError("jet power at zero")
        f0 = cmath.exp(p * cmath.log(v))
        return self.chain(f0, p * f0 / v, p * (p - 1) * f0 / v ** 2)

    def __rpow__(self, base):
        return exp(self * cmath.log(complex(base)))

    def __complex__(self):
        return self.value

    def __repr__(self):
        return f"Jet2({self.value!r}, grad={self.grad!r})"


def _chain(x, f0, f1, f2):
    return x.chain(f0, f1, f2)


def is_jet(x) -> bool:
    return isinstance(x, Jet2)


def value(x) -> complex:
    return x.value if isinstance(x, Jet2) else complex(x)


def exp(x):
    if isinstance(x, Jet2):
        e = cmath.exp(x.value)
        return x.chain(e, e, e)
    return cmath.exp(x)


def log(x):
    if isinstance(x, Jet2):
        v = x.value
        if v == 0:
            raise ValueError("log of zero")
        return x.chain(cmath.log(v), 1 / v, -1 / v ** 2)
    if x == 0:
        raise ValueError("log of zero")
    return cmath.log(x)


def sqrt(x):
    if isinstance(x, Jet2):
        s = cmath.sqrt(x.value)
        if s == 0:
            raise ZeroDivisionError("sqrt jet at zero")
        return x.chain(s, 0.5 / s, -0.25 / (s * x.value))
    return cmath.sqrt(x)


def sin(x):
    if isinstance(x, Jet2):
        s, c = cmath.sin(x.value), cmath.cos(x.value)
        return x.chain(s, c, -s)
    return cmath.sin(x)


def cos(x):
    if isinstance(x, Jet2):
        s, c = cmath.sin(x.value), cmath.cos(x.value)
        return x.chain(c, -s, -c)
    return cmath.cos(x)


def tan(x):
    if isinstance(x, Jet2):
        t = cmath.tan(x.value)
        sec2 = 1 + t * t
        return x.chain(t, sec2, 2 * t * sec2)
    return cmath.tan(x)


def sinh(x):
    if isinstance(x, Jet2):
        s, c = cmath.sinh(x.value), cmath.cosh(x.value)
        return x.chain(s, c, s)
    return cmath.sinh(x)


def cosh(x):
    if isinstance(x, Jet2):
        s, c = cmath.sinh(x.value), cmath.cosh(x.value)
        return x.chain(c, s, c)
    return cmath.cosh(x)


def tanh(x):
    if isinstance(x, Jet2):
        t = cmath.tanh(x.value)
        s2 = 1 - t * t
        return x.chain(t, s2, -2 * t * s2)
    return cmath.tanh(x)


def power(x, p):
    """Principal-branch x**p for jets or scalars."""
    if isinstance(x, Jet2) or isinstance(p, Jet2):
        if not isinstance(x, Jet2):
            return exp(p * cmath.log(complex(x)))
        return x ** p
    if isinstance(p, int) and p >= 0:
        return complex(x) ** p
    if x == 0:
        return 0j if complex(p).real > 0 else complex("inf")
    return cmath.exp(complex(p) * cmath.log(complex(x)))


def jet_eval(f: Callable, point: Sequence, active: Sequence[int] | None = None) -> Jet2:
    """Evaluate f(*args) with jets seeded on the active argument positions.

    Inactive arguments are passed as plain complex numbers.
    """
    point = [complex(p) for p in point]
    active = list(range(len(point))) if active is None else list(active)
    n = len(active)
    args = list(point)
    for slot, i in enumerate(active):
        args[i] = Jet2.variable(point[i], slot, n)
    out = f(*args)
    if not isinstance(out, Jet2):
        return Jet2.constant(out, n)
    return out


def jacobian_from_jets(outputs: Sequence[Jet2]) -> np.ndarray:
    return np.array([o.grad for o in outputs])
