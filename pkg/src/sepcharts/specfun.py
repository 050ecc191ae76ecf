"""Complex special functions by ascending series, generic over complex or Jet2 arguments.

Parameters (orders, indices) are plain numbers; the argument z may be a Jet2, in which
case the returned value is a Jet2 carrying first and second derivatives in z's variables.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import jets as J
from .jets import Jet2

EPS = 2.220446049250313e-16
CONVERGED_RTOL = 1e-12
MAX_TERMS = 300
GAUSS_MAX_TERMS = 2000   # 2F1 converges geometrically, slowly near |z| = 1


class SpecfunError(ValueError):
    """Unsupported parameter regime."""


@dataclass(frozen=True)
class FnEval:
    value: object              # complex, Fraction or Jet2 (same kind as the argument)
    converged: bool
    terms_used: int
    est_error: float
    notes: tuple = ()

    @property
    def scalar(self) -> complex:
        return J.value(self.value)

    def to_json(self) -> dict:
        v = self.scalar
        return {"value": [v.real, v.imag], "converged": self.converged, "terms_used": self.terms_used,
                "est_error": self.est_error, "notes": list(self.notes)}


def _mag(x) -> float:
    if isinstance(x, Jet2):
        return max(abs(x.value), float(np.max(np.abs(x.grad), initial=0.0)),
                   float(np.max(np.abs(x.hess), initial=0.0)))
    return abs(complex(x))


# -- extended-precision summation --------------------------------------------------------
# Series are summed in fixed point on Python ints with _WIDE fractional bits, so that
# cancellation between large terms costs nothing at double precision.

_WIDE = 256
_ONE = 1 << _WIDE
_SMALL = 10 ** 18


def _to_wide(x, bits: int = _WIDE) -> tuple:
    x = complex(x)
    return round(Fraction(x.real) * (1 << bits)), round(Fraction(x.imag) * (1 << bits))


def _from_wide(w: tuple, bits: int = _WIDE) -> complex:
    return complex(float(Fraction(w[0], 1 << bits)), float(Fraction(w[1], 1 << bits)))


def _wmul(x: tuple, y: tuple, bits: int = _WIDE) -> tuple:
    a, b = x
    c, d = y
    return (a * c - b * d) >> bits, (a * d + b * c) >> bits


def _wdiv(x: tuple, y: tuple) -> tuple:
    a, b = x
    c, d = y
    den = c * c + d * d
    return ((a * c + b * d) << _WIDE) // den, ((b * c - a * d) << _WIDE) // den


def _wmag(x: tuple) -> int:
    return abs(x[0]) + abs(x[1])


def _wfloat(m: int, bits: int = _WIDE) -> float:
    return float(Fraction(m, 1 << bits))


def _pfq_scalar(a: tuple, b: tuple, w: complex, max_terms: int):
    """Sum pFq(a; b; w) for complex w. Returns (sum, terms_used, est_error, finished)."""
    wa = [_to_wide(x) for x in a]
    wb = [_to_wide(x) for x in b]
    ww = _to_wide(w)
    t = (_ONE, 0)
    s = (_ONE, 0)
    peak = _ONE
    small = 0
    for k in range(1, max_terms):
        kk = (k - 1) << _WIDE
        t = _wmul(t, ww)
        for x in wa:
            t = _wmul(t, (x[0] + kk, x[1]))
        for x in wb:
            t = _wdiv(t, (x[0] + kk, x[1]))
        t = (t[0] // k, t[1] // k)
        s = (s[0] + t[0], s[1] + t[1])
        mt = _wmag(t)
        peak = max(peak, mt)
        if mt == 0:   # terminating series, or w = 0
            v = _from_wide(s)
            return v, k + 1, EPS * abs(v) + _wfloat(peak) * 2.0 ** (8 - _WIDE) * k, True
        if mt * _SMALL <= _wmag(s):
            small += 1
            if small >= 2:
                v = _from_wide(s)
                return v, k + 1, _wfloat(mt) + EPS * abs(v) + _wfloat(peak) * 2.0 ** (8 - _WIDE) * k, True
        else:
            small = 0
    v = _from_wide(s)
    return v, max_terms, _wfloat(_wmag(t)) * max_terms + EPS * abs(v), False


def _finish(value, terms, est, finished, scale=1.0, notes=()) -> FnEval:
    est = est * scale
    ok = finished and est <= CONVERGED_RTOL * (1 + _mag(value))
    return FnEval(value, ok, terms, float(est), tuple(notes))


# -- gamma --------------------------------------------------------------------------------

_LANCZOS_G = 7
_LANCZOS = (0.99999999999980993, 676.5203681218851, -1259.1392167224028, 771.32342877765313,
            -176.61502916214059, 12.507343278686905, -0.13857109526572012, 9.9843695780195716e-6,
            1.5056327351493116e-7)


def _is_nonpos_int(z: complex) -> bool:
    z = complex(z)
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


def _gamma(z: complex) -> complex:
    z = complex(z)
    if _is_nonpos_int(z):
        raise SpecfunError(f"Gamma pole at {z}")
    if z.imag == 0 and z.real == math.floor(z.real) and 0 < z.real <= 30:
        return complex(math.factorial(int(z.real) - 1))
    if z.real < 0.5:
        return cmath.pi / (cmath.sin(cmath.pi * z) * _gamma(1 - z))
    z -= 1
    x = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return cmath.sqrt(2 * cmath.pi) * cmath.exp((z + 0.5) * cmath.log(t) - t) * x


def complex_gamma(z) -> FnEval:
    """Gamma(z) by the Lanczos approximation (g=7, 9 terms) with reflection."""
    v = _gamma(z)
    return FnEval(v, True, len(_LANCZOS), 2e-15 * abs(v))


def rgamma(z) -> complex:
    """1/Gamma(z), zero at the poles."""
    if _is_nonpos_int(z):
        return 0j
    return 1 / _gamma(z)


# -- hypergeometric series -----------------------------------------------------------------

def _pfq(a: tuple, b: tuple, w, max_terms: int = MAX_TERMS):
    """pFq(a; b; w) with w complex or Jet2; jets use d/dw pFq = (prod a / prod b) pFq(a+1; b+1)."""
    a = tuple(complex(x) for x in a)
    b = tuple(complex(x) for x in b)
    for bb in b:
        if _is_nonpos_int(bb):
            raise SpecfunError(f"lower parameter {bb} is a nonpositive integer")
    if not isinstance(w, Jet2):
        return _pfq_scalar(a, b, complex(w), max_terms)
    w0 = complex(w.value)
    vals, terms, est, fin = [], 0, 0.0, True
    coef = 1.0 + 0j
    for d in range(3):
        if d:
            for x in a:
                coef *= x + d - 1
            for x in b:
                coef /= x + d - 1
        if coef == 0:
            vals.append(0j)
            continue
        s, n, e, f = _pfq_scalar(tuple(x + d for x in a), tuple(x + d for x in b), w0, max_terms)
        vals.append(coef * s)
        terms += n
        est = max(est, abs(coef) * e)
        fin &= f
    return w.chain(*vals), terms, est, fin


def hyp0f1(b, w) -> FnEval:
    return _finish(*_pfq((), (b,), w))


def kummer_m(a, b, z) -> FnEval:
    """M(a, b, z) = 1F1(a; b; z) by direct series."""
    return _finish(*_pfq((a,), (b,), z))


def gauss_2f1(a, b, c, z) -> FnEval:
    """2F1(a, b; c; z) for |z| < 1."""
    if abs(J.value(z)) >= 1:
        return FnEval(complex("nan"), False, 0, float("inf"), ("argument outside the unit disk",))
    return _finish(*_pfq((a, b), (c,), z, max_terms=GAUSS_MAX_TERMS))


# -- Bessel ---------------------------------------------------------------------------------

def bessel_j(nu, z) -> FnEval:
    """J_nu(z) = (z/2)^nu / Gamma(nu+1) * 0F1(; nu+1; -z^2/4), principal branch."""
    nu = complex(nu)
    if _is_nonpos_int(nu + 1):
        n = int(round(-nu.real))
        r = bessel_j(n, z)
        sign = -1 if n % 2 else 1
        return FnEval(r.value * sign, r.converged, r.terms_used, r.est_error, r.notes + ("J_{-n} = (-1)^n J_n",))
    if abs(J.value(z)) > 30:
        return FnEval(complex("nan"), False, 0, float("inf"), ("|z| > 30 outside the series regime",))
    s, terms, est, fin = _pfq((), (nu + 1,), -(z * z) / 4, max_terms=200)
    if nu == 0:
        pref = 1.0
    else:
        pref = J.power(z / 2, nu) * rgamma(nu + 1)
    return _finish(s * pref, terms, est, fin, scale=_mag(pref))


# -- Whittaker ------------------------------------------------------------------------------

def kummer_u(a, b, z) -> FnEval:
    """U(a, b, z) via the connection formula, b not an integer."""
    a, b = complex(a), complex(b)
    if b.imag == 0 and b.real == round(b.real):
        raise SpecfunError("logarithmic case unsupported (integer b)")
    notes = []
    value = 0j
    est = 0.0
    terms = 0
    fin = True
    c1 = _gamma(1 - b) * rgamma(a - b + 1)
    c2 = _gamma(b - 1) * rgamma(a)
    if c1 == 0:
        notes.append("Gamma pole: first connection term dropped")
    else:
        m1 = kummer_m(a, b, z)
        value = value + m1.value * c1
        est += m1.est_error * abs(c1)
        terms += m1.terms_used
        fin &= m1.converged
    if c2 == 0:
        notes.append("Gamma pole: second connection term dropped")
    else:
        m2 = kummer_m(a - b + 1, 2 - b, z)
        pw = J.power(z, 1 - b)
        value = value + m2.value * pw * c2
        est += m2.est_error * abs(c2) * _mag(pw)
        terms += m2.terms_used
        fin &= m2.converged
    # the Gamma coefficients carry double-precision error, which the combination amplifies
    est += 1e-14 * (abs(c1) * (_mag(m1.value) if c1 else 0.0) + abs(c2) * (_mag(m2.value * pw) if c2 else 0.0))
    ok = fin and est <= CONVERGED_RTOL * (1 + _mag(value))
    return FnEval(value, ok, terms, est, tuple(notes))


def whittaker_w(kappa, mu, z) -> FnEval:
    """W_{kappa,mu}(z) = e^{-z/2} z^{mu+1/2} U(mu-kappa+1/2, 1+2mu, z)."""
    kappa, mu = complex(kappa), complex(mu)
    if J.value(z) == 0:
        raise SpecfunError("Whittaker W at z = 0")
    if abs(J.value(z)) > 30:
        return FnEval(complex("nan"), False, 0, float("inf"), ("|z| > 30 outside the series regime",))
    two_mu = 2 * mu
    if two_mu.imag == 0 and two_mu.real == round(two_mu.real):
        raise SpecfunError("logarithmic case unsupported (integer 2 mu)")
    u = kummer_u(mu - kappa + 0.5, 1 + two_mu, z)
    pref = J.exp(-z / 2) * J.power(z, mu + 0.5)
    v = u.value * pref
    est = u.est_error * _mag(pref)
    ok = u.converged and est <= CONVERGED_RTOL * (1 + _mag(v))
    return FnEval(v, ok, u.terms_used, est, u.notes)


# -- Legendre and Jacobi --------------------------------------------------------------------

def legendre_p(nu, mu, z) -> FnEval:
    """P_nu^mu(z) = ((z+1)/(z-1))^{mu/2} 2F1(-nu, nu+1; 1-mu; (1-z)/2) / Gamma(1-mu)."""
    nu, mu = complex(nu), complex(mu)
    if _is_nonpos_int(1 - mu):
        raise SpecfunError("1 - mu is a nonpositive integer")
    w = (1 - z) / 2
    if abs(J.value(w)) >= 1:
        return FnEval(complex("nan"), False, 0, float("inf"), ("(1-z)/2 outside the unit disk",))
    f = gauss_2f1(-nu, nu + 1, 1 - mu, w)
    if mu == 0:
        return f
    if J.value(z) in (1, -1):
        raise SpecfunError("Legendre prefactor singular at z = +-1 for mu != 0")
    pref = J.exp((mu / 2) * J.log((z + 1) / (z - 1))) * rgamma(1 - mu)
    v = f.value * pref
    est = f.est_error * _mag(pref)
    ok = f.converged and est <= CONVERGED_RTOL * (1 + _mag(v))
    return FnEval(v, ok, f.terms_used, est, f.notes)


def _gbinom(x, k: int):
    out = Fraction(1) if isinstance(x, (int, Fraction)) else 1.0 + 0j
    for j in range(k):
        out = out * (x - j) / (j + 1)
    return out


def jacobi_p(n: int, alpha, beta, z) -> FnEval:
    """P_n^{(alpha,beta)}(z) by the finite sum; exact for rational inputs."""
    if int(n) != n or n < 0:
        raise SpecfunError("Jacobi degree must be a nonnegative integer")
    n = int(n)
    exact_in = all(isinstance(x, (int, Fraction)) for x in (alpha, beta, z))
    half = Fraction(1, 2) if exact_in else 0.5
    zm = (z - 1) * half
    zp = (z + 1) * half
    total = Fraction(0) if exact_in else 0j
    for s in range(n + 1):
        c = _gbinom(n + alpha, n - s) * _gbinom(n + beta, s)
        total = total + (zm ** s) * (zp ** (n - s)) * c
    if not exact_in and not isinstance(total, Jet2):
        total = complex(total)
    return FnEval(total, True, n + 1, 0.0 if exact_in else EPS * _mag(total) * (n + 1))


# -- Airy -------------------------------------------------------------------------------

# Ai(0) and -Ai'(0) to 70 digits; the float constants are their correct roundings
_AIRY_C1_TEXT = "0.35502805388781723926006318600418317639797917419917724058332651030081"
_AIRY_C2_TEXT = "0.2588194037928067984051835601892039634790911383549345822100018138561028"
AIRY_C1 = float(Fraction(_AIRY_C1_TEXT))
AIRY_C2 = float(Fraction(_AIRY_C2_TEXT))
_AIRY_MAX = 400


def _airy_sums(z: complex):
    """(Ai, Ai', Ai'', terms, est, finished) from the Maclaurin coefficients a_n = a_{n-3} / (n (n-1))."""
    # extra bits keep z itself representable when |z| is tiny
    bits = _WIDE + (max(0, -math.frexp(abs(z))[1]) if z else 0)
    c1 = round(Fraction(_AIRY_C1_TEXT) * (1 << bits))
    c2 = round(Fraction(_AIRY_C2_TEXT) * (1 << bits))
    wz = _to_wide(z, bits)
    wz2 = _wmul(wz, wz, bits)
    wz3 = _wmul(wz2, wz, bits)
    p = [(c1, 0), _wmul((-c2, 0), wz, bits), (0, 0)]   # p_n = a_n z^n
    s0 = (p[0][0] + p[1][0], p[0][1] + p[1][1])
    s1 = (-c2, 0)
    s2 = (0, 0)
    peak = _wmag(s0)
    small = 0
    for n in range(3, _AIRY_MAX):
        prev = p[n - 3]
        pn = _wmul(prev, wz3, bits)
        pn = (pn[0] // (n * (n - 1)), pn[1] // (n * (n - 1)))
        d1 = _wmul(prev, wz2, bits)
        d1 = (d1[0] // (n - 1), d1[1] // (n - 1))
        d2 = _wmul(prev, wz, bits)
        p.append(pn)
        s0 = (s0[0] + pn[0], s0[1] + pn[1])
        s1 = (s1[0] + d1[0], s1[1] + d1[1])
        s2 = (s2[0] + d2[0], s2[1] + d2[1])
        mt = max(_wmag(pn), _wmag(d1), _wmag(d2))
        peak = max(peak, mt)
        scale = max(_wmag(s0), _wmag(s1), _wmag(s2))
        if mt * _SMALL <= scale:
            small += 1
            if small >= 6:
                vals = tuple(_from_wide(x, bits) for x in (s0, s1, s2))
                est = _wfloat(mt, bits) + EPS * max(abs(v) for v in vals) + _wfloat(peak, bits) * 2.0 ** (8 - bits) * n
                return vals + (n + 1, est, True)
        else:
            small = 0
    vals = tuple(_from_wide(x, bits) for x in (s0, s1, s2))
    return vals + (_AIRY_MAX, _wfloat(mt, bits) * _AIRY_MAX, False)


def airy_ai(z) -> FnEval:
    """Ai(z) from its Maclaurin series, summed in extended precision."""
    if abs(J.value(z)) > 8:
        return FnEval(complex("nan"), False, 0, float("inf"), ("|z| > 8 outside the series regime",))
    f0, f1, f2, terms, est, fin = _airy_sums(complex(J.value(z)))
    if isinstance(z, Jet2):
        v = z.chain(f0, f1, f2)
    else:
        v = f0
        if complex(z).imag == 0:
            v = complex(f0.real, 0.0)
    return FnEval(v, fin and est <= CONVERGED_RTOL * (1 + _mag(v)), terms, est)


# -- self-verification battery ------------------------------------------------------------

@dataclass(frozen=True)
class BatteryReport:
    """Residuals over `samples` converged draws; unconverged draws are counted and skipped."""
    function: str
    check: str                 # "ode" or the identity name
    samples: int               # converged samples required
    evaluated: int             # converged samples obtained
    max_residual: float
    tol: float
    unconverged: int
    worst_sample: tuple

    @property
    def passed(self) -> bool:
        return self.evaluated >= self.samples and self.max_residual <= self.tol

    def to_json(self) -> dict:
        return {"function": self.function, "check": self.check, "samples": self.samples,
                "evaluated": self.evaluated, "max_residual": self.max_residual, "tol": self.tol,
                "unconverged": self.unconverged, "worst_sample": [str(x) for x in self.worst_sample],
                "pass": self.passed}


_DRAW_BUDGET = 40   # draws allowed per required sample


def _collect(n_samples: int, rng, draw: Callable) -> tuple:
    """Draw until n_samples converged residuals. Returns (evaluated, worst, worst_at, unconverged)."""
    worst, worst_at, bad, good = 0.0, (), 0, 0
    for _ in range(_DRAW_BUDGET * n_samples):
        if good >= n_samples:
            break
        args, r, ok = draw(rng)
        if not ok:
            bad += 1
            continue
        good += 1
        if math.isnan(r):
            r = math.inf
        if r > worst or not worst_at:
            worst, worst_at = max(r, worst), args
    return good, worst, worst_at, bad


def _jet_at(f: Callable, z: complex) -> tuple:
    """(y, y', y'') of a one-variable function at z via Jet2."""
    r = f(Jet2.variable(z, 0, 1))
    v = r.value
    return J.value(v), complex(v.grad[0]), complex(v.hess[0, 0]), r.converged


def _rel(*terms) -> float:
    scale = sum(abs(t) for t in terms)
    return abs(sum(terms)) / scale if scale else 0.0


def _off_int(rng, lo=0.3, hi=1.8) -> complex:
    from .rng import annulus
    while True:
        w = annulus(rng, lo, hi)
        if abs(w.imag) > 0.05:
            return w


def _ode_cases():
    """name -> (sampler(rng) -> (params, z), residual(params, z, y, y1, y2) -> terms, function)."""
    from .rng import annulus
    cut = (-math.pi + 0.2, math.pi - 0.2)   # stay off the branch cut of z^(1-b) and z^(mu+1/2)

    def legendre_z(rng):
        while True:
            z = complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6))
            if abs(z.imag) > 0.1:
                return z

    return {
        "bessel_j": (lambda r: ((_off_int(r),), annulus(r, 0.3, 30.0, cut)),
                     lambda p, z, y, y1, y2: (z * z * y2, z * y1, (z * z - p[0] ** 2) * y),
                     lambda p: lambda z: bessel_j(p[0], z)),
        "hyp0f1": (lambda r: ((_off_int(r),), annulus(r, 0.3, 225.0)),
                   lambda p, z, y, y1, y2: (z * y2, p[0] * y1, -y),
                   lambda p: lambda z: hyp0f1(p[0], z)),
        "kummer_m": (lambda r: ((annulus(r, 0.3, 1.5), _off_int(r)), annulus(r, 0.3, 30.0)),
                     lambda p, z, y, y1, y2: (z * y2, (p[1] - z) * y1, -p[0] * y),
                     lambda p: lambda z: kummer_m(p[0], p[1], z)),
        "kummer_u": (lambda r: ((annulus(r, 0.3, 1.5), _off_int(r)), annulus(r, 0.3, 30.0, cut)),
                     lambda p, z, y, y1, y2: (z * y2, (p[1] - z) * y1, -p[0] * y),
                     lambda p: lambda z: kummer_u(p[0], p[1], z)),
        "whittaker_w": (lambda r: ((annulus(r, 0.3, 1.5), _off_int(r, 0.2, 0.9)), annulus(r, 0.3, 30.0, cut)),
                        lambda p, z, y, y1, y2: (y2, -y / 4, p[0] * y / z, (0.25 - p[1] ** 2) * y / (z * z)),
                        lambda p: lambda z: whittaker_w(p[0], p[1], z)),
        "gauss_2f1": (lambda r: ((annulus(r, 0.3, 1.5), annulus(r, 0.3, 1.5), _off_int(r)),
                                 annulus(r, 0.1, 0.9)),
                      lambda p, z, y, y1, y2: (z * (1 - z) * y2, (p[2] - (p[0] + p[1] + 1) * z) * y1,
                                               -p[0] * p[1] * y),
                      lambda p: lambda z: gauss_2f1(p[0], p[1], p[2], z)),
        "legendre_p": (lambda r: ((annulus(r, 0.3, 1.5), _off_int(r, 0.2, 0.9)), legendre_z(r)),
                       lambda p, z, y, y1, y2: ((1 - z * z) * y2, -2 * z * y1,
                                                (p[0] * (p[0] + 1) - p[1] ** 2 / (1 - z * z)) * y),
                       lambda p: lambda z: legendre_p(p[0], p[1], z)),
        "jacobi_p": (lambda r: ((int(r.integers(0, 7)), annulus(r, 0.3, 1.5), annulus(r, 0.3, 1.5)),
                                annulus(r, 0.3, 2.0)),
                     lambda p, z, y, y1, y2: ((1 - z * z) * y2, (p[2] - p[1] - (p[1] + p[2] + 2) * z) * y1,
                                              p[0] * (p[0] + p[1] + p[2] + 1) * y),
                     lambda p: lambda z: jacobi_p(p[0], p[1], p[2], z)),
        "airy_ai": (lambda r: ((), annulus(r, 0.0, 8.0)),
                    lambda p, z, y, y1, y2: (y2, -z * y),
                    lambda p: airy_ai),
    }


def ode_battery(n_samples: int = 25, seed: int = 0, tol: float = 1e-8) -> list[BatteryReport]:
    """Defining-ODE residuals through jets for every series function, over its full regime.

    The residual is |sum of ODE terms| / sum of |terms|.
    """
    from .rng import stream
    out = []
    for name, (sampler, resid, fn) in _ode_cases().items():
        def draw(rng, sampler=sampler, resid=resid, fn=fn):
            p, z = sampler(rng)
            y, y1, y2, ok = _jet_at(fn(p), z)
            return p + (z,), _rel(*resid(p, z, y, y1, y2)), ok
        good, worst, at, bad = _collect(n_samples, stream(seed, "ode:" + name), draw)
        out.append(BatteryReport(name, "ode", n_samples, good, worst, tol, bad, at))

    # Gamma has no series ODE; its defining relation is the functional equation.
    def gamma_draw(rng):
        z = complex(rng.uniform(-20, 20), rng.uniform(-20, 20))
        return (z,), _rel(complex_gamma(z + 1).value, -z * complex_gamma(z).value), True
    good, worst, at, bad = _collect(n_samples, stream(seed, "ode:gamma"), gamma_draw)
    out.append(BatteryReport("complex_gamma", "functional equation", n_samples, good, worst, tol, bad, at))
    return out


def identity_battery(n_samples: int = 25, seed: int = 0, tol: float = 1e-9) -> list[BatteryReport]:
    """Bessel recurrence, Kummer transformation, Jacobi symmetry and Gamma reflection."""
    from .rng import annulus, stream

    def run(name, check, sample, terms_of):
        def draw(rng):
            args = sample(rng)
            terms, ok = terms_of(*args)
            return args, _rel(*terms), ok
        good, worst, at, bad = _collect(n_samples, stream(seed, f"identity:{check}"), draw)
        return BatteryReport(name, check, n_samples, good, worst, tol, bad, at)

    def bessel(nu, z):
        a, b, c = bessel_j(nu - 1, z), bessel_j(nu + 1, z), bessel_j(nu, z)
        return (a.value, b.value, -2 * nu / z * c.value), a.converged and b.converged and c.converged

    def kummer(a, b, z):
        m1, m2 = kummer_m(a, b, z), kummer_m(b - a, b, -z)
        return (m1.value, -cmath.exp(z) * m2.value), m1.converged and m2.converged

    def jacobi(n, al, be, z):
        p1, p2 = jacobi_p(n, al, be, -z), jacobi_p(n, be, al, z)
        return (p1.value, -((-1) ** n) * p2.value), True

    def reflection(z):
        return (_gamma(z) * _gamma(1 - z) * cmath.sin(cmath.pi * z) / cmath.pi, -1.0), True

    return [
        run("bessel_j", "recurrence", lambda r: (_off_int(r, 0.3, 3.0), annulus(r, 0.3, 30.0)), bessel),
        run("kummer_m", "kummer transformation",
            lambda r: (annulus(r, 0.3, 1.5), _off_int(r), annulus(r, 0.3, 30.0)), kummer),
        run("jacobi_p", "symmetry",
            lambda r: (int(r.integers(0, 7)), annulus(r, 0.3, 1.5), annulus(r, 0.3, 1.5), annulus(r, 0.3, 2.0)),
            jacobi),
        run("complex_gamma", "reflection",
            lambda r: (complex(r.uniform(-5, 5), r.uniform(-3, 3)),), reflection),
    ]
