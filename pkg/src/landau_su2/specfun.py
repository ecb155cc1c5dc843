"""Special-function kernel.

Terminating generalized hypergeometric series with an exact-rational and a
floating evaluation path, principal-branch complex log-gamma, inverse Mellin
evaluation of the radial measure factor, and double-exponential quadrature on
the half line.  Everything here is a pure function of its inputs.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Sequence

import numpy as np
from scipy.special import digamma as _digamma
from scipy.special import loggamma as _loggamma
from scipy.special import polygamma as _polygamma

TWO_PI = 2.0 * math.pi
_HALF_PI = 0.5 * math.pi


class DenominatorPole(ArithmeticError):
    """A denominator Pochhammer vanished strictly before the series terminated."""


class PoleAtNonpositiveInteger(ArithmeticError):
    """log-gamma was requested at a pole of the gamma function."""


class ContourNotConverged(ArithmeticError):
    """The Mellin contour quadrature failed its accuracy targets."""


class NegativeDensity(ArithmeticError):
    """The inverse Mellin transform returned a significantly negative value."""


class NoConvergence(ArithmeticError):
    """Adaptive quadrature refinement stalled before reaching the tolerance."""


def _extended_precision() -> bool:
    return os.environ.get("TOOL_PRECISION", "double").strip().lower() == "extended"


def _is_nonpositive_integer(x) -> bool:
    if isinstance(x, Rational):
        return x.denominator == 1 and x.numerator <= 0
    xf = float(x)
    return xf.is_integer() and xf <= 0.0


def pochhammer(x, k: int) -> Fraction:
    """Rising factorial x(x+1)...(x+k-1) in exact arithmetic; empty product is 1."""
    if k < 0:
        raise ValueError("pochhammer order must be nonnegative")
    out = Fraction(1)
    xf = Fraction(x)
    for j in range(k):
        out *= xf + j
    return out


def termination_index(numerators: Sequence) -> int:
    """Index of the last potentially nonzero term of a terminating series.

    The series terminates because some numerator parameter a is a nonpositive
    integer: (a)_k vanishes for every k > -a.  With several such parameters the
    smallest -a wins.
    """
    ks = [-int(Fraction(a)) for a in numerators if _is_nonpositive_integer(a)]
    if not ks:
        raise ValueError("series does not terminate: no nonpositive integer numerator")
    return min(ks)


@dataclass(frozen=True)
class TerminatingSeries:
    """Parameter lists and argument of a terminating pFq."""

    numerators: tuple
    denominators: tuple
    argument: object

    def __post_init__(self):
        object.__setattr__(self, "numerators", tuple(self.numerators))
        object.__setattr__(self, "denominators", tuple(self.denominators))
        termination_index(self.numerators)  # raises if non-terminating


def _series_sum(nums, dens, x, one, kstar):
    """Shared summation loop; `one` fixes the arithmetic (Fraction or float)."""
    if x == 0:
        return one
    total = one
    term = one
    for k in range(kstar):
        num = one
        for a in nums:
            num = num * (a + k)
        den = one
        for b in dens:
            fb = b + k
            if fb == 0:
                raise DenominatorPole(
                    f"denominator parameter {b} produces a zero Pochhammer factor "
                    f"at index {k + 1} before the series terminates (k* = {kstar})"
                )
            den = den * fb
        term = term * num / den * x / (k + 1)
        total = total + term
    return total


def pfq(series: TerminatingSeries):
    """Evaluate a terminating pFq.

    Returns an exact Fraction when the argument is rational (int or Fraction),
    a float otherwise.  Summation stops at the first index where a numerator
    Pochhammer vanishes; a denominator Pochhammer vanishing strictly before
    that raises DenominatorPole.
    """
    kstar = termination_index(series.numerators)
    x = series.argument
    if isinstance(x, Rational):
        nums = [Fraction(a) for a in series.numerators]
        dens = [Fraction(b) for b in series.denominators]
        return _series_sum(nums, dens, Fraction(x), Fraction(1), kstar)
    nums = [float(a) for a in series.numerators]
    dens = [float(b) for b in series.denominators]
    if _extended_precision():
        one = np.longdouble(1.0)
        return float(_series_sum(nums, dens, np.longdouble(x), one, kstar))
    return _series_sum(nums, dens, float(x), 1.0, kstar)


def pfq_coefficients(numerators: Sequence, denominators: Sequence) -> list[Fraction]:
    """Exact Taylor coefficients C_k of a terminating pFq, so pFq(x) = sum C_k x^k.

    Used to evaluate the terminating series at complex points (overlaps of two
    different labels) without a general complex pFq.
    """
    kstar = termination_index(numerators)
    nums = [Fraction(a) for a in numerators]
    dens = [Fraction(b) for b in denominators]
    coeffs = [Fraction(1)]
    c = Fraction(1)
    for k in range(kstar):
        num = Fraction(1)
        for a in nums:
            num *= a + k
        den = Fraction(1)
        for b in dens:
            fb = b + k
            if fb == 0:
                raise DenominatorPole(
                    f"denominator parameter {b} vanishes at index {k + 1} (k* = {kstar})"
                )
            den *= fb
        c = c * num / den / (k + 1)
        coeffs.append(c)
    return coeffs


def log_gamma_complex(s) -> complex:
    """Principal-branch log Gamma for complex arguments."""
    s = complex(s)
    if s.imag == 0.0 and s.real <= 0.0 and s.real == math.floor(s.real):
        raise PoleAtNonpositiveInteger(f"gamma pole at s = {s.real}")
    return complex(_loggamma(s))


@dataclass(frozen=True)
class MellinSpec:
    """Contour parameters for the inverse Mellin evaluation of the measure factor.

    The fundamental strip is 0 < Re s < n + 2.  A None abscissa selects the
    saddle of the integrand on the real axis (the minimizer of
    ln mu(c) - c ln t, which is convex in c), the choice that suppresses
    oscillatory cancellation; at t = 1, r = 1 it coincides with the strip
    midpoint.  An explicit abscissa is honored as given.
    """

    n: int
    r: int
    contour_abscissa: float | None = None
    truncation_height: float | None = None
    step: float = 0.25

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        if self.r < 1:
            raise ValueError("r must be a positive integer")
        if self.contour_abscissa is not None and not (0.0 < self.contour_abscissa < self.n + 2):
            raise ValueError("contour abscissa must lie strictly inside (0, n + 2)")
        if self.truncation_height is not None and self.truncation_height <= 0:
            raise ValueError("truncation height must be positive")
        if self.step <= 0:
            raise ValueError("step must be positive")

    def _saddle_slope(self, c: float, ln_t: float) -> float:
        """d/dc of ln mu(c) - c ln t; strictly increasing on the strip."""
        n, r = self.n, self.r
        out = float(_digamma(c) - _digamma(n + 2 - c)) - ln_t
        for l in range(1, r):
            out += 2.0 * float(_digamma(n + c + l - 2))
        return out

    def resolved_abscissa(self, t: float) -> float:
        if self.contour_abscissa is not None:
            return self.contour_abscissa
        ln_t = math.log(t)
        lo, hi = 1e-12, self.n + 2 - 1e-12
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if self._saddle_slope(mid, ln_t) < 0.0:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def curvature(self, c: float) -> float:
        """Second derivative of ln mu along the real axis; sets the peak width."""
        n, r = self.n, self.r
        out = float(_polygamma(1, c) + _polygamma(1, n + 2 - c))
        for l in range(1, r):
            out += 2.0 * float(_polygamma(1, n + c + l - 2))
        return out

    def resolved_height(self) -> float:
        if self.truncation_height is not None:
            return self.truncation_height
        return max(40.0 / self.r, 30.0)


def _log_mellin_transform(n: int, r: int, s):
    """log of the Mellin transform of the radial factor, vectorized over s.

    The transform interpolates the radial moments: at s = k + 1 it equals
    twice the k-th moment target of the measure.
    """
    out = math.log(2.0) - math.lgamma(n + 1)
    out = out + _loggamma(s) + _loggamma((n + 2) - s)
    for l in range(1, r):
        out = out + 2.0 * (_loggamma(s + (n + l - 2)) - math.lgamma(n + l - 1))
    return out


def inverse_mellin_density(spec: MellinSpec, t: float, atol: float = 1e-11) -> float:
    """Radial measure factor F(t) by trapezoidal quadrature on a vertical contour.

    F(t) = (1/2pi) * integral of mu(c + i tau) t^(-c - i tau) over tau in [-T, T],
    where mu is the gamma-ratio Mellin transform above.  The integrand decays
    like exp(-r pi |tau|), so the default heights are generous; the step is
    halved until two refinements agree.  The result is real up to quadrature
    noise and nonnegative.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    n, r = spec.n, spec.r
    c = spec.resolved_abscissa(t)
    big_t = spec.resolved_height()
    ln_t = math.log(t)
    width = min(c, (n + 2) - c)
    peak_scale = 1.0 / math.sqrt(spec.curvature(c))
    h = min(spec.step, math.pi / (4.0 * (1.0 + abs(ln_t))), width / 3.0, 0.7 * peak_scale)
    h = max(h, 1e-4)

    prev = None
    for _ in range(14):
        m = max(8, math.ceil(big_t / h))
        tau = np.linspace(-big_t, big_t, 2 * m + 1)
        s = c + 1j * tau
        w = np.exp(_log_mellin_transform(n, r, s) - s * ln_t)
        step = big_t / m
        integral = (np.sum(w) - 0.5 * (w[0] + w[-1])) * step
        val = complex(integral) / TWO_PI
        scale = float(np.sum(np.abs(w))) * step / TWO_PI
        if prev is not None and abs(val - prev) <= atol * (1.0 + abs(val)):
            tail = (abs(complex(w[0])) + abs(complex(w[-1]))) / (r * math.pi) / TWO_PI
            if tail > 100.0 * atol * (1.0 + abs(val)):
                raise ContourNotConverged(
                    f"contour tail estimate {tail:.3e} above tolerance at T = {big_t}"
                )
            if abs(val.imag) > 1e-9 * scale + atol:
                raise ContourNotConverged(
                    f"imaginary residual {val.imag:.3e} breaks the conjugate symmetry check"
                )
            out = val.real
            if out < -max(atol, 1e-10):
                raise NegativeDensity(f"inverse Mellin transform returned {out:.3e} at t = {t}")
            return out
        prev = val
        h *= 0.5
    raise ContourNotConverged("step refinement stalled before reaching the tolerance")


def integrate_semi_infinite(f: Callable[[float], float], tol: float = 1e-10,
                            max_level: int = 10, h0: float = 1.0) -> float:
    """Adaptive double-exponential quadrature of f over (0, infinity).

    Uses the exp-sinh map x = exp(pi/2 sinh u); the trapezoidal step in u is
    halved until two successive levels agree to the requested relative
    tolerance.  Suitable for absolutely integrable f with algebraic-times-
    exponential-type decay.
    """
    best = None
    for level in range(max_level):
        h = h0 / (2 ** level)
        total = _exp_sinh_sum(f, h)
        if best is not None and abs(total - best) <= tol * max(abs(total), 1e-300):
            return total
        best = total
    raise NoConvergence(f"quadrature did not reach tol = {tol} within {max_level} levels")


def _exp_sinh_sum(f: Callable[[float], float], h: float) -> float:
    def term(j: int):
        a = _HALF_PI * math.sinh(j * h)
        if abs(a) > 700.0:
            return None  # exp over/underflow; contributions out here are negligible
        x = math.exp(a)
        w = h * _HALF_PI * math.cosh(j * h) * x
        return w * f(x)

    total = term(0)
    for direction in (1, -1):
        consecutive_small = 0
        j = direction
        while abs(j) <= 20_000:
            v = term(j)
            if v is None:
                break
            total += v
            if abs(v) <= max(1e-300, abs(total)) * 1e-17:
                consecutive_small += 1
                if consecutive_small >= 3:
                    break
            else:
                consecutive_small = 0
            j += direction
    return total
