"""Construction of the generalized two-mode su(2) coherent states.

For Landau level n the states live in the (n+1)-dimensional subspace spanned
by e_k = |n-k, -n+2k>, k = 0..n, which maps to the occupation pairs
(n_a, n_b) = (n-k, k).  The order-r state with complex label z has
coefficients

    c_k  propto  z^k * g_k * sqrt(n! / ((n-k)! k!)),
    g_k  =  prod_{l=1}^{r-1} Gamma(n+l-1) / Gamma(n+k+l-1),

normalized by a terminating hypergeometric polynomial in t = |z|^2.  The same
family arises by applying the operator series 0F_{r-1}(; n, ..., n+r-2; z K_+)
to the extremal state e_0, and equivalently as a deformed truncated coherent
state for the occupation-dependent deformation factor implemented below.
r = 1 reduces to the standard binomial su(2) coherent state.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

from landau_su2 import specfun
from landau_su2.fock_oracle import TwoModeState

TWO_PI = 2.0 * math.pi


class GammaPole(ValueError):
    """A gamma factor of the deformation function was requested at a pole."""


@dataclass(frozen=True)
class ModelParams:
    """Level index n, generalization order r, and physical constants."""

    n: int
    r: int
    hbar: float = 1.0
    mass: float = 1.0
    omega: float = 1.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        if self.r < 1:
            raise ValueError("r must be a positive integer")
        if min(self.hbar, self.mass, self.omega) <= 0:
            raise ValueError("physical constants must be positive")


@dataclass(frozen=True)
class CoherencePoint:
    """Complex label z as (modulus |z| = sqrt(t), phase phi reduced mod 2 pi)."""

    modulus: float
    phase: float = 0.0

    def __post_init__(self):
        if self.modulus < 0:
            raise ValueError("modulus must be nonnegative")
        object.__setattr__(self, "phase", float(self.phase) % TWO_PI)

    @classmethod
    def from_t_phi(cls, t: float, phi: float = 0.0) -> "CoherencePoint":
        if t < 0:
            raise ValueError("t = |z|^2 must be nonnegative")
        return cls(math.sqrt(t), phi)

    @classmethod
    def from_complex(cls, z: complex) -> "CoherencePoint":
        z = complex(z)
        return cls(abs(z), cmath.phase(z) % TWO_PI)

    @property
    def t(self) -> float:
        return self.modulus * self.modulus

    @property
    def z(self) -> complex:
        return self.modulus * cmath.exp(1j * self.phase)


@dataclass(frozen=True)
class StateVector:
    """Coefficients c_0..c_n over the basis e_k = |n-k, -n+2k>."""

    n: int
    coefficients: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(complex(c) for c in self.coefficients))
        if len(self.coefficients) != self.n + 1:
            raise ValueError("need n + 1 coefficients")

    def norm_squared(self) -> float:
        return sum(abs(c) ** 2 for c in self.coefficients)

    def inner(self, other: "StateVector") -> complex:
        if self.n != other.n:
            raise ValueError("states live in different subspaces")
        return sum(a.conjugate() * b for a, b in zip(self.coefficients, other.coefficients))

    def to_two_mode(self) -> TwoModeState:
        """Embed into the two-mode occupation basis, e_k -> (n-k, k)."""
        return TwoModeState({(self.n - k, k): c for k, c in enumerate(self.coefficients)})


def displacement_to_label(modulus: float, phase: float = 0.0) -> CoherencePoint:
    """Map a displacement amplitude to the canonical label, |z| = tanh(modulus).

    At r = 1 the standard su(2) coherent state of displacement amplitude
    xi = modulus * e^(i phase) coincides with the state labeled by this point.
    """
    return CoherencePoint(math.tanh(modulus), phase)


def _doubled(lo: int, hi: int) -> list:
    out = []
    for v in range(lo, hi + 1):
        out.extend((v, v))
    return out


def norm_series_denominators(n: int, r: int) -> list:
    """Denominator parameters of the normalization polynomial: n..n+r-2, doubled."""
    return _doubled(n, n + r - 2)


def gamma_ratio_factors(n: int, r: int) -> list[Fraction]:
    """The exact factors g_k of the coefficient formula."""
    out = []
    for k in range(n + 1):
        g = Fraction(1)
        for l in range(1, r):
            g *= Fraction(math.factorial(n + l - 2), math.factorial(n + k + l - 2))
        out.append(g)
    return out


def coefficient_weights(n: int, r: int) -> list[Fraction]:
    """Exact weights w_k with |unnormalized c_k|^2 = w_k t^k, i.e. C(n,k) g_k^2."""
    return [math.comb(n, k) * g * g for k, g in enumerate(gamma_ratio_factors(n, r))]


def normalization_constant(params: ModelParams, t):
    """Squared norm M_r of the unnormalized state at t = |z|^2.

    Exact Fraction for rational t, float otherwise; equals the terminating
    series sum_k w_k t^k and is 1 at t = 0.
    """
    n, r = params.n, params.r
    arg = -t if isinstance(t, Rational) else -float(t)
    series = specfun.TerminatingSeries((-n,), tuple(norm_series_denominators(n, r)), arg)
    return specfun.pfq(series)


def build_state(params: ModelParams, z: CoherencePoint) -> StateVector:
    """The order-r coherent state at label z, normalized to unit norm."""
    n, r = params.n, params.r
    t = z.t
    m_norm = float(normalization_constant(params, t))
    g = gamma_ratio_factors(n, r)
    coeffs = []
    for k in range(n + 1):
        radial = (z.modulus ** k) * float(g[k]) * math.sqrt(math.comb(n, k)) / math.sqrt(m_norm)
        coeffs.append(radial * cmath.exp(1j * k * z.phase))
    return StateVector(n, tuple(coeffs))


def overlap(params: ModelParams, z1: CoherencePoint, z2: CoherencePoint) -> complex:
    """Closed-form overlap <z1|z2> for a common (n, r).

    Evaluates the terminating normalization polynomial at the complex point
    conj(z1) * z2 and divides by the geometric mean of the two norms.
    """
    n, r = params.n, params.r
    weights = coefficient_weights(n, r)
    u = z1.z.conjugate() * z2.z
    num = 0j
    for w in reversed(weights):
        num = num * u + float(w)
    m1 = float(normalization_constant(params, z1.t))
    m2 = float(normalization_constant(params, z2.t))
    return num / math.sqrt(m1 * m2)


def overlap_cross_r(n: int, r1: int, r2: int, z: CoherencePoint) -> float:
    """Overlap of the order-r1 and order-r2 states at the same label.

    Computed as the direct coefficient inner product, which is the ground
    truth; the closed-form variant below is checked against it.
    """
    s1 = build_state(ModelParams(n, r1), z)
    s2 = build_state(ModelParams(n, r2), z)
    value = s1.inner(s2)
    if abs(value.imag) > 1e-12 * (1.0 + abs(value)):
        raise ArithmeticError(f"cross-order overlap has imaginary residue {value.imag:.3e}")
    return value.real


def overlap_cross_r_closed(n: int, r1: int, r2: int, z: CoherencePoint) -> float:
    """Hypergeometric form of the cross-order overlap.

    The numerator merges the denominator lists of the two orders:
    1F_{r1+r2-2}([-n]; {n..n+r1-2} + {n..n+r2-2}; -t).
    """
    dens = sorted(list(range(n, n + r1 - 1)) + list(range(n, n + r2 - 1)))
    t = z.t
    num = specfun.pfq(specfun.TerminatingSeries((-n,), tuple(dens), -float(t)))
    m1 = float(normalization_constant(ModelParams(n, r1), t))
    m2 = float(normalization_constant(ModelParams(n, r2), t))
    return num / math.sqrt(m1 * m2)


def deformation_function(n: int, r: int, n_a: int) -> float:
    """Occupation-dependent deformation factor of the equivalent deformed
    truncated coherent state; independent of n_b in this model and equal to 1
    for every valid occupation when r = 1."""
    arg_num = 2 * n - 1 - n_a
    arg_den = 2 * n + r - 2 - n_a
    if arg_num <= 0 or arg_den <= 0:
        raise GammaPole(f"gamma argument nonpositive for n_a = {n_a} (n = {n}, r = {r})")
    return math.factorial(arg_num - 1) / math.factorial(arg_den - 1)


def build_state_deformed(params: ModelParams, z: CoherencePoint) -> StateVector:
    """Same state built through the deformed-truncated-CS expansion.

    The k-th coefficient carries the product of the deformation factors along
    the orbit of repeated (deformed) K_+ applications starting at (n, 0), i.e.
    the factors evaluated at n_a = n-1, ..., n-k; the result must agree with
    build_state coefficient for coefficient.
    """
    n, r = params.n, params.r
    f_products = [Fraction(1)]
    acc = Fraction(1)
    for j in range(1, n + 1):
        n_a = n - j
        arg_num = 2 * n - 1 - n_a
        arg_den = 2 * n + r - 2 - n_a
        if arg_num <= 0 or arg_den <= 0:
            raise GammaPole(f"gamma argument nonpositive along orbit at n_a = {n_a}")
        acc *= Fraction(math.factorial(arg_num - 1), math.factorial(arg_den - 1))
        f_products.append(acc)

    radial = [
        (z.modulus ** k) * float(f_products[k]) * math.sqrt(math.comb(n, k))
        for k in range(n + 1)
    ]
    norm = math.sqrt(sum(v * v for v in radial))
    coeffs = [
        (radial[k] / norm) * cmath.exp(1j * k * z.phase)
        for k in range(n + 1)
    ]
    return StateVector(n, tuple(coeffs))
