"""Closed-form statistics of the generalized states, with an oracle path.

Every quantity here has two routes: a terminating-hypergeometric closed form
(exact in rational arithmetic when the radial argument t = |z|^2 is rational)
and a brute-force route through the two-mode Fock oracle.  The two must agree
to tight tolerance; the verification module sweeps that comparison over a
parameter grid.

Conventions worth knowing:

* The momentum quadrature defaults to the sign-corrected combination that
  actually satisfies [x, p] = i hbar; the legacy printed combination (which
  commutes with x) is available behind ``convention="printed"``.
* With the corrected momentum the x-p cross covariance vanishes identically
  on these states; both diagonal covariances share one radial profile.
* The mean of K_3 has a closed form whose printed parameter pattern only
  terminates correctly for odd n.  For even n the equivalent closed form
  through the mode-b occupancy is used; ``k3_mean_printed`` keeps the literal
  pattern for reconciliation.
* ``legacy_quadrature_squeezes`` reproduces the historical squeeze curves,
  which were computed from the bare hypergeometric ratio without its gamma
  prefactor.  They are not the variances' squeeze parameters; they are kept
  because the reference plots and qualitative claims follow them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from landau_su2 import fock_oracle as fo
from landau_su2 import specfun
from landau_su2.coherent_states import (
    CoherencePoint,
    ModelParams,
    build_state,
    norm_series_denominators,
)

K3_UNDEFINED = "undefined: mean k3 is zero"
VACUUM_B = "undefined: vacuum mode"


class VacuumMode(ValueError):
    """Mandel Q requested for a mode with zero mean occupancy."""


class DegenerateDenominator(ValueError):
    """Cross-correlation requested where its denominator vanishes."""


@dataclass(frozen=True)
class Su2Moments:
    k_plus: complex
    k_plus_sq: complex
    k_plus_k_minus: float
    k3: float

    @property
    def k_minus(self) -> complex:
        return self.k_plus.conjugate()


@dataclass(frozen=True)
class QuadratureReport:
    sigma_xx: float
    sigma_pp: float
    sigma_xp: float
    s_x: float
    s_p: float


@dataclass(frozen=True)
class Su2SqueezeReport:
    var_x1: float
    var_x2: float
    s1: float | None
    s2: float | None
    undefined_reason: str | None = None


@dataclass(frozen=True)
class PhotonStats:
    mean_na: float
    mean_nb: float
    mean_na_sq: float
    mean_nb_sq: float


def _doubled(lo: int, hi: int) -> list:
    out = []
    for v in range(lo, hi + 1):
        out.extend((v, v))
    return out


def _as_arg(t):
    return -t if isinstance(t, Rational) else -float(t)


def _norm_value(params: ModelParams, t):
    series = specfun.TerminatingSeries(
        (-params.n,), tuple(norm_series_denominators(params.n, params.r)), _as_arg(t)
    )
    return specfun.pfq(series)


def _ratio(params: ModelParams, numerators, denominators, t):
    """pFq(numerators; denominators; -t) / M_r(t), following the dtype of t."""
    num = specfun.pfq(specfun.TerminatingSeries(tuple(numerators), tuple(denominators), _as_arg(t)))
    den = _norm_value(params, t)
    return num / den


def bare_ratio(params: ModelParams, t):
    """The raw hypergeometric ratio R_r(t) without its gamma prefactor."""
    n, r = params.n, params.r
    dens = sorted(list(range(n, n + r - 1)) + list(range(n + 1, n + r)))
    return _ratio(params, (1 - n,), dens, t)


def k_plus_radial(params: ModelParams, t):
    """<K_+> divided by conj(z): the positive radial factor c_r(t)."""
    n, r = params.n, params.r
    pref = Fraction(math.factorial(n), math.factorial(n + r - 2))
    value = bare_ratio(params, t)
    if isinstance(value, Rational):
        return pref * value
    return float(pref) * value


def k_plus_sq_radial(params: ModelParams, t):
    """<K_+^2> divided by conj(z)^2; identically zero for n = 1."""
    n, r = params.n, params.r
    if n == 1:
        return Fraction(0) if isinstance(t, Rational) else 0.0
    dens = sorted(list(range(n, n + r - 1)) + list(range(n + 2, n + r + 1)))
    pref = Fraction(n - 1, n + r - 1) * Fraction(math.factorial(n), math.factorial(n + r - 2)) ** 2
    value = _ratio(params, (2 - n,), dens, t)
    if isinstance(value, Rational):
        return pref * value
    return float(pref) * value


def k_plus_k_minus_mean(params: ModelParams, t):
    """<K_+ K_->; real and nonnegative."""
    n, r = params.n, params.r
    dens = [-n] + _doubled(n + 1, n + r - 1)
    pref = Fraction(math.factorial(n), math.factorial(n + r - 2)) ** 2
    value = _ratio(params, (1 - n, 1 - n), dens, t)
    if isinstance(value, Rational):
        return pref * value * t
    return float(pref) * value * float(t)


def nb_mean(params: ModelParams, t):
    """Mean occupancy of mode b."""
    n, r = params.n, params.r
    dens = _doubled(n + 1, n + r - 1)
    pref = n * Fraction(math.factorial(n - 1), math.factorial(n + r - 2)) ** 2
    value = _ratio(params, (1 - n,), dens, t)
    if isinstance(value, Rational):
        return pref * value * t
    return float(pref) * value * float(t)


def nb_sq_mean(params: ModelParams, t):
    """Second moment of the mode-b occupancy."""
    n, r = params.n, params.r
    dens = [1] + _doubled(n + 1, n + r - 1)
    pref = n * Fraction(math.factorial(n - 1), math.factorial(n + r - 2)) ** 2
    value = _ratio(params, (2, 1 - n), dens, t)
    if isinstance(value, Rational):
        return pref * value * t
    return float(pref) * value * float(t)


def k3_mean(params: ModelParams, t):
    """<K_3> = <N_b> - n/2.

    For odd n this equals the half-integer-parameter hypergeometric pattern
    (see k3_mean_printed); for even n that pattern terminates too early, so
    the occupancy-based form is the closed-form route for all n.
    """
    value = nb_mean(params, t)
    if isinstance(value, Rational):
        return value - Fraction(params.n, 2)
    return value - 0.5 * params.n


def k3_mean_printed(params: ModelParams, t):
    """Literal half-integer parameter pattern for <K_3>.

    Correct for odd n.  For even n the pattern's nonpositive-integer numerator
    truncates the sum at k = n/2 - 1 and the value disagrees with the oracle;
    it is evaluated anyway so the mismatch can be recorded.
    """
    n, r = params.n, params.r
    nums = (-n, 1 - Fraction(n, 2))
    dens = [-Fraction(n, 2)] + _doubled(n, n + r - 2)
    value = _ratio(params, nums, dens, t)
    if isinstance(value, Rational):
        return -Fraction(n, 2) * value
    return -0.5 * n * value


def mandel_pair_from_t(params: ModelParams, t):
    """(Q_a, Q_b) from the closed-form occupancy moments; dtype follows t."""
    if t == 0:
        raise VacuumMode("mode b is vacuum at z = 0")
    nb = nb_mean(params, t)
    nb2 = nb_sq_mean(params, t)
    var = nb2 - nb * nb  # N_a = n - N_b shares the variance
    na = params.n - nb
    return var / na - 1, var / nb - 1


def cross_correlation_from_t(params: ModelParams, t):
    """Normalized cross-correlation of the two occupancies; dtype follows t."""
    n = params.n
    nb = nb_mean(params, t)
    nb2 = nb_sq_mean(params, t)
    den = nb * (n - nb)
    if den == 0:
        raise DegenerateDenominator("mode mean occupancy at 0 or n")
    return (n * nb - nb2) / den


def _zbar(z: CoherencePoint) -> complex:
    return z.z.conjugate()


def _check_path(path: str):
    if path not in ("closed", "oracle"):
        raise ValueError(f"unknown path {path!r}")


def su2_moments(params: ModelParams, z: CoherencePoint, path: str = "closed") -> Su2Moments:
    """Means of K_+, K_+^2, K_+ K_- and K_3 on the state labeled z."""
    _check_path(path)
    if path == "closed":
        t = z.t
        zb = _zbar(z)
        return Su2Moments(
            k_plus=float(k_plus_radial(params, t)) * zb,
            k_plus_sq=float(k_plus_sq_radial(params, t)) * zb * zb,
            k_plus_k_minus=float(k_plus_k_minus_mean(params, t)),
            k3=float(k3_mean(params, t)),
        )
    psi = build_state(params, z).to_two_mode()
    kp = fo.expectation(fo.k_plus(), psi)
    kp2 = fo.expectation(fo.k_plus() * fo.k_plus(), psi)
    kpkm = fo.expectation(fo.k_plus() * fo.k_minus(), psi)
    k3v = fo.expectation(fo.k3(), psi)
    return Su2Moments(k_plus=kp, k_plus_sq=kp2, k_plus_k_minus=kpkm.real, k3=k3v.real)


def quadrature_covariances(params: ModelParams, z: CoherencePoint, path: str = "closed",
                           convention: str = "corrected") -> QuadratureReport:
    """Covariances of the position/momentum pair and their squeeze parameters.

    S_x = 2 sigma_xx / sqrt(hbar^2 + 4 sigma_xp^2) - 1 and likewise for p;
    negative values mean squeezing below the coherent benchmark.
    """
    _check_path(path)
    if convention not in ("corrected", "printed"):
        raise ValueError(f"unknown momentum convention {convention!r}")
    hbar, mass, omega = params.hbar, params.mass, params.omega
    if path == "closed":
        n = params.n
        t = z.t
        c_r = float(k_plus_radial(params, t))
        cross = 2.0 * z.modulus * c_r * math.cos(z.phase)
        sigma_xx = (hbar / (mass * omega)) * (n + 1 - cross)
        if convention == "corrected":
            sigma_pp = (mass * hbar * omega / 4.0) * (n + 1 - cross)
            sigma_xp = 0.0
        else:
            sigma_pp = (mass * hbar * omega / 4.0) * (n + 1 + cross)
            sigma_xp = hbar * z.modulus * c_r * math.sin(z.phase)
    else:
        psi = build_state(params, z).to_two_mode()
        x = fo.position_x(hbar, mass, omega)
        p = fo.momentum_x(hbar, mass, omega, convention=convention)
        sigma_xx = fo.covariance(x, x, psi)
        sigma_pp = fo.covariance(p, p, psi)
        sigma_xp = fo.covariance(x, p, psi)
    denom = math.sqrt(hbar * hbar + 4.0 * sigma_xp * sigma_xp)
    return QuadratureReport(
        sigma_xx=sigma_xx,
        sigma_pp=sigma_pp,
        sigma_xp=sigma_xp,
        s_x=2.0 * sigma_xx / denom - 1.0,
        s_p=2.0 * sigma_pp / denom - 1.0,
    )


def legacy_quadrature_squeezes(params: ModelParams, z: CoherencePoint) -> tuple[float, float]:
    """Historical squeeze curves built from the bare ratio R_r(t).

    These omit the gamma prefactor of <K_+> and therefore do not match the
    variances computed by quadrature_covariances for n > 1; they reproduce the
    published reference curves (p-mode squeezing only at n = 1 when r = 1, and
    its spread to larger |z|^2 as r grows).
    """
    n = params.n
    t = z.t
    cross = 2.0 * z.modulus * float(bare_ratio(params, t)) * math.cos(z.phase)
    base = n + 1 - cross
    return 2.0 * base - 1.0, 0.5 * base - 1.0


def su2_squeeze(params: ModelParams, z: CoherencePoint, path: str = "closed") -> Su2SqueezeReport:
    """Variances of the Hermitian su(2) quadratures and their squeeze factors.

    X_1 = (K_+ + K_-)/2 and X_2 = (K_- - K_+)/2i obey [X_1, X_2] = -i K_3, so
    squeezing is judged against |<K_3>|/2.  When <K_3> vanishes (within 1e-14)
    the factors are reported as undefined rather than infinite.
    """
    _check_path(path)
    if path == "closed":
        m = su2_moments(params, z, path="closed")
        mean1 = m.k_plus.real
        mean2 = -m.k_plus.imag
        re_kp2 = m.k_plus_sq.real
        var1 = (2.0 * m.k_plus_k_minus - 2.0 * m.k3 + 2.0 * re_kp2) / 4.0 - mean1 * mean1
        var2 = (2.0 * m.k_plus_k_minus - 2.0 * m.k3 - 2.0 * re_kp2) / 4.0 - mean2 * mean2
        k3v = m.k3
    else:
        psi = build_state(params, z).to_two_mode()
        var1 = fo.covariance(fo.su2_x1(), fo.su2_x1(), psi)
        var2 = fo.covariance(fo.su2_x2(), fo.su2_x2(), psi)
        k3v = fo.expectation(fo.k3(), psi).real
    half = 0.5 * abs(k3v)
    if abs(k3v) < 1e-14:
        return Su2SqueezeReport(var1, var2, None, None, K3_UNDEFINED)
    return Su2SqueezeReport(var1, var2, var1 / half - 1.0, var2 / half - 1.0)


def number_moments(params: ModelParams, z: CoherencePoint, path: str = "closed") -> PhotonStats:
    """First and second moments of both mode occupancies."""
    _check_path(path)
    n = params.n
    if path == "closed":
        nb = float(nb_mean(params, z.t))
        nb2 = float(nb_sq_mean(params, z.t))
        return PhotonStats(
            mean_na=n - nb,
            mean_nb=nb,
            mean_na_sq=nb2 - 2.0 * n * nb + n * n,
            mean_nb_sq=nb2,
        )
    psi = build_state(params, z).to_two_mode()
    na_op, nb_op = fo.number_a(), fo.number_b()
    return PhotonStats(
        mean_na=fo.expectation(na_op, psi).real,
        mean_nb=fo.expectation(nb_op, psi).real,
        mean_na_sq=fo.expectation(na_op * na_op, psi).real,
        mean_nb_sq=fo.expectation(nb_op * nb_op, psi).real,
    )


def mandel_q(params: ModelParams, z: CoherencePoint, path: str = "closed",
             mode: str | None = None):
    """Mandel Q of one or both modes; negative values are sub-Poissonian.

    With mode None returns (q_a, q_b); mode "a" or "b" returns that value.
    Raises VacuumMode when the requested mode has zero mean occupancy, which
    happens for mode b exactly at z = 0.
    """
    _check_path(path)
    if mode not in (None, "a", "b"):
        raise ValueError(f"unknown mode {mode!r}")
    if path == "closed":
        if z.t == 0 and mode != "a":
            raise VacuumMode("mode b is vacuum at z = 0")
        if z.t == 0:  # mode a only: number state, variance zero
            return -1.0
        q_a, q_b = mandel_pair_from_t(params, z.t)
        q_a, q_b = float(q_a), float(q_b)
    else:
        stats = number_moments(params, z, path="oracle")
        var_a = stats.mean_na_sq - stats.mean_na ** 2
        var_b = stats.mean_nb_sq - stats.mean_nb ** 2
        if stats.mean_nb <= 1e-300 and mode != "a":
            raise VacuumMode("mode b is vacuum at z = 0")
        q_a = var_a / stats.mean_na - 1.0
        q_b = var_b / stats.mean_nb - 1.0 if stats.mean_nb > 0 else None
    if mode == "a":
        return q_a
    if mode == "b":
        return q_b
    return q_a, q_b


def cross_correlation(params: ModelParams, z: CoherencePoint, path: str = "closed") -> float:
    """Normalized cross-correlation <N_a N_b> / (<N_a><N_b>).

    Values below one mean the modes are anti-correlated.  Raises
    DegenerateDenominator when a mode mean sits at 0 or n (z = 0).
    """
    _check_path(path)
    if z.t == 0:
        raise DegenerateDenominator("mode b is vacuum at z = 0")
    if path == "closed":
        return float(cross_correlation_from_t(params, z.t))
    psi = build_state(params, z).to_two_mode()
    nanb = fo.expectation(fo.number_a() * fo.number_b(), psi).real
    na = fo.expectation(fo.number_a(), psi).real
    nb = fo.expectation(fo.number_b(), psi).real
    den = na * nb
    if den == 0:
        raise DegenerateDenominator("mode mean occupancy at 0 or n")
    return nanb / den
