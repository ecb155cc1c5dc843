"""Brute-force two-mode Fock-space ground truth.

A sparse two-mode state is a finite map from occupation pairs (n_a, n_b) to
complex amplitudes.  Operators are formal sums of products of the primitive
ladder symbols and act by the elementary rules

    a|n_a, n_b> = sqrt(n_a) |n_a - 1, n_b>,    a'|n_a, n_b> = sqrt(n_a + 1) |n_a + 1, n_b>

(likewise for the b mode).  Nothing in this module shares code with the
closed-form hypergeometric path; that independence is the whole point.
"""

from __future__ import annotations

import math
from types import MappingProxyType
from typing import Iterable, Mapping, Tuple

Occupation = Tuple[int, int]

_SYMBOLS = ("a", "ad", "b", "bd")
_DAGGER = {"a": "ad", "ad": "a", "b": "bd", "bd": "b"}


class NotNormalized(ValueError):
    """Expectation values require a unit-norm state."""


class NotHermitian(ValueError):
    """Covariances are only defined for Hermitian operators."""


class TruncationOverflow(OverflowError):
    """A creation operator pushed nonzero amplitude past the configured cap."""


class TwoModeState:
    """Finite-support amplitude map over two-mode occupation pairs."""

    __slots__ = ("_amps",)

    def __init__(self, amplitudes: Mapping[Occupation, complex]):
        amps = {}
        for (na, nb), value in amplitudes.items():
            if na < 0 or nb < 0:
                raise ValueError(f"negative occupation in {(na, nb)}")
            v = complex(value)
            if v != 0:
                amps[(int(na), int(nb))] = v
        self._amps = amps

    @property
    def amplitudes(self) -> Mapping[Occupation, complex]:
        return MappingProxyType(self._amps)

    def norm_squared(self) -> float:
        return sum(abs(v) ** 2 for v in self._amps.values())

    def is_normalized(self, tol: float = 1e-12) -> bool:
        return abs(self.norm_squared() - 1.0) <= tol

    def inner(self, other: "TwoModeState") -> complex:
        """<self|other> over the occupation basis."""
        if len(self._amps) > len(other._amps):
            return other.inner(self).conjugate()
        total = 0j
        for key, v in self._amps.items():
            w = other._amps.get(key)
            if w is not None:
                total += v.conjugate() * w
        return total

    def __repr__(self):
        entries = ", ".join(f"{k}: {v:.4g}" for k, v in sorted(self._amps.items()))
        return f"TwoModeState({{{entries}}})"


def basis_state(na: int, nb: int) -> TwoModeState:
    return TwoModeState({(na, nb): 1.0 + 0j})


def vacuum() -> TwoModeState:
    return basis_state(0, 0)


def _canonical_word(word: Tuple[str, ...]) -> Tuple[str, ...]:
    """A-mode symbols before b-mode symbols; the two modes commute, so this
    is the same operator, and it makes structurally equal words compare equal."""
    return (tuple(s for s in word if s in ("a", "ad"))
            + tuple(s for s in word if s in ("b", "bd")))


class OperatorExpr:
    """Formal sum of weighted products of the primitive symbols a, a', b, b'.

    Products are stored as tuples applied right to left, matching the usual
    operator composition order.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Tuple[str, ...], complex]):
        cleaned: dict = {}
        for word, coeff in terms.items():
            for sym in word:
                if sym not in _SYMBOLS:
                    raise ValueError(f"unknown symbol {sym!r}")
            key = _canonical_word(tuple(word))
            c = cleaned.get(key, 0j) + complex(coeff)
            cleaned[key] = c
        self.terms = {w: c for w, c in cleaned.items() if c != 0}

    @staticmethod
    def symbol(name: str) -> "OperatorExpr":
        return OperatorExpr({(name,): 1.0})

    @staticmethod
    def identity() -> "OperatorExpr":
        return OperatorExpr({(): 1.0})

    @staticmethod
    def zero() -> "OperatorExpr":
        return OperatorExpr({})

    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        out = dict(self.terms)
        for word, coeff in other.terms.items():
            out[word] = out.get(word, 0j) + coeff
        return OperatorExpr(out)

    def __sub__(self, other: "OperatorExpr") -> "OperatorExpr":
        return self + (-1.0) * other

    def __neg__(self) -> "OperatorExpr":
        return (-1.0) * self

    def __mul__(self, other):
        if isinstance(other, OperatorExpr):
            out: dict = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    word = w1 + w2
                    out[word] = out.get(word, 0j) + c1 * c2
            return OperatorExpr(out)
        return OperatorExpr({w: complex(other) * c for w, c in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def dagger(self) -> "OperatorExpr":
        out: dict = {}
        for word, coeff in self.terms.items():
            dword = tuple(_DAGGER[s] for s in reversed(word))
            out[dword] = out.get(dword, 0j) + coeff.conjugate()
        return OperatorExpr(out)

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        dag = self.dagger().terms
        words = set(self.terms) | set(dag)
        return all(abs(self.terms.get(w, 0j) - dag.get(w, 0j)) <= tol for w in words)

    def __repr__(self):
        parts = [f"{c:.4g}*{''.join(w) or '1'}" for w, c in sorted(self.terms.items())]
        return " + ".join(parts) or "0"


A = OperatorExpr.symbol("a")
ADAG = OperatorExpr.symbol("ad")
B = OperatorExpr.symbol("b")
BDAG = OperatorExpr.symbol("bd")


def _apply_symbol(sym: str, amps: Mapping[Occupation, complex],
                  max_total: int | None) -> dict:
    out: dict = {}
    for (na, nb), amp in amps.items():
        if sym == "a":
            if na == 0:
                continue
            key, factor = (na - 1, nb), math.sqrt(na)
        elif sym == "b":
            if nb == 0:
                continue
            key, factor = (na, nb - 1), math.sqrt(nb)
        elif sym == "ad":
            key, factor = (na + 1, nb), math.sqrt(na + 1)
        else:  # bd
            key, factor = (na, nb + 1), math.sqrt(nb + 1)
        if max_total is not None and key[0] + key[1] > max_total and amp != 0:
            raise TruncationOverflow(
                f"creation past max total quanta {max_total} with nonzero amplitude at {(na, nb)}"
            )
        out[key] = out.get(key, 0j) + amp * factor
    return out


def apply(expr: OperatorExpr, state: TwoModeState,
          max_total: int | None = None) -> TwoModeState:
    """Linear action of an operator expression; annihilating past zero occupation
    just drops the component."""
    result: dict = {}
    for word, coeff in expr.terms.items():
        amps: Mapping[Occupation, complex] = state.amplitudes
        for sym in reversed(word):
            amps = _apply_symbol(sym, amps, max_total)
            if not amps:
                break
        for key, amp in amps.items():
            result[key] = result.get(key, 0j) + coeff * amp
    return TwoModeState(result)


def expectation(expr: OperatorExpr, state: TwoModeState) -> complex:
    if not state.is_normalized():
        raise NotNormalized(f"state norm^2 = {state.norm_squared():.6g}")
    return state.inner(apply(expr, state))


def covariance(expr_a: OperatorExpr, expr_b: OperatorExpr, state: TwoModeState,
               imag_tol: float = 1e-10) -> float:
    """Symmetrized covariance (1/2)<AB + BA> - <A><B> for Hermitian A, B."""
    if not expr_a.is_hermitian():
        raise NotHermitian("first operator is not Hermitian")
    if not expr_b.is_hermitian():
        raise NotHermitian("second operator is not Hermitian")
    mean_a = expectation(expr_a, state)
    mean_b = expectation(expr_b, state)
    sym = 0.5 * (expectation(expr_a * expr_b, state) + expectation(expr_b * expr_a, state))
    value = sym - mean_a * mean_b
    scale = 1.0 + abs(value)
    if abs(value.imag) > imag_tol * scale:
        raise ArithmeticError(f"covariance has imaginary residue {value.imag:.3e}")
    return value.real


# su(2) generators in the Schwinger realization, plus the number operators.

def k_plus() -> OperatorExpr:
    return A * BDAG


def k_minus() -> OperatorExpr:
    return ADAG * B


def k3() -> OperatorExpr:
    return 0.5 * (BDAG * B) - 0.5 * (ADAG * A)


def number_a() -> OperatorExpr:
    return ADAG * A


def number_b() -> OperatorExpr:
    return BDAG * B


def su2_x1() -> OperatorExpr:
    return 0.5 * (k_plus() + k_minus())


def su2_x2() -> OperatorExpr:
    return (0.5j) * (k_plus() - k_minus())  # (K_- - K_+)/2i


def position_x(hbar: float = 1.0, mass: float = 1.0, omega: float = 1.0) -> OperatorExpr:
    c = math.sqrt(hbar / (2.0 * mass * omega))
    return c * (B + BDAG - A - ADAG)


def momentum_x(hbar: float = 1.0, mass: float = 1.0, omega: float = 1.0,
               convention: str = "corrected") -> OperatorExpr:
    """Conjugate momentum to position_x.

    The "corrected" combination (b' - b + a - a') satisfies [x, p] = i hbar.
    The "printed" combination (b - b' + a - a') is the legacy form found in
    older write-ups of this model; it commutes with x (it is proportional to
    the transverse coordinate) and is kept only for comparison.
    """
    c = 0.5j * math.sqrt(mass * hbar * omega / 2.0)
    if convention == "corrected":
        return c * (BDAG - B + A - ADAG)
    if convention == "printed":
        return c * (B - BDAG + A - ADAG)
    raise ValueError(f"unknown momentum convention {convention!r}")


def commutator(expr_a: OperatorExpr, expr_b: OperatorExpr) -> OperatorExpr:
    return expr_a * expr_b - expr_b * expr_a


def commutator_residual(expr_a: OperatorExpr, expr_b: OperatorExpr,
                        expected: OperatorExpr, max_total_quanta: int,
                        states: Iterable[Occupation] | None = None) -> float:
    """Max entrywise deviation of [A, B] - expected over a basis truncation."""
    if states is None:
        states = [(na, nb) for na in range(max_total_quanta + 1)
                  for nb in range(max_total_quanta + 1 - na)]
    comm = commutator(expr_a, expr_b) - expected
    worst = 0.0
    for na, nb in states:
        image = apply(comm, basis_state(na, nb))
        for amp in image.amplitudes.values():
            worst = max(worst, abs(amp))
    return worst
