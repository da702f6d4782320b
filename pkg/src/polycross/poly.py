"""Complex polynomial arithmetic for the crossing-tracking root finder.

Everything here is exact-degree bookkeeping: construction trims spurious
trailing coefficients, evaluation is Horner, deflation is synthetic division.
Polynomial values are immutable after construction and safe to share across
concurrent trajectory tasks.
"""

from __future__ import annotations

import cmath
import math
from typing import Iterable, Sequence, Tuple, Union

TWO_PI = 2.0 * math.pi

# trailing coefficients below this fraction of the largest magnitude are noise
TRIM_REL_TOL = 1e-14


class DegreeZeroError(ValueError):
    """Raised when an operation needs degree >= 1 but got a constant."""


class NotARootError(ValueError):
    """Raised when deflate() is handed a point that is not a root."""


class ZeroRoot:
    """Signal returned by normalize() when a0 = 0: z = 0 is already a root.

    The caller strips the zero root (coefficient shift) and retries.
    """

    def __repr__(self) -> str:
        return "ZeroRoot()"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ZeroRoot)

    def __hash__(self) -> int:
        return hash(ZeroRoot)


ZERO_ROOT = ZeroRoot()


class Polynomial:
    """a0 + a1*z + ... + aN*z^N with aN != 0, coefficients in ascending power.

    Trailing coefficients whose magnitude falls below TRIM_REL_TOL relative to
    the largest coefficient are trimmed at construction, so the stored degree
    is the honest degree of the data.
    """

    __slots__ = ("_coeffs", "_rev", "_deriv")

    def __init__(self, coeffs: Iterable[complex]):
        cs = [complex(c) for c in coeffs]
        if not cs:
            raise ValueError("empty coefficient list")
        for c in cs:
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError(f"non-finite coefficient {c!r}")
        scale = max(abs(c) for c in cs)
        if scale == 0.0:
            raise ValueError("zero polynomial has no degree")
        while len(cs) > 1 and abs(cs[-1]) <= TRIM_REL_TOL * scale:
            cs.pop()
        self._coeffs: Tuple[complex, ...] = tuple(cs)
        self._rev: Tuple[complex, ...] = tuple(reversed(cs))
        self._deriv: "Polynomial | None" = None

    @property
    def coeffs(self) -> Tuple[complex, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def eval(self, z: complex) -> complex:
        """Horner evaluation of the polynomial at z."""
        acc = 0j
        for c in self._rev:
            acc = acc * z + c
        return acc

    __call__ = eval

    def derivative(self) -> "Polynomial":
        """Coefficients n*a_n shifted down one degree. Cached (idempotent)."""
        if self._deriv is None:
            if self.degree == 0:
                raise DegreeZeroError("derivative of a constant is identically zero")
            self._deriv = Polynomial(
                [n * c for n, c in enumerate(self._coeffs)][1:]
            )
        return self._deriv

    def residual_scale(self, z: complex) -> float:
        """Sum |a_n| * max(1,|z|)^n, the natural scale for residuals at z."""
        m = max(1.0, abs(z))
        s = 0.0
        mp = 1.0
        for c in self._coeffs:
            s += abs(c) * mp
            mp *= m
        return s

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Polynomial) and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({list(self._coeffs)!r})"


def normalize(p: Polynomial) -> Union[Polynomial, ZeroRoot]:
    """Rescale to constant coefficient -1 without moving any root.

    Returns -p/a0, which has a0 = -1 and the same root set. If a0 = 0 the
    rescale is impossible and ZERO_ROOT is returned instead: z = 0 is a root,
    strip it and retry.
    """
    if p.degree == 0:
        raise DegreeZeroError("cannot normalize a constant polynomial")
    a0 = p.coeffs[0]
    scale = max(abs(c) for c in p.coeffs)
    if abs(a0) <= TRIM_REL_TOL * scale:
        return ZERO_ROOT
    return Polynomial([-c / a0 for c in p.coeffs])


def strip_zero_roots(p: Polynomial) -> Tuple[Polynomial, int]:
    """Divide out z^k where k is the multiplicity of the root 0.

    Returns (quotient, k). k = 0 when a0 != 0.
    """
    scale = max(abs(c) for c in p.coeffs)
    cs = list(p.coeffs)
    k = 0
    while len(cs) > 1 and abs(cs[0]) <= TRIM_REL_TOL * scale:
        cs.pop(0)
        k += 1
    return Polynomial(cs), k


def synthetic_division(p: Polynomial, gamma: complex) -> Tuple[Polynomial, complex]:
    """Divide p by (z - gamma); returns (quotient, remainder).

    The remainder equals p(gamma) in exact arithmetic and is the deflation
    diagnostic.
    """
    if p.degree == 0:
        raise DegreeZeroError("cannot deflate a constant polynomial")
    cs = p.coeffs
    n = p.degree
    q = [0j] * n
    acc = cs[n]
    for k in range(n - 1, 0, -1):
        q[k] = acc
        acc = cs[k] + gamma * acc
    q[0] = acc
    remainder = cs[0] + gamma * acc
    return Polynomial(q), remainder


def deflate(p: Polynomial, root: complex, residual_tol: float = 1e-8) -> Polynomial:
    """Synthetic division by (z - root) after checking root really is one.

    residual_tol is relative to residual_scale(root). Raises NotARootError when
    |p(root)| exceeds it; the degree always drops by exactly 1.
    """
    scale = p.residual_scale(root)
    res = abs(p.eval(root))
    if res > residual_tol * scale:
        raise NotARootError(
            f"|p({root})| = {res:.3e} exceeds {residual_tol:.1e} * scale {scale:.3e}"
        )
    quotient, _ = synthetic_division(p, root)
    return quotient


def cauchy_bound(p: Polynomial) -> float:
    """1 + max_{n<N} |a_n / a_N|; every root lies strictly inside this radius."""
    if p.degree == 0:
        raise DegreeZeroError("no root bound for a constant polynomial")
    a_lead = abs(p.coeffs[-1])
    return 1.0 + max(abs(c) for c in p.coeffs[:-1]) / a_lead


def from_roots(roots: Sequence[complex], leading: complex = 1.0) -> Polynomial:
    """Expand leading * prod (z - gamma_i) into coefficients."""
    cs = [complex(leading)]
    for g in roots:
        g = complex(g)
        nxt = [0j] * (len(cs) + 1)
        for k, c in enumerate(cs):
            nxt[k + 1] += c
            nxt[k] -= g * c
        cs = nxt
    return Polynomial(cs)


def polar(z: complex) -> Tuple[float, float]:
    """(r, theta) with theta reduced into [0, 2*pi); theta = 0 when r = 0."""
    r = abs(z)
    if r == 0.0:
        return 0.0, 0.0
    return r, math.atan2(z.imag, z.real) % TWO_PI


def from_polar(r: float, theta: float) -> complex:
    """r * e^{i*theta} with theta reduced into [0, 2*pi) first."""
    return r * cmath.exp(1j * (theta % TWO_PI))
