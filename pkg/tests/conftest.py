import numpy as np
import pytest

from polycross import Polynomial, from_roots

# the two reference cubics used throughout: factored form scaled by the
# reciprocal root product so the constant coefficient is exactly -1
CUBIC_A_ROOTS = (1 + 1j, -0.8 + 0.8j, -0.9 - 0.9j)
CUBIC_B_ROOTS = (1.6 + 1.6j, -1.7 + 1.7j, -1.5 - 1.5j)


def poly_with_roots(roots) -> Polynomial:
    """Normalized (a0 = -1) polynomial with the given nonzero roots."""
    prod = 1.0 + 0j
    for g in roots:
        prod *= -g
    return from_roots(roots, leading=-1.0 / prod)


def naive_eval(coeffs, z):
    """Power-sum evaluation, the independent oracle for Horner."""
    return sum(c * z ** n for n, c in enumerate(coeffs))


def annulus_roots(rng: np.random.Generator, degree: int,
                  r_lo=0.2, r_hi=3.0, min_sep=0.05):
    """Roots uniform (by area) in an annulus with a pairwise separation floor."""
    while True:
        rr = np.sqrt(rng.uniform(r_lo ** 2, r_hi ** 2, size=degree))
        th = rng.uniform(0.0, 2.0 * np.pi, size=degree)
        pts = rr * np.exp(1j * th)
        d = np.abs(pts[:, None] - pts[None, :])
        np.fill_diagonal(d, np.inf)
        if d.min() >= min_sep:
            return [complex(z) for z in pts]


def random_normalized_poly(rng: np.random.Generator, degree: int,
                           min_a1: float = 0.0) -> Polynomial:
    """Random coefficients, rescaled so a0 = -1 (optionally |a1| bounded away
    from 0 to keep the small-radius image circle simple)."""
    while True:
        cs = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
        if abs(cs[0]) < 0.1 or abs(cs[degree]) < 0.1:
            continue
        cs = [-c / cs[0] for c in cs]
        if abs(cs[1]) < min_a1:
            continue
        return Polynomial(cs)


@pytest.fixture
def cubic_a() -> Polynomial:
    return poly_with_roots(CUBIC_A_ROOTS)


@pytest.fixture
def cubic_b() -> Polynomial:
    return poly_with_roots(CUBIC_B_ROOTS)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260810)
