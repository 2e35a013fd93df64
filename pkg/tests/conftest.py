"""
Fixtures compartilhadas: base 7-ádica, a cadeia de profundidade 3 e as
famílias embutidas.
"""

import random
from fractions import Fraction
from typing import Optional

import pytest

from vtree.algebra.polynomials import GroundValuation, Poly
from vtree.algebra.value_group import GroupElem
from vtree.valuations import (
    DepthZero,
    Ordinary,
    Root,
    dyadic_family,
    sqrt_family,
    vaquie_chain,
    vaquie_polynomials,
)

PRIME = 7


def q(value) -> GroupElem:
    """(0|value|0) no posto padrão."""
    return GroupElem.rational(Fraction(value))


def random_poly(
    rng: random.Random, max_degree: int, prime: int = PRIME, height: Optional[int] = None
) -> Poly:
    """Polinômio não nulo com coeficientes ±u·pᵉ, e ∈ [−2, 4] ou |e| ≤ height."""
    low, high = (-2, 4) if height is None else (-height, height)
    while True:
        coeffs = [
            rng.choice([0, 1, -1, 2, 3]) * Fraction(prime) ** rng.randint(low, high)
            for _ in range(rng.randint(1, max_degree + 1))
        ]
        f = Poly.from_coeffs(coeffs)
        if not f.is_zero:
            return f


@pytest.fixture
def base():
    return GroundValuation(PRIME)


@pytest.fixture
def x():
    return Poly.x()


@pytest.fixture
def phis():
    return vaquie_polynomials(PRIME)


@pytest.fixture
def chain():
    return vaquie_chain(PRIME)


@pytest.fixture
def mus(chain):
    """[μ₀, μ₁, μ₂, μ₃]."""
    return chain.nodes()


@pytest.fixture
def root(base):
    return Root(base)


@pytest.fixture
def omega(base):
    """ω(a, δ) com δ racional ou texto."""

    def build(a, delta):
        value = delta if isinstance(delta, str) else base.rational(Fraction(delta))
        return DepthZero(base, a, value)

    return build


@pytest.fixture
def sqrt2():
    return sqrt_family(PRIME)


@pytest.fixture
def dyadic():
    return dyadic_family(PRIME)


@pytest.fixture
def augment():
    def build(parent, phi, gamma):
        return Ordinary(parent, phi, gamma)

    return build


@pytest.fixture
def random_node(omega, mus, phis):
    """
    Nó aleatório de profundidade ≤ 2 com valores racionais:
    ω_{a,δ}; [ω_{a,δ}; x − b, γ]; [μ₀; φ₁ + pᵏxʲ, γ]; [μ₁; φ₂ + pᵏxʲ, γ].
    """
    x = Poly.x()

    def build(rng: random.Random):
        kind = rng.randrange(4)
        a, k = rng.randint(0, 48), rng.randint(0, 12)
        if kind == 0:
            return omega(a, Fraction(k, 6))
        if kind == 1:
            # v(b − a) ≥ δ: x − b é chave para ω_{a,δ}
            b = a + PRIME ** (-(-k // 6)) * rng.randint(-3, 3)
            gamma = q(Fraction(k + rng.randint(1, 12), 6))
            return Ordinary(omega(a, Fraction(k, 6)), x - b, gamma)
        shift = x ** rng.randint(0, 4)
        if kind == 2:
            phi = phis["phi1"] + PRIME ** rng.randint(4, 6) * shift
            return Ordinary(mus[0], phi, q(3 + Fraction(rng.randint(1, 12), 6)))
        phi = phis["phi2"] + PRIME ** rng.randint(11, 13) * shift
        return Ordinary(mus[1], phi, q(10 + Fraction(rng.randint(1, 30), 30)))

    return build
