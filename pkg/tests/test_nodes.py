"""
Testes de avaliação dos nós: axiomas de valuação, valores do exemplo de
profundidade 3, sonda de divisibilidade e oráculo de minimalidade.
"""

import random
from fractions import Fraction

import pytest

from vtree.algebra.polynomials import Poly, ord_phi, phi_expand
from vtree.algebra.value_group import INFINITE, INFINITY, GroupElem
from vtree.errors import ConfigurationError, DomainError, PreconditionError
from vtree.valuations import (
    DepthZero,
    Ordinary,
    divides_probe,
    infinitesimal_for,
    is_minimal_oracle,
    limit_augment,
)
from conftest import PRIME, q, random_poly


def _assert_valuation(node, seed: int, pairs: int = 35, max_degree: int = 20, height=None):
    rng = random.Random(seed)
    for _ in range(pairs):
        f = random_poly(rng, max_degree, height=height)
        g = random_poly(rng, max_degree, height=height)
        assert node(f * g) == node(f) + node(g)
        if not (f + g).is_zero:
            assert node(f + g) >= min(node(f), node(g))
        if node(f) != node(g) and not (f + g).is_zero:
            assert node(f + g) == min(node(f), node(g))


class TestValuationAxioms:
    """μ(fg) = μ(f) + μ(g) e desigualdade ultramétrica em amostras fixas."""

    def test_root(self, root):
        _assert_valuation(root, seed=1)

    def test_depth_zero(self, omega):
        _assert_valuation(omega(0, 0), seed=2)
        _assert_valuation(omega(3, Fraction(7, 2)), seed=3)

    def test_depth_zero_below_ball(self, omega):
        _assert_valuation(omega(0, "1-"), seed=4)

    def test_augmentations(self, mus):
        _assert_valuation(mus[1], seed=5, pairs=25, max_degree=12)
        _assert_valuation(mus[2], seed=6, pairs=15, max_degree=16)

    def test_limit(self, sqrt2, x):
        mu_a = limit_augment(sqrt2, x**2 - 2, GroupElem.infinity_minus())
        _assert_valuation(mu_a, seed=7, pairs=20, max_degree=8)

    def test_zero_is_infinite(self, mus, root):
        assert root(Poly()) is INFINITY
        assert mus[2](Poly()) is INFINITY

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "name", ["root", "omega_zero", "omega_one_minus", "mu1", "mu2", "mu_limit"]
    )
    def test_thousand_pairs(self, name, root, omega, mus, sqrt2, x):
        """1000 pares por nó, grau ≤ 40, coeficientes com |v_p| ≤ 6."""
        nodes = {
            "root": lambda: root,
            "omega_zero": lambda: omega(0, 0),
            "omega_one_minus": lambda: omega(0, "1-"),
            "mu1": lambda: mus[1],
            "mu2": lambda: mus[2],
            "mu_limit": lambda: limit_augment(sqrt2, x**2 - 2, GroupElem.infinity_minus()),
        }
        _assert_valuation(nodes[name](), seed=100, pairs=1000, max_degree=40, height=6)


class TestRootAndDepthZero:
    def test_root_formula(self, root, x):
        assert root(x**3 * 49 + x) == GroupElem.of(-3, 2, 0)
        assert root(Poly.constant(Fraction(1, 7))) == GroupElem.of(0, -1, 0)

    def test_depth_zero_is_monomial_minimum(self, omega, x):
        node = omega(7, Fraction(1, 2))
        # (x − 7)² + 14(x − 7) + 49
        assert node(x**2) == q(1)
        assert node(x - 7) == q(Fraction(1, 2))
        assert node(Poly.constant(49)) == q(2)

    def test_root_samples(self, root, base, omega):
        """(−deg f, v(lc f)), qualquer que seja o centro a."""
        rng = random.Random(21)
        for _ in range(1000):
            f = random_poly(rng, 9)
            if f.is_zero:
                continue
            expected = GroupElem.of(-f.degree, base(f.leading).main, 0)
            assert root(f) == expected
            assert omega(rng.randint(-50, 50), "-oo")(f) == expected

    def test_describe(self, omega):
        assert str(omega(0, Fraction(3, 5))) == "ω(0, (0|3/5|0))"


class TestVaquieValues:
    """Valores do exemplo de profundidade 3 para p = 7."""

    def test_mu0(self, mus, phis):
        mu0 = mus[0]
        assert mu0(phis["phi0"]) == q(Fraction(3, 5))
        assert mu0(phis["phi1"]) == q(3)
        assert mu0(phis["phi2"]) == q(9)

    def test_mu1(self, mus, phis):
        assert mus[1](phis["phi0"]) == q(Fraction(3, 5))
        assert mus[1](phis["phi1"]) == q(Fraction(10, 3))
        assert mus[1](phis["phi2"]) == q(10)

    def test_mu2(self, mus, phis):
        assert mus[2](phis["phi2"]) == q(Fraction(301, 30))

    def test_leaf(self, mus, phis):
        mu3 = mus[3]
        assert mu3.is_leaf
        assert mu3(phis["phi3"]) is INFINITY
        assert mu3(phis["phi2"]) == q(Fraction(301, 30))

    def test_relative_ramification(self, mus):
        assert [mu.e_rel() for mu in mus[:3]] == [5, 3, 2]
        assert mus[2].value_group().generator == Fraction(1, 30)

    def test_leaf_has_no_value_group(self, mus):
        with pytest.raises(DomainError):
            mus[3].e_rel()


class TestAugmentationPreconditions:
    def test_gamma_must_exceed(self, mus, phis):
        with pytest.raises(PreconditionError):
            Ordinary(mus[0], phis["phi1"], q(3))

    def test_phi_must_be_monic(self, mus, x):
        with pytest.raises(PreconditionError):
            Ordinary(mus[0], 2 * x**5 + 7, q(10))

    def test_degree_cannot_drop(self, mus, x):
        with pytest.raises(PreconditionError):
            Ordinary(mus[1], x - 7, q(10))

    def test_leaf_is_final(self, mus, x):
        with pytest.raises(PreconditionError):
            Ordinary(mus[3], mus[3].key_polynomial * x, q(1000))

    def test_rank_mismatch(self, mus, phis):
        with pytest.raises(ConfigurationError):
            Ordinary(mus[0], phis["phi1"], GroupElem.of(0, 4, 0, 0))

    def test_infinity_minus_predecessor(self, mus, phis, x):
        node = Ordinary(mus[0], phis["phi1"], GroupElem.infinity_minus())
        assert node(phis["phi1"] ** 2 * x) == GroupElem.of(2, Fraction(3, 5), 0)
        assert node.e_rel() is INFINITE

    def test_infinity_minus_samples(self, mus, phis):
        """Com γ = ∞⁻ decide o menor s da expansão: s·∞⁻ + μ(aₛ)."""
        phi1 = phis["phi1"]
        node = Ordinary(mus[0], phi1, GroupElem.infinity_minus())
        rng = random.Random(17)
        for _ in range(1000):
            f = random_poly(rng, 14)
            if f.is_zero:
                continue
            s = ord_phi(f, phi1)
            lowest = phi_expand(f, phi1)[s]
            assert node(f) == GroupElem.infinity_minus().scale(s) + mus[0](lowest)

    def test_incommensurable_augmentation(self, mus, phis):
        node = mus[0].augment(phis["phi1"], "(0|4|-1)")
        assert node(phis["phi1"] ** 3) == GroupElem.of(0, 12, -3)
        assert not node.is_commensurable


class TestDivisibilityProbe:
    def test_divides(self, mus, x):
        assert divides_probe(mus[0], x, x**2)
        assert not divides_probe(mus[0], x, x + 1)

    def test_key_divides_itself(self, mus, phis):
        assert divides_probe(mus[1], phis["phi1"], phis["phi1"] * (phis["phi0"] + 1))

    def test_rank_exhausted(self, base):
        node = DepthZero(base, 0, GroupElem.ball_minus(1))
        with pytest.raises(ConfigurationError):
            infinitesimal_for(node)

    def test_larger_rank_has_room(self):
        from vtree.algebra.polynomials import GroundValuation

        base = GroundValuation(PRIME, rank=4)
        node = DepthZero(base, 0, GroupElem.ball_minus(1, rank=4))
        assert infinitesimal_for(node) == GroupElem.of(0, 0, 0, 1)


class TestMinimalityOracle:
    def test_key_polynomial_is_confirmed(self, mus, phis):
        verdict = is_minimal_oracle(mus[1], phis["phi2"], 15, 2, samples=40)
        assert verdict.confirmed
        assert verdict.checked > 0

    def test_non_key_is_refuted(self, mus, x):
        verdict = is_minimal_oracle(mus[0], x + 1, 6, 3)
        assert verdict.refuted
        assert verdict.witness is not None
        assert "refuted" in str(verdict)

    def test_requires_monic(self, mus, x):
        with pytest.raises(PreconditionError):
            is_minimal_oracle(mus[0], 3 * x, 4, 1)
