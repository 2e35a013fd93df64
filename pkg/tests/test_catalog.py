"""
Testes dos exemplos embutidos: tabela de profundidade 3 e famílias de √2.
"""

from fractions import Fraction

import pytest

from vtree.algebra.polynomials import Poly
from vtree.errors import ConfigurationError, PreconditionError
from vtree.valuations import sqrt_family, vaquie_chain, vaquie_example
from conftest import q


def _values(*items):
    return tuple(q(Fraction(item)) for item in items)


class TestVaquieTable:
    @pytest.fixture(scope="class")
    def example(self):
        return vaquie_example(7)

    def test_rows(self, example):
        assert [row.label for row in example.rows] == ["μ0", "μ1", "μ2", "μ3"]
        assert [row.degree for row in example.rows] == [1, 5, 15, 30]
        assert [row.e_rel for row in example.rows] == [5, 3, 2, None]
        assert example.rows[0].values == _values("3/5", 3, 9)
        assert example.rows[1].values == _values("3/5", "10/3", 10)
        assert example.rows[2].values == _values("3/5", "10/3", "301/30")

    def test_scaled_rows_are_integral(self, example):
        assert [row.label for row in example.scaled_rows] == [
            "ν1 = 5μ0",
            "ν2 = 15μ1",
            "ν3 = 30μ2",
            "ν = 30μ3",
        ]
        assert example.scaled_rows[0].values == _values(3, 15, 45)
        assert example.scaled_rows[1].values == _values(9, 50, 150)
        assert example.scaled_rows[3].values == _values(18, 100, 301)

    def test_ramification(self, example):
        assert example.ramification == 30

    def test_values_do_not_depend_on_prime(self, example):
        other = vaquie_example(11)
        assert [row.values for row in other.rows] == [row.values for row in example.rows]
        assert other.polynomials["phi1"] == Poly.monomial(1, 5) + 11**3

    @pytest.mark.parametrize("prime", [2, 3, 5])
    def test_forbidden_primes(self, prime):
        with pytest.raises(ConfigurationError):
            vaquie_chain(prime)


class TestSqrtFamily:
    def test_other_prime(self):
        family = sqrt_family(17, horizon=4)
        centers = [rho.a for rho in family.members()]
        assert all((a * a - 2) % 17 ** (i + 1) == 0 for i, a in enumerate(centers))
        assert family.size == 4

    def test_explicit_root(self):
        family = sqrt_family(7, horizon=3, root=4)
        assert [rho.a for rho in family.members()] == [4, 39, 235]

    def test_non_square(self):
        with pytest.raises(PreconditionError):
            sqrt_family(5)
