"""
Testes da estrutura de árvore: ordem, direções tangentes, gcln, distância,
caminhos e equivalência de nós.
"""

import random
from fractions import Fraction
from itertools import product

import pytest

from vtree.algebra.polynomials import Poly
from vtree.algebra.value_group import INFINITY, GroupElem, sme_equiv
from vtree.errors import DomainError, PreconditionError
from vtree.valuations import (
    Limit,
    Ordinary,
    Verdict,
    augmentations_equal,
    equiv_nodes,
    gcln,
    infinitesimal_for,
    leq,
    limit_path_intersection,
    lt,
    minimal_limit_node,
    path_intersection,
    same_node,
    sqrt_family,
    tangent_direction,
    tree_distance,
)
from conftest import PRIME, q, random_poly


@pytest.fixture
def phi2_star(phis, x):
    return phis["phi2"] + PRIME**10 * x


class TestOrder:
    def test_root_is_below_everything(self, root, mus, omega):
        assert all(leq(root, node) for node in mus + [omega(5, 2)])
        assert not leq(mus[0], root)

    def test_chain_is_increasing(self, mus):
        assert all(lt(a, b) for a, b in zip(mus, mus[1:]))

    def test_depth_zero_examples(self, omega):
        assert leq(omega(0, 1), omega(7, 2))
        assert not leq(omega(0, 2), omega(7, 3))

    @pytest.mark.slow
    def test_depth_zero_law(self, omega, base):
        """ω_{a,δ} ≤ ω_{b,ε} ⟺ δ ≤ ε e v(a − b) ≥ δ, em toda a grade."""
        centers = range(49)
        radii = [Fraction(k, 6) for k in range(13)]
        nodes = {(a, delta): omega(a, delta) for a in centers for delta in radii}
        checked = 0
        for a, b in product(centers, repeat=2):
            distance = INFINITY if a == b else base(a - b)
            for delta, epsilon in product(radii, repeat=2):
                expected = delta <= epsilon and distance >= q(delta)
                assert leq(nodes[a, delta], nodes[b, epsilon]) == expected
                checked += 1
        assert checked == 49**2 * 13**2

    def test_limit_node_reads_generated_prefix(self, sqrt2, x):
        short = sqrt_family(PRIME, horizon=3)
        node = Limit(short, x**2 - 2, q(5))
        # só ρ₁..ρ₃ são consultados; ρ₅ da família longa está acima deles
        assert leq(node, sqrt2.member(5))
        assert not leq(node, sqrt2.member(2))

    def test_same_node_across_constructions(self, omega, x):
        direct = omega(0, 2)
        augmented = Ordinary(omega(0, 1), x, q(2))
        assert same_node(direct, augmented)
        assert not lt(direct, augmented)

    def test_translated_center(self, omega):
        assert same_node(omega(0, 1), omega(7, 1))
        assert not same_node(omega(0, 2), omega(7, 2))


class TestTangents:
    def test_depth_zero(self, omega, x):
        assert tangent_direction(omega(0, Fraction(1, 2)), omega(0, 2)) == x

    def test_along_the_chain(self, mus, phis):
        assert tangent_direction(mus[0], mus[1]) == phis["phi1"]
        assert tangent_direction(mus[0], mus[3]) == phis["phi1"]
        assert tangent_direction(mus[1], mus[3]) == phis["phi2"]

    def test_requires_strict_order(self, mus):
        with pytest.raises(PreconditionError):
            tangent_direction(mus[1], mus[0])


class TestGreatestCommonLowerNode:
    def test_comparable(self, mus):
        assert gcln(mus[1], mus[3]) is mus[1]
        assert gcln(mus[3], mus[1]) is mus[1]

    def test_depth_zero(self, omega):
        meet = gcln(omega(0, 3), omega(7, 2))
        assert same_node(meet, omega(0, 1))
        assert tree_distance(omega(0, 3), omega(7, 2)) == q(3)

    def test_perturbed_key_lies_above(self, mus, phi2_star):
        # ν(φ₂) = 53/5 ≥ 301/30, logo μ₂ ≤ ν
        nu = Ordinary(mus[1], phi2_star, q(11))
        assert nu(mus[2].phi) == q(Fraction(53, 5))
        assert gcln(mus[2], nu) is mus[2]

    def test_perturbed_key_branches(self, mus, phis, phi2_star):
        first = Ordinary(mus[1], phis["phi2"], q(11))
        second = Ordinary(mus[1], phi2_star, q(11))
        meet = gcln(first, second)
        assert same_node(meet, Ordinary(mus[1], phis["phi2"], q(Fraction(53, 5))))
        assert meet.sv == q(Fraction(53, 5))

    def test_meet_is_below_both(self, mus, omega, sqrt2, x):
        nodes = mus[:3] + [omega(7, 2), omega(3, 1), minimal_limit_node(sqrt2, x**2 - 2)]
        for first, second in product(nodes, repeat=2):
            meet = gcln(first, second)
            assert leq(meet, first) and leq(meet, second)

    def test_meet_is_maximal(self, omega):
        first, second = omega(0, 3), omega(7, 2)
        meet = gcln(first, second)
        tangent = tangent_direction(meet, first)
        probe = Ordinary(meet, tangent, meet(tangent) + infinitesimal_for(meet))
        assert leq(probe, first)
        assert not leq(probe, second)


class TestDistance:
    def test_same_ray(self, omega):
        assert tree_distance(omega(0, 1), omega(0, 3)) == q(2)

    def test_symmetric_and_zero(self, mus, omega):
        assert tree_distance(mus[1], mus[1]).is_zero
        assert tree_distance(mus[2], omega(7, 2)) == tree_distance(omega(7, 2), mus[2])

    def test_leaf(self, mus):
        with pytest.raises(DomainError):
            tree_distance(mus[3], mus[0])

    def test_four_point_condition(self, mus, omega):
        """As duas maiores somas de distâncias cruzadas coincidem."""
        nodes = [mus[0], mus[1], mus[2], omega(7, 2), omega(14, 3)]
        d = {
            (i, j): tree_distance(nodes[i], nodes[j])
            for i, j in product(range(len(nodes)), repeat=2)
        }
        for a, b, c, e in product(range(len(nodes)), repeat=4):
            sums = sorted([d[a, b] + d[c, e], d[a, c] + d[b, e], d[a, e] + d[b, c]])
            assert sums[1] == sums[2]


def _probe_beyond(meet, target):
    """[meet; t, meet(t) + ε] com t = t(meet, target): um passo rumo a target."""
    tangent = tangent_direction(meet, target)
    return Ordinary(meet, tangent, meet(tangent) + infinitesimal_for(meet))


def _abs(value: GroupElem) -> GroupElem:
    return max(value, -value)


@pytest.mark.slow
class TestRandomNodes:
    """Propriedades de gcln e da distância em 200 pares aleatórios."""

    PAIRS = 200
    TRIPLES = 100

    @pytest.fixture
    def pairs(self, random_node):
        rng = random.Random(31)
        return [(random_node(rng), random_node(rng)) for _ in range(self.PAIRS)]

    @pytest.fixture
    def sample(self):
        rng = random.Random(32)
        return [random_poly(rng, 12) for _ in range(100)]

    def test_meet_is_common_lower_bound(self, pairs, sample):
        for first, second in pairs:
            meet = gcln(first, second)
            assert leq(meet, first) and leq(meet, second)
            for f in sample:
                value = meet(f)
                assert value <= first(f) and value <= second(f)

    def test_commutative_and_idempotent(self, pairs):
        for first, second in pairs:
            assert same_node(gcln(first, second), gcln(second, first))
            assert same_node(gcln(first, first), first)

    def test_meet_is_maximal(self, pairs):
        for first, second in pairs:
            meet = gcln(first, second)
            for target, other in ((first, second), (second, first)):
                if not lt(meet, target):
                    continue
                step = _probe_beyond(meet, target)
                assert leq(step, target)
                assert not leq(step, other)

    def test_distance_on_comparable_pairs(self, pairs):
        comparable = [(a, b) for a, b in pairs if leq(a, b) or leq(b, a)]
        assert comparable
        for first, second in comparable:
            assert tree_distance(first, second) == _abs(first.sv - second.sv)

    def test_triangle_inequality(self, random_node):
        rng = random.Random(33)
        for _ in range(self.TRIPLES):
            a, b, c = (random_node(rng) for _ in range(3))
            assert tree_distance(a, c) <= tree_distance(a, b) + tree_distance(b, c)


class TestPaths:
    def test_augmentations_equal(self, mus, phis):
        phi1, gamma = phis["phi1"], Fraction(10, 3)
        assert augmentations_equal(mus[0], phi1, gamma, phi1 + 7**4 * Poly.x(), gamma)
        assert not augmentations_equal(mus[0], phi1, gamma, phi1 + 7**3, gamma)

    def test_intersection(self, mus, phis, phi2_star):
        interval = path_intersection(mus[1], phis["phi2"], phi2_star)
        assert interval.low == q(10)
        assert interval.high == q(Fraction(53, 5))
        assert interval.contains("21/2")
        assert not interval.contains("10")
        assert same_node(
            interval.node_at("21/2"), Ordinary(mus[1], phi2_star, q(Fraction(21, 2)))
        )

    def test_empty_intersection(self, mus, phis, x):
        assert path_intersection(mus[0], phis["phi1"], x**5) is None

    def test_depth_zero_intersection(self, omega, x):
        interval = path_intersection(omega(0, 0), x, x - 7)
        assert interval.high == q(1)

    def test_outside_interval(self, mus, phis, phi2_star):
        interval = path_intersection(mus[1], phis["phi2"], phi2_star)
        with pytest.raises(PreconditionError):
            interval.node_at("11")

    def test_limit_paths(self, dyadic, x):
        interval = limit_path_intersection(dyadic, x, x - 7)
        assert interval.low == GroupElem.ball_minus(1)
        assert interval.high == q(1)
        assert interval.low_inclusive
        assert interval.contains("1-") and interval.contains("1")
        assert not interval.contains("1+")
        assert interval.endpoint().sv == q(1)

    def test_limit_paths_need_unstable_keys(self, sqrt2, x):
        with pytest.raises(PreconditionError):
            limit_path_intersection(sqrt2, x**2 - 2, x**2 - 3)


class TestEquivalence:
    def test_same_parent_sme_equivalent(self, mus, phis):
        first = Ordinary(mus[0], phis["phi1"], "(0|4|-1)")
        second = Ordinary(mus[0], phis["phi1"], "(0|4|-2)")
        report = equiv_nodes(first, second, samples=30)
        assert report.verdict is Verdict.TRUE
        assert not same_node(first, second)

    def test_cut_mismatch(self, mus, phis):
        first = Ordinary(mus[0], phis["phi1"], "(0|4|-1)")
        third = Ordinary(mus[0], phis["phi1"], "(0|4|1)")
        assert not sme_equiv(first.sv, third.sv)
        assert equiv_nodes(first, third).verdict is Verdict.FALSE

    def test_identical_nodes(self, mus):
        assert equiv_nodes(mus[2], mus[2]).verdict is Verdict.TRUE

    def test_degree_mismatch(self, mus):
        assert equiv_nodes(mus[0], mus[1]).verdict is Verdict.FALSE

    def test_different_keys(self, omega):
        report = equiv_nodes(omega(0, "1-"), omega(3, "1-"))
        assert report.verdict is Verdict.FALSE
        assert report.witness is not None

    def test_leaves_are_rejected(self, mus):
        with pytest.raises(DomainError):
            equiv_nodes(mus[3], mus[3])
