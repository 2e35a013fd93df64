"""
Testes dos schemas JSON: conversão de nós, famílias e cadeias.
"""

import pytest

from vtree.api.schemas import (
    ChainSchema,
    FamilySchema,
    NodeSchema,
    chain_from_domain,
    chain_to_domain,
    dumps,
    family_from_domain,
    family_to_domain,
    loads,
    node_from_domain,
    node_to_domain,
    parse_model,
    read_json,
)
from vtree.errors import InputParseError, PreconditionError
from vtree.valuations import Ordinary, same_node, vaquie_chain
from conftest import PRIME, q


def _through_json(schema, model):
    return parse_model(model, loads(dumps(schema)))


class TestNodes:
    def test_inline_depth_zero(self, base, omega):
        schema = parse_model(NodeSchema, {"kind": "depth0", "a": 7, "delta": "3/2"})
        assert same_node(node_to_domain(schema, base), omega(7, "3/2"))

    def test_radius_in_gamma(self, base, omega):
        schema = parse_model(NodeSchema, {"kind": "depth0", "a": "0", "gamma": "1"})
        assert same_node(node_to_domain(schema, base), omega(0, 1))

    def test_named_polynomials(self, base, mus):
        data = {
            "kind": "ordinary",
            "parent": {"kind": "depth0", "a": "0", "delta": "3/5"},
            "phi": "phi1",
            "gamma": "10/3",
        }
        node = node_to_domain(parse_model(NodeSchema, data), base)
        assert same_node(node, mus[1])

    def test_incommensurable_node_survives_json(self, base, mus, phis):
        node = Ordinary(mus[1], phis["phi2"], "(0|11|-2)")
        restored = node_to_domain(_through_json(node_from_domain(node), NodeSchema), base)
        assert same_node(restored, node)
        assert restored(phis["phi2"]) == node(phis["phi2"])

    def test_floats_are_rejected(self):
        with pytest.raises(InputParseError):
            parse_model(NodeSchema, {"kind": "depth0", "a": 0, "delta": 0.5})

    def test_missing_fields(self):
        with pytest.raises(InputParseError) as info:
            parse_model(NodeSchema, {"kind": "ordinary", "phi": "x"})
        assert "parent" in str(info.value)

    def test_invalid_augmentation(self, base):
        data = {
            "kind": "ordinary",
            "parent": {"kind": "root"},
            "phi": "2*x",
            "gamma": "1",
        }
        with pytest.raises(PreconditionError):
            node_to_domain(parse_model(NodeSchema, data), base)


class TestFamilies:
    def test_hensel_sequence(self, base, sqrt2):
        data = {
            "kind": "pseudo_convergent",
            "sequence": {"hensel": {"poly": "x^2 - 2", "root": 3}},
            "radii": "index",
            "horizon": 6,
        }
        family = family_to_domain(parse_model(FamilySchema, data), base)
        assert all(
            same_node(a, b) for a, b in zip(family.members(), sqrt2.members()[:6])
        )

    def test_rule_family_survives_json(self, base, dyadic, x):
        restored = family_to_domain(
            _through_json(family_from_domain(dyadic), FamilySchema), base
        )
        assert restored.values(x)[:4] == dyadic.values(x)[:4]

    def test_explicit_members(self, base, omega):
        data = {
            "kind": "explicit",
            "members": [
                {"kind": "depth0", "a": 0, "delta": 1},
                {"kind": "depth0", "a": 0, "delta": 2},
            ],
        }
        family = family_to_domain(parse_model(FamilySchema, data), base)
        assert family.size == 2
        assert same_node(family.member(2), omega(0, 2))

    def test_missing_generator(self):
        with pytest.raises(InputParseError):
            parse_model(FamilySchema, {"kind": "augmentation_rule"})


class TestChains:
    def test_vaquie_survives_json(self):
        chain = vaquie_chain(PRIME)
        restored = chain_to_domain(_through_json(chain_from_domain(chain), ChainSchema), 11)
        # o primo do arquivo vence o argumento
        assert restored.initial.ground.prime == PRIME
        assert all(same_node(a, b) for a, b in zip(chain.nodes(), restored.nodes()))

    def test_limit_chain_from_file(self, tmp_path, x):
        path = tmp_path / "sqrt.json"
        path.write_text(
            dumps(
                {
                    "prime": 7,
                    "initial": {"kind": "depth0", "a": "0", "delta": "0"},
                    "steps": [
                        {
                            "kind": "limit",
                            "phi": "x^2 - 2",
                            "gamma": "oo-",
                            "family": {
                                "kind": "pseudo_convergent",
                                "sequence": {"hensel": {"poly": "x^2 - 2", "root": 3}},
                                "horizon": 8,
                            },
                        }
                    ],
                }
            )
        )
        chain = chain_to_domain(parse_model(ChainSchema, read_json(path)), PRIME)
        assert chain.build()(x - 3) == q(1)

    def test_deterministic_output(self):
        chain = vaquie_chain(PRIME)
        assert dumps(chain_from_domain(chain)) == dumps(chain_from_domain(vaquie_chain(PRIME)))
        assert '"prime": 7' in dumps(chain_from_domain(chain))

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{ not json")
        with pytest.raises(InputParseError):
            read_json(path)
        with pytest.raises(InputParseError):
            read_json(tmp_path / "missing.json")


def test_base_rank_from_file():
    schema = parse_model(
        ChainSchema, {"rank": 4, "initial": {"kind": "depth0", "a": 0, "delta": 1}}
    )
    chain = chain_to_domain(schema, PRIME)
    assert chain.initial.rank == 4
