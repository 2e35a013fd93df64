"""
Interface de linha de comando do Valuative Tree Study.

Uso:
    vtree [--prime P] [--rank R] [--horizon N] [--json] <comando> ...

Nós, famílias e cadeias são lidos de arquivos JSON (ou de JSON inline, quando
o argumento começa com "{"). Famílias embutidas: "sqrt2" e "dyadic".

Códigos de saída:
    0  ok
    1  propriedade verificada como falsa
    2  entrada inválida ou pré-condição violada
    3  desconhecido dentro do horizonte
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence

from vtree import __version__
from vtree.algebra.polynomials import GroundValuation, Poly, parse_poly
from vtree.algebra.value_group import (
    GroupElem,
    parse_value,
    quasi_cut,
    sme_canonical,
    sme_equiv,
)
from vtree.config import LOG_LEVEL, RunConfig, get_run_config
from vtree.errors import StabilityHorizonError, VTreeError
from vtree.valuations.catalog import dyadic_family, sqrt_family, vaquie_example
from vtree.valuations.chains import Chain, depth, lim_depth, validate_mlv
from vtree.valuations.families import (
    Family,
    StableValue,
    UnstableSearch,
    find_unstable,
    gamma_A,
)
from vtree.valuations.newton import newton_polygon
from vtree.valuations.nodes import Node
from vtree.valuations.tree import (
    equiv_nodes,
    gcln,
    leq,
    tangent_direction,
    tree_distance,
)
from vtree.valuations.verdicts import Verdict
from vtree.api.schemas import (
    ChainSchema,
    NodeSchema,
    FamilySchema,
    chain_from_domain,
    chain_to_domain,
    dumps,
    family_to_domain,
    loads,
    node_from_domain,
    node_to_domain,
    parse_model,
    poly_names,
    read_json,
    vaquie_from_domain,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_UNKNOWN = 3

VERDICT_EXIT = {
    Verdict.TRUE: EXIT_OK,
    Verdict.FALSE: EXIT_VIOLATION,
    Verdict.UNKNOWN: EXIT_UNKNOWN,
}

BUILTIN_FAMILIES: Dict[str, Callable[..., Family]] = {
    "sqrt2": sqrt_family,
    "dyadic": dyadic_family,
}


@dataclass
class Outcome:
    """Resultado de um comando: registro JSON, texto para tabela e código de saída."""

    payload: Dict[str, Any]
    text: str
    code: int = EXIT_OK


@dataclass(frozen=True)
class Session:
    """Configuração efetiva e leitores de entrada de uma execução."""

    run: RunConfig
    base: GroundValuation
    names: Mapping[str, Poly]

    @classmethod
    def open(cls, run: RunConfig) -> "Session":
        return cls(run, GroundValuation(run.prime, run.rank), poly_names(run.prime))

    def poly(self, text: str) -> Poly:
        return parse_poly(text, self.base.prime, self.names)

    def value(self, text: str):
        return parse_value(text, self.base.rank)

    def _load(self, source: str) -> Any:
        if source.lstrip().startswith("{"):
            return loads(source)
        return read_json(source)

    def chain(self, source: str) -> Chain:
        schema = parse_model(ChainSchema, self._load(source))
        return chain_to_domain(
            schema, self.run.prime, self.run.rank, self.names, self.run.horizon
        )

    def node(self, source: str) -> Node:
        """Lê um nó; arquivos de cadeia produzem o último nó da cadeia."""
        data = self._load(source)
        if isinstance(data, dict) and "initial" in data:
            schema = parse_model(ChainSchema, data)
            chain = chain_to_domain(
                schema, self.run.prime, self.run.rank, self.names, self.run.horizon
            )
            return chain.build()
        schema = parse_model(NodeSchema, data)
        return node_to_domain(schema, self.base, self.names, self.run.horizon)

    def family(self, source: str) -> Family:
        if source in BUILTIN_FAMILIES:
            return BUILTIN_FAMILIES[source](
                prime=self.run.prime, rank=self.run.rank, horizon=self.run.horizon
            )
        schema = parse_model(FamilySchema, self._load(source))
        return family_to_domain(schema, self.base, self.names, self.run.horizon)


def _short(value) -> str:
    """Valores racionais aparecem só pelo slot principal nas tabelas."""
    if isinstance(value, GroupElem) and value.is_rational:
        main = value.main
        return str(main.numerator) if main.denominator == 1 else str(main)
    return str(value)


def _table(header: Sequence[str], rows: List[Sequence[str]]) -> str:
    widths = [
        max(len(str(cell)) for cell in column) for column in zip(header, *rows)
    ]
    lines = [
        "  ".join(str(cell).ljust(width) for cell, width in zip(line, widths)).rstrip()
        for line in [header, *rows]
    ]
    lines.insert(1, "  ".join("-" * width for width in widths))
    return "\n".join(lines)


# ========== COMANDOS ==========


def cmd_eval(args, session: Session) -> Outcome:
    node = session.node(args.node)
    f = session.poly(args.poly)
    value = node(f)
    return Outcome({"node": str(node), "poly": str(f), "value": str(value)}, str(value))


def cmd_validate(args, session: Session) -> Outcome:
    chain = session.chain(args.chain)
    report = validate_mlv(chain)
    payload = {
        "ok": report.ok,
        "depth": depth(chain),
        "lim_depth": lim_depth(chain),
        "violations": [
            {"step": v.step, "code": v.code, "message": v.message}
            for v in report.violations
        ],
        "certificates": list(report.certificates),
        "unverified": [{"step": step, "reason": reason} for step, reason in report.unverified],
        "nodes": [str(node) for node in report.nodes],
    }
    if report.ok:
        lines = [f"ok, depth {payload['depth']}, lim_depth {payload['lim_depth']}"]
    else:
        lines = ["violated"] + [
            f"  passo {v.step}: {v.code} ({v.message})" for v in report.violations
        ]
    lines += [f"  não verificado no passo {step}: {reason}" for step, reason in report.unverified]
    return Outcome(payload, "\n".join(lines), EXIT_OK if report.ok else EXIT_VIOLATION)


def cmd_depth(args, session: Session) -> Outcome:
    chain = session.chain(args.chain)
    payload = {"depth": depth(chain), "lim_depth": lim_depth(chain)}
    return Outcome(payload, f"depth {payload['depth']}, lim_depth {payload['lim_depth']}")


def cmd_gcln(args, session: Session) -> Outcome:
    meet = gcln(session.node(args.first), session.node(args.second))
    payload = {
        "node": node_from_domain(meet),
        "description": str(meet),
        "sv": None if meet.is_leaf else str(meet.sv),
    }
    return Outcome(payload, str(meet))


def cmd_leq(args, session: Session) -> Outcome:
    first, second = session.node(args.first), session.node(args.second)
    below, above = leq(first, second), leq(second, first)
    payload = {"leq": below, "geq": above, "same": below and above}
    text = "same node" if below and above else ("leq" if below else "not leq")
    return Outcome(payload, text, EXIT_OK if below else EXIT_VIOLATION)


def cmd_dist(args, session: Session) -> Outcome:
    distance = tree_distance(session.node(args.first), session.node(args.second))
    return Outcome({"distance": str(distance)}, str(distance))


def cmd_tangent(args, session: Session) -> Outcome:
    phi = tangent_direction(session.node(args.first), session.node(args.second))
    return Outcome({"tangent": str(phi)}, str(phi))


def cmd_equiv(args, session: Session) -> Outcome:
    run = session.run
    report = equiv_nodes(
        session.node(args.first),
        session.node(args.second),
        deg_bound=run.oracle_degree,
        height_bound=run.oracle_height,
        samples=run.oracle_samples,
        seed=args.seed,
    )
    payload = {
        "verdict": report.verdict.value,
        "reasons": list(report.reasons),
        "witness": None if report.witness is None else str(report.witness),
    }
    lines = [report.verdict.value] + [f"  {reason}" for reason in report.reasons]
    return Outcome(payload, "\n".join(lines), VERDICT_EXIT[report.verdict])


def cmd_sme_classify(args, session: Session) -> Outcome:
    value = session.value(args.value)
    cut = quasi_cut(value)
    canonical = sme_canonical(value)
    payload = {"value": str(value), "cut": str(cut), "canonical": str(canonical)}
    return Outcome(payload, f"{cut}, canonical {canonical}")


def cmd_sme_equiv(args, session: Session) -> Outcome:
    x, y = session.value(args.first), session.value(args.second)
    same = sme_equiv(x, y)
    payload = {"equivalent": same, "first": str(quasi_cut(x)), "second": str(quasi_cut(y))}
    text = f"{'equivalent' if same else 'not equivalent'}: {quasi_cut(x)} / {quasi_cut(y)}"
    return Outcome(payload, text, EXIT_OK if same else EXIT_VIOLATION)


def cmd_newton(args, session: Session) -> Outcome:
    node = session.node(args.node)
    polygon = newton_polygon(node, session.poly(args.phi), session.poly(args.f))
    payload = {
        "points": [[s, str(value)] for s, value in polygon.points],
        "hull": [[s, str(value)] for s, value in polygon.hull],
        "slopes": [{"slope": str(slope), "length": length} for slope, length in polygon.slopes],
        "mixed": polygon.mixed,
    }
    slopes = ", ".join(f"{slope} (×{length})" for slope, length in polygon.slopes) or "-"
    text = f"{polygon.sketch()}\ninclinações: {slopes}"
    return Outcome(payload, text)


def cmd_family_stable(args, session: Session) -> Outcome:
    family = session.family(args.family)
    f = session.poly(args.poly)
    result = family.stable_value(f)
    if isinstance(result, StableValue):
        payload = {
            "stable": True,
            "value": str(result.value),
            "since": result.since,
            "certified_at": result.certified_at,
        }
        text = (
            f"{result.value} (estável desde ρ{result.since}, "
            f"certificado em ρ{result.certified_at})"
        )
        return Outcome(payload, text)
    payload = {
        "stable": False,
        "horizon": result.horizon,
        "values": [str(value) for value in result.values],
    }
    return Outcome(payload, f"UNSTABLE_UP_TO({result.horizon})", EXIT_UNKNOWN)


def cmd_family_unstable(args, session: Session) -> Outcome:
    family = session.family(args.family)
    candidates = [session.poly(text) for text in args.candidate]
    bound = args.deg_bound or session.run.oracle_degree
    result = find_unstable(family, bound, candidates)
    if isinstance(result, UnstableSearch):
        payload = {
            "found": True,
            "m_inf": result.m_inf,
            "phi": str(result.phi),
            "classification": result.classification,
            "horizon": result.horizon,
        }
        text = f"m_∞ = {result.m_inf}, φ = {result.phi} ({result.classification})"
        return Outcome(payload, text)
    payload = {
        "found": False,
        "deg_bound": result.deg_bound,
        "horizon": result.horizon,
        "tested": result.tested,
    }
    return Outcome(
        payload, f"NONE_UP_TO(grau {result.deg_bound}, horizonte {result.horizon})", EXIT_UNKNOWN
    )


def cmd_family_gamma(args, session: Session) -> Outcome:
    family = session.family(args.family)
    gamma = gamma_A(family, session.poly(args.phi))
    return Outcome({"gamma": str(gamma)}, str(gamma))


def cmd_example_vaquie(args, session: Session) -> Outcome:
    example = vaquie_example(session.run.prime, session.run.rank)
    if args.emit_chain:
        Path(args.emit_chain).write_text(dumps(chain_from_domain(example.chain)) + "\n")
        logger.info(f"💾 [CLI] cadeia gravada em {args.emit_chain}")

    header = ["nó", "grau", "sv", "e_rel", "φ₀", "φ₁", "φ₂"]
    rows = [
        [
            row.label,
            str(row.degree),
            _short(row.sv),
            "-" if row.e_rel is None else str(row.e_rel),
            *(_short(value) for value in row.values),
        ]
        for row in example.rows
    ]
    scaled = [
        [row.label, "", "", "", *(_short(value) for value in row.values)]
        for row in example.scaled_rows
    ]
    text = "\n".join(
        [
            f"p = {example.prime}",
            _table(header, rows + scaled),
            f"índice de ramificação: {example.ramification}",
        ]
    )
    return Outcome(vaquie_from_domain(example).model_dump(mode="json", exclude_none=True), text)


# ========== PARSER ==========


def _global_options(default=argparse.SUPPRESS) -> argparse.ArgumentParser:
    """Opções aceitas antes ou depois do subcomando."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--prime", type=int, default=default, help="Primo p (VTREE_PRIME)"
    )
    common.add_argument(
        "--rank", type=int, default=default, help="Posto do grupo de valores (VTREE_RANK)"
    )
    common.add_argument(
        "--horizon", type=int, default=default, help="Horizonte das famílias (VTREE_HORIZON)"
    )
    common.add_argument(
        "--json", action="store_true", default=default, help="Saída JSON (VTREE_OUTPUT=json)"
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_options()
    parser = argparse.ArgumentParser(
        prog="vtree",
        description="Valuações indutivas e de limite em Q[x] com aritmética exata.",
        parents=[_global_options(default=None)],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    def command(group, name: str, handler, *arguments: str, help_text: Optional[str] = None):
        p = group.add_parser(name, parents=[common], help=help_text)
        for argument in arguments:
            p.add_argument(argument)
        p.set_defaults(handler=handler)
        return p

    commands = parser.add_subparsers(dest="command", required=True)

    command(commands, "eval", cmd_eval, "node", "poly", help_text="μ(f)")
    command(commands, "validate", cmd_validate, "chain", help_text="Condições MLV de uma cadeia")
    command(commands, "depth", cmd_depth, "chain", help_text="Profundidade e profundidade limite")
    command(commands, "gcln", cmd_gcln, "first", "second", help_text="Maior nó comum abaixo")
    command(commands, "leq", cmd_leq, "first", "second", help_text="Ordem estrutural first ≤ second")
    command(commands, "dist", cmd_dist, "first", "second", help_text="Distância na árvore")
    command(
        commands, "tangent", cmd_tangent, "first", "second",
        help_text="Direção tangente de first para second",
    )
    p = command(commands, "equiv", cmd_equiv, "first", "second", help_text="Equivalência de nós")
    p.add_argument("--seed", type=int, default=0, help="Semente do oráculo amostral")

    sme = commands.add_parser("sme", help="Quase-cortes e equivalência sme")
    sme_commands = sme.add_subparsers(dest="sme_command", required=True)
    command(sme_commands, "classify", cmd_sme_classify, "value")
    command(sme_commands, "equiv", cmd_sme_equiv, "first", "second")

    command(commands, "newton", cmd_newton, "node", "phi", "f", help_text="Polígono de Newton φ-ádico")

    family = commands.add_parser("family", help="Famílias contínuas (arquivo JSON, sqrt2 ou dyadic)")
    family_commands = family.add_subparsers(dest="family_command", required=True)
    command(family_commands, "stable-value", cmd_family_stable, "family", "poly")
    p = command(family_commands, "unstable", cmd_family_unstable, "family")
    p.add_argument("--deg-bound", type=int, default=None)
    p.add_argument("--candidate", action="append", default=[])
    command(family_commands, "gamma", cmd_family_gamma, "family", "phi")

    example = commands.add_parser("example", help="Exemplos embutidos")
    example_commands = example.add_subparsers(dest="example", required=True)
    p = command(example_commands, "vaquie", cmd_example_vaquie, help_text="Cadeia de profundidade 3")
    p.add_argument("--emit-chain", metavar="PATH", help="Grava a cadeia em JSON")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=LOG_LEVEL.upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )

    try:
        run = get_run_config(
            prime=args.prime,
            rank=args.rank,
            horizon=args.horizon,
            output="json" if args.json else None,
        )
        outcome = args.handler(args, Session.open(run))
    except StabilityHorizonError as e:
        logger.warning(f"⚠️ [CLI] {type(e).__name__}: {e}")
        print(f"desconhecido: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_UNKNOWN
    except VTreeError as e:
        logger.error(f"❌ [CLI] {type(e).__name__}: {e}")
        print(f"erro: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT

    if run.output == "json":
        print(dumps(outcome.payload))
    else:
        print(outcome.text)
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
