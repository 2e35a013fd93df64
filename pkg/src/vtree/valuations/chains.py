"""
Cadeias MLV, profundidade, nós primitivos e partição em feixes de caminhos.

Uma cadeia registra o nó inicial (grau 1) e a lista de aumentos:

    μ₀ --φ₁,γ₁--> μ₁ --φ₂,γ₂--> ⋯ --φᵣ,γᵣ--> μᵣ

Passos ordinários exigem deg φₙ₊₁ > deg μₙ; passos limite exigem família de
grau estável deg μₙ e φₙ₊₁ instável.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from vtree.algebra.polynomials import Poly
from vtree.algebra.value_group import INFINITE, INFINITY, Value, sme_equiv
from vtree.errors import DomainError, PreconditionError, SupUnderdeterminedError
from .families import Family, Limit, gamma_A, minimal_limit_node
from .nodes import DepthZero, Node, Ordinary, Root, coerce_value
from .tree import leq, lt, same_node, tangent_direction

logger = logging.getLogger(__name__)


class StepKind(str, Enum):
    ORDINARY = "ordinary"
    LIMIT = "limit"


@dataclass(frozen=True)
class ChainStep:
    kind: StepKind
    phi: Poly
    gamma: Value
    family: Optional[Family] = None


@dataclass
class Chain:
    """Registro de uma cadeia MLV com construção preguiçosa dos nós."""

    initial: Node
    steps: List[ChainStep] = field(default_factory=list)
    _nodes: Optional[List[Node]] = field(default=None, init=False, repr=False)

    def _apply(self, node: Node, step: ChainStep) -> Node:
        gamma = coerce_value(step.gamma, node.rank)
        if step.kind is StepKind.LIMIT:
            if step.family is None:
                raise PreconditionError("Passo limite sem família")
            return Limit(step.family, step.phi, gamma)
        return Ordinary(node, step.phi, gamma)

    def nodes(self) -> List[Node]:
        """[μ₀, μ₁, ..., μᵣ]."""
        if self._nodes is None:
            built = [self.initial]
            for step in self.steps:
                built.append(self._apply(built[-1], step))
            self._nodes = built
        return list(self._nodes)

    def build(self) -> Node:
        return self.nodes()[-1]

    def classify(self) -> List["PrimitiveClassification"]:
        """Classifica os nós internos, anexando o próximo φ forte como testemunha."""
        nodes = self.nodes()
        result = []
        for index, node in enumerate(nodes):
            if node.is_leaf:
                continue
            witness = None
            if index < len(self.steps):
                step = self.steps[index]
                if step.kind is StepKind.ORDINARY and step.phi.degree > node.degree:
                    witness = step.phi
            result.append(classify_primitive(node, witness))
        return result


# ========== VALIDAÇÃO ==========


@dataclass(frozen=True)
class MLVViolation:
    step: int
    code: str
    message: str


@dataclass
class MLVReport:
    ok: bool
    violations: List[MLVViolation] = field(default_factory=list)
    certificates: List[str] = field(default_factory=list)
    unverified: List[Tuple[int, str]] = field(default_factory=list)
    nodes: List[Node] = field(default_factory=list)

    @property
    def codes(self) -> List[str]:
        return [violation.code for violation in self.violations]


def _check_ordinary(n: int, mu: Node, step: ChainStep, gamma: Value, report: MLVReport):
    if step.phi.degree <= mu.degree:
        report.violations.append(
            MLVViolation(
                n,
                "degree_not_increasing",
                f"passo ordinário exige deg μ{n - 1} = {mu.degree} < deg φ{n} = "
                f"{step.phi.degree}",
            )
        )
    before = mu(step.phi)
    if not gamma > before:
        report.violations.append(
            MLVViolation(
                n,
                "gamma_not_exceeding",
                f"γ{n} = {gamma} deve exceder estritamente μ{n - 1}(φ{n}) = {before}",
            )
        )
    else:
        report.certificates.append(f"passo {n}: μ{n - 1}(φ{n}) = {before} < γ{n} = {gamma}")


def _check_limit(n: int, mu: Node, step: ChainStep, gamma: Value, report: MLVReport):
    family = step.family
    if family is None:
        report.violations.append(
            MLVViolation(n, "missing_family", "passo limite sem família")
        )
        return
    if family.stable_degree != mu.degree:
        report.violations.append(
            MLVViolation(
                n,
                "family_degree_mismatch",
                f"grau estável {family.stable_degree} ≠ deg μ{n - 1} = {mu.degree}",
            )
        )
    first = family.member(1)
    if not lt(mu, first):
        report.violations.append(
            MLVViolation(n, "family_not_above_base", f"ρ₁ = {first} não está acima de μ{n - 1}")
        )
        return

    result = family.stable_value(step.phi)
    if result.is_stable:
        report.violations.append(
            MLVViolation(
                n,
                "phi_not_unstable",
                f"φ{n} estabiliza em {result.value} desde o membro {result.since}",
            )
        )
        return
    report.unverified.append(
        (n, f"φ{n} instável apenas até o horizonte {result.horizon}")
    )
    if not all(gamma > value for value in result.values):
        report.violations.append(
            MLVViolation(
                n,
                "gamma_not_exceeding",
                f"γ{n} = {gamma} deve exceder estritamente os valores gerados de φ{n}",
            )
        )

    if mu.sv is not INFINITY and mu.degree == first.degree and not isinstance(mu, Root):
        tangent = tangent_direction(mu, first)
        previous_phi = mu.key_polynomial
        if mu(previous_phi - tangent) > mu(previous_phi):
            report.violations.append(
                MLVViolation(
                    n,
                    "previous_phi_in_tangent",
                    f"φ{n - 1} = {previous_phi} pertence a t(μ{n - 1}, ρ₁) ∋ {tangent}",
                )
            )
        else:
            report.certificates.append(
                f"passo {n}: φ{n - 1} ∉ t(μ{n - 1}, ρ₁) (representante {tangent})"
            )


def validate_mlv(chain: Chain) -> MLVReport:
    """
    Verifica as condições MLV passo a passo.

    Instabilidade certificada só até o horizonte marca o passo como não
    verificado, não como violação.

    Returns:
        MLVReport: ok, violações (passo, código, mensagem), certificados e os
        nós construídos até o primeiro passo inválido
    """
    report = MLVReport(ok=False)
    mu = chain.initial
    report.nodes.append(mu)
    if mu.degree != 1:
        report.violations.append(
            MLVViolation(0, "initial_degree", f"nó inicial tem grau {mu.degree} ≠ 1")
        )

    last = len(chain.steps)
    for n, step in enumerate(chain.steps, start=1):
        before = len(report.violations)
        if not step.phi.is_monic:
            report.violations.append(
                MLVViolation(n, "phi_not_monic", f"φ{n} = {step.phi} não é mônico")
            )
            break
        gamma = coerce_value(step.gamma, mu.rank)
        if gamma is INFINITY and n != last:
            report.violations.append(
                MLVViolation(n, "infinite_gamma_not_last", "γ = ∞ apenas no último passo")
            )
        if step.kind is StepKind.ORDINARY:
            _check_ordinary(n, mu, step, gamma, report)
        else:
            _check_limit(n, mu, step, gamma, report)

        try:
            mu = chain._apply(mu, step)
        except PreconditionError as e:
            if len(report.violations) == before:
                report.violations.append(MLVViolation(n, "construction_failed", str(e)))
            break
        report.nodes.append(mu)

    report.ok = not report.violations
    if report.ok:
        logger.info(f"✅ [CADEIA] cadeia válida: profundidade {depth(chain)}")
    else:
        logger.info(f"⚠️ [CADEIA] violações: {report.codes}")
    return report


def depth(chain: Chain) -> int:
    return len(chain.steps)


def lim_depth(chain: Chain) -> int:
    return sum(1 for step in chain.steps if step.kind is StepKind.LIMIT)


def node_lim_depth(node: Node) -> int:
    """Número de aumentos limite na construção do nó."""
    if isinstance(node, Ordinary):
        return node_lim_depth(node.parent)
    if isinstance(node, Limit):
        return 1 + node_lim_depth(node.family.member(1))
    return 0


# ========== NÓS PRIMITIVOS ==========


class PrimitiveKind(str, Enum):
    PRIMITIVE_ORDINARY = "primitive_ordinary"
    PRIMITIVE_LIMIT = "primitive_limit"
    NON_PRIMITIVE = "non_primitive"


@dataclass(frozen=True)
class PrimitiveClassification:
    node: Node
    kind: PrimitiveKind
    witness: Optional[Poly] = None


def _is_root_like(node: Node) -> bool:
    return isinstance(node, Root) or (
        isinstance(node, DepthZero) and node.delta is not INFINITY and node.delta.top < 0
    )


def _is_minimal_limit(node: Node) -> bool:
    if not isinstance(node, Limit):
        return False
    try:
        return sme_equiv(node.sv, gamma_A(node.family, node.phi))
    except SupUnderdeterminedError:
        return False


def classify_primitive(node: Node, witness: Optional[Poly] = None) -> PrimitiveClassification:
    """
    Raiz e μ_𝒜 → primitivo limite; nós comensuráveis → primitivo ordinário;
    demais nós incomensuráveis → não primitivo.

    Raises:
        DomainError: Para folhas
    """
    if node.is_leaf:
        raise DomainError(f"Classificação definida apenas para nós internos: {node}")
    if _is_root_like(node) or _is_minimal_limit(node):
        return PrimitiveClassification(node, PrimitiveKind.PRIMITIVE_LIMIT)
    if node.e_rel() is not INFINITE:
        return PrimitiveClassification(node, PrimitiveKind.PRIMITIVE_ORDINARY, witness)
    return PrimitiveClassification(node, PrimitiveKind.NON_PRIMITIVE)


def primitive_owner(node: Node) -> Node:
    """Primitivo ρ cujo feixe 𝒫(ρ) contém o nó, lido da construção."""
    if _is_root_like(node):
        return node
    if isinstance(node, DepthZero):
        return Root(node.base)
    if isinstance(node, Limit):
        return minimal_limit_node(node.family, node.phi)
    if isinstance(node, Ordinary):
        if node.is_strong:
            return node.parent
        return primitive_owner(node.parent)
    raise DomainError(f"Tipo de nó não suportado: {type(node).__name__}")


def in_path_bundle(nu: Node, rho: Node) -> bool:
    """
    ν ∈ 𝒫(ρ): ν = [ρ; t, sv(ν)] com t = t(ρ, ν) forte (ρ primitivo ordinário)
    ou de grau deg ρ (ρ primitivo limite, que pertence ao próprio feixe).
    """
    limit_like = _is_root_like(rho) or _is_minimal_limit(rho)
    if same_node(nu, rho):
        return limit_like
    if not leq(rho, nu):
        return False
    tangent = tangent_direction(rho, nu)
    if limit_like and tangent.degree != rho.degree:
        return False
    if not limit_like and tangent.degree <= rho.degree:
        return False
    try:
        return same_node(Ordinary(rho, tangent, nu.sv), nu)
    except PreconditionError:
        return False


@dataclass
class PartitionReport:
    assignments: List[Tuple[Node, Node]] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _dedupe(nodes: Sequence[Node]) -> List[Node]:
    unique: List[Node] = []
    for node in nodes:
        if not any(same_node(node, other) for other in unique):
            unique.append(node)
    return unique


def partition_check(
    nodes: Sequence[Node], primitives: Optional[Sequence[Node]] = None
) -> PartitionReport:
    """
    Atribui cada nó ao único primitivo cujo feixe o contém.

    Sem `primitives`, os candidatos são os donos estruturais de todos os nós
    da amostra. Zero ou dois feixes para um mesmo nó é falha.
    """
    owners = [primitive_owner(node) for node in nodes]
    candidates = _dedupe(list(primitives) if primitives is not None else owners)
    report = PartitionReport()
    for node, owner in zip(nodes, owners):
        hits = [rho for rho in candidates if in_path_bundle(node, rho)]
        if len(hits) != 1:
            report.failures.append(
                f"{node} pertence a {len(hits)} feixes: {[str(h) for h in hits]}"
            )
            continue
        if not same_node(hits[0], owner):
            report.failures.append(
                f"{node}: feixe {hits[0]} difere do dono estrutural {owner}"
            )
            continue
        report.assignments.append((node, hits[0]))
    if report.ok:
        logger.info(f"✅ [CADEIA] partição verificada em {len(nodes)} nós")
    return report
