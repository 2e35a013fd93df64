"""
Estrutura de ordem da árvore valuativa.

Comparação, direções tangentes, maior nó inferior comum (gcln), distância
de Λ-árvore, interseções de caminhos de profundidade constante, igualdade de
aumentos e equivalência de nós.

A ordem μ ≤ ν é decidida estruturalmente a partir da construção de μ:

    ω₋∞ ≤ ν                 sempre
    ω_{a,δ} ≤ ν        ⟺   ν(x − a) ≥ δ
    [μ'; φ, γ] ≤ ν     ⟺   μ' ≤ ν  e  ν(φ) ≥ γ
    [𝒜; φ, γ] ≤ ν      ⟺   ρᵢ ≤ ν para todo membro gerado  e  ν(φ) ≥ γ

Amostragem serve apenas para validar, nunca para decidir.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Optional

from vtree.algebra.polynomials import Poly
from vtree.algebra.value_group import INFINITY, GroupElem, Value, sme_equiv
from vtree.config import ORACLE_DEGREE_BOUND, ORACLE_HEIGHT_BOUND, ORACLE_SAMPLES
from vtree.errors import DomainError, PreconditionError, StabilityHorizonError
from .families import Family, Limit, family_equiv, gamma_A
from .nodes import DepthZero, Node, Ordinary, Root, coerce_value, is_minimal_oracle
from .verdicts import Verdict

logger = logging.getLogger(__name__)


# ========== ORDEM ==========


def leq(mu: Node, nu: Node) -> bool:
    """
    μ ≤ ν, decidido pela construção de μ.

    Para μ = [𝒜; φ, γ] a condição sobre a família só é verificada no prefixo
    gerado (ρ₁..ρ_N, N = horizonte): a resposta é exata para esse prefixo e
    não distingue "falso" de "indecidível além do horizonte". Quem precisa
    do terceiro estado usa `family_equiv` ou `equiv_nodes`.
    """
    if mu is nu or isinstance(mu, Root):
        return True
    if isinstance(mu, DepthZero):
        return nu(mu.key_polynomial) >= mu.delta
    if isinstance(mu, Ordinary):
        return nu(mu.phi) >= mu.gamma and leq(mu.parent, nu)
    if isinstance(mu, Limit):
        return nu(mu.phi) >= mu.gamma and all(
            leq(rho, nu) for rho in mu.family.members()
        )
    raise DomainError(f"Tipo de nó não suportado: {type(mu).__name__}")


def same_node(mu: Node, nu: Node) -> bool:
    """Mesma valuação (μ ≤ ν e ν ≤ μ), independente da construção."""
    return leq(mu, nu) and leq(nu, mu)


def lt(mu: Node, nu: Node) -> bool:
    return leq(mu, nu) and not leq(nu, mu)


# ========== DIREÇÕES TANGENTES ==========


def _descend_tangent(mu: Node, nu: Node) -> Poly:
    if isinstance(nu, DepthZero):
        return nu.key_polynomial
    if isinstance(nu, Ordinary):
        if leq(nu.parent, mu):
            return nu.phi
        return _descend_tangent(mu, nu.parent)
    if isinstance(nu, Limit):
        for rho in nu.family.members():
            if not leq(rho, mu):
                return _descend_tangent(mu, rho)
        return nu.phi
    raise DomainError(f"Sem direção tangente abaixo de {nu}")


def tangent_direction(mu: Node, nu: Node) -> Poly:
    """
    Representante de t(μ, ν): primeiro polinômio da construção de ν cujo
    valor em μ é excedido.

    Raises:
        PreconditionError: Se não vale μ < ν
    """
    if not lt(mu, nu):
        raise PreconditionError(f"t(μ, ν) exige μ < ν: {mu} vs {nu}")
    return _descend_tangent(mu, nu)


# ========== MAIOR NÓ INFERIOR COMUM ==========


def _meet_below(mu: Node, nu: Node) -> Node:
    """Maior nó ≤ μ que também é ≤ ν, sabendo que μ ≰ ν."""
    if isinstance(mu, DepthZero):
        return DepthZero(mu.base, mu.a, nu(mu.key_polynomial))
    if isinstance(mu, Ordinary):
        if not leq(mu.parent, nu):
            return _meet_below(mu.parent, nu)
        value = nu(mu.phi)
        if value > mu.parent(mu.phi):
            return Ordinary(mu.parent, mu.phi, value)
        return mu.parent
    if isinstance(mu, Limit):
        for rho in mu.family.members():
            if not leq(rho, nu):
                return _meet_below(rho, nu)
        value = nu(mu.phi)
        values = mu.family.stable_value(mu.phi).values
        if all(value > v for v in values):
            return Limit(mu.family, mu.phi, value)
        raise StabilityHorizonError(
            f"gcln cai além do prefixo gerado de {mu.family}", tried=mu.family.size
        )
    raise DomainError(f"Sem nós abaixo de {mu} fora da raiz")


def gcln(mu: Node, nu: Node) -> Node:
    """
    Maior nó inferior comum μ ∧ ν.

    Caso comparável: o menor dos dois. Caso contrário, desce pela construção
    de μ até o primeiro nó abaixo de ν e corta o segmento seguinte em ν(φ).

    Raises:
        StabilityHorizonError: Corte cai além do prefixo de uma família
    """
    if leq(mu, nu):
        return mu
    if leq(nu, mu):
        return nu
    meet = _meet_below(mu, nu)
    logger.debug(f"🌳 [ÁRVORE] gcln({mu}, {nu}) = {meet}")
    return meet


def tree_distance(mu: Node, nu: Node) -> GroupElem:
    """
    d(μ, ν) = sv(μ) + sv(ν) − 2·sv(μ ∧ ν).

    Raises:
        DomainError: Se algum nó for folha
    """
    for node in (mu, nu):
        if node.is_leaf:
            raise DomainError(f"Distância indefinida para a folha {node}")
    meet = gcln(mu, nu)
    return mu.sv + nu.sv - meet.sv.scale(2)


# ========== AUMENTOS E CAMINHOS ==========


def augmentations_equal(mu: Node, phi: Poly, gamma, phi_star: Poly, gamma_star) -> bool:
    """[μ; φ, γ] = [μ; φ*, γ*] ⟺ γ = γ* e μ(φ* − φ) ≥ γ."""
    gamma = coerce_value(gamma, mu.rank)
    gamma_star = coerce_value(gamma_star, mu.rank)
    return gamma == gamma_star and mu(phi_star - phi) >= gamma


@dataclass(frozen=True)
class PathInterval:
    """
    Segmento {[base; φ, γ] : low < γ ≤ high} de um caminho de profundidade
    constante. Com `family`, os nós são aumentos limite da família e o
    extremo inferior é inclusivo.
    """

    base: Node
    phi: Poly
    low: Value
    high: Value
    low_inclusive: bool = False
    family: Optional[Family] = None

    def contains(self, gamma) -> bool:
        gamma = coerce_value(gamma, self.base.rank)
        above = gamma >= self.low if self.low_inclusive else gamma > self.low
        return above and gamma <= self.high

    def node_at(self, gamma) -> Node:
        if not self.contains(gamma):
            raise PreconditionError(f"γ = {gamma} fora do intervalo {self}")
        if self.family is not None:
            return Limit(self.family, self.phi, gamma)
        return Ordinary(self.base, self.phi, gamma)

    def endpoint(self) -> Node:
        return self.node_at(self.high)

    def __str__(self):
        bracket = "[" if self.low_inclusive else "("
        return f"{bracket}{self.low}, {self.high}] ao longo de {self.phi}"


def path_intersection(mu: Node, phi: Poly, phi_star: Poly) -> Optional[PathInterval]:
    """
    𝒫_μ(φ) ∩ 𝒫_μ(φ*): vazio (None) quando φ ≁_μ φ*, senão (μ, μ(φ, γ₀)] com
    γ₀ = μ(φ − φ*).
    """
    if phi.degree != phi_star.degree:
        return None
    low = mu(phi)
    gamma0 = mu(phi - phi_star)
    if not gamma0 > low:
        return None
    return PathInterval(mu, phi, low=low, high=gamma0)


def limit_path_intersection(
    family: Family, phi: Poly, phi_star: Poly
) -> PathInterval:
    """
    Interseção dos caminhos limite de φ e φ*: [μ_𝒜, [𝒜; φ, ρ_𝒜(φ − φ*)]].

    Raises:
        PreconditionError: φ e φ* não são polinômios-chave limite de mesmo grau
    """
    if phi.degree != phi_star.degree:
        raise PreconditionError("Polinômios-chave limite devem ter o mesmo grau")
    for candidate in (phi, phi_star):
        if family.stable_value(candidate).is_stable:
            raise PreconditionError(f"{candidate} é estável em {family}")
    low = gamma_A(family, phi)
    difference = phi - phi_star
    high = INFINITY if difference.is_zero else family.require_stable(difference)
    return PathInterval(
        Limit(family, phi, low), phi, low=low, high=high, low_inclusive=True, family=family
    )


# ========== EQUIVALÊNCIA DE NÓS ==========


@dataclass
class EquivalenceReport:
    verdict: Verdict
    reasons: List[str] = field(default_factory=list)
    witness: Optional[Poly] = None


def _key_difference_value(node: Node, difference: Poly) -> Optional[Value]:
    """Valor de χ − φ abaixo do nó (pai, valuação de base ou família)."""
    if isinstance(node, Root):
        return None
    if isinstance(node, DepthZero):
        return node.base(difference.coefficient(0))
    if isinstance(node, Ordinary):
        return node.parent(difference)
    if isinstance(node, Limit):
        if difference.is_zero:
            return INFINITY
        return node.family.require_stable(difference)
    raise DomainError(f"Tipo de nó não suportado: {type(node).__name__}")


def _is_minimal_degree_key(node: Node, chi: Poly) -> bool:
    """χ mônico de grau deg(node) é chave de grau mínimo ⟺ χ ~ φ do nó."""
    if not chi.is_monic or chi.degree != node.degree:
        return False
    value = _key_difference_value(node, chi - node.key_polynomial)
    return value is None or value >= node.sv


def _low_degree_sample(
    degree: int, prime: int, height: int, samples: int, seed: int
) -> Iterator[Poly]:
    rng = random.Random(seed)
    scalars = [
        u * Fraction(prime) ** e for e in range(-height, height + 1) for u in (1, -1, 2, 3)
    ]
    for k in range(degree):
        yield Poly.monomial(1, k)
    for _ in range(samples):
        coeffs = [rng.choice(scalars + [0]) for _ in range(rng.randint(1, degree))]
        f = Poly.from_coeffs(coeffs)
        if not f.is_zero:
            yield f


def equiv_nodes(
    mu: Node,
    nu: Node,
    deg_bound: int = ORACLE_DEGREE_BOUND,
    height_bound: int = ORACLE_HEIGHT_BOUND,
    samples: int = ORACLE_SAMPLES,
    seed: int = 0,
) -> EquivalenceReport:
    """
    Equivalência μ ∼ ν pelas três condições:

    (a) chave de grau mínimo comum, (b) mesmos valores em grau < deg(μ),
    (c) valores singulares sme-equivalentes.

    Returns:
        EquivalenceReport: TRUE/FALSE com motivos, ou UNKNOWN quando apenas o
        oráculo amostral de (b) está disponível e não encontrou divergência

    Raises:
        DomainError: Para folhas
    """
    for node in (mu, nu):
        if node.is_leaf:
            raise DomainError(f"Equivalência definida apenas para nós internos: {node}")
    if same_node(mu, nu):
        return EquivalenceReport(Verdict.TRUE, ["mesmo nó"])
    if mu.degree != nu.degree:
        return EquivalenceReport(
            Verdict.FALSE, [f"graus diferentes: {mu.degree} vs {nu.degree}"]
        )

    # (c)
    if not sme_equiv(mu.sv, nu.sv):
        return EquivalenceReport(
            Verdict.FALSE, [f"(c) sv não sme-equivalentes: {mu.sv} vs {nu.sv}"]
        )
    reasons = [f"(c) {mu.sv} ∼sme {nu.sv}"]

    # (a)
    for node, other in ((mu, nu), (nu, mu)):
        chi = other.key_polynomial
        if not _is_minimal_degree_key(node, chi):
            return EquivalenceReport(
                Verdict.FALSE,
                reasons + [f"(a) {chi} não é chave de grau mínimo de {node}"],
                witness=chi,
            )
        oracle = is_minimal_oracle(
            node, chi, max(deg_bound, node.degree), height_bound, samples, seed
        )
        if oracle.refuted:
            return EquivalenceReport(
                Verdict.FALSE,
                reasons + [f"(a) minimalidade de {chi} refutada em {node}"],
                witness=oracle.witness,
            )
    reasons.append(f"(a) chave comum {mu.key_polynomial} ~ {nu.key_polynomial}")

    # (b)
    if mu.degree == 1:
        return EquivalenceReport(Verdict.TRUE, reasons + ["(b) constantes avaliadas por v"])
    if isinstance(mu, Ordinary) and isinstance(nu, Ordinary) and same_node(
        mu.parent, nu.parent
    ):
        return EquivalenceReport(Verdict.TRUE, reasons + ["(b) pais idênticos"])
    if isinstance(mu, Limit) and isinstance(nu, Limit):
        if family_equiv(mu.family, nu.family) is Verdict.TRUE:
            return EquivalenceReport(Verdict.TRUE, reasons + ["(b) famílias equivalentes"])

    for f in _low_degree_sample(mu.degree, mu.ground.prime, height_bound, samples, seed):
        if mu(f) != nu(f):
            return EquivalenceReport(
                Verdict.FALSE,
                reasons + [f"(b) valores divergem em {f}: {mu(f)} vs {nu(f)}"],
                witness=f,
            )
    logger.info(f"⚠️ [ÁRVORE] equivalência de {mu} e {nu} não decidida estruturalmente")
    return EquivalenceReport(
        Verdict.UNKNOWN, reasons + ["(b) sem divergência na amostra limitada"]
    )
