"""
Nós da árvore valuativa e sua avaliação em K[x].

Cada nó guarda a própria construção e avalia estruturalmente:
expande f no polinômio-chave do nó e toma o mínimo lexicográfico de
μ(aₛ) + s·γ, avaliando os coeficientes no nó pai (ou na valuação de base).

    Root            ω₋∞: f ↦ (−deg f | v(lc f) | 0)
    DepthZero       ω_{a,δ}
    Ordinary        [μ; φ, γ]
    Limit           [𝒜; φ, γ]   (definido em families.py)

γ = ∞ produz uma folha finita com suporte φK[x].
"""

import logging
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, List, Optional, Sequence

from vtree.algebra.polynomials import GroundValuation, Poly, phi_expand
from vtree.algebra.value_group import (
    INFINITY,
    MAIN,
    GroupElem,
    Index,
    Subgroup,
    Value,
    extend_subgroup,
    parse_value,
)
from vtree.errors import ConfigurationError, DomainError, PreconditionError

logger = logging.getLogger(__name__)


def expansion_min(
    coefficients: Sequence[Poly], coefficient_value: Callable[[Poly], Value], gamma: Value
) -> Value:
    """min{ν₀(aₛ) + s·γ} sobre os coeficientes não nulos de uma expansão."""
    best: Value = INFINITY
    for s, a in enumerate(coefficients):
        if a.is_zero:
            continue
        term = coefficient_value(a)
        if s:
            term = term + gamma.scale(s)
        if term < best:
            best = term
    return best


def coerce_value(value, rank: int) -> Value:
    """Aceita texto ou GroupElem e confere o posto."""
    value = parse_value(value, rank) if not hasattr(value, "is_infinity") else value
    if value is not INFINITY and value.rank != rank:
        raise ConfigurationError(f"Valor {value} tem posto {value.rank}, esperado {rank}")
    return value


class Node(ABC):
    """Valuação em K[x] construída por uma cadeia de aumentos."""

    kind: str = "node"

    @property
    @abstractmethod
    def ground(self) -> GroundValuation: ...

    @property
    def rank(self) -> int:
        return self.ground.rank

    @abstractmethod
    def __call__(self, f: Poly) -> Value:
        """Avalia o nó em f."""

    @property
    @abstractmethod
    def degree(self) -> int: ...

    @property
    @abstractmethod
    def sv(self) -> Value:
        """Valor singular μ(φ) para φ chave de grau mínimo."""

    @property
    @abstractmethod
    def key_polynomial(self) -> Poly:
        """Polinômio-chave de grau mínimo que define o nó."""

    @property
    def is_leaf(self) -> bool:
        return self.sv is INFINITY

    @abstractmethod
    def value_group_zero(self) -> Subgroup:
        """Γ⁰: valores dos polinômios de grau menor que deg(μ)."""

    @abstractmethod
    def construction_polynomials(self) -> List[Poly]:
        """Polinômios que definem a construção, da base até o nó."""

    @abstractmethod
    def deepest_used_slot(self) -> int:
        """Slot mais profundo usado pelos dados que definem o nó."""

    def value_group(self) -> Subgroup:
        return self._extension()[0]

    def e_rel(self) -> Index:
        """Índice de ramificação relativo (Γ_μ : Γ_μ⁰)."""
        return self._extension()[1]

    def _extension(self):
        if self.is_leaf:
            raise DomainError(f"{self.describe()} é folha: grupo de valores indefinido")
        return extend_subgroup(self.value_group_zero(), self.sv)

    @property
    def is_commensurable(self) -> bool:
        return not self.is_leaf and self.value_group().is_commensurable

    def augment(self, phi: Poly, gamma) -> "Ordinary":
        return Ordinary(self, phi, coerce_value(gamma, self.rank))

    def describe(self) -> str:
        return str(self)


@dataclass(frozen=True, eq=False)
class Root(Node):
    """Nó raiz ω₋∞."""

    base: GroundValuation
    kind = "root"

    @property
    def ground(self) -> GroundValuation:
        return self.base

    def __call__(self, f: Poly) -> Value:
        if f.is_zero:
            return INFINITY
        lead = self.base(f.leading)
        return GroupElem((-f.degree, lead.main) + (0,) * (self.rank - 2))

    @property
    def degree(self) -> int:
        return 1

    @property
    def sv(self) -> Value:
        return GroupElem.minus_infinity(self.rank)

    @property
    def key_polynomial(self) -> Poly:
        return Poly.x()

    def value_group_zero(self) -> Subgroup:
        return Subgroup.integers()

    def construction_polynomials(self) -> List[Poly]:
        return [Poly.x()]

    def deepest_used_slot(self) -> int:
        return MAIN

    def __str__(self):
        return "ω₋∞"


@dataclass(frozen=True, eq=False)
class DepthZero(Node):
    """Nó de profundidade zero ω_{a,δ}: min{v(cₛ) + sδ} na expansão em x − a."""

    base: GroundValuation
    a: Fraction
    delta: Value
    kind = "depth0"

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "delta", coerce_value(self.delta, self.base.rank))

    @property
    def ground(self) -> GroundValuation:
        return self.base

    def __call__(self, f: Poly) -> Value:
        if f.is_zero:
            return INFINITY
        return expansion_min(
            phi_expand(f, self.key_polynomial),
            lambda c: self.base(c.coefficient(0)),
            self.delta,
        )

    @property
    def degree(self) -> int:
        return 1

    @property
    def sv(self) -> Value:
        return self.delta

    @property
    def key_polynomial(self) -> Poly:
        return Poly.linear(self.a)

    def value_group_zero(self) -> Subgroup:
        return Subgroup.integers()

    def construction_polynomials(self) -> List[Poly]:
        return [self.key_polynomial]

    def deepest_used_slot(self) -> int:
        if self.delta is INFINITY:
            return MAIN
        return max(MAIN, self.delta.deepest_slot())

    def __str__(self):
        a = self.a
        a_text = str(a.numerator) if a.denominator == 1 else str(a)
        return f"ω({a_text}, {self.delta})"


@dataclass(frozen=True, eq=False)
class Ordinary(Node):
    """Aumento ordinário [μ; φ, γ]."""

    parent: Node
    phi: Poly
    gamma: Value
    kind = "ordinary"

    def __post_init__(self):
        object.__setattr__(self, "gamma", coerce_value(self.gamma, self.parent.rank))
        if not self.phi.is_monic or self.phi.degree < 1:
            raise PreconditionError(f"φ deve ser mônico de grau ≥ 1: {self.phi}")
        if self.parent.is_leaf:
            raise PreconditionError("Folhas finitas não admitem aumentos")
        if self.phi.degree < self.parent.degree:
            raise PreconditionError(
                f"deg φ = {self.phi.degree} menor que deg μ = {self.parent.degree}"
            )
        before = self.parent(self.phi)
        if not self.gamma > before:
            raise PreconditionError(
                f"γ = {self.gamma} deve exceder estritamente μ(φ) = {before}"
            )

    @property
    def ground(self) -> GroundValuation:
        return self.parent.ground

    def __call__(self, f: Poly) -> Value:
        if f.is_zero:
            return INFINITY
        return expansion_min(phi_expand(f, self.phi), self.parent, self.gamma)

    @property
    def degree(self) -> int:
        return self.phi.degree

    @property
    def sv(self) -> Value:
        return self.gamma

    @property
    def key_polynomial(self) -> Poly:
        return self.phi

    @property
    def is_strong(self) -> bool:
        return self.phi.degree > self.parent.degree

    def value_group_zero(self) -> Subgroup:
        if self.is_strong:
            return self.parent.value_group()
        return self.parent.value_group_zero()

    def construction_polynomials(self) -> List[Poly]:
        return self.parent.construction_polynomials() + [self.phi]

    def deepest_used_slot(self) -> int:
        own = MAIN if self.gamma is INFINITY else self.gamma.deepest_slot()
        return max(own, self.parent.deepest_used_slot())

    def __str__(self):
        return f"[{self.parent}; {self.phi}, {self.gamma}]"


def ancestors(node: Node) -> Iterator[Node]:
    """Nós ordinários anteriores na construção, do pai até a base."""
    current = node
    while isinstance(current, Ordinary):
        current = current.parent
        yield current


# ========== SONDA DE DIVISIBILIDADE ==========


def infinitesimal_for(node: Node) -> GroupElem:
    """
    Infinitésimo positivo no primeiro slot livre abaixo dos dados do nó.

    Raises:
        ConfigurationError: Quando o posto não tem slot livre
    """
    slot = node.deepest_used_slot() + 1
    if slot >= node.rank:
        raise ConfigurationError(
            f"Posto {node.rank} esgotado: a sonda precisa do slot {slot}; "
            f"aumente VTREE_RANK (ou --rank) para {slot + 1}"
        )
    return GroupElem.unit(slot, node.rank)


def divides_probe(mu: Node, phi: Poly, f: Poly) -> bool:
    """
    Testa φ |_μ f comparando μ(f) com ν(f), ν = [μ; φ, μ(φ) + ε].

    Args:
        mu: Nó de partida
        phi: Polinômio-chave de μ
        f: Polinômio testado

    Returns:
        bool: True quando o valor de f cresce sob a sonda
    """
    probe = Ordinary(mu, phi, mu(phi) + infinitesimal_for(mu))
    return mu(f) < probe(f)


# ========== ORÁCULO DE MINIMALIDADE ==========


@dataclass(frozen=True)
class MinimalityVerdict:
    confirmed: bool
    checked: int
    witness: Optional[Poly] = None

    @property
    def refuted(self) -> bool:
        return not self.confirmed

    def __str__(self):
        if self.confirmed:
            return f"confirmed_up_to_bound ({self.checked} polinômios)"
        return f"refuted({self.witness})"


def _oracle_candidates(
    mu: Node, g: Poly, deg_bound: int, height_bound: int, samples: int, seed: int
) -> Iterator[Poly]:
    p = mu.ground.prime
    scalars = [u * p**e for e in range(height_bound + 1) for u in (1, -1, 2)]
    m = g.degree
    low = [Poly.monomial(c, k) for c in scalars for k in range(min(m, deg_bound + 1))]

    for k in range(deg_bound + 1):
        for c in scalars:
            yield Poly.monomial(c, k)
    for chi in mu.construction_polynomials():
        if chi.degree <= deg_bound:
            yield chi
            for a in low:
                yield chi + a
    for s in range(1, deg_bound // m + 1):
        power = g**s
        yield power
        for a in low:
            yield power + a

    rng = random.Random(seed)
    max_power = deg_bound // m
    for _ in range(samples):
        f = Poly()
        for _ in range(rng.randint(1, 3)):
            s = rng.randint(0, max_power)
            k = rng.randint(0, min(m - 1, deg_bound - s * m))
            f = f + Poly.monomial(rng.choice(scalars), k) * g**s
        if not f.is_zero:
            yield f


def is_minimal_oracle(
    mu: Node,
    g: Poly,
    deg_bound: int,
    height_bound: int,
    samples: int = 200,
    seed: int = 0,
) -> MinimalityVerdict:
    """
    Verifica μ(f) = min μ(aₛgˢ) numa amostra limitada de polinômios f.

    A amostra cobre monômios cpᵉxᵏ, os polinômios da construção de μ com
    perturbações, potências de g com termos de grau baixo e somas aleatórias
    (semente fixa) com deg f ≤ deg_bound e altura p-ádica ≤ height_bound.
    """
    if not g.is_monic or g.degree < 1:
        raise PreconditionError(f"g deve ser mônico de grau ≥ 1: {g}")
    g_value = mu(g)
    checked = 0
    for f in _oracle_candidates(mu, g, deg_bound, height_bound, samples, seed):
        checked += 1
        expansion = phi_expand(f, g)
        by_expansion = expansion_min(expansion, mu, g_value)
        if mu(f) != by_expansion:
            logger.info(f"⚠️ [NÓ] Minimalidade refutada: {g} falha em f = {f}")
            return MinimalityVerdict(confirmed=False, checked=checked, witness=f)
    return MinimalityVerdict(confirmed=True, checked=checked)
