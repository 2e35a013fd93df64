"""
Exemplos embutidos.

- Cadeia de profundidade 3 sobre v_p com polinômios

      φ₀ = x,  φ₁ = x⁵ + p³,  φ₂ = φ₁³ + p¹⁰,  φ₃ = φ₂² + p¹¹x⁴φ₁²

  e nós μ₀ = ω_{0, 3/5}, μ₁ = [μ₀; φ₁, 10/3], μ₂ = [μ₁; φ₂, 301/30],
  μ₃ = [μ₂; φ₃, ∞]. A tabela de valores é a mesma para todo p ∉ {2, 3, 5}.
- Família de Hensel de √2 em ℚ_p (aᵢ ≡ √2 mod pⁱ, ρᵢ = ω_{aᵢ, i}).
- Família inessencial ω_{0, 1 − 1/2ⁱ}.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from sympy.ntheory import sqrt_mod

from vtree.algebra.polynomials import GroundValuation, Poly
from vtree.algebra.value_group import DEFAULT_RANK, INFINITY, GroupElem, Index, Value
from vtree.errors import ConfigurationError, PreconditionError
from .chains import Chain, ChainStep, StepKind
from .families import (
    AugmentationRuleFamily,
    GeometricSchedule,
    PseudoConvergentFamily,
)
from .newton import ramification_product
from .nodes import DepthZero

logger = logging.getLogger(__name__)

FORBIDDEN_PRIMES = frozenset({2, 3, 5})


def _check_prime(prime: int) -> None:
    if prime in FORBIDDEN_PRIMES:
        raise ConfigurationError(
            f"p = {prime} divide as constantes do exemplo; use p ∉ {sorted(FORBIDDEN_PRIMES)}"
        )


def vaquie_polynomials(prime: int) -> Dict[str, Poly]:
    """φ₀..φ₃ indexados pelos nomes aceitos no parser ("phi0".."phi3")."""
    x = Poly.x()
    p = prime
    phi1 = x**5 + p**3
    phi2 = phi1**3 + p**10
    phi3 = phi2**2 + Poly.monomial(p**11, 4) * phi1**2
    return {"phi0": x, "phi1": phi1, "phi2": phi2, "phi3": phi3}


def vaquie_chain(prime: int, rank: int = DEFAULT_RANK) -> Chain:
    """
    Cadeia μ₀ → μ₁ → μ₂ → μ₃ do exemplo.

    Raises:
        ConfigurationError: p ∈ {2, 3, 5}
    """
    _check_prime(prime)
    base = GroundValuation(prime, rank)
    phis = vaquie_polynomials(prime)
    initial = DepthZero(base, 0, base.rational(Fraction(3, 5)))
    steps = [
        ChainStep(StepKind.ORDINARY, phis["phi1"], base.rational(Fraction(10, 3))),
        ChainStep(StepKind.ORDINARY, phis["phi2"], base.rational(Fraction(301, 30))),
        ChainStep(StepKind.ORDINARY, phis["phi3"], INFINITY),
    ]
    return Chain(initial, steps)


@dataclass(frozen=True)
class TableRow:
    label: str
    degree: Optional[int]
    sv: Optional[Value]
    e_rel: Optional[Index]
    values: Tuple[Value, ...]


@dataclass(frozen=True)
class VaquieExample:
    prime: int
    polynomials: Dict[str, Poly]
    chain: Chain
    rows: List[TableRow]
    scaled_rows: List[TableRow]
    ramification: int


def vaquie_example(prime: int, rank: int = DEFAULT_RANK) -> VaquieExample:
    """
    Tabela completa: grau, sv, e_rel e valores em φ₀, φ₁, φ₂ de cada μᵢ, mais
    as linhas escaladas 5μ₀, 15μ₁, 30μ₂ e ν = 30μ₃.
    """
    chain = vaquie_chain(prime, rank)
    phis = vaquie_polynomials(prime)
    probes = [phis["phi0"], phis["phi1"], phis["phi2"]]
    nodes = chain.nodes()

    rows = []
    for index, node in enumerate(nodes):
        rows.append(
            TableRow(
                label=f"μ{index}",
                degree=node.degree,
                sv=node.sv,
                e_rel=None if node.is_leaf else node.e_rel(),
                values=tuple(node(phi) for phi in probes),
            )
        )

    scaled_rows = []
    factor = 1
    for index, node in enumerate(nodes):
        if not node.is_leaf:
            factor *= node.e_rel()
        label = "ν" if node.is_leaf else f"ν{index + 1}"
        scaled_rows.append(
            TableRow(
                label=f"{label} = {factor}μ{index}",
                degree=None,
                sv=None,
                e_rel=None,
                values=tuple(node(phi).scale(factor) for phi in probes),
            )
        )

    example = VaquieExample(
        prime=prime,
        polynomials=phis,
        chain=chain,
        rows=rows,
        scaled_rows=scaled_rows,
        ramification=ramification_product(chain),
    )
    logger.info(f"✅ [CATÁLOGO] exemplo de profundidade 3 montado para p = {prime}")
    return example


def sqrt_family(
    prime: int = 7,
    rank: int = DEFAULT_RANK,
    horizon: Optional[int] = None,
    root: Optional[int] = None,
) -> PseudoConvergentFamily:
    """
    Família de Hensel de √2 em ℚ_p: ρᵢ = ω_{aᵢ, i}.

    Raises:
        PreconditionError: 2 não é quadrado módulo p
    """
    base = GroundValuation(prime, rank)
    if root is None:
        root = sqrt_mod(2, prime)
        if root is None:
            raise PreconditionError(f"2 não é quadrado módulo {prime}")
    x = Poly.x()
    return PseudoConvergentFamily.from_hensel(
        base, x**2 - 2, int(root), radii="index", horizon=horizon, name="sqrt2"
    )


def dyadic_family(
    prime: int = 7, rank: int = DEFAULT_RANK, horizon: Optional[int] = None
) -> AugmentationRuleFamily:
    """Família inessencial ρᵢ = [ω_{0,0}; x, 1 − 1/2ⁱ]."""
    base = GroundValuation(prime, rank)
    return AugmentationRuleFamily(
        DepthZero(base, 0, base.zero()),
        Poly.x(),
        GeometricSchedule(Fraction(1), Fraction(1), Fraction(1, 2)),
        horizon=horizon,
        name="dyadic",
    )


def sqrt_chain(prime: int = 7, rank: int = DEFAULT_RANK, horizon: Optional[int] = None) -> Chain:
    """ω_{0,0} → [𝒜; x² − 2, ∞⁻] com 𝒜 a família de √2."""
    base = GroundValuation(prime, rank)
    family = sqrt_family(prime, rank, horizon)
    x = Poly.x()
    return Chain(
        DepthZero(base, 0, base.zero()),
        [ChainStep(StepKind.LIMIT, x**2 - 2, GroupElem.infinity_minus(rank), family)],
    )


CATALOG = {
    "vaquie": vaquie_chain,
    "sqrt2": sqrt_chain,
}
