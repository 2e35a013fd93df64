"""
Famílias contínuas de valuações e aumentos limite.

Uma família 𝒜 = (ρᵢ) é potencialmente infinita: só um prefixo de até
`horizon` membros é gerado, sob demanda e memorizado. Toda resposta sobre a
família é tri-estado (estável certificado, instável até o horizonte, ou
desconhecido).

Formas de geração:
    ExplicitFamily            lista finita de nós
    PseudoConvergentFamily    ρᵢ = ω_{aᵢ, δᵢ} para uma sequência (aᵢ) em K
    AugmentationRuleFamily    ρᵢ = [μ; χ, βᵢ] sobre uma base fixa
    SubFamily                 ρ_{offset + i·step} de outra família

O nó `Limit` ([𝒜; φ, γ]) mora aqui porque sua avaliação depende dos valores
estáveis da família.
"""

import logging
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from vtree.algebra.polynomials import GroundValuation, Poly, hensel_lift, phi_expand
from vtree.algebra.value_group import (
    INFINITY,
    MAIN,
    GroupElem,
    Rational,
    Subgroup,
    Value,
    as_fraction,
    sme_canonical,
)
from vtree.config import FAMILY_HORIZON
from vtree.errors import (
    PreconditionError,
    StabilityHorizonError,
    SupUnderdeterminedError,
)
from .nodes import DepthZero, Node, Ordinary, coerce_value, expansion_min
from .verdicts import Verdict

logger = logging.getLogger(__name__)


# ========== RESULTADOS ==========


@dataclass(frozen=True)
class StableValue:
    """ρ_𝒜(f) certificado: ρᵢ(f) constante a partir de `since`."""

    value: Value
    since: int
    certified_at: int
    is_stable = True


@dataclass(frozen=True)
class UnstableUpTo:
    """Valores estritamente crescentes em todo o prefixo gerado."""

    horizon: int
    values: Tuple[Value, ...]
    is_stable = False


StabilityResult = Union[StableValue, UnstableUpTo]


@dataclass(frozen=True)
class UnstableSearch:
    """Polinômio-chave limite encontrado (instável até o horizonte)."""

    m_inf: int
    phi: Poly
    classification: str  # "essential" | "inessential"
    horizon: int


@dataclass(frozen=True)
class NoneUpTo:
    """Nenhum candidato instável até os limites informados."""

    deg_bound: int
    horizon: int
    tested: int


# ========== FAMÍLIAS ==========


class Family(ABC):
    """
    Família totalmente ordenada ρ₁ < ρ₂ < ⋯ de grau constante.

    Implementa:
    - Geração preguiçosa e memorizada dos membros (protegida por lock)
    - Validação de cada novo membro contra o anterior
    - Valores estáveis com certificado e cache por polinômio
    """

    kind: str = "family"

    def __init__(
        self,
        horizon: Optional[int] = None,
        declared_sup=None,
        name: Optional[str] = None,
    ):
        self.horizon = FAMILY_HORIZON if horizon is None else int(horizon)
        if self.horizon < 1:
            raise PreconditionError(f"Horizonte deve ser positivo: {self.horizon}")
        self.declared_sup = declared_sup
        self.name = name or self.kind
        self._members: List[Node] = []
        self._stable_cache: Dict[Poly, StabilityResult] = {}
        self._lock = threading.RLock()

    # ---------- geração ----------

    @abstractmethod
    def _generate(self, index: int) -> Node:
        """Produz ρ_index (1-based) sem validação."""

    @property
    def capacity(self) -> Optional[int]:
        """Número máximo de membros que a regra produz (None = ilimitado)."""
        return None

    @property
    def size(self) -> int:
        """Comprimento do prefixo gerável: min(horizonte, capacidade)."""
        if self.capacity is None:
            return self.horizon
        return min(self.horizon, self.capacity)

    def member(self, index: int) -> Node:
        """
        ρ_index, gerando e validando os membros anteriores se necessário.

        Raises:
            PreconditionError: Índice fora do prefixo ou família mal formada
        """
        if not 1 <= index <= self.size:
            raise PreconditionError(
                f"Membro {index} fora do prefixo gerável (1..{self.size}) de {self.name}"
            )
        with self._lock:
            while len(self._members) < index:
                candidate = self._generate(len(self._members) + 1)
                if self._members:
                    self._check_successor(self._members[-1], candidate)
                self._members.append(candidate)
            return self._members[index - 1]

    def _check_successor(self, previous: Node, current: Node) -> None:
        from .tree import leq

        position = len(self._members) + 1
        if current.degree != previous.degree:
            raise PreconditionError(
                f"{self.name}: grau do membro {position} ({current.degree}) "
                f"difere do grau estável {previous.degree}"
            )
        if not leq(previous, current):
            raise PreconditionError(
                f"{self.name}: membro {position} não está acima do anterior"
            )
        if leq(current, previous):
            raise PreconditionError(
                f"{self.name}: membros {position - 1} e {position} coincidem "
                "(família constante tem elemento máximo)"
            )

    def members(self) -> List[Node]:
        return [self.member(i) for i in range(1, self.size + 1)]

    @property
    def stable_degree(self) -> int:
        """m(𝒜): grau comum dos membros."""
        return self.member(1).degree

    @property
    def ground(self) -> GroundValuation:
        return self.member(1).ground

    @property
    def rank(self) -> int:
        return self.ground.rank

    def values(self, f: Poly) -> List[Value]:
        return [rho(f) for rho in self.members()]

    def key_candidates(self) -> List[Poly]:
        """Candidatos estruturais a polinômio-chave limite."""
        return []

    # ---------- estabilidade ----------

    def stable_value(self, f: Poly) -> StabilityResult:
        """
        Valor estável ρ_𝒜(f) ou UnstableUpTo(N).

        Dois valores consecutivos iguais certificam a estabilidade para todos
        os membros seguintes. deg f < m(𝒜) é estável já no primeiro membro.

        Raises:
            PreconditionError: f nulo ou valores decrescentes no prefixo
        """
        if f.is_zero:
            raise PreconditionError("stable_value exige f ≠ 0")
        with self._lock:
            cached = self._stable_cache.get(f)
        if cached is not None:
            return cached

        result = self._compute_stable_value(f)
        with self._lock:
            self._stable_cache[f] = result
        return result

    def _compute_stable_value(self, f: Poly) -> StabilityResult:
        if f.degree < self.stable_degree:
            return StableValue(self.member(1)(f), since=1, certified_at=1)

        values: List[Value] = []
        for index in range(1, self.size + 1):
            value = self.member(index)(f)
            if values:
                if value == values[-1]:
                    return StableValue(value, since=index - 1, certified_at=index)
                if value < values[-1]:
                    raise PreconditionError(
                        f"{self.name}: valores de {f} decrescem no membro {index}"
                    )
            values.append(value)
        logger.debug(f"⚠️ [FAMÍLIA] {f} instável até o horizonte {self.size}")
        return UnstableUpTo(horizon=self.size, values=tuple(values))

    def require_stable(self, f: Poly) -> Value:
        """
        ρ_𝒜(f), exigindo certificado.

        Raises:
            StabilityHorizonError: Se f não estabiliza dentro do horizonte
        """
        result = self.stable_value(f)
        if not result.is_stable:
            raise StabilityHorizonError(
                f"Valor estável de {f} não certificado em {self.name}", tried=result.horizon
            )
        return result.value

    def __str__(self):
        return self.name


class ExplicitFamily(Family):
    """Prefixo finito fornecido explicitamente."""

    kind = "explicit"

    def __init__(self, members: Sequence[Node], horizon=None, declared_sup=None, name=None):
        if not members:
            raise PreconditionError("Família explícita vazia")
        self._given = list(members)
        super().__init__(
            horizon=len(self._given) if horizon is None else horizon,
            declared_sup=declared_sup,
            name=name,
        )
        # valida tudo já na construção
        self.members()

    def _generate(self, index: int) -> Node:
        return self._given[index - 1]

    @property
    def capacity(self) -> int:
        return len(self._given)


class PseudoConvergentFamily(Family):
    """
    ρᵢ = ω_{aᵢ, δᵢ} para uma sequência pseudo-convergente (aᵢ) em K.

    Raios:
        "gap"    δᵢ = v(aᵢ₊₁ − aᵢ)
        "index"  δᵢ = i
        lista    δᵢ explícitos
    """

    kind = "pseudo_convergent"

    def __init__(
        self,
        base: GroundValuation,
        sequence: Sequence[Rational],
        radii: Union[str, Sequence] = "gap",
        horizon=None,
        declared_sup=None,
        name=None,
        minimal_polynomial: Optional[Poly] = None,
    ):
        self.base = base
        self.sequence = [as_fraction(a) for a in sequence]
        if isinstance(radii, str) and radii not in ("gap", "index"):
            raise PreconditionError(f"Esquema de raios desconhecido: {radii}")
        self.radii = radii if isinstance(radii, str) else [
            coerce_value(r, base.rank) for r in radii
        ]
        self.minimal_polynomial = minimal_polynomial
        super().__init__(horizon=horizon, declared_sup=declared_sup, name=name)

    @classmethod
    def from_hensel(
        cls,
        base: GroundValuation,
        poly: Poly,
        root: int,
        radii: Union[str, Sequence] = "index",
        horizon=None,
        declared_sup=None,
        name=None,
    ) -> "PseudoConvergentFamily":
        """Família das aproximações de Hensel de uma raiz simples de `poly`."""
        horizon = FAMILY_HORIZON if horizon is None else int(horizon)
        sequence = hensel_lift(poly, root, base.prime, horizon + 1)
        monic = poly * (1 / poly.leading)
        return cls(
            base,
            sequence,
            radii=radii,
            horizon=horizon,
            declared_sup=declared_sup,
            name=name or f"hensel({poly}, {root})",
            minimal_polynomial=monic,
        )

    @property
    def capacity(self) -> int:
        if self.radii == "gap":
            return len(self.sequence) - 1
        if self.radii == "index":
            return len(self.sequence)
        return min(len(self.sequence), len(self.radii))

    def radius(self, index: int) -> Value:
        if self.radii == "gap":
            return self.base(self.sequence[index] - self.sequence[index - 1])
        if self.radii == "index":
            return self.base.rational(index)
        return self.radii[index - 1]

    def _generate(self, index: int) -> Node:
        return DepthZero(self.base, self.sequence[index - 1], self.radius(index))

    def key_candidates(self) -> List[Poly]:
        return [self.minimal_polynomial] if self.minimal_polynomial is not None else []


# ---------- cronogramas de valores ----------


@dataclass(frozen=True)
class LinearSchedule:
    """βᵢ = start + i·step."""

    start: Fraction
    step: Fraction
    kind = "linear"
    capacity = None

    def __call__(self, index: int) -> Fraction:
        return as_fraction(self.start) + index * as_fraction(self.step)


@dataclass(frozen=True)
class GeometricSchedule:
    """βᵢ = limit − scale·ratioⁱ, com 0 < ratio < 1."""

    limit: Fraction
    scale: Fraction
    ratio: Fraction
    kind = "geometric"
    capacity = None

    def __post_init__(self):
        if not 0 < as_fraction(self.ratio) < 1:
            raise PreconditionError(f"Razão geométrica fora de (0, 1): {self.ratio}")
        if as_fraction(self.scale) <= 0:
            raise PreconditionError(f"Escala deve ser positiva: {self.scale}")

    def __call__(self, index: int) -> Fraction:
        return as_fraction(self.limit) - as_fraction(self.scale) * as_fraction(
            self.ratio
        ) ** index


@dataclass(frozen=True)
class ExplicitSchedule:
    values: Tuple
    kind = "explicit"

    @property
    def capacity(self) -> int:
        return len(self.values)

    def __call__(self, index: int):
        return self.values[index - 1]


Schedule = Union[LinearSchedule, GeometricSchedule, ExplicitSchedule]


class AugmentationRuleFamily(Family):
    """ρᵢ = [base; φ, βᵢ] com βᵢ dado por um cronograma."""

    kind = "augmentation_rule"

    def __init__(
        self,
        base: Node,
        phi: Poly,
        schedule: Schedule,
        horizon=None,
        declared_sup=None,
        name=None,
    ):
        self.base = base
        self.phi = phi
        self.schedule = schedule
        super().__init__(horizon=horizon, declared_sup=declared_sup, name=name)

    @property
    def capacity(self) -> Optional[int]:
        return self.schedule.capacity

    def _generate(self, index: int) -> Node:
        beta = self.schedule(index)
        if not isinstance(beta, str) and not hasattr(beta, "is_infinity"):
            beta = GroupElem.rational(beta, self.base.rank)
        return Ordinary(self.base, self.phi, beta)

    def key_candidates(self) -> List[Poly]:
        return [self.phi]


class SubFamily(Family):
    """Subfamília ρ_{offset + i·step}; cofinal na família original."""

    kind = "subfamily"

    def __init__(self, parent: Family, step: int = 2, offset: int = 0, name=None):
        if step < 1 or offset < 0:
            raise PreconditionError(f"Passo/deslocamento inválidos: {step}, {offset}")
        self.parent = parent
        self.step = step
        self.offset = offset
        super().__init__(
            horizon=parent.horizon,
            declared_sup=parent.declared_sup,
            name=name or f"{parent.name}[{offset}::{step}]",
        )

    @property
    def capacity(self) -> int:
        return (self.parent.size - self.offset) // self.step

    def _generate(self, index: int) -> Node:
        return self.parent.member(self.offset + index * self.step)

    def key_candidates(self) -> List[Poly]:
        return self.parent.key_candidates()


# ========== NÓ LIMITE ==========


@dataclass(frozen=True, eq=False)
class Limit(Node):
    """Aumento limite [𝒜; φ, γ]: min{ρ_𝒜(aₛ) + sγ} na expansão φ-ádica."""

    family: Family
    phi: Poly
    gamma: Value
    kind = "limit"

    def __post_init__(self):
        object.__setattr__(self, "gamma", coerce_value(self.gamma, self.family.rank))
        if not self.phi.is_monic or self.phi.degree < 1:
            raise PreconditionError(f"φ deve ser mônico de grau ≥ 1: {self.phi}")
        if self.phi.degree < self.family.stable_degree:
            raise PreconditionError(
                f"deg φ = {self.phi.degree} abaixo do grau estável "
                f"{self.family.stable_degree}"
            )
        result = self.family.stable_value(self.phi)
        if result.is_stable:
            raise PreconditionError(
                f"{self.phi} é estável em {self.family} (valor {result.value}); "
                "aumentos limite exigem φ instável"
            )
        if not all(self.gamma > value for value in result.values):
            raise PreconditionError(
                f"γ = {self.gamma} não excede os valores gerados {result.values[-1]}"
            )

    @property
    def ground(self) -> GroundValuation:
        return self.family.ground

    def __call__(self, f: Poly) -> Value:
        if f.is_zero:
            return INFINITY
        return expansion_min(
            phi_expand(f, self.phi), self.family.require_stable, self.gamma
        )

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
    def is_essential(self) -> bool:
        return self.phi.degree > self.family.stable_degree

    def value_group_zero(self) -> Subgroup:
        if not self.is_essential:
            return self.family.member(self.family.size).value_group_zero()
        # grupo estável Γ_𝒞: último grupo do prefixo
        last = self.family.member(self.family.size).value_group()
        if self.family.size > 1:
            before = self.family.member(self.family.size - 1).value_group()
            if before != last:
                logger.warning(
                    f"⚠️ [FAMÍLIA] Grupo de valores de {self.family} ainda não "
                    f"estabilizou no horizonte: {before} → {last}"
                )
        return last

    def construction_polynomials(self) -> List[Poly]:
        last = self.family.member(self.family.size)
        return last.construction_polynomials() + [self.phi]

    def deepest_used_slot(self) -> int:
        own = MAIN if self.gamma is INFINITY else self.gamma.deepest_slot()
        deepest = max(rho.deepest_used_slot() for rho in self.family.members())
        return max(own, deepest)

    def __str__(self):
        return f"[{self.family}; {self.phi}, {self.gamma}]"


# ========== OPERAÇÕES ==========


def stable_value(family: Family, f: Poly) -> StabilityResult:
    return family.stable_value(f)


def find_unstable(
    family: Family, deg_bound: int, candidates: Optional[Sequence[Poly]] = None
) -> Union[UnstableSearch, NoneUpTo]:
    """
    Procura um polinômio mônico instável de grau mínimo.

    Testa os candidatos informados mais os sugeridos pela própria família
    (polinômio mínimo do pseudo-limite, polinômio da regra de aumento).

    Returns:
        UnstableSearch com m_∞ e a classificação essential/inessential, ou
        NoneUpTo quando nenhum candidato é instável até o horizonte
    """
    m = family.stable_degree
    pool: List[Poly] = list(candidates or []) + family.key_candidates()
    seen = set()
    tested = 0
    for phi in sorted(pool, key=lambda g: g.degree):
        if phi in seen or not phi.is_monic or not m <= phi.degree <= deg_bound:
            continue
        seen.add(phi)
        tested += 1
        if not family.stable_value(phi).is_stable:
            classification = "essential" if phi.degree > m else "inessential"
            logger.info(
                f"🔎 [FAMÍLIA] {phi} instável em {family} (m_∞ = {phi.degree}, "
                f"{classification})"
            )
            return UnstableSearch(phi.degree, phi, classification, family.size)
    return NoneUpTo(deg_bound=deg_bound, horizon=family.size, tested=tested)


def _recognize_supremum(values: Sequence[Value], rank: int) -> GroupElem:
    if len(values) < 3 or not all(
        value is not INFINITY and value.is_rational for value in values
    ):
        raise SupUnderdeterminedError(
            "Padrão de valores não reconhecido: são necessários ao menos 3 valores "
            "racionais; declare declared_sup"
        )
    mains = [value.main for value in values]
    diffs = [b - a for a, b in zip(mains, mains[1:])]
    if all(d > 0 for d in diffs) and all(b >= a for a, b in zip(diffs, diffs[1:])):
        return GroupElem.infinity_minus(rank)
    ratios = {b / a for a, b in zip(diffs, diffs[1:]) if a}
    if all(d > 0 for d in diffs) and len(ratios) == 1:
        r = ratios.pop()
        if 0 < r < 1:
            return GroupElem.ball_minus(mains[-1] + diffs[-1] * r / (1 - r), rank)
    raise SupUnderdeterminedError(
        f"Valores {[str(v) for v in values[:5]]}... sem padrão reconhecido; "
        "declare declared_sup"
    )


def gamma_A(family: Family, phi: Poly) -> GroupElem:
    """
    γ_𝒜 = sup{ρᵢ(φ)} para φ instável.

    Usa o supremo declarado da família (validado contra o prefixo) ou
    reconhece os padrões: crescimento ilimitado → ∞⁻; incrementos
    geométricos de razão 0 < r < 1 → b⁻ com b o limite geométrico.

    Raises:
        PreconditionError: φ estável, ou supremo declarado inválido
        SupUnderdeterminedError: Padrão não reconhecido sem supremo declarado
    """
    result = family.stable_value(phi)
    if result.is_stable:
        raise PreconditionError(f"{phi} é estável em {family}: γ_𝒜 exige φ instável")

    if family.declared_sup is not None:
        declared = coerce_value(family.declared_sup, family.rank)
        if declared is INFINITY or declared.is_rational:
            raise PreconditionError(
                f"Supremo declarado {declared} deve ser incomensurável e finito"
            )
        if sme_canonical(declared) != declared:
            raise PreconditionError(
                f"Supremo declarado {declared} não é sme-canônico "
                f"(use {sme_canonical(declared)})"
            )
        if not all(value < declared for value in result.values):
            raise PreconditionError(
                f"Supremo declarado {declared} não excede os valores gerados"
            )
        return declared

    return _recognize_supremum(result.values, family.rank)


def limit_augment(family: Family, phi: Poly, gamma) -> Limit:
    return Limit(family, phi, gamma)


def minimal_limit_node(family: Family, phi: Poly) -> Limit:
    """μ_𝒜 = [𝒜; φ, γ_𝒜]."""
    return Limit(family, phi, gamma_A(family, phi))


def family_equiv(first: Family, second: Family, horizon: Optional[int] = None) -> Verdict:
    """
    Equivalência (cofinalidade mútua) decidida sobre prefixos.

    - FALSE: algum par (ρᵢ, ζⱼ) gerado é incomparável.
    - TRUE: cada membro da primeira metade de um prefixo está abaixo de algum
      membro gerado do outro, nos dois sentidos.
    - UNKNOWN: caso contrário.

    Só a primeira metade precisa ser dominada: a cauda de um prefixo pode
    ultrapassar o prefixo finito do outro mesmo com famílias cofinais
    (ex.: ρ₆, ρ₈ de uma subfamília de passo 2 contra ρ₁..ρ₄). Exigir o prefixo
    inteiro tornaria UNKNOWN quase toda comparação entre famílias equivalentes.
    """
    from .tree import leq

    a = first.members()
    b = second.members()
    if horizon is not None:
        a, b = a[:horizon], b[:horizon]

    for rho in a:
        for zeta in b:
            if not leq(rho, zeta) and not leq(zeta, rho):
                logger.info(f"🌳 [FAMÍLIA] {rho} e {zeta} incomparáveis")
                return Verdict.FALSE

    def dominated(xs, ys):
        head = xs[: (len(xs) + 1) // 2]
        return all(any(leq(x, y) for y in ys) for x in head)

    if dominated(a, b) and dominated(b, a):
        return Verdict.TRUE
    return Verdict.UNKNOWN
