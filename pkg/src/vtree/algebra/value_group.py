"""
Grupos de valores lexicográficos de posto finito.

Um `GroupElem` é um vetor de racionais exatos com ordem lexicográfica:
slot 0 = "topo", slot 1 = "principal" (onde vive Γ_ℚ), slots 2.. = "sub".
O valor absorvente `INFINITY` é maior que qualquer vetor.

Elementos nomeados:
    −∞  = (−1|0|0)     ∞⁻ = (1|0|0)
    b⁻  = (0|b|−1)     b⁺ = (0|b|1)     q = (0|q|0)

Também ficam aqui os quase-cortes de Γ_ℚ, a equivalência sme e os
descritores de subgrupos finitamente gerados (índices de ramificação).
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Iterable, Optional, Tuple, Union

from sympy.core.intfunc import igcdex

from vtree.errors import ConfigurationError, DomainError, InputParseError

logger = logging.getLogger(__name__)

DEFAULT_RANK = 3
TOP, MAIN, SUB = 0, 1, 2

Rational = Union[int, Fraction]


def as_fraction(q) -> Fraction:
    """
    Converte inteiros, frações e textos "a/b" em `Fraction`.

    Raises:
        InputParseError: Para floats ou textos que não são racionais exatos
    """
    if isinstance(q, bool):
        raise InputParseError(f"Valor booleano não é racional: {q!r}")
    if isinstance(q, Fraction):
        return q
    if isinstance(q, int):
        return Fraction(q)
    if isinstance(q, str):
        try:
            return Fraction(q.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise InputParseError(f"Racional inválido: {q!r}") from e
    if hasattr(q, "p") and hasattr(q, "q"):
        # racionais do sympy (Integer, Rational)
        return Fraction(int(q.p), int(q.q))
    raise InputParseError(f"Somente racionais exatos são aceitos, recebido {q!r}")


class _LexOrdered:
    """Mixin de comparação delegando para `lex_cmp`."""

    def _cmp(self, other):
        if not isinstance(other, (GroupElem, InfinityType)):
            return NotImplemented
        return lex_cmp(self, other)

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0


class InfinityType(_LexOrdered):
    """O valor absorvente ∞ (suporte das folhas finitas)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    rank = None
    is_infinity = True

    def __add__(self, other):
        if isinstance(other, (GroupElem, InfinityType)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("vtree.INFINITY")

    def scale(self, n: Rational) -> "InfinityType":
        if as_fraction(n) <= 0:
            raise DomainError("n·∞ só está definido para n > 0")
        return self

    def __rmul__(self, n):
        if isinstance(n, (int, Fraction)):
            return self.scale(n)
        return NotImplemented

    def __str__(self):
        return "inf"

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (InfinityType, ())


INFINITY = InfinityType()


@dataclass(frozen=True, eq=False)
class GroupElem(_LexOrdered):
    """Elemento de ℚ^r com ordem lexicográfica (slot 0 mais significativo)."""

    slots: Tuple[Fraction, ...]

    is_infinity = False

    def __post_init__(self):
        slots = tuple(as_fraction(s) for s in self.slots)
        if len(slots) < 3:
            raise ConfigurationError(
                f"Posto {len(slots)} insuficiente: o layout exige topo, principal e sub"
            )
        object.__setattr__(self, "slots", slots)

    # ---------- construtores nomeados ----------

    @classmethod
    def of(cls, *slots: Rational) -> "GroupElem":
        return cls(tuple(slots))

    @classmethod
    def zero(cls, rank: int = DEFAULT_RANK) -> "GroupElem":
        return cls((0,) * rank)

    @classmethod
    def unit(cls, slot: int, rank: int = DEFAULT_RANK, sign: int = 1) -> "GroupElem":
        if not 0 <= slot < rank:
            raise ConfigurationError(f"Slot {slot} fora do posto {rank}")
        return cls(tuple(sign if i == slot else 0 for i in range(rank)))

    @classmethod
    def rational(cls, q: Rational, rank: int = DEFAULT_RANK) -> "GroupElem":
        return cls((0, q) + (0,) * (rank - 2))

    @classmethod
    def minus_infinity(cls, rank: int = DEFAULT_RANK) -> "GroupElem":
        return cls.unit(TOP, rank, sign=-1)

    @classmethod
    def infinity_minus(cls, rank: int = DEFAULT_RANK) -> "GroupElem":
        return cls.unit(TOP, rank)

    @classmethod
    def ball_minus(cls, b: Rational, rank: int = DEFAULT_RANK) -> "GroupElem":
        return cls((0, b, -1) + (0,) * (rank - 3))

    @classmethod
    def ball_plus(cls, b: Rational, rank: int = DEFAULT_RANK) -> "GroupElem":
        return cls((0, b, 1) + (0,) * (rank - 3))

    # ---------- acesso ----------

    @property
    def rank(self) -> int:
        return len(self.slots)

    @property
    def top(self) -> Fraction:
        return self.slots[TOP]

    @property
    def main(self) -> Fraction:
        return self.slots[MAIN]

    @property
    def sub(self) -> Tuple[Fraction, ...]:
        return self.slots[SUB:]

    @property
    def is_rational(self) -> bool:
        """Verdadeiro quando o elemento pertence a Γ_ℚ (topo e sub nulos)."""
        return self.top == 0 and not any(self.sub)

    @property
    def is_zero(self) -> bool:
        return not any(self.slots)

    def deepest_slot(self) -> int:
        """Índice do último slot não nulo (-1 para o vetor nulo)."""
        for index in range(self.rank - 1, -1, -1):
            if self.slots[index]:
                return index
        return -1

    # ---------- lei de grupo ----------

    def __add__(self, other):
        if isinstance(other, GroupElem):
            _check_rank(self, other)
            return GroupElem(tuple(a + b for a, b in zip(self.slots, other.slots)))
        return NotImplemented

    def __neg__(self) -> "GroupElem":
        return GroupElem(tuple(-a for a in self.slots))

    def __sub__(self, other):
        if isinstance(other, InfinityType):
            raise DomainError("x − ∞ não está definido")
        if isinstance(other, GroupElem):
            return self + (-other)
        return NotImplemented

    def scale(self, n: Rational) -> "GroupElem":
        n = as_fraction(n)
        return GroupElem(tuple(n * a for a in self.slots))

    def __rmul__(self, n):
        if isinstance(n, (int, Fraction)) and not isinstance(n, bool):
            return self.scale(n)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, GroupElem):
            return self.slots == other.slots
        if isinstance(other, InfinityType):
            return False
        return NotImplemented

    def __hash__(self):
        return hash(self.slots)

    def __str__(self):
        return "(" + "|".join(_format_rational(s) for s in self.slots) + ")"

    def __repr__(self):
        return f"GroupElem('{self}')"


Value = Union[GroupElem, InfinityType]


def _check_rank(a: GroupElem, b: GroupElem) -> None:
    if a.rank != b.rank:
        raise ConfigurationError(f"Postos divergentes: {a.rank} vs {b.rank}")


def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def lex_cmp(a: Value, b: Value) -> int:
    """
    Compara dois valores na ordem lexicográfica.

    Returns:
        int: -1, 0 ou 1

    Raises:
        ConfigurationError: Se os postos dos vetores divergirem
    """
    a_inf, b_inf = a is INFINITY, b is INFINITY
    if a_inf or b_inf:
        return int(a_inf) - int(b_inf)
    _check_rank(a, b)
    for x, y in zip(a.slots, b.slots):
        if x != y:
            return -1 if x < y else 1
    return 0


def add(a: Value, b: Value) -> Value:
    return a + b


def scalar_mul(n: Rational, a: Value) -> Value:
    """n·a slot a slot; n·∞ exige n > 0."""
    return a.scale(n)


def value_min(values: Iterable[Value]) -> Value:
    """Mínimo lexicográfico; ∞ para a coleção vazia."""
    best: Value = INFINITY
    for value in values:
        if value < best:
            best = value
    return best


# ========== FORMATO TEXTUAL ==========

_ALIASES = {
    "-oo": GroupElem.minus_infinity,
    "oo-": GroupElem.infinity_minus,
}


def parse_value(text: str, rank: int = DEFAULT_RANK) -> Value:
    """
    Lê um valor no formato "(t|m|s)", "inf", "-oo", "oo-", "b-", "b+" ou "q".

    Args:
        text: Representação textual
        rank: Posto esperado dos vetores

    Raises:
        InputParseError: Texto malformado
        ConfigurationError: Número de slots diferente do posto
    """
    if isinstance(text, (GroupElem, InfinityType)):
        return text
    if not isinstance(text, str):
        return GroupElem.rational(as_fraction(text), rank)
    raw = text.strip().replace(" ", "")
    if raw in ("inf", "∞", "oo"):
        return INFINITY
    if raw in _ALIASES:
        return _ALIASES[raw](rank)
    if raw.startswith("(") and raw.endswith(")"):
        parts = raw[1:-1].split("|")
        if len(parts) != rank:
            raise ConfigurationError(
                f"'{text}' tem {len(parts)} slots, posto configurado é {rank}"
            )
        return GroupElem(tuple(as_fraction(part) for part in parts))
    if len(raw) > 1 and raw[-1] in "+-" and raw[-2] not in "+-/":
        point = as_fraction(raw[:-1])
        if raw[-1] == "-":
            return GroupElem.ball_minus(point, rank)
        return GroupElem.ball_plus(point, rank)
    return GroupElem.rational(as_fraction(raw), rank)


def format_value(value: Value) -> str:
    return str(value)


# ========== ÍNDICE INFINITO ==========


class InfiniteIndex:
    """Índice (⟨H, γ⟩ : H) infinito: γ incomensurável sobre H."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __mul__(self, other):
        return self

    __rmul__ = __mul__

    def __gt__(self, other):
        return not isinstance(other, InfiniteIndex)

    def __lt__(self, other):
        return False

    def __str__(self):
        return "INFINITE"

    __repr__ = __str__


INFINITE = InfiniteIndex()
Index = Union[int, InfiniteIndex]


# ========== SUBGRUPOS ==========


def rational_gcd(a: Fraction, b: Fraction) -> Fraction:
    """Gerador positivo de aℤ + bℤ ⊂ ℚ."""
    a, b = abs(as_fraction(a)), abs(as_fraction(b))
    if a == 0:
        return b
    if b == 0:
        return a
    return Fraction(
        gcd(a.numerator * b.denominator, b.numerator * a.denominator),
        a.denominator * b.denominator,
    )


def order_modulo(q: Fraction, generator: Fraction) -> int:
    """Menor n ≥ 1 com n·q ∈ generator·ℤ."""
    return (as_fraction(q) / as_fraction(generator)).denominator


@dataclass(frozen=True)
class Subgroup:
    """
    Subgrupo ⟨gℤ, extra⟩ do grupo lexicográfico.

    `generator` gera a parte racional (slot principal). `extra`, quando
    presente, é um gerador incomensurável (topo ou sub não nulos).
    """

    generator: Fraction
    extra: Optional[GroupElem] = None

    def __post_init__(self):
        generator = as_fraction(self.generator)
        if generator <= 0:
            raise DomainError(f"Gerador deve ser positivo, recebido {generator}")
        object.__setattr__(self, "generator", generator)
        if self.extra is not None and self.extra.is_rational:
            raise DomainError("Gerador extra de um subgrupo misto deve ser incomensurável")

    @classmethod
    def integers(cls) -> "Subgroup":
        return cls(Fraction(1))

    @property
    def is_commensurable(self) -> bool:
        return self.extra is None

    def _extra_multiple(self, x: GroupElem) -> Optional[Fraction]:
        """Coeficiente n com parte não principal de x igual a n·extra, ou None."""
        extra = self.extra
        pivot = next(i for i, s in enumerate(extra.slots) if i != MAIN and s)
        n = x.slots[pivot] / extra.slots[pivot]
        for i, (a, b) in enumerate(zip(x.slots, extra.slots)):
            if i != MAIN and a != n * b:
                return None
        return n

    def contains(self, x: Value) -> bool:
        if x is INFINITY:
            return False
        if self.extra is None:
            return x.is_rational and (x.main / self.generator).denominator == 1
        _check_rank(x, self.extra)
        n = self._extra_multiple(x)
        if n is None or n.denominator != 1:
            return False
        residue = x.main - n * self.extra.main
        return (residue / self.generator).denominator == 1

    def __str__(self):
        base = f"({_format_rational(self.generator)})Z"
        return base if self.extra is None else f"<{base}, {self.extra}>"


def extend_subgroup(group: Subgroup, gamma: Value) -> Tuple[Subgroup, Index]:
    """
    Calcula ⟨H, γ⟩ e o índice (⟨H, γ⟩ : H).

    Args:
        group: Subgrupo H
        gamma: Novo gerador γ

    Returns:
        Tuple[Subgroup, Index]: Grupo estendido e índice (INFINITE quando γ é
        incomensurável sobre H)

    Raises:
        DomainError: γ = ∞, ou extensão de posto incomensurável 2
    """
    if gamma is INFINITY:
        raise DomainError("Não se estende um grupo de valores por ∞")
    g = group.generator

    if gamma.is_rational:
        q = gamma.main
        new_generator = rational_gcd(g, q)
        index = order_modulo(q, g)
        if g / new_generator != index:
            raise AssertionError("lei do índice violada")
        return Subgroup(new_generator, group.extra), index

    if group.extra is None:
        return Subgroup(g, gamma), INFINITE

    # H = ⟨gℤ, β⟩ misto: γ precisa ser proporcional a β fora do slot principal
    beta = group.extra
    _check_rank(beta, gamma)
    ratio = group._extra_multiple(gamma)
    if ratio is None:
        raise DomainError(
            f"⟨{group}, {gamma}⟩ teria duas direções incomensuráveis: não representável"
        )
    n0, k0 = ratio.denominator, ratio.numerator
    residue = gamma.main - ratio * beta.main
    index = lcm(n0, order_modulo(residue, g)) if residue else n0
    u, w, _ = igcdex(n0, k0)
    pivot = beta.scale(int(u)) + gamma.scale(int(w))
    new_generator = rational_gcd(g, n0 * residue)
    return Subgroup(new_generator, pivot), index


# ========== QUASE-CORTES E EQUIVALÊNCIA SME ==========


class CutKind(str, Enum):
    PRINCIPAL = "principal"
    BALL_MINUS = "ball_minus"
    BALL_PLUS = "ball_plus"
    IMPROPER_LOW = "improper_low"
    IMPROPER_HIGH = "improper_high"


@dataclass(frozen=True)
class QuasiCut:
    """Quase-corte (Dᴸ, Dᴿ) de Γ_ℚ; `point` é o racional que o ancora."""

    kind: CutKind
    point: Optional[Fraction] = None

    def in_left(self, a: Rational) -> bool:
        """a ∈ Dᴸ, isto é, a ≤ x para o elemento x que realiza o corte."""
        a = as_fraction(a)
        if self.kind is CutKind.IMPROPER_LOW:
            return False
        if self.kind is CutKind.IMPROPER_HIGH:
            return True
        if self.kind is CutKind.BALL_MINUS:
            return a < self.point
        return a <= self.point

    def in_right(self, a: Rational) -> bool:
        """a ∈ Dᴿ, isto é, a ≥ x."""
        a = as_fraction(a)
        if self.kind is CutKind.IMPROPER_LOW:
            return True
        if self.kind is CutKind.IMPROPER_HIGH:
            return False
        if self.kind is CutKind.BALL_PLUS:
            return a > self.point
        return a >= self.point

    def __str__(self):
        if self.point is None:
            return self.kind.value
        return f"{self.kind.value}({_format_rational(self.point)})"


def quasi_cut(x: Value, group: Optional[Subgroup] = None) -> QuasiCut:
    """
    Quase-corte de Γ_ℚ realizado por x.

    `group` é aceito por simetria com as demais operações: o fecho divisível
    de qualquer subgrupo não nulo do slot principal é ℚ inteiro.

    Raises:
        DomainError: Para x = ∞
    """
    if x is INFINITY:
        raise DomainError("∞ não realiza quase-corte de Γ_ℚ")
    if x.top < 0:
        return QuasiCut(CutKind.IMPROPER_LOW)
    if x.top > 0:
        return QuasiCut(CutKind.IMPROPER_HIGH)
    for s in x.sub:
        if s < 0:
            return QuasiCut(CutKind.BALL_MINUS, x.main)
        if s > 0:
            return QuasiCut(CutKind.BALL_PLUS, x.main)
    return QuasiCut(CutKind.PRINCIPAL, x.main)


def sme_equiv(x: Value, y: Value, group: Optional[Subgroup] = None) -> bool:
    return quasi_cut(x, group) == quasi_cut(y, group)


def sme_canonical(x: Value, group: Optional[Subgroup] = None) -> GroupElem:
    """Representante canônico da classe sme de x (idempotente)."""
    cut = quasi_cut(x, group)
    rank = x.rank
    if cut.kind is CutKind.PRINCIPAL:
        return GroupElem.rational(cut.point, rank)
    if cut.kind is CutKind.BALL_MINUS:
        return GroupElem.ball_minus(cut.point, rank)
    if cut.kind is CutKind.BALL_PLUS:
        return GroupElem.ball_plus(cut.point, rank)
    if cut.kind is CutKind.IMPROPER_LOW:
        return GroupElem.minus_infinity(rank)
    return GroupElem.infinity_minus(rank)


def cut_isomorphism(beta: GroupElem, gamma: GroupElem) -> Callable[[Value], Value]:
    """
    Isomorfismo ⟨Γ_ℚ, β⟩ → ⟨Γ_ℚ, γ⟩ que fixa Γ_ℚ e envia β em γ.

    Raises:
        DomainError: Se β e γ não forem sme-equivalentes
    """
    if not sme_equiv(beta, gamma):
        raise DomainError(f"{beta} e {gamma} não são sme-equivalentes")
    if beta.is_rational:
        return lambda value: value
    group = Subgroup(Fraction(1), beta)
    shift = gamma - beta

    def image(value: Value) -> Value:
        if value is INFINITY:
            return INFINITY
        n = group._extra_multiple(value)
        if n is None:
            raise DomainError(f"{value} não pertence a ⟨Γ_ℚ, {beta}⟩")
        return value + shift.scale(n)

    return image
