"""
Polinômios exatos sobre K = ℚ, expansões φ-ádicas e a valuação p-ádica.

A representação é densa: `coeffs[i]` é o coeficiente de x^i, sem zeros
finais. Toda a aritmética é feita com `Fraction`.

O sympy entra apenas onde o ecossistema já resolve o problema: leitura de
expressões ("x^5 + p^3"), teste de primalidade e multiplicidade p-ádica.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import orjson
import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

from vtree.errors import ConfigurationError, InputParseError, PreconditionError
from .value_group import (
    DEFAULT_RANK,
    INFINITY,
    GroupElem,
    InfinityType,
    Rational,
    Value,
    as_fraction,
    parse_value,
)

logger = logging.getLogger(__name__)

# Sentinela de grau do polinômio nulo: abaixo de qualquer grau real
DEGREE_OF_ZERO = -1

_X = sympy.Symbol("x")
_TRANSFORMATIONS = standard_transformations + (
    convert_xor,
    implicit_multiplication_application,
)


def _strip(coeffs: Iterable[Fraction]) -> Tuple[Fraction, ...]:
    items = list(coeffs)
    n = len(items)
    while n and not items[n - 1]:
        n -= 1
    return tuple(items[:n])


@dataclass(frozen=True)
class Poly:
    """Polinômio univariado com coeficientes racionais exatos."""

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", _strip(as_fraction(c) for c in self.coeffs)
        )

    # ---------- construtores ----------

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Rational]) -> "Poly":
        return cls(tuple(coeffs))

    @classmethod
    def constant(cls, c: Rational) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, c: Rational, k: int) -> "Poly":
        return cls((0,) * k + (c,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def linear(cls, a: Rational) -> "Poly":
        """x − a."""
        return cls((-as_fraction(a), 1))

    # ---------- propriedades ----------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else DEGREE_OF_ZERO

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            raise PreconditionError("O polinômio nulo não tem coeficiente líder")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    # ---------- aritmética ----------

    @staticmethod
    def _coerce(other) -> Optional["Poly"]:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, c in enumerate(b):
            res[i] += c
        return Poly(tuple(res))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Poly()
        res = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                res[i + j] += a * b
        return Poly(tuple(res))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise PreconditionError(f"Expoente deve ser inteiro não negativo: {n}")
        result, base = Poly.constant(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, divisor: "Poly") -> Tuple["Poly", "Poly"]:
        """Divisão euclidiana: self = q·divisor + r com deg r < deg divisor."""
        if divisor.is_zero:
            raise PreconditionError("Divisão por polinômio nulo")
        rem = list(self.coeffs)
        d = divisor.degree
        lead = divisor.leading
        if len(rem) <= d:
            return Poly(), self
        quo = [Fraction(0)] * (len(rem) - d)
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k]
            if not c:
                continue
            c = c / lead
            quo[k - d] = c
            for j, b in enumerate(divisor.coeffs):
                rem[k - d + j] -= c * b
        return Poly(tuple(quo)), Poly(tuple(rem[:d]))

    def __call__(self, q: Rational) -> Fraction:
        q = as_fraction(q)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    eval_at = __call__

    def derivative(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    # ---------- conversões ----------

    def to_sympy(self) -> sympy.Expr:
        return sum(
            (sympy.Rational(c.numerator, c.denominator) * _X**i
             for i, c in enumerate(self.coeffs)),
            sympy.Integer(0),
        )

    def to_list(self) -> List[str]:
        return [_format_coefficient(c) for c in self.coeffs]

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = _format_coefficient(mag)
            else:
                power = "x" if k == 1 else f"x^{k}"
                body = power if mag == 1 else f"{_format_coefficient(mag)}*{power}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Poly('{self}')"


def _format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# ========== EXPANSÕES φ-ÁDICAS ==========


def phi_expand(f: Poly, phi: Poly) -> List[Poly]:
    """
    Expansão f = Σ aₛ φˢ com deg aₛ < deg φ, por divisões sucessivas.

    Args:
        f: Polinômio a expandir
        phi: Polinômio mônico de grau ≥ 1

    Returns:
        List[Poly]: [a₀, a₁, ...]; lista vazia para f = 0

    Raises:
        PreconditionError: φ não mônico ou constante
    """
    if not phi.is_monic or phi.degree < 1:
        raise PreconditionError(f"φ deve ser mônico de grau ≥ 1: {phi}")
    coeffs = []
    current = f
    while not current.is_zero:
        current, rem = current.divmod(phi)
        coeffs.append(rem)
    return coeffs


def reassemble(coeffs: Sequence[Poly], phi: Poly) -> Poly:
    """Σ aₛ φˢ, pela regra de Horner em φ."""
    acc = Poly()
    for a in reversed(coeffs):
        acc = acc * phi + a
    return acc


def ord_phi(f: Poly, phi: Poly) -> Union[int, InfinityType]:
    """Menor s com aₛ ≠ 0 na expansão φ-ádica; ∞ para f = 0."""
    for s, a in enumerate(phi_expand(f, phi)):
        if not a.is_zero:
            return s
    return INFINITY


# ========== VALUAÇÃO p-ÁDICA ==========


@lru_cache(maxsize=65536)
def _p_order(n: int, prime: int) -> int:
    return int(sympy.multiplicity(prime, n))


def p_order(q: Rational, prime: int) -> int:
    """Ordem p-ádica inteira de um racional não nulo."""
    q = as_fraction(q)
    if not q:
        raise PreconditionError("A ordem p-ádica de 0 é infinita")
    return _p_order(abs(q.numerator), prime) - _p_order(q.denominator, prime)


def v_p(q: Rational, prime: int, rank: int = DEFAULT_RANK) -> Value:
    """Valuação p-ádica como (0|n|0); ∞ para q = 0."""
    q = as_fraction(q)
    if not q:
        return INFINITY
    return GroupElem.rational(p_order(q, prime), rank)


@dataclass(frozen=True)
class GroundValuation:
    """Valuação v_p em ℚ com Γ = ℤ no slot principal de um grupo de posto `rank`."""

    prime: int
    rank: int = DEFAULT_RANK

    def __post_init__(self):
        if not isinstance(self.prime, int) or not sympy.isprime(self.prime):
            raise ConfigurationError(f"p = {self.prime} não é primo")
        if self.rank < 3:
            raise ConfigurationError(f"Posto {self.rank} < 3 não suportado")

    def __call__(self, q: Rational) -> Value:
        return v_p(q, self.prime, self.rank)

    def rational(self, q: Rational) -> GroupElem:
        return GroupElem.rational(q, self.rank)

    def zero(self) -> GroupElem:
        return GroupElem.zero(self.rank)

    def parse(self, text) -> Value:
        return parse_value(text, self.rank)


# ========== LEVANTAMENTO DE HENSEL ==========


def _residue(q: Fraction, modulus: int, prime: int) -> int:
    if q.denominator % prime == 0:
        raise PreconditionError(f"{q} não é p-inteiro para p = {prime}")
    return q.numerator * pow(q.denominator, -1, modulus) % modulus


def hensel_lift(f: Poly, root: int, prime: int, precision: int) -> List[int]:
    """
    Aproximações aᵢ ≡ raiz mod pⁱ (i = 1..precision) de uma raiz simples de f.

    Args:
        f: Polinômio com coeficientes p-inteiros
        root: Raiz de f módulo p
        prime: Primo p
        precision: Número de termos da sequência

    Returns:
        List[int]: [a₁, a₂, ...] com 0 ≤ aᵢ < pⁱ

    Raises:
        PreconditionError: Raiz não simples ou inexistente módulo p
    """
    df = f.derivative()
    if _residue(f(root), prime, prime) != 0:
        raise PreconditionError(f"{root} não é raiz de {f} módulo {prime}")
    if _residue(df(root), prime, prime) == 0:
        raise PreconditionError(f"{root} é raiz múltipla de {f} módulo {prime}")
    approximations = [root % prime]
    a = root % prime
    for k in range(2, precision + 1):
        modulus = prime**k
        correction = _residue(f(a), modulus, prime) * pow(
            _residue(df(a), modulus, prime), -1, modulus
        )
        a = (a - correction) % modulus
        approximations.append(a)
    logger.debug(f"🔧 [POLI] Hensel: {approximations[:4]}... ({precision} termos)")
    return approximations


# ========== LEITURA ==========


def parse_poly(
    text: Union[str, Sequence, Poly],
    prime: Optional[int] = None,
    names: Optional[Mapping[str, Poly]] = None,
) -> Poly:
    """
    Lê um polinômio a partir de lista de coeficientes ou expressão.

    Aceita "[c0, c1, ...]" (racionais exatos como inteiros ou textos "a/b") ou
    expressões como "x^5 + p^3" e "phi1^3 + p^10", onde `p` é substituído pelo
    primo e `names` fornece polinômios nomeados.

    Raises:
        InputParseError: Entrada malformada ou com símbolos desconhecidos
    """
    if isinstance(text, Poly):
        return text
    if isinstance(text, (list, tuple)):
        return Poly.from_coeffs(as_fraction(c) for c in text)
    if not isinstance(text, str):
        raise InputParseError(f"Polinômio inválido: {text!r}")
    raw = text.strip()
    if raw.startswith("["):
        try:
            items = orjson.loads(raw)
        except orjson.JSONDecodeError as e:
            raise InputParseError(f"Lista de coeficientes inválida: {raw}") from e
        if any(isinstance(c, float) for c in items):
            raise InputParseError("Coeficientes devem ser racionais exatos, não floats")
        return Poly.from_coeffs(as_fraction(c) for c in items)

    local_dict = {"x": _X}
    if prime is not None:
        local_dict["p"] = sympy.Integer(prime)
    for name, poly in (names or {}).items():
        local_dict[name] = poly.to_sympy()
    try:
        expr = parse_expr(raw, local_dict=local_dict, transformations=_TRANSFORMATIONS)
        coeffs = sympy.Poly(expr, _X, domain="QQ").all_coeffs()
    except Exception as e:
        raise InputParseError(f"Expressão polinomial inválida '{raw}': {e}") from e
    return Poly.from_coeffs(as_fraction(c) for c in reversed(coeffs))
