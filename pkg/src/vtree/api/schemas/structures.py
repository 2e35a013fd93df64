"""
Schemas das estruturas do domínio: nós, famílias e cadeias.

Todo número trafega como texto racional exato ("3/5", "(0|1|-1)", "inf");
floats são recusados na validação. As funções `*_to_domain` montam os objetos
de `vtree.valuations` e `*_from_domain` fazem o caminho inverso.
"""

import logging
from typing import List, Literal, Mapping, Optional, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from vtree.algebra.polynomials import GroundValuation, Poly, parse_poly
from vtree.algebra.value_group import DEFAULT_RANK, as_fraction, format_value, parse_value
from vtree.errors import DomainError
from vtree.valuations.catalog import vaquie_polynomials
from vtree.valuations.chains import Chain, ChainStep, StepKind
from vtree.valuations.families import (
    AugmentationRuleFamily,
    ExplicitFamily,
    ExplicitSchedule,
    Family,
    GeometricSchedule,
    Limit,
    LinearSchedule,
    PseudoConvergentFamily,
    SubFamily,
)
from vtree.valuations.nodes import DepthZero, Node, Ordinary, Root

logger = logging.getLogger(__name__)

PolyText = Union[str, List[str]]


def exact_text(value):
    """Normaliza inteiros para texto e recusa floats."""
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"Use racionais exatos (texto ou inteiro), não {value!r}")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, list):
        return [exact_text(item) for item in value]
    return value


def poly_names(prime: int) -> Mapping[str, Poly]:
    """Polinômios nomeados disponíveis nas expressões (phi0..phi3 do exemplo)."""
    return vaquie_polynomials(prime)


# ========== NÓS ==========


class NodeSchema(BaseModel):
    """Nó da árvore em JSON; filhos e famílias aninhados recursivamente."""

    kind: Literal["root", "depth0", "ordinary", "limit"] = Field(
        ..., description="Tipo do nó"
    )
    a: Optional[str] = Field(None, description="Centro a ∈ ℚ de ω_{a,δ}")
    delta: Optional[str] = Field(None, description="Raio δ de ω_{a,δ}")
    phi: Optional[PolyText] = Field(None, description="Polinômio-chave do aumento")
    gamma: Optional[str] = Field(None, description="Valor γ atribuído a φ")
    parent: Optional["NodeSchema"] = Field(None, description="Nó aumentado")
    family: Optional["FamilySchema"] = Field(None, description="Família do aumento limite")

    @field_validator("a", "delta", "gamma", "phi", mode="before")
    @classmethod
    def validate_exact(cls, v):
        return exact_text(v)

    @model_validator(mode="after")
    def validate_fields(self):
        if self.kind == "depth0" and self.delta is None:
            # ω_{a,δ} também aceita o raio em "gamma"
            self.delta, self.gamma = self.gamma, None
        required = {
            "root": (),
            "depth0": ("a", "delta"),
            "ordinary": ("parent", "phi", "gamma"),
            "limit": ("family", "phi", "gamma"),
        }[self.kind]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f"Nó '{self.kind}' exige os campos {missing}")
        return self


# ========== FAMÍLIAS ==========


class HenselSchema(BaseModel):
    poly: PolyText = Field(..., description="Polinômio com raiz simples módulo p")
    root: int = Field(..., description="Raiz módulo p a ser levantada")

    @field_validator("poly", mode="before")
    @classmethod
    def validate_exact(cls, v):
        return exact_text(v)


class SequenceSpec(BaseModel):
    hensel: HenselSchema


class ScheduleSchema(BaseModel):
    """Cronograma βᵢ de uma família por regra de aumento."""

    kind: Literal["linear", "geometric", "explicit"]
    start: Optional[str] = None
    step: Optional[str] = None
    limit: Optional[str] = None
    scale: Optional[str] = None
    ratio: Optional[str] = None
    values: Optional[List[str]] = None

    @field_validator("start", "step", "limit", "scale", "ratio", "values", mode="before")
    @classmethod
    def validate_exact(cls, v):
        return exact_text(v)

    @model_validator(mode="after")
    def validate_fields(self):
        required = {
            "linear": ("start", "step"),
            "geometric": ("limit", "scale", "ratio"),
            "explicit": ("values",),
        }[self.kind]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f"Cronograma '{self.kind}' exige os campos {missing}")
        return self


class RuleSchema(BaseModel):
    base: Optional[NodeSchema] = Field(None, description="Nó base (padrão ω_{0,0})")
    phi: PolyText = Field(..., description="Polinômio aumentado em cada membro")
    gammas: ScheduleSchema

    @field_validator("phi", mode="before")
    @classmethod
    def validate_exact(cls, v):
        return exact_text(v)


class FamilySchema(BaseModel):
    """Família contínua ρ₁ < ρ₂ < ⋯ em uma das três formas geradoras."""

    kind: Literal["explicit", "pseudo_convergent", "augmentation_rule"]
    name: Optional[str] = None
    members: Optional[List[NodeSchema]] = Field(None, description="Prefixo explícito")
    sequence: Optional[Union[List[str], SequenceSpec]] = Field(
        None, description="Sequência (aᵢ) ou {'hensel': {'poly', 'root'}}"
    )
    radii: Optional[Union[Literal["gap", "index"], List[str]]] = Field(
        None, description="Raios δᵢ: 'gap', 'index' ou lista explícita"
    )
    minimal_polynomial: Optional[PolyText] = None
    rule: Optional[RuleSchema] = None
    horizon: Optional[int] = Field(None, ge=1, description="Membros gerados no máximo")
    declared_sup: Optional[str] = Field(None, description="Supremo declarado de ρᵢ(φ)")

    @field_validator("sequence", "radii", "minimal_polynomial", "declared_sup", mode="before")
    @classmethod
    def validate_exact(cls, v):
        return exact_text(v)

    @model_validator(mode="after")
    def validate_fields(self):
        required = {
            "explicit": "members",
            "pseudo_convergent": "sequence",
            "augmentation_rule": "rule",
        }[self.kind]
        if getattr(self, required) is None:
            raise ValueError(f"Família '{self.kind}' exige o campo '{required}'")
        return self


NodeSchema.model_rebuild()
RuleSchema.model_rebuild()
FamilySchema.model_rebuild()


# ========== CADEIAS ==========


class ChainStepSchema(BaseModel):
    kind: Literal["ordinary", "limit"] = "ordinary"
    phi: PolyText
    gamma: str = Field(..., description="Valor γ ou 'inf'")
    family: Optional[FamilySchema] = None

    @field_validator("phi", "gamma", mode="before")
    @classmethod
    def validate_exact(cls, v):
        return exact_text(v)


class ChainSchema(BaseModel):
    prime: Optional[int] = Field(None, description="Primo p (padrão: configuração)")
    rank: Optional[int] = Field(None, ge=3, description="Posto do grupo de valores")
    initial: NodeSchema
    steps: List[ChainStepSchema] = Field(default_factory=list)


# ========== CONVERSÃO PARA O DOMÍNIO ==========


class _Context:
    """Base p-ádica, nomes de polinômios e horizonte padrão de uma conversão."""

    def __init__(self, base: GroundValuation, names=None, horizon: Optional[int] = None):
        self.base = base
        self.names = poly_names(base.prime) if names is None else names
        self.horizon = horizon

    def poly(self, text: PolyText) -> Poly:
        return parse_poly(text, self.base.prime, self.names)

    def value(self, text: str):
        return parse_value(text, self.base.rank)


def node_to_domain(
    schema: NodeSchema,
    base: GroundValuation,
    names: Optional[Mapping[str, Poly]] = None,
    horizon: Optional[int] = None,
) -> Node:
    """
    Monta o nó descrito pelo schema.

    Raises:
        InputParseError: Polinômio ou valor malformado
        PreconditionError: Aumento inválido (φ não mônico, γ pequeno demais...)
    """
    return _node(schema, _Context(base, names, horizon))


def _node(schema: NodeSchema, ctx: _Context) -> Node:
    if schema.kind == "root":
        return Root(ctx.base)
    if schema.kind == "depth0":
        return DepthZero(ctx.base, as_fraction(schema.a), ctx.value(schema.delta))
    if schema.kind == "ordinary":
        return Ordinary(_node(schema.parent, ctx), ctx.poly(schema.phi), ctx.value(schema.gamma))
    return Limit(_family(schema.family, ctx), ctx.poly(schema.phi), ctx.value(schema.gamma))


def family_to_domain(
    schema: FamilySchema,
    base: GroundValuation,
    names: Optional[Mapping[str, Poly]] = None,
    horizon: Optional[int] = None,
) -> Family:
    """Monta a família; `horizon` vale quando o schema não declara o seu."""
    return _family(schema, _Context(base, names, horizon))


def _schedule(schema: ScheduleSchema):
    if schema.kind == "linear":
        return LinearSchedule(as_fraction(schema.start), as_fraction(schema.step))
    if schema.kind == "geometric":
        return GeometricSchedule(
            as_fraction(schema.limit), as_fraction(schema.scale), as_fraction(schema.ratio)
        )
    return ExplicitSchedule(tuple(schema.values))


def _family(schema: FamilySchema, ctx: _Context) -> Family:
    horizon = schema.horizon if schema.horizon is not None else ctx.horizon
    declared = None if schema.declared_sup is None else ctx.value(schema.declared_sup)
    options = dict(horizon=horizon, declared_sup=declared, name=schema.name)

    if schema.kind == "explicit":
        return ExplicitFamily([_node(member, ctx) for member in schema.members], **options)

    if schema.kind == "pseudo_convergent":
        if isinstance(schema.sequence, SequenceSpec):
            spec = schema.sequence.hensel
            return PseudoConvergentFamily.from_hensel(
                ctx.base, ctx.poly(spec.poly), spec.root, radii=schema.radii or "index", **options
            )
        minimal = None
        if schema.minimal_polynomial is not None:
            minimal = ctx.poly(schema.minimal_polynomial)
        return PseudoConvergentFamily(
            ctx.base,
            schema.sequence,
            radii=schema.radii or "gap",
            minimal_polynomial=minimal,
            **options,
        )

    rule = schema.rule
    rule_base = (
        _node(rule.base, ctx) if rule.base is not None else DepthZero(ctx.base, 0, ctx.base.zero())
    )
    return AugmentationRuleFamily(rule_base, ctx.poly(rule.phi), _schedule(rule.gammas), **options)


def chain_to_domain(
    schema: ChainSchema,
    prime: int,
    rank: int = DEFAULT_RANK,
    names: Optional[Mapping[str, Poly]] = None,
    horizon: Optional[int] = None,
) -> Chain:
    """
    Monta a cadeia; `prime` e `rank` do arquivo têm precedência sobre os argumentos.
    """
    base = GroundValuation(
        schema.prime if schema.prime is not None else prime,
        schema.rank if schema.rank is not None else rank,
    )
    ctx = _Context(base, names, horizon)
    steps = [
        ChainStep(
            StepKind(step.kind),
            ctx.poly(step.phi),
            ctx.value(step.gamma),
            None if step.family is None else _family(step.family, ctx),
        )
        for step in schema.steps
    ]
    logger.debug(f"🔧 [SCHEMAS] cadeia com {len(steps)} passos sobre p = {base.prime}")
    return Chain(_node(schema.initial, ctx), steps)


# ========== CONVERSÃO A PARTIR DO DOMÍNIO ==========


def _rational_text(q) -> str:
    return str(as_fraction(q))


def node_from_domain(node: Node) -> NodeSchema:
    if isinstance(node, Root):
        return NodeSchema(kind="root")
    if isinstance(node, DepthZero):
        return NodeSchema(kind="depth0", a=_rational_text(node.a), delta=format_value(node.delta))
    if isinstance(node, Ordinary):
        return NodeSchema(
            kind="ordinary",
            parent=node_from_domain(node.parent),
            phi=str(node.phi),
            gamma=format_value(node.gamma),
        )
    if isinstance(node, Limit):
        return NodeSchema(
            kind="limit",
            family=family_from_domain(node.family),
            phi=str(node.phi),
            gamma=format_value(node.gamma),
        )
    raise DomainError(f"Nó sem representação JSON: {node!r}")


def _schedule_from_domain(schedule) -> ScheduleSchema:
    if isinstance(schedule, LinearSchedule):
        return ScheduleSchema(
            kind="linear", start=_rational_text(schedule.start), step=_rational_text(schedule.step)
        )
    if isinstance(schedule, GeometricSchedule):
        return ScheduleSchema(
            kind="geometric",
            limit=_rational_text(schedule.limit),
            scale=_rational_text(schedule.scale),
            ratio=_rational_text(schedule.ratio),
        )
    return ScheduleSchema(kind="explicit", values=[str(v) for v in schedule.values])


def family_from_domain(family: Family) -> FamilySchema:
    """Serializa a família; subfamílias são materializadas como prefixo explícito."""
    common = dict(
        name=family.name,
        horizon=family.horizon,
        declared_sup=None if family.declared_sup is None else format_value(family.declared_sup),
    )
    if isinstance(family, PseudoConvergentFamily):
        radii = family.radii if isinstance(family.radii, str) else [
            format_value(r) for r in family.radii
        ]
        minimal = family.minimal_polynomial
        return FamilySchema(
            kind="pseudo_convergent",
            sequence=[_rational_text(a) for a in family.sequence],
            radii=radii,
            minimal_polynomial=None if minimal is None else str(minimal),
            **common,
        )
    if isinstance(family, AugmentationRuleFamily):
        return FamilySchema(
            kind="augmentation_rule",
            rule=RuleSchema(
                base=node_from_domain(family.base),
                phi=str(family.phi),
                gammas=_schedule_from_domain(family.schedule),
            ),
            **common,
        )
    if isinstance(family, (ExplicitFamily, SubFamily)):
        return FamilySchema(
            kind="explicit",
            members=[node_from_domain(member) for member in family.members()],
            **common,
        )
    raise DomainError(f"Família sem representação JSON: {family!r}")


def chain_from_domain(chain: Chain) -> ChainSchema:
    base = chain.initial.ground
    return ChainSchema(
        prime=base.prime,
        rank=base.rank,
        initial=node_from_domain(chain.initial),
        steps=[
            ChainStepSchema(
                kind=step.kind.value,
                phi=str(step.phi),
                gamma=format_value(step.gamma),
                family=None if step.family is None else family_from_domain(step.family),
            )
            for step in chain.steps
        ],
    )
