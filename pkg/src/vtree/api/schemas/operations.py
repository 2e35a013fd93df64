"""
Schemas de requisição e resposta dos endpoints de valuações.
"""

from typing import List, Optional

from pydantic import BaseModel, Field, field_validator

from vtree.valuations.catalog import TableRow, VaquieExample
from .structures import ChainSchema, NodeSchema, PolyText, chain_from_domain, exact_text


class ArithmeticOptions(BaseModel):
    """Sobrescritas opcionais da configuração de execução."""

    prime: Optional[int] = Field(None, description="Primo p (padrão: VTREE_PRIME)")
    rank: Optional[int] = Field(None, ge=3, description="Posto (padrão: VTREE_RANK)")
    horizon: Optional[int] = Field(None, ge=2, description="Horizonte das famílias")


class EvalRequest(ArithmeticOptions):
    node: NodeSchema
    poly: PolyText = Field(..., description="Polinômio em x (aceita p e phi0..phi3)")

    @field_validator("poly", mode="before")
    @classmethod
    def validate_exact(cls, v):
        return exact_text(v)


class EvalResponse(BaseModel):
    node: str = Field(..., description="Descrição do nó")
    poly: str
    value: str = Field(..., description="μ(f) como elemento exato do grupo")


class PairRequest(ArithmeticOptions):
    first: NodeSchema
    second: NodeSchema


class LeqResponse(BaseModel):
    leq: bool = Field(..., description="first ≤ second")
    geq: bool = Field(..., description="second ≤ first")
    same: bool


class GclnResponse(BaseModel):
    node: NodeSchema
    description: str
    sv: Optional[str] = Field(None, description="Valor singular do nó (ausente em folhas)")


class DistanceResponse(BaseModel):
    distance: str


class SmeRequest(BaseModel):
    value: str = Field(..., description="Elemento do grupo, ex.: '(0|1|-4)'")
    rank: Optional[int] = Field(None, ge=3)

    @field_validator("value", mode="before")
    @classmethod
    def validate_exact(cls, v):
        return exact_text(v)


class SmeResponse(BaseModel):
    value: str
    cut: str = Field(..., description="Quase-corte realizado, ex.: 'ball_minus(1)'")
    canonical: str


class TableRowSchema(BaseModel):
    label: str
    degree: Optional[int] = None
    sv: Optional[str] = None
    e_rel: Optional[str] = None
    values: List[str]


class VaquieResponse(BaseModel):
    prime: int
    rows: List[TableRowSchema]
    scaled_rows: List[TableRowSchema]
    ramification: int
    chain: ChainSchema


def table_row_from_domain(row: TableRow) -> TableRowSchema:
    return TableRowSchema(
        label=row.label,
        degree=row.degree,
        sv=None if row.sv is None else str(row.sv),
        e_rel=None if row.e_rel is None else str(row.e_rel),
        values=[str(value) for value in row.values],
    )


def vaquie_from_domain(example: VaquieExample) -> VaquieResponse:
    return VaquieResponse(
        prime=example.prime,
        rows=[table_row_from_domain(row) for row in example.rows],
        scaled_rows=[table_row_from_domain(row) for row in example.scaled_rows],
        ramification=example.ramification,
        chain=chain_from_domain(example.chain),
    )
