"""
Schemas pydantic e codec JSON da API e da CLI.
"""
from .codec import JSON_OPTIONS, dumps, loads, parse_model, read_json
from .operations import (
    ArithmeticOptions,
    DistanceResponse,
    EvalRequest,
    EvalResponse,
    GclnResponse,
    LeqResponse,
    PairRequest,
    SmeRequest,
    SmeResponse,
    TableRowSchema,
    VaquieResponse,
    table_row_from_domain,
    vaquie_from_domain,
)
from .structures import (
    ChainSchema,
    ChainStepSchema,
    FamilySchema,
    NodeSchema,
    ScheduleSchema,
    chain_from_domain,
    chain_to_domain,
    family_from_domain,
    family_to_domain,
    node_from_domain,
    node_to_domain,
    poly_names,
)

__all__ = [
    "JSON_OPTIONS",
    "dumps",
    "loads",
    "parse_model",
    "read_json",
    "ArithmeticOptions",
    "DistanceResponse",
    "EvalRequest",
    "EvalResponse",
    "GclnResponse",
    "LeqResponse",
    "PairRequest",
    "SmeRequest",
    "SmeResponse",
    "TableRowSchema",
    "VaquieResponse",
    "table_row_from_domain",
    "vaquie_from_domain",
    "ChainSchema",
    "ChainStepSchema",
    "FamilySchema",
    "NodeSchema",
    "ScheduleSchema",
    "chain_from_domain",
    "chain_to_domain",
    "family_from_domain",
    "family_to_domain",
    "node_from_domain",
    "node_to_domain",
    "poly_names",
]
