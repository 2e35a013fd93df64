"""
Endpoints das operações de valuação: avaliação, ordem, gcln, distância,
classificação sme e o exemplo embutido.
"""

import logging
from typing import Optional

from fastapi import APIRouter, HTTPException, Query

from vtree.algebra.polynomials import GroundValuation, parse_poly
from vtree.algebra.value_group import parse_value, quasi_cut, sme_canonical
from vtree.config import RunConfig, get_run_config
from vtree.errors import InputParseError, VTreeError
from vtree.valuations.catalog import vaquie_example
from vtree.valuations.tree import gcln, leq, tree_distance
from vtree.api.schemas import (
    ArithmeticOptions,
    DistanceResponse,
    EvalRequest,
    EvalResponse,
    GclnResponse,
    LeqResponse,
    PairRequest,
    SmeRequest,
    SmeResponse,
    VaquieResponse,
    node_from_domain,
    node_to_domain,
    poly_names,
    vaquie_from_domain,
)

logger = logging.getLogger(__name__)

router = APIRouter()


def _run(options: ArithmeticOptions) -> RunConfig:
    return get_run_config(prime=options.prime, rank=options.rank, horizon=options.horizon)


def _http_error(e: VTreeError) -> HTTPException:
    status = 422 if isinstance(e, InputParseError) else 400
    logger.error(f"❌ [VALUATIONS] {type(e).__name__}: {e}")
    return HTTPException(status_code=status, detail=f"{type(e).__name__}: {e}")


def _pair(request: PairRequest):
    run = _run(request)
    base = GroundValuation(run.prime, run.rank)
    first = node_to_domain(request.first, base, horizon=run.horizon)
    second = node_to_domain(request.second, base, horizon=run.horizon)
    return first, second


@router.post("/eval", response_model=EvalResponse)
def evaluate(request: EvalRequest):
    """
    Avalia μ(f) para o nó e o polinômio informados.

    Returns:
        EvalResponse com o valor exato
    """
    try:
        run = _run(request)
        base = GroundValuation(run.prime, run.rank)
        node = node_to_domain(request.node, base, horizon=run.horizon)
        f = parse_poly(request.poly, base.prime, poly_names(base.prime))
        value = node(f)
    except VTreeError as e:
        raise _http_error(e)
    logger.info(f"📐 [VALUATIONS] {node}({f}) = {value}")
    return EvalResponse(node=str(node), poly=str(f), value=str(value))


@router.post("/leq", response_model=LeqResponse)
def compare_nodes(request: PairRequest):
    """Ordem estrutural entre os dois nós."""
    try:
        first, second = _pair(request)
        below, above = leq(first, second), leq(second, first)
    except VTreeError as e:
        raise _http_error(e)
    return LeqResponse(leq=below, geq=above, same=below and above)


@router.post("/gcln", response_model=GclnResponse)
def greatest_common_lower_node(request: PairRequest):
    """Maior nó comum abaixo de ambos."""
    try:
        first, second = _pair(request)
        meet = gcln(first, second)
        sv = None if meet.is_leaf else str(meet.sv)
    except VTreeError as e:
        raise _http_error(e)
    logger.info(f"🌳 [VALUATIONS] gcln = {meet}")
    return GclnResponse(node=node_from_domain(meet), description=str(meet), sv=sv)


@router.post("/distance", response_model=DistanceResponse)
def distance(request: PairRequest):
    try:
        first, second = _pair(request)
        result = tree_distance(first, second)
    except VTreeError as e:
        raise _http_error(e)
    return DistanceResponse(distance=str(result))


@router.post("/sme/classify", response_model=SmeResponse)
def classify_value(request: SmeRequest):
    """Quase-corte realizado pelo valor e seu representante canônico."""
    try:
        rank = get_run_config(rank=request.rank).rank
        value = parse_value(request.value, rank)
        cut = quasi_cut(value)
        canonical = sme_canonical(value)
    except VTreeError as e:
        raise _http_error(e)
    return SmeResponse(value=str(value), cut=str(cut), canonical=str(canonical))


@router.get("/example/vaquie", response_model=VaquieResponse)
def example_vaquie(
    prime: Optional[int] = Query(None, description="Primo fora de {2, 3, 5}"),
):
    """Tabela do exemplo de profundidade 3 e a cadeia que o gera."""
    try:
        run = get_run_config(prime=prime)
        example = vaquie_example(run.prime, run.rank)
    except VTreeError as e:
        raise _http_error(e)
    return vaquie_from_domain(example)
