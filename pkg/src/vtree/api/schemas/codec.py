"""
Codec JSON determinístico (orjson, chaves ordenadas, indentação de 2).
"""

from fractions import Fraction
from pathlib import Path
from typing import Any, Type, TypeVar, Union

import orjson
from pydantic import BaseModel, ValidationError

from vtree.algebra.polynomials import Poly
from vtree.algebra.value_group import GroupElem, InfiniteIndex, InfinityType
from vtree.errors import InputParseError

JSON_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2

Model = TypeVar("Model", bound=BaseModel)


def _default(obj: Any):
    if isinstance(obj, BaseModel):
        return obj.model_dump(mode="json", exclude_none=True)
    if isinstance(obj, (Fraction, GroupElem, InfinityType, InfiniteIndex, Poly)):
        return str(obj)
    raise TypeError(f"Tipo não serializável: {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """Serializa modelos pydantic, dicts e valores exatos como texto."""
    return orjson.dumps(obj, default=_default, option=JSON_OPTIONS).decode()


def loads(text: Union[str, bytes]) -> Any:
    """
    Raises:
        InputParseError: JSON malformado
    """
    try:
        return orjson.loads(text)
    except orjson.JSONDecodeError as e:
        raise InputParseError(f"JSON inválido: {e}") from e


def read_json(path: Union[str, Path]) -> Any:
    """
    Lê um arquivo JSON.

    Raises:
        InputParseError: Arquivo ausente, ilegível ou malformado
    """
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise InputParseError(f"Não foi possível ler '{path}': {e}") from e
    return loads(raw)


def parse_model(model: Type[Model], data: Any) -> Model:
    """
    Valida dados contra um schema, traduzindo erros do pydantic.

    Raises:
        InputParseError: Dados fora do schema
    """
    try:
        return model.model_validate(data)
    except ValidationError as e:
        details = "; ".join(
            f"{'.'.join(str(part) for part in err['loc'])}: {err['msg']}" for err in e.errors()
        )
        raise InputParseError(f"{model.__name__} inválido: {details}") from e
