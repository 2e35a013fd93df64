"""
Módulo para montagem e validação da configuração de execução.

Este módulo implementa:
- Configuração base derivada das variáveis de ambiente (via config.py)
- Sobrescritas explícitas (flags da CLI vencem o ambiente)
- Validação da estrutura com erros específicos
- Cache da configuração base
- Health check da configuração ativa

Uso:
    loader = RunConfigLoader()
    run = loader.resolve(prime=11, output="json")
    info = loader.health_check()
"""

import logging
from dataclasses import dataclass, asdict, replace
from typing import Any, Dict, Optional

from sympy import isprime

from vtree.errors import RunConfigError
from . import config

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    """Parâmetros de uma execução: base p-ádica, posto e limites dos oráculos."""

    prime: int
    rank: int
    horizon: int
    oracle_degree: int
    oracle_height: int
    oracle_samples: int
    output: str

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


class RunConfigLoader:
    """
    Carregador da configuração de execução.

    Implementa:
    - Singleton, para que CLI e API compartilhem a mesma base
    - Cache da configuração lida do ambiente
    - Validação de cada campo
    """

    _instance = None
    _base_cache: Optional[RunConfig] = None

    def __new__(cls):
        """Singleton pattern para evitar múltiplas instâncias."""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        if not hasattr(self, "_initialized"):
            self._initialized = True
            logger.info("🔧 [CONFIG] RunConfigLoader inicializado")

    def _from_environment(self) -> RunConfig:
        return RunConfig(
            prime=config.DEFAULT_PRIME,
            rank=config.DEFAULT_RANK,
            horizon=config.FAMILY_HORIZON,
            oracle_degree=config.ORACLE_DEGREE_BOUND,
            oracle_height=config.ORACLE_HEIGHT_BOUND,
            oracle_samples=config.ORACLE_SAMPLES,
            output=config.OUTPUT_MODE,
        )

    def _validate_arithmetic(self, run: RunConfig) -> None:
        """
        Valida primo e posto.

        Raises:
            RunConfigError: Se o primo não for primo ou o posto for menor que 3
        """
        if not isinstance(run.prime, int) or run.prime < 2 or not isprime(run.prime):
            raise RunConfigError(f"Primo inválido: {run.prime}")
        if run.rank < 3:
            raise RunConfigError(
                f"Posto {run.rank} insuficiente: são necessários ao menos 3 slots"
            )

    def _validate_bounds(self, run: RunConfig) -> None:
        """Valida horizonte e limites dos oráculos."""
        if run.horizon < 2:
            raise RunConfigError(f"Horizonte deve ser >= 2, recebido {run.horizon}")
        for field in ("oracle_degree", "oracle_height", "oracle_samples"):
            if getattr(run, field) < 1:
                raise RunConfigError(f"Campo '{field}' deve ser positivo")
        if run.output not in config.OUTPUT_MODES:
            raise RunConfigError(
                f"Modo de saída inválido: {run.output} (use {config.OUTPUT_MODES})"
            )

    def validate(self, run: RunConfig) -> RunConfig:
        self._validate_arithmetic(run)
        self._validate_bounds(run)
        logger.debug("✅ [CONFIG] Configuração validada com sucesso")
        return run

    def base(self, force_reload: bool = False) -> RunConfig:
        """
        Obtém a configuração derivada do ambiente, com cache.

        Args:
            force_reload: Forçar releitura dos valores de config.py

        Returns:
            RunConfig: Configuração base validada
        """
        if force_reload or self._base_cache is None:
            RunConfigLoader._base_cache = self.validate(self._from_environment())
            logger.info(
                f"✅ [CONFIG] Base carregada: p={self._base_cache.prime}, "
                f"posto={self._base_cache.rank}"
            )
        return self._base_cache

    def resolve(self, **overrides: Any) -> RunConfig:
        """
        Combina a base com sobrescritas explícitas (valores None são ignorados).

        Raises:
            RunConfigError: Se a combinação resultante for inválida
        """
        changes = {key: value for key, value in overrides.items() if value is not None}
        unknown = set(changes) - set(RunConfig.__dataclass_fields__)
        if unknown:
            raise RunConfigError(f"Campos desconhecidos: {sorted(unknown)}")
        return self.validate(replace(self.base(), **changes))

    def health_check(self) -> Dict[str, Any]:
        """Verifica se a configuração do ambiente é utilizável."""
        try:
            run = self.base(force_reload=True)
            return {"status": "healthy", "config": run.as_dict()}
        except RunConfigError as e:
            logger.error(f"❌ [CONFIG] Configuração inválida: {e}")
            return {"status": "unhealthy", "error": str(e)}


run_config_loader = RunConfigLoader()
