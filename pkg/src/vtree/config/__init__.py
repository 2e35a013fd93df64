"""
Configuração integrada do Valuative Tree Study.

- Constantes estáticas lidas do .env (config.py)
- Configuração de execução validada e com cache (run_config.py)
"""

# ========== CONFIGURAÇÕES ESTÁTICAS ==========
from .config import (
    DEFAULT_PRIME,
    DEFAULT_RANK,
    FAMILY_HORIZON,
    ORACLE_DEGREE_BOUND,
    ORACLE_HEIGHT_BOUND,
    ORACLE_SAMPLES,
    OUTPUT_MODE,
    LOG_LEVEL,
    ENV_PREFIX,
)

# ========== CONFIGURAÇÃO DE EXECUÇÃO ==========
from .run_config import RunConfig, RunConfigLoader, run_config_loader


def get_run_config(**overrides) -> RunConfig:
    """
    Atalho para a configuração efetiva da execução.

    Returns:
        RunConfig: Base do ambiente com as sobrescritas aplicadas
    """
    return run_config_loader.resolve(**overrides)


# ========== EXPORTS ==========

__all__ = [
    "DEFAULT_PRIME",
    "DEFAULT_RANK",
    "FAMILY_HORIZON",
    "ORACLE_DEGREE_BOUND",
    "ORACLE_HEIGHT_BOUND",
    "ORACLE_SAMPLES",
    "OUTPUT_MODE",
    "LOG_LEVEL",
    "ENV_PREFIX",
    "RunConfig",
    "RunConfigLoader",
    "run_config_loader",
    "get_run_config",
]
