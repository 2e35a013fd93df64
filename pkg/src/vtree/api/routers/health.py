"""
Health router para verificações básicas da API.
"""

import logging
from datetime import datetime
from typing import Any, Dict

from fastapi import APIRouter

from vtree import __version__
from vtree.config import run_config_loader

router = APIRouter()
logger = logging.getLogger(__name__)


@router.get("/")
def health_check() -> Dict[str, Any]:
    """
    Health check da API e da configuração de execução.

    Returns:
        Dictionary com status de saúde e configuração ativa
    """
    logger.info("🏥 [HEALTH] Health check solicitado")
    config = run_config_loader.health_check()

    return {
        "status": config["status"],
        "timestamp": datetime.now().isoformat(),
        "service": "Valuative Tree Study API",
        "version": __version__,
        "config": config.get("config"),
    }
