"""
Aplicação FastAPI do Valuative Tree Study.

Expõe as operações da biblioteca com a mesma semântica da CLI:
- Avaliação de nós em polinômios
- Ordem, gcln e distância na árvore
- Classificação sme de elementos do grupo de valores
- Exemplo embutido de profundidade 3
"""

import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import ORJSONResponse

from vtree import __version__
from vtree.config import LOG_LEVEL, run_config_loader
from vtree.api.routers import health, valuations

logging.basicConfig(
    level=LOG_LEVEL.upper(),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)

logger = logging.getLogger("vtree.api.main")


@asynccontextmanager
async def lifespan(_app: FastAPI):
    """Lifespan event handler para startup e shutdown."""
    logger.info("🚀 [MAIN API] Iniciando Valuative Tree Study API")
    run = run_config_loader.base()
    logger.info(f"🔧 [MAIN API] p = {run.prime}, posto = {run.rank}, horizonte = {run.horizon}")

    yield

    logger.info("🛑 [MAIN API] Encerrando Valuative Tree Study API")


app = FastAPI(
    title="Valuative Tree Study API",
    description="""Valuações indutivas e de limite em Q[x] sobre v_p, com aritmética exata.

## Recursos:
- **Avaliação**: μ(f) para nós raiz, de profundidade zero, ordinários e limite
- **Árvore**: ordem estrutural, maior nó comum abaixo e distância
- **Grupo de valores**: quase-cortes e representantes sme canônicos
- **Exemplo**: cadeia de profundidade 3 com índice de ramificação 30

Todos os números trafegam como textos racionais exatos.""",
    version=__version__,
    docs_url="/docs",
    redoc_url="/redoc",
    openapi_url="/openapi.json",
    default_response_class=ORJSONResponse,
    lifespan=lifespan,
    license_info={
        "name": "MIT",
    },
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["GET", "POST", "OPTIONS"],
    allow_headers=["*"],
    max_age=600,
)

app.include_router(
    valuations.router,
    prefix="/api/v1/valuations",
    tags=["valuations"],
    responses={
        400: {"description": "Pré-condição violada ou operação indefinida"},
        422: {"description": "Entrada malformada"},
    },
)

app.include_router(
    health.router,
    prefix="/api/v1/health",
    tags=["health"],
    responses={200: {"description": "Sistema saudável"}},
)


@app.get("/", tags=["root"])
async def root():
    """
    Root endpoint com informações básicas da API.

    Returns:
        Dictionary com informações da API e endpoints disponíveis
    """
    logger.info("🏠 [MAIN API] Root endpoint acessado")

    return {
        "message": "Valuative Tree Study API",
        "version": __version__,
        "endpoints": {
            "valuations": {
                "eval": "/api/v1/valuations/eval",
                "leq": "/api/v1/valuations/leq",
                "gcln": "/api/v1/valuations/gcln",
                "distance": "/api/v1/valuations/distance",
                "sme": "/api/v1/valuations/sme/classify",
                "example": "/api/v1/valuations/example/vaquie",
            },
            "health": "/api/v1/health/",
            "docs": "/docs",
        },
    }


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(app, host="0.0.0.0", port=8000, access_log=True, server_header=False)
