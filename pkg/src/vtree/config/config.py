from dotenv import load_dotenv
import os
from pathlib import Path

# Encontra o diretório raiz do projeto (onde está o .env)
project_root = Path(__file__).parent.parent.parent.parent
env_path = project_root / ".env"

# Carrega as variáveis do .env
load_dotenv(dotenv_path=env_path)

ENV_PREFIX = "VTREE_"

# Primo da valuação p-ádica de base (7 torna 2, 3, 15, p+1, p+10 unidades)
DEFAULT_PRIME = int(os.getenv("VTREE_PRIME", "7"))
# Posto do grupo lexicográfico: [topo | principal | sub...]
DEFAULT_RANK = int(os.getenv("VTREE_RANK", "3"))
# Número máximo de membros gerados por família contínua
FAMILY_HORIZON = int(os.getenv("VTREE_HORIZON", "24"))

# Limites dos oráculos de minimalidade e de equivalência
ORACLE_DEGREE_BOUND = int(os.getenv("VTREE_ORACLE_DEGREE", "6"))
ORACLE_HEIGHT_BOUND = int(os.getenv("VTREE_ORACLE_HEIGHT", "3"))
ORACLE_SAMPLES = int(os.getenv("VTREE_ORACLE_SAMPLES", "200"))

OUTPUT_MODE = os.getenv("VTREE_OUTPUT", "table")
LOG_LEVEL = os.getenv("VTREE_LOG_LEVEL", "WARNING")

OUTPUT_MODES = ("table", "json")
