"""
Hierarquia de exceções do projeto.

Todas as falhas previsíveis derivam de `VTreeError`, o que permite à CLI e à
API traduzir erros em códigos de saída e respostas HTTP num único ponto.
Resultados tri-estado (instável até o horizonte, desconhecido) NÃO são
exceções: são valores retornados pelas operações.
"""


class VTreeError(Exception):
    """Base para todos os erros do pacote."""


class ConfigurationError(VTreeError):
    """Configuração incompatível: posto divergente, posto esgotado, primo inválido."""


class RunConfigError(ConfigurationError):
    """Exceção específica para erros na configuração de execução."""


class PreconditionError(VTreeError):
    """Pré-condição de uma operação violada pelos argumentos."""


class DomainError(VTreeError):
    """Operação indefinida para a entrada (ex.: valor singular de uma folha)."""


class InputParseError(VTreeError):
    """Texto ou JSON de entrada malformado."""


class StabilityHorizonError(VTreeError):
    """Valor estável não certificado dentro do horizonte da família."""

    def __init__(self, message: str, tried: int):
        super().__init__(f"{message} (prefixo testado: {tried} membros)")
        self.tried = tried


class SupUnderdeterminedError(VTreeError):
    """Supremo gamma_A não reconhecível a partir do prefixo gerado."""
