"""
Veredito tri-estado para perguntas decididas por prefixos ou oráculos limitados.
"""

from enum import Enum


class Verdict(str, Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, flag: bool) -> "Verdict":
        return cls.TRUE if flag else cls.FALSE
