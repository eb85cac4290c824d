"""
Exceções do projeto agent-hamiltonians
======================================

Toda falha carrega um ``code`` estável (kebab-case), ``details`` e uma
categoria que a CLI converte em código de saída.
"""

import logging
import math

logger = logging.getLogger(__name__)

# Sinal distinto para custo infinito (violação de suporte), nunca um float grande
INFINITE_COST = math.inf

EXIT_CODES = {
    "config": 2,
    "numeric": 3,
    "io": 4,
    "internal": 1,
}


class AgentHamiltonianError(Exception):
    """
    Erro base do projeto
    """

    category = "internal"
    default_code = "internal-error"

    def __init__(self, message="", code=None, **details):
        self.code = code or self.default_code
        self.details = details
        super().__init__(message or get_error_message(self.code))

    def to_dict(self):
        return {"error": str(self), "code": self.code, "details": self.details}


class ValidationError(AgentHamiltonianError):
    """Dados de entrada que violam um invariante"""

    category = "config"
    default_code = "invariant-violation"


class ConfigError(ValidationError):
    """Arquivo de configuração inválido"""

    default_code = "parse-error"


class DimensionError(AgentHamiltonianError):
    """Dimensões incompatíveis ou acima do limite"""

    category = "numeric"
    default_code = "dimension-mismatch"


class NumericalError(AgentHamiltonianError):
    """Falha numérica durante avaliação ou integração"""

    category = "numeric"
    default_code = "nonfinite"


class ConvergenceError(NumericalError):
    """Processo iterativo não convergiu"""

    default_code = "convergence-failure"


class ArtifactIOError(AgentHamiltonianError):
    """Falha ao ler ou escrever artefatos"""

    category = "io"
    default_code = "io-error"


def get_error_message(code):
    """
    Retorna mensagem amigável baseada no código de erro
    """
    messages = {
        "invariant-violation": "Valor viola um invariante",
        "missing-parameter": "Parâmetro obrigatório ausente",
        "unknown-kind": "Tipo de gerador desconhecido",
        "non-projector": "Operador informado não é um projetor",
        "non-hermitian": "Operador não é hermitiano",
        "non-unitary": "Operador não é unitário",
        "invalid-factor-index": "Índice de fator tensorial inválido",
        "non-resolution-of-identity": "Projetores não decompõem a identidade",
        "trace-nonpreserving": "Realização do canal não preserva o traço",
        "halt-projector-dim-mismatch": "Projetor de parada com dimensão incompatível",
        "mixed-side": "Termos clássicos e quânticos misturados",
        "metric-unknown": "Métrica desconhecida",
        "series-too-short": "Série temporal curta demais",
        "nonpositive-magnitude": "Série contém magnitude não positiva",
        "missing-reader": "Leitor QTC externo não informado",
        "parse-error": "Erro de sintaxe no arquivo de configuração",
        "unknown-key": "Chave desconhecida na configuração",
        "dimension-mismatch": "Dimensões incompatíveis",
        "dimension-cap-exceeded": "Dimensão acima do limite permitido",
        "nonfinite": "Valor não finito encontrado",
        "step-too-large": "Passo de integração grande demais",
        "positivity-violation": "Operador densidade perdeu positividade",
        "trace-drift": "Traço do operador densidade desviou de 1",
        "zero-probability-outcome": "Resultado com probabilidade nula sorteado",
        "convergence-failure": "Processo iterativo não convergiu",
        "io-error": "Falha de entrada/saída",
        "internal-error": "Erro interno",
    }
    return messages.get(code, "Erro desconhecido")


def get_exit_code(exc):
    """
    Retorna o código de saída da CLI para uma exceção
    """
    if isinstance(exc, AgentHamiltonianError):
        return EXIT_CODES.get(exc.category, 1)
    if isinstance(exc, OSError):
        return EXIT_CODES["io"]
    return EXIT_CODES["internal"]


def format_error(exc):
    """
    Formata uma exceção como dicionário para o fluxo de erro
    """
    if isinstance(exc, AgentHamiltonianError):
        return exc.to_dict()

    if isinstance(exc, OSError):
        return {"error": str(exc), "code": "io-error", "details": {"filename": getattr(exc, "filename", None)}}

    logger.error(f"Erro não tratado: {str(exc)}", exc_info=True)
    return {"error": "Erro interno", "code": "internal-error", "details": {"exception_type": type(exc).__name__}}
