from .commands import CliInvocation, run_command  # noqa: F401
from .config import config_from_dict, parse_config  # noqa: F401
from .verification import PROPERTIES, PropertyResult, run_acceptance  # noqa: F401
