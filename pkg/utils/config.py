import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

TRUE_VALUES = {"1", "true", "yes", "on"}
FALSE_VALUES = {"0", "false", "no", "off", ""}


def _env_bool(name: str, default: str) -> bool:
    value = os.getenv(name, default).strip().lower()
    if value in TRUE_VALUES:
        return True
    if value in FALSE_VALUES:
        return False
    raise EnvironmentError(f"{name} must be a boolean (true/false), got {value!r}. Please check your .env file.")


def _env_positive_int(name: str, default: str) -> int:
    value = os.getenv(name, default).strip()
    try:
        number = int(value)
    except ValueError:
        number = 0
    if number < 1:
        raise EnvironmentError(f"{name} must be a positive integer, got {value!r}. Please check your .env file.")
    return number


# Logging Configuration
LOG_LEVEL = os.getenv("IRQSIM_LOG_LEVEL", "INFO")  # Logging level, e.g., DEBUG, INFO, ERROR
LOG_TO_FILE = _env_bool("IRQSIM_LOG_TO_FILE", "false")
LOG_DIR = os.getenv("IRQSIM_LOG_DIR", "logs")

# Sweep Configuration
DEFAULT_JOBS = _env_positive_int("IRQSIM_JOBS", "1")
