import logging
import os
from datetime import datetime

from rich.console import Console
from rich.logging import RichHandler

from utils.config import LOG_DIR


def setup_logging(log_level: str = "INFO", log_to_file: bool = False, log_dir: str = LOG_DIR) -> logging.Logger:
    """
    Sets up rich console logging and optional file logging for all irqsim modules.

    Console output goes to standard error; standard output carries results only.

    Args:
        log_level (str): The logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL).
        log_to_file (bool): If True, logs are also written to a dated file in `log_dir`.
        log_dir (str): Directory for log files.

    Returns:
        logging.Logger: The "irqsim" logger used by the command line.
    """
    # Convert log level string to logging level
    level = getattr(logging, log_level.upper(), logging.INFO)

    # Modules log under their own package names, so handlers sit on the root logger.
    root = logging.getLogger()
    root.setLevel(level)

    # Prevent duplicate handlers if this is called multiple times
    for handler in [h for h in root.handlers if getattr(h, "irqsim_handler", False)]:
        root.removeHandler(handler)
        handler.close()

    console_handler = RichHandler(
        console=Console(stderr=True),
        level=level,
        show_path=False,
        rich_tracebacks=True,
    )
    console_handler.setFormatter(logging.Formatter("%(name)s - %(message)s"))
    console_handler.irqsim_handler = True
    root.addHandler(console_handler)

    # Optional file handler
    if log_to_file:
        os.makedirs(log_dir, exist_ok=True)
        log_file = os.path.join(log_dir, f"irqsim-{datetime.now().strftime('%Y%m%d')}.log")
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setLevel(level)
        file_handler.setFormatter(
            logging.Formatter(
                "%(asctime)s - %(levelname)s - %(name)s - %(message)s",
                datefmt="%Y-%m-%d %H:%M:%S",
            )
        )
        file_handler.irqsim_handler = True
        root.addHandler(file_handler)

    return logging.getLogger("irqsim")
