"""
socshield core package.

Lightweight stream-cipher bus encryption between a secure-world trusted
application and a secure hardware IP, with a deterministic SoC bus simulator and
a desk-scale benchmark harness.
"""

from loguru import logger

__all__ = ["__version__", "__spec_version__"]

__version__ = "0.1.0"
__spec_version__ = 1

# Library modules log through loguru; the CLIs re-enable output in setup_logging.
logger.disable("socshield")
