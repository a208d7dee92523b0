"""Top-level package for qimmanant-lab."""

# Standard library
import importlib.metadata

__author__ = "qimmanant-lab developers"
__version__ = importlib.metadata.version("qimmanant-lab")

del importlib
