"""embed-export: contextual embeddings in leantext's file formats."""

__version__ = "0.1.0"

from .export import ExportSpec, export

__all__ = ["__version__", "ExportSpec", "export"]
