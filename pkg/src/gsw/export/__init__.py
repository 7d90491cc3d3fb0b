"""Graph exporters (DOT default, GraphML optional)."""

from .dot import export_dot
from .graphml import export_graphml

__all__ = ["export_dot", "export_graphml"]
