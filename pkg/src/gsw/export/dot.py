"""DOT rendering of workspace graphs for human inspection."""

from __future__ import annotations

from ..core import WorkspaceInstance


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(w: WorkspaceInstance) -> str:
    """Deterministic DOT digraph: semantic nodes labeled actor / role: state
    on two lines, question nodes drawn as notes, predicate labels with their
    qualifier in brackets."""
    if w.is_empty():
        return "digraph gsw {}"
    lines = ["digraph gsw {"]
    for node in w.nodes:
        label = f"{_escape(node.actor.mention)}\\n{_escape(node.role)}: {_escape(node.state)}"
        lines.append(f'  "{_escape(node.node_id)}" [label="{label}"];')
    for i, question in enumerate(w.questions, 1):
        lines.append(f'  "q{i}" [label="{_escape(question.text)}", shape=note];')
    for edge in w.edges:
        label = edge.label
        if edge.attributes:
            label = f"{edge.label} [{edge.attributes}]"
        lines.append(
            f'  "{_escape(edge.source)}" -> "{_escape(edge.target)}" [label="{_escape(label)}"];'
        )
    lines.append("}")
    return "\n".join(lines)
