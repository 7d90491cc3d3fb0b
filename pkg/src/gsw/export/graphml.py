"""GraphML export (behind --format graphml; DOT is the default)."""

from __future__ import annotations

from xml.etree import ElementTree as ET

from ..core import WorkspaceInstance

_GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"

_NODE_KEYS = (
    ("kind", "d0"),
    ("actor", "d1"),
    ("role", "d2"),
    ("state", "d3"),
    ("text", "d4"),
)
_EDGE_KEYS = (
    ("label", "d5"),
    ("attributes", "d6"),
)


def export_graphml(w: WorkspaceInstance) -> str:
    ET.register_namespace("", _GRAPHML_NS)
    root = ET.Element(f"{{{_GRAPHML_NS}}}graphml")
    for name, key_id in _NODE_KEYS:
        ET.SubElement(
            root,
            f"{{{_GRAPHML_NS}}}key",
            {"id": key_id, "for": "node", "attr.name": name, "attr.type": "string"},
        )
    for name, key_id in _EDGE_KEYS:
        ET.SubElement(
            root,
            f"{{{_GRAPHML_NS}}}key",
            {"id": key_id, "for": "edge", "attr.name": name, "attr.type": "string"},
        )
    graph = ET.SubElement(
        root, f"{{{_GRAPHML_NS}}}graph", {"id": "gsw", "edgedefault": "directed"}
    )

    def add_data(parent, key_id: str, value: str) -> None:
        data = ET.SubElement(parent, f"{{{_GRAPHML_NS}}}data", {"key": key_id})
        data.text = value

    for node in w.nodes:
        el = ET.SubElement(graph, f"{{{_GRAPHML_NS}}}node", {"id": node.node_id})
        add_data(el, "d0", "semantic")
        add_data(el, "d1", node.actor.mention)
        add_data(el, "d2", node.role)
        add_data(el, "d3", node.state)
    for i, question in enumerate(w.questions, 1):
        el = ET.SubElement(graph, f"{{{_GRAPHML_NS}}}node", {"id": f"q{i}"})
        add_data(el, "d0", "question")
        add_data(el, "d4", question.text)
    for i, edge in enumerate(w.edges):
        el = ET.SubElement(
            graph,
            f"{{{_GRAPHML_NS}}}edge",
            {"id": f"e{i}", "source": edge.source, "target": edge.target},
        )
        add_data(el, "d5", edge.label)
        if edge.attributes:
            add_data(el, "d6", edge.attributes)

    ET.indent(root)
    return ET.tostring(root, encoding="unicode", xml_declaration=True)
