"""Export of rooted diagrams in star form for plotting with Graphviz' dot.

Every element is drawn as a triangle with one box per colored slot; an
element hangs from the box of the slot it is attached to, or from the root
node ``0``. For example, after writing the output to ``diagram.gv``::

    dot -Tpng -O diagram.gv
"""
from ..core import ROOT_TOKEN, AttachPoint, RootedDiagram, check_diagram, element_name

ROOT_NODE = "root"


def element_node(element: int) -> str:
    return f"elem_{element_name(element)}"


def point_node(point: AttachPoint) -> str:
    """Return the node ID of an attach point.

    Element names and slot names can coincide (``e27`` is both element 27 and
    slot 27 of element ``e``), so node IDs carry a kind prefix and the
    canonical text only appears in the label.
    """
    if point.is_root:
        return ROOT_NODE
    return f"slot_{point.render()}"


def render_dot(diagram: RootedDiagram, name: str = "diagram") -> str:
    """Return DOT source for a valid *diagram*.

    Nodes and edges are written in color order, so equal diagrams always give
    identical text. Raises `InvariantViolation` for invalid diagrams.
    """
    check_diagram(diagram)
    profile = diagram.profile
    lines = [f"digraph {name} {{"]
    lines.append(f'\t{ROOT_NODE} [label="{ROOT_TOKEN}", shape=circle];')
    for element in profile.elements():
        star = element_node(element)
        lines.append(f'\t{star} [label="{element_name(element)}", shape=triangle];')
        for subscript in range(1, profile.slot_count(element) + 1):
            slot = AttachPoint(element, subscript)
            lines.append(f'\t{point_node(slot)} [label="{slot.render()}", shape=box];')
            lines.append(f"\t{star} -> {point_node(slot)} [arrowhead=none];")
    for element, point in diagram:
        lines.append(f"\t{point_node(point)} -> {element_node(element)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
