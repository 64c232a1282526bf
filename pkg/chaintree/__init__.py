"""chaintree: exact enumeration of tree-type diagrams built from oriented chains.

A tree-type diagram glues *k* oriented, labeled chains of edges along arcs
so that the result has no cycles. chaintree counts these diagrams in four
independent ways and implements the Prüfer-type code that puts rooted
diagrams in bijection with words over their attach points.

The package is split into the following modules:

- :mod:`chaintree.core`: chain profiles, attach points, rooted diagrams and
  sequences, with their canonical text forms;
- :mod:`chaintree.counting`: closed forms and recurrences for the counts;
- :mod:`chaintree.series`: exact formal power series and the functional
  equations of the generating functions;
- :mod:`chaintree.prufer`: the encoder and decoder;
- :mod:`chaintree.oracle`: brute-force enumeration used as ground truth;
- :mod:`chaintree.crosscheck` and :mod:`chaintree.cli`: the agreement suite
  and the command line front end;
- :mod:`chaintree.io`: JSON, CSV and DOT formats.
"""

from .core import (
    ROOT,
    AttachPoint,
    ChainProfile,
    PruferSequence,
    RootedDiagram,
    Violation,
    check_diagram,
    parse_attach_point,
    validate_diagram,
)
from .counting import count_irregular, count_regular, count_rooted
from .prufer import decode, encode

__version__ = "0.1.0"

__all__ = [
    "ROOT",
    "AttachPoint",
    "ChainProfile",
    "PruferSequence",
    "RootedDiagram",
    "Violation",
    "check_diagram",
    "count_irregular",
    "count_regular",
    "count_rooted",
    "decode",
    "encode",
    "parse_attach_point",
    "validate_diagram",
]
