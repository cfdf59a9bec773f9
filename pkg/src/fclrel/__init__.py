"""Reliability analysis of component-level redundant switch topologies for
solid-state fault current limiters.

Submodules
----------
markov      absorbing Markov chain MTTF engine
failure     part-stress failure rates and temperature factors
thermal     device losses and junction temperatures
topologies  the redundant arrangements, closed forms and break-even tests
cost        levelized cost per configuration
montecarlo  simulation oracle for state diagrams
scenario    scenario files
estimators  scikit-learn compatible wrappers
cli         command-line interface
"""

__version__ = "0.1.0"

from .exceptions import DiagramError, InfiniteMTTFError, ReliabilityError, ScenarioError
from .markov import StateDiagram, build_transition_matrix, fundamental_matrix, mttf, truncate
from .topologies import Topology, build_diagram, mttf_closed_form

__all__ = [
    "DiagramError",
    "InfiniteMTTFError",
    "ReliabilityError",
    "ScenarioError",
    "StateDiagram",
    "Topology",
    "build_diagram",
    "build_transition_matrix",
    "fundamental_matrix",
    "mttf",
    "mttf_closed_form",
    "truncate",
]
