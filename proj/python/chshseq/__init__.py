"""Mixed sequential CHSH scenarios: analysis, sampling and search."""

import json as _json

from ._core import (
    ChshSeqError,
    __version__,
    chsh_operator,
    chsh_value,
    identity_observable,
    marginal_deviation,
    max_chsh_over_states,
    mixed_joint_distribution,
    pauli,
    search,
    simulate,
    singlet_state,
    spin_observable,
)
from ._core import analyze_scenario_json as _analyze_scenario_json


def analyze_scenario(scenario):
    """Full analysis report of a scenario given as a dict or JSON string."""
    text = scenario if isinstance(scenario, str) else _json.dumps(scenario)
    return _json.loads(_analyze_scenario_json(text))


__all__ = [
    "ChshSeqError",
    "__version__",
    "analyze_scenario",
    "chsh_operator",
    "chsh_value",
    "identity_observable",
    "marginal_deviation",
    "max_chsh_over_states",
    "mixed_joint_distribution",
    "pauli",
    "search",
    "simulate",
    "singlet_state",
    "spin_observable",
]
