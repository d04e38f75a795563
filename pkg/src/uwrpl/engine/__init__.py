"""Simulation engine: scenarios, topology, and the event loop."""

from .core import Simulator, run_scenario, transmit
from .scenario import ExperimentPlan, Scenario, parse_plan, parse_scenario
from .topology import NodePlacement, generate_topology, mobility_step, stream_rng

__all__ = [
    "Simulator", "run_scenario", "transmit",
    "ExperimentPlan", "Scenario", "parse_plan", "parse_scenario",
    "NodePlacement", "generate_topology", "mobility_step", "stream_rng",
]
