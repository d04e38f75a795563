"""uwrpl: RPL-based routing for underwater acoustic sensor networks.

A deterministic discrete-event simulator and protocol library for the RPLUW
(static) and RPLUWM (mobility-aware) DODAG routing protocols over a
physics-based acoustic channel model, with AHP/MADM parent selection and a
metrics pipeline (PDR, ALTN, delays, lifetimes, convergence time).
"""

__version__ = "0.1.0"
