"""Agent-based market simulators and a stylized-fact statistics toolkit.

Subpackages
-----------
``econolab.lob``
    Limit-order-book state machine and seven zero-intelligence /
    empirical order-flow drivers (Stigler, Garman, reaction-diffusion,
    Maslov, deposition-evaporation, Mike-Farmer, trend-coupled Preis).
``econolab.wealth``
    Kinetic wealth-exchange Monte Carlo engine, mean-field solver and
    the Cobb-Douglas competitive-price bridge.
``econolab.games``
    Minority-game family (basic, evolutionary, adaptive crossover) and
    the Kolkata Paise Restaurant problem with analytic baselines.
``econolab.agents``
    Excess-demand price models: herding clusters, two-population
    fundamentalist/chartist dynamics, threshold volatility feedback.
``econolab.stats``
    Estimators: returns and clocks, ACF, Hurst, tail fits, covariance
    estimators for asynchronous data, random-matrix spectra, minimum
    spanning trees, order-book diagnostics.
``econolab.cli``
    ``simulate`` / ``analyze`` / ``sweep`` entry points with flat
    key=value configs and deterministic replicated execution.
"""

from econolab.book import LimitOrderBook, Order, UnknownOrderError, apply_event, replay
from econolab.tape import EventTape, TapeBuilder

__version__ = "0.1.0"

__all__ = [
    "EventTape",
    "TapeBuilder",
    "LimitOrderBook",
    "Order",
    "UnknownOrderError",
    "apply_event",
    "replay",
    "__version__",
]
