"""Order-flow drivers built on the shared matching engine.

Each driver maps (params, steps, seed) deterministically to an event
tape; identical seeds give bit-identical tapes.  All stochastic
choices are drawn from a single numpy Generator in the order
documented by each driver.
"""

from econolab.lob.session import BookSession
from econolab.lob.stigler import StiglerParams, run_stigler
from econolab.lob.garman import GarmanParams, run_garman
from econolab.lob.bps import BPSParams, run_bps
from econolab.lob.maslov import MaslovParams, run_maslov, mean_field_gap_samples
from econolab.lob.challet import ChalletStinchcombeParams, run_challet_stinchcombe
from econolab.lob.mikefarmer import MikeFarmerParams, run_mike_farmer, calibrate_cancellation
from econolab.lob.preis import PreisParams, run_preis

__all__ = [
    "BookSession",
    "StiglerParams",
    "run_stigler",
    "GarmanParams",
    "run_garman",
    "BPSParams",
    "run_bps",
    "MaslovParams",
    "run_maslov",
    "mean_field_gap_samples",
    "ChalletStinchcombeParams",
    "run_challet_stinchcombe",
    "MikeFarmerParams",
    "run_mike_farmer",
    "calibrate_cancellation",
    "PreisParams",
    "run_preis",
]
