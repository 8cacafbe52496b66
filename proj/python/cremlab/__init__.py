"""Continuous random energy model toolkit.

Thin wrapper around the compiled ``_crem`` extension. Paths are ``StepPath``
objects, covariances are ``Covariance`` objects; Monte Carlo routines return
plain dictionaries.
"""

import json as _json

from ._crem import (
    CremError,
    Covariance,
    StepPath,
    bovier_kurkova,
    brw_max,
    cascade_functional,
    f_t0,
    f_var_numeric,
    free_energy_direct,
    free_energy_nested,
    hj_nonlinearity,
    hopf,
    hopf_general,
    overlap_moments,
    psi,
    psi_gradient,
    psi_star,
    rem_beta,
    suite_names,
    two_speed,
)
from ._crem import run_suite as _run_suite

__version__ = "0.1.0"


def covariance(spec):
    """Builds a Covariance from a dict such as ``{"kind": "power", "p": 2}``
    or a bare kind name."""
    if isinstance(spec, Covariance):
        return spec
    if isinstance(spec, str):
        spec = {"kind": spec}
    return Covariance.from_json(_json.dumps(spec))


def run_suite(name, seed=None, threads=1):
    """Runs a verification suite and returns the parsed report."""
    return _json.loads(_run_suite(name, seed, threads))


__all__ = [
    "CremError",
    "Covariance",
    "StepPath",
    "bovier_kurkova",
    "brw_max",
    "cascade_functional",
    "covariance",
    "f_t0",
    "f_var_numeric",
    "free_energy_direct",
    "free_energy_nested",
    "hj_nonlinearity",
    "hopf",
    "hopf_general",
    "overlap_moments",
    "psi",
    "psi_gradient",
    "psi_star",
    "rem_beta",
    "run_suite",
    "suite_names",
    "two_speed",
]
