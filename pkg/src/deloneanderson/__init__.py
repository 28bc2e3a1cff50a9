"""Finite-volume spectral statistics of random Schrodinger operators on Delone sets."""

__version__ = "0.1.0"

from .colouring import (
    ColouredWindow,
    SingleSiteDistribution,
    cdf_check,
    power_law_dist,
    sample_colouring,
    translate,
    uniform_dist,
)
from .hamiltonian import (
    OperatorMatrix,
    SingleSitePotential,
    assemble,
    box_potential,
    bump_potential,
    potential_on_grid,
)
from .pointset import (
    DeloneCertificate,
    Pattern,
    PointSetSpec,
    Window,
    annulus_example,
    lattice,
    materialize,
    pattern_frequency,
    perturbed_lattice,
    verify_delone,
)
from .spectrum import (
    EOnSpectrumError,
    IDSCurve,
    count_below,
    count_below_dense,
    finite_volume_ids,
    ground_state_energy,
)

__all__ = [
    "ColouredWindow",
    "DeloneCertificate",
    "EOnSpectrumError",
    "IDSCurve",
    "OperatorMatrix",
    "Pattern",
    "PointSetSpec",
    "SingleSiteDistribution",
    "SingleSitePotential",
    "Window",
    "annulus_example",
    "assemble",
    "box_potential",
    "bump_potential",
    "cdf_check",
    "count_below",
    "count_below_dense",
    "finite_volume_ids",
    "ground_state_energy",
    "lattice",
    "materialize",
    "pattern_frequency",
    "perturbed_lattice",
    "potential_on_grid",
    "power_law_dist",
    "sample_colouring",
    "translate",
    "uniform_dist",
    "verify_delone",
]
