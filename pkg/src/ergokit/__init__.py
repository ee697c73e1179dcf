"""ergokit: numerical laboratory for composition-operator dynamics.

Builds truncated l_p / c_0 realizations of weighted shift symbols,
m-homogeneous polynomials and their pullbacks, and runs finite-horizon
probes for power boundedness, Cesàro boundedness and mean ergodicity,
with reproducible report emission.
"""

from ergokit.errors import (
    ConfigError,
    ErgokitError,
    SpaceMismatchError,
    SupportOverflowError,
)
from ergokit.seqspace import SeqVec, SpaceSpec, basis, dual_pair, norm, random_unit

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "ConfigError",
    "ErgokitError",
    "SpaceMismatchError",
    "SupportOverflowError",
    "SpaceSpec",
    "SeqVec",
    "norm",
    "dual_pair",
    "basis",
    "random_unit",
]
