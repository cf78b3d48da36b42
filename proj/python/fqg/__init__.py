"""Exact computations on the Kac-Paljutkin and Sekine finite quantum groups."""

from ._fqg import *  # noqa: F401,F403
from ._fqg import FormatError, QuantumGroup, Cyclo, Element, Corep  # noqa: F401
