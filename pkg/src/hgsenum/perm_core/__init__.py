"""Exact permutation-group arithmetic on fully materialised groups."""

from .group import (PermGroup, core, coset_action, derived_length, derived_series,
                    normal_closure, orbit_stabilizer)
from .perm import Perm, closure
