"""Default caps, overridable through the environment."""

import os

ELEMENT_CAP_ENV = "HGSENUM_ELEMENT_CAP"
SUBGROUP_CAP_ENV = "HGSENUM_SUBGROUP_CAP"


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    value = int(raw)
    if value < 1:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


_overrides = {}


def set_caps(element=None, subgroup=None):
    """Process-wide cap overrides (None leaves a cap unchanged)."""
    for name, value in ((ELEMENT_CAP_ENV, element), (SUBGROUP_CAP_ENV, subgroup)):
        if value is not None:
            if value < 1:
                raise ValueError(f"caps must be positive, got {value}")
            _overrides[name] = value


def reset_caps():
    _overrides.clear()


def element_cap():
    return _overrides.get(ELEMENT_CAP_ENV) or _env_int(ELEMENT_CAP_ENV, 200_000)


def subgroup_cap():
    return _overrides.get(SUBGROUP_CAP_ENV) or _env_int(SUBGROUP_CAP_ENV, 1_000_000)


# groups up to this order get a materialised Cayley table
TABLE_LIMIT = 12_000
