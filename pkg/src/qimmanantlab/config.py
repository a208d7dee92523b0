"""Global configuration for qimmanantlab.

The configuration holds process-wide tunables of the exact engine, such as the
dimension above which operators switch to sparse storage or the number of
workers used by the verification harness. Values are read through :func:`get`
which falls back on :data:`DEFAULTS`.

"""

# Standard library
from contextlib import contextmanager
from typing import Any

DEFAULTS: dict[str, Any] = {
    # operators of larger dimension are stored as sparse matrices
    "dense_threshold": 256,
    # maximal number of spanning elements of a truncated ideal component
    "ideal_span_cap": 50_000,
    "enable_dask": False,
    "num_workers": 1,
    # Capelli identities with three auxiliary copies need a degree-six span
    "capelli_allow_m3": False,
}

config: dict[str, Any] = {}


@contextmanager
def set_values(config: dict[str, Any] = config, **kwargs):
    """Override tunables for the duration of a with block.

    Parameters
    ----------
    config : dict, optional
        mapping holding the overrides, defaults to the module configuration
    **kwargs :
        tunables to set, every key must be one of :data:`DEFAULTS`

    Raises
    ------
    KeyError
        if a key is not a known tunable.

    """
    unknown = sorted(set(kwargs) - set(DEFAULTS))
    if unknown:
        raise KeyError(f"unknown configuration keys {unknown}")

    missing = object()
    previous = {key: config.get(key, missing) for key in kwargs}
    config.update(kwargs)
    try:
        yield config
    finally:
        for key, value in previous.items():
            if value is missing:
                config.pop(key, None)
            else:
                config[key] = value


def get(key: str, config: dict[str, Any] = config) -> Any:
    """Current value of a tunable, the override if set and the default otherwise."""
    if key in config:
        return config[key]
    return DEFAULTS[key]
