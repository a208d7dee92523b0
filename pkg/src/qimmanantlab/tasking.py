"""Functionality for tasking and parallel computing."""

# Third-party
import dask

# First-party
import qimmanantlab.config


def delayed(fn):
    return (
        dask.delayed(fn, pure=True)
        if qimmanantlab.config.get("enable_dask")
        else fn
    )


def compute(*delayed_objs):
    """Evaluate the given objects, preserving their order.

    With dask disabled the objects are already results and are returned as is.
    Otherwise they are computed on the threaded scheduler using the configured
    number of workers.
    """
    if not qimmanantlab.config.get("enable_dask"):
        return delayed_objs
    return dask.compute(
        *delayed_objs,
        scheduler="threads",
        num_workers=qimmanantlab.config.get("num_workers"),
    )
