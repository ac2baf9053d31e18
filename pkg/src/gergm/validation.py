"""Input validation helpers shared by the network containers and estimators."""

from __future__ import annotations

import numpy as np

__all__ = ["check_weight_matrix", "check_node_table", "check_names_unique"]


def check_weight_matrix(weights, name: str = "weights", min_nodes: int = 2) -> np.ndarray:
    """Coerce ``weights`` to a square float64 matrix with finite off-diagonal entries.

    Returns a C-contiguous copy; the diagonal is zeroed since it carries no
    meaning for a network without self-loops.
    """
    arr = np.array(weights, dtype=np.float64, copy=True, order="C")
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {arr.shape}")
    n = arr.shape[0]
    if n < min_nodes:
        raise ValueError(f"{name} needs at least {min_nodes} nodes, got {n}")
    np.fill_diagonal(arr, 0.0)
    if not np.all(np.isfinite(arr)):
        i, j = np.argwhere(~np.isfinite(arr))[0]
        raise ValueError(f"{name} has non-finite entry at ({i}, {j})")
    return arr


def check_node_table(values, n: int, name: str) -> np.ndarray:
    """Validate a length-n node covariate column of finite reals."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] != n:
        raise ValueError(f"node covariate {name!r} must have length {n}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"node covariate {name!r} has non-finite entries")
    return arr.copy()


def check_names_unique(names) -> None:
    seen = set()
    for name in names:
        if name in seen:
            raise ValueError(f"duplicate covariate name {name!r}")
        seen.add(name)
