"""Network containers and the canonical edge ordering.

Two value types represent a directed weighted network without self-loops:

* :class:`RestrictedNetwork` -- edge weights on the unit interval, the latent
  scale on which the exponential-family model and all samplers operate.
* :class:`ObservedNetwork` -- real-valued edge weights as observed in data.

Both store a dense ``n x n`` matrix whose diagonal is unused (zeroed on
construction) and are immutable after construction, so they can be shared
freely across concurrent chains.  Every module in this package agrees on one
canonical edge order: row-major over the off-diagonal entries,
``(0,1), (0,2), ..., (0,n-1), (1,0), (1,2), ...``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Tuple

import numpy as np

from .validation import check_names_unique, check_node_table, check_weight_matrix

__all__ = [
    "RestrictedNetwork",
    "ObservedNetwork",
    "CovariateSet",
    "edge_iter",
    "edge_index_pairs",
    "clamp_to_unit",
    "CLAMP_TOLERANCE",
    "BOUNDARY_OFFSET",
]

# Entries may drift this far outside [0, 1] before clamp_to_unit rejects them.
CLAMP_TOLERANCE = 1e-12
# Clamped entries are pulled this far inside the boundary so that inverse-cdf
# transforms and the unit-interval density stay finite.
BOUNDARY_OFFSET = 1e-10


@dataclass(frozen=True)
class RestrictedNetwork:
    """Directed network with all edge weights in [0, 1].

    ``weights[i, j]`` is the weight of the directed edge i -> j.  The diagonal
    is unused.  ``m = n * (n - 1)`` counts the free entries.
    """

    weights: np.ndarray

    def __post_init__(self):
        arr = check_weight_matrix(self.weights, "weights")
        off = ~np.eye(arr.shape[0], dtype=bool)
        bad = (arr[off] < 0.0) | (arr[off] > 1.0)
        if bad.any():
            i, j = np.argwhere(off & ((arr < 0.0) | (arr > 1.0)))[0]
            raise ValueError(
                f"restricted weight out of [0, 1] at ({i}, {j}): {arr[i, j]!r}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "weights", arr)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @property
    def m(self) -> int:
        n = self.n
        return n * (n - 1)

    def edge_values(self) -> np.ndarray:
        """Edge weights as a length-m vector in canonical order."""
        return offdiag_values(self.weights)


@dataclass(frozen=True)
class ObservedNetwork:
    """Directed network with arbitrary finite real edge weights."""

    weights: np.ndarray

    def __post_init__(self):
        arr = check_weight_matrix(self.weights, "weights")
        arr.setflags(write=False)
        object.__setattr__(self, "weights", arr)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @property
    def m(self) -> int:
        n = self.n
        return n * (n - 1)

    def edge_values(self) -> np.ndarray:
        return offdiag_values(self.weights)


def offdiag_values(weights: np.ndarray) -> np.ndarray:
    """Off-diagonal entries of a square matrix in canonical (row-major) order."""
    n = weights.shape[0]
    mask = ~np.eye(n, dtype=bool)
    return weights[mask]


def offdiag_insert(values: np.ndarray, n: int) -> np.ndarray:
    """Inverse of :func:`offdiag_values`: scatter a length-m vector back into
    an ``n x n`` matrix with zero diagonal."""
    out = np.zeros((n, n), dtype=np.float64)
    mask = ~np.eye(n, dtype=bool)
    out[mask] = values
    return out


def edge_index_pairs(n: int) -> np.ndarray:
    """The (i, j) index pairs of all directed edges in canonical order, shape (m, 2)."""
    idx = [(i, j) for i in range(n) for j in range(n) if i != j]
    return np.array(idx, dtype=np.intp)


def edge_iter(net) -> Iterator[Tuple[int, int, float]]:
    """Iterate ``(i, j, weight)`` over all i != j in canonical order.

    Yields exactly ``m = n * (n - 1)`` entries.  This order is the one
    canonical edge order used everywhere in the package (statistics traces,
    Gibbs sweeps, serialized edge lists).
    """
    w = net.weights
    n = w.shape[0]
    for i in range(n):
        for j in range(n):
            if i != j:
                yield i, j, float(w[i, j])


def clamp_to_unit(weights) -> RestrictedNetwork:
    """Build a :class:`RestrictedNetwork`, clipping tiny numerical drift.

    Off-diagonal entries must lie within ``[-CLAMP_TOLERANCE, 1 + CLAMP_TOLERANCE]``;
    anything further out is rejected with its index.  Entries inside the band are
    clipped into ``[BOUNDARY_OFFSET, 1 - BOUNDARY_OFFSET]`` so downstream
    quantile transforms never see an exact 0 or 1.
    """
    arr = check_weight_matrix(weights, "weights")
    n = arr.shape[0]
    off = ~np.eye(n, dtype=bool)
    out_of_band = off & ((arr < -CLAMP_TOLERANCE) | (arr > 1.0 + CLAMP_TOLERANCE))
    if out_of_band.any():
        i, j = np.argwhere(out_of_band)[0]
        raise ValueError(
            f"entry at ({i}, {j}) = {arr[i, j]!r} lies outside "
            f"[-{CLAMP_TOLERANCE}, 1 + {CLAMP_TOLERANCE}]"
        )
    np.clip(arr, BOUNDARY_OFFSET, 1.0 - BOUNDARY_OFFSET, out=arr)
    np.fill_diagonal(arr, 0.0)
    return RestrictedNetwork(arr)


@dataclass(frozen=True)
class CovariateSet:
    """Named node-level and dyad-level covariates for a network of n nodes.

    Node covariates are length-n columns; dyadic covariates are ``n x n``
    matrices.  A node covariate enters a model as a "sender" effect (its value
    repeated along rows, i.e. constant within each sending node) or a
    "receiver" effect (constant within each receiving node); see
    :meth:`sender_matrix` / :meth:`receiver_matrix`.
    """

    n: int
    node_covariates: dict = field(default_factory=dict)
    dyadic_covariates: dict = field(default_factory=dict)

    def __post_init__(self):
        check_names_unique(list(self.node_covariates) + list(self.dyadic_covariates))
        node = {
            name: check_node_table(col, self.n, name)
            for name, col in self.node_covariates.items()
        }
        dyad = {}
        for name, mat in self.dyadic_covariates.items():
            arr = check_weight_matrix(mat, f"dyadic covariate {name!r}")
            if arr.shape[0] != self.n:
                raise ValueError(
                    f"dyadic covariate {name!r} is {arr.shape[0]}x{arr.shape[0]}, "
                    f"network has {self.n} nodes"
                )
            dyad[name] = arr
        for d in (node, dyad):
            for v in d.values():
                v.setflags(write=False)
        object.__setattr__(self, "node_covariates", node)
        object.__setattr__(self, "dyadic_covariates", dyad)

    def sender_matrix(self, name: str) -> np.ndarray:
        """Expand node covariate ``name`` to a row-constant dyadic matrix."""
        col = self._node(name)
        out = np.tile(col[:, None], (1, self.n))
        np.fill_diagonal(out, 0.0)
        return out

    def receiver_matrix(self, name: str) -> np.ndarray:
        """Expand node covariate ``name`` to a column-constant dyadic matrix."""
        col = self._node(name)
        out = np.tile(col[None, :], (self.n, 1))
        np.fill_diagonal(out, 0.0)
        return out

    def dyadic_matrix(self, name: str) -> np.ndarray:
        if name not in self.dyadic_covariates:
            raise KeyError(f"no dyadic covariate named {name!r}")
        return np.array(self.dyadic_covariates[name])

    def _node(self, name: str) -> np.ndarray:
        if name not in self.node_covariates:
            raise KeyError(f"no node covariate named {name!r}")
        return self.node_covariates[name]
