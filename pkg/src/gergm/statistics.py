"""Weighted network statistics, their alpha-weighted variants, and change statistics.

Six directed subgraph statistics are supported, each a sum of products of edge
weights over a family of subgraphs:

===================  ============================================================
kind                 raw sum over subgraphs
===================  ============================================================
reciprocity          sum_{i<j} x_ij x_ji
cyclic_triads        sum_{i<j<k} (x_ij x_jk x_ki + x_ik x_kj x_ji)
in_two_stars         sum_i sum_{j<k, j,k != i} x_ji x_ki
out_two_stars        sum_i sum_{j<k, j,k != i} x_ij x_ik
edge_density         sum_{i != j} x_ij
transitive_triads    sum over ordered distinct (a,b,c) of x_ab x_bc x_ac
===================  ============================================================

Two dampening schemes temper the combinatorial growth of these sums:

* ``mode="outside"`` raises the whole sum to a power ``alpha`` in (0, 1],
  which couples every edge's change statistic to the global statistic value.
* ``mode="inside"`` raises each subgraph product to ``alpha`` before summing,
  which keeps dependence local to the subgraphs an edge participates in.
* ``mode="none"`` leaves the raw sum untouched (equivalent to alpha = 1).

``normalize=True`` divides the raw sum by the number of subgraph terms before
any outer exponent, turning e.g. the edge sum into the mean edge weight.

Change statistics (exact partial derivatives with respect to a single edge)
are available in closed form for every kind and mode; with ``mode="none"`` or
``alpha = 1`` every statistic is multilinear, so its change statistic does not
involve the edge itself -- the property that makes Gibbs sampling possible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from .network import RestrictedNetwork

__all__ = [
    "STATISTIC_KINDS",
    "WEIGHTING_MODES",
    "StatisticSpec",
    "StatisticSet",
    "SingularGradientError",
    "subgraph_count",
    "stat_value",
    "stat_vector",
    "change_gradient",
    "change_gradient_matrix",
    "theta_dot_gradient",
    "theta_gradient_matrix",
]

STATISTIC_KINDS = (
    "reciprocity",
    "cyclic_triads",
    "in_two_stars",
    "out_two_stars",
    "edge_density",
    "transitive_triads",
)

WEIGHTING_MODES = ("none", "inside", "outside")


class SingularGradientError(ValueError):
    """Raised when a change statistic is unbounded (zero statistic, alpha < 1)."""


@dataclass(frozen=True)
class StatisticSpec:
    """One network statistic: a kind, its weighting mode, and exponent.

    ``alpha`` must lie in (0, 1].  ``mode="none"`` ignores ``alpha``.
    """

    kind: str
    alpha: float = 1.0
    mode: str = "none"
    normalize: bool = False

    def __post_init__(self):
        if self.kind not in STATISTIC_KINDS:
            raise ValueError(
                f"unknown statistic kind {self.kind!r}; expected one of {STATISTIC_KINDS}"
            )
        if self.mode not in WEIGHTING_MODES:
            raise ValueError(
                f"unknown weighting mode {self.mode!r}; expected one of {WEIGHTING_MODES}"
            )
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")

    @property
    def linear(self) -> bool:
        """True when the statistic is multilinear in each edge (Gibbs-safe)."""
        return self.mode == "none" or self.alpha == 1.0

    def label(self) -> str:
        if self.mode == "none" or self.alpha == 1.0:
            return self.kind
        return f"{self.kind}[{self.mode}:{self.alpha:g}]"


@dataclass(frozen=True)
class StatisticSet:
    """An ordered collection of statistics with their coefficients."""

    specs: Tuple[StatisticSpec, ...]
    theta: np.ndarray = field(default=None)

    def __post_init__(self):
        specs = tuple(self.specs)
        theta = np.zeros(len(specs)) if self.theta is None else np.asarray(
            self.theta, dtype=np.float64
        ).copy()
        if theta.shape != (len(specs),):
            raise ValueError(
                f"theta has length {theta.shape}, need {len(specs)} to match specs"
            )
        theta.setflags(write=False)
        object.__setattr__(self, "specs", specs)
        object.__setattr__(self, "theta", theta)

    @property
    def p(self) -> int:
        return len(self.specs)

    def with_theta(self, theta) -> "StatisticSet":
        return StatisticSet(self.specs, np.asarray(theta, dtype=np.float64))

    def labels(self) -> Tuple[str, ...]:
        base = [s.label() for s in self.specs]
        out, seen = [], {}
        for lab in base:
            k = seen.get(lab, 0)
            seen[lab] = k + 1
            out.append(lab if k == 0 else f"{lab}.{k + 1}")
        return tuple(out)


def subgraph_count(kind: str, n: int) -> int:
    """Number of subgraph terms in the raw sum, used by ``normalize``."""
    pairs = n * (n - 1) // 2
    triples = n * (n - 1) * (n - 2) // 6
    if kind == "reciprocity":
        return pairs
    if kind == "cyclic_triads":
        return 2 * triples
    if kind in ("in_two_stars", "out_two_stars"):
        return n * (n - 1) * (n - 2) // 2
    if kind == "edge_density":
        return n * (n - 1)
    if kind == "transitive_triads":
        return 6 * triples
    raise ValueError(f"unknown statistic kind {kind!r}")


def _raw_value(kind: str, w: np.ndarray) -> float:
    """Raw subgraph sum on a weight matrix with zero diagonal."""
    if kind == "edge_density":
        return float(w.sum())
    if kind == "reciprocity":
        return float(0.5 * (w * w.T).sum())
    if kind == "in_two_stars":
        col = w.sum(axis=0)
        return float(0.5 * ((col * col).sum() - (w * w).sum()))
    if kind == "out_two_stars":
        row = w.sum(axis=1)
        return float(0.5 * ((row * row).sum() - (w * w).sum()))
    if kind == "cyclic_triads":
        # each 3-cycle appears once per starting node in the ordered trace
        return float(np.trace(w @ w @ w) / 3.0)
    if kind == "transitive_triads":
        return float((w * (w @ w)).sum())
    raise ValueError(f"unknown statistic kind {kind!r}")


def _raw_gradient(kind: str, w: np.ndarray) -> np.ndarray:
    """Matrix of partial derivatives of the raw sum w.r.t. each edge."""
    n = w.shape[0]
    if kind == "edge_density":
        g = np.ones_like(w)
    elif kind == "reciprocity":
        g = w.T.copy()
    elif kind == "in_two_stars":
        g = w.sum(axis=0)[None, :] - w
    elif kind == "out_two_stars":
        g = w.sum(axis=1)[:, None] - w
    elif kind == "cyclic_triads":
        g = (w @ w).T.copy()
    elif kind == "transitive_triads":
        g = w @ w.T + w.T @ w + w @ w
    else:
        raise ValueError(f"unknown statistic kind {kind!r}")
    g[np.eye(n, dtype=bool)] = 0.0
    return g


def stat_value(x: RestrictedNetwork, spec: StatisticSpec) -> float:
    """Evaluate one statistic on a restricted network."""
    w = x.weights
    if spec.mode == "inside" and spec.alpha != 1.0:
        w = w**spec.alpha
    raw = _raw_value(spec.kind, w)
    if spec.normalize:
        raw /= subgraph_count(spec.kind, x.n)
    if spec.mode == "outside" and spec.alpha != 1.0:
        return float(raw**spec.alpha)
    return float(raw)


def stat_vector(x: RestrictedNetwork, stat_set: StatisticSet) -> np.ndarray:
    """Evaluate every statistic in the set; component order matches the specs."""
    return np.array([stat_value(x, s) for s in stat_set.specs], dtype=np.float64)


def change_gradient_matrix(x: RestrictedNetwork, spec: StatisticSpec) -> np.ndarray:
    """Exact partial derivative of :func:`stat_value` w.r.t. every edge at once.

    Returns an ``n x n`` matrix with zero diagonal.  Raises
    :class:`SingularGradientError` where the derivative is unbounded:
    outside weighting with alpha < 1 at a zero statistic, or inside weighting
    with alpha < 1 at a zero edge that some subgraph product depends on.
    """
    w = x.weights
    n = x.n
    count = subgraph_count(spec.kind, n) if spec.normalize else 1

    if spec.mode == "inside" and spec.alpha != 1.0:
        a = spec.alpha
        wa = w**a
        grad_inner = _raw_gradient(spec.kind, wa)
        zero = (w == 0.0) & (~np.eye(n, dtype=bool))
        if np.any(zero & (grad_inner != 0.0)):
            i, j = np.argwhere(zero & (grad_inner != 0.0))[0]
            raise SingularGradientError(
                f"inside-weighted gradient unbounded at zero edge ({i}, {j})"
            )
        with np.errstate(divide="ignore", invalid="ignore"):
            factor = a * w ** (a - 1.0)
        grad = np.where(grad_inner == 0.0, 0.0, grad_inner * factor)
        return grad / count

    grad = _raw_gradient(spec.kind, w) / count
    if spec.mode == "outside" and spec.alpha != 1.0:
        raw = _raw_value(spec.kind, w) / count
        if raw == 0.0:
            raise SingularGradientError(
                f"gradient singular at zero statistic ({spec.kind}, alpha={spec.alpha})"
            )
        grad = spec.alpha * raw ** (spec.alpha - 1.0) * grad
    return grad


def change_gradient(x: RestrictedNetwork, spec: StatisticSpec, i: int, j: int) -> float:
    """Exact partial derivative of :func:`stat_value` w.r.t. the edge (i, j).

    With ``mode="none"`` or ``alpha = 1`` the result never involves the edge
    weight itself, since every supported statistic is multilinear.
    """
    if i == j:
        raise ValueError("change statistic is undefined on the diagonal")
    w = x.weights
    n = x.n
    count = subgraph_count(spec.kind, n) if spec.normalize else 1

    if spec.mode == "inside" and spec.alpha != 1.0:
        a = spec.alpha
        grad_inner = _raw_gradient(spec.kind, w**a)[i, j]
        if w[i, j] == 0.0:
            if grad_inner == 0.0:
                return 0.0
            raise SingularGradientError(
                f"inside-weighted gradient unbounded at zero edge ({i}, {j})"
            )
        return float(grad_inner * a * w[i, j] ** (a - 1.0) / count)

    grad = _raw_gradient(spec.kind, w)[i, j] / count
    if spec.mode == "outside" and spec.alpha != 1.0:
        raw = _raw_value(spec.kind, w) / count
        if raw == 0.0:
            raise SingularGradientError(
                f"gradient singular at zero statistic ({spec.kind}, alpha={spec.alpha})"
            )
        grad = spec.alpha * raw ** (spec.alpha - 1.0) * grad
    return float(grad)


def theta_dot_gradient(x: RestrictedNetwork, stat_set: StatisticSet, i: int, j: int) -> float:
    """Coefficient-weighted change statistic ``sum_k theta_k d h_k / d x_ij``.

    This is the exponential tilt of the conditional edge density used by the
    Gibbs sampler.
    """
    total = 0.0
    for theta_k, spec in zip(stat_set.theta, stat_set.specs):
        if theta_k != 0.0:
            total += theta_k * change_gradient(x, spec, i, j)
    return float(total)


def theta_gradient_matrix(x: RestrictedNetwork, stat_set: StatisticSet) -> np.ndarray:
    """All-edges version of :func:`theta_dot_gradient`, shape ``n x n``."""
    total = np.zeros_like(x.weights)
    for theta_k, spec in zip(stat_set.theta, stat_set.specs):
        if theta_k != 0.0:
            total += theta_k * change_gradient_matrix(x, spec)
    return total
