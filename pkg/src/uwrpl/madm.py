"""Multi-attribute parent selection.

AHP (pairwise comparison matrix -> priority vector via column normalization
and row averaging, not the eigenvector method) plus min-max criterion
normalization and the weighted-sum node value used to rank candidate parents.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

__all__ = [
    "ParentRecord",
    "CriterionSpec",
    "DEFAULT_CRITERIA",
    "DEFAULT_PRIORITY",
    "ahp_weights",
    "consistent_matrix",
    "default_comparison_matrix",
    "default_weights",
    "normalize_criteria",
    "node_value",
    "select_parents",
]


@dataclass
class ParentRecord:
    """One candidate parent and its seven decision criteria."""

    parent_id: int
    hop_count: int
    residual_energy_j: float
    arssi: float
    delay_ms: float
    etx: float
    link_pdr: float
    depth_m: float
    madm_value: float = 0.0
    # bookkeeping used by the protocol layer, not by scoring
    rank: float = math.inf
    last_heard_s: float = field(default=-math.inf, compare=False)
    confirmed: bool = field(default=False, compare=False)

    def __post_init__(self):
        if not 0.0 <= self.link_pdr <= 1.0:
            raise ValueError("link_pdr must be in [0, 1]")
        if self.etx < 1.0:
            raise ValueError("etx must be >= 1")
        if self.hop_count < 0:
            raise ValueError("hop_count must be nonnegative")


@dataclass(frozen=True)
class CriterionSpec:
    """A scoring criterion: the ParentRecord field it reads and its direction."""

    name: str
    direction: str  # "benefit" (more is better) or "cost" (less is better)

    def __post_init__(self):
        if self.direction not in ("benefit", "cost"):
            raise ValueError("direction must be 'benefit' or 'cost'")


# Table order of the seven criteria; directions are the natural ones for
# upward routing (prefer high energy/ARSSI/PDR, low hops/delay/ETX/depth).
DEFAULT_CRITERIA = (
    CriterionSpec("hop_count", "cost"),
    CriterionSpec("residual_energy_j", "benefit"),
    CriterionSpec("arssi", "benefit"),
    CriterionSpec("delay_ms", "cost"),
    CriterionSpec("etx", "cost"),
    CriterionSpec("link_pdr", "benefit"),
    CriterionSpec("depth_m", "cost"),
)

# importance ordering behind the default comparison matrix, most important
# first, with consistent 2:1 ratios between adjacent ranks
DEFAULT_PRIORITY = ("arssi", "residual_energy_j", "hop_count", "depth_m",
                    "delay_ms", "etx", "link_pdr")


def ahp_weights(matrix) -> np.ndarray:
    """Priority vector from a pairwise comparison matrix.

    Column-normalizes the matrix, then averages each row. Raises ValueError
    on nonpositive entries, a non-unit diagonal, or broken reciprocal
    symmetry (a_ji must equal 1/a_ij within 1e-9 relative).
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError("matrix must be square and nonempty")
    if not np.all(a > 0.0):
        raise ValueError("matrix entries must be positive")
    if not np.allclose(np.diag(a), 1.0, rtol=1e-9, atol=0.0):
        raise ValueError("matrix diagonal must be all ones")
    if not np.allclose(a * a.T, 1.0, rtol=1e-9, atol=1e-9):
        raise ValueError("matrix must be reciprocal: a_ji = 1/a_ij")
    normalized = a / a.sum(axis=0)
    return normalized.sum(axis=1) / a.shape[0]


def consistent_matrix(weights) -> np.ndarray:
    """The perfectly consistent comparison matrix a_ij = w_i/w_j."""
    w = np.asarray(weights, dtype=float)
    if not np.all(w > 0.0):
        raise ValueError("weights must be positive")
    return np.outer(w, 1.0 / w)


def default_comparison_matrix() -> np.ndarray:
    """Consistent 7x7 matrix encoding DEFAULT_PRIORITY with 2:1 adjacent ratios."""
    raw = {name: 2.0 ** (len(DEFAULT_PRIORITY) - 1 - i)
           for i, name in enumerate(DEFAULT_PRIORITY)}
    w = np.array([raw[c.name] for c in DEFAULT_CRITERIA])
    return consistent_matrix(w / w.sum())


def default_weights() -> np.ndarray:
    """AHP weights of the default matrix, in DEFAULT_CRITERIA order."""
    return ahp_weights(default_comparison_matrix())


def normalize_criteria(candidates, spec=DEFAULT_CRITERIA) -> np.ndarray:
    """Min-max normalize the candidates' criteria into [0, 1].

    Benefit criteria map (x-min)/(max-min), cost criteria (max-x)/(max-min).
    A criterion constant across candidates (including the single-candidate
    case) maps to 1.0 for everyone.
    """
    if not candidates:
        raise ValueError("need at least one candidate")
    out = np.empty((len(candidates), len(spec)))
    for j, crit in enumerate(spec):
        col = np.array([float(getattr(c, crit.name)) for c in candidates])
        lo, hi = col.min(), col.max()
        if hi == lo:
            out[:, j] = 1.0
        elif crit.direction == "benefit":
            out[:, j] = (col - lo) / (hi - lo)
        else:
            out[:, j] = (hi - col) / (hi - lo)
    return out


def node_value(normalized_params, weights) -> float:
    """Weighted sum of one candidate's normalized criteria."""
    p = np.asarray(normalized_params, dtype=float)
    w = np.asarray(weights, dtype=float)
    if p.shape != w.shape:
        raise ValueError("params and weights must have equal length")
    return float(p @ w)


def select_parents(candidates, weights=None, spec=DEFAULT_CRITERIA,
                   k_bar: int = 4):
    """Score candidates and keep the best k_bar as the parent table.

    Returns (parent_table, preferred_parent_id): records ordered by
    descending node value with madm_value filled in, score ties broken by
    lower depth then lower parent id. The preferred parent is the head.
    """
    if not candidates:
        raise ValueError("need at least one candidate")
    if k_bar < 1:
        raise ValueError("k_bar must be >= 1")
    if weights is None:
        weights = default_weights()
    norm = normalize_criteria(candidates, spec)
    scores = [node_value(norm[i], weights) for i in range(len(candidates))]
    order = sorted(range(len(candidates)),
                   key=lambda i: (-scores[i], candidates[i].depth_m,
                                  candidates[i].parent_id))
    table = [replace(candidates[i], madm_value=scores[i]) for i in order[:k_bar]]
    return table, table[0].parent_id
