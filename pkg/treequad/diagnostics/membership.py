"""
Point-to-leaf membership by brute force over leaf boxes.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from ..config import settings
from ..core import Container, IntegralResult
from ..problems import Domain


def locate_in_boxes(
    points: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    leaf_ids: np.ndarray,
    domain: Domain,
) -> np.ndarray:
    """
    Leaf id of each point, -1 for points outside the domain.

    Leaf boxes are half-open ``[lower, upper)`` except on the domain's upper
    faces, which belong to the adjacent leaf.

    Args:
        points: (n, D) locations
        lower: (L, D) leaf lower corners
        upper: (L, D) leaf upper corners
        leaf_ids: (L,) ids aligned with the corners
        domain: Domain the leaves tile
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    closed_top = upper >= domain.upper
    located = np.full(pts.shape[0], -1, dtype=np.int64)
    for start in range(0, pts.shape[0], settings.MEMBERSHIP_CHUNK):
        chunk = pts[start : start + settings.MEMBERSHIP_CHUNK, None, :]
        below = (chunk < upper) | (closed_top & (chunk <= upper))
        hit = ((chunk >= lower) & below).all(axis=2)
        found = hit.any(axis=1)
        first = hit.argmax(axis=1)
        located[start : start + chunk.shape[0]] = np.where(found, leaf_ids[first], -1)
    located[~np.asarray(domain.contains(pts), dtype=bool).reshape(-1)] = -1
    return located


def membership(
    x: np.ndarray, leaves: Sequence[Container], domain: Optional[Domain] = None
) -> Optional[int]:
    """
    Id of the leaf containing x, or None when x is outside the domain.

    ``domain`` defaults to the bounding box of the leaves.
    """
    lower = np.stack([leaf.bounds.lower for leaf in leaves])
    upper = np.stack([leaf.bounds.upper for leaf in leaves])
    ids = np.asarray([leaf.id for leaf in leaves], dtype=np.int64)
    if domain is None:
        domain = Domain(lower.min(axis=0), upper.max(axis=0))
    found = int(locate_in_boxes(np.asarray(x, dtype=float)[None, :], lower, upper, ids, domain)[0])
    return None if found < 0 else found


def locate_result_leaves(result: IntegralResult, points: np.ndarray) -> np.ndarray:
    """Leaf ids for points against a tree result, using its locator when it has one."""
    if result.locator is not None:
        return result.locator.locate(points)
    domain = Domain(result.lower.min(axis=0), result.upper.max(axis=0))
    return locate_in_boxes(points, result.lower, result.upper, result.leaf_ids, domain)
