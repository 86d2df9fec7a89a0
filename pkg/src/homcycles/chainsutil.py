"""Tiny shared helpers for sorted identifier arrays."""

from __future__ import annotations

import numpy as np


def searchsorted_member(sorted_ids: np.ndarray, value) -> bool:
    """Membership test in a sorted unique int array."""
    pos = np.searchsorted(sorted_ids, value)
    return pos < sorted_ids.size and sorted_ids[pos] == value
