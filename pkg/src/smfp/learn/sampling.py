# Copyright (c) 2019 Dan Ryan
# MIT License <https://opensource.org/licenses/mit>

"""
Index-level sampling: systematic every-k selection, ratio splits and random
oversampling of the minority class.
"""

import logging
from typing import List, Sequence, Tuple

import numpy as np

from smfp.exceptions import DegenerateData, InvalidArgument
from smfp.features import LabeledSet

log = logging.getLogger(__name__)


def systematic_sample(n_total: int, every: int) -> List[int]:
    """
    Select the last record of every block of ``every`` records.

    :param int n_total: Number of records in the ordered corpus
    :param int every: Block size
    :raises InvalidArgument: If ``every`` is smaller than 1
    :return: Indices ``every - 1, 2 * every - 1, ...`` below ``n_total``
    :rtype: List[int]
    """

    if every < 1:
        raise InvalidArgument(f"sampling interval must be at least 1, got {every}")
    if n_total < 0:
        raise InvalidArgument(f"record count must not be negative, got {n_total}")
    return list(range(every - 1, n_total, every))


def systematic_split(n_total: int, test_every: int) -> Tuple[List[int], List[int]]:
    """Split ``range(n_total)`` into (train, test).

    Every ``test_every``-th record is held out for testing.
    """
    test = systematic_sample(n_total, test_every)
    held_out = set(test)
    train = [i for i in range(n_total) if i not in held_out]
    return train, test


def ratio_split(
    n_total: int, test_fraction: float, seed: int = 0
) -> Tuple[List[int], List[int]]:
    """
    Split ``range(n_total)`` into (train, test) by a seeded shuffle.

    The test part holds ``round(n_total * test_fraction)`` indices; both parts are
    returned in ascending order so corpus order is kept.
    """

    if not 0.0 <= test_fraction <= 1.0:
        raise InvalidArgument(f"test fraction must lie in [0, 1], got {test_fraction}")
    order = np.random.default_rng(seed).permutation(n_total)
    n_test = int(round(n_total * test_fraction))
    test = sorted(int(i) for i in order[:n_test])
    train = sorted(int(i) for i in order[n_test:])
    return train, test


def ros_indices(labels: Sequence[int], seed: int = 0) -> List[int]:
    """
    Row indices that balance ``labels`` by random oversampling.

    Every original index is kept in order, followed by minority indices drawn
    uniformly with replacement until both classes have the majority count.

    :raises DegenerateData: If either class is missing
    """

    y = np.asarray(labels, dtype=int)
    positives = np.flatnonzero(y == 1)
    negatives = np.flatnonzero(y == 0)
    if positives.size == 0 or negatives.size == 0:
        raise DegenerateData("random oversampling needs both classes present")
    if positives.size == negatives.size:
        return list(range(len(y)))
    minority, majority = sorted((positives, negatives), key=len)
    extra = majority.size - minority.size
    draws = np.random.default_rng(seed).choice(minority, size=extra, replace=True)
    log.info(
        f"oversampling {minority.size} minority rows with {extra} copies "
        f"to match {majority.size}"
    )
    return list(range(len(y))) + [int(i) for i in draws]


def ros_oversample(data: LabeledSet, seed: int = 0) -> LabeledSet:
    """
    Duplicate random minority instances until the classes are balanced.

    :param LabeledSet data: The imbalanced set
    :param int seed: Seed of the draw
    :raises DegenerateData: If the set holds a single class
    :rtype: LabeledSet
    """

    return data.subset(ros_indices(data.labels, seed=seed))


__all__ = [
    "systematic_sample",
    "systematic_split",
    "ratio_split",
    "ros_indices",
    "ros_oversample",
]
