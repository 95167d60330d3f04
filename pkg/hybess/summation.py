"""
Compensated Summation

Error-free transformation (TwoSum) accumulation for finite series sums.
Works element-wise, so a whole grid of series can be accumulated at once;
complex values are handled component-wise by the same float operations.
"""

from typing import Iterable, Tuple

import numpy as np


def two_sum(a, b) -> Tuple:
    """Return (s, e) with s = fl(a + b) and a + b = s + e exactly"""
    s = a + b
    b_virtual = s - a
    a_virtual = s - b_virtual
    err = (a - a_virtual) + (b - b_virtual)
    return s, err


class CompensatedSum:
    """Running Neumaier sum, like math.fsum but incremental and array-aware"""

    def __init__(self, initial=0.0):
        self._sum = np.asarray(initial)
        self._comp = np.zeros_like(self._sum)

    def add(self, value) -> None:
        s, err = two_sum(self._sum, value)
        self._sum = s
        self._comp = self._comp + err

    @property
    def total(self):
        return self._sum + self._comp


def compensated_sum(terms: Iterable, initial=0.0):
    """Sum an iterable of scalars or equally shaped arrays"""
    acc = CompensatedSum(initial)
    for term in terms:
        acc.add(term)
    return acc.total
