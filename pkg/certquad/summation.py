"""
certquad Summation
Neumaier-compensated running sum for quadrature terms
"""

from typing import Iterable


class NeumaierAccumulator:
    """Incremental Kahan-Neumaier summation.

    Keeps the running sum plus a carry holding the low-order bits lost at
    each addition. Unlike plain Kahan the carry stays correct when the new
    value is larger than the sum so far, which happens at the centre of a
    trapezoidal sum taken from one tail to the other.
    """

    def __init__(self, value: float = 0.0):
        self.sum = float(value)
        self.carry = 0.0
        self.abs_sum = abs(self.sum)
        self.count = 0

    def add(self, value: float) -> None:
        total = self.sum + value
        if abs(self.sum) >= abs(value):
            self.carry += (self.sum - total) + value
        else:
            self.carry += (value - total) + self.sum
        self.sum = total
        self.abs_sum += abs(value)
        self.count += 1

    def extend(self, values: Iterable[float]) -> None:
        for value in values:
            self.add(value)

    @property
    def value(self) -> float:
        return self.sum + self.carry

    def __float__(self) -> float:
        return self.value

    def __repr__(self):
        return f"NeumaierAccumulator(value={self.value!r}, count={self.count})"


def compensated_sum(values: Iterable[float]) -> float:
    acc = NeumaierAccumulator()
    acc.extend(values)
    return acc.value
