# -*- coding: utf-8 -*-

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb, log2, pi, sqrt
from typing import Tuple

import numpy as np

# Bit strings are plain str of '0'/'1' characters, leftmost character transmitted first.
Bits = str


def entropy(x: float) -> float:
    """Return the binary entropy h(x) in bits, with 0*log(0) = 0."""
    if not 0 <= x <= 1:
        raise ValueError(f'entropy() argument {x} outside [0, 1]')
    if x == 0 or x == 1:
        return 0.0
    return -x * log2(x) - (1 - x) * log2(1 - x)


def entropy_array(x: np.ndarray) -> np.ndarray:
    """Vectorised binary entropy, same convention as entropy()."""
    x = np.asarray(x, dtype=float)
    if np.any((x < 0) | (x > 1)):
        raise ValueError('entropy_array() values outside [0, 1]')
    with np.errstate(divide='ignore', invalid='ignore'):
        h = -x * np.log2(x) - (1 - x) * np.log2(1 - x)
    return np.where((x == 0) | (x == 1), 0.0, h)


def binomial(u: int, v: int) -> int:
    """Return the exact binomial coefficient, 0 when v > u."""
    return comb(u, v)


def binomial_estimate(u: int, v: int) -> Tuple[float, float]:
    """Return the (lower, upper) entropy estimate enclosing binomial(u, v).

    Valid for 1 <= v < u; both sides share the factor 2^(u*h(v/u)).
    """
    if not 1 <= v < u:
        raise ValueError(f'binomial_estimate() needs 1 <= v < u, got u={u}, v={v}')
    power = 2 ** (u * entropy(v / u))
    lower = sqrt(u / (8 * v * (u - v))) * power
    upper = sqrt(u / (2 * pi * v * (u - v))) * power
    return lower, upper


def weight(bits: Bits) -> int:
    return bits.count('1')


@dataclass(frozen=True)
class CwAddress:
    bits: Bits
    weight: int

    def __post_init__(self):
        if not self.bits or set(self.bits) - {'0', '1'}:
            raise ValueError(f'CwAddress bits must be a non-empty 0/1 string, got {self.bits!r}')
        if not 0 < self.weight < len(self.bits):
            raise ValueError(f'CwAddress weight {self.weight} must satisfy 0 < p < {len(self.bits)}')
        if weight(self.bits) != self.weight:
            raise ValueError(f'CwAddress {self.bits} has weight {weight(self.bits)}, expected {self.weight}')

    @property
    def delta(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return self.bits


def cw_rank(a: CwAddress) -> int:
    """Return the position of the address among all equal-weight words in ascending numeric order."""
    rank = 0
    ones_left = a.weight
    for i, bit in enumerate(a.bits):
        if bit == '1':
            # words sharing the prefix with a 0 here are all smaller
            rank += comb(a.delta - 1 - i, ones_left)
            ones_left -= 1
    return rank


def cw_unrank(r: int, delta: int, p: int) -> CwAddress:
    if not 0 < p < delta:
        raise ValueError(f'cw_unrank() needs 0 < p < delta, got delta={delta}, p={p}')
    if not 0 <= r < comb(delta, p):
        raise ValueError(f'cw_unrank() rank {r} outside [0, {comb(delta, p)})')
    bits = []
    ones_left = p
    for i in range(delta):
        zeros_here = comb(delta - 1 - i, ones_left)
        if r < zeros_here:
            bits.append('0')
        else:
            bits.append('1')
            r -= zeros_here
            ones_left -= 1
    return CwAddress(''.join(bits), p)


@lru_cache(maxsize=None)
def cw_supersets(received: Bits, p: int) -> Tuple[CwAddress, ...]:
    """Return every weight-p word covering the received word, in rank order.

    These are the addresses that could have been sent when the channel
    turned e = p - weight(received) ones into zeros.
    """
    missing = p - weight(received)
    if missing < 0:
        raise ValueError(f'received word {received} has weight above p={p}')
    zeros = [i for i, bit in enumerate(received) if bit == '0']
    words = []
    for chosen in combinations(zeros, missing):
        bits = list(received)
        for i in chosen:
            bits[i] = '1'
        words.append(''.join(bits))
    words.sort(key=lambda w: int(w, 2))
    return tuple(CwAddress(w, p) for w in words)
