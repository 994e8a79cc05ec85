# -*- coding: utf-8 -*-

"""Exact maximum message counts for small blocks via the half-lie game.

A questioner asks q yes/no questions about a hidden candidate; the
responder may lie at most t times and only when the truthful answer is
yes. The game state keeps, per lie count e, how many candidates are still
consistent with the answers after e lies. Asking about a subset a of the
candidates leads to

    yes: a                                  (unasked candidates would need a forbidden lie)
    no:  x_e - a_e + a_(e-1) for every e    (asked candidates spend a lie, a_t drops out)
"""

import logging
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import List, Optional, Set, Tuple

from zfeedback.DataClasses import CodeParams, FeasibilityLimitError, GameState, Limits, MessageIndex
from zfeedback.zf_channel import walk_outputs

logger = logging.getLogger(__name__)

Occupancy = Tuple[int, ...]


def _yes_child(a: Occupancy) -> Occupancy:
    return a


def _no_child(x: Occupancy, a: Occupancy) -> Occupancy:
    return tuple(x[e] - a[e] + (a[e - 1] if e > 0 else 0) for e in range(len(x)))


def _volume(lies: int, w: int) -> int:
    """Fewest distinct answer strings of a candidate whose lightest string has w yes answers."""
    return sum(comb(w, j) for j in range(min(lies, w) + 1))


def _volume_exceeded(x: Occupancy, q: int) -> bool:
    """True when the candidates cannot own pairwise distinct answer strings of length q.

    Every candidate owns its lightest string plus at least _volume() strings
    in total; the lightest strings are distinct, so at most C(q, w) of them
    have weight w. Pairing the most lies with the lightest weights gives the
    cheapest assignment.
    """
    t = len(x) - 1
    budget = 2 ** q
    total = 0
    w, room = 0, 1
    for e in range(t + 1):  # e ascending means lies left descending
        count = x[e]
        while count:
            if w > q:
                return True
            used = min(count, room)
            total += used * _volume(t - e, w)
            if total > budget:
                return True
            count -= used
            room -= used
            if room == 0:
                w += 1
                room = comb(q, w) if w <= q else 0
    return False


def _moves(x: Occupancy):
    """Choices of a_0..a_(t-1), balanced questions first."""
    ranges = []
    for count in x[:-1]:
        middle = count // 2
        order = [middle]
        for d in range(1, count + 1):
            if middle + d <= count:
                order.append(middle + d)
            if middle - d >= 0:
                order.append(middle - d)
        ranges.append(order)
    return product(*ranges)


@lru_cache(maxsize=None)
def _winnable(x: Occupancy, q: int) -> bool:
    total = sum(x)
    if total <= 1:
        return True
    if q == 0:
        return False
    t = len(x) - 1
    # candidates that can answer "no" to everything
    if sum(x[e] for e in range(t + 1) if t - e >= q) >= 2:
        return False
    first = next(e for e in range(t + 1) if x[e])
    most_lies = t - first
    if most_lies == 0:
        return total <= 2 ** q
    if total <= q - most_lies + 1:
        return True
    if _volume_exceeded(x, q):
        return False

    last = x[-1]
    for head in _moves(x):
        # the no child improves and the yes child worsens as a_t grows
        low, high = 0, last
        while low < high:
            middle = (low + high) // 2
            if _winnable(_no_child(x, head + (middle,)), q - 1):
                high = middle
            else:
                low = middle + 1
        a = head + (low,)
        if _winnable(_no_child(x, a), q - 1) and _winnable(_yes_child(a), q - 1):
            return True
    return False


def _check_limits(x: Occupancy, limits: Limits) -> None:
    if len(x) - 1 > limits.max_lies:
        raise FeasibilityLimitError(f'{len(x) - 1} lies exceed the limit of {limits.max_lies}')
    if sum(x) > limits.max_candidates:
        raise FeasibilityLimitError(f'{sum(x)} candidates exceed the limit of {limits.max_candidates}')


def winnable(s: GameState, limits: Optional[Limits] = None) -> bool:
    """Return True iff the questioner can isolate the candidate within s.q questions."""
    _check_limits(s.x, limits or Limits())
    return _winnable(tuple(s.x), s.q)


def max_messages(n: int, t: int, limits: Optional[Limits] = None) -> int:
    """Return M(n, t), the largest message count with a successful strategy."""
    limits = limits or Limits()
    lies = min(t, n)

    def start(M):
        return GameState((M,) + (0,) * lies, n)

    # doubling from 1, capped by 2^n which the uncoded strategy attains without errors
    low, high = 1, 2
    while high <= 2 ** n and winnable(start(high), limits):
        low, high = high, high * 2
    high = min(high, 2 ** n + 1)
    while high - low > 1:
        middle = (low + high) // 2
        if winnable(start(middle), limits):
            low = middle
        else:
            high = middle
    logger.debug('M(%d, %d) = %d', n, t, low)
    return low


def enumerate_outputs(params: CodeParams, m: MessageIndex, limits: Optional[Limits] = None) -> Set[str]:
    limits = limits or Limits()
    if params.n > limits.max_enumerate_n:
        raise FeasibilityLimitError(f'Blocklength {params.n} exceeds the enumeration limit {limits.max_enumerate_n}')
    return {word for word, _ in walk_outputs(params, m)}


def outputs_disjoint(params: CodeParams, limits: Optional[Limits] = None) -> bool:
    """Return True iff no received word is reachable from two messages."""
    seen = set()
    for m in range(params.M):
        outputs = enumerate_outputs(params, m, limits)
        if seen & outputs:
            logger.info('Output sets overlap at message %d', m)
            return False
        seen |= outputs
    return True


def halflie_asymptotic(n: int, t: int) -> float:
    """Leading-order growth 2^(n+t) t!/n^t of M(n, t), for comparison only."""
    return 2.0 ** (n + t) * factorial(t) / n ** t


def oracle_table(max_n: int, max_t: int, limits: Optional[Limits] = None) -> List[Tuple[int, int, int, float]]:
    rows = []
    for n in range(1, max_n + 1):
        for t in range(max_t + 1):
            rows.append((n, t, max_messages(n, t, limits), halflie_asymptotic(n, t)))
    return rows
