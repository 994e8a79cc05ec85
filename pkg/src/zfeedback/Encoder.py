# -*- coding: utf-8 -*-

import logging
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor
from typing import Deque, List, Optional, Tuple

from zfeedback.DataClasses import Bit, ChannelContractError, CodeParams, MessageIndex, \
    ParameterError, Phase, Rational, SessionError, SessionState, to_fraction
from zfeedback.zf_numerics import Bits, binomial, cw_rank, cw_supersets, cw_unrank, weight

logger = logging.getLogger(__name__)


def select_params(tau: float, delta: int, k: int, epsilon: Optional[Rational] = None) -> CodeParams:
    """Build code parameters following the rate-achieving schedule.

    t = ceil(tau*k*delta), p = floor(delta*(1/2 + tau/2)), epsilon = (1 - tau)/4
    unless given, and M is the lemma 2 guarantee.
    """
    tau_exact = to_fraction(tau)
    if not 0 < tau_exact < 1:
        raise ParameterError(f'tau={tau} must lie in (0, 1)')
    if not k >= delta >= 2:
        raise ParameterError(f'Schedule needs k >= delta >= 2, got delta={delta}, k={k}')
    t = ceil(tau_exact * k * delta)
    p = floor(delta * (Fraction(1, 2) + tau_exact / 2))
    if p in (0, delta):
        raise ParameterError(f'tau={tau} with delta={delta} gives degenerate address weight p={p}')
    if epsilon is None:
        epsilon = (1 - tau_exact) / 4
    params = CodeParams(delta=delta, p=p, epsilon=epsilon, k=k, t=t)
    if params.M < 2:
        raise ParameterError(f'Schedule tau={tau}, delta={delta}, k={k} guarantees only {params.M} message')
    logger.debug('select_params: %s', params.summary())
    return params


@dataclass(frozen=True)
class SegmentLayout:
    """Split of M messages into one segment per address, larger segments first."""
    M: int
    count: int  # number of addresses, C(delta, p)

    @property
    def q(self) -> int:
        return self.M // self.count

    @property
    def r(self) -> int:
        return self.M % self.count

    def size(self, j: int) -> int:
        return self.q + 1 if j < self.r else self.q

    def start(self, j: int) -> int:
        return j * self.q + min(j, self.r)

    def sizes(self) -> List[int]:
        return [self.size(j) for j in range(self.count)]

    def locate(self, idx: MessageIndex) -> Tuple[int, int]:
        """Return (segment rank, offset inside the segment) of a message."""
        large = self.r * (self.q + 1)
        if idx < large:
            return divmod(idx, self.q + 1)
        j, offset = divmod(idx - large, self.q)
        return self.r + j, offset

    # Eligible segments are given as sorted ranks; the ones below r are the large ones.

    def eligible_total(self, ranks: Tuple[int, ...]) -> int:
        large = bisect_left(ranks, self.r)
        return large * (self.q + 1) + (len(ranks) - large) * self.q

    def eligible_offset(self, ranks: Tuple[int, ...], position: int) -> int:
        """Return how many messages the eligible segments before ranks[position] hold."""
        large = bisect_left(ranks, self.r)
        return min(position, large) * (self.q + 1) + max(0, position - large) * self.q

    def eligible_locate(self, ranks: Tuple[int, ...], idx: MessageIndex) -> Tuple[int, int]:
        """Map an index into the concatenated eligible segments to (segment rank, offset)."""
        large = bisect_left(ranks, self.r)
        span = large * (self.q + 1)
        if idx < span:
            position, offset = divmod(idx, self.q + 1)
        else:
            position, offset = divmod(idx - span, self.q)
            position += large
        return ranks[position], offset


def partition_layout(M_i: int, delta: int, p: int) -> SegmentLayout:
    if M_i < 1:
        raise ParameterError(f'Cannot partition {M_i} messages')
    return SegmentLayout(M_i, binomial(delta, p))


@lru_cache(maxsize=None)
def eligible_ranks(received: Bits, p: int) -> Tuple[int, ...]:
    return tuple(cw_rank(a) for a in cw_supersets(received, p))


def partition_update(idx: MessageIndex, M_i: int, received: Bits, delta: int, p: int) -> Tuple[MessageIndex, int]:
    """Return (idx', M_{i+1}) after a partitioning subblock was received."""
    if len(received) != delta:
        raise ValueError(f'Received subblock {received} is not {delta} bits long')
    if weight(received) > p:
        raise ChannelContractError(f'Received subblock {received} has weight above p={p}')
    layout = partition_layout(M_i, delta, p)
    segment, offset = layout.locate(idx)
    ranks = eligible_ranks(received, p)
    position = bisect_left(ranks, segment)
    if position == len(ranks) or ranks[position] != segment:
        raise ChannelContractError(f'Sent address {cw_unrank(segment, delta, p)} is not covered by {received}')
    return layout.eligible_offset(ranks, position) + offset, layout.eligible_total(ranks)


@dataclass
class Encoder:
    params: CodeParams
    message: MessageIndex
    state: SessionState = field(init=False)
    pending: Deque[Bit] = field(init=False, default_factory=deque)
    subblock_feedback: List[Bit] = field(init=False, default_factory=list)

    def __post_init__(self):
        if not 0 <= self.message < self.params.M:
            raise ParameterError(f'Message {self.message} outside [0, {self.params.M})')
        self.state = SessionState(M_i=self.params.M, n_i=self.params.n, t_i=self.params.t, idx=self.message)
        self.sent = 0
        self.flips = 0
        self.received_ones = 0  # in the Weight phase
        self.phase = None  # phase of the last emitted bit
        self._last_sent = None
        self._dispatch()

    @property
    def finished(self) -> bool:
        return self.sent == self.params.n

    def _dispatch(self) -> None:
        phase = self.state.dispatch(self.params.delta)
        logger.debug('encoder phase %s: M_i=%s n_i=%s t_i=%s', phase.value,
                     self.state.M_i, self.state.n_i, self.state.t_i)
        if phase == Phase.UNCODED:
            length = (self.state.M_i - 1).bit_length()
            bits = format(self.state.idx, f'0{length}b') if length else ''
            self.pending = deque(int(bit) for bit in bits.ljust(self.state.n_i, '0'))

    def acknowledge(self, feedback: Bit) -> None:
        """Take the channel output of the last emitted bit."""
        if self._last_sent is None:
            raise SessionError('Feedback received before any bit was sent')
        if feedback not in (0, 1) or feedback > self._last_sent:
            raise ChannelContractError(f'Feedback {feedback} impossible for sent bit {self._last_sent}')
        flipped = feedback != self._last_sent
        if flipped:
            self.flips += 1
            if self.flips > self.params.t:
                raise ChannelContractError(f'More than t={self.params.t} flips observed')
        self._last_sent = None
        self.state.n_i -= 1

        if self.phase == Phase.PARTITIONING:
            self.subblock_feedback.append(feedback)
            if len(self.subblock_feedback) == self.params.delta:
                self._finish_subblock()
        elif self.phase == Phase.WEIGHT:
            self.received_ones += feedback
            self.state.t_i -= flipped

    def _finish_subblock(self) -> None:
        received = ''.join(str(bit) for bit in self.subblock_feedback)
        self.subblock_feedback = []
        errors = self.params.p - weight(received)
        idx, M_next = partition_update(self.state.idx, self.state.M_i, received,
                                       self.params.delta, self.params.p)
        self.state.idx, self.state.M_i = idx, M_next
        self.state.t_i -= errors
        self._dispatch()

    def next_bit(self, feedback: Optional[Bit] = None) -> Bit:
        """Return the next channel input; feedback is the output for the previous bit."""
        if feedback is not None:
            self.acknowledge(feedback)
        if self._last_sent is not None:
            raise SessionError('Feedback for the previous bit is missing')
        if self.finished:
            raise SessionError(f'All {self.params.n} bits were already sent')

        self.phase = self.state.phase
        if self.phase == Phase.PARTITIONING:
            if not self.pending:
                segment, _ = partition_layout(self.state.M_i, self.params.delta, self.params.p).locate(self.state.idx)
                self.pending = deque(int(bit) for bit in cw_unrank(segment, self.params.delta, self.params.p).bits)
            bit = self.pending.popleft()
        elif self.phase == Phase.WEIGHT:
            bit = 1 if self.received_ones < self.state.idx else 0
        elif self.phase == Phase.UNCODED:
            bit = self.pending.popleft()
        else:
            raise SessionError(f'No bit to send in phase {self.phase.value}')
        self.sent += 1
        self._last_sent = bit
        return bit
