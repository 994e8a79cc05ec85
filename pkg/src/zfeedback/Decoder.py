# -*- coding: utf-8 -*-

import logging
from dataclasses import dataclass, field
from typing import Iterable, List

from zfeedback.DataClasses import Bit, ChannelContractError, CodeParams, MessageIndex, \
    Phase, SessionError, SessionState
from zfeedback.Encoder import SegmentLayout, eligible_ranks, partition_layout
from zfeedback.zf_numerics import Bits, weight

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PartitionStep:
    received: Bits
    M_i: int
    r_i: int

    def errors(self, p: int) -> int:
        return p - weight(self.received)


@dataclass
class Decoder:
    params: CodeParams
    state: SessionState = field(init=False)
    step_log: List[PartitionStep] = field(init=False, default_factory=list)
    received_tail: List[Bit] = field(init=False, default_factory=list)

    def __post_init__(self):
        self.state = SessionState(M_i=self.params.M, n_i=self.params.n, t_i=self.params.t)
        self.subblock: List[Bit] = []
        self.observed = 0
        self.state.dispatch(self.params.delta)

    @property
    def phase(self) -> Phase:
        return self.state.phase

    @property
    def finished(self) -> bool:
        return self.observed == self.params.n

    def layout(self) -> SegmentLayout:
        return partition_layout(self.state.M_i, self.params.delta, self.params.p)

    def observe(self, bit: Bit) -> None:
        if self.finished:
            raise SessionError(f'More than n={self.params.n} bits observed')
        if bit not in (0, 1):
            raise ValueError(f'Received symbol {bit!r} is not a bit')
        self.observed += 1
        self.state.n_i -= 1
        if self.state.phase == Phase.PARTITIONING:
            self.subblock.append(bit)
            if len(self.subblock) == self.params.delta:
                self._finish_subblock()
        else:
            self.received_tail.append(bit)

    def _finish_subblock(self) -> None:
        received = ''.join(str(bit) for bit in self.subblock)
        self.subblock = []
        p = self.params.p
        errors = p - weight(received)
        if errors < 0:
            raise ChannelContractError(f'Subblock {received} has weight above p={p}')
        if errors > self.state.t_i:
            raise ChannelContractError(f'Subblock {received} implies {errors} errors, only {self.state.t_i} left')
        layout = self.layout()
        self.step_log.append(PartitionStep(received, self.state.M_i, layout.r))
        self.state.M_i = layout.eligible_total(eligible_ranks(received, p))
        self.state.t_i -= errors
        self.state.dispatch(self.params.delta)
        logger.debug('decoder step %d: received %s, M=%s, t=%s, phase %s', len(self.step_log),
                     received, self.state.M_i, self.state.t_i, self.state.phase.value)

    def _final_index(self) -> MessageIndex:
        M_final = self.state.M_i
        tail = ''.join(str(bit) for bit in self.received_tail)
        if self.state.phase == Phase.WEIGHT:
            idx = weight(tail)
            if idx >= M_final:
                raise ChannelContractError(f'Received weight {idx} with only {M_final} messages left')
        elif self.state.phase == Phase.UNCODED:
            length = (M_final - 1).bit_length()
            idx = int(tail[:length], 2) if length else 0
            if idx >= M_final:
                raise ChannelContractError(f'Uncoded index {idx} with only {M_final} messages left')
        else:
            if M_final != 1:
                raise ChannelContractError(f'Block ended during partitioning with {M_final} messages left')
            idx = 0
        return idx

    def finish(self) -> MessageIndex:
        """Return the decoded message once the whole block was observed."""
        if not self.finished:
            raise SessionError(f'Only {self.observed} of {self.params.n} bits observed')
        idx = self._final_index()
        p = self.params.p
        for step in reversed(self.step_log):
            layout = partition_layout(step.M_i, self.params.delta, p)
            segment, offset = layout.eligible_locate(eligible_ranks(step.received, p), idx)
            idx = layout.start(segment) + offset
        return idx

    @classmethod
    def decode(cls, params: CodeParams, word: Iterable[Bit]) -> MessageIndex:
        decoder = cls(params)
        for bit in word:
            decoder.observe(int(bit))
        return decoder.finish()
