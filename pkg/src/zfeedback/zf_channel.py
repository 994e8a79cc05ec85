# -*- coding: utf-8 -*-

import logging
from copy import deepcopy
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Tuple, Type

import numpy as np

from zfeedback.DataClasses import Bit, ChannelContractError, CodeParams, FeasibilityLimitError, \
    Limits, MessageIndex, ParameterError, Phase, Transcript, TranscriptRecord
from zfeedback.Decoder import Decoder
from zfeedback.Encoder import Encoder, eligible_ranks
from zfeedback.zf_numerics import binomial

logger = logging.getLogger(__name__)

# policy(step, sent, remaining budget, transcript so far, receiver) -> flip?
Policy = Callable[[int, Bit, int, Transcript, Decoder], bool]


@dataclass
class Adversary:
    policy: Policy
    budget: Optional[int] = None  # defaults to the error budget t of the session
    name: str = 'custom'
    remaining: int = field(init=False, default=0)

    def bind(self, params: CodeParams) -> None:
        """Prepare for a new session."""
        self.remaining = params.t if self.budget is None else self.budget
        reset = getattr(self.policy, 'reset', None)
        if reset is not None:
            reset()

    def decide(self, step: int, sent: Bit, transcript: Transcript, receiver: Decoder) -> bool:
        # a sent 0 is never corrupted
        if sent != 1 or self.remaining <= 0:
            return False
        if self.policy(step, sent, self.remaining, transcript, receiver):
            self.remaining -= 1
            return True
        return False


def no_adversary() -> Adversary:
    return Adversary(lambda *args: False, budget=0, name='none')


def always_flip_adversary(budget: Optional[int] = None) -> Adversary:
    return Adversary(lambda *args: True, budget=budget, name='always')


def _eligible_after(receiver: Decoder, prefix: str) -> int:
    """Messages left after the current subblock if every later bit arrives as 0."""
    delta, p = receiver.params.delta, receiver.params.p
    received = prefix.ljust(delta, '0')
    return receiver.layout().eligible_total(eligible_ranks(received, p))


def greedy_policy(step: int, sent: Bit, remaining: int, transcript: Transcript, receiver: Decoder) -> bool:
    if receiver.phase != Phase.PARTITIONING:
        return True
    prefix = ''.join(str(bit) for bit in receiver.subblock)
    return _eligible_after(receiver, prefix + '0') >= _eligible_after(receiver, prefix + '1')


def greedy_adversary() -> Adversary:
    """Flip when that leaves the decoder at least as many messages, ties flip."""
    return Adversary(greedy_policy, name='greedy')


class RandomPolicy:
    def __init__(self, seed: int):
        self.seed = seed
        self.reset()

    def reset(self) -> None:
        self.rng = np.random.default_rng(self.seed)

    def __call__(self, step, sent, remaining, transcript, receiver) -> bool:
        return bool(self.rng.random() < 0.5)


def random_adversary(seed: int) -> Adversary:
    return Adversary(RandomPolicy(seed), name=f'random({seed})')


def run_session(params: CodeParams, m: MessageIndex, adv: Adversary,
                decoder_cls: Type[Decoder] = Decoder) -> Tuple[MessageIndex, Transcript]:
    """Send message m through the Z-channel with noiseless feedback."""
    if not 0 <= m < params.M:
        raise ParameterError(f'Message {m} outside [0, {params.M})')
    encoder = Encoder(params, m)
    decoder = decoder_cls(params)
    transcript = Transcript(budget=params.t)
    adv.bind(params)
    received = None
    for step in range(params.n):
        sent = encoder.next_bit(received)
        flip = adv.decide(step, sent, transcript, decoder)
        received = 0 if flip else sent
        transcript.append(TranscriptRecord(step, sent, received, encoder.phase))
        decoder.observe(received)
    if received is not None:
        encoder.acknowledge(received)
    decoded = decoder.finish()
    logger.debug('session m=%s adversary=%s flips=%d decoded=%s', m, adv.name, transcript.flips, decoded)
    return decoded, transcript


def path_count(params: CodeParams) -> int:
    """Upper bound on the adversary leaves of one session."""
    return sum(binomial(params.n, j) for j in range(params.t + 1))


def walk_outputs(params: CodeParams, m: MessageIndex,
                 decoder_cls: Type[Decoder] = Decoder) -> Iterator[Tuple[str, Optional[MessageIndex]]]:
    """Yield (received word, decoded message) for every admissible adversary.

    The decoded message is None when the decoder rejects the word.
    """
    stack = [(Encoder(params, m), decoder_cls(params), '', params.t, None)]
    while stack:
        encoder, decoder, word, budget, forced = stack.pop()
        try:
            if forced is not None:
                encoder.acknowledge(forced)
                decoder.observe(forced)
                word += str(forced)
            while len(word) < params.n:
                sent = encoder.next_bit()
                if sent == 1 and budget > 0:
                    branch = deepcopy((encoder, decoder), memo={id(params): params})
                    stack.append((branch[0], branch[1], word, budget - 1, 0))
                encoder.acknowledge(sent)
                decoder.observe(sent)
                word += str(sent)
            decoded = decoder.finish()
        except ChannelContractError as error:
            logger.debug('m=%s word %s rejected: %s', m, word, error)
            decoded = None
        yield word, decoded


def verify_exhaustive(params: CodeParams, m: MessageIndex, decoder_cls: Type[Decoder] = Decoder,
                      limits: Optional[Limits] = None) -> bool:
    """Return True iff every admissible adversary leaves message m decodable."""
    limits = limits or Limits()
    leaves = path_count(params)
    if leaves > limits.path_limit:
        raise FeasibilityLimitError(f'{leaves} adversary paths exceed the limit of {limits.path_limit}')
    for word, decoded in walk_outputs(params, m, decoder_cls):
        if decoded != m:
            logger.info('m=%s decoded as %s from %s', m, decoded, word)
            return False
    return True
