# -*- coding: utf-8 -*-

from dataclasses import dataclass, field, InitVar
from enum import Enum
from fractions import Fraction
from math import ceil
from typing import Iterator, List, Optional, Tuple, Union

from zfeedback.zf_numerics import binomial


# Each type alias has its legal values described in comments
Bit = int  # 0 or 1
MessageIndex = int  # Zero-based index into {0, ..., M-1}, arbitrary precision
Rational = Union[Fraction, int, float, str]  # Anything Fraction(str(x)) accepts, e.g. '1/4' or 0.25


class ParameterError(ValueError):
    """Code parameters, schedule or configuration are invalid."""


class ChannelContractError(Exception):
    """Observed data cannot occur on a Z-channel within the error budget."""


class SessionError(Exception):
    """Encoder or decoder used outside the bounds of one block."""


class FeasibilityLimitError(Exception):
    """An exhaustive search would exceed its configured limit."""


class Phase(Enum):
    PARTITIONING = 'partitioning'
    WEIGHT = 'weight'
    UNCODED = 'uncoded'
    DONE = 'done'


def to_fraction(value: Rational) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        # 0.1 should mean 1/10, not its binary expansion
        return Fraction(str(value))
    return Fraction(value)


@dataclass
class Limits:
    path_limit: int = 10 ** 6  # adversary leaves explored per message
    max_candidates: int = 4096  # oracle candidate count
    max_lies: int = 8  # oracle lie budget
    max_enumerate_n: int = 20  # blocklength for output set enumeration

    def __post_init__(self):
        for name in ('path_limit', 'max_candidates', 'max_lies', 'max_enumerate_n'):
            if getattr(self, name) < 0:
                raise ParameterError(f'Limits.{name} must not be negative')


@dataclass
class CodeParams:
    delta: int  # subblock length
    p: int  # address weight
    epsilon: Rational  # stored as Fraction after validation
    k: int  # maximum number of partitioning steps
    t: int  # error budget
    A: Optional[int] = None  # tail length, derived when omitted
    n: Optional[int] = None  # blocklength, derived when omitted
    M: Optional[int] = None  # number of messages, lemma 2 guarantee when omitted
    check_guarantee: InitVar[bool] = True

    def __post_init__(self, check_guarantee: bool):
        self.epsilon = to_fraction(self.epsilon)
        if not 0 < self.p < self.delta:
            raise ParameterError(f'Address weight p={self.p} must satisfy 0 < p < delta={self.delta}')
        if not 0 < self.epsilon < 1:
            raise ParameterError(f'epsilon={self.epsilon} must lie in (0, 1)')
        if self.k < 0 or self.t < 0:
            raise ParameterError(f'k={self.k} and t={self.t} must not be negative')
        if self.delta * self.k < self.t:
            raise ParameterError(f'delta*k = {self.delta * self.k} is below the error budget t={self.t}')
        if any(gamma <= 1 for gamma in self.gammas[:-1]):
            raise ParameterError(f'epsilon={self.epsilon} too large: needs epsilon < 1 - p/delta = {1 - Fraction(self.p, self.delta)}')

        A = ceil(binomial(self.delta, self.p) / self.epsilon)
        if self.A is None:
            self.A = A
        elif self.A != A:
            raise ParameterError(f'A={self.A} does not match ceil(C(delta, p)/epsilon) = {A}')
        n = self.A + self.delta * self.k
        if self.n is None:
            self.n = n
        elif self.n != n:
            raise ParameterError(f'n={self.n} does not match A + delta*k = {n}')

        from zfeedback.zf_bounds import lemma2_guarantee  # local import to avoid circular import
        if self.M is None:
            self.M = lemma2_guarantee(self)
        elif self.M < 1:
            raise ParameterError(f'M={self.M} must be at least 1')
        elif check_guarantee and self.M > lemma2_guarantee(self):
            raise ParameterError(f'M={self.M} exceeds the guaranteed {lemma2_guarantee(self)} messages')

    @property
    def address_count(self) -> int:
        return binomial(self.delta, self.p)

    @property
    def gammas(self) -> Tuple[Fraction, ...]:
        """Shrink factors gamma_0, ..., gamma_p of one partitioning step, gamma_p = 1."""
        count = binomial(self.delta, self.p)
        factors = [(1 - self.epsilon) * Fraction(count, binomial(self.delta - self.p + e, e))
                   for e in range(self.p)]
        return tuple(factors) + (Fraction(1),)

    def summary(self) -> str:
        return (f'delta={self.delta} p={self.p} epsilon={self.epsilon} A={self.A} '
                f'k={self.k} n={self.n} t={self.t} M={self.M}')


@dataclass
class SessionState:
    M_i: int
    n_i: int
    t_i: int
    idx: Optional[MessageIndex] = None  # known to the encoder only
    phase: Phase = Phase.PARTITIONING

    def __post_init__(self):
        if self.M_i < 1:
            raise ParameterError(f'Message space size {self.M_i} must be at least 1')
        if self.idx is not None and not 0 <= self.idx < self.M_i:
            raise ParameterError(f'Message index {self.idx} outside [0, {self.M_i})')

    def dispatch(self, delta: int) -> Phase:
        """Evaluate the phase guards at a subblock boundary and store the result."""
        if self.n_i == 0:
            self.phase = Phase.DONE
        elif self.t_i == 0:
            if (self.M_i - 1).bit_length() > self.n_i:
                raise ParameterError(f'{self.M_i} messages do not fit into {self.n_i} uncoded bits')
            self.phase = Phase.UNCODED
        elif self.M_i == 1 or self.M_i <= self.n_i - self.t_i + 1:
            self.phase = Phase.WEIGHT
        elif self.n_i >= delta:
            self.phase = Phase.PARTITIONING
        else:
            raise ParameterError(f'No phase applies: M_i={self.M_i}, n_i={self.n_i}, '
                                 f't_i={self.t_i} with subblock length {delta}')
        return self.phase


@dataclass(frozen=True)
class TranscriptRecord:
    step: int
    sent: Bit
    received: Bit
    phase: Phase

    def __post_init__(self):
        if self.sent not in (0, 1) or self.received not in (0, 1):
            raise ValueError(f'Step {self.step}: bits must be 0 or 1')
        if self.received > self.sent:
            raise ChannelContractError(f'Step {self.step}: a sent 0 was received as 1')

    @property
    def flipped(self) -> bool:
        return self.sent != self.received

    def to_text(self) -> str:
        return f'{self.step},{self.sent},{self.received},{self.phase.value}'


@dataclass
class Transcript:
    records: List[TranscriptRecord] = field(default_factory=list)
    budget: Optional[int] = None  # maximum number of flips, unchecked when None

    def __post_init__(self):
        records, self.records = self.records, []
        self.flips = 0
        for record in records:
            self.append(record)

    def append(self, record: TranscriptRecord) -> None:
        if record.step != len(self.records):
            raise ValueError(f'Expected step {len(self.records)}, got {record.step}')
        if record.flipped and self.budget is not None and self.flips >= self.budget:
            raise ChannelContractError(f'Step {record.step}: more than {self.budget} flips')
        self.records.append(record)
        self.flips += record.flipped

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[TranscriptRecord]:
        return iter(self.records)

    @property
    def sent_word(self) -> str:
        return ''.join(str(record.sent) for record in self.records)

    @property
    def received_word(self) -> str:
        return ''.join(str(record.received) for record in self.records)

    def to_text(self) -> str:
        return ''.join(record.to_text() + '\n' for record in self.records)

    @classmethod
    def from_text(cls, text: str, budget: Optional[int] = None) -> 'Transcript':
        transcript = cls(budget=budget)
        for line in text.splitlines():
            if not line.strip():
                continue
            step, sent, received, phase = line.split(',')
            transcript.append(TranscriptRecord(int(step), int(sent), int(received), Phase(phase)))
        return transcript


@dataclass(frozen=True)
class ErrorDistribution:
    counts: Tuple[int, ...]  # k_0, ..., k_p: number of subblocks hit by e errors
    t: int

    def __post_init__(self):
        if any(c < 0 for c in self.counts):
            raise ValueError(f'Negative count in {self.counts}')
        if self.errors > self.t + self.p:
            raise ValueError(f'{self.counts} spends {self.errors} errors, above t + p = {self.t + self.p}')

    @property
    def k(self) -> int:
        return sum(self.counts)

    @property
    def p(self) -> int:
        return len(self.counts) - 1

    @property
    def errors(self) -> int:
        return sum(e * c for e, c in enumerate(self.counts))

    def product(self, gammas: Tuple[Fraction, ...]) -> Fraction:
        result = Fraction(1)
        for gamma, count in zip(gammas, self.counts):
            result *= gamma ** count
        return result


@dataclass
class RateCurve:
    samples: List[Tuple[float, float, float]] = field(default_factory=list)  # (tau, lower, upper)

    def __post_init__(self):
        samples, self.samples = self.samples, []
        for sample in samples:
            self.add(*sample)

    def add(self, tau: float, lower: float, upper: float) -> None:
        if lower > upper + 1e-9:
            raise ValueError(f'tau={tau}: lower bound {lower} above upper bound {upper}')
        self.samples.append((tau, lower, upper))

    def __len__(self) -> int:
        return len(self.samples)


@dataclass(frozen=True)
class GameState:
    x: Tuple[int, ...]  # x_e = candidates charged e lies, e = 0..t
    q: int  # questions remaining

    def __post_init__(self):
        if not self.x or any(c < 0 for c in self.x):
            raise ValueError(f'Invalid occupancy vector {self.x}')
        if sum(self.x) < 1:
            raise ValueError('A game state needs at least one candidate')
        if self.q < 0:
            raise ValueError(f'Negative question count {self.q}')

    @property
    def t(self) -> int:
        return len(self.x) - 1

    @property
    def candidates(self) -> int:
        return sum(self.x)
