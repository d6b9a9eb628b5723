"""Erasure-channel model and the three-step decoder for sandwich codes.

The channel is abstracted per shot: the receiver of shot i holds a random
subspace X_i of the sent flag's i-dimensional subspace. Decoding exploits
that the first k1 projected codes form a partial spread (step 1), that the
middle band has pairwise intersections of dimension at most i - k1 (step 2),
and that above the middle band intersections are at most 2i - n (step 3).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .construction import Flag, FlagCode
from .linalg import (
    MatrixFq,
    Subspace,
    contains,
    dump_matrix,
    parse_matrix,
    rank,
    rowspace,
    subspace_sum,
)
from .metrics import min_flag_distance

DECODED = "DECODED"
FAILURE = "FAILURE"


class ChannelError(ValueError):
    pass


class AmbiguousDecodeError(RuntimeError):
    """More than one codeword contains the trigger subspace.

    Cannot happen for sandwich codes within the correctable budget; loud by
    design since it signals a threshold violation or a bug.
    """


class ReceivedSequence:
    """Per-shot received subspaces X_1 .. X_{n-1} with dim(X_i) <= i."""

    __slots__ = ("ambient", "shots")

    def __init__(self, ambient: int, shots):
        shots = tuple(shots)
        if len(shots) != ambient - 1:
            raise ChannelError(f"need {ambient - 1} shots for ambient {ambient}")
        for i, x in enumerate(shots, start=1):
            if x.ambient != ambient:
                raise ChannelError(f"shot {i} has ambient {x.ambient}, want {ambient}")
            if x.dim > i:
                raise ChannelError(f"shot {i} has dim {x.dim} > {i}")
        self.ambient = ambient
        self.shots = shots

    def __getitem__(self, i: int) -> Subspace:
        return self.shots[i - 1]

    def __len__(self):
        return len(self.shots)


class AccumulatedSequence:
    """Nested sums Y_i: zero up to k1, then the running span of X_{k1+1}..X_i."""

    __slots__ = ("ambient", "k1", "shots")

    def __init__(self, ambient: int, k1: int, shots):
        self.ambient = ambient
        self.k1 = k1
        self.shots = tuple(shots)

    def __getitem__(self, i: int) -> Subspace:
        return self.shots[i - 1]


@dataclass(frozen=True)
class DecodeOutcome:
    status: str  # DECODED or FAILURE
    flag_index: int | None = None  # 1-based codeword index when decoded
    step: int | None = None
    shot_index: int | None = None

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "flag_index": self.flag_index,
            "step": self.step,
            "shot_index": self.shot_index,
        }


@dataclass(frozen=True)
class SimulationReport:
    trials: int
    successes: int
    failures: int
    step_histogram: dict
    seed: int
    error_budget: int

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "successes": self.successes,
            "failures": self.failures,
            "step_histogram": {str(k): v for k, v in sorted(self.step_histogram.items())},
            "seed": self.seed,
            "error_budget": self.error_budget,
        }


def error_count(sent: Flag, received: ReceivedSequence) -> int:
    """Total erasures: sum over shots of i - dim(X_i).

    Each X_i must lie inside the sent subspace (erasure channel only).
    """
    if sent.ambient != received.ambient:
        raise ChannelError("ambient mismatch")
    total = 0
    for i in range(1, sent.ambient):
        if not contains(sent[i], received[i]):
            raise ChannelError(f"shot {i} is not an erasure of the sent subspace")
        total += i - received[i].dim
    return total


def correctable_budget(code: FlagCode) -> int:
    """floor((d_f - 1) / 2), the unique-decoding guarantee threshold."""
    d = min_flag_distance(code)
    return max(0, (d - 1) // 2)


def random_subspace_of(sub: Subspace, dim: int, rng: random.Random) -> Subspace:
    """Uniformly random dim-dimensional subspace of sub.

    Samples a dim x sub.dim coefficient matrix, rejecting until full rank,
    then applies it to the canonical basis; exactly uniform because every
    target subspace has the same number of full-rank coefficient matrices.
    """
    if not (0 <= dim <= sub.dim):
        raise ChannelError(f"cannot take a {dim}-dim subspace of a {sub.dim}-dim one")
    field = sub.field
    if dim == 0:
        return Subspace.zero(field, sub.ambient)
    while True:
        coeffs = MatrixFq(
            field, dim, sub.dim, [rng.randrange(field.q) for _ in range(dim * sub.dim)]
        )
        if rank(coeffs) == dim:
            return rowspace(coeffs.matmul(sub.basis))


def erase(sent: Flag, erasures, seed: int | random.Random = 0) -> ReceivedSequence:
    """Apply per-shot erasures: X_i is a random (i - e_i)-dim subspace of the
    sent i-th subspace. Reproducible for a fixed seed."""
    erasures = list(erasures)
    n = sent.ambient
    if len(erasures) != n - 1:
        raise ChannelError(f"need {n - 1} erasure counts, got {len(erasures)}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    shots = []
    for i, e in enumerate(erasures, start=1):
        if not (0 <= e <= i):
            raise ChannelError(f"erasure count e_{i} = {e} outside [0, {i}]")
        shots.append(random_subspace_of(sent[i], i - e, rng))
    return ReceivedSequence(n, shots)


def accumulate(received: ReceivedSequence, k1: int) -> AccumulatedSequence:
    """Y_i = {0} for i <= k1, the running span of X_{k1+1}..X_i above."""
    n = received.ambient
    field = received.shots[0].field
    shots = []
    current = Subspace.zero(field, n)
    for i in range(1, n):
        if i > k1:
            current = subspace_sum(current, received[i])
        shots.append(current if i > k1 else Subspace.zero(field, n))
    return AccumulatedSequence(n, k1, shots)


def _unique_containing(code: FlagCode, level: int, sub: Subspace, step: int) -> DecodeOutcome:
    matches = [
        idx for idx, flag in enumerate(code.flags, start=1) if contains(flag[level], sub)
    ]
    if len(matches) > 1:
        raise AmbiguousDecodeError(
            f"step {step}: {len(matches)} codewords contain the shot-{level} subspace"
        )
    if not matches:
        return DecodeOutcome(FAILURE)
    return DecodeOutcome(DECODED, flag_index=matches[0], step=step, shot_index=level)


def decode(code: FlagCode, received: ReceivedSequence) -> DecodeOutcome:
    """Three-step decoder; returns FAILURE when no step triggers.

    Step 1: smallest i <= k1 with a nonzero X_i identifies the codeword via
    the partial-spread property. Step 2: smallest i in (k1, k1+r] where the
    accumulated Y_i exceeds dimension i - k1. Step 3: smallest i above the
    middle band where Y_i exceeds dimension 2i - n.
    """
    p = code.params
    n, k1, r = p.n, p.k1, p.r
    if received.ambient != n:
        raise ChannelError("received sequence has wrong ambient dimension")
    for i in range(1, k1 + 1):
        if received[i].dim > 0:
            return _unique_containing(code, i, received[i], step=1)
    acc = accumulate(received, k1)
    for i in range(k1 + 1, k1 + r + 1):
        if acc[i].dim > i - k1:
            return _unique_containing(code, i, acc[i], step=2)
    for i in range(k1 + r + 1, n):
        if acc[i].dim > 2 * i - n:
            return _unique_containing(code, i, acc[i], step=3)
    return DecodeOutcome(FAILURE)


def _trial_rng(seed: int, trial: int) -> random.Random:
    # Counter construction: per-trial streams depend only on (seed, trial),
    # so trials are order-independent.
    return random.Random(((seed & 0xFFFFFFFFFFFFFFFF) << 64) | trial)


def random_erasure_vector(n: int, budget: int, rng: random.Random):
    """Random erasure counts (e_1..e_{n-1}) with e_i <= i and sum <= budget:
    a random target total, then single increments at random unsaturated shots."""
    e = [0] * (n - 1)
    target = rng.randint(0, budget)
    for _ in range(target):
        open_shots = [i for i in range(n - 1) if e[i] < i + 1]
        if not open_shots:
            break
        e[rng.choice(open_shots)] += 1
    return e


def simulate(
    code: FlagCode, trials: int, seed: int = 0, budget: int | None = None
) -> SimulationReport:
    """Monte-Carlo round-trips: random codeword, random erasures within the
    budget, decode, compare. Deterministic for a fixed seed."""
    if trials < 1:
        raise ChannelError(f"trials = {trials} must be >= 1")
    if budget is None:
        budget = correctable_budget(code)
    n = code.ambient
    successes = 0
    step_histogram: dict = {}
    for trial in range(trials):
        rng = _trial_rng(seed, trial)
        sent_idx = rng.randrange(len(code.flags))
        erasures = random_erasure_vector(n, budget, rng)
        received = erase(code.flags[sent_idx], erasures, rng)
        outcome = decode(code, received)
        if outcome.status == DECODED and outcome.flag_index == sent_idx + 1:
            successes += 1
            step_histogram[outcome.step] = step_histogram.get(outcome.step, 0) + 1
    return SimulationReport(
        trials=trials,
        successes=successes,
        failures=trials - successes,
        step_histogram=step_histogram,
        seed=seed,
        error_budget=budget,
    )


# -- received-sequence serialization -------------------------------------------
# JSON document: {"ambient": n, "shots": [matrix-text, ...]} with each shot's
# basis in the shared matrix text format.


def received_to_json(received: ReceivedSequence) -> str:
    return json.dumps(
        {
            "ambient": received.ambient,
            "shots": [dump_matrix(x.basis) for x in received.shots],
        },
        indent=2,
    )


def received_from_json(text: str) -> ReceivedSequence:
    try:
        doc = json.loads(text)
        ambient = doc["ambient"]
        shots = [rowspace(parse_matrix(t)) for t in doc["shots"]]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ChannelError(f"malformed received-sequence file: {exc}") from exc
    return ReceivedSequence(ambient, shots)
