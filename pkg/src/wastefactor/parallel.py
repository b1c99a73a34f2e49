"""Waste-factor composition for parallel structures.

Covers MISO combining (non-coherent and coherent), the gain of a bank of
parallel receivers, and the general M-input N-output two-stage
composition used to collapse a whole multi-user network into a single
waste factor. Weights are ratio-scale: only the relative received powers
matter, so callers may pass raw watts or normalized fractions
interchangeably. Equal-gain combining is not a third mode: express it by
assigning the weights an equal-gain receiver would produce.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .core import Stage


class CombiningMode(Enum):
    """How parallel signals merge: powers add, or phase-aligned amplitudes add."""

    NON_COHERENT = "non_coherent"
    COHERENT = "coherent"


@dataclass(frozen=True)
class Branch:
    """One parallel cascade: its composite stage and a relative power weight."""

    stage: Stage
    weight: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.weight) or self.weight < 0.0:
            raise ValueError(f"branch weight must be finite and >= 0, got {self.weight}")


def combine_branches(branches: Sequence[Branch], mode: CombiningMode) -> float:
    """Waste factor of a parallel group, referenced to its combined output.

    Non-coherent: the weighted arithmetic mean sum(y_i W_i)/sum(y_i) over
    weights y_i, which always lies within [min W_i, max W_i]. Coherent:
    sum(y_i W_i) divided by |sum(sqrt(y_i))|^2, which can drop below
    min W_i (combining gain). Zero-weight branches contribute nothing; an
    all-zero group is an error.
    """
    if not branches:
        raise ValueError("combine_branches requires at least one branch")
    active = [b for b in branches if b.weight > 0.0]
    if not active:
        raise ValueError("at least one branch must have weight > 0")
    if len(active) == 1:
        # Degenerate parallelism reduces exactly, with no weight round-off.
        return active[0].stage.w
    total = sum(b.weight for b in active)
    consumed = sum(b.weight * b.stage.w for b in active)
    if mode is CombiningMode.NON_COHERENT:
        return consumed / total
    amplitude = sum(math.sqrt(b.weight) for b in active)
    return consumed / (amplitude * amplitude)


def miso_compose(
    branches: Sequence[Branch], mode: CombiningMode, terminal: Stage
) -> Stage:
    """Parallel input cascades followed by a single terminal stage.

    The parallel group acts as a pseudo-stage ahead of the terminal:
    W = W_term + (W_parallel - 1)/G_term, with the gain referenced to the
    combined input power of the terminal.
    """
    w_parallel = combine_branches(branches, mode)
    w = terminal.w + (w_parallel - 1.0) / terminal.g
    label = terminal.label or "miso"
    return Stage(w=w, g=terminal.g, label=label)


def parallel_gain(
    received_powers_w: Sequence[float],
    gains: Sequence[float],
    mode: CombiningMode,
) -> float:
    """Gain of parallel receivers: total output over total input power."""
    if not received_powers_w:
        raise ValueError("parallel_gain requires at least one receiver")
    if len(received_powers_w) != len(gains):
        raise ValueError(
            f"got {len(received_powers_w)} powers but {len(gains)} gains"
        )
    if any(p < 0.0 for p in received_powers_w):
        raise ValueError("received powers must be >= 0 W")
    if any(g <= 0.0 for g in gains):
        raise ValueError("receiver gains must be > 0")
    total_in = sum(received_powers_w)
    if total_in <= 0.0:
        raise ValueError("at least one receiver must see power > 0")
    if mode is CombiningMode.NON_COHERENT:
        return sum(p * g for p, g in zip(received_powers_w, gains)) / total_in
    amplitude = sum(math.sqrt(p * g) for p, g in zip(received_powers_w, gains))
    return (amplitude * amplitude) / total_in


def received_power_matrix(
    tx_powers_w: Sequence[float],
    channel_w: Sequence[Sequence[float]],
    mode: CombiningMode,
) -> list[float]:
    """Received power at each of N outputs from M transmitters.

    ``channel_w[i][j]`` is the waste factor (loss) of the link from
    transmitter i to output j. Non-coherent: P_Rj = sum_i P_Ti / W_ij.
    Coherent: P_Rj = (sum_i sqrt(P_Ti / W_ij))^2. A fully lossy link
    (W -> inf) contributes nothing.
    """
    m = len(tx_powers_w)
    if m == 0:
        raise ValueError("received_power_matrix requires at least one transmitter")
    if len(channel_w) != m:
        raise ValueError(f"channel matrix has {len(channel_w)} rows, expected {m}")
    n = len(channel_w[0])
    if any(len(row) != n for row in channel_w):
        raise ValueError("channel matrix rows must all have the same length")
    if any(p < 0.0 for p in tx_powers_w):
        raise ValueError("transmit powers must be >= 0 W")
    for row in channel_w:
        for w in row:
            if math.isnan(w) or w < 1.0:
                raise ValueError(f"channel waste factor must be >= 1, got {w}")
    received = []
    for j in range(n):
        if mode is CombiningMode.NON_COHERENT:
            received.append(sum(tx_powers_w[i] / channel_w[i][j] for i in range(m)))
        else:
            amp = sum(math.sqrt(tx_powers_w[i] / channel_w[i][j]) for i in range(m))
            received.append(amp * amp)
    return received


def mino_first_stage(
    received_powers_w: Sequence[float], w_parallel: Sequence[float]
) -> float:
    """First-stage waste factor over all outputs of an M-input N-output system.

    Each output j carries its own parallel-group waste factor; the stage
    value is the received-power-weighted mean sum(P_j W_j)/sum(P_j).
    """
    if not received_powers_w:
        raise ValueError("mino_first_stage requires at least one output")
    if len(received_powers_w) != len(w_parallel):
        raise ValueError(
            f"got {len(received_powers_w)} powers but {len(w_parallel)} waste factors"
        )
    if any(p < 0.0 for p in received_powers_w):
        raise ValueError("received powers must be >= 0 W")
    total = sum(received_powers_w)
    if total <= 0.0:
        raise ValueError("total received power must be > 0")
    return sum(p * w for p, w in zip(received_powers_w, w_parallel)) / total


def mino_compose(first_stage_w: float, rx_w: float, rx_g: float) -> float:
    """Terminate a MINO system into a single path through the parallel receivers.

    W = W_rx_parallel + (W_first_stage - 1) / G_rx_parallel.
    """
    if first_stage_w < 1.0:
        raise ValueError(f"first-stage waste factor must be >= 1, got {first_stage_w}")
    if rx_w < 1.0:
        raise ValueError(f"receiver waste factor must be >= 1, got {rx_w}")
    if rx_g <= 0.0:
        raise ValueError(f"receiver gain must be > 0, got {rx_g}")
    return rx_w + (first_stage_w - 1.0) / rx_g
