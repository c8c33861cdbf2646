"""Exact statevector simulation of QAOA with a diagonal cost layer.

States are dense complex vectors of length 2^n indexed by assignment
mask, bit ``i`` of the index being variable ``x_i`` (least significant
first).  Display strings put qubit n-1 leftmost, so ``format_bitstring``
is just the usual binary rendering of the index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hamiltonians import DiagonalCost

#: Dense 2^n complex amplitudes cap (128 MiB of state at n = 24).
STATEVECTOR_MAX_N = 24


@dataclass(frozen=True)
class QaoaParams:
    """Per-layer phase angles: ``gammas`` for the cost, ``betas`` for the mixer."""

    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))
        object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))
        if len(self.gammas) != len(self.betas) or not self.gammas:
            raise ValueError("need equally many gammas and betas, at least one each")

    @property
    def p(self) -> int:
        return len(self.gammas)

    @classmethod
    def from_vector(cls, vec) -> "QaoaParams":
        """Split a flat ``[g_1..g_p, b_1..b_p]`` vector."""
        vec = list(vec)
        if len(vec) % 2:
            raise ValueError("parameter vector must have even length")
        p = len(vec) // 2
        return cls(tuple(vec[:p]), tuple(vec[p:]))

    def to_vector(self) -> np.ndarray:
        return np.array(self.gammas + self.betas, dtype=np.float64)


def num_qubits(state: np.ndarray) -> int:
    size = state.size
    if size == 0 or size & (size - 1):
        raise ValueError("state length must be a power of two")
    return size.bit_length() - 1


def initial_plus_state(n: int) -> np.ndarray:
    """Uniform superposition: every amplitude 2^(-n/2)."""
    if not 1 <= n <= STATEVECTOR_MAX_N:
        raise ValueError(f"n must be in 1..{STATEVECTOR_MAX_N}")
    return np.full(1 << n, 2.0 ** (-n / 2.0), dtype=np.complex128)


def apply_cost_layer(state: np.ndarray, d: DiagonalCost, gamma: float) -> np.ndarray:
    """Phase each amplitude by ``exp(-i * gamma * cost)``; probabilities unchanged."""
    if state.size != d.values.size:
        raise ValueError("state and diagonal lengths differ")
    return state * np.exp(-1j * gamma * d.values)


def apply_mixer_layer(state: np.ndarray, beta: float) -> np.ndarray:
    """Apply ``exp(-i * beta * X)`` to every qubit independently."""
    n = num_qubits(state)
    c = np.cos(beta)
    s = -1j * np.sin(beta)
    out = state
    for q in range(n):
        a = out.reshape(-1, 2, 1 << q)
        mixed = np.empty_like(a)
        mixed[:, 0, :] = c * a[:, 0, :] + s * a[:, 1, :]
        mixed[:, 1, :] = s * a[:, 0, :] + c * a[:, 1, :]
        out = mixed.reshape(-1)
    return out


def run_qaoa(d: DiagonalCost, params: QaoaParams) -> np.ndarray:
    """Alternate cost and mixer layers on the uniform start state."""
    state = initial_plus_state(d.n)
    for gamma, beta in zip(params.gammas, params.betas):
        state = apply_cost_layer(state, d, gamma)
        state = apply_mixer_layer(state, beta)
    return state


def expectation(state: np.ndarray, d: DiagonalCost) -> float:
    """Mean cost under the state's measurement distribution."""
    if state.size != d.values.size:
        raise ValueError("state and diagonal lengths differ")
    probs = np.abs(state) ** 2
    return float(probs @ d.values)


def approximation_ratio(exp_val: float, c_min: float, c_max: float) -> float:
    """``(exp - c_max) / (c_min - c_max)``: 1 at the optimum, 0 at the worst.

    Undefined for a constant diagonal (``c_min == c_max``).
    """
    if not c_min < c_max:
        raise ValueError("approximation ratio undefined: c_min must be < c_max")
    return (exp_val - c_max) / (c_min - c_max)


def sample_counts(state: np.ndarray, shots: int, seed: int = 0) -> dict[int, int]:
    """Multinomial measurement histogram, deterministic per seed.

    Returns assignment mask -> count for outcomes with nonzero count.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    probs = np.abs(state) ** 2
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, probs)
    return {int(z): int(c) for z, c in enumerate(counts) if c}


def format_bitstring(z: int, n: int) -> str:
    """Render an assignment with qubit n-1 leftmost, e.g. 0b0011 -> ``"0011"``."""
    return format(z, f"0{n}b")
