"""Dense statevector simulator for small qubit registers.

Conventions used throughout the package:

* Qubit 0 is the most significant bit of a basis-state index, so the
  bitstring of an outcome reads qubit 0 through qubit n-1 left to right.
* States are complex128 vectors of length 2**n and are treated as immutable
  values; every public operation returns a fresh state.

Gate kinds: RX, RY, RZ (single-qubit rotations), X, CNOT, TOFFOLI (bit
flips with 0/1/2 controls), CRX, CRY, CRZ (controlled rotations).  The X
kind additionally accepts an arbitrary control list, which the circuit
builders use for multi-controlled flips beyond two controls.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, NumericError, ValidationError

MAX_QUBITS = 24

ROTATION_KINDS = frozenset({"RX", "RY", "RZ", "CRX", "CRY", "CRZ"})
FLIP_KINDS = frozenset({"X", "CNOT", "TOFFOLI"})
GATE_KINDS = ROTATION_KINDS | FLIP_KINDS

# number of control qubits each kind requires (None = any number allowed)
_CONTROL_COUNTS = {
    "RX": 0, "RY": 0, "RZ": 0,
    "CRX": 1, "CRY": 1, "CRZ": 1,
    "X": None, "CNOT": 1, "TOFFOLI": 2,
}


@dataclass(frozen=True)
class GateOp:
    """One concrete gate: kind, target/control qubits, and angle if rotational."""

    kind: str
    targets: tuple[int, ...]
    controls: tuple[int, ...] = ()
    angle: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))
        object.__setattr__(self, "controls", tuple(self.controls))
        if self.kind not in GATE_KINDS:
            raise ValidationError(f"unknown gate kind: {self.kind!r}")
        if len(self.targets) != 1:
            raise ValidationError(f"{self.kind} takes exactly one target qubit")
        want = _CONTROL_COUNTS[self.kind]
        if want is not None and len(self.controls) != want:
            raise ValidationError(
                f"{self.kind} takes {want} control(s), got {len(self.controls)}")
        if self.kind in ROTATION_KINDS:
            if self.angle is None:
                raise ValidationError(f"{self.kind} requires an angle")
        elif self.angle is not None:
            raise ValidationError(f"{self.kind} takes no angle")
        seen = self.targets + self.controls
        if len(set(seen)) != len(seen):
            raise ValidationError("targets and controls must be disjoint qubits")


@dataclass(frozen=True)
class QuantumState:
    """Unit-norm complex amplitude vector over n_qubits."""

    n_qubits: int
    amplitudes: np.ndarray

    @classmethod
    def from_amplitudes(cls, amplitudes: Sequence[complex]) -> "QuantumState":
        amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1).copy()
        n = int(amps.size).bit_length() - 1
        if amps.size != (1 << n) or amps.size < 2:
            raise ValidationError("amplitude vector length must be a power of two")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > 1e-9:
            raise ValidationError(f"amplitudes are not unit norm (got {norm!r})")
        return cls(n, amps)

    def bitstring(self, index: int) -> str:
        return format(index, f"0{self.n_qubits}b")


@dataclass(frozen=True)
class DensityMatrix:
    """Reduced density matrix over n_qubits kept qubits."""

    n_qubits: int
    entries: np.ndarray

    def __post_init__(self):
        dim = 1 << self.n_qubits
        if self.entries.shape != (dim, dim):
            raise ValidationError("density matrix shape does not match qubit count")
        if np.max(np.abs(self.entries - self.entries.conj().T)) > 1e-10:
            raise ValidationError("density matrix is not Hermitian")
        if abs(np.trace(self.entries).real - 1.0) > 1e-10:
            raise ValidationError("density matrix trace is not 1")


def new_state(n_qubits: int) -> QuantumState:
    """Return |0...0> on n_qubits."""
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise CapacityError(f"n_qubits must be in 1..{MAX_QUBITS}, got {n_qubits}")
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return QuantumState(n_qubits, amps)


def rotation_matrix(kind: str, angle: float) -> np.ndarray:
    """2x2 unitary acting on the target qubit (controls handled separately)."""
    half = 0.5 * angle
    c, s = np.cos(half), np.sin(half)
    base = kind[-2:] if kind.startswith("CR") else kind
    if base == "RX":
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)
    if base == "RY":
        return np.array([[c, -s], [s, c]], dtype=np.complex128)
    if base == "RZ":
        return np.array([[np.exp(-1j * half), 0], [0, np.exp(1j * half)]],
                        dtype=np.complex128)
    raise ValidationError(f"not a rotation kind: {kind}")


def _bit_mask(qubits: Iterable[int], n: int) -> int:
    mask = 0
    for q in qubits:
        mask |= 1 << (n - 1 - q)
    return mask


@lru_cache(maxsize=4096)
def _index_pairs(n: int, target: int, control_mask: int):
    """Indices (i0, i1) of basis states paired by flipping the target bit,
    restricted to states where every control bit is 1."""
    idx = np.arange(1 << n)
    tmask = 1 << (n - 1 - target)
    sel = (idx & tmask) == 0
    if control_mask:
        sel &= (idx & control_mask) == control_mask
    i0 = idx[sel]
    i1 = i0 | tmask
    i0.flags.writeable = False
    i1.flags.writeable = False
    return i0, i1


def _validate_op(op: GateOp, n: int) -> None:
    for q in op.targets + op.controls:
        if not 0 <= q < n:
            raise ValidationError(f"qubit index {q} out of range for {n} qubits")


def apply_ops_inplace(amps: np.ndarray, ops: Iterable[GateOp], n: int) -> None:
    """Apply bound gates in order, mutating amps.

    amps may be shape (2**n,) or (2**n, k); gates act on axis 0, so a batch
    of k states shares one pass.
    """
    for op in ops:
        i0, i1 = _index_pairs(n, op.targets[0], _bit_mask(op.controls, n))
        if op.kind in ("RZ", "CRZ"):
            half = 0.5 * op.angle
            amps[i0] *= np.exp(-1j * half)
            amps[i1] *= np.exp(1j * half)
        elif op.kind in FLIP_KINDS:
            a0 = amps[i0]
            amps[i0] = amps[i1]
            amps[i1] = a0
        else:
            u = rotation_matrix(op.kind, op.angle)
            a0 = amps[i0]
            a1 = amps[i1]
            amps[i0] = u[0, 0] * a0 + u[0, 1] * a1
            amps[i1] = u[1, 0] * a0 + u[1, 1] * a1


def apply_gate(state: QuantumState, op: GateOp) -> QuantumState:
    """Apply one gate, returning a new state; norm is checked to 1e-10."""
    _validate_op(op, state.n_qubits)
    amps = state.amplitudes.copy()
    apply_ops_inplace(amps, (op,), state.n_qubits)
    norm = float(np.sum(np.abs(amps) ** 2))
    if abs(norm - 1.0) > 1e-10:
        raise NumericError(f"state norm drifted to {norm!r} after {op.kind}")
    return QuantumState(state.n_qubits, amps)


def probabilities(state: QuantumState) -> np.ndarray:
    """Born-rule outcome probabilities over all 2**n basis states."""
    return np.abs(state.amplitudes) ** 2


def sample(state: QuantumState, shots: int, rng_seed: int) -> list[str]:
    """Draw shots i.i.d. outcomes; returns bitstrings, deterministic per seed."""
    if shots < 0:
        raise ValidationError("shots must be nonnegative")
    if shots == 0:
        return []
    p = probabilities(state)
    p = p / p.sum()
    rng = np.random.default_rng(rng_seed)
    outcomes = rng.choice(p.size, size=shots, p=p)
    n = state.n_qubits
    return [format(int(i), f"0{n}b") for i in outcomes]


def partial_trace(state: QuantumState, keep: Iterable[int]) -> DensityMatrix:
    """Trace out every qubit not in keep; keep must be a nonempty proper subset."""
    keep = sorted(set(keep))
    n = state.n_qubits
    if not keep or len(keep) >= n:
        raise ValidationError("keep must be a nonempty proper subset of qubits")
    for q in keep:
        if not 0 <= q < n:
            raise ValidationError(f"qubit index {q} out of range")
    if len(keep) > 12:
        raise CapacityError("reduced density matrix would exceed 2^12 x 2^12")
    rest = [q for q in range(n) if q not in keep]
    psi = state.amplitudes.reshape((2,) * n)
    mat = psi.transpose(keep + rest).reshape(1 << len(keep), 1 << len(rest))
    rho = mat @ mat.conj().T
    return DensityMatrix(len(keep), rho)


def entanglement_entropy(state: QuantumState, bipartition: Iterable[int]) -> float:
    """Von Neumann entropy (base 2) of the reduced state on the given qubits."""
    part = set(bipartition)
    if len(part) > state.n_qubits // 2:
        # complementary subsystems share a spectrum; trace out the bigger one
        part = set(range(state.n_qubits)) - part
        if not part:
            raise ValidationError("bipartition must be a proper subset of qubits")
    rho = partial_trace(state, part)
    evals = np.linalg.eigvalsh(rho.entries)
    evals = evals[evals > 1e-12]
    return float(-np.sum(evals * np.log2(evals)))


def expectation_one(state: QuantumState, qubit: int) -> float:
    """Marginal probability that the qubit measures 1."""
    n = state.n_qubits
    if not 0 <= qubit < n:
        raise ValidationError(f"qubit index {qubit} out of range")
    tmask = 1 << (n - 1 - qubit)
    p = probabilities(state)
    idx = np.arange(p.size)
    return float(p[(idx & tmask) != 0].sum())
