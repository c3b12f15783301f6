"""Circuit construction: condition encoders and the generator template.

Two families are built here:

* Fixed condition encoders that prepare a probability-weighted superposition
  of one-hot label states on an m-qubit register (category j puts a 1 in bit
  j counting from the right).  The uniform 3-category encoder prepares the
  three-excitation W state.
* The parameterized generator: alternating rotation layers (RZ RX RZ on each
  data qubit) and entanglement layers of controlled-RX gates whose data-data
  pairing is chosen by a topology, plus one controlled-RX from every
  condition qubit to every data qubit.  Condition qubits are only ever
  controls, never targets.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import least_squares

from .errors import EncoderSolveError, ValidationError
from .simulator import (
    GateOp,
    QuantumState,
    ROTATION_KINDS,
    apply_ops_inplace,
    new_state,
    _validate_op,
)


@dataclass(frozen=True)
class ParamSlot:
    """A rotation gate whose angle is a trainable parameter."""

    kind: str
    targets: tuple[int, ...]
    controls: tuple[int, ...]
    param: int

    def __post_init__(self):
        if self.kind not in ROTATION_KINDS:
            raise ValidationError(f"only rotation kinds can be parameterized, got {self.kind}")
        if self.param < 0:
            raise ValidationError("parameter index must be nonnegative")

    def bound(self, angle: float) -> GateOp:
        return GateOp(self.kind, self.targets, self.controls, float(angle))


@dataclass(frozen=True)
class ParamCircuit:
    """Ordered gate program mixing fixed gates and symbolic rotation slots."""

    n_qubits: int
    ops: tuple
    n_params: int

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        indices = sorted(op.param for op in self.ops if isinstance(op, ParamSlot))
        if indices != list(range(self.n_params)):
            raise ValidationError(
                "parameter indices must cover 0..n_params-1 exactly once")
        for op in self.ops:
            probe = op.bound(0.0) if isinstance(op, ParamSlot) else op
            _validate_op(probe, self.n_qubits)

    def param_kinds(self) -> list[str]:
        """Gate kind of each parameter index, in index order."""
        kinds = [""] * self.n_params
        for op in self.ops:
            if isinstance(op, ParamSlot):
                kinds[op.param] = op.kind
        return kinds


def bind(pc: ParamCircuit, params) -> list[GateOp]:
    """Replace symbolic slots with concrete angles, preserving gate order."""
    params = np.asarray(params, dtype=float).reshape(-1)
    if params.size != pc.n_params:
        raise ValidationError(
            f"expected {pc.n_params} parameters, got {params.size}")
    return [op.bound(params[op.param]) if isinstance(op, ParamSlot) else op
            for op in pc.ops]


def simulate(pc: ParamCircuit, params=()) -> QuantumState:
    """Run the bound circuit on |0...0>."""
    state = new_state(pc.n_qubits)
    amps = state.amplitudes.copy()
    apply_ops_inplace(amps, bind(pc, params), pc.n_qubits)
    return QuantumState(pc.n_qubits, amps)


def offset_ops(ops, offset: int) -> list:
    """Shift all qubit indices, embedding a small circuit in a larger register."""
    out = []
    for op in ops:
        targets = tuple(q + offset for q in op.targets)
        controls = tuple(q + offset for q in op.controls)
        if isinstance(op, ParamSlot):
            out.append(ParamSlot(op.kind, targets, controls, op.param))
        else:
            out.append(GateOp(op.kind, targets, controls, op.angle))
    return out


def dump_circuit(pc: ParamCircuit) -> str:
    """Line-oriented text form: KIND targets=... controls=... angle=...|param=k"""
    lines = []
    for op in pc.ops:
        targets = ",".join(str(q) for q in op.targets)
        controls = ",".join(str(q) for q in op.controls)
        line = f"{op.kind} targets={targets} controls={controls}"
        if isinstance(op, ParamSlot):
            line += f" param={op.param}"
        elif op.angle is not None:
            line += f" angle={op.angle!r}"
        lines.append(line)
    return "\n".join(lines) + "\n"


class Topology(Enum):
    """Data-qubit pairing pattern of one entanglement layer."""

    CIRCLE = "circle"
    STAR = "star"
    ALL_TO_ALL = "all_to_all"


def data_pairs(topology: Topology, n_d: int) -> list[tuple[int, int]]:
    """(control, target) data-qubit pairs of one entanglement layer."""
    if n_d < 2:
        return []
    if topology is Topology.ALL_TO_ALL:
        return list(itertools.combinations(range(n_d), 2))
    if topology is Topology.CIRCLE:
        return [(i, (i + 1) % n_d) for i in range(n_d)]
    if topology is Topology.STAR:
        return [(0, j) for j in range(1, n_d)]
    raise ValidationError(f"unknown topology: {topology}")


@dataclass(frozen=True)
class ConditionSpec:
    """Category count and the probability weight of each category."""

    m: int
    probs: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "probs", tuple(float(p) for p in self.probs))
        if self.m < 2:
            raise ValidationError("need at least 2 categories")
        if len(self.probs) != self.m:
            raise ValidationError("probs length must equal the category count")
        if any(p < 0 for p in self.probs):
            raise ValidationError("probabilities must be nonnegative")
        if abs(sum(self.probs) - 1.0) > 1e-9:
            raise ValidationError("probabilities must sum to 1")


def stage1_target(probs) -> np.ndarray:
    """Register amplitudes the first encoder stage must prepare.

    The register holds m-1 qubits; amplitude sqrt(p_m) sits on |0...0> and
    sqrt(p_j) on the one-hot basis state with integer value 2**(j-1).
    """
    m = len(probs)
    target = np.zeros(1 << (m - 1))
    target[0] = np.sqrt(probs[m - 1])
    for j in range(1, m):
        target[1 << (j - 1)] = np.sqrt(probs[j - 1])
    return target


def stage1_template(k: int) -> ParamCircuit:
    """Symbolic first-stage circuit over a k-qubit register.

    k=1: a single RY.  k=2: RY, controlled-RY, CNOT, RY (three angles).
    k>=3: an excitation cascade, RY on qubit 0 then alternating
    controlled-RY/CNOT pairs walking the excitation down the register.
    """
    if k == 1:
        return ParamCircuit(1, (ParamSlot("RY", (0,), (), 0),), 1)
    if k == 2:
        ops = (
            ParamSlot("RY", (0,), (), 0),
            ParamSlot("CRY", (1,), (0,), 1),
            GateOp("CNOT", (1,), (0,)),
            ParamSlot("RY", (1,), (), 2),
        )
        return ParamCircuit(2, ops, 3)
    ops = [ParamSlot("RY", (0,), (), 0)]
    for i in range(k - 1):
        ops.append(ParamSlot("CRY", (i + 1,), (i,), i + 1))
        ops.append(GateOp("CNOT", (i,), (i + 1,)))
    return ParamCircuit(k, tuple(ops), k)


def _closed_form_angles(target: np.ndarray, k: int) -> np.ndarray:
    """Exact template angles for targets in the one-hot-plus-vacuum family."""
    if k == 1:
        return np.array([2 * np.arctan2(target[1], target[0])])
    if k == 2:
        t00, t01, t10 = target[0], target[1], target[2]
        theta1 = 2 * np.arcsin(np.clip(t10, -1.0, 1.0))
        theta3 = 2 * np.arctan2(t01, t00)
        return np.array([theta1, theta3 + np.pi, theta3])
    # cascade: peel amplitudes off the remaining excitation weight
    angles = np.zeros(k)
    angles[0] = 2 * np.arccos(np.clip(target[0], -1.0, 1.0))
    remaining = np.sin(angles[0] / 2)
    for i in range(1, k):
        hot = target[1 << (k - i)]  # amplitude with qubit i-1 excited
        if remaining > 1e-12:
            angles[i] = 2 * np.arccos(np.clip(hot / remaining, -1.0, 1.0))
        remaining *= np.sin(angles[i] / 2)
    return angles


def solve_stage1_angles(target_amps) -> np.ndarray:
    """Angles making the stage-1 template map |0...0> to the target amplitudes.

    The target must be real, nonnegative, unit norm, with zero amplitude on
    the all-ones basis state.  A closed-form seed is polished by least
    squares; failure to reach residual 1e-8 raises EncoderSolveError.
    """
    target = np.asarray(target_amps, dtype=float).reshape(-1)
    k = int(target.size).bit_length() - 1
    if target.size != (1 << k) or k < 1:
        raise ValidationError("target length must be a power of two, at least 2")
    if np.any(target < -1e-12):
        raise ValidationError("target amplitudes must be nonnegative")
    if abs(np.sum(target ** 2) - 1.0) > 1e-9:
        raise ValidationError("target amplitudes must have unit norm")
    if k >= 2 and abs(target[-1]) > 1e-12:
        raise ValidationError("the all-ones amplitude must be zero")

    template = stage1_template(k)

    def residual(x):
        return simulate(template, x).amplitudes.real - target

    x0 = _closed_form_angles(target, k)
    fit = least_squares(residual, x0, method="lm")
    worst = float(np.max(np.abs(residual(fit.x))))
    if worst >= 1e-8:
        raise EncoderSolveError(
            f"stage-1 angle solve stagnated at residual {worst:.3e}", worst)
    return fit.x


def build_condition_encoder(spec: ConditionSpec) -> ParamCircuit:
    """Fixed m-qubit circuit preparing sum_j sqrt(p_j)|one-hot_j> from |0...0>.

    Qubit 0 carries the highest category's bit; qubits 1..m-1 form the
    register the first stage acts on.  The second stage flips qubit 0
    exactly when the register is all zeros: X on every register qubit, a
    fully controlled X onto qubit 0, X on every register qubit again.
    """
    k = spec.m - 1
    angles = solve_stage1_angles(stage1_target(spec.probs))
    ops = [op.bound(angles[op.param]) if isinstance(op, ParamSlot) else op
           for op in offset_ops(stage1_template(k).ops, 1)]
    register = tuple(range(1, spec.m))
    for q in register:
        ops.append(GateOp("X", (q,)))
    flip_kind = {1: "CNOT", 2: "TOFFOLI"}.get(k, "X")
    ops.append(GateOp(flip_kind, (0,), register))
    for q in register:
        ops.append(GateOp("X", (q,)))
    return ParamCircuit(spec.m, tuple(ops), 0)


def build_w3_prep() -> ParamCircuit:
    """Fixed 3-qubit circuit preparing the uniform three-excitation W state."""
    third = 1.0 / 3.0
    return build_condition_encoder(ConditionSpec(3, (third, third, third)))


def build_generator(n_d: int, n_c: int, layers: int,
                    topology: Topology) -> ParamCircuit:
    """Parameterized generator over n_d data qubits and n_c condition qubits.

    Each layer contributes RZ,RX,RZ slots on every data qubit, then
    controlled-RX slots: one per topology-chosen data pair (lower index
    controls for all-to-all) and one from each condition qubit to each data
    qubit.  Condition qubits never appear as targets.
    """
    if n_d < 1 or n_c < 0 or layers < 1:
        raise ValidationError("need n_d >= 1, n_c >= 0, layers >= 1")
    ops: list = []
    p = 0
    condition_qubits = range(n_d, n_d + n_c)
    for _ in range(layers):
        for q in range(n_d):
            for kind in ("RZ", "RX", "RZ"):
                ops.append(ParamSlot(kind, (q,), (), p))
                p += 1
        for control, target in data_pairs(topology, n_d):
            ops.append(ParamSlot("CRX", (target,), (control,), p))
            p += 1
        for c in condition_qubits:
            for d in range(n_d):
                ops.append(ParamSlot("CRX", (d,), (c,), p))
                p += 1
    return ParamCircuit(n_d + n_c, tuple(ops), p)
