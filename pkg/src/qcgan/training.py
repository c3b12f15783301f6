"""Adversarial training loop for the conditional quantum generator.

Each iteration alternates one discriminator update (gradient from manual
backprop) with one generator update (gradient from parameter-shift rules
on the circuit angles).  Single-qubit rotations use the two-term shift
rule; controlled rotations have eigenvalue gaps of both 1 and 1/2, so
their derivative needs a four-term rule with shifts of pi/2 and 3pi/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from functools import lru_cache
from pathlib import Path

import numpy as np

from .bas import Sample, batches
from .checkpoint import load_checkpoint, save_checkpoint
from .circuits import (
    ConditionSpec,
    ParamCircuit,
    ParamSlot,
    Topology,
    build_condition_encoder,
    build_generator,
    offset_ops,
)
from .discriminator import (
    AdamState,
    DiscriminatorParams,
    adam_step,
    adam_step_arrays,
    discriminator_grad,
    discriminator_loss,
    forward,
    forward_batch,
    init_discriminator,
    input_gradient,
)
from .errors import ConfigError, FormatError, NumericError, ValidationError
from .metrics import EvalReport, evaluate_samples, split_joint_bits
from .simulator import (
    QuantumState,
    apply_ops_inplace,
    expectation_one,
    new_state,
    probabilities,
    sample,
)

GRADIENT_MODES = ("exact", "shot")
DISC_INPUT_MODES = ("sampled", "expectation")

_SINGLE_KINDS = frozenset({"RX", "RY", "RZ"})
_SINGLE_SHIFTS = (math.pi / 2, -math.pi / 2)
_CTRL_SHIFTS = (math.pi / 2, -math.pi / 2, 3 * math.pi / 2, -3 * math.pi / 2)
# four-term rule coefficients for generators with eigenvalue gaps {1/2, 1}
_C1 = (2.0 + math.sqrt(2.0)) / 8.0
_C2 = (math.sqrt(2.0) - 2.0) / 8.0

_DOMAINS = {"theta": 0, "disc": 1, "batch": 2, "fake": 3, "grad": 4,
            "eval": 5, "loss": 6}


def derive_seed(master: int, domain: str, *indices: int) -> int:
    """Deterministic child seed for a named randomness domain."""
    entropy = (int(master), _DOMAINS[domain]) + tuple(int(i) for i in indices)
    return int(np.random.SeedSequence(entropy).generate_state(1)[0])


@dataclass(frozen=True)
class GeneratorModel:
    """A parameterized generator plus the fixed condition encoder."""

    n_data: int
    n_cond: int
    layers: int
    topology: Topology
    theta: np.ndarray
    circuit: ParamCircuit
    condition_encoder: ParamCircuit | None

    def __post_init__(self):
        theta = np.array(self.theta, dtype=float)
        theta.setflags(write=False)
        object.__setattr__(self, "theta", theta)
        if self.n_data < 1 or self.n_cond < 0:
            raise ValidationError("need at least one data qubit")
        if self.n_data + self.n_cond != self.circuit.n_qubits:
            raise ValidationError("circuit width must equal data + condition qubits")
        if theta.size != self.circuit.n_params:
            raise ValidationError(
                f"theta length {theta.size} != {self.circuit.n_params} parameters")
        if not np.all(np.isfinite(theta)):
            raise ValidationError("all angles must be finite")
        if self.condition_encoder is not None:
            if self.condition_encoder.n_qubits != self.n_cond:
                raise ValidationError("encoder width must equal condition qubits")
            if self.condition_encoder.n_params != 0:
                raise ValidationError("the condition encoder must be fully bound")

    @classmethod
    def build(cls, n_data: int = 4, n_cond: int = 3, layers: int = 3,
              topology: Topology = Topology.ALL_TO_ALL,
              theta=None) -> "GeneratorModel":
        """Standard assembly: uniform condition encoder plus layered generator."""
        circuit = build_generator(n_data, n_cond, layers, topology)
        encoder = build_condition_encoder(
            ConditionSpec(n_cond, (1.0 / n_cond,) * n_cond))
        if theta is None:
            theta = np.zeros(circuit.n_params)
        return cls(n_data, n_cond, layers, topology, theta, circuit, encoder)

    def with_theta(self, theta) -> "GeneratorModel":
        return GeneratorModel(self.n_data, self.n_cond, self.layers,
                              self.topology, theta, self.circuit,
                              self.condition_encoder)


@dataclass(frozen=True)
class TrainingConfig:
    epochs: int = 100
    iterations_per_epoch: int = 150
    batch_size: int = 40
    lr_initial: float = 0.001
    lr_decay_every: int = 10
    lr_decay_factor: float = 0.1
    early_stop_threshold: float = 0.95
    n_data: int = 4
    n_cond: int = 3
    layers: int = 3
    topology: Topology = Topology.ALL_TO_ALL
    gradient_mode: str = "exact"
    gradient_shots: int = 10000
    disc_input_mode: str = "sampled"
    eval_shots: int = 10000
    seed: int = 19
    theta_init_scale: float = 1.0

    def __post_init__(self):
        counts = {"iterations_per_epoch": self.iterations_per_epoch,
                  "batch_size": self.batch_size,
                  "lr_decay_every": self.lr_decay_every,
                  "n_data": self.n_data, "layers": self.layers,
                  "gradient_shots": self.gradient_shots,
                  "eval_shots": self.eval_shots}
        for name, value in counts.items():
            if value < 1:
                raise ConfigError(f"{name} must be positive, got {value}")
        if self.epochs < 0:
            raise ConfigError("epochs must be nonnegative")
        if self.n_cond < 2:
            raise ConfigError("need at least 2 condition categories")
        if self.lr_initial <= 0:
            raise ConfigError("lr_initial must be positive")
        if not 0 < self.lr_decay_factor <= 1:
            raise ConfigError("lr_decay_factor must lie in (0, 1]")
        if not 0 < self.early_stop_threshold <= 1:
            raise ConfigError("early_stop_threshold must lie in (0, 1]")
        if self.gradient_mode not in GRADIENT_MODES:
            raise ConfigError(f"gradient_mode must be one of {GRADIENT_MODES}")
        if self.disc_input_mode not in DISC_INPUT_MODES:
            raise ConfigError(f"disc_input_mode must be one of {DISC_INPUT_MODES}")
        if self.seed < 0:
            raise ConfigError("seed must be nonnegative")
        if self.theta_init_scale < 0:
            raise ConfigError("theta_init_scale must be nonnegative")


_INT_KEYS = {"epochs", "iterations_per_epoch", "batch_size", "lr_decay_every",
             "n_data", "n_cond", "layers", "gradient_shots", "eval_shots",
             "seed"}
_FLOAT_KEYS = {"lr_initial", "lr_decay_factor", "early_stop_threshold",
               "theta_init_scale"}
_STR_KEYS = {"gradient_mode", "disc_input_mode"}


def config_to_items(config: TrainingConfig) -> list[tuple[str, str]]:
    """Flatten to ordered key/value string pairs for files."""
    items = []
    for f in fields(TrainingConfig):
        value = getattr(config, f.name)
        if isinstance(value, Topology):
            text = value.value
        elif isinstance(value, float):
            text = repr(value)
        else:
            text = str(value)
        items.append((f.name, text))
    return items


def config_from_items(items) -> TrainingConfig:
    """Rebuild a config from string pairs, rejecting unknown keys."""
    values = {}
    for key, raw in items:
        try:
            if key in _INT_KEYS:
                values[key] = int(raw)
            elif key in _FLOAT_KEYS:
                values[key] = float(raw)
            elif key == "topology":
                values[key] = Topology(raw)
            elif key in _STR_KEYS:
                values[key] = raw
            else:
                raise ConfigError(f"unknown config key: {key!r}")
        except ValueError:
            raise ConfigError(f"bad value for {key}: {raw!r}") from None
    return TrainingConfig(**values)


@dataclass
class TrainingHistory:
    """Per-iteration losses and per-epoch evaluation scores."""

    iterations: list  # (epoch, iteration, d_loss, g_loss, lr)
    epochs: list      # (epoch, validity, condition_match, uniformity, composite)
    early_stop_epoch: int | None = None


def history_csv(history: TrainingHistory) -> str:
    lines = ["epoch,iteration,d_loss,g_loss,lr"]
    for epoch, it, d_loss, g_loss, lr in history.iterations:
        lines.append(f"{epoch},{it},{d_loss!r},{g_loss!r},{lr!r}")
    return "\n".join(lines) + "\n"


def metrics_csv(history: TrainingHistory) -> str:
    lines = ["epoch,validity,condition_match,uniformity,composite"]
    for epoch, v, c, u, comp in history.epochs:
        lines.append(f"{epoch},{v!r},{c!r},{u!r},{comp!r}")
    return "\n".join(lines) + "\n"


@lru_cache(maxsize=8)
def _bit_matrix(n: int) -> np.ndarray:
    """Row v = the n bit values of basis state v, qubit 0 leftmost."""
    rows = np.array([[(v >> (n - 1 - q)) & 1 for q in range(n)]
                     for v in range(1 << n)], dtype=float)
    rows.setflags(write=False)
    return rows


def _joint_ops(model: GeneratorModel) -> list:
    ops = []
    if model.condition_encoder is not None:
        ops.extend(offset_ops(model.condition_encoder.ops, model.n_data))
    for op in model.circuit.ops:
        ops.append(op.bound(model.theta[op.param])
                   if isinstance(op, ParamSlot) else op)
    return ops


def generator_state(model: GeneratorModel) -> QuantumState:
    """Encoder followed by the bound generator, from the all-zeros state."""
    n = model.circuit.n_qubits
    amps = new_state(n).amplitudes.copy()
    apply_ops_inplace(amps, _joint_ops(model), n)
    return QuantumState(n, amps)


def generator_output_distribution(model: GeneratorModel) -> np.ndarray:
    """Outcome probabilities over all data+condition basis states."""
    return probabilities(generator_state(model))


def _expectation_vector(state: QuantumState) -> np.ndarray:
    return np.array([expectation_one(state, q) for q in range(state.n_qubits)])


def _bits_to_rows(bitstrings: list[str]) -> np.ndarray:
    return np.array([[int(ch) for ch in bits] for bits in bitstrings],
                    dtype=float)


def generator_objective(model: GeneratorModel, disc: DiscriminatorParams, *,
                        mode: str = "exact", shots: int = 10000,
                        rng_seed: int = 0,
                        input_mode: str = "sampled") -> float:
    """The quantity the generator maximizes: E[log D] over its outputs.

    Exact mode sums log D over all basis states weighted by the output
    distribution; shot mode averages over a sampled batch.  In expectation
    input mode the discriminator sees the per-qubit expectation vector
    instead of individual samples.
    """
    if mode not in GRADIENT_MODES:
        raise ValidationError(f"mode must be one of {GRADIENT_MODES}")
    if input_mode not in DISC_INPUT_MODES:
        raise ValidationError(f"input_mode must be one of {DISC_INPUT_MODES}")
    state = generator_state(model)
    if input_mode == "expectation":
        if mode == "exact":
            e = _expectation_vector(state)
        else:
            e = _bits_to_rows(sample(state, shots, rng_seed)).mean(axis=0)
        return float(np.log(forward(disc, e)))
    if mode == "exact":
        logd = np.log(forward_batch(disc, _bit_matrix(state.n_qubits)))
        return float(probabilities(state) @ logd)
    rows = _bits_to_rows(sample(state, shots, rng_seed))
    return float(np.mean(np.log(forward_batch(disc, rows))))


def _model_expectation(model: GeneratorModel, mode: str, shots: int,
                       rng_seed: int) -> np.ndarray:
    state = generator_state(model)
    if mode == "exact":
        return _expectation_vector(state)
    return _bits_to_rows(sample(state, shots, rng_seed)).mean(axis=0)


def parameter_shift_gradient(model: GeneratorModel, disc: DiscriminatorParams,
                             i: int, *, mode: str = "exact",
                             shots: int = 10000, rng_seed: int = 0,
                             input_mode: str = "sampled") -> float:
    """Partial derivative of the objective with respect to angle i.

    Single-qubit rotations use the two-term rule at shifts of pi/2.
    Controlled rotations mix frequencies 1/2 and 1, so they use the exact
    four-term rule with an extra shift pair at 3pi/2.  In expectation
    input mode the shift rule applies to the expectation vector, which is
    linear in the output distribution; the nonlinear log D wrapper is
    handled by the chain rule.
    """
    if not 0 <= i < model.circuit.n_params:
        raise ValidationError(f"parameter index {i} out of range")
    if model.circuit.param_kinds()[i] in _SINGLE_KINDS:
        terms = ((_SINGLE_SHIFTS[0], 0.5), (_SINGLE_SHIFTS[1], -0.5))
    else:
        terms = ((_CTRL_SHIFTS[0], _C1), (_CTRL_SHIFTS[1], -_C1),
                 (_CTRL_SHIFTS[2], _C2), (_CTRL_SHIFTS[3], -_C2))

    def shifted(shift: float) -> GeneratorModel:
        theta = model.theta.copy()
        theta[i] += shift
        return model.with_theta(theta)

    def eval_seed(tag: int) -> int:
        return derive_seed(rng_seed, "loss", i, tag) if mode == "shot" else 0

    if input_mode == "sampled":
        return float(sum(
            weight * generator_objective(shifted(shift), disc, mode=mode,
                                         shots=shots, rng_seed=eval_seed(tag),
                                         input_mode="sampled")
            for tag, (shift, weight) in enumerate(terms)))
    if input_mode != "expectation":
        raise ValidationError(f"input_mode must be one of {DISC_INPUT_MODES}")
    de_dtheta = sum(
        weight * _model_expectation(shifted(shift), mode, shots, eval_seed(tag))
        for tag, (shift, weight) in enumerate(terms))
    e_base = _model_expectation(model, mode, shots, eval_seed(len(terms)))
    return float(input_gradient(disc, e_base) @ de_dtheta)


def _shift_plan(circuit: ParamCircuit) -> list[tuple[int, float]]:
    plan = []
    for p, kind in enumerate(circuit.param_kinds()):
        shifts = _SINGLE_SHIFTS if kind in _SINGLE_KINDS else _CTRL_SHIFTS
        plan.extend((p, s) for s in shifts)
    return plan


def _shifted_probabilities(model: GeneratorModel):
    """Output distributions of the base and every shifted circuit at once.

    Column 0 is the unshifted circuit; each later column applies one shift
    to one parameter.  All columns share a single sweep over the gates:
    the base-angle rotation is applied to every column, then the shifted
    columns receive an extra rotation of just the shift (same-axis
    rotations compose additively), right at the slot's position.
    """
    n = model.circuit.n_qubits
    plan = _shift_plan(model.circuit)
    amps = np.zeros((1 << n, 1 + len(plan)), dtype=complex)
    amps[0, :] = 1.0
    if model.condition_encoder is not None:
        apply_ops_inplace(
            amps, offset_ops(model.condition_encoder.ops, model.n_data), n)
    columns_of = {}
    for col, (p, shift) in enumerate(plan, start=1):
        columns_of.setdefault(p, []).append((col, shift))
    for op in model.circuit.ops:
        if isinstance(op, ParamSlot):
            apply_ops_inplace(amps, (op.bound(model.theta[op.param]),), n)
            for col, shift in columns_of.get(op.param, ()):
                apply_ops_inplace(amps[:, col], (op.bound(shift),), n)
        else:
            apply_ops_inplace(amps, (op,), n)
    return np.abs(amps) ** 2, plan


def _combine_shifts(circuit: ParamCircuit, values: np.ndarray) -> np.ndarray:
    """Reduce per-column values to per-parameter derivatives."""
    values = np.asarray(values, dtype=float)
    flat = values.ndim == 1
    if flat:
        values = values[:, None]
    grad = np.zeros((circuit.n_params, values.shape[1]))
    pos = 1
    for p, kind in enumerate(circuit.param_kinds()):
        if kind in _SINGLE_KINDS:
            grad[p] = 0.5 * (values[pos] - values[pos + 1])
            pos += 2
        else:
            grad[p] = (_C1 * (values[pos] - values[pos + 1])
                       + _C2 * (values[pos + 2] - values[pos + 3]))
            pos += 4
    return grad[:, 0] if flat else grad


def generator_gradient(model: GeneratorModel, disc: DiscriminatorParams, *,
                       mode: str = "exact", shots: int = 10000,
                       rng_seed: int = 0,
                       input_mode: str = "sampled") -> np.ndarray:
    """Full objective gradient over all parameters.

    Exact mode evaluates every shifted circuit in one batched statevector
    sweep; shot mode falls back to per-parameter evaluations with matched
    sample counts.
    """
    if mode == "shot":
        return np.array([
            parameter_shift_gradient(model, disc, i, mode=mode, shots=shots,
                                     rng_seed=rng_seed, input_mode=input_mode)
            for i in range(model.circuit.n_params)])
    probs, _ = _shifted_probabilities(model)
    n = model.circuit.n_qubits
    if input_mode == "sampled":
        logd = np.log(forward_batch(disc, _bit_matrix(n)))
        return _combine_shifts(model.circuit, logd @ probs)
    # expectation mode: chain rule through the expectation vector
    e = _bit_matrix(n).T @ probs  # (n_qubits, columns)
    jac = _combine_shifts(model.circuit, e.T)  # (n_params, n_qubits)
    return jac @ input_gradient(disc, e[:, 0])


def lr_schedule(epoch: int, config: TrainingConfig) -> float:
    """Stepwise decay: multiply by the factor every lr_decay_every epochs."""
    if epoch < 0:
        raise ValidationError("epoch must be nonnegative")
    return config.lr_initial * config.lr_decay_factor ** (
        epoch // config.lr_decay_every)


def train_discriminator_step(model: GeneratorModel, disc: DiscriminatorParams,
                             adam: AdamState, real_batch: list[Sample],
                             lr: float, *, rng_seed: int = 0,
                             input_mode: str = "sampled"):
    """One Adam update of the discriminator against a fresh fake batch."""
    if len(real_batch) == 0:
        raise ValidationError("real batch must be nonempty")
    real_rows = np.array([s.vector() for s in real_batch])
    state = generator_state(model)
    if input_mode == "expectation":
        fake_rows = np.tile(_expectation_vector(state), (len(real_batch), 1))
    else:
        fake_rows = _bits_to_rows(sample(state, len(real_batch), rng_seed))
    grads = discriminator_grad(disc, real_rows, fake_rows)
    disc, adam = adam_step(disc, grads, adam, lr)
    return disc, adam, discriminator_loss(disc, real_rows, fake_rows)


def train_generator_step(model: GeneratorModel, disc: DiscriminatorParams,
                         adam: AdamState, lr: float, *, mode: str = "exact",
                         shots: int = 10000, rng_seed: int = 0,
                         input_mode: str = "sampled"):
    """One Adam update of the angles, ascending the generator objective."""
    grad = generator_gradient(model, disc, mode=mode, shots=shots,
                              rng_seed=rng_seed, input_mode=input_mode)
    values, adam = adam_step_arrays({"theta": np.array(model.theta)},
                                    {"theta": -grad}, adam, lr)
    model = model.with_theta(values["theta"])
    g_loss = -generator_objective(model, disc, mode=mode, shots=shots,
                                  rng_seed=rng_seed, input_mode=input_mode)
    return model, adam, g_loss


def sample_model(model: GeneratorModel, shots: int,
                 rng_seed: int) -> list[Sample]:
    """Measure the joint register repeatedly, splitting data and label bits."""
    return [split_joint_bits(bits, model.n_data)
            for bits in sample(generator_state(model), shots, rng_seed)]


def evaluate_model(model: GeneratorModel, shots: int,
                   rng_seed: int) -> EvalReport:
    return evaluate_samples(sample_model(model, shots, rng_seed))


_CHECKPOINT_STATE_KEYS = ("adam_gen_t", "adam_disc_t", "epochs_completed",
                          "early_stop_epoch")


def save_training_checkpoint(path, config: TrainingConfig,
                             model: GeneratorModel, disc: DiscriminatorParams,
                             adam_gen: AdamState, adam_disc: AdamState,
                             history: TrainingHistory) -> None:
    arrays = {"theta": model.theta, **disc.as_arrays()}
    for tag, adam in (("gen", adam_gen), ("disc", adam_disc)):
        for key, value in adam.m.items():
            arrays[f"adam_{tag}_m.{key}"] = value
        for key, value in adam.v.items():
            arrays[f"adam_{tag}_v.{key}"] = value
    stop = history.early_stop_epoch
    state = {"adam_gen_t": adam_gen.t, "adam_disc_t": adam_disc.t,
             "epochs_completed": len(history.epochs),
             "early_stop_epoch": -1 if stop is None else stop}
    save_checkpoint(path, config_to_items(config), state, arrays)


def load_training_checkpoint(path):
    """Rebuild (config, model, disc, adam_gen, adam_disc) from a checkpoint."""
    items, state, arrays = load_checkpoint(path)
    config = config_from_items(items)
    for key in _CHECKPOINT_STATE_KEYS:
        if key not in state:
            raise FormatError(f"{path}: missing state counter {key!r}")
    try:
        model = GeneratorModel.build(config.n_data, config.n_cond,
                                     config.layers, config.topology,
                                     theta=arrays["theta"])
        disc = DiscriminatorParams(arrays["W1"], arrays["b1"],
                                   arrays["W2"], arrays["b2"])
        adam_gen = AdamState(
            m={"theta": arrays["adam_gen_m.theta"]},
            v={"theta": arrays["adam_gen_v.theta"]},
            t=state["adam_gen_t"])
        adam_disc = AdamState(
            m={k: arrays[f"adam_disc_m.{k}"] for k in ("W1", "b1", "W2", "b2")},
            v={k: arrays[f"adam_disc_v.{k}"] for k in ("W1", "b1", "W2", "b2")},
            t=state["adam_disc_t"])
    except KeyError as exc:
        raise FormatError(f"{path}: missing array {exc.args[0]!r}") from None
    return config, model, disc, adam_gen, adam_disc


def _persist(out_dir, config, model, disc, adam_gen, adam_disc, history,
             diagnostic: bool = False) -> None:
    if out_dir is None:
        return
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "history.csv").write_text(history_csv(history), encoding="ascii")
    (out / "metrics.csv").write_text(metrics_csv(history), encoding="ascii")
    name = "checkpoint_diagnostic.txt" if diagnostic else "checkpoint.txt"
    save_training_checkpoint(out / name, config, model, disc, adam_gen,
                             adam_disc, history)


def train(config: TrainingConfig, dataset: list[Sample], out_dir=None):
    """Run the full adversarial loop.

    Returns (model, discriminator, history).  When out_dir is given, the
    loss history, per-epoch metrics, and a checkpoint are rewritten after
    every epoch, so interrupted runs keep their latest state.
    """
    if len(dataset) == 0:
        raise ValidationError("dataset must be nonempty")
    theta_rng = np.random.default_rng(derive_seed(config.seed, "theta"))
    model = GeneratorModel.build(config.n_data, config.n_cond, config.layers,
                                 config.topology)
    theta0 = config.theta_init_scale * theta_rng.uniform(
        -math.pi, math.pi, model.circuit.n_params)
    model = model.with_theta(theta0)
    disc = init_discriminator(derive_seed(config.seed, "disc"),
                              n_inputs=config.n_data + config.n_cond)
    adam_gen = AdamState.zeros_like({"theta": np.array(model.theta)})
    adam_disc = AdamState.zeros_like(disc.as_arrays())
    history = TrainingHistory([], [])

    for epoch in range(config.epochs):
        lr = lr_schedule(epoch, config)
        epoch_batches = batches(dataset, config.batch_size,
                                derive_seed(config.seed, "batch", epoch))
        for it in range(config.iterations_per_epoch):
            real = epoch_batches[it % len(epoch_batches)]
            disc, adam_disc, d_loss = train_discriminator_step(
                model, disc, adam_disc, real, lr,
                rng_seed=derive_seed(config.seed, "fake", epoch, it),
                input_mode=config.disc_input_mode)
            model, adam_gen, g_loss = train_generator_step(
                model, disc, adam_gen, lr, mode=config.gradient_mode,
                shots=config.gradient_shots,
                rng_seed=derive_seed(config.seed, "grad", epoch, it),
                input_mode=config.disc_input_mode)
            history.iterations.append((epoch, it, d_loss, g_loss, lr))
            if not (math.isfinite(d_loss) and math.isfinite(g_loss)):
                _persist(out_dir, config, model, disc, adam_gen, adam_disc,
                         history, diagnostic=True)
                raise NumericError(
                    f"non-finite loss at epoch {epoch} iteration {it}: "
                    f"d_loss={d_loss!r} g_loss={g_loss!r}")
        report = evaluate_model(model, config.eval_shots,
                                derive_seed(config.seed, "eval", epoch))
        history.epochs.append((epoch, report.validity, report.condition_match,
                               report.uniformity, report.composite))
        if report.composite >= config.early_stop_threshold:
            history.early_stop_epoch = epoch
            _persist(out_dir, config, model, disc, adam_gen, adam_disc, history)
            break
        _persist(out_dir, config, model, disc, adam_gen, adam_disc, history)

    _persist(out_dir, config, model, disc, adam_gen, adam_disc, history)
    return model, disc, history
