"""Conditional quantum GAN simulator for bars-and-stripes data.

A parameterized quantum circuit acts as the generator and a small classical
network as the discriminator.  The generator prepares a 7-qubit state (4 data
qubits + 3 condition qubits), adversarial training pushes its measurement
distribution toward the BAS(2,2) images, and the condition register steers
which image class is produced.
"""

from .bas import (
    Category,
    BasImage,
    Sample,
    batches,
    categorize,
    enumerate_valid,
    synthesize_training_set,
)
from .circuits import (
    ConditionSpec,
    ParamCircuit,
    ParamSlot,
    Topology,
    build_condition_encoder,
    build_generator,
    build_w3_prep,
    dump_circuit,
    solve_stage1_angles,
)
from .discriminator import (
    AdamState,
    DiscriminatorParams,
    adam_step,
    discriminator_grad,
    discriminator_loss,
    forward,
    forward_batch,
    init_discriminator,
    input_gradient,
)
from .errors import (
    ConfigError,
    EncoderSolveError,
    FormatError,
    NumericError,
    QcganError,
    ValidationError,
)
from .metrics import (
    EvalReport,
    bas_state_entropy_check,
    composite_accuracy,
    condition_match_rate,
    conditional_histogram,
    evaluate_samples,
    split_joint_bits,
    uniformity_score,
    validity_rate,
)
from .simulator import (
    QuantumState,
    apply_gate,
    entanglement_entropy,
    expectation_one,
    new_state,
    partial_trace,
    probabilities,
    sample,
)
from .training import (
    GeneratorModel,
    TrainingConfig,
    TrainingHistory,
    evaluate_model,
    generator_gradient,
    generator_objective,
    generator_output_distribution,
    load_training_checkpoint,
    parameter_shift_gradient,
    sample_model,
    save_training_checkpoint,
    train,
    train_discriminator_step,
    train_generator_step,
)

__version__ = "0.1.0"

__all__ = [
    "AdamState",
    "BasImage",
    "Category",
    "ConditionSpec",
    "ConfigError",
    "DiscriminatorParams",
    "EncoderSolveError",
    "EvalReport",
    "FormatError",
    "GeneratorModel",
    "NumericError",
    "ParamCircuit",
    "ParamSlot",
    "QcganError",
    "QuantumState",
    "Sample",
    "Topology",
    "TrainingConfig",
    "TrainingHistory",
    "ValidationError",
    "adam_step",
    "apply_gate",
    "bas_state_entropy_check",
    "batches",
    "build_condition_encoder",
    "build_generator",
    "build_w3_prep",
    "categorize",
    "composite_accuracy",
    "condition_match_rate",
    "conditional_histogram",
    "discriminator_grad",
    "discriminator_loss",
    "dump_circuit",
    "entanglement_entropy",
    "enumerate_valid",
    "evaluate_model",
    "evaluate_samples",
    "expectation_one",
    "forward",
    "forward_batch",
    "generator_gradient",
    "generator_objective",
    "generator_output_distribution",
    "init_discriminator",
    "input_gradient",
    "load_training_checkpoint",
    "new_state",
    "parameter_shift_gradient",
    "partial_trace",
    "probabilities",
    "sample",
    "sample_model",
    "save_training_checkpoint",
    "solve_stage1_angles",
    "split_joint_bits",
    "synthesize_training_set",
    "train",
    "train_discriminator_step",
    "train_generator_step",
    "uniformity_score",
    "validity_rate",
]
