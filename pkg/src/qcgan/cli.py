"""Command-line entry point: dataset synthesis, training, sampling, eval.

Exit codes: 0 success, 1 configuration error, 2 file or format error,
3 numeric failure.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .bas import Sample, synthesize_training_set
from .circuits import (
    ConditionSpec,
    build_condition_encoder,
    build_generator,
    dump_circuit,
    simulate,
)
from .errors import ConfigError, FormatError, NumericError, ValidationError
from .metrics import degenerate_condition_spec, evaluate_samples
from .training import (
    GeneratorModel,
    config_from_items,
    config_to_items,
    load_training_checkpoint,
    sample_model,
    train,
)


def write_dataset(path, samples: list[Sample]) -> None:
    lines = [f"{s.data_bits} {s.label}" for s in samples]
    Path(path).write_text("".join(line + "\n" for line in lines),
                          encoding="ascii")


def read_dataset(path) -> list[Sample]:
    """Parse the one-sample-per-line format, failing with line numbers."""
    text = Path(path).read_text(encoding="ascii")
    samples = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or not all(set(p) <= {"0", "1"} for p in parts):
            raise FormatError(
                f"{path}:{lineno}: expected '<data_bits> <label_bits>', "
                f"got {raw!r}")
        try:
            samples.append(Sample(parts[0], parts[1]))
        except ValidationError as exc:
            raise FormatError(f"{path}:{lineno}: {exc}") from None
    return samples


def read_config_file(path) -> list[tuple[str, str]]:
    """key = value lines; blank lines and # comments are ignored."""
    text = Path(path).read_text(encoding="ascii")
    items = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        items.append((key.strip(), value.strip()))
    return items


def cmd_gen_data(args) -> int:
    samples = synthesize_training_set(args.count, args.seed,
                                      stratified=args.stratified)
    write_dataset(args.out, samples)
    counts = {}
    for s in samples:
        counts[s.label] = counts.get(s.label, 0) + 1
    for name, label in (("horizontal", "001"), ("vertical", "010"),
                        ("uniform", "100")):
        print(f"{name} {counts.get(label, 0)}")
    print(f"wrote {len(samples)} samples to {args.out}")
    return 0


def cmd_train(args) -> int:
    items = read_config_file(args.config) if args.config else []
    dataset_path = None
    out_dir = None
    config_items = []
    for key, value in items:
        if key == "dataset":
            dataset_path = value
        elif key == "out_dir":
            out_dir = value
        else:
            config_items.append((key, value))
    config = config_from_items(config_items)
    if args.dataset:
        dataset_path = args.dataset
    if args.out_dir:
        out_dir = args.out_dir
    if dataset_path is None:
        raise ConfigError("no dataset path given (config key 'dataset' "
                          "or flag --dataset)")
    if out_dir is None:
        raise ConfigError("no output directory given (config key 'out_dir' "
                          "or flag --out-dir)")
    dataset = read_dataset(dataset_path)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    echo = [("dataset", str(dataset_path)), ("out_dir", str(out_dir))]
    echo.extend(config_to_items(config))
    (out / "config_echo.txt").write_text(
        "".join(f"{k} = {v}\n" for k, v in echo), encoding="ascii")
    if args.dump_circuit:
        template = build_generator(config.n_data, config.n_cond,
                                   config.layers, config.topology)
        (out / "circuit.txt").write_text(dump_circuit(template),
                                         encoding="ascii")

    model, disc, history = train(config, dataset, out_dir=out)
    print(f"epochs run: {len(history.epochs)}")
    if history.epochs:
        print(f"final composite accuracy: {history.epochs[-1][4]:.4f}")
    else:
        print("final composite accuracy: n/a (no epochs)")
    if history.early_stop_epoch is not None:
        print(f"threshold {config.early_stop_threshold} reached: yes "
              f"(early stop at epoch {history.early_stop_epoch})")
    else:
        print(f"threshold {config.early_stop_threshold} reached: no")
    return 0


def cmd_sample(args) -> int:
    if args.shots < 0:
        raise ConfigError("shots must be nonnegative")
    _, model, _, _, _ = load_training_checkpoint(args.checkpoint)
    if args.label is not None:
        encoder = build_condition_encoder(
            degenerate_condition_spec(args.label, model.n_cond))
        model = GeneratorModel(model.n_data, model.n_cond, model.layers,
                               model.topology, model.theta, model.circuit,
                               encoder)
    samples = sample_model(model, args.shots, args.seed)
    write_dataset(args.out, samples)
    counts = {}
    for s in samples:
        counts[s.data_bits] = counts.get(s.data_bits, 0) + 1
    suffix = f" (label {args.label})" if args.label is not None else ""
    print(f"pattern counts{suffix}:")
    for pattern in sorted(counts):
        print(f"{pattern} {counts[pattern]}")
    print(f"wrote {len(samples)} samples to {args.out}")
    return 0


def cmd_eval(args) -> int:
    samples = read_dataset(args.samples)
    report = evaluate_samples(samples)
    print(f"validity: {report.validity!r}")
    print(f"condition_match: {report.condition_match!r}")
    print(f"uniformity: {report.uniformity!r}")
    print(f"composite: {report.composite!r}")
    print(f"csv: {report.validity!r},{report.condition_match!r},"
          f"{report.uniformity!r},{report.composite!r}")
    return 0


def _parse_probs(text: str, m: int) -> tuple[float, ...]:
    if text is None:
        return (1.0 / m,) * m
    values = []
    for token in text.split(","):
        token = token.strip()
        if "/" in token:
            num, _, den = token.partition("/")
            try:
                values.append(float(num) / float(den))
            except (ValueError, ZeroDivisionError):
                raise ConfigError(f"bad probability {token!r}") from None
        else:
            try:
                values.append(float(token))
            except ValueError:
                raise ConfigError(f"bad probability {token!r}") from None
    return tuple(values)


def cmd_prep_w(args) -> int:
    probs = _parse_probs(args.probs, args.m)
    spec = ConditionSpec(args.m, probs)
    encoder = build_condition_encoder(spec)
    state = simulate(encoder)
    want = np.zeros(1 << args.m)
    for j in range(1, args.m + 1):
        want[1 << (j - 1)] = np.sqrt(spec.probs[j - 1])
    deviation = float(np.max(np.abs(state.amplitudes - want)))
    print(f"max amplitude deviation: {deviation:.3e}")
    if args.dump:
        Path(args.dump).write_text(dump_circuit(encoder), encoding="ascii")
        print(f"circuit written to {args.dump}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcgan",
        description="Conditional quantum-circuit GAN for 2x2 bars-and-stripes")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-data", help="synthesize a labeled training set")
    g.add_argument("--count", type=int, default=6000)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.add_argument("--stratified", action="store_true",
                   help="equal counts per image (count must divide by 6)")
    g.set_defaults(func=cmd_gen_data)

    t = sub.add_parser("train", help="run the adversarial training loop")
    t.add_argument("--config", help="key = value file of training settings")
    t.add_argument("--dataset", help="training set file (overrides config)")
    t.add_argument("--out-dir", dest="out_dir",
                   help="output directory (overrides config)")
    t.add_argument("--dump-circuit", action="store_true",
                   help="also write the unbound generator template")
    t.set_defaults(func=cmd_train)

    s = sub.add_parser("sample", help="draw samples from a trained model")
    s.add_argument("--checkpoint", required=True)
    s.add_argument("--shots", type=int, default=10000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--label", help="pin the condition register (e.g. 001)")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_sample)

    e = sub.add_parser("eval", help="score a sample file")
    e.add_argument("--samples", required=True)
    e.set_defaults(func=cmd_eval)

    w = sub.add_parser("prep-w", help="build and verify a condition encoder")
    w.add_argument("--m", type=int, default=3, help="number of categories")
    w.add_argument("--probs",
                   help="comma-separated weights, fractions allowed (1/3)")
    w.add_argument("--dump", help="write the circuit text to this path")
    w.set_defaults(func=cmd_prep_w)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
