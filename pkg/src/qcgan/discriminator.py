"""Classical binary classifier with manual backpropagation and Adam.

The discriminator is a small feed-forward net, input -> ReLU hidden ->
sigmoid output, sized 7 -> 4 -> 1 for the 2x2 bars-and-stripes task (four
data bits plus three label bits).  Gradients are exact reverse-mode chain
rule; the optimizer is Adam with bias correction.  The Adam helpers operate
on named arrays so the training loop can reuse them for the generator's
angle vector.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

PROB_CLAMP = 1e-12
ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8


@dataclass(frozen=True)
class DiscriminatorParams:
    """Weights and biases; also reused as the container for their gradients."""

    W1: np.ndarray
    b1: np.ndarray
    W2: np.ndarray
    b2: np.ndarray

    def __post_init__(self):
        hidden, inputs = self.W1.shape
        if self.b1.shape != (hidden,) or self.W2.shape != (1, hidden) \
                or self.b2.shape != (1,):
            raise ValidationError("parameter shapes are inconsistent")
        for arr in (self.W1, self.b1, self.W2, self.b2):
            if not np.all(np.isfinite(arr)):
                raise ValidationError("parameters must be finite")

    @property
    def n_inputs(self) -> int:
        return self.W1.shape[1]

    def as_arrays(self) -> dict[str, np.ndarray]:
        return {"W1": self.W1, "b1": self.b1, "W2": self.W2, "b2": self.b2}

    @classmethod
    def from_arrays(cls, arrays: dict[str, np.ndarray]) -> "DiscriminatorParams":
        return cls(arrays["W1"], arrays["b1"], arrays["W2"], arrays["b2"])


@dataclass
class AdamState:
    """First/second moment accumulators plus the shared step counter."""

    m: dict[str, np.ndarray]
    v: dict[str, np.ndarray]
    t: int = 0

    @classmethod
    def zeros_like(cls, arrays: dict[str, np.ndarray]) -> "AdamState":
        return cls({k: np.zeros_like(a) for k, a in arrays.items()},
                   {k: np.zeros_like(a) for k, a in arrays.items()}, 0)


def init_discriminator(rng_seed: int, n_inputs: int = 7,
                       n_hidden: int = 4) -> DiscriminatorParams:
    """Uniform Glorot-style init, half-width sqrt(6/(fan_in+fan_out)); zero biases."""
    rng = np.random.default_rng(rng_seed)
    lim1 = np.sqrt(6.0 / (n_inputs + n_hidden))
    lim2 = np.sqrt(6.0 / (n_hidden + 1))
    return DiscriminatorParams(
        W1=rng.uniform(-lim1, lim1, size=(n_hidden, n_inputs)),
        b1=np.zeros(n_hidden),
        W2=rng.uniform(-lim2, lim2, size=(1, n_hidden)),
        b2=np.zeros(1),
    )


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z, dtype=float)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _as_matrix(batch, n_inputs: int) -> np.ndarray:
    X = np.asarray(batch, dtype=float)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    if X.ndim != 2 or X.shape[1] != n_inputs:
        raise ValidationError(
            f"expected rows of {n_inputs} inputs, got shape {X.shape}")
    return X


def forward_batch(params: DiscriminatorParams, batch) -> np.ndarray:
    """Probabilities for a batch of input rows, clamped away from 0 and 1."""
    X = _as_matrix(batch, params.n_inputs)
    hidden = np.maximum(X @ params.W1.T + params.b1, 0.0)
    logits = hidden @ params.W2.T + params.b2
    return np.clip(_sigmoid(logits[:, 0]), PROB_CLAMP, 1.0 - PROB_CLAMP)


def forward(params: DiscriminatorParams, x) -> float:
    """Probability that a single input is real."""
    return float(forward_batch(params, [np.asarray(x, dtype=float)])[0])


def discriminator_loss(params: DiscriminatorParams, real_batch,
                       fake_batch) -> float:
    """Negative of the two-sided objective: -[mean log D(real) + mean log(1-D(fake))]."""
    if len(real_batch) == 0 or len(fake_batch) == 0:
        raise ValidationError("batches must be nonempty")
    d_real = forward_batch(params, real_batch)
    d_fake = forward_batch(params, fake_batch)
    real_term = np.mean(np.log(np.maximum(d_real, PROB_CLAMP)))
    fake_term = np.mean(np.log(np.maximum(1.0 - d_fake, PROB_CLAMP)))
    return float(-(real_term + fake_term))


def discriminator_grad(params: DiscriminatorParams, real_batch,
                       fake_batch) -> DiscriminatorParams:
    """Exact gradient of discriminator_loss with respect to every parameter."""
    if len(real_batch) == 0 or len(fake_batch) == 0:
        raise ValidationError("batches must be nonempty")
    Xr = _as_matrix(real_batch, params.n_inputs)
    Xf = _as_matrix(fake_batch, params.n_inputs)
    X = np.vstack([Xr, Xf])
    pre = X @ params.W1.T + params.b1
    hidden = np.maximum(pre, 0.0)
    d = np.clip(_sigmoid((hidden @ params.W2.T + params.b2)[:, 0]),
                PROB_CLAMP, 1.0 - PROB_CLAMP)
    # d(-log d)/dlogit = d - 1 on real rows, d(-log(1-d))/dlogit = d on fake rows
    g_logit = np.concatenate([
        (d[:len(Xr)] - 1.0) / len(Xr),
        d[len(Xr):] / len(Xf),
    ])
    gW2 = (g_logit @ hidden).reshape(1, -1)
    gb2 = np.array([g_logit.sum()])
    g_hidden = np.outer(g_logit, params.W2[0])
    g_hidden[pre <= 0] = 0.0
    gW1 = g_hidden.T @ X
    gb1 = g_hidden.sum(axis=0)
    return DiscriminatorParams(gW1, gb1, gW2, gb2)


def input_gradient(params: DiscriminatorParams, x) -> np.ndarray:
    """Gradient of log D(x) with respect to the input vector."""
    x = np.asarray(x, dtype=float).reshape(-1)
    pre = params.W1 @ x + params.b1
    hidden = np.maximum(pre, 0.0)
    d = float(np.clip(_sigmoid(params.W2 @ hidden + params.b2),
                      PROB_CLAMP, 1.0 - PROB_CLAMP)[0])
    # dlogD/dlogit = 1 - d, then back through the ReLU layer
    g_hidden = (1.0 - d) * params.W2[0]
    g_hidden = np.where(pre > 0, g_hidden, 0.0)
    return params.W1.T @ g_hidden


def adam_step_arrays(values: dict[str, np.ndarray], grads: dict[str, np.ndarray],
                     state: AdamState, lr: float,
                     beta1: float = ADAM_BETA1, beta2: float = ADAM_BETA2,
                     eps: float = ADAM_EPS) -> tuple[dict[str, np.ndarray], AdamState]:
    """One bias-corrected Adam update over a dict of named arrays."""
    if set(values) != set(grads) or set(values) != set(state.m):
        raise ValidationError("parameter/gradient/state keys must agree")
    t = state.t + 1
    new_vals, new_m, new_v = {}, {}, {}
    for key, val in values.items():
        g = grads[key]
        if g.shape != val.shape:
            raise ValidationError(f"gradient shape mismatch for {key}")
        m = beta1 * state.m[key] + (1 - beta1) * g
        v = beta2 * state.v[key] + (1 - beta2) * g * g
        m_hat = m / (1 - beta1 ** t)
        v_hat = v / (1 - beta2 ** t)
        new_vals[key] = val - lr * m_hat / (np.sqrt(v_hat) + eps)
        new_m[key], new_v[key] = m, v
    return new_vals, AdamState(new_m, new_v, t)


def adam_step(params: DiscriminatorParams, grads: DiscriminatorParams,
              state: AdamState, lr: float,
              beta1: float = ADAM_BETA1, beta2: float = ADAM_BETA2,
              eps: float = ADAM_EPS) -> tuple[DiscriminatorParams, AdamState]:
    """One Adam update of the discriminator parameters."""
    vals, new_state = adam_step_arrays(
        params.as_arrays(), grads.as_arrays(), state, lr, beta1, beta2, eps)
    return DiscriminatorParams.from_arrays(vals), new_state
