"""Adam optimizer over flat lists of parameter arrays."""

from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigurationError, ShapeError


@dataclass(frozen=True)
class AdamConfig:
    """Optimizer and training-loop configuration.

    Weight decay is coupled: added to the gradient as an L2 term before the
    moment updates (classic Adam-with-L2).
    """

    learning_rate: float = 1e-3
    weight_decay: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    batch_size: int = 32
    max_epochs: int = 100
    patience: int = 10

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ConfigurationError(f"learning_rate must be > 0, got {self.learning_rate}")
        if not (0 <= self.beta1 < 1) or not (0 <= self.beta2 < 1):
            raise ConfigurationError("beta1 and beta2 must lie in [0, 1)")
        if self.weight_decay < 0:
            raise ConfigurationError("weight_decay must be >= 0")
        if self.epsilon <= 0:
            raise ConfigurationError("epsilon must be > 0")
        if self.batch_size < 1:
            raise ConfigurationError("batch_size must be >= 1")
        if self.max_epochs < 1:
            raise ConfigurationError("max_epochs must be >= 1")
        if self.patience < 1:
            raise ConfigurationError("patience must be >= 1")


@dataclass
class AdamState:
    """First/second moment estimates and the step counter."""

    m: list[np.ndarray] = field(repr=False)
    v: list[np.ndarray] = field(repr=False)
    t: int = 0

    @classmethod
    def for_parameters(cls, params: list[np.ndarray]) -> "AdamState":
        return cls(
            m=[np.zeros_like(p, dtype=np.float32) for p in params],
            v=[np.zeros_like(p, dtype=np.float32) for p in params],
        )


def adam_step(
    params: list[np.ndarray],
    grads: list[np.ndarray],
    state: AdamState,
    cfg: AdamConfig,
) -> list[np.ndarray]:
    """One Adam update with bias correction. Mutates ``state``; returns new params."""
    if len(params) != len(grads) or len(params) != len(state.m):
        raise ShapeError("params, grads, and state must have the same layout")
    state.t += 1
    b1, b2 = cfg.beta1, cfg.beta2
    c1 = np.float32(1.0 - b1**state.t)
    c2 = np.float32(1.0 - b2**state.t)
    lr = np.float32(cfg.learning_rate)
    eps = np.float32(cfg.epsilon)
    wd = np.float32(cfg.weight_decay)
    out = []
    for i, (p, g) in enumerate(zip(params, grads)):
        if p.shape != g.shape:
            raise ShapeError(f"gradient shape {g.shape} does not match parameter {p.shape}")
        if wd > 0:
            g = g + wd * p
        state.m[i] = np.float32(b1) * state.m[i] + np.float32(1 - b1) * g
        state.v[i] = np.float32(b2) * state.v[i] + np.float32(1 - b2) * (g * g)
        m_hat = state.m[i] / c1
        v_hat = state.v[i] / c2
        out.append((p - lr * m_hat / (np.sqrt(v_hat) + eps)).astype(np.float32, copy=False))
    return out
