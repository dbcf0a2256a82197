"""Shallow probes: seeded init, forward, and analytic backward.

A probe is a stack of affine layers; hidden layers apply ReLU, the output
layer is affine only. Everything is float32 and fully deterministic given
the ``ProbeSpec`` seed.
"""

from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigurationError, ShapeError
from ..seeds import rng_for
from ..validation import as_matrix


@dataclass(frozen=True)
class ProbeSpec:
    """Architecture and seed of a probe. Empty ``hidden_dims`` means an SLP."""

    input_dim: int
    hidden_dims: tuple[int, ...] = ()
    output_dim: int = 1
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "hidden_dims", tuple(int(h) for h in self.hidden_dims))
        dims = (self.input_dim, *self.hidden_dims, self.output_dim)
        if any(int(d) < 1 for d in dims):
            raise ConfigurationError(f"probe dimensions must all be >= 1, got {dims}")

    @property
    def layer_dims(self) -> list[tuple[int, int]]:
        """(fan_out, fan_in) per layer, input through output."""
        sizes = (self.input_dim, *self.hidden_dims, self.output_dim)
        return [(sizes[i + 1], sizes[i]) for i in range(len(sizes) - 1)]


@dataclass
class Probe:
    """Probe weights: per layer a (fan_out, fan_in) matrix and a bias vector."""

    spec: ProbeSpec
    weights: list[np.ndarray] = field(repr=False)
    biases: list[np.ndarray] = field(repr=False)

    @property
    def n_layers(self) -> int:
        return len(self.weights)

    def parameters(self) -> list[np.ndarray]:
        """Flat parameter list, weights and biases interleaved per layer."""
        out = []
        for w, b in zip(self.weights, self.biases):
            out.append(w)
            out.append(b)
        return out

    def set_parameters(self, params: list[np.ndarray]) -> None:
        expected = 2 * self.n_layers
        if len(params) != expected:
            raise ShapeError(f"expected {expected} parameter arrays, got {len(params)}")
        for i in range(self.n_layers):
            w, b = params[2 * i], params[2 * i + 1]
            if w.shape != self.weights[i].shape or b.shape != self.biases[i].shape:
                raise ShapeError(f"parameter shape mismatch at layer {i}")
            self.weights[i] = w.astype(np.float32, copy=False)
            self.biases[i] = b.astype(np.float32, copy=False)

    def copy_parameters(self) -> list[np.ndarray]:
        return [p.copy() for p in self.parameters()]

    def forward(self, batch: np.ndarray) -> np.ndarray:
        return probe_forward(self, batch)

    def backward(self, batch: np.ndarray, output_grad: np.ndarray) -> list[np.ndarray]:
        grads, _ = probe_backward(self, batch, output_grad, return_input_grad=True)
        return grads


def probe_init(spec: ProbeSpec) -> Probe:
    """Seeded init: weights uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)], biases zero."""
    rng = rng_for(spec.seed, "probe-init")
    weights, biases = [], []
    for fan_out, fan_in in spec.layer_dims:
        bound = 1.0 / np.sqrt(fan_in)
        w = rng.uniform(-bound, bound, size=(fan_out, fan_in)).astype(np.float32)
        weights.append(w)
        biases.append(np.zeros(fan_out, dtype=np.float32))
    return Probe(spec=spec, weights=weights, biases=biases)


def probe_forward(probe: Probe, batch: np.ndarray) -> np.ndarray:
    """Forward pass: ReLU after each hidden layer, affine output."""
    x = as_matrix(batch, "batch", cols=probe.spec.input_dim)
    out, _ = _forward_cached(probe, x)
    return out


def _forward_cached(probe: Probe, x: np.ndarray):
    """Forward pass keeping per-layer inputs for the backward pass."""
    inputs = []
    a = x
    last = probe.n_layers - 1
    for i, (w, b) in enumerate(zip(probe.weights, probe.biases)):
        inputs.append(a)
        a = a @ w.T + b
        if i != last:
            np.maximum(a, 0.0, out=a)
    return a, inputs


def probe_backward(
    probe: Probe,
    batch: np.ndarray,
    output_grad: np.ndarray,
    return_input_grad: bool = False,
):
    """Analytic gradients of the forward map composed with ``output_grad``.

    Returns gradients aligned with ``probe.parameters()``; optionally also
    the gradient with respect to the batch itself (needed when the probe is
    part of a larger differentiable model).
    """
    x = as_matrix(batch, "batch", cols=probe.spec.input_dim)
    out, inputs = _forward_cached(probe, x)
    g = as_matrix(output_grad, "output_grad")
    if g.shape != out.shape:
        raise ShapeError(f"output_grad shape {g.shape} does not match output {out.shape}")

    grads: list[np.ndarray | None] = [None] * (2 * probe.n_layers)
    for i in range(probe.n_layers - 1, -1, -1):
        a_in = inputs[i]
        if i != probe.n_layers - 1:
            # ReLU: the post-activation of layer i is the input of layer i+1.
            g = g * (inputs[i + 1] > 0)
        grads[2 * i] = g.T @ a_in
        grads[2 * i + 1] = g.sum(axis=0)
        g = g @ probe.weights[i]
    grads = [gr.astype(np.float32, copy=False) for gr in grads]
    if return_input_grad:
        return grads, g.astype(np.float32, copy=False)
    return grads
