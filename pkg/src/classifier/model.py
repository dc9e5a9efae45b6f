"""
Stacked LSTM encoder with a two-layer feed-forward decoder.

Parameters live in a flat name -> array dict:

    lstm.{l}.W  (in + H, 4H)   rows: layer input then previous hidden state
    lstm.{l}.b  (4H,)          gate blocks in order input, forget, cell, output
    dec1.W      (L*H, F)       concatenated final hidden states -> features
    dec1.b      (F,)
    dec2.W      (F, 27)        features -> logits
    dec2.b      (27,)

The ReLU output of dec1 is the feature embedding shared with the domain head.
"""

from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

from seqcore import FixedSequence, FloatArray

from .hparams import Hparams

Params = dict[str, FloatArray]


def parameter_shapes(h: Hparams) -> dict[str, tuple[int, ...]]:
    """Name -> shape for every parameter tensor, in storage order."""
    H = h.lstm_hidden
    shapes: dict[str, tuple[int, ...]] = {}
    for layer in range(h.lstm_layers):
        in_dim = h.input_channels if layer == 0 else H
        shapes[f"lstm.{layer}.W"] = (in_dim + H, 4 * H)
        shapes[f"lstm.{layer}.b"] = (4 * H,)
    shapes["dec1.W"] = (h.decoder_input, h.ff_hidden)
    shapes["dec1.b"] = (h.ff_hidden,)
    shapes["dec2.W"] = (h.ff_hidden, h.num_classes)
    shapes["dec2.b"] = (h.num_classes,)
    return shapes


def parameter_count(h: Hparams) -> int:
    """Total number of scalar parameters."""
    return sum(int(np.prod(shape)) for shape in parameter_shapes(h).values())


@dataclass(frozen=True, eq=False)
class Model:
    """Classifier parameters plus the shape they were built for."""

    hparams: Hparams
    params: Params

    def __post_init__(self) -> None:
        """Check names, shapes and finiteness; store private read-only copies."""
        expected = parameter_shapes(self.hparams)
        if set(self.params) != set(expected):
            missing = sorted(set(expected) - set(self.params))
            extra = sorted(set(self.params) - set(expected))
            raise ValueError(f"Parameter names do not match hparams (missing {missing}, unexpected {extra})")
        frozen: Params = {}
        for name, shape in expected.items():
            value = np.array(self.params[name], dtype=np.float64, copy=True)
            if value.shape != shape:
                raise ValueError(f"{name} has shape {value.shape}, expected {shape}")
            if not np.all(np.isfinite(value)):
                raise ValueError(f"{name} contains non-finite values")
            value.flags.writeable = False
            frozen[name] = value
        object.__setattr__(self, "params", frozen)

    @classmethod
    def wrap(cls, hparams: Hparams, params: Params) -> "Model":
        """View over a working parameter dict, without copying or validation."""
        model = object.__new__(cls)
        object.__setattr__(model, "hparams", hparams)
        object.__setattr__(model, "params", params)
        return model

    def working_copy(self) -> Params:
        """Writable copy of the parameters for an optimizer to update."""
        return {name: np.array(value, copy=True) for name, value in self.params.items()}

    def parameter_norms(self) -> dict[str, float]:
        return {name: float(np.linalg.norm(value)) for name, value in self.params.items()}

    def equals(self, other: "Model") -> bool:
        """Exact equality of hparams and every parameter."""
        return self.hparams == other.hparams and all(
            np.array_equal(value, other.params[name]) for name, value in self.params.items()
        )


def init_model(h: Hparams, seed: int) -> Model:
    """
    Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights, forget-gate bias 1.0.

    fan_in is the row count of the weight matrix a bias belongs to.
    """
    rng = np.random.default_rng(seed)
    shapes = parameter_shapes(h)
    params: Params = {}
    for name, shape in shapes.items():
        fan_in = shapes[name.removesuffix(".b") + ".W"][0]
        bound = 1.0 / np.sqrt(fan_in)
        params[name] = rng.uniform(-bound, bound, size=shape)
    for layer in range(h.lstm_layers):
        H = h.lstm_hidden
        params[f"lstm.{layer}.b"][H : 2 * H] = 1.0
    return Model(h, params)


def stack_inputs(model_or_hparams: Model | Hparams, batch: Iterable[FixedSequence]) -> FloatArray:
    """Stack FixedSequences into a (B, T, C) array, checking them against the hparams."""
    h = model_or_hparams.hparams if isinstance(model_or_hparams, Model) else model_or_hparams
    rows = []
    for i, item in enumerate(batch):
        if item.channels.shape != (h.input_channels, h.resample_points):
            raise ValueError(
                f"Batch item {i} has shape {item.channels.shape}, "
                f"expected ({h.input_channels}, {h.resample_points})"
            )
        rows.append(item.channels.T)
    if not rows:
        return np.zeros((0, h.resample_points, h.input_channels))
    return np.stack(rows)


@dataclass
class LayerCache:
    """Per-timestep values of one LSTM layer, time-major."""

    xh: FloatArray  # (T, B, in + H)
    c: FloatArray  # (T + 1, B, H), c[0] = 0
    i: FloatArray  # (T, B, H)
    f: FloatArray
    g: FloatArray
    o: FloatArray


@dataclass
class ForwardCache:
    """Everything backward() needs from a forward pass."""

    layers: list[LayerCache] = field(default_factory=list)
    hcat: FloatArray = field(default_factory=lambda: np.zeros((0, 0)))
    z1: FloatArray = field(default_factory=lambda: np.zeros((0, 0)))
    features: FloatArray = field(default_factory=lambda: np.zeros((0, 0)))


def _check_input(h: Hparams, X: FloatArray) -> None:
    if X.ndim != 3 or X.shape[1:] != (h.resample_points, h.input_channels):
        raise ValueError(
            f"Input has shape {X.shape}, expected (B, {h.resample_points}, {h.input_channels})"
        )


def forward_with_cache(model: Model, X: FloatArray) -> tuple[FloatArray, ForwardCache]:
    """
    Run the network on a (B, T, C) batch.

    Returns:
        (logits (B, 27), cache); cache.features holds the (B, F) embeddings
    """
    h, p = model.hparams, model.params
    _check_input(h, X)
    B, T, _ = X.shape
    H = h.lstm_hidden
    cache = ForwardCache()
    inputs = np.transpose(X, (1, 0, 2))
    finals = []
    for layer in range(h.lstm_layers):
        W, b = p[f"lstm.{layer}.W"], p[f"lstm.{layer}.b"]
        in_dim = inputs.shape[2]
        lc = LayerCache(
            xh=np.empty((T, B, in_dim + H)),
            c=np.zeros((T + 1, B, H)),
            i=np.empty((T, B, H)),
            f=np.empty((T, B, H)),
            g=np.empty((T, B, H)),
            o=np.empty((T, B, H)),
        )
        outputs = np.empty((T, B, H))
        hidden = np.zeros((B, H))
        for t in range(T):
            lc.xh[t, :, :in_dim] = inputs[t]
            lc.xh[t, :, in_dim:] = hidden
            z = lc.xh[t] @ W + b
            lc.i[t] = expit(z[:, :H])
            lc.f[t] = expit(z[:, H : 2 * H])
            lc.g[t] = np.tanh(z[:, 2 * H : 3 * H])
            lc.o[t] = expit(z[:, 3 * H :])
            lc.c[t + 1] = lc.f[t] * lc.c[t] + lc.i[t] * lc.g[t]
            hidden = lc.o[t] * np.tanh(lc.c[t + 1])
            outputs[t] = hidden
        cache.layers.append(lc)
        finals.append(hidden)
        inputs = outputs

    cache.hcat = np.concatenate(finals, axis=1)
    cache.z1 = cache.hcat @ p["dec1.W"] + p["dec1.b"]
    cache.features = np.maximum(cache.z1, 0.0)
    logits = cache.features @ p["dec2.W"] + p["dec2.b"]
    return logits, cache


def forward(model: Model, batch: list[FixedSequence] | FloatArray) -> FloatArray:
    """Logits (B, 27) for a list of FixedSequences or a (B, T, C) array."""
    X = batch if isinstance(batch, np.ndarray) else stack_inputs(model, batch)
    return forward_with_cache(model, X)[0]


def extract_features(model: Model, X: FloatArray) -> FloatArray:
    """(B, F) feature embeddings."""
    return forward_with_cache(model, X)[1].features


def backward(
    model: Model,
    cache: ForwardCache,
    dlogits: FloatArray,
    dfeatures: FloatArray | None = None,
) -> Params:
    """
    Gradients of a scalar loss with respect to every parameter.

    Args:
        model: Model the cache was produced with
        cache: Result of forward_with_cache
        dlogits: dLoss/dlogits, (B, 27)
        dfeatures: Extra dLoss/dfeatures injected below dec2 (for example by a
            domain head), (B, F)
    """
    h, p = model.hparams, model.params
    H = h.lstm_hidden
    grads: Params = {}

    grads["dec2.W"] = cache.features.T @ dlogits
    grads["dec2.b"] = dlogits.sum(axis=0)
    dfeat = dlogits @ p["dec2.W"].T
    if dfeatures is not None:
        dfeat = dfeat + dfeatures
    dz1 = dfeat * (cache.z1 > 0)
    grads["dec1.W"] = cache.hcat.T @ dz1
    grads["dec1.b"] = dz1.sum(axis=0)
    dhcat = dz1 @ p["dec1.W"].T

    from_above: FloatArray | None = None
    for layer in reversed(range(h.lstm_layers)):
        lc = cache.layers[layer]
        W = p[f"lstm.{layer}.W"]
        T, B, width = lc.xh.shape
        in_dim = width - H
        dh_out = np.zeros((T, B, H)) if from_above is None else from_above
        dh_out[T - 1] += dhcat[:, layer * H : (layer + 1) * H]

        dW = np.zeros_like(W)
        db = np.zeros(4 * H)
        dinputs = np.empty((T, B, in_dim))
        dh_next = np.zeros((B, H))
        dc_next = np.zeros((B, H))
        for t in reversed(range(T)):
            i, f, g, o = lc.i[t], lc.f[t], lc.g[t], lc.o[t]
            tanh_c = np.tanh(lc.c[t + 1])
            dh = dh_out[t] + dh_next
            dc = dh * o * (1.0 - tanh_c**2) + dc_next
            dz = np.concatenate(
                (
                    dc * g * i * (1.0 - i),
                    dc * lc.c[t] * f * (1.0 - f),
                    dc * i * (1.0 - g**2),
                    dh * tanh_c * o * (1.0 - o),
                ),
                axis=1,
            )
            dW += lc.xh[t].T @ dz
            db += dz.sum(axis=0)
            dxh = dz @ W.T
            dinputs[t] = dxh[:, :in_dim]
            dh_next = dxh[:, in_dim:]
            dc_next = dc * f
        grads[f"lstm.{layer}.W"] = dW
        grads[f"lstm.{layer}.b"] = db
        from_above = dinputs
    return grads
