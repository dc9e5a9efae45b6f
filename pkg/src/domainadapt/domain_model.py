"""Classifier split into feature extractor and letter head, plus a domain head."""

from collections.abc import Sequence as SeqOf
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from classifier import Model, Params
from seqcore import FloatArray

HEAD_NAMES = ("dom1.W", "dom1.b", "dom2.W", "dom2.b")

# Feature extractor: the LSTM layers and dec1. Letter classifier: dec2.
CHAR_HEAD_NAMES = ("dec2.W", "dec2.b")


def feature_parameter_names(model: Model) -> list[str]:
    """Names of the feature-extractor parameters of a classifier."""
    return [name for name in model.params if name not in CHAR_HEAD_NAMES]


def head_shapes(feature_width: int, hidden: int) -> dict[str, tuple[int, ...]]:
    return {
        "dom1.W": (feature_width, hidden),
        "dom1.b": (hidden,),
        "dom2.W": (hidden, 1),
        "dom2.b": (1,),
    }


@dataclass(frozen=True, eq=False)
class DomainModel:
    """A classifier and a two-layer domain head reading its feature embeddings."""

    base: Model
    head: Params

    def __post_init__(self) -> None:
        """Validate head shapes against the base feature width."""
        if set(self.head) != set(HEAD_NAMES):
            raise ValueError(f"Domain head needs parameters {HEAD_NAMES}, got {sorted(self.head)}")
        F = self.base.hparams.ff_hidden
        if self.head["dom1.W"].shape[0] != F:
            raise ValueError(f"Domain head expects {self.head['dom1.W'].shape[0]} features, base produces {F}")
        expected = head_shapes(F, self.head_hidden)
        for name, shape in expected.items():
            if self.head[name].shape != shape:
                raise ValueError(f"{name} has shape {self.head[name].shape}, expected {shape}")

    @property
    def head_hidden(self) -> int:
        return int(self.head["dom1.W"].shape[1])


def init_domain_model(
    base: Model, seed: int | SeqOf[int], head_hidden: int | None = None
) -> DomainModel:
    """
    Attach a freshly initialized domain head to a copy of base.

    The head's hidden width defaults to the feature width.
    """
    F = base.hparams.ff_hidden
    D = head_hidden or F
    rng = np.random.default_rng(seed)
    head: Params = {}
    for name, shape in head_shapes(F, D).items():
        fan_in = F if name.startswith("dom1") else D
        bound = 1.0 / np.sqrt(fan_in)
        head[name] = rng.uniform(-bound, bound, size=shape)
    return DomainModel(Model(base.hparams, base.params), head)


@dataclass
class HeadCache:
    features: FloatArray  # (B, F)
    z1: FloatArray  # (B, D)
    a1: FloatArray
    prob: FloatArray  # (B,)


def head_forward(head: Params, features: FloatArray) -> HeadCache:
    """Run the domain head on (B, F) features."""
    z1 = features @ head["dom1.W"] + head["dom1.b"]
    a1 = np.maximum(z1, 0.0)
    score = (a1 @ head["dom2.W"] + head["dom2.b"])[:, 0]
    return HeadCache(features, z1, a1, np.asarray(expit(score), dtype=np.float64))


def domain_forward(dm: DomainModel, features: FloatArray) -> FloatArray:
    """
    P(out-of-domain) for (F,) or (B, F) features.

    Returns a scalar-shaped array for a single vector, else (B,).
    """
    feats = np.asarray(features, dtype=np.float64)
    single = feats.ndim == 1
    feats = np.atleast_2d(feats)
    if feats.shape[1] != dm.head["dom1.W"].shape[0]:
        raise ValueError(f"Features have width {feats.shape[1]}, expected {dm.head['dom1.W'].shape[0]}")
    prob = head_forward(dm.head, feats).prob
    return prob[0] if single else prob


def domain_backward(head: Params, cache: HeadCache, dscore: FloatArray) -> tuple[Params, FloatArray]:
    """
    Backpropagate dLoss/dscore (B,) through the head.

    Returns:
        (head gradients, dLoss/dfeatures (B, F))
    """
    ds = dscore[:, None]
    grads: Params = {
        "dom2.W": cache.a1.T @ ds,
        "dom2.b": ds.sum(axis=0),
    }
    dz1 = (ds @ head["dom2.W"].T) * (cache.z1 > 0)
    grads["dom1.W"] = cache.features.T @ dz1
    grads["dom1.b"] = dz1.sum(axis=0)
    return grads, dz1 @ head["dom1.W"].T
