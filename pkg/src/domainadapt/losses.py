"""Character, domain and combined adversarial losses."""

import numpy as np
import numpy.typing as npt

from classifier import loss_ce
from seqcore import FloatArray

PROB_EPS = 1e-12


def bce(prob: FloatArray, y_d: npt.ArrayLike) -> float:
    """Mean binary cross-entropy with probabilities clamped to [eps, 1 - eps]."""
    p = np.clip(np.atleast_1d(np.asarray(prob, dtype=np.float64)), PROB_EPS, 1.0 - PROB_EPS)
    y = np.atleast_1d(np.asarray(y_d, dtype=np.float64))
    if not np.all((y == 0) | (y == 1)):
        raise ValueError("Domain labels must be 0 (in-domain) or 1 (out-of-domain)")
    return float(-(y * np.log(p) + (1.0 - y) * np.log(1.0 - p)).mean())


def bce_grad_score(prob: FloatArray, y_d: npt.ArrayLike) -> FloatArray:
    """dBCE/dscore where prob = sigmoid(score); zero where the clamp is active."""
    p = np.asarray(prob, dtype=np.float64)
    y = np.asarray(y_d, dtype=np.float64)
    inside = (p > PROB_EPS) & (p < 1.0 - PROB_EPS)
    return np.asarray((p - y) * inside / len(p), dtype=np.float64)


def joint_loss(
    char_logits: FloatArray,
    y_c: npt.ArrayLike,
    dom_prob: FloatArray,
    y_d: npt.ArrayLike,
    lam: float,
) -> tuple[float, float, float]:
    """
    (L, L_chr, L_dom) with L = L_chr - lam * L_dom.

    L_chr is the mean 27-class cross-entropy, L_dom the mean binary cross-entropy.
    """
    l_chr = loss_ce(char_logits, np.asarray(y_c, dtype=np.int64))
    l_dom = bce(dom_prob, y_d)
    return l_chr - lam * l_dom, l_chr, l_dom
