"""Adam with decoupled weight decay."""

import logging

import numpy as np

from .model import Params

logger = logging.getLogger(__name__)


class AdamW:
    """
    AdamW over a named parameter dict.

    step() updates the arrays in place:
        theta <- theta - lr * (m_hat / (sqrt(v_hat) + eps) + weight_decay * theta)
    """

    def __init__(
        self,
        params: Params,
        lr: float,
        weight_decay: float = 0.0,
        betas: tuple[float, float] = (0.9, 0.999),
        eps: float = 1e-8,
    ) -> None:
        """
        Set up zeroed moment buffers.

        Args:
            params: Parameters the optimizer will update (only shapes are read here)
            lr: Learning rate, >= 0
            weight_decay: Decoupled weight-decay coefficient, >= 0
            betas: Exponential decay rates of the first and second moments
            eps: Denominator guard
        """
        if lr < 0:
            raise ValueError(f"Invalid learning rate: {lr}")
        if weight_decay < 0:
            raise ValueError(f"Invalid weight_decay value: {weight_decay}")
        if not (0.0 <= betas[0] < 1.0 and 0.0 <= betas[1] < 1.0):
            raise ValueError(f"Invalid beta parameters: {betas}")
        if eps <= 0:
            raise ValueError(f"Invalid epsilon value: {eps}")
        self.lr = lr
        self.weight_decay = weight_decay
        self.beta1, self.beta2 = betas
        self.eps = eps
        self.t = 0
        self.m = {name: np.zeros_like(value) for name, value in params.items()}
        self.v = {name: np.zeros_like(value) for name, value in params.items()}

    def step(self, params: Params, grads: Params) -> None:
        """Apply one update to every parameter that has a gradient."""
        self.t += 1
        bias1 = 1.0 - self.beta1**self.t
        bias2 = 1.0 - self.beta2**self.t
        for name, grad in grads.items():
            m = self.m[name]
            v = self.v[name]
            m *= self.beta1
            m += (1.0 - self.beta1) * grad
            v *= self.beta2
            v += (1.0 - self.beta2) * grad * grad
            update = (m / bias1) / (np.sqrt(v / bias2) + self.eps)
            params[name] -= self.lr * (update + self.weight_decay * params[name])
        logger.debug("AdamW step %d on %d tensors", self.t, len(grads))
