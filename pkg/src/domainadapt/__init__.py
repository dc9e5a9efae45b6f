"""Adversarial domain adaptation for unseen writers."""

from .adaptation import (
    AdaptLosses,
    AdaptOpts,
    AdaptRecord,
    adapt,
    adapt_gradients,
    domain_accuracy,
    fine_tune,
    sample_id_subset,
)
from .domain_model import (
    DomainModel,
    domain_backward,
    domain_forward,
    feature_parameter_names,
    head_forward,
    init_domain_model,
)
from .experiment import TransferReport, TransferRow, transfer_study
from .losses import bce, bce_grad_score, joint_loss
from .schedule import SCHEDULES, lambda_schedule, schedule_progress

__all__ = [
    "SCHEDULES",
    "AdaptLosses",
    "AdaptOpts",
    "AdaptRecord",
    "DomainModel",
    "TransferReport",
    "TransferRow",
    "adapt",
    "adapt_gradients",
    "bce",
    "bce_grad_score",
    "domain_accuracy",
    "domain_backward",
    "domain_forward",
    "feature_parameter_names",
    "fine_tune",
    "head_forward",
    "init_domain_model",
    "joint_loss",
    "lambda_schedule",
    "sample_id_subset",
    "schedule_progress",
    "transfer_study",
]
