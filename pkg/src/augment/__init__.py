"""Per-epoch stochastic augmentation of letter sequences."""

from .epoch import augment_epoch, nonclass_count, preview
from .nonclass import make_nonclass
from .options import AugmentConfig, RandomSource, make_rng
from .transforms import jitter_shape, splice_neighbors, trim

__all__ = [
    "AugmentConfig",
    "RandomSource",
    "augment_epoch",
    "jitter_shape",
    "make_nonclass",
    "make_rng",
    "nonclass_count",
    "preview",
    "splice_neighbors",
    "trim",
]
