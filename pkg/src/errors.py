"""Exception types raised across the engine."""


class InklineError(Exception):
    """Base class for engine errors."""


class FrameParseError(InklineError, ValueError):
    """A frame CSV row could not be parsed."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class EmptyInputError(InklineError, ValueError):
    """Input contained no data rows or items."""


class SequenceTooShortError(InklineError, ValueError):
    """A sequence has fewer frames than an operation needs."""


class NoPathError(InklineError, RuntimeError):
    """No trajectory spans the whole word sequence."""


class ModelFormatError(InklineError, ValueError):
    """A model file is truncated, corrupted or from another format version."""


class NonFiniteLossError(InklineError, RuntimeError):
    """Training produced a NaN or infinite loss."""

    def __init__(self, epoch: int, batch: int, loss: float, norms: dict[str, float]) -> None:
        worst = max(norms.items(), key=lambda kv: kv[1]) if norms else ("-", 0.0)
        super().__init__(
            f"Non-finite loss {loss} at epoch {epoch}, batch {batch} "
            f"(largest parameter norm: {worst[0]}={worst[1]:.4g})"
        )
        self.epoch = epoch
        self.batch = batch
        self.loss = loss
        self.norms = norms


class ConfigError(InklineError, ValueError):
    """Invalid run configuration."""


class ManifestError(InklineError, ValueError):
    """Invalid dataset manifest entry."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"manifest line {line}: {message}")
        self.line = line
