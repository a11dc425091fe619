"""Exception hierarchy shared across the toolkit."""


class EduvsumError(Exception):
    """Base class for all toolkit errors."""


class InvalidInputError(EduvsumError):
    """An argument violates an operation's precondition."""


class ValidationError(EduvsumError):
    """A value violates a data-model invariant (e.g. score outside [1, 10])."""


class ReferentialError(ValidationError):
    """A record references an id that does not resolve."""


class ParseError(EduvsumError):
    """A file could not be parsed; carries line/field context when known."""

    def __init__(self, message, line=None, field=None):
        ctx = []
        if line is not None:
            ctx.append(f"line {line}")
        if field is not None:
            ctx.append(f"field {field!r}")
        if ctx:
            message = f"{message} ({', '.join(ctx)})"
        super().__init__(message)
        self.line = line
        self.field = field


class DecodeError(EduvsumError):
    """A media container could not be opened or decoded."""


class InvalidConfigError(EduvsumError):
    """A configuration value is out of its allowed range."""


class MissingModalityError(EduvsumError):
    """A modality is absent for a video (no audio stream, no subtitles, ...).

    This is a signal, not a failure: callers ablate the modality and continue.
    """

    def __init__(self, modality, reason=""):
        msg = f"modality {modality!r} unavailable"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)
        self.modality = modality


class BackendLoadError(EduvsumError):
    """A pretrained encoder backend (or its weights) could not be loaded."""


class ContractError(EduvsumError):
    """Inputs to the model violate its interface (shape/modality mismatch)."""


class StratificationError(EduvsumError):
    """A topic has too few videos to be split into train and test."""

    def __init__(self, topic, count):
        super().__init__(
            f"topic {topic!r} has only {count} video(s); at least 2 are required for a stratified split"
        )
        self.topic = topic
        self.count = count


class TrainingDivergedError(EduvsumError):
    """Training produced a non-finite loss."""

    def __init__(self, learning_rate, epoch, batch_index):
        super().__init__(
            f"non-finite loss at epoch {epoch}, batch {batch_index} (learning_rate={learning_rate})"
        )
        self.learning_rate = learning_rate
        self.epoch = epoch
        self.batch_index = batch_index


class ModelLoadError(EduvsumError):
    """A model archive is corrupt or inconsistent with its declared config."""
