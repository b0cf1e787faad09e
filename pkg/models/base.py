from pydantic import BaseModel, ConfigDict, ValidationError


class FrozenModel(BaseModel):
    """Immutable, hashable base for domain values."""

    model_config = ConfigDict(frozen=True, extra="forbid")


def validation_message(error: ValidationError) -> str:
    """One-line message for the first failed check, without pydantic's type tags and links."""
    first = error.errors()[0]
    message = first["msg"].removeprefix("Value error, ")
    location = ".".join(str(part) for part in first["loc"])
    return f"{location}: {message}" if location else message
