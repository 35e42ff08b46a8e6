"""Shared exception types."""


class ValidationError(ValueError):
    """A spec/config field is missing or out of range. Carries the field name."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
