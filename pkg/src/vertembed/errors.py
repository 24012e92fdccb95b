"""Exception types shared across the package."""


class PolynomialParseError(ValueError):
    """A polynomial string does not conform to the expected grammar."""


class ModelSchemaError(ValueError):
    """A model document violates the JSON model schema."""


class EnumerationCapError(RuntimeError):
    """A combinatorial enumeration would exceed the configured cap.

    Callers may catch this to skip the item or retry with a larger cap.
    """
