class NumericalError(RuntimeError):
    """A numerical procedure failed to reach its configured accuracy."""
