class PresentationError(ValueError):
    """The integers (n, m, t, r) do not define a metacyclic group."""


class ResourceLimitError(RuntimeError):
    """A brute-force computation would exceed its configured budget."""
