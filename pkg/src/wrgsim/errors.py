"""Exception hierarchy shared by all modules."""


class WrgError(Exception):
    pass


class ParameterError(WrgError, ValueError):
    """Invalid parameters or a call outside an operation's domain."""


class NumericError(WrgError, ArithmeticError):
    """A numerical routine (quadrature, root finding) failed to converge."""

    def __init__(self, message, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics

    def __str__(self):
        msg = super().__str__()
        if self.diagnostics:
            extra = ", ".join(f"{k}={v!r}" for k, v in self.diagnostics.items())
            msg = f"{msg} ({extra})"
        return msg


class ResourceError(WrgError, RuntimeError):
    """Requested run exceeds a configured resource cap."""


class InvariantError(WrgError, AssertionError):
    """A post-condition that must hold on every run was violated."""
