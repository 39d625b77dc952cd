"""Error types shared across the solvers."""


class NonConvergenceError(RuntimeError):
    """An iterative solver ran out of iterations.

    Carries the last iterate and residual so callers can inspect (or restart
    from) the point of failure.
    """

    def __init__(self, message, last_iterate=None, residual=None, iterations=None):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual
        self.iterations = iterations

    def __str__(self):
        base = super().__str__()
        extra = []
        if self.last_iterate is not None:
            extra.append(f"last_iterate={self.last_iterate}")
        if self.residual is not None:
            extra.append(f"residual={self.residual:.3e}")
        if self.iterations is not None:
            extra.append(f"iterations={self.iterations}")
        return base + (" [" + ", ".join(extra) + "]" if extra else "")
