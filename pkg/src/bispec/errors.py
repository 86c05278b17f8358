class GraphError(ValueError):
    """Invalid graph construction or an operation applied to incompatible graphs."""


class ParameterError(ValueError):
    """A family or theorem parameter is outside its admissible range."""


class SizeLimitError(GraphError):
    """Input exceeds the configured size limit of an exact algorithm."""


class ConvergenceError(RuntimeError):
    def __init__(self, message, residual):
        super().__init__(f"{message} (last residual {residual:.3e})")
        self.residual = residual
