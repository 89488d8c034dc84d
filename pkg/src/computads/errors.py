class WcatError(Exception):
    """Base class. `path` locates the offending subterm when known."""

    def __init__(self, message: str = "", path: tuple = ()):
        super().__init__(message)
        self.message = message
        self.path = tuple(path)

    @property
    def kind(self) -> str:
        return type(self).__name__

    def at(self, *steps):
        """Return a copy of this error with `steps` prepended to the path."""
        err = type(self).__new__(type(self))
        err.__dict__.update(self.__dict__)
        Exception.__init__(err, self.message)
        err.path = tuple(steps) + self.path
        return err

    def __str__(self):
        if self.path:
            return f"{self.kind} at {'/'.join(map(str, self.path))}: {self.message}"
        return f"{self.kind}: {self.message}"


class ZeroDimensional(WcatError): pass
class MalformedZigzag(WcatError): pass
class IncompatibleLabeling(WcatError): pass
class NotAPastingDiagram(WcatError): pass
class GlobularityViolation(WcatError): pass
class UnknownGenerator(WcatError): pass
class IllFormedCell(WcatError): pass
class NotFull(WcatError): pass
class DimMismatch(WcatError): pass
class BadHom(WcatError): pass
class TypeMismatch(WcatError): pass
class NotGeneratorPreserving(WcatError): pass
class DimTooLow(WcatError): pass
class DimTooHigh(WcatError): pass
class BoundaryMismatch(WcatError): pass
class NotComposable(WcatError): pass
class NotFreeSource(WcatError): pass
class NotFreeTarget(WcatError): pass
class NotACover(WcatError): pass
class NotParallel(WcatError): pass
class NotImmersion(WcatError): pass
class ShapeMismatch(WcatError): pass
class SimplicialIdentityViolation(WcatError): pass


class SupportNotContained(WcatError):
    def __init__(self, message: str = "", path: tuple = (), dim=None, witness=None):
        super().__init__(message, path)
        self.dim = dim
        self.witness = witness


class WcatSyntaxError(WcatError):
    def __init__(self, message: str = "", line: int = 0, col: int = 0, expected: str = ""):
        super().__init__(message)
        self.line = line
        self.col = col
        self.expected = expected

    def __str__(self):
        s = f"SyntaxError at {self.line}:{self.col}: {self.message}"
        if self.expected:
            s += f" (expected {self.expected})"
        return s
