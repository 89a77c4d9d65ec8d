"""Exception hierarchy shared by every module."""


class OpforgeError(Exception):
    """Base class for all library errors."""


class ShapeMismatch(OpforgeError, ValueError):
    pass


class NotAComplex(OpforgeError, ValueError):
    pass


class NotReduced(OpforgeError, ValueError):
    pass


class ArityOverflow(OpforgeError, ValueError):
    pass


class ArityViolation(OpforgeError, ValueError):
    pass


class DegreeMismatch(OpforgeError, ValueError):
    pass


class NotTwisting(OpforgeError, ValueError):
    pass


class AntisymmetryFailure(OpforgeError, ValueError):
    pass


class JacobiFailure(OpforgeError, ValueError):
    pass


class LeibnizFailure(OpforgeError, ValueError):
    pass


class AlgebraAxiomFailure(OpforgeError, ValueError):
    pass


class NotQuasiFree(OpforgeError, ValueError):
    pass


class NotAlgebraOverTarget(OpforgeError, ValueError):
    pass


class ParseError(OpforgeError, ValueError):
    pass


class CertificateFailure(OpforgeError):
    def __init__(self, message, where=None, residual=None):
        super().__init__(message)
        self.where = where
        self.residual = residual
