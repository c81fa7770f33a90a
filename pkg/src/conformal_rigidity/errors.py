"""Exception types shared across the package."""


class ConformalRigidityError(Exception):
    """Base class for all package errors."""


class GraphError(ConformalRigidityError):
    pass


class Disconnected(GraphError):
    pass


class LoopEdge(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class OutOfRange(GraphError):
    pass


class DisconnectedCirculant(Disconnected):
    pass


class NotSymmetricGeneratingSet(GraphError):
    pass


class ParseError(ConformalRigidityError):
    pass


class DimensionMismatch(ConformalRigidityError):
    pass


class NegativeWeight(ConformalRigidityError):
    pass


class AllZeroWeights(ConformalRigidityError):
    pass


class NoConvergence(ConformalRigidityError):
    pass


class NoSuchEigenvalue(ConformalRigidityError):
    pass


class NotAnEigenvector(ConformalRigidityError):
    pass


class SizeCapExceeded(ConformalRigidityError):
    pass


class MultiplicityNotOne(ConformalRigidityError):
    pass


class NotPSD(ConformalRigidityError):
    pass


class TooManyOrbits(ConformalRigidityError):
    pass


class NotRegular(ConformalRigidityError):
    pass


class ComplementDisconnected(ConformalRigidityError):
    pass


class BackendUnavailable(ConformalRigidityError):
    pass


class NearDisconnectionWarning(UserWarning):
    """Weights nearly disconnect the support; the zero eigenvalue is kept simple."""
