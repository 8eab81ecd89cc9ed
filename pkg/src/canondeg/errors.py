"""Exception hierarchy shared by all canondeg modules."""


class CanondegError(Exception):
    """Base class for all canondeg errors."""


class InvalidInput(CanondegError):
    """An argument is outside the supported domain."""


class NotSquarefree(InvalidInput):
    """The integer has a repeated prime factor."""


class NotDivisor(InvalidInput):
    """Expected one level to divide the other."""


class NotCoprime(InvalidInput):
    """Expected coprime arguments."""


class InvalidDiscriminant(InvalidInput):
    """A quaternion discriminant must be a product of an even number (>= 2) of distinct primes."""


class NotTorsionFree(InvalidInput):
    """A curve level carries elliptic points, so etale-map arguments do not apply."""


class InvalidDomain(InvalidInput):
    """Parameters do not describe a positive-dimensional classical domain."""


class ShapeMismatch(InvalidInput):
    """A matrix/vector does not have the shape or symmetry the domain requires."""


class ZeroInput(InvalidInput):
    """The trace-ratio functionals are undefined at zero."""


class EmptyProduct(InvalidInput):
    """A product domain needs at least one factor."""


class InternalInconsistency(CanondegError):
    """An exact identity that must hold by construction failed; indicates a bug."""
