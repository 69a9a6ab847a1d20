"""Exception types shared across the package."""


class ConsensusSpectraError(Exception):
    """Base class for all package errors."""


class ParameterError(ConsensusSpectraError):
    """A network model violates one of its parameter constraints."""


class TopologyError(ConsensusSpectraError):
    """An operation was applied to a topology kind it does not support."""


class SizeError(ConsensusSpectraError):
    """A dense or quadratic-cost operation would exceed the node cap."""


class DegenerateError(ConsensusSpectraError):
    """The extremal eigenvalue pair has equal moduli, so the
    equal-modulus equation for the consensus parameter has no nonzero
    solution (e.g. the 3-node ring)."""


class UnsupportedParityError(ConsensusSpectraError):
    """No closed-form expression exists for this parity combination
    (e.g. a torus with one even and one odd side)."""


class DivergenceError(ConsensusSpectraError):
    """The consensus iteration grew past the divergence guard,
    signalling a non-contracting weight matrix."""


class InsufficientDataError(ConsensusSpectraError):
    """A trace does not contain enough usable steps for the requested
    estimate."""
