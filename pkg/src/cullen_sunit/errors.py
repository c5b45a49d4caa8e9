"""Exception hierarchy shared by all modules."""


class CullenSunitError(ValueError):
    """Base class for every error raised by this package."""


# recurrence
class InvalidRecurrence(CullenSunitError):
    pass


class NoDoubleRoot(InvalidRecurrence):
    pass


class DegenerateRatio(InvalidRecurrence):
    pass


class NotCoprime(InvalidRecurrence):
    pass


class ZeroRoot(InvalidRecurrence):
    pass


class ZeroLinearCoefficient(InvalidRecurrence):
    """The closed form has a = 0, i.e. the sequence is a plain sum of powers."""


class HeightTooSmall(InvalidRecurrence):
    pass


# valuation / search
class ZeroArgument(CullenSunitError):
    pass


class EmptyBox(CullenSunitError):
    pass


# lifting
class EvenPrime(CullenSunitError):
    pass


class BadSeed(CullenSunitError):
    pass


class UnboundedValuation(CullenSunitError):
    """n*2^n + 1 - t vanishes for some n below the limit, so no finite cap exists."""


class InternalCertificateFailure(RuntimeError):
    """A stage divisibility re-check failed. Always a bug, never a result."""


# bounds
class DomainError(CullenSunitError):
    pass


class HypothesisViolated(CullenSunitError):
    pass


class ParameterOutOfRange(CullenSunitError):
    pass
