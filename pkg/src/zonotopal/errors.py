"""Exception hierarchy.  Each class carries the CLI exit code it maps to."""


class ZonotopalError(Exception):
    exit_code = 3

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details


class UsageError(ZonotopalError):
    exit_code = 1


class PreconditionError(ZonotopalError):
    exit_code = 2


class InvalidVectorList(PreconditionError):
    pass


class NotPointed(PreconditionError):
    pass


class DimensionUnsupported(PreconditionError):
    pass


class NotAdmissible(PreconditionError):
    pass


class EmptyDomain(PreconditionError):
    pass


class CertificationFailed(ZonotopalError):
    exit_code = 3


class InterpolationInconsistent(CertificationFailed):
    pass


class RewritingDiverges(CertificationFailed):
    pass
