"""
Exception types for the space-form toolkit
Library code raises these; the CLI maps them to exit codes
"""


class SpaceFormError(ValueError):
    """Base class for every error raised by the toolkit"""


class DomainError(SpaceFormError):
    """Argument outside the natural domain of a function"""


class InfeasibleError(DomainError):
    """Input data cannot describe the requested object"""


class DegenerateInputError(DomainError):
    """Coincident or antipodal points, or a null tangent vector"""


class UsageError(SpaceFormError):
    """Operation called for the wrong curvature or with an unknown tag"""
