"""Exception hierarchy shared by every module."""


class HeckeError(Exception):
    """Base class for all toolkit errors."""


class GroupValidationError(HeckeError, ValueError):
    """A group or subgroup description failed validation."""


class PreconditionError(HeckeError, ValueError):
    """An operation was called outside its hypotheses (e.g. H not subnormal)."""


class RationalOverflow(HeckeError, OverflowError):
    """An exact rational outgrew the configured integer width."""


class NotInHeckeAlgebra(HeckeError, ValueError):
    """An operator's coefficient function is not constant on double cosets."""


class MembershipError(HeckeError, ValueError):
    """An ax+b computation produced an element outside H_P."""


class TheoremViolation(HeckeError, AssertionError):
    """A finite check contradicted a proved statement; signals an implementation bug."""
