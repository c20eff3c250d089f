"""Exception types shared across the kernel."""


class GorcalcError(Exception):
    """Base class for all kernel errors."""


class PresentationError(GorcalcError):
    pass


class DegreeZeroGenerator(PresentationError):
    pass


class RelationNotHomogeneous(PresentationError):
    pass


class InhomogeneousOperand(GorcalcError):
    pass


class InhomogeneousElement(GorcalcError):
    pass


class ReconstructionFailed(GorcalcError):
    pass


class NotArtinian(GorcalcError):
    pass


class WindowTooSmall(GorcalcError):
    pass


class NotTensorForm(GorcalcError):
    pass


class NotDivisible(GorcalcError):
    pass


class FieldMismatch(GorcalcError):
    pass


class OrientationMismatch(GorcalcError):
    pass


class BidegreeViolation(GorcalcError):
    pass


class LeibnizInconsistent(GorcalcError):
    pass


class WindowEdgeEffect(GorcalcError):
    pass


class CharacteristicZero(GorcalcError):
    pass


class InfiniteSlice(GorcalcError):
    pass


class HypothesisUnverified(GorcalcError):
    pass


class InconsistentLedger(GorcalcError):
    pass


class LedgerFormatError(GorcalcError):
    pass


class ScheduleFormatError(GorcalcError):
    pass


class CacheCorrupt(GorcalcError):
    pass
