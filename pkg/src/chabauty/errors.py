"""Exception hierarchy shared by every module."""


class ChabautyError(Exception):
    """Base class for all errors raised by the library."""


# number fields and polynomials
class NotMonic(ChabautyError):
    pass


class ZeroPolynomial(ChabautyError):
    pass


class Reducible(ChabautyError):
    def __init__(self, witness, message=None):
        self.witness = list(witness)
        super().__init__(message or "polynomial is reducible; factor %s" % (self.witness,))


class ZeroModP(ChabautyError):
    pass


class IndexObstruction(ChabautyError):
    pass


class InvalidEmbedding(ChabautyError):
    pass


class RelativeReducible(ChabautyError):
    pass


class ShiftExhausted(ChabautyError):
    pass


# punctured curves
class NotSquarefree(ChabautyError):
    pass


class RelativeFactorizationFailed(ChabautyError):
    pass


class NotAnSUnit(ChabautyError):
    pass


class QNotPrime(ChabautyError):
    pass


# BCP engine
class NotDescendable(ChabautyError):
    def __init__(self, orbit, message=None):
        self.orbit = orbit
        super().__init__(message or "puncture data does not descend: %s" % (orbit,))


class InvalidCoverMove(ChabautyError):
    pass


class RiemannHurwitzViolation(ChabautyError):
    pass


class DeltaDoesNotDivide(ChabautyError):
    pass


class NotCmField(ChabautyError):
    pass


class CyclotomicNotDisjoint(ChabautyError):
    pass


# character ranks and verifiers
class NegativeMultiplicity(ChabautyError):
    pass


class NotAbelianDeclared(ChabautyError):
    pass


class UnsupportedGaloisShape(ChabautyError):
    pass


class AlphaIsQthPower(ChabautyError):
    pass


# p-adic layer
class NotOneUnit(ChabautyError):
    pass


class EvenPrimeUnsupported(ChabautyError):
    pass


class NonSplitCompletion(ChabautyError):
    pass


class PrecisionExhausted(ChabautyError):
    pass


class GeneratorNotCoprime(ChabautyError):
    pass


class BoxTooSmall(ChabautyError):
    pass


# reporting
class CacheCorrupt(ChabautyError):
    pass


class ConfigError(ChabautyError):
    pass
