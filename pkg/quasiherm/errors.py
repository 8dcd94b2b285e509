from numpy.linalg import LinAlgError


class QuasiHermError(Exception):
    """Base de todos os erros do quasiherm."""


class DimensionMismatch(QuasiHermError, ValueError):
    pass


class NotHermitian(QuasiHermError, ValueError):
    pass


class DefectiveMatrix(QuasiHermError, LinAlgError):
    """Matriz nao diagonalizavel (ponto excepcional)."""


class SingularMatrix(QuasiHermError, LinAlgError):
    pass


class ComplexSpectrum(QuasiHermError, ValueError):
    pass


class NonPositiveWeight(QuasiHermError, ValueError):
    pass


class SpectralPathUnavailable(QuasiHermError):
    pass


class NotHermitianParameter(QuasiHermError, ValueError):
    pass


class SingularParameter(QuasiHermError, ValueError):
    pass


class QuasiHermiticityViolation(QuasiHermError, ValueError):
    pass


class WrongN(QuasiHermError, ValueError):
    pass


class ZeroState(QuasiHermError, ValueError):
    pass


class ZeroParameter(QuasiHermError, ValueError):
    pass


class BadDimension(QuasiHermError, ValueError):
    pass


class BadRange(QuasiHermError, ValueError):
    pass


class InputFormatError(QuasiHermError, ValueError):
    pass


class DegenerateSpectrum(UserWarning):
    """Caminho espectral pulado; a base do oraculo continua valendo."""
