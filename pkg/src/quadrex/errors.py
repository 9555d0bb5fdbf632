"""Exception hierarchy shared by all quadrex modules."""


class QuadrexError(Exception):
    """Base class for domain errors raised by this package."""


class NotCoprime(QuadrexError):
    """Arguments required to be coprime share a factor."""


class ModuliNotCoprime(QuadrexError):
    """CRT received moduli with a common factor."""


class IncompatibleCongruences(QuadrexError):
    """Successive substitution hit an unsolvable congruence pair."""

    def __init__(self, i: int, j: int, message: str = ""):
        self.i = i
        self.j = j
        super().__init__(message or f"congruences {i} and {j} are incompatible")


class NoSolution(QuadrexError):
    """A linear Diophantine equation with gcd not dividing the constant."""


class FactorBudgetExceeded(QuadrexError):
    """Factorization gave up within the configured budget."""


class BudgetExceeded(QuadrexError):
    """A table, sieve, or search exceeded its configured size limit."""


class LeadingCoeffZero(QuadrexError):
    """Quadratic congruence whose leading coefficient vanishes mod the modulus."""


class NotAdmissible(QuadrexError):
    """Progression tuple violates the admissibility conditions."""
