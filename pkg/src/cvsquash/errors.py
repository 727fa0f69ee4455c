"""Exception types shared across the package."""


class DomainError(ValueError):
    """A parameter is outside its mathematical domain (e.g. negative energy)."""


class InvalidStateError(ValueError):
    """A covariance matrix or density matrix fails a physicality check."""


class SingularPointError(ValueError):
    """A closed-form expression was evaluated at a point where it is singular."""


class CutoffError(RuntimeError):
    """A Fock-space computation was refused because the cutoff is inadequate.

    ``required`` carries the per-mode cutoff that the selection rule asks for.
    """

    def __init__(self, message, required):
        super().__init__(message)
        self.required = required


class QuadratureError(RuntimeError):
    """A numerical quadrature grid cannot cover the required measure mass."""
