"""Domain exceptions shared across modules."""


class DomainError(Exception):
    """Input is well-formed but outside an operation's mathematical domain."""


class SingularGramError(DomainError):
    """The Gram matrix is not invertible; carries its exact rank."""

    def __init__(self, rank, size, context=""):
        self.rank = rank
        self.size = size
        suffix = f" ({context})" if context else ""
        super().__init__(f"singular Gram, rank {rank} of {size}{suffix}")


class CapExceededError(DomainError):
    """An enumeration or closure grew past its configured cap."""


class ClassificationMismatchError(DomainError):
    """A matrix does not classify into the class an operation requires."""
