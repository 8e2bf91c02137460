"""Exception types shared across the package."""


class PfanoError(Exception):
    """Base class for all errors raised by this package."""


class NotPrime(PfanoError, ValueError):
    def __init__(self, q):
        super().__init__(f"{q} is not prime")
        self.q = q


class FieldMismatch(PfanoError, ValueError):
    pass


class ShapeMismatch(PfanoError, ValueError):
    pass


class DivisionByZero(PfanoError, ZeroDivisionError):
    pass


class NoSolution(PfanoError):
    """Target block lies outside the column span."""


class GroundSetTooLarge(PfanoError, ValueError):
    pass


class TooLarge(PfanoError, ValueError):
    pass


class NotDecodable(PfanoError):
    def __init__(self, users):
        self.users = sorted(users)
        super().__init__(f"decoding condition fails for users {self.users}")


class SearchSpaceTooLarge(PfanoError):
    def __init__(self, budget, visited):
        self.budget = budget
        self.visited = visited
        super().__init__(f"search budget {budget} exhausted after {visited} candidates")


class PremiseViolated(PfanoError):
    """A lemma predicate was called on arguments that do not meet its premises."""

    def __init__(self, premise):
        self.premise = premise
        super().__init__(f"premise violated: {premise}")
