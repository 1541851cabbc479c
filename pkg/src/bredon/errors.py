"""Exception hierarchy shared by all modules."""


class BredonError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(BredonError):
    """Input data fails a structural invariant."""


# linear algebra

class CompositionNonzero(ValidationError):
    def __init__(self, degree):
        super().__init__(f"boundary maps do not compose to zero at degree {degree}")
        self.degree = degree


class NotChainMap(ValidationError):
    def __init__(self, degree):
        super().__init__(f"chain map does not commute with boundaries at degree {degree}")
        self.degree = degree


# groups

class NotAssociative(ValidationError):
    def __init__(self, a, b, c):
        super().__init__(f"table is not associative on triple ({a}, {b}, {c})")
        self.triple = (a, b, c)


class NoIdentity(ValidationError):
    def __init__(self):
        super().__init__("table has no identity element")


class NoInverse(ValidationError):
    def __init__(self, element):
        super().__init__(f"element {element} has no inverse")
        self.element = element


class EmptySeed(ValidationError):
    def __init__(self):
        super().__init__("a family needs at least one seed subgroup")


class FamilyNotContained(ValidationError):
    def __init__(self, subgroup):
        super().__init__(f"family intersected with {subgroup} is not contained in the family")
        self.subgroup = subgroup


# modules

class VarianceMismatch(ValidationError):
    pass


class BudgetExceeded(BredonError):
    def __init__(self, what, size, budget):
        super().__init__(f"{what} has size {size}, exceeding the budget of {budget}")
        self.size = size
        self.budget = budget


# complexes

class NotClosedUnderFaces(ValidationError):
    def __init__(self, simplex, face):
        super().__init__(f"face {face} of simplex {simplex} is missing")
        self.simplex = simplex
        self.face = face


class NotEquivariant(ValidationError):
    def __init__(self, element, simplex):
        super().__init__(f"element {element} maps simplex {simplex} outside the complex")
        self.element = element
        self.simplex = simplex


class NotAdmissible(ValidationError):
    def __init__(self, element, simplex):
        super().__init__(
            f"element {element} stabilises simplex {simplex} without fixing it pointwise")
        self.element = element
        self.simplex = simplex


class NoFixedPoint(ValidationError):
    def __init__(self, subgroup):
        super().__init__(f"subgroup {subgroup} has an empty fixed point set")
        self.subgroup = subgroup


class ManifestError(BredonError):
    pass
