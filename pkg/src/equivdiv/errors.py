"""Exception hierarchy.

Every error carries a short machine-readable ``code`` used by the CLI to
render ``error:<code>: <message>`` diagnostics.
"""


class EquivDivError(Exception):
    code = "error"
    exit_status = 2


class InputError(EquivDivError):
    code = "input"


class ParseError(InputError):
    code = "parse"

    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class UnsupportedFamily(InputError):
    code = "unsupported_family"


class InvalidPermutation(InputError):
    code = "invalid_permutation"


class ClosureExceedsCap(InputError):
    code = "closure_exceeds_cap"

    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"generated group has more than {cap} elements")


class NotASubgroup(InputError):
    code = "not_subgroup"


class InertiaNotSubgroup(NotASubgroup):
    code = "inertia_not_subgroup"


class TameInertiaNotCyclic(InputError):
    code = "tame_inertia_not_cyclic"


class InvalidChain(InputError):
    code = "invalid_chain"


class InvalidModule(InputError):
    code = "invalid_module"


class BudgetExceeded(EquivDivError):
    code = "budget_exceeded"
    exit_status = 3

    def __init__(self, attempted, budget):
        self.attempted = attempted
        self.budget = budget
        super().__init__(f"bar complex needs {attempted} entries, budget is {budget}")


class GroupTooLarge(InputError):
    code = "group_too_large"


class InadmissibleC(InputError):
    code = "inadmissible_c"


class NotNormal(InputError):
    code = "not_normal"


class NotFree(InputError):
    code = "not_free"


class CorpusMissing(InputError):
    code = "corpus_missing"


class FanError(InputError):
    code = "fan"


class NotFanPreserving(FanError):
    code = "not_fan_preserving"

    def __init__(self, element):
        self.element = element
        super().__init__(f"matrix {element} does not preserve the fan")


class RaysDoNotSpan(FanError):
    code = "rays_do_not_span"


class DimensionMismatch(FanError):
    code = "dimension_mismatch"


class NotOrbitConstant(FanError):
    code = "not_orbit_constant"

    def __init__(self, orbit, coefficients):
        self.orbit = tuple(orbit)
        self.coefficients = tuple(coefficients)
        super().__init__(
            f"orbit {list(self.orbit)} has coefficients {list(self.coefficients)} "
            "whose sum is not divisible by the orbit size"
        )


class ClassNotInvariant(FanError):
    code = "class_not_invariant"
