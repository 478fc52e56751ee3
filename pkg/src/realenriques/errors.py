"""Exception hierarchy.

Two families matter to callers: ``InputError`` for malformed or invalid
input (bad files, non-isometries, degenerate lattices where a nondegenerate
one is required) and ``InconsistencyError`` for a violated identity, which
signals either a bug or an unsound constraint.
"""


class RealEnriquesError(Exception):
    pass


class InputError(RealEnriquesError):
    pass


class ParseError(InputError):
    pass


class DegenerateLatticeError(InputError):
    pass


class InvalidInvolutionError(InputError):
    pass


class InvalidTripleError(InputError):
    pass


class InconsistencyError(RealEnriquesError):
    """An identity that must hold failed; ``name`` says which one."""

    def __init__(self, name, detail=""):
        self.name = name
        self.detail = detail
        super().__init__(f"{name}: {detail}" if detail else name)
