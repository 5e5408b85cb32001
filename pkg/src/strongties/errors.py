"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A parameter is outside its allowed range or inconsistent with others."""


class NodeNotFoundError(KeyError):
    """A node id does not exist in the graph."""


class NotAnEdgeError(ValueError):
    """An operation that is only defined for edges was given a non-edge pair."""


class InvariantError(RuntimeError):
    """Internal state violated a structural invariant; the run must abort."""


class OracleMismatchError(InvariantError):
    """Incrementally maintained strong-tie state diverged from a full rebuild."""
