"""Size caps guarding the exponential enumerations."""
from dataclasses import dataclass, replace

from .errors import CapacityError


@dataclass(frozen=True)
class Caps:
    tensor_size: int = 2**20
    # raw cylinder combinations examined when building a basis
    basis_enumeration: int = 2**22
    # candidate cylinder intersections evaluated by mu_star
    search: int = 2**25
    # rows * columns of an LP dictionary
    lp_cells: int = 2**24
    # arity of Boolean functions for approximate degree LPs
    approxdeg_arity: int = 6
    # arity of stored truth tables
    table_arity: int = 20

    def with_(self, **kw):
        return replace(self, **kw)


DEFAULT_CAPS = Caps()


def resolve(caps):
    return DEFAULT_CAPS if caps is None else caps


def require(what, count, cap):
    if count > cap:
        raise CapacityError(what, count, cap)
