"""Exact tools for number-on-the-forehead lower bounds: cylinder intersection
norms, approximate degree, pattern tensors and checkable bound certificates."""
from .caps import DEFAULT_CAPS, Caps
from .errors import CapacityError, ConditionViolated, DimensionError, NofError, ValidationError
from .tensors import RationalTensor, SignTensor, contraction_product, sylvester

__version__ = "0.1.0"
