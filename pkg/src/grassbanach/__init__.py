"""Finitely supported Grassmann-Banach algebras G(M, K, <.>) and G_inf(M, K, <.>)
over real, rational and p-adic coefficients, with tensor-algebra quotients and
scalar extension to K[t]/(t^N)."""

from .algebra import GrassmannAlgebra, GrassmannElement, Parity, element_from_json, format_element
from .errors import (
    DescriptorMismatch,
    DivisionByZero,
    EmptySet,
    GrassmannError,
    LabelMismatch,
    ModeMismatch,
    NotInjective,
    NotInvertible,
    NotUltrametric,
    ParseError,
    PrecisionLoss,
    ZeroElement,
)
from .extension import TruncatedPolyRing, decompose, expand_pure_tensors, pure_tensor_product
from .fields import (
    RATIONAL,
    REAL64,
    NormedField,
    PAdic,
    PAdicField,
    RationalField,
    Real64Field,
    Scalar,
    field_from_json,
    parse_field_spec,
)
from .monomial import CANONICAL, OrderingFunction, epsilon, monomial, permutation_parity
from .tensor import TensorElement, VectorElement, monomial_lift, quotient_map, tensor_mul, tensor_norm

__version__ = "0.1.0"
