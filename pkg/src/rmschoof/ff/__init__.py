"""Prime-field and dense polynomial arithmetic."""

from .crt import NotCoprime, integer_crt
from .field import (FieldElement, FieldError, FieldMismatch, PrimeField, ZeroInverse,
                    field_inv, is_probable_prime, sqrt_mod, sqrt_mod_q)
from .poly import DEG_ZERO, DensePoly, poly_mul
from .resultant import (DegenerateLeading, InsufficientPoints, resultant_by_interpolation,
                        sylvester_resultant)
