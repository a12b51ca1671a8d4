"""List decoding of one-point algebraic-geometry codes.

Reed-Solomon and Hermitian codes, Guruswami-Sudan interpolation with an
inseparable variant (interpolating in z^(p^e)) that removes the genus
penalty from the decoding radius.  See README.md for the tour.
"""

from .codec import (
    AGCode,
    DecodeEntry,
    DecodeParams,
    DecodeResult,
    code_create,
    decode,
    decode_adaptive,
    encode,
    message_function,
    unique_decode,
)
from .curve import CurveCtx, FuncElem, Place, curve_create, rational_places
from .errors import AglistError
from .gf import FieldCtx, FieldElem, field_create, field_from_order
from .oracle import exhaustive_list, true_minimum_distance
from .radius import (
    CodeShape,
    GSParams,
    e_for_no_penalty,
    tau_best,
    tau_classic,
    tau_general,
)

__all__ = [
    "AGCode",
    "AglistError",
    "CodeShape",
    "CurveCtx",
    "DecodeEntry",
    "DecodeParams",
    "DecodeResult",
    "FieldCtx",
    "FieldElem",
    "FuncElem",
    "GSParams",
    "Place",
    "code_create",
    "curve_create",
    "decode",
    "decode_adaptive",
    "e_for_no_penalty",
    "encode",
    "exhaustive_list",
    "field_create",
    "field_from_order",
    "message_function",
    "rational_places",
    "tau_best",
    "tau_classic",
    "tau_general",
    "true_minimum_distance",
    "unique_decode",
]
