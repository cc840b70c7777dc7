"""Single-substitution error-correcting codes for the sliding-window read channel."""

from .channel import (
    InterleavedRead,
    ReadVector,
    SubDerivative,
    Violation,
    as_word,
    corrupt,
    format_word,
    int_to_word,
    interleave,
    read_vector,
    read_vector_mod2,
    sub_derivative,
    sub_derivative_concat,
    sub_derivatives,
    validate_read_vector,
    word_to_int,
)
from .code import (
    CodeParams,
    Corrected,
    Failure,
    NoError,
    code_params,
    decode,
    encode,
    enumerate_code,
    is_codeword,
    locate_error,
)
from .errors import DecodingError, ParameterError, ReconstructionError, ScaleGuardError
from .reconstruction import halt_indices, reconstruct, reconstruct_substring, subderiv_reconstruct

__all__ = [
    "CodeParams",
    "Corrected",
    "DecodingError",
    "Failure",
    "InterleavedRead",
    "NoError",
    "ParameterError",
    "ReadVector",
    "ReconstructionError",
    "ScaleGuardError",
    "SubDerivative",
    "Violation",
    "as_word",
    "code_params",
    "corrupt",
    "decode",
    "encode",
    "enumerate_code",
    "format_word",
    "halt_indices",
    "int_to_word",
    "interleave",
    "is_codeword",
    "locate_error",
    "read_vector",
    "read_vector_mod2",
    "reconstruct",
    "reconstruct_substring",
    "sub_derivative",
    "sub_derivative_concat",
    "sub_derivatives",
    "subderiv_reconstruct",
    "validate_read_vector",
    "word_to_int",
]
