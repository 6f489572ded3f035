"""Code-based group signatures with McEliece encryption and Stern-type proofs."""

from ._backend import NAME as BACKEND
from .groupsig import (
    PARAM_SETS,
    GroupManagerSecret,
    GroupPublicKey,
    GroupSignature,
    ParamSet,
    UserSecretKey,
    keygen,
    open_signature,
    parse_config,
    pk_size_bits,
    sig_size_bound_bits,
    sign,
    validate_params,
    verify,
)
from .rng import Rng

__all__ = [
    "BACKEND", "PARAM_SETS", "GroupManagerSecret", "GroupPublicKey", "GroupSignature",
    "ParamSet", "UserSecretKey", "Rng", "keygen", "open_signature", "parse_config",
    "pk_size_bits", "sig_size_bound_bits", "sign", "validate_params", "verify",
]
