"""EHT: an LWE-style public-key cryptosystem with a Hadamard trapdoor."""
from .cipher import (Ciphertext, DecryptionOutcome, Status, decrypt, decrypt_argmax, encrypt,
                     encrypt_residues)
from .codec import message_capacity
from .keygen import PrivateKey, PublicKey, keygen
from .params import PRESETS, InvalidParams, ParameterSet, get_params
from .sampling import Rng

__version__ = "0.1.0"

__all__ = [
    "Ciphertext", "DecryptionOutcome", "Status", "decrypt", "decrypt_argmax", "encrypt",
    "encrypt_residues", "message_capacity", "PrivateKey", "PublicKey", "keygen",
    "PRESETS", "InvalidParams", "ParameterSet", "get_params", "Rng",
]
