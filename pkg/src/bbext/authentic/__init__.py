from bbext.authentic.accumulator import (
    AccKey,
    AccValue,
    Witness,
    acc_create_wit,
    acc_create_witnesses,
    acc_eval,
    acc_gen,
    acc_verify,
    get_accumulator,
)
from bbext.authentic.multisig import MultiSig, PartySigner, SigningAuthority, msig_combine
from bbext.authentic.sizes import SizeModel
