from bbext.coding.galois import FieldElem
from bbext.coding.padding import pad_message, padded_share_bits, unpad_blocks
from bbext.coding.reed_solomon import Codeword, DataBlocks, rs_decode, rs_encode
from bbext.coding.reference import brute_force_decode
