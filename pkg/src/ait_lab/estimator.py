"""
Estimator
====================================
Bit-exact LZ78 codec used as a computable upper bound on description length

Code layout: a 32-bit big-endian byte count, then token t (1-based) as its dictionary index in
⌈log2 t⌉ bits followed by 8 literal bits when a literal is present.
"""

from __future__ import annotations

from importlib import resources
from typing import List, Optional

from .conf import get_setting
from .exceptions import MalformedCode
from .signatures import BitString, CompareReport, EstimateReport, InformationEstimate, Lz78Token
from .utils import Xorshift64Star, bits

HEADER_BITS = 32
MAX_INPUT_BYTES = 2 ** 32 - 1


def index_width(t: int) -> int:
    """⌈log2 t⌉ for the 1-based token number t"""
    return (t - 1).bit_length()


def lz78_parse(x: bytes) -> List[Lz78Token]:
    """Greedy longest-match parse, the dictionary starts with only the empty phrase"""
    dictionary = {b'': 0}
    tokens = []
    position = 0
    while position < len(x):
        end = position
        while end < len(x) and x[position:end + 1] in dictionary:
            end += 1
        index = dictionary[x[position:end]]
        if end == len(x):
            tokens.append(Lz78Token(index=index))
            break
        tokens.append(Lz78Token(index=index, literal=x[end]))
        dictionary[x[position:end + 1]] = len(dictionary)
        position = end + 1
    return tokens


def encoded_size(tokens: List[Lz78Token]) -> int:
    return HEADER_BITS + sum(
        index_width(t) + (8 if token.literal is not None else 0) for t, token in enumerate(tokens, start=1)
    )


def lz78_encode(x: bytes) -> BitString:
    if len(x) > MAX_INPUT_BYTES:
        raise MalformedCode(f'Input of {len(x)} bytes does not fit the 32-bit length header')
    parts = [format(len(x), f'0{HEADER_BITS}b')]
    for t, token in enumerate(lz78_parse(x), start=1):
        width = index_width(t)
        if width:
            parts.append(format(token.index, f'0{width}b'))
        if token.literal is not None:
            parts.append(format(token.literal, '08b'))
    return ''.join(parts)


def lz78_decode(code: BitString, padded: bool = False) -> bytes:
    """
    Inverse of :func:`lz78_encode`, driven by the length header

    With ``padded`` up to seven trailing zero bits are accepted, as written by byte-aligned emission.
    """
    code = bits(code)
    if len(code) < HEADER_BITS:
        raise MalformedCode(f'Code of {len(code)} bits is shorter than the {HEADER_BITS}-bit header')
    length = int(code[:HEADER_BITS], 2)
    cursor = HEADER_BITS
    phrases = [b'']
    output = bytearray()
    t = 1

    def read(width: int) -> int:
        nonlocal cursor
        if cursor + width > len(code):
            raise MalformedCode(f'Code truncated at bit {cursor}')
        value = int(code[cursor:cursor + width], 2) if width else 0
        cursor += width
        return value

    while len(output) < length:
        index = read(index_width(t))
        if index >= len(phrases):
            raise MalformedCode(f'Token {t} references phrase {index} of {len(phrases)}')
        phrase = phrases[index]
        if len(output) + len(phrase) > length:
            raise MalformedCode(f'Token {t} overshoots the declared length {length}')
        if len(output) + len(phrase) == length:
            output += phrase
            break
        phrase = phrase + bytes([read(8)])
        phrases.append(phrase)
        output += phrase
        t += 1

    trailing = code[cursor:]
    if trailing and not (padded and len(trailing) < 8 and not trailing.strip('0')):
        raise MalformedCode(f'{len(trailing)} trailing bits after the last token')
    return bytes(output)


def k_upper_bound(x: bytes, c_dec: int = 0) -> EstimateReport:
    """|lz78_encode(x)| + c_dec, an estimate of K from above"""
    if len(x) > MAX_INPUT_BYTES:
        raise MalformedCode(f'Input of {len(x)} bytes does not fit the 32-bit length header')
    tokens = lz78_parse(x)
    encoded_bits = encoded_size(tokens)
    return EstimateReport(
        input_bytes=len(x),
        encoded_bits=encoded_bits,
        phrase_count=len(tokens),
        upper_bound_bits=encoded_bits + c_dec,
    )


def compare_information(x: bytes, y: bytes, c_dec: int = 0) -> CompareReport:
    bound_x = k_upper_bound(x, c_dec).upper_bound_bits
    bound_y = k_upper_bound(y, c_dec).upper_bound_bits
    return CompareReport(
        bound_x=bound_x,
        bound_y=bound_y,
        difference=bound_x - bound_y,
        ratio=bound_x / bound_y if bound_y else None,
    )


def information_estimate(y: bytes, x: bytes, c_dec: int = 0) -> InformationEstimate:
    """Compression analogue of I(y:x) = K(x) - K(x/y), with K(x/y) ~ bound(yx) - bound(y)"""
    bound_x = k_upper_bound(x, c_dec).upper_bound_bits
    bound_yx = k_upper_bound(y + x, c_dec).upper_bound_bits
    bound_y = k_upper_bound(y, c_dec).upper_bound_bits
    return InformationEstimate(
        bound_x=bound_x, bound_yx=bound_yx, bound_y=bound_y, information=bound_x - (bound_yx - bound_y)
    )


def seeded_bytes(count: int, seed: Optional[int] = None) -> bytes:
    """Top byte of successive xorshift64* outputs"""
    rng = Xorshift64Star(get_setting('AIT_SEED') if seed is None else seed)
    return bytes(rng.byte() for _ in range(count))


def english_sample() -> bytes:
    return resources.files('ait_lab').joinpath('data/english_sample.txt').read_bytes()
