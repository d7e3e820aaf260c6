import re
from hashlib import md5
from typing import Optional

from .conf import get_setting
from .exceptions import InvalidBitString

MASK64 = (1 << 64) - 1
XORSHIFT_MULTIPLIER = 0x2545F4914F6CDD1D


def camel_to_snake(name):
    name = re.sub('(.)([A-Z][a-z]+)', r'\1_\2', name)
    return re.sub('([a-z0-9])([A-Z])', r'\1_\2', name).lower()


def snake_to_kebab(name):
    return name.replace('_', '-')


def camel_to_kebab(name):
    return snake_to_kebab(camel_to_snake(name))


def bits(text: Optional[str]) -> str:
    """Validate '0'/'1' text, None and '' are both the empty string"""
    text = text or ''
    if text.strip('01'):
        raise InvalidBitString(f'Not a bit string: {text!r}')
    return text


def hex_to_bits(text: str) -> str:
    try:
        return ''.join(format(int(digit, 16), '04b') for digit in text)
    except ValueError:
        raise InvalidBitString(f'Not a hex string: {text!r}')


def bytes_to_bits(data: bytes) -> str:
    return ''.join(format(byte, '08b') for byte in data)


def bits_to_bytes(code: str) -> bytes:
    """Pack bits big-endian, zero padded to a byte boundary"""
    padded = code + '0' * (-len(code) % 8)
    return bytes(int(padded[i:i + 8], 2) for i in range(0, len(padded), 8))


def table_cache_key(machine: str, limit: int, max_output_bits: int, aux: Optional[str]) -> str:
    aux_hash = md5((aux if aux is not None else '-').encode('utf-8')).hexdigest()
    return f'ait-lab-table-{machine}-{limit}-{max_output_bits}-{aux_hash}'


class Xorshift64Star:
    """
    xorshift64* generator

    state ^= state >> 12; state ^= state << 25; state ^= state >> 27 (mod 2^64),
    output = state * 0x2545F4914F6CDD1D (mod 2^64)
    """

    def __init__(self, seed: int):
        self.state = (seed & MASK64) or get_setting('AIT_SEED')

    def next(self) -> int:
        state = self.state
        state ^= state >> 12
        state ^= (state << 25) & MASK64
        state ^= state >> 27
        self.state = state
        return (state * XORSHIFT_MULTIPLIER) & MASK64

    def byte(self) -> int:
        return self.next() >> 56

    def below(self, bound: int) -> int:
        """Integer in [0, bound), high bits first"""
        return (self.next() >> 32) % bound

    def bits(self, length: int) -> str:
        return ''.join(str(self.next() >> 63) for _ in range(length))


def first_prefix_violation(words):
    """First (a, b) in sorted order with a a prefix of b, adjacent pairs are enough after sorting"""
    ordered = sorted(words)
    for a, b in zip(ordered, ordered[1:]):
        if b.startswith(a):
            return a, b
    return None
