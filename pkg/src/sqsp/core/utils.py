"""
Small helpers shared across the package.

Functions:
- string_to_bool(string: str) -> bool: convert a string to a boolean value.
- ceil_log2(value: int) -> int: smallest L with 2**L >= value.
- index_bits(index: int, width: int) -> Tuple[int, ...]: MSB-first bits of an index.
- bits_to_index(bits: str) -> int: MSB-first bitstring to integer.
- parse_int_range(text: str) -> Tuple[int, int]: parse "a:b" inclusive ranges.
- parse_int_set(text: str) -> Tuple[int, ...]: parse "4,8,16".
"""
from typing import Tuple


def string_to_bool(string: str) -> bool:
    """
    Convert a string to a boolean.

    :param string: The string to convert.
    :return: The boolean value.
    :raises TypeError: if the string is not a recognised boolean literal.
    """
    if str(string).lower() in ("true", "1"):
        return True
    elif str(string).lower() in ("false", "0"):
        return False
    else:
        raise TypeError(f"Could not convert {string} to a boolean value.")


def ceil_log2(value: int) -> int:
    """
    Smallest L such that 2**L >= value.

    :param value: positive integer.
    :return: ceil(log2(value)), with ceil_log2(1) == 0.
    :raises ValueError: if value < 1.
    """
    if value < 1:
        raise ValueError(f"ceil_log2 needs a positive integer, got {value}.")
    return (value - 1).bit_length()


def index_bits(index: int, width: int) -> Tuple[int, ...]:
    """MSB-first bits of `index`, zero-padded to `width`."""
    if width < 0 or index < 0 or index >> width:
        raise ValueError(f"Index {index} does not fit in {width} bits.")
    return tuple((index >> (width - 1 - j)) & 1 for j in range(width))


def bits_to_index(bits: str) -> int:
    """MSB-first {0,1}-string to integer; the empty string maps to 0."""
    return int(bits, 2) if bits else 0


def parse_int_range(text: str) -> Tuple[int, int]:
    """
    Parse an inclusive range "a:b" (or a single integer "a").

    :raises ValueError: on malformed text or a > b.
    """
    parts = text.split(":")
    if len(parts) == 1:
        low = high = int(parts[0])
    elif len(parts) == 2:
        low, high = int(parts[0]), int(parts[1])
    else:
        raise ValueError(f"Malformed range {text!r}, expected 'a:b'.")
    if low > high:
        raise ValueError(f"Empty range {text!r}.")
    return low, high


def parse_int_set(text: str) -> Tuple[int, ...]:
    """Parse a comma-separated list of integers, keeping order and dropping duplicates."""
    values = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            raise ValueError(f"Malformed integer list {text!r}.")
        value = int(item)
        if value not in values:
            values.append(value)
    return tuple(values)
