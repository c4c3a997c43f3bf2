"""
utils.py - Parsing helpers for command-line values
"""

import re
from typing import List, Sequence, Tuple

_RANGE = re.compile(r"^\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?$")


def parse_N_range(text: str) -> Tuple[int, int]:
    """Parse 'N' or 'a..b' into an inclusive range"""
    match = _RANGE.match(text)
    if not match:
        raise ValueError(f"N must be a nonnegative integer or a range a..b, got '{text}'")
    low = int(match.group(1))
    high = int(match.group(2)) if match.group(2) is not None else low
    if high < low:
        raise ValueError(f"empty N range '{text}'")
    return low, high


def parse_dims(text: str) -> Tuple[int, ...]:
    """Parse a dimension signature such as '2,1,2,2'"""
    try:
        dims = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise ValueError(f"dimensions must be comma separated integers, got '{text}'")
    if not dims or any(d < 1 for d in dims):
        raise ValueError(f"dimensions must be positive, got '{text}'")
    return dims


def parse_identities(values: Sequence[str], known: Sequence[str]) -> List[str]:
    """Expand repeated / comma separated identity ids; 'all' selects the whole catalog"""
    result = []
    for value in values:
        for item in value.split(","):
            item = item.strip().upper()
            if not item:
                continue
            if item == "ALL":
                candidates = list(known)
            else:
                candidates = [item]
            for candidate in candidates:
                if candidate not in result:
                    result.append(candidate)
    return result
