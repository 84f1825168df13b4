"""Bit-set helpers. Subsets of a ground set {0..n-1} are Python ints."""
import os


def bits(mask):
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask):
    return mask.bit_count()


def mask_of(items):
    m = 0
    for i in items:
        m |= 1 << i
    return m


def submasks(mask):
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def env_cap(default):
    """Enumeration cap, overridable through ``HIBILAB_CAP``."""
    value = os.environ.get("HIBILAB_CAP")
    if value:
        return int(value)
    return default
