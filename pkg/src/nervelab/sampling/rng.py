"""Counter-based deterministic randomness.

Every random quantity in the package is derived on demand from a 64-bit seed,
a short role tag, and the integer ids of the object the quantity belongs to.
Nothing is stored and no generator state is threaded through callers, so any
value can be recomputed independently and in any order.

The scalar path uses Python integers masked to 64 bits; `derive_array` is the
numpy translation of the same chain and must produce bit-identical values,
which the test suite checks. Keep the two in sync when touching either.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB

# 2**53 denominator: uniforms are dyadic rationals exactly representable as floats.
UNIT_DEN = 1 << 53


def _mix(x: int) -> int:
    z = (x + _GAMMA) & _MASK
    z ^= z >> 30
    z = (z * _MUL1) & _MASK
    z ^= z >> 27
    z = (z * _MUL2) & _MASK
    z ^= z >> 31
    return z


def _tag_hash(tag: str) -> int:
    # FNV-1a over the ASCII bytes of the tag.
    h = 0xCBF29CE484222325
    for b in tag.encode("ascii"):
        h ^= b
        h = (h * 0x100000001B3) & _MASK
    return h


def derive(seed: int, tag: str, *ids: int) -> int:
    """64-bit value determined by (seed, tag, ids)."""
    h = _mix((seed & _MASK) ^ _tag_hash(tag))
    for i in ids:
        h = _mix(h ^ (i & _MASK))
    return h


def derive_array(seed: int, tag: str, *id_arrays: np.ndarray) -> np.ndarray:
    """Vectorized `derive`: id arrays are broadcast elementwise.

    Bit-identical to calling `derive(seed, tag, *column)` per element.
    """
    with np.errstate(over="ignore"):
        arrays = [np.asarray(a).astype(np.uint64) for a in id_arrays]
        h = np.uint64(_mix((seed & _MASK) ^ _tag_hash(tag)))
        if not arrays:
            return h
        out = np.broadcast_arrays(*arrays)[0].copy()
        out[...] = h
        for a in arrays:
            out = _mix_np(out ^ a)
        return out


def _mix_np(x: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        z = x + np.uint64(_GAMMA)
        z ^= z >> np.uint64(30)
        z *= np.uint64(_MUL1)
        z ^= z >> np.uint64(27)
        z *= np.uint64(_MUL2)
        z ^= z >> np.uint64(31)
        return z


def unit_fraction(seed: int, tag: str, *ids: int) -> Fraction:
    """Exact uniform on [0, 1): k / 2**53 with k a 53-bit draw."""
    return Fraction(derive(seed, tag, *ids) >> 11, UNIT_DEN)


def unit_float(seed: int, tag: str, *ids: int) -> float:
    """float(unit_fraction(...)), exactly (dyadic with 53-bit numerator)."""
    return (derive(seed, tag, *ids) >> 11) / UNIT_DEN


def unit_floats(seed: int, tag: str, ids: np.ndarray) -> np.ndarray:
    """Vectorized unit_float over an id array."""
    return (derive_array(seed, tag, ids) >> np.uint64(11)).astype(np.float64) / UNIT_DEN


def poisson_counts(lam: float, seed: int, tag: str, ids: np.ndarray) -> np.ndarray:
    """Poisson(lam) count per id via inversion of the derived uniforms.

    lam must be small enough that the cdf table stays short; the package only
    draws per-atom counts with lam = intensity * weight, well under 30.
    """
    if lam < 0:
        raise ValueError("negative intensity")
    if lam == 0:
        return np.zeros(len(ids), dtype=np.int64)
    if lam > 60:
        raise ValueError("per-atom Poisson mean too large for table inversion")
    terms = []
    import math

    p = math.exp(-lam)
    total = p
    terms.append(total)
    k = 0
    while total < 1.0 - 1e-16 and k < 400:
        k += 1
        p *= lam / k
        total += p
        terms.append(total)
    cdf = np.array(terms)
    u = unit_floats(seed, tag, np.asarray(ids))
    return np.searchsorted(cdf, u, side="right").astype(np.int64)
