"""Radix-2 discrete Fourier transform on power-of-two grids.

Iterative decimation-in-time Cooley-Tukey, vectorized over the leading axes so
2-d fields transform row-blocks at once.  Self-contained and bit-reproducible.
"""

import numpy as np


def _is_pow2(n):
    return n >= 1 and (n & (n - 1)) == 0


def _bit_reverse_indices(n):
    idx = np.arange(n)
    rev = np.zeros(n, dtype=int)
    bits = n.bit_length() - 1
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def fft(a, axis=-1):
    """Forward DFT along axis; length must be a power of two."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[axis]
    if not _is_pow2(n):
        raise ValueError(f"length {n} is not a power of two")
    a = np.moveaxis(a, axis, -1)
    out = a[..., _bit_reverse_indices(n)].copy()
    m = 2
    while m <= n:
        half = m // 2
        tw = np.exp(-2j * np.pi * np.arange(half) / m)
        blocks = out.reshape(out.shape[:-1] + (n // m, m))
        even = blocks[..., :half].copy()
        odd = blocks[..., half:] * tw
        blocks[..., :half] = even + odd
        blocks[..., half:] = even - odd
        m *= 2
    return np.moveaxis(out, -1, axis)


def ifft(a, axis=-1):
    """Inverse DFT along axis (unitary pairing with fft: ifft(fft(x)) == x)."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[axis]
    return np.conj(fft(np.conj(a), axis=axis)) / n


def fft2(a):
    return fft(fft(a, axis=0), axis=1)


def ifft2(a):
    return ifft(ifft(a, axis=0), axis=1)


def freq(n, d=1.0):
    """Sample frequencies for an n-point transform with spacing d (cycles/length)."""
    if not _is_pow2(n):
        raise ValueError(f"length {n} is not a power of two")
    k = np.arange(n)
    k[n // 2:] -= n
    return k / (n * d)
