"""Single-threaded numba kernels for in-place statevector updates.

Index convention everywhere: bit t of a basis index is the computational
value of qubit t. Kernels mutate the amplitude buffer in place so a
25-qubit simulation never holds more than one state copy.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def apply_1q(amps, m00, m01, m10, m11, target):
    """Apply a real 2x2 matrix to one qubit of the packed amplitude vector."""
    tk = 1 << target
    mask = tk - 1
    half = amps.shape[0] >> 1
    for g in range(half):
        i0 = ((g >> target) << (target + 1)) | (g & mask)
        i1 = i0 | tk
        a0 = amps[i0]
        a1 = amps[i1]
        amps[i0] = m00 * a0 + m01 * a1
        amps[i1] = m10 * a0 + m11 * a1


@njit(cache=True)
def apply_cnot(amps, control, target):
    """Swap target-bit pairs on the half of the register where control = 1."""
    if control < target:
        lo, hi = control, target
    else:
        lo, hi = target, control
    lo_mask = (1 << lo) - 1
    hi_mask = (1 << hi) - 1
    ck = 1 << control
    tk = 1 << target
    quarter = amps.shape[0] >> 2
    for g in range(quarter):
        base = ((g >> lo) << (lo + 1)) | (g & lo_mask)
        base = ((base >> hi) << (hi + 1)) | (base & hi_mask)
        i0 = base | ck
        i1 = base | ck | tk
        tmp = amps[i0]
        amps[i0] = amps[i1]
        amps[i1] = tmp


@njit(cache=True)
def purity_terms(amps, target, block):
    """Per-block partial sums of the single-qubit reduced matrix entries.

    Returns (p00, p11, re01, im01) arrays of per-block sums over amplitude
    pairs differing only in bit `target`. The fixed block size keeps the
    summation order deterministic and the rounding error small; the caller
    finishes with numpy's pairwise sum.
    """
    tk = 1 << target
    mask = tk - 1
    half = amps.shape[0] >> 1
    nblocks = (half + block - 1) // block
    p00 = np.zeros(nblocks)
    p11 = np.zeros(nblocks)
    re01 = np.zeros(nblocks)
    im01 = np.zeros(nblocks)
    for b in range(nblocks):
        s00 = 0.0
        s11 = 0.0
        sre = 0.0
        sim = 0.0
        stop = min((b + 1) * block, half)
        for g in range(b * block, stop):
            i0 = ((g >> target) << (target + 1)) | (g & mask)
            a0 = amps[i0]
            a1 = amps[i0 | tk]
            s00 += a0.real * a0.real + a0.imag * a0.imag
            s11 += a1.real * a1.real + a1.imag * a1.imag
            sre += a0.real * a1.real + a0.imag * a1.imag
            sim += a0.imag * a1.real - a0.real * a1.imag
        p00[b] = s00
        p11[b] = s11
        re01[b] = sre
        im01[b] = sim
    return p00, p11, re01, im01
