"""Hot numeric kernels: polar transform, CRC long division, SC / SCL decoding,
and the per-block simulation pipeline.

Every kernel is written in nopython style and compiled with numba when
available (see :mod:`pwpolar._accel`). The undecorated implementations are kept
importable for the fallback path and for the jit-vs-python benchmark.
"""

import numpy as np

from ._accel import NUMBA_ENABLED, njit

__all__ = [
    "butterfly_transform",
    "crc_remainder",
    "sc_decode_kernel",
    "scl_decode_kernel",
    "simulate_batch",
    "PY_KERNELS",
]

DECODER_SC = 0
DECODER_SCL = 1
DECODER_CASCL = 2


def _butterfly_transform(d):
    """In-place polar transform x = d . G over GF(2), G[i, j] = [bits(j) subset of bits(i)].

    Stage s folds the bit-s-set half onto the bit-s-clear half, so position 0
    accumulates the parity of every input. O(N log N) bit operations.
    """
    x = d.copy()
    n_total = x.shape[0]
    step = 1
    while step < n_total:
        span = 2 * step
        for base in range(0, n_total, span):
            for k in range(base, base + step):
                x[k] ^= x[k + step]
        step = span
    return x


def _crc_remainder(bits, gen_low):
    """Remainder of bits(x) * x^r divided by the degree-r generator.

    ``gen_low`` holds the generator coefficients x^(r-1)..x^0 (the leading x^r
    term is implicit). Returned parity is MSB-first (coefficient of x^(r-1)
    first).
    """
    r = gen_low.shape[0]
    rem = np.zeros(r, dtype=np.uint8)
    for i in range(bits.shape[0]):
        feedback = bits[i] ^ rem[0]
        for j in range(r - 1):
            rem[j] = rem[j + 1]
        rem[r - 1] = 0
        if feedback:
            for j in range(r):
                rem[j] ^= gen_low[j]
    return rem


def _sc_decode_kernel(chan_llr, frozen_mask):
    """Single-pass successive cancellation with min-sum f/g.

    Returns (u_hat, path_metric). The metric accumulates |LLR| whenever the
    decided bit contradicts the LLR sign (only frozen bits can contradict
    under SC).
    """
    n_total = chan_llr.shape[0]
    n = 0
    while (1 << n) < n_total:
        n += 1
    llr = np.empty((n + 1, n_total), dtype=np.float64)
    for k in range(n_total):
        llr[0, k] = chan_llr[k]
    ucap = np.zeros((n + 1, n_total), dtype=np.uint8)
    state = np.zeros(2 * n_total - 1, dtype=np.uint8)
    pm = 0.0
    depth = 0
    node = 0
    while True:
        if depth == n:
            dm = llr[n, node]
            if frozen_mask[node]:
                ucap[n, node] = 0
                if dm < 0.0:
                    pm += -dm
            else:
                ucap[n, node] = 1 if dm < 0.0 else 0
            if node == n_total - 1:
                break
            node >>= 1
            depth -= 1
        else:
            pos = (1 << depth) - 1 + node
            seg = n_total >> depth
            half = seg >> 1
            base = node * seg
            if state[pos] == 0:
                for k in range(half):
                    a = llr[depth, base + k]
                    b = llr[depth, base + half + k]
                    mag = min(abs(a), abs(b))
                    if (a < 0.0) != (b < 0.0):
                        mag = -mag
                    llr[depth + 1, base + k] = mag
                state[pos] = 1
                node = 2 * node
                depth += 1
            elif state[pos] == 1:
                for k in range(half):
                    a = llr[depth, base + k]
                    b = llr[depth, base + half + k]
                    u = ucap[depth + 1, base + k]
                    llr[depth + 1, base + half + k] = b + (1.0 - 2.0 * u) * a
                state[pos] = 2
                node = 2 * node + 1
                depth += 1
            else:
                for k in range(half):
                    ucap[depth, base + k] = ucap[depth + 1, base + k] ^ ucap[depth + 1, base + half + k]
                    ucap[depth, base + half + k] = ucap[depth + 1, base + half + k]
                node >>= 1
                depth -= 1
    u_hat = np.empty(n_total, dtype=np.uint8)
    for k in range(n_total):
        u_hat[k] = ucap[n, k]
    return u_hat, pm


def _scl_decode_kernel(chan_llr, frozen_mask, list_size):
    """Successive cancellation list decoding, L parallel paths.

    Inactive path slots carry +inf metrics so selection logic is uniform.
    Candidates at an info leaf are enumerated slot-major / bit-minor and
    survivors are re-stored in ascending candidate order, which keeps the
    слot order lexicographic in decision history; stable mergesort then
    resolves metric ties in favour of the lexicographically smaller path.

    Returns (u_cands, pms, n_finite): decision vectors and metrics sorted by
    ascending metric; only the first n_finite rows are real paths.
    """
    n_total = chan_llr.shape[0]
    n = 0
    while (1 << n) < n_total:
        n += 1
    L = list_size
    llr = np.empty((L, n + 1, n_total), dtype=np.float64)
    ucap = np.zeros((L, n + 1, n_total), dtype=np.uint8)
    for l in range(L):
        for k in range(n_total):
            llr[l, 0, k] = chan_llr[k]
    pm = np.empty(L, dtype=np.float64)
    pm[0] = 0.0
    for l in range(1, L):
        pm[l] = np.inf
    new_llr = np.empty_like(llr)
    new_ucap = np.empty_like(ucap)
    new_pm = np.empty_like(pm)
    cand_pm = np.empty(2 * L, dtype=np.float64)
    state = np.zeros(2 * n_total - 1, dtype=np.uint8)
    depth = 0
    node = 0
    while True:
        if depth == n:
            if frozen_mask[node]:
                for l in range(L):
                    ucap[l, n, node] = 0
                    dm = llr[l, n, node]
                    if dm < 0.0:
                        pm[l] += -dm
            else:
                for l in range(L):
                    dm = llr[l, n, node]
                    penalty = abs(dm)
                    if dm < 0.0:
                        cand_pm[2 * l] = pm[l] + penalty
                        cand_pm[2 * l + 1] = pm[l]
                    else:
                        cand_pm[2 * l] = pm[l]
                        cand_pm[2 * l + 1] = pm[l] + penalty
                order = np.argsort(cand_pm, kind="mergesort")
                keep = np.sort(order[:L])
                for s in range(L):
                    c = keep[s]
                    src = c >> 1
                    bit = c & 1
                    new_pm[s] = cand_pm[c]
                    for dd in range(n + 1):
                        for k in range(n_total):
                            new_llr[s, dd, k] = llr[src, dd, k]
                            new_ucap[s, dd, k] = ucap[src, dd, k]
                    new_ucap[s, n, node] = bit
                tmp_llr = llr
                llr = new_llr
                new_llr = tmp_llr
                tmp_ucap = ucap
                ucap = new_ucap
                new_ucap = tmp_ucap
                tmp_pm = pm
                pm = new_pm
                new_pm = tmp_pm
            if node == n_total - 1:
                break
            node >>= 1
            depth -= 1
        else:
            pos = (1 << depth) - 1 + node
            seg = n_total >> depth
            half = seg >> 1
            base = node * seg
            if state[pos] == 0:
                for l in range(L):
                    for k in range(half):
                        a = llr[l, depth, base + k]
                        b = llr[l, depth, base + half + k]
                        mag = min(abs(a), abs(b))
                        if (a < 0.0) != (b < 0.0):
                            mag = -mag
                        llr[l, depth + 1, base + k] = mag
                state[pos] = 1
                node = 2 * node
                depth += 1
            elif state[pos] == 1:
                for l in range(L):
                    for k in range(half):
                        a = llr[l, depth, base + k]
                        b = llr[l, depth, base + half + k]
                        u = ucap[l, depth + 1, base + k]
                        llr[l, depth + 1, base + half + k] = b + (1.0 - 2.0 * u) * a
                state[pos] = 2
                node = 2 * node + 1
                depth += 1
            else:
                for l in range(L):
                    for k in range(half):
                        ucap[l, depth, base + k] = ucap[l, depth + 1, base + k] ^ ucap[l, depth + 1, base + half + k]
                        ucap[l, depth, base + half + k] = ucap[l, depth + 1, base + half + k]
                node >>= 1
                depth -= 1
    final = np.argsort(pm, kind="mergesort")
    u_cands = np.empty((L, n_total), dtype=np.uint8)
    pms = np.empty(L, dtype=np.float64)
    n_finite = 0
    for s in range(L):
        src = final[s]
        pms[s] = pm[src]
        if pms[s] != np.inf:
            n_finite += 1
        for k in range(n_total):
            u_cands[s, k] = ucap[src, n, k]
    return u_cands, pms, n_finite


def _simulate_batch(
    msg_bits,
    normals,
    info_pos,
    frozen_mask,
    sigma,
    decoder_kind,
    list_size,
    check_depth,
    crc_gen_low,
):
    """Encode, QPSK-modulate, add noise, demodulate and decode a batch of blocks.

    ``msg_bits`` is (B, K_msg); ``normals`` is (B, N) unit Gaussians, one per
    real dimension (two per QPSK symbol). Returns a uint8 error flag per block
    (1 when the decoded message differs from the transmitted one).
    """
    batch = msg_bits.shape[0]
    n_total = frozen_mask.shape[0]
    k_msg = msg_bits.shape[1]
    r = crc_gen_low.shape[0]
    k_info = info_pos.shape[0]
    errors = np.zeros(batch, dtype=np.uint8)
    amp = 1.0 / np.sqrt(2.0)
    llr_scale = np.sqrt(2.0) / (sigma * sigma)
    payload = np.empty(k_info, dtype=np.uint8)
    u = np.empty(n_total, dtype=np.uint8)
    chan_llr = np.empty(n_total, dtype=np.float64)
    for b in range(batch):
        for k in range(k_msg):
            payload[k] = msg_bits[b, k]
        if r > 0:
            parity = _crc_remainder_dispatch(msg_bits[b], crc_gen_low)
            for k in range(r):
                payload[k_msg + k] = parity[k]
        for k in range(n_total):
            u[k] = 0
        for k in range(k_info):
            u[info_pos[k]] = payload[k]
        x = _butterfly_dispatch(u)
        for k in range(n_total):
            y = (1.0 - 2.0 * x[k]) * amp + sigma * normals[b, k]
            chan_llr[k] = llr_scale * y
        if decoder_kind == DECODER_SC:
            u_hat, _ = _sc_dispatch(chan_llr, frozen_mask)
            for k in range(k_msg):
                if u_hat[info_pos[k]] != msg_bits[b, k]:
                    errors[b] = 1
                    break
        else:
            cands, pms, n_finite = _scl_dispatch(chan_llr, frozen_mask, list_size)
            chosen = 0
            if decoder_kind == DECODER_CASCL:
                scan = check_depth if check_depth < n_finite else n_finite
                chosen = 0
                found = False
                for c in range(scan):
                    for k in range(k_info):
                        payload[k] = cands[c, info_pos[k]]
                    rem = _crc_remainder_dispatch(payload, crc_gen_low)
                    ok = True
                    for j in range(r):
                        if rem[j] != 0:
                            ok = False
                            break
                    if ok:
                        chosen = c
                        found = True
                        break
                if not found:
                    chosen = 0
            for k in range(k_msg):
                if cands[chosen, info_pos[k]] != msg_bits[b, k]:
                    errors[b] = 1
                    break
    return errors


if NUMBA_ENABLED:
    butterfly_transform = njit(cache=True, nogil=True)(_butterfly_transform)
    crc_remainder = njit(cache=True, nogil=True)(_crc_remainder)
    sc_decode_kernel = njit(cache=True, nogil=True)(_sc_decode_kernel)
    scl_decode_kernel = njit(cache=True, nogil=True)(_scl_decode_kernel)
else:
    butterfly_transform = _butterfly_transform
    crc_remainder = _crc_remainder
    sc_decode_kernel = _sc_decode_kernel
    scl_decode_kernel = _scl_decode_kernel

# The batch kernel calls the other kernels; bind the dispatch names to the
# decorated versions so the jitted batch loop stays in nopython mode.
_butterfly_dispatch = butterfly_transform
_crc_remainder_dispatch = crc_remainder
_sc_dispatch = sc_decode_kernel
_scl_dispatch = scl_decode_kernel

if NUMBA_ENABLED:
    simulate_batch = njit(cache=True, nogil=True)(_simulate_batch)
else:
    simulate_batch = _simulate_batch

PY_KERNELS = {
    "butterfly_transform": _butterfly_transform,
    "crc_remainder": _crc_remainder,
    "sc_decode_kernel": _sc_decode_kernel,
    "scl_decode_kernel": _scl_decode_kernel,
    "simulate_batch": _simulate_batch,
}
