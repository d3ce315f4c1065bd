"""Polar encoding, CRC attachment and SC-family decoding.

Generator convention: G = F^(x)n with kernel F = [[1, 0], [1, 1]], so
G[i, j] = 1 exactly when the set bits of column j are a subset of the set
bits of row i. Codeword position 0 carries the parity of every source bit,
source bit N-1 appears in every codeword position, and successive
cancellation decodes source bits in natural order with u_0 synthesised on the
least reliable channel. This is the convention under which the low-index
frozen sets produced by every construction method are meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .core import CodeSpec

__all__ = [
    "CrcSpec",
    "CRC19_DEFAULT",
    "DecodeCandidate",
    "DecodeResult",
    "generator_entry",
    "encode",
    "crc_encode",
    "crc_check",
    "sc_decode",
    "scl_decode",
    "ca_scl_decode",
]


@dataclass(frozen=True)
class CrcSpec:
    """Generator polynomial: implicit leading x^width term plus the listed
    coefficients of x^(width-1)..x^0, most significant first."""

    width: int
    coefficient_bits: tuple[int, ...]

    def __post_init__(self):
        if self.width != len(self.coefficient_bits):
            raise ValueError("width must equal the coefficient bit count")
        if any(b not in (0, 1) for b in self.coefficient_bits):
            raise ValueError("coefficients must be bits")

    def gen_low(self) -> np.ndarray:
        return np.asarray(self.coefficient_bits, dtype=np.uint8)


# 19-bit CRC, generator 0b1010001010110111001 under the implicit-x^19 reading.
CRC19_DEFAULT = CrcSpec(
    width=19,
    coefficient_bits=tuple(int(b) for b in "1010001010110111001"),
)


@dataclass(frozen=True)
class DecodeCandidate:
    """One surviving decoding path: full source word, info payload, metric."""

    source_word: np.ndarray
    info_bits: np.ndarray
    path_metric: float
    crc_pass: bool | None = None


@dataclass(frozen=True)
class DecodeResult:
    selected: DecodeCandidate
    candidates: tuple[DecodeCandidate, ...]
    decoder_kind: str = field(default="SC")


def generator_entry(i: int, j: int, n: int) -> int:
    """Entry (i, j) of F^(x)n: 1 iff the set bits of j are a subset of those of i."""
    size = 1 << n
    if not (0 <= i < size and 0 <= j < size):
        raise ValueError(f"indices ({i}, {j}) out of range for width {n}")
    return 1 if (j & ~i) == 0 else 0


def _as_bits(x, length: int | None = None) -> np.ndarray:
    arr = np.asarray(x, dtype=np.uint8)
    if arr.ndim != 1:
        raise ValueError("expected a flat bit sequence")
    if np.any(arr > 1):
        raise ValueError("entries must be bits")
    if length is not None and arr.size != length:
        raise ValueError(f"expected {length} bits, got {arr.size}")
    return arr


def encode(spec: CodeSpec, u: np.ndarray) -> np.ndarray:
    """Map K info bits onto the info set (frozen positions zero) and apply the
    O(N log N) butterfly transform."""
    u = _as_bits(u, spec.info_length)
    d = np.zeros(spec.block_length, dtype=np.uint8)
    d[spec.info_set] = u
    return _kernels.butterfly_transform(d)


def crc_encode(message, crc: CrcSpec = CRC19_DEFAULT) -> np.ndarray:
    """Parity bits: remainder of message(x) * x^width modulo the generator."""
    bits = _as_bits(message)
    if bits.size == 0:
        raise ValueError("message must be non-empty")
    return _kernels.crc_remainder(bits, crc.gen_low())


def crc_check(payload, crc: CrcSpec = CRC19_DEFAULT) -> bool:
    """True iff the payload (message followed by parity) has zero remainder."""
    bits = _as_bits(payload)
    if bits.size <= crc.width:
        raise ValueError("payload must be longer than the parity field")
    return not np.any(_kernels.crc_remainder(bits, crc.gen_low()))


def _check_llr(llr, block_length: int) -> np.ndarray:
    arr = np.asarray(llr, dtype=np.float64)
    if arr.shape != (block_length,):
        raise ValueError(f"expected {block_length} LLRs, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("LLRs must be finite")
    return arr


def _candidate(spec: CodeSpec, u_hat: np.ndarray, pm: float, crc_pass=None) -> DecodeCandidate:
    return DecodeCandidate(
        source_word=u_hat.copy(),
        info_bits=u_hat[spec.info_set].copy(),
        path_metric=float(pm),
        crc_pass=crc_pass,
    )


def sc_decode(llr, spec: CodeSpec) -> DecodeResult:
    """Min-sum successive cancellation: f(a,b) = sign(a)sign(b)min(|a|,|b|),
    g(a,b,u) = b + (1-2u)a, frozen bits forced to zero."""
    arr = _check_llr(llr, spec.block_length)
    u_hat, pm = _kernels.sc_decode_kernel(arr, spec.frozen_mask())
    cand = _candidate(spec, u_hat, pm)
    return DecodeResult(selected=cand, candidates=(cand,), decoder_kind="SC")


def scl_decode(llr, spec: CodeSpec, list_size: int) -> DecodeResult:
    """Breadth-first list decoding keeping the ``list_size`` best paths by
    accumulated sign-mismatch penalty; candidates return sorted by metric."""
    if list_size < 1:
        raise ValueError("list size must be at least 1")
    arr = _check_llr(llr, spec.block_length)
    cands, pms, n_finite = _kernels.scl_decode_kernel(arr, spec.frozen_mask(), list_size)
    out = tuple(_candidate(spec, cands[c], pms[c]) for c in range(n_finite))
    return DecodeResult(selected=out[0], candidates=out, decoder_kind="SCL")


def ca_scl_decode(llr, spec: CodeSpec, list_size: int, check_depth: int) -> DecodeResult:
    """List decoding with CRC selection over the best ``check_depth`` paths.

    The first scanned candidate whose info payload passes the CRC is selected;
    when none passes, the metric-best candidate is returned flagged
    ``crc_pass=False``.
    """
    if spec.crc is None:
        raise ValueError("code spec carries no CRC")
    crc: CrcSpec = spec.crc
    if spec.info_length <= crc.width:
        raise ValueError("info length leaves no room for a message before parity")
    if not (1 <= check_depth <= list_size):
        raise ValueError("check depth must satisfy 1 <= T <= L")
    base = scl_decode(llr, spec, list_size)
    scanned = []
    selected = None
    for rank, cand in enumerate(base.candidates):
        if rank >= check_depth:
            scanned.append(cand)
            continue
        passed = crc_check(cand.info_bits, crc)
        cand = DecodeCandidate(
            source_word=cand.source_word,
            info_bits=cand.info_bits,
            path_metric=cand.path_metric,
            crc_pass=passed,
        )
        scanned.append(cand)
        if passed and selected is None:
            selected = cand
    if selected is None:
        selected = scanned[0]
    return DecodeResult(selected=selected, candidates=tuple(scanned), decoder_kind="CA-SCL")
