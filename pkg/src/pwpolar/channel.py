"""QPSK over AWGN: modulation, noise injection, soft demodulation and SNR
bookkeeping.

A symbol stream is a flat float64 array of real dimensions (I0, Q0, I1, Q1,
...). Gray-mapped QPSK carries one bit per dimension, so demodulation is
independent per dimension and an N-bit codeword occupies exactly N entries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["ChannelParams", "qpsk_modulate", "awgn_add", "qpsk_llr", "snr_convert"]

_AMP = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class ChannelParams:
    """Es/N0 in dB for unit-energy symbols; sigma is per real dimension."""

    esn0_db: float

    @property
    def sigma_per_dim(self) -> float:
        return float(np.sqrt(1.0 / (2.0 * 10.0 ** (self.esn0_db / 10.0))))


def qpsk_modulate(bits) -> np.ndarray:
    """Map bit pairs to (+-1/sqrt2, +-1/sqrt2); bit 0 maps to the positive rail."""
    arr = np.asarray(bits, dtype=np.float64)
    if arr.ndim != 1 or arr.size % 2 != 0:
        raise ValueError("QPSK requires a flat, even-length bit sequence")
    return (1.0 - 2.0 * arr) * _AMP


def awgn_add(symbols: np.ndarray, params: ChannelParams, rng: np.random.Generator) -> np.ndarray:
    """Add independent zero-mean Gaussian noise per real dimension."""
    sigma = params.sigma_per_dim
    if sigma == 0.0:
        return np.array(symbols, dtype=np.float64, copy=True)
    return symbols + sigma * rng.standard_normal(symbols.shape)


def qpsk_llr(received: np.ndarray, params: ChannelParams) -> np.ndarray:
    """Per-dimension LLR sqrt(2) * y / sigma^2; positive favours bit 0."""
    sigma = params.sigma_per_dim
    if sigma == 0.0:
        raise ValueError("sigma must be positive; use saturated LLRs for a noiseless channel")
    return np.sqrt(2.0) * np.asarray(received, dtype=np.float64) / (sigma * sigma)


def snr_convert(esn0_db: float, rate: float, bits_per_symbol: int = 2) -> float:
    """Eb/N0 in dB from Es/N0: subtract 10 log10(bits_per_symbol * rate)."""
    if not 0.0 < rate <= 1.0:
        raise ValueError("code rate must lie in (0, 1]")
    return esn0_db - 10.0 * np.log10(bits_per_symbol * rate)
