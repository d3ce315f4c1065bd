"""Shared domain types: index bit expansions, weight tables, reliability
sequences and code specifications.

Conventions used throughout the package:

* weights are "larger = more reliable" for every construction method,
* reliability sequences are stored in ascending reliability order,
* ties in weight are broken by ascending index (the smaller index is treated
  as less reliable), which makes every ordering total and reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "IndexBits",
    "WeightTable",
    "ReliabilitySequence",
    "CodeSpec",
    "index_bits",
    "rank_by_weight",
    "select_code",
    "extract_nested",
    "write_sequence",
    "read_sequence",
]


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class IndexBits:
    """Binary expansion of a sub-channel index, least-significant bit first."""

    index: int
    width_n: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if not (0 <= self.index < (1 << self.width_n)):
            raise ValueError(f"index {self.index} out of range for width {self.width_n}")
        if len(self.bits) != self.width_n or any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be width_n binary digits")
        if sum(b << j for j, b in enumerate(self.bits)) != self.index:
            raise ValueError("bits do not reproduce index")


def index_bits(i: int, n: int) -> IndexBits:
    """Expand index ``i`` into ``n`` binary digits B_0..B_{n-1} (LSB first)."""
    if n < 1:
        raise ValueError("width must be positive")
    if not (0 <= i < (1 << n)):
        raise ValueError(f"index {i} out of range for width {n}")
    return IndexBits(index=i, width_n=n, bits=tuple((i >> j) & 1 for j in range(n)))


@dataclass(frozen=True)
class WeightTable:
    """Per-sub-channel reliability scores for a length-2^n code."""

    n: int
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if w.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} weights, got {w.shape}")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        object.__setattr__(self, "weights", _readonly(w))

    @property
    def block_length(self) -> int:
        return 1 << self.n


@dataclass(frozen=True)
class ReliabilitySequence:
    """Sub-channel indices in ascending reliability order (a permutation)."""

    n: int
    order: np.ndarray

    def __post_init__(self):
        o = np.asarray(self.order, dtype=np.int64)
        size = 1 << self.n
        if o.shape != (size,):
            raise ValueError(f"expected {size} entries, got {o.shape}")
        seen = np.zeros(size, dtype=bool)
        if o.min(initial=0) < 0 or o.max(initial=0) >= size:
            raise ValueError("sequence entries out of range")
        seen[o] = True
        if not seen.all():
            raise ValueError("sequence is not a permutation")
        object.__setattr__(self, "order", _readonly(o))

    @property
    def block_length(self) -> int:
        return 1 << self.n


@dataclass(frozen=True)
class CodeSpec:
    """An (N, K, I) polar code with frozen complement and optional CRC."""

    block_length: int
    info_length: int
    info_set: np.ndarray
    frozen_set: np.ndarray
    crc: object | None = field(default=None)

    def __post_init__(self):
        if not _is_power_of_two(self.block_length):
            raise ValueError("block length must be a power of two")
        info = np.sort(np.asarray(self.info_set, dtype=np.int64))
        frozen = np.sort(np.asarray(self.frozen_set, dtype=np.int64))
        if info.size != self.info_length:
            raise ValueError("info set size must equal K")
        merged = np.concatenate([info, frozen])
        if merged.size != self.block_length or not np.array_equal(
            np.sort(merged), np.arange(self.block_length)
        ):
            raise ValueError("info and frozen sets must partition 0..N-1")
        object.__setattr__(self, "info_set", _readonly(info))
        object.__setattr__(self, "frozen_set", _readonly(frozen))

    @property
    def n(self) -> int:
        return self.block_length.bit_length() - 1

    def frozen_mask(self) -> np.ndarray:
        mask = np.ones(self.block_length, dtype=np.uint8)
        mask[self.info_set] = 0
        return mask


def rank_by_weight(table: WeightTable) -> ReliabilitySequence:
    """Order indices by ascending weight; equal weights keep ascending index.

    A stable sort over the identity index order realises the tie rule exactly.
    """
    if not np.all(np.isfinite(table.weights)):
        raise ValueError("weights must be finite")
    order = np.argsort(table.weights, kind="stable")
    return ReliabilitySequence(n=table.n, order=order)


def extract_nested(seq_max: ReliabilitySequence, block_length: int) -> ReliabilitySequence:
    """Keep only entries below ``block_length``, preserving order.

    This is the nested-extraction rule: one stored maximum-length sequence
    yields the sequence of every shorter power-of-two length.
    """
    if not _is_power_of_two(block_length):
        raise ValueError("block length must be a power of two")
    if block_length > seq_max.block_length:
        raise ValueError("cannot extract a longer sequence than the source")
    order = seq_max.order[seq_max.order < block_length]
    return ReliabilitySequence(n=block_length.bit_length() - 1, order=order)


def select_code(
    seq: ReliabilitySequence,
    block_length: int,
    info_length: int,
    crc: object | None = None,
) -> CodeSpec:
    """Pick the ``info_length`` most reliable sub-channels; freeze the rest."""
    if info_length > block_length:
        raise ValueError("K cannot exceed N")
    if info_length < 0:
        raise ValueError("K must be non-negative")
    nested = extract_nested(seq, block_length)
    info = nested.order[block_length - info_length :]
    frozen = nested.order[: block_length - info_length]
    return CodeSpec(
        block_length=block_length,
        info_length=info_length,
        info_set=info,
        frozen_set=frozen,
        crc=crc,
    )


def write_sequence(seq: ReliabilitySequence, path: str | Path, method: str) -> None:
    """Persist a sequence; ``*.json`` paths get the JSON form, others plain text.

    Text form: two ``#`` header lines (N_max and method) then one index per
    line in ascending reliability order.
    """
    path = Path(path)
    if path.suffix == ".json":
        payload = {
            "n_max": seq.block_length,
            "method": method,
            "order": [int(i) for i in seq.order],
        }
        path.write_text(json.dumps(payload, indent=2) + "\n")
    else:
        lines = [f"# N_max={seq.block_length}", f"# method={method}"]
        lines.extend(str(int(i)) for i in seq.order)
        path.write_text("\n".join(lines) + "\n")


def read_sequence(path: str | Path) -> tuple[ReliabilitySequence, str]:
    """Load a sequence file written by :func:`write_sequence`.

    Returns the sequence and its method metadata string.
    """
    path = Path(path)
    text = path.read_text()
    if text.lstrip().startswith("{"):
        payload = json.loads(text)
        n_max = int(payload["n_max"])
        method = str(payload.get("method", ""))
        order = np.asarray(payload["order"], dtype=np.int64)
    else:
        n_max = -1
        method = ""
        entries = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("N_max="):
                    n_max = int(body[len("N_max=") :])
                elif body.startswith("method="):
                    method = body[len("method=") :]
                continue
            entries.append(int(line))
        order = np.asarray(entries, dtype=np.int64)
        if n_max < 0:
            n_max = order.size
    if not _is_power_of_two(n_max) or order.size != n_max:
        raise ValueError(f"sequence file {path} is malformed")
    return ReliabilitySequence(n=n_max.bit_length() - 1, order=order), method
