"""Monte-Carlo BLER evaluation over the QPSK/AWGN chain.

Reproducibility contract: every block draws its message bits and noise from a
dedicated Philox substream keyed by (master seed, SNR point, block index), so
results are a pure function of (config, seed) regardless of batching or
thread scheduling. Stop rules are applied block-serially inside each point.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import _kernels
from .codec import CRC19_DEFAULT
from .construction import parse_method
from .core import select_code, rank_by_weight

__all__ = [
    "SimConfig",
    "BlerPoint",
    "SweepResult",
    "ComparisonResult",
    "run_point",
    "run_sweep",
    "required_snr",
    "k_grid",
    "compare_methods",
    "write_points_csv",
    "write_sweep_json",
    "write_comparison_csv",
]

_DECODER_KINDS = {"sc": _kernels.DECODER_SC, "scl": _kernels.DECODER_SCL, "cascl": _kernels.DECODER_CASCL}
_BATCH_BLOCKS = 512


@dataclass(frozen=True)
class SimConfig:
    """One simulation task: code, decoder, SNR grid, stop rule and seed.

    ``k_msg`` counts message bits; with CRC enabled the code carries
    ``k_msg + 19`` info positions (parity occupies the tail of the info set).
    """

    n: int
    k_msg: int
    method: str = "pw"
    crc: bool = False
    decoder: str = "sc"
    list_size: int = 1
    check_depth: int = 1
    snr_start_db: float = 0.0
    snr_stop_db: float = 5.0
    snr_step_db: float = 0.1
    target_bler: float = 1e-3
    min_errors: int = 2000
    max_blocks: int = 1_000_000
    seed: int = 1
    early_exit: bool = True

    def __post_init__(self):
        if self.n < 2 or self.n & (self.n - 1):
            raise ValueError("codeword length must be a power of two >= 2")
        if self.snr_step_db <= 0:
            raise ValueError("SNR step must be positive")
        if self.min_errors < 1:
            raise ValueError("min error blocks must be >= 1")
        if self.decoder not in _DECODER_KINDS:
            raise ValueError(f"unknown decoder {self.decoder!r}")
        if not (1 <= self.check_depth <= self.list_size):
            raise ValueError("need L >= T >= 1")
        if self.decoder == "cascl" and not self.crc:
            raise ValueError("CRC-aided decoding requires crc=True")
        if self.crc and self.k_msg < 1:
            raise ValueError("CRC needs at least one message bit")
        k_info = self.k_msg + (CRC19_DEFAULT.width if self.crc else 0)
        if not (0 <= k_info <= self.n):
            raise ValueError("info length out of range for this codeword length")

    @property
    def k_info(self) -> int:
        return self.k_msg + (CRC19_DEFAULT.width if self.crc else 0)

    def echo(self) -> dict:
        return {
            "n": self.n,
            "k": self.k_msg,
            "method": self.method,
            "crc": int(self.crc),
            "decoder": self.decoder,
            "list_size": self.list_size,
            "check_depth": self.check_depth,
            "snr_start_db": f"{self.snr_start_db:.4f}",
            "snr_stop_db": f"{self.snr_stop_db:.4f}",
            "snr_step_db": f"{self.snr_step_db:.4f}",
            "target_bler": f"{self.target_bler:.6g}",
            "min_errors": self.min_errors,
            "max_blocks": self.max_blocks,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class BlerPoint:
    snr_db: float
    blocks: int
    block_errors: int
    saturated: bool = False

    @property
    def bler(self) -> float:
        return self.block_errors / self.blocks if self.blocks else 0.0


@dataclass(frozen=True)
class SweepResult:
    config: dict
    points: tuple[BlerPoint, ...]
    required_snr_db: float | None
    required_snr_reason: str | None = None


@dataclass(frozen=True)
class ComparisonResult:
    """Required SNR per (K, method); ``None`` marks an unbracketed target."""

    n: int
    k_values: tuple[int, ...]
    methods: tuple[str, ...]
    required: tuple[tuple[float | None, ...], ...]
    config: dict = field(default_factory=dict)


def _code_arrays(config: SimConfig):
    method = parse_method(config.method)
    n_bits = config.n.bit_length() - 1
    seq = rank_by_weight(method.table(n_bits))
    spec = select_code(seq, config.n, config.k_info, crc=CRC19_DEFAULT if config.crc else None)
    info_pos = spec.info_set.astype(np.int64)
    gen_low = CRC19_DEFAULT.gen_low() if config.crc else np.zeros(0, dtype=np.uint8)
    return spec.frozen_mask(), info_pos, gen_low


def _block_rng(seed: int, snr_db: float, block_index: int) -> np.random.Generator:
    """Substream for one simulated block: Philox keyed by (seed, SNR point)
    with the block index in the most-significant counter limb, so streams of
    distinct blocks can never overlap."""
    snr_key = np.uint64(np.int64(round(snr_db * 1000.0)))
    key = np.array([np.uint64(seed), snr_key], dtype=np.uint64)
    counter = np.array([0, 0, 0, block_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key, counter=counter))


class _BlockStreams:
    """Reusable generator that is re-pointed at each block's substream.

    Resetting the Philox counter through the state dict reproduces exactly the
    stream a freshly constructed :func:`_block_rng` generator would emit,
    without paying object construction per block.
    """

    def __init__(self, seed: int, snr_db: float):
        snr_key = np.uint64(np.int64(round(snr_db * 1000.0)))
        self._bitgen = np.random.Philox(
            key=np.array([np.uint64(seed), snr_key], dtype=np.uint64)
        )
        self.generator = np.random.Generator(self._bitgen)
        self._state = self._bitgen.state

    def seek(self, block_index: int) -> np.random.Generator:
        st = self._state
        st["state"]["counter"][:] = (0, 0, 0, block_index)
        st["buffer_pos"] = 4
        st["has_uint32"] = 0
        st["uinteger"] = 0
        self._bitgen.state = st
        return self.generator


def run_point(config: SimConfig, snr_db: float) -> BlerPoint:
    """Simulate blocks at one SNR until ``min_errors`` errors or the block cap.

    A block errs when the selected decoder payload's message bits differ from
    the transmitted ones; CRC parity is excluded from the comparison, so a
    CRC-fallback path with the correct message still counts as a success.
    """
    frozen_mask, info_pos, gen_low = _code_arrays(config)
    sigma = float(np.sqrt(1.0 / (2.0 * 10.0 ** (snr_db / 10.0))))
    dec = _DECODER_KINDS[config.decoder]
    streams = _BlockStreams(config.seed, snr_db)
    blocks = 0
    errors = 0
    while errors < config.min_errors and blocks < config.max_blocks:
        batch = min(_BATCH_BLOCKS, config.max_blocks - blocks)
        bits = np.empty((batch, config.k_msg), dtype=np.uint8)
        normals = np.empty((batch, config.n), dtype=np.float64)
        for b in range(batch):
            rng = streams.seek(blocks + b)
            bits[b] = rng.integers(0, 2, size=config.k_msg, dtype=np.uint8)
            normals[b] = rng.standard_normal(config.n)
        flags = _kernels.simulate_batch(
            bits,
            normals,
            info_pos,
            frozen_mask,
            sigma,
            dec,
            config.list_size,
            config.check_depth,
            gen_low,
        )
        for flag in flags:
            blocks += 1
            errors += int(flag)
            if errors >= config.min_errors:
                break
    return BlerPoint(
        snr_db=snr_db,
        blocks=blocks,
        block_errors=errors,
        saturated=errors < config.min_errors,
    )


def required_snr(points, target: float = 1e-3):
    """SNR reaching ``target`` BLER by linear interpolation in (log10 BLER, SNR).

    Interpolates on the last downward crossing whose endpoints both have
    positive BLER; an exact hit returns that point's SNR. Returns
    ``(value, None)`` or ``(None, reason)``.
    """
    pts = sorted(points, key=lambda p: p.snr_db)
    best = None
    for a, b in zip(pts, pts[1:]):
        if a.bler >= target >= b.bler and a.bler > 0 and b.bler > 0:
            best = (a, b)
    if best is None:
        for p in pts:
            if p.bler == target:
                best_exact = p
                return best_exact.snr_db, None
        return None, "target BLER not bracketed by positive-BLER points"
    a, b = best
    if a.bler == target:
        return a.snr_db, None
    if b.bler == target:
        return b.snr_db, None
    la, lb, lt = math.log10(a.bler), math.log10(b.bler), math.log10(target)
    return a.snr_db + (b.snr_db - a.snr_db) * (lt - la) / (lb - la), None


def _snr_grid(config: SimConfig) -> list[float]:
    count = int(round((config.snr_stop_db - config.snr_start_db) / config.snr_step_db)) + 1
    count = max(count, 1)
    return [round(config.snr_start_db + i * config.snr_step_db, 10) for i in range(count)]


def run_sweep(config: SimConfig, threads: int = 1, point_runner=run_point) -> SweepResult:
    """Run the ascending SNR grid; optionally early-exit once two consecutive
    points fall a decade below the target."""
    grid = _snr_grid(config)
    points: list[BlerPoint] = []
    cutoff = config.target_bler / 10.0

    def _done() -> bool:
        return (
            config.early_exit
            and len(points) >= 2
            and points[-1].bler < cutoff
            and points[-2].bler < cutoff
        )

    if threads <= 1:
        for snr in grid:
            points.append(point_runner(config, snr))
            if _done():
                break
    else:
        # consume chunk results in grid order and stop exactly where the
        # serial loop would; overshoot results are simply discarded
        pos = 0
        with ThreadPoolExecutor(max_workers=threads) as pool:
            while pos < len(grid) and not _done():
                chunk = grid[pos : pos + threads]
                for pt in pool.map(lambda s: point_runner(config, s), chunk):
                    points.append(pt)
                    if _done():
                        break
                pos += len(chunk)
    value, reason = required_snr(points, config.target_bler)
    return SweepResult(
        config=config.echo(),
        points=tuple(points),
        required_snr_db=value,
        required_snr_reason=reason,
    )


def k_grid(n: int, crc_bits: int = 19, rate_floor: bool = True) -> list[int]:
    """Message-length grid: 8..min(200, K_max) step 1, then step 24 up to
    K_max = floor(5N/6 - crc); optionally drop rates below 1/8."""
    if n < 2 or n & (n - 1):
        raise ValueError("codeword length must be a power of two >= 2")
    k_max = math.floor(5 * n / 6.0 - crc_bits)
    if k_max < 8:
        return []
    first_end = min(200, k_max)
    ks = set(range(8, first_end + 1))
    ks.update(range(first_end, k_max + 1, 24))
    out = sorted(ks)
    if rate_floor:
        out = [k for k in out if k / n >= 1.0 / 8.0]
    return out


def compare_methods(
    config: SimConfig,
    k_values,
    methods,
    threads: int = 1,
    point_runner=run_point,
) -> ComparisonResult:
    """Required SNR for every (K, method) cell under one decoder setup."""
    k_values = tuple(int(k) for k in k_values)
    methods = tuple(methods)
    rows = []
    for k in k_values:
        row = []
        for method in methods:
            cfg = replace(config, k_msg=k, method=method)
            sweep = run_sweep(cfg, threads=threads, point_runner=point_runner)
            row.append(sweep.required_snr_db)
        rows.append(tuple(row))
    return ComparisonResult(
        n=config.n,
        k_values=k_values,
        methods=methods,
        required=tuple(rows),
        config=config.echo(),
    )


def _format_point(p: BlerPoint) -> str:
    return f"{p.snr_db:.4f},{p.blocks},{p.block_errors},{p.bler:.6g}"


def write_points_csv(points, config_echo: dict, path: str | Path) -> None:
    lines = [f"# {key}={value}" for key, value in config_echo.items()]
    lines.append("snr_db,blocks,block_errors,bler")
    lines.extend(_format_point(p) for p in points)
    Path(path).write_text("\n".join(lines) + "\n")


def write_sweep_json(result: SweepResult, path: str | Path) -> None:
    payload = {
        "config": result.config,
        "points": [
            {
                "snr_db": round(p.snr_db, 4),
                "blocks": p.blocks,
                "block_errors": p.block_errors,
                "bler": p.bler,
                "saturated": p.saturated,
            }
            for p in result.points
        ],
        "required_snr_db": result.required_snr_db,
        "required_snr_reason": result.required_snr_reason,
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def write_comparison_csv(result: ComparisonResult, path: str | Path) -> None:
    lines = [f"# {key}={value}" for key, value in result.config.items()]
    lines.append("k," + ",".join(result.methods))
    for k, row in zip(result.k_values, result.required):
        cells = ["" if v is None else f"{v:.4f}" for v in row]
        lines.append(f"{k}," + ",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n")
