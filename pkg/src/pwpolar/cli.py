"""Command-line front door.

Exit codes: 0 success, 1 runtime failure, 2 usage error, 3 target BLER not
reached. All file outputs use fixed numeric formatting (6 significant digits
for weights, 4 decimals for dB) so identical flags and seed reproduce
byte-identical files.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import fields as dataclass_fields
from pathlib import Path

import numpy as np

from .codec import CRC19_DEFAULT, ca_scl_decode, encode, sc_decode, scl_decode, crc_encode
from .construction import parse_method
from .core import rank_by_weight, read_sequence, select_code, write_sequence
from .simulator import (
    SimConfig,
    compare_methods,
    k_grid,
    run_point,
    run_sweep,
    write_comparison_csv,
    write_points_csv,
    write_sweep_json,
)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2
EXIT_TARGET = 3

_HARD_LLR = 8.0


def bits_to_hex(bits) -> str:
    bits = list(int(b) for b in bits)
    value = 0
    for b in bits:
        value = (value << 1) | b
    width = (len(bits) + 3) // 4
    return f"{value:0{width}x}" if width else ""


def hex_to_bits(text: str, n_bits: int) -> np.ndarray:
    text = text.strip()
    width = (n_bits + 3) // 4
    if len(text) != width:
        raise ValueError(f"expected {width} hex digits for {n_bits} bits, got {len(text)}")
    value = int(text, 16)
    if value >> n_bits:
        raise ValueError("hex value has bits beyond the block length")
    return np.array([(value >> (n_bits - 1 - k)) & 1 for k in range(n_bits)], dtype=np.uint8)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pwpolar", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="write a reliability sequence file")
    p.add_argument("method", help="construction descriptor, e.g. pw, epw, ga:snr=2.0")
    p.add_argument("--nmax", type=int, default=1024)
    p.add_argument("-o", "--out", help="output path (.json for JSON form); stdout if omitted")

    p = sub.add_parser("weights", help="write per-index weights as CSV")
    p.add_argument("method")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("-o", "--out", help="output CSV path; stdout if omitted")

    for name in ("encode", "decode"):
        p = sub.add_parser(name, help=f"{name} hex bit blocks, one per line on stdin/stdout")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, required=True, help="info positions (incl. CRC parity)")
        p.add_argument("--method", default="pw")
        crc_group = p.add_mutually_exclusive_group()
        crc_group.add_argument("--crc19", action="store_true")
        crc_group.add_argument("--no-crc", action="store_true")
        if name == "decode":
            p.add_argument("--dec", choices=("sc", "scl", "cascl"), default="sc")
            p.add_argument("--list", dest="list_size", type=int, default=1)
            p.add_argument("--check-depth", type=int, default=1)

    for name in ("simulate", "sweep", "compare"):
        p = sub.add_parser(name, help=f"{name} Monte-Carlo BLER")
        p.add_argument("--config", help="flat key=value config file; flags override")
        p.add_argument("--n", type=int)
        if name != "compare":
            p.add_argument("--k", type=int)
        p.add_argument("--method", default=None)
        p.add_argument("--methods", default=None if name != "compare" else "pw,hpw,epw,ga")
        p.add_argument("--crc19", action="store_true", default=None)
        p.add_argument("--dec", choices=("sc", "scl", "cascl"), default=None)
        p.add_argument("--list", dest="list_size", type=int, default=None)
        p.add_argument("--check-depth", type=int, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--min-errors", type=int, default=None)
        p.add_argument("--max-blocks", type=int, default=None)
        p.add_argument("--target", type=float, default=None)
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
        p.add_argument("--paper-fidelity", action="store_true")
        p.add_argument("-o", "--out", help="output CSV path")
        p.add_argument("--json", dest="json_out", help="output JSON path")
        if name == "simulate":
            p.add_argument("--snr", type=float, required=True)
        else:
            p.add_argument("--snr-start", type=float, default=None)
            p.add_argument("--snr-stop", type=float, default=None)
            p.add_argument("--snr-step", type=float, default=None)
        if name == "compare":
            p.add_argument("--k-list", help="comma-separated message lengths")
            p.add_argument("--k-grid", action="store_true", help="use the Table-style K grid")

    p = sub.add_parser("diff-seq", help="compare two sequence files")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-flips", type=int, default=50)
    return parser


def _read_config_file(path: str) -> dict:
    values: dict[str, str] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"malformed config line {raw!r}")
        key, value = line.split("=", 1)
        values[key.strip()] = value.strip()
    return values


_CONFIG_TYPES = {f.name: f.type for f in dataclass_fields(SimConfig)}
_BOOL_FIELDS = {"crc", "early_exit"}
_INT_FIELDS = {"n", "k_msg", "list_size", "check_depth", "min_errors", "max_blocks", "seed"}


def _coerce_config_value(key: str, value: str):
    if key in _BOOL_FIELDS:
        return value.lower() in ("1", "true", "yes", "on")
    if key in _INT_FIELDS:
        return int(value)
    if key == "method" or key == "decoder":
        return value
    return float(value)


def _sim_config(args, require_k: bool = True) -> SimConfig:
    values: dict = {}
    if getattr(args, "config", None):
        for key, value in _read_config_file(args.config).items():
            if key not in _CONFIG_TYPES:
                raise ValueError(f"unknown config key {key!r}")
            values[key] = _coerce_config_value(key, value)

    def override(key, flag_value):
        if flag_value is not None:
            values[key] = flag_value

    override("n", args.n)
    if require_k:
        override("k_msg", getattr(args, "k", None))
    override("method", args.method)
    override("decoder", args.dec)
    override("list_size", args.list_size)
    override("check_depth", args.check_depth)
    override("seed", args.seed)
    override("min_errors", args.min_errors)
    override("max_blocks", args.max_blocks)
    override("target_bler", args.target)
    if args.crc19:
        values["crc"] = True
    snr = getattr(args, "snr", None)
    if snr is not None:
        values.setdefault("snr_start_db", snr)
        values.setdefault("snr_stop_db", snr)
    override("snr_start_db", getattr(args, "snr_start", None))
    override("snr_stop_db", getattr(args, "snr_stop", None))
    override("snr_step_db", getattr(args, "snr_step", None))
    if args.paper_fidelity:
        values["min_errors"] = 2000
        values["snr_step_db"] = 0.1
        values["early_exit"] = False
    values.setdefault("n", 64)
    values.setdefault("k_msg", 57 if require_k else 8)
    values.setdefault("method", "pw")
    values.setdefault("decoder", "sc")
    values.setdefault("seed", 1)
    values.setdefault("min_errors", 200)
    if values.get("decoder") in ("scl", "cascl") and "list_size" not in values:
        values["list_size"] = 16
    if values.get("decoder") == "cascl":
        values.setdefault("check_depth", 8)
        values.setdefault("crc", True)
    return SimConfig(**values)


def _cmd_construct(args) -> int:
    method = parse_method(args.method)
    seq = rank_by_weight(method.table(args.nmax.bit_length() - 1))
    if args.nmax < 1 or args.nmax & (args.nmax - 1):
        raise ValueError("nmax must be a power of two")
    if args.out:
        write_sequence(seq, args.out, method.canonical)
    else:
        print(f"# N_max={seq.block_length}")
        print(f"# method={method.canonical}")
        for idx in seq.order:
            print(int(idx))
    return EXIT_OK


def _cmd_weights(args) -> int:
    method = parse_method(args.method)
    if args.n < 1 or args.n & (args.n - 1):
        raise ValueError("n must be a power of two")
    table = method.table(args.n.bit_length() - 1)
    lines = ["index,weight"]
    lines.extend(f"{i},{w:.6g}" for i, w in enumerate(table.weights))
    body = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(body)
    else:
        sys.stdout.write(body)
    return EXIT_OK


def _make_codespec(args):
    method = parse_method(args.method)
    use_crc = bool(args.crc19)
    seq = rank_by_weight(method.table(args.n.bit_length() - 1))
    return select_code(seq, args.n, args.k, crc=CRC19_DEFAULT if use_crc else None)


def _cmd_encode(args) -> int:
    spec = _make_codespec(args)
    msg_len = spec.info_length - (CRC19_DEFAULT.width if spec.crc else 0)
    if msg_len <= 0:
        raise ValueError("no room for message bits")
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        message = hex_to_bits(line, msg_len)
        payload = message
        if spec.crc is not None:
            payload = np.concatenate([message, crc_encode(message, spec.crc)])
        print(bits_to_hex(encode(spec, payload)))
    return EXIT_OK


def _cmd_decode(args) -> int:
    spec = _make_codespec(args)
    msg_len = spec.info_length - (CRC19_DEFAULT.width if spec.crc else 0)
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        hard = hex_to_bits(line, spec.block_length)
        llr = (1.0 - 2.0 * hard.astype(np.float64)) * _HARD_LLR
        if args.dec == "sc":
            result = sc_decode(llr, spec)
        elif args.dec == "scl":
            result = scl_decode(llr, spec, args.list_size)
        else:
            result = ca_scl_decode(llr, spec, args.list_size, args.check_depth)
        print(bits_to_hex(result.selected.info_bits[:msg_len]))
    return EXIT_OK


def _cmd_simulate(args) -> int:
    config = _sim_config(args)
    point = run_point(config, args.snr)
    if args.out:
        write_points_csv([point], config.echo(), args.out)
    if args.json_out:
        from .simulator import SweepResult

        write_sweep_json(
            SweepResult(config.echo(), (point,), None, "single point"), args.json_out
        )
    print(
        f"snr_db={point.snr_db:.4f} blocks={point.blocks} "
        f"block_errors={point.block_errors} bler={point.bler:.6g}"
    )
    return EXIT_OK


def _cmd_sweep(args) -> int:
    config = _sim_config(args)
    result = run_sweep(config, threads=max(1, args.threads))
    if args.out:
        write_points_csv(result.points, result.config, args.out)
    if args.json_out:
        write_sweep_json(result, args.json_out)
    if result.required_snr_db is None:
        print(f"required SNR not reached: {result.required_snr_reason}", file=sys.stderr)
        return EXIT_TARGET
    print(f"required_snr_db={result.required_snr_db:.4f}")
    return EXIT_OK


def _cmd_compare(args) -> int:
    config = _sim_config(args, require_k=False)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    if args.k_grid or (args.paper_fidelity and not args.k_list):
        ks = k_grid(config.n, CRC19_DEFAULT.width if config.crc else 0)
    elif args.k_list:
        ks = [int(v) for v in args.k_list.split(",") if v.strip()]
    else:
        raise ValueError("compare needs --k-list or --k-grid")
    result = compare_methods(config, ks, methods, threads=max(1, args.threads))
    if args.out:
        write_comparison_csv(result, args.out)
    print("k," + ",".join(result.methods))
    missing = False
    for k, row in zip(result.k_values, result.required):
        cells = []
        for value in row:
            if value is None:
                missing = True
                cells.append("")
            else:
                cells.append(f"{value:.4f}")
        print(f"{k}," + ",".join(cells))
    return EXIT_TARGET if missing else EXIT_OK


def _cmd_diff_seq(args) -> int:
    seq_a, _ = read_sequence(args.file_a)
    seq_b, _ = read_sequence(args.file_b)
    n = args.n
    if n > seq_a.block_length or n > seq_b.block_length:
        raise ValueError("sequences do not cover the requested length")
    from .core import extract_nested

    a = extract_nested(seq_a, n).order
    b = extract_nested(seq_b, n).order
    pos_a = np.empty(n, dtype=np.int64)
    pos_b = np.empty(n, dtype=np.int64)
    pos_a[a] = np.arange(n)
    pos_b[b] = np.arange(n)
    da = pos_a[:, None] - pos_a[None, :]
    db = pos_b[:, None] - pos_b[None, :]
    flipped = (da * db) < 0
    pairs = np.argwhere(np.triu(flipped, k=1))
    print(f"discordant_pairs={len(pairs)}")
    for i, j in pairs[: args.max_flips]:
        print(f"flip {i} {j}")
    if len(pairs) > args.max_flips:
        print(f"... and {len(pairs) - args.max_flips} more")
    return EXIT_OK


_COMMANDS = {
    "construct": _cmd_construct,
    "weights": _cmd_weights,
    "encode": _cmd_encode,
    "decode": _cmd_decode,
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "compare": _cmd_compare,
    "diff-seq": _cmd_diff_seq,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - runtime failures map to exit 1
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
