"""Command-line interface: ``eht keygen|encrypt|decrypt|estimate|bench``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import codec
from .analysis import estimate_failure, key_recovery_costs, primal_attack_cost
from .bench import bench
from .cipher import Status, decrypt, encrypt
from .codec import CodeReject, FormatError, LengthMismatch, ValueOutOfRange
from .keygen import keygen
from .params import NAMED_PRESETS, PRESETS, InvalidParams, get_params
from .sampling import Rng, parse_seed, random_seed

EXIT_OK = 0
EXIT_USAGE = 64
EXIT_FORMAT = 65
EXIT_IO = 66
EXIT_REJECT = {
    Status.REJECT_NO_CANDIDATE: 70,
    Status.REJECT_AMBIGUOUS: 71,
    Status.CODE_REJECT: 72,
}

PUBLIC_NAME = "key.ehtpub"
PRIVATE_NAME = "key.ehtprv"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _seed(text: str | None, use_env: bool = True) -> bytes:
    # never for encryption: a shared error vector leaks differences of plaintexts
    if not text and use_env:
        text = os.environ.get("EHT_SEED")
    if not text:
        return random_seed()
    try:
        return parse_seed(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read(path: str) -> bytes:
    return sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()


def _write(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(data)


def _preset_help() -> str:
    rows = []
    for p in PRESETS.values():
        tag = " [insecure, tests only]" if p.insecure else ""
        rows.append(f"{p.name} (n={p.n}, k={p.k}, q={p.q}, lambda^2={p.lambda_sq}, sigma={p.sigma}){tag}")
    return "; ".join(rows)


# -- subcommands -------------------------------------------------------------

def cmd_keygen(args) -> int:
    params = get_params(args.params)
    sk, pk = keygen(params, _seed(args.seed))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / PUBLIC_NAME).write_bytes(codec.dump_public_key(pk))
    (out / PRIVATE_NAME).write_bytes(codec.dump_private_key(sk))
    print(f"wrote {out / PUBLIC_NAME} and {out / PRIVATE_NAME} ({params.name})", file=sys.stderr)
    return EXIT_OK


def cmd_encrypt(args) -> int:
    pk = codec.load_public_key(_read(args.pub))
    msg = _read(args.input)
    cap = codec.message_capacity(pk.params)
    if len(msg) != cap:
        raise LengthMismatch(f"message must be exactly {cap} bytes for {pk.params.name}, got {len(msg)}")
    ct = encrypt(pk, msg, Rng(_seed(args.seed, use_env=False)))
    _write(args.out, codec.dump_ciphertext(ct, pk.params))
    return EXIT_OK


def cmd_decrypt(args) -> int:
    sk = codec.load_private_key(_read(args.prv))
    params, ct = codec.load_ciphertext(_read(args.input))
    if params != sk.params:
        raise FormatError(f"ciphertext is for {params.name}, key is for {sk.params.name}")
    outcome = decrypt(sk, ct, rule=args.rule)
    if not outcome.ok:
        where = f" at coordinate {outcome.index}" if outcome.index is not None else ""
        print(f"decryption rejected: {outcome.status.value}{where}", file=sys.stderr)
        return EXIT_REJECT[outcome.status]
    _write(args.out, outcome.plaintext)
    return EXIT_OK


def estimate_rows(name: str, failure: bool, attacks: bool) -> list[dict]:
    """One dict per table row, as printed by ``eht estimate --json``."""
    p = get_params(name)
    rows = []
    if failure:
        rows.append({"table": "failure", "params": name, **p.as_dict(), **estimate_failure(p).as_dict()})
    if attacks:
        rows.append({"table": "primal", "params": name, **primal_attack_cost(p).as_dict()})
        for rep in key_recovery_costs(p):
            rows.append({"table": "key-recovery", "params": name, **rep.as_dict()})
    return rows


def _format_row(row: dict) -> str:
    if row["table"] == "failure":
        return (f"{row['params']:<13} failure  1-beta1={row['reject_correct']:.3g}  alpha1={row['alpha1']:.3g}"
                f"  total={row['failure']:.3g}")
    search = "  ".join(f"{k}={row[k]}" for k in ("m", "h", "b") if k in row)
    return (f"{row['params']:<13} {row['attack']:<11} {search:<18} "
            f"C/Q/P = {row['classical']}/{row['quantum']}/{row['plausible']}")


def cmd_estimate(args) -> int:
    failure = args.failure or args.all or not args.attacks
    attacks = args.attacks or args.all
    names = NAMED_PRESETS if args.params == "all" else [args.params]
    rows = [r for name in names for r in estimate_rows(name, failure, attacks)]
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        for r in rows:
            print(_format_row(r))
    return EXIT_OK


def cmd_bench(args) -> int:
    names = NAMED_PRESETS if args.params == "all" else [args.params]
    reports = [bench(get_params(n), args.repetitions, args.blocks, _seed(args.seed)) for n in names]
    if args.json:
        print(json.dumps([r.as_dict() for r in reports], indent=2))
        return EXIT_OK
    print(f"{'params':<13} {'keygen ms':>10} {'encrypt ms':>11} {'decrypt ms':>11}  reps x blocks")
    for r in reports:
        print(f"{r.params:<13} {1e3 * r.keygen_s:10.2f} {1e3 * r.encrypt_s:11.3f} {1e3 * r.decrypt_s:11.3f}"
              f"  {r.repetitions} x {r.blocks}")
    return EXIT_OK


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eht", description="EHT public-key encryption and analysis tools.",
                     epilog="Parameter sets: " + _preset_help())
    parser.add_argument("--threads", type=_positive, default=None,
                        help="limit threads used by the linear-algebra backend")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    names = list(PRESETS)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--params", required=True, choices=names)
    p.add_argument("--seed", help="64 hex characters (default: $EHT_SEED, else random)")
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt one message block")
    p.add_argument("--pub", required=True)
    p.add_argument("--in", dest="input", required=True, help="message file ('-' for stdin)")
    p.add_argument("--out", required=True, help="ciphertext file ('-' for stdout)")
    p.add_argument("--seed", help="64 hex characters for the error vector (default: random; $EHT_SEED is ignored)")
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt one ciphertext block")
    p.add_argument("--prv", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--rule", choices=["threshold", "argmax"], default="threshold")
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("estimate", help="failure and attack-cost estimates")
    p.add_argument("--params", required=True, choices=names + ["all"])
    group = p.add_mutually_exclusive_group()
    group.add_argument("--failure", action="store_true")
    group.add_argument("--attacks", action="store_true")
    group.add_argument("--all", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("bench", help="time keygen, encryption and decryption")
    p.add_argument("--params", required=True, choices=names + ["all"])
    p.add_argument("--repetitions", type=_positive, default=5)
    p.add_argument("--blocks", type=_positive, default=10, help="blocks per repetition")
    p.add_argument("--seed")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.threads is not None:
            from threadpoolctl import threadpool_limits

            with threadpool_limits(limits=args.threads):
                return args.func(args)
        return args.func(args)
    except UsageError as exc:
        print(f"eht: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, LengthMismatch, ValueOutOfRange, InvalidParams, CodeReject) as exc:
        print(f"eht: format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except OSError as exc:
        print(f"eht: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
