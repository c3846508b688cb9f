"""Command-line entry point: ``polardel [options]``."""

import argparse
import sys

from . import __version__
from ._accel import BACKEND
from .precode import CRC_TABLE_VERSION, CrcSpec
from .sim import PRECODES, ExperimentConfig, ExperimentError, emit_csv, run_experiment


def _parse_poly(text: str):
    """``r:hex`` or a bare hex string (r taken from the degree)."""
    if ":" in text:
        r_text, hex_text = text.split(":", 1)
        spec = CrcSpec.from_hex(hex_text)
        if spec.r != int(r_text):
            raise argparse.ArgumentTypeError(f"{hex_text} has degree {spec.r}, not {r_text}")
    else:
        spec = CrcSpec.from_hex(text)
    return spec.r, spec.hex


def _parse_mode(text: str):
    if text in ("uniform", "sweep"):
        return text, ()
    if text.startswith("fixed:"):
        try:
            positions = tuple(int(t) for t in text[len("fixed:"):].split(",") if t.strip())
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad position list in {text!r}") from None
        return "fixed", positions
    raise argparse.ArgumentTypeError("deletion mode must be uniform, sweep or fixed:<i,...>")


def _safe(parse):
    def wrapped(text):
        try:
            return parse(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    wrapped.__name__ = parse.__name__
    return wrapped


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="polardel",
        description="Monte-Carlo simulation of polar codes over a BEC followed by "
                    "d adversarial deletions, with candidate-set list decoding.")
    ap.add_argument("--n", type=int, action="append", dest="n_list", metavar="N_EXP",
                    help="block-length exponent n (N = 2**n); repeatable")
    ap.add_argument("--n-min", type=int, default=6)
    ap.add_argument("--n-max", type=int, default=11)
    ap.add_argument("--p", type=float, default=0.3, help="BEC erasure probability")
    ap.add_argument("--rate", type=float, action="append", dest="rates",
                    help="design rate R = k/N; repeatable (default 0.5 0.55 0.6)")
    ap.add_argument("--r", type=int, default=None, help="redundancy bits (default ceil(0.7 sqrt N))")
    ap.add_argument("--precode", choices=PRECODES, default="crc")
    ap.add_argument("--crc-poly", type=_safe(_parse_poly), action="append", default=[],
                    metavar="R:HEX", help="CRC generator, MSB first with leading 1; repeatable")
    ap.add_argument("--deletions", type=int, default=1, metavar="D")
    ap.add_argument("--deletion-mode", type=_parse_mode, default=("uniform", ()),
                    metavar="{uniform|fixed:<i,...>|sweep}",
                    help="fixed positions are 0-based")
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--ambiguous", choices=("drop", "zero"), default="drop",
                    help="erased information bit: drop the candidate or guess 0")
    ap.add_argument("--prune-frozen-conflicts", action="store_true",
                    help="discard candidates whose frozen bits decode to 1")
    ap.add_argument("--design-p", type=float, default=None,
                    help="erasure probability used for code construction (default --p)")
    ap.add_argument("--out", default="-", help="CSV output path ('-' for stdout)")
    ap.add_argument("--quiet", action="store_true", help="suppress progress on stderr")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return ap


def config_from_args(args) -> ExperimentConfig:
    n_values = tuple(args.n_list) if args.n_list else tuple(range(args.n_min, args.n_max + 1))
    mode, positions = args.deletion_mode
    return ExperimentConfig(
        n_values=n_values,
        p=args.p,
        rates=tuple(args.rates) if args.rates else (0.5, 0.55, 0.6),
        r_override=args.r,
        precode=args.precode,
        crc_polys=dict(args.crc_poly),
        d=args.deletions,
        deletion_mode=mode,
        fixed_positions=positions,
        trials=args.trials,
        seed=args.seed,
        policy=args.ambiguous,
        prune_frozen_conflicts=args.prune_frozen_conflicts,
        design_p=args.design_p,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    def progress(msg):
        if not args.quiet:
            print(msg, file=sys.stderr, flush=True)

    try:
        config = config_from_args(args)
        progress(f"polardel {__version__} backend={BACKEND} crc-table=v{CRC_TABLE_VERSION}")
        records = run_experiment(config, progress)
        emit_csv(records, args.out)
    except (ExperimentError, ValueError, OSError) as exc:
        print(f"polardel: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
