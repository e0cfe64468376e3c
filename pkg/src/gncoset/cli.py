"""Command line front end: code construction and Monte Carlo sweeps.

``gncoset construct`` writes a code spec JSON; ``gncoset simulate`` runs
an FER/complexity sweep and writes the fixed-schema CSV consumed by the
plotting frontend.
"""

from __future__ import annotations

import argparse
import os
import sys

from .codes import CodeSpec, load_spec, pac_precoder, rm_info_set, rm_polar_info_set, sample_drm_polar, save_spec
from .harness import DECODERS, SimConfig, run_sweep, write_csv


def _parse_snr(text: str) -> tuple[float, ...]:
    parts = text.split(":")
    if len(parts) == 1:
        return (float(parts[0]),)
    if len(parts) == 3:
        start, stop, step = map(float, parts)
        if step <= 0:
            raise argparse.ArgumentTypeError("SNR step must be positive")
        out = []
        x = start
        while x <= stop + 1e-9:
            out.append(round(x, 9))
            x += step
        return tuple(out)
    raise argparse.ArgumentTypeError("use a single value or START:STOP:STEP")


def _parse_bits(text: str) -> tuple[int, ...]:
    bits = tuple(int(b) for b in text.replace(",", ""))
    if any(b not in (0, 1) for b in bits):
        raise argparse.ArgumentTypeError("expected a binary string like 011011")
    return bits


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gncoset")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="write a code spec JSON file")
    c.add_argument("construction", choices=["rm", "rmpolar", "pac", "drmpolar"])
    c.add_argument("--n", type=int, required=True, help="log2 of the block length")
    c.add_argument("--r", type=int, help="RM order (rm)")
    c.add_argument("--k", type=int, help="dimension (rmpolar, drmpolar)")
    c.add_argument("--beta", type=float, default=2.0 ** 0.25)
    c.add_argument("--g", type=_parse_bits, default=(0, 1, 1, 0, 1, 1),
                   help="PAC taps, g[k-1] = delay-k indicator")
    c.add_argument("--rate-profile", choices=["rm"], default="rm",
                   help="information set rule for pac")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--crc", type=_parse_bits, default=None,
                   help="CRC polynomial bits, MSB first (e.g. 11011)")
    c.add_argument("--out", required=True)

    s = sub.add_parser("simulate", help="run an FER/complexity sweep")
    s.add_argument("--spec", required=True, help="code spec JSON file")
    s.add_argument("--decoder", choices=DECODERS, default="sc")
    s.add_argument("--snr", type=_parse_snr, required=True, metavar="A[:B:S]",
                   help="Eb/N0 grid in dB")
    s.add_argument("--frames", type=int, default=10_000_000, help="frame cap per point")
    s.add_argument("--min-errors", type=int, default=100)
    s.add_argument("--max-visits", type=float, default=0.0, metavar="R",
                   help="visit budget as a multiple of N (0 = unbounded)")
    s.add_argument("--list-size", type=int, default=8, help="SCL list size")
    s.add_argument("--list-cap", type=float, default=None, help="SCOS candidate list cap")
    s.add_argument("--delta", type=float, default=1.0, help="Fano threshold step")
    s.add_argument("--alpha", type=float, default=0.3, help="flip metric scale")
    s.add_argument("--attempts", type=int, default=8, help="flip decoder attempts")
    s.add_argument("--max-flips", type=int, default=3, help="DSCF max set size")
    s.add_argument("--mode", choices=["exact", "hardened"], default="exact")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--profile-trials", type=int, default=100_000)
    s.add_argument("--profile-seed", type=int, default=1)
    s.add_argument("--profile-cache", default=None,
                   help="directory for cached reliability profiles")
    s.add_argument("--audit-lemma1", action="store_true")
    s.add_argument("--noiseless", action="store_true", help="zero-noise debug override")
    s.add_argument("--out", required=True, help="output CSV path")
    s.add_argument("--append", action="store_true")
    return p


def _construct(args) -> int:
    if args.construction == "rm":
        if args.r is None:
            print("construct rm requires --r", file=sys.stderr)
            return 2
        spec = CodeSpec(n=args.n, info_set=rm_info_set(args.n, args.r), crc=args.crc,
                        metadata={"construction": "rm", "r": args.r})
    elif args.construction == "rmpolar":
        if args.k is None:
            print("construct rmpolar requires --k", file=sys.stderr)
            return 2
        spec = CodeSpec(n=args.n, info_set=rm_polar_info_set(args.n, args.k, args.beta),
                        crc=args.crc,
                        metadata={"construction": "rm-polar", "beta": args.beta})
    elif args.construction == "pac":
        if args.r is None:
            print("construct pac requires --r (RM rate profile order)", file=sys.stderr)
            return 2
        spec = pac_precoder(rm_info_set(args.n, args.r), args.g, n=args.n, crc=args.crc)
    else:
        if args.k is None:
            print("construct drmpolar requires --k", file=sys.stderr)
            return 2
        spec = sample_drm_polar(args.n, args.k, args.beta, args.seed)
        if args.crc is not None:
            spec = CodeSpec(n=spec.n, info_set=spec.info_set, frozen_rows=spec.frozen_rows,
                            crc=args.crc, metadata=spec.metadata)
    save_spec(spec, args.out)
    print(f"wrote ({spec.N},{spec.K}) spec to {args.out}")
    return 0


def _simulate(args) -> int:
    try:
        spec = load_spec(args.spec)
    except (OSError, ValueError, KeyError) as exc:
        print(f"cannot load spec {args.spec}: {exc}", file=sys.stderr)
        return 2
    cache = args.profile_cache
    if cache is None:
        out_dir = os.path.dirname(os.path.abspath(args.out))
        cache = os.path.join(out_dir, ".profile-cache")
    cfg = SimConfig(
        spec=spec,
        decoder=args.decoder,
        snr_db=args.snr,
        max_frames=args.frames,
        min_errors=args.min_errors,
        master_seed=args.seed,
        workers=args.threads,
        mode=args.mode,
        max_visits_factor=args.max_visits,
        list_size=args.list_size,
        list_cap=args.list_cap,
        delta=args.delta,
        alpha=args.alpha,
        flip_attempts=args.attempts,
        max_flips=args.max_flips,
        profile_trials=args.profile_trials,
        profile_seed=args.profile_seed,
        profile_cache=cache,
        audit_lemma1=args.audit_lemma1,
        noiseless=args.noiseless,
    )

    def show(rec):
        print(f"{rec.snr_db:6.2f} dB  frames={rec.frames}  FER={rec.fer:.4g}  "
              f"E[X]/N={rec.mean_visits_over_n:.4g}  ml_lb={rec.ml_lb_fer:.4g}", flush=True)

    records = run_sweep(cfg, progress=show)
    write_csv(records, args.out, append=args.append)
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "construct":
            return _construct(args)
        return _simulate(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
