"""Small FER/complexity sweep on the PAC(128,64) code.

Compares plain SC against the ordered search (unbounded and with a
60x visit budget) over a short Eb/N0 grid and writes the harness CSV;
the frontend's ``plot`` command turns such files into the two-panel
FER/complexity figure.  Frame counts are kept small so this finishes in
about a minute; the acceptance suite runs the full-strength version.
"""

import os

from gncoset import pac_precoder, rm_info_set
from gncoset.harness import SimConfig, run_sweep, write_csv

spec = pac_precoder(rm_info_set(7, 3), (0, 1, 1, 0, 1, 1), n=7)
grid = (2.0, 2.5, 3.0)
outdir = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(outdir, exist_ok=True)

for name, kwargs in [
    ("sc", dict(decoder="sc")),
    ("scos", dict(decoder="scos", mode="hardened")),
    ("scos_b60", dict(decoder="scos", mode="hardened", max_visits_factor=60)),
]:
    cfg = SimConfig(spec=spec, snr_db=grid, max_frames=4000, min_errors=30,
                    master_seed=1, workers=2, profile_trials=20_000,
                    profile_cache=os.path.join(outdir, ".profile-cache"), **kwargs)
    print(f"--- {name} ---")
    records = run_sweep(
        cfg,
        progress=lambda r: print(
            f"  {r.snr_db:.2f} dB: FER {r.fer:.4g} over {r.frames} frames, "
            f"E[X]/N = {r.mean_visits_over_n:.3f}, ML-LB {r.ml_lb_fer:.4g}"),
    )
    path = os.path.join(outdir, f"pac128_{name}.csv")
    write_csv(records, path)
    print(f"  wrote {path}")

print("\nplot with the frontend, e.g.:")
print("  node frontend/dist/cli.js --csv demos/out/pac128_sc.csv:SC \\")
print("       --csv demos/out/pac128_scos.csv:SCOS --out demos/out/pac128.svg")
