"""Tour of the code constructions and the spec file format.

Builds a Reed-Muller set, the beta-expansion-ranked RM-polar set behind
the (256,154) code, the PAC(128,64) code with its convolutional
constraints expressed as dynamic frozen rows, and a random dRM-polar
ensemble member; round-trips one spec through JSON.
"""

import tempfile

import numpy as np

from gncoset import (
    beta_expansion_ranking,
    load_spec,
    pac_precoder,
    rm_info_set,
    rm_polar_info_set,
    sample_drm_polar,
    save_spec,
)

rm = rm_info_set(7, 3)
print(f"RM(3,7): K = {len(rm)}, first indices {rm[:6]} ... last {rm[-3:]}")

rank = beta_expansion_ranking(8, 2.0 ** 0.25)
print(f"beta-expansion ranking of 8 indices (most reliable first): {rank}")

rmp = rm_polar_info_set(8, 154)
w = [bin(i - 1).count('1') for i in rmp]
print(f"RM-polar (256,154): K = {len(rmp)}, "
      f"{sum(1 for x in w if x >= 5)} indices of weight >= 5, "
      f"{sum(1 for x in w if x == 4)} picked from the weight-4 class")

pac = pac_precoder(rm_info_set(7, 3), (0, 1, 1, 0, 1, 1), n=7)
print(f"\nPAC(128,64): {len(pac.frozen_rows)} dynamic frozen rows")
i, row = sorted(pac.frozen_rows.items())[0]
print(f"  e.g. u_{i} = " + " + ".join(f"u_{j}" for j in row))

drm = sample_drm_polar(8, 154, seed=7)
sizes = [len(r) for r in drm.frozen_rows.values()]
print(f"\ndRM-polar(256,154), seed 7: {len(drm.frozen_rows)} dynamic rows, "
      f"mean row weight {np.mean(sizes):.1f}")
assert drm == sample_drm_polar(8, 154, seed=7), "sampling is a pure function of the seed"

with tempfile.NamedTemporaryFile(suffix=".json", delete=False) as fh:
    path = fh.name
save_spec(pac, path)
assert load_spec(path) == pac
print(f"\nspec JSON round trip ok ({path})")
