"""Step-by-step ordered search on a four-bit toy code.

Walks the (4,2) code with information positions {2,4} through one full
decode: the initial SC pass, the flip records it leaves behind, the
single list iteration, and the certified ML decision, printing every
metric along the way.  Uses the min-sum ("hardened") arithmetic, under
which all printed values are short decimals.
"""

import numpy as np

from gncoset import CodeSpec, MetricMode, ReliabilityProfile, resume_from, sc_decode
from gncoset.oracle import enumerate_v_set, ml_decode_bruteforce
from gncoset.scos import scos_decode

spec = CodeSpec(n=2, info_set=(2, 4))
llr = np.array([-1.2, +3.4, -2.2, +0.9])
profile = ReliabilityProfile(1.0 - np.exp(-np.array([0.6, 0.2, 0.2, 0.1])))

print("code: N=4, information positions {2,4}, frozen {1,3} = 0")
print(f"channel LLRs: {llr}")
print(f"first-error profile p: {np.round(profile.p, 4)}")
print()

state = sc_decode(spec, llr, MetricMode.HARDENED, profile)
print(f"1. plain SC gives u = {state.u.tolist()} with metric M = {state.pm[4]:.1f}")
scores = state.flip_scores()
for ph in (2, 4):
    print(f"   flip record at phase {ph}: M = {state.flip_pm[ph-1]:.1f}, "
          f"S = {scores[ph-1]:.1f}")
print("   only the phase-2 flip beats M = 3.4, so the list starts as {{2}}")
print()

resume_from(state, 2, 1)
print(f"2. exploring {{2}}: roll back to phase 2, flip, resume SC")
print(f"   new leaf u = {state.u.tolist()} with M = {state.pm[4]:.1f} -> new best")
print(f"   fresh flip record at phase 4: M = {state.flip_pm[3]:.1f}, "
      f"S = {state.flip_scores()[3]:.1f} (not below best, not inserted)")
print()

result = scos_decode(spec, llr, profile, MetricMode.HARDENED)
print(f"3. list empty -> certified ML decision u = {result.u.tolist()}, "
      f"M = {result.pm:.1f}, node visits = {result.visits}")

oracle = ml_decode_bruteforce(spec, llr, MetricMode.HARDENED)
report = enumerate_v_set(spec, llr, oracle.pm, MetricMode.HARDENED)
print()
print(f"brute force agrees: u = {oracle.u.tolist()}, M = {oracle.pm:.1f}")
print(f"prefixes with metric <= ML: |V| = {report.size}; "
      f"any ML-certifying search needs at least that many visits "
      f"({result.visits} >= {report.size})")
