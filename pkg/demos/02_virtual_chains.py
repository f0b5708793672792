"""
Virtual chains behind the splitter
==================================

Rotating legs B and C by the mixing angle theta = atan2(J_nC, J_nB) turns the
Y-beam into two independent chains.  The long one (A followed by the bright
mode) is uniform exactly when the matching condition holds.
"""

import math

from spinbeam import build_star, build_ybeam, decoupling_report

# Matched: the off-block part vanishes and chain a has a single hopping value.
rep = decoupling_report(build_ybeam(10, 8, 8, 1.0, 1.0, 1.0, 0.6, 0.8))
print("theta =", rep.theta)
print("off-block norm =", rep.offblock_norm)
print("chain a homogeneous:", rep.chain_a_homogeneous)

# The node bond seen by chain a is hypot(J_nB, J_nC); here it is too weak.
rep = decoupling_report(build_ybeam(10, 8, 8, 1.0, 1.0, 1.0, 0.3, 0.4))
print("J_aM =", rep.J_aM, "vs J_A = 1, homogeneous:", rep.chain_a_homogeneous)

# At the wrong angle the two chains talk to each other through J_AB.
rep = decoupling_report(build_ybeam(10, 8, 8, 1.0, 1.0, 1.0, 0.6, 0.8), theta=0.3)
print("J_AB at theta=0.3:", rep.J_AB, "off-block norm:", rep.offblock_norm)

# Unequal output legs couple the chains along their whole length through g.
rep = decoupling_report(build_ybeam(10, 8, 8, 1.0, 1.2, 0.8, 0.6, 0.8))
print("g with J_B != J_C:", rep.g)

# Stars with m outputs match at J_n = J / sqrt(m).
for m in (2, 3, 4, 5):
    rep = decoupling_report(build_star(m, 10, 8, 1.0, 1 / math.sqrt(m)))
    print(m, "outputs:", rep.offblock_norm, rep.chain_a_homogeneous)
