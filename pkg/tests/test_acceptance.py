"""The acceptance battery as a test module: one test per criterion, each
printing its pass/fail line.  All criteria are exact; there are no tolerances
to calibrate.

Criterion map:
  1  path-cycle-structure        component shapes of path/cycle CFI graphs
  2  colored-gadget-group        colored gadget groups are exactly the flips
  3  twin-preserving-boundary    twin preservation holds except at degrees 1,2,4
  4  uncolored-count-resolution  |Aut| of the degree-3 uncolored gadget, 24 vs 32
  5  twist-nonisomorphism        original vs twisted never isomorphic; parity law
  6  distinguisher               verdicts under relabelings/flips; base recovery
  7  counting-width-boundary     WL equivalence exactly below base treewidth
  8  cops-robber-treewidth       game winner matches exact treewidth
  9  two-variable-separation     2-variable equivalent, counting-2 inequivalent
  10 game-wl-agreement           bijective game oracle equals WL verdicts
  11 homomorphism-gap            subdivision hom counts: strict gap, exact fibers
  12 same-color-formula          first-order color recovery at min degree 3
"""

import pytest

from cfigraphs import suite

SEED = 20240


@pytest.mark.parametrize("check_id", list(suite.CHECKS))
def test_acceptance(check_id):
    result = suite.run_check(check_id, SEED)
    status = "PASS" if result.passed else "FAIL"
    print(f"{status} {check_id} ({result.seconds}s) {result.details}")
    assert result.passed, f"{check_id}: {result.details}"


def test_count_resolution_records_value():
    result = suite.run_check("uncolored-count-resolution", SEED)
    # the group order matches the flips-times-permutations closed form
    assert result.details["count"] == 24
    assert result.details["resolved_to"] == 24
