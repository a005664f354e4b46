"""Tour of the discrete charge carried by three-qubit states.

The six numbers deciding local-unitary equivalence are five continuous
invariants plus one sign.  This script shows where the sign comes from,
what flips it, what leaves it alone, and what happens on the chargeless
surface where two distinct coefficient sets share all invariants.
"""

import math

from triloc import state_core
from triloc.invariants import coeffs_from_invariants, lu_equivalent, profile
from triloc.state_core import SchmidtCoeffs


def main():
    charged = state_core.state_from_schmidt(
        SchmidtCoeffs(0.6, 0.2, 0.4, 0.4, math.sqrt(0.28), math.pi / 2))
    p = profile(charged)
    print(f"charged state: q = {p.q_e:+d}")

    conj = state_core.complex_conjugate(charged)
    print(f"complex conjugate: q = {profile(conj).q_e:+d} "
          f"(all five continuous invariants unchanged)")
    print(f"lu_equivalent(state, conjugate) = {lu_equivalent(charged, conj)}\n")

    print("qubit permutations leave the charge alone:")
    for order in ("ACB", "BAC", "BCA", "CAB", "CBA"):
        q = profile(state_core.permute_qubits(charged, order)).q_e
        print(f"  {order}: q = {q:+d}")
    print()

    # a real relative phase lands on the chargeless surface, where the
    # quadratic for l0 has two admissible roots
    real_phase = SchmidtCoeffs(0.7, 0.1, 0.3, 0.25, math.sqrt(0.3475), 0.0)
    rp = profile(state_core.state_from_schmidt(real_phase))
    print(f"real-phase state: q = {rp.q_e}")
    twins = coeffs_from_invariants(rp.c, rp.q_e)
    print(f"admissible coefficient sets: {len(twins)}")
    for t in twins:
        print(f"  l0 = {t.l0:.6f}")
    a, b = (state_core.state_from_schmidt(t) for t in twins)
    print(f"the two sets describe one state up to local unitaries: "
          f"{lu_equivalent(a, b)}")


if __name__ == "__main__":
    main()
