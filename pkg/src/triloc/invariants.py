"""Entanglement invariants of three-qubit pure states.

Six numbers classify a state up to local unitaries: the three pairwise
concurrences c_ab, c_ac, c_bc, the three-way tangle tau, the fifth
polynomial invariant j5, and a discrete charge q_e in {-1, 0, +1} that
distinguishes a state from its complex conjugate.  The shifted quantities
k_xy = c_xy^2 + tau ("pair residues") drive the transformability laws, so
they get their own container.
"""

import cmath
import math
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from . import state_core
from .state_core import SchmidtCoeffs, schmidt_decompose, state_from_schmidt


class NegativeDiscriminant(ValueError):
    """k5^2 - k_ap is negative beyond tolerance: no state has these invariants."""


class Inconsistent(ValueError):
    """The requested invariant combination is realized by no pure state."""


@dataclass(frozen=True)
class CParams:
    """Concurrences, tangle and the fifth invariant."""

    c_ab: float
    c_ac: float
    c_bc: float
    tau: float
    j5: float

    def as_tuple(self):
        return (self.c_ab, self.c_ac, self.c_bc, self.tau, self.j5)


@dataclass(frozen=True)
class KParams:
    """Shifted pair quantities k_xy = c_xy^2 + tau."""

    k_ab: float
    k_ac: float
    k_bc: float
    tau: float
    j5: float


Derived = namedtuple("Derived", ["j_ap", "k_ap", "k5", "delta_j"])


@dataclass(frozen=True)
class StateClass:
    """Entanglement class of a state.

    kind: "full_separable", "biseparable", "w_type" or "ghz_type";
    pair names the entangled pair for biseparable states, else None.
    ep_definite: all three concurrences nonzero (the relative phase of the
    invariant triple is well defined).  zeta_tilde_definite: the contraction
    ratio singled out by the transformation laws is well defined.
    """

    kind: str
    pair: str | None
    ep_definite: bool
    zeta_tilde_definite: bool


@dataclass(frozen=True)
class StateProfile:
    """All invariant data of one state, computed in a single decomposition."""

    coeffs: SchmidtCoeffs
    c: CParams
    k: KParams
    derived: Derived
    q_e: int
    state_class: StateClass


# ---------------------------------------------------------------------------
# invariants from normal-form coefficients


def c_params(coeffs):
    """Continuous invariants from normal-form coefficients."""
    l0, l1, l2, l3, l4 = coeffs.as_array()
    w = l1 * l4 * cmath.exp(1j * coeffs.phi) - l2 * l3
    c_ab = 2.0 * l0 * l3
    c_ac = 2.0 * l0 * l2
    c_bc = 2.0 * abs(w)
    tau = 4.0 * l0**2 * l4**2
    j5 = 4.0 * l0**2 * (abs(w) ** 2 + (l2 * l3) ** 2 - (l1 * l4) ** 2)
    return CParams(c_ab, c_ac, c_bc, tau, j5)


def q_e(coeffs, c=None):
    """Charge of the state: the sign that flips under complex conjugation.

    Zero when the distinguishing bracket or sin(phi) vanishes, and defined
    as zero when the state carries no BC-side entanglement at all.
    """
    tz = state_core.TOL_ZERO
    if c is None:
        c = c_params(coeffs)
    k_bc = c.c_bc**2 + c.tau
    # tangle-free states are chargeless: the bracket below vanishes
    # identically on that family, so its float residue must not set the sign
    if k_bc <= tz or c.tau <= tz:
        return 0
    # the charge vanishes exactly on the double-root surface and on the
    # real-phase surface; testing those invariant-level quantities keeps the
    # charge consistent with the classification thresholds
    k5 = c.tau + c.j5
    delta = k5**2 - (c.c_ab**2 + c.tau) * (c.c_ac**2 + c.tau) * k_bc
    gap = (c.c_ab * c.c_ac * c.c_bc) ** 2 - c.j5**2
    if delta <= tz or gap <= tz:
        return 0
    s = math.sin(coeffs.phi)
    bracket = coeffs.l0**2 - k5 / (2.0 * k_bc)
    # the physically meaningful phase weight is the imaginary amplitude
    # l1 sin(phi), which is what survives decomposition noise
    if coeffs.l1 * abs(s) <= tz or abs(bracket) <= tz:
        return 0
    return 1 if s * bracket > 0 else -1


def k_params(c):
    """Shifted pair quantities from the continuous invariants."""
    return KParams(c.c_ab**2 + c.tau, c.c_ac**2 + c.tau, c.c_bc**2 + c.tau,
                   c.tau, c.j5)


def derived(k):
    """Products and the discriminant: (j_ap, k_ap, k5, delta_j).

    Raises NegativeDiscriminant when delta_j < -TOL_ZERO, which signals that
    the input invariants belong to no state.
    """
    tz = state_core.TOL_ZERO
    # abs guards the tiny negatives float cancellation can leave behind
    j_ap = max(k.k_ab - k.tau, 0.0) * max(k.k_ac - k.tau, 0.0) * max(k.k_bc - k.tau, 0.0)
    k_ap = k.k_ab * k.k_ac * k.k_bc
    k5 = k.tau + k.j5
    delta_j = k5**2 - k_ap
    if delta_j < -tz:
        raise NegativeDiscriminant(f"k5^2 - k_ap = {delta_j!r} < 0")
    return Derived(j_ap, k_ap, k5, max(delta_j, 0.0))


def ep_phase(c):
    """Relative phase of the invariant triple, in [0, pi].

    None when any concurrence vanishes (the phase is then indefinite).
    """
    tz = state_core.TOL_ZERO
    if min(c.c_ab, c.c_ac, c.c_bc) <= tz:
        return None
    x = c.j5 / (c.c_ab * c.c_ac * c.c_bc)
    return math.acos(min(1.0, max(-1.0, x)))


def _classify(c, der):
    tz = state_core.TOL_ZERO
    ep_definite = bool(min(c.c_ab, c.c_ac, c.c_bc) > tz)
    j5sq_gap = der.j_ap - c.j5**2
    zeta_tilde_definite = not (der.delta_j <= tz and j5sq_gap <= tz)
    if c.tau > tz:
        kind, pair = "ghz_type", None
    else:
        alive = [p for p, v in (("AB", c.c_ab), ("AC", c.c_ac), ("BC", c.c_bc))
                 if v > tz]
        if len(alive) == 3:
            kind, pair = "w_type", None
        elif len(alive) == 1:
            kind, pair = "biseparable", alive[0]
        elif not alive:
            kind, pair = "full_separable", None
        else:
            # no pure state has exactly two pairwise entanglements and no tangle
            raise ValueError("invalid invariant combination: two bare concurrences")
    return StateClass(kind, pair, ep_definite, zeta_tilde_definite)


def profile(state):
    """Decompose once and compute every invariant of the state."""
    coeffs, _ = schmidt_decompose(state)
    c = c_params(coeffs)
    k = k_params(c)
    der = derived(k)
    q = q_e(coeffs, c)
    return StateProfile(coeffs, c, k, der, q, _classify(c, der))


def classify(state):
    """Entanglement class of the state (see StateClass)."""
    return profile(state).state_class


def lu_equivalent(state_a, state_b):
    """True when the two states share all six invariants.

    Continuous invariants are compared within TOL_EQ per component and the
    charge exactly.
    """
    pa, pb = profile(state_a), profile(state_b)
    diff = np.abs(np.array(pa.c.as_tuple()) - np.array(pb.c.as_tuple()))
    return bool(np.max(diff) <= state_core.TOL_EQ and pa.q_e == pb.q_e)


# ---------------------------------------------------------------------------
# inversion: invariants -> coefficients


def _split_pair(value):
    """Both (x, y) with 2xy = value and x^2 + y^2 = 1, larger x first."""
    root = math.sqrt(max(1.0 - value**2, 0.0))
    hi = math.sqrt((1.0 + root) / 2.0)
    lo = math.sqrt(max((1.0 - root) / 2.0, 0.0))
    return hi, lo


def _verified(cand_list, c, q):
    tz = state_core.TOL_ZERO
    good = []
    for cand in cand_list:
        back = c_params(cand)
        dev = max(abs(x - y) for x, y in zip(back.as_tuple(), c.as_tuple()))
        if dev <= state_core.TOL_RECON and q_e(cand, back) == q:
            good.append(cand)
    if not good:
        raise Inconsistent("no coefficient set reproduces the requested invariants")
    return good


def coeffs_from_invariants(c, q):
    """Coefficient sets realizing the given invariants.

    Returns one set for nonzero charge; for q = 0 both admissible sets are
    returned (larger l0 first) when they differ.  Raises Inconsistent when no
    pure state has these invariants.
    """
    tz = state_core.TOL_ZERO
    if q not in (-1, 0, 1):
        raise ValueError("charge must be -1, 0 or +1")
    for name, v in (("c_ab", c.c_ab), ("c_ac", c.c_ac), ("c_bc", c.c_bc),
                    ("tau", c.tau)):
        if not -tz <= v <= 1.0 + 1e-6:
            raise Inconsistent(f"{name} = {v!r} outside [0, 1]")
    k = k_params(c)
    try:
        der = derived(k)
    except NegativeDiscriminant as exc:
        raise Inconsistent(str(exc)) from exc
    j_ap_gap = der.j_ap - c.j5**2
    if j_ap_gap < -1e-8:
        raise Inconsistent("j5^2 exceeds the concurrence product")

    if c.tau <= tz:
        # the tangle-free sector is chargeless and the generic root formulas
        # degenerate on it, but the coordinates follow from the concurrences
        if q != 0:
            raise Inconsistent("charge requires tangle")
        alive = [c.c_ab > tz, c.c_ac > tz, c.c_bc > tz]
        if all(alive):
            l0 = math.sqrt(c.c_ab * c.c_ac / (2.0 * c.c_bc))
            l2 = math.sqrt(c.c_ac * c.c_bc / (2.0 * c.c_ab))
            l3 = math.sqrt(c.c_ab * c.c_bc / (2.0 * c.c_ac))
            l1sq = 1.0 - l0**2 - l2**2 - l3**2
            if l1sq < -1e-6:
                raise Inconsistent("zero-tangle coordinates break normalization")
            lams = np.array([l0, math.sqrt(max(l1sq, 0.0)), l2, l3, 0.0])
            lams /= np.linalg.norm(lams)
            return _verified([SchmidtCoeffs(*lams, 0.0)], c, q)
        if sum(alive) == 2:
            raise Inconsistent("two bare pair entanglements cannot coexist")
        if sum(alive) == 0:
            return _verified([SchmidtCoeffs(1.0, 0.0, 0.0, 0.0, 0.0, 0.0)], c, q)
        slots = {0: (0, 3), 1: (0, 2), 2: (1, 4)}[alive.index(True)]
        hi, lo = _split_pair((c.c_ab, c.c_ac, c.c_bc)[alive.index(True)])
        cands = []
        for x, y in ((hi, lo), (lo, hi)):
            lams = [0.0] * 5
            lams[slots[0]], lams[slots[1]] = x, y
            cands.append(SchmidtCoeffs(*lams, 0.0))
        if abs(hi - lo) <= tz:
            cands = cands[:1]
        return _verified(cands, c, q)

    sqrt_d = math.sqrt(der.delta_j)
    signs = (q,) if q != 0 else ((1,) if sqrt_d <= tz else (1, -1))
    cands = []
    for s in signs:
        l0sq = (der.k5 + s * sqrt_d) / (2.0 * k.k_bc)
        if l0sq <= tz or l0sq > 1.0 + 1e-9:
            continue
        l0 = math.sqrt(l0sq)
        l2 = c.c_ac / (2.0 * l0)
        l3 = c.c_ab / (2.0 * l0)
        l4 = math.sqrt(c.tau) / (2.0 * l0)
        l1sq = 1.0 - l0sq - l2**2 - l3**2 - l4**2
        if l1sq < -1e-9:
            continue
        l1 = math.sqrt(max(l1sq, 0.0))
        denom = 2.0 * l1 * l2 * l3 * l4
        if denom <= tz:
            phi = 0.0
        else:
            x = (l1**2 * l4**2 + l2**2 * l3**2 - c.c_bc**2 / 4.0) / denom
            if abs(x) > 1.0 + 1e-6:
                continue
            phi = math.acos(min(1.0, max(-1.0, x)))
        lams = np.array([l0, l1, l2, l3, l4])
        lams /= np.linalg.norm(lams)
        if min(lams) < tz and phi > tz:
            phi = 0.0
        try:
            cands.append(SchmidtCoeffs(*lams, phi))
        except ValueError:
            continue
    # a double root yields the same set twice
    if len(cands) == 2 and max(abs(cands[0].as_array() - cands[1].as_array())) <= tz \
            and abs(cands[0].phi - cands[1].phi) <= tz:
        cands = cands[:1]
    return _verified(cands, c, q)
