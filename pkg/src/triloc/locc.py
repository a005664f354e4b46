"""Deterministic transformability of three-qubit pure states under local
operations and classical communication.

The decision procedure works entirely on the six invariants.  A tangled
target is reachable from a tangled source exactly when the shifted pair
quantities contract by a unique per-qubit witness (zeta_a, zeta_b, zeta_c)
together with a collective factor zeta confined to [zeta_lower, 1], plus a
charge condition when the target has all three concurrences nonzero.  An
independent oracle for tangled sources, phrased in the canonical two-term
("stretched GHZ") coordinates, is implemented alongside for verification.
"""

import math
from dataclasses import dataclass

from . import state_core
from .invariants import CParams, classify, profile


class NotGhzType(ValueError):
    """The state carries no tangle, so the two-term canonical form fails."""


class NotWType(ValueError):
    """The state is not of the zero-tangle, fully pair-entangled kind."""


class NotFeasible(ValueError):
    """The requested deterministic transformation is impossible."""


@dataclass(frozen=True)
class GhzCanonical:
    """Canonical two-term coordinates of a tangled state.

    c_a, c_b, c_c are the local basis overlaps; z is the complex stretching
    parameter normalized to |z| >= 1, or None when some concurrence vanishes
    (the phase of z is then decomposition-dependent and only abs_z is
    canonical).  zeta_tilde_definite is carried along to recognize the
    z = +-1 degeneracy without comparing floats against exact points.
    """

    c_a: float
    c_b: float
    c_c: float
    abs_z: float
    z: complex | None
    zeta_tilde_definite: bool


@dataclass(frozen=True)
class WCoords:
    """Per-qubit coordinates of a zero-tangle, fully pair-entangled state."""

    x1: float
    x2: float
    x3: float

    def as_tuple(self):
        return (self.x1, self.x2, self.x3)


@dataclass(frozen=True)
class ZetaWitness:
    """Contraction factors certifying a feasible transformation."""

    zeta: float
    zeta_a: float
    zeta_b: float
    zeta_c: float
    zeta_lower: float
    zeta_tilde: float | None


@dataclass(frozen=True)
class LoccVerdict:
    """Outcome of the feasibility decision.

    feasible holds exactly when witness is present and violated is absent.
    case labels which regime decided: "A" both sides fully concurrence-
    definite, "B" target indefinite, "C" source indefinite, "D" source
    without tangle.  violated is one of cond1_no_solution,
    zeta_out_of_range, charge_mismatch, zeta_not_tilde, charge_magnitude.
    """

    feasible: bool
    case: str
    witness: ZetaWitness | None
    violated: str | None


# ---------------------------------------------------------------------------
# canonical two-term coordinates


def ghz_canonical(state):
    """Canonical two-term coordinates (raises NotGhzType when tangle is 0)."""
    p = profile(state)
    tz = state_core.TOL_ZERO
    if p.c.tau <= tz:
        raise NotGhzType("state has no tangle")
    co = p.coeffs
    ca = p.c.c_bc / math.sqrt(p.k.k_bc)
    cb = p.c.c_ac / math.sqrt(p.k.k_ac)
    cc = p.c.c_ab / math.sqrt(p.k.k_ab)
    mag = math.sqrt(p.k.k_ab * p.k.k_ac) / (2.0 * co.l0**2 * math.sqrt(p.k.k_bc))
    if p.state_class.ep_definite:
        w = co.l1 * co.l4 * complex(math.cos(co.phi), math.sin(co.phi)) - co.l2 * co.l3
        z = mag * w / abs(w)
        if abs(z) < 1.0:
            z = 1.0 / z
        abs_z = abs(z)
    else:
        z = None
        abs_z = mag if mag >= 1.0 else 1.0 / mag
    return GhzCanonical(ca, cb, cc, abs_z, z, p.state_class.zeta_tilde_definite)


def ns_params(g):
    """Shape parameters (n, s) of the canonical form.

    s is math.inf on the |z| = 1 circle away from the real points, and None
    when z = +-1 (there the whole circle of forms is degenerate).  Both are
    None when the canonical phase itself is indefinite.
    """
    if g.z is None:
        return None, None
    z2 = g.abs_z**2
    n = 2.0 * g.z.real / (z2 + 1.0)
    if not g.zeta_tilde_definite:
        s = None
    elif abs(g.abs_z - 1.0) <= state_core.TOL_ZERO:
        s = math.inf
    else:
        s = 2.0 * g.z.imag / (z2 - 1.0)
    return n, s


def w_coords(c):
    """Per-qubit coordinates of a zero-tangle fully pair-entangled state."""
    tz = state_core.TOL_ZERO
    if c.tau > tz:
        raise NotWType("state carries tangle")
    if min(c.c_ab, c.c_ac, c.c_bc) <= tz:
        raise NotWType("some pair concurrence vanishes")
    x1 = math.sqrt(c.c_ab * c.c_ac / (2.0 * c.c_bc))
    x2 = math.sqrt(c.c_ab * c.c_bc / (2.0 * c.c_ac))
    x3 = math.sqrt(c.c_ac * c.c_bc / (2.0 * c.c_ab))
    return WCoords(x1, x2, x3)


# ---------------------------------------------------------------------------
# feasibility


def _zeta_lower(p, za, zb, zc):
    """Lower end of the admissible collective factor for given per-qubit
    factors.  Defined as 0 when the concurrence product vanishes (the 0/0
    boundary only matters for targets where the charge condition is skipped).
    """
    if p.derived.j_ap <= state_core.TOL_ZERO:
        return 0.0
    denom = ((p.k.k_ab - zc * p.c.tau) * (p.k.k_ac - zb * p.c.tau)
             * (p.k.k_bc - za * p.c.tau))
    return p.derived.j_ap / denom


def _zeta_tilde(p, za, zb, zc):
    """The single admissible collective factor of a zeta-tilde-definite
    source; None when indefinite or on a degenerate boundary."""
    if not p.state_class.zeta_tilde_definite:
        return None
    der = p.derived
    gap = max(der.j_ap - p.c.j5**2, 0.0)
    denom3 = ((p.k.k_ab - zc * p.c.tau) * (p.k.k_ac - zb * p.c.tau)
              * (p.k.k_bc - za * p.c.tau))
    num = der.k_ap * gap + der.delta_j * der.j_ap
    den = der.k_ap * gap + der.delta_j * denom3
    if den <= 1e-300:
        return None
    return num / den


def _pair_zetas(pair, r):
    """Per-qubit factors that contract one pair residue by r^2 and kill the
    rest."""
    if pair == "AB":
        return r, r, 0.0
    if pair == "AC":
        return r, 0.0, r
    return 0.0, r, r


def _case_label(ps, pd):
    tz = state_core.TOL_ZERO
    if ps.c.tau <= tz:
        return "D"
    if not ps.state_class.ep_definite:
        return "C"
    if not pd.state_class.ep_definite:
        return "B"
    return "A"


def dlocc_feasible(src, dst):
    """Decide deterministic transformability of src into dst.

    Returns a LoccVerdict; when feasible, the witness holds the unique
    contraction factors (per-qubit factors clamped to [0, 1]).
    """
    ps, pd = profile(src), profile(dst)
    tz, te = state_core.TOL_ZERO, state_core.TOL_EQ
    case = _case_label(ps, pd)

    def infeasible(tag):
        return LoccVerdict(False, case, None, tag)

    def feasible(zeta, za, zb, zc, zl, zt):
        w = ZetaWitness(min(max(zeta, 0.0), 1.0), min(za, 1.0), min(zb, 1.0),
                        min(zc, 1.0), min(max(zl, 0.0), 1.0), zt)
        return LoccVerdict(True, case, w, None)

    if ps.c.tau > tz:
        if pd.c.tau > tz:
            # tangled -> tangled: the witness is unique
            za = ps.k.k_bc * pd.c.tau / (pd.k.k_bc * ps.c.tau)
            zb = ps.k.k_ac * pd.c.tau / (pd.k.k_ac * ps.c.tau)
            zc = ps.k.k_ab * pd.c.tau / (pd.k.k_ab * ps.c.tau)
            if max(za, zb, zc) > 1.0 + te:
                return infeasible("cond1_no_solution")
            # fifth invariant must contract by the same collective product
            if abs(pd.c.j5 * ps.c.tau - ps.c.j5 * pd.c.tau) > te:
                return infeasible("cond1_no_solution")
            za, zb, zc = min(za, 1.0), min(zb, 1.0), min(zc, 1.0)
            zeta = pd.c.tau / (ps.c.tau * za * zb * zc)
            zl = _zeta_lower(ps, za, zb, zc)
            zt = _zeta_tilde(ps, za, zb, zc)
            if zeta > 1.0 + te or zeta < zl - te:
                return infeasible("zeta_out_of_range")
            if pd.state_class.ep_definite:
                if ps.state_class.zeta_tilde_definite:
                    if ps.q_e != pd.q_e:
                        return infeasible("charge_mismatch")
                    if zt is None or abs(zeta - zt) > te:
                        return infeasible("zeta_not_tilde")
                else:
                    interior = (1.0 - zeta > te) and (zeta - zl > te)
                    if abs(pd.q_e) != (1 if interior else 0):
                        return infeasible("charge_magnitude")
            return feasible(zeta, za, zb, zc, zl, zt)
        if pd.state_class.kind == "biseparable":
            pair = pd.state_class.pair
            k_src = {"AB": ps.k.k_ab, "AC": ps.k.k_ac, "BC": ps.k.k_bc}[pair]
            k_dst = {"AB": pd.k.k_ab, "AC": pd.k.k_ac, "BC": pd.k.k_bc}[pair]
            if k_dst > k_src + te:
                return infeasible("cond1_no_solution")
            r = math.sqrt(min(k_dst / k_src, 1.0))
            za, zb, zc = _pair_zetas(pair, r)
            return feasible(1.0, za, zb, zc, _zeta_lower(ps, za, zb, zc),
                            _zeta_tilde(ps, za, zb, zc))
        if pd.state_class.kind == "full_separable":
            return feasible(1.0, 0.0, 0.0, 0.0, _zeta_lower(ps, 0, 0, 0),
                            _zeta_tilde(ps, 0, 0, 0))
        # zero-tangle, fully pair-entangled targets need a factor to vanish,
        # which would kill one of their concurrences
        return infeasible("cond1_no_solution")

    # tangle-free source: per-qubit attenuations are the whole story
    kind_s, kind_d = ps.state_class.kind, pd.state_class.kind
    if kind_d == "ghz_type":
        return infeasible("cond1_no_solution")
    if kind_s == "w_type":
        if kind_d == "w_type":
            xs = w_coords(ps.c).as_tuple()
            xd = w_coords(pd.c).as_tuple()
            if any(d > s + te for s, d in zip(xs, xd)):
                return infeasible("cond1_no_solution")
            za, zb, zc = (min((d / s) ** 2, 1.0) for s, d in zip(xs, xd))
            return feasible(1.0, za, zb, zc, 1.0, None)
        if kind_d == "biseparable":
            pair = pd.state_class.pair
            c_src = {"AB": ps.c.c_ab, "AC": ps.c.c_ac, "BC": ps.c.c_bc}[pair]
            c_dst = {"AB": pd.c.c_ab, "AC": pd.c.c_ac, "BC": pd.c.c_bc}[pair]
            if c_dst > c_src + te:
                return infeasible("cond1_no_solution")
            za, zb, zc = _pair_zetas(pair, min(c_dst / c_src, 1.0))
            return feasible(1.0, za, zb, zc, 1.0, None)
        return feasible(1.0, 0.0, 0.0, 0.0, 1.0, None)  # full separable target
    if kind_s == "biseparable":
        pair = ps.state_class.pair
        if kind_d == "biseparable":
            if pd.state_class.pair != pair:
                return infeasible("cond1_no_solution")
            c_src = {"AB": ps.c.c_ab, "AC": ps.c.c_ac, "BC": ps.c.c_bc}[pair]
            c_dst = {"AB": pd.c.c_ab, "AC": pd.c.c_ac, "BC": pd.c.c_bc}[pair]
            if c_dst > c_src + te:
                return infeasible("cond1_no_solution")
            za, zb, zc = _pair_zetas(pair, min(c_dst / c_src, 1.0))
            return feasible(1.0, za, zb, zc, 0.0, None)
        if kind_d == "full_separable":
            return feasible(1.0, 0.0, 0.0, 0.0, 0.0, None)
        return infeasible("cond1_no_solution")
    # fully separable source reaches only fully separable targets
    if kind_d == "full_separable":
        return feasible(1.0, 1.0, 1.0, 1.0, 0.0, None)
    return infeasible("cond1_no_solution")


def ghz_oracle(src, dst):
    """Independent transformability oracle for tangled source and target,
    phrased in the canonical two-term coordinates."""
    g1, g2 = ghz_canonical(src), ghz_canonical(dst)
    te = state_core.TOL_EQ
    pairs = ((g1.c_a, g2.c_a), (g1.c_b, g2.c_b), (g1.c_c, g2.c_c))
    if any(d < s - te for s, d in pairs):
        return False
    src_def, dst_def = g1.z is not None, g2.z is not None
    if src_def and dst_def:
        r = (g1.c_a * g1.c_b * g1.c_c) / (g2.c_a * g2.c_b * g2.c_c)
        n1, s1 = ns_params(g1)
        n2, s2 = ns_params(g2)
        if abs(n2 - n1 * r) > te:
            return False
        if s1 is None:
            # source sits at a real point z = +-1: the s-law drops out
            return True
        if s2 is None:
            return False
        if math.isinf(s1) or math.isinf(s2):
            return math.isinf(s1) and math.isinf(s2)
        return abs(s2 - s1 * r) <= te * max(1.0, abs(s1 * r), abs(s2))
    if not src_def and dst_def:
        # all stretching freedom must already be spent: unit circle to the
        # purely imaginary axis
        return abs(g1.abs_z - 1.0) <= te and abs(g2.z.real) <= te * (1.0 + g2.abs_z)
    if src_def and not dst_def:
        return False  # defensive: the overlap comparison above already fails
    return g2.abs_z >= g1.abs_z - te


_MIN_MEASUREMENTS = {("tri", "tri"): 3, ("tri", "pair"): 2, ("tri", "none"): 2,
                     ("pair", "pair"): 1, ("pair", "none"): 1, ("none", "none"): 0}


def _depth(kind):
    if kind in ("ghz_type", "w_type"):
        return "tri"
    return "pair" if kind == "biseparable" else "none"


def min_measurements(src, dst):
    """Minimum number of local measurements realizing the transformation.

    Raises NotFeasible when dst is not reachable from src deterministically.
    """
    verdict = dlocc_feasible(src, dst)
    if not verdict.feasible:
        raise NotFeasible(f"transformation violates {verdict.violated}")
    return _MIN_MEASUREMENTS[(_depth(classify(src).kind), _depth(classify(dst).kind))]
