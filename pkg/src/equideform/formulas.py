"""Closed-form dimension counts for the equivariant deformation functor.

Every function here evaluates one published formula for (a piece of) the
dimension of H^1(G, T_X) = the G-coinvariants of the quadratic
differentials, validates the hypotheses that formula actually needs, and
returns a :class:`DimensionReport` echoing its inputs.  None of them fall
back to another formula when a hypothesis fails; they raise.

The formulas, in the roles they play:

* ``dim_tame``            -- 3g_Y - 3 + r, the classical tame count
  (reference point; tameness is the caller's assertion).
* ``dim_cyclic``          -- 3g_Y - 3 + sum_j floor(2 d_j / e_0(j)) for a
  cyclic p-group, any ramification, g_X >= 2.
* ``dim_weakly_ramified`` -- 3g_Y - 3 + sum_j log_p e_0(j) + 2r (p > 3)
  or + r (p in {2, 3}); weakly ramified actions of any p-group.
* ``free_rank_aug``       -- 3(g_Y - 1 + r), the k[G]-rank of the
  augmented quadratic differentials H^0(Omega^2(3 R_red)) when weakly
  ramified.
* ``homology_dims_closed``-- dimensions of H_0 and H_1 of G on the
  punctual quotient Sigma (h0 - h1 only, for p = 2).
* ``p_rank_free_rank``    -- the free rank b of the semisimple part in
  characteristic p > 3, from the p-rank gamma_Y of the quotient, with the
  two corollary evaluators stacked on top of it.
* ``m_regular_cyclic_p``  -- multiplicity of the regular representation
  k[G] inside H^0(Omega^2) for cyclic G of order exactly p.
* ``hasse_arf_identity_rhs`` -- 2(1 + M) + floor(-2(1 + N)/e_0), the jump
  form of the per-orbit term floor(2d / e_0).
"""

from dataclasses import dataclass

from .errors import (
    ConsistencyError,
    GenusTooSmallError,
    MissingPhiError,
    NotCyclicError,
    NotCyclicOrderPError,
    NotWeaklyRamifiedError,
    SmallCharacteristicError,
    UnramifiedError,
    ValidationError,
)
from .ramification import lower_to_upper

__all__ = [
    "DimensionReport",
    "HomologyDims",
    "dim_tame",
    "dim_cyclic",
    "hasse_arf_identity_rhs",
    "dim_weakly_ramified",
    "free_rank_aug",
    "homology_dims_closed",
    "p_rank_free_rank",
    "dim_from_nilpotent_part",
    "regular_multiplicity_nilpotent_part",
    "m_regular_cyclic_p",
]


@dataclass(frozen=True)
class DimensionReport:
    """A computed dimension plus which formula produced it from what."""

    value: int
    formula: str
    inputs: dict

    def to_json(self):
        return {"value": self.value, "formula": self.formula, "inputs": self.inputs}


@dataclass(frozen=True)
class HomologyDims:
    """dim H_0 and dim H_1 of G on the punctual sections.

    For p = 2 only the difference h0 - h1 is determined by the closed
    form, so ``h0`` and ``h1`` are None there.
    """

    h0: int
    h1: int
    difference: int

    def to_json(self):
        return {"h0": self.h0, "h1": self.h1, "difference": self.difference}


def _base_inputs(cover):
    return {
        "p": cover.p,
        "log_order": cover.n,
        "genus_quotient": cover.g_y,
        "r": cover.r,
    }


def _require_genus(cover):
    g = cover.genus_x()
    if g < 2:
        raise GenusTooSmallError("g_X = %d but the formula assumes g_X >= 2" % g)
    return g


def _require_weakly(cover):
    for j, orbit in enumerate(cover.orbits):
        if not orbit.is_weakly_ramified():
            raise NotWeaklyRamifiedError(
                "G_2 nontrivial at orbit %d (e_2 = %d)"
                % (j, orbit.filtration.order_at(2))
            )


def _nonnegative(value, name):
    if value < 0:
        raise ConsistencyError(
            "%s evaluated to %d < 0 although its hypotheses hold" % (name, value)
        )
    return value


def dim_tame(cover):
    """3g_Y - 3 + r: the tame count, for reference and crosschecks only."""
    value = 3 * cover.g_y - 3 + cover.r
    return DimensionReport(value, "tame", _base_inputs(cover))


def dim_cyclic(cover):
    """3g_Y - 3 + sum_j floor(2 d_j / e_0(j)) for cyclic G, g_X >= 2."""
    if not cover.cyclic:
        raise NotCyclicError("the cover is not cyclic")
    _require_genus(cover)
    terms = [2 * o.different // o.e0 for o in cover.orbits]
    value = _nonnegative(3 * cover.g_y - 3 + sum(terms), "dim_cyclic")
    inputs = _base_inputs(cover)
    inputs["terms"] = terms
    return DimensionReport(value, "cyclic", inputs)


def hasse_arf_identity_rhs(p, lower):
    """2(1 + M) + floor(-2(1 + N) / e_0) from the jumps alone.

    Equals floor(2d / e_0) for the cyclic filtration with those lower
    jumps; raising NotHasseArfError when the jumps do not fit the pattern.
    """
    lower = tuple(int(i) for i in lower)
    if not lower:
        raise ValidationError("at least one jump is required")
    upper = lower_to_upper(p, lower)
    e0 = p ** len(lower)
    return 2 * (1 + upper[-1]) + (-2 * (1 + lower[-1])) // e0


def dim_weakly_ramified(cover):
    """3g_Y - 3 + sum_j log_p e_0(j) + (2r if p > 3 else r), weakly ramified."""
    _require_weakly(cover)
    _require_genus(cover)
    logs = []
    for orbit in cover.orbits:
        k = 0
        e = orbit.e0
        while e > 1:
            e //= cover.p
            k += 1
        logs.append(k)
    extra = 2 * cover.r if cover.p > 3 else cover.r
    value = _nonnegative(3 * cover.g_y - 3 + sum(logs) + extra, "dim_weakly_ramified")
    inputs = _base_inputs(cover)
    inputs["log_inertia"] = logs
    inputs["branch_term"] = extra
    return DimensionReport(value, "weakly_ramified", inputs)


def free_rank_aug(cover):
    """3(g_Y - 1 + r): k[G]-rank of H^0(Omega^2(3 R_red)), weakly ramified."""
    _require_weakly(cover)
    value = 3 * (cover.g_y - 1 + cover.r)
    return DimensionReport(value, "free_rank_aug", _base_inputs(cover))


def homology_dims_closed(cover):
    """Group homology of the punctual sections, closed form (weakly ramified).

    p > 3: (h0, h1) = (r, sum_j log_p e_0(j));
    p = 3: (h0, h1) = (r, sum_j (log_3 e_0(j) - 1));
    p = 2: only h0 - h1 = 2r - sum_j log_2 e_0(j) is pinned down.
    """
    _require_weakly(cover)
    logs = []
    for orbit in cover.orbits:
        k = 0
        e = orbit.e0
        while e > 1:
            e //= cover.p
            k += 1
        logs.append(k)
    if cover.p > 3:
        h0, h1 = cover.r, sum(logs)
        return HomologyDims(h0, h1, h0 - h1)
    if cover.p == 3:
        h0, h1 = cover.r, sum(k - 1 for k in logs)
        return HomologyDims(h0, h1, h0 - h1)
    return HomologyDims(None, None, 2 * cover.r - sum(logs))


def p_rank_free_rank(cover, gamma_y, deg_phi_red=None):
    """The free rank b of the semisimple part H_D^s, for p > 3.

    ``gamma_y`` is the p-rank of the quotient curve (an input, not
    computed here).  For g_Y = 0, b = gamma_Y - 1 + r; for g_Y >= 1 the
    count also adds ``deg_phi_red``, the number of distinct zeroes of the
    chosen differential on Y, which must then be supplied.
    """
    if cover.p <= 3:
        raise SmallCharacteristicError(
            "the semisimple/nilpotent split needs p > 3, got p = %d" % cover.p
        )
    if cover.r == 0:
        raise UnramifiedError("the cover is unramified")
    gamma_y = int(gamma_y)
    if not 0 <= gamma_y <= cover.g_y:
        raise ValidationError(
            "p-rank gamma_Y = %d must lie in [0, g_Y] = [0, %d]"
            % (gamma_y, cover.g_y)
        )
    if cover.g_y == 0:
        value = gamma_y - 1 + cover.r
    else:
        if deg_phi_red is None:
            raise MissingPhiError(
                "g_Y >= 1: the reduced degree of div(phi) is required"
            )
        deg_phi_red = int(deg_phi_red)
        if not 0 <= deg_phi_red <= 2 * cover.g_y - 2:
            raise ValidationError(
                "deg_phi_red = %d must lie in [0, 2g_Y - 2]" % deg_phi_red
            )
        value = gamma_y - 1 + cover.r + deg_phi_red
    inputs = _base_inputs(cover)
    inputs["gamma_y"] = gamma_y
    if deg_phi_red is not None:
        inputs["deg_phi_red"] = deg_phi_red
    return DimensionReport(value, "p_rank_free_rank", inputs)


def dim_from_nilpotent_part(cover, gamma_y, dim_nilpotent_coinv, deg_phi_red=None):
    """dim H^0(Omega^2)_G = dim (H_D^n)_G + b, given the nilpotent term."""
    b = p_rank_free_rank(cover, gamma_y, deg_phi_red)
    value = int(dim_nilpotent_coinv) + b.value
    inputs = dict(b.inputs)
    inputs["dim_nilpotent_coinv"] = int(dim_nilpotent_coinv)
    return DimensionReport(value, "dim_from_nilpotent_part", inputs)


def regular_multiplicity_nilpotent_part(cover, gamma_y, m_regular, deg_phi_red=None):
    """n_{k[G]} = m_{k[G]} - b: regular multiplicity of the nilpotent part."""
    b = p_rank_free_rank(cover, gamma_y, deg_phi_red)
    value = int(m_regular) - b.value
    inputs = dict(b.inputs)
    inputs["m_regular"] = int(m_regular)
    return DimensionReport(value, "regular_multiplicity_nilpotent_part", inputs)


def m_regular_cyclic_p(cover):
    """m_{k[G]} = 3g_Y - 3 + sum_j floor((N_j + 2)(p - 1)/p), |G| = p.

    N_j is the single lower jump at orbit j.  Requires the group to be
    cyclic of order exactly p (so every filtration has one jump).
    """
    if cover.n != 1 or not cover.cyclic:
        raise NotCyclicOrderPError(
            "|G| = %d^%d with cyclic=%s; the count needs cyclic order p"
            % (cover.p, cover.n, cover.cyclic)
        )
    p = cover.p
    terms = []
    for orbit in cover.orbits:
        jumps = orbit.filtration.jumps
        if len(jumps) != 1:  # pragma: no cover - excluded by construction
            raise NotCyclicOrderPError("orbit filtration has %d jumps" % len(jumps))
        terms.append((jumps[0] + 2) * (p - 1) // p)
    value = 3 * cover.g_y - 3 + sum(terms)
    inputs = _base_inputs(cover)
    inputs["terms"] = terms
    return DimensionReport(value, "m_regular_cyclic_p", inputs)
