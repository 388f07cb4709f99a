"""Explicit descriptions of the spaces in the degree 1, 2 and 3 diagrams.

Each space is a set of the form {expr(x) : x satisfies linear conditions},
where some conditions say that an expression lies in B(N_j). Those are
compiled by adding an auxiliary unknown n in N^{p-1,j} and the equation
expr = D10 n, so nothing here goes through the annihilator machinery of
``structure``; the results serve as an independent cross-check of it.
"""

from dataclasses import dataclass, field

from . import structure as st
from .complex import coboundaries, cocycles
from .errors import CrossCheckFailure, InvalidDimensions, WrongSpecialization
from .linalg import (
    RationalMatrix,
    Subspace,
    block_matrix,
    hstack,
    kernel_basis,
    preimage_basis,
)

MODES = ("general", "d2m1_zero", "d01_zero")


class _System:
    """Unknowns living in blocks C^{p,q} plus homogeneous linear equations."""

    def __init__(self, c, mode="general", n0_only=False):
        self.c = c
        self.mode = mode
        self.n0_only = n0_only
        self.vars = {}
        self.order = []
        self.eqs = []
        self._aux = 0

    def var(self, name, p, q):
        self.vars[name] = (p, q)
        self.order.append(name)
        return name

    def _mat(self, kind, name):
        p, q = self.vars[name]
        if kind == "id":
            return RationalMatrix.identity(self.c.dim(p, q))
        if self.mode == "d2m1_zero" and kind == "d2m1":
            return None
        if self.mode == "d01_zero" and kind == "d01":
            return None
        return self.c.op(kind, p, q)

    def _target(self, terms):
        kind, name = terms[0][:2]
        p, q = self.vars[name]
        di, dj = {"id": (0, 0), "d01": (0, 1), "d10": (1, 0), "d2m1": (2, -1)}[kind]
        return p + di, q + dj

    def zero(self, *terms):
        """sum of terms = 0; a term is (kind, var) or (kind, var, sign)."""
        self.eqs.append((self._target(terms), terms))

    def in_null_coboundaries(self, *terms):
        """sum of terms lies in B(N_j), where (p, j) is the target bidegree."""
        p, j = self._target(terms)
        if self.n0_only and j > 0:
            self.zero(*terms)
            return
        self._aux += 1
        n = self.var(f"_n{self._aux}", p - 1, j)
        self.zero(("d01", n))
        self.zero(("d2m1", n))
        self.zero(*terms, ("d10", n, -1))

    def _row(self, terms, rows):
        blocks = []
        for name in self.order:
            m = None
            for t in terms:
                if t[1] != name:
                    continue
                part = self._mat(t[0], name)
                if part is None:
                    continue
                if len(t) > 2:
                    part = part.scale(t[2])
                m = part if m is None else m + part
            p, q = self.vars[name]
            blocks.append(m if m is not None else RationalMatrix.zeros(rows, self.c.dim(p, q)))
        return hstack(blocks, rows=rows)

    def solutions(self):
        cols = [self.c.dim(*self.vars[n]) for n in self.order]
        rows = []
        for (p, q), terms in self.eqs:
            r = self.c.dim(p, q)
            if r:
                rows.append(self._row(terms, r))
        if not rows:
            return Subspace.full(sum(cols))
        system = block_matrix(
            [m.rows for m in rows], [sum(cols)], {(i, 0): m for i, m in enumerate(rows)}
        )
        return kernel_basis(system)

    def image(self, *terms):
        """The set of values of sum(terms) over all solutions, in its block."""
        p, q = self._target(terms)
        out = self._row(terms, self.c.dim(p, q))
        return self.solutions().image(out), (p, q)


@dataclass(frozen=True)
class ExplicitSpaceSet:
    degree: int
    spaces: dict
    bidegrees: dict
    mode: str = "general"
    splitting: dict = field(default_factory=dict)

    def __getitem__(self, name):
        return self.spaces[name]

    def embedded(self, c, name):
        """The named block space as a subspace of C^k."""
        p, _ = self.bidegrees[name]
        return c.embed_block(self.degree, p, self.spaces[name])

    def dims(self):
        return {n: s.dim for n, s in self.spaces.items()}


def _build(c, mode, n0_only, k):
    specs = _DEGREE_SPECS[k]
    spaces, bideg = {}, {}
    for name, fn in specs.items():
        s = _System(c, mode, n0_only)
        sub, pq = fn(s)
        spaces[name] = sub
        bideg[name] = pq
    return spaces, bideg


# -- degree 1 -------------------------------------------------------------


def _b1_n0(s):
    s.var("f", 0, 0)
    s.zero(("d01", "f"))
    return s.image(("d10", "f"))


def _b1_c0(s):
    s.var("f", 0, 0)
    return s.image(("d01", "f"))


def _a1(s):
    s.var("Y", 0, 1)
    s.var("a", 1, 0)
    s.zero(("d01", "Y"))
    s.zero(("d01", "a"), ("d10", "Y"))
    return s


def _ker_rho1(s):
    _a1(s)
    s.in_null_coboundaries(("d2m1", "Y"), ("d10", "a"))
    return s.image(("id", "Y"))


def _z1_n0(s):
    s.var("a", 1, 0)
    s.zero(("d01", "a"))
    s.zero(("d10", "a"))
    return s.image(("id", "a"))


# -- degree 2 -------------------------------------------------------------


def _b2_c20(s):
    s.var("a", 1, 0)
    s.var("Y", 0, 1)
    s.zero(("d01", "a"), ("d10", "Y"))
    s.zero(("d01", "Y"))
    return s.image(("d10", "a"), ("d2m1", "Y"))


def _b2_1_c11(s):
    s.var("a", 1, 0)
    s.var("Y", 0, 1)
    s.zero(("d01", "Y"))
    return s.image(("d10", "Y"), ("d01", "a"))


def _b2_c0(s):
    s.var("Y", 0, 1)
    return s.image(("d01", "Y"))


def _j2(s):
    s.var("Q", 1, 1)
    s.var("b", 2, 0)
    s.zero(("d01", "Q"))
    s.zero(("d01", "b"), ("d10", "Q"))
    return s


def _ker_varrho2(s):
    _j2(s)
    s.in_null_coboundaries(("d2m1", "Q"), ("d10", "b"))
    return s.image(("id", "Q"))


def _z2_n0(s):
    s.var("b", 2, 0)
    s.zero(("d10", "b"))
    s.zero(("d01", "b"))
    return s.image(("id", "b"))


def _z2_2(s):
    s.var("V", 0, 2)
    s.var("Q", 1, 1)
    s.var("b", 2, 0)
    s.zero(("d01", "V"))
    s.zero(("d01", "Q"), ("d10", "V"))
    s.in_null_coboundaries(("d01", "b"), ("d10", "Q"), ("d2m1", "V"))
    s.in_null_coboundaries(("d10", "b"), ("d2m1", "Q"))
    return s.image(("id", "V"))


# -- degree 3 -------------------------------------------------------------


def _b3_c30(s):
    s.var("b", 2, 0)
    s.var("Q", 1, 1)
    s.var("V", 0, 2)
    s.zero(("d01", "b"), ("d10", "Q"), ("d2m1", "V"))
    s.zero(("d01", "Q"), ("d10", "V"))
    s.zero(("d01", "V"))
    return s.image(("d10", "b"), ("d2m1", "Q"))


def _b3_1_c21(s):
    s.var("b", 2, 0)
    s.var("Q", 1, 1)
    s.var("V", 0, 2)
    s.zero(("d01", "Q"), ("d10", "V"))
    s.zero(("d01", "V"))
    return s.image(("d01", "b"), ("d10", "Q"), ("d2m1", "V"))


def _b3_2_c12(s):
    s.var("Q", 1, 1)
    s.var("V", 0, 2)
    s.zero(("d01", "V"))
    return s.image(("d01", "Q"), ("d10", "V"))


def _b3_c0(s):
    s.var("V", 0, 2)
    return s.image(("d01", "V"))


def _j3(s):
    s.var("R", 2, 1)
    s.var("phi", 3, 0)
    s.zero(("d01", "R"))
    s.zero(("d01", "phi"), ("d10", "R"))
    return s


def _ker_varrho3(s):
    _j3(s)
    s.in_null_coboundaries(("d2m1", "R"), ("d10", "phi"))
    return s.image(("id", "R"))


def _z3_n0(s):
    s.var("phi", 3, 0)
    s.zero(("d10", "phi"))
    s.zero(("d01", "phi"))
    return s.image(("id", "phi"))


def _z3_2_c12(s):
    s.var("S", 1, 2)
    s.var("R", 2, 1)
    s.var("phi", 3, 0)
    s.zero(("d01", "S"))
    s.zero(("d01", "R"), ("d10", "S"))
    s.in_null_coboundaries(("d01", "phi"), ("d10", "R"), ("d2m1", "S"))
    s.in_null_coboundaries(("d10", "phi"), ("d2m1", "R"))
    return s.image(("id", "S"))


def _z3_3(s):
    s.var("W", 0, 3)
    s.var("S", 1, 2)
    s.var("R", 2, 1)
    s.var("phi", 3, 0)
    s.zero(("d01", "W"))
    s.zero(("d01", "S"), ("d10", "W"))
    s.in_null_coboundaries(("d01", "R"), ("d10", "S"), ("d2m1", "W"))
    s.in_null_coboundaries(("d01", "phi"), ("d10", "R"), ("d2m1", "S"))
    s.in_null_coboundaries(("d10", "phi"), ("d2m1", "R"))
    return s.image(("id", "W"))


_DEGREE_SPECS = {
    1: {
        "B1_N0": _b1_n0,
        "B1_C0": _b1_c0,
        "A1": lambda s: _a1(s).image(("id", "Y")),
        "Z1_N0": _z1_n0,
        "ker_rho1": _ker_rho1,
    },
    2: {
        "B2_cap_C20": _b2_c20,
        "B2_1_cap_C11": _b2_1_c11,
        "B2_C0": _b2_c0,
        "J2": lambda s: _j2(s).image(("id", "Q")),
        "Z2_N0": _z2_n0,
        "ker_varrho2": _ker_varrho2,
        "Z2_2": _z2_2,
    },
    3: {
        "B3_cap_C30": _b3_c30,
        "B3_1_cap_C21": _b3_1_c21,
        "B3_2_cap_C12": _b3_2_c12,
        "B3_C0": _b3_c0,
        "J3": lambda s: _j3(s).image(("id", "R")),
        "Z3_N0": _z3_n0,
        "ker_varrho3": _ker_varrho3,
        "Z3_2_cap_C12": _z3_2_c12,
        "Z3_3": _z3_3,
    },
}

# (cocycle-type space, coboundary-type space) pairs whose quotients split H^k
_SPLITTINGS = {
    1: [("Z1_N0", "B1_N0"), ("ker_rho1", "B1_C0")],
    2: [("Z2_N0", "B2_cap_C20"), ("ker_varrho2", "B2_1_cap_C11"), ("Z2_2", "B2_C0")],
    3: [
        ("Z3_N0", "B3_cap_C30"),
        ("ker_varrho3", "B3_1_cap_C21"),
        ("Z3_2_cap_C12", "B3_2_cap_C12"),
        ("Z3_3", "B3_C0"),
    ],
}


def _structure_counterparts(c, k):
    """The same spaces obtained from the general machinery, inside C^k."""
    d = {q: st.diagram(c, k, q) for q in range(k)}
    out = {}
    if k == 1:
        out["B1_N0"] = d[0].spaces["B_q_cap_Cpq"]
        out["B1_C0"] = d[0].spaces["B_q1"]
        out["A1"] = st.space_a(c, 1)
        out["Z1_N0"] = d[0].spaces["Z_q_cap_Cpq"]
        out["ker_rho1"] = d[0].spaces["Z_q1"]
    elif k == 2:
        out["B2_cap_C20"] = d[0].spaces["B_q_cap_Cpq"]
        out["B2_1_cap_C11"] = d[1].spaces["B_q_cap_Cpq"]
        out["B2_C0"] = d[1].spaces["B_q1"]
        out["J2"] = st.space_j(c, 2)
        out["Z2_N0"] = d[0].spaces["Z_q_cap_Cpq"]
        out["ker_varrho2"] = d[1].spaces["Z_q_cap_Cpq"]
        out["Z2_2"] = d[1].spaces["Z_q1"]
    else:
        out["B3_cap_C30"] = d[0].spaces["B_q_cap_Cpq"]
        out["B3_1_cap_C21"] = d[1].spaces["B_q_cap_Cpq"]
        out["B3_2_cap_C12"] = d[2].spaces["B_q_cap_Cpq"]
        out["B3_C0"] = d[2].spaces["B_q1"]
        out["J3"] = st.space_j(c, 3)
        out["Z3_N0"] = d[0].spaces["Z_q_cap_Cpq"]
        out["ker_varrho3"] = d[1].spaces["Z_q_cap_Cpq"]
        out["Z3_2_cap_C12"] = d[2].spaces["Z_q_cap_Cpq"]
        out["Z3_3"] = d[2].spaces["Z_q1"]
    return out


def _check_degree(k):
    if k not in (1, 2, 3):
        raise InvalidDimensions(f"explicit descriptions exist for k = 1, 2, 3, not {k}")


def explicit_spaces(c, k, n0_only=False, cross_check=True):
    """Every space of the degree-k displays, built from its set formula.

    With ``n0_only`` the B(N_j) conditions for j >= 1 are replaced by "= 0";
    this gives the same spaces and is kept to exercise that claim.
    """
    c.require_valid()
    _check_degree(k)
    spaces, bideg = _build(c, "general", n0_only, k)
    split = {}
    for z, b in _SPLITTINGS[k]:
        split[z] = spaces[z].dim - spaces[b].dim
    result = ExplicitSpaceSet(k, spaces, bideg, "general", split)
    if cross_check:
        _cross_check(c, result)
    return result


def _cross_check(c, result):
    k = result.degree
    ref = _structure_counterparts(c, k)
    for name in result.spaces:
        mine = result.embedded(c, name)
        if mine != ref[name]:
            raise CrossCheckFailure(
                f"{name}: explicit formula gives dim {mine.dim}, structure gives dim {ref[name].dim}"
            )
    if k == 1 and result.embedded(c, "ker_rho1") != st.rho_kernel(c, 1):
        raise CrossCheckFailure("ker_rho1 differs from the kernel of rho_1")
    if k >= 2:
        name = f"ker_varrho{k}"
        if result.embedded(c, name) != st.varrho_kernel(c, k):
            raise CrossCheckFailure(f"{name} differs from the kernel of varrho_{k}")
    total = sum(result.splitting.values())
    h = cocycles(c, k).dim - coboundaries(c, k).dim
    if total != h:
        raise CrossCheckFailure(f"degree-{k} splitting sums to {total}, dim H^{k} = {h}")
    zsum = sum(result.spaces[z].dim for z, _ in _SPLITTINGS[k])
    bsum = sum(result.spaces[b].dim for _, b in _SPLITTINGS[k])
    if zsum != cocycles(c, k).dim or bsum != coboundaries(c, k).dim:
        raise CrossCheckFailure(f"degree-{k} cocycle or coboundary splitting fails")


def specialize(c, case, k=1):
    """The simplified formulas for D2m1 = 0 or D01 = 0, checked against the general ones.

    Terms containing the vanishing family are dropped and N is taken to be
    ker D01 (resp. ker D2m1).
    """
    c.require_valid()
    if case not in ("d2m1_zero", "d01_zero"):
        raise WrongSpecialization(f"unknown case {case!r}")
    family = "d2m1" if case == "d2m1_zero" else "d01"
    if not c.is_family_zero(family):
        raise WrongSpecialization(f"{family} is not identically zero")
    if k not in (1, 2):
        raise InvalidDimensions("simplified formulas are given for k = 1, 2")
    spaces, bideg = _build(c, case, False, k)
    general = explicit_spaces(c, k)
    for name, sub in spaces.items():
        if sub != general.spaces[name]:
            raise CrossCheckFailure(f"{case}: simplified {name} differs from the general formula")
    split = {z: spaces[z].dim - spaces[b].dim for z, b in _SPLITTINGS[k]}
    return ExplicitSpaceSet(k, spaces, bideg, case, split)


# -- double complexes -----------------------------------------------------


def double_complex_e2(c):
    """dim H^p(H^q(C, D01), D10) for every (p, q) of a double complex."""
    c.require_valid()
    if not c.is_family_zero("d2m1"):
        raise WrongSpecialization("d2m1 is not identically zero")

    def vertical_image(p, q):
        return Subspace.full(c.dim(p, q - 1)).image(c.op("d01", p, q - 1))

    out = {}
    for p in range(c.pmax + 1):
        for q in range(c.qmax + 1):
            # x in ker D01 whose D10-image is D01-exact
            cyc = kernel_basis(c.op("d01", p, q)) & preimage_basis(
                c.op("d10", p, q), vertical_image(p + 1, q)
            )
            bnd = vertical_image(p, q) + kernel_basis(c.op("d01", p - 1, q)).image(c.op("d10", p - 1, q))
            out[(p, q)] = cyc.dim - bnd.dim
    return out
