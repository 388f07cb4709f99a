"""Deciding whether a cocycle is a coboundary, one row at a time.

Starting from the top row q = k, the component eta_{k-q,q} is tested
against the homogeneous pre-coboundaries; when it vanishes there a lift
xi' with pi_q(D xi') = pi_q(eta) is subtracted and the walk moves down.
"""

from dataclasses import dataclass, field

from .complex import GradedVector, apply_differential, coboundaries
from .errors import CrossCheckFailure, NotACocycle
from .linalg import solve
from .structure import homogeneous, pre_modules


@dataclass(frozen=True)
class ObstructionStep:
    bidegree: tuple
    class_dim_context: int
    class_vanishes: bool
    adjusted_representative: GradedVector


@dataclass(frozen=True)
class Witness:
    xi: GradedVector


@dataclass(frozen=True)
class FirstObstruction:
    bidegree: tuple
    representative: GradedVector


@dataclass(frozen=True)
class ObstructionTrace:
    input: GradedVector
    steps: list = field(default_factory=list)
    outcome: object = None

    @property
    def vanishes(self):
        return isinstance(self.outcome, Witness)


def _zero(c, k):
    return GradedVector(k, {pq: (0,) * len(r) for pq, r in c.layout(k).items() if len(r)})


def _require_cocycle(c, eta):
    c.require_valid()
    if not apply_differential(c, eta).is_zero():
        raise NotACocycle(f"D eta != 0 for the given degree-{eta.degree} vector")


def obstruction_sequence(c, eta):
    _require_cocycle(c, eta)
    k = eta.degree
    cur = eta
    xi = _zero(c, k - 1) if k >= 1 else None
    steps = []
    d_prev = c.total_differential(k - 1) if k >= 1 else None
    for q in range(k, -1, -1):
        p = k - q
        pm = pre_modules(c, k, q)
        z_h = homogeneous(c, k, q, pm.Z)
        b_h = homogeneous(c, k, q, pm.B)
        flat = cur.flat(c)
        # components above row q are already cleared, so pi_q(cur) sits in C^{p,q}
        proj = c.pi_matrix(k, q).apply(flat)
        if proj not in z_h:
            raise CrossCheckFailure(f"row {q} component of a cocycle is not a pre-cocycle")
        ok = proj in b_h
        steps.append(ObstructionStep((p, q), z_h.dim - b_h.dim, ok, cur))
        if not ok:
            rep = GradedVector.from_flat(c, k, proj)
            return ObstructionTrace(eta, steps, FirstObstruction((p, q), rep))
        if not any(proj):
            continue
        lift = solve(c.pi_matrix(k, q) @ d_prev, proj)
        if lift is None:
            raise CrossCheckFailure(f"no coboundary lift at row {q} although the class vanishes")
        lift_v = GradedVector.from_flat(c, k - 1, lift)
        cur = cur - apply_differential(c, lift_v)
        xi = xi + lift_v
    if not cur.is_zero():
        raise CrossCheckFailure("all rows cleared but the residual is nonzero")
    if k == 0:
        xi = GradedVector(-1, {})
    elif apply_differential(c, xi).flat(c) != eta.flat(c):
        raise CrossCheckFailure("witness does not satisfy D xi = eta")
    return ObstructionTrace(eta, steps, Witness(xi))


@dataclass(frozen=True)
class VanishingDecision:
    vanishes: bool
    certificate: object
    trace: ObstructionTrace


def decide_vanishing(c, eta):
    """Whether [eta] = 0, with the witness or the first obstruction."""
    trace = obstruction_sequence(c, eta)
    direct = eta.flat(c) in coboundaries(c, eta.degree)
    if direct != trace.vanishes:
        raise CrossCheckFailure("obstruction walk disagrees with direct coboundary membership")
    return VanishingDecision(trace.vanishes, trace.outcome, trace)
