"""Classical invariants of planar diagrams.

Kauffman bracket (brute-force state sum and a linear-time skein-vector
path for tangle-built diagrams), Jones polynomial, Alexander polynomial
via Fox calculus, Goeritz determinant, Gordon-Litherland signature, and
the homology of the branched double cover.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import InvariantFactors, LaurentPolynomial, snf
from .diagram import (
    overpass_classes,
    DiagramError,
    PlanarDiagram,
    components,
    crossing_sign,
    goeritz,
    orient,
    require_valid,
    symmetric_signature,
    writhe,
)

BRUTE_FORCE_LIMIT = 16

# delta = -A^2 - A^-2, the value of a disjoint circle
_DELTA = LaurentPolynomial(-2, [-1, 0, 0, 0, -1])
_A = LaurentPolynomial.monomial(1, 1)
_Ainv = LaurentPolynomial.monomial(1, -1)


class BruteForceLimitError(DiagramError):
    pass


class JonesVariableError(DiagramError):
    pass


# ---------------------------------------------------------------------------
# Kauffman bracket, brute force


def kauffman_bracket_bruteforce(d: PlanarDiagram) -> LaurentPolynomial:
    """State-sum bracket in the variable A by full 2^n enumeration.

    The A-smoothing of a tuple (a, b, c, d) joins a-b and c-d; the
    B-smoothing joins a-d and b-c.  Both choices are rooting-independent
    since re-rooting rotates the tuple by two slots.
    """
    require_valid(d)
    n = d.crossing_count
    if n == 0:
        return LaurentPolynomial.one()
    if n > BRUTE_FORCE_LIMIT:
        raise BruteForceLimitError(
            f"{n} crossings exceeds the brute-force bound {BRUTE_FORCE_LIMIT}"
        )
    joins_a = [((t[0], t[1]), (t[2], t[3])) for t in d.crossings]
    joins_b = [((t[0], t[3]), (t[1], t[2])) for t in d.crossings]
    total = LaurentPolynomial.zero()
    arcs = d.arc_count
    parent = list(range(arcs + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for state in range(1 << n):
        for x in range(arcs + 1):
            parent[x] = x
        a_count = 0
        for ci in range(n):
            if (state >> ci) & 1:
                pairs = joins_a[ci]
                a_count += 1
            else:
                pairs = joins_b[ci]
            for (x, y) in pairs:
                parent[find(x)] = find(y)
        loops = len({find(x) for x in range(1, arcs + 1)})
        term = LaurentPolynomial.monomial(1, a_count - (n - a_count))
        total = total + term * _DELTA ** (loops - 1)
    return total


# ---------------------------------------------------------------------------
# Skein vectors: tangle-tree bracket evaluation

TangleTree = tuple


@dataclass(frozen=True)
class SkeinVector:
    """Coordinates of a 4-ended tangle in the basis {0-tangle, inf-tangle}."""

    coeff_zero: LaurentPolynomial
    coeff_infinity: LaurentPolynomial

    @staticmethod
    def e0() -> "SkeinVector":
        return SkeinVector(LaurentPolynomial.one(), LaurentPolynomial.zero())

    @staticmethod
    def einf() -> "SkeinVector":
        return SkeinVector(LaurentPolynomial.zero(), LaurentPolynomial.one())

    def rotate(self) -> "SkeinVector":
        return SkeinVector(self.coeff_infinity, self.coeff_zero)

    def tangle_sum(self, other: "SkeinVector") -> "SkeinVector":
        s0, si = self.coeff_zero, self.coeff_infinity
        t0, ti = other.coeff_zero, other.coeff_infinity
        return SkeinVector(s0 * t0, s0 * ti + si * t0 + _DELTA * si * ti)

    def cap_right(self) -> "SkeinVector":
        # join NE-SE and add a fresh vertical pair on the right
        return SkeinVector(
            LaurentPolynomial.zero(),
            self.coeff_zero + _DELTA * self.coeff_infinity,
        )

    def cap_bottom(self) -> "SkeinVector":
        # join SW-SE and add a fresh horizontal pair at the bottom
        return SkeinVector(
            _DELTA * self.coeff_zero + self.coeff_infinity,
            LaurentPolynomial.zero(),
        )

    def twist_right(self, handedness: int) -> "SkeinVector":
        a, b = (_A, _Ainv) if handedness > 0 else (_Ainv, _A)
        cap = self.cap_right()
        return SkeinVector(
            a * self.coeff_zero + b * cap.coeff_zero,
            a * self.coeff_infinity + b * cap.coeff_infinity,
        )

    def twist_bottom(self, handedness: int) -> "SkeinVector":
        a, b = (_Ainv, _A) if handedness > 0 else (_A, _Ainv)
        cap = self.cap_bottom()
        return SkeinVector(
            a * self.coeff_zero + b * cap.coeff_zero,
            a * self.coeff_infinity + b * cap.coeff_infinity,
        )

    def close_numerator(self) -> LaurentPolynomial:
        return self.coeff_zero * _DELTA + self.coeff_infinity

    def close_denominator(self) -> LaurentPolynomial:
        return self.coeff_zero + self.coeff_infinity * _DELTA


def evaluate_tangle_tree(tree: TangleTree) -> SkeinVector | LaurentPolynomial:
    """Evaluate a tangle expression tree to a skein vector or a bracket.

    Nodes: ("e0",), ("einf",), ("twist_right", child, k),
    ("twist_bottom", child, k), ("sum", left, right), ("rotate", child),
    ("bar", child), ("close_n", child), ("close_d", child).
    Twist counts k are signed; |k| crossings of handedness sign(k).
    """
    op = tree[0]
    if op == "e0":
        return SkeinVector.e0()
    if op == "einf":
        return SkeinVector.einf()
    if op == "twist_right":
        v = evaluate_tangle_tree(tree[1])
        k = tree[2]
        for _ in range(abs(k)):
            v = v.twist_right(1 if k > 0 else -1)
        return v
    if op == "twist_bottom":
        v = evaluate_tangle_tree(tree[1])
        k = tree[2]
        for _ in range(abs(k)):
            v = v.twist_bottom(1 if k > 0 else -1)
        return v
    if op == "sum":
        return evaluate_tangle_tree(tree[1]).tangle_sum(
            evaluate_tangle_tree(tree[2])
        )
    if op == "rotate":
        return evaluate_tangle_tree(tree[1]).rotate()
    if op == "bar":
        return evaluate_tangle_tree(tree[1])
    if op == "close_n":
        return evaluate_tangle_tree(tree[1]).close_numerator()
    if op == "close_d":
        return evaluate_tangle_tree(tree[1]).close_denominator()
    raise ValueError(f"unknown tangle-tree node {op!r}")


# Registry attaching construction trees to diagrams (PlanarDiagram is a
# frozen value type; the tree is derived metadata, keyed by identity).
_TREE_REGISTRY: dict[int, TangleTree] = {}


def attach_tangle_tree(d: PlanarDiagram, tree: TangleTree) -> None:
    _TREE_REGISTRY[id(d)] = tree


def tangle_tree_of(d: PlanarDiagram) -> Optional[TangleTree]:
    return _TREE_REGISTRY.get(id(d))


def kauffman_bracket(d: PlanarDiagram) -> LaurentPolynomial:
    """Bracket polynomial in A; uses the tangle tree when one is attached."""
    tree = tangle_tree_of(d)
    if tree is not None:
        val = evaluate_tangle_tree(tree)
        if isinstance(val, SkeinVector):
            raise DiagramError("attached tree is an open tangle, not a closure")
        return val
    return kauffman_bracket_bruteforce(d)


# ---------------------------------------------------------------------------
# Jones polynomial


def jones_normalized_bracket(d: PlanarDiagram) -> LaurentPolynomial:
    """(-A^3)^(-writhe) times the bracket; an invariant Laurent poly in A."""
    require_valid(d)
    br = kauffman_bracket(d)
    w = writhe(d)
    sign = -1 if w % 2 else 1
    return LaurentPolynomial.monomial(sign, -3 * w) * br


def jones(d: PlanarDiagram) -> LaurentPolynomial:
    """Jones polynomial in t = A^-4.

    Defined for diagrams whose normalized bracket has exponents divisible
    by four (knots; an odd number of components in general).  For
    two-component links use jones_normalized_bracket.
    """
    f = jones_normalized_bracket(d)
    if any(e % 4 for e, _c in f.terms()):
        raise JonesVariableError(
            "normalized bracket has exponents not divisible by 4 "
            "(even component count); use jones_normalized_bracket"
        )
    out = LaurentPolynomial.zero()
    for e, c in f.terms():
        out = out + LaurentPolynomial.monomial(c, -e // 4)
    return out


def jones_mirror_image(p: LaurentPolynomial) -> LaurentPolynomial:
    """The t <-> 1/t image of a Jones polynomial."""
    return p.reciprocal()


# ---------------------------------------------------------------------------
# Alexander polynomial via Fox calculus


def alexander(d: PlanarDiagram) -> LaurentPolynomial:
    """Alexander polynomial, normalized so D(t) = D(1/t) and D(1) = 1."""
    require_valid(d)
    if d.is_empty():
        return LaurentPolynomial.one()
    ncomp, _ = components(d)
    if ncomp != 1:
        raise DiagramError("Alexander polynomial computed for knots only")
    ori = orient(d)
    cls, ngen = overpass_classes(d)
    n = d.crossing_count
    one = LaurentPolynomial.one()
    t = LaurentPolynomial.monomial(1, 1)
    tinv = LaurentPolynomial.monomial(1, -1)
    # Generators are overpasses.  Row per crossing: for a positive crossing
    # x_k = x_j x_i x_j^-1 the abelianized Fox row is i: t, j: 1-t, k: -1
    # (t -> 1/t for negative crossings); coincident generators accumulate.
    rows = []
    for ci, tup in enumerate(d.crossings):
        i_g, k_g = cls[tup[0]], cls[tup[2]]
        j_g = cls[tup[ori.over_in[ci]]]
        s = crossing_sign(d, ci, ori)
        row = [LaurentPolynomial.zero() for _ in range(ngen)]
        tv = t if s > 0 else tinv
        row[i_g] = row[i_g] + tv
        row[j_g] = row[j_g] + (one - tv)
        row[k_g] = row[k_g] - one
        rows.append(row)
    # Delete the last relation and the last generator column.
    minor = [row[: ngen - 1] for row in rows[: n - 1]]
    det = _laurent_bareiss_det(minor)
    return _normalize_alexander(det)


def _laurent_bareiss_det(m: list[list[LaurentPolynomial]]) -> LaurentPolynomial:
    n = len(m)
    if n == 0:
        return LaurentPolynomial.one()
    a = [row[:] for row in m]
    sign = 1
    prev = LaurentPolynomial.one()
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next(
                (i for i in range(k + 1, n) if not a[i][k].is_zero()), None
            )
            if swap is None:
                return LaurentPolynomial.zero()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num.divexact(prev)
        prev = a[k][k]
    out = a[n - 1][n - 1]
    return out if sign > 0 else -out


def _normalize_alexander(p: LaurentPolynomial) -> LaurentPolynomial:
    if p.is_zero():
        raise DiagramError("degenerate Wirtinger presentation (zero minor)")
    span = p.max_degree - p.min_degree
    if span % 2:
        # half-integer symmetry point: symmetrize over t^(1/2) by doubling
        # exponents is overkill here; knots always have even span.
        raise DiagramError("Alexander polynomial with odd span")
    centered = p.shift(-(p.min_degree + span // 2))
    if centered.reciprocal() == -centered:
        raise DiagramError("Alexander normalization failed (antisymmetric)")
    at_one = centered.eval_rational(1)
    if at_one == 0:
        raise DiagramError("Alexander polynomial vanishing at 1")
    if abs(at_one) != 1:
        raise DiagramError(f"|Delta(1)| = {abs(at_one)} != 1")
    return -centered if at_one < 0 else centered


def alexander_equal_up_to_units(
    p: LaurentPolynomial, q: LaurentPolynomial
) -> bool:
    """Equality of Alexander polynomials up to multiplication by ±t^k."""
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    ps = p.shift(-p.min_degree)
    qs = q.shift(-q.min_degree)
    return ps == qs or ps == -qs


# ---------------------------------------------------------------------------
# Determinant, signature, double cover homology


def determinant(d: PlanarDiagram) -> int:
    """|det(Goeritz)| = order of H1 of the double branched cover."""
    require_valid(d)
    if d.is_empty():
        return 1
    from .algebra import mat_det

    return abs(mat_det(goeritz(d).matrix))


def signature(d: PlanarDiagram) -> int:
    """Gordon-Litherland signature: sig(Goeritz form) minus the correction."""
    require_valid(d)
    if d.is_empty():
        return 0
    g = goeritz(d)
    return symmetric_signature(g.matrix) - g.correction


def double_cover_homology(d: PlanarDiagram) -> InvariantFactors:
    """Invariant factors of H1 of the double branched cover (Goeritz SNF)."""
    require_valid(d)
    if d.is_empty():
        return InvariantFactors((), 0)
    return snf(goeritz(d).matrix)


def z2_rank(factors: InvariantFactors) -> int:
    """dim of H1(Sigma_2; Z/2): even invariant factors plus free rank."""
    return sum(1 for f in factors.factors if f % 2 == 0) + factors.free_rank


# ---------------------------------------------------------------------------
# Bundled report


@dataclass
class InvariantReport:
    name: str
    jones_poly: LaurentPolynomial  # in t when possible, else normalized bracket
    jones_variable: str
    alexander_poly: Optional[LaurentPolynomial]
    determinant: int
    signature: int
    homology: InvariantFactors
    components: int

    def to_json_dict(self) -> dict:
        out = {
            "name": self.name,
            "components": self.components,
            "determinant": self.determinant,
            "signature": self.signature,
            "jones": self.jones_poly.to_json_dict(self.jones_variable),
            "double_cover_homology": {
                "factors": list(self.homology.factors),
                "free_rank": self.homology.free_rank,
                "z2_rank": z2_rank(self.homology),
            },
        }
        if self.alexander_poly is not None:
            out["alexander"] = self.alexander_poly.to_json_dict("t")
        return out


def invariant_report(d: PlanarDiagram) -> InvariantReport:
    require_valid(d)
    ncomp, _ = components(d)
    try:
        jp = jones(d)
        var = "t"
    except JonesVariableError:
        jp = jones_normalized_bracket(d)
        var = "A"
    alex = alexander(d) if ncomp == 1 else None
    det = determinant(d)
    hom = double_cover_homology(d)
    if alex is not None:
        dv = abs(alex.eval_rational(-1))
        if dv != det:
            raise DiagramError(
                f"internal inconsistency: |Delta(-1)| = {dv} but Goeritz det = {det}"
            )
    if hom.group_order != det and det != 0:
        raise DiagramError(
            f"internal inconsistency: homology order {hom.group_order} != det {det}"
        )
    return InvariantReport(
        name=d.name,
        jones_poly=jp,
        jones_variable=var,
        alexander_poly=alex,
        determinant=det,
        signature=signature(d),
        homology=hom,
        components=ncomp,
    )
