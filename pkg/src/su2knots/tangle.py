"""Tangle calculus: rational tangle fragments, torus-knot quotient
tangles, and the two-sided splice diagrams.

A fragment is a partial PD code with four open ends NW, NE, SW, SE.
Crossing tuples keep the under-strand on the {0,2} diagonal with
arbitrary rooting; rooting and arc labels are normalized at closure.

The quotient tangle of a torus-knot exterior is the sum of two rational
tangles of opposite sign.  For the normalized fraction p/q = [a_0..a_n]
(odd n) with convergents h_k/k_k, the two fractions are -h_{n-1}/h_n and
k_{n-1}/k_n; their sum is 1/(pq), so the numerator closure is the
unknot (the meridian filling) while the denominator closure realizes
the Seifert-fibre filling of determinant |pq|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import (
    ContinuedFraction,
    Matrix,
    cf_convergents,
    cf_expand,
    mat_mul,
)
from .diagram import (
    DiagramError,
    PlanarDiagram,
    UNKNOT,
    canonicalize_with_map,
    reroot_under,
)
from .invariants import attach_tangle_tree


class TangleError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Parameter types


@dataclass(frozen=True)
class TorusKnotParams:
    p: int
    q: int

    def __post_init__(self):
        if math.gcd(self.p, self.q) != 1:
            raise TangleError(f"T({self.p},{self.q}): parameters not coprime")

    @property
    def pq(self) -> int:
        return self.p * self.q

    def is_trivial(self) -> bool:
        return abs(self.p) <= 1 or abs(self.q) <= 1


@dataclass(frozen=True)
class GluingData:
    left: TorusKnotParams
    right: TorusKnotParams

    @staticmethod
    def of(p: int, q: int, r: int, s: int) -> "GluingData":
        return GluingData(TorusKnotParams(p, q), TorusKnotParams(r, s))


@dataclass(frozen=True)
class RationalTangle:
    terms: ContinuedFraction
    barred: bool = False


# ---------------------------------------------------------------------------
# Boundary bookkeeping matrices


def shear_matrix(p: int, q: int) -> Matrix:
    """Sends the slope-pq fibre direction to the first factor."""
    return [[1, 0], [-p * q, 1]]


_SWAP = [[0, 1], [1, 0]]


def gluing_matrix(g: GluingData) -> Matrix:
    """Composite boundary map: fibres of one side go to meridians of the other."""
    inv_shear_rs = [[1, 0], [g.right.pq, 1]]
    return mat_mul(inv_shear_rs, mat_mul(_SWAP, shear_matrix(g.left.p, g.left.q)))


def h1_presentation(g: GluingData) -> Matrix:
    """Presentation matrix of H1 of the glued-up manifold."""
    m1, m2 = g.left.pq, g.right.pq
    return [[0, 1], [-m1 * m2 + 1, m2]]


# ---------------------------------------------------------------------------
# Fragments


@dataclass
class TangleFragment:
    """Four-ended partial PD code plus its skein expression tree."""

    crossings: tuple[tuple[int, int, int, int], ...]
    ends: dict[str, int]  # keys NW, NE, SW, SE
    next_label: int
    tree: tuple
    sign_hint: int = 0  # dominant twist sign, for reporting

    def crossing_count(self) -> int:
        return len(self.crossings)

    def labels(self) -> set[int]:
        out = {a for tup in self.crossings for a in tup}
        out.update(self.ends.values())
        return out


def e0_fragment() -> TangleFragment:
    return TangleFragment((), {"NW": 1, "NE": 1, "SW": 2, "SE": 2}, 3, ("e0",))


def einf_fragment() -> TangleFragment:
    return TangleFragment((), {"NW": 1, "SW": 1, "NE": 2, "SE": 2}, 3, ("einf",))


def _relabel(frag: TangleFragment, offset: int) -> TangleFragment:
    return TangleFragment(
        tuple(tuple(a + offset for a in tup) for tup in frag.crossings),
        {k: v + offset for k, v in frag.ends.items()},
        frag.next_label + offset,
        frag.tree,
        frag.sign_hint,
    )


def twist_right(frag: TangleFragment, k: int) -> TangleFragment:
    """Append |k| crossings twisting the NE and SE ends.

    k > 0 inserts crossings whose under-strand runs from the old NE arc
    to the new SE end.
    """
    if k == 0:
        return frag
    crossings = list(frag.crossings)
    ends = dict(frag.ends)
    nxt = frag.next_label
    for _ in range(abs(k)):
        x, y = ends["NE"], ends["SE"]
        u, v = nxt, nxt + 1
        nxt += 2
        if k > 0:
            crossings.append((x, y, v, u))  # CCW from x; under x-v
        else:
            crossings.append((y, v, u, x))  # CCW from y; under y-u
        ends["NE"], ends["SE"] = u, v
    return TangleFragment(
        tuple(crossings),
        ends,
        nxt,
        ("twist_right", frag.tree, k),
        k,
    )


def twist_bottom(frag: TangleFragment, k: int) -> TangleFragment:
    """Append |k| crossings twisting the SW and SE ends."""
    if k == 0:
        return frag
    crossings = list(frag.crossings)
    ends = dict(frag.ends)
    nxt = frag.next_label
    for _ in range(abs(k)):
        x, y = ends["SW"], ends["SE"]
        u, v = nxt, nxt + 1
        nxt += 2
        if k > 0:
            crossings.append((x, u, v, y))  # CCW from x; under x-v
        else:
            crossings.append((u, v, y, x))  # CCW from u; under u-y
        ends["SW"], ends["SE"] = u, v
    return TangleFragment(
        tuple(crossings),
        ends,
        nxt,
        ("twist_bottom", frag.tree, k),
        k,
    )


def rotate_fragment(frag: TangleFragment) -> TangleFragment:
    """Rotate the tangle a quarter turn (NE end moves to NW)."""
    ends = {
        "NW": frag.ends["NE"],
        "NE": frag.ends["SE"],
        "SE": frag.ends["SW"],
        "SW": frag.ends["NW"],
    }
    return TangleFragment(
        frag.crossings, ends, frag.next_label, ("rotate", frag.tree), frag.sign_hint
    )


def bar_fragment(frag: TangleFragment) -> TangleFragment:
    """Rotate by pi through the vertical axis: swap NW/NE and SW/SE.

    On PD data this reverses every tuple (left-right reflection composed
    with the over/under flip of turning the tangle through space).
    """
    ends = {
        "NW": frag.ends["NE"],
        "NE": frag.ends["NW"],
        "SW": frag.ends["SE"],
        "SE": frag.ends["SW"],
    }
    crossings = tuple(tuple(reversed(tup)) for tup in frag.crossings)
    return TangleFragment(
        crossings, ends, frag.next_label, ("bar", frag.tree), frag.sign_hint
    )


def tangle_sum(a: TangleFragment, b: TangleFragment) -> TangleFragment:
    """Place b to the right of a, joining a.NE-b.NW and a.SE-b.SW."""
    b = _relabel(b, a.next_label)
    subst = {b.ends["NW"]: a.ends["NE"], b.ends["SW"]: a.ends["SE"]}

    def sub(x):
        return subst.get(x, x)

    crossings = a.crossings + tuple(tuple(sub(x) for x in tup) for tup in b.crossings)
    ends = {
        "NW": a.ends["NW"],
        "SW": a.ends["SW"],
        "NE": sub(b.ends["NE"]),
        "SE": sub(b.ends["SE"]),
    }
    return TangleFragment(
        crossings, ends, b.next_label, ("sum", a.tree, b.tree)
    )


@dataclass
class ClosureResult:
    diagram: PlanarDiagram
    label_map: dict[int, int]  # pre-closure label -> final arc label
    free_loops: int


def close_fragment(
    frag: TangleFragment,
    style: str,
    name: str = "",
    tracked: Optional[list[int]] = None,
) -> ClosureResult:
    """Close the four ends: style "n" joins NW-NE and SW-SE, "d" joins
    NW-SW and NE-SE.  Labels are compressed, tuples re-rooted, arcs
    renumbered along components."""
    if style == "n":
        joins = [("NW", "NE"), ("SW", "SE")]
    elif style == "d":
        joins = [("NW", "SW"), ("NE", "SE")]
    else:
        raise TangleError(f"unknown closure style {style!r}")

    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    free_loops = 0
    for k1, k2 in joins:
        x, y = find(frag.ends[k1]), find(frag.ends[k2])
        if x == y:
            free_loops += 1
        else:
            parent[x] = y

    crossings = tuple(tuple(find(x) for x in tup) for tup in frag.crossings)
    if not crossings:
        # trivial content: pure loops
        total_loops = free_loops
        if total_loops == 1:
            return ClosureResult(
                PlanarDiagram((), 1, name=name), {}, free_loops
            )
        raise TangleError(
            f"closure yields a {total_loops}-component unlink, not a diagram"
        )
    if free_loops:
        raise TangleError("closure produced split free loops")

    labels = sorted({x for tup in crossings for x in tup})
    compress = {a: i + 1 for i, a in enumerate(labels)}
    d = PlanarDiagram(
        crossings=tuple(tuple(compress[x] for x in tup) for tup in crossings),
        arc_count=len(labels),
        name=name,
    )
    d = reroot_under(d)
    d, relab = canonicalize_with_map(d)
    final_map: dict[int, int] = {}
    for pre in tracked or []:
        final_map[pre] = relab[compress[find(pre)]]
    tree = ("close_n" if style == "n" else "close_d", frag.tree)
    attach_tangle_tree(d, tree)
    return ClosureResult(d, final_map, free_loops)


# ---------------------------------------------------------------------------
# Rational tangles


def _odd_parity_terms(terms: list[int]) -> list[int]:
    """Rewrite a continued fraction so the index of the last term is odd,
    preserving the value and the total twist count."""
    out = list(terms)
    while len(out) % 2 == 1:  # even n
        last = out[-1]
        if abs(last) > 1:
            s = 1 if last > 0 else -1
            out[-1] = last - s
            out.append(s)
        elif len(out) >= 2:
            # [.., x, +-1] == [.., x +- 1]
            out[-1:] = []
            out[-1] += last
            if out[-1] == 0 and len(out) >= 2:
                # [.., y, 0] == [..] with y absorbed: [a, y, 0] -> value a + 1/y + inf?
                # a zero tail term cannot be evaluated; drop the pair instead:
                # [.., a, y, 0] is not reachable because |y|>=1 got merged;
                # fall back to splitting the previous term.
                out.pop()
                if not out:
                    raise TangleError("cannot normalize continued fraction parity")
        else:
            # single term +-1: [1] == [0, 1]? value 1 = 0 + 1/1
            out = [0, last]
    return out


def rational_tangle_fragment(t: RationalTangle | list[int]) -> TangleFragment:
    """Build the twist-ladder fragment of a rational tangle.

    The term list [a_0..a_n] is realized inside-out: starting from the
    infinity tangle, a_k gives bottom twists for odd k and right twists
    for even k, so the tangle fraction is a_0 + 1/(a_1 + ... + 1/a_n).
    """
    if isinstance(t, RationalTangle):
        terms = list(t.terms.terms)
        barred = t.barred
    else:
        terms = list(t)
        barred = False
    terms = _odd_parity_terms(terms)
    frag = einf_fragment()
    for k in range(len(terms) - 1, -1, -1):
        if k % 2 == 1:
            frag = twist_bottom(frag, terms[k])
        else:
            frag = twist_right(frag, terms[k])
    if barred:
        frag = bar_fragment(frag)
    return frag


def fragment_from_fraction(f: Fraction) -> TangleFragment:
    """Fragment of the rational tangle with the given fraction."""
    if f == 0:
        return e0_fragment()
    cf = cf_expand(f, "uniform-sign")
    return rational_tangle_fragment(list(cf.terms))


def tangle_fraction_of_terms(terms: list[int]) -> Fraction:
    from .algebra import cf_evaluate

    return cf_evaluate(terms)


# ---------------------------------------------------------------------------
# Torus-knot quotient tangles


@dataclass
class QuotientTangle:
    fragment: TangleFragment
    params: TorusKnotParams
    expansion: Optional[ContinuedFraction]
    sub_fractions: tuple[Fraction, Fraction] | None
    # which closure corresponds to which filling:
    meridian_closure: str = "n"
    fibre_closure: str = "d"


def torus_quotient_tangle(t: TorusKnotParams) -> QuotientTangle:
    """Quotient tangle of the torus-knot exterior as a sum of two
    opposite-sign rational tangles.

    Trivial parameters (|p| <= 1 or |q| <= 1) give the rational tangle
    1/(pq), the solid-torus quotient.
    """
    if t.is_trivial():
        pq = t.pq
        frag = (
            einf_fragment() if pq == 0 else fragment_from_fraction(Fraction(1, pq))
        )
        return QuotientTangle(frag, t, None, None)
    p, q = t.p, t.q
    if abs(p) < abs(q):
        p, q = q, p  # T(p,q) = T(q,p); the driving fraction needs |p/q| > 1
    f = Fraction(p, q)
    cf = cf_expand(f, "odd-length")
    conv = cf_convergents(cf)
    (h_prev, k_prev), (h_n, k_n) = conv[-2], conv[-1]
    # h_n k_{n-1} - h_{n-1} k_n = +1 for odd n
    f1 = Fraction(-h_prev, h_n)
    f2 = Fraction(k_prev, k_n)
    assert f1 + f2 == Fraction(1, p * q)
    left = fragment_from_fraction(f1)
    right = fragment_from_fraction(f2)
    frag = tangle_sum(left, right)
    return QuotientTangle(frag, t, cf, (f1, f2))


# ---------------------------------------------------------------------------
# Assembly


def _splice_fragment(g: GluingData) -> tuple[TangleFragment, list[int]]:
    t1 = torus_quotient_tangle(g.left)
    t2 = torus_quotient_tangle(g.right)
    rotated = rotate_fragment(t2.fragment)
    frag = tangle_sum(t1.fragment, rotated)
    # Conway sphere: the four strands running between the two quotient
    # tangles (the two sum junctions plus the two closure caps).
    junction = [
        t1.fragment.ends["NE"],
        t1.fragment.ends["SE"],
        t1.fragment.ends["NW"],
        t1.fragment.ends["SW"],
    ]
    return frag, junction


def assemble_initial(g: GluingData, name: str = "") -> PlanarDiagram:
    """Splice the two quotient tangles: numerator closure of t1 + rot(t2).

    Fibre-marked ends of each side meet meridian-marked ends of the
    other; the Conway sphere arcs are recorded on the diagram.
    """
    frag, junction = _splice_fragment(g)
    res = close_fragment(
        frag,
        "n",
        name=name or _default_name(g, "initial"),
        tracked=junction,
    )
    marked = tuple(sorted(set(res.label_map.values())))
    if len(marked) == 4:
        d = PlanarDiagram(
            crossings=res.diagram.crossings,
            arc_count=res.diagram.arc_count,
            name=res.diagram.name,
            marked_curve=marked,
            unbounded_arc=res.diagram.unbounded_arc,
        )
        from .invariants import tangle_tree_of

        attach_tangle_tree(d, tangle_tree_of(res.diagram))
        return d
    return res.diagram


def _default_name(g: GluingData, form: str) -> str:
    return (
        f"splice({g.left.p},{g.left.q};{g.right.p},{g.right.q})-{form}"
    )
