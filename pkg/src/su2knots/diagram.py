"""Planar diagrams as PD codes, and their combinatorial analysis.

A diagram is a list of crossings, each a 4-tuple of arc labels read
counterclockwise starting at the incoming under-strand.  Slots 0 and 2
carry the under-strand, slots 1 and 3 the over-strand.  Arc labels run
1..arc_count and each label occurs exactly twice.

Orientation is implicit: the tuples are rooted at the *incoming* under
arc, and strand tracing recovers a coherent direction for every
component (diagrams whose tuples cannot be coherently oriented are
rejected by validate).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .algebra import Matrix, mat_det


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class PlanarDiagram:
    crossings: tuple[tuple[int, int, int, int], ...]
    arc_count: int
    name: str = ""
    marked_curve: Optional[tuple[int, int, int, int]] = None
    unbounded_arc: int = 1

    def __post_init__(self):
        object.__setattr__(
            self, "crossings", tuple(tuple(c) for c in self.crossings)
        )
        if self.marked_curve is not None:
            object.__setattr__(self, "marked_curve", tuple(self.marked_curve))

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    def is_empty(self) -> bool:
        return not self.crossings

    # -- JSON interface (stable key order) ---------------------------------
    def to_json_dict(self) -> dict:
        out = {
            "name": self.name,
            "arc_count": self.arc_count,
            "crossings": [list(c) for c in self.crossings],
        }
        if self.marked_curve is not None:
            out["marked_curve"] = list(self.marked_curve)
        if self.unbounded_arc != 1:
            out["unbounded_arc"] = self.unbounded_arc
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    @staticmethod
    def from_json_dict(data: dict) -> "PlanarDiagram":
        try:
            crossings = tuple(tuple(int(x) for x in c) for c in data["crossings"])
            arc_count = int(data["arc_count"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DiagramError(f"malformed diagram JSON: {exc}") from exc
        if any(len(c) != 4 for c in crossings):
            raise DiagramError("crossings must be 4-tuples")
        marked = data.get("marked_curve")
        if marked is not None:
            marked = tuple(int(x) for x in marked)
            if len(marked) != 4:
                raise DiagramError("marked_curve must list 4 arcs")
        return PlanarDiagram(
            crossings=crossings,
            arc_count=arc_count,
            name=str(data.get("name", "")),
            marked_curve=marked,
            unbounded_arc=int(data.get("unbounded_arc", 1)),
        )

    @staticmethod
    def from_json(text: str) -> "PlanarDiagram":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DiagramError(f"invalid JSON: {exc}") from exc
        return PlanarDiagram.from_json_dict(data)


UNKNOT = PlanarDiagram(crossings=(), arc_count=1, name="unknot")


# ---------------------------------------------------------------------------
# Strand structure


@dataclass
class Orientation:
    """Directed strand structure of a diagram.

    successor[a] is the arc following a along its component; head_of[a]
    is the (crossing, slot) endpoint where the directed arc a enters its
    next crossing; over_in[ci] is the slot (1 or 3) where the over-strand
    enters crossing ci.
    """

    successor: dict[int, int]
    head_of: dict[int, tuple[int, int]]
    component_of: dict[int, int]
    component_count: int
    over_in: dict[int, int]


def _arc_slots(d: PlanarDiagram) -> dict[int, list[tuple[int, int]]]:
    slots: dict[int, list[tuple[int, int]]] = {}
    for ci, tup in enumerate(d.crossings):
        for p, a in enumerate(tup):
            slots.setdefault(a, []).append((ci, p))
    return slots


def _check_degrees(d: PlanarDiagram) -> dict[int, list[tuple[int, int]]]:
    slots = _arc_slots(d)
    labels = set(range(1, d.arc_count + 1))
    if set(slots) != labels:
        extra = sorted(set(slots) - labels)
        missing = sorted(labels - set(slots))
        raise DiagramError(
            f"arc label mismatch: unexpected {extra}, missing {missing}"
        )
    bad = {a: len(s) for a, s in slots.items() if len(s) != 2}
    if bad:
        raise DiagramError(f"arcs with degree != 2: {bad}")
    return slots


def components(d: PlanarDiagram) -> tuple[int, dict[int, int]]:
    """Component count and an arc -> component-index map (strand following)."""
    if d.is_empty():
        return (1 if d.arc_count >= 1 else 0), {
            a: 0 for a in range(1, d.arc_count + 1)
        }
    parent = {a: a for a in range(1, d.arc_count + 1)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, b, c, e) in d.crossings:
        parent[find(a)] = find(c)
        parent[find(b)] = find(e)
    reps = sorted({find(a) for a in parent})
    index = {r: i for i, r in enumerate(reps)}
    return len(reps), {a: index[find(a)] for a in parent}


def orient(d: PlanarDiagram) -> Orientation:
    """Recover the coherent orientation implied by under-strand rooting.

    Walks every component; entering a crossing through slot 0 is the
    correct direction for the under-strand, through slot 2 the reverse.
    Components mixing both are rejected.
    """
    if d.is_empty():
        return Orientation({}, {}, {}, 1 if d.arc_count else 0, {})
    slots = _check_degrees(d)
    ncomp, comp_of = components(d)

    successor: dict[int, int] = {}
    head_of: dict[int, tuple[int, int]] = {}
    seen: set[int] = set()
    for start in range(1, d.arc_count + 1):
        if start in seen:
            continue
        order: list[int] = []
        heads: dict[int, tuple[int, int]] = {}
        votes_good = votes_bad = 0
        arc = start
        exit_ep = slots[start][1]
        while True:
            ci, p = exit_ep
            heads[arc] = (ci, p)
            order.append(arc)
            if p == 0:
                votes_good += 1
            elif p == 2:
                votes_bad += 1
            nxt = d.crossings[ci][(p + 2) % 4]
            entered = (ci, (p + 2) % 4)
            if nxt == start:
                break
            if nxt in heads:
                raise DiagramError(f"strand through arc {start} is not a cycle")
            arc = nxt
            s0, s1 = slots[arc]
            exit_ep = s0 if s1 == entered else s1
        if votes_good and votes_bad:
            raise DiagramError(
                f"component of arc {start} has inconsistent under-strand rooting"
            )
        if votes_bad:
            order.reverse()
            for a in order:
                s0, s1 = slots[a]
                heads[a] = s0 if heads[a] == s1 else s1
        for i, a in enumerate(order):
            successor[a] = order[(i + 1) % len(order)]
            head_of[a] = heads[a]
            seen.add(a)

    over_in: dict[int, int] = {}
    for ci, tup in enumerate(d.crossings):
        cand = [q for q in (1, 3) if head_of[tup[q]] == (ci, q)]
        if len(cand) != 1:
            raise DiagramError(f"cannot orient over-strand at crossing {ci}")
        over_in[ci] = cand[0]
    return Orientation(successor, head_of, comp_of, ncomp, over_in)


def crossing_sign(d: PlanarDiagram, ci: int, ori: Optional[Orientation] = None) -> int:
    """+1 for a right-handed crossing, -1 for left-handed."""
    ori = ori or orient(d)
    return 1 if ori.over_in[ci] == 3 else -1


def writhe(d: PlanarDiagram) -> int:
    if d.is_empty():
        return 0
    ori = orient(d)
    return sum(crossing_sign(d, ci, ori) for ci in range(d.crossing_count))


def mirror(d: PlanarDiagram) -> PlanarDiagram:
    """Swap over/under at every crossing (reflection through the page)."""
    if d.is_empty():
        return d
    ori = orient(d)
    new = []
    for ci, (a, b, c, e) in enumerate(d.crossings):
        if ori.over_in[ci] == 1:
            new.append((b, c, e, a))
        else:
            new.append((e, a, b, c))
    return replace(d, crossings=tuple(new))


def is_alternating(d: PlanarDiagram) -> bool:
    """True when every arc runs between an over-slot and an under-slot."""
    if d.is_empty():
        return True
    for slots in _check_degrees(d).values():
        kinds = sorted(p % 2 for _ci, p in slots)
        if kinds[0] == kinds[1]:
            return False
    return True


def overpass_classes(d: PlanarDiagram) -> tuple[dict[int, int], int]:
    """Group PD edges into overpasses (Wirtinger generators).

    The two over-slots of every crossing carry the same overpass.  Returns
    an edge -> class-index map and the class count (= crossing count for a
    connected diagram with at least one crossing).
    """
    if d.is_empty():
        return ({a: 0 for a in range(1, d.arc_count + 1)}, min(d.arc_count, 1))
    parent = {a: a for a in range(1, d.arc_count + 1)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (_a, b, _c, e) in d.crossings:
        parent[find(b)] = find(e)
    reps = sorted({find(a) for a in parent})
    index = {r: i for i, r in enumerate(reps)}
    return {a: index[find(a)] for a in parent}, len(reps)


# ---------------------------------------------------------------------------
# Faces, checkerboard coloring, Goeritz matrix


@dataclass
class FaceData:
    faces: list[list[tuple[int, int]]]  # dart cycles, dart = (crossing, slot)
    face_of_dart: dict[tuple[int, int], int]
    colors: list[int]  # 0 = white, 1 = black
    white_faces: list[int]
    unbounded_face: int


def faces_and_coloring(d: PlanarDiagram) -> FaceData:
    """Trace faces of the rotation system and checkerboard-color them.

    The unbounded face is the one to the left of the designated arc
    (d.unbounded_arc, default 1) and is colored white.  Corner k of a
    crossing (between slots k and k+1) lies in the face of dart (ci, k+1).
    """
    if d.is_empty():
        return FaceData([[], []], {}, [0, 1], [0], 0)
    slots = _check_degrees(d)
    ori = orient(d)

    def partner(dart):
        ci, p = dart
        a = d.crossings[ci][p]
        s0, s1 = slots[a]
        return s0 if s1 == dart else s1

    face_of: dict[tuple[int, int], int] = {}
    faces: list[list[tuple[int, int]]] = []
    for ci in range(d.crossing_count):
        for p in range(4):
            if (ci, p) in face_of:
                continue
            cyc = []
            dart = (ci, p)
            while dart not in face_of:
                face_of[dart] = len(faces)
                cyc.append(dart)
                cj, q = partner(dart)
                dart = (cj, (q + 1) % 4)
            faces.append(cyc)

    if len(faces) != d.crossing_count + 2:
        raise DiagramError(
            f"face count {len(faces)} != crossings + 2; "
            "not a connected planar PD code"
        )

    colors = [-1] * len(faces)
    ua = d.unbounded_arc if 1 <= d.unbounded_arc <= d.arc_count else 1
    unbounded = face_of[ori.head_of[ua]]
    colors[unbounded] = 0
    queue = [unbounded]
    while queue:
        f = queue.pop()
        for dart in faces[f]:
            g = face_of[partner(dart)]
            if colors[g] == -1:
                colors[g] = 1 - colors[f]
                queue.append(g)
            elif colors[g] == colors[f]:
                raise DiagramError("checkerboard coloring failed (non-bipartite)")
    if any(c == -1 for c in colors):
        raise DiagramError("coloring did not reach all faces (split diagram)")

    white = [i for i, c in enumerate(colors) if c == 0]
    return FaceData(faces, face_of, colors, white, unbounded)


# Sign conventions for the Goeritz / Gordon-Litherland data, pinned by the
# signature tests (right trefoil -2, figure eight 0, mirror antisymmetry):
# a crossing whose white corners sit on the {1,3} diagonal contributes
# eta = -1, and a crossing has type II when the over-strand entry slot
# disagrees with the white diagonal (slot 3 with white {0,2} or slot 1
# with white {1,3}).
ETA_WHITE_13 = -1
TYPE2_SAME = False


@dataclass
class GoeritzData:
    matrix: Matrix  # reduced (one white face deleted)
    full_matrix: Matrix
    deleted_face: int
    correction: int  # Gordon-Litherland mu term
    eta: dict[int, int]
    type2: dict[int, bool]


def goeritz(d: PlanarDiagram) -> GoeritzData:
    """Goeritz matrix on white faces plus signature-correction data."""
    if d.is_empty():
        return GoeritzData([], [], 0, 0, {}, {})
    fd = faces_and_coloring(d)
    ori = orient(d)
    white = fd.white_faces
    windex = {f: i for i, f in enumerate(white)}
    n = len(white)
    full = [[0] * n for _ in range(n)]
    eta: dict[int, int] = {}
    type2: dict[int, bool] = {}
    mu = 0
    for ci in range(d.crossing_count):
        corner_face = [fd.face_of_dart[(ci, (k + 1) % 4)] for k in range(4)]
        corner_white = [fd.colors[f] == 0 for f in corner_face]
        if corner_white == [True, False, True, False]:
            diag13 = False
            wf = (corner_face[0], corner_face[2])
        elif corner_white == [False, True, False, True]:
            diag13 = True
            wf = (corner_face[1], corner_face[3])
        else:
            raise DiagramError(f"crossing {ci}: white corners are not diagonal")
        e = ETA_WHITE_13 if diag13 else -ETA_WHITE_13
        eta[ci] = e
        over3 = ori.over_in[ci] == 3
        t2 = (over3 == diag13) if TYPE2_SAME else (over3 != diag13)
        type2[ci] = t2
        if t2:
            mu += e
        i, j = windex[wf[0]], windex[wf[1]]
        if i != j:
            full[i][j] -= e
            full[j][i] -= e
    for i in range(n):
        full[i][i] = -sum(full[i][j] for j in range(n) if j != i)
    # Delete the white face of highest index.
    k = n - 1
    reduced = [row[:k] for row in full[:k]]
    return GoeritzData(reduced, full, white[k], mu, eta, type2)


def goeritz_determinant(d: PlanarDiagram) -> int:
    return abs(mat_det(goeritz(d).matrix))


def symmetric_signature(m: Matrix) -> int:
    """Signature of a symmetric integer matrix, computed exactly.

    Diagonalises by congruence over the rationals; an off-diagonal pivot
    (hyperbolic pair) contributes one +1 and one -1.
    """
    a = [[Fraction(x) for x in row] for row in m]
    pos = neg = 0
    while a:
        size = len(a)
        piv = next((i for i in range(size) if a[i][i] != 0), None)
        if piv is None:
            hit = next(
                (
                    (i, j)
                    for i in range(size)
                    for j in range(i + 1, size)
                    if a[i][j] != 0
                ),
                None,
            )
            if hit is None:
                break  # remaining block is zero
            i, j = hit
            pos += 1
            neg += 1
            b = a[i][j]
            rest = [k for k in range(size) if k not in (i, j)]
            a = [
                [
                    a[r][s] - (a[r][i] * a[j][s] + a[r][j] * a[i][s]) / b
                    for s in rest
                ]
                for r in rest
            ]
            continue
        if piv != 0:
            a[0], a[piv] = a[piv], a[0]
            for row in a:
                row[0], row[piv] = row[piv], row[0]
        p = a[0][0]
        if p > 0:
            pos += 1
        else:
            neg += 1
        a = [
            [a[r][s] - a[r][0] * a[0][s] / p for s in range(1, size)]
            for r in range(1, size)
        ]
    return pos - neg


# ---------------------------------------------------------------------------
# Validation


@dataclass
class ValidationReport:
    ok: bool
    violations: list[str] = field(default_factory=list)
    face_count: Optional[int] = None
    component_count: Optional[int] = None
    connected: Optional[bool] = None

    def __bool__(self):
        return self.ok


def validate(d: PlanarDiagram) -> ValidationReport:
    """Check arc degrees, orientability, connectivity, Euler face count."""
    report = ValidationReport(ok=True)
    if d.is_empty():
        if d.arc_count > 1:
            report.ok = False
            report.violations.append("empty diagram with arc_count > 1")
        report.face_count = 2
        report.component_count = 1 if d.arc_count == 1 else 0
        report.connected = True
        return report
    try:
        _check_degrees(d)
    except DiagramError as exc:
        report.ok = False
        report.violations.append(str(exc))
        return report
    try:
        orient(d)
    except DiagramError as exc:
        report.ok = False
        report.violations.append(str(exc))
        return report
    ncomp, _ = components(d)
    report.component_count = ncomp
    report.connected = _is_connected(d)
    if not report.connected:
        report.ok = False
        report.violations.append("diagram is split (disconnected)")
        return report
    try:
        fd = faces_and_coloring(d)
        report.face_count = len(fd.faces)
    except DiagramError as exc:
        report.ok = False
        report.violations.append(str(exc))
    return report


def _is_connected(d: PlanarDiagram) -> bool:
    if d.crossing_count <= 1:
        return True
    adj: dict[int, set[int]] = {ci: set() for ci in range(d.crossing_count)}
    for s in _arc_slots(d).values():
        if len(s) == 2:
            (c0, _), (c1, _) = s
            adj[c0].add(c1)
            adj[c1].add(c0)
    seen = {0}
    stack = [0]
    while stack:
        c = stack.pop()
        for nb in adj[c]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == d.crossing_count


def require_valid(d: PlanarDiagram) -> None:
    rep = validate(d)
    if not rep.ok:
        raise DiagramError("; ".join(rep.violations))


# ---------------------------------------------------------------------------
# Constructors


def braid_closure(word: list[int], strands: int, name: str = "") -> PlanarDiagram:
    """Close a braid word into a diagram.

    word entries are +-i for the generator crossing strand positions
    i, i+1 (1-based); positive letters put the strand entering at
    position i on top.
    """
    if strands < 2 or any(not 1 <= abs(w) < strands for w in word):
        raise DiagramError("bad braid word")
    if not word:
        raise DiagramError("empty braid word")
    counter = [0]

    def fresh():
        counter[0] += 1
        return counter[0]

    current = [fresh() for _ in range(strands)]
    top = current[:]
    crossings = []
    for w in word:
        i = abs(w) - 1
        tl, tr = current[i], current[i + 1]
        bl, br = fresh(), fresh()
        if w > 0:
            # TL->BR passes over; under-in is TR (slot NE), CCW: NE NW SW SE
            crossings.append((tr, tl, bl, br))
        else:
            # TR->BL passes over; under-in is TL (slot NW), CCW: NW SW SE NE
            crossings.append((tl, bl, br, tr))
        current[i], current[i + 1] = bl, br
    # close up: bottom arc at position p is the same arc as the top one
    merge = {b: t for b, t in zip(current, top) if b != t}

    def resolve(a):
        while a in merge:
            a = merge[a]
        return a

    tuples = [tuple(resolve(x) for x in tup) for tup in crossings]
    labels = sorted({x for tup in tuples for x in tup})
    relabel = {a: i + 1 for i, a in enumerate(labels)}
    d = PlanarDiagram(
        crossings=tuple(tuple(relabel[x] for x in tup) for tup in tuples),
        arc_count=len(labels),
        name=name,
    )
    return canonicalize(reroot_under(d))


def reroot_under(d: PlanarDiagram) -> PlanarDiagram:
    """Rotate tuples so slot 0 is the *incoming* under-arc.

    Accepts diagrams whose tuples have the under-strand on the {0,2}
    diagonal but arbitrary rooting; chooses a direction per component and
    fixes every tuple to match it.
    """
    if d.is_empty():
        return d
    slots = _check_degrees(d)
    rotate = [False] * d.crossing_count
    seen: set[int] = set()
    for start in range(1, d.arc_count + 1):
        if start in seen:
            continue
        arc = start
        exit_ep = slots[start][1]
        while True:
            seen.add(arc)
            ci, p = exit_ep
            if p == 2:
                rotate[ci] = True
            nxt = d.crossings[ci][(p + 2) % 4]
            entered = (ci, (p + 2) % 4)
            if nxt == start:
                break
            arc = nxt
            s0, s1 = slots[arc]
            exit_ep = s0 if s1 == entered else s1
    new = []
    for ci, (a, b, c, e) in enumerate(d.crossings):
        new.append((c, e, a, b) if rotate[ci] else (a, b, c, e))
    return replace(d, crossings=tuple(new))


# ---------------------------------------------------------------------------
# Canonical relabeling (arcs consecutive along each component)


def canonicalize(d: PlanarDiagram) -> PlanarDiagram:
    """Relabel arcs consecutively along each strand.

    Following any component, arc labels increase by one (wrapping at the
    component boundary); tuples keep their rooting at the incoming
    under-arc, which stays correct because relabeling preserves direction.
    """
    return canonicalize_with_map(d)[0]


def canonicalize_with_map(d: PlanarDiagram) -> tuple[PlanarDiagram, dict[int, int]]:
    """canonicalize plus the old-label -> new-label map."""
    if d.is_empty():
        return d, {}
    ori = orient(d)
    comp_arcs: dict[int, list[int]] = {}
    for a in range(1, d.arc_count + 1):
        comp_arcs.setdefault(ori.component_of[a], []).append(a)
    relabel: dict[int, int] = {}
    nxt = 1
    for comp in sorted(comp_arcs, key=lambda c: min(comp_arcs[c])):
        a = min(comp_arcs[comp])
        while a not in relabel:
            relabel[a] = nxt
            nxt += 1
            a = ori.successor[a]
    new_tuples = tuple(tuple(relabel[x] for x in tup) for tup in d.crossings)
    out = replace(
        d,
        crossings=new_tuples,
        marked_curve=(
            tuple(sorted(relabel[x] for x in d.marked_curve))
            if d.marked_curve
            else None
        ),
        unbounded_arc=relabel.get(d.unbounded_arc, 1),
    )
    return out, relabel
