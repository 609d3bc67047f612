"""Combinatorial dissected marked orbifold surfaces.

A surface is given by vertices (boundary-marked / puncture / orbifold),
arcs, a clockwise ribbon order of arc-ends at every vertex, and oriented
boundary components alternating marked vertices and boundary segments.
Faces are never part of the input; they are recovered by the face walk of
the induced rotation system, and the dissection condition (exactly one
boundary segment per face, every orbifold vertex of arc-degree one) is
checked on the result.

Darts. An arc dart ``("a", arc_id, e)`` is based at the vertex holding
end ``e`` and travels toward the other end.  A segment dart
``("s", seg_id, 0)`` travels along the boundary orientation (surface on
the left), ``("s", seg_id, 1)`` against it.  The full clockwise dart
order at a boundary vertex is: backward dart of the incoming segment,
the ribbon arc-ends, forward dart of the outgoing segment.  Faces are
walked counterclockwise via ``next = cw_next(reverse(d))``; they sit on
the left of each of their darts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .errors import NotDissection, SurfaceError

VERTEX_KINDS = ("boundary-marked", "puncture", "orbifold")

Dart = tuple[str, str, int]


def arc_dart(arc: str, end: int) -> Dart:
    return ("a", arc, end)


def seg_dart(seg: str, rev: int) -> Dart:
    return ("s", seg, rev)


def reverse(d: Dart) -> Dart:
    kind, name, e = d
    return (kind, name, 1 - e)


@dataclass(frozen=True)
class Face:
    """A counterclockwise face of the dissection.

    ``sides[i]`` is the dart traversed along side ``i``; the corner ``i``
    sits between sides ``i-1`` and ``i`` at ``corner_vertices[i]``.
    ``boundary_slot`` is the index of the unique boundary-segment side.
    """

    id: str
    sides: tuple[Dart, ...]
    corner_vertices: tuple[str, ...]
    boundary_slot: int

    def __len__(self) -> int:
        return len(self.sides)

    def slots_between(self, a: int, b: int) -> list[int]:
        """Slots strictly between ``a`` and ``b`` in ccw (cyclic) order."""
        k = len(self.sides)
        out = []
        i = (a + 1) % k
        while i != b:
            out.append(i)
            i = (i + 1) % k
        return out


class DissectedOrbifold:
    """Validated dissected marked orbifold surface with derived faces."""

    def __init__(self, vertices, arcs, ribbon, boundary, name=""):
        self.name = name
        self.vertices = dict(vertices)            # id -> kind
        self.arcs = {a: tuple(ends) for a, ends in arcs.items()}
        self.ribbon = {v: list(ends) for v, ends in ribbon.items()}
        self.boundary = [list(comp) for comp in boundary]
        self._validate_schema()
        self._build_rotation()
        self._build_faces()
        self._check_dissection()

    # -- construction -------------------------------------------------

    def _validate_schema(self):
        for v, kind in self.vertices.items():
            if kind not in VERTEX_KINDS:
                raise SurfaceError(f"vertex {v!r}: unknown kind {kind!r}")
        for a, ends in self.arcs.items():
            if len(ends) != 2:
                raise SurfaceError(f"arc {a!r}: needs exactly two ends")
            for v in ends:
                if v not in self.vertices:
                    raise SurfaceError(f"arc {a!r}: endpoint {v!r} is not a vertex")

        # Boundary components: odd-length alternation makes no sense; we
        # store them as flat [v0, s0, v1, s1, ...] cyclic lists.
        self.segments: dict[str, tuple[str, str]] = {}
        self._seg_component: dict[str, int] = {}
        boundary_vertices = set()
        for ci, comp in enumerate(self.boundary):
            if not comp or len(comp) % 2 != 0:
                raise SurfaceError(f"boundary component {ci}: must alternate vertex, segment")
            for i in range(0, len(comp), 2):
                v, s = comp[i], comp[i + 1]
                if self.vertices.get(v) != "boundary-marked":
                    raise SurfaceError(f"boundary component {ci}: {v!r} is not a boundary-marked vertex")
                if v in boundary_vertices:
                    raise SurfaceError(f"vertex {v!r} appears on the boundary more than once")
                boundary_vertices.add(v)
                if s in self.segments:
                    raise SurfaceError(f"segment id {s!r} duplicated")
                w = comp[(i + 2) % len(comp)]
                self.segments[s] = (v, w)
                self._seg_component[s] = ci
        for v, kind in self.vertices.items():
            if kind == "boundary-marked" and v not in boundary_vertices:
                raise SurfaceError(f"boundary-marked vertex {v!r} missing from boundary data")

        # Ribbon: every arc end exactly once, at the right vertex.
        seen: set[tuple[str, int]] = set()
        for v, tokens in self.ribbon.items():
            if v not in self.vertices:
                raise SurfaceError(f"ribbon: unknown vertex {v!r}")
            for tok in tokens:
                arc, end = parse_arc_end(tok)
                if arc not in self.arcs:
                    raise SurfaceError(f"ribbon at {v!r}: unknown arc {arc!r}")
                if self.arcs[arc][end] != v:
                    raise SurfaceError(f"ribbon at {v!r}: arc end {tok!r} belongs to vertex {self.arcs[arc][end]!r}")
                if (arc, end) in seen:
                    raise SurfaceError(f"arc end {tok!r} appears twice in ribbon data")
                seen.add((arc, end))
        for a in self.arcs:
            for end in (0, 1):
                if (a, end) not in seen:
                    raise SurfaceError(f"arc end {a}.{end} missing from ribbon data")

        for v, kind in self.vertices.items():
            if kind == "orbifold" and len(self.ribbon.get(v, [])) != 1:
                raise SurfaceError(
                    f"orbifold endpoint multiplicity: vertex {v!r} carries "
                    f"{len(self.ribbon.get(v, []))} arc ends, expected exactly 1")

        # One green point per boundary segment, addressed by segment id.
        self.greens = sorted(self.segments)

        self.warnings: list[str] = []
        for v, kind in self.vertices.items():
            if kind == "puncture" and not self.ribbon.get(v):
                self.warnings.append(f"puncture {v!r} is not incident to any arc")

    def _build_rotation(self):
        """Full clockwise cyclic dart order at each vertex."""
        self._cw: dict[str, list[Dart]] = {}
        seg_in: dict[str, str] = {}
        seg_out: dict[str, str] = {}
        for s, (v, w) in self.segments.items():
            seg_out[v] = s
            seg_in[w] = s
        for v, kind in self.vertices.items():
            arcs = [arc_dart(*parse_arc_end(t)) for t in self.ribbon.get(v, [])]
            if kind == "boundary-marked":
                order = [seg_dart(seg_in[v], 1)] + arcs + [seg_dart(seg_out[v], 0)]
            else:
                order = arcs
            self._cw[v] = order
        self._cw_next: dict[Dart, Dart] = {}
        self._dart_vertex: dict[Dart, str] = {}
        for v, order in self._cw.items():
            for i, d in enumerate(order):
                self._cw_next[d] = order[(i + 1) % len(order)]
                self._dart_vertex[d] = v

    def dart_vertex(self, d: Dart) -> str:
        return self._dart_vertex[d]

    def dart_target(self, d: Dart) -> str:
        return self._dart_vertex[reverse(d)]

    def _face_next(self, d: Dart) -> Dart:
        return self._cw_next[reverse(d)]

    def _build_faces(self):
        remaining = set(self._dart_vertex)
        orbits: list[list[Dart]] = []
        while remaining:
            d0 = min(remaining)
            walk = [d0]
            remaining.discard(d0)
            d = self._face_next(d0)
            guard = len(self._dart_vertex) + 1
            while d != d0:
                if d not in remaining:
                    raise SurfaceError("ribbon/boundary data inconsistent: face walk does not close")
                walk.append(d)
                remaining.discard(d)
                d = self._face_next(d)
                guard -= 1
                if guard < 0:
                    raise SurfaceError("face walk failed to terminate")
            orbits.append(walk)

        interior, outer = [], []
        for walk in orbits:
            segs0 = [d for d in walk if d[0] == "s" and d[2] == 0]
            segs1 = [d for d in walk if d[0] == "s" and d[2] == 1]
            if segs1:
                if any(d[0] == "a" for d in walk) or segs0:
                    raise SurfaceError("ribbon/boundary data inconsistent: exterior walk enters the interior")
                outer.append(walk)
            else:
                interior.append((len(segs0), walk))

        if len(outer) != len(self.boundary):
            raise SurfaceError("ribbon/boundary data inconsistent: wrong number of exterior walks")

        self.faces: list[Face] = []
        for nseg, walk in sorted(interior, key=lambda t: min(t[1])):
            if nseg != 1:
                raise NotDissection(
                    f"not a dissection: face {tuple(walk)} has {nseg} boundary segments")
            fid = f"F{len(self.faces)}"
            corners = tuple(self._dart_vertex[d] for d in walk)
            slot = next(i for i, d in enumerate(walk) if d[0] == "s")
            self.faces.append(Face(fid, tuple(walk), corners, slot))
        self.face_by_id = {f.id: f for f in self.faces}

        # Global instance tables: each arc has exactly two side instances.
        self._slot_of_dart: dict[Dart, tuple[str, int]] = {}
        for f in self.faces:
            for i, d in enumerate(f.sides):
                self._slot_of_dart[d] = (f.id, i)
        self._green_face: dict[str, str] = {}
        for f in self.faces:
            d = f.sides[f.boundary_slot]
            self._green_face[d[1]] = f.id

    def _check_dissection(self):
        for a in self.arcs:
            for e in (0, 1):
                if arc_dart(a, e) not in self._slot_of_dart:
                    raise NotDissection(f"not a dissection: arc side {a}.{e} lies in no face")
        # Connectivity of the ribbon graph; a disconnected input would
        # describe a disjoint union, and a complementary region of the
        # intended surface would carry several boundary segments.
        if self.vertices:
            seen = set()
            stack = [next(iter(sorted(self.vertices)))]
            while stack:
                v = stack.pop()
                if v in seen:
                    continue
                seen.add(v)
                for d in self._cw[v]:
                    stack.append(self.dart_target(d))
            if seen != set(self.vertices):
                raise NotDissection(
                    "not a dissection: surface data is disconnected "
                    "(some complementary region would carry 0 or >=2 boundary segments)")

    # -- queries -------------------------------------------------------

    def slot_of_dart(self, d: Dart) -> tuple[str, int]:
        """(face id, slot) of the side instance traversing dart ``d``."""
        return self._slot_of_dart[d]

    def side_dart(self, face: str, slot: int) -> Dart:
        return self.face_by_id[face].sides[slot]

    def other_side(self, face: str, slot: int) -> tuple[str, int]:
        """The companion side instance of the same arc."""
        d = self.side_dart(face, slot)
        if d[0] != "a":
            raise SurfaceError(f"slot {slot} of {face} is a boundary segment")
        return self._slot_of_dart[reverse(d)]

    def arc_of_slot(self, face: str, slot: int) -> str:
        d = self.side_dart(face, slot)
        if d[0] != "a":
            raise SurfaceError(f"slot {slot} of {face} is a boundary segment")
        return d[1]

    def green_face(self, green: str) -> str:
        return self._green_face[green]

    def orbifold_vertices(self) -> list[str]:
        return sorted(v for v, k in self.vertices.items() if k == "orbifold")

    def punctures(self) -> list[str]:
        return sorted(v for v, k in self.vertices.items() if k == "puncture")

    def cw_order(self, v: str) -> list[Dart]:
        return list(self._cw[v])

    def corner_pairs(self, v: str):
        """Clockwise-consecutive arc-dart pairs at ``v`` (quiver corners).

        At boundary vertices the two segment darts interrupt the cycle, so
        only pairs of adjacent arc darts inside the ribbon list survive.
        """
        order = self._cw[v]
        arcs = [d for d in order if d[0] == "a"]
        pairs = []
        if self.vertices[v] == "boundary-marked":
            for i in range(len(arcs) - 1):
                pairs.append((arcs[i], arcs[i + 1]))
        else:
            for i in range(len(arcs)):
                pairs.append((arcs[i], arcs[(i + 1) % len(arcs)]))
        return pairs

    def x_corners(self, face: Face) -> list[int]:
        """Corner slots of ``face`` sitting at orbifold vertices."""
        return [i for i, v in enumerate(face.corner_vertices)
                if self.vertices[v] == "orbifold"]

    # -- reporting -----------------------------------------------------

    def euler_check(self):
        """(genus, number of boundary components, cell counts) from V-E+F."""
        V = len(self.vertices)
        E = len(self.arcs) + len(self.segments)
        F = len(self.faces)
        chi = V - E + F
        b = len(self.boundary)
        genus2 = 2 - b - chi
        if genus2 % 2 != 0 or genus2 < 0:
            raise SurfaceError(f"inconsistent Euler characteristic {chi} for {b} boundary components")
        counts = {"vertices": V, "arcs": len(self.arcs), "segments": len(self.segments),
                  "faces": F, "chi": chi}
        return genus2 // 2, b, counts

    def to_dict(self) -> dict:
        return {
            "vertices": [{"id": v, "kind": k} for v, k in sorted(self.vertices.items())],
            "arcs": [{"id": a, "ends": list(ends)} for a, ends in sorted(self.arcs.items())],
            "ribbon": {v: list(toks) for v, toks in sorted(self.ribbon.items())},
            "boundary": [list(c) for c in self.boundary],
        }


def parse_arc_end(token: str) -> tuple[str, int]:
    arc, dot, end = token.rpartition(".")
    if dot != "." or end not in ("0", "1"):
        raise SurfaceError(f"bad arc-end token {token!r}, expected 'arc.0' or 'arc.1'")
    return arc, int(end)


def load_surface(text: str, name: str = "") -> DissectedOrbifold:
    """Parse and validate a surface document (JSON, schema in README)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SurfaceError(f"parse error: {exc}") from None
    for key in ("vertices", "arcs", "ribbon", "boundary"):
        if key not in doc:
            raise SurfaceError(f"parse error: missing field {key!r}")
    vertices = {}
    for entry in doc["vertices"]:
        vid = str(entry["id"])
        if vid in vertices:
            raise SurfaceError(f"vertex id {vid!r} duplicated")
        vertices[vid] = entry["kind"]
    arcs = {}
    for entry in doc["arcs"]:
        aid = str(entry["id"])
        if aid in arcs:
            raise SurfaceError(f"arc id {aid!r} duplicated")
        arcs[aid] = tuple(str(v) for v in entry["ends"])
    ribbon = {str(v): [str(t) for t in toks] for v, toks in doc["ribbon"].items()}
    boundary = [[str(x) for x in comp] for comp in doc["boundary"]]
    return DissectedOrbifold(vertices, arcs, ribbon, boundary, name=name or str(doc.get("name", "")))
