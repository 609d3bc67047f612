"""Reduced combinatorial curve words, windings, and gradings.

A curve is recorded by its dissection crossings together with the face
segment between consecutive crossings: ``Seg(face, slot_in, slot_out)``
names the side instances through which the curve enters and leaves the
face.  Open curves carry end segments whose outer slot is the ``GREEN``
sentinel (endpoint on the green point of the face) or, for wrap ends,
the side instance of the first tail crossing of the spiral around a
puncture.  Spirals approach their puncture counterclockwise; the pure
tail steps are the segments ``(F, i, i-1)`` cutting off a single
puncture corner, and they are never stored explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import CurveError
from .surface import DissectedOrbifold

GREEN = -1


@dataclass(frozen=True)
class Seg:
    face: str
    slot_in: int
    slot_out: int

    def reversed(self) -> "Seg":
        return Seg(self.face, self.slot_out, self.slot_in)


@dataclass(frozen=True)
class End:
    kind: str              # "green" | "wrap"
    at: str                # green id (= boundary segment id) or puncture id

    def __repr__(self):
        return f"{self.kind}:{self.at}"


@dataclass(frozen=True)
class CurveWord:
    crossings: tuple[str, ...]
    segments: tuple[Seg, ...]
    start: End | None = None
    end: End | None = None

    @property
    def closed(self) -> bool:
        return self.start is None

    @property
    def kind(self) -> str:
        if self.closed:
            return "closed"
        wraps = (self.start.kind == "wrap") + (self.end.kind == "wrap")
        return ("arc-string", "one-sided-wrap", "two-sided-wrap")[wraps]

    def __len__(self):
        return len(self.crossings)

    def reversed(self) -> "CurveWord":
        return CurveWord(tuple(reversed(self.crossings)),
                         tuple(s.reversed() for s in reversed(self.segments)),
                         self.end, self.start)

    def rotated(self, k: int) -> "CurveWord":
        if not self.closed:
            raise CurveError("only closed words rotate")
        n = len(self.crossings)
        k %= n
        return CurveWord(self.crossings[k:] + self.crossings[:k],
                         self.segments[k:] + self.segments[:k])

    def shape(self) -> tuple:
        return (self.crossings,
                tuple((s.face, s.slot_in, s.slot_out) for s in self.segments),
                self.start, self.end)


def validate_word(s: DissectedOrbifold, w: CurveWord) -> None:
    n = len(w.crossings)
    if w.closed:
        if n == 0 or len(w.segments) != n:
            raise CurveError("closed word needs one segment per crossing")
    else:
        if len(w.segments) != n + 1:
            raise CurveError("open word needs crossings+1 segments")
        if n == 0:
            raise CurveError("open word needs at least one crossing")
    for i, seg in enumerate(w.segments):
        face = s.face_by_id.get(seg.face)
        if face is None:
            raise CurveError(f"unknown face {seg.face!r}")
        for slot, outer_end in ((seg.slot_in, (w.start, i == 0 and not w.closed)),
                                (seg.slot_out, (w.end, i == len(w.segments) - 1 and not w.closed))):
            endpoint, is_outer = outer_end
            if slot == GREEN:
                if not (is_outer and endpoint is not None and endpoint.kind == "green"):
                    raise CurveError("GREEN slot only at a green end segment")
                if s.green_face(endpoint.at) != seg.face:
                    raise CurveError(f"green {endpoint.at!r} does not sit on face {seg.face}")
            else:
                if not 0 <= slot < len(face):
                    raise CurveError(f"slot {slot} out of range for {seg.face}")
                if face.sides[slot][0] != "a":
                    raise CurveError(f"slot {slot} of {seg.face} is the boundary segment")
        if seg.slot_in != GREEN and seg.slot_out != GREEN and seg.slot_in == seg.slot_out:
            # syntactically tolerated (reduce removes it), flagged by is_reduced
            pass
    # crossing continuity: exit instance of segment i and entry instance of
    # segment i+1 are the two sides of crossing i (open) resp. i+1 (closed)
    pairs = list(zip(w.segments, w.segments[1:]))
    if w.closed:
        pairs.append((w.segments[-1], w.segments[0]))
    for i, (a, b) in enumerate(pairs):
        arc = w.crossings[(i + 1) % n] if w.closed else w.crossings[i]
        if a.slot_out == GREEN or b.slot_in == GREEN:
            raise CurveError("GREEN slot in the middle of a word")
        if s.arc_of_slot(a.face, a.slot_out) != arc:
            raise CurveError(f"crossing {i}: segment exits arc "
                             f"{s.arc_of_slot(a.face, a.slot_out)!r}, word says {arc!r}")
        if s.other_side(a.face, a.slot_out) != (b.face, b.slot_in):
            raise CurveError(f"crossing {i}: segments do not meet across the arc")
    if not w.closed:
        first, last = w.segments[0], w.segments[-1]
        if first.slot_out != GREEN and s.arc_of_slot(first.face, first.slot_out) != w.crossings[0]:
            raise CurveError("first segment does not reach the first crossing")
        if last.slot_in != GREEN and s.arc_of_slot(last.face, last.slot_in) != w.crossings[-1]:
            raise CurveError("last segment does not leave the last crossing")
        if first.slot_out == GREEN or last.slot_in == GREEN:
            raise CurveError("end segments must touch their crossing on the inner side")
        for endpoint, seg, slot in ((w.start, first, first.slot_in), (w.end, last, last.slot_out)):
            if endpoint.kind == "wrap":
                _check_wrap(s, endpoint.at, seg, at_start=endpoint is w.start)


def _check_wrap(s: DissectedOrbifold, p: str, seam: Seg, at_start: bool) -> None:
    if s.vertices.get(p) != "puncture":
        raise CurveError(f"wrap target {p!r} is not a puncture")
    slot = seam.slot_in if at_start else seam.slot_out
    if slot == GREEN:
        raise CurveError("wrap end needs the tail-side slot")
    for arc, _seg in wrap_tail(s, p, seam.face, slot, at_start, count=_wrap_period(s, p) + 1):
        pass  # generation raises on inconsistency


def _wrap_period(s: DissectedOrbifold, p: str) -> int:
    return max(1, len(s.ribbon.get(p, [])))


def wrap_tail(s: DissectedOrbifold, p: str, face: str, slot: int, at_start: bool, count: int):
    """Crossings of the counterclockwise spiral around ``p``.

    ``(face, slot)`` is the instance of the first tail crossing (the one
    adjacent to the seam).  Yields ``(arc, Seg)`` pairs walking away from
    the explicit word; the ``Seg`` given with each crossing is the pure
    wrap step behind it.  For a start wrap the data is generated on the
    reversed word, so segments come reversed.
    """
    cur_face, cur_slot = face, slot
    for _ in range(count):
        arc = s.arc_of_slot(cur_face, cur_slot)
        nface, nslot = s.other_side(cur_face, cur_slot)
        f = s.face_by_id[nface]
        corner = s.face_by_id[nface].corner_vertices[nslot]
        if corner != p:
            raise CurveError(
                f"wrap around {p!r} breaks at face {nface}: corner at {corner!r}")
        out = (nslot - 1) % len(f)
        if f.sides[out][0] != "a":
            raise CurveError(f"wrap around {p!r} runs into the boundary segment")
        seg = Seg(nface, nslot, out)
        yield arc, (seg.reversed() if at_start else seg)
        cur_face, cur_slot = nface, out


def segment_winding(s: DissectedOrbifold, face: str, slot_in: int, slot_out: int) -> int:
    """+1 if the boundary segment of the face lies left of the directed
    chord slot_in -> slot_out (counterclockwise face), else -1."""
    if slot_in == slot_out:
        raise CurveError("winding needs distinct slots")
    f = s.face_by_id[face]
    return 1 if f.boundary_slot in f.slots_between(slot_out, slot_in) else -1


def internal_segments(w: CurveWord):
    """Segments carrying winding/grading steps, in order.

    For open words these are the segments between consecutive crossings
    plus wrap seams; green end segments are skipped.  For closed words,
    all segments (the last one closes the loop)."""
    if w.closed:
        return list(enumerate(w.segments))
    out = []
    for i, seg in enumerate(w.segments):
        if seg.slot_in == GREEN or seg.slot_out == GREEN:
            continue
        out.append((i, seg))
    return out


def is_reduced(w: CurveWord) -> bool:
    return all(seg.slot_in != seg.slot_out for seg in w.segments
               if seg.slot_in != GREEN and seg.slot_out != GREEN)


def reduce_word(s: DissectedOrbifold, w: CurveWord) -> CurveWord:
    """Cancel bigon backtracks (same-instance returns) until none remain.

    A fully cancelled closed word comes back with no crossings (the
    contractible flag is ``len(word) == 0``)."""
    w = _reduce_once(s, w)
    if not w.closed:
        w = _normalize_wraps(s, w)
    return w


def _is_bigon(seg: Seg) -> bool:
    return seg.slot_in != GREEN and seg.slot_in == seg.slot_out


def _reduce_once(s: DissectedOrbifold, w: CurveWord) -> CurveWord:
    while True:
        if w.closed:
            n = len(w.crossings)
            hit = next((i for i, seg in enumerate(w.segments) if _is_bigon(seg)), None)
            if hit is None:
                return w
            if n <= 2:
                return CurveWord((), ())
            # rotate the bigon segment to index 1: crossings c1, c2 cancel and
            # segments s0, s2 merge (segment j connects crossing j -> j+1)
            w = w.rotated((hit - 1) % n)
            s0, s2 = w.segments[0], w.segments[2]
            merged = Seg(s0.face, s0.slot_in, s2.slot_out)
            w = CurveWord(w.crossings[:1] + w.crossings[3:],
                          (merged,) + w.segments[3:])
            continue

        # open word: segment i sits between crossings i-1 and i
        n = len(w.crossings)
        hit = next((i for i, seg in enumerate(w.segments) if _is_bigon(seg)), None)
        if hit is None:
            return w
        if 1 <= hit <= n - 1:
            prev, nxt = w.segments[hit - 1], w.segments[hit + 1]
            merged = Seg(prev.face, prev.slot_in, nxt.slot_out)
            w = CurveWord(w.crossings[:hit - 1] + w.crossings[hit + 1:],
                          w.segments[:hit - 1] + (merged,) + w.segments[hit + 2:],
                          w.start, w.end)
            if not w.crossings:
                raise CurveError("open word cancelled completely (contractible)")
            continue
        # bigon on a wrap seam: the first explicit crossing cancels into the
        # spiral; replace the seam by the pure step behind the tail crossing
        if hit == 0:
            w = w.reversed()
            w = _cancel_end_seam(s, w)
            w = w.reversed()
        else:
            w = _cancel_end_seam(s, w)


def _cancel_end_seam(s: DissectedOrbifold, w: CurveWord) -> CurveWord:
    seam = w.segments[-1]
    if w.end.kind != "wrap":
        raise CurveError("bigon against a green endpoint cannot happen")
    if len(w) < 2:
        raise CurveError("wrap word cancelled into its spiral completely")
    f2, y = s.other_side(seam.face, seam.slot_in)
    if s.face_by_id[f2].corner_vertices[y] != w.end.at:
        raise CurveError("seam bigon does not sit against the wrap spiral")
    prev = w.segments[-2]
    if prev.face != f2:
        raise CurveError("seam cancellation across mismatched faces")
    merged = Seg(f2, prev.slot_in, (y - 1) % len(s.face_by_id[f2]))
    return CurveWord(w.crossings[:-1], w.segments[:-2] + (merged,), w.start, w.end)


def _normalize_wraps(s: DissectedOrbifold, w: CurveWord) -> CurveWord:
    """Absorb explicit crossings that belong to a wrap spiral."""
    def absorb_end(word: CurveWord) -> CurveWord:
        while word.end is not None and word.end.kind == "wrap" and len(word) >= 1:
            seam = word.segments[-1]
            f = s.face_by_id[seam.face]
            corner = f.corner_vertices[seam.slot_in]
            if seam.slot_out != (seam.slot_in - 1) % len(f) or corner != word.end.at:
                break
            word = CurveWord(word.crossings[:-1], word.segments[:-1], word.start, word.end)
            if not word.crossings:
                raise CurveError("wrap word reduced to nothing but its spiral")
        return word

    w = absorb_end(w)
    w = absorb_end(w.reversed()).reversed()
    return w


def winding(s: DissectedOrbifold, w: CurveWord) -> int:
    """Total winding of a reduced closed word (sum of segment windings)."""
    if not w.closed:
        raise CurveError("winding is defined for closed words")
    if not is_reduced(w):
        raise CurveError("winding needs a reduced word")
    return sum(segment_winding(s, seg.face, seg.slot_in, seg.slot_out)
               for _, seg in internal_segments(w))


@dataclass(frozen=True)
class GradedCurve:
    word: CurveWord
    n: tuple[int, ...]

    def reversed(self) -> "GradedCurve":
        return GradedCurve(self.word.reversed(), tuple(reversed(self.n)))

    def rotated(self, k: int) -> "GradedCurve":
        m = len(self.n)
        k %= m
        return GradedCurve(self.word.rotated(k), self.n[k:] + self.n[:k])

    def shifted(self, t: int) -> "GradedCurve":
        return GradedCurve(self.word, tuple(v + t for v in self.n))


def grade(s: DissectedOrbifold, w: CurveWord, n1: int = 0) -> GradedCurve:
    """Propagate the grading from value ``n1`` at the first crossing."""
    if not is_reduced(w):
        raise CurveError("grading needs a reduced word")
    if len(w) == 0:
        raise CurveError("cannot grade an empty word")
    if w.closed:
        total = winding(s, w)
        if total != 0:
            raise CurveError(f"not gradable: winding {total}")
    n = [n1]
    if w.closed:
        for seg in w.segments[:-1]:
            n.append(n[-1] + segment_winding(s, seg.face, seg.slot_in, seg.slot_out))
    else:
        for seg in w.segments[1:-1]:
            n.append(n[-1] + segment_winding(s, seg.face, seg.slot_in, seg.slot_out))
    return GradedCurve(w, tuple(n))


def closed_canonical(g: GradedCurve) -> GradedCurve:
    """Lexicographically least rotation of a closed graded word."""
    if not g.word.closed:
        raise CurveError("canonical rotation applies to closed words")
    best = None
    for k in range(len(g.n)):
        cand = g.rotated(k)
        key = (cand.word.shape(), cand.n)
        if best is None or key < best[0]:
            best = (key, cand)
    return best[1]


def word_canonical(w: CurveWord) -> CurveWord:
    if not w.closed:
        return w
    best = min((w.rotated(k) for k in range(len(w))), key=lambda x: x.shape())
    return best
