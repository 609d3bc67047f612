"""Quiver presentations, exact path arithmetic, and skew group algebras.

Composition is written in function order: the path ``(a, b)`` traverses
arrow ``a`` first and prints as ``b*a``.  Relations are reduced by
rewriting the length-lex leading monomial of each relation; for gentle
and skew-gentle presentations (monomials and the binomials produced by
``bar_presentation``) this rewriting system is confluent, which is
asserted by a local-confluence self-test at construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .errors import AlgebraError
from .fields import QQ, Field

Path = tuple[str, tuple[str, ...]]  # (source vertex, arrows in traversal order)

DIM_GUARD = 20000


class AlgebraElement:
    """A k-linear combination of paths in normal form."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "QuiverPresentation", terms: dict):
        self.algebra = algebra
        self.terms = {p: c for p, c in terms.items() if c}

    def __add__(self, other):
        if isinstance(other, AlgebraElement):
            out = dict(self.terms)
            for p, c in other.terms.items():
                out[p] = out.get(p, self.algebra.field.zero) + c
            return AlgebraElement(self.algebra, out)
        return NotImplemented

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AlgebraElement(self.algebra, {p: -c for p, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.mult(self, other)
        return AlgebraElement(self.algebra, {p: c * other for p, c in self.terms.items()})

    def __rmul__(self, scalar):
        return AlgebraElement(self.algebra, {p: scalar * c for p, c in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def scalar_at(self, v: str):
        """Coefficient of the trivial path at vertex ``v``."""
        return self.terms.get((v, ()), self.algebra.field.zero)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for p, c in sorted(self.terms.items()):
            name = path_str(p)
            if c == 1:
                bits.append(name)
            elif c == -1:
                bits.append(f"-{name}")
            else:
                bits.append(f"{c}*{name}")
        return " + ".join(bits).replace("+ -", "- ")


def path_str(p: Path) -> str:
    v, arrows = p
    return f"e({v})" if not arrows else "*".join(reversed(arrows))


class QuiverPresentation:
    """A quiver with a confluent list of relations over an exact field."""

    def __init__(self, vertices, arrows, relations, field: Field = QQ, name=""):
        if field.char == 2:
            raise AlgebraError("characteristic 2 rejected")
        self.name = name
        self.field = field
        self.vertices = sorted(vertices)
        self.arrows = {a: (s, t) for a, (s, t) in arrows.items()}
        for a, (s, t) in self.arrows.items():
            if s not in vertices or t not in vertices:
                raise AlgebraError(f"arrow {a!r} has unknown endpoint")
        self.relations = [self._check_relation(r) for r in relations]
        self._nf_cache: dict[Path, dict] = {}
        self._basis_cache = None
        self._build_rules()

    # -- structure -----------------------------------------------------

    def src(self, arrow: str) -> str:
        return self.arrows[arrow][0]

    def tgt(self, arrow: str) -> str:
        return self.arrows[arrow][1]

    def path_src(self, p: Path) -> str:
        return p[0]

    def path_tgt(self, p: Path) -> str:
        return self.tgt(p[1][-1]) if p[1] else p[0]

    def _check_relation(self, rel):
        rel = [(self.field.scalar(c), tuple(arrows)) for c, arrows in rel if c]
        if not rel:
            raise AlgebraError("empty relation")
        srcs = {self.src(arrows[0]) for _, arrows in rel}
        tgts = {self.tgt(arrows[-1]) for _, arrows in rel}
        if len(srcs) != 1 or len(tgts) != 1:
            raise AlgebraError(f"relation mixes parallel classes: {rel}")
        for _, arrows in rel:
            for x, y in zip(arrows, arrows[1:]):
                if self.tgt(x) != self.src(y):
                    raise AlgebraError(f"non-composable word in relation: {arrows}")
            if max(len(a) for _, a in rel) < 2:
                raise AlgebraError("relations must contain a monomial of length >= 2")
        return rel

    # -- rewriting -----------------------------------------------------

    def _build_rules(self):
        self._rules: dict[tuple[str, ...], list] = {}
        for rel in self.relations:
            lead = max(rel, key=lambda t: (len(t[1]), t[1]))
            lc, lw = lead
            repl = [(-c / lc, w) for c, w in rel if w != lw]
            if lw in self._rules and self._rules[lw] != repl:
                raise AlgebraError(f"conflicting rules for leading word {lw}")
            self._rules[lw] = repl
        self._max_lead = max((len(w) for w in self._rules), default=0)
        self._confluence_self_test()

    def _reduce_word(self, p: Path) -> dict:
        """Normal form of a single path as {path: coeff}."""
        if p in self._nf_cache:
            return self._nf_cache[p]
        work = {p: self.field.one}
        out: dict[Path, object] = {}
        while work:
            q, coeff = work.popitem()
            v, arrows = q
            hit = None
            for i in range(len(arrows)):
                for L in range(2, self._max_lead + 1):
                    w = arrows[i:i + L]
                    if len(w) == L and w in self._rules:
                        hit = (i, w)
                        break
                if hit:
                    break
            if hit is None:
                out[q] = out.get(q, self.field.zero) + coeff
                continue
            i, w = hit
            for c, rw in self._rules[w]:
                np = (v, arrows[:i] + rw + arrows[i + len(w):])
                work[np] = work.get(np, self.field.zero) + coeff * c
        out = {q: c for q, c in out.items() if c}
        self._nf_cache[p] = out
        return out

    def _confluence_self_test(self):
        words = list(self._rules)
        for w1, w2 in itertools.product(words, words):
            # overlap: a proper suffix of w1 equals a proper prefix of w2
            for k in range(1, min(len(w1), len(w2))):
                if w1[-k:] != w2[:k]:
                    continue
                overlap = w1 + w2[k:]
                v = self.src(overlap[0])
                a = self._expand_rule(v, overlap, 0, w1)
                b = self._expand_rule(v, overlap, len(w1) - k, w2)
                if a != b:
                    raise AlgebraError(
                        f"relations not confluent at overlap {overlap}")

    def _expand_rule(self, v, arrows, i, w):
        acc: dict[Path, object] = {}
        for c, rw in self._rules[w]:
            q = (v, arrows[:i] + rw + arrows[i + len(w):])
            for p2, c2 in self._reduce_word(q).items():
                acc[p2] = acc.get(p2, self.field.zero) + c * c2
        return {p: c for p, c in acc.items() if c}

    # -- elements ------------------------------------------------------

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    def unit(self, v: str) -> AlgebraElement:
        if v not in self.vertices:
            raise AlgebraError(f"unknown vertex {v!r}")
        return AlgebraElement(self, {(v, ()): self.field.one})

    def arrow_elem(self, a: str) -> AlgebraElement:
        return self.path_elem(self.src(a), (a,))

    def path_elem(self, src: str, arrows, coeff=1) -> AlgebraElement:
        arrows = tuple(arrows)
        if arrows and self.src(arrows[0]) != src:
            raise AlgebraError(f"path source mismatch at {arrows}")
        for x, y in zip(arrows, arrows[1:]):
            if self.tgt(x) != self.src(y):
                raise AlgebraError(f"non-composable path {arrows}")
        nf = self._reduce_word((src, arrows))
        c = self.field.scalar(coeff)
        return AlgebraElement(self, {p: c * c2 for p, c2 in nf.items()})

    def mult(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        """x*y applies y first (so arrows concatenate as y then x)."""
        if x.algebra is not self or y.algebra is not self:
            raise AlgebraError("elements from different presentations")
        acc: dict[Path, object] = {}
        for (vx, ax), cx in x.terms.items():
            for (vy, ay), cy in y.terms.items():
                if self.path_tgt((vy, ay)) != vx:
                    continue
                for p, c in self._reduce_word((vy, ay + ax)).items():
                    acc[p] = acc.get(p, self.field.zero) + cx * cy * c
        return AlgebraElement(self, acc)

    # -- basis ----------------------------------------------------------

    def basis(self, guard: int = DIM_GUARD) -> list[Path]:
        if self._basis_cache is not None:
            return self._basis_cache
        out_arrows: dict[str, list[str]] = {v: [] for v in self.vertices}
        for a in sorted(self.arrows):
            out_arrows[self.src(a)].append(a)
        basis = []
        frontier: list[Path] = [(v, ()) for v in self.vertices]
        while frontier:
            basis.extend(frontier)
            if len(basis) > guard:
                raise AlgebraError(f"not finite dimensional at guard {guard}")
            nxt = []
            for v, arrows in frontier:
                here = self.tgt(arrows[-1]) if arrows else v
                for a in out_arrows[here]:
                    cand = arrows + (a,)
                    # suffix factors involving the new arrow must avoid rules
                    lo = max(0, len(cand) - self._max_lead)
                    if any(cand[i:j] in self._rules
                           for i in range(lo, len(cand))
                           for j in range(i + 2, len(cand) + 1)):
                        continue
                    nxt.append((v, cand))
            frontier = nxt
        self._basis_cache = sorted(basis, key=lambda p: (len(p[1]), p))
        return self._basis_cache

    def dim(self) -> int:
        return len(self.basis())

    def hom_basis(self, v: str, w: str) -> list[Path]:
        """Basis paths from ``v`` to ``w`` (i.e. of e_w A e_v)."""
        return [p for p in self.basis()
                if p[0] == v and self.path_tgt(p) == w]

    def local_inverse(self, x: AlgebraElement, v: str) -> AlgebraElement:
        """Inverse of a unit of e_v A e_v (trivial-path coefficient != 0)."""
        s = x.scalar_at(v)
        if not s:
            raise AlgebraError("not a unit of the local algebra")
        r = x - s * self.unit(v)      # radical part
        inv = self.unit(v) * (self.field.one / s)
        term = inv
        for _ in range(len(self.basis())):
            term = -(self.field.one / s) * (term * r)
            if not term:
                break
            inv = inv + term
        return inv

    # -- reporting -------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"id": a, "src": s, "tgt": t}
                       for a, (s, t) in sorted(self.arrows.items())],
            "relations": [[[str(c), list(w)] for c, w in rel] for rel in self.relations],
        }

    def format_text(self) -> str:
        lines = [f"vertices: {', '.join(self.vertices)}"]
        for a, (s, t) in sorted(self.arrows.items()):
            lines.append(f"arrow {a}: {s} -> {t}")
        for rel in self.relations:
            lines.append("relation: " + " + ".join(
                f"{'' if c == 1 else str(c) + '*'}{'*'.join(reversed(w))}" for c, w in rel))
        return "\n".join(lines)


@dataclass
class SkewGentleTriple:
    """(Q, I, Sp): quiver, monomial relations, special loops."""

    presentation: QuiverPresentation
    special: tuple[str, ...]
    corner_arrows: dict = dc_field(default_factory=dict)  # (dart, dart) -> arrow id

    def gentle_pair(self) -> QuiverPresentation:
        """The gentle companion (Q, I + {eps^2 for eps in Sp})."""
        rels = [[(1, w)] for rel in self.presentation.relations for _, w in rel]
        rels += [[(1, (e, e))] for e in self.special]
        return QuiverPresentation(self.presentation.vertices, self.presentation.arrows,
                                  rels, self.presentation.field)

    def algebra(self) -> QuiverPresentation:
        """kQ / (I + {eps^2 - eps}): the skew-gentle algebra itself."""
        rels = [rel for rel in self.presentation.relations]
        rels = [[(1, w) for _, w in rel] for rel in rels]
        rels += [[(1, (e, e)), (-1, (e,))] for e in self.special]
        return QuiverPresentation(self.presentation.vertices, self.presentation.arrows,
                                  rels, self.presentation.field)


def gentle_check(p: QuiverPresentation):
    """All four gentle axioms; returns (ok, witness or None)."""
    rel_pairs = set()
    for rel in p.relations:
        if len(rel) != 1 or len(rel[0][1]) != 2:
            return False, "not a monomial presentation"
        rel_pairs.add(rel[0][1])
    outs: dict[str, list[str]] = {v: [] for v in p.vertices}
    ins: dict[str, list[str]] = {v: [] for v in p.vertices}
    for a, (s, t) in p.arrows.items():
        outs[s].append(a)
        ins[t].append(a)
    for v in p.vertices:
        if len(outs[v]) > 2:
            return False, f"axiom 1: vertex {v} has {len(outs[v])} outgoing arrows"
        if len(ins[v]) > 2:
            return False, f"axiom 1: vertex {v} has {len(ins[v])} incoming arrows"
    for a in p.arrows:
        after_in = [b for b in outs[p.tgt(a)] if (a, b) in rel_pairs]
        after_out = [b for b in outs[p.tgt(a)] if (a, b) not in rel_pairs]
        if len(after_in) > 1:
            return False, f"axiom 2: arrow {a} followed by two relation partners"
        if len(after_out) > 1:
            return False, f"axiom 2: arrow {a} followed by two non-relation partners"
        before_in = [b for b in ins[p.src(a)] if (b, a) in rel_pairs]
        before_out = [b for b in ins[p.src(a)] if (b, a) not in rel_pairs]
        if len(before_in) > 1:
            return False, f"axiom 3: arrow {a} preceded by two relation partners"
        if len(before_out) > 1:
            return False, f"axiom 3: arrow {a} preceded by two non-relation partners"
    try:
        p.basis()
    except AlgebraError as exc:
        return False, f"axiom 4: {exc}"
    return True, None


def skew_gentle_from_dissection(s, field: Field = QQ) -> SkewGentleTriple:
    """The skew-gentle triple of a dissected orbifold surface.

    Vertices are the arcs; one arrow per clockwise-consecutive pair of
    arc-ends at a common vertex; special loops at orbifold points;
    relations from consecutive triples around marked points and
    punctures (never around orbifold points).
    """
    vertices = sorted(s.arcs)
    arrows: dict[str, tuple[str, str]] = {}
    corner_arrows: dict = {}

    def name_arrow(src, tgt):
        base = f"{src}>{tgt}"
        name = base
        k = 1
        while name in arrows:
            k += 1
            name = f"{base}#{k}"
        return name

    for v in sorted(s.vertices):
        for d1, d2 in s.corner_pairs(v):
            a = name_arrow(d1[1], d2[1])
            arrows[a] = (d1[1], d2[1])
            corner_arrows[(d1, d2)] = a

    special = []
    relations = []
    for v in sorted(s.vertices):
        pairs = s.corner_pairs(v)
        if s.vertices[v] == "orbifold":
            special.extend(corner_arrows[pr] for pr in pairs)
            continue
        consecutive = list(zip(pairs, pairs[1:]))
        if s.vertices[v] != "boundary-marked" and pairs:
            consecutive.append((pairs[-1], pairs[0]))
        for first, second in consecutive:
            assert first[1] == second[0]
            relations.append([(1, (corner_arrows[first], corner_arrows[second]))])

    pres = QuiverPresentation(vertices, arrows, relations, field)
    return SkewGentleTriple(pres, tuple(sorted(special)), corner_arrows)


@dataclass
class BarPresentation:
    """Q-bar: the basic presentation splitting each special-loop vertex."""

    presentation: QuiverPresentation
    parts: dict            # base vertex -> [part vertices] ([v] or [v, v'])
    copies: dict           # (base arrow, src part index, tgt part index) -> id
    base_arrows: dict      # new arrow id -> (base arrow, ps, pt)


def bar_presentation(t: SkewGentleTriple) -> BarPresentation:
    """Split special-loop vertices by the idempotents (1 +- eps)/2.

    Each special vertex v becomes v, v'; arrows through special ends are
    copied over the parts (suffix ' per primed part, target first), and
    each relation whose middle vertex is special becomes the binomial
    running through both parts.  Requires char(k) != 2.
    """
    p = t.presentation
    if p.field.char == 2:
        raise AlgebraError("bar presentation needs characteristic != 2")
    special_v = {p.src(e) for e in t.special}
    parts = {v: ([v, v + "'"] if v in special_v else [v]) for v in p.vertices}
    vertices = [w for v in p.vertices for w in parts[v]]

    copies: dict[tuple[str, int, int], str] = {}
    base_arrows: dict[str, tuple[str, int, int]] = {}
    arrows: dict[str, tuple[str, str]] = {}
    for a in sorted(p.arrows):
        if a in t.special:
            continue
        s, w = p.arrows[a]
        for pt in range(len(parts[w])):
            for ps in range(len(parts[s])):
                name = a + "'" * (2 * pt + ps if len(parts[s]) > 1 and len(parts[w]) > 1
                                  else pt + ps)
                copies[(a, ps, pt)] = name
                base_arrows[name] = (a, ps, pt)
                arrows[name] = (parts[s][ps], parts[w][pt])

    relations = []
    for rel in p.relations:
        (_, (a, b)), = rel
        u, v = p.src(a), p.tgt(a)
        w = p.tgt(b)
        for pu in range(len(parts[u])):
            for pw in range(len(parts[w])):
                if v in special_v:
                    relations.append([
                        (1, (copies[(a, pu, 0)], copies[(b, 0, pw)])),
                        (1, (copies[(a, pu, 1)], copies[(b, 1, pw)])),
                    ])
                else:
                    relations.append([(1, (copies[(a, pu, 0)], copies[(b, 0, pw)]))])

    pres = QuiverPresentation(vertices, arrows, relations, p.field)
    return BarPresentation(pres, parts, copies, base_arrows)


class SkewGroupAlgebra:
    """A-tilde x Z2 with multiplication (x (x) g)(y (x) h) = x g(y) (x) gh."""

    def __init__(self, pres: QuiverPresentation, sigma_vertices: dict, sigma_arrows: dict):
        if pres.field.char == 2:
            raise AlgebraError("skew group algebra needs characteristic != 2")
        for v, w in sigma_vertices.items():
            if sigma_vertices.get(w) != v:
                raise AlgebraError("sigma is not an involution on vertices")
        for a, b in sigma_arrows.items():
            if sigma_arrows.get(b) != a:
                raise AlgebraError("sigma is not an involution on arrows")
        self.pres = pres
        self.sigma_v = dict(sigma_vertices)
        self.sigma_a = dict(sigma_arrows)

    def sigma_elem(self, x: AlgebraElement) -> AlgebraElement:
        out = self.pres.zero()
        for (v, arrows), c in x.terms.items():
            out = out + self.pres.path_elem(self.sigma_v[v], tuple(self.sigma_a[a] for a in arrows), c)
        return out

    # Elements: dict g in {0,1} -> AlgebraElement.
    def elem(self, part0: AlgebraElement, part1: AlgebraElement):
        return {0: part0, 1: part1}

    def zero(self):
        return {0: self.pres.zero(), 1: self.pres.zero()}

    def add(self, x, y):
        return {g: x[g] + y[g] for g in (0, 1)}

    def scale(self, c, x):
        return {g: c * x[g] for g in (0, 1)}

    def mult(self, x, y):
        out = self.zero()
        for g in (0, 1):
            for h in (0, 1):
                yy = y[h] if g == 0 else self.sigma_elem(y[h])
                out[(g + h) % 2] = out[(g + h) % 2] + x[g] * yy
        return out

    def equal(self, x, y):
        return x[0] == y[0] and x[1] == y[1]

    def is_zero(self, x):
        return not x[0] and not x[1]

    def basis(self):
        return [(p, g) for g in (0, 1) for p in self.pres.basis()]


def morita_idempotents(sga: SkewGroupAlgebra):
    """Primitive orthogonal idempotents, one Morita class each.

    Swapped vertex pairs {v, sigma v} give e_v (x) 1 for the smaller
    representative; sigma-fixed vertices give (e_v (x) 1 +- e_v (x) g)/2.
    """
    p = sga.pres
    half = p.field.one / p.field.scalar(2)
    out = []
    for v in p.vertices:
        sv = sga.sigma_v[v]
        if sv == v:
            e1 = sga.elem(half * p.unit(v), half * p.unit(v))
            e2 = sga.elem(half * p.unit(v), -half * p.unit(v))
            out.append((f"{v}:+", e1))
            out.append((f"{v}:-", e2))
        elif v < sv:
            out.append((f"{v}", sga.elem(p.unit(v), p.zero())))
    return out


def presentations_isomorphic(p1: QuiverPresentation, p2: QuiverPresentation,
                             special1=(), special2=()) -> dict | None:
    """Search for a quiver isomorphism matching relations and special loops.

    Returns {'vertices': map, 'arrows': map} or None.  Relations compare
    as multisets of normalized polynomials (leading coefficient one).
    """
    if len(p1.vertices) != len(p2.vertices) or len(p1.arrows) != len(p2.arrows):
        return None
    if len(special1) != len(special2) or len(p1.relations) != len(p2.relations):
        return None

    def rel_key(pres, rel, amap):
        mapped = sorted((tuple(amap[x] for x in w), c) for c, w in rel)
        lead = mapped[-1][1]
        return tuple((w, c / lead) for w, c in mapped)

    def signature(pres, special):
        outs = {v: 0 for v in pres.vertices}
        ins = {v: 0 for v in pres.vertices}
        sp = {pres.src(e) for e in special}
        for a, (s, t) in pres.arrows.items():
            outs[s] += 1
            ins[t] += 1
        return {v: (outs[v], ins[v], v in sp) for v in pres.vertices}

    sig1, sig2 = signature(p1, special1), signature(p2, special2)
    verts2_by_sig: dict = {}
    for v in p2.vertices:
        verts2_by_sig.setdefault(sig2[v], []).append(v)

    arrows1 = sorted(p1.arrows)

    def backtrack(i, vmap, amap, used):
        if i == len(arrows1):
            if {amap[e] for e in special1} != set(special2):
                return None
            rels1 = sorted(rel_key(p1, r, amap) for r in p1.relations)
            rels2 = sorted(rel_key(p2, r, {a: a for a in p2.arrows}) for r in p2.relations)
            return {"vertices": dict(vmap), "arrows": dict(amap)} if rels1 == rels2 else None
        a = arrows1[i]
        s, t = p1.arrows[a]
        for b in sorted(p2.arrows):
            if b in used:
                continue
            sb, tb = p2.arrows[b]
            if sig1[s] != sig2[sb] or sig1[t] != sig2[tb]:
                continue
            if vmap.get(s, sb) != sb or vmap.get(t, tb) != tb:
                continue
            vmap2 = dict(vmap)
            vmap2[s], vmap2[t] = sb, tb
            if len(set(vmap2.values())) != len(vmap2):
                continue
            amap[a] = b
            used.add(b)
            hit = backtrack(i + 1, vmap2, amap, used)
            if hit:
                return hit
            del amap[a]
            used.discard(b)
        return None

    if not arrows1:
        # vertex-only matching
        for perm in itertools.permutations(p2.vertices):
            vmap = dict(zip(p1.vertices, perm))
            if all(sig1[v] == sig2[vmap[v]] for v in p1.vertices):
                return {"vertices": vmap, "arrows": {}}
        return None
    return backtrack(0, {}, {}, set())
