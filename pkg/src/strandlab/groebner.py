"""Buchberger's algorithm for submodules of graded free modules.

Elements of a free module ⊕ S·E_c are dicts {(component, exponent): coeff}.
Orders are position-over-term by default; Schreyer orders induced by a
Groebner basis are available for iterated syzygy computation.
"""

from __future__ import annotations

import heapq
from functools import lru_cache

from .grading import GradingSpec, Multidegree, deg_add, is_effective, deg_sub, \
    effective_degrees_up_to
from .poly import Poly, PolyRing

ModElem = dict  # {(component, exponent tuple): coefficient}


# ---------------------------------------------------------------------------
# element arithmetic

def elem_is_zero(e: ModElem) -> bool:
    return not e


def elem_add_scaled(ring: PolyRing, acc: ModElem, c, u: tuple[int, ...], g: ModElem):
    """acc += c * x^u * g, in place."""
    f = ring.field
    for (comp, v), d in g.items():
        key = (comp, tuple(a + b for a, b in zip(u, v)))
        s = f.add(acc.get(key, f.zero), f.mul(c, d))
        if s:
            acc[key] = s
        else:
            acc.pop(key, None)


def elem_scale(ring: PolyRing, c, g: ModElem) -> ModElem:
    f = ring.field
    if not c:
        return {}
    return {k: f.mul(c, d) for k, d in g.items()}


def elem_degree(ring: PolyRing, gen_degrees: list[Multidegree], e: ModElem) -> Multidegree | None:
    """Common A-degree of all terms, or None if zero or inhomogeneous."""
    deg = None
    for (comp, u) in e:
        d = deg_add(gen_degrees[comp], ring.spec.exponent_degree(u))
        if deg is None:
            deg = d
        elif d != deg:
            return None
    return deg


def elem_from_poly(p: Poly, component: int = 0) -> ModElem:
    return {(component, u): c for u, c in p.terms.items()}


def elem_to_polys(ring: PolyRing, ncomp: int, e: ModElem) -> list[Poly]:
    cols = [dict() for _ in range(ncomp)]
    for (comp, u), c in e.items():
        cols[comp][u] = c
    return [Poly(ring, t) for t in cols]


# ---------------------------------------------------------------------------
# module monomial orders

class POTOrder:
    """Position over term: lower component wins, ties by the ring order."""

    def __init__(self, ring: PolyRing):
        self.ring = ring

    def key(self, comp: int, u: tuple[int, ...]):
        return (-comp, self.ring.mono_key(u))


class SchreyerOrder:
    """Order induced on syzygies by the lead terms of a Groebner basis."""

    def __init__(self, prev_order, leads: list[tuple[int, tuple[int, ...]]]):
        self.prev = prev_order
        self.leads = leads

    def key(self, comp: int, u: tuple[int, ...]):
        lc, lu = self.leads[comp]
        return (self.prev.key(lc, tuple(a + b for a, b in zip(u, lu))), -comp)


def elem_lead(order, e: ModElem) -> tuple[int, tuple[int, ...]]:
    return max(e, key=lambda t: order.key(*t))


# ---------------------------------------------------------------------------
# reduction

def _divides(u: tuple[int, ...], v: tuple[int, ...]) -> bool:
    return all(a <= b for a, b in zip(u, v))


def reduce_full(ring: PolyRing, e: ModElem, order, basis: list[ModElem],
                by_comp: dict[int, list[int]], track: bool = False):
    """Fully reduce e against basis (all terms).  Returns (normal form,
    cofactors) where cofactors[i] is a dict {exponent: coeff} with
    e = sum_i cofactor_i * basis_i + nf."""
    f = ring.field
    work = dict(e)
    result: ModElem = {}
    cof: list[dict] = [dict() for _ in basis] if track else []
    leads = [elem_lead(order, g) for g in basis]
    while work:
        comp, u = max(work, key=lambda t: order.key(*t))
        coeff = work.pop((comp, u))
        hit = None
        for gi in by_comp.get(comp, ()):  # first divisor in fixed order
            if _divides(leads[gi][1], u):
                hit = gi
                break
        if hit is None:
            result[(comp, u)] = coeff
            continue
        g = basis[hit]
        lu = leads[hit][1]
        lc = g[leads[hit]]
        q = f.div(coeff, lc)
        w = tuple(a - b for a, b in zip(u, lu))
        work[(comp, u)] = coeff  # subtract q x^w g, cancelling this term
        elem_add_scaled(ring, work, f.neg(q), w, g)
        if track:
            cc = cof[hit]
            s = f.add(cc.get(w, f.zero), q)
            if s:
                cc[w] = s
            else:
                cc.pop(w, None)
    return result, cof


# ---------------------------------------------------------------------------
# Groebner bases

class GroebnerBasis:
    """A reduced (unless Schreyer) Groebner basis of a submodule of a free
    graded module."""

    def __init__(self, ring: PolyRing, gen_degrees: list[Multidegree],
                 elements: list[ModElem], order):
        self.ring = ring
        self.gen_degrees = list(gen_degrees)
        self.elements = elements
        self.order = order
        self.leads = [elem_lead(order, g) for g in elements]
        self.by_comp: dict[int, list[int]] = {}
        for i, (c, _) in enumerate(self.leads):
            self.by_comp.setdefault(c, []).append(i)

    def normal_form(self, e: ModElem) -> ModElem:
        nf, _ = reduce_full(self.ring, e, self.order, self.elements, self.by_comp)
        return nf

    def contains(self, e: ModElem) -> bool:
        return not self.normal_form(e)

    def element_degrees(self) -> list[Multidegree]:
        return [elem_degree(self.ring, self.gen_degrees, g) for g in self.elements]

    def spair_reduces_to_zero(self, i: int, j: int) -> bool:
        s = _spair(self.ring, self.order, self.elements[i], self.elements[j],
                   self.leads[i], self.leads[j])
        if s is None:
            return True
        return not self.normal_form(s)


def _spair(ring, order, g1, g2, lead1, lead2):
    """S-element of g1, g2, or None if lead components differ."""
    f = ring.field
    (c1, u1), (c2, u2) = lead1, lead2
    if c1 != c2:
        return None
    w = tuple(max(a, b) for a, b in zip(u1, u2))
    s: ModElem = {}
    elem_add_scaled(ring, s, f.inv(g1[lead1]), deg_sub(w, u1), g1)
    elem_add_scaled(ring, s, f.neg(f.inv(g2[lead2])), deg_sub(w, u2), g2)
    return s


def buchberger(ring: PolyRing, gen_degrees: list[Multidegree],
               gens: list[ModElem], order=None) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule generated by `gens`."""
    if order is None:
        order = POTOrder(ring)
    basis = [dict(g) for g in gens if g]
    # make monic for determinism
    f = ring.field
    for i, g in enumerate(basis):
        lc = g[elem_lead(order, g)]
        if lc != f.one:
            basis[i] = elem_scale(ring, f.inv(lc), g)
    leads = [elem_lead(order, g) for g in basis]
    by_comp: dict[int, list[int]] = {}
    for i, (c, _) in enumerate(leads):
        by_comp.setdefault(c, []).append(i)

    heap: list = []
    counter = 0

    def push_pairs(j):
        nonlocal counter
        cj, uj = leads[j]
        for i in range(j):
            ci, ui = leads[i]
            if ci != cj:
                continue
            w = tuple(max(a, b) for a, b in zip(ui, uj))
            heapq.heappush(heap, (ring.mono_weight(w), counter, i, j))
            counter += 1

    for j in range(len(basis)):
        push_pairs(j)

    while heap:
        _, _, i, j = heapq.heappop(heap)
        s = _spair(ring, order, basis[i], basis[j], leads[i], leads[j])
        if s is None:
            continue
        nf, _ = reduce_full(ring, s, order, basis, by_comp)
        if not nf:
            continue
        lc = nf[elem_lead(order, nf)]
        nf = elem_scale(ring, f.inv(lc), nf)
        basis.append(nf)
        leads.append(elem_lead(order, nf))
        by_comp.setdefault(leads[-1][0], []).append(len(basis) - 1)
        push_pairs(len(basis) - 1)

    return _interreduce(ring, gen_degrees, basis, order)


def _interreduce(ring, gen_degrees, basis, order) -> GroebnerBasis:
    f = ring.field
    idx = sorted(range(len(basis)), key=lambda i: order.key(*elem_lead(order, basis[i])))
    kept: list[ModElem] = []
    kept_leads: list[tuple[int, tuple[int, ...]]] = []
    for i in idx:
        lc, lu = elem_lead(order, basis[i])
        if any(c == lc and _divides(u, lu) for c, u in kept_leads):
            continue
        kept.append(basis[i])
        kept_leads.append((lc, lu))
    # tail-reduce each against the others
    reduced: list[ModElem] = []
    for i, g in enumerate(kept):
        others = kept[:i] + kept[i + 1:]
        by_comp: dict[int, list[int]] = {}
        for k, og in enumerate(others):
            by_comp.setdefault(elem_lead(order, og)[0], []).append(k)
        nf, _ = reduce_full(ring, g, order, others, by_comp)
        lc = nf[elem_lead(order, nf)]
        reduced.append(elem_scale(ring, f.inv(lc), nf))
    reduced.sort(key=lambda g: order.key(*elem_lead(order, g)))
    return GroebnerBasis(ring, gen_degrees, reduced, order)


def syzygies(G: GroebnerBasis) -> GroebnerBasis:
    """First syzygies of the elements of G (Schreyer's algorithm).

    The result lives in a free module with one generator per element of G
    (degrees = the degrees of those elements) and is a Groebner basis with
    respect to the induced Schreyer order.
    """
    ring = G.ring
    f = ring.field
    degs = G.element_degrees()
    syz: list[ModElem] = []
    m = len(G.elements)
    for j in range(m):
        cj, uj = G.leads[j]
        for i in range(j):
            ci, ui = G.leads[i]
            if ci != cj:
                continue
            w = tuple(max(a, b) for a, b in zip(ui, uj))
            wi, wj = deg_sub(w, ui), deg_sub(w, uj)
            s: ModElem = {}
            ai = f.inv(G.elements[i][G.leads[i]])
            aj = f.inv(G.elements[j][G.leads[j]])
            elem_add_scaled(ring, s, ai, wi, G.elements[i])
            elem_add_scaled(ring, s, f.neg(aj), wj, G.elements[j])
            nf, cof = reduce_full(ring, s, G.order, G.elements, G.by_comp, track=True)
            if nf:
                raise AssertionError("S-pair of a Groebner basis did not reduce to zero")
            col: ModElem = {(i, wi): ai, (j, wj): f.neg(aj)}
            for k, q in enumerate(cof):
                for u, c in q.items():
                    key = (k, u)
                    sval = f.sub(col.get(key, f.zero), c)
                    if sval:
                        col[key] = sval
                    else:
                        col.pop(key, None)
            if col:
                syz.append(col)
    order = SchreyerOrder(G.order, G.leads)
    syz.sort(key=lambda g: order.key(*elem_lead(order, g)))
    return GroebnerBasis(ring, degs, syz, order)


# ---------------------------------------------------------------------------
# module presentations and graded pieces

class GradedPiece:
    """A k-basis of M_a given by standard monomials, with coordinates."""

    def __init__(self, presentation: "ModulePresentation", degree: Multidegree,
                 monomials: list[tuple[int, tuple[int, ...]]]):
        self.presentation = presentation
        self.degree = degree
        self.monomials = monomials
        self.index = {m: i for i, m in enumerate(monomials)}

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def coords(self, e: ModElem) -> list:
        """Coordinates of the image of e in M_a (reduces e first)."""
        f = self.presentation.ring.field
        nf = self.presentation.groebner().normal_form(e)
        v = [f.zero] * len(self.monomials)
        for key, c in nf.items():
            v[self.index[key]] = c
        return v


class ModulePresentation:
    """M = coker(relations -> ⊕ S(-d_c)), with cached Groebner data."""

    def __init__(self, ring: PolyRing, gen_degrees: list[Multidegree],
                 relations: list[ModElem]):
        self.ring = ring
        self.gen_degrees = list(gen_degrees)
        self.relations = [dict(r) for r in relations if r]
        for r in self.relations:
            if elem_degree(ring, self.gen_degrees, r) is None:
                raise ValueError("relation is not homogeneous")
        self._gb: GroebnerBasis | None = None
        self._pieces: dict[Multidegree, GradedPiece] = {}

    @classmethod
    def quotient_by_ideal(cls, ring: PolyRing, gens: list[Poly]) -> "ModulePresentation":
        """S/I for the ideal generated by `gens`."""
        return cls(ring, [ring.spec.zero], [elem_from_poly(g) for g in gens if g])

    @classmethod
    def free_module(cls, ring: PolyRing, gen_degrees: list[Multidegree]) -> "ModulePresentation":
        return cls(ring, gen_degrees, [])

    @property
    def rank0(self) -> int:
        return len(self.gen_degrees)

    def groebner(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = buchberger(self.ring, self.gen_degrees, self.relations,
                                  POTOrder(self.ring))
        return self._gb

    def free_basis(self, a: Multidegree) -> list[tuple[int, tuple[int, ...]]]:
        """All monomials of the ambient free module in degree a, sorted by
        (component, lex exponent)."""
        from .grading import monomials_of_degree
        out = []
        for c, d in enumerate(self.gen_degrees):
            for u in monomials_of_degree(deg_sub(a, d), self.ring.spec):
                out.append((c, u))
        return out

    def graded_piece(self, a: Multidegree) -> GradedPiece:
        if a not in self._pieces:
            gb = self.groebner()
            std = [(c, u) for (c, u) in self.free_basis(a)
                   if not any(_divides(lu, u) for (lc, lu) in gb.leads if lc == c)]
            self._pieces[a] = GradedPiece(self, a, std)
        return self._pieces[a]

    def dim(self, a: Multidegree) -> int:
        return self.graded_piece(a).dim

    def multiplication_map(self, a: Multidegree, i: int) -> list[list]:
        """Matrix of x_i : M_a -> M_{a+deg x_i} in standard monomial bases."""
        f = self.ring.field
        src = self.graded_piece(a)
        tgt = self.graded_piece(deg_add(a, self.ring.spec.var_degrees[i]))
        cols = []
        for (c, u) in src.monomials:
            v = list(u)
            v[i] += 1
            cols.append(tgt.coords({(c, tuple(v)): f.one}))
        return [[cols[j][r] for j in range(len(cols))] for r in range(tgt.dim)]

    def is_zero_module(self) -> bool:
        return len(self.alive_generators()) == 0

    def alive_generators(self) -> list[int]:
        """Generators whose image in M is nonzero.  The remaining ones are
        redundant: all of their multiples lie in the span of the others."""
        f = self.ring.field
        gb = self.groebner()
        return [c for c in range(self.rank0)
                if gb.normal_form({(c, (0,) * self.ring.nvars): f.one})]


def minimal_effective_degrees(M: ModulePresentation, spec: GradingSpec | None = None) \
        -> list[Multidegree]:
    """Minimal elements of Eff(M) = {a : M_a != 0} under the Eff(S) order.

    Every minimal element is the degree of a non-redundant generator, so it
    suffices to scan those degrees and rule out smaller effective degrees by
    a theta-bounded search.
    """
    spec = spec or M.ring.spec
    alive = M.alive_generators()
    if not alive:
        raise ValueError("the zero module has no effective degrees")
    cand = sorted({M.gen_degrees[c] for c in alive}, key=lambda a: (spec.weight(a), a))
    min_w = min(spec.weight(a) for a in cand)
    out = []
    for d in cand:
        room = spec.weight(d) - min_w
        smaller = False
        for e in effective_degrees_up_to(spec, room):
            if e == spec.zero:
                continue
            b = deg_sub(d, e)
            if M.dim(b) > 0:
                smaller = True
                break
        if not smaller:
            out.append(d)
    return out


# ---------------------------------------------------------------------------
# Krull dimension

def krull_dim(ring: PolyRing, gens: list[Poly]) -> int:
    """Krull dimension of k[vars]/(gens), via independent variable subsets
    modulo the initial ideal.  Returns -1 for the unit ideal."""
    import itertools
    gb = buchberger(ring, [ring.spec.zero], [elem_from_poly(g) for g in gens if g])
    lead_supports = [frozenset(i for i, e in enumerate(u) if e) for (_, u) in gb.leads]
    if frozenset() in lead_supports:
        return -1
    n = ring.nvars
    for size in range(n, -1, -1):
        for T in itertools.combinations(range(n), size):
            Tset = set(T)
            if not any(s <= Tset for s in lead_supports):
                return size
    return 0
