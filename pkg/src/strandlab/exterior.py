"""The Koszul-dual exterior algebra E = Lambda(e_0..e_n) and its finite
dimensional A+Z-graded right modules.

A piece key is (a, j): a the A-degree, j the auxiliary degree.  We store
auxiliary degrees so that j >= 0 for everything the pipeline builds; the
dual module omega has its basis element e_I in degree (sigma(I^c); |I^c|),
so the socle e_{0..n} sits at (0; 0).  Right multiplication by e_i maps
(a, j) -> (a - deg x_i, j - 1); left actions pick up the sign (-1)^j.
"""

from __future__ import annotations

import itertools

from .grading import GradingSpec, Multidegree, deg_add, deg_sub
from .linalg import coords_in_basis, extend_basis, mat_vec, nullspace, \
    solve, transpose, zeros
from .poly import PolyRing

PieceKey = tuple  # (Multidegree, int)


def mult_sign(I: frozenset, i: int) -> int:
    """Sign of e_I * e_i = sign * e_{I + {i}} in E (0 if i in I)."""
    if i in I:
        return 0
    return -1 if sum(1 for l in I if l > i) % 2 else 1


def subset_sign(I: frozenset, J: frozenset) -> int:
    """Sign of e_I * e_J = sign * e_{I u J}; 0 on overlap."""
    if I & J:
        return 0
    s = 1
    acc = I
    for j in sorted(J):
        s *= mult_sign(acc, j)
        acc = acc | {j}
    return s


class EModule:
    """A finite-dimensional graded right E-module with explicit bases.

    pieces maps (a, j) to a list of basis labels; actions[(i, key)] is the
    matrix of right multiplication by e_i from `key` into the piece at
    (a - deg x_i, j - 1).  Missing action entries are zero maps.
    """

    def __init__(self, ring: PolyRing, pieces: dict, actions: dict):
        self.ring = ring
        self.pieces = {k: list(v) for k, v in pieces.items() if v}
        self.actions = actions

    @property
    def spec(self) -> GradingSpec:
        return self.ring.spec

    def keys(self) -> list[PieceKey]:
        spec = self.spec
        return sorted(self.pieces, key=lambda k: (k[1], spec.weight(k[0]), k[0]))

    def dim(self, key: PieceKey) -> int:
        return len(self.pieces.get(key, ()))

    def total_dim(self) -> int:
        return sum(len(v) for v in self.pieces.values())

    def action_target(self, i: int, key: PieceKey) -> PieceKey:
        a, j = key
        return (deg_sub(a, self.spec.var_degrees[i]), j - 1)

    def action(self, i: int, key: PieceKey) -> list[list]:
        """Matrix of right multiplication by e_i on the given piece."""
        m = self.actions.get((i, key))
        if m is not None:
            return m
        tgt = self.action_target(i, key)
        return zeros(self.ring.field, self.dim(tgt), self.dim(key))

    def is_zero(self) -> bool:
        return not self.pieces

    def top_aux(self) -> int:
        return max((j for (_, j) in self.pieces), default=0)

    def check_anticommute(self):
        from .linalg import mat_mul, mat_add
        f = self.ring.field
        n = self.ring.nvars
        for key in self.pieces:
            for i1 in range(n):
                mid1 = self.action_target(i1, key)
                a1 = self.action(i1, key)
                for i2 in range(i1, n):
                    mid2 = self.action_target(i2, key)
                    p = mat_mul(f, self.action(i2, mid1), a1)
                    q = mat_mul(f, self.action(i1, mid2), self.action(i2, key))
                    s = mat_add(f, p, q)
                    if any(any(x for x in row) for row in s):
                        raise AssertionError(
                            f"actions e_{i1}, e_{i2} do not anticommute at {key}")


class DifferentialEModule(EModule):
    """An EModule with a square-zero right-E-linear differential of degree
    (0; -1): diffs[key] maps the piece at (a, j) to the one at (a, j-1)."""

    def __init__(self, ring: PolyRing, pieces: dict, actions: dict, diffs: dict):
        super().__init__(ring, pieces, actions)
        self.diffs = diffs

    def diff(self, key: PieceKey) -> list[list]:
        m = self.diffs.get(key)
        if m is not None:
            return m
        a, j = key
        return zeros(self.ring.field, self.dim((a, j - 1)), self.dim(key))

    def check_differential(self):
        from .linalg import mat_mul
        f = self.ring.field
        for (a, j) in self.pieces:
            prod = mat_mul(f, self.diff((a, j - 1)), self.diff((a, j)))
            if any(any(x for x in row) for row in prod):
                raise AssertionError(f"differential does not square to zero at {(a, j)}")
            # right E-linearity: del(m e_i) = del(m) e_i
            def nz(m):
                return any(any(x for x in row) for row in m)
            for i in range(self.ring.nvars):
                tgt = self.action_target(i, (a, j))
                lhs = mat_mul(f, self.diff(tgt), self.action(i, (a, j)))
                rhs = mat_mul(f, self.action(i, (a, j - 1)), self.diff((a, j)))
                # empty pieces give degenerate shapes; only values matter
                if lhs != rhs and (nz(lhs) or nz(rhs)):
                    raise AssertionError(f"differential is not E-linear at {(a, j)}, e_{i}")


def with_zero_differential(D: EModule) -> DifferentialEModule:
    return DifferentialEModule(D.ring, D.pieces, D.actions, {})


# ---------------------------------------------------------------------------
# omega_E

def omega_E(ring: PolyRing) -> EModule:
    """The dualizing module Hom_k(E, k) = E(-sum deg x_i; -n-1), with basis
    e_I placed in degree (sigma(I^c); |I^c|).  Right actions are exterior
    multiplication."""
    n = ring.nvars
    spec = ring.spec
    pieces: dict[PieceKey, list] = {}
    index: dict[frozenset, tuple[PieceKey, int]] = {}
    for size in range(n + 1):
        for combo in itertools.combinations(range(n), size):
            I = frozenset(combo)
            comp = [i for i in range(n) if i not in I]
            a = spec.zero
            for i in comp:
                a = deg_add(a, spec.var_degrees[i])
            key = (a, len(comp))
            pieces.setdefault(key, []).append(I)
    for key, labels in pieces.items():
        for pos, I in enumerate(labels):
            index[I] = (key, pos)
    f = ring.field
    actions: dict = {}
    for key, labels in pieces.items():
        for i in range(n):
            tkey = (deg_sub(key[0], spec.var_degrees[i]), key[1] - 1)
            tlabels = pieces.get(tkey, [])
            if not tlabels:
                continue
            tindex = {I: p for p, I in enumerate(tlabels)}
            mat = zeros(f, len(tlabels), len(labels))
            for col, I in enumerate(labels):
                s = mult_sign(I, i)
                if s:
                    mat[tindex[I | {i}]][col] = f.of(s)
            actions[(i, key)] = mat
    return EModule(ring, pieces, actions)


# ---------------------------------------------------------------------------
# submodules and homology

def sub_emodule(parent: EModule, subspaces: dict) -> tuple[EModule, dict]:
    """The E-submodule spanned by the given vectors (per piece, coordinates
    in the parent's basis).  Requires closure under all e_i-actions; raises
    if an action leaves the span.  Returns (sub, inclusion vectors)."""
    f = parent.ring.field
    bases = {k: v for k, v in subspaces.items() if v}
    pieces = {k: list(range(len(v))) for k, v in bases.items()}
    actions: dict = {}
    for key, vecs in bases.items():
        for i in range(parent.ring.nvars):
            tkey = parent.action_target(i, key)
            tvecs = bases.get(tkey, [])
            act = parent.action(i, key)
            cols = []
            for v in vecs:
                img = mat_vec(f, act, v)
                if not any(img):
                    cols.append([f.zero] * len(tvecs))
                    continue
                c = coords_in_basis(f, tvecs, img)
                if c is None:
                    raise ValueError(f"subspace not closed under e_{i} at {key}")
                cols.append(c)
            if tvecs:
                actions[(i, key)] = [[cols[c][r] for c in range(len(cols))]
                                     for r in range(len(tvecs))]
    return EModule(parent.ring, pieces, actions), bases


def submodule_annihilated_by(D: EModule, I) -> EModule:
    """Largest graded subspace killed by every e_i with i not in I, with the
    restricted action structure."""
    f = D.ring.field
    outside = [i for i in range(D.ring.nvars) if i not in set(I)]
    subspaces: dict = {}
    for key in D.pieces:
        stacked: list[list] = []
        for i in outside:
            stacked.extend(D.action(i, key))
        if stacked:
            vecs = nullspace(f, stacked, ncols=D.dim(key))
        else:
            vecs = [[f.one if r == c else f.zero for r in range(D.dim(key))]
                    for c in range(D.dim(key))]
        if vecs:
            subspaces[key] = vecs
    sub, _ = sub_emodule(D, subspaces)
    return sub


class HomologyData:
    """Degreewise homology of a differential E-module, with cycle
    representatives and a classifying map back to H-coordinates."""

    def __init__(self, D: DifferentialEModule):
        self.parent = D
        f = D.ring.field
        self.reps: dict = {}
        self.boundaries: dict = {}
        for key in D.pieces:
            a, j = key
            Z = nullspace(f, D.diff(key), ncols=D.dim(key))
            up = (a, j + 1)
            B: list[list] = []
            if D.dim(up):
                dmat = D.diff(up)
                cols = [[dmat[r][c] for r in range(D.dim(key))]
                        for c in range(D.dim(up))]
                B = extend_basis(f, [], cols)
            reps = extend_basis(f, B, Z)
            self.boundaries[key] = B
            if reps:
                self.reps[key] = reps

    def classify(self, key: PieceKey, v: list) -> list:
        """Coordinates of the homology class of the cycle v."""
        f = self.parent.ring.field
        reps = self.reps.get(key, [])
        B = self.boundaries.get(key, [])
        if not any(v):
            return [f.zero] * len(reps)
        basis = reps + B
        c = coords_in_basis(f, basis, v)
        if c is None:
            raise ValueError(f"vector at {key} is not a cycle")
        return c[:len(reps)]

    def module(self) -> EModule:
        """H as an EModule with induced actions."""
        D = self.parent
        f = D.ring.field
        pieces = {k: list(range(len(v))) for k, v in self.reps.items()}
        actions: dict = {}
        for key, reps in self.reps.items():
            for i in range(D.ring.nvars):
                tkey = D.action_target(i, key)
                if tkey not in self.reps:
                    continue
                act = D.action(i, key)
                cols = [self.classify(tkey, mat_vec(f, act, v)) for v in reps]
                actions[(i, key)] = [[cols[c][r] for c in range(len(cols))]
                                     for r in range(len(self.reps[tkey]))]
        return EModule(D.ring, pieces, actions)
