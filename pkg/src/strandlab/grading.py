"""Gradings by A = Z^r: positivity, the effective partial order, degree
enumeration.

A multidegree is a tuple of r ints.  A GradingSpec fixes the degrees of the
variables and a positivity witness theta (a homomorphism A -> Z with
theta(deg x_i) > 0 for all i), which makes every graded piece finite and
bounds all enumerations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

Multidegree = tuple[int, ...]


def deg_add(a: Multidegree, b: Multidegree) -> Multidegree:
    return tuple(x + y for x, y in zip(a, b))


def deg_sub(a: Multidegree, b: Multidegree) -> Multidegree:
    return tuple(x - y for x, y in zip(a, b))


def deg_neg(a: Multidegree) -> Multidegree:
    return tuple(-x for x in a)


@dataclass(frozen=True)
class GradingSpec:
    """The grading group Z^r, variable degrees, and a positivity witness."""

    r: int
    var_degrees: tuple[Multidegree, ...]
    theta: Multidegree

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("r must be positive")
        for d in self.var_degrees:
            if len(d) != self.r:
                raise ValueError(f"degree {d} does not have length {self.r}")
        if len(self.theta) != self.r:
            raise ValueError("theta has wrong length")

    @property
    def nvars(self) -> int:
        return len(self.var_degrees)

    @property
    def zero(self) -> Multidegree:
        return (0,) * self.r

    def weight(self, a: Multidegree) -> int:
        """theta(a)."""
        return sum(t * x for t, x in zip(self.theta, a))

    @property
    def var_weights(self) -> tuple[int, ...]:
        return tuple(self.weight(d) for d in self.var_degrees)

    def exponent_degree(self, u: tuple[int, ...]) -> Multidegree:
        """A-degree of the monomial with exponent vector u."""
        a = [0] * self.r
        for e, d in zip(u, self.var_degrees):
            if e:
                for k in range(self.r):
                    a[k] += e * d[k]
        return tuple(a)

    @property
    def total_degree(self) -> Multidegree:
        """Sum of all variable degrees (the degree of x_0...x_n)."""
        t = self.zero
        for d in self.var_degrees:
            t = deg_add(t, d)
        return t


def validate_positive(spec: GradingSpec) -> bool:
    """True iff theta(deg x_i) > 0 for every variable."""
    return all(w > 0 for w in spec.var_weights)


def monomials_of_degree(a: Multidegree, spec: GradingSpec) -> list[tuple[int, ...]]:
    """All exponent vectors of A-degree exactly a, sorted lexicographically.

    Finite by positivity: exponents are bounded by theta(a) / theta(deg x_i).
    Returns [] when a is not effective.
    """
    n = spec.nvars
    weights = spec.var_weights
    target_w = spec.weight(a)
    out: list[tuple[int, ...]] = []
    if target_w < 0:
        return out
    u = [0] * n

    def rec(i: int, remaining: int):
        if i == n:
            if remaining == 0 and spec.exponent_degree(tuple(u)) == a:
                out.append(tuple(u))
            return
        if i == n - 1:
            q, rem = divmod(remaining, weights[i])
            if rem == 0:
                u[i] = q
                rec(n, 0)
                u[i] = 0
            return
        for e in range(remaining // weights[i] + 1):
            u[i] = e
            rec(i + 1, remaining - e * weights[i])
        u[i] = 0

    rec(0, target_w)
    out.sort()
    return out


def is_effective(a: Multidegree, spec: GradingSpec) -> bool:
    """True iff a is a nonnegative integer combination of variable degrees."""
    if a == spec.zero:
        return True
    if spec.weight(a) <= 0:
        return a == spec.zero
    n = spec.nvars
    weights = spec.var_weights

    def rec(i: int, rest: Multidegree, remaining: int) -> bool:
        if i == n:
            return remaining == 0 and all(x == 0 for x in rest)
        for e in range(remaining // weights[i] + 1):
            cand = tuple(x - e * d for x, d in zip(rest, spec.var_degrees[i]))
            if rec(i + 1, cand, remaining - e * weights[i]):
                return True
        return False

    return rec(0, a, spec.weight(a))


def eff_leq(a: Multidegree, b: Multidegree, spec: GradingSpec) -> bool:
    """The Eff(S) partial order: a <= b iff b - a is effective."""
    return is_effective(deg_sub(b, a), spec)


def effective_degrees_up_to(spec: GradingSpec, cap: int,
                            base: Multidegree | None = None) -> list[Multidegree]:
    """All degrees base + (effective) with theta-weight at most cap, sorted by
    (weight, lex)."""
    start = base if base is not None else spec.zero
    n = spec.nvars
    weights = spec.var_weights
    found: set[Multidegree] = set()
    base_w = spec.weight(start)

    def rec(i: int, cur: Multidegree, room: int):
        if i == n:
            found.add(cur)
            return
        d = spec.var_degrees[i]
        w = weights[i]
        e = 0
        point = cur
        while e * w <= room:
            rec(i + 1, point, room - e * w)
            e += 1
            point = deg_add(point, d)

    room = cap - base_w
    if room >= 0:
        rec(0, start, room)
    return sorted(found, key=lambda a: (spec.weight(a), a))


def find_theta(var_degrees: tuple[Multidegree, ...], bound: int = 10) -> Multidegree | None:
    """Search small integer vectors for a valid positivity witness.

    Entries range over [-bound, bound]; returns the first hit in a
    deterministic scan order, or None.
    """
    r = len(var_degrees[0]) if var_degrees else 1
    for theta in itertools.product(range(-bound, bound + 1), repeat=r):
        if all(sum(t * x for t, x in zip(theta, d)) > 0 for d in var_degrees):
            return tuple(theta)
    return None


def format_degree(a: Multidegree) -> str:
    return "(" + ",".join(str(x) for x in a) + ")"


def parse_degree(text: str, r: int) -> Multidegree:
    t = text.strip()
    if t.startswith("(") and t.endswith(")"):
        t = t[1:-1]
    parts = [p for p in t.replace(",", " ").split() if p]
    a = tuple(int(p) for p in parts)
    if len(a) != r:
        raise ValueError(f"degree {text!r} does not have {r} components")
    return a
