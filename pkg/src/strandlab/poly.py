"""Sparse multivariate polynomials with A-homogeneity tracking.

Terms are stored as a dict {exponent tuple: nonzero coefficient}.  The
global monomial order is theta-weighted degree with graded-reverse-lex
tie-break, so truncating computations by theta-weight is sound.
"""

from __future__ import annotations

import re

from .fields import Field
from .grading import GradingSpec, Multidegree, deg_add, validate_positive


class PolyRing:
    """k[x_0..x_n] with an A-grading and a fixed global monomial order."""

    def __init__(self, field: Field, spec: GradingSpec, names: list[str] | None = None):
        if not validate_positive(spec):
            raise ValueError("grading is not positive for the given theta")
        self.field = field
        self.spec = spec
        self.names = list(names) if names is not None else [f"x{i}" for i in range(spec.nvars)]
        if len(self.names) != spec.nvars:
            raise ValueError("variable name count mismatch")
        self._name_index = {nm: i for i, nm in enumerate(self.names)}

    @property
    def nvars(self) -> int:
        return self.spec.nvars

    # -- monomial order --------------------------------------------------
    def mono_key(self, u: tuple[int, ...]):
        """Sort key: theta-weight, then graded reverse lex.  max = lead."""
        w = sum(e * wt for e, wt in zip(u, self.spec.var_weights))
        return (w, tuple(-u[i] for i in range(len(u) - 1, -1, -1)))

    def mono_weight(self, u: tuple[int, ...]) -> int:
        return sum(e * wt for e, wt in zip(u, self.spec.var_weights))

    # -- constructors ----------------------------------------------------
    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {(0,) * self.nvars: self.field.one})

    def constant(self, c) -> "Poly":
        c = self.field.of(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, i: int) -> "Poly":
        u = [0] * self.nvars
        u[i] = 1
        return Poly(self, {tuple(u): self.field.one})

    def monomial(self, u: tuple[int, ...], c=None) -> "Poly":
        c = self.field.one if c is None else self.field.of(c)
        return Poly(self, {tuple(u): c} if c else {})

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.spec == other.spec and self.names == other.names)

    def __hash__(self):
        return hash((self.field, self.spec, tuple(self.names)))

    def __repr__(self):
        return f"PolyRing({self.field}, vars={self.names})"

    # -- parsing ---------------------------------------------------------
    _token_re = re.compile(r"\s*(\d+/\d+|\d+|[A-Za-z_][A-Za-z_0-9]*|\^|\*|\+|-)")

    def parse(self, text: str) -> "Poly":
        """Parse `3*x0^2*x1 - x2` style polynomial strings."""
        tokens: list[str] = []
        pos = 0
        while pos < len(text):
            m = self._token_re.match(text, pos)
            if not m:
                if text[pos:].strip():
                    raise ValueError(f"cannot tokenize polynomial at {text[pos:]!r}")
                break
            tokens.append(m.group(1))
            pos = m.end()
        result = self.zero()
        i = 0
        first = True
        while i < len(tokens):
            sign = 1
            while i < len(tokens) and tokens[i] in "+-":
                if tokens[i] == "-":
                    sign = -sign
                i += 1
            if i >= len(tokens):
                raise ValueError(f"dangling sign in {text!r}")
            term, i = self._parse_term(tokens, i, text)
            if sign < 0:
                term = -term
            result = result + term
            first = False
        if first and text.strip() not in ("", "0"):
            raise ValueError(f"empty polynomial expression {text!r}")
        return result

    def _parse_term(self, tokens: list[str], i: int, text: str) -> tuple["Poly", int]:
        coeff = self.field.one
        u = [0] * self.nvars
        expect_factor = True
        while i < len(tokens):
            t = tokens[i]
            if t in "+-":
                break
            if t == "*":
                i += 1
                expect_factor = True
                continue
            if not expect_factor:
                raise ValueError(f"missing '*' before {t!r} in {text!r}")
            if t[0].isdigit():
                if "/" in t:
                    num, den = t.split("/")
                    from fractions import Fraction
                    coeff = self.field.mul(coeff, self.field.of(Fraction(int(num), int(den))))
                else:
                    coeff = self.field.mul(coeff, self.field.of(int(t)))
                i += 1
            else:
                if t not in self._name_index:
                    raise ValueError(f"unknown variable {t!r} in {text!r}")
                vi = self._name_index[t]
                i += 1
                e = 1
                if i < len(tokens) and tokens[i] == "^":
                    i += 1
                    if i >= len(tokens) or not tokens[i].isdigit():
                        raise ValueError(f"bad exponent in {text!r}")
                    e = int(tokens[i])
                    i += 1
                u[vi] += e
            expect_factor = False
        return self.monomial(tuple(u), coeff), i


class Poly:
    """An element of a PolyRing; immutable by convention."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.ring), tuple(sorted(self.terms.items()))))

    def __add__(self, other: "Poly") -> "Poly":
        f = self.ring.field
        out = dict(self.terms)
        for u, c in other.terms.items():
            s = f.add(out.get(u, f.zero), c)
            if s:
                out[u] = s
            else:
                out.pop(u, None)
        return Poly(self.ring, out)

    def __neg__(self) -> "Poly":
        f = self.ring.field
        return Poly(self.ring, {u: f.neg(c) for u, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        f = self.ring.field
        out: dict = {}
        for u, c in self.terms.items():
            for v, d in other.terms.items():
                w = tuple(a + b for a, b in zip(u, v))
                s = f.add(out.get(w, f.zero), f.mul(c, d))
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return Poly(self.ring, out)

    def scale(self, c) -> "Poly":
        f = self.ring.field
        c = f.of(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {u: f.mul(c, d) for u, d in self.terms.items()})

    # -- grading ---------------------------------------------------------
    def degree(self) -> Multidegree | None:
        """The common A-degree of all terms, or None if zero/inhomogeneous."""
        deg = None
        for u in self.terms:
            d = self.ring.spec.exponent_degree(u)
            if deg is None:
                deg = d
            elif d != deg:
                return None
        return deg

    def is_homogeneous(self) -> bool:
        return not self.terms or self.degree() is not None

    def homogeneous_components(self) -> dict[Multidegree, "Poly"]:
        comps: dict[Multidegree, dict] = {}
        for u, c in self.terms.items():
            comps.setdefault(self.ring.spec.exponent_degree(u), {})[u] = c
        return {d: Poly(self.ring, t) for d, t in sorted(comps.items())}

    def is_linear_form(self) -> bool:
        """True iff the polynomial lies in the k-span of the variables."""
        return all(sum(u) == 1 for u in self.terms)

    def is_constant(self) -> bool:
        return all(sum(u) == 0 for u in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def linear_part(self) -> "Poly":
        """The terms of total exponent 1."""
        return Poly(self.ring, {u: c for u, c in self.terms.items() if sum(u) == 1})

    def lead(self) -> tuple[tuple[int, ...], object]:
        """(lead exponent, lead coefficient) under the ring's order."""
        u = max(self.terms, key=self.ring.mono_key)
        return u, self.terms[u]

    # -- display ---------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        ring = self.ring
        parts = []
        for u in sorted(self.terms, key=ring.mono_key, reverse=True):
            c = self.terms[u]
            # symmetric representatives over GF(p) read better: -x0, not (p-1)*x0
            p = getattr(ring.field, "p", None)
            if p is not None and isinstance(c, int) and c > p // 2:
                c = c - p
            factors = []
            for i, e in enumerate(u):
                if e == 1:
                    factors.append(ring.names[i])
                elif e > 1:
                    factors.append(f"{ring.names[i]}^{e}")
            cs = str(c)
            if factors and cs == "1":
                body = "*".join(factors)
            elif factors and cs == "-1":
                body = "-" + "*".join(factors)
            elif factors:
                body = cs + "*" + "*".join(factors)
            else:
                body = cs
            parts.append(body)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self})"
