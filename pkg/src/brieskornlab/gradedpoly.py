"""Sparse multivariate polynomials over Q, graded by total or weighted degree.

Coefficients are exact rationals (`fractions.Fraction`, with plain ints allowed
as a fast path) and monomials are exponent tuples, one entry per variable.
Everything downstream builds matrices out of these, so all enumeration here is
deterministic: graded-lex order with the user's variable order throughout.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Mapping, Sequence

Monomial = tuple[int, ...]
Coeff = "Fraction | int"


class InputError(ValueError):
    """An input violates a documented precondition."""


class ParseError(InputError):
    """Malformed polynomial text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_degree(m: Monomial) -> int:
    return sum(m)


def weighted_degree(m: Monomial, weights: Sequence[Fraction]) -> Fraction:
    """Sum of w_i * exponent_i as an exact rational."""
    if len(m) != len(weights):
        raise InputError(f"monomial has {len(m)} exponents, weight vector has {len(weights)}")
    total = Fraction(0)
    for e, w in zip(m, weights):
        if e:
            total += e * w
    return total


def weight_vector(values: Iterable) -> tuple[Fraction, ...]:
    """Validate and normalize a weight vector: every entry a positive rational."""
    ws = tuple(Fraction(v) for v in values)
    if not ws or any(w <= 0 for w in ws):
        raise InputError("weights must be positive rationals")
    return ws


class Poly:
    """Immutable sparse polynomial; term map from exponent tuple to coefficient.

    The term map never stores zero coefficients, so equality and hashing are
    structural.  Arithmetic keeps integer coefficients as ints (cheap) and only
    produces Fractions when a denominator actually appears.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: dict):
        # internal constructor: assumes terms is already clean (no zeros, right arity)
        self.nvars = nvars
        self.terms = terms
        self._hash = None

    # ------------------------------------------------------------------ build
    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "Poly":
        c = _coeff(c)
        return cls(nvars, {} if c == 0 else {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Poly":
        if not 0 <= i < nvars:
            raise InputError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, nvars: int, m: Monomial, c=1) -> "Poly":
        c = _coeff(c)
        if len(m) != nvars or any(e < 0 for e in m):
            raise InputError(f"bad monomial {m} for {nvars} variables")
        return cls(nvars, {} if c == 0 else {tuple(m): c})

    @classmethod
    def from_terms(cls, nvars: int, terms: Mapping[Monomial, object]) -> "Poly":
        clean = {}
        for m, c in terms.items():
            if len(m) != nvars or any(e < 0 for e in m):
                raise InputError(f"bad monomial {m} for {nvars} variables")
            c = _coeff(c)
            if c != 0:
                clean[tuple(m)] = c
        return cls(nvars, clean)

    # ------------------------------------------------------------- arithmetic
    def __add__(self, other: "Poly") -> "Poly":
        self._same_ring(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(self.nvars, out)

    def __sub__(self, other: "Poly") -> "Poly":
        self._same_ring(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) - c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        self._same_ring(other)
        if len(self.terms) > len(other.terms):
            self, other = other, self
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly(self.nvars, out)

    def __rmul__(self, other) -> "Poly":
        return self.scale(other)

    def scale(self, c) -> "Poly":
        c = _coeff(c)
        if c == 0:
            return Poly.zero(self.nvars)
        return Poly(self.nvars, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise InputError("negative exponent")
        result = Poly.constant(self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def shift(self, m: Monomial) -> "Poly":
        """Multiply by a single monomial (exponent shift, no coefficient work)."""
        return Poly(self.nvars, {mono_mul(t, m): c for t, c in self.terms.items()})

    # ----------------------------------------------------------------- queries
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Total degree, or None for the zero polynomial (kept distinct from 0)."""
        if not self.terms:
            return None
        return max(mono_degree(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {mono_degree(m) for m in self.terms}
        return len(degs) <= 1

    def homogeneous_degree(self) -> int:
        """Degree of a nonzero homogeneous polynomial; raises otherwise."""
        degs = {mono_degree(m) for m in self.terms}
        if len(degs) != 1:
            raise InputError("polynomial is zero or not homogeneous")
        return degs.pop()

    def coefficient(self, m: Monomial):
        return self.terms.get(tuple(m), 0)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def partial(self, i: int) -> "Poly":
        """Partial derivative with respect to variable i."""
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
        return Poly(self.nvars, out)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise InputError("point arity does not match variable count")
        pt = [_coeff(v) for v in point]
        total = _coeff(0)
        for m, c in self.terms.items():
            v = c
            for e, x in zip(m, pt):
                if e:
                    v = v * x**e
            total = total + v
        return total

    def weighted_parts(self, weights: Sequence[Fraction]) -> dict:
        """Decompose into weighted-homogeneous parts, keyed by weighted degree."""
        parts: dict = {}
        for m, c in self.terms.items():
            parts.setdefault(weighted_degree(m, weights), {})[m] = c
        return {w: Poly(self.nvars, t) for w, t in sorted(parts.items())}

    def min_weighted_degree(self, weights: Sequence[Fraction]):
        """Smallest weighted degree among terms, or None for the zero polynomial."""
        if not self.terms:
            return None
        return min(weighted_degree(m, weights) for m in self.terms)

    def truncate_weighted(self, weights: Sequence[Fraction], threshold: Fraction) -> "Poly":
        """Keep only the terms of weighted degree strictly below the threshold."""
        kept = {m: c for m, c in self.terms.items() if weighted_degree(m, weights) < threshold}
        return Poly(self.nvars, kept)

    def integer_scaled(self) -> tuple["Poly", int]:
        """Return (s*self, s) where s is the least positive integer clearing denominators."""
        lcm = 1
        for c in self.terms.values():
            den = c.denominator if isinstance(c, Fraction) else 1
            lcm = lcm * den // gcd(lcm, den)
        if lcm == 1:
            return Poly(self.nvars, {m: int(c) for m, c in self.terms.items()}), 1
        return Poly(self.nvars, {m: int(c * lcm) for m, c in self.terms.items()}), lcm

    # ------------------------------------------------------------- structural
    def _same_ring(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise InputError("polynomials live in different rings")

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        names = tuple(f"x{i}" for i in range(self.nvars))
        return f"Poly({render(self, names)})"

    def __reduce__(self):
        return (_rebuild_poly, (self.nvars, tuple(self.terms.items())))


def _rebuild_poly(nvars: int, items) -> Poly:
    return Poly(nvars, dict(items))


def _coeff(c):
    if isinstance(c, (int, Fraction)):
        return c
    if isinstance(c, str):
        return Fraction(c)
    raise InputError(f"not an exact rational coefficient: {c!r}")


# ---------------------------------------------------------------------- bases


def monomial_basis(nvars: int, degree: int) -> list[Monomial]:
    """All monomials of the given total degree, in descending lex order.

    This is the graded-lex order restricted to one degree; every matrix in the
    package indexes its columns by this list, so the order is load-bearing.
    """
    if nvars < 1:
        raise InputError("need at least one variable")
    if degree < 0:
        return []
    out: list[Monomial] = []

    def rec(prefix: Monomial, remaining: int, slots: int) -> None:
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, nvars)
    return out


def monomials_weighted_below(nvars: int, weights: Sequence[Fraction], bound: Fraction,
                             strict: bool = True) -> list[Monomial]:
    """Monomials with weighted degree < bound (or <= if strict=False).

    Finite because all weights are positive.  Sorted by (weighted degree,
    descending lex) so weighted jet spaces get a canonical coordinate order.
    """
    ws = weight_vector(weights)
    out: list[Monomial] = []

    def rec(prefix: Monomial, budget: Fraction, i: int) -> None:
        if i == nvars:
            out.append(prefix)
            return
        w = ws[i]
        top = budget / w
        emax = int(top)
        if strict and emax == top:
            emax -= 1
        for e in range(max(emax, -1) + 1):
            rec(prefix + (e,), budget - e * w, i + 1)

    rec((), Fraction(bound), 0)
    out.sort(key=lambda m: (weighted_degree(m, ws), tuple(-e for e in m)))
    return out


def hilbert_ci_coeffs(nvars: int, gen_degree: int) -> list[int]:
    """Coefficients of ((1 - t^gen_degree) / (1 - t))^nvars.

    Hilbert series of a complete intersection of nvars forms of degree
    gen_degree in nvars variables; list has length nvars*(gen_degree-1)+1.
    """
    if nvars < 1 or gen_degree < 1:
        raise InputError("nvars and gen_degree must be positive")
    block = [1] * gen_degree
    coeffs = [1]
    for _ in range(nvars):
        nxt = [0] * (len(coeffs) + gen_degree - 1)
        for i, a in enumerate(coeffs):
            for j, b in enumerate(block):
                nxt[i + j] += a * b
        coeffs = nxt
    return coeffs


# --------------------------------------------------------------------- parser
#
# expr   := term (('+'|'-') term)*
# term   := factor ('*' factor)*
# factor := base ('^' natural)?
# base   := rational | name | '(' expr ')'
# rational := integer ('/' positive-integer)?
#
# No implicit multiplication; a '-' starts a literal only when followed by digits.


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_number(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected digits", start)
        return int(self.text[start:self.pos])

    def take_name(self) -> str:
        self.skip_ws()
        start = self.pos
        ch = self.text[self.pos]
        if not (ch.isalpha() or ch == "_"):
            raise ParseError("expected a name", start)
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start:self.pos]

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1


def parse_poly(source: str, variables: Sequence[str]) -> Poly:
    """Parse polynomial text over the named variables; exact, no floats.

    Raises ParseError (with position) on syntax errors and on names that are
    not in `variables`.
    """
    names = list(variables)
    if len(set(names)) != len(names):
        raise InputError("duplicate variable names")
    index = {name: i for i, name in enumerate(names)}
    nvars = len(names)
    toks = _Tokens(source)

    def parse_expr() -> Poly:
        value = parse_term()
        while True:
            ch = toks.peek()
            if ch == "+":
                toks.pos += 1
                value = value + parse_term()
            elif ch == "-":
                toks.pos += 1
                value = value - parse_term()
            else:
                return value

    def parse_term() -> Poly:
        value = parse_factor()
        while toks.peek() == "*":
            toks.pos += 1
            value = value * parse_factor()
        return value

    def parse_factor() -> Poly:
        value = parse_base()
        if toks.peek() == "^":
            toks.pos += 1
            toks.skip_ws()
            e = toks.take_number()
            value = value**e
        return value

    def parse_base() -> Poly:
        ch = toks.peek()
        if ch == "(":
            toks.pos += 1
            value = parse_expr()
            toks.expect(")")
            return value
        if ch == "-":
            toks.pos += 1
            return parse_factor().scale(-1)
        if ch.isdigit():
            num = toks.take_number()
            if toks.peek() == "/":
                toks.pos += 1
                dpos = toks.pos
                den = toks.take_number()
                if den == 0:
                    raise ParseError("zero denominator", dpos)
                return Poly.constant(nvars, Fraction(num, den))
            return Poly.constant(nvars, num)
        if ch.isalpha() or ch == "_":
            pos = toks.pos
            name = toks.take_name()
            if name not in index:
                raise ParseError(f"unknown variable {name!r}", pos)
            return Poly.variable(nvars, index[name])
        raise ParseError("expected a number, name or '('", toks.pos)

    toks.skip_ws()
    if not toks.text[toks.pos:]:
        raise ParseError("empty input", toks.pos)
    value = parse_expr()
    toks.skip_ws()
    if toks.pos != len(toks.text):
        raise ParseError("trailing input", toks.pos)
    return value


def render(p: Poly, variables: Sequence[str]) -> str:
    """Grammar-valid text for p; render(parse(s)) parses back to an equal Poly."""
    if len(variables) != p.nvars:
        raise InputError("variable list does not match polynomial arity")
    if not p.terms:
        return "0"
    items = sorted(p.terms.items(), key=lambda mc: (-mono_degree(mc[0]), tuple(-e for e in mc[0])))
    pieces: list[str] = []
    for m, c in items:
        factors = []
        for name, e in zip(variables, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = c if c > 0 else -c
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not pieces:
            # a leading negative sign must stay inside a rational literal
            pieces.append(body if c > 0 else (f"-{body}" if not factors else f"-{mag}*" + "*".join(factors)))
        else:
            pieces.append((" + " if c > 0 else " - ") + body)
    return "".join(pieces)


def dehomogenize_shift(g: Poly, chart: int, point: Sequence) -> Poly:
    """Local representative of a homogeneous g at a projective point.

    Sets x_chart = 1 and substitutes x_i = y_i + p_i for the remaining
    variables, where p is the point scaled so its chart coordinate is 1.  The
    result lives in nvars-1 variables (original order with chart removed) and
    is the germ of g/x_chart^deg(g) in coordinates centered at the point.
    """
    if not g.is_homogeneous():
        raise InputError("dehomogenize_shift needs a homogeneous polynomial")
    n1 = g.nvars
    if not 0 <= chart < n1:
        raise InputError("chart index out of range")
    pt = [_coeff(v) for v in point]
    if len(pt) != n1:
        raise InputError("point arity does not match variable count")
    if pt[chart] == 0:
        raise InputError("point does not lie in the requested chart")
    scale = pt[chart]
    pt = [Fraction(v, 1) / scale if not isinstance(v, Fraction) else v / scale for v in pt]
    locals_ = [i for i in range(n1) if i != chart]
    nloc = n1 - 1
    # cache (variable, exponent) -> expanded (y_i + p_i)^e in the local ring
    powers: dict[tuple[int, int], Poly] = {}

    def shifted_power(j: int, e: int) -> Poly:
        key = (j, e)
        if key not in powers:
            base = Poly.variable(nloc, j) + Poly.constant(nloc, pt[locals_[j]])
            powers[key] = base**e
        return powers[key]

    total = Poly.zero(nloc)
    for m, c in g.terms.items():
        piece = Poly.constant(nloc, c)
        for j, i in enumerate(locals_):
            e = m[i]
            if e:
                piece = piece * shifted_power(j, e)
        total = total + piece
    return total


# ------------------------------------------------------------------ gcd tools
#
# Multivariate gcd by primitive PRS, used only to reject non-squarefree input.
# Results are normalized to have leading (graded-lex) coefficient 1.


def _leading(p: Poly) -> tuple[Monomial, Fraction]:
    m = max(p.terms, key=lambda t: (mono_degree(t), t))
    return m, p.terms[m]


def _normalize(p: Poly) -> Poly:
    if p.is_zero():
        return p
    _, c = _leading(p)
    return p.scale(Fraction(1, 1) / c)


def _max_var(p: Poly):
    """Largest variable index that actually occurs, or None."""
    best = None
    for m in p.terms:
        for i in range(p.nvars - 1, -1 if best is None else best, -1):
            if m[i]:
                if best is None or i > best:
                    best = i
                break
    return best


def _univar(p: Poly, v: int) -> dict[int, Poly]:
    """View p as a univariate in x_v with Poly coefficients (x_v stripped)."""
    coeffs: dict[int, dict] = {}
    for m, c in p.terms.items():
        e = m[v]
        rest = m[:v] + (0,) + m[v + 1:]
        coeffs.setdefault(e, {})[rest] = c
    return {e: Poly(p.nvars, t) for e, t in coeffs.items()}


def _from_univar(coeffs: dict[int, Poly], v: int, nvars: int) -> Poly:
    out: dict = {}
    for e, poly in coeffs.items():
        for m, c in poly.terms.items():
            out[m[:v] + (e,) + m[v + 1:]] = c
    return Poly(nvars, out)


def _pseudo_rem(a: dict[int, Poly], b: dict[int, Poly], nvars: int) -> dict[int, Poly]:
    da, db = max(a), max(b)
    lb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        # r <- lb*r - lr * x^(dr-db) * b
        nr: dict[int, Poly] = {}
        for e, c in r.items():
            nr[e] = lb * c
        for e, c in b.items():
            t = nr.get(e + dr - db, Poly.zero(nvars)) - lr * c
            nr[e + dr - db] = t
        r = {e: c for e, c in nr.items() if not c.is_zero()}
    return r


def _content(coeffs: dict[int, Poly]) -> Poly:
    g = None
    for c in coeffs.values():
        g = c if g is None else poly_gcd(g, c)
        if g.degree() == 0:
            break
    return g


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """gcd up to scalar, normalized to leading coefficient 1 (1 for coprime)."""
    a._same_ring(b)
    if a.is_zero():
        return _normalize(b)
    if b.is_zero():
        return _normalize(a)
    va, vb = _max_var(a), _max_var(b)
    if va is None or vb is None:
        # a nonzero constant is a unit
        return Poly.constant(a.nvars, 1)
    v = max(va, vb)
    ua, ub = _univar(a, v), _univar(b, v)
    if max(ua) == 0 or max(ub) == 0:
        # one argument does not involve x_v: gcd divides its content
        small = ua[0] if max(ua) == 0 else ub[0]
        other = _content(ub if max(ua) == 0 else ua)
        return _normalize(poly_gcd(small, other))
    ca, cb = _content(ua), _content(ub)
    cont = poly_gcd(ca, cb)
    pa = {e: _exact_divide(c, ca) for e, c in ua.items()}
    pb = {e: _exact_divide(c, cb) for e, c in ub.items()}
    if max(pa) < max(pb):
        pa, pb = pb, pa
    while True:
        r = _pseudo_rem(pa, pb, a.nvars)
        if not r:
            break
        cr = _content(r)
        pa, pb = pb, {e: _exact_divide(c, cr) for e, c in r.items()}
    result = cont * _from_univar(pb, v, a.nvars)
    return _normalize(result)


def _exact_divide(p: Poly, q: Poly) -> Poly:
    out = try_divide(p, q)
    if out is None:
        raise ArithmeticError("inexact division where exactness was guaranteed")
    return out


def try_divide(p: Poly, q: Poly):
    """Return p/q when q divides p exactly, else None (graded-lex long division)."""
    p._same_ring(q)
    if q.is_zero():
        raise InputError("division by the zero polynomial")
    if p.is_zero():
        return Poly.zero(p.nvars)
    qm, qc = _leading(q)
    quot: dict = {}
    rem = p
    while not rem.is_zero():
        rm, rc = _leading(rem)
        diff = tuple(a - b for a, b in zip(rm, qm))
        if any(e < 0 for e in diff):
            return None
        c = Fraction(rc) / Fraction(qc)
        if c.denominator == 1:
            c = int(c)
        quot[diff] = c
        rem = rem - q.shift(diff).scale(c)
    return Poly(p.nvars, quot)


def is_squarefree(f: Poly) -> bool:
    """True iff f has no repeated factor (characteristic zero).

    Uses gcd(f, df/dx_0, ..., df/dx_n): the gcd is a constant exactly when f is
    squarefree, and needs no genericity assumption.
    """
    if f.is_zero():
        return False
    g = f
    for i in range(f.nvars):
        g = poly_gcd(g, f.partial(i))
        if g.degree() == 0:
            return True
    return g.degree() == 0
