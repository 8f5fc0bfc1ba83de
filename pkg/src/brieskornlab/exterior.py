"""Polynomial differential forms on affine space with the Euler contraction.

A j-form is a sparse map from sorted index tuples (the dx factors) to
polynomial coefficients.  The grading puts deg(x_i) = deg(dx_i) = 1, so the
exterior derivative preserves total degree and the Lie derivative along the
rescaled Euler field xi = (1/d) sum x_i d/dx_i acts on a graded form of total
degree k as multiplication by k/d.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .gradedpoly import InputError, Poly


@dataclass(frozen=True)
class EulerField:
    """The Euler vector field scaled by 1/d."""
    nvars: int
    d: int

    def __post_init__(self):
        if self.d < 1 or self.nvars < 1:
            raise InputError("EulerField needs positive degree and variable count")


class Form:
    """Differential form with Poly coefficients; immutable by convention."""

    __slots__ = ("nvars", "jdegree", "terms")

    def __init__(self, nvars: int, jdegree: int, terms: dict):
        self.nvars = nvars
        self.jdegree = jdegree
        self.terms = terms

    @classmethod
    def zero(cls, nvars: int, jdegree: int) -> "Form":
        return cls(nvars, jdegree, {})

    @classmethod
    def from_terms(cls, nvars: int, jdegree: int, terms: Mapping) -> "Form":
        clean = {}
        for idx, coeff in terms.items():
            idx = tuple(idx)
            if len(idx) != jdegree or list(idx) != sorted(set(idx)):
                raise InputError(f"index tuple {idx} must be strictly increasing of length {jdegree}")
            if any(not 0 <= i < nvars for i in idx):
                raise InputError(f"index out of range in {idx}")
            if not isinstance(coeff, Poly):
                coeff = Poly.constant(nvars, coeff)
            if coeff.nvars != nvars:
                raise InputError("coefficient polynomial in the wrong ring")
            if not coeff.is_zero():
                clean[idx] = coeff
        return cls(nvars, jdegree, clean)

    @classmethod
    def from_poly(cls, p: Poly) -> "Form":
        """A 0-form."""
        return cls(p.nvars, 0, {(): p} if not p.is_zero() else {})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Form") -> "Form":
        # a zero form is degree-agnostic (iota on 0-forms yields one)
        if other.is_zero() and other.jdegree != self.jdegree:
            self._compat(other)
            return self
        if self.is_zero() and other.jdegree != self.jdegree:
            self._compat(other)
            return other
        self._compat(other, same_j=True)
        out = dict(self.terms)
        for idx, c in other.terms.items():
            s = out.get(idx)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = s
        return Form(self.nvars, self.jdegree, out)

    def __sub__(self, other: "Form") -> "Form":
        return self + other.scale(-1)

    def scale(self, c) -> "Form":
        if isinstance(c, Poly):
            out = {}
            for idx, coeff in self.terms.items():
                p = coeff * c
                if not p.is_zero():
                    out[idx] = p
            return Form(self.nvars, self.jdegree, out)
        if c == 0:
            return Form.zero(self.nvars, self.jdegree)
        return Form(self.nvars, self.jdegree, {i: co.scale(c) for i, co in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, Form) and self.nvars == other.nvars
                and self.jdegree == other.jdegree and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.nvars, self.jdegree, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Form(j={self.jdegree}, terms={len(self.terms)})"

    def graded_degree(self):
        """Total degree if graded (all coefficients homogeneous of matching degree)."""
        if not self.terms:
            return None
        degs = set()
        for coeff in self.terms.values():
            if not coeff.is_homogeneous():
                raise InputError("form is not graded: inhomogeneous coefficient")
            degs.add(coeff.homogeneous_degree() + self.jdegree)
        if len(degs) != 1:
            raise InputError("form is not graded: mixed total degrees")
        return degs.pop()

    def _compat(self, other: "Form", same_j: bool = False) -> None:
        if self.nvars != other.nvars:
            raise InputError("forms on different spaces")
        if same_j and self.jdegree != other.jdegree:
            raise InputError("forms of different exterior degrees")


def _merge_sign(a: tuple, b: tuple):
    """Sorted merge of disjoint sorted tuples with the permutation sign."""
    out = []
    sign = 1
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] < b[j]:
            out.append(a[i]); i += 1
        else:
            # b[j] hops over the remaining len(a)-i entries of a
            if (len(a) - i) & 1:
                sign = -sign
            out.append(b[j]); j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out), sign


def wedge(a: Form, b: Form) -> Form:
    a._compat(b)
    j = a.jdegree + b.jdegree
    if j > a.nvars:
        return Form.zero(a.nvars, j)
    out: dict = {}
    for ia, ca in a.terms.items():
        sa = set(ia)
        for ib, cb in b.terms.items():
            if sa.intersection(ib):
                continue
            idx, sign = _merge_sign(ia, ib)
            p = ca * cb
            if sign < 0:
                p = -p
            s = out.get(idx)
            s = p if s is None else s + p
            if s.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = s
    return Form(a.nvars, j, out)


def exterior_d(a: Form) -> Form:
    """Exterior derivative; preserves the total grading."""
    j = a.jdegree + 1
    if j > a.nvars:
        return Form.zero(a.nvars, j)
    out: dict = {}
    for idx, coeff in a.terms.items():
        occupied = set(idx)
        for i in range(a.nvars):
            if i in occupied:
                continue
            dp = coeff.partial(i)
            if dp.is_zero():
                continue
            nidx, sign = _merge_sign((i,), idx)
            if sign < 0:
                dp = -dp
            s = out.get(nidx)
            s = dp if s is None else s + dp
            if s.is_zero():
                out.pop(nidx, None)
            else:
                out[nidx] = s
    return Form(a.nvars, j, out)


def iota_euler(a: Form, xi: EulerField) -> Form:
    """Interior product with xi = (1/d) sum x_i d/dx_i."""
    if a.nvars != xi.nvars:
        raise InputError("field and form on different spaces")
    if a.jdegree == 0:
        return Form.zero(a.nvars, 0)
    scale = Fraction(1, xi.d)
    out: dict = {}
    for idx, coeff in a.terms.items():
        for pos, i in enumerate(idx):
            p = (coeff * Poly.variable(a.nvars, i)).scale(scale if pos % 2 == 0 else -scale)
            nidx = idx[:pos] + idx[pos + 1:]
            s = out.get(nidx)
            s = p if s is None else s + p
            if s.is_zero():
                out.pop(nidx, None)
            else:
                out[nidx] = s
    return Form(a.nvars, a.jdegree - 1, out)


def lie_euler(a: Form, xi: EulerField) -> Form:
    """Lie derivative along xi via the Cartan formula; input must be graded.

    For a graded form of total degree k the result equals (k/d) * a; the
    caller can use that as a consistency check.
    """
    a.graded_degree()  # raises if not graded
    return iota_euler(exterior_d(a), xi) + exterior_d(iota_euler(a, xi))


def omega0(nvars: int) -> Form:
    """The top form dx_0 ^ ... ^ dx_n with coefficient 1."""
    return Form.from_terms(nvars, nvars, {tuple(range(nvars)): Poly.constant(nvars, 1)})


def eta0(nvars: int, d: int) -> Form:
    """The contraction of the top form along the rescaled Euler field.

    Equals (1/d) sum_i (-1)^i x_i dx_0 ^ ... omit i ... ^ dx_n; its exterior
    derivative is (nvars/d) times the top form.
    """
    terms = {}
    scale = Fraction(1, d)
    for i in range(nvars):
        idx = tuple(j for j in range(nvars) if j != i)
        c = Poly.variable(nvars, i).scale(scale if i % 2 == 0 else -scale)
        terms[idx] = c
    return Form.from_terms(nvars, nvars - 1, terms)
