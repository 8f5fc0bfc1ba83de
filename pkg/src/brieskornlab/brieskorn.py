"""Graded pieces of the algebraic Brieskorn module of a homogeneous polynomial.

For reduced homogeneous f of degree d in n+1 variables, the module
H_f = Omega^{n+1} / df^dOmega^{n-1} is graded by total degree (with
deg x_i = deg dx_i = 1) and carries multiplication by f as the degree-d
transition map.  The degree-k piece is presented as C[x]_{k-n-1}, the
coefficients of omega_0 = dx_0^...^dx_n, modulo the relation subspace

    (df^dOmega^{n-1})_k = span{ f_a d_b(g) - f_b d_a(g) },

with g running over monomials of degree k-d-n+1 and a < b over variable
pairs; that closed form is the full expansion of df^d(g dx_I) for the
complementary index sets I.

Ranks of high f-powers out of a fixed degree compute the torsion-free
quotient, and with it the pole-order filtration on H^n of the complement,
Milnor-fiber monodromy eigenspaces, and the Briancon-Skoda membership test.
There is no effective a-priori bound on the torsion order, so every such rank
is stabilized under an explicit policy and ships with its certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from threading import Lock

from .exactlinalg import InvariantError, Subspace, rank_of_vectors
from .exterior import EulerField, Form, exterior_d, iota_euler, omega0, wedge
from .gradedpoly import InputError, Poly, is_squarefree, mono_mul, monomial_basis
from .jacobian import jacobian_dim


class StabilizationError(InvariantError):
    """Rank failed to stabilize within the policy cap; carries the trace."""

    def __init__(self, message: str, degree: int, values: list):
        super().__init__(message)
        self.degree = degree
        self.values = list(values)


@dataclass(frozen=True)
class StabilizationPolicy:
    """Acceptance rule for f-power rank stabilization.

    A rank sequence is accepted once it is constant over `window` consecutive
    powers and the landing degree k + N*d has reached `min_target_degree`.
    Fields left as None default to window = max(2, n) and
    min_target_degree = (n+1)*d, the first degree past the range where the
    transition maps are known to become isomorphisms.  Rank 0 is accepted
    immediately: once every image vanishes it stays zero at higher powers.
    """

    window: int | None = None
    min_target_degree: int | None = None
    max_power: int = 20

    def resolved(self, n: int, d: int) -> tuple:
        w = self.window if self.window is not None else max(2, n)
        mt = self.min_target_degree if self.min_target_degree is not None else (n + 1) * d
        if w < 2:
            raise InputError("stabilization window must be at least 2")
        if self.max_power < w:
            raise InputError("stabilization max_power must be at least the window")
        return w, mt, self.max_power


@dataclass(frozen=True)
class StabilizationCertificate:
    """Evidence for one stabilized rank: the full trace of powers tried."""
    degree: int
    values: tuple          # rank of f^N out of degree k, N = 0..power
    power: int
    landing_degree: int
    early_zero: bool

    @property
    def value(self) -> int:
        return self.values[-1]


@dataclass(frozen=True)
class BrieskornSlice:
    """Degree-k piece of H_f: ambient monomial basis plus relation subspace."""
    k: int
    ambient: tuple         # monomial basis of C[x]_{k-n-1}, coefficient order
    relations: Subspace

    @property
    def dim(self) -> int:
        return len(self.ambient) - self.relations.dim


class _BrieskornContext:
    """Per-polynomial cache of relation subspaces and f-powers.

    Degree caches behave as write-once maps (setdefault), so slices for
    distinct degrees may be filled in concurrently.
    """

    def __init__(self, f: Poly):
        if not isinstance(f, Poly):
            raise InputError("expected a Poly")
        if f.is_zero() or not f.is_homogeneous():
            raise InputError("f must be a nonzero homogeneous polynomial")
        if f.nvars < 2:
            raise InputError("f must have at least two variables")
        self.d = f.homogeneous_degree()
        if self.d < 1:
            raise InputError("f must be nonconstant")
        if not is_squarefree(f):
            raise InputError("f must be reduced (squarefree)")
        self.nvars = f.nvars
        self.n = f.nvars - 1
        fint, _ = f.integer_scaled()
        self.f = fint
        self.partials = [list(fint.partial(i).terms.items()) for i in range(self.nvars)]
        self._index: dict[int, dict] = {}
        self._rel: dict[int, Subspace] = {}
        self._pow: dict[int, Poly] = {0: Poly.constant(self.nvars, 1), 1: fint}

    def index(self, m: int) -> dict:
        got = self._index.get(m)
        if got is None:
            basis = monomial_basis(self.nvars, m)
            got = self._index.setdefault(m, {mono: i for i, mono in enumerate(basis)})
        return got

    def fpower(self, N: int) -> Poly:
        got = self._pow.get(N)
        if got is None:
            got = self._pow.setdefault(N, self.fpower(N - 1) * self.f)
        return got

    def relation_rows(self, k: int) -> list:
        gdeg = k - self.d - self.n + 1
        if gdeg < 0:
            return []
        idx = self.index(k - self.n - 1)
        rows = []
        for g in monomial_basis(self.nvars, gdeg):
            for a in range(self.nvars):
                ea = g[a]
                for b in range(a + 1, self.nvars):
                    eb = g[b]
                    row: dict = {}
                    if eb:
                        gb = g[:b] + (eb - 1,) + g[b + 1:]
                        for mono, c in self.partials[a]:
                            col = idx[mono_mul(mono, gb)]
                            row[col] = row.get(col, 0) + c * eb
                    if ea:
                        ga = g[:a] + (ea - 1,) + g[a + 1:]
                        for mono, c in self.partials[b]:
                            col = idx[mono_mul(mono, ga)]
                            row[col] = row.get(col, 0) - c * ea
                    row = {col: v for col, v in row.items() if v}
                    if row:
                        content = 0
                        for v in row.values():
                            content = gcd(content, v)
                        if content > 1:
                            row = {col: v // content for col, v in row.items()}
                        rows.append(row)
        return rows

    def relations(self, k: int) -> Subspace:
        got = self._rel.get(k)
        if got is None:
            ambient = len(self.index(k - self.n - 1)) if k >= self.n + 1 else 0
            built = Subspace._from_int_rows(self.relation_rows(k), ambient)
            got = self._rel.setdefault(k, built)
        return got

    def vector(self, p: Poly, m: int) -> dict:
        """Coordinates of a degree-m polynomial in the cached basis order."""
        idx = self.index(m)
        return {idx[mono]: c for mono, c in p.terms.items()}

    def hf_dim(self, k: int) -> int:
        if k < self.n + 1:
            return 0
        return len(self.index(k - self.n - 1)) - self.relations(k).dim

    def power_rank(self, k: int, N: int) -> int:
        """Rank of multiplication by f^N from H_{f,k} to H_{f,k+Nd}."""
        if k < self.n + 1:
            return 0
        if N == 0:
            return self.hf_dim(k)
        src = monomial_basis(self.nvars, k - self.n - 1)
        fN = self.fpower(N)
        target_k = k + N * self.d
        rel = self.relations(target_k)
        mt = target_k - self.n - 1
        reduced = []
        for mono in src:
            v = rel.reduce(self.vector(fN.shift(mono), mt))
            if v:
                reduced.append(v)
        if not reduced:
            return 0
        return rank_of_vectors(reduced, len(self.index(mt)))

    def span_rank(self, k: int, N: int, polys) -> int:
        """Rank of the span of the classes of f^N * p in H_{f,k+Nd}."""
        if k < self.n + 1:
            return 0
        fN = self.fpower(N)
        target_k = k + N * self.d
        rel = self.relations(target_k)
        mt = target_k - self.n - 1
        reduced = []
        for p in polys:
            v = rel.reduce(self.vector(fN * p, mt))
            if v:
                reduced.append(v)
        if not reduced:
            return 0
        return rank_of_vectors(reduced, len(self.index(mt)))


_contexts: dict[Poly, _BrieskornContext] = {}
_contexts_lock = Lock()


def _ctx(f: Poly) -> _BrieskornContext:
    got = _contexts.get(f)
    if got is None:
        built = _BrieskornContext(f)
        with _contexts_lock:
            got = _contexts.setdefault(f, built)
    return got


def relation_space(f: Poly, k: int) -> Subspace:
    """(df^dOmega^{n-1})_k inside C[x]_{k-n-1} coordinates."""
    return _ctx(f).relations(k)


def brieskorn_slice(f: Poly, k: int) -> BrieskornSlice:
    ctx = _ctx(f)
    ambient = tuple(monomial_basis(ctx.nvars, k - ctx.n - 1)) if k >= ctx.n + 1 else ()
    sl = BrieskornSlice(k, ambient, ctx.relations(k))
    if sl.dim < 0:
        raise InvariantError("negative Brieskorn dimension")
    return sl


def hf_dim(f: Poly, k: int) -> int:
    """dim H_{f,k}; zero below degree n+1."""
    return _ctx(f).hf_dim(k)


def f_power_image_dim(f: Poly, k: int, N: int) -> int:
    """Rank of the induced multiplication by f^N, H_{f,k} -> H_{f,k+Nd}."""
    if N < 0:
        raise InputError("power must be nonnegative")
    return _ctx(f).power_rank(k, N)


def _stabilize(ctx: _BrieskornContext, k: int, policy: StabilizationPolicy,
               polys=None) -> StabilizationCertificate:
    window, min_target, max_power = policy.resolved(ctx.n, ctx.d)
    values = []
    for N in range(max_power + 1):
        v = ctx.power_rank(k, N) if polys is None else ctx.span_rank(k, N, polys)
        if values and v > values[-1]:
            raise InvariantError(
                f"rank of f^N out of degree {k} increased from {values[-1]} to {v} at N={N}")
        values.append(v)
        landing = k + N * ctx.d
        if v == 0:
            return StabilizationCertificate(k, tuple(values), N, landing, True)
        if (len(values) >= window and landing >= min_target
                and len(set(values[-window:])) == 1):
            return StabilizationCertificate(k, tuple(values), N, landing, False)
    raise StabilizationError(
        f"rank out of degree {k} did not stabilize within {max_power} powers "
        f"(trace {values})", k, values)


def hbar_dim(f: Poly, k: int, policy: StabilizationPolicy | None = None) -> int:
    """dim of the degree-k piece of the torsion-free quotient of H_f."""
    return hbar_certificate(f, k, policy).value


def hbar_certificate(f: Poly, k: int, policy: StabilizationPolicy | None = None) -> StabilizationCertificate:
    return _stabilize(_ctx(f), k, policy or StabilizationPolicy())


def stabilized_span_rank(f: Poly, k: int, polys, policy: StabilizationPolicy | None = None) -> StabilizationCertificate:
    """Stabilized rank of the span of the given classes inside the degree-k
    piece of the torsion-free quotient.

    Each p must be homogeneous of degree k-n-1 (the coefficient of omega_0);
    zero polynomials are allowed and contribute nothing.
    """
    ctx = _ctx(f)
    use = []
    for p in polys:
        if not isinstance(p, Poly) or p.nvars != ctx.nvars:
            raise InputError("span polynomials must live in the same ring as f")
        if p.is_zero():
            continue
        if not p.is_homogeneous() or p.homogeneous_degree() != k - ctx.n - 1:
            raise InputError(f"span polynomial must be homogeneous of degree {k - ctx.n - 1}")
        use.append(p)
    return _stabilize(ctx, k, policy or StabilizationPolicy(), polys=use)


@dataclass(frozen=True)
class PoleFiltrationReport:
    """dims[q] = dim P^{n-q} H^n(U) for q = 0..n, with their certificates."""
    n: int
    d: int
    dims: tuple
    certificates: tuple

    @property
    def total_dim(self) -> int:
        return self.dims[-1]


def pole_filtration_dims(f: Poly, policy: StabilizationPolicy | None = None) -> PoleFiltrationReport:
    """Pole-order filtration on H^n(U), U the complement of f = 0 in P^n.

    dim P^{n-q} = stabilized dim of the torsion-free quotient in degree
    (q+1)d.  The filtration is exhausted from q = n-1 on; both that and
    monotonicity are asserted on the computed values.
    """
    ctx = _ctx(f)
    policy = policy or StabilizationPolicy()
    certs = [_stabilize(ctx, (q + 1) * ctx.d, policy) for q in range(ctx.n + 1)]
    dims = tuple(c.value for c in certs)
    for q in range(ctx.n):
        if dims[q] > dims[q + 1]:
            raise InvariantError(f"pole filtration dims decreased at q={q}: {dims}")
    if ctx.n >= 1 and dims[ctx.n - 1] != dims[ctx.n]:
        raise InvariantError(
            f"pole filtration not exhausted at q=n-1: {dims}")
    return PoleFiltrationReport(ctx.n, ctx.d, dims, tuple(certs))


def milnor_eigenspace_dim(f: Poly, i: int, policy: StabilizationPolicy | None = None) -> int:
    """dim of the monodromy eigenspace of H^n of the Milnor fiber of the cone,
    for eigenvalue exp(2*pi*sqrt(-1)*i/d).

    Computed in degree (n+2)d - i and cross-checked against (n+1)d - i; the
    two must agree since the transition maps are isomorphisms there.
    """
    ctx = _ctx(f)
    if not 0 <= i < ctx.d:
        raise InputError(f"eigenvalue index must lie in [0, {ctx.d})")
    policy = policy or StabilizationPolicy()
    main = _stabilize(ctx, (ctx.n + 2) * ctx.d - i, policy)
    check = _stabilize(ctx, (ctx.n + 1) * ctx.d - i, policy)
    if main.value != check.value:
        raise InvariantError(
            f"Milnor eigenspace cross-check failed at i={i}: "
            f"{main.value} (degree {main.degree}) vs {check.value} (degree {check.degree})")
    return main.value


class BrianconSkodaResult:
    """Outcome of the membership test f^N * omega_0 in df^dOmega^{n-1}.

    Truthy iff the membership holds for some N; then witness_power is the
    smallest such N.
    """

    __slots__ = ("holds", "witness_power", "certificate")

    def __init__(self, holds: bool, witness_power, certificate):
        self.holds = holds
        self.witness_power = witness_power
        self.certificate = certificate

    def __bool__(self) -> bool:
        return self.holds

    def __eq__(self, other) -> bool:
        if isinstance(other, bool):
            return self.holds == other
        if isinstance(other, BrianconSkodaResult):
            return (self.holds, self.witness_power) == (other.holds, other.witness_power)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.holds, self.witness_power))

    def __repr__(self) -> str:
        if self.holds:
            return f"BrianconSkodaResult(holds=True, witness_power={self.witness_power})"
        return "BrianconSkodaResult(holds=False)"


def briancon_skoda(f: Poly, policy: StabilizationPolicy | None = None) -> BrianconSkodaResult:
    """Whether some power of f kills the class of omega_0.

    Equivalent to the degree-(n+1) piece of the torsion-free quotient being
    zero.  The stabilization scan visits powers in order and stops at the
    first rank drop to zero, so a positive answer comes with the smallest
    witness; a negative answer carries the stabilization certificate.
    """
    ctx = _ctx(f)
    cert = _stabilize(ctx, ctx.n + 1, policy or StabilizationPolicy())
    if cert.early_zero:
        return BrianconSkodaResult(True, cert.power, cert)
    return BrianconSkodaResult(False, None, cert)


def gauss_manin_identity_check(f: Poly, P: Poly) -> bool:
    """Exterior-algebra identities behind the Gauss-Manin transition maps.

    For omega = P*omega_0 graded of total degree k, checks exactly that
    df ^ iota_xi(omega) = f*omega and d(iota_xi(omega)) = (k/d)*omega.
    """
    ctx = _ctx(f)
    if not isinstance(P, Poly) or P.nvars != ctx.nvars:
        raise InputError("P must be a Poly in the same variables as f")
    if P.is_zero():
        return True
    if not P.is_homogeneous():
        raise InputError("P must be homogeneous")
    omega = omega0(ctx.nvars).scale(P)
    xi = EulerField(ctx.nvars, ctx.d)
    eta = iota_euler(omega, xi)
    df = Form.from_terms(ctx.nvars, 1, {(i,): ctx.f.partial(i) for i in range(ctx.nvars)})
    if wedge(df, eta) != omega.scale(ctx.f):
        return False
    k = P.homogeneous_degree() + ctx.nvars
    return exterior_d(eta) == omega.scale(Fraction(k, ctx.d))


def coker_check_prop16(f: Poly, k: int) -> bool:
    """dim H_{f,k} - rank(f: H_{f,k-d} -> H_{f,k}) against dim R_{k-n-1}.

    The cokernel of the transition map is the Jacobian ring shifted by n+1;
    this verifies the two sides degree by degree.
    """
    ctx = _ctx(f)
    if k < ctx.n + 1:
        raise InputError(f"degree must be at least n+1 = {ctx.n + 1}")
    lhs = ctx.hf_dim(k) - ctx.power_rank(k - ctx.d, 1)
    return lhs == jacobian_dim(f, k - ctx.n - 1)
