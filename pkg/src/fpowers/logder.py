"""Logarithmic derivations, Saito bases, Euler fields, the psi map.

A derivation delta = sum a_i d_i is logarithmic for f when delta(f) = c*f;
the module Der(-log f) is computed as a syzygy module of the partials of f
together with -f (the last syzygy coordinate is the cofactor c).  Given a
factorization F = (f_1..f_r), psi_F sends delta to the operator
delta - sum_k b_k s_k with b_k = delta(f_k)/f_k; the images generate the
degree-one part of the annihilator of F^S.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .ring import MonomialOrder, Poly, VarContext, divide_exact
from .gb import (
    DEFAULT_LIMITS, GradedModulePresentation, IdealHandle, Limits,
    NonHomogeneousInput, ResourceLimit, graded_free_resolution, ideal_colon,
    ideal_colon_ideal, krull_dimension, module_contains, syzygies,
)
from .weyl import WeylContext, WeylOp, apply_to_FS


class NotLogarithmicForFactor(Exception):
    """delta(f_k) is not divisible by f_k."""

    def __init__(self, k: int):
        self.k = k
        super().__init__(f"derivation is not logarithmic for factor {k}")


@dataclass
class LogDerivation:
    """delta = sum a_i d_i with a recorded cofactor: delta(f) = cofactor*f."""

    coeffs: Tuple[Poly, ...]
    cofactor: Poly

    def apply(self, p: Poly) -> Poly:
        ctx = p.ctx
        out = Poly.zero(ctx)
        for a, name in zip(self.coeffs, ctx.names):
            out = out + a * p.diff(name)
        return out

    def is_log0(self) -> bool:
        return self.cofactor.is_zero()

    def degree(self) -> int:
        """Max total degree of the coefficients (polynomial degree of delta)."""
        return max((a.total_degree() for a in self.coeffs), default=-1)

    def is_homogeneous(self) -> bool:
        degs = set()
        for a in self.coeffs:
            if a.is_zero():
                continue
            ds = {sum(e) for e in a.terms}
            if len(ds) > 1:
                return False
            degs |= ds
        return len(degs) <= 1

    def to_string(self, x_names: Optional[Sequence[str]] = None) -> str:
        if x_names is None:
            x_names = self.coeffs[0].ctx.names
        parts = []
        for a, x in zip(self.coeffs, x_names):
            if a.is_zero():
                continue
            parts.append(f"({a})*d{x}")
        return " + ".join(parts) if parts else "0"


class FactorizationSpec:
    """F = (f_1, ..., f_r) with f = prod f_k and all derived data.

    Hypothesis flags (strong Euler-homogeneity at the origin, reducedness,
    freeness, tameness, arrangement-ness, Saito-holonomicity) are filled by
    check_hypotheses(); each is "yes"/"no"/"unknown" with a short reason.
    """

    def __init__(self, x_names: Sequence[str], factors: Sequence[Poly]):
        self.x_names = list(x_names)
        self.n = len(self.x_names)
        self.r = len(factors)
        if self.r == 0:
            raise ValueError("need at least one factor")
        self.x_vc = VarContext([("X", self.x_names)])
        self.factors = [p.map_context(self.x_vc) for p in factors]
        for k, fk in enumerate(self.factors, 1):
            if fk.is_zero() or fk.is_constant():
                raise ValueError(f"factor {k} must be nonzero and nonconstant")
        self.f = Poly.const(self.x_vc, 1)
        for fk in self.factors:
            self.f = self.f * fk
        self.degrees = [fk.total_degree() for fk in self.factors]
        self.s_names = [f"s{k+1}" for k in range(self.r)]
        self.weyl = WeylContext(self.x_names, self.s_names)
        self.symbol_vc = self.weyl.symbol_vc
        self.xs_vc = self.weyl.xs_vc
        # data used by the F^S action
        self.f_xs = self.f.map_context(self.xs_vc)
        self.df_xs = [self.f_xs.diff(x) for x in self.x_names]
        self.dfk_xs = [
            [fk.map_context(self.xs_vc).diff(x) for x in self.x_names]
            for fk in self.factors
        ]
        self.cofactor_xs = []
        for fk in self.factors:
            q = divide_exact(self.f_xs, fk.map_context(self.xs_vc))
            assert q is not None
            self.cofactor_xs.append(q)
        self.vanishing_at_origin = all(
            fk.constant_coeff() == 0 for fk in self.factors
        )
        self.hypotheses: Dict[str, Tuple[str, str]] = {}
        self._log_cache: Dict[str, List[LogDerivation]] = {}

    # -- convenience -------------------------------------------------------

    def parse_x(self, text: str) -> Poly:
        from .ring import parse_poly
        return parse_poly(text, self.x_vc)

    def theta_generators(self, limits: Limits = DEFAULT_LIMITS) -> List[WeylOp]:
        """psi_F of the Der(-log f) generators: degree-one annihilators."""
        return [psi_F(d, self, limits=limits)
                for d in log_derivations(self.f, "log", limits)]

    def check_hypotheses(self, limits: Limits = DEFAULT_LIMITS,
                         deep: bool = True) -> Dict[str, Tuple[str, str]]:
        """Fill and return the hypothesis table {name: (verdict, reason)}."""
        h = self.hypotheses
        if h:
            return h
        rep = euler_and_seh_check(self.f)
        h["strong_euler_origin"] = (
            ("yes", rep.reason) if rep.strong_at_origin == "yes"
            else (rep.strong_at_origin, rep.reason)
        )
        red = reducedness_check(self.f, limits)
        h["reduced"] = red
        arr = self.try_arrangement()
        if arr is not None:
            h["arrangement"] = ("yes", "all factors split into linear forms")
        else:
            from .arrange import definitely_not_linear_split
            if any(definitely_not_linear_split(fk) for fk in self.factors):
                h["arrangement"] = ("no", "a factor is certified not a product of linear forms")
            else:
                h["arrangement"] = ("unknown", "no linear splitting found")
        if deep:
            sb = saito_basis(self.f, limits)
            if sb.basis:
                h["free"] = ("yes", "Saito determinant = unit * f")
            elif sb.pdim == 0:
                h["free"] = ("yes", "pdim Der(-log f) = 0 (no determinant certificate)")
            elif sb.pdim is None:
                h["free"] = ("unknown", "no freeness certificate found")
            else:
                h["free"] = ("no", f"pdim Der(-log f) = {sb.pdim}")
            tame = tameness_check(self.f, limits)
            h["tame"] = tame
            if arr is not None:
                h["saito_holonomic"] = ("yes", "hyperplane arrangement")
            else:
                h["saito_holonomic"] = saito_holonomic_check(self.f, limits)
        return h

    def try_arrangement(self):
        """Factor every f_k into linear forms if possible (else None)."""
        from .arrange import linear_form_factorization
        groups = []
        forms: List[Poly] = []
        mults: List[int] = []
        for fk in self.factors:
            fac = linear_form_factorization(fk)
            if fac is None:
                return None
            group = []
            for form, mult in fac:
                # merge proportional forms
                idx = None
                for i, known in enumerate(forms):
                    if _proportional(form, known):
                        idx = i
                        break
                if idx is None:
                    forms.append(form)
                    mults.append(0)
                    idx = len(forms) - 1
                mults[idx] += mult
                group.extend([idx] * mult)
            groups.append(group)
        from .arrange import ArrangementSpec
        return ArrangementSpec(forms, mults, groups, self)


def _proportional(p: Poly, q: Poly) -> bool:
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    ep = next(iter(sorted(p.terms)))
    eq = next(iter(sorted(q.terms)))
    if ep != eq:
        return False
    lam = p.terms[ep] / q.terms[eq]
    return p == q * lam


# ---------------------------------------------------------------------------
# Der(-log f) and Der(-log0 f)


def log_derivations(f: Poly, variant: str = "log",
                    limits: Limits = DEFAULT_LIMITS) -> List[LogDerivation]:
    """Generators of the logarithmic derivation module of f.

    variant "log":  syzygies of (d_1 f, ..., d_n f, -f); the last syzygy
                    coordinate is the cofactor.
    variant "log0": syzygies of (d_1 f, ..., d_n f); cofactor 0.
    """
    if f.is_constant():
        raise ValueError("f must be nonconstant")
    ctx = f.ctx
    partials = [f.diff(x) for x in ctx.names]
    if variant == "log":
        vecs = [(p,) for p in partials] + [(-f,)]
        syz = syzygies(vecs, limits=limits)
        out = []
        for s in syz:
            coeffs = tuple(s[:-1])
            cof = s[-1]
            d = LogDerivation(coeffs, cof)
            assert d.apply(f) == cof * f
            out.append(d)
        return out
    if variant == "log0":
        vecs = [(p,) for p in partials]
        syz = syzygies(vecs, limits=limits)
        out = []
        for s in syz:
            d = LogDerivation(tuple(s), Poly.zero(ctx))
            assert d.apply(f).is_zero()
            out.append(d)
        return out
    raise ValueError(f"unknown variant {variant!r}")


def log_module_contains(f: Poly, delta: LogDerivation,
                        variant: str = "log",
                        limits: Limits = DEFAULT_LIMITS) -> bool:
    """Is delta in the module generated by log_derivations(f, variant)?"""
    gens = log_derivations(f, variant, limits)
    vectors = [list(g.coeffs) + [g.cofactor] for g in gens]
    target = list(delta.coeffs) + [delta.cofactor]
    return module_contains(vectors, target, limits=limits)


# ---------------------------------------------------------------------------
# psi_F


def psi_F(delta: LogDerivation, fspec: FactorizationSpec,
          limits: Limits = DEFAULT_LIMITS) -> WeylOp:
    """delta - sum_k b_k s_k with b_k = delta(f_k)/f_k (exact).

    Raises NotLogarithmicForFactor(k) when the division fails.  The result
    annihilates F^S.
    """
    ctx = fspec.weyl
    out = WeylOp.zero(ctx)
    for a, dname in zip(delta.coeffs, ctx.dx_names):
        out = out + WeylOp.from_poly(ctx, a) * WeylOp.var(ctx, dname)
    for k, fk in enumerate(fspec.factors):
        dfk = delta.apply(fk)
        b = divide_exact(dfk, fk)
        if b is None:
            raise NotLogarithmicForFactor(k + 1)
        out = out - WeylOp.from_poly(ctx, b) * WeylOp.var(ctx, fspec.s_names[k])
    return out


def psi_cofactors(delta: LogDerivation, fspec: FactorizationSpec) -> List[Poly]:
    """The per-factor cofactors b_k = delta(f_k)/f_k."""
    out = []
    for k, fk in enumerate(fspec.factors):
        b = divide_exact(delta.apply(fk), fk)
        if b is None:
            raise NotLogarithmicForFactor(k + 1)
        out.append(b)
    return out


# ---------------------------------------------------------------------------
# Saito bases and freeness


@dataclass
class SaitoResult:
    basis: Optional[List[LogDerivation]]
    det: Optional[Poly]
    pdim: Optional[int]


def saito_basis(f: Poly, limits: Limits = DEFAULT_LIMITS) -> SaitoResult:
    """Search for n generators whose coefficient determinant is unit * f.

    Candidates: the <= 2n lowest-degree generators (homogeneous ones
    preferred).  If no subset certifies freeness, fall back to a projective
    dimension report for Der(-log f): pdim 0 also means free, but without
    a determinant certificate the basis is not returned.
    """
    n = f.ctx.n
    gens = log_derivations(f, "log", limits)
    gens = sorted(gens, key=lambda d: (d.degree(), not d.is_homogeneous()))
    pool = gens[: 2 * n]
    for subset in itertools.combinations(range(len(pool)), n):
        cand = [pool[i] for i in subset]
        det = _det([[d.coeffs[i] for i in range(n)] for d in cand])
        if det.is_zero():
            continue
        q = divide_exact(det, f)
        if q is not None and q.is_constant() and not q.is_zero():
            return SaitoResult(cand, det, 0)
    # fall back: pdim of the derivation module (coefficients shifted 0, the
    # cofactor coordinate shifted 1 so delta(f) = c*f stays homogeneous)
    vectors = [list(g.coeffs) + [g.cofactor] for g in gens]
    if not vectors:
        return SaitoResult(None, None, None)
    try:
        from .gb import vector_degree
        weights = [1] * f.ctx.n
        ambient_shifts = [0] * f.ctx.n + [1]
        gen_degs = [vector_degree(v, weights, ambient_shifts) for v in vectors]
        rels = syzygies(vectors, limits=limits)
        pres = GradedModulePresentation(
            f.ctx, weights, len(vectors), rels, shifts=gen_degs,
        )
        res = graded_free_resolution(pres, limits)
        return SaitoResult(None, None, res.pdim)
    except (NonHomogeneousInput, ResourceLimit):
        return SaitoResult(None, None, None)


def _det(matrix: List[List[Poly]]) -> Poly:
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    ctx = matrix[0][0].ctx
    out = Poly.zero(ctx)
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = matrix[0][j] * _det(minor)
        out = out + (term if j % 2 == 0 else -term)
    return out


# ---------------------------------------------------------------------------
# Euler fields, homogeneity


@dataclass
class EulerReport:
    euler: Optional[LogDerivation]
    strong_at_origin: str          # yes / unknown
    reason: str
    weights: Optional[Tuple[int, ...]] = None


def euler_and_seh_check(f: Poly) -> EulerReport:
    """Detect (quasi-)homogeneity and produce the associated Euler field.

    Homogeneous of degree d: E = (1/d) sum x_i d_i, strong at the origin.
    Quasi-homogeneous with positive integer weights: the weighted analog.
    Anything else: unknown (certified at the origin only).
    """
    ctx = f.ctx
    n = ctx.n
    exps = list(f.terms)
    degs = {sum(e) for e in exps}
    if len(degs) == 1:
        d = degs.pop()
        if d > 0:
            coeffs = tuple(
                Poly.var(ctx, x) * Fraction(1, d) for x in ctx.names
            )
            e = LogDerivation(coeffs, Poly.const(ctx, 1))
            return EulerReport(e, "yes", f"homogeneous of degree {d}")
    w = _positive_weight_vector(exps, n)
    if w is not None:
        d = sum(wi * ei for wi, ei in zip(w, exps[0]))
        coeffs = tuple(
            Poly.var(ctx, x) * Fraction(w[i], d) for i, x in enumerate(ctx.names)
        )
        e = LogDerivation(coeffs, Poly.const(ctx, 1))
        return EulerReport(e, "yes", f"quasi-homogeneous, weights {w}",
                           weights=tuple(w))
    return EulerReport(None, "unknown", "no positive weight vector found")


def _positive_weight_vector(exps, n) -> Optional[List[int]]:
    """Positive integer w with w . e constant over the exponents, if any."""
    if not exps:
        return None
    base = exps[0]
    rows = [tuple(e[i] - base[i] for i in range(n)) for e in exps[1:]]
    rows = [r for r in rows if any(r)]
    # solve rows . w = 0 over Q, then look for a positive point in the
    # nullspace; small n, so scan a small integer box of combinations
    null = _nullspace(rows, n)
    if not null:
        return None
    from itertools import product
    for coeffs in product(range(-6, 7), repeat=len(null)):
        if all(c == 0 for c in coeffs):
            continue
        w = [sum(c * v[i] for c, v in zip(coeffs, null)) for i in range(n)]
        if all(x > 0 for x in w):
            den = 1
            for x in w:
                den = den * x.denominator // _gcd(den, x.denominator)
            wi = [int(x * den) for x in w]
            g = 0
            for x in wi:
                g = _gcd(g, x)
            return [x // g for x in wi]
    return None


def _gcd(a, b):
    import math
    return math.gcd(int(a), int(b))


def _nullspace(rows, n) -> List[List[Fraction]]:
    """Basis of the rational nullspace of the given row vectors."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                lam = m[i][c]
                m[i] = [a - lam * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# tameness


def tameness_check(f: Poly, limits: Limits = DEFAULT_LIMITS):
    """("yes"/"no"/"unknown", reason).  n <= 3 is automatically tame;
    otherwise test pdim(Omega^k(log f)) <= k for 1 <= k <= n, where
    Omega^k(log f) = {eta in Omega^k : df ^ eta in f*Omega^(k+1)}."""
    n = f.ctx.n
    if n <= 3:
        return ("yes", "n <= 3 shortcut")
    table = {}
    try:
        for k in range(1, n + 1):
            pd = _log_forms_pdim(f, k, limits)
            table[k] = pd
            if pd > k:
                return ("no", f"pdim Omega^{k}(log f) = {pd} > {k}; table {table}")
        return ("yes", f"pdim table {table}")
    except ResourceLimit as e:
        return ("unknown", f"resource limit: {e}; partial table {table}")


def _log_forms_pdim(f: Poly, k: int, limits: Limits) -> int:
    """pdim of Omega^k(log f) inside the free module on basis dx_I, |I|=k."""
    ctx = f.ctx
    n = ctx.n
    if k >= n:
        # df ^ eta lands in the zero module: every eta qualifies, free module
        return 0
    I_list = list(itertools.combinations(range(n), k))
    J_list = list(itertools.combinations(range(n), k + 1))
    pos = {J: idx for idx, J in enumerate(J_list)}
    partials = [f.diff(x) for x in ctx.names]
    zero = Poly.zero(ctx)
    # column for dx_I: (df ^ dx_I)_J entries; plus columns f*e_J
    cols = []
    for I in I_list:
        col = [zero] * len(J_list)
        for i in range(n):
            if i in I:
                continue
            J = tuple(sorted(I + (i,)))
            sign = (-1) ** sum(1 for a in I if a < i)
            col[pos[J]] = col[pos[J]] + partials[i] * sign
        cols.append(tuple(col))
    for J in J_list:
        col = [zero] * len(J_list)
        col[pos[J]] = f
        cols.append(tuple(col))
    syz = syzygies(cols, limits=limits)
    gens = []
    for s in syz:
        head = tuple(s[: len(I_list)])
        if any(not p.is_zero() for p in head):
            gens.append(head)
    if not gens:
        return 0
    from .gb import vector_degree
    weights = [1] * n
    gen_degs = [vector_degree(v, weights, [0] * len(I_list)) for v in gens]
    rels = syzygies(gens, limits=limits)
    pres = GradedModulePresentation(ctx, weights, len(gens), rels,
                                    shifts=gen_degs)
    res = graded_free_resolution(pres, limits)
    return res.pdim


# ---------------------------------------------------------------------------
# Koszul-freeness and reducedness


def koszul_free_check(f: Poly, basis: Sequence[LogDerivation],
                      limits: Limits = DEFAULT_LIMITS) -> bool:
    """Do the (0,1) symbols of a Saito basis form a regular sequence in
    Q[x,y]?  Tested by successive colon-ideal stabilization."""
    n = f.ctx.n
    wc = WeylContext(list(f.ctx.names), [])
    sym = wc.symbol_vc
    symbols = []
    for d in basis:
        s = Poly.zero(sym)
        for i, a in enumerate(d.coeffs):
            s = s + a.map_context(sym) * Poly.var(sym, wc.y_names[i])
        symbols.append(s)
    prev: List[Poly] = []
    for s in symbols:
        I = IdealHandle(prev) if prev else IdealHandle.zero(sym)
        C = ideal_colon(I, s, limits)
        if not I.contains_ideal(C):
            return False
        prev.append(s)
    # the sequence must also not exhaust the ring
    return not IdealHandle(symbols).is_unit_ideal()


def saito_holonomic_check(f: Poly, limits: Limits = DEFAULT_LIMITS
                          ) -> Tuple[str, str]:
    """Rank stratification of the log-derivation module.

    The divisor is Saito-holonomic iff the locus where the module's fibers
    have rank exactly i is at most i-dimensional, for every i.  With
    V_i = zero set of the (i+1)-minors of the generator coefficient matrix
    (the rank-<=i locus) this is equivalent to dim V_i <= i for i < n,
    because V_i is the union of the rank-j loci over j <= i.
    """
    ctx = f.ctx
    n = ctx.n
    gens = log_derivations(f, "log", limits)
    rows = [[d.coeffs[j] for j in range(n)] for d in gens]
    for i in range(n):
        minors = []
        for rsel in itertools.combinations(range(len(rows)), i + 1):
            for csel in itertools.combinations(range(n), i + 1):
                m = _det([[rows[a][b] for b in csel] for a in rsel])
                if not m.is_zero():
                    minors.append(m)
        if not minors:
            # fiber rank <= i everywhere: the top stratum itself is too big
            return ("no", f"fiber rank <= {i} on all of affine {n}-space")
        d = krull_dimension(IdealHandle(minors, limits=limits), limits)
        if d > i:
            return ("no", f"rank-<={i} locus of the log-derivation fibers "
                          f"has dimension {d}")
    return ("yes", "every rank-i locus of the log-derivation fibers has "
                   "dimension at most i")


def reducedness_check(f: Poly, limits: Limits = DEFAULT_LIMITS):
    """("yes"/"no"/"unknown", reason): f squarefree iff ((f) : Jac(f)) = (f).

    Over Q in characteristic zero the colon strictly grows exactly when f
    has a repeated factor.
    """
    ctx = f.ctx
    jac = [f.diff(x) for x in ctx.names]
    jac = [p for p in jac if not p.is_zero()]
    if not jac:
        return ("no", "constant-like input")
    try:
        F = IdealHandle([f])
        J = IdealHandle(jac)
        C = ideal_colon_ideal(F, J, limits)
        if F.contains_ideal(C):
            return ("yes", "(f):Jac(f) = (f)")
        return ("no", "(f):Jac(f) strictly contains (f)")
    except ResourceLimit as e:
        return ("unknown", f"resource limit: {e}")
