"""Bernstein-Sato ideals of a factorization, with exact witnesses.

The annihilator of F^S is taken to be the left ideal generated by theta_F
(the derivation-shaped operators from psi_F); this equals the full
annihilator exactly under the recorded hypotheses, and is contained in it
unconditionally.  B_F is then Q[S] cap (D[S]*f + D[S]*theta_F), computed by
a left GB under an order eliminating {x, dx}.  The elimination is admissible
because every commutator relation dx*x = x*dx + 1 replaces a product by
strictly smaller monomials under any global order, so Buchberger theory for
this solvable relation set carries over verbatim.

A generator b of B_F is not just a membership fact: tracking cofactors
through the same GB writes b = sum c_i theta_i + Q*f, and then Q is an
operator with Q . (f*F^S) = b(S)*F^S -- the functional equation, verified
exactly through the formal-calculus action.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .arrange import rational_roots
from .gb import DEFAULT_LIMITS, IdealHandle, Limits
from .ring import MonomialOrder, Poly, VarContext
from .weyl import (
    FSElement,
    WeylContext,
    WeylOp,
    apply_to_FS,
    left_normal_form,
    weyl_left_gb,
)
from .logder import FactorizationSpec


class WitnessExtractionFailed(Exception):
    """The cofactor log did not produce a verified functional equation."""


def elimination_order(wctx: WeylContext) -> MonomialOrder:
    """{x, dx} >> {S}: any monomial containing x or dx beats any pure-S
    monomial, so the pure-S part of a left GB generates the intersection
    with Q[S].  Realized as weight 1 on x and dx, weight 0 on S, grevlex
    tie -- much lighter in practice than a lexicographic block order."""
    w = [0] * wctx.nv
    for name in list(wctx.x_names) + list(wctx.dx_names):
        w[wctx.vc.index[name]] = 1
    return MonomialOrder.weighted(w)


def s_context(fspec: FactorizationSpec) -> VarContext:
    return VarContext([("S", fspec.s_names)])


# ---------------------------------------------------------------------------
# annihilator


@dataclass
class AnnResult:
    fspec: FactorizationSpec
    theta: List[WeylOp]
    validity: str                 # "full" or "contained"
    hypotheses: Dict[str, Tuple[str, str]] = field(default_factory=dict)


def ann_FS(fspec: FactorizationSpec, limits: Limits = DEFAULT_LIMITS,
           assume_hypotheses: bool = False) -> AnnResult:
    """D[S]*theta_F with a validity tag.

    validity "full": the hypotheses under which this is the whole
    annihilator of F^S hold (or were assumed); "contained": only the always
    -true containment is claimed.  Containment itself is verified here by
    letting every generator act on F^S."""
    theta = fspec.theta_generators(limits)
    for t in theta:
        res = apply_to_FS(t, fspec)
        if not res.is_zero():
            raise AssertionError("theta generator failed to annihilate F^S")
    if assume_hypotheses:
        return AnnResult(fspec, theta, "full",
                         {"assumed": ("yes", "caller asserted the hypotheses")})
    hyps = fspec.check_hypotheses(limits)
    needed = ("strong_euler_origin", "saito_holonomic", "tame")
    ok = all(hyps[k][0] == "yes" for k in needed)
    return AnnResult(fspec, theta, "full" if ok else "contained", hyps)


# ---------------------------------------------------------------------------
# the Bernstein-Sato ideal


@dataclass
class BSResult:
    fspec: FactorizationSpec
    ideal: IdealHandle            # in Q[S]
    gb: List[Poly]
    principal_generator: Optional[Poly]
    validity: str
    hypotheses: Dict[str, Tuple[str, str]]

    def roots_if_principal(self) -> Optional[List[Tuple[Fraction, int]]]:
        if self.principal_generator is None or self.fspec.r != 1:
            return None
        roots, rest = univariate_roots(self.principal_generator)
        return roots if rest.is_constant() else None


def bs_ideal(fspec: FactorizationSpec, limits: Limits = DEFAULT_LIMITS,
             assume_hypotheses: bool = False,
             order: Optional[MonomialOrder] = None) -> BSResult:
    ann = ann_FS(fspec, limits, assume_hypotheses)
    wctx = fspec.weyl
    order = order or elimination_order(wctx)
    gens = list(ann.theta) + [WeylOp.from_poly(wctx, fspec.f_xs)]
    G = weyl_left_gb(gens, order, limits)
    svc = s_context(fspec)
    s_gens = [g.s_polynomial_part().map_context(svc)
              for g in G if g.xd_free()]
    if not s_gens:
        ideal = IdealHandle.zero(svc)
        gb: List[Poly] = []
    else:
        ideal = IdealHandle(s_gens, limits=limits)
        gb = ideal.gb()
    principal = gb[0] if len(gb) == 1 else None
    if ann.validity != "full":
        validity = "lower bound for B_F (annihilator only contained)"
    else:
        validity = "full"
    return BSResult(fspec, ideal, gb, principal, validity, ann.hypotheses)


# ---------------------------------------------------------------------------
# functional-equation witnesses


def functional_equation_witness(fspec: FactorizationSpec, b: Poly,
                                limits: Limits = DEFAULT_LIMITS) -> WeylOp:
    """Q with Q . (f*F^S) = b(S)*F^S, verified exactly.

    b is a polynomial in the s-variables.  Cofactors are tracked through the
    elimination GB of (theta_F, f): writing b = sum c_i theta_i + Q f and
    letting both sides act on F^S kills every theta term."""
    wctx = fspec.weyl
    order = elimination_order(wctx)
    theta = fspec.theta_generators(limits)
    gens = list(theta) + [WeylOp.from_poly(wctx, fspec.f_xs)]
    G, C = weyl_left_gb(gens, order, limits, track=True)
    b_op = WeylOp.from_poly(wctx, b)
    cof = [WeylOp.zero(wctx) for _ in gens]
    rem = left_normal_form(b_op, G, order, limits,
                           cofactors=cof, basis_cofactors=C)
    if not rem.is_zero():
        raise WitnessExtractionFailed(
            f"{b} is not in the computed Bernstein-Sato ideal")
    Q = cof[-1]
    # verification: Q . (f * F^S) equals b * F^S
    start = FSElement(fspec, fspec.f_xs, 0)
    lhs = apply_to_FS(Q, fspec, start=start)
    b_xs = b.map_context(fspec.xs_vc)
    rhs = FSElement(fspec, b_xs, 0)
    if not lhs == rhs:
        raise WitnessExtractionFailed("cofactor log produced an unverified Q")
    return Q


# ---------------------------------------------------------------------------
# hyperplanes and zero-set reporting


def hyperplane_containment(B, ell: Poly) -> bool:
    """Is V(ell) inside the zero set of B?  (B: BSResult or IdealHandle.)

    ell must be affine-linear and nonconstant.  Solve ell = 0 for a variable
    with nonzero coefficient and substitute the parametrization into every
    generator; containment holds iff all vanish identically."""
    gens = B.gb if isinstance(B, BSResult) else B.gens
    if ell.is_zero() or any(sum(e) > 1 for e in ell.terms):
        raise ValueError("hyperplane form must be affine-linear")
    svc = ell.ctx
    pivot = None
    for e in ell.terms:
        if sum(e) == 1:
            pivot = e.index(1)
            break
    if pivot is None:
        raise ValueError("hyperplane form must be nonconstant")
    a = ell.terms[tuple(1 if i == pivot else 0 for i in range(svc.n))]
    rest = ell - Poly(svc, {tuple(1 if i == pivot else 0
                                  for i in range(svc.n)): a})
    parametrization = rest * (Fraction(-1) / a)
    name = svc.names[pivot]
    for g in gens:
        if not g.subs({name: parametrization}).is_zero():
            return False
    return True


def univariate_roots(b: Poly) -> Tuple[List[Tuple[Fraction, int]], Poly]:
    """Rational roots (with multiplicity) of a univariate polynomial, plus
    the root-free leftover factor (monic)."""
    ctx = b.ctx
    used = [i for i in range(ctx.n) if any(e[i] for e in b.terms)]
    if len(used) > 1:
        raise ValueError("not univariate")
    if not used:
        return [], b
    i = used[0]
    deg = max(e[i] for e in b.terms)
    coeffs = [Fraction(0)] * (deg + 1)
    for e, c in b.terms.items():
        coeffs[e[i]] = c
    roots = rational_roots(coeffs)
    rem = b
    for rho, m in roots:
        lin = Poly.var(ctx, ctx.names[i]) - Poly.const(ctx, rho)
        for _ in range(m):
            from .ring import divide_exact
            rem = divide_exact(rem, lin)
            assert rem is not None
    lc = rem.terms[max(rem.terms, key=lambda e: e[i])] if not rem.is_constant() \
        else rem.constant_coeff()
    if lc not in (0, 1):
        rem = rem * (Fraction(1) / lc)
    return roots, rem


def format_principal(b: Poly) -> str:
    """Render a monic univariate generator as cleared-denominator linear
    factors, e.g. (s+1)^2*(3*s+4)/3, with any root-free part verbatim."""
    roots, rest = univariate_roots(b)
    ctx = b.ctx
    used = [i for i in range(ctx.n) if any(e[i] for e in b.terms)]
    name = ctx.names[used[0]] if used else ctx.names[0]
    parts = []
    denom = 1
    for rho, m in sorted(roots, key=lambda rm: rm[0], reverse=True):
        q = rho.denominator
        p = -rho.numerator  # root -p/q gives factor q*s + p
        head = name if q == 1 else f"{q}*{name}"
        if p > 0:
            fac = f"({head}+{p})"
        elif p < 0:
            fac = f"({head}-{-p})"
        else:
            fac = f"({head})"
        if m > 1:
            fac += f"^{m}"
        parts.append(fac)
        denom *= q ** m
    if not rest.is_constant() or (rest.constant_coeff() not in (0, 1)):
        parts.append(f"({rest})")
    if not parts:
        return str(b)
    out = "*".join(parts)
    if denom > 1:
        out += f"/{denom}"
    return out


def detect_hyperplane_factors(p: Poly, degrees: Sequence[int]
                              ) -> Tuple[List[Tuple[Poly, int]], Poly]:
    """Peel linear factors of the candidate shapes s_k + c and
    sum_k d_k s_k + c (c a small positive integer) off p by trial division.

    Returns (factors with multiplicity, leftover).  This is a reporting
    heuristic, not a factorization engine: the leftover is whatever no
    candidate divides."""
    from .ring import divide_exact
    ctx = p.ctx
    r = ctx.n
    cmax = sum(degrees) + len(degrees) + r + 2
    candidates: List[Poly] = []
    for k in range(r):
        for c in range(1, cmax + 1):
            candidates.append(Poly.var(ctx, ctx.names[k]) + Poly.const(ctx, c))
    dsum = Poly.zero(ctx)
    for k, d in enumerate(degrees):
        dsum = dsum + Poly.var(ctx, ctx.names[k]) * d
    if not dsum.is_zero() and sum(1 for d in degrees if d) > 1:
        for c in range(1, cmax + 1):
            candidates.append(dsum + Poly.const(ctx, c))
    factors: List[Tuple[Poly, int]] = []
    work = p
    for cand in candidates:
        mult = 0
        while True:
            q = divide_exact(work, cand)
            if q is None:
                break
            work = q
            mult += 1
        if mult:
            factors.append((cand, mult))
    return factors, work


def diagonal_substitution(I: IdealHandle, limits: Limits = DEFAULT_LIMITS
                          ) -> IdealHandle:
    """Image of an ideal of Q[s_1..s_r] under s_k -> s (one variable)."""
    svc = I.ctx
    one = VarContext([("S", ["s"])])
    gens = []
    for g in I.gens:
        terms: Dict[Tuple[int, ...], Fraction] = {}
        for e, c in g.terms.items():
            ee = (sum(e),)
            terms[ee] = terms.get(ee, Fraction(0)) + c
        q = Poly(one, {e: c for e, c in terms.items() if c != 0})
        if not q.is_zero():
            gens.append(q)
    return IdealHandle(gens, limits=limits) if gens else IdealHandle.zero(one)


# ---------------------------------------------------------------------------
# coarsening (merging the last two factors)


def coarsen_last_two(fspec: FactorizationSpec) -> FactorizationSpec:
    if fspec.r < 2:
        raise ValueError("need at least two factors to coarsen")
    factors = list(fspec.factors[:-2]) + [fspec.factors[-2] * fspec.factors[-1]]
    return FactorizationSpec(fspec.x_names, factors)


def merge_last_s(P: WeylOp, src: FactorizationSpec,
                 dst: FactorizationSpec) -> WeylOp:
    """Send s_{r-1}, s_r of src both onto the last s-variable of dst."""
    wsrc, wdst = src.weyl, dst.weyl
    n, r = src.n, src.r
    out: Dict[Tuple[int, ...], Fraction] = {}
    for e, c in P.terms.items():
        ee = [0] * wdst.nv
        for i in range(2 * n):
            ee[i] = e[i]
        for k in range(r - 2):
            ee[wdst.vc.index[dst.s_names[k]]] = e[wsrc.vc.index[src.s_names[k]]]
        merged = e[wsrc.vc.index[src.s_names[r - 2]]] \
            + e[wsrc.vc.index[src.s_names[r - 1]]]
        ee[wdst.vc.index[dst.s_names[-1]]] += merged
        key = tuple(ee)
        out[key] = out.get(key, Fraction(0)) + c
    return WeylOp(wdst, {e: c for e, c in out.items() if c != 0})


def diagonal_restriction_check(src: FactorizationSpec,
                               dst: Optional[FactorizationSpec] = None,
                               limits: Limits = DEFAULT_LIMITS) -> bool:
    """Do the theta_F generators, after identifying the last two s-variables,
    generate exactly theta_G for the coarsened factorization G?"""
    dst = dst or coarsen_last_two(src)
    if dst.f != src.f:
        raise ValueError("coarsening must preserve the product")
    images = [merge_last_s(t, src, dst) for t in src.theta_generators(limits)]
    theta_dst = dst.theta_generators(limits)
    order = elimination_order(dst.weyl)
    G_dst = weyl_left_gb(theta_dst, order, limits)
    for im in images:
        if not left_normal_form(im, G_dst, order, limits).is_zero():
            return False
    G_img = weyl_left_gb(images, order, limits)
    for t in theta_dst:
        if not left_normal_form(t, G_img, order, limits).is_zero():
            return False
    return True
