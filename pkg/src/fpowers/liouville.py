"""Liouville-type symbol ideals of a factorization, and their certificates.

For F = (f_1, ..., f_r) with f = prod f_k, work in Q[x, y, S] where y_i is
the (0,1,1)-symbol of d_i:

  L_F      = ideal of symbols of psi_F(Der(-log0 f)),
  Ltilde_F = ideal of symbols of psi_F(Der(-log f))  (all of theta_F),
  In010    = initial ideal of L_F when y-degree is the grading weight.

The ideal-theoretic backbone: Ltilde_F always sits inside ker(phi_F), the
defining ideal of the multi-Rees algebra of the Jacobian-type modules; when
the two coincide we get a primality certificate for Ltilde_F (a kernel into
a domain is prime), which is the computable route to the gr-equality chain.

Homogenization machinery (HOM_u, u-refined initial ideals, the t = 0 / t = 1
fibers) lives here too, since the initial-ideal comparisons ride on it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .gb import (
    DEFAULT_LIMITS,
    IdealHandle,
    Limits,
    eliminate,
    groebner_basis,
    ideal_colon,
    krull_dimension,
)
from .ring import MonomialOrder, Poly, VarContext, exp_weight, initial_form_weights
from .weyl import gr_symbol
from .logder import FactorizationSpec, log_derivations, psi_F


@dataclass
class LiouvilleData:
    fspec: FactorizationSpec
    L_F: IdealHandle
    Ltilde_F: IdealHandle
    In010_LF: IdealHandle


def liouville_symbols(fspec: FactorizationSpec, variant: str,
                      limits: Limits = DEFAULT_LIMITS) -> List[Poly]:
    """Symbols gr_{(0,1,1)}(psi_F(delta)) over Q[x,y,S] for delta running
    through the generators of Der(-log f) or Der(-log0 f)."""
    gens = log_derivations(fspec.f, variant, limits)
    out = []
    for d in gens:
        P = psi_F(d, fspec, limits)
        if P.is_zero():
            continue
        out.append(gr_symbol(P, "(0,1,1)"))
    return out


def build_liouville_ideals(fspec: FactorizationSpec,
                           limits: Limits = DEFAULT_LIMITS) -> LiouvilleData:
    sym_vc = fspec.symbol_vc
    l_gens = liouville_symbols(fspec, "log0", limits)
    lt_gens = liouville_symbols(fspec, "log", limits)
    L = IdealHandle(l_gens, limits=limits) if l_gens else IdealHandle.zero(sym_vc)
    Lt = IdealHandle(lt_gens, limits=limits) if lt_gens else IdealHandle.zero(sym_vc)
    w010 = sym_vc.grading("(0,1,0)")
    In010 = initial_ideal(L, w010, limits)
    return LiouvilleData(fspec, L, Lt, In010)


def initial_ideal(I: IdealHandle, u: Sequence[int],
                  limits: Limits = DEFAULT_LIMITS) -> IdealHandle:
    """In_u(I): the ideal of top u-weight forms, via a u-refined GB.

    A GB under the u-refined order has the property that the u-initial
    forms of its elements generate the full initial ideal."""
    if I.is_zero_ideal():
        return IdealHandle.zero(I.ctx)
    order = MonomialOrder.weighted(u)
    gb = groebner_basis(I.gens, order, limits)
    gens = [initial_form_weights(g, u) for g in gb]
    return IdealHandle(gens, limits=limits)


# ---------------------------------------------------------------------------
# the multi-Rees kernel


def phi_F_kernel(fspec: FactorizationSpec,
                 limits: Limits = DEFAULT_LIMITS) -> IdealHandle:
    """Kernel of Q[x,y,S] -> Q[x,S] with
        x_i |-> x_i,
        y_i |-> sum_k (f/f_k) (d_i f_k) s_k,
        s_k |-> f * s_k.
    Computed from the graph ideal in Q[target][source] by eliminating the
    target copies.  The result is prime: it is the kernel of a map into a
    polynomial ring (a domain)."""
    sym = fspec.symbol_vc
    n, r = fspec.n, fspec.r
    tx = [f"_tx{i+1}" for i in range(n)]
    ts = [f"_ts{k+1}" for k in range(r)]
    big = VarContext([("W", tx + ts)] + list(sym.blocks))

    def tvar(name):
        return Poly.var(big, name)

    def to_big_from_xs(p: Poly) -> Poly:
        # remap a Q[x,S]-polynomial onto the target copies _tx, _ts
        out = Poly.zero(big)
        for e, c in p.terms.items():
            ee = [0] * big.n
            for i in range(n):
                ee[big.index[tx[i]]] = e[fspec.xs_vc.index[fspec.x_names[i]]]
            for k in range(r):
                ee[big.index[ts[k]]] = e[fspec.xs_vc.index[fspec.s_names[k]]]
            out = out + Poly(big, {tuple(ee): c})
        return out

    gens = []
    for i, xn in enumerate(fspec.x_names):
        gens.append(Poly.var(big, xn) - tvar(tx[i]))
    f_t = to_big_from_xs(fspec.f_xs)
    for i in range(n):
        img = Poly.zero(big)
        for k in range(r):
            img = img + to_big_from_xs(fspec.cofactor_xs[k]
                                       * fspec.dfk_xs[k][i]) * tvar(ts[k])
        gens.append(Poly.var(big, fspec.weyl.y_names[i]) - img)
    for k, sn in enumerate(fspec.s_names):
        gens.append(Poly.var(big, sn) - f_t * tvar(ts[k]))
    I = IdealHandle(gens, limits=limits)
    out = eliminate(I, "W", limits)
    # eliminate() returns generators over sym_vc's blocks in original order
    assert out.ctx == sym
    return out


# ---------------------------------------------------------------------------
# gr-equality certificate


def gr_equality_certificate(fspec: FactorizationSpec,
                            limits: Limits = DEFAULT_LIMITS,
                            assume_hypotheses: bool = False) -> Dict[str, object]:
    """Check Ltilde_F = ker(phi_F) by two-sided membership.

    When the equality holds, Ltilde_F is prime (kernel into a domain).  If in
    addition the recorded hypotheses hold (strong Euler-homogeneity,
    Saito-holonomicity, tameness), the equality certifies the full chain
      Ltilde_F = gr_{(0,1,1)}(Ann F^S) = ker(phi_F).
    """
    data = build_liouville_ideals(fspec, limits)
    K = phi_F_kernel(fspec, limits)
    forward = K.contains_ideal(data.Ltilde_F)
    backward = data.Ltilde_F.contains_ideal(K) if data.Ltilde_F.gens else \
        K.is_zero_ideal()
    equal = forward and backward
    if assume_hypotheses:
        hyps_ok = True
        hyps = {"assumed": ("yes", "caller asserted the hypotheses")}
    else:
        hyps = fspec.check_hypotheses(limits)
        hyps_ok = all(hyps[k][0] == "yes" for k in
                      ("strong_euler_origin", "saito_holonomic", "tame"))
    if equal and hyps_ok:
        conclusion = ("Ltilde_F = gr(Ann F^S) = ker(phi_F); "
                      "Ltilde_F is prime (kernel into a domain)")
    elif equal:
        conclusion = ("Ltilde_F = ker(phi_F), hence prime; the gr(Ann) link "
                      "needs the unverified hypotheses")
    else:
        conclusion = "Ltilde_F != ker(phi_F); no certificate"
    return {
        "Ltilde_eq_kernel": equal,
        "Ltilde_in_kernel": forward,
        "hypotheses_verified": hyps_ok,
        "hypotheses": hyps,
        "primality_certificate": equal,
        "conclusion": conclusion,
    }


# ---------------------------------------------------------------------------
# homogenization (HOM_u) and the u-refined orders


def extend_with_t(ctx: VarContext) -> VarContext:
    return VarContext(list(ctx.blocks) + [("T", ["t"])])


def homogenize_u(I: IdealHandle, u: Sequence[int],
                 limits: Limits = DEFAULT_LIMITS) -> IdealHandle:
    """HOM_u(I) in ctx + t: each GB element g becomes
    sum c * x^e * t^(deg_u(g) - u.e).

    Homogenizing a u-refined GB (not arbitrary generators) is what makes
    this the full ideal generated by the homogenizations of every element
    of I.  Requires nonnegative u and, per the torsion-freeness and fiber
    facts, generators with zero constant term (I inside the irrelevant
    ideal)."""
    if any(w < 0 for w in u):
        raise ValueError("u must be nonnegative")
    for g in I.gens:
        if g.constant_coeff() != 0:
            raise ValueError("homogenize_u requires generators without "
                             "constant term")
    ctx_t = extend_with_t(I.ctx)
    if I.is_zero_ideal():
        return IdealHandle.zero(ctx_t)
    order = MonomialOrder.weighted(u)
    gb = groebner_basis(I.gens, order, limits)
    t_idx = ctx_t.index["t"]
    out = []
    for g in gb:
        d = max(exp_weight(e, tuple(u)) for e in g.terms)
        terms = {}
        for e, c in g.terms.items():
            ee = list(e) + [0]
            ee[t_idx] = d - exp_weight(e, tuple(u))
            terms[tuple(ee)] = c
        out.append(Poly(ctx_t, terms))
    return IdealHandle(out, limits=limits)


def substitute_t(I: IdealHandle, value: int,
                 limits: Limits = DEFAULT_LIMITS) -> IdealHandle:
    """Image of I under t |-> value, as an ideal of the t-free subring."""
    ctx_t = I.ctx
    base = VarContext([(b, vs) for b, vs in ctx_t.blocks if b != "T"])
    t_idx = ctx_t.index["t"]
    gens = []
    for g in I.gens:
        terms: Dict[Tuple[int, ...], Fraction] = {}
        for e, c in g.terms.items():
            coeff = c * Fraction(value) ** e[t_idx]
            if coeff == 0:
                continue
            ee = tuple(v for i, v in enumerate(e) if i != t_idx)
            terms[ee] = terms.get(ee, Fraction(0)) + coeff
        p = Poly(base, {e: c for e, c in terms.items() if c != 0})
        if not p.is_zero():
            gens.append(p)
    return IdealHandle(gens, limits=limits) if gens else IdealHandle.zero(base)


def tau_u_order(u: Sequence[int],
                tie: Optional[MonomialOrder] = None) -> MonomialOrder:
    """Monomial order refining the u-grading (ties by `tie`)."""
    return MonomialOrder.weighted(u, tie)


def tau_u_prime_order(ctx_t: VarContext, u: Sequence[int],
                      tie: Optional[MonomialOrder] = None) -> MonomialOrder:
    """Extension to ctx + t: compare (u,1)-weight first, then *smaller*
    t-degree wins, then the tie order on the t-free part."""
    tie = tie or MonomialOrder.grevlex()
    t_idx = ctx_t.index["t"]
    uprime = tuple(u) + (1,)

    def key(e):
        base = tuple(v for i, v in enumerate(e) if i != t_idx)
        return (exp_weight(e, uprime), -e[t_idx], tie.key(base))

    return MonomialOrder("tau_u_prime", key, f"tau_u'({list(u)})")


def leading_exponents(I: IdealHandle, order: MonomialOrder,
                      limits: Limits = DEFAULT_LIMITS) -> List[Tuple[int, ...]]:
    """Minimal generating exponents of the leading-term ideal under order."""
    if I.is_zero_ideal():
        return []
    gb = groebner_basis(I.gens, order, limits)
    exps = [max(g.terms, key=order.key) for g in gb]
    # prune non-minimal generators
    out = []
    for e in exps:
        if not any(all(a >= b for a, b in zip(e, o)) and e != o
                   for o in exps if o != e):
            out.append(e)
    return sorted(set(out))


def monomial_ideals_equal(exps_a: Sequence[Tuple[int, ...]],
                          exps_b: Sequence[Tuple[int, ...]]) -> bool:
    def contained(A, B):
        return all(any(all(x >= y for x, y in zip(e, b)) for b in B)
                   for e in A)
    if not exps_a or not exps_b:
        return not exps_a and not exps_b
    return contained(exps_a, exps_b) and contained(exps_b, exps_a)


# ---------------------------------------------------------------------------
# randomized property suite for the homogenization toolkit


def homogenization_property_suite(count: int = 20, seed: int = 0,
                                  limits: Limits = DEFAULT_LIMITS
                                  ) -> Dict[str, object]:
    """Check the HOM_u toolkit on `count` random ideals over a coefficient
    ring: 1-2 weight-zero coefficient variables, 1-2 positively weighted main
    variables, every generator term with positive main-variable degree so
    that I sits inside the ideal of the main variables.

    Per ideal: (HOM_u(I):t) = HOM_u(I); the t->0 / t->1 fibers recover
    In_u(I) / I; the leading ideals under the u-refined orders agree up to
    the extra t coordinate; dim In_u(I) >= dim I.
    """
    rng = random.Random(seed)
    tally = {"colon_stable": 0, "fiber_t0": 0, "fiber_t1": 0,
             "initial_identity": 0, "dim_inequality": 0}
    failures: List[str] = []
    checked = 0
    attempts = 0
    while checked < count and attempts < 60 * count:
        attempts += 1
        ncoef = rng.randint(1, 2)
        nmain = rng.randint(1, 2)
        names_r = ["a", "b"][:ncoef]
        names_x = ["w1", "w2"][:nmain]
        vc = VarContext([("R", names_r), ("X", names_x)])
        u = [0] * ncoef + [rng.randint(1, 2) for _ in range(nmain)]
        gens: List[Poly] = []
        for _ in range(rng.randint(1, 3)):
            terms: Dict[Tuple[int, ...], Fraction] = {}
            for _ in range(rng.randint(1, 4)):
                while True:
                    e = tuple(rng.randint(0, 3) for _ in range(vc.n))
                    if sum(e) <= 3 and sum(e[ncoef:]) > 0:
                        break
                c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
                terms[e] = terms.get(e, Fraction(0)) + c
            terms = {e: c for e, c in terms.items() if c}
            if terms:
                gens.append(Poly(vc, terms))
        if not gens:
            continue
        I = IdealHandle(gens, limits=limits)
        checked += 1
        tag = f"trial {checked} (seed {seed})"
        H = homogenize_u(I, u, limits)
        tvar = Poly.var(H.ctx, "t")
        if ideal_colon(H, tvar, limits).equals(H):
            tally["colon_stable"] += 1
        else:
            failures.append(f"{tag}: (HOM_u(I):t) != HOM_u(I)")
        In = initial_ideal(I, u, limits)
        if substitute_t(H, 0, limits).equals(In):
            tally["fiber_t0"] += 1
        else:
            failures.append(f"{tag}: t->0 fiber differs from In_u(I)")
        if substitute_t(H, 1, limits).equals(I):
            tally["fiber_t1"] += 1
        else:
            failures.append(f"{tag}: t->1 fiber differs from I")
        lm_i = leading_exponents(I, tau_u_order(u), limits)
        lm_h = leading_exponents(H, tau_u_prime_order(H.ctx, u), limits)
        if monomial_ideals_equal([e + (0,) for e in lm_i], lm_h):
            tally["initial_identity"] += 1
        else:
            failures.append(f"{tag}: refined-order leading ideals differ")
        if krull_dimension(In, limits) >= krull_dimension(I, limits):
            tally["dim_inequality"] += 1
        else:
            failures.append(f"{tag}: dim dropped when passing to In_u(I)")
    return {
        "count": checked,
        "seed": seed,
        **tally,
        "failures": failures,
        "all_pass": checked == count and not failures,
    }
