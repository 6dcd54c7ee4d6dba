"""Surjectivity of the shift map on F^S and the s-regularity certificates.

Shifting every s_k by one sends D[S]F^S/(S-A)D[S]F^S onto the corresponding
quotient at A+1 (multiplication by f on powers); that map is onto exactly
when 1 lies in the D_n-ideal generated by f together with theta_F evaluated
at S = A-1.  Injectivity has no direct test here -- only the implications
that relate it to surjectivity under checked hypotheses are reported.

The regular-sequence side: the s_i act on Q[x,y,S]/Ltilde_F like a regular
sequence, verified step by step through colon-ideal stabilization, and the
final quotient collapses to the single-factor data L_f + (gr E).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .gb import DEFAULT_LIMITS, IdealHandle, Limits, ideal_colon
from .liouville import build_liouville_ideals
from .logder import FactorizationSpec, euler_and_seh_check
from .ring import MonomialOrder, Poly
from .weyl import WeylContext, WeylOp, left_normal_form, weyl_left_gb

from .bside import BSResult


@dataclass
class NablaReport:
    A: Tuple[Fraction, ...]
    surjective: bool
    injective: str                     # "yes" / "no" / "unknown"
    reasoning: str
    certificate: Optional[List[WeylOp]]   # 1 = sum cert_i * gen_i when onto
    generators: Optional[List[WeylOp]] = None


def _specialized_generators(fspec: FactorizationSpec,
                            A: Sequence[Fraction],
                            limits: Limits) -> List[WeylOp]:
    """theta_F at S = A-1, plus f, all in plain D_n."""
    shift = {name: Fraction(a) - 1
             for name, a in zip(fspec.weyl.s_names, A)}
    gens = [t.subs_s(shift).drop_s_context()
            for t in fspec.theta_generators(limits)]
    ctx0 = WeylContext(fspec.x_names, [])
    gens.append(WeylOp.from_poly(ctx0, fspec.f))
    return gens


def nabla_surjective(fspec: FactorizationSpec, A: Sequence[Fraction],
                     limits: Limits = DEFAULT_LIMITS,
                     assume_hypotheses: bool = False) -> NablaReport:
    """Is the shift-by-one map at the point A onto?

    Criterion: 1 in D_n * ({theta_F at S=A-1} union {f}).  When it is, the
    returned certificate writes 1 as an explicit left combination, verified
    by exact multiplication.
    """
    A = tuple(Fraction(a) for a in A)
    if len(A) != fspec.r:
        raise ValueError("point length must match the number of factors")
    gens = _specialized_generators(fspec, A, limits)
    ctx0 = gens[-1].ctx
    order = MonomialOrder.grevlex()
    G, C = weyl_left_gb(gens, order, limits, track=True)
    one = WeylOp.const(ctx0, Fraction(1))
    cof = [WeylOp.zero(ctx0) for _ in gens]
    rem = left_normal_form(one, G, order, limits,
                           cofactors=cof, basis_cofactors=C)
    surjective = rem.is_zero()
    certificate = None
    if surjective:
        total = WeylOp.zero(ctx0)
        for c, g in zip(cof, gens):
            total = total + c * g
        if not total == one:
            raise AssertionError("membership certificate failed to multiply out")
        certificate = cof

    hyps = fspec.check_hypotheses(limits)
    flag = lambda k: hyps[k][0] == "yes"
    full = assume_hypotheses or all(
        flag(k) for k in ("strong_euler_origin", "saito_holonomic", "tame"))
    iff_case = (flag("reduced") and flag("free")
                and (assume_hypotheses
                     or (flag("strong_euler_origin") and flag("saito_holonomic"))))
    if iff_case:
        injective = "yes" if surjective else "no"
        reasoning = ("injectivity is equivalent to surjectivity for reduced "
                     "free divisors (hypotheses verified)")
    elif full:
        if surjective:
            injective = "unknown"
            reasoning = ("injectivity implies surjectivity under the verified "
                         "hypotheses; the converse is not available")
        else:
            injective = "no"
            reasoning = ("not surjective, and injectivity would force "
                         "surjectivity under the verified hypotheses")
    else:
        injective = "unknown"
        reasoning = "hypotheses unverified; no implication applies"
    return NablaReport(A, surjective, injective, reasoning, certificate, gens)


def bs_variety_membership(B, A: Sequence[Fraction]) -> bool:
    """Does the point A lie in the zero set of B?  (B: BSResult or
    IdealHandle over the s-variables.)"""
    gens = B.gb if isinstance(B, BSResult) else list(B.gens)
    if not gens:
        return True
    ctx = gens[0].ctx
    A = [Fraction(a) for a in A]
    if len(A) != ctx.n:
        raise ValueError("point length must match the s-variable count")
    assignment = dict(zip(ctx.names, A))
    return all(g.eval_rat(assignment) == 0 for g in gens)


# ---------------------------------------------------------------------------
# graded regularity of the s-variables


@dataclass
class SRegularityReport:
    passed: bool
    steps: List[Tuple[str, bool]]        # (variable, colon stabilized?)
    final_quotient_matches: bool
    reason: str

    def __bool__(self) -> bool:
        return self.passed and self.final_quotient_matches


def s_regularity_check(fspec: FactorizationSpec,
                       limits: Limits = DEFAULT_LIMITS,
                       s_order: Optional[Sequence[int]] = None
                       ) -> SRegularityReport:
    """Are s_1, ..., s_r a regular sequence on Q[x,y,S]/Ltilde_F?

    Step i verifies (Ltilde + (s_1..s_{i-1})) : s_i stays put.  At the end
    the quotient by all of S must collapse to the single-factor picture:
    Ltilde + (S) = L_f + (gr E) + (S), with E an Euler derivation of f.
    """
    data = build_liouville_ideals(fspec, limits)
    sym = fspec.symbol_vc
    s_names = fspec.weyl.s_names
    idx = list(s_order) if s_order is not None else list(range(fspec.r))
    if sorted(idx) != list(range(fspec.r)):
        raise ValueError("s_order must be a permutation of the factor indices")

    base = list(data.Ltilde_F.gens)
    taken: List[Poly] = []
    steps: List[Tuple[str, bool]] = []
    passed = True
    for i in idx:
        J = IdealHandle(base + taken, limits=limits)
        s_i = Poly.var(sym, s_names[i])
        C = ideal_colon(J, s_i, limits)
        stable = J.contains_ideal(C)
        steps.append((s_names[i], stable))
        passed = passed and stable
        taken.append(s_i)

    final = IdealHandle(base + taken, limits=limits)
    single = FactorizationSpec(fspec.x_names, [fspec.f])
    lf = build_liouville_ideals(single, limits).L_F
    target_gens = [g.map_context(sym) for g in lf.gens]
    rep = euler_and_seh_check(fspec.f)
    if rep.euler is None:
        return SRegularityReport(passed, steps, False,
                                 "no Euler derivation certificate for f")
    gr_e = Poly.zero(sym)
    for a, y in zip(rep.euler.coeffs, fspec.weyl.y_names):
        gr_e = gr_e + a.map_context(sym) * Poly.var(sym, y)
    target = IdealHandle(target_gens + [gr_e] + taken, limits=limits)
    match = final.equals(target)
    reason = ("quotient by (S) equals L_f + (gr E)" if match
              else "quotient by (S) differs from L_f + (gr E)")
    return SRegularityReport(passed, steps, match, reason)
