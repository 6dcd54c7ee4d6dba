"""Exact polynomial arithmetic over Q with named variable blocks.

Polynomials are finite maps exponent-vector -> Fraction over a VarContext.
The context owns the variable names (grouped in ordered blocks such as
X / DX / Y / S / T), the registered weight gradings, and nothing else.
Monomial orders are key functions on exponent tuples, so Python tuple
comparison does the actual work.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

# Exact rational scalars: Fraction is already lowest-terms with positive
# denominator, which is the whole contract.
Rat = Fraction

Exp = Tuple[int, ...]


class UnknownVariable(Exception):
    """A name in the input is not declared in the variable context."""


class VarContext:
    """Ordered named blocks of variables plus registered weight gradings.

    blocks: sequence of (block_name, [var, ...]).  Variable names must be
    unique across blocks.  The flat variable order (block by block) fixes
    exponent-tuple positions for every Poly over this context.

    Three gradings are pre-registered when the matching blocks exist:

      "(0,1)"   : X -> 0, DX/Y -> 1, S -> 0, T -> 0   (order filtration)
      "(0,1,1)" : X -> 0, DX/Y -> 1, S -> 1, T -> 0   (total order filtration)
      "(0,1,0)" : X -> 0, DX/Y -> 1, S -> 0, T -> 0   (symbol grading; same
                   weights as "(0,1)" but conventionally applied to Y)
    """

    _STANDARD = {
        "(0,1)": {"X": 0, "DX": 1, "Y": 1, "S": 0, "T": 0},
        "(0,1,1)": {"X": 0, "DX": 1, "Y": 1, "S": 1, "T": 0},
        "(0,1,0)": {"X": 0, "DX": 1, "Y": 1, "S": 0, "T": 0},
    }

    def __init__(self, blocks: Sequence[Tuple[str, Sequence[str]]]):
        self.blocks: List[Tuple[str, Tuple[str, ...]]] = [
            (bname, tuple(vs)) for bname, vs in blocks
        ]
        self.names: Tuple[str, ...] = tuple(
            v for _, vs in self.blocks for v in vs
        )
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be unique across blocks")
        self.index: Dict[str, int] = {v: i for i, v in enumerate(self.names)}
        self.block_indices: Dict[str, Tuple[int, ...]] = {}
        pos = 0
        for bname, vs in self.blocks:
            self.block_indices[bname] = tuple(range(pos, pos + len(vs)))
            pos += len(vs)
        self.n = len(self.names)
        self._gradings: Dict[str, Tuple[int, ...]] = {}
        for gname, by_block in self._STANDARD.items():
            w = [0] * self.n
            for bname, _ in self.blocks:
                if bname in by_block:
                    for i in self.block_indices[bname]:
                        w[i] = by_block[bname]
            self._gradings[gname] = tuple(w)

    def register_grading(self, name: str, weights: Dict[str, int]) -> None:
        w = [0] * self.n
        for v, wt in weights.items():
            if v not in self.index:
                raise UnknownVariable(v)
            if wt < 0:
                raise ValueError("grading weights must be nonnegative")
            w[self.index[v]] = wt
        self._gradings[name] = tuple(w)

    def grading(self, name: str) -> Tuple[int, ...]:
        if name not in self._gradings:
            raise KeyError(f"grading {name!r} not registered")
        return self._gradings[name]

    def zero_exp(self) -> Exp:
        return (0,) * self.n

    def var_exp(self, name: str) -> Exp:
        if name not in self.index:
            raise UnknownVariable(name)
        e = [0] * self.n
        e[self.index[name]] = 1
        return tuple(e)

    def __repr__(self):
        parts = ", ".join(f"{b}={list(vs)}" for b, vs in self.blocks)
        return f"VarContext({parts})"

    def __eq__(self, other):
        return isinstance(other, VarContext) and self.blocks == other.blocks

    def __hash__(self):
        return hash(tuple(self.blocks))


# ---------------------------------------------------------------------------
# exponent-tuple helpers

def exp_add(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def exp_sub(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def exp_divides(a: Exp, b: Exp) -> bool:
    """a | b as monomials."""
    return all(x <= y for x, y in zip(a, b))


def exp_lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def exp_total(a: Exp) -> int:
    return sum(a)


def exp_weight(a: Exp, w: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, w))


class MonomialOrder:
    """Total multiplicative monomial order, realized as a key function.

    kinds:
      lex              -- plain lexicographic on the full exponent tuple
      grevlex          -- graded reverse lexicographic
      weight(w, tie)   -- compare w-degree, break ties with `tie`
      block(ctx, names, inner) -- compare block by block, each with its
                          inner order restricted to that block; placing the
                          block to be eliminated first gives an elimination
                          order for it
    """

    def __init__(self, kind: str, key, desc: str):
        self.kind = kind
        self.key = key          # exp tuple -> sortable; bigger key = bigger monomial
        self.desc = desc

    def __repr__(self):
        return f"MonomialOrder({self.desc})"

    def cmp_gt(self, a: Exp, b: Exp) -> bool:
        return self.key(a) > self.key(b)

    def sort_desc(self, exps: Iterable[Exp]) -> List[Exp]:
        return sorted(exps, key=self.key, reverse=True)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def lex() -> "MonomialOrder":
        return MonomialOrder("lex", lambda e: e, "lex")

    @staticmethod
    def grevlex() -> "MonomialOrder":
        def key(e):
            return (sum(e), tuple(-x for x in reversed(e)))
        return MonomialOrder("grevlex", key, "grevlex")

    @staticmethod
    def weighted(w: Sequence[int], tie: Optional["MonomialOrder"] = None) -> "MonomialOrder":
        tie = tie or MonomialOrder.grevlex()
        wt = tuple(w)
        tk = tie.key

        def key(e):
            return (exp_weight(e, wt), tk(e))
        return MonomialOrder("weight", key, f"weight{list(wt)}/{tie.desc}")

    @staticmethod
    def block(ctx: VarContext, block_names: Sequence[str],
              inner: Optional[Sequence["MonomialOrder"]] = None) -> "MonomialOrder":
        """Block order over ctx: compare the projection to block_names[0]
        first, then block_names[1], etc.  Every declared variable must be
        covered exactly once.  Default inner order is grevlex per block."""
        groups = [ctx.block_indices[b] for b in block_names]
        covered = [i for g in groups for i in g]
        if sorted(covered) != list(range(ctx.n)):
            raise ValueError("block order must cover every variable exactly once")
        inners = list(inner) if inner else [MonomialOrder.grevlex()] * len(groups)
        keys = [o.key for o in inners]

        def key(e):
            return tuple(k(tuple(e[i] for i in g)) for g, k in zip(groups, keys))
        return MonomialOrder("block", key, f"block{list(block_names)}")


# ---------------------------------------------------------------------------


class Poly:
    """Multivariate polynomial over Q: {exponent tuple: Fraction}.

    Immutable by convention; operators never mutate their arguments.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: VarContext, terms: Optional[Dict[Exp, Fraction]] = None):
        self.ctx = ctx
        self.terms: Dict[Exp, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[e] = c

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ctx: VarContext) -> "Poly":
        return cls(ctx)

    @classmethod
    def const(cls, ctx: VarContext, c) -> "Poly":
        c = Fraction(c)
        return cls(ctx, {ctx.zero_exp(): c} if c else {})

    @classmethod
    def var(cls, ctx: VarContext, name: str) -> "Poly":
        return cls(ctx, {ctx.var_exp(name): Fraction(1)})

    @classmethod
    def monomial(cls, ctx: VarContext, e: Exp, c=1) -> "Poly":
        return cls(ctx, {tuple(e): Fraction(c)})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.ctx, other)
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def total_degree(self) -> int:
        """Max total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(exp_total(e) for e in self.terms)

    def weighted_degree(self, grading: str) -> int:
        if not self.terms:
            return -1
        w = self.ctx.grading(grading)
        return max(exp_weight(e, w) for e in self.terms)

    def coeff(self, e: Exp) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def constant_coeff(self) -> Fraction:
        return self.terms.get(self.ctx.zero_exp(), Fraction(0))

    def is_constant(self) -> bool:
        return all(exp_total(e) == 0 for e in self.terms)

    def variables_used(self) -> Tuple[str, ...]:
        used = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(i)
        return tuple(self.ctx.names[i] for i in sorted(used))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.ctx, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        p = Poly(self.ctx)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Poly(self.ctx)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.ctx, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            p = Poly(self.ctx)
            if c:
                p.terms = {e: k * c for e, k in self.terms.items()}
            return p
        out: Dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = exp_add(e1, e2)
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        p = Poly(self.ctx)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        out = Poly.const(self.ctx, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def diff(self, name: str) -> "Poly":
        """Partial derivative with respect to a context variable."""
        i = self.ctx.index[name]
        out: Dict[Exp, Fraction] = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        p = Poly(self.ctx)
        p.terms = out
        return p

    def subs(self, assignment: Dict[str, "Poly"]) -> "Poly":
        """Substitute polynomials (or scalars) for variables by name."""
        vals = {}
        for v, val in assignment.items():
            if v not in self.ctx.index:
                raise UnknownVariable(v)
            vals[self.ctx.index[v]] = (
                val if isinstance(val, Poly) else Poly.const(self.ctx, val)
            )
        out = Poly.zero(self.ctx)
        for e, c in self.terms.items():
            t = Poly.const(self.ctx, c)
            for i, k in enumerate(e):
                if not k:
                    continue
                if i in vals:
                    t = t * (vals[i] ** k)
                else:
                    t = t * Poly.monomial(self.ctx, self.ctx.var_exp(self.ctx.names[i]), 1) ** k
            out = out + t
        return out

    def eval_rat(self, assignment: Dict[str, Fraction]) -> Fraction:
        """Evaluate at a full rational point (every used variable assigned)."""
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    v *= assignment[self.ctx.names[i]] ** k
            total += v
        return total

    # -- leading data ------------------------------------------------------

    def leading_exp(self, order: MonomialOrder) -> Exp:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=order.key)

    def leading_coeff(self, order: MonomialOrder) -> Fraction:
        return self.terms[self.leading_exp(order)]

    def map_context(self, ctx2: VarContext) -> "Poly":
        """Reinterpret in another context containing the same-named variables."""
        out: Dict[Exp, Fraction] = {}
        for e, c in self.terms.items():
            e2 = [0] * ctx2.n
            for i, k in enumerate(e):
                if k:
                    name = self.ctx.names[i]
                    if name not in ctx2.index:
                        raise UnknownVariable(name)
                    e2[ctx2.index[name]] = k
            out[tuple(e2)] = out.get(tuple(e2), Fraction(0)) + c
        p = Poly(ctx2)
        p.terms = {e: c for e, c in out.items() if c}
        return p

    # -- printing ----------------------------------------------------------

    def _term_str(self, e: Exp, c: Fraction) -> str:
        mono = "*".join(
            self.ctx.names[i] if k == 1 else f"{self.ctx.names[i]}^{k}"
            for i, k in enumerate(e) if k
        )
        a = abs(c)
        if not mono:
            return str(a)
        if a == 1:
            return mono
        return f"{a}*{mono}"

    def __str__(self):
        """Canonical form: terms descending under grevlex of the full context,
        reduced fraction coefficients, explicit * and ^."""
        if not self.terms:
            return "0"
        order = MonomialOrder.grevlex()
        parts = []
        for e in order.sort_desc(self.terms):
            c = self.terms[e]
            s = self._term_str(e, c)
            if not parts:
                parts.append(s if c > 0 else f"-{s}")
            else:
                parts.append(f" + {s}" if c > 0 else f" - {s}")
        return "".join(parts)

    def __repr__(self):
        return f"Poly({self})"


def initial_form(p: Poly, grading: str) -> Poly:
    """Sum of the terms of maximal weighted degree; 0 for the zero poly."""
    if not p.terms:
        return Poly.zero(p.ctx)
    w = p.ctx.grading(grading)
    top = max(exp_weight(e, w) for e in p.terms)
    q = Poly(p.ctx)
    q.terms = {e: c for e, c in p.terms.items() if exp_weight(e, w) == top}
    return q


def initial_form_weights(p: Poly, w: Sequence[int]) -> Poly:
    """initial_form against an explicit weight vector."""
    if not p.terms:
        return Poly.zero(p.ctx)
    top = max(exp_weight(e, w) for e in p.terms)
    q = Poly(p.ctx)
    q.terms = {e: c for e, c in p.terms.items() if exp_weight(e, w) == top}
    return q


# ---------------------------------------------------------------------------
# parsing


class _Tok:
    __slots__ = ("kind", "val", "pos")

    def __init__(self, kind, val, pos):
        self.kind, self.val, self.pos = kind, val, pos


def _tokenize(text: str) -> List[_Tok]:
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Tok("int", int(text[i:j]), i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("name", text[i:j], i))
            i = j
        elif ch in "+-*^()/":
            toks.append(_Tok(ch, ch, i))
            i += 1
        else:
            raise SyntaxError(f"unexpected character {ch!r} at position {i}")
    toks.append(_Tok("end", None, n))
    return toks


class _Parser:
    """expr   := ['+'|'-'] term (('+'|'-') term)*
       term   := factor ('*' factor)*
       factor := atom ('^' int)*
       atom   := rational | name | '(' expr ')'
       rational := int ('/' int)?"""

    def __init__(self, text: str, ctx: VarContext):
        self.toks = _tokenize(text)
        self.ctx = ctx
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        t = self.toks[self.i]
        if kind and t.kind != kind:
            raise SyntaxError(f"expected {kind} at position {t.pos}")
        self.i += 1
        return t

    def parse(self) -> Poly:
        p = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise SyntaxError(f"unexpected token {t.val!r} at position {t.pos}")
        return p

    def expr(self) -> Poly:
        sign = 1
        if self.peek().kind in "+-":
            if self.take().kind == "-":
                sign = -1
        p = self.term() * sign
        while self.peek().kind in "+-":
            op = self.take().kind
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.factor()
        while self.peek().kind == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> Poly:
        p = self.atom()
        while self.peek().kind == "^":
            self.take()
            t = self.take("int")
            p = p ** t.val
        return p

    def atom(self) -> Poly:
        t = self.peek()
        if t.kind == "int":
            self.take()
            num = t.val
            if self.peek().kind == "/":
                self.take()
                den = self.take("int").val
                if den == 0:
                    raise SyntaxError(f"zero denominator at position {t.pos}")
                return Poly.const(self.ctx, Fraction(num, den))
            return Poly.const(self.ctx, num)
        if t.kind == "name":
            self.take()
            if t.val not in self.ctx.index:
                raise UnknownVariable(f"{t.val!r} at position {t.pos}")
            return Poly.var(self.ctx, t.val)
        if t.kind == "(":
            self.take()
            p = self.expr()
            nxt = self.peek()
            if nxt.kind != ")":
                raise SyntaxError(f"expected ')' at position {nxt.pos}")
            self.take()
            return p
        if t.kind == "-":
            # unary minus inside a term, e.g. "2*-x" is rejected but "(-x)" ok
            self.take()
            return -self.atom()
        raise SyntaxError(f"unexpected token {t.val!r} at position {t.pos}")


def parse_poly(text: str, ctx: VarContext) -> Poly:
    """Parse a polynomial expression into canonical expanded form.

    Grammar: rational constants, declared variables, + - * ^, parentheses.
    Raises SyntaxError with a position, or UnknownVariable.
    """
    return _Parser(text, ctx).parse()


def divide_exact(p: Poly, q: Poly) -> Optional[Poly]:
    """Return h with p = q*h if q divides p exactly, else None."""
    if q.is_zero():
        return None
    if p.is_zero():
        return Poly.zero(p.ctx)
    order = MonomialOrder.grevlex()
    lq = q.leading_exp(order)
    cq = q.terms[lq]
    quo = Poly.zero(p.ctx)
    rem = p
    while not rem.is_zero():
        lr = rem.leading_exp(order)
        if not exp_divides(lq, lr):
            return None
        t = Poly.monomial(p.ctx, exp_sub(lr, lq), rem.terms[lr] / cq)
        quo = quo + t
        rem = rem - t * q
    return quo
