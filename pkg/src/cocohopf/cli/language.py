"""The workspace definition language.

Six statement kinds, each introducing one named object::

    group S3 = perm(3)[(1 2 3), (1 2)]
    lie h3 { basis x y z; bracket [x,y] = z; }
    rep sgn : C2 -> Lx { (1 2) => [[-1]]; }
    hopf KS3 = K[S3]            # also U(LIE) and cgkmm(LIE, GROUP, REP)
    sub A3 of KS3 { group (1 2 3); lie ; }
    action inv : KC2 -> KC3 { (1 2) => auto([], [(1 2 3) -> (1 3 2)]); }

Group elements are written in 1-based cycle notation, ``()`` being the
identity.  Scalars are integers or ``p/q``.  ``#`` starts a comment.  In an
``action`` block a group element of the actor maps to ``auto(ALPHA, [g ->
beta(g), ...])`` with ``beta`` given on generators of the target group, and a
Lie basis element of the actor maps to ``der(DELTA, [g -> d(g), ...])`` with
the cocycle ``d`` given on generators of the target group.  Entries left out
act trivially.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .. import linalg
from ..action import HopfAction, action_make
from ..derivations import identity_automorphism, make_automorphism, make_derivation, zero_derivation
from ..errors import CocoHopfError
from ..groups import GroupTable, LinearRep, extend_homomorphism, format_perm, group_from_generators, perm_from_cycles
from ..groups import rep_from_generators
from ..hopf import CgkmmHopf, HopfSubalgebra, enveloping_algebra, group_algebra, make_cgkmm, make_subalgebra
from ..lie import LieAlgebra, lie_from_structure_constants

Cycles = tuple[tuple[int, ...], ...]
Terms = tuple[tuple[str, Fraction], ...]
Matrix = tuple[tuple[Fraction, ...], ...]


class WorkspaceError(CocoHopfError):
    """A syntax or semantic error, located by line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0, kind: str = "syntax"):
        self.line, self.column, self.kind, self.detail = line, column, kind, message
        super().__init__(f"line {line}, column {column}: {kind} error: {message}")


class UnknownObject(CocoHopfError):
    pass


# -- declarations --------------------------------------------------------

@dataclass(frozen=True)
class GroupDecl:
    name: str
    degree: int
    generators: tuple[Cycles, ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class LieDecl:
    name: str
    basis: tuple[str, ...]
    brackets: tuple[tuple[str, str, Terms], ...]
    line: int = field(default=0, compare=False)
    bracket_at: tuple[tuple[int, int], ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class RepDecl:
    name: str
    group: str
    lie: str
    images: tuple[tuple[Cycles, Matrix], ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class HopfDecl:
    name: str
    kind: str  # "cgkmm", "K" or "U"
    args: tuple[str, ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SubDecl:
    name: str
    hopf: str
    group: tuple[Cycles, ...]
    lie: tuple[Terms, ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ActionDecl:
    name: str
    actor: str
    target: str
    autos: tuple[tuple[Cycles, Matrix, tuple[tuple[Cycles, Cycles], ...]], ...]
    ders: tuple[tuple[str, Matrix, tuple[tuple[Cycles, Terms], ...]], ...]
    line: int = field(default=0, compare=False)


# -- tokens ---------------------------------------------------------------

_TOKEN = re.compile(r"(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>->|=>|[=\{\};\[\]\(\),:+\-*/])")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    out = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        pos = 0
        while pos < len(line):
            if line[pos].isspace():
                pos += 1
                continue
            m = _TOKEN.match(line, pos)
            if not m:
                raise WorkspaceError(f"unexpected character {line[pos]!r}", ln, pos + 1)
            out.append(Token(m.lastgroup, m.group(), ln, pos + 1))
            pos = m.end()
    out.append(Token("eof", "", len(text.splitlines()) + 1, 1))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None):
        t = tok or self.tok
        return WorkspaceError(msg, t.line, t.column)

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind != "eof"

    def take(self, text: str | None = None, kind: str | None = None) -> Token:
        t = self.tok
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind) or t.kind == "eof":
            want = repr(text) if text is not None else kind
            raise self.error(f"expected {want}, found {t.text or 'end of input'!r}")
        self.i += 1
        return t

    def name(self) -> str:
        return self.take(kind="name").text

    def integer(self) -> int:
        return int(self.take(kind="num").text)

    def rational(self) -> Fraction:
        sign = -1 if self.at("-") else 1
        if self.at("-"):
            self.take("-")
        p = self.integer()
        q = 1
        if self.at("/"):
            self.take("/")
            q = self.integer()
            if q == 0:
                raise self.error("zero denominator", self.toks[self.i - 1])
        return sign * Fraction(p, q)

    def listing(self, open_: str, close: str, item, sep: str = ","):
        self.take(open_)
        out = []
        if not self.at(close):
            out.append(item())
            while self.at(sep):
                self.take(sep)
                out.append(item())
        self.take(close)
        return tuple(out)

    def matrix(self) -> Matrix:
        return self.listing("[", "]", lambda: self.listing("[", "]", self.rational))

    def element(self) -> Cycles:
        if not self.at("("):
            raise self.error("expected a group element in cycle notation")
        cycles = []
        while self.at("("):
            self.take("(")
            cyc = []
            while not self.at(")"):
                cyc.append(self.integer())
            self.take(")")
            if cyc:
                cycles.append(tuple(cyc))
        return tuple(cycles)

    def expr(self) -> Terms:
        terms: dict[str, Fraction] = {}
        order: list[str] = []
        first = True
        while True:
            sign = Fraction(1)
            if self.at("+") or self.at("-"):
                sign = Fraction(-1) if self.take().text == "-" else Fraction(1)
            elif not first:
                break
            coeff = Fraction(1)
            if self.tok.kind == "num":
                coeff = self.rational()
                if self.at("*"):
                    self.take("*")
                elif self.tok.kind != "name":
                    if coeff != 0:
                        raise self.error("a constant term is not an element of the Lie algebra")
                    first = False
                    continue
            n = self.name()
            if n not in terms:
                order.append(n)
                terms[n] = Fraction(0)
            terms[n] += sign * coeff
            first = False
            if not (self.at("+") or self.at("-")):
                break
        return tuple((n, terms[n]) for n in order if terms[n] != 0)

    # statements
    def statement(self):
        t = self.tok
        kw = self.name() if t.kind == "name" else None
        handler = {
            "group": self.group, "lie": self.lie, "rep": self.rep,
            "hopf": self.hopf, "sub": self.sub, "action": self.action,
        }.get(kw)
        if handler is None:
            raise self.error(f"unknown statement {t.text!r}", t)
        return handler(t.line)

    def group(self, line):
        name = self.name()
        self.take("=")
        if self.name() != "perm":
            raise self.error("expected perm(DEGREE)", self.toks[self.i - 1])
        self.take("(")
        degree = self.integer()
        self.take(")")
        gens = self.listing("[", "]", self.element)
        return GroupDecl(name, degree, gens, line)

    def lie(self, line):
        name = self.name()
        self.take("{")
        basis: tuple[str, ...] = ()
        brackets, where = [], []
        seen_basis = False
        while not self.at("}"):
            kw = self.take(kind="name")
            if kw.text == "basis":
                if seen_basis:
                    raise self.error("basis declared twice", kw)
                seen_basis = True
                names = []
                while self.tok.kind == "name":
                    names.append(self.name())
                basis = tuple(names)
            elif kw.text == "bracket":
                where.append((kw.line, kw.column))
                self.take("[")
                a = self.name()
                self.take(",")
                b = self.name()
                self.take("]")
                self.take("=")
                brackets.append((a, b, self.expr()))
            else:
                raise self.error(f"expected 'basis' or 'bracket', found {kw.text!r}", kw)
            self.take(";")
        self.take("}")
        return LieDecl(name, basis, tuple(brackets), line, tuple(where))

    def rep(self, line):
        name = self.name()
        self.take(":")
        group = self.name()
        self.take("->")
        lie = self.name()
        self.take("{")
        images = []
        while not self.at("}"):
            g = self.element()
            self.take("=>")
            images.append((g, self.matrix()))
            self.take(";")
        self.take("}")
        return RepDecl(name, group, lie, tuple(images), line)

    def hopf(self, line):
        name = self.name()
        self.take("=")
        kind = self.take(kind="name")
        if kind.text == "K":
            self.take("[")
            args = (self.name(),)
            self.take("]")
        elif kind.text == "U":
            self.take("(")
            args = (self.name(),)
            self.take(")")
        elif kind.text == "cgkmm":
            args = self.listing("(", ")", self.name)
            if len(args) != 3:
                raise self.error("cgkmm takes (LIE, GROUP, REP)", kind)
        else:
            raise self.error("expected K[GROUP], U(LIE) or cgkmm(LIE, GROUP, REP)", kind)
        return HopfDecl(name, kind.text, args, line)

    def sub(self, line):
        name = self.name()
        if self.name() != "of":
            raise self.error("expected 'of'", self.toks[self.i - 1])
        hopf = self.name()
        self.take("{")
        group: tuple = ()
        lie: tuple = ()
        while not self.at("}"):
            kw = self.take(kind="name")
            items = []
            if kw.text == "group":
                while not self.at(";"):
                    items.append(self.element())
                    if not self.at(";"):
                        self.take(",")
                group = tuple(items)
            elif kw.text == "lie":
                while not self.at(";"):
                    items.append(self.expr())
                    if not self.at(";"):
                        self.take(",")
                lie = tuple(items)
            else:
                raise self.error(f"expected 'group' or 'lie', found {kw.text!r}", kw)
            self.take(";")
        self.take("}")
        return SubDecl(name, hopf, group, lie, line)

    def _pair(self, right):
        def item():
            g = self.element()
            self.take("->")
            return (g, right())
        return item

    def action(self, line):
        name = self.name()
        self.take(":")
        actor = self.name()
        self.take("->")
        target = self.name()
        self.take("{")
        autos, ders = [], []
        while not self.at("}"):
            if self.at("("):
                g = self.element()
                self.take("=>")
                if self.name() != "auto":
                    raise self.error("expected auto(...)", self.toks[self.i - 1])
                self.take("(")
                alpha = self.matrix()
                self.take(",")
                beta = self.listing("[", "]", self._pair(self.element))
                self.take(")")
                autos.append((g, alpha, beta))
            else:
                x = self.name()
                self.take("=>")
                if self.name() != "der":
                    raise self.error("expected der(...)", self.toks[self.i - 1])
                self.take("(")
                delta = self.matrix()
                self.take(",")
                d = self.listing("[", "]", self._pair(self.expr))
                self.take(")")
                ders.append((x, delta, d))
            self.take(";")
        self.take("}")
        return ActionDecl(name, actor, target, tuple(autos), tuple(ders), line)


def parse_declarations(text: str) -> list:
    p = _Parser(text)
    out = []
    while p.tok.kind != "eof":
        out.append(p.statement())
    return out


# -- serialisation --------------------------------------------------------

def _q(x: Fraction) -> str:
    return linalg.format_fraction(x)


def _cyc(c: Cycles) -> str:
    return "".join("(" + " ".join(map(str, cyc)) + ")" for cyc in c) or "()"


def _mat(m: Matrix) -> str:
    return "[" + ", ".join("[" + ", ".join(_q(x) for x in row) + "]" for row in m) + "]"


def _expr(t: Terms) -> str:
    if not t:
        return "0"
    out = ""
    for i, (n, c) in enumerate(t):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        body = n if a == 1 else f"{_q(a)}*{n}"
        out += (("-" if sign == "-" else "") + body) if i == 0 else f" {sign} {body}"
    return out


def serialize_declaration(d) -> str:
    if isinstance(d, GroupDecl):
        return f"group {d.name} = perm({d.degree})[" + ", ".join(_cyc(g) for g in d.generators) + "]"
    if isinstance(d, LieDecl):
        lines = [f"lie {d.name} {{", "  basis " + " ".join(d.basis) + ";"]
        lines += [f"  bracket [{a},{b}] = {_expr(e)};" for a, b, e in d.brackets]
        return "\n".join(lines + ["}"])
    if isinstance(d, RepDecl):
        lines = [f"rep {d.name} : {d.group} -> {d.lie} {{"]
        lines += [f"  {_cyc(g)} => {_mat(m)};" for g, m in d.images]
        return "\n".join(lines + ["}"])
    if isinstance(d, HopfDecl):
        if d.kind == "K":
            return f"hopf {d.name} = K[{d.args[0]}]"
        if d.kind == "U":
            return f"hopf {d.name} = U({d.args[0]})"
        return f"hopf {d.name} = cgkmm({', '.join(d.args)})"
    if isinstance(d, SubDecl):
        lines = [f"sub {d.name} of {d.hopf} {{"]
        lines.append("  group " + ", ".join(_cyc(g) for g in d.group) + ";")
        lines.append("  lie " + ", ".join(_expr(v) for v in d.lie) + ";")
        return "\n".join(lines + ["}"])
    if isinstance(d, ActionDecl):
        lines = [f"action {d.name} : {d.actor} -> {d.target} {{"]
        for g, alpha, beta in d.autos:
            pairs = ", ".join(f"{_cyc(a)} -> {_cyc(b)}" for a, b in beta)
            lines.append(f"  {_cyc(g)} => auto({_mat(alpha)}, [{pairs}]);")
        for x, delta, dd in d.ders:
            pairs = ", ".join(f"{_cyc(a)} -> {_expr(v)}" for a, v in dd)
            lines.append(f"  {x} => der({_mat(delta)}, [{pairs}]);")
        return "\n".join(lines + ["}"])
    raise TypeError(f"not a declaration: {d!r}")


def serialize_workspace(ws: "Workspace | list") -> str:
    decls = ws.declarations if isinstance(ws, Workspace) else ws
    return "\n\n".join(serialize_declaration(d) for d in decls) + "\n"


# -- resolution -----------------------------------------------------------

KINDS = {
    GroupDecl: "group", LieDecl: "lie", RepDecl: "rep",
    HopfDecl: "hopf", SubDecl: "sub", ActionDecl: "action",
}


@dataclass
class Workspace:
    declarations: list
    objects: dict[str, Any]
    kinds: dict[str, str]
    degree: int = 3

    def get(self, name: str, kind: str):
        if self.kinds.get(name) != kind:
            raise UnknownObject(f"unknown object {name!r} (expected a {kind})")
        return self.objects[name]

    def hopf(self, name: str) -> CgkmmHopf:
        return self.get(name, "hopf")

    def sub(self, name: str) -> HopfSubalgebra:
        return self.get(name, "sub")

    def action(self, name: str) -> HopfAction:
        return self.get(name, "action")

    def names(self, kind: str) -> list[str]:
        return [d.name for d in self.declarations if KINDS[type(d)] == kind]


class _Resolver:
    def __init__(self):
        self.objects: dict[str, Any] = {}
        self.kinds: dict[str, str] = {}
        self.decl = None

    def fail(self, msg: str, at: tuple[int, int] | None = None):
        line, col = at or (self.decl.line, 1)
        return WorkspaceError(msg, line, col, "semantic")

    def ref(self, name: str, kind: str):
        if name not in self.kinds:
            raise self.fail(f"undeclared {kind} {name!r}")
        if self.kinds[name] != kind:
            raise self.fail(f"{name!r} is a {self.kinds[name]}, not a {kind}")
        return self.objects[name]

    def elem(self, G: GroupTable, c: Cycles) -> int:
        if G.perms is None:
            raise self.fail("group elements can only be named in permutation groups")
        degree = len(G.perms[0])
        try:
            return G.find_perm(perm_from_cycles(degree, c))
        except CocoHopfError as e:
            raise self.fail(str(e)) from None

    def vec(self, L: LieAlgebra, t: Terms) -> linalg.Vector:
        v = [Fraction(0)] * L.dim
        for n, c in t:
            if n not in L.names:
                raise self.fail(f"{n!r} is not a basis element of the Lie algebra")
            v[L.names.index(n)] += c
        return tuple(v)

    def resolve(self, d):
        self.decl = d
        if d.name in self.kinds:
            raise self.fail(f"name {d.name!r} is already declared")
        try:
            obj = getattr(self, "_" + KINDS[type(d)])(d)
        except WorkspaceError:
            raise
        except CocoHopfError as e:
            raise self.fail(str(e)) from None
        self.objects[d.name] = obj
        self.kinds[d.name] = KINDS[type(d)]

    def _group(self, d: GroupDecl) -> GroupTable:
        if d.degree < 1:
            raise self.fail("permutation degree must be positive")
        return group_from_generators(d.degree, [perm_from_cycles(d.degree, g) for g in d.generators])

    def _lie(self, d: LieDecl) -> LieAlgebra:
        if len(set(d.basis)) != len(d.basis):
            raise self.fail("repeated basis name")
        consts = {}
        for k, (a, b, e) in enumerate(d.brackets):
            at = d.bracket_at[k] if k < len(d.bracket_at) else None
            for n in (a, b) + tuple(n for n, _ in e):
                if n not in d.basis:
                    raise self.fail(f"{n!r} is not a basis element of {d.name}", at)
            if (a, b) in consts or (b, a) in consts:
                raise self.fail(f"bracket [{a},{b}] given twice", at)
            consts[(a, b)] = dict(e)
        L = lie_from_structure_constants(list(d.basis), consts)
        L.validate()
        return L

    def _rep(self, d: RepDecl) -> LinearRep:
        G = self.ref(d.group, "group")
        L = self.ref(d.lie, "lie")
        gens = [self.elem(G, g) for g, _ in d.images]
        mats = [m for _, m in d.images]
        missing = [g for g in G.generating_set() if g not in gens]
        gens += missing
        mats += [linalg.identity(L.dim)] * len(missing)
        rep = rep_from_generators(G, L.dim, gens, mats)
        self.objects.setdefault("__replie__", {})[d.name] = (d.group, d.lie)
        return rep

    def _hopf(self, d: HopfDecl) -> CgkmmHopf:
        if d.kind == "K":
            return group_algebra(self.ref(d.args[0], "group"), d.name)
        if d.kind == "U":
            return enveloping_algebra(self.ref(d.args[0], "lie"), d.name)
        lie, group, rep = d.args
        L, G, tau = self.ref(lie, "lie"), self.ref(group, "group"), self.ref(rep, "rep")
        if self.objects["__replie__"][rep] != (group, lie):
            raise self.fail(f"representation {rep!r} is not a map {group} -> {lie}")
        return make_cgkmm(G, L, tau, d.name)

    def _sub(self, d: SubDecl) -> HopfSubalgebra:
        A = self.ref(d.hopf, "hopf")
        elems = [self.elem(A.group, g) for g in d.group]
        vecs = [self.vec(A.lie, v) for v in d.lie]
        H = make_subalgebra(A, elems, vecs)
        H._cache["name"] = d.name
        return H

    def _action(self, d: ActionDecl) -> HopfAction:
        B, A = self.ref(d.actor, "hopf"), self.ref(d.target, "hopf")
        grp = {}
        for g, alpha, pairs in d.autos:
            src = [self.elem(A.group, a) for a, _ in pairs]
            img = [self.elem(A.group, b) for _, b in pairs]
            src_all = src + [x for x in A.group.generating_set() if x not in src]
            img_all = img + [x for x in A.group.generating_set() if x not in src]
            beta = extend_homomorphism(A.group, A.group, src_all, img_all)
            if beta is None:
                raise self.fail(f"images of {_cyc(g)} do not define a group homomorphism")
            grp[self.elem(B.group, g)] = make_automorphism(A, alpha if A.n else (), beta)
        for g in B.group.generating_set():
            grp.setdefault(g, identity_automorphism(A))
        ders = {}
        for x, delta, pairs in d.ders:
            if x not in B.lie.names:
                raise self.fail(f"{x!r} is not a basis element of {d.actor}")
            vals = {self.elem(A.group, a): self.vec(A.lie, v) for a, v in pairs}
            ders[x] = make_derivation(A, delta if A.n else (), self._cocycle(A, vals))
        lie = [ders.get(x, zero_derivation(A)) for x in B.lie.names]
        return action_make(B, A, grp, lie)

    def _cocycle(self, A: CgkmmHopf, vals: dict) -> list:
        """Extend ``d`` from generators by ``d(x s) = d(x) + tau(x) d(s)``."""
        G = A.group
        gens = list(vals) + [g for g in G.generating_set() if g not in vals]
        zero = linalg.zero_vector(A.n)
        vals = {g: vals.get(g, zero) for g in gens}
        d: list = [None] * G.order
        d[0] = zero
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = G.product[x][s]
                if d[y] is None:
                    d[y] = linalg.add(d[x], A.tau.act(x, vals[s]))
                    queue.append(y)
        return d


def build_workspace(decls: list, degree: int = 3) -> Workspace:
    r = _Resolver()
    for d in decls:
        r.resolve(d)
    r.objects.pop("__replie__", None)
    return Workspace(list(decls), r.objects, r.kinds, degree)


def parse_workspace(text: str, degree: int = 3) -> Workspace:
    return build_workspace(parse_declarations(text), degree)


def load_workspace(path, degree: int = 3) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return parse_workspace(fh.read(), degree)


__all__ = [
    "WorkspaceError", "UnknownObject", "Workspace", "tokenize", "parse_declarations",
    "parse_workspace", "load_workspace", "serialize_workspace", "serialize_declaration",
    "build_workspace", "format_perm",
]
