"""Terms, environments and programs of the split presentation.

A program is a plain lambda-term (no explicit substitutions inside) paired
with an environment, an ordered tuple of ``(name, content)`` entries.  The
leftmost entry is the innermost one: in ``(t, E[x <- u])`` the name ``x``
scopes over ``t`` and over the contents of ``E``, but not over ``u``.

Terms are immutable and may be shared as DAGs (unfolding and the size
explosion family rely on this), so hashes, sizes and free variables are
cached on the nodes.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

__all__ = [
    "Var", "Abs", "App", "Term", "Program", "Env",
    "ParseError", "BinderRenamingWarning", "NameSupply",
    "parse_term", "parse_program", "show", "alpha_eq", "fresh_rename",
    "subst", "free_vars", "size", "names", "rename_apart", "is_barendregt",
    "identity", "subterms",
]


class Term:
    __slots__ = ("_hash", "_size", "_fv")

    def __repr__(self) -> str:
        return f"<{show(self)}>"


class Var(Term):
    __slots__ = ("name",)
    __match_args__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("v", name))
        self._size = 1
        self._fv = frozenset((name,))

    def __eq__(self, other):
        return self is other or (isinstance(other, Var) and self.name == other.name)

    def __hash__(self):
        return self._hash


class Abs(Term):
    __slots__ = ("var", "body")
    __match_args__ = ("var", "body")

    def __init__(self, var: str, body: Term):
        self.var = var
        self.body = body
        self._hash = hash(("l", var, body._hash))
        self._size = 1 + body._size
        self._fv = None

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, Abs) and self._hash == other._hash
                and self.var == other.var and self.body == other.body)

    def __hash__(self):
        return self._hash


class App(Term):
    __slots__ = ("fun", "arg")
    __match_args__ = ("fun", "arg")

    def __init__(self, fun: Term, arg: Term):
        self.fun = fun
        self.arg = arg
        self._hash = hash(("a", fun._hash, arg._hash))
        self._size = 1 + fun._size + arg._size
        self._fv = None

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, App) and self._hash == other._hash
                and self.fun == other.fun and self.arg == other.arg)

    def __hash__(self):
        return self._hash


Env = tuple  # tuple[tuple[str, Term], ...]


@dataclass(frozen=True)
class Program:
    head: Term
    env: tuple = ()

    def __post_init__(self):
        if not isinstance(self.env, tuple):
            object.__setattr__(self, "env", tuple(tuple(e) for e in self.env))

    def __repr__(self) -> str:
        return f"<{show(self)}>"

    @property
    def domain(self) -> tuple:
        return tuple(name for name, _ in self.env)

    def lookup(self, name: str):
        """Content of the innermost binding of ``name``, or None."""
        for x, content in self.env:
            if x == name:
                return content
        return None

    def append(self, name: str, content: Term) -> "Program":
        return Program(self.head, self.env + ((name, content),))


def identity(name: str = "z") -> Abs:
    return Abs(name, Var(name))


# ---------------------------------------------------------------------------
# free variables, sizes, names

def free_vars(subject) -> frozenset:
    if isinstance(subject, Program):
        fv = free_vars(subject.head)
        for x, content in subject.env:
            fv = (fv - {x}) | free_vars(content)
        return fv
    if subject._fv is not None:
        return subject._fv
    # iterative post-order so that deep DAGs do not blow the stack
    stack = [subject]
    while stack:
        node = stack[-1]
        if node._fv is not None:
            stack.pop()
            continue
        if isinstance(node, Abs):
            if node.body._fv is None:
                stack.append(node.body)
                continue
            node._fv = node.body._fv - {node.var}
        else:
            pending = [c for c in (node.fun, node.arg) if c._fv is None]
            if pending:
                stack.extend(pending)
                continue
            node._fv = node.fun._fv | node.arg._fv
        stack.pop()
    return subject._fv


def size(subject) -> int:
    """Node count; a program also counts one node per explicit substitution."""
    if isinstance(subject, Program):
        return subject.head._size + sum(c._size + 1 for _, c in subject.env)
    return subject._size


def _term_names(t: Term, acc: set) -> None:
    seen = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        if isinstance(node, Var):
            acc.add(node.name)
        elif isinstance(node, Abs):
            acc.add(node.var)
            stack.append(node.body)
        else:
            stack.append(node.fun)
            stack.append(node.arg)


def names(subject) -> set:
    """Every identifier occurring in ``subject``, bound or free."""
    acc: set = set()
    if isinstance(subject, Program):
        _term_names(subject.head, acc)
        for x, content in subject.env:
            acc.add(x)
            _term_names(content, acc)
    else:
        _term_names(subject, acc)
    return acc


def subterms(t: Term) -> Iterator[Term]:
    """All subterms, including those under abstractions."""
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Abs):
            stack.append(node.body)
        elif isinstance(node, App):
            stack.append(node.arg)
            stack.append(node.fun)


class NameSupply:
    """Fresh identifiers of the form ``root<k>``, avoiding every name seen.

    One supply is owned by one evaluation session.
    """

    def __init__(self, used: Iterable[str] = ()):
        self.used = set(used)
        self._next: dict = {}

    def reserve(self, more: Iterable[str]) -> None:
        self.used.update(more)

    def fresh(self, hint: str) -> str:
        root = hint.rstrip("0123456789'") or "v"
        k = self._next.get(root, 1)
        while f"{root}{k}" in self.used:
            k += 1
        name = f"{root}{k}"
        self._next[root] = k + 1
        self.used.add(name)
        return name


# ---------------------------------------------------------------------------
# substitution and renaming

def _rename_bound(t: Term, supply: NameSupply, mapping: dict) -> Term:
    match t:
        case Var(name):
            new = mapping.get(name)
            return t if new is None else Var(new)
        case Abs(var, body):
            fresh = supply.fresh(var)
            inner = dict(mapping)
            inner[var] = fresh
            return Abs(fresh, _rename_bound(body, supply, inner))
        case App(fun, arg):
            return App(_rename_bound(fun, supply, mapping),
                       _rename_bound(arg, supply, mapping))


def fresh_rename(v: Term, used: Union[Iterable[str], NameSupply]) -> Term:
    """Alpha-equivalent copy of ``v`` whose binders are all fresh for ``used``.

    Free variables are left untouched.
    """
    supply = used if isinstance(used, NameSupply) else NameSupply(used)
    supply.reserve(names(v))
    return _rename_bound(v, supply, {})


def subst(t: Term, x: str, u: Term, supply: NameSupply | None = None) -> Term:
    """Capture-avoiding ``t{x:=u}``.

    Works on shared DAGs: results are memoised per node so a term whose tree
    size is exponential is handled in time linear in its DAG size.
    """
    fv_u = free_vars(u)
    memo: dict = {}

    def go(node: Term) -> Term:
        if x not in free_vars(node):
            return node
        key = id(node)
        hit = memo.get(key)
        if hit is not None:
            return hit[1]
        match node:
            case Var(_):
                out = u
            case App(fun, arg):
                out = App(go(fun), go(arg))
            case Abs(var, body):
                if var in fv_u:
                    nonlocal supply
                    if supply is None:
                        supply = NameSupply(names(t) | names(u) | {x})
                    fresh = supply.fresh(var)
                    body = subst(body, var, Var(fresh), supply)
                    var = fresh
                out = Abs(var, go(body))
        memo[key] = (node, out)
        return out

    return go(t)


def rename_apart(p: Program, supply: NameSupply | None = None):
    """Enforce the Barendregt convention on ``p``.

    Returns the renamed program and the list of ``(old, new)`` renamings.
    Environment entries are processed outermost first, then the head.
    """
    supply = supply or NameSupply(names(p))
    used = set(free_vars(p))
    renamed: list = []

    def claim(name: str) -> str:
        if name in used:
            new = supply.fresh(name)
            renamed.append((name, new))
            name = new
        used.add(name)
        return name

    def go(t: Term, mapping: dict) -> Term:
        match t:
            case Var(name):
                new = mapping.get(name)
                return t if new is None or new == name else Var(new)
            case Abs(var, body):
                new = claim(var)
                inner = dict(mapping)
                inner[var] = new
                return Abs(new, go(body, inner))
            case App(fun, arg):
                return App(go(fun, mapping), go(arg, mapping))

    mapping: dict = {}
    env = []
    for x, content in reversed(p.env):
        content = go(content, mapping)
        new = claim(x)
        mapping = dict(mapping)
        mapping[x] = new
        env.append((new, content))
    env.reverse()
    return Program(go(p.head, mapping), tuple(env)), renamed


def is_barendregt(p: Program) -> bool:
    """All binders pairwise distinct and distinct from free names."""
    seen = set(free_vars(p))
    for x, _ in p.env:
        if x in seen:
            return False
        seen.add(x)
    for t in (p.head, *(c for _, c in p.env)):
        for node in subterms(t):
            if isinstance(node, Abs):
                if node.var in seen:
                    return False
                seen.add(node.var)
    return True


# ---------------------------------------------------------------------------
# alpha-equivalence

def _alpha_terms(a: Term, b: Term, left: dict, right: dict, depth: int) -> bool:
    match a, b:
        case Var(x), Var(y):
            lx, ly = left.get(x), right.get(y)
            if lx is None and ly is None:
                return x == y
            return lx == ly
        case Abs(x, s), Abs(y, t):
            l2 = dict(left)
            r2 = dict(right)
            l2[x] = depth
            r2[y] = depth
            return _alpha_terms(s, t, l2, r2, depth + 1)
        case App(f, s), App(g, t):
            return (_alpha_terms(f, g, left, right, depth)
                    and _alpha_terms(s, t, left, right, depth))
    return False


def alpha_eq(a, b) -> bool:
    """Equality up to consistent renaming of bound names.

    For programs, environment binders count as bound names; free names are
    rigid.
    """
    if isinstance(a, Program) or isinstance(b, Program):
        if not (isinstance(a, Program) and isinstance(b, Program)):
            return False
        if len(a.env) != len(b.env):
            return False
        left: dict = {}
        right: dict = {}
        depth = 0
        for (x, s), (y, t) in zip(reversed(a.env), reversed(b.env)):
            if not _alpha_terms(s, t, left, right, depth):
                return False
            left = {**left, x: depth}
            right = {**right, y: depth}
            depth += 1
        return _alpha_terms(a.head, b.head, left, right, depth)
    if a is b:
        return True
    return _alpha_terms(a, b, {}, {}, 0)


# ---------------------------------------------------------------------------
# concrete syntax

class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class BinderRenamingWarning(UserWarning):
    pass


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<arrow><-|←)
  | (?P<lam>\\|λ)
  | (?P<sym>[().\[\]])
""", re.VERBOSE)


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            tokens.append((value if kind in ("sym",) else kind, value, pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            what = tok[1] or "end of input"
            raise ParseError(f"expected {kind!r}, found {what!r}", tok[2])
        self.i += 1
        return tok

    def term(self) -> Term:
        operands = []
        while True:
            kind = self.peek()[0]
            if kind == "lam":
                operands.append(self.abstraction())
                break
            if kind in ("ident", "("):
                operands.append(self.atom())
                continue
            break
        if not operands:
            tok = self.peek()
            raise ParseError(f"expected a term, found {tok[1] or 'end of input'!r}", tok[2])
        t = operands[0]
        for arg in operands[1:]:
            t = App(t, arg)
        return t

    def abstraction(self) -> Term:
        self.take("lam")
        binders = [self.take("ident")[1]]
        while self.peek()[0] == "ident":
            binders.append(self.take("ident")[1])
        self.take(".")
        body = self.term()
        for b in reversed(binders):
            body = Abs(b, body)
        return body

    def atom(self) -> Term:
        if self.peek()[0] == "(":
            self.take("(")
            t = self.term()
            self.take(")")
            return t
        return Var(self.take("ident")[1])

    def program(self) -> Program:
        head = self.term()
        env = []
        while self.peek()[0] == "[":
            self.take("[")
            x = self.take("ident")[1]
            self.take("arrow")
            content = self.term()
            self.take("]")
            env.append((x, content))
        return Program(head, tuple(env))

    def end(self):
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.end()
    return t


def parse_program(text: str, rename: bool = True) -> Program:
    """Parse ``term ([x <- term])*``; binders are renamed apart if needed."""
    p = _Parser(text)
    prog = p.program()
    p.end()
    if rename and not is_barendregt(prog):
        prog, renamed = rename_apart(prog)
        for old, new in renamed:
            warnings.warn(f"binder {old!r} renamed to {new!r}",
                          BinderRenamingWarning, stacklevel=2)
    return prog


def _show_term(t: Term, out: list) -> None:
    match t:
        case Var(name):
            out.append(name)
        case Abs(var, body):
            out.append("\\" + var + ".")
            _show_term(body, out)
        case App(fun, arg):
            if isinstance(fun, Abs):
                out.append("(")
                _show_term(fun, out)
                out.append(")")
            else:
                _show_term(fun, out)
            out.append(" ")
            if isinstance(arg, Var):
                out.append(arg.name)
            else:
                out.append("(")
                _show_term(arg, out)
                out.append(")")


def show(subject) -> str:
    """Concrete syntax accepted by the parsers."""
    out: list = []
    if isinstance(subject, Program):
        if subject.env and isinstance(subject.head, Abs):
            out.append("(")
            _show_term(subject.head, out)
            out.append(")")
        else:
            _show_term(subject.head, out)
        for x, content in subject.env:
            out.append(f" [{x} <- ")
            _show_term(content, out)
            out.append("]")
    else:
        _show_term(subject, out)
    return "".join(out)
