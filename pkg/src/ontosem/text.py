"""Text format for logical forms.

``(E! j:human)(E e:trip)(Planned(j,e) & Lengthy(e))``: one parenthesised
quantifier per variable (``E``, ``E!``, ``A``; a trailing ``a`` marks
abstract mode), then the body as a ``&``-joined list of literals. Slot
restrictions of pre-unification forms are written ``Hungry(x:animal)`` and
unresolved quantifier types as ``entity•human``.
"""

import re

from .errors import ParseError
from .logform import (
    TRUE,
    Conj,
    Const,
    Is,
    Kind,
    Less,
    LogicalForm,
    Noo,
    Not,
    Pred,
    Quantifier,
    Rel,
    Status,
    Truth,
    Var,
    conj,
    formula_vars,
)
from .ontology import BOTTOM, BOTTOM_NAME, TypeTerm

_KIND_LABELS = {
    "E": (Kind.EXISTS, False),
    "Ea": (Kind.EXISTS, True),
    "E!": (Kind.EXISTS_UNIQUE, False),
    "E!a": (Kind.EXISTS_UNIQUE, True),
    "A": (Kind.FORALL, False),
    "Aa": (Kind.FORALL, True),
}
_RESERVED = {"true"} | set(_KIND_LABELS)


def _constants(f, out):
    if isinstance(f, Pred):
        out.update(a.value for a in f.args if isinstance(a, Const))
    elif isinstance(f, Less):
        out.update(a.value for a in (f.a, f.b) if isinstance(a, Const))
    elif isinstance(f, Not):
        _constants(f.body, out)
    elif isinstance(f, Conj):
        for g in f.items:
            _constants(g, out)
    return out


def _names(lf):
    taken = _RESERVED | _constants(lf.body, set())
    names = {}
    bound = [q.var for q in lf.prefix]
    for v in bound + [v for v in formula_vars(lf.body) if v not in bound]:
        if v in names:
            continue
        base = re.sub(r"[^\w\-]", "", v.display) or "x"
        if not (base[0].isalpha() or base[0] == "_"):
            base = "v" + base
        name, n = base, 1
        while name in taken:
            name = f"{base}{n}"
            n += 1
        taken.add(name)
        names[v] = name
    return names


def _type(t):
    return BOTTOM_NAME if t.is_bottom else str(t)


def serialize(lf):
    names = _names(lf)

    def term(t):
        return names[t] if isinstance(t, Var) else str(t)

    def arg(t, ty):
        return term(t) if ty is None else f"{term(t)}:{_type(ty)}"

    def lit(f):
        if isinstance(f, Pred):
            return f"{f.name}({','.join(arg(a, t) for a, t in zip(f.args, f.types))})"
        if isinstance(f, Noo):
            return f"Noo({term(f.var)},{Const(f.label, True)})"
        if isinstance(f, Is):
            return f"Is({term(f.a)},{term(f.b)})"
        if isinstance(f, Less):
            return f"{term(f.a)} < {term(f.b)}"
        if isinstance(f, Not):
            return "~" + lit(f.body)
        if isinstance(f, Truth):
            return "true"
        if isinstance(f, Conj):
            return " & ".join(lit(g) for g in f.items)
        raise TypeError(f"cannot serialize {f!r}")

    out = []
    for q in lf.prefix:
        label = q.kind.value
        if len(q.types) == 1 and q.types[0].abstract:
            label += "a"
            types = q.types[0].category
        else:
            types = "•".join(_type(t) for t in q.types)
        out.append(f"({label} {names[q.var]}:{types})" if types
                   else f"({label} {names[q.var]})")
    out.append(f"({lit(lf.body)})")
    return "".join(out)


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<str>"(?:[^"\\]|\\.)*")
  | (?P<ident>[A-Za-z_][\w\-]*(?:!a?|\^a)?)
  | (?P<bot>⊥)
  | (?P<punct>[():,&~<•*])
""", re.VERBOSE)


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos=pos)
        if m.lastgroup != "ws":
            toks.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text, relations):
        self.toks = _tokenize(text)
        self.i = 0
        self.relations = relations
        self.bound = {}
        self.next_id = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, value=None, group=None):
        g, v, pos = self.peek()
        if (value is not None and v != value) or (group is not None and g != group):
            want = repr(value) if value is not None else group
            raise ParseError(f"expected {want}, found {v or 'end of input'!r}", pos=pos)
        self.i += 1
        return v, pos

    def at_quantifier(self):
        _, v0, _ = self.peek()
        g1, v1, _ = self.peek(1)
        g2, v2, _ = self.peek(2)
        return v0 == "(" and g1 == "ident" and v1 in _KIND_LABELS and v2 != "("

    def form(self):
        prefix = []
        while self.at_quantifier():
            prefix.append(self.quantifier())
        self.take("(")
        body = self.body()
        self.take(")")
        self.take(group="eof")
        return prefix, body

    def quantifier(self):
        self.take("(")
        label, _ = self.take(group="ident")
        kind, abstract = _KIND_LABELS[label]
        name, pos = self.take(group="ident")
        if name in self.bound:
            raise ParseError(f"variable {name!r} bound twice", pos=pos)
        types = ()
        if self.peek()[1] == ":":
            self.take(":")
            types = [self.type()]
            while self.peek()[1] in ("•", "*"):
                self.i += 1
                types.append(self.type())
            if abstract:
                if len(types) != 1:
                    raise ParseError("abstract label needs exactly one type", pos=pos)
                types = [types[0].as_abstract()]
            types = tuple(types)
        elif abstract:
            raise ParseError("abstract label on an untyped variable", pos=pos)
        self.take(")")
        v = Var(self.next_id, name)
        self.next_id += 1
        self.bound[name] = v
        return Quantifier(kind, v, types)

    def type(self):
        g, v, pos = self.peek()
        if g == "bot":
            self.i += 1
            return BOTTOM
        if g != "ident" or v.endswith("!") or "!" in v:
            raise ParseError("expected a type", pos=pos)
        self.i += 1
        return TypeTerm.parse(v)

    def body(self):
        if self.peek()[1] == "true" and self.peek(1)[1] == ")":
            self.i += 1
            return TRUE
        items = [self.literal()]
        while self.peek()[1] == "&":
            self.i += 1
            items.append(self.literal())
        return conj(*items) if len(items) > 1 else items[0]

    def literal(self):
        if self.peek()[1] == "~":
            self.i += 1
            return Not(self.literal())
        g, v, pos = self.peek()
        if g == "ident" and self.peek(1)[1] == "(":
            return self.atom()
        a = self.term()
        self.take("<")
        return Less(a, self.term())

    def term(self):
        g, v, pos = self.peek()
        if g == "str":
            self.i += 1
            return Const(re.sub(r"\\(.)", r"\1", v[1:-1]), True)
        if g == "ident":
            self.i += 1
            return self.bound.get(v) or Const(v)
        raise ParseError(f"expected a term, found {v or 'end of input'!r}", pos=pos)

    def atom(self):
        name, pos = self.take(group="ident")
        self.take("(")
        args, types = [], []
        if self.peek()[1] != ")":
            while True:
                args.append(self.term())
                if self.peek()[1] == ":":
                    self.i += 1
                    types.append(self.type())
                else:
                    types.append(None)
                if self.peek()[1] != ",":
                    break
                self.i += 1
        self.take(")")
        untyped = all(t is None for t in types)
        if (name == "Noo" and len(args) == 2 and untyped and isinstance(args[0], Var)
                and isinstance(args[1], Const) and args[1].quoted):
            return Noo(args[0], args[1].value)
        if (name == "Is" and len(args) == 2 and untyped
                and all(isinstance(a, Var) for a in args)):
            return Is(*args)
        cls = Rel if name in self.relations else Pred
        return cls(name, tuple(args), tuple(types))


def parse_lf(text, relations=(), status=None):
    """Parse the serialize format back into a LogicalForm.

    Atoms whose names are in ``relations`` become ``Rel``. Without an
    explicit ``status`` it is inferred: anomalous if any type is ⊥,
    pre-unification if any slot restriction, unresolved type or Is atom
    remains.
    """
    p = _Parser(text, frozenset(relations))
    prefix, body = p.form()
    if status is None:
        status = _infer_status(prefix, body)
    return LogicalForm(tuple(prefix), body, status)


def _infer_status(prefix, body):
    types = [t for q in prefix for t in q.types]
    if any(t.is_bottom for t in types):
        return Status.ANOMALOUS
    if any(len(q.types) > 1 for q in prefix):
        return Status.PRE

    def typed(f):
        if isinstance(f, Pred):
            return any(t is not None for t in f.types)
        if isinstance(f, Is):
            return True
        if isinstance(f, Not):
            return typed(f.body)
        if isinstance(f, Conj):
            return any(typed(g) for g in f.items)
        return False

    return Status.PRE if typed(body) else Status.FINAL

