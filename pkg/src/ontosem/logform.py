"""Logical-form AST: typed quantifier prefixes over flat conjunctive bodies.

Types on predicate slots are selectional restrictions and only appear in
pre-unification forms; unification clears them.
"""

import enum
from dataclasses import dataclass, field, replace
from itertools import count
from typing import Optional, Tuple

from .errors import ScopeError
from .ontology import BOTTOM, TypeTerm


class Kind(enum.Enum):
    EXISTS = "E"
    EXISTS_UNIQUE = "E!"
    FORALL = "A"

    @property
    def existential(self):
        return self is not Kind.FORALL


class Status(enum.Enum):
    PRE = "pre_unification"
    FINAL = "final"
    ANOMALOUS = "anomalous"


@dataclass(frozen=True)
class Var:
    id: int
    display: str = field(compare=False)

    def __str__(self):
        return self.display


@dataclass(frozen=True)
class Const:
    """An individual constant; ``quoted`` ones are name labels."""

    value: str
    quoted: bool = False

    def __str__(self):
        if self.quoted:
            return '"' + self.value.replace("\\", "\\\\").replace('"', '\\"') + '"'
        return self.value


@dataclass(frozen=True)
class Quantifier:
    kind: Kind
    var: Var
    types: Tuple[TypeTerm, ...] = ()

    @property
    def type(self) -> Optional[TypeTerm]:
        """The resolved type; None while untyped or still unresolved."""
        return self.types[0] if len(self.types) == 1 else None

    @property
    def abstract(self):
        return len(self.types) == 1 and self.types[0].abstract


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Truth(Formula):
    pass


TRUE = Truth()


@dataclass(frozen=True)
class Pred(Formula):
    name: str
    args: tuple
    types: tuple = ()

    def __post_init__(self):
        if not self.types:
            object.__setattr__(self, "types", (None,) * len(self.args))
        elif len(self.types) != len(self.args):
            raise ValueError("one selectional type per argument")


@dataclass(frozen=True)
class Rel(Pred):
    """Atom of a bridging relation from the ontology registry."""


@dataclass(frozen=True)
class Noo(Formula):
    var: Var
    label: str


@dataclass(frozen=True)
class Is(Formula):
    a: Var
    b: Var


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class Less(Formula):
    a: object
    b: object


@dataclass(frozen=True)
class Conj(Formula):
    items: tuple


def conj(*items):
    """Flattening conjunction; drops ``true``; collapses 0/1 items."""
    flat = []
    for f in items:
        if isinstance(f, Conj):
            flat.extend(conjuncts(conj(*f.items)))
        elif not isinstance(f, Truth):
            flat.append(f)
    if not flat:
        return TRUE
    if len(flat) == 1:
        return flat[0]
    return Conj(tuple(flat))


def conjuncts(body):
    if isinstance(body, Conj):
        return list(body.items)
    if isinstance(body, Truth):
        return []
    return [body]


@dataclass(frozen=True)
class LogicalForm:
    prefix: Tuple[Quantifier, ...]
    body: Formula
    status: Status = Status.PRE
    # (var display, selectional term, type it failed against)
    anomalies: tuple = field(default=(), compare=False)
    # the pre-unification form this was unified from
    source: Optional["LogicalForm"] = field(default=None, compare=False, repr=False)
    # extra selectional constraints per var id, added by re-unification
    assumed: tuple = field(default=(), compare=False)
    notes: tuple = field(default=(), compare=False)

    def quantifier(self, v):
        for q in self.prefix:
            if q.var == v:
                return q
        raise ScopeError(f"variable {v} is not bound")

    def var_named(self, display):
        for q in self.prefix:
            if q.var.display == display:
                return q.var
        raise ScopeError(f"no variable displayed as {display!r}")

    @property
    def vars(self):
        return [q.var for q in self.prefix]

    def atoms(self):
        return conjuncts(self.body)

    def next_id(self):
        ids = [q.var.id for q in self.prefix]
        ids += [v.id for f in self.atoms() for v in formula_vars(f)]
        return max(ids, default=-1) + 1


def formula_vars(f):
    """Variables occurring in f, in order of first occurrence."""
    out = []

    def add(t):
        if isinstance(t, Var) and t not in out:
            out.append(t)

    def walk(g):
        if isinstance(g, Pred):
            for a in g.args:
                add(a)
        elif isinstance(g, Noo):
            add(g.var)
        elif isinstance(g, Is):
            add(g.a)
            add(g.b)
        elif isinstance(g, Less):
            add(g.a)
            add(g.b)
        elif isinstance(g, Not):
            walk(g.body)
        elif isinstance(g, Conj):
            for h in g.items:
                walk(h)

    walk(f)
    return out


def substitute(f, mapping):
    """Replace variables per ``mapping`` (Var -> term) throughout f."""
    def sub(t):
        return mapping.get(t, t) if isinstance(t, Var) else t

    if isinstance(f, Pred):
        return replace(f, args=tuple(sub(a) for a in f.args))
    if isinstance(f, Noo):
        return Noo(sub(f.var), f.label)
    if isinstance(f, Is):
        return Is(sub(f.a), sub(f.b))
    if isinstance(f, Less):
        return Less(sub(f.a), sub(f.b))
    if isinstance(f, Not):
        return Not(substitute(f.body, mapping))
    if isinstance(f, Conj):
        return Conj(tuple(substitute(g, mapping) for g in f.items))
    return f


def check_scope(lf):
    """Raise ScopeError unless every variable is bound exactly once."""
    seen = set()
    for q in lf.prefix:
        if q.var in seen:
            raise ScopeError(f"variable {q.var} bound twice")
        seen.add(q.var)
    for v in formula_vars(lf.body):
        if v not in seen:
            raise ScopeError(f"variable {v} occurs free")


def simplify_is(lf):
    """Eliminate identity atoms by merging the two variables they link.

    The surviving variable is the first argument; it keeps its prefix
    position, collects both variables' types (left for unification) and is
    unique if either was. ``Is(x, x)`` becomes ``true``. Repeated atoms are
    dropped.
    """
    prefix = list(lf.prefix)
    atoms = conjuncts(lf.body)
    assumed = list(lf.assumed)
    changed = True
    while changed:
        changed = False
        for i, f in enumerate(atoms):
            if not isinstance(f, Is):
                continue
            if f.a == f.b:
                atoms[i] = TRUE
                changed = True
                break
            qa = _find(prefix, f.a)
            qb = _find(prefix, f.b)
            if qa.kind.existential != qb.kind.existential:
                raise ScopeError(
                    f"Is({f.a}, {f.b}) links {qa.kind.value} and {qb.kind.value}"
                    " quantifiers")
            kind = qa.kind
            if Kind.EXISTS_UNIQUE in (qa.kind, qb.kind):
                kind = Kind.EXISTS_UNIQUE
            merged = Quantifier(kind, qa.var, qa.types + qb.types)
            prefix = [merged if q is qa else q for q in prefix if q is not qb]
            mapping = {f.b: f.a}
            atoms = [substitute(g, mapping) for g in atoms]
            assumed = [(f.a.id if vid == f.b.id else vid, t) for vid, t in assumed]
            changed = True
            break

    deduped = []
    for g in atoms:
        if isinstance(g, Truth) or g in deduped:
            continue
        deduped.append(g)
    return replace(lf, prefix=tuple(prefix), body=conj(*deduped),
                   assumed=tuple(assumed))


def _find(prefix, v):
    for q in prefix:
        if q.var == v:
            return q
    raise ScopeError(f"variable {v} in Is(...) is not bound")


def fold_names(lf):
    """Display copy where a uniquely named variable takes its label as name.

    Mirrors the shorthand of writing the name in place of the variable; the
    ``Noo`` atom is dropped from the copy.
    """
    labels = {}
    for f in lf.atoms():
        if isinstance(f, Noo):
            labels.setdefault(f.var, []).append(f.label)
    renamed = {}
    for q in lf.prefix:
        ls = labels.get(q.var, [])
        if q.kind is Kind.EXISTS_UNIQUE and len(set(ls)) == 1:
            renamed[q.var] = Var(q.var.id, ls[0])
    prefix = tuple(replace(q, var=renamed.get(q.var, q.var)) for q in lf.prefix)
    atoms = [substitute(f, renamed) for f in lf.atoms()
             if not (isinstance(f, Noo) and f.var in renamed)]
    return replace(lf, prefix=prefix, body=conj(*atoms))


def alpha_key(lf, ordered=False):
    """Canonical structure key, insensitive to variable names and ids.

    Variables are numbered by prefix position. Unless ``ordered`` is set,
    conjunct order is ignored too. ``Rel`` and ``Pred`` atoms share a key.
    """
    index = {q.var: i for i, q in enumerate(lf.prefix)}
    free = {}

    def term(t):
        if isinstance(t, Var):
            if t in index:
                return ("v", index[t])
            free.setdefault(t, len(free))
            return ("f", free[t])
        return ("c", t.value, t.quoted)

    def ty(t):
        return None if t is None else (t.category, t.abstract)

    def key(f):
        if isinstance(f, Pred):
            return ("p", f.name, tuple(term(a) for a in f.args),
                    tuple(ty(t) for t in f.types))
        if isinstance(f, Noo):
            return ("noo", term(f.var), f.label)
        if isinstance(f, Is):
            return ("is", term(f.a), term(f.b))
        if isinstance(f, Less):
            return ("lt", term(f.a), term(f.b))
        if isinstance(f, Not):
            return ("not", key(f.body))
        if isinstance(f, Conj):
            ks = [key(g) for g in f.items]
            return ("and", tuple(ks if ordered else sorted(ks, key=repr)))
        return ("true",)

    prefix = tuple((q.kind.value, tuple(ty(t) for t in q.types)) for q in lf.prefix)
    return prefix, key(lf.body)


def alpha_equal(a, b, ordered=False):
    return alpha_key(a, ordered) == alpha_key(b, ordered)


def is_bottom_quantifier(q):
    return BOTTOM in q.types


class Fresh:
    """Per-analysis supply of variable ids and unique display names."""

    def __init__(self, start=0, taken=()):
        self._ids = count(start)
        self._names = set(taken)

    def var(self, hint):
        base = (hint or "x")[0].lower()
        if not base.isalpha():
            base = "x"
        name = base
        n = 1
        while name in self._names:
            name = f"{base}{n}"
            n += 1
        self._names.add(name)
        return Var(next(self._ids), name)

    @classmethod
    def for_form(cls, lf):
        return cls(lf.next_id(), (q.var.display for q in lf.prefix))
