"""Type unification ``(s • t)`` over the constraints a variable collects.

A variable's constraints are its quantifier type(s), one selectional type
per predicate slot it fills, and any types assumed later by re-unification.
Comparable types narrow the variable; an incomparable selectional type is
reconciled through a bridging relation that introduces a fresh object, and
the predicate slot that demanded it is moved onto that object. With no
bridge the variable is typed ⊥.
"""

import warnings
from dataclasses import dataclass, replace

from .errors import AmbiguousBridge, OntosemError, ScopeError
from .logform import (
    Fresh,
    Kind,
    LogicalForm,
    Not,
    Pred,
    Quantifier,
    Rel,
    Status,
    conj,
    simplify_is,
)
from .ontology import BOTTOM, TypeTerm


@dataclass(frozen=True)
class Won:
    term: TypeTerm


@dataclass(frozen=True)
class Bridge:
    """Reconcile two types via ``rel``.

    ``reverse`` is set when the existing object fills the relation's first
    slot rather than its second.
    """

    rel: object
    original_becomes: TypeTerm
    fresh: TypeTerm
    reverse: bool = False
    alternatives: tuple = ()


@dataclass(frozen=True)
class Bottom:
    s: TypeTerm
    t: TypeTerm


def unify_pair(o, s, t):
    """``(s • t)``: a winner by subsumption, a bridge, or Bottom."""
    if s.is_bottom or t.is_bottom:
        return Bottom(s, t)
    if o.subsumes(s.category, t.category):
        return Won(TypeTerm(s.category, s.abstract and t.abstract))
    if o.subsumes(t.category, s.category):
        return Won(TypeTerm(t.category, s.abstract and t.abstract))

    # what does not actually exist is never brought down by a bridge
    best = o.best_bridges(s.category, t.category)
    if best:
        rel = best[0]
        return Bridge(
            rel,
            TypeTerm(s.category, s.abstract or rel.slot1.abstract),
            TypeTerm(rel.slot0.category, t.abstract or rel.slot0.abstract),
            alternatives=tuple(best[1:]),
        )
    best = o.best_bridges(t.category, s.category)
    if best:
        rel = best[0]
        return Bridge(
            rel,
            TypeTerm(s.category, s.abstract or rel.slot0.abstract),
            TypeTerm(rel.slot1.category, t.abstract or rel.slot1.abstract),
            reverse=True,
            alternatives=tuple(best[1:]),
        )
    return Bottom(s, t)


@dataclass(frozen=True)
class TraceStep:
    var: str
    s: TypeTerm
    t: TypeTerm
    rule: str  # sub_left | sub_right | mode | bridge | bottom
    result: TypeTerm
    detail: str = ""

    def __str__(self):
        rule = f"{self.rule}: {self.detail}" if self.detail else self.rule
        return f"{self.var}: ({self.s} • {self.t}) => {self.result} [{rule}]"


def render_trace(trace):
    return "\n".join(str(step) for step in trace)


def replay(trace):
    """Final type per variable display name, as the trace derives it."""
    final = {}
    for step in trace:
        final[step.var] = step.result
    return final


def _won_rule(s, t, result):
    if s.category == t.category:
        return "mode" if s.abstract != t.abstract else "sub_left"
    return "sub_left" if result.category == s.category else "sub_right"


QUANT, SLOT, ASSUMED = "quant", "slot", "assumed"


@dataclass(frozen=True)
class _Constraint:
    term: TypeTerm
    origin: str
    where: tuple = ()  # (atom index, argument index) for SLOT


def _pred(atom):
    while isinstance(atom, Not):
        atom = atom.body
    return atom if isinstance(atom, Pred) else None


def _with_pred(atom, new):
    if isinstance(atom, Not):
        return Not(_with_pred(atom.body, new))
    return new


def constraints_of(lf, v):
    """The constraint list of ``v``: quantifier types, assumed, then slots."""
    q = lf.quantifier(v)
    out = [_Constraint(t, QUANT) for t in q.types]
    out += [_Constraint(t, ASSUMED) for vid, t in lf.assumed if vid == v.id]
    for i, atom in enumerate(lf.atoms()):
        p = _pred(atom)
        if p is None:
            continue
        for j, (a, ty) in enumerate(zip(p.args, p.types)):
            if a == v and ty is not None:
                out.append(_Constraint(ty, SLOT, (i, j)))
    return out


@dataclass
class _Group:
    outcome: Bridge
    var: object
    members: list


def _unify_var(o, lf, v, order=None):
    cons = constraints_of(lf, v)
    if order is not None:
        if sorted(order) != list(range(len(cons))):
            raise ValueError(f"order must permute {len(cons)} constraints")
        cons = [cons[k] for k in order]
    if not cons:
        return lf, [], []

    # the quantifier's own type anchors bridging, whatever the fold order
    anchor = next((c for c in cons if c.origin == QUANT), cons[0])
    current = anchor.term
    pending = [c for c in cons if c is not anchor]
    steps = []
    explicit_actual = False
    consumed = []
    progress = True
    while progress:
        progress = False
        left = []
        for c in pending:
            if o.comparable(current.category, c.term.category):
                out = unify_pair(o, current, c.term)
                steps.append(TraceStep(v.display, current, c.term,
                                       _won_rule(current, c.term, out.term), out.term))
                current = out.term
                consumed.append(c)
                if c.origin != QUANT and not c.term.abstract:
                    explicit_actual = True
                progress = True
            else:
                left.append(c)
        pending = left

    fresh = Fresh.for_form(lf)
    groups = []
    bottoms = []
    notes = []
    for c in pending:
        for g in groups:
            if o.comparable(g.outcome.fresh.category, c.term.category):
                g.members.append(c)
                steps.append(TraceStep(v.display, current, c.term, "bridge",
                                       g.outcome.original_becomes,
                                       f"shares {g.var.display}"))
                break
        else:
            out = unify_pair(o, current, c.term)
            if isinstance(out, Bridge):
                fv = fresh.var(out.fresh.category)
                groups.append(_Group(out, fv, [c]))
                args = (v.display, fv.display) if out.reverse else (fv.display, v.display)
                steps.append(TraceStep(v.display, current, c.term, "bridge",
                                       out.original_becomes,
                                       f"{out.rel.name}({','.join(args)}), "
                                       f"{fv.display}:{out.fresh}"))
                if out.alternatives:
                    warn = AmbiguousBridge(current, c.term,
                                           [str(r) for r in (out.rel,) + out.alternatives])
                    warnings.warn(warn, stacklevel=3)
                    notes.append(str(warn))
            else:
                bottoms.append(c)

    for c in bottoms:
        steps.append(TraceStep(v.display, c.term, current, "bottom", BOTTOM))
    if bottoms:
        final = BOTTOM
    else:
        abstract = current.abstract or any(
            g.outcome.original_becomes.abstract for g in groups)
        if explicit_actual:
            abstract = False
        final = TypeTerm(current.category, abstract)
        if final != current:
            steps.append(TraceStep(v.display, current, final, "mode", final,
                                   "bridged object need not exist"))

    anomalies = tuple((v.display, c.term, current) for c in bottoms)
    lf = _rebuild(lf, v, final, consumed + bottoms, groups, anomalies, notes)
    return lf, steps, [g.var for g in groups]


def _rebuild(lf, v, final, cleared, groups, anomalies, notes):
    atoms = list(lf.atoms())

    def set_arg(i, j, *, term=None, clear=False):
        p = _pred(atoms[i])
        args, types = list(p.args), list(p.types)
        if term is not None:
            args[j] = term
        if clear:
            types[j] = None
        atoms[i] = _with_pred(atoms[i], replace(p, args=tuple(args), types=tuple(types)))

    for c in cleared:
        if c.origin == SLOT:
            set_arg(*c.where, clear=True)
    for g in groups:
        for c in g.members:
            if c.origin == SLOT:
                set_arg(*c.where, term=g.var)

    inserts = []
    for g in groups:
        slots = [c.where[0] for c in g.members if c.origin == SLOT]
        at = min(slots) + 1 if slots else len(atoms)
        args = (v, g.var) if g.outcome.reverse else (g.var, v)
        inserts.append((at, Rel(g.outcome.rel.name, args)))
    for at, rel in sorted(inserts, key=lambda x: x[0], reverse=True):
        atoms.insert(at, rel)

    prefix = []
    for q in lf.prefix:
        if q.var == v:
            prefix.append(Quantifier(q.kind, v, (final,)))
            prefix.extend(Quantifier(Kind.EXISTS, g.var, (g.outcome.fresh,))
                          for g in groups)
        else:
            prefix.append(q)

    assumed = tuple((vid, t) for vid, t in lf.assumed if vid != v.id)
    return replace(lf, prefix=tuple(prefix), body=conj(*atoms),
                   anomalies=lf.anomalies + anomalies,
                   assumed=assumed, notes=lf.notes + tuple(notes))


def unify_var(o, lf, v, order=None):
    """Resolve one variable; returns the new form and its trace steps.

    ``order`` optionally permutes the constraint list (see constraints_of).
    """
    lf, steps, _ = _unify_var(o, lf, v, order)
    if lf.anomalies:
        lf = replace(lf, status=Status.ANOMALOUS)
    return lf, steps


def unify_all(o, lf, orders=None):
    """Unify every bound variable, fresh bridge variables included.

    ``orders`` maps variable ids to constraint permutations. Trace order:
    plainly narrowed variables, then bridged ones, then fresh ones.
    """
    if lf.status is not Status.PRE:
        raise OntosemError(f"unify_all needs a pre-unification form, got {lf.status.value}")
    orders = orders or {}
    source = lf
    lf = simplify_is(lf)

    work = list(lf.vars)
    per_var = {}
    bridged, fresh_vars = set(), []
    i = 0
    while i < len(work):
        v = work[i]
        lf, steps, fresh = _unify_var(o, lf, v, orders.get(v.id))
        per_var[v] = steps
        if fresh:
            bridged.add(v)
        work.extend(fresh)
        fresh_vars.extend(fresh)
        i += 1

    original = [v for v in work if v not in fresh_vars]
    ordered = ([v for v in original if v not in bridged]
               + [v for v in original if v in bridged] + fresh_vars)
    trace = [s for v in ordered for s in per_var[v]]
    status = Status.ANOMALOUS if lf.anomalies else Status.FINAL
    lf = simplify_is(replace(lf, status=status, source=source, assumed=()))
    return lf, trace


def reunify_with_constraint(o, lf, v, extra, predicate=None):
    """Retract and redo unification with one more constraint on ``v``.

    The constraint joins ``v``'s original pre-unification constraints, so a
    type inferred earlier can be revised rather than only narrowed. With
    ``predicate`` the constraint arrives as a new unary atom, which a bridge
    may move onto a fresh object.
    """
    if lf.status is Status.PRE:
        raise OntosemError("reunify_with_constraint needs a unified form")
    src = lf.source
    if src is None:
        raise OntosemError("form carries no pre-unification source")
    if isinstance(v, str):
        v = lf.var_named(v)
    if v not in simplify_is(src).vars:
        raise ScopeError(f"{v} was introduced by unification; constrain its origin instead")
    if predicate:
        src = replace(src, body=conj(*src.atoms(), Pred(predicate, (v,), (extra,))))
    else:
        src = replace(src, assumed=src.assumed + ((v.id, extra),))
    return unify_all(o, src)
