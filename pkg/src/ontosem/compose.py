"""Controlled grammar and the templates that turn sentences into forms.

Supported input, all lowercase::

    sheba is hungry                      running is fun
    sheba is a young artist              william-h-bonney is billy-the-kid
    john attended the seminar            john painted a large elephant
    a book review                        a brick house
    an important and imminent event      a former president
    john read a book and=burned it       john planned the trip. it:t was lengthy

Determiners: ``the`` is unique existence, ``a``/``an`` plain existence.
A second clause joined by ``and=``, ``and``, ``and then`` or ``.`` may drop
its subject (it then shares the first clause's) or use a pronoun. Pronouns
may carry an antecedent annotation, ``it:b`` or ``it=b``, naming the
antecedent's variable; unannotated ``he``/``she`` take the first subject
and ``it`` the first object.
"""

import re
from dataclasses import dataclass, field, replace

from .errors import NotFound, UnsupportedFormer, UnsupportedPattern
from .lexicon import AbstractName, AdjPred, Name, NounType
from .logform import (
    Const,
    Fresh,
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
    check_scope,
    conj,
)
from .ontology import BOTTOM, TypeTerm
from .unify import unify_all

DETERMINERS = {"the": Kind.EXISTS_UNIQUE, "a": Kind.EXISTS, "an": Kind.EXISTS}
COPULAS = {"is", "was"}
AUXILIARIES = {"will"}
SUBJECT_PRONOUNS = {"he", "she", "it"}
OBJECT_PRONOUNS = {"it", "him", "her"}
SEPARATORS = {"and=", "and", ".", ","}
HOLE = "P"
ACTIVITY = "activity"

PATTERNS = (
    "name_is_name", "name_is_adj", "name_is_indef_noun", "name_verb_det_noun",
    "name_verb_det_adj_noun", "nn_compound_np", "adj_noun_np", "former_p_np",
    "gerund_is_adj", "conj_and_clause",
)


@dataclass(frozen=True)
class Sentence:
    tokens: tuple
    pattern: str


@dataclass(frozen=True)
class Reading:
    lf: LogicalForm
    mode: str = "plain"
    notes: tuple = ()
    trace: tuple = field(default=(), compare=False)


def tokenize(text):
    toks = []
    for raw in text.lower().split():
        if raw.startswith("and=") and len(raw) > 4:
            toks += ["and=", raw[4:]]
            continue
        m = re.match(r"^(.*?)([.,]*)$", raw)
        word, punct = m.groups()
        if word:
            toks.append(word)
        toks.extend(punct)
    return toks


# -- syntax -------------------------------------------------------------

@dataclass
class _NP:
    kind: str  # name | gname | pron | det
    det: object = None
    head: object = None  # LexEntry
    modifier: object = None  # LexEntry of a [Noun Noun] modifier
    adjs: tuple = ()
    former: bool = False
    word: str = ""
    annotation: str = ""


@dataclass
class _Clause:
    subj: object  # _NP or None (shared subject)
    verb: object = None  # LexEntry
    obj: object = None  # _NP
    adjs: tuple = ()  # copular adjectives


class _Parser:
    def __init__(self, lex, tokens):
        self.lex = lex
        self.toks = tokens
        self.i = 0
        self.reached = 0

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def advance(self):
        self.i += 1
        self.reached = max(self.reached, self.i)
        return self.toks[self.i - 1]

    def fail(self, msg):
        raise UnsupportedPattern(msg, self.toks[:self.reached])

    def entry(self, word, *pos):
        for p in pos:
            e = self.lex.get(word, p)
            if e is not None:
                return e
        return None

    def parse(self):
        if not self.toks:
            self.fail("empty sentence")
        first = self.peek()
        if self.entry(first, "name", "gerund-name"):
            clauses = [self.clause(first=True)]
            while self.peek() is not None:
                if self.peek() not in SEPARATORS:
                    self.fail(f"unexpected {self.peek()!r}")
                self.advance()
                if self.peek() == "then":
                    self.advance()
                if self.peek() is None:
                    break
                clauses.append(self.clause(first=False))
            return clauses
        np = self.noun_phrase(require_det=False)
        if self.peek() is not None:
            self.fail(f"unexpected {self.peek()!r} after noun phrase")
        return np

    def clause(self, first):
        subj = None
        word = self.peek()
        if first:
            subj = self.proper()
        elif self._pronoun(word, SUBJECT_PRONOUNS):
            subj = self.pronoun()
        elif word is not None and self.entry(word, "name", "gerund-name"):
            subj = self.proper()
        w = self.peek()
        if w in COPULAS:
            self.advance()
            return self.predicate(subj)
        if w in AUXILIARIES:
            self.advance()
            w = self.peek()
        verb = self.entry(w, "verb2") if w else None
        if verb is None:
            if w is None:
                self.fail("sentence ends before its verb")
            self._unknown(w, "verb2")
        self.advance()
        return _Clause(subj, verb=verb, obj=self.object())

    def _unknown(self, w, pos):
        e = NotFound(w, pos)
        e.matched = tuple(self.toks[:self.reached])
        raise e

    def _pronoun(self, word, allowed):
        return word is not None and re.split("[:=]", word)[0] in allowed

    def pronoun(self):
        word, *ann = re.split("[:=]", self.advance(), maxsplit=1)
        return _NP("pron", word=word, annotation=ann[0] if ann else "")

    def proper(self):
        w = self.advance()
        e = self.entry(w, "name")
        if e:
            return _NP("name", head=e)
        e = self.entry(w, "gerund-name")
        if e:
            return _NP("gname", head=e)
        self._unknown(w, "name")

    def predicate(self, subj):
        w = self.peek()
        if w is None:
            self.fail("copula without a predicate")
        if w in DETERMINERS:
            return _Clause(subj, obj=self.noun_phrase(require_det=True))
        if self.entry(w, "name"):
            return _Clause(subj, obj=self.proper())
        return _Clause(subj, adjs=self.adjectives())

    def object(self):
        w = self.peek()
        if w is None:
            self.fail("verb without an object")
        if self._pronoun(w, OBJECT_PRONOUNS):
            return self.pronoun()
        if self.entry(w, "name", "gerund-name"):
            return self.proper()
        return self.noun_phrase(require_det=True)

    def adjectives(self):
        adjs = []
        while True:
            w = self.peek()
            e = self.entry(w, "adj") if w else None
            if e is None:
                if not adjs:
                    if w is None:
                        self.fail("expected an adjective")
                    self._unknown(w, "adj")
                return tuple(adjs)
            self.advance()
            adjs.append(e)
            if self.peek() == "and" and self.entry(self.peek(1) or "", "adj"):
                self.advance()

    def noun_phrase(self, require_det):
        det = None
        if self.peek() in DETERMINERS:
            det = DETERMINERS[self.advance()]
        elif require_det:
            self.fail("expected a determiner")
        if self.peek() == "former":
            self.advance()
            if self.peek() == "former":
                self.advance()
                raise UnsupportedFormer("stacked 'former' is not supported",
                                        self.toks[:self.reached])
            w = self.peek()
            if w is None:
                self.fail("'former' without a noun")
            head = self.entry(w, "noun")
            if head is None:
                self._unknown(w, "noun")
            self.advance()
            return _NP("det", det=det, head=head, former=True)
        adjs = ()
        if self.peek() is not None and self.entry(self.peek(), "adj"):
            adjs = self.adjectives()
        w = self.peek()
        if w is None:
            self.fail("noun phrase without a noun")
        head = self.entry(w, "noun")
        if head is None:
            self._unknown(w, "noun")
        self.advance()
        modifier = None
        nxt = self.peek()
        if nxt is not None and self.entry(nxt, "noun"):
            modifier, head = head, self.entry(self.advance(), "noun")
        return _NP("det", det=det, head=head, modifier=modifier, adjs=adjs)


def _pattern(tree):
    if isinstance(tree, _NP):
        if tree.former:
            return "former_p_np"
        return "nn_compound_np" if tree.modifier else "adj_noun_np"
    if len(tree) > 1:
        return "conj_and_clause"
    c = tree[0]
    if c.verb is not None:
        if c.obj.kind == "det" and c.obj.adjs:
            return "name_verb_det_adj_noun"
        return "name_verb_det_noun"
    if c.adjs:
        return "gerund_is_adj" if c.subj.kind == "gname" else "name_is_adj"
    return "name_is_name" if c.obj.kind == "name" else "name_is_indef_noun"


def parse_sentence(lex, text):
    """Tokenize and detect the construction; returns (Sentence, tree)."""
    toks = tokenize(text)
    tree = _Parser(lex, toks).parse()
    return Sentence(tuple(toks), _pattern(tree)), tree


# -- templates ------------------------------------------------------------

class _Builder:
    def __init__(self, o, lex):
        self.o = o
        self.lex = lex
        self.prefix = []
        self.fresh = Fresh()
        self.anomalies = []
        self.subjects = []
        self.objects = []

    def bind(self, kind, hint, types):
        v = self.fresh.var(hint)
        self.prefix.append(Quantifier(kind, v, tuple(types)))
        return v

    def form(self, atoms):
        lf = LogicalForm(tuple(self.prefix), conj(*atoms), Status.PRE,
                         anomalies=tuple(self.anomalies))
        check_scope(lf)
        return lf

    def np(self, np):
        """Bind a noun phrase; returns (variable, atoms)."""
        if np.kind == "pron":
            return self.resolve(np), []
        sem = np.head.semantics
        if np.kind == "name":
            assert isinstance(sem, Name)
            v = self.bind(Kind.EXISTS_UNIQUE, sem.label, [TypeTerm(sem.category)])
            return v, [Noo(v, sem.label)]
        if np.kind == "gname":
            assert isinstance(sem, AbstractName)
            # a named attribute/activity/process is asserted to exist as such
            v = self.bind(Kind.EXISTS_UNIQUE, sem.label, [TypeTerm(sem.category)])
            return v, [Noo(v, sem.label)]
        kind = np.det or Kind.EXISTS
        if np.former:
            return self.former(kind, np.head)
        if np.modifier is not None:
            v, atoms = self.compound(kind, np.head, np.modifier)
        elif isinstance(sem, NounType):
            t = TypeTerm(sem.category, self.o.default_abstract(sem.category))
            v, atoms = self.bind(kind, np.head.surface, [t]), []
        else:
            assert isinstance(sem, AdjPred)
            v = self.bind(kind, np.head.surface, [sem.selects])
            atoms = [Pred(sem.pred, (v,), (sem.selects,))]
        atoms += [Pred(a.semantics.pred, (v,), (a.semantics.selects,)) for a in np.adjs]
        return v, atoms

    def compound(self, kind, head, modifier):
        o = self.o
        for e in (head, modifier):
            if not isinstance(e.semantics, NounType):
                raise UnsupportedPattern(
                    f"{e.surface!r} names a property, not a category, in a compound")
        h, m = head.semantics.category, modifier.semantics.category
        best = o.best_bridges(m, h)
        if not best:
            x = self.bind(Kind.EXISTS, modifier.surface, [TypeTerm(m)])
            y = self.bind(kind, head.surface, [BOTTOM])
            self.anomalies.append((y.display, TypeTerm(h), TypeTerm(m)))
            return y, []
        rel = best[0]
        head_t = TypeTerm(h, rel.slot0.abstract)
        mod_t = TypeTerm(m, rel.slot1.abstract)
        if _made_of(o, h, m):
            y = self.bind(kind, head.surface, [head_t])
            x = self.bind(Kind.EXISTS, modifier.surface, [mod_t])
        else:
            x = self.bind(Kind.EXISTS, modifier.surface, [mod_t])
            y = self.bind(kind, head.surface, [head_t])
        return y, [Rel(rel.name, (y, x))]

    def former(self, kind, head):
        sem = head.semantics
        if not (isinstance(sem, AdjPred) and sem.temporal_role):
            raise UnsupportedFormer(f"'former' does not combine with {head.surface!r}")
        x = self.bind(kind, "x", [sem.selects])
        t = self.bind(Kind.EXISTS, "t", [])
        return x, [
            Less(t, Const("t_u")),
            Pred(sem.pred, (x, t), (sem.selects, None)),
            Not(Pred(sem.pred, (x, Const("now")), (sem.selects, None))),
        ]

    def resolve(self, np):
        if np.annotation:
            for q in self.prefix:
                if q.var.display == np.annotation:
                    return q.var
            raise UnsupportedPattern(f"no antecedent displayed as {np.annotation!r}")
        pool = self.subjects if np.word in ("he", "she") else self.objects
        if np.word in ("him", "her"):
            pool = self.objects
        if not pool:
            raise UnsupportedPattern(f"no antecedent for {np.word!r}")
        return pool[0]

    def clause(self, c):
        if c.subj is None:
            if not self.subjects:
                raise UnsupportedPattern("first clause needs a subject")
            s, s_atoms = self.subjects[0], []
        else:
            s, s_atoms = self.np(c.subj)
        if c.subj is not None and c.subj.kind != "pron":
            self.subjects.append(s)
        if c.adjs:
            return s_atoms + [Pred(a.semantics.pred, (s,), (a.semantics.selects,))
                              for a in c.adjs]
        obj, o_atoms = self.np(c.obj)
        if c.obj.kind != "pron":
            self.objects.append(obj)
        if c.verb is None:
            return s_atoms + o_atoms + [Is(s, obj)]
        sem = c.verb.semantics
        return s_atoms + [Pred(sem.pred, (s, obj), (sem.subj, sem.obj))] + o_atoms


def _made_of(o, head, modifier):
    return ("substance" in o and "artifact" in o
            and o.subsumes(modifier, "substance") and o.subsumes(head, "artifact"))


def build_np_compound(o, lex, head, modifier, det="a"):
    """``[modifier head]`` as a unified fragment with the hole ``P`` on the head."""
    b = _Builder(o, lex)
    kind = DETERMINERS.get(det, Kind.EXISTS)
    y, atoms = b.compound(kind, lex.lookup(head, "noun"), lex.lookup(modifier, "noun"))
    lf, _ = unify_all(o, b.form(atoms + [Pred(HOLE, (y,))]))
    return lf


def build_former_p(lex, p, o=None, det="a"):
    """``former p``: was p at some t before utterance time, is not p now.

    Returns the pre-unification fragment, unified when ``o`` is given.
    """
    b = _Builder(o, lex)
    x, atoms = b.former(DETERMINERS.get(det, Kind.EXISTS), lex.lookup(p, "noun"))
    lf = b.form(atoms + [Pred(HOLE, (x,))])
    if o is not None:
        lf, _ = unify_all(o, lf)
    return lf


def _reading(o, pre, mode):
    lf, trace = unify_all(o, pre)
    return Reading(lf, mode, lf.notes, tuple(trace))


def reify(o, lex, reading):
    """Replace the single verb atom ``V(s, x)`` by an activity individual.

    ``(E! a:activity)(VAct(a) & Subject(a,s) & Object(a,x))`` where ``VAct``
    is the verb's activity predicate; the verb's selectional types move to
    the Subject/Object slots.
    """
    src = reading.lf.source if reading.lf.status is not Status.PRE else reading.lf
    if src is None:
        raise UnsupportedPattern("reading carries no pre-unification form")
    atoms = src.atoms()
    verbs = [i for i, f in enumerate(atoms)
             if isinstance(f, Pred) and lex.verb_for_pred(f.name) is not None]
    if len(verbs) != 1:
        raise UnsupportedPattern(f"reification needs exactly one verb, found {len(verbs)}")
    i = verbs[0]
    atom = atoms[i]
    sem = lex.verb_for_pred(atom.name).semantics
    if sem.activity is None:
        raise UnsupportedPattern(f"no activity predicate for verb {atom.name!r}")
    s, x = atom.args
    a = Fresh.for_form(src).var("a")
    act = TypeTerm(ACTIVITY)
    prefix = []
    for q in src.prefix:
        prefix.append(q)
        if q.var == s:
            prefix.append(Quantifier(Kind.EXISTS_UNIQUE, a, (act,)))
    atoms[i:i + 1] = [
        Pred(sem.activity, (a,), (act,)),
        Pred("Subject", (a, s), (None, atom.types[0])),
        Pred("Object", (a, x), (None, atom.types[1])),
    ]
    pre = replace(src, prefix=tuple(prefix), body=conj(*atoms))
    return _reading(o, pre, "reified")


def reified_targets(lf):
    """(activity variable, object variable) of a reified form."""
    act = obj = None
    for f in lf.atoms():
        if isinstance(f, Pred) and f.name == "Subject":
            act = f.args[0]
        if isinstance(f, Pred) and f.name == "Object":
            obj = f.args[1]
    return act, obj


def apply_followup(o, reading, adjs, target=None):
    """Predicate ``adjs`` of ``target``; of each reified candidate if None.

    A reified reading offers both the activity and its object, so an
    unannotated follow-up yields one reading per candidate.
    """
    src = reading.lf.source
    if target is not None:
        targets = [target]
    elif reading.mode == "reified":
        targets = [v for v in reified_targets(src) if v is not None]
    else:
        raise UnsupportedPattern("follow-up needs an antecedent")
    out = []
    for v in targets:
        extra = [Pred(a.semantics.pred, (v,), (a.semantics.selects,)) for a in adjs]
        pre = replace(src, body=conj(*src.atoms(), *extra))
        out.append(_reading(o, pre, reading.mode))
    return out


def analyze(o, lex, text, mode="plain"):
    """Analyze one sentence; returns its final reading(s)."""
    if mode not in ("plain", "reified"):
        raise ValueError(f"unknown mode {mode!r}")
    sentence, tree = parse_sentence(lex, text)
    b = _Builder(o, lex)
    if isinstance(tree, _NP):
        v, atoms = b.np(tree)
        return [_reading(o, b.form(atoms + [Pred(HOLE, (v,))]), "plain")]

    # with no verb there is nothing to reify: the plain reading stands
    if mode == "plain" or all(c.verb is None for c in tree):
        atoms = []
        for c in tree:
            atoms += b.clause(c)
        return [_reading(o, b.form(atoms), "plain")]

    first, rest = tree[0], tree[1:]
    if first.verb is None or any(c.verb is not None for c in rest):
        raise UnsupportedPattern("reification needs exactly one verb")
    reading = reify(o, lex, _reading(o, b.form(b.clause(first)), "plain"))
    readings = [reading]
    for c in rest:
        if c.subj is None or c.subj.kind != "pron" or not c.adjs:
            raise UnsupportedPattern("reified follow-ups must be '<pronoun> is <adj>'")
        target = None
        if c.subj.annotation:
            target = reading.lf.var_named(c.subj.annotation)
        readings = [r for prev in readings
                    for r in apply_followup(o, prev, c.adjs, target)]
    return readings
