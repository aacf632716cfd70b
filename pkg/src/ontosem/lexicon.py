"""Lexical entries carrying selectional types, and the lexicon file format.

One directive per line; ``#`` starts a comment::

    name  <surface> [<category>]
    noun  <surface> <category>
    pnoun <surface> <Pred> <category>[^a] [temporal-role]
    adj   <surface> <Pred> <category>[^a]
    verb  <surface> <Pred> <subj>[^a] <obj>[^a] [<ActivityPred>]
    gname <surface> <category>

``pnoun`` lines are predicate nouns (artist, thief): properties over a
category rather than categories. ``temporal-role`` marks those that combine
with *former*. The optional activity predicate of a verb names the activity
when the verb is reified.
"""

from dataclasses import dataclass
from typing import Optional

from .errors import DuplicateEntry, NotFound, ParseError, UnknownCategory
from .ontology import TOP, TypeTerm

POS = ("name", "noun", "adj", "verb2", "gerund-name")


@dataclass(frozen=True)
class Name:
    label: str
    category: str = TOP


@dataclass(frozen=True)
class NounType:
    category: str


@dataclass(frozen=True)
class AdjPred:
    pred: str
    selects: TypeTerm
    temporal_role: bool = False


@dataclass(frozen=True)
class VerbPred:
    pred: str
    subj: TypeTerm
    obj: TypeTerm
    activity: Optional[str] = None


@dataclass(frozen=True)
class AbstractName:
    label: str
    category: str


@dataclass(frozen=True)
class LexEntry:
    surface: str
    pos: str
    semantics: object


class Lexicon:
    def __init__(self, entries=()):
        self._entries = {}
        for e in entries:
            key = (e.surface, e.pos)
            if key in self._entries:
                raise DuplicateEntry(f"duplicate {e.pos} entry for {e.surface!r}")
            self._entries[key] = e

    def lookup(self, surface, pos):
        try:
            return self._entries[(surface, pos)]
        except KeyError:
            raise NotFound(surface, pos) from None

    def get(self, surface, pos):
        return self._entries.get((surface, pos))

    def __contains__(self, key):
        return key in self._entries

    def __iter__(self):
        return iter(self._entries.values())

    def __len__(self):
        return len(self._entries)

    def by_pos(self, pos):
        return [e for e in self._entries.values() if e.pos == pos]

    def verb_for_pred(self, pred):
        for e in self.by_pos("verb2"):
            if e.semantics.pred == pred:
                return e
        return None


def _term(text, o, path, lineno):
    t = TypeTerm.parse(text)
    if t.category not in o:
        raise UnknownCategory(t.category, path=path, line=lineno)
    return t


def load_lexicon(text, o, path=None):
    entries = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kw, *args = line.split()

        def bad(usage):
            return ParseError(f"expected: {usage}", path=path, line=lineno)

        def term(s):
            return _term(s, o, path, lineno)

        if kw == "name":
            if len(args) not in (1, 2):
                raise bad("name <surface> [<category>]")
            cat = term(args[1]).category if len(args) == 2 else TOP
            entry = LexEntry(args[0], "name", Name(args[0], cat))
        elif kw == "noun":
            if len(args) != 2:
                raise bad("noun <surface> <category>")
            entry = LexEntry(args[0], "noun", NounType(term(args[1]).category))
        elif kw == "pnoun":
            if len(args) not in (3, 4) or (len(args) == 4 and args[3] != "temporal-role"):
                raise bad("pnoun <surface> <Pred> <category>[^a] [temporal-role]")
            entry = LexEntry(args[0], "noun",
                             AdjPred(args[1], term(args[2]), len(args) == 4))
        elif kw == "adj":
            if len(args) != 3:
                raise bad("adj <surface> <Pred> <category>[^a]")
            entry = LexEntry(args[0], "adj", AdjPred(args[1], term(args[2])))
        elif kw == "verb":
            if len(args) not in (4, 5):
                raise bad("verb <surface> <Pred> <subj>[^a] <obj>[^a] [<ActivityPred>]")
            entry = LexEntry(args[0], "verb2", VerbPred(
                args[1], term(args[2]), term(args[3]), args[4] if len(args) == 5 else None))
        elif kw == "gname":
            if len(args) != 2:
                raise bad("gname <surface> <category>")
            entry = LexEntry(args[0], "gerund-name",
                             AbstractName(args[0], term(args[1]).category))
        else:
            raise ParseError(f"unknown directive {kw!r}", path=path, line=lineno)

        key = (entry.surface, entry.pos)
        if key in seen:
            raise DuplicateEntry(f"duplicate {entry.pos} entry for {entry.surface!r}",
                                 path=path, line=lineno)
        seen.add(key)
        entries.append(entry)
    return Lexicon(entries)
