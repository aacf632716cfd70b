"""Category hierarchy, existence modes and the bridging-relation registry."""

from collections import deque
from dataclasses import dataclass

from .errors import (
    AmbiguousLub,
    CycleError,
    DuplicateDeclaration,
    OntologyError,
    ParseError,
    UnknownCategory,
)

TOP = "entity"
BOTTOM_NAME = "⊥"


@dataclass(frozen=True, order=True)
class TypeTerm:
    """A category paired with an existence mode (actual unless ``abstract``)."""

    category: str
    abstract: bool = False

    def __str__(self):
        return self.category + ("^a" if self.abstract else "")

    @property
    def is_bottom(self):
        return self.category == BOTTOM_NAME

    def actual(self):
        return TypeTerm(self.category, False)

    def as_abstract(self):
        return TypeTerm(self.category, True)

    @classmethod
    def parse(cls, text):
        if text.endswith("^a"):
            return cls(text[:-2], True)
        return cls(text, False)


BOTTOM = TypeTerm(BOTTOM_NAME)


@dataclass(frozen=True)
class RelationSig:
    """A bridging relation ``name(slot0, slot1)``.

    slot0 types the object a bridge introduces; slot1 types the object that
    was already there, and its mode is that object's mode after bridging.
    """

    name: str
    slot0: TypeTerm
    slot1: TypeTerm

    def __str__(self):
        return f"{self.name}({self.slot0}, {self.slot1})"


class Ontology:
    """Immutable subsumption DAG rooted at ``entity``.

    ``edges`` are (child, parent) pairs. ``abstract_rooted`` categories, and
    everything below them, are quantified in abstract mode by default.
    """

    def __init__(self, categories, edges=(), abstract_rooted=(), relations=()):
        cats = []
        seen = set()
        for c in categories:
            if c in seen:
                raise DuplicateDeclaration(f"category {c!r} declared twice")
            if not c or c == BOTTOM_NAME:
                raise OntologyError(f"invalid category name {c!r}")
            seen.add(c)
            cats.append(c)
        self._categories = tuple(cats)
        self._index = {c: i for i, c in enumerate(cats)}

        parents = {c: [] for c in cats}
        for child, parent in edges:
            self._check(child)
            self._check(parent)
            if parent in parents[child]:
                raise DuplicateDeclaration(f"edge {child} ⊑ {parent} declared twice")
            parents[child].append(parent)
        self._parents = {c: tuple(ps) for c, ps in parents.items()}

        cycle = _find_cycle(cats, self._parents)
        if cycle:
            raise CycleError(cycle)

        if TOP not in self._index:
            raise OntologyError(f"top category {TOP!r} is not declared")
        for c in cats:
            if c != TOP and not self._parents[c]:
                raise OntologyError(f"category {c!r} does not reach {TOP!r}")
        if self._parents[TOP]:
            raise OntologyError(f"{TOP!r} must be the top category")

        # reflexive-transitive closure with path lengths
        self._up = {c: _bfs_up(c, self._parents) for c in cats}

        for c in abstract_rooted:
            self._check(c)
        self._abstract_rooted = frozenset(abstract_rooted)

        rels = []
        keys = set()
        for r in relations:
            self._check(r.slot0.category)
            self._check(r.slot1.category)
            key = (r.name, r.slot0.category, r.slot1.category)
            if key in keys:
                raise DuplicateDeclaration(f"relation {r} declared twice")
            keys.add(key)
            rels.append(r)
        self._relations = tuple(rels)

    def _check(self, name):
        if name not in self._index:
            raise UnknownCategory(name)

    @property
    def categories(self):
        return self._categories

    @property
    def edges(self):
        return tuple((c, p) for c in self._categories for p in self._parents[c])

    @property
    def abstract_rooted(self):
        return self._abstract_rooted

    @property
    def relations(self):
        return self._relations

    def __contains__(self, name):
        return name in self._index

    def parents(self, name):
        self._check(name)
        return self._parents[name]

    def ancestors(self, name):
        """All t with name ⊑ t, including name itself."""
        self._check(name)
        return frozenset(self._up[name])

    def distance(self, s, t):
        """Fewest ⊑ steps from s up to t, or None when s is not below t."""
        self._check(s)
        self._check(t)
        return self._up[s].get(t)

    def subsumes(self, s, t):
        """True iff s ⊑ t."""
        self._check(s)
        self._check(t)
        return t in self._up[s]

    def comparable(self, s, t):
        return self.subsumes(s, t) or self.subsumes(t, s)

    def lub(self, s, t):
        self._check(s)
        self._check(t)
        common = self._up[s].keys() & self._up[t].keys()
        minimal = [
            c for c in common
            if not any(d != c and c in self._up[d] for d in common)
        ]
        if len(minimal) != 1:
            raise AmbiguousLub(s, t, sorted(minimal, key=self._index.get))
        return minimal[0]

    def default_abstract(self, name):
        """Whether quantification over ``name`` starts in abstract mode."""
        self._check(name)
        return any(a in self._up[name] for a in self._abstract_rooted)

    def find_bridges(self, original, selected):
        """Relations R(fresh :: selected, original), most specific first."""
        self._check(original)
        self._check(selected)
        scored = []
        for i, r in enumerate(self._relations):
            d0 = self._up[selected].get(r.slot0.category)
            d1 = self._up[original].get(r.slot1.category)
            if d0 is None or d1 is None:
                continue
            scored.append((d0 + d1, i, r))
        scored.sort(key=lambda x: x[:2])
        return [r for _, _, r in scored]

    def best_bridges(self, original, selected):
        """The equally most-specific candidates of find_bridges (maybe empty)."""
        found = self.find_bridges(original, selected)
        if not found:
            return []
        best = self._specificity(found[0], original, selected)
        return [r for r in found if self._specificity(r, original, selected) == best]

    def _specificity(self, r, original, selected):
        return (self._up[selected][r.slot0.category]
                + self._up[original][r.slot1.category])

    def __repr__(self):
        return (f"Ontology({len(self._categories)} categories, "
                f"{len(self._relations)} relations)")


def _bfs_up(start, parents):
    dist = {start: 0}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for p in parents[c]:
            if p not in dist:
                dist[p] = dist[c] + 1
                queue.append(p)
    return dist


def _find_cycle(cats, parents):
    WHITE, GREY, BLACK = 0, 1, 2
    color = dict.fromkeys(cats, WHITE)
    for root in cats:
        if color[root] != WHITE:
            continue
        stack = [(root, iter(parents[root]))]
        path = [root]
        color[root] = GREY
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                path.pop()
                color[node] = BLACK
            elif color[nxt] == GREY:
                return path[path.index(nxt):] + [nxt]
            elif color[nxt] == WHITE:
                color[nxt] = GREY
                stack.append((nxt, iter(parents[nxt])))
                path.append(nxt)
    return None


def load_ontology(text, path=None):
    """Parse the line-oriented ontology format.

    Directives: ``cat``, ``sub``, ``abstract-category`` and ``rel``. Names must
    be declared with ``cat`` before any other directive mentions them.
    """
    categories = []
    declared = set()
    edges = []
    abstract = []
    relations = []
    rel_keys = set()

    def need(name, lineno):
        if name not in declared:
            raise UnknownCategory(name, path=path, line=lineno)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kw, args = parts[0], parts[1:]
        if kw == "cat":
            if len(args) != 1:
                raise ParseError("expected: cat <name>", path=path, line=lineno)
            if args[0] in declared:
                raise DuplicateDeclaration(f"category {args[0]!r} declared twice",
                                           path=path, line=lineno)
            declared.add(args[0])
            categories.append(args[0])
        elif kw == "sub":
            if len(args) != 2:
                raise ParseError("expected: sub <child> <parent>", path=path, line=lineno)
            for a in args:
                need(a, lineno)
            if tuple(args) in edges:
                raise DuplicateDeclaration(f"edge {args[0]} ⊑ {args[1]} declared twice",
                                           path=path, line=lineno)
            edges.append(tuple(args))
        elif kw == "abstract-category":
            if len(args) != 1:
                raise ParseError("expected: abstract-category <name>", path=path, line=lineno)
            need(args[0], lineno)
            abstract.append(args[0])
        elif kw == "rel":
            if len(args) != 3:
                raise ParseError("expected: rel <Name> <slot0>[^a] <slot1>[^a]",
                                 path=path, line=lineno)
            s0, s1 = TypeTerm.parse(args[1]), TypeTerm.parse(args[2])
            need(s0.category, lineno)
            need(s1.category, lineno)
            key = (args[0], s0.category, s1.category)
            if key in rel_keys:
                raise DuplicateDeclaration(f"relation {args[0]} declared twice",
                                           path=path, line=lineno)
            rel_keys.add(key)
            relations.append(RelationSig(args[0], s0, s1))
        else:
            raise ParseError(f"unknown directive {kw!r}", path=path, line=lineno)

    try:
        return Ontology(categories, edges, abstract, relations)
    except OntologyError as e:
        if e.path is None:
            e.path = path
        raise
