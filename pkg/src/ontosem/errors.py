"""Exception hierarchy shared by every ontosem module."""


class OntosemError(Exception):
    """Base class; carries an optional source location."""

    def __init__(self, message, path=None, line=None):
        super().__init__(message)
        self.message = message
        self.path = path
        self.line = line

    def __str__(self):
        where = ""
        if self.path is not None and self.line is not None:
            where = f"{self.path}:{self.line}: "
        elif self.line is not None:
            where = f"line {self.line}: "
        elif self.path is not None:
            where = f"{self.path}: "
        return where + self.message


class OntologyError(OntosemError):
    pass


class CycleError(OntologyError):
    def __init__(self, cycle, **kw):
        self.cycle = list(cycle)
        super().__init__("subsumption cycle: " + " -> ".join(self.cycle), **kw)


class UnknownCategory(OntologyError):
    def __init__(self, name, **kw):
        self.name = name
        super().__init__(f"unknown category {name!r}", **kw)


class DuplicateDeclaration(OntologyError):
    pass


class AmbiguousLub(OntosemError):
    def __init__(self, s, t, candidates):
        self.candidates = tuple(candidates)
        super().__init__(
            f"no unique lub for {s!r} and {t!r}: {', '.join(self.candidates)}"
        )


class ParseError(OntosemError):
    """Malformed input text (logical forms, lexicon or golden files).

    ``pos`` is a character offset for logical-form text.
    """

    def __init__(self, message, pos=None, **kw):
        self.pos = pos
        if pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message, **kw)


class ScopeError(OntosemError):
    pass


class LexiconError(OntosemError):
    pass


class DuplicateEntry(LexiconError):
    pass


class NotFound(LexiconError, LookupError):
    def __init__(self, surface, pos):
        self.surface = surface
        self.pos = pos
        super().__init__(f"no {pos} entry for {surface!r}")


class UnsupportedPattern(OntosemError):
    def __init__(self, message, matched=()):
        self.matched = tuple(matched)
        if self.matched:
            message = f"{message} (matched prefix: {' '.join(self.matched)!r})"
        super().__init__(message)


class UnsupportedFormer(UnsupportedPattern):
    pass


class AmbiguousBridge(UserWarning):
    """More than one equally specific bridging relation applied.

    Raised as a warning only: the unifier still returns its deterministic
    pick (declaration order) and records this on the resulting form.
    """

    def __init__(self, original, selected, candidates):
        self.original = original
        self.selected = selected
        self.candidates = tuple(candidates)
        super().__init__(
            f"ambiguous bridge for ({original} • {selected}): "
            + ", ".join(self.candidates)
        )
