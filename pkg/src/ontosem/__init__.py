"""Typed logical forms for a controlled fragment of English."""

from importlib import resources

from .compose import Reading, analyze, build_former_p, build_np_compound, reify
from .errors import (
    AmbiguousBridge,
    CycleError,
    NotFound,
    OntosemError,
    ParseError,
    ScopeError,
    UnknownCategory,
    UnsupportedFormer,
    UnsupportedPattern,
)
from .lexicon import Lexicon, load_lexicon
from .logform import LogicalForm, alpha_equal, simplify_is
from .ontology import Ontology, TypeTerm, load_ontology
from .text import parse_lf, serialize
from .unify import reunify_with_constraint, unify_all, unify_pair


def data_text(name):
    return resources.files(__package__).joinpath("data", name).read_text(encoding="utf-8")


def load_reference():
    """The shipped reference ontology and lexicon."""
    o = load_ontology(data_text("reference.ont"), path="reference.ont")
    return o, load_lexicon(data_text("reference.lex"), o, path="reference.lex")
