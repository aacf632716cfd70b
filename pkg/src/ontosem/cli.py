import argparse
import json
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

from . import data_text
from .compose import analyze
from .errors import OntosemError
from .lexicon import load_lexicon
from .logform import Status, alpha_equal, alpha_key
from .ontology import TypeTerm, load_ontology
from .text import parse_lf, serialize
from .unify import render_trace, reunify_with_constraint

OK, ANOMALY, FAILURE = 0, 1, 2


@dataclass
class RunConfig:
    ontology: str = None
    lexicon: str = None
    mode: str = "plain"
    trace: bool = False
    format: str = "text"


def load_resources(cfg):
    """Ontology and lexicon named by cfg, the shipped ones by default."""
    if cfg.ontology:
        o = load_ontology(Path(cfg.ontology).read_text(encoding="utf-8"), path=cfg.ontology)
    else:
        o = load_ontology(data_text("reference.ont"), path="reference.ont")
    if cfg.lexicon:
        lex = load_lexicon(Path(cfg.lexicon).read_text(encoding="utf-8"), o, path=cfg.lexicon)
    else:
        lex = load_lexicon(data_text("reference.lex"), o, path="reference.lex")
    return o, lex


def _anomaly_lines(lf):
    return [f"anomaly: {v}: ({t} • {against}) => ⊥" for v, t, against in lf.anomalies]


def render_readings(readings, trace=False):
    lines = []
    for k, r in enumerate(readings):
        if len(readings) > 1:
            lines.append(f"reading {k + 1}:")
        lines.append(serialize(r.lf))
        lines += _anomaly_lines(r.lf)
        lines += [f"note: {n}" for n in r.notes]
        if trace and r.trace:
            lines += ["  " + s for s in render_trace(r.trace).splitlines()]
    return lines


def record(sentence, readings):
    return {
        "input": sentence,
        "readings": [serialize(r.lf) for r in readings],
        "anomalous": any(r.lf.status is Status.ANOMALOUS for r in readings),
        "trace": [[str(s) for s in r.trace] for r in readings],
    }


def cmd_analyze(cfg, sentences, out=None, err=None):
    out, err = out or sys.stdout, err or sys.stderr
    try:
        o, lex = load_resources(cfg)
    except (OSError, OntosemError) as e:
        print(f"error: {e}", file=err)
        return FAILURE
    code = OK
    for s in sentences:
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                readings = analyze(o, lex, s, cfg.mode)
        except OntosemError as e:
            print(f"error: {s!r}: {e}", file=err)
            code = FAILURE
            continue
        if any(r.lf.status is Status.ANOMALOUS for r in readings) and code == OK:
            code = ANOMALY
        if cfg.format == "jsonl":
            print(json.dumps(record(s, readings), ensure_ascii=False), file=out)
        else:
            print("\n".join(render_readings(readings, cfg.trace)), file=out)
    return code


class Repl:
    """One sentence per line; ``:`` lines are commands."""

    def __init__(self, o, lex, mode="plain", trace=False):
        self.o = o
        self.lex = lex
        self.mode = mode
        self.trace = trace
        self.last = None
        self.done = False

    def handle(self, line):
        """Process one input line; returns the text to print (maybe empty)."""
        line = line.strip()
        if not line:
            return ""
        try:
            if line.startswith(":"):
                return self.command(line[1:].split())
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                readings = analyze(self.o, self.lex, line, self.mode)
            self.last = readings[0].lf
            return "\n".join(render_readings(readings, self.trace))
        except OntosemError as e:
            return f"error: {e}"

    def command(self, words):
        cmd, args = words[0] if words else "", words[1:]
        if cmd == "quit":
            self.done = True
            return ""
        if cmd == "trace" and args in (["on"], ["off"]):
            self.trace = args[0] == "on"
            return f"trace {args[0]}"
        if cmd == "mode" and args in (["plain"], ["reified"]):
            self.mode = args[0]
            return f"mode {args[0]}"
        if cmd == "assume" and len(args) == 2:
            if self.last is None:
                return "error: nothing to constrain yet"
            term = TypeTerm.parse(args[1])
            if term.category not in self.o:
                return f"error: unknown category {term.category!r}"
            lf, steps = reunify_with_constraint(self.o, self.last, args[0], term)
            self.last = lf
            lines = [serialize(lf)] + _anomaly_lines(lf)
            if self.trace:
                lines += ["  " + s for s in render_trace(steps).splitlines()]
            return "\n".join(lines)
        return ("error: commands are :trace on|off, :mode plain|reified, "
                ":assume <var> <type>, :quit")


def cmd_repl(cfg, inp=None, out=None, err=None):
    inp = inp or sys.stdin
    out, err = out or sys.stdout, err or sys.stderr
    try:
        o, lex = load_resources(cfg)
    except (OSError, OntosemError) as e:
        print(f"error: {e}", file=err)
        return FAILURE
    repl = Repl(o, lex, cfg.mode, cfg.trace)
    prompt = inp.isatty()
    while not repl.done:
        if prompt:
            print("> ", end="", file=out, flush=True)
        line = inp.readline()
        if not line:
            break
        text = repl.handle(line)
        if text:
            print(text, file=out)
    return OK


@dataclass
class GoldenCase:
    line: int
    sentence: str
    expected: tuple
    mode: str


def read_golden(text, path=None):
    """``sentence<TAB>form[<TAB>form...]`` lines; ``@mode plain|reified``."""
    cases = []
    mode = "plain"
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if line.startswith("@mode"):
            parts = line.split()
            if len(parts) != 2 or parts[1] not in ("plain", "reified"):
                raise OntosemError("expected '@mode plain|reified'", path=path, line=lineno)
            mode = parts[1]
            continue
        fields = [f.strip() for f in line.split("\t")]
        if len(fields) < 2 or not all(fields):
            raise OntosemError("expected 'sentence<TAB>form'", path=path, line=lineno)
        cases.append(GoldenCase(lineno, fields[0], tuple(fields[1:]), mode))
    return cases


def check_case(o, lex, case):
    """Diff lines for one golden case; empty when it passes."""
    try:
        expected = [parse_lf(e, {r.name for r in o.relations}) for e in case.expected]
    except OntosemError as e:
        return [f"malformed expected form: {e}"]
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            got = [r.lf for r in analyze(o, lex, case.sentence, case.mode)]
    except OntosemError as e:
        return [f"analysis failed: {e}"]
    unmatched = list(got)
    missing = []
    for e in expected:
        hit = next((g for g in unmatched if alpha_equal(e, g)), None)
        if hit is None:
            missing.append(e)
        else:
            unmatched.remove(hit)
    if not missing and not unmatched:
        return []
    diff = []
    for e in missing:
        diff.append(f"- {serialize(e)}")
        diff += _structure_diff(e, unmatched)
    diff += [f"+ {serialize(g)}" for g in unmatched]
    return diff


def _structure_diff(expected, candidates):
    if not candidates:
        return []
    (ep, eb), (gp, gb) = alpha_key(expected), alpha_key(candidates[0])
    out = []
    for i, (a, b) in enumerate(zip(ep, gp)):
        if a != b:
            out.append(f"  quantifier {i + 1}: expected {a}, got {b}")
    if len(ep) != len(gp):
        out.append(f"  expected {len(ep)} quantifiers, got {len(gp)}")
    if eb != gb:
        out.append("  bodies differ")
    return out


def cmd_golden(cfg, path, out=None, err=None):
    out, err = out or sys.stdout, err or sys.stderr
    try:
        o, lex = load_resources(cfg)
        if path:
            cases = read_golden(Path(path).read_text(encoding="utf-8"), path)
        else:
            cases = read_golden(data_text("golden.tsv"), "golden.tsv")
    except (OSError, OntosemError) as e:
        print(f"error: {e}", file=err)
        return FAILURE
    failed = 0
    for case in cases:
        diff = check_case(o, lex, case)
        verdict = "FAIL" if diff else "ok"
        print(f"{verdict:4} {case.line}: {case.sentence} [{case.mode}]", file=out)
        for d in diff:
            print(f"     {d}", file=out)
        failed += bool(diff)
    print(f"{len(cases) - failed}/{len(cases)} passed" if cases else "0 cases", file=out)
    return OK if not failed else ANOMALY


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ontology", metavar="PATH")
    common.add_argument("--lexicon", metavar="PATH")
    common.add_argument("--mode", choices=("plain", "reified"), default="plain")
    common.add_argument("--trace", action="store_true")
    common.add_argument("--format", choices=("text", "jsonl"), default="text")

    p = argparse.ArgumentParser(prog="ontosem", description="Typed logical forms for controlled English.")
    sub = p.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", parents=[common],
                       help="analyze sentences")
    a.add_argument("sentences", nargs="*")
    a.add_argument("--file", help="read sentences from a file, one per line")
    sub.add_parser("repl", parents=[common],
                   help="interactive loop")
    g = sub.add_parser("golden", parents=[common],
                       help="run a golden file (the shipped one by default)")
    g.add_argument("path", nargs="?")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    cfg = RunConfig(args.ontology, args.lexicon, args.mode, args.trace, args.format)
    if args.command == "analyze":
        sentences = list(args.sentences)
        if args.file:
            try:
                text = Path(args.file).read_text(encoding="utf-8")
            except OSError as e:
                print(f"error: {e}", file=sys.stderr)
                return FAILURE
            sentences += [s.strip() for s in text.splitlines()
                          if s.strip() and not s.startswith("#")]
        return cmd_analyze(cfg, sentences)
    if args.command == "repl":
        return cmd_repl(cfg)
    return cmd_golden(cfg, args.path)


if __name__ == "__main__":
    sys.exit(main())
