"""Command-line interface.

Exit codes: 0 success, 1 parse or type error, 2 anaphora resolution failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .anaphora import NoResolution
from .fol import Untranslatable
from .fragment import FragmentError
from .lexicon import LexiconError, default_lexicon, load_lexicon
from .reduce import DepthExceeded, normalize
from .report import run_discourse
from .sexpr import SexprError, print_term, read, to_term
from .subtyping import expand_aliases, is_subtype
from .terms import arrow, show
from .typecheck import TypeCheckError, check_type, infer_sort, infer_type

OK, TYPE_ERROR, NO_RESOLUTION = 0, 1, 2


class CliError(Exception):
    def __init__(self, message: str, code: int = TYPE_ERROR):
        super().__init__(message)
        self.code = code


def _lexicon(args):
    return load_lexicon(args.lexicon) if args.lexicon else default_lexicon()


def _emit(args, text: str, data) -> None:
    if args.format == "structured":
        print(json.dumps(data, ensure_ascii=False, indent=2))
    else:
        print(text)


def _term(sx, bound, where: str):
    try:
        return to_term(sx, frozenset(bound))
    except SexprError as err:
        raise CliError(f"{where}: {err}") from None


def cmd_check(args) -> int:
    """Process ``declare``, ``assume``, ``check`` and ``infer`` forms in order."""
    sig = _lexicon(args).signature()
    tel: tuple = ()
    results = []
    path = args.termfile
    try:
        forms = read(Path(path).read_text(encoding="utf-8"))
    except SexprError as err:
        raise CliError(f"{path}: {err}") from None
    for n, form in enumerate(forms, 1):
        where = f"{path}: form {n}"
        bound = [x for x, _ in tel]
        try:
            match form:
                case ["declare", str(name), ty]:
                    ty = _term(ty, bound, where)
                    infer_sort(sig, tel, ty)
                    sig = sig.extend({name: ty})
                    results.append({"form": n, "declare": name})
                case ["assume", str(name), ty]:
                    ty = _term(ty, bound, where)
                    infer_sort(sig, tel, ty)
                    tel = (*tel, (name, ty))
                    results.append({"form": n, "assume": name})
                case ["check", m, ty]:
                    m, ty = _term(m, bound, where), _term(ty, bound, where)
                    elab = check_type(sig, tel, m, ty, subtyping=not args.no_subtyping)
                    results.append({"form": n, "check": "ok", "elaborated": print_term(elab)})
                case ["infer", m]:
                    ty = infer_type(sig, tel, _term(m, bound, where))
                    results.append({"form": n, "type": print_term(ty)})
                case _:
                    ty = infer_type(sig, tel, _term(form, bound, where))
                    results.append({"form": n, "type": print_term(ty)})
        except TypeCheckError as err:
            raise CliError(f"{where}: {err}") from None
    lines = []
    for r in results:
        if "declare" in r:
            lines.append(f"declared {r['declare']}")
        elif "assume" in r:
            lines.append(f"assumed {r['assume']}")
        elif "check" in r:
            lines.append(f"ok: {r['elaborated']}")
        else:
            lines.append(f"type: {r['type']}")
    _emit(args, "\n".join(lines), {"file": path, "results": results})
    return OK


def cmd_subtype(args) -> int:
    sig = _lexicon(args).signature()
    try:
        a = expand_aliases(to_term(_one(args.sub)), sig)
        b = expand_aliases(to_term(_one(args.sup)), sig)
        infer_sort(sig, (), a)
        infer_sort(sig, (), b)
    except (SexprError, TypeCheckError) as err:
        raise CliError(str(err)) from None
    co = is_subtype(sig, (), a, b)
    if co is None:
        _emit(args, f"absent: {show(normalize(sig, a))} is not a subtype of {show(normalize(sig, b))}",
              {"subtype": False})
        return OK
    # the witness is re-checked before it is reported
    check_type(sig, (), co.witness, arrow(a, b), subtyping=False)
    _emit(args, f"witness: {show(co.witness)}", {"subtype": True, "witness": print_term(co.witness)})
    return OK


def _one(text: str):
    forms = read(text)
    if len(forms) != 1:
        raise SexprError(f"expected one term, found {len(forms)}")
    return forms[0]


def _run(args, fol_only: bool) -> int:
    lex = _lexicon(args)
    trace = (lambda msg: print(msg, file=sys.stderr)) if args.trace else None
    reports = []
    for path in args.files:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as err:
            raise CliError(f"{path}: {err.strerror}") from None
        try:
            reports.append(run_discourse(lex, text, path, args.max_readings, trace))
        except FragmentError as err:
            raise CliError(f"{path}:{err.line or '?'}: {err}") from None
        except NoResolution as err:
            raise CliError(f"{path}: {err}", NO_RESOLUTION) from None
        except (TypeCheckError, Untranslatable, DepthExceeded) as err:
            raise CliError(f"{path}: {err}") from None
    text = "\n\n".join(r.text(fol_only) for r in reports)
    data = [r.to_json() for r in reports]
    _emit(args, text, data[0] if len(data) == 1 else data)
    return OK


def cmd_resolve(args) -> int:
    return _run(args, fol_only=False)


def cmd_export_fol(args) -> int:
    return _run(args, fol_only=True)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dtsevent", description="Dependent type semantics with events.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lexicon", help="lexicon table replacing the built-in one")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="type-check the forms of a term file")
    c.add_argument("termfile")
    c.add_argument("--no-subtyping", action="store_true", help="disable coercive subtyping")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("subtype", parents=[common], help="decide A <: B and print the coercion")
    s.add_argument("sub")
    s.add_argument("sup")
    s.set_defaults(func=cmd_subtype)

    for name, func, helptext in (("resolve", cmd_resolve, "resolve anaphora in discourse files"),
                                 ("export-fol", cmd_export_fol, "print first-order readings")):
        r = sub.add_parser(name, parents=[common], help=helptext)
        r.add_argument("files", nargs="+")
        r.add_argument("--max-readings", type=int, default=None)
        r.add_argument("--trace", action="store_true", help="log proof search to stderr")
        r.set_defaults(func=func)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.code
    except LexiconError as err:
        print(f"error: {err}", file=sys.stderr)
        return TYPE_ERROR


if __name__ == "__main__":
    sys.exit(main())
