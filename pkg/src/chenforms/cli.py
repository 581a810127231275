"""Command-line entry point: ``chenforms <command> ...``.

Reports go to stdout as TSV, diagnostics to stderr.  Exit codes: 0 when every
check passes, 1 on a failed check or a numerical failure, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, replace
from pathlib import Path as FilePath
from typing import Sequence

from .chen import parse_word
from .errors import ChenFormsError, SingularPeriodMatrix
from .group_algebra import B, GroupElement, T, elements_from_lines, in_gamma0, parse_element
from .higher_order import DEFAULT_Z_SAMPLES, D, HigherOrderForm, order_certificate, period, period_matrix
from .modular_letters import parse_letter, named_form
from .paths import parse_path, parse_points
from .verify import CHECKS, RunContext, format_complex, format_number

SUPPORTED_LEVEL = 11
FORMS = ("cusp11", "eis11")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    level: int = SUPPORTED_LEVEL
    truncation: int = 400
    tol: float = 1e-8
    panels: int = 8
    nodes: int = 16
    basepoint: complex = 2j
    # (T, B, C) gives a singular period matrix, so the third default is D.
    elements: tuple[GroupElement, ...] = (T, B, D)
    z_samples: tuple[complex, ...] = DEFAULT_Z_SAMPLES

    def validate(self) -> RunConfig:
        for name in ("level", "truncation", "panels", "nodes"):
            if getattr(self, name) < 1:
                raise UsageError(f"{name} must be positive")
        if not self.tol > 0:
            raise UsageError("tol must be positive")
        if self.nodes < 2:
            raise UsageError("nodes must be at least 2")
        if self.level != SUPPORTED_LEVEL:
            raise UsageError(f"only level {SUPPORTED_LEVEL} forms are available")
        for z in (self.basepoint, *self.z_samples):
            if not z.imag > 0:
                raise UsageError(f"point {format_complex(z)} is not in the upper half-plane")
        if not self.elements or not self.z_samples:
            raise UsageError("elements and z-samples must be non-empty")
        for g in self.elements:
            if not in_gamma0(g, self.level):
                raise UsageError(f"element {g.to_text()} is not in Gamma_0({self.level})")
        return self

    def context(self) -> RunContext:
        return RunContext(self.truncation, self.tol, self.panels, self.nodes,
                          self.basepoint, tuple(self.elements), tuple(self.z_samples))


def _parse_point(text: str) -> complex:
    pts = parse_points(text)
    if len(pts) != 1:
        raise ValueError(f"expected one point 're,im', got {text!r}")
    return pts[0]


def _read_elements(value: str, base: FilePath | None = None) -> tuple[GroupElement, ...]:
    path = FilePath(value)
    if base is not None and not path.is_absolute():
        path = base / path
    if path.is_file():
        return tuple(elements_from_lines(path.read_text().splitlines()))
    # Inline form: "a,b,c,d;a,b,c,d".
    return tuple(parse_element(chunk) for chunk in value.split(";") if chunk.strip())


_CONVERTERS = {
    "level": int,
    "truncation": int,
    "terms": int,
    "tol": float,
    "panels": int,
    "nodes": int,
    "basepoint": _parse_point,
    "z_samples": lambda v: tuple(parse_points(v)),
    "z-samples": lambda v: tuple(parse_points(v)),
}


def read_config_file(path: str) -> dict:
    """Parse "key=value" lines; "#" starts a comment."""
    p = FilePath(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from None
    out = {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip().lower(), value.strip()
        if not sep:
            raise UsageError(f"{path}:{n}: expected key=value")
        try:
            if key == "elements":
                out["elements"] = _read_elements(value, p.parent)
            elif key in _CONVERTERS:
                name = {"terms": "truncation", "z-samples": "z_samples"}.get(key, key)
                out[name] = _CONVERTERS[key](value)
            else:
                raise UsageError(f"{path}:{n}: unknown key {key!r}")
        except (ValueError, ChenFormsError) as exc:
            raise UsageError(f"{path}:{n}: {exc}") from None
    return out


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then config file entries, then command-line flags."""
    values: dict = {}
    if getattr(args, "config", None):
        values.update(read_config_file(args.config))
    try:
        flags = {
            "level": getattr(args, "level", None),
            "truncation": getattr(args, "terms", None),
            "tol": getattr(args, "tol", None),
            "panels": getattr(args, "panels", None),
            "nodes": getattr(args, "nodes", None),
            "basepoint": _parse_point(args.basepoint) if getattr(args, "basepoint", None) else None,
            "elements": _read_elements(args.elements) if getattr(args, "elements", None) else None,
            "z_samples": tuple(parse_points(args.z_samples)) if getattr(args, "z_samples", None) else None,
        }
    except (ValueError, ChenFormsError) as exc:
        raise UsageError(str(exc)) from None
    values.update({k: v for k, v in flags.items() if v is not None})
    return replace(RunConfig(), **values).validate()


def _global_flags() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the command from being reset by the
    # subparser's copy of the same option.
    p = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    p.add_argument("--level", type=int, default=S, help="group level (only 11)")
    p.add_argument("--tol", type=float, default=S, help="quadrature target tolerance")
    p.add_argument("--terms", type=int, default=S, help="q-expansion truncation")
    p.add_argument("--panels", type=int, default=S, help="initial panels per segment")
    p.add_argument("--nodes", type=int, default=S, help="Gauss-Legendre nodes per panel")
    p.add_argument("--basepoint", default=S, metavar="RE,IM")
    p.add_argument("--elements", default=S, metavar="FILE", help='one "a,b,c,d" per line')
    p.add_argument("--config", default=S, metavar="FILE", help="key=value config file")
    p.add_argument("--z-samples", dest="z_samples", default=S, metavar="RE,IM;...")
    return p


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = _Parser(prog="chenforms", parents=[common],
                     description="Iterated integrals of level-11 modular forms and checks on them.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("coeffs", parents=[common], help="print q-expansion coefficients")
    p.add_argument("form", help="cusp11 or eis11")
    p.add_argument("count", type=int, help="largest index n")

    p = sub.add_parser("period", parents=[common], help="period of a letter along an element")
    p.add_argument("letter", help='e.g. "cusp11:hol"')
    p.add_argument("element", help='"a,b,c,d"')
    p.add_argument("--z", default=None, metavar="RE,IM", help="start point (default: base point)")

    p = sub.add_parser("itint", parents=[common], help="iterated integral along a path")
    p.add_argument("word", help='e.g. "cusp11:hol,eis11:antihol"')
    p.add_argument("path", help='"re,im;re,im;..."')

    p = sub.add_parser("verify", parents=[common], help="run a verification check")
    p.add_argument("check", choices=sorted(CHECKS))

    p = sub.add_parser("order-cert", parents=[common], help="order certificate for F_word")
    p.add_argument("word", help="unmixed word")

    sub.add_parser("period-matrix", parents=[common], help="period matrix over the elements")
    return parser


def _cmd_coeffs(args, cfg: RunConfig, out) -> int:
    if args.form not in FORMS:
        raise UsageError(f"unknown form {args.form!r}; expected one of {', '.join(FORMS)}")
    if args.count < 0:
        raise UsageError("count must be >= 0")
    f = named_form(args.form, max(cfg.truncation, args.count))
    for n in range(args.count + 1):
        print(f"{n}\t{f.coefficients[n]}", file=out)
    return 0


def _parse_or_usage(fn, text, *extra):
    try:
        return fn(text, *extra)
    except (ValueError, KeyError, ChenFormsError) as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from None


def _cmd_period(args, cfg: RunConfig, out) -> int:
    letter = _parse_or_usage(parse_letter, args.letter, cfg.truncation)
    g = _parse_or_usage(parse_element, args.element)
    if not in_gamma0(g, cfg.level):
        raise UsageError(f"element {g.to_text()} is not in Gamma_0({cfg.level})")
    z = _parse_or_usage(_parse_point, args.z) if args.z else cfg.basepoint
    est = period(letter, g, z, cfg.context().cfg)
    print(f"{format_complex(est.value)}\t{format_number(est.error)}", file=out)
    return 0


def _cmd_itint(args, cfg: RunConfig, out) -> int:
    from .chen import iterated_integral

    word = _parse_or_usage(parse_word, args.word, cfg.truncation)
    path = _parse_or_usage(parse_path, args.path)
    est = iterated_integral(path, word, cfg.context().cfg)
    print(f"{format_complex(est.value)}\t{format_number(est.error)}", file=out)
    return 0


def _emit(rows, out) -> int:
    for r in rows:
        print(r.to_tsv(), file=out)
    return 0 if all(r.passed for r in rows) else 1


def _cmd_verify(args, cfg: RunConfig, out) -> int:
    ctx = cfg.context()
    rows = CHECKS[args.check](ctx)
    for line in ctx.extra:
        print(line, file=out)
    return _emit(rows, out)


def _cmd_order_cert(args, cfg: RunConfig, out) -> int:
    word = _parse_or_usage(parse_word, args.word, cfg.truncation)
    ctx = cfg.context()
    try:
        F = HigherOrderForm(word, cfg.basepoint, ctx.cfg)
    except ChenFormsError as exc:
        raise UsageError(str(exc)) from None
    rep = order_certificate(F, cfg.elements, cfg.z_samples, 1e-6, raise_on_failure=False)
    for row in rep.rows:
        tup = ";".join(g.to_text() for g in row.elements)
        status = "PASS" if row.passed else "FAIL"
        print(f"{row.check}[{tup}]@{format_complex(row.z)}\t{format_number(row.residual)}\t"
              f"{format_number(row.tolerance)}\t{status}", file=out)
    return 0 if rep.passed else 1


def _cmd_period_matrix(args, cfg: RunConfig, out) -> int:
    ctx = cfg.context()
    letters = (ctx.cusp, ctx.cusp.conj(), ctx.eis)
    P = period_matrix(letters, cfg.elements, cfg.basepoint, ctx.cfg, check=False)
    print("letter\t" + "\t".join(g.to_text() for g in cfg.elements), file=out)
    for l, row in zip(letters, P.entries):
        print(l.to_text() + "\t" + "\t".join(format_complex(v) for v in row), file=out)
    print(f"det_abs={format_number(P.normalized_det)}", file=out)
    if P.normalized_det <= 1e-6 or not P.condition_estimate <= 1e8:
        raise SingularPeriodMatrix(f"period matrix is singular (normalized |det| {P.normalized_det:.3g})")
    return 0


_COMMANDS = {
    "coeffs": _cmd_coeffs,
    "period": _cmd_period,
    "itint": _cmd_itint,
    "verify": _cmd_verify,
    "order-cert": _cmd_order_cert,
    "period-matrix": _cmd_period_matrix,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
        return _COMMANDS[args.command](args, cfg, out)
    except UsageError as exc:
        print(f"chenforms: error: {exc}", file=sys.stderr)
        return 2
    except ChenFormsError as exc:
        print(f"chenforms: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1



def main_entry() -> None:
    sys.exit(main())
