"""Command-line front end (``colorhom``)."""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from typing import Sequence

from . import uea
from .algebra import verify_color_hom_lie
from .report import VerificationReport
from .scalar import ScalarParseError, format_scalar, parse_scalar
from .specfile import SpecError, load_algebra, load_element, loads_super_description

EXIT_OK, EXIT_VIOLATION, EXIT_PARSE, EXIT_CAP = 0, 1, 2, 3


class _ParseFailure(Exception):
    pass


def _load_algebra(path):
    try:
        return load_algebra(path)
    except SpecError as e:
        raise _ParseFailure(f"{path}: {e}") from None
    except OSError as e:
        raise _ParseFailure(f"{path}: {e.strerror}") from None


def _load_element(path, names, order):
    try:
        return load_element(path, names, order)
    except SpecError as e:
        raise _ParseFailure(f"{path}: {e}") from None
    except OSError as e:
        raise _ParseFailure(f"{path}: {e.strerror}") from None


def _parse_mu(text, order):
    if text is None:
        return None
    try:
        return parse_scalar(text, order)
    except ScalarParseError as e:
        raise _ParseFailure(f"--mu: {e}") from None


def _emit(args, text_lines: list[str], data: dict) -> None:
    if args.format == "structured":
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        print("\n".join(text_lines))


def _timing(label: str, start: float) -> None:
    print(f"[time] {label}: {time.perf_counter() - start:.3f}s", file=sys.stderr)


def _terms(ctx, nf) -> list[tuple[str, str]]:
    return [(" ".join(ctx.names[i] for i in w), format_scalar(c)) for w, c in nf.sorted_items()]


def _context(args, A):
    """Verified algebra -> context; returns (ctx, None) or (None, exit code)."""
    report = verify_color_hom_lie(A)
    if not report.ok:
        _emit(args, [report.render("verify")], {"verify": report.to_json()})
        return None, EXIT_VIOLATION
    try:
        return uea.build_alpha_stable_basis(A), None
    except uea.ConstructionError as e:
        print(f"basis construction failed: {e}", file=sys.stderr)
        return None, EXIT_VIOLATION


def _header(ctx, mu_used) -> tuple[list[str], dict]:
    lines = [f"algebra: {ctx.algebra.name or '(unnamed)'}", f"mu: {ctx.mu}"]
    if mu_used is not None:
        lines.append(f"straightening mu: {mu_used}")
    lines.append("X:")
    lines.extend(f"  {n} = {d}" for n, d in ctx.x_definitions())
    data = {
        "algebra": ctx.algebra.name,
        "mu": str(ctx.mu),
        "X": [{"name": n, "value": d} for n, d in ctx.x_definitions()],
    }
    if mu_used is not None:
        data["straightening_mu"] = str(mu_used)
    return lines, data


def _print_nf(args, ctx, nf, mu_used) -> None:
    lines, data = _header(ctx, mu_used)
    terms = _terms(ctx, nf)
    lines.append("normal form:")
    if terms:
        lines.extend(f"  {w}  {c}" for w, c in terms)
    else:
        lines.append("  0")
    data["normal_form"] = [{"word": w.split(" "), "coeff": c} for w, c in terms]
    _emit(args, lines, data)


# commands -----------------------------------------------------------------------


def cmd_verify(args) -> int:
    A = _load_algebra(args.spec)
    start = time.perf_counter()
    report = verify_color_hom_lie(A)
    _timing("verify", start)
    _emit(args, [report.render(f"verify {A.name or args.spec}")], report.to_json())
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_normalize(args) -> int:
    A = _load_algebra(args.spec)
    t = _load_element(args.element, A.names, A.order)
    mu = _parse_mu(args.mu, A.order)
    ctx, code = _context(args, A)
    if ctx is None:
        return code
    start = time.perf_counter()
    nf = uea.normal_form(ctx, uea.to_x_basis(ctx, t), args.strategy, mu)
    _timing("normalize", start)
    _print_nf(args, ctx, nf, mu)
    return EXIT_OK


def cmd_multiply(args) -> int:
    A = _load_algebra(args.spec)
    a = _load_element(args.left, A.names, A.order)
    b = _load_element(args.right, A.names, A.order)
    mu = _parse_mu(args.mu, A.order)
    ctx, code = _context(args, A)
    if ctx is None:
        return code
    start = time.perf_counter()
    u = uea.normal_form(ctx, uea.to_x_basis(ctx, a), args.strategy, mu)
    v = uea.normal_form(ctx, uea.to_x_basis(ctx, b), args.strategy, mu)
    nf = uea.uea_multiply(ctx, u, v, args.strategy, mu)
    _timing("multiply", start)
    _print_nf(args, ctx, nf, mu)
    return EXIT_OK


def cmd_pbw_check(args) -> int:
    A = _load_algebra(args.spec)
    if args.max_len > args.cap:
        print(f"max-len {args.max_len} exceeds the resource cap {args.cap}", file=sys.stderr)
        return EXIT_CAP
    if args.max_len < 2:
        raise _ParseFailure("--max-len must be at least 2")
    ctx, code = _context(args, A)
    if ctx is None:
        return code
    L = args.max_len
    rng = random.Random(args.seed)
    sections: list[tuple[str, VerificationReport]] = []

    def run(label, fn):
        start = time.perf_counter()
        sections.append((label, fn()))
        _timing(label, start)

    run("decomposition", lambda: uea.decomposition_oracle(ctx, L, cap=args.cap))
    run("theta(I)=J", lambda: uea.theta_ideal_report(ctx, min(L, 3)))
    run("psi", lambda: uea.psi_check(ctx))
    run("annihilation", lambda: uea.annihilation_report(ctx, min(L, 4)))
    run("faithfulness", lambda: uea.faithfulness_report(ctx, L))
    words = uea.random_words(ctx, args.samples, min(L + 1, 5), rng)
    run("confluence", lambda: uea.confluence_report(ctx, words))

    ok = all(r.ok for _, r in sections)
    lines, data = _header(ctx, None)
    lines.append(f"seed: {args.seed}")
    for label, r in sections:
        lines.append(r.render(label))
    lines.append("PASS" if ok else "FAIL")
    data.update({"seed": args.seed, "ok": ok, "checks": {label: r.to_json() for label, r in sections}})
    _emit(args, lines, data)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_super_preset(args) -> int:
    try:
        with open(args.description, encoding="utf-8") as fh:
            text = loads_super_description(fh.read())
    except SpecError as e:
        raise _ParseFailure(f"{args.description}: {e}") from None
    except OSError as e:
        raise _ParseFailure(f"{args.description}: {e.strerror}") from None
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")

    straight = argparse.ArgumentParser(add_help=False)
    straight.add_argument("--strategy", choices=uea.STRATEGIES, default="leftmost")
    straight.add_argument("--mu", default=None, help="override the straightening sign (exact scalar)")

    p = argparse.ArgumentParser(prog="colorhom", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="check the algebra axioms")
    s.add_argument("spec")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("normalize", parents=[common, straight], help="PBW normal form of an element")
    s.add_argument("spec")
    s.add_argument("element")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("multiply", parents=[common, straight], help="product of two classes")
    s.add_argument("spec")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(func=cmd_multiply)

    s = sub.add_parser("pbw-check", parents=[common], help="desk-scale PBW verification suite")
    s.add_argument("spec")
    s.add_argument("--max-len", type=int, default=3)
    s.add_argument("--cap", type=int, default=uea.DEFAULT_ORACLE_CAP)
    s.add_argument("--samples", type=int, default=200, help="random words for the confluence check")
    s.set_defaults(func=cmd_pbw_check)

    s = sub.add_parser("super-preset", help="spec file for a superalgebra description")
    s.add_argument("description")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_super_preset)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _ParseFailure as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
