"""Command-line interface: ``alcovewalk <subcommand> [options]``.

Exit status is 0 on success, 1 for unparsable input, 2 when a walk budget
is exceeded and 3 when an input violates a precondition (for example a
non-dominant weight passed to product-pp, or render on rank above 2).
"""

from __future__ import annotations

import argparse
import json
import sys

from .affine import AffineGroup, ExtAffineElement, WalkType, affine_group
from .macdonald import (
    CoefficientTrace,
    Expansion,
    expand_E_monomial,
    expand_P_in_E,
    expand_X_in_E,
    hall_littlewood_product,
    pieri,
    product_E_P,
    product_P_P,
    product_X_E,
    specialize_expansion,
    tableau_pieri,
)
from .rootdata import PreconditionError, RootDatum, datum_from_json, datum_from_type
from .walks import (
    AlcoveWalk,
    NonMinimalEndpoint,
    WalkBudgetExceeded,
    enumerate_two_colored,
    enumerate_walks,
    walk_stats,
)

EXIT_PARSE = 1
EXIT_BUDGET = 2
EXIT_PRECONDITION = 3


class UsageError(Exception):
    """Malformed command-line input."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_PARSE)


# -- argument parsing --------------------------------------------------------


def parse_weight(text: str, rank: int) -> tuple[int, ...]:
    """Comma-separated fundamental-weight coordinates, e.g. "1,-2"."""
    try:
        coords = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad weight {text!r}") from None
    if len(coords) != rank:
        raise UsageError(f"weight {text!r} has {len(coords)} coordinates, datum has rank {rank}")
    return coords


def parse_word(text: str, G: AffineGroup) -> WalkType:
    """A walk type "pi<j>;i1,i2,..." or just "i1,i2,..."; letters are 0..n."""
    pi = 0
    body = text.strip()
    if body.startswith("pi"):
        head, _, body = body.partition(";")
        try:
            pi = int(head[2:])
        except ValueError:
            raise UsageError(f"bad sheet index in {text!r}") from None
        if pi not in G.pi_indices:
            raise UsageError(f"pi{pi} is not a length-zero element")
    try:
        letters = tuple(int(x) for x in body.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"bad word {text!r}") from None
    if any(not 0 <= i <= G.n for i in letters):
        raise UsageError(f"letters of {text!r} must lie in 0..{G.n}")
    return WalkType(pi, letters)


def parse_element(text: str, D: RootDatum, G: AffineGroup) -> ExtAffineElement:
    """An element of the extended affine Weyl group.

    Accepted forms: "1"; "x:<weight>" optionally followed by "*<letters>"
    (finite letters 1..n, e.g. "x:1,0*12" is x^(1,0) s1 s2); "m:<weight>"
    for m_mu; "minv:<weight>" for its inverse; "word:<type>" for the product
    of a walk type.
    """
    text = text.strip()
    if text == "1":
        return G.identity
    kind, sep, rest = text.partition(":")
    if not sep:
        raise UsageError(f"bad element {text!r}")
    if kind == "x":
        wt, _, letters = rest.partition("*")
        out = G.x(parse_weight(wt, D.rank))
        for ch in letters:
            if not ch.isdigit() or not 1 <= int(ch) <= D.rank:
                raise UsageError(f"bad finite letter {ch!r} in {text!r}")
            out = G.mul(out, G.s(int(ch)))
        return out
    if kind == "m":
        return G.m(parse_weight(rest, D.rank))
    if kind == "minv":
        return G.inv(G.m(parse_weight(rest, D.rank)))
    if kind == "word":
        return G.from_type(parse_word(rest, G))
    raise UsageError(f"bad element {text!r}")


def parse_type(text: str, D: RootDatum, G: AffineGroup) -> WalkType:
    """Walk type of --of: "word:<type>" verbatim, otherwise a reduced word of the element."""
    if text.strip().startswith("word:"):
        return parse_word(text.strip()[5:], G)
    return G.reduced_word(parse_element(text, D, G))


def load_datum(args) -> RootDatum:
    try:
        if args.datum:
            return datum_from_json(args.datum)
        return datum_from_type(args.type, params=args.params)
    except (OSError, json.JSONDecodeError, KeyError, ValueError, IndexError) as exc:
        raise UsageError(f"bad root datum: {exc}") from None


# -- output ------------------------------------------------------------------


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def render_expansion(exp: Expansion, args, extra: dict | None = None, trace: CoefficientTrace | None = None) -> str:
    if args.format == "json":
        obj = exp.to_json()
        if extra:
            obj.update(extra)
        if trace is not None:
            obj["trace"] = trace.to_json()
        return _dump(obj)
    lines = [exp.to_text(latex=args.format == "latex", expanded=args.expanded)]
    for k, v in (extra or {}).items():
        lines.append(f"% {k}: {v}" if args.format == "latex" else f"# {k}: {v}")
    if trace is not None:
        for rec in trace.to_json():
            lines.append(("% " if args.format == "latex" else "# ") + _dump_line(rec))
    return "\n".join(lines)


def _dump_line(rec) -> str:
    return json.dumps(rec, sort_keys=True, ensure_ascii=False)


def walk_json(D: RootDatum, G: AffineGroup, h: AlcoveWalk, v: int | None = None) -> dict:
    st = walk_stats(D, h)
    stats = {
        "end": G.format(st.end),
        "wt": list(st.wt),
        "d": list(D.w_word(st.d)),
        "i": list(D.w_word(st.i)),
        "coroots": [str(c) for c in st.coroots],
    }
    for name in ("phi", "phi_minus", "phi_asc", "phi_o", "phi_aff", "xi_des", "xi_minus"):
        stats[name] = sorted(getattr(st, name))
    stats["varpi"] = list(st.varpi) if st.has_varpi else None
    out = {
        "type": str(h.type),
        "start": G.format(h.start),
        "mask": h.mask,
        "grey": h.grey,
        "steps": [s.to_json() for s in h.steps],
        "stats": stats,
    }
    if v is not None:
        out["v"] = list(D.w_word(v))
    return out


def walk_text(G: AffineGroup, h: AlcoveWalk, v=None, D=None) -> str:
    marks = []
    for s in h.letter_steps:
        if s.kind == "cross":
            marks.append("+" if s.sign > 0 else "-")
        else:
            marks.append("g" if s.color == "grey" else "f")
    head = "" if v is None else "v=" + ("".join(f"s{i}" for i in D.w_word(v)) or "1") + " "
    return f"{head}{''.join(marks) or '.'} start={G.format(h.start)} end={G.format(h.end)}"


# -- subcommands -------------------------------------------------------------


def _maybe_specialize(exp: Expansion, args) -> Expansion:
    return specialize_expansion(exp, args.specialize) if args.specialize else exp


def _word(args, G):
    return parse_word(args.word, G) if args.word else None


def cmd_expand_e(args, D, G):
    mu = parse_weight(args.mu, D.rank)
    return render_expansion(_maybe_specialize(expand_E_monomial(D, mu, _word(args, G), args.budget, args.threads), args), args)


def cmd_x_to_e(args, D, G):
    mu = parse_weight(args.mu, D.rank)
    trace = CoefficientTrace() if args.trace else None
    if args.lam is None:
        exp = expand_X_in_E(D, mu, _word(args, G), args.budget, args.threads, trace)
    else:
        lam = parse_weight(args.lam, D.rank)
        exp = product_X_E(D, mu, lam, _word(args, G), args.budget, args.threads, trace)
    return render_expansion(_maybe_specialize(exp, args), args, trace=trace)


def cmd_p_to_e(args, D, G):
    lam = parse_weight(args.lam, D.rank)
    return render_expansion(_maybe_specialize(expand_P_in_E(D, lam), args), args)


def cmd_product_ep(args, D, G):
    mu, lam = parse_weight(args.mu, D.rank), parse_weight(args.lam, D.rank)
    trace = CoefficientTrace() if args.trace else None
    exp = product_E_P(D, mu, lam, _word(args, G), args.budget, args.threads, trace)
    return render_expansion(_maybe_specialize(exp, args), args, trace=trace)


def cmd_product_pp(args, D, G):
    mu, lam = parse_weight(args.mu, D.rank), parse_weight(args.lam, D.rank)
    D._require_dominant(mu)
    trace = CoefficientTrace() if args.trace else None
    exp = product_P_P(D, mu, lam, _word(args, G), args.budget, args.threads, trace)
    return render_expansion(_maybe_specialize(exp, args), args, trace=trace)


def cmd_pieri(args, D, G):
    lam = parse_weight(args.lam, D.rank)
    if args.variant == "tableau":
        # weight coordinates to a partition with n+1 parts
        part = [sum(lam[i:]) for i in range(D.rank)] + [0]
        exp = tableau_pieri(D, args.j, part)
    else:
        exp = pieri(D, args.j, lam, args.variant)
    return render_expansion(_maybe_specialize(exp, args), args)


def cmd_hl(args, D, G):
    mu, lam = parse_weight(args.mu, D.rank), parse_weight(args.lam, D.rank)
    exp, count = hall_littlewood_product(D, mu, lam, args.budget, args.threads)
    return render_expansion(exp, args, extra={"walks": count})


def _walk_list(args, D, G):
    if args.of is None:
        if args.mu is None or args.lam is None:
            raise UsageError("walks needs --of, or --mu and --lambda for two-colored walks")
        mu, lam = parse_weight(args.mu, D.rank), parse_weight(args.lam, D.rank)
        return enumerate_two_colored(D, mu, lam, args.budget, args.threads, _word(args, G))
    wtype = parse_type(args.of, D, G)
    start = parse_element(args.start, D, G)
    walks = enumerate_walks(D, wtype, start, args.constraint, args.budget, args.threads)
    return [(None, h) for h in walks]


def cmd_walks(args, D, G):
    pairs = _walk_list(args, D, G)
    if args.count_only:
        return str(len(pairs))
    if args.format == "json":
        return _dump([walk_json(D, G, h, v) for v, h in pairs])
    return "\n".join(walk_text(G, h, v, D) for v, h in pairs)


def cmd_render(args, D, G):
    if D.rank > 2:
        raise PreconditionError("render draws rank 1 and rank 2 data only")
    pairs = _walk_list(args, D, G)
    if args.mask is not None:
        pairs = [p for p in pairs if p[1].mask == args.mask]
        if not pairs:
            raise PreconditionError(f"no walk with fold mask {args.mask}")
    elif not args.all:
        pairs = pairs[:1]
    from .render import render_svg

    svg = render_svg(D, G, [h for _, h in pairs])
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
        return None
    return svg.rstrip("\n")


COMMANDS = {
    "expand-e": (cmd_expand_e, "E_mu in the monomial basis"),
    "x-to-e": (cmd_x_to_e, "X^mu (or X^mu E_lambda with --lambda) in the E-basis"),
    "p-to-e": (cmd_p_to_e, "P_lambda in the E-basis"),
    "product-ep": (cmd_product_ep, "E_mu P_lambda in the E-basis"),
    "product-pp": (cmd_product_pp, "P_mu P_lambda in the P-basis"),
    "pieri": (cmd_pieri, "P_{omega_j} P_lambda or E_{omega_j} P_lambda for minuscule omega_j"),
    "hl": (cmd_hl, "Hall-Littlewood product P_mu(t) P_lambda(t)"),
    "walks": (cmd_walks, "list or count alcove walks"),
    "render": (cmd_render, "SVG picture of walks (rank 1 and 2)"),
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="alcovewalk", description="Macdonald polynomial products via alcove walks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        s = sub.add_parser(name, help=help_text, description=help_text)
        g = s.add_mutually_exclusive_group()
        g.add_argument("--type", default="A1", help="built-in type such as A1, A2, B2, G2 (default A1)")
        g.add_argument("--datum", help="root datum JSON file")
        s.add_argument("--params", default="equal", choices=["equal", "per-class"], help="one t, or one t per class of reflections")
        s.add_argument("--budget", type=int, default=None, help="maximum walk length (default 22 or $ALCOVE_WALK_BUDGET)")
        s.add_argument("--threads", type=int, default=1, help="worker threads for walk enumeration")
        s.add_argument("--format", default="text", choices=["text", "json", "latex"])
        if name in ("expand-e", "x-to-e", "product-ep", "product-pp", "hl", "walks", "render"):
            s.add_argument("--mu", required=name not in ("walks", "render"), help="weight, e.g. 1,-2")
        if name in ("x-to-e", "p-to-e", "product-ep", "product-pp", "pieri", "hl", "walks", "render"):
            s.add_argument("--lambda", dest="lam", required=name in ("p-to-e", "product-ep", "product-pp", "pieri", "hl"), help="dominant weight")
        if name in ("expand-e", "x-to-e", "product-ep", "product-pp", "walks", "render"):
            s.add_argument("--word", help="walk type to use instead of the default reduced word, e.g. 'pi1;2,0'")
        if name in ("expand-e", "x-to-e", "p-to-e", "product-ep", "product-pp", "pieri"):
            s.add_argument("--specialize", choices=["q=0", "q=t", "q=t=0"], help="specialize coefficients")
            s.add_argument("--expanded", action="store_true", help="print normalized fractions instead of factored form")
        if name == "hl":
            s.add_argument("--expanded", action="store_true", help="print normalized fractions instead of factored form")
        if name in ("x-to-e", "product-ep", "product-pp"):
            s.add_argument("--trace", action="store_true", help="also print the per-walk coefficient factors")
        if name == "pieri":
            s.add_argument("--j", type=int, required=True, help="index of the minuscule fundamental weight")
            s.add_argument("--variant", default="PP", choices=["EP", "PP", "PP-compressed", "tableau"])
        if name in ("walks", "render"):
            s.add_argument("--of", help="element whose reduced word is the walk type: 1, x:<wt>[*letters], m:<wt>, minv:<wt>, word:<type>")
            s.add_argument("--start", default="1", help="start alcove, same syntax as --of (default 1)")
            s.add_argument("--constraint", default="none", choices=["none", "dominant-closure"])
        if name == "walks":
            s.add_argument("--count-only", action="store_true", help="print only the number of walks")
        if name == "render":
            s.add_argument("--mask", type=int, help="draw only the walk with this fold mask")
            s.add_argument("--all", action="store_true", help="draw every walk (default: the first)")
            s.add_argument("--out", help="write the SVG here instead of stdout")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fn = COMMANDS[args.command][0]
    try:
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        D = load_datum(args)
        G = affine_group(D)
        out = fn(args, D, G)
    except UsageError as exc:
        print(f"alcovewalk: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except WalkBudgetExceeded as exc:
        print(f"alcovewalk: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (PreconditionError, NonMinimalEndpoint) as exc:
        print(f"alcovewalk: precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"alcovewalk: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if out is not None:
        sys.stdout.write(out + "\n")
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
