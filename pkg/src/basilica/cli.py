"""Command-line front end.

Exit codes: 0 success; 1 a check or verification suite reported failures;
2 parse error; 3 precondition violation; 4 budget exhausted or projection
search failed; 5 certificate verification failed.
"""

from __future__ import annotations

import argparse
import sys

from .core import (
    BudgetExceededError,
    Element,
    GeneratorSystem,
    InputError,
    PreconditionError,
    basilica,
    load_system,
)
from .checks import SUITES, run_checks
from .descent import (
    FailureReport,
    find_ab,
    find_b_inv_a,
    parse_certificate,
    prodense_projection_search,
    verify_certificate,
)
from .norms import ball, geodesic_rep, norm
from .permgrp import (
    SubgroupHandle,
    group_order,
    level_perms,
    orbit,
    stabilizer_generator_pairs,
    hword_str,
)
from .structure import ab_image, bprime_coords, heis_image, lift_section

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_BUDGET = 4
EXIT_VERIFY = 5


def _system(args) -> GeneratorSystem:
    if getattr(args, "system", None):
        return load_system(args.system)
    return basilica()


def _element(system: GeneratorSystem, text: str) -> Element:
    return system.element(text)


def _subgroup(system: GeneratorSystem, gens: str) -> SubgroupHandle:
    words = [w.strip() for w in gens.split(",") if w.strip()]
    if not words:
        raise InputError("no subgroup generators given")
    return SubgroupHandle.from_words(system, words)


def _print_sections(g: Element) -> None:
    print(f"word: {g}")
    print(f"root: {g.root_perm()}")
    for x in range(g.system.alphabet_size):
        print(f"section {x}: {g.section(x)}")


def cmd_eval(args) -> int:
    system = _system(args)
    g = _element(system, args.word)
    _print_sections(g)
    if args.depth:
        portrait = g.portrait(args.depth)
        for vertex in sorted(portrait.labels, key=lambda v: (len(v), v)):
            print(f"portrait {vertex or 'e'}: {portrait.labels[vertex]}")
    return EXIT_OK


def cmd_portrait(args) -> int:
    system = _system(args)
    g = _element(system, args.word)
    portrait = g.portrait(args.depth)
    if args.dot:
        sys.stdout.write(portrait.to_dot())
    else:
        for vertex in sorted(portrait.labels, key=lambda v: (len(v), v)):
            print(f"{vertex or 'e'}\t{portrait.labels[vertex]}")
    return EXIT_OK


def cmd_norm(args) -> int:
    system = _system(args)
    g = _element(system, args.word)
    n = norm(g)
    print(f"norm: {n}")
    print(f"geodesic: {system.word_str(geodesic_rep(g))}")
    return EXIT_OK


def cmd_ball(args) -> int:
    system = _system(args)
    sphere = ball(system, args.radius)
    sys.stdout.write(sphere.table())
    print(f"classes: {len(sphere)}", file=sys.stderr)
    return EXIT_OK


def cmd_orbit(args) -> int:
    system = _system(args)
    H = _subgroup(system, args.gens)
    table = orbit(H, args.vertex)
    sys.stdout.write(table.table())
    return EXIT_OK


def cmd_stab(args) -> int:
    system = _system(args)
    H = _subgroup(system, args.gens)
    for elem, hw in stabilizer_generator_pairs(H, args.vertex, cap=args.cap):
        print(f"{elem}\t{hword_str(hw)}")
    return EXIT_OK


def cmd_order(args) -> int:
    system = _system(args)
    H = _subgroup(system, args.gens)
    print(group_order(level_perms(system, H.generators, args.level)))
    return EXIT_OK


def cmd_find_ab(args) -> int:
    cert = find_ab(_element(basilica(), args.word), max_states=args.budget)
    print(f"vertex={cert.vertex or 'e'} k={cert.exponent_log}")
    return EXIT_OK


def cmd_find_binva(args) -> int:
    cert = find_b_inv_a(_element(basilica(), args.word), max_states=args.budget)
    print(f"vertex={cert.vertex or 'e'} k={cert.exponent_log}")
    return EXIT_OK


def cmd_lift(args) -> int:
    g = _element(basilica(), args.word)
    print(lift_section(g, args.vertex))
    return EXIT_OK


def cmd_abelianize(args) -> int:
    s, t = ab_image(_element(basilica(), args.word))
    print(f"({s},{t})")
    return EXIT_OK


def cmd_heis(args) -> int:
    h = heis_image(_element(basilica(), args.word))
    print(f"({h.p},{h.q},{h.r})")
    return EXIT_OK


def cmd_bprime(args) -> int:
    l, m, n = bprime_coords(_element(basilica(), args.word))
    print(f"({l},{m},{n})")
    return EXIT_OK


def cmd_prodense(args) -> int:
    H = _subgroup(basilica(), args.gens)
    result = prodense_projection_search(
        H,
        max_states=args.budget,
        schreier_cap=args.schreier_cap,
        max_depth=args.max_depth,
    )
    if isinstance(result, FailureReport):
        print(result.describe())
        return EXIT_BUDGET
    text = result.serialize()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"projection certificate written to {args.out}")
        print(f"vertex={result.vertex}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    with open(args.cert, "r", encoding="utf-8") as fh:
        cert = parse_certificate(fh.read())
    H = SubgroupHandle.from_words(basilica(), cert.subgroup)
    if verify_certificate(H, cert):
        print(f"certificate valid: projection at {cert.vertex or 'e'} is the full group")
        return EXIT_OK
    print("certificate INVALID")
    return EXIT_VERIFY


def cmd_check_paper(args) -> int:
    only = None
    if args.only:
        only = [name.strip() for name in args.only.split(",") if name.strip()]
    report = run_checks(only=only, seed=args.seed)
    sys.stdout.write(report.render())
    return EXIT_OK if report.all_passed() else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="basilica",
        description=(
            "Exact computation in wreath-recursion groups on the binary rooted "
            "tree, centered on the Basilica group.  Words use one lowercase "
            "letter per generator and the matching uppercase for its inverse "
            "(e.g. abA); `e` is the empty word; vertices are digit strings."
        ),
        epilog=(
            "exit codes: 0 ok, 1 failed checks, 2 parse error, "
            "3 precondition, 4 budget/search failure, 5 verification failure"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        return p

    p = add("eval", cmd_eval, "root permutation and sections of a word")
    p.add_argument("word")
    p.add_argument("--depth", type=int, default=0, help="also print the portrait")
    p.add_argument("--system", help="group-definition file (default: Basilica)")

    p = add("portrait", cmd_portrait, "portrait of a word to a given depth")
    p.add_argument("word")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--dot", action="store_true", help="emit a DOT graph")
    p.add_argument("--system")

    p = add("norm", cmd_norm, "word norm and canonical geodesic")
    p.add_argument("word")
    p.add_argument("--system")

    p = add("ball", cmd_ball, "enumerate ball classes as norm/word lines")
    p.add_argument("radius", type=int)
    p.add_argument("--system")

    p = add("orbit", cmd_orbit, "orbit of a vertex with transversal words")
    p.add_argument("--gens", required=True, help="comma-separated generator words")
    p.add_argument("--vertex", required=True)
    p.add_argument("--system")

    p = add("stab", cmd_stab, "stabilizer generators of a vertex")
    p.add_argument("--gens", required=True)
    p.add_argument("--vertex", required=True)
    p.add_argument("--cap", type=int, default=64)
    p.add_argument("--system")

    p = add("order", cmd_order, "order of the level-n quotient of a subgroup")
    p.add_argument("--gens", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--system")

    p = add("find-ab", cmd_find_ab, "descend a (1,1)-word to the projection ab")
    p.add_argument("word")
    p.add_argument("--budget", type=int, default=100_000)

    p = add("find-binva", cmd_find_binva, "descend a (1,-1)-word to b^-1 a")
    p.add_argument("word")
    p.add_argument("--budget", type=int, default=100_000)

    p = add("lift", cmd_lift, "rigid-stabilizer lift of a derived-subgroup word")
    p.add_argument("word")
    p.add_argument("vertex")

    p = add("abelianize", cmd_abelianize, "exponent sums (s,t)")
    p.add_argument("word")

    p = add("heis", cmd_heis, "Heisenberg normal form (p,q,r)")
    p.add_argument("word")

    p = add("bprime", cmd_bprime, "derived-subgroup coordinates (l,m,n)")
    p.add_argument("word")

    p = add("prodense", cmd_prodense, "search for a full-projection certificate")
    p.add_argument("--gens", required=True)
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--schreier-cap", type=int, default=64)
    p.add_argument("--max-depth", type=int, default=16)
    p.add_argument("--out", help="write the certificate to a file")

    p = add("verify", cmd_verify, "replay a projection certificate file")
    p.add_argument("--cert", required=True)

    p = add("check-paper", cmd_check_paper, "run the identity/lemma suites")
    p.add_argument(
        "--only",
        help=f"comma-separated suite subset from: {', '.join(sorted(SUITES))}",
    )
    p.add_argument("--seed", type=int, default=0)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except PreconditionError as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InputError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceededError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except FileNotFoundError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
