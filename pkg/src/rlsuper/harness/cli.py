"""
Command-line interface.

    rlsuper verify --spec ex41.alg
    rlsuper analyze --example ex41 --alpha 1 --p 3
    rlsuper envelope --spec ex41.alg --power "[y,z]" 6
    rlsuper theorem --spec ex41.alg --audit --seed 1
    rlsuper example ex42
    rlsuper corpus --count 20 --seed 1 --profile toral_mix

Exit status: 0 when no check fails, 1 on FAIL, 2 on input errors.
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from pathlib import Path

from .. import analysis
from ..envelope import (
    augmentation_ideal,
    commutator_ideal,
    envelope,
    ideal_power_chain,
)
from ..errors import RLSuperError
from ..exactfield import FieldElement, parse_expression
from ..liesuper import center, compute_M, compute_p_nil_part, series, verify_axioms
from .corpus import PROFILES, generate_corpus
from .examples import EXAMPLE_IDS, build_example
from .report import RunReport, format_witness
from .specfile import format_spec, load_spec

__all__ = ["main", "build_parser"]


class InputError(Exception):
    pass


def _common(defaults):
    p = argparse.ArgumentParser(add_help=False)
    kw = {} if defaults else {"default": argparse.SUPPRESS}
    p.add_argument("--format", choices=("text", "machine"), **({"default": "text"} if defaults else kw))
    p.add_argument("--samples", type=int, **({"default": 20} if defaults else kw), help="sample count for sampled checks")
    p.add_argument("--seed", type=int, **({"default": 0} if defaults else kw), help="seed for sampled checks")
    return p


def _algebra_args(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--spec", help="algebra spec file (bundled files such as ex41.alg are found by name)")
    g.add_argument("--example", help=f"named example: {', '.join(EXAMPLE_IDS)}")
    p.add_argument("--p", type=int, default=3, help="characteristic for --example")
    p.add_argument("--alpha", help="alpha for ex41/ex42 (an integer selects the prime field)")
    p.add_argument("--beta", help="beta for ex42")


def build_parser():
    common = _common(False)
    parser = argparse.ArgumentParser(prog="rlsuper", description=__doc__.split("\n\n")[0].strip(), parents=[_common(True)])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check the restricted Lie superalgebra axioms")
    _algebra_args(p)

    p = sub.add_parser("analyze", parents=[common], help="series, centre, M and p-nil part")
    _algebra_args(p)

    p = sub.add_parser("envelope", parents=[common], help="restricted enveloping algebra computations")
    _algebra_args(p)
    p.add_argument("--power", nargs=2, action="append", metavar=("ELEMENT", "K"), default=[],
                   help="K-th power of a product of basis names and [u,v] commutators")
    p.add_argument("--associativity", type=int, default=20, metavar="N", help="seeded associativity triples")
    p.add_argument("--ideals", action="store_true", help="commutator and augmentation ideal chains")

    p = sub.add_parser("theorem", parents=[common], help="nilpotence conditions and their audit")
    _algebra_args(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--condition", choices=("2", "3"))
    g.add_argument("--petrogradsky", nargs=2, metavar=("A_FILE", "B_FILE"))
    g.add_argument("--audit", action="store_true")
    g.add_argument("--identity-t-max", type=int, metavar="T")

    p = sub.add_parser("example", parents=[common], help="print a named example in spec format")
    p.add_argument("id", help=", ".join(EXAMPLE_IDS))
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--alpha")
    p.add_argument("--beta")

    p = sub.add_parser("corpus", parents=[common], help="audit a seeded random corpus")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--profile", choices=PROFILES, default="toral_mix")
    return parser


def _scalar_arg(text):
    if text is None:
        return None
    text = text.strip()
    return int(text) if re.fullmatch(r"-?\d+", text) else text


def _load(args):
    try:
        if args.spec:
            path = Path(args.spec)
            L = load_spec(path)
            return L, path.name
        alpha, beta = _scalar_arg(args.alpha), _scalar_arg(args.beta)
        return build_example(args.example, p=args.p, alpha=alpha, beta=beta), args.example
    except OSError as exc:
        raise InputError(f"cannot read {args.spec}: {exc.strerror}") from None


def _vectors_file(L, path):
    """A subspace from a file of linear combinations; 'L', 'L_0', 'L_1' name the standard ones."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    names = {n: L[n] for n in L.names}
    vecs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "L":
            return L.full_space()
        if line == "L_0":
            vecs += [L.basis_element(i) for i in L.even_indices]
            continue
        if line == "L_1":
            vecs += [L.basis_element(i) for i in L.odd_indices]
            continue
        try:
            v = parse_expression(line, L.field, names)
        except RLSuperError as exc:
            raise InputError(f"{path}: line {lineno}: {exc}") from None
        if isinstance(v, FieldElement):
            if v:
                raise InputError(f"{path}: line {lineno}: expected a linear combination of basis names")
            continue
        vecs.append(v)
    return L.span(vecs) if vecs else L.zero_space()


def _u_element(env, text):
    """A product of basis names and [u,v] commutators, e.g. "[y,z]*x1"."""
    out = env.one()
    for factor in text.replace(" ", "").split("*"):
        m = re.fullmatch(r"\[(\w+),(\w+)\]", factor)
        try:
            if m:
                u = env.lie_commutator(env[m.group(1)], env[m.group(2)])
            else:
                u = env[factor]
        except (KeyError, ValueError):
            raise InputError(f"unknown element {factor!r}") from None
        out = env.multiply(out, u)
    return out


def _report_condition(rep, cond, L, prefix=""):
    for name, status, detail, witness in cond.checks:
        rep.add_check(prefix + name, status, detail, format_witness(witness, L))
    for k, v in cond.exponents.items():
        rep.values[f"exponent.{prefix}{k}"] = v
    if cond.notes:
        rep.values[f"note.{prefix.rstrip('.') or cond.condition}"] = "; ".join(cond.notes)


def cmd_verify(args, L, rep):
    ax = verify_axioms(L, samples=args.samples, seed=args.seed)
    for name, status, witness in ax.checks:
        rep.add_check(name, status, "", format_witness(witness, L))
    rep.status = "PASS" if ax.ok else "FAIL"


def cmd_analyze(args, L, rep):
    lcs = series(L, "lower_central")
    der = series(L, "derived")
    rep.values["dim"] = f"n={L.n} m={L.m}"
    rep.values["lower_central_dims"] = " ".join(str(t.dim) for t in lcs.terms)
    rep.values["nilpotency_class"] = lcs.length if lcs.is_nilpotent else "none"
    rep.values["derived_dims"] = " ".join(str(t.dim) for t in der.terms)
    rep.values["derived_length"] = der.length if der.is_solvable else "none"
    Z = center(L)
    rep.values["center"] = format_witness(Z, L)
    mode = "exhaustive" if L.field.is_finite else ("sampled", args.samples, args.seed)
    M = compute_M(L, mode)
    rep.values["M"] = format_witness(M.space, L)
    P = compute_p_nil_part(L, mode)
    rep.values["p_nil_part"] = format_witness(P.space, L)
    rep.complete = M.complete and P.complete


def cmd_envelope(args, L, rep):
    env = envelope(L)
    rep.values["pbw_dimension"] = env.pbw_dimension
    rng = L.rng(args.seed, "cli_associativity")
    monos = env.monomials
    bad = None
    for _ in range(args.associativity):
        a, b, c = (env.monomial(monos[rng.randrange(len(monos))]) for _ in range(3))
        if env.multiply(env.multiply(a, b), c) != env.multiply(a, env.multiply(b, c)):
            bad = (a, b, c)
            break
    rep.add_check("associativity", "FAIL" if bad else "PASS", f"{args.associativity} seeded triples", format_witness(bad))
    for text, k in args.power:
        try:
            k = int(k)
        except ValueError:
            raise InputError(f"power exponent must be an integer, got {k!r}") from None
        u = _u_element(env, text)
        rep.values[f"power.{text}^{k}"] = str(env.power(u, k))
    if args.ideals:
        for name, I in (("commutator_ideal", commutator_ideal(L)), ("augmentation_ideal", augmentation_ideal(L))):
            chain = ideal_power_chain(L, I)
            rep.values[f"{name}.dims"] = " ".join(map(str, chain.dims))
            rep.values[f"{name}.verdict"] = chain.verdict if chain.index is None else f"{chain.verdict} index {chain.index}"
    rep.status = "FAIL" if bad else "OK"


def cmd_theorem(args, L, rep):
    if args.condition:
        if args.condition == "2":
            cond = analysis.check_condition2(L, seed=args.seed, samples=args.samples)
        else:
            cond = analysis.check_condition3(L, seed=args.seed, samples=args.samples)
        _report_condition(rep, cond, L)
        rep.status = cond.verdict
        rep.complete = cond.complete
    elif args.petrogradsky:
        A = _vectors_file(L, args.petrogradsky[0])
        B = _vectors_file(L, args.petrogradsky[1])
        cond = analysis.check_petrogradsky(L, A, B, seed=args.seed, samples=args.samples)
        _report_condition(rep, cond, L)
        rep.status = cond.verdict
        rep.complete = cond.complete
    elif args.audit:
        audit = analysis.equivalence_audit(L, seed=args.seed, samples=args.samples)
        _report_condition(rep, audit.parts["condition2"], L, "condition2.")
        _report_condition(rep, audit.parts["condition3"], L, "condition3.")
        for note in audit.notes:
            rep.values["note.audit"] = note
        M = audit.parts["condition2"].parts["M"]
        rep.values["dim_L1_mod_M"] = L.m - M.dim
        rep.status = audit.verdict
        rep.complete = audit.complete
    else:
        t, complete = analysis.check_nonmatrix_identity(L, args.identity_t_max, ("sampled", args.samples, args.seed))
        rep.values["t"] = "none" if t is None else t
        rep.status = "PASS" if t is not None else "FAIL"
        rep.complete = complete


def cmd_corpus(args, rep, out):
    corpus = generate_corpus(args.count, seed=args.seed, profile=args.profile)
    tally = {}
    failed = False
    for L in corpus:
        audit = analysis.equivalence_audit(L, seed=args.seed, samples=args.samples)
        c2 = audit.parts["condition2"].verdict
        c3 = audit.parts["condition3"].verdict
        tally[audit.verdict] = tally.get(audit.verdict, 0) + 1
        failed |= audit.verdict == "FAIL"
        rep.add_check(L.label, audit.verdict, f"condition2 {c2}, condition3 {c3}")
    rep.values["instances"] = len(corpus)
    rep.values["rejected"] = f"{corpus.rejected}/{corpus.attempts}"
    for k in sorted(tally):
        rep.values[f"count.{k}"] = tally[k]
    rep.status = "FAIL" if failed else "PASS"


def run(argv=None, out=None):
    """Parse ``argv``, run the command, print the report; return the exit status."""
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    start = time.perf_counter()
    try:
        if args.command == "example":
            L = build_example(args.id, p=args.p, alpha=_scalar_arg(args.alpha), beta=_scalar_arg(args.beta))
            out.write(format_spec(L))
            return 0
        if args.command == "corpus":
            rep = RunReport(f"corpus:{args.profile}", "corpus", seed=args.seed)
            cmd_corpus(args, rep, out)
        else:
            L, instance = _load(args)
            rep = RunReport(instance, args.command, seed=args.seed)
            {"verify": cmd_verify, "analyze": cmd_analyze, "envelope": cmd_envelope, "theorem": cmd_theorem}[
                args.command
            ](args, L, rep)
    except (InputError, RLSuperError) as exc:
        print(f"rlsuper: error: {exc}", file=sys.stderr)
        return 2
    rep.wall_time = time.perf_counter() - start
    out.write(rep.render(args.format))
    return rep.exit_code


def main(argv=None):
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
