"""Command line entry point: ``gnbraid <subcommand> ...``.

Exit codes: 0 success / all pass, 1 negative verdict (unequal, not minimal,
failed relator, non-generic trace), 2 usage or parse error, 3 solver budget
exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import sys
import time
from dataclasses import dataclass
from typing import Callable, Sequence

from . import __version__
from .core import (
    BraidLetter,
    BraidWord,
    DomainError,
    Family,
    GroupWord,
    WordSyntaxError,
    parse_braid,
    parse_word,
)
from .dynamics import (
    DEFAULT_TOL,
    NotGeneric,
    braid_trajectory,
    collinear_events,
    read_trajectory,
    tangent_events,
    traced_generator_word,
    write_trajectory,
)
from .maps import (
    FConvention,
    Phi,
    f_braid,
    f_generator,
    g_word,
    h,
    minimality_certificate,
    phi,
)
from .relators import iter_double_prime_relators, iter_prime_relators
from .solver import (
    BudgetExceeded,
    SolverBudget,
    equal,
    format_trace,
    is_minimal,
    odd_generators,
    reduce,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class Result:
    code: int
    output: str


def _show(w) -> str:
    text = str(w)
    return text if text else "<empty>"


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip()]


def _budget(args) -> SolverBudget:
    return SolverBudget.from_env(args.budget_visited, args.budget_length)


def _odd_part(w: GroupWord) -> str:
    odd = sorted(odd_generators(w))
    return " ".join(f"{g}=1" for g in odd) if odd else "<zero>"


# --- subcommands -------------------------------------------------------------


def cmd_invariant(args, text: str) -> Result:
    braid = parse_braid(text, args.n)
    source = FConvention(args.source)
    f_word = f_braid(braid, source)
    phi_word = phi(f_word)
    reduced = reduce(phi_word, _budget(args)).word
    out = [
        f"braid: {_show(braid)}",
        f"source: {source.value}",
        f"f: {_show(f_word)}",
        f"Phi: {_show(phi_word)}",
        f"reduced: {_show(reduced)}",
        f"parity: {_odd_part(phi_word)}",
        f"verdict: {'identity' if len(reduced) == 0 else 'nontrivial'}",
    ]
    return Result(EXIT_OK, "\n".join(out))


def cmd_reduce(args, text: str) -> Result:
    out = []
    for line in _lines(text):
        w = parse_word(line, args.n, Family.GN2)
        r = reduce(w, _budget(args))
        out.append(str(r.word))
        if args.trace and r.trace:
            out.append(format_trace(r.trace))
    return Result(EXIT_OK, "\n".join(out))


def cmd_equal(args, text: str) -> Result:
    n = args.n
    if n is None:
        n = max(parse_word(t, None, Family.GN2).n for t in (args.left, args.right))
    w1 = parse_word(args.left, n, Family.GN2)
    w2 = parse_word(args.right, n, Family.GN2)
    verdict = equal(w1, w2, _budget(args))
    return Result(EXIT_OK if verdict else EXIT_NEGATIVE, "true" if verdict else "false")


def cmd_minimal(args, text: str) -> Result:
    w = parse_word(text.strip(), args.n) if text.strip() else GroupWord(Family.GN2, args.n or 3)
    if w.family is Family.PRIME:
        cert = minimality_certificate(w, _budget(args))
        if cert.budget_exceeded:
            return Result(EXIT_BUDGET, str(cert))
        return Result(EXIT_OK if cert.minimal else EXIT_NEGATIVE, str(cert))
    if w.family is not Family.GN2:
        raise DomainError("minimal takes a gn2 word, or a prime word for the sufficient condition")
    verdict = is_minimal(w, _budget(args))
    return Result(EXIT_OK if verdict else EXIT_NEGATIVE, "true" if verdict else "false")


def _map_lines(func, family: Family) -> Callable:
    def run(args, text: str) -> Result:
        return Result(EXIT_OK, "\n".join(str(func(parse_word(ln, args.n, family))) for ln in _lines(text)))

    return run


def cmd_phi_braid(args, text: str) -> Result:
    source = FConvention(args.source)
    out = [str(Phi(parse_braid(ln, args.n), source)) for ln in _lines(text)]
    return Result(EXIT_OK, "\n".join(out))


def cmd_g_apply(args, text: str) -> Result:
    w = parse_word(text.strip(), args.n, Family.PRIME) if text.strip() else GroupWord(Family.PRIME, args.n or 3)
    auto = g_word(w)
    if args.to is not None:
        target = parse_word(args.to, w.n, Family.Z2FREE)
        return Result(EXIT_OK, str(auto.apply(target)))
    return Result(EXIT_OK, auto.format())


def _parse_pair(spec: str) -> BraidLetter:
    body, _, exp = spec.partition("^")
    try:
        i, j = (int(x) for x in body.split(","))
        return BraidLetter(i, j, -1 if exp == "-1" else 1)
    except ValueError as exc:
        raise DomainError(f"bad generator spec {spec!r}, expected i,j or i,j^-1: {exc}") from None


def cmd_f_gen(args, text: str) -> Result:
    n = args.n or 3
    b = _parse_pair(args.gen)
    conv = FConvention(args.convention)
    if conv is FConvention.GEOMETRIC:
        w = traced_generator_word(n, b.i, b.j)
    else:
        w = f_generator(b.i, b.j, n, conv)
    if b.exponent == -1:
        w = w.inverse()
    return Result(EXIT_OK, str(w))


def select_sample(relators: list, size: int | None) -> list:
    """Deterministic sample keeping every relator kind represented, in list order."""
    if size is None or size >= len(relators):
        return list(relators)
    kinds: dict[str, list[int]] = {}
    for idx, r in enumerate(relators):
        kinds.setdefault(r.kind, []).append(idx)
    quota = {k: max(1, (size * len(v)) // len(relators)) for k, v in kinds.items()}
    # hand leftover slots to the largest kinds first
    for k in sorted(kinds, key=lambda k: -len(kinds[k])):
        while sum(quota.values()) < size and quota[k] < len(kinds[k]):
            quota[k] += 1
    picked = []
    for k, idxs in kinds.items():
        q = quota[k]
        step = len(idxs) / q
        picked += [idxs[int(m * step)] for m in range(q)]
    return [relators[i] for i in sorted(picked)]


def check_relators(target: str, n: int, budget: SolverBudget, sample: int | None = None):
    """Yield (relator, status) with status in {"PASS", "FAIL", "BUDGET"}."""
    if target == "h":
        rels = list(iter_double_prime_relators(n))
    else:
        rels = list(iter_prime_relators(n))
    for rel in select_sample(rels, sample):
        try:
            if target == "g":
                ok = g_word(rel.word).is_identity()
            else:
                image = phi(rel.word) if target == "phi" else h(rel.word)
                ok = len(reduce(image, budget).word) == 0
            yield rel, "PASS" if ok else "FAIL"
        except BudgetExceeded:
            yield rel, "BUDGET"


def cmd_check_relators(args, text: str) -> Result:
    n = args.n or 4
    if args.sample is None and n > 5:
        raise DomainError("exhaustive checks are limited to n <= 5; pass --sample")
    counts = {"PASS": 0, "FAIL": 0, "BUDGET": 0}
    out = []
    for rel, status in check_relators(args.target, n, _budget(args), args.sample):
        counts[status] += 1
        out.append(f"{status:6} {rel.kind:10} {rel.word}")
    total = sum(counts.values())
    out.append(
        f"target={args.target} n={n} relators={total} "
        f"pass={counts['PASS']} fail={counts['FAIL']} indeterminate={counts['BUDGET']}"
    )
    if counts["FAIL"]:
        code = EXIT_NEGATIVE
    elif counts["BUDGET"]:
        code = EXIT_BUDGET
    else:
        code = EXIT_OK
    return Result(code, "\n".join(out))


def cmd_trace(args, text: str) -> Result:
    traj = read_trajectory(io.StringIO(text))
    tracer = collinear_events if args.mode == "collinear" else tangent_events
    w, report = tracer(traj, args.tol)
    out = [f"mode: {args.mode}", f"word: {_show(w)}", report.format()]
    return Result(EXIT_OK if report.ok else EXIT_NEGATIVE, "\n".join(out))


def cmd_gen_trajectory(args, text: str) -> Result:
    n = args.n or 3
    letters = []
    if args.gen:
        first = _parse_pair(args.gen)
        letters.append(first.inverse() if args.inverse else first)
    letters += [_parse_pair(s) for s in args.concat or []]
    if args.braid:
        letters += list(parse_braid(args.braid, n))
    braid = BraidWord(n, tuple(letters))
    traj = braid_trajectory(braid, scale=args.scale, samples_per_stage=args.samples_per_stage)
    buf = io.StringIO()
    write_trajectory(traj, buf)
    return Result(EXIT_OK, buf.getvalue().rstrip("\n"))


@dataclass
class Discrepancy:
    n: int
    i: int
    j: int
    words: dict
    images: dict
    reduced: dict
    equal: dict

    @property
    def mismatch(self) -> bool:
        return any(not self.equal[(c, "geometric")] for c in ("statement", "proof"))

    def format(self) -> str:
        out = [f"discrepancy n={self.n} b[{self.i},{self.j}]"]
        for c, w in self.words.items():
            out.append(f"f[{c}]: {_show(w)}")
        for c, w in self.images.items():
            out.append(f"Phi[{c}]: {_show(w)}")
            out.append(f"Phi[{c}] reduced: {_show(self.reduced[c])}")
            out.append(f"Phi[{c}] parity: {_odd_part(w)}")
            out.append(f"Phi[{c}] trivial: {str(len(self.reduced[c]) == 0).lower()}")
        for (a, b), v in self.equal.items():
            out.append(f"equal[{a},{b}]: {str(v).lower()}")
        out.append(
            "mismatch: " + ("yes, algebraic images differ from the traced dynamics" if self.mismatch else "no")
        )
        return "\n".join(out)


def discrepancy(n: int, i: int, j: int, budget: SolverBudget | None = None) -> Discrepancy:
    conventions = ("statement", "proof", "geometric")
    words = {
        "statement": f_generator(i, j, n, "statement"),
        "proof": f_generator(i, j, n, "proof"),
        "geometric": traced_generator_word(n, i, j),
    }
    images = {c: phi(words[c]) for c in conventions}
    reduced = {c: reduce(images[c], budget).word for c in conventions}
    eq = {}
    for a_idx, a in enumerate(conventions):
        for b in conventions[a_idx + 1 :]:
            eq[(a, b)] = equal(images[a], images[b], budget)
    return Discrepancy(n, i, j, words, images, reduced, eq)


def cmd_discrepancy(args, text: str) -> Result:
    n = args.n or 3
    report = discrepancy(n, args.i, args.j, _budget(args))
    return Result(EXIT_OK, report.format())


# --- argument parsing ----------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--n", type=int, default=None, help="strand count")
    p.add_argument("--budget-visited", type=int, default=None, help="solver cap on visited words")
    p.add_argument("--budget-length", type=int, default=None, help="solver cap on word length")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="event time tolerance")
    p.add_argument("--manifest", default=None, metavar="PATH", help="write a JSON run manifest")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="gnbraid", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"gnbraid {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, reads_input=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if reads_input:
            sp.add_argument("words", nargs="*", help="word text; read from stdin when omitted")
        sp.set_defaults(func=func)
        return sp

    sp = add("invariant", cmd_invariant, "f and Phi images of a pure braid word")
    sp.add_argument("--source", choices=[c.value for c in FConvention], default="geometric")
    sp = add("reduce", cmd_reduce, "minimal representatives of gn2 words, one per line")
    sp.add_argument("--trace", action="store_true", help="print the move trace after each word")
    sp = add("equal", cmd_equal, "decide equality of two gn2 words", reads_input=False)
    sp.add_argument("left")
    sp.add_argument("right")
    add("minimal", cmd_minimal, "minimality of a gn2 word (or sufficient condition for a prime word)")
    add("phi", _map_lines(phi, Family.PRIME), "apply phi to prime words, one per line")
    add("h", _map_lines(h, Family.DOUBLE_PRIME), "apply h to double-prime words, one per line")
    sp = add("phi-braid", cmd_phi_braid, "Phi images of braid words, one per line")
    sp.add_argument("--source", choices=[c.value for c in FConvention], default="geometric")
    sp = add("g-apply", cmd_g_apply, "the automorphism g(w) of the free product of Z_2's")
    sp.add_argument("--to", default=None, help="z2free word to apply the automorphism to")
    sp = add("f-gen", cmd_f_gen, "image of a generator b_ij under f", reads_input=False)
    sp.add_argument("--gen", required=True, help="i,j or i,j^-1")
    sp.add_argument("--convention", choices=[c.value for c in FConvention], default="geometric")
    sp = add("check-relators", cmd_check_relators, "verify relator images are trivial", reads_input=False)
    sp.add_argument("target", choices=["phi", "h", "g"])
    sp.add_argument("--sample", type=int, default=None, help="deterministic sample size")
    sp = add("trace", cmd_trace, "trace events of a trajectory file", reads_input=False)
    sp.add_argument("--mode", choices=["collinear", "tangent"], default="collinear")
    sp.add_argument("--input", required=True, help="trajectory file, or - for stdin")
    sp = add("gen-trajectory", cmd_gen_trajectory, "emit standard generator trajectories", reads_input=False)
    sp.add_argument("--gen", default=None, help="first generator i,j")
    sp.add_argument("--inverse", action="store_true", help="invert the first generator")
    sp.add_argument("--concat", nargs="*", default=None, help="further generators i,j or i,j^-1")
    sp.add_argument("--braid", default=None, help="further generators as braid word text")
    sp.add_argument("--scale", type=float, default=1.0, help="basepoint radius (0.9 for tangent mode)")
    sp.add_argument("--samples-per-stage", type=int, default=512)
    sp = add("discrepancy", cmd_discrepancy, "compare algebraic and traced images of b_ij", reads_input=False)
    sp.add_argument("i", type=int)
    sp.add_argument("j", type=int)
    return parser


def _read_input(args) -> str:
    if getattr(args, "command", None) == "trace":
        if args.input == "-":
            return sys.stdin.read()
        with open(args.input) as fp:
            return fp.read()
    if hasattr(args, "words"):
        if args.words:
            return " ".join(args.words)
        if sys.stdin is None or sys.stdin.isatty():
            return ""
        return sys.stdin.read()
    return ""


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def run(argv: Sequence[str] | None = None) -> Result:
    """Parse ``argv`` and run the subcommand, returning the exit code and output text."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return Result(int(exc.code or 0), "")
    started = time.perf_counter()
    try:
        text = _read_input(args)
        result = args.func(args, text)
    except (WordSyntaxError, DomainError, OSError) as exc:
        return Result(EXIT_USAGE, f"error: {exc}")
    except BudgetExceeded as exc:
        return Result(EXIT_BUDGET, f"budget exhausted: {exc.reason}\nbest: {_show(exc.best)} (uncertified)")
    except NotGeneric as exc:
        return Result(EXIT_NEGATIVE, f"error: {exc}")
    if args.manifest:
        params = {k: v for k, v in vars(args).items() if k not in ("func", "manifest")}
        manifest = {
            "subcommand": args.command,
            "argv": list(argv) if argv is not None else sys.argv[1:],
            "parameters": params,
            "input_sha256": _digest(text),
            "output_sha256": _digest(result.output),
            "exit_code": result.code,
            "version": __version__,
            "duration_seconds": time.perf_counter() - started,
        }
        with open(args.manifest, "w") as fp:
            json.dump(manifest, fp, indent=2, sort_keys=True, default=str)
            fp.write("\n")
    return result


def main(argv: Sequence[str] | None = None) -> int:
    result = run(argv)
    if result.output:
        stream = sys.stderr if result.code == EXIT_USAGE else sys.stdout
        print(result.output, file=stream)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
