"""Command-line front end: ``spm solve|generate|reduce|verify|bench``.

Exit codes: 0 success, 1 parse/parameter error, 2 precondition mismatch,
3 size guard, 4 verification failed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from . import fileio
from .errors import InputError, SpmError
from .graph import BipartiteInstance, Kind, Multigraph, Solution, validate_solution
from .matching import a_perfect_matching, matching_number
from .reductions import (
    NAMED_SOURCES,
    KcGadget,
    VcGadget,
    certify_kcover_identity,
    certify_vc_identity,
    extract_vertex_cover,
    gen_biregular,
    gen_random_instance,
    gen_tight_example,
    incidence_instance,
    kcover_gadget,
    vc_gadget,
)
from .solvers import (
    build_auxiliary_graph,
    classify,
    degree_gap_solution,
    solve_32_regular,
    solve_a2,
    solve_auto,
    solve_brute_2pm,
    solve_brute_2ppm,
    solve_continuous_greedy,
    solve_d2_regular_d4,
    solve_greedy,
    solve_via_matchable_goods,
)
from .solvers.brute import brute_2ppm_candidates
from .solvers.submodular import DEFAULT_CG_SAMPLES, DEFAULT_CG_STEPS

EXIT_VERIFY_FAILED = 4
ALGOS = ("auto", "32regular", "d2regular", "a2", "greedy", "cg", "gap", "brute")
CSV_HEADER = ["instance", "n_a", "n_b", "algo", "profit", "optimum", "ratio", "ms", "seed"]


def _default_seed() -> int:
    raw = os.environ.get("SPM_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"SPM_SEED must be an integer, got {raw!r}") from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def run_algo(
    inst: BipartiteInstance,
    kind: Kind,
    algo: str,
    seed: int = 0,
    cg_steps: int = DEFAULT_CG_STEPS,
    cg_samples: int = DEFAULT_CG_SAMPLES,
) -> Solution:
    if algo == "auto":
        return solve_auto(inst, kind)
    if algo == "32regular":
        return solve_32_regular(inst, kind)
    if algo == "d2regular":
        return solve_d2_regular_d4(inst, kind)
    if algo == "brute":
        return solve_brute_2ppm(inst) if kind is Kind.TWO_PPM else solve_brute_2pm(inst)
    solvers = {
        "a2": solve_a2,
        "greedy": solve_greedy,
        "gap": degree_gap_solution,
        "cg": lambda x: solve_continuous_greedy(x, cg_steps, cg_samples, seed),
    }
    if algo not in solvers:
        raise InputError(f"unknown algorithm {algo!r}")
    solver = solvers[algo]
    if kind is Kind.TWO_PPM:
        return solver(inst)
    return solve_via_matchable_goods(inst, solver)


# -- solve -------------------------------------------------------------------

def cmd_solve(args, out) -> int:
    inst = fileio.parse_instance(_read(args.path))
    kind = Kind(args.kind)
    seed = args.seed if args.seed is not None else _default_seed()
    sol = run_algo(inst, kind, args.algo, seed, args.cg_steps, args.cg_samples)
    problem = validate_solution(inst, sol)
    assert problem is None, problem
    text = fileio.serialize_solution(sol)
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    out.write(f"{sol.strategy} profit={sol.profit} guarantee={sol.guarantee}\n")
    return 0


# -- generate ----------------------------------------------------------------

def _load_source(name: str) -> Multigraph:
    if name in NAMED_SOURCES:
        return NAMED_SOURCES[name]()
    if name.startswith("tight"):
        copies = int(name[5:] or 1)
        return gen_tight_example(copies)
    return fileio.parse_multigraph(_read(name))


def _emit(text: str, out_path: Optional[str], out) -> None:
    if out_path:
        Path(out_path).write_text(text)
    else:
        out.write(text)


def _meta_path(instance_path: str) -> str:
    return instance_path + ".meta.json"


def cmd_generate(args, out) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    meta = None
    if args.type == "biregular":
        if args.na is None or args.d is None:
            raise InputError("biregular needs --na and --d")
        inst = gen_biregular(args.na, args.d, seed)
    elif args.type == "tight":
        inst = incidence_instance(gen_tight_example(args.copies), 3)
    elif args.type == "incidence":
        src = _load_source(args.src or "k4")
        d = args.d if args.d is not None else (src.degrees()[0] if src.n_v else 0)
        inst = incidence_instance(src, d)
    elif args.type == "random":
        if args.na is None or args.nb is None:
            raise InputError("random needs --na and --nb")
        inst = gen_random_instance(args.na, args.nb, args.p, seed)
    elif args.type == "vc-gadget":
        src = _load_source(args.src or "k4")
        inst = vc_gadget(src).instance
        meta = {"type": "vc-gadget", "n_v": src.n_v, "edges": [list(e) for e in src.edges]}
    elif args.type == "kcover-gadget":
        if not args.mkc:
            raise InputError("kcover-gadget needs --mkc FILE")
        n, sets, k = fileio.parse_max_k_cover(_read(args.mkc))
        g = kcover_gadget(n, sets, k, args.N)
        inst = g.instance
        meta = {"type": "kcover-gadget", "universe_n": n, "sets": [list(s) for s in sets],
                "k": k, "N": args.N}
    else:
        raise InputError(f"unknown generator type {args.type!r}")
    _emit(fileio.serialize_instance(inst), args.out, out)
    if meta is not None:
        if not args.out:
            raise InputError(f"{args.type} needs --out to write its metadata sidecar")
        Path(_meta_path(args.out)).write_text(json.dumps(meta, sort_keys=True) + "\n")
    return 0


def _load_meta(instance_path: str, meta_path: Optional[str], inst: BipartiteInstance):
    try:
        meta = json.loads(_read(meta_path or _meta_path(instance_path)))
    except json.JSONDecodeError as exc:
        raise InputError(f"bad metadata sidecar: {exc}") from None
    if meta.get("type") == "vc-gadget":
        g = vc_gadget(Multigraph.from_edges(meta["n_v"], meta["edges"]))
    elif meta.get("type") == "kcover-gadget":
        g = kcover_gadget(meta["universe_n"], meta["sets"], meta["k"], meta["N"])
    else:
        raise InputError("metadata sidecar has unknown type")
    if g.instance != inst:
        raise InputError("metadata sidecar does not match the instance")
    return g


# -- verify / reduce ---------------------------------------------------------

def cmd_verify(args, out) -> int:
    inst = fileio.parse_instance(_read(args.instance))
    if args.identity:
        g = _load_meta(args.instance, args.meta, inst)
        if args.identity == "vc":
            if not isinstance(g, VcGadget):
                raise InputError("instance is not a vertex-cover gadget")
            rep = certify_vc_identity(g)
            d = rep.detail
            line = f"{d['opt_2ppm']} + {d['opt_vc']} = {rep.rhs}"
        else:
            if not isinstance(g, KcGadget):
                raise InputError("instance is not a max k-cover gadget")
            rep = certify_kcover_identity(g)
            d = rep.detail
            line = f"{rep.lhs} = {d['N']}*{d['opt_mc']} + {d['m'] - d['k']}"
        out.write(f"{line} {'PASS' if rep.passed else 'FAIL'}\n")
        return 0 if rep.passed else EXIT_VERIFY_FAILED
    if not args.solution:
        raise InputError("verify needs --solution or --identity")
    sol = fileio.parse_solution(_read(args.solution))
    problem = validate_solution(inst, sol)
    if problem is not None:
        out.write(f"FAIL {problem}\n")
        return EXIT_VERIFY_FAILED
    out.write(f"PASS profit={sol.profit}\n")
    return 0


def cmd_reduce(args, out) -> int:
    inst = fileio.parse_instance(_read(args.instance))
    g = _load_meta(args.instance, args.meta, inst)
    if not isinstance(g, VcGadget):
        raise InputError("reduce needs a vertex-cover gadget")
    sol = fileio.parse_solution(_read(args.solution))
    cover, sol2 = extract_vertex_cover(g, sol)
    if args.out:
        Path(args.out).write_text(fileio.serialize_solution(sol2))
    covers = " ".join(str(v + 1) for v in cover)
    out.write(f"cover={covers} size={len(cover)} profit={sol2.profit} was={sol.profit}\n")
    return 0


# -- bench -------------------------------------------------------------------

@dataclass
class BenchRecord:
    instance_id: str
    n_a: int
    n_b: int
    algo: str
    profit: str
    optimum: Optional[int]
    ratio: Optional[float]
    wall_time_ms: float
    seed: int

    def row(self) -> List[str]:
        return [
            self.instance_id, str(self.n_a), str(self.n_b), self.algo, self.profit,
            "" if self.optimum is None else str(self.optimum),
            "" if self.ratio is None else f"{self.ratio:.4f}",
            f"{self.wall_time_ms:.3f}", str(self.seed),
        ]


def known_optimum(inst: BipartiteInstance, kind: Kind, brute_limit: int) -> Optional[int]:
    """Brute force when small enough, else a closed form the dispatcher verified."""
    perfect = a_perfect_matching(inst) is not None
    if kind is Kind.TWO_PPM:
        if not perfect:
            return None
        if brute_2ppm_candidates(inst) <= brute_limit:
            return solve_brute_2ppm(inst, brute_limit).profit
    elif inst.n_b <= 16:
        return solve_brute_2pm(inst).profit
    tag = classify(inst)
    if tag == "32regular" and kind is Kind.TWO_PPM:
        return inst.n_a // 2 + matching_number(build_auxiliary_graph(inst).graph)
    if tag == "d2regular":
        return inst.n_a
    return None


def cmd_bench(args, out) -> int:
    kind = Kind(args.kind)
    algos = [a for a in args.algos.split(",") if a]
    for a in algos:
        if a not in ALGOS:
            raise InputError(f"unknown algorithm {a!r}")
    seeds = [int(s) for s in args.seeds.split(",") if s] if args.seeds else [_default_seed()]
    directory = Path(args.dir)
    if not directory.is_dir():
        raise InputError(f"{args.dir} is not a directory")
    files = sorted(p for p in directory.iterdir() if p.suffix == ".spm")
    records: List[BenchRecord] = []
    for path in files:
        try:
            inst = fileio.parse_instance(path.read_text())
        except SpmError as exc:
            for algo in algos:
                for seed in seeds:
                    records.append(BenchRecord(path.name, 0, 0, algo, f"error:{type(exc).__name__}",
                                               None, None, 0.0, seed))
            continue
        try:
            opt = known_optimum(inst, kind, args.brute_limit)
        except SpmError:
            opt = None
        for algo in algos:
            for seed in seeds:
                start = time.perf_counter()
                try:
                    sol = run_algo(inst, kind, algo, seed, args.cg_steps, args.cg_samples)
                    profit = str(sol.profit)
                    ratio = sol.profit / opt if opt else (1.0 if opt == 0 else None)
                except SpmError as exc:
                    profit, ratio = f"error:{type(exc).__name__}", None
                ms = 0.0 if args.no_timing else (time.perf_counter() - start) * 1000
                records.append(BenchRecord(path.name, inst.n_a, inst.n_b, algo, profit, opt,
                                           ratio, ms, seed))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow(r.row())
    _emit(buf.getvalue(), args.out, out)
    return 0


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spm", description="Second Price (Perfect) Matching solver")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve an instance file")
    s.add_argument("path")
    s.add_argument("--kind", choices=[k.value for k in Kind], default="2ppm")
    s.add_argument("--algo", choices=ALGOS, default="auto")
    s.add_argument("--seed", type=int)
    s.add_argument("--cg-steps", type=int, default=DEFAULT_CG_STEPS)
    s.add_argument("--cg-samples", type=int, default=DEFAULT_CG_SAMPLES)
    s.add_argument("--out", help="write the solution here instead of stdout")
    s.set_defaults(func=cmd_solve)

    g = sub.add_parser("generate", help="write a generated instance")
    g.add_argument("--type", required=True,
                   choices=["biregular", "tight", "vc-gadget", "kcover-gadget", "incidence", "random"])
    g.add_argument("--na", type=int)
    g.add_argument("--nb", type=int)
    g.add_argument("--d", type=int)
    g.add_argument("--p", type=float, default=0.4)
    g.add_argument("--copies", type=int, default=1)
    g.add_argument("--src", help="k4, k33, prism, petersen, tight[N] or a 'p mg' file")
    g.add_argument("--mkc", help="Max k-Cover input file")
    g.add_argument("--N", type=int, default=1, help="universe copies in the k-cover gadget")
    g.add_argument("--seed", type=int)
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="check a solution or a gadget identity")
    v.add_argument("instance")
    v.add_argument("--solution")
    v.add_argument("--identity", choices=["vc", "kcover"])
    v.add_argument("--meta")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("reduce", help="turn a vertex-cover gadget solution into a vertex cover")
    r.add_argument("instance")
    r.add_argument("--solution", required=True)
    r.add_argument("--meta")
    r.add_argument("--out")
    r.set_defaults(func=cmd_reduce)

    b = sub.add_parser("bench", help="run algorithms over a directory of instances")
    b.add_argument("dir")
    b.add_argument("--algos", default="auto")
    b.add_argument("--seeds")
    b.add_argument("--kind", choices=[k.value for k in Kind], default="2ppm")
    b.add_argument("--brute-limit", type=int, default=200_000)
    b.add_argument("--cg-steps", type=int, default=DEFAULT_CG_STEPS)
    b.add_argument("--cg-samples", type=int, default=DEFAULT_CG_SAMPLES)
    b.add_argument("--no-timing", action="store_true", help="write 0 in the ms column")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.func(args, out)
    except SpmError as exc:
        err.write(f"error: {exc}\n")
        return exc.exit_code
    except (ValueError, KeyError, TypeError) as exc:
        err.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
