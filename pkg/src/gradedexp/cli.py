"""Command-line front end.

Exit status: 0 when the requested computation succeeds (and any checked
statement holds), 1 when a check fails or an instance is invalid, 2 for
usage errors.  With --out FILE a flat key=value summary is written for
machines; stdout stays human-readable.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from .algebras import DEFAULT_BASIS_CAP, AlgebraError
from .codim import growth_report
from .decomposition import build_block_isomorphism, k_simple_blocks
from .expconj import (check_main_inequality, check_monotonicity, exp_conj,
                      exp_conj_oracle, exp_conj_sub)
from .grassmann import check_envelope_e_component, envelope
from .groups import GroupError, Subgroup, all_subgroups, full_subgroup, trivial_subgroup
from .instances import (GeneratorProfile, InstanceError, generate_instance,
                        parse_instance)
from .trace import (block_parse, build_trace_monomial, final_inequality_report,
                    prefix_degree_data, visit_counts)


def _cap() -> int:
    raw = os.environ.get("GRADEDEXP_CAP")
    if raw is None:
        return DEFAULT_BASIS_CAP
    try:
        return int(raw)
    except ValueError:
        raise InstanceError(f"GRADEDEXP_CAP={raw!r} is not an integer")


def _load(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    spec = parse_instance(text)
    return spec, spec.build(_cap())


def _resolve_subgroup(built, token: str) -> Subgroup:
    if token in built.subgroups:
        return built.subgroups[token]
    if token == "full":
        return full_subgroup(built.group)
    if token == "trivial":
        return trivial_subgroup(built.group)
    try:
        elems = tuple(sorted(int(x) for x in token.split(",")))
        return Subgroup(built.group, elems)
    except (ValueError, GroupError) as e:
        raise InstanceError(f"cannot resolve subgroup {token!r}: {e}") from e


def _write_summary(path: str | None, pairs):
    if not path:
        return
    with open(path, "w", encoding="utf-8") as fh:
        for k, v in pairs:
            if isinstance(v, bool):
                v = "true" if v else "false"
            fh.write(f"{k}={v}\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_validate(args) -> int:
    spec, built = _load(args.instance)
    a = built.algebra
    print(f"instance {spec.digest()}: group {built.group.name} "
          f"(order {built.group.order}), {len(a.components)} component(s), "
          f"{len(a.edges)} edge(s), truncation {a.truncation}, dim {a.dim}")
    for name, sub in sorted(built.subgroups.items()):
        print(f"  subgroup {name}: order {sub.size} {list(sub.elements)}")
    _write_summary(args.out, [("command", "validate"),
                              ("instance_hash", spec.digest()),
                              ("group_order", built.group.order),
                              ("dim", a.dim), ("valid", True)])
    return 0


def cmd_expconj(args) -> int:
    t0 = time.time()
    spec, built = _load(args.instance)
    res = exp_conj(built.algebra)
    print(f"value = {res.value}")
    print(f"components (first visit order) = {list(res.components)}")
    print(f"walk = {list(res.vertex_walk)}")
    oracle = None
    if built.algebra.dim <= 200:
        oracle = exp_conj_oracle(built.algebra)
        print(f"oracle = {oracle} ({'agree' if oracle == res.value else 'MISMATCH'})")
    pairs = [("command", "expconj"), ("instance_hash", spec.digest()),
             ("value", res.value),
             ("elapsed_ms", int(1000 * (time.time() - t0)))]
    if oracle is not None:
        pairs.append(("oracle", oracle))
        pairs.append(("oracle_agrees", oracle == res.value))
    _write_summary(args.out, pairs)
    if oracle is not None and oracle != res.value:
        return 1
    return 0


def cmd_decompose(args) -> int:
    spec, built = _load(args.instance)
    K = _resolve_subgroup(built, args.subgroup)
    ok = True
    rows = []
    for t, comp in enumerate(built.algebra.components):
        dec = k_simple_blocks(comp, K)
        print(f"component {t}: |H|={comp.H.size} r={comp.r} dim={comp.dim}")
        for b in dec.blocks:
            if b.pi == 0:
                print(f"  double coset of {b.coset_rep}: pi=0 (unrepresented)")
                continue
            iso = build_block_isomorphism(comp, K, b)
            ok = ok and iso.ok
            status = "verified" if iso.ok else "FAILED"
            print(f"  class {list(b.members)}: pi={b.pi} "
                  f"intersection_order={b.intersection.size} dim={b.dim} "
                  f"isomorphism={status}")
            rows.append((t, b.pi, b.intersection.size, b.dim, iso.ok))
    _write_summary(args.out, [("command", "decompose"),
                              ("instance_hash", spec.digest()),
                              ("subgroup_order", K.size),
                              ("blocks", len(rows)),
                              ("all_verified", ok)])
    return 0 if ok else 1


def cmd_check(args) -> int:
    t0 = time.time()
    spec, built = _load(args.instance)
    K = _resolve_subgroup(built, args.subgroup)
    rep = check_main_inequality(built.algebra, K)
    print(rep.line())
    _write_summary(args.out, [("command", "check"),
                              ("instance_hash", spec.digest()),
                              ("subgroup_order", K.size),
                              ("lhs", rep.lhs), ("rhs", rep.rhs),
                              ("index", rep.index), ("holds", rep.holds),
                              ("elapsed_ms", int(1000 * (time.time() - t0)))])
    return 0 if rep.holds else 1


def cmd_trace(args) -> int:
    spec, built = _load(args.instance)
    K = _resolve_subgroup(built, args.subgroup)
    A = built.algebra
    res = exp_conj(A)
    L = build_trace_monomial(A, res)
    print(f"value = {res.value}, enriched monomial length = {len(L)}")
    if args.format == "full":
        for pos, f in enumerate(L.factors, start=1):
            kind = "radical" if A.is_radical(f) else "semisimple"
            print(f"  b_{pos}: {A.label(f)} ({kind}, degree {A.degrees[f]})")
    data = prefix_degree_data(L, K)
    print(f"prefix degrees seen = {sorted(data.degrees)}")
    print(f"coset representatives (degree: length) = "
          f"{{{', '.join(f'{g}: {data.lengths[g]}' for g in data.representatives())}}}")
    for g in data.representatives():
        parse = block_parse(L, K, g)
        stops = [(s.position, s.component, s.diagonal) for s in parse.stops]
        print(f"  parse at {g}: lead ends {parse.lead_end}, "
              f"{len(parse.block_ends)} block(s), tail from {parse.tail_start}")
        if args.format == "full":
            print(f"    stops (position, component, diagonal): {stops}")
    rep = visit_counts(L, K)
    for key in sorted(rep.counts):
        print(f"  visits{key} = {rep.counts[key]}  formula = {rep.formula[key]}")
    chains_ok = True
    for t in L.components:
        chain = final_inequality_report(A.components[t], K)
        chains_ok = chains_ok and chain.ok
        print(f"  component {t} inequality chain: pis={list(chain.pis)} m={chain.m} "
              f"index={chain.index} ok={chain.ok}")
    ok = rep.ok and chains_ok
    print("trace verification:", "ok" if ok else "FAILED")
    if not rep.ok:
        for p in rep.problems:
            print("  problem:", p)
    _write_summary(args.out, [("command", "trace"),
                              ("instance_hash", spec.digest()),
                              ("subgroup_order", K.size),
                              ("monomial_length", len(L)),
                              ("coset_reps", len(rep.omega0)),
                              ("visits_ok", rep.ok),
                              ("chains_ok", chains_ok)])
    return 0 if ok else 1


def cmd_envelope(args) -> int:
    spec, built = _load(args.instance)
    try:
        env = envelope(built.algebra, args.generators, cap=_cap())
        rep = check_envelope_e_component(built.algebra, args.generators)
    except (GroupError, AlgebraError) as e:
        print(f"envelope failed: {e}")
        return 1
    print(f"envelope over {env.algebra.group.name}: dim {env.algebra.dim} "
          f"(source dim {built.algebra.dim}, generators {args.generators})")
    print(f"identity-component comparison: basis_match={rep.basis_match} "
          f"constants_match={rep.constants_match} "
          f"(dims {rep.lhs_dim}/{rep.rhs_dim})")
    _write_summary(args.out, [("command", "envelope"),
                              ("instance_hash", spec.digest()),
                              ("generators", args.generators),
                              ("envelope_dim", env.algebra.dim),
                              ("e_component_ok", rep.ok)])
    return 0 if rep.ok else 1


def cmd_codim(args) -> int:
    spec, built = _load(args.instance)
    K = _resolve_subgroup(built, args.subgroup) if args.subgroup else None
    value = exp_conj(built.algebra).value
    rep = growth_report(built.algebra, args.n_max, K=K, graded=args.graded,
                        exp_conj_value=value, name=spec.digest())
    for line in rep.lines():
        print(line)
    _write_summary(args.out, [("command", "codim"),
                              ("instance_hash", spec.digest()),
                              ("n_max", args.n_max)]
                   + [(f"c_{n}", c) for n, c, _ in rep.rows]
                   + [(f"graded_c_{n}", c) for n, c, _ in rep.graded_rows])
    return 0


def _sweep_one(seed: int, mode: str, profile: GeneratorProfile):
    spec = generate_instance(seed, profile)
    built = spec.build(profile.basis_cap)
    A = built.algebra
    res = exp_conj(A)
    oracle_ok = True
    if A.dim <= 200:
        oracle_ok = exp_conj_oracle(A) == res.value
    if mode == "all":
        subgroups = all_subgroups(built.group)
    else:
        subgroups = list(built.subgroups.values())
    checks = []
    for K in subgroups:
        rep = check_main_inequality(A, K)
        checks.append(rep)
    holds = all(r.holds for r in checks)
    return (seed, spec.digest(), built.group.name, A.dim, len(checks),
            holds, oracle_ok)


def cmd_sweep(args) -> int:
    t0 = time.time()
    profile = GeneratorProfile(basis_cap=_cap())
    seeds = list(range(args.seed, args.seed + args.count))
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(
                lambda s: _sweep_one(s, args.subgroup_mode, profile), seeds))
    else:
        results = [_sweep_one(s, args.subgroup_mode, profile) for s in seeds]
    all_hold = True
    all_oracle = True
    for (seed, digest, gname, dim, nchecks, holds, oracle_ok) in results:
        all_hold = all_hold and holds
        all_oracle = all_oracle and oracle_ok
        print(f"seed={seed} instance={digest} group={gname} dim={dim} "
              f"checks={nchecks} holds={'true' if holds else 'false'} "
              f"oracle={'ok' if oracle_ok else 'MISMATCH'}")
    elapsed = int(1000 * (time.time() - t0))
    print(f"sweep: {len(results)} instance(s), "
          f"{'all hold' if all_hold else 'VIOLATIONS FOUND'}, "
          f"oracle {'consistent' if all_oracle else 'INCONSISTENT'}, {elapsed}ms")
    _write_summary(args.out, [("command", "sweep"), ("seed", args.seed),
                              ("count", args.count),
                              ("subgroup_mode", args.subgroup_mode),
                              ("all_hold", all_hold),
                              ("oracle_consistent", all_oracle),
                              ("elapsed_ms", elapsed)])
    return 0 if (all_hold and all_oracle) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gradedexp",
        description="exact computations with group-graded algebras")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--instance", required=True, help="instance file")
        sp.add_argument("--out", help="write a machine-readable summary here")

    sp = sub.add_parser("validate", help="parse and structurally verify an instance")
    common(sp)
    sp.set_defaults(fn=cmd_validate)

    sp = sub.add_parser("expconj", help="structural exponent with certificate")
    common(sp)
    sp.set_defaults(fn=cmd_expconj)

    sp = sub.add_parser("decompose", help="subgroup-component block decomposition")
    common(sp)
    sp.add_argument("--subgroup", required=True)
    sp.set_defaults(fn=cmd_decompose)

    sp = sub.add_parser("check", help="subgroup inequality on one instance")
    common(sp)
    sp.add_argument("--subgroup", required=True)
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("trace", help="enriched-monomial bookkeeping and counts")
    common(sp)
    sp.add_argument("--subgroup", required=True)
    sp.add_argument("--format", choices=("summary", "full"), default="summary")
    sp.set_defaults(fn=cmd_trace)

    sp = sub.add_parser("envelope", help="exterior envelope of a Z2 x G instance")
    common(sp)
    sp.add_argument("--generators", type=int, required=True)
    sp.set_defaults(fn=cmd_envelope)

    sp = sub.add_parser("codim", help="multilinear codimension table")
    common(sp)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--graded", action="store_true")
    sp.add_argument("--subgroup")
    sp.set_defaults(fn=cmd_codim)

    sp = sub.add_parser("sweep", help="randomized verification sweep")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--subgroup-mode", choices=("all", "named"), default="all")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out", help="write a machine-readable summary here")
    sp.set_defaults(fn=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    try:
        return args.fn(args)
    except (InstanceError, GroupError, AlgebraError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
