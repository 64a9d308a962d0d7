"""Command-line front end.

Subcommands: ``gen`` (private states, extensions, approximate states),
``entropy`` (any conditional-information quantity over named groups),
``esq`` (bipartite/multipartite/channel squashed-entanglement estimators),
``verify`` (identity and inequality suites), ``bound`` (key-bound
arithmetic).  Exit codes: 0 success, 1 failed verification suite, 2 usage
or input error.  ``--seed`` defaults to the PRIVSQ_SEED environment
variable (then 0); given the seed, every command is bit-reproducible.
"""

from __future__ import annotations

import argparse
import os
import sys
from math import log2

from . import __version__
from .entropy import (
    Partition,
    cond_entropy,
    cond_mutual_info,
    dual_total_correlation,
    total_correlation,
    vn_entropy,
)
from .layout import LayoutError
from .private_states import (
    approx_private_state,
    privacy_deviation,
    private_state,
    private_state_extension,
    random_private_spec,
)
from .squashed import (
    OptimizerConfig,
    channel_squashed_upper,
    key_length_bound,
    key_rate_bound,
    squashed_multi_upper,
)
from .stateio import StateFileError, read_isometry, read_state, write_report, write_state
from .suites import SUITES
from .tensor import partial_trace


def _parse_groups(text: str) -> Partition:
    """Parse 'A=A1+A1p;B=A2+A2p' into a validated partition."""
    groups = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if "=" in part:
            name, labels = part.split("=", 1)
        else:
            name, labels = part, part
        labels = tuple(lbl for lbl in labels.split("+") if lbl)
        if not labels:
            raise ValueError(f"group {name!r} names no labels")
        groups.append((name.strip(), labels))
    if not groups:
        raise ValueError("no groups given")
    return Partition(groups)


def _parse_labels(text: str) -> tuple[str, ...]:
    return tuple(lbl for lbl in text.split("+") if lbl)


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x)
    except ValueError as exc:
        raise ValueError(f"bad dimension list {text!r}: {exc}") from exc


def _default_seed(value: int | None) -> int:
    if value is not None:
        return value
    return int(os.environ.get("PRIVSQ_SEED", "0"))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="privsq",
        description="Private states, entropies, and squashed-entanglement bounds.",
    )
    parser.add_argument("--version", action="version", version=f"privsq {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate states and write them to a state file")
    mode = gen.add_mutually_exclusive_group(required=True)
    mode.add_argument("--private", action="store_true", help="private state")
    mode.add_argument("--extension", action="store_true", help="private-state extension")
    mode.add_argument("--approx", action="store_true", help="noisy approximate private state")
    gen.add_argument("--k", type=int, default=2, help="key dimension (default 2)")
    gen.add_argument("--shield-dims", default="2,2", help="one shield dimension per party, e.g. 2,2")
    gen.add_argument("--sigma-rank", type=int, default=None, help="rank of the shield state")
    gen.add_argument("--ext-dim", type=int, default=2, help="extension dimension (with --extension)")
    gen.add_argument("--p", type=float, default=0.1, help="mixing noise (with --approx)")
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--out", required=True, help="output state file")
    gen.add_argument("--report", default=None, help="optional JSON report file")

    ent = sub.add_parser("entropy", help="evaluate an entropic quantity on a state file")
    ent.add_argument("--in", dest="infile", required=True)
    ent.add_argument(
        "--quantity", required=True, choices=("vn", "cond", "cmi", "total", "dual")
    )
    ent.add_argument("--groups", default=None, help="e.g. 'A=A1+A1p;B=A2+A2p'")
    ent.add_argument("--cond", default="", help="conditioning labels, e.g. 'E'")
    ent.add_argument("--seed", type=int, default=None)
    ent.add_argument("--out", default=None, help="optional JSON report file")

    esq = sub.add_parser("esq", help="variational squashed-entanglement upper bound")
    esq.add_argument("--in", dest="infile", required=True, help="state file (or isometry with --channel)")
    esq.add_argument("--channel", action="store_true", help="treat input as a channel dilation isometry")
    esq.add_argument("--groups", default=None, help="party groups, e.g. 'A=A1+A1p;B=A2+A2p'")
    esq.add_argument("--keep", default=None, help="channel output labels to keep (with --channel)")
    esq.add_argument("--flavor", choices=("total", "dual"), default="total")
    esq.add_argument("--d-env", type=int, default=None)
    esq.add_argument("--d-sink", type=int, default=None)
    esq.add_argument("--restarts", type=int, default=8)
    esq.add_argument("--iters", type=int, default=500)
    esq.add_argument("--ftol", type=float, default=1e-7)
    esq.add_argument("--seed", type=int, default=None)
    esq.add_argument("--out", default=None)

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("--suite", required=True, choices=sorted(SUITES))
    ver.add_argument("--instances", type=int, default=None)
    ver.add_argument("--tol", type=float, default=None, help="override the suite's residual tolerance")
    ver.add_argument("--restarts", type=int, default=1, help="optimizer restarts (thm1 suite)")
    ver.add_argument("--iters", type=int, default=12, help="optimizer iterations (thm1 suite)")
    ver.add_argument("--seed", type=int, default=None)
    ver.add_argument("--out", default=None)

    bnd = sub.add_parser("bound", help="key-bound arithmetic")
    kind = bnd.add_mutually_exclusive_group(required=True)
    kind.add_argument("--thm1", action="store_true", help="key-length bound for approximate private states")
    kind.add_argument("--rate", action="store_true", help="finite-round key-rate bound")
    kind.add_argument("--channel-rate", action="store_true", help="same arithmetic applied to a channel quantity")
    bnd.add_argument("--esq", type=float, required=True, help="squashed-entanglement value")
    bnd.add_argument("--eps", type=float, required=True)
    bnd.add_argument("--k", type=int, default=2, help="key dimension (thm1)")
    bnd.add_argument(
        "--mode", choices=("bipartite", "multi-total", "multi-dual"), default="bipartite"
    )
    bnd.add_argument("--m", type=int, default=None, help="party count (multi modes)")
    bnd.add_argument("--c1", type=int, default=4)
    bnd.add_argument("--c2", type=int, default=4)
    bnd.add_argument("--n", type=int, default=1, help="number of rounds (rate bounds)")
    bnd.add_argument("--seed", type=int, default=None)
    bnd.add_argument("--out", default=None)

    return parser


def _cmd_gen(args) -> int:
    seed = _default_seed(args.seed)
    shield_dims = _parse_dims(args.shield_dims)
    report: dict = {"command": "gen", "seed": seed, "k": args.k, "shield_dims": list(shield_dims)}
    if args.extension:
        spec = random_private_spec(args.k, shield_dims, seed, args.sigma_rank, ext_dim=args.ext_dim)
        state = private_state_extension(spec)
        report["mode"] = "extension"
        report["ext_dim"] = args.ext_dim
    else:
        spec = random_private_spec(args.k, shield_dims, seed, args.sigma_rank)
        if args.approx:
            state, eps = approx_private_state(spec, args.p, seed + 1)
            report["mode"] = "approx"
            report["noise"] = args.p
            report["eps"] = eps
            print(f"eps = {eps:.12g}")
        else:
            state = private_state(spec)
            report["mode"] = "private"
    if not args.extension:
        dev = privacy_deviation(
            private_state(spec) if args.approx else state,
            args.k,
            spec.key_labels,
            spec.shield_labels,
        )
        report["privacy_deviation_of_private_state"] = dev
        print(f"privacy deviation of the underlying private state = {dev:.3e}")
    write_state(args.out, state)
    report["out"] = args.out
    report["layout"] = [[lbl, d] for lbl, d in state.layout.systems]
    report["tolerances"] = {"privacy": 1e-9}
    print(f"wrote {args.out} ({state.dim} x {state.dim})")
    if args.report:
        write_report(args.report, report)
    return 0


def _cmd_entropy(args) -> int:
    seed = _default_seed(args.seed)
    rho = read_state(args.infile)
    cond = _parse_labels(args.cond) if args.cond else ()
    partition = _parse_groups(args.groups) if args.groups else None
    if partition is not None:
        partition.validate_against(rho.layout)
    label_groups = [labels for _, labels in partition.groups] if partition else []
    q = args.quantity
    if q == "vn":
        if len(label_groups) > 1:
            raise ValueError("vn takes at most one group (the marginal)")
        if label_groups:
            value = vn_entropy(partial_trace(rho, label_groups[0]))
        else:
            value = vn_entropy(rho)
    elif q == "cond":
        if len(label_groups) != 1:
            raise ValueError("cond needs exactly one group plus --cond")
        value = cond_entropy(rho, label_groups[0], cond)
    elif q == "cmi":
        if len(label_groups) != 2:
            raise ValueError("cmi needs exactly two groups")
        value = cond_mutual_info(rho, label_groups[0], label_groups[1], cond)
    elif q == "total":
        value = total_correlation(rho, label_groups, cond)
    else:
        value = dual_total_correlation(rho, label_groups, cond)
    print(f"{q} = {value:.12g} bits")
    if args.out:
        write_report(
            args.out,
            {
                "command": "entropy",
                "quantity": q,
                "in": args.infile,
                "groups": {name: list(labels) for name, labels in partition.groups} if partition else {},
                "cond": list(cond),
                "value": value,
                "seed": seed,
                "tolerances": {},
            },
        )
    return 0


def _cmd_esq(args) -> int:
    seed = _default_seed(args.seed)
    cfg = OptimizerConfig(
        restarts=args.restarts, max_iters=args.iters, tol=args.ftol, seed=seed
    )
    if args.channel:
        chan = read_isometry(args.infile)
        keep = _parse_labels(args.keep) if args.keep else None
        rep = channel_squashed_upper(
            chan, keep=keep, d_env=args.d_env, d_sink=args.d_sink, cfg=cfg
        )
        print(f"channel squashed upper (HEURISTIC) = {rep.value:.12g}")
    else:
        rho = read_state(args.infile)
        if not args.groups:
            raise ValueError("esq on a state needs --groups")
        partition = _parse_groups(args.groups)
        partition.validate_against(rho.layout)
        rep = squashed_multi_upper(
            rho,
            [labels for _, labels in partition.groups],
            flavor=args.flavor,
            d_env=args.d_env,
            d_sink=args.d_sink,
            cfg=cfg,
        )
        print(f"squashed upper bound ({args.flavor}) = {rep.value:.12g}")
    if not rep.optimizer_ok:
        print("warning: at least one restart did not report convergence", file=sys.stderr)
    if args.out:
        write_report(
            args.out,
            {
                "command": "esq",
                "in": args.infile,
                "channel": bool(args.channel),
                "groups": args.groups,
                "report": rep.to_dict(),
                "seed": seed,
                "tolerances": {"ftol": args.ftol},
            },
        )
    return 0


def _cmd_verify(args) -> int:
    seed = _default_seed(args.seed)
    name = args.suite
    kwargs: dict = {"seed": seed}
    if args.instances is not None and name != "thm1":
        kwargs["instances"] = args.instances
    if name == "thm1":
        kwargs["restarts"] = args.restarts
        kwargs["max_iters"] = args.iters
        if args.tol is not None:
            kwargs["tol"] = args.tol
    elif args.tol is not None:
        if name == "lemmas":
            kwargs["tol_bipartite"] = args.tol
            kwargs["tol_multi"] = 10 * args.tol
        else:
            kwargs["tol"] = args.tol
    result = SUITES[name](**kwargs)
    width = max(len(r.identity) for r in result.rows)
    for r in result.rows:
        status = "pass" if r.passed else "FAIL"
        print(
            f"{r.identity:<{width}}  instances={r.instances:<5d} "
            f"max_residual={r.worst:.3e}  tol={r.tol:.1e}  {status}"
        )
    print(f"suite {name}: {'pass' if result.passed else 'FAIL'}")
    if args.out:
        report = result.to_dict()
        report["command"] = "verify"
        report["tolerances"] = {r.identity: r.tol for r in result.rows}
        write_report(args.out, report)
    return 0 if result.passed else 1


def _cmd_bound(args) -> int:
    seed = _default_seed(args.seed)
    report: dict = {"command": "bound", "seed": seed, "esq": args.esq, "eps": args.eps, "tolerances": {}}
    if args.thm1:
        mode = args.mode.replace("-", "_")
        rhs = key_length_bound(
            args.esq, args.eps, args.k, mode=mode, parties=args.m, constants=(args.c1, args.c2)
        )
        target = log2(args.k)
        arrangement = (
            "log2(K) <= esq + f(sqrt(eps), K)"
            if mode == "bipartite"
            else "log2(K) <= (2/m) * (esq + f(sqrt(eps), K, m))"
        )
        print(f"rhs = {rhs:.12g}  (target: log2 K = {target:.12g}; {arrangement})")
        report.update(
            {
                "kind": "thm1",
                "mode": mode,
                "k": args.k,
                "m": args.m,
                "constants": [args.c1, args.c2],
                "rhs": rhs,
                "log2_k": target,
                "arrangement": arrangement,
            }
        )
    else:
        kind = "rate" if args.rate else "channel-rate"
        rhs = key_rate_bound(args.esq, args.eps, args.n)
        print(f"rhs = {rhs:.12g}  ({kind} bound, n = {args.n})")
        report.update({"kind": kind, "n": args.n, "rhs": rhs})
    if args.out:
        write_report(args.out, report)
    return 0


def run_cli(argv: list[str]) -> int:
    """Run one command; returns the exit code instead of raising SystemExit."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {
        "gen": _cmd_gen,
        "entropy": _cmd_entropy,
        "esq": _cmd_esq,
        "verify": _cmd_verify,
        "bound": _cmd_bound,
    }
    try:
        return handlers[args.command](args)
    except StateFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, LayoutError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
