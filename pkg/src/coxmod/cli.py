"""Command line front end: one subcommand per pipeline stage.

Exit status: 0 when the result is verified (or the command has no status),
2 when it completed with status weak or the search was exhausted, and 1 for
refuted checks and errors.
"""

from __future__ import annotations

import argparse
import os
import shlex
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .blowup import (BlowupError, blowup_auto, blowup_cemds, blowup_fg,
                     blowup_point_certificate, lattice_ideal_point)
from .cemds import ES, VERIFIED, CEMDSError, compress, contract, modify, proj_model, stretch
from .formats import (SchemaError, cemds_from_dict, cemds_to_dict, center_from_dict,
                      config_from_dict, dumps, fan_from_dict, format_rational_value,
                      ideal_from_dict, ideal_to_dict, load, parse_polys)
from .groebner import GroebnerBudgetExceeded, step_budget
from .ideal import Ideal
from .lineargen import ConfigurationError, linear_blowup
from .polynomial import rational
from .textio import PolynomialSyntaxError
from .toric import FanError
from .verify import verify_cemds

EXIT_OK, EXIT_FAIL, EXIT_WEAK = 0, 1, 2


class UsageError(ValueError):
    pass


def _status_code(status: str) -> int:
    if status == VERIFIED:
        return EXIT_OK
    if status == ES:
        return EXIT_FAIL
    return EXIT_WEAK


def _params(args) -> Dict[str, object]:
    out = {}
    for item in args.specialize or []:
        if "=" not in item:
            raise UsageError(f"--specialize expects name=value, got {item!r}")
        name, val = item.split("=", 1)
        out[name.strip()] = rational(val.strip())
    return out


def _input(args):
    if not args.input:
        raise UsageError("--input is required")
    return cemds_from_dict(load(args.input), _params(args))


def _polys(args, arity: int):
    texts = list(args.poly or [])
    if args.polys:
        texts += list(load(args.polys).get("gens", []))
    if not texts:
        raise UsageError("give polynomials with --poly or --polys")
    return parse_polys(texts, arity, _params(args))


def _center(args, arity: int):
    if not args.center:
        raise UsageError("--center is required")
    return center_from_dict(load(args.center), arity, _params(args))


def _target(args):
    if not args.target:
        raise UsageError("--target is required")
    d = load(args.target)
    return fan_from_dict(d), d.get("ample")


def _vopts(args) -> dict:
    return {"tier": args.tier, "oracle": args.oracle, "timeout": args.timeout}


# ---------------------------------------------------------------- commands
def cmd_stretch(args):
    X = _input(args)
    Y = stretch(X, _polys(args, X.r), attested=args.attest)
    return cemds_to_dict(Y), _status_code(Y.status)


def cmd_compress(args):
    X = _input(args)
    Y = compress(X, args.fake, verify=args.verify, **_vopts(args))
    return cemds_to_dict(Y), _status_code(Y.status)


def cmd_contract(args):
    X = _input(args)
    fan, ample = _target(args)
    Y = contract(X, [list(r) for r in fan.P], fan, ample=ample, verify=args.verify,
                 **_vopts(args))
    return cemds_to_dict(Y), _status_code(Y.status)


def cmd_modify(args):
    X = _input(args)
    fan, ample = _target(args)
    Y = modify(X, [list(r) for r in fan.P], fan, verify=args.verify, ample=ample,
               **_vopts(args))
    return cemds_to_dict(Y), _status_code(Y.status)


def cmd_blowup(args):
    X = _input(args)
    c = _center(args, X.r)
    if "gens" not in c:
        raise UsageError("blowup needs a center with gens and mults")
    R = blowup_cemds(X, c["gens"], c["mults"], **_vopts(args))
    out = cemds_to_dict(R.cemds)
    out["vector"] = list(R.vector)
    return out, _status_code(R.cemds.status)


def cmd_blowup_auto(args):
    X = _input(args)
    c = _center(args, X.r)
    if "gens" not in c:
        raise UsageError("blowup-auto needs a center ideal given by gens")
    res = blowup_auto(X, Ideal(c["gens"], X.r), args.max_k, tier=args.tier, oracle=args.oracle)
    out = {"status": res.status, "k": res.k,
           "gens": [str(g) for g in res.gens], "mults": list(res.mults)}
    if res.result is not None:
        out["cemds"] = cemds_to_dict(res.result.cemds)
    return out, EXIT_OK if res.status == "verified" else EXIT_WEAK


def cmd_blowup_fg(args):
    X = _input(args)
    c = _center(args, X.r)
    if "gens" not in c:
        raise UsageError("blowup-fg needs a center with gens and mults")
    partial = None
    if args.partial:
        partial = list(ideal_from_dict(load(args.partial), _params(args)).generators)
    Y, cert = blowup_fg(X, c["gens"], c["mults"], partial=partial, **_vopts(args))
    out = {"cemds": cemds_to_dict(Y), "certificate": cert.to_dict()}
    if not cert.passed:
        return out, EXIT_FAIL
    return out, EXIT_WEAK if cert.normalization_pending else EXIT_OK


def cmd_linear_blowup(args):
    if not args.config:
        raise UsageError("--config is required")
    cfg = config_from_dict(load(args.config))
    R = linear_blowup(cfg, verify=args.verify, **_vopts(args))
    out = cemds_to_dict(R.cemds)
    out["hyperplanes"] = [{"normal": list(h.normal), "points": [p + 1 for p in h.points]}
                          for h in R.system.lines]
    out["near_pencil"] = R.system.is_near_pencil(len(cfg.points))
    out["design"] = R.system.is_n_design(cfg.n)
    return out, _status_code(R.cemds.status)


def cmd_lattice_ideal(args):
    X = _input(args)
    c = _center(args, X.r)
    if "point" not in c:
        raise UsageError("lattice-ideal needs a center file with a point")
    I = lattice_ideal_point(X.P, c["point"])
    out = {"ideal": ideal_to_dict(I), "point": [format_rational_value(x) for x in c["point"]]}
    if args.certificate:
        out["certificate"] = blowup_point_certificate(X, c["point"])
        return out, EXIT_OK if out["certificate"] else EXIT_FAIL
    return out, EXIT_OK


def cmd_proj_model(args):
    X = _input(args)
    I = proj_model(X, _polys(args, X.r))
    return {"ideal": ideal_to_dict(I)}, EXIT_OK


def cmd_verify(args):
    X = _input(args)
    rep = verify_cemds(X, **_vopts(args))
    code = {"verified": EXIT_OK, "weak": EXIT_WEAK, "failed": EXIT_FAIL}[rep.overall]
    return {"report": rep.to_dict()}, code


def cmd_runbook(args):
    """Run the stages listed in a runbook file, stopping at the first error."""
    if not args.runbook:
        raise UsageError("--runbook is required")
    book = load(args.runbook)
    stages = book.get("stages")
    if not isinstance(stages, list):
        raise SchemaError("runbook needs a list of stages")
    base = os.path.dirname(os.path.abspath(args.runbook))
    results = []
    worst = EXIT_OK
    for k, stage in enumerate(stages):
        argv = stage if isinstance(stage, list) else shlex.split(str(stage))
        if argv and argv[0] == "runbook":
            raise SchemaError("runbooks cannot nest")
        code = main(argv, cwd=base)
        results.append({"stage": k + 1, "argv": argv, "exit": code})
        if code == EXIT_FAIL:
            return {"stages": results}, EXIT_FAIL
        worst = max(worst, code)
    return {"stages": results}, worst


COMMANDS: Dict[str, Tuple[Callable, str]] = {
    "stretch": (cmd_stretch, "append variables for homogeneous K-prime polynomials"),
    "compress": (cmd_compress, "eliminate trailing fake relations"),
    "contract": (cmd_contract, "pass to a coarser fan by setting variables to 1"),
    "modify": (cmd_modify, "transfer relations to a refined fan"),
    "blowup": (cmd_blowup, "blow up along a center with multiplicities"),
    "blowup-auto": (cmd_blowup_auto, "search center generators round by round"),
    "blowup-fg": (cmd_blowup_fg, "finite generation certificate without full saturation"),
    "linear-blowup": (cmd_linear_blowup, "blow up projective space at a point configuration"),
    "lattice-ideal": (cmd_lattice_ideal, "ideal of the orbit closure through a point"),
    "proj-model": (cmd_proj_model, "image under a tuple of homogeneous polynomials"),
    "verify": (cmd_verify, "run the full verification battery"),
    "runbook": (cmd_runbook, "run a list of stages from a file"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="CEMDS file")
    common.add_argument("--output", help="write the result here instead of stdout")
    common.add_argument("--specialize", action="append", metavar="NAME=VALUE",
                        help="substitute a rational for a parameter in input polynomials")
    common.add_argument("--gb-step-budget", type=int, default=None, metavar="N",
                        help="abort Groebner computations after N reductions")
    common.add_argument("--oracle", default=None, metavar="CMD",
                        help="external primality oracle command (enables tier 2)")
    common.add_argument("--tier", type=int, default=None, choices=(0, 1, 2))
    common.add_argument("--timeout", type=float, default=30.0, help="oracle timeout in seconds")
    common.add_argument("--verify", action="store_true", help="run the verification checks")

    parser = argparse.ArgumentParser(prog="coxmod", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=text, description=text)
        if name in ("stretch", "proj-model"):
            p.add_argument("--poly", action="append", help="polynomial (repeatable)")
            p.add_argument("--polys", help="file with a list of polynomials under 'gens'")
            if name == "stretch":
                p.add_argument("--attest", action="store_true",
                               help="the caller vouches the polynomials are K-prime")
        if name == "compress":
            p.add_argument("--fake", type=int, required=True, help="number of fake relations")
        if name in ("contract", "modify"):
            p.add_argument("--target", help="file with rays P, max_cones and optional ample")
        if name in ("blowup", "blowup-auto", "blowup-fg", "lattice-ideal"):
            p.add_argument("--center", help="center file")
        if name == "blowup-auto":
            p.add_argument("--max-k", type=int, default=3, help="largest Rees degree searched")
        if name == "blowup-fg":
            p.add_argument("--partial", help="ideal file with a partially saturated ideal")
        if name == "lattice-ideal":
            p.add_argument("--certificate", action="store_true",
                           help="also compare with the orbit through the containing cone")
        if name == "linear-blowup":
            p.add_argument("--config", help="point configuration file")
        if name == "runbook":
            p.add_argument("--runbook", help="runbook file with a list of stages")
    return parser


def _resolve_paths(args, cwd: Optional[str]) -> None:
    if not cwd:
        return
    for key in ("input", "output", "polys", "target", "center", "partial", "config", "runbook"):
        val = getattr(args, key, None)
        if val and not os.path.isabs(val):
            setattr(args, key, os.path.join(cwd, val))


def main(argv: Optional[Sequence[str]] = None, cwd: Optional[str] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return EXIT_FAIL if exc.code else EXIT_OK
    _resolve_paths(args, cwd)
    if args.tier is None:
        args.tier = 2 if args.oracle else 0
    func = COMMANDS[args.command][0]
    try:
        with step_budget(args.gb_step_budget):
            result, code = func(args)
    except GroebnerBudgetExceeded as exc:
        print(f"error: Groebner step budget exhausted ({exc})", file=sys.stderr)
        return EXIT_FAIL
    except PolynomialSyntaxError as exc:
        print(f"error: cannot parse polynomial: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (SchemaError, UsageError) as exc:
        print(f"error: bad input: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (BlowupError, CEMDSError, ConfigurationError, FanError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = dumps(result)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
