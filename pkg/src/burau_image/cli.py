"""Command-line front end.

Exit codes: 0 success, 1 verification or parse failure, 2 configuration
error, 3 search finished without a biminimal chain.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO

from . import __version__
from .burau import check_gamma, format_matrix, parse_matrix, phi, rho
from .chains import (
    SearchConfig,
    is_biminimal,
    mrf_inequality,
    search,
    verify_candidates,
)
from .laurent import LaurentPoly
from .quaternionic import (
    NotQuaternionicError,
    QElement,
    ReductionError,
    eval_word,
    parse_word,
    reduce_to_word,
)

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_EMPTY = 0, 1, 2, 3
SCHEMA = 1


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    max_denominator: int | None = None
    parallel: int | None = None
    output: str | None = None
    fmt: str = "text"
    emit_tree: str | None = None
    seed: int = 0
    quick: bool = False

    def __post_init__(self):
        if self.fmt not in ("json", "text"):
            raise ConfigError(f"unknown format {self.fmt!r}")
        if self.command == "search" and (self.max_denominator is None or self.max_denominator < 1):
            raise ConfigError("--max must be a positive integer")
        if self.parallel is not None and self.parallel < 1:
            raise ConfigError("--parallel must be a positive integer")


def _open_out(cfg: RunConfig) -> TextIO:
    return open(cfg.output, "w") if cfg.output else sys.stdout


def _emit(cfg: RunConfig, payload: dict, text: str) -> None:
    out = _open_out(cfg)
    try:
        if cfg.fmt == "json":
            json.dump(payload, out, indent=2)
            out.write("\n")
        else:
            out.write(text if text.endswith("\n") else text + "\n")
    finally:
        if out is not sys.stdout:
            out.close()


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


# -- commands -----------------------------------------------------------------------------

def cmd_search(cfg: RunConfig) -> int:
    sc = SearchConfig(parallel=cfg.parallel, progress=True)
    res = search(cfg.max_denominator, sc)
    _err(f"[search] M={res.M} roots={res.stats.roots} nodes={res.stats.inserted} "
         f"candidates={len(res.candidates)} time={res.seconds:.1f}s")
    if cfg.emit_tree:
        with open(cfg.emit_tree, "w") as fh:
            res.dump_tree(fh)
    t0 = time.perf_counter()
    ver = verify_candidates(res.candidates)
    _err(f"[verify] words={ver.candidates} biminimal={ver.raw_count} "
         f"orbits={ver.orbit_count()} orbits_sym={ver.orbit_count(True)} "
         f"time={time.perf_counter() - t0:.1f}s")
    payload = {
        "schema": SCHEMA,
        "max": res.M,
        "search_seconds": res.seconds,
        "nodes": res.stats.inserted,
        "candidates": len(res.candidates),
        "raw_count": ver.raw_count,
        "orbit_count": ver.orbit_count(),
        "orbit_count_symmetric": ver.orbit_count(True),
        "min_rd": ver.min_rd(),
        "chains": [c.to_json() for c in ver.certificates],
    }
    _emit(cfg, payload, "\n".join(str(w) for w in ver.words()))
    return EXIT_OK if ver.raw_count else EXIT_EMPTY


def _cert_text(c) -> str:
    if not c.biminimal and c.rejection is not None:
        return (f"{c.word}\n  rejected at position {c.rejection_position}: "
                f"{c.rejection.condition} ({c.rejection.detail})")
    verdict = "counterexample" if c.counterexample else ("trivial" if c.trivial else "not a counterexample")
    return (f"{c.word}\n  (k, l) = ({c.k}, {c.l}) rd = {c.rd} Mrf = {c.mrf} "
            f"integral = {c.integral['member']} m12_nonzero = {c.integral['m12_nonzero']} verdict = {verdict}")


def cmd_verify(cfg: RunConfig, word: str | None, chain_file: str | None) -> int:
    texts = [word] if word else [ln for ln in Path(chain_file).read_text().splitlines() if ln.strip()]
    certs = []
    for text in texts:
        try:
            w = parse_word(text)
        except (ValueError, json.JSONDecodeError) as exc:
            _err(f"parse error: {exc}")
            return EXIT_FAIL
        certs.append(is_biminimal(w, lift=True))
    payload = {"schema": SCHEMA, "chains": [c.to_json() for c in certs]}
    for c, d in zip(certs, payload["chains"]):
        d["mrf_inequality"] = mrf_inequality(c.word) if len(c.word) >= 2 else None
    _emit(cfg, payload, "\n".join(_cert_text(c) for c in certs))
    bad = [c for c in certs if not c.biminimal]
    if bad:
        c = bad[0]
        cond = c.rejection.condition if c.rejection is not None else f"(k, l) = ({c.k}, {c.l})"
        _err(f"verification failed: {cond}")
        return EXIT_FAIL
    return EXIT_OK


def cmd_reduce(cfg: RunConfig, g1: str | None, g2: str | None, matrix: str | None) -> int:
    try:
        if matrix:
            x = QElement.from_matrix(parse_matrix(matrix, 2))
        else:
            x = QElement(LaurentPoly.parse(g1), LaurentPoly.parse(g2 or "0"))
        w = reduce_to_word(x)
    except (ValueError, NotQuaternionicError, ReductionError) as exc:
        _err(f"not an element of Q: {exc}")
        return EXIT_FAIL
    if eval_word(w) != x:
        _err("internal error: reduced word does not evaluate back to the input")
        return EXIT_FAIL
    payload = {"schema": SCHEMA, "word": w.to_json(), "word_text": str(w), "element": x.to_json()}
    _emit(cfg, payload, str(w))
    return EXIT_OK


def cmd_certify_burau(cfg: RunConfig, matrix: str) -> int:
    try:
        a = parse_matrix(matrix, 3)
    except ValueError as exc:
        _err(f"parse error: {exc}")
        return EXIT_FAIL
    rep = check_gamma(a)
    payload = {"schema": SCHEMA, "membership": rep.to_json()}
    lines = [f"member: {rep.member}", f"det: {rep.det} (exponent {rep.det_exponent})"]
    if rep.failed():
        lines.append(f"failed conditions: {', '.join(rep.failed())}")
    if rep.member:
        p = phi(a)
        r = rho(a)
        payload["phi"] = format_matrix(p.matrix())
        payload["phi_integral"] = p.is_integral()
        payload["rho"] = [[int(v) for v in row] for row in r]
        lines += [f"phi: {payload['phi']}", f"rho: {payload['rho']}"]
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK if rep.member else EXIT_FAIL


def cmd_selftest(cfg: RunConfig) -> int:
    from .invariants import run_all

    _err(f"[selftest] seed={cfg.seed} quick={cfg.quick}")
    results = run_all(cfg.seed, cfg.quick)
    payload = {"schema": SCHEMA, "seed": cfg.seed, "quick": cfg.quick,
               "suites": [{"name": r.name, "samples": r.samples, "failures": r.failures} for r in results]}
    _emit(cfg, payload, "\n".join(r.line() for r in results))
    failed = [r for r in results if not r.ok]
    if failed:
        _err(f"failed property: {failed[0].name}")
        return EXIT_FAIL
    return EXIT_OK


# -- argument parsing ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="burau-image",
        description="Biminimal chain search and certificates for the image of the Burau representation of B3.",
        epilog="exit codes: 0 success, 1 verification or parse failure, 2 configuration error, "
               "3 search finished without a biminimal chain",
    )
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", default="text", choices=("json", "text"))
    common.add_argument("--output", default=None, help="write results here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("search", parents=[common], help="tree search for biminimal chains")
    s.add_argument("--max", dest="max_denominator", type=int, required=True)
    s.add_argument("--parallel", type=int, default=None)
    s.add_argument("--emit-tree", default=None)

    v = sub.add_parser("verify", parents=[common], help="re-verify a chain")
    g = v.add_mutually_exclusive_group(required=True)
    g.add_argument("--word")
    g.add_argument("--chain", help="file with one word per line")

    r = sub.add_parser("reduce", parents=[common], help="reduced word of an element of Q")
    r.add_argument("--g1")
    r.add_argument("--g2")
    r.add_argument("--matrix", help='"a, b; c, d"')

    c = sub.add_parser("certify-burau", parents=[common], help="membership report for a 3x3 matrix")
    c.add_argument("--matrix", required=True, help='"a, b, c; d, e, f; g, h, i"')

    t = sub.add_parser("selftest", parents=[common], help="seeded invariant suites")
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--quick", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = RunConfig(
            command=args.command,
            max_denominator=getattr(args, "max_denominator", None),
            parallel=getattr(args, "parallel", None),
            output=args.output,
            fmt=args.fmt,
            emit_tree=getattr(args, "emit_tree", None),
            seed=getattr(args, "seed", 0),
            quick=getattr(args, "quick", False),
        )
        if cfg.command == "reduce" and not (args.matrix or args.g1):
            raise ConfigError("reduce needs --matrix or --g1 (and optionally --g2)")
    except ConfigError as exc:
        _err(f"config error: {exc}")
        return EXIT_CONFIG
    if cfg.command == "search":
        return cmd_search(cfg)
    if cfg.command == "verify":
        return cmd_verify(cfg, args.word, args.chain)
    if cfg.command == "reduce":
        return cmd_reduce(cfg, args.g1, args.g2, args.matrix)
    if cfg.command == "certify-burau":
        return cmd_certify_burau(cfg, args.matrix)
    return cmd_selftest(cfg)


if __name__ == "__main__":
    sys.exit(main())
