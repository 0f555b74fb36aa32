"""Command-line workbench: ``python -m repcap <command> [flags]``."""

from __future__ import annotations

import argparse
import configparser
import io
import sys
from dataclasses import dataclass, fields
from pathlib import Path
from typing import List, Optional

from . import capacity, closure, constructions, spectral, table1
from .rules import RuleError, StringSystem, format_trace, make_system, parse_descriptor
from .words import WordError, infer_alphabet

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BUDGET = 3
EXIT_MISMATCH = 4


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    """Flag values for one run; the config-file keys are the flag names."""

    command: str = ""
    system: Optional[str] = None
    rule: Optional[str] = None
    seed: Optional[str] = None
    alphabet: Optional[int] = None
    k: Optional[int] = None
    kprime: Optional[int] = None
    at_least: bool = False
    max_len: Optional[int] = None
    max_states: int = 10**6
    witnesses: bool = False
    traces: bool = False
    out: Optional[str] = None
    target: Optional[str] = None
    symbol: Optional[str] = None
    procedure: Optional[str] = None
    delta: Optional[int] = None
    sigma: Optional[int] = None
    order: Optional[int] = None
    residues: Optional[str] = None

    @classmethod
    def parse(cls, text: str) -> "RunConfig":
        cp = configparser.ConfigParser()
        cp.read_string(text)
        if not cp.has_section("run"):
            raise UsageError("config needs a [run] section")
        known = {f.name: f for f in fields(cls)}
        values = {}
        for key, raw in cp.items("run"):
            name = key.replace("-", "_")
            if name not in known:
                raise UsageError(f"unknown config key {key!r}")
            default = known[name].default
            if isinstance(default, bool):
                values[name] = cp.getboolean("run", key)
            elif name in ("alphabet", "k", "kprime", "max_len", "max_states", "delta", "sigma", "order"):
                values[name] = int(raw)
            else:
                values[name] = raw
        return cls(**values)

    def format(self) -> str:
        cp = configparser.ConfigParser()
        cp["run"] = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if value is None or value == f.default and f.name != "command":
                continue
            cp["run"][f.name.replace("_", "-")] = str(value).lower() if isinstance(value, bool) else str(value)
        buf = io.StringIO()
        cp.write(buf)
        return buf.getvalue()

    def build_system(self) -> StringSystem:
        if self.system:
            return parse_descriptor(self.system)
        if not self.rule or self.seed is None or self.k is None:
            raise UsageError("need --system or all of --rule, --seed and --k")
        return make_system(self.rule, self.seed, self.k, self.kprime, self.at_least, self.alphabet)


def _add_system_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--system", help="descriptor, e.g. 'variant:rt; k=2; mode=fixed; seed=01; alphabet=2'")
    p.add_argument("--rule", choices=["end", "tan", "rt", "gap"])
    p.add_argument("--seed")
    p.add_argument("--alphabet", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--kprime", type=int)
    p.add_argument("--at-least", action="store_true", dest="at_least")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="repcap", description=__doc__)
    parser.add_argument("--config", help="INI file with a [run] section whose keys mirror the flags")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="exact per-length counts of a closure")
    _add_system_flags(p)
    p.add_argument("--max-len", type=int, dest="max_len")
    p.add_argument("--max-states", type=int, dest="max_states")
    p.add_argument("--witnesses", action="store_true")
    p.add_argument("--traces", action="store_true")
    p.add_argument("--out", help="TSV path; witnesses/traces go next to it")

    p = sub.add_parser("capacity", help="every applicable capacity report")
    _add_system_flags(p)
    p.add_argument("--out")

    sub.add_parser("table1", help="recompute the reversed-tandem reference table")

    p = sub.add_parser("automaton", help="DOT export and spectral radius")
    p.add_argument("--delta", type=int, help="nested-run automaton on delta symbols")
    p.add_argument("--sigma", type=int, help="De Bruijn alphabet size")
    p.add_argument("--order", type=int, help="residue modulus d (vertices are (d+1)-words)")
    p.add_argument("--residues", help="comma-separated allowed residues; prunes the De Bruijn graph")
    p.add_argument("--out")

    p = sub.add_parser("membership", help="bounded membership test with a derivation")
    _add_system_flags(p)
    p.add_argument("--target", required=False)
    p.add_argument("--max-states", type=int, dest="max_states")

    p = sub.add_parser("construct", help="run a proof construction and print its trace")
    p.add_argument("--procedure", choices=sorted(constructions.PROCEDURES))
    p.add_argument("--seed")
    p.add_argument("--alphabet", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--kprime", type=int)
    p.add_argument("--target")
    p.add_argument("--symbol")
    return parser


def _config_from_args(argv: List[str]) -> RunConfig:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(command=args.command)
    if args.config:
        cfg = RunConfig.parse(Path(args.config).read_text())
        if cfg.command and cfg.command != args.command:
            raise UsageError(f"config is for {cfg.command!r}, not {args.command!r}")
        cfg.command = args.command
    for name, value in vars(args).items():
        if name in ("config", "command") or value is None:
            continue
        if value is False and getattr(cfg, name, False):
            continue
        setattr(cfg, name, value)
    return cfg


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_enumerate(cfg: RunConfig) -> int:
    system = cfg.build_system()
    for w in system.warnings():
        print(f"warning: {w}", file=sys.stderr)
    max_len = cfg.max_len if cfg.max_len is not None else len(system.seed) + 8 * system.family.k
    budget = closure.Budget(max_len, cfg.max_states, cfg.witnesses or cfg.traces, cfg.traces)
    profile = closure.enumerate_closure(system, budget)
    _emit(closure.profile_tsv(profile), cfg.out)
    if cfg.out:
        if cfg.witnesses or cfg.traces:
            Path(cfg.out + ".witnesses").write_text(closure.witnesses_text(profile))
        if cfg.traces:
            Path(cfg.out + ".traces").write_text(closure.traces_text(profile))
    return EXIT_OK


def cmd_capacity(cfg: RunConfig) -> int:
    system = cfg.build_system()
    reports = capacity.reports_for(system)
    if not reports:
        raise UsageError("no capacity statement applies (seed shorter than the rule span?)")
    _emit("".join(r.record() + "\n" for r in reports), cfg.out)
    return EXIT_OK


def cmd_table1(cfg: RunConfig, enumerate_fn=table1.profile_for) -> int:
    rows = table1.reproduce(enumerate_fn)
    sys.stdout.write(table1.format_rows(rows))
    ok = all(r.ok for r in rows)
    print("table1: " + ("PASS" if ok else "FAIL"))
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_automaton(cfg: RunConfig) -> int:
    if cfg.delta is not None:
        g = spectral.lb1_automaton(cfg.delta)
        what = f"automaton=nested-runs delta={cfg.delta}"
    elif cfg.sigma is not None and cfg.order is not None:
        g = spectral.debruijn_graph(cfg.sigma, cfg.order)
        what = f"automaton=debruijn sigma={cfg.sigma} order={cfg.order + 1}"
        if cfg.residues is not None:
            allowed = [int(t) for t in cfg.residues.split(",") if t.strip()]
            g = spectral.prune_debruijn(g, allowed, cfg.order)
            what += f" residues={{{','.join(map(str, sorted(allowed)))}}}"
    else:
        raise UsageError("need --delta, or --sigma with --order")
    lam = spectral.spectral_radius(g.adjacency())
    if cfg.out:
        Path(cfg.out).write_text(spectral.to_dot(g))
    print(f"{what} vertices={g.n} edges={len(g.edges)} lambda={lam:.6f}")
    return EXIT_OK


def cmd_membership(cfg: RunConfig) -> int:
    system = cfg.build_system()
    if cfg.target is None:
        raise UsageError("--target is required")
    target = system.alphabet.parse(cfg.target)
    budget = closure.Budget(max(len(target), len(system.seed)), cfg.max_states, store_traces=True)
    res = closure.membership(system, target, budget)
    if res.found:
        print(f"member trace={format_trace(res.trace or [])}")
    else:
        print("not-member")
    return EXIT_OK


def cmd_construct(cfg: RunConfig) -> int:
    name = cfg.procedure
    if name is None or cfg.seed is None:
        raise UsageError("need --procedure and --seed")
    alpha = infer_alphabet(cfg.seed, cfg.alphabet)
    x = alpha.parse(cfg.seed)

    def need(value, flag):
        if value is None:
            raise UsageError(f"{name} needs {flag}")
        return value

    def symbol():
        w = alpha.parse(need(cfg.symbol, "--symbol"))
        if len(w) != 1:
            raise UsageError("--symbol must be a single symbol")
        return w[0]

    if name == "end-force-suffix":
        res = constructions.end_force_suffix(x, need(cfg.k, "--k"), alpha.parse(need(cfg.target, "--target")))
    elif name == "tandem-compact":
        res = constructions.tandem_compact_distinct(x)
    elif name == "tandem-seed-prep":
        res, pat = constructions.tandem_gek_seed_prep(x, need(cfg.k, "--k"))
        kind = "a^k b" if pat.run_first else "b a^k"
        print(f"pattern={kind} start={pat.start + 1} a={alpha.label(pat.run_symbol)} "
              f"b={alpha.label(pat.other_symbol)}")
    elif name == "rt-push":
        res = constructions.rt_push_to_end(x, need(cfg.k, "--k"), symbol())
    elif name == "rt-embed":
        res = constructions.rt_embed_as_suffix(x, need(cfg.k, "--k"), alpha.parse(need(cfg.target, "--target")))
    elif name == "gap-push":
        res = constructions.gap_push_to_end(x, need(cfg.k, "--k"), need(cfg.kprime, "--kprime"), symbol())
    else:
        outs = constructions.gap_distinct_round(x, need(cfg.k, "--k"), need(cfg.kprime, "--kprime"))
        for w in sorted(alpha.render(w) for w in outs):
            print(w)
        print(f"distinct={len(outs)}")
        return EXIT_OK
    print(f"output={alpha.render(res.output)}")
    print(f"steps={res.steps}")
    print(f"trace={format_trace(res.trace)}")
    return EXIT_OK


COMMANDS = {
    "enumerate": cmd_enumerate,
    "capacity": cmd_capacity,
    "table1": cmd_table1,
    "automaton": cmd_automaton,
    "membership": cmd_membership,
    "construct": cmd_construct,
}


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = _config_from_args(argv)
        return COMMANDS[cfg.command](cfg)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0)
    except closure.BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, RuleError, WordError, constructions.ConstructionError,
            capacity.CapacityError, spectral.SpectralError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
