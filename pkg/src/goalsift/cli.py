"""Command-line entry points: catalog generation, batch experiments,
interactive dialogs, and the HTTP service."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .belief import Observation, exact_update, init_state, soft_update, state_entropy
from .bench import (
    BenchReport,
    ExperimentConfig,
    StrategyArm,
    compare_pairwise,
    emit_report,
    format_table,
    run_experiment,
)
from .catalog import (
    Catalog,
    SyntheticSpec,
    generate_synthetic,
    load_catalog,
    parse_prior_spec,
    set_prior,
    write_catalog,
)
from .dialog import (
    SessionConfig,
    TerminalStatus,
    check_termination,
    question_text,
    returned_goals,
)
from .presets import default_catalog, default_synthetic_spec
from .strategy import parse_strategy
from .usersim import NoiseSpec


def read_keyvalue(path: str | Path) -> dict[str, str]:
    """Parse a `key = value` config file; # starts a comment."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value, got {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _bool(text: str) -> bool:
    if text.lower() in ("1", "true", "yes", "on"):
        return True
    if text.lower() in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def synthetic_spec_from_config(cfg: dict[str, str]) -> SyntheticSpec:
    cards = tuple(int(x) for x in cfg["cardinalities"].split(","))
    missing = (
        tuple(float(x) for x in cfg["missing_rates"].split(","))
        if "missing_rates" in cfg
        else tuple(0.0 for _ in cards)
    )
    skew_text = cfg.get("skew", "1.0")
    skew: float | tuple[float, ...]
    if "," in skew_text:
        skew = tuple(float(x) for x in skew_text.split(","))
    else:
        skew = float(skew_text)
    names = (
        tuple(n.strip() for n in cfg["attribute_names"].split(","))
        if "attribute_names" in cfg
        else None
    )
    return SyntheticSpec(
        num_goals=int(cfg.get("num_goals", "1000")),
        cardinalities=cards,
        missing_rates=missing,
        skew=skew,
        attribute_names=names,
    )


def _load_bench_catalog(cfg: dict[str, str]) -> Catalog:
    source = cfg.get("catalog", "default")
    if source == "default":
        catalog = default_catalog()
        if "num_goals" in cfg:
            spec = default_synthetic_spec(int(cfg["num_goals"]))
            catalog = generate_synthetic(spec, seed=int(cfg.get("catalog_seed", "7")))
    else:
        catalog = load_catalog(source)
    if "prior" in cfg:
        catalog = set_prior(catalog, parse_prior_spec(cfg["prior"]))
    return catalog


def _noise_from_config(cfg: dict[str, str], prefix: str = "") -> NoiseSpec:
    base = NoiseSpec()
    kwargs = {}
    for name in ("error_rate", "inclusion_rate", "concentration",
                 "sum_alpha", "sum_beta", "conf_floor"):
        if prefix + name in cfg:
            kwargs[name] = float(cfg[prefix + name])
    if prefix + "top_n" in cfg:
        kwargs["top_n"] = int(cfg[prefix + "top_n"])
    return NoiseSpec(**{**vars(base), **kwargs}) if kwargs else base


def experiment_from_config(cfg: dict[str, str]) -> tuple[Catalog, ExperimentConfig, str]:
    """Build (catalog, experiment, report-format) from key-value text."""
    catalog = _load_bench_catalog(cfg)
    noise = _noise_from_config(cfg)
    arms = []
    for token in cfg.get("strategies", "emdm,dsdm,sequential,random:1").split(","):
        token = token.strip()
        label = token
        arm_noise = None
        if "@top1" in token:
            token = token.replace("@top1", "")
            arm_noise = NoiseSpec(**{**vars(noise), "top_n": 1})
        arms.append(StrategyArm(label, parse_strategy(token), arm_noise))
    max_turns = int(cfg["max_turns"]) if cfg.get("max_turns") else None
    experiment = ExperimentConfig(
        arms=tuple(arms),
        mode=cfg.get("mode", "ideal"),
        plan=cfg.get("plan", "exhaustive"),
        sample_size=int(cfg.get("sample_size", "0")),
        noise=noise,
        theta=float(cfg.get("theta", "0.8")),
        wildcard=_bool(cfg.get("wildcard", "true")),
        max_turns=max_turns,
        random_repeats=int(cfg.get("random_repeats", "3")),
        master_seed=int(cfg.get("master_seed", "0")),
    )
    return catalog, experiment, cfg.get("format", "table")


def cmd_catalog_gen(args: argparse.Namespace) -> int:
    if args.spec:
        spec = synthetic_spec_from_config(read_keyvalue(args.spec))
    else:
        spec = default_synthetic_spec()
    catalog = generate_synthetic(spec, seed=args.seed)
    write_catalog(catalog, args.out)
    print(f"wrote {catalog.num_goals} goals x {catalog.num_attributes} attributes to {args.out}")
    return 0


def cmd_bench_run(args: argparse.Namespace) -> int:
    catalog, experiment, fmt = experiment_from_config(read_keyvalue(args.config))
    report = run_experiment(catalog, experiment)
    print(format_table(report))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(report.to_json(), encoding="utf-8")
        written = emit_report(report, fmt, out)
        for path in [out / "report.json", *written]:
            print(f"wrote {path}")
    return 0


def cmd_bench_compare(args: argparse.Namespace) -> int:
    report = BenchReport.from_json(Path(args.report).read_text(encoding="utf-8"))
    a, b = (s.strip() for s in args.pair.split(",", 1))
    cmp = compare_pairwise(report, a, b)
    print(f"{a} < {b}: {cmp.frac_less:.2%}")
    print(f"{a} = {b}: {cmp.frac_equal:.2%}")
    print(f"{a} > {b}: {cmp.frac_greater:.2%}")
    return 0


def _parse_reply(catalog: Catalog, attr: int, text: str) -> "int | None | Observation":
    """Terminal answer syntax: a value, `?` for unknown, or
    `value:conf,value:conf` for a weighted candidate list."""
    text = text.strip()
    if text in ("?", "unknown", ""):
        return None
    if ":" in text:
        pairs = []
        for part in text.split(","):
            value_text, conf_text = part.rsplit(":", 1)
            vid = catalog.schema.value_id(attr, value_text.strip())
            if vid is None:
                print(f"  (no such value {value_text.strip()!r}, skipped)")
                continue
            pairs.append((vid, float(conf_text)))
        if not pairs:
            raise ValueError("no recognizable candidates")
        return Observation(attr, tuple(pairs))
    vid = catalog.schema.value_id(attr, text)
    if vid is None:
        raise ValueError(f"no such value {text!r}")
    return vid


def cmd_dialog_play(args: argparse.Namespace) -> int:
    catalog = load_catalog(args.catalog) if args.catalog else default_catalog()
    kind = parse_strategy(args.strategy)
    cfg = SessionConfig(strategy=kind, mode=args.mode, theta=args.theta)
    strategy = kind.build(default_seed=0)
    state = init_state(catalog)
    max_turns = catalog.num_attributes
    print(f"{catalog.num_goals} goals; answer with a value, `?` for unknown, "
          "or value:conf,value:conf")
    while True:
        status = check_termination(state, cfg)
        if status is None and state.turn >= max_turns:
            status = TerminalStatus.ATTRIBUTES_EXHAUSTED
        if status is None:
            attr = strategy.next_question(state)
            if attr is None:
                status = TerminalStatus.ATTRIBUTES_EXHAUSTED
        if status is not None:
            goals = returned_goals(state, status, cfg.mode)
            print(f"\n[{status.value}] candidates: "
                  + ", ".join(catalog.labels[g] for g in goals))
            return 0
        print(f"\n[{state.turn + 1}] {question_text(catalog, attr)} "
              f"(entropy {state_entropy(state):.3f} bits, "
              f"{state.support_size} goals left)")
        try:
            reply = input("> ")
        except EOFError:
            print("\n(bye)")
            return 0
        try:
            answer = _parse_reply(catalog, attr, reply)
        except ValueError as exc:
            print(f"  {exc}")
            continue
        if isinstance(answer, Observation):
            state = soft_update(state, answer)
        else:
            state = exact_update(state, attr, answer, wildcard=cfg.wildcard)
        for gid, p in state.top_goals(3):
            print(f"  {catalog.labels[gid]}: {p:.4f}")


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="goalsift")
    sub = parser.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("catalog", help="catalog utilities").add_subparsers(
        dest="subcommand", required=True)
    gen = cat.add_parser("gen", help="generate a synthetic catalog")
    gen.add_argument("--spec", help="key-value spec file (defaults to the built-in shape)")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--out", required=True, help="output CSV path")
    gen.set_defaults(func=cmd_catalog_gen)

    bench = sub.add_parser("bench", help="batch experiments").add_subparsers(
        dest="subcommand", required=True)
    run = bench.add_parser("run", help="run an experiment from a config file")
    run.add_argument("--config", required=True)
    run.add_argument("--out", help="directory for report artifacts")
    run.set_defaults(func=cmd_bench_run)
    comp = bench.add_parser("compare", help="pairwise turn-count comparison")
    comp.add_argument("--report", required=True, help="report.json from bench run")
    comp.add_argument("--pair", required=True, help="two arm labels, e.g. emdm,dsdm")
    comp.set_defaults(func=cmd_bench_compare)

    dialog = sub.add_parser("dialog", help="interactive dialogs").add_subparsers(
        dest="subcommand", required=True)
    play = dialog.add_parser("play", help="answer questions at the terminal")
    play.add_argument("--catalog", help="catalog CSV (defaults to the built-in catalog)")
    play.add_argument("--strategy", default="emdm")
    play.add_argument("--mode", default="ideal", choices=["ideal", "noisy"])
    play.add_argument("--theta", type=float, default=0.8)
    play.set_defaults(func=cmd_dialog_play)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
