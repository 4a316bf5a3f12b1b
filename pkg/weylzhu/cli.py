# weylzhu/cli.py
"""Command-line driver: one subcommand per table or verification.

Exit status is 0 when every check in the report passes, 1 when a check
fails and 2 for an invalid configuration.
"""
import argparse
import logging
import sys

from pydantic import ValidationError

from .config import FAMILY_NAMES, build_config
from .errors import ConfigError, InvalidParameterError, WeylZhuError
from .fock_module import NAMED_VECTORS, character_series, enumerate_bipartitions, zhu_circ, zhu_star
from .logger_config import setup_logger
from .mode_algebra import Generator, Kind
from .mta_zhu import (
    annihilator_word,
    contraction_constant,
    contraction_constant_formula,
    creator_word,
    unity,
    verify_strong_unity,
    zhu_image,
    zhu_structure,
)
from .report import Report, error_payload, write_report
from .verification import require, run_suite
from .weight_modules import (
    Family,
    WeightModuleSpec,
    induce,
    spectral_flow_module,
    verify_flow,
    vertex_weakly_interlocked,
    weakly_interlocked,
)

logger = logging.getLogger("weylzhu.cli")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


class ArgumentParser(argparse.ArgumentParser):
    """argparse with errors raised as ConfigError instead of exiting."""

    def error(self, message):
        raise ConfigError(message)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-d", dest="max_d", type=int)
    common.add_argument("--j-window", dest="j_window", type=int)
    common.add_argument("--level", type=int)
    common.add_argument("--depth", type=int)
    common.add_argument("--window", type=int)
    common.add_argument("--family", choices=FAMILY_NAMES)
    common.add_argument("--lambda", dest="lam", metavar="P/Q")
    common.add_argument("--ell", type=int)
    common.add_argument("--format", choices=("json", "csv", "text"))
    common.add_argument("--out", help="output file; bare names go to $WEYLZHU_OUTPUT_DIR")
    common.add_argument("--no-timestamp", dest="no_timestamp", action="store_true", default=None)
    common.add_argument("--verbose", "-v", action="store_true", default=None)
    common.add_argument("--log-dir", dest="log_dir")

    parser = ArgumentParser(
        prog="weylzhu",
        description="Exact computations for the Weyl vertex algebra and its modules.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)
    sub.add_parser("characters", parents=[common], help="bivariate character table")
    p2 = sub.add_parser("p2", parents=[common], help="bipartition counts")
    p2.add_argument("--max", dest="p2_max", type=int)
    p2.add_argument("--list", dest="list_bipartitions", action="store_true", default=None)
    sub.add_parser("mta", parents=[common], help="contraction constants and unity")
    sub.add_parser("zhu", parents=[common], help="Zhu algebra block descriptor")
    sub.add_parser("zhu-products", parents=[common], help="circle and star product samples")
    modules = sub.add_parser("modules", parents=[common], help="socle, radical and interlocking")
    modules.add_argument("--report", choices=("interlock", "matrices"))
    sub.add_parser("flow", parents=[common], help="spectral-flow verification")
    verify = sub.add_parser("verify-all", parents=[common], help="full acceptance suite")
    verify.add_argument("--quick", action="store_true", default=None)
    verify.add_argument("--strict", action="store_true", default=None,
                        help="raise VerificationError when a check fails")
    return parser


def _spec(config):
    family = Family(config.family)
    lam = config.lam if family is Family.W_LAMBDA else 0
    return WeightModuleSpec(family, config.window, lam)


def run_characters(config):
    series = character_series(config.max_d, config.j_window)
    return Report("characters", series.rows(), series.metadata())


def run_p2(config):
    rows = []
    for d in range(config.p2_max + 1):
        bipartitions = enumerate_bipartitions(d)
        row = {"d": d, "count": len(bipartitions)}
        if config.list_bipartitions:
            row["bipartitions"] = [str(bp) for bp in bipartitions]
        rows.append(row)
    return Report("p2", rows, {"max": config.p2_max})


def run_mta(config):
    d = config.level
    rows = []
    for bp in enumerate_bipartitions(d):
        c = contraction_constant(bp)
        rows.append({
            "bipartition": str(bp),
            "creator": str(creator_word(bp)),
            "annihilator": str(annihilator_word(bp)),
            "constant": c,
            "closed_form": contraction_constant_formula(bp),
            "positive": c > 0,
        })
    strong = [verify_strong_unity(n, m) for n in range(d + 1) for m in range(d + 1)]
    metadata = {
        "level": d,
        "unity": str(unity(d)),
        "strong_unity": [report.as_dict() for report in strong],
    }
    return Report("mta", rows, metadata, passed=all(report.passed for report in strong))


def run_zhu(config):
    blocks = zhu_structure(config.level)
    rows = [
        {"j": j, "block_size": size, "bipartitions": [str(bp) for bp in enumerate_bipartitions(j)]}
        for j, size in enumerate(blocks.block_sizes)
    ]
    expected = tuple(range(min(config.level, 2) + 1))
    return Report("zhu", rows, blocks.as_dict(), passed=blocks.idempotents_checked == expected)


def run_zhu_products(config):
    rows = []
    passed = True
    for u_name, u in NAMED_VECTORS.items():
        for v_name, v in NAMED_VECTORS.items():
            for n in range(config.level + 1):
                star = zhu_star(u, v, n)
                row = {"u": u_name, "v": v_name, "n": n, "circ": zhu_circ(u, v, n), "star": star}
                if n == 0:
                    image = zhu_image(star)
                    multiplicative = image == zhu_image(u) * zhu_image(v)
                    row.update({"image": image, "multiplicative": multiplicative})
                    passed = passed and multiplicative
                rows.append(row)
    return Report("zhu-products", rows, {"level": config.level}, passed=passed)


def run_modules(config):
    spec = _spec(config)
    if config.report == "matrices":
        truncation = induce(spec, config.depth)
        rows = []
        for kind in Kind:
            for n in (-1, 0, 1):
                g = Generator(kind, n)
                rows.extend(
                    {"generator": str(g), "row": r, "col": c, "value": value}
                    for r, c, value in truncation.action_matrix(g)
                )
        metadata = {"family": str(spec), "depth": config.depth, "dimension": len(truncation.basis())}
        return Report("modules", rows, metadata)
    report = weakly_interlocked(spec)
    induced = vertex_weakly_interlocked(induce(spec, config.depth))
    metadata = {"induced": induced.as_dict()}
    return Report("modules", [report.as_dict()], metadata, passed=report.weakly_interlocked is not None)


def run_flow(config):
    spec = _spec(config)
    flowed = spectral_flow_module(induce(spec, config.depth), config.ell)
    report = verify_flow(flowed)
    interlock = vertex_weakly_interlocked(flowed)
    rows = [{"check": name, "passed": ok} for name, ok in sorted(report.checks.items())]
    metadata = {
        "family": str(spec),
        "ell": config.ell,
        "depth": config.depth,
        "failures": report.failures,
        "interlock": interlock.as_dict(),
    }
    return Report("flow", rows, metadata, passed=report.passed)


def run_verify_all(config):
    results = run_suite(config.quick)
    if config.strict:
        require(results)
    rows = [result.as_row() for result in results]
    failed = [result.name for result in results if not result.passed]
    return Report("verify-all", rows, {"quick": config.quick, "failed": failed}, passed=not failed)


COMMANDS = {
    "characters": run_characters,
    "p2": run_p2,
    "mta": run_mta,
    "zhu": run_zhu,
    "zhu-products": run_zhu_products,
    "modules": run_modules,
    "flow": run_flow,
    "verify-all": run_verify_all,
}


def run(config):
    """Run one configured command; returns (exit status, rendered report)."""
    logger.info(f"running {config.command}")
    report = COMMANDS[config.command](config)
    text = write_report(report, config.format, config.output_path(), not config.no_timestamp)
    if not report.passed:
        logger.warning(f"{config.command} reported failed checks")
    return (EXIT_OK if report.passed else EXIT_FAILED), text


def main(argv=None):
    try:
        args = vars(build_parser().parse_args(argv))
        command = args.pop("command")
        config = build_config(command, args)
    except (ConfigError, ValidationError) as exc:
        setup_logger("weylzhu").error(f"Configuration error: {exc}")
        sys.stdout.write(error_payload(exc))
        return EXIT_CONFIG

    level = logging.DEBUG if config.verbose else logging.INFO
    setup_logger("weylzhu", config.resolved_log_dir(), level)
    try:
        status, text = run(config)
    except InvalidParameterError as exc:
        logger.error(f"Invalid parameter: {exc}")
        sys.stdout.write(error_payload(exc))
        return EXIT_CONFIG
    except WeylZhuError as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        sys.stdout.write(error_payload(exc))
        return EXIT_FAILED
    except Exception as exc:
        logger.critical(f"Unexpected error in {config.command}: {exc}", exc_info=True)
        sys.stdout.write(error_payload(exc))
        return EXIT_FAILED
    if config.out is None:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
