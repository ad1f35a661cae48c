#!/usr/bin/env python3
"""
McKay Degree CLI

Command-line surface over the toolkit: cores and quotients, p'-degree
enumeration on both sides, LR coefficients, Sylow restriction
multiplicities, degree-dominating bijections and the verification sweep.

Usage:
    python scripts/cli.py core --p 5 --partition 7,5,5,3,3
    python scripts/cli.py enumerate --n 12 --p 3
    python scripts/cli.py bijection --n 5 --p 5
    python scripts/cli.py --format csv bijection --n 12 --p 5 --strategy global
    python scripts/cli.py verify --n-max 40 --primes 2,3,5,7,11,13 --workers 4

Exit codes: 0 all pass, 1 a check or dominance failed, 2 invalid input,
130 interrupted. Logs go to stderr; stdout carries only results.
"""

import csv
import functools
import io
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import click

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from scripts.config_loader import ConfigLoader, RunConfig  # noqa: E402
from scripts.result_cache import ResultCache, canonical_json  # noqa: E402
from services.bijection_engine import STRATEGIES, DegreeRelation, build_bijection, relation_match_exists  # noqa: E402
from services.bijection_engine import label_text, verify_bijection  # noqa: E402
from services.exceptions import BlockInfeasibleError, InvalidInputError, McKayError  # noqa: E402
from services.littlewood_richardson import multi_lr_coeff, restriction_constituents  # noqa: E402
from services.normalizer_chars import enum_norm_n  # noqa: E402
from services.partition_core import Partition, core_quotient, degree, format_partition, make_partition  # noqa: E402
from services.sylow_restriction import StarLabel, restriction_multiplicity, star_product  # noqa: E402
from services.sym_characters import enumerate_p_prime, require_prime  # noqa: E402
from services.verify_suite import CHECKS, VerificationSuite, default_plan  # noqa: E402

logger = logging.getLogger("sn_mckay.cli")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_INTERRUPTED = 130
CSV_HEADER = ["n", "p", "side", "label", "degree"]


def setup_logging(level: str = "INFO", log_file: Optional[str] = None, verbose: bool = False,
                  log_format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"):
    """Setup logging configuration. Never writes to stdout."""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=logging.DEBUG if verbose else getattr(logging, level.upper(), logging.INFO),
        format=log_format,
        handlers=handlers,
        force=True,
    )


# ============================================================================
# PARAMETER TYPES
# ============================================================================

class PartitionType(click.ParamType):
    """Comma-separated parts, e.g. 7,5,5,3,3; the empty string is the empty partition."""
    name = "partition"

    def convert(self, value: Any, param, ctx) -> Partition:
        if isinstance(value, tuple):
            return value
        text = str(value).strip()
        if not text:
            return ()
        try:
            return make_partition(int(part) for part in text.split(","))
        except (ValueError, InvalidInputError) as e:
            self.fail(f"{value!r} is not a partition: {e}", param, ctx)


class IntListType(click.ParamType):
    name = "int-list"

    def convert(self, value: Any, param, ctx) -> Tuple[int, ...]:
        if isinstance(value, tuple):
            return value
        try:
            return tuple(int(part) for part in str(value).split(",") if part.strip())
        except ValueError:
            self.fail(f"{value!r} is not a comma-separated list of integers", param, ctx)


PARTITION = PartitionType()
INT_LIST = IntListType()


# ============================================================================
# STATE AND OUTPUT
# ============================================================================

@dataclass
class CliState:
    config: RunConfig
    cache: ResultCache
    output: Optional[Path]

    @property
    def format(self) -> str:
        return self.config.format


def json_line(record: Dict[str, Any]) -> str:
    return canonical_json(record)


def csv_lines(rows: Sequence[Sequence[str]]) -> List[str]:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(rows)
    return buffer.getvalue().splitlines()


def emit(state: CliState, lines: Sequence[str]) -> None:
    text = "".join(f"{line}\n" for line in lines)
    if state.output:
        state.output.parent.mkdir(parents=True, exist_ok=True)
        with open(state.output, "w", encoding="utf-8") as f:
            f.write(text)
        logger.info(f"Wrote {len(lines)} lines to {state.output}")
    else:
        click.echo(text, nl=False)


def require_json(state: CliState, command: str) -> None:
    if state.format != "json":
        raise InvalidInputError(f"{command} only supports json output")


def cached(state: CliState, module: str, operation: str, params: Dict[str, Any],
           compute: Callable[[], Tuple[List[str], int]]) -> int:
    """Serve lines from the cache, or compute them and cache successful results."""
    params = dict(params, format=state.format)
    lines = state.cache.get(module, operation, params)
    if lines is not None:
        emit(state, lines)
        return EXIT_OK
    lines, status = compute()
    if status == EXIT_OK:
        state.cache.put(module, operation, params, lines)
    emit(state, lines)
    return status


def handle_errors(func: Callable[..., int]) -> Callable[..., None]:
    """Map library errors onto exit codes."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            code = func(*args, **kwargs)
        except InvalidInputError as e:
            logger.error(f"Invalid input: {e}")
            code = EXIT_INVALID
        except BlockInfeasibleError as e:
            logger.error(f"Dominance failed: {e} {e.witness}")
            click.echo(json_line({"error": "block_infeasible", "witness": e.witness}), err=True)
            code = EXIT_FAILED
        except McKayError as e:
            logger.error(f"{type(e).__name__}: {e}")
            code = EXIT_FAILED
        except KeyboardInterrupt:
            logger.warning("Interrupted")
            code = EXIT_INTERRUPTED
        ctx.exit(code)

    return wrapper


# ============================================================================
# COMMANDS
# ============================================================================

@click.group()
@click.option("--config-dir", type=click.Path(file_okay=False, path_type=Path), default=None,
              help="Directory holding settings.yaml")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default=None, help="Output format")
@click.option("--output", "-o", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write results to a file instead of stdout")
@click.option("--no-cache", is_flag=True, help="Neither read nor write the result cache")
@click.pass_context
def cli(ctx, config_dir, verbose, fmt, output, no_cache):
    """Exact p'-degree character combinatorics for S_n and its Sylow normalizers."""
    loader = ConfigLoader(config_dir)
    try:
        setup_logging(loader.log_level, loader.log_file, verbose, loader.log_format)
        config = loader.run_config().with_overrides(format=fmt, output=output)
    except (FileNotFoundError, InvalidInputError) as e:
        setup_logging(verbose=verbose)
        logger.error(f"Configuration error: {e}")
        ctx.exit(EXIT_INVALID)
    cache = ResultCache(loader.cache_dir, enabled=loader.cache_enabled and not no_cache)
    ctx.obj = CliState(config=config, cache=cache, output=output)


@cli.command()
@click.option("--p", "modulus", type=int, required=True, help="Abacus size (any integer >= 2)")
@click.option("--partition", type=PARTITION, required=True)
@click.pass_obj
@handle_errors
def core(state: CliState, modulus: int, partition: Partition) -> int:
    """Core and quotient of a partition."""
    require_json(state, "core")
    result = core_quotient(partition, modulus)
    emit(state, [json_line(dict(result.to_dict(), partition=list(partition)))])
    return EXIT_OK


@cli.command(name="enumerate")
@click.option("--n", type=int, required=True)
@click.option("--p", type=int, required=True)
@click.option("--brute-force", is_flag=True, help="Filter P(n) by degree instead (small n only)")
@click.pass_obj
@handle_errors
def enumerate_cmd(state: CliState, n: int, p: int, brute_force: bool) -> int:
    """p'-degree partitions of n with their degrees."""
    require_prime(p)

    def compute() -> Tuple[List[str], int]:
        partitions = enumerate_p_prime(n, p, brute_force=brute_force)
        if state.format == "csv":
            return csv_lines([[str(n), str(p), "S", format_partition(lam), str(degree(lam))] for lam in partitions]), 0
        return [json_line({"lambda": list(lam), "degree": str(degree(lam))}) for lam in partitions], EXIT_OK

    return cached(state, "sym_characters", "enumerate_p_prime", {"n": n, "p": p, "brute_force": brute_force}, compute)


@cli.command()
@click.option("--n", type=int, required=True)
@click.option("--p", type=int, required=True)
@click.pass_obj
@handle_errors
def normalizer(state: CliState, n: int, p: int) -> int:
    """p'-degree characters of the Sylow normalizer N_n with their degrees."""
    require_prime(p)

    def compute() -> Tuple[List[str], int]:
        labels = enum_norm_n(n, p)
        if state.format == "csv":
            return csv_lines([[str(n), str(p), "N", label_text(label), str(label.degree)] for label in labels]), 0
        return [json_line({"label": label.to_dict(), "degree": str(label.degree)}) for label in labels], EXIT_OK

    return cached(state, "normalizer_chars", "enum_norm_n", {"n": n, "p": p}, compute)


@cli.command()
@click.option("--outer", type=PARTITION, required=True)
@click.option("--inner", "inners", type=PARTITION, multiple=True, help="Repeat for each factor")
@click.option("--split", type=int, default=None, help="List every constituent on S_split x S_(n-split)")
@click.pass_obj
@handle_errors
def lr(state: CliState, outer: Partition, inners: Tuple[Partition, ...], split: Optional[int]) -> int:
    """Littlewood-Richardson coefficients."""
    require_json(state, "lr")
    if split is not None:
        lines = [
            json_line({"mu": list(c.mu), "gamma": list(c.gamma), "multiplicity": c.multiplicity})
            for c in restriction_constituents(outer, split)
        ]
    else:
        if not inners:
            raise InvalidInputError("lr needs --inner at least once, or --split")
        value = multi_lr_coeff(outer, inners)
        lines = [json_line({"outer": list(outer), "inners": [list(mu) for mu in inners], "coefficient": value})]
    emit(state, lines)
    return EXIT_OK


@cli.command()
@click.option("--partition", type=PARTITION, required=True)
@click.option("--p", type=int, required=True)
@click.option("--coords", type=INT_LIST, default=None,
              help="Coordinates of a linear character of P_{p^k}; default is the star character")
@click.pass_obj
@handle_errors
def restrict(state: CliState, partition: Partition, p: int, coords: Optional[Tuple[int, ...]]) -> int:
    """Multiplicity of a linear Sylow character in the restriction of chi^lambda."""
    require_json(state, "restrict")
    require_prime(p)
    label = StarLabel.of(p, coords) if coords else star_product(sum(partition), p)
    multiplicity = restriction_multiplicity(partition, label, state.config.restriction_cap)
    emit(state, [json_line({
        "lambda": list(partition),
        "s": label.display(),
        "multiplicity": multiplicity,
        "degree": str(degree(partition)),
    })])
    return EXIT_OK


@cli.command()
@click.option("--n", type=int, required=True)
@click.option("--p", type=int, required=True)
@click.option("--strategy", type=click.Choice(list(STRATEGIES)), default=None)
@click.pass_obj
@handle_errors
def bijection(state: CliState, n: int, p: int, strategy: Optional[str]) -> int:
    """Build and verify a degree-dominating bijection."""
    strategy = strategy or state.config.strategy

    def compute() -> Tuple[List[str], int]:
        record = build_bijection(n, p, strategy)
        report = verify_bijection(record)
        for note in report.notes:
            logger.info(note)
        if not report.passed:
            click.echo(json_line({"error": "verification_failed", "witness": report.failures[:10]}), err=True)
        if state.format == "csv":
            lines = csv_lines(record.csv_rows())
        else:
            lines = [json_line(line) for line in record.to_lines()]
        logger.info(f"Bijection n={n}, p={p}: {len(record.pairs)} pairs, strategy {record.strategy}")
        return lines, EXIT_OK if report.passed else EXIT_FAILED

    return cached(state, "bijection_engine", "build_bijection", {"n": n, "p": p, "strategy": strategy}, compute)


@cli.command()
@click.option("--n", type=int, required=True)
@click.option("--p", type=int, required=True)
@click.option("--relation", type=click.Choice([r.value for r in DegreeRelation]), default="dominance")
@click.pass_obj
@handle_errors
def relation(state: CliState, n: int, p: int, relation: str) -> int:
    """Whether any bijection respects the given degree relation."""
    require_json(state, "relation")
    exists = relation_match_exists(n, p, DegreeRelation(relation))
    emit(state, [json_line({"n": n, "p": p, "relation": relation, "exists": exists})])
    return EXIT_OK


@cli.command()
@click.option("--n-max", type=int, default=None)
@click.option("--primes", type=INT_LIST, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--workers", type=int, default=None)
@click.option("--check", "checks", type=click.Choice(sorted(CHECKS)), multiple=True,
              help="Only run these checks (repeatable)")
@click.option("--timing", is_flag=True, help="Include elapsed seconds (output is then not byte-stable)")
@click.option("--no-progress", is_flag=True)
@click.pass_obj
@handle_errors
def verify(state: CliState, n_max: Optional[int], primes: Optional[Tuple[int, ...]], seed: Optional[int],
           workers: Optional[int], checks: Tuple[str, ...], timing: bool, no_progress: bool) -> int:
    """Run the verification sweep; one JSON line per check."""
    require_json(state, "verify")
    config = state.config.with_overrides(n_max=n_max, primes=primes, seed=seed, workers=workers)
    jobs = default_plan(config.suite_options())
    if checks:
        jobs = [job for job in jobs if job.check_id in checks]
    params = {"plan": [[job.check_id, [[k, v] for k, v in job.params]] for job in jobs]}

    def compute() -> Tuple[List[str], int]:
        suite = VerificationSuite(workers=config.workers, progress=not no_progress)
        results = suite.run(jobs)
        summary = suite.summarize(results)
        click.echo(json.dumps(summary, sort_keys=True), err=True)
        lines = [json_line(result.to_dict(include_timing=timing)) for result in results]
        return lines, EXIT_OK if summary["ok"] else EXIT_FAILED

    if timing:
        state.cache.enabled = False
    return cached(state, "verify_suite", "run", params, compute)


def main() -> None:
    try:
        cli(prog_name="sn-mckay")
    except KeyboardInterrupt:
        sys.exit(EXIT_INTERRUPTED)


if __name__ == "__main__":
    main()
