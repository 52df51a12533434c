import dataclasses
import json
import sys
from contextlib import contextmanager
from functools import wraps
from typing import IO

import click

from montecensus import config, logger, model, montesinos, mutation, tangle, volume
from montecensus.logger import log


@dataclasses.dataclass
class Reporter:
    """Boxed text: nested sections of aligned fields and free lines"""

    out: IO
    depth: int = 0

    def _line(self, text: str):
        print("│ " * self.depth + text, file=self.out)

    @contextmanager
    def section(self, title):
        self._line(f"┌ {title}")
        self.depth += 1
        try:
            yield
        finally:
            self.depth -= 1
            self._line(f"└ {title}")

    def lines(self, text):
        for line in str(text).splitlines():
            self._line(line)

    def fields(self, items: dict):
        width = max(len(k) for k in items)
        for k, v in items.items():
            self._line(f"{k:<{width}}  {v}")


def emit(obj: dict, file: IO | None = None):
    print(json.dumps(obj), file=file or sys.stdout)


def exit_codes(fn):
    """Bad input exits with 1, a violated invariant with 2"""

    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except model.InvariantViolation as e:
            log.error(str(e))
            sys.exit(2)
        except (ValueError, OSError) as e:
            log.error(str(e))
            sys.exit(1)

    return wrapper


@contextmanager
def usage_is_input_error():
    try:
        yield
    except click.UsageError as e:
        e.exit_code = 1
        raise


class CensusGroup(click.Group):
    """A click group whose usage errors exit with 1, as any bad input does.

    Exit code 2 stays reserved for invariant violations.
    """

    def make_context(self, *args, **kwargs):
        with usage_is_input_error():
            return super().make_context(*args, **kwargs)

    def invoke(self, ctx):
        with usage_is_input_error():
            return super().invoke(ctx)


def int_list(ctx_, parms_, expr):
    if expr is None:
        return None
    try:
        return tuple(int(t) for t in expr.split(","))
    except ValueError:
        raise click.BadParameter(
            f"expected comma separated integers, got {expr!r}"
        ) from None


def int_lists(ctx, parms, exprs):
    return tuple(int_list(ctx, parms, expr) for expr in exprs)


FORMAT = click.option(
    "--format",
    type=click.Choice(["json", "table"]),
    default="json",
    show_default=True,
    help="JSON lines, or boxed text for reading.",
)

CAP = click.option(
    "--cap",
    type=int,
    default=config.DEFAULT_ENUMERATE_CAP,
    show_default=True,
    help="the largest number of tangles to enumerate permutations of.",
)


@click.group(cls=CensusGroup)
@click.option(
    "-v",
    "--verbose",
    count=True,
    help="sets the verbosity of the program, more means more information",
)
@click.option(
    "--workers",
    type=click.IntRange(min=1),
    default=None,
    help="worker processes for enumeration and census runs.",
)
@click.pass_context
def cli(ctx, verbose, workers):
    """Census of volume-preserving mutants of Montesinos knots."""
    logger.initialize(verbose)
    ctx.obj = workers


@cli.command()
@click.option("--n", "n", type=int, help="the index n of K_{2n+1}.")
@click.option(
    "--t",
    "t_list",
    callback=int_list,
    help="twist counts of a generalized family, e.g. 7,9,11.",
)
@FORMAT
@exit_codes
def family(n, t_list, format):
    """Build a family and report its diagram predicates."""
    if (n is None) == (t_list is None):
        raise ValueError("give exactly one of --n and --t")
    if t_list is None:
        m = montesinos.build_family(n)
    else:
        m = montesinos.build_generalized(t_list)

    indices = mutation.MutationIndex.all(m)
    result = {
        "fractions": m.encode(),
        "fraction_sum": str(m.fraction_sum()),
        "components": montesinos.component_count(m),
        "alternating": montesinos.is_alternating_vertical(m),
        "hyperbolic_witness": montesinos.is_hyperbolic_witness(m),
        "essential": [mutation.sphere_is_essential(m, i) for i in indices],
        "unlinked": [mutation.mutation_is_unlinked(m, i) for i in indices],
        "words": [w.encode() for w in montesinos.diagram_words(m)],
    }
    if format == "json":
        emit(result)
        return

    r = Reporter(sys.stdout)
    with r.section(str(m)):
        r.fields({k: v for k, v in result.items() if k != "words"})
        with r.section("Twist words"):
            for entry, word in zip(m, result["words"]):
                r.lines(f"{entry.encode():>8}  {word}")


@cli.command()
@click.option("--n", "n", type=int, required=True, help="the index n of K_{2n+1}.")
@click.option(
    "--enumerate/--no-enumerate",
    "enumerate_",
    help="enumerate the classes instead of only applying the formula.",
)
@click.option(
    "--keys/--no-keys",
    help="list the sorted canonical keys of the enumerated classes.",
)
@CAP
@FORMAT
@click.pass_obj
@exit_codes
def mutants(workers, n, enumerate_, keys, cap, format):
    """Count the mutants of K_{2n+1} up to equivalence."""
    m = montesinos.build_family(n)
    formula = mutation.distinct_count_formula(n)
    result = {"n": n, "fractions": m.encode(), "formula_count": formula}
    if enumerate_:
        classes = mutation.enumerate_mutant_classes(m, cap, workers)
        model.check_class_count(m, len(classes))
        result["class_count"] = len(classes)
        if keys:
            result["classes"] = [k.encode() for k in sorted(classes)]
    elif keys:
        raise ValueError("--keys needs --enumerate")

    if format == "json":
        emit(result)
        return
    r = Reporter(sys.stdout)
    with r.section(str(m)):
        r.fields({k: v for k, v in result.items() if k != "classes"})
        if keys:
            with r.section("Classes"):
                r.lines("\n".join(result["classes"]))


@cli.command()
@click.option(
    "--input",
    "input_",
    required=True,
    help="a file with one fraction list per line, or - for stdin.",
)
@FORMAT
@exit_codes
def classify(input_, format):
    """Group Montesinos links by their canonical key."""
    if input_ == "-":
        report = model.classify_lines(click.get_text_stream("stdin"))
    else:
        report = model.classify_file(input_)

    if format == "json":
        for line in report.lines:
            emit(line.to_json())
    else:
        r = Reporter(sys.stdout)
        for key, linenos in report.groups.items():
            with r.section(key.encode()):
                r.lines(f"lines {', '.join(map(str, linenos))}")
        if report.errors:
            with r.section("Errors"):
                for line in report.errors:
                    r.lines(f"{line.lineno}: {line.error}")

    if report.errors:
        log.warning(f"{len(report.errors)} lines could not be classified")
        sys.exit(1)


@cli.command()
@click.option("--n", "n", type=int, required=True, help="the index n of K_{2n+1}.")
@exit_codes
def bounds(n):
    """Volume bounds of the mutants of K_{2n+1}, in units of v_oct."""
    result = {"n": n} | volume.volume_bounds(n).to_json()
    result["closed_upper_oct"] = str(volume.closed_volume_bound(n))
    emit(result)


@cli.command()
@click.option("--n-min", type=int, help="first n to certify.")
@click.option("--n-max", type=int, help="last n to certify.")
@click.option(
    "--threshold/--no-threshold",
    help="also search for the least n from which the growth claim holds.",
)
@exit_codes
def growth(n_min, n_max, threshold):
    """Check (2n)!/2 ≥ v^(v/8) at the upper volume bound."""
    if n_min is None and n_max is None and not threshold:
        raise ValueError("give --n-min and --n-max, or --threshold")
    if (n_min is None) != (n_max is None):
        raise ValueError("--n-min and --n-max go together")

    if n_min is not None:
        certificates = []
        scan = volume.growth_scan(n_min, n_max, certificates)
        for cert in certificates:
            emit(cert.to_json())
        emit({"scan": scan.to_json()})
        if not scan.monotone:
            raise model.InvariantViolation(
                f"growth claim fails after n = {scan.first_holding}: {scan.violations}"
            )
    if threshold:
        emit({"threshold": volume.growth_threshold()})


@cli.command()
@click.option("--n-min", type=int, help="first n of the census.")
@click.option("--n-max", type=int, help="last n of the census.")
@click.option(
    "--t",
    "t_lists",
    multiple=True,
    callback=int_lists,
    help="twist counts of a generalized family, e.g. 7,9,11; repeatable.",
)
@CAP
@click.option(
    "--out",
    "-o",
    default="-",
    type=click.File(mode="w", encoding="utf-8"),
    help="A file to write the records to.",
)
@FORMAT
@click.pass_obj
@exit_codes
def census(workers, n_min, n_max, t_lists, cap, out, format):
    """Census of K_{2n+1} for n_min ≤ n ≤ n_max, or of the --t families."""
    if t_lists:
        if n_min is not None or n_max is not None:
            raise ValueError("give either --n-min and --n-max, or --t")
        records = model.run_generalized_census(t_lists, cap, workers)
    elif n_min is None or n_max is None:
        raise ValueError("give --n-min and --n-max, or --t")
    else:
        records = model.run_census(n_min, n_max, cap, workers)

    if format == "json":
        model.dump_records(records, out)
        return

    r = Reporter(out)
    for record in records:
        title = f"K{record.fractions}"
        if not t_lists:
            title = f"K_{2 * record.n + 1} = {title}"
        with r.section(title):
            how = "enumerated" if record.enumerated else "formula"
            b = record.bounds
            r.fields(
                {
                    "classes": f"{record.knot_class_count} ({how})",
                    "closed classes": record.closed_class_count,
                    "volume / v_oct": f"[{b.lower_oct}, {b.upper_oct}]",
                    "volume": f"[{volume.decimal(b.lower)}, {volume.decimal(b.upper)}]",
                    "closed bound": f"{record.closed_upper_oct} v_oct",
                    "growth": "holds" if record.growth_holds else "not yet",
                }
            )


@cli.command()
@click.argument("FRACTION")
@exit_codes
def word(fraction):
    """A twist word for FRACTION and the pairing its diagram traces."""
    f = tangle.TangleFraction.decode(fraction)
    w, traced = model.check_word(f)
    emit({"fraction": f.encode(), "word": w.encode(), "pairing": traced.name})
