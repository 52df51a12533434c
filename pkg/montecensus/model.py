"""
montecensus.model

Census records and classification reports, and the checks a census run
performs on every family before it reports anything.
"""

import json
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from pathlib import Path
from typing import IO, Self

from montecensus import config, montesinos, mutation, tangle, volume
from montecensus.logger import log, timed, worker
from montecensus.montesinos import MontesinosLink
from montecensus.mutation import CanonicalKey
from montecensus.volume import VolumeBound


class InvariantViolation(AssertionError):
    """A computed result contradicts what is known about the family"""


@contextmanager
def _check(reason, logger=log):
    try:
        yield
    except AssertionError as e:
        msg = str(e)
        if msg:
            logger.error(f"{reason} FAILED: {msg}")
        else:
            logger.error(f"{reason} FAILED")
        raise InvariantViolation(f"{reason} FAILED {msg}".rstrip()) from e
    logger.success(f"{reason} ok")


@dataclass(frozen=True)
class CensusRecord:
    n: int
    fractions: str
    knot_class_count: int
    formula_count: int | None
    closed_class_count: int
    bounds: VolumeBound
    closed_upper_oct: Fraction
    growth_holds: bool
    enumerated: bool

    def __post_init__(self):
        if self.enumerated and self.formula_count is not None:
            if self.knot_class_count != self.formula_count:
                raise ValueError(
                    f"enumerated {self.knot_class_count} classes, "
                    f"expected {self.formula_count}"
                )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "fractions": self.fractions,
            "knot_class_count": self.knot_class_count,
            "formula_count": self.formula_count,
            "closed_class_count": self.closed_class_count,
            "bounds": self.bounds.to_json(),
            "closed_upper_oct": str(self.closed_upper_oct),
            "growth_holds": self.growth_holds,
            "enumerated": self.enumerated,
        }

    @classmethod
    def from_json(cls, json: dict) -> Self:
        try:
            return cls(
                n=int(json["n"]),
                fractions=json["fractions"],
                knot_class_count=int(json["knot_class_count"]),
                formula_count=json["formula_count"],
                closed_class_count=int(json["closed_class_count"]),
                bounds=VolumeBound.from_json(json["bounds"]),
                closed_upper_oct=Fraction(json["closed_upper_oct"]),
                growth_holds=bool(json["growth_holds"]),
                enumerated=bool(json["enumerated"]),
            )
        except KeyError as e:
            raise ValueError(f"census record without {e}") from None


def dump_records(records: Iterable[CensusRecord], file: IO):
    for record in records:
        print(json.dumps(record.to_json()), file=file)


def load_records(file: IO) -> list[CensusRecord]:
    records = []
    for i, line in enumerate(file, start=1):
        if not line.strip():
            continue
        try:
            records.append(CensusRecord.from_json(json.loads(line)))
        except json.JSONDecodeError as e:
            raise ValueError(f"line {i}: {e}") from None
    return records


def check_family(m: MontesinosLink, logger=log):
    """The predicates every mutant family must satisfy"""
    with _check(f"{m} is a knot", logger):
        count = montesinos.component_count(m)
        assert count == 1, f"{count} components"
    with _check(f"{m} has a hyperbolicity witness", logger):
        assert montesinos.is_hyperbolic_witness(m)
    with _check(f"{m} is alternating", logger):
        assert montesinos.is_alternating_vertical(m)
    for idx in mutation.MutationIndex.all(m):
        with _check(f"S_{idx.a} of {m} is essential and unlinked", logger):
            assert mutation.sphere_is_essential(m, idx), "sphere is inessential"
            assert mutation.mutation_is_unlinked(m, idx), "mutation is linked"


def check_word(f: tangle.TangleFraction, logger=log):
    """The continued fraction word of `f`, checked against strand tracing"""
    w = tangle.continued_fraction_word(f)
    traced = tangle.trace_pairing(w)
    with _check(f"{w.encode()} traces the pairing of {f.encode()}", logger):
        expected = tangle.endpoint_pairing(f)
        assert traced is expected, f"{traced.name} ≠ {expected.name}"
        got = tangle.fraction_of(w)
        assert got == f, f"word gives {got.encode()}"
    return w, traced


def check_class_count(m: MontesinosLink, count: int, logger=log):
    n = (len(m) - 1) // 2
    formula = mutation.distinct_count_formula(n)
    with _check(f"{m} has (2n)!/2 mutant classes", logger):
        assert count == formula, f"{count} ≠ {formula}"


def _family_record(
    m: MontesinosLink, formula: int | None, enumerate_cap: int
) -> CensusRecord:
    n = (len(m) - 1) // 2
    logger = worker(f"census-{n}")
    with timed(f"census of {m}", logger):
        check_family(m, logger)

        enumerated = len(m) <= enumerate_cap
        if enumerated:
            count = len(mutation.enumerate_mutant_classes(m, enumerate_cap, workers=1))
            if formula is not None:
                check_class_count(m, count, logger)
        elif formula is None:
            raise ValueError(
                f"{m} repeats a tangle and exceeds the enumeration cap of "
                f"{enumerate_cap}"
            )
        else:
            count = formula

        return CensusRecord(
            n=n,
            fractions=m.encode(),
            knot_class_count=count,
            formula_count=formula,
            closed_class_count=count,
            bounds=volume.volume_bounds(n),
            closed_upper_oct=volume.closed_volume_bound(n),
            growth_holds=volume.growth_certificate(n).holds,
            enumerated=enumerated,
        )


def _census_record(n: int, enumerate_cap: int) -> CensusRecord:
    m = montesinos.build_family(n)
    return _family_record(m, mutation.distinct_count_formula(n), enumerate_cap)


def _generalized_record(t_list: Sequence[int], enumerate_cap: int) -> CensusRecord:
    m = montesinos.build_generalized(t_list)
    n = (len(m) - 1) // 2
    formula = None
    if len(set(t_list)) == len(t_list):
        formula = mutation.distinct_count_formula(n)
    return _family_record(m, formula, enumerate_cap)


def _run[T](task, items: Sequence[T], workers: int | None) -> list[CensusRecord]:
    workers = workers or config.workers()
    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(task, items))
    return [task(item) for item in items]


def run_census(
    n_min: int,
    n_max: int,
    enumerate_cap: int = config.DEFAULT_ENUMERATE_CAP,
    workers: int | None = None,
) -> list[CensusRecord]:
    """One record per K_{2n+1}, n_min ≤ n ≤ n_max, ordered by n"""
    if not 2 <= n_min <= n_max:
        raise ValueError(f"expected 2 ≤ n_min ≤ n_max, got {n_min}..{n_max}")
    with timed(f"census {n_min}..{n_max}"):
        records = _run(
            partial(_census_record, enumerate_cap=enumerate_cap),
            list(range(n_min, n_max + 1)),
            workers,
        )
    log.info(f"census of {len(records)} families done")
    return records


def run_generalized_census(
    t_lists: Sequence[Sequence[int]],
    enumerate_cap: int = config.DEFAULT_ENUMERATE_CAP,
    workers: int | None = None,
) -> list[CensusRecord]:
    """Records for K(1/t_1, ..., 1/t_{2n+1}), in the order given.

    Distinct t_i give (2n)!/2 classes; repeated ones are only enumerated.
    """
    t_lists = [tuple(t) for t in t_lists]
    if not t_lists:
        raise ValueError("no families to census")
    return _run(
        partial(_generalized_record, enumerate_cap=enumerate_cap), t_lists, workers
    )


@dataclass(frozen=True)
class ClassifiedLine:
    lineno: int
    text: str
    key: CanonicalKey | None = None
    error: str | None = None

    def to_json(self) -> dict:
        if self.key is None:
            return {"line": self.lineno, "input": self.text, "error": self.error}
        return {"line": self.lineno, "input": self.text, "key": self.key.encode()}


@dataclass(frozen=True)
class ClassifyReport:
    lines: tuple[ClassifiedLine, ...]
    groups: dict[CanonicalKey, list[int]] = field(default_factory=dict)

    @property
    def errors(self) -> list[ClassifiedLine]:
        return [line for line in self.lines if line.error is not None]


def classify_lines(lines: Iterable[str]) -> ClassifyReport:
    """Canonical keys of one fraction list per line; blank lines are skipped"""
    classified = []
    groups: dict[CanonicalKey, list[int]] = {}
    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text:
            continue
        try:
            key = mutation.canonical_key(montesinos.parse_link(text))
        except ValueError as e:
            log.debug(f"line {lineno}: {e}")
            classified.append(ClassifiedLine(lineno, text, error=str(e)))
            continue
        classified.append(ClassifiedLine(lineno, text, key=key))
        groups.setdefault(key, []).append(lineno)
    return ClassifyReport(tuple(classified), groups)


def classify_file(path: Path | str) -> ClassifyReport:
    with Path(path).open(encoding="utf-8") as f:
        return classify_lines(f)
