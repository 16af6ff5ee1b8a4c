"""CSV parsing and emission for journal datasets and category fixtures."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, fields as dc_fields
from typing import IO, Iterable, Optional

from .core_model import (
    CategoryInfo,
    Dataset,
    Edition,
    InsufficientDataError,
    JournalRecord,
    validate,
)

JOURNAL_HEADER = [
    "id",
    "name",
    "categories",
    "items_t",
    "items_t1",
    "items_t2",
    "cited_in_window",
    "refs_total",
    "refs_jcr",
    "refs_jcr_in_window",
]

FIXTURE_HEADER = [
    "code",
    "name",
    "edition",
    "refs_jcr",
    "refs_total",
    "ncited",
    "nciting",
    "a",
    "r",
    "p",
    "w",
    "b",
    "aif",
]

_EDITIONS = {
    "science": Edition.SCIENCE,
    "social": Edition.SOCIAL_SCIENCE,
    "union": Edition.UNION,
}


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class CategoryFixtureRow:
    """One category row of the published reference table.

    Raw counts are exact integers; ``printed_*`` carry the table's rounded
    values and are ``None`` where the table shows "-".  They are kept for
    golden comparisons only and never fed back into arithmetic.
    """

    code: str
    name: str
    edition: Edition
    refs_jcr: int
    refs_total: int
    ncited: int
    nciting: int
    printed_a: Optional[float] = None
    printed_r: Optional[float] = None
    printed_p: Optional[float] = None
    printed_w: Optional[float] = None
    printed_b: Optional[float] = None
    printed_aif: Optional[float] = None

    def __post_init__(self):
        for name in ("refs_jcr", "refs_total", "ncited", "nciting"):
            if getattr(self, name) < 0:
                raise ValueError(f"{self.code}: negative count {name}")
        for name in ("printed_p", "printed_w"):
            v = getattr(self, name)
            if v is not None and not (0.0 <= v <= 1.0):
                raise ValueError(f"{self.code}: {name} outside [0,1]")

    def is_complete(self) -> bool:
        return None not in (
            self.printed_a,
            self.printed_r,
            self.printed_p,
            self.printed_w,
            self.printed_b,
        )


def _expect_header(row: list[str], expected: list[str], line: int) -> None:
    if row != expected:
        raise ParseError(line, f"bad header: expected {expected}, got {row}")


def _parse_count(value: str, column: str, line: int) -> int:
    try:
        n = int(value)
    except ValueError:
        raise ParseError(line, f"non-integer count in {column}: {value!r}") from None
    if n < 0:
        raise ParseError(line, f"negative count in {column}: {n}")
    return n


def _parse_optional_count(value: str, column: str, line: int) -> Optional[int]:
    if value == "":
        return None
    return _parse_count(value, column, line)


def parse_journals_csv(stream: IO[str], year: int = 0, strict: bool = True) -> Dataset:
    """Parse the journal-level CSV schema into a validated Dataset.

    The category registry is built from the codes encountered; editions are
    unknown at the journal level, so every entry is tagged Union.  With
    ``strict=False`` the structural checks still apply but record-level
    violations are left for the caller to inspect via ``validate``.
    """
    reader = csv.reader(stream)
    rows = list(reader)
    if not rows:
        raise ParseError(1, "empty input, header row required")
    _expect_header(rows[0], JOURNAL_HEADER, 1)
    journals = []
    seen: set[str] = set()
    codes: set[str] = set()
    for offset, row in enumerate(rows[1:], start=2):
        if len(row) != len(JOURNAL_HEADER):
            raise ParseError(offset, f"expected {len(JOURNAL_HEADER)} fields, got {len(row)}")
        jid = row[0]
        if not jid:
            raise ParseError(offset, "empty journal id")
        if jid in seen:
            raise ParseError(offset, f"duplicate journal id: {jid}")
        seen.add(jid)
        categories = tuple(c for c in row[2].split(";") if c)
        if not categories:
            raise ParseError(offset, f"journal {jid}: empty category list")
        if len(set(categories)) != len(categories):
            raise ParseError(offset, f"journal {jid}: duplicate category codes")
        codes.update(categories)
        journals.append(
            JournalRecord(
                id=jid,
                name=row[1],
                categories=categories,
                items_t=_parse_count(row[3], "items_t", offset),
                items_t1=_parse_count(row[4], "items_t1", offset),
                items_t2=_parse_count(row[5], "items_t2", offset),
                cited_in_window=_parse_count(row[6], "cited_in_window", offset),
                refs_total=_parse_optional_count(row[7], "refs_total", offset),
                refs_jcr=_parse_optional_count(row[8], "refs_jcr", offset),
                refs_jcr_in_window=_parse_optional_count(row[9], "refs_jcr_in_window", offset),
            )
        )
    registry = {c: CategoryInfo(c, c, Edition.UNION) for c in codes}
    dataset = Dataset(year=year, journals=tuple(journals), registry=registry)
    if strict:
        bad = validate(dataset)
        if bad:
            first = bad[0]
            raise ParseError(2, f"journal {first.record_id}: {first.rule}")
    return dataset


def _parse_printed(value: str, column: str, line: int) -> Optional[float]:
    if value == "-":
        return None
    try:
        return float(value)
    except ValueError:
        raise ParseError(line, f"bad value in {column}: {value!r}") from None


def parse_category_fixture_csv(stream: IO[str]) -> list[CategoryFixtureRow]:
    """Parse the category-level fixture schema; "-" marks absent printed values."""
    reader = csv.reader(stream)
    rows = list(reader)
    if not rows:
        raise ParseError(1, "empty input, header row required")
    _expect_header(rows[0], FIXTURE_HEADER, 1)
    out = []
    for offset, row in enumerate(rows[1:], start=2):
        if len(row) != len(FIXTURE_HEADER):
            raise ParseError(offset, f"expected {len(FIXTURE_HEADER)} fields, got {len(row)}")
        if row[2] not in _EDITIONS:
            raise ParseError(offset, f"unknown edition: {row[2]!r}")
        try:
            out.append(
                CategoryFixtureRow(
                    code=row[0],
                    name=row[1],
                    edition=_EDITIONS[row[2]],
                    refs_jcr=_parse_count(row[3], "refs_jcr", offset),
                    refs_total=_parse_count(row[4], "refs_total", offset),
                    ncited=_parse_count(row[5], "ncited", offset),
                    nciting=_parse_count(row[6], "nciting", offset),
                    printed_a=_parse_printed(row[7], "a", offset),
                    printed_r=_parse_printed(row[8], "r", offset),
                    printed_p=_parse_printed(row[9], "p", offset),
                    printed_w=_parse_printed(row[10], "w", offset),
                    printed_b=_parse_printed(row[11], "b", offset),
                    printed_aif=_parse_printed(row[12], "aif", offset),
                )
            )
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(offset, str(exc)) from None
    return out


def derive_citable_items(row: CategoryFixtureRow) -> float:
    """Estimate the census-year citable items of a fixture category.

    The reference table prints r (mean references per item) but not the item
    count itself, so the count is recovered as refs_total / r.
    """
    if row.printed_r is None:
        raise InsufficientDataError(f"{row.code}: printed r absent, cannot derive item count")
    if row.printed_r <= 0:
        raise InsufficientDataError(f"{row.code}: printed r is zero")
    return row.refs_total / row.printed_r


def _journal_row(j: JournalRecord) -> list[str]:
    def opt(v: Optional[int]) -> str:
        return "" if v is None else str(v)

    return [
        j.id,
        j.name,
        ";".join(j.categories),
        str(j.items_t),
        str(j.items_t1),
        str(j.items_t2),
        str(j.cited_in_window),
        opt(j.refs_total),
        opt(j.refs_jcr),
        opt(j.refs_jcr_in_window),
    ]


def emit_journals_csv(dataset: Dataset, stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(JOURNAL_HEADER)
    for j in dataset.journals:
        writer.writerow(_journal_row(j))


def emit_fixture_csv(rows: Iterable[CategoryFixtureRow], stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(FIXTURE_HEADER)
    for r in rows:
        def printed(v: Optional[float]) -> str:
            return "-" if v is None else f"{v:g}"

        writer.writerow(
            [
                r.code,
                r.name,
                r.edition.value,
                str(r.refs_jcr),
                str(r.refs_total),
                str(r.ncited),
                str(r.nciting),
                printed(r.printed_a),
                printed(r.printed_r),
                printed(r.printed_p),
                printed(r.printed_w),
                printed(r.printed_b),
                printed(r.printed_aif),
            ]
        )


def _as_record(item) -> dict:
    if isinstance(item, dict):
        return dict(item)
    out = {}
    for f in dc_fields(item):
        v = getattr(item, f.name)
        if isinstance(v, Edition):
            v = v.value
        out[f.name] = v
    return out


def emit_report(rows: Iterable, fmt: str, stream: IO[str]) -> None:
    """Write report rows (dicts or dataclasses) as CSV or JSON.

    Column/key order is the field order of the first row and identical for
    every row, so output is deterministic for a given input.
    """
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown format: {fmt!r}")
    records = [_as_record(r) for r in rows]
    if fmt == "json":
        json.dump(records, stream, indent=2)
        stream.write("\n")
        return
    writer = csv.writer(stream, lineterminator="\n")
    if not records:
        return
    keys = list(records[0])
    writer.writerow(keys)
    for rec in records:
        writer.writerow(["" if rec.get(k) is None else rec.get(k) for k in keys])


def dumps_report(rows: Iterable, fmt: str) -> str:
    buf = io.StringIO()
    emit_report(rows, fmt, buf)
    return buf.getvalue()
