"""Bundled appendix datasets plus ingestion and validation of user CSVs.

Each bundled table ships as a plain CSV next to a JSON manifest carrying
unit tags, coverage, the source citation, and a sha256 checksum, so the
data can be audited by eye and corruption is a hard error.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import os
import shutil
from dataclasses import dataclass, field
from datetime import date
from importlib import resources
from pathlib import Path
from typing import Mapping

from .adoption import AnalogStorage, DigitalStorage, PhysicalMediaSpec
from .costs import MediaSpec, one_minute_size_bits
from .errors import DataIntegrityError
from .series import AnnualSeries, Deflator, RateSchedule, UNIT_TAGS

DATASET_IDS = (
    "a1_bandwidth_cost",
    "a2_compression",
    "a3_postage",
    "a4_traffic",
    "a5_media_share",
    "a6_sales",
    "a7_minutes_per_unit",
    "a8_unit_storage",
)

ENV_DATA_DIR = "TECHKNEE_DATA"

# Digital equivalent of one minute of VHS-quality content (320x240 at SD
# color depth and frame rate, plus the audio track). Used only by the
# raw-bits usage metric; analog audio media use the reference audio rate.
VHS_RAW_BITS_PER_MINUTE = (320 * 240 * 24 * 30 + 633_600) * 60.0


def data_dir() -> Path:
    """Bundled data directory, overridable via the TECHKNEE_DATA env var."""
    override = os.environ.get(ENV_DATA_DIR)
    if override:
        return Path(override)
    return Path(str(resources.files("techknee").joinpath("data")))


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _read_manifest(dataset_id: str, directory: Path) -> dict:
    path = directory / f"{dataset_id}.manifest.json"
    if not path.exists():
        raise DataIntegrityError(f"missing manifest {path}")
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def _read_table(dataset_id: str, directory: Path) -> tuple[list[dict], dict]:
    """Rows + manifest for one bundled table, checksum-verified."""
    if dataset_id not in DATASET_IDS:
        raise KeyError(f"unknown dataset id {dataset_id!r}")
    manifest = _read_manifest(dataset_id, directory)
    csv_path = directory / manifest["file"]
    if not csv_path.exists():
        raise DataIntegrityError(f"missing data file {csv_path}")
    digest = _sha256(csv_path)
    if digest != manifest["sha256"]:
        raise DataIntegrityError(
            f"{dataset_id}: checksum mismatch ({digest} != manifest {manifest['sha256']})"
        )
    with open(csv_path, newline="", encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    coverage = manifest.get("coverage")
    if coverage and "rows" in coverage and len(rows) != coverage["rows"]:
        raise DataIntegrityError(
            f"{dataset_id}: {len(rows)} rows, manifest declares {coverage['rows']}"
        )
    return rows, manifest


def _annual(rows: list[dict], column: str, unit: str, scale: float = 1.0) -> AnnualSeries:
    pairs = tuple((int(r["year"]), float(r[column]) * scale) for r in rows)
    return AnnualSeries(pairs, unit)


def load_bundled(dataset_id: str, directory: Path | None = None):
    """Load one bundled table into its domain objects.

    Returns, by table: a1 -> dict of nominal/real AnnualSeries plus the
    implied Deflator; a2 -> dict of compression AnnualSeries per media
    type; a3 -> RateSchedule; a4 -> AnnualSeries; a5 -> dict of share
    AnnualSeries; a6 -> dict of sales AnnualSeries (absolute counts);
    a7/a8 -> plain keyed dicts.
    """
    directory = directory or data_dir()
    rows, _ = _read_table(dataset_id, directory)

    if dataset_id == "a1_bandwidth_cost":
        nominal = _annual(rows, "nominal_usd_per_mbps_month", "real-dollars-per-megabit-month")
        real = _annual(rows, "usd2016_per_mbps_month", "real-dollars-per-megabit-month")
        factors = {y: real[y] / nominal[y] for y, _ in nominal}
        return {"nominal": nominal, "real_2016": real, "deflator": Deflator(factors)}

    if dataset_id == "a2_compression":
        return {
            media: _annual(rows, media, "dimensionless-share")
            for media in ("text", "image", "audio", "video")
        }

    if dataset_id == "a3_postage":
        changes = tuple(
            (
                date.fromisoformat(r["effective_date"]),
                (
                    float(r["first_ounce_nominal_usd"]),
                    float(r["additional_ounce_nominal_usd"]),
                    float(r["first_ounce_usd2016"]),
                    float(r["additional_ounce_usd2016"]),
                ),
            )
            for r in rows
        )
        return RateSchedule(
            changes=changes,
            columns=(
                "first_ounce_nominal_usd",
                "additional_ounce_nominal_usd",
                "first_ounce_usd2016",
                "additional_ounce_usd2016",
            ),
            units=("real-dollars",) * 4,
        )

    if dataset_id == "a4_traffic":
        return _annual(rows, "gigabytes_per_year", "count-per-year")

    if dataset_id == "a5_media_share":
        return {
            media: _annual(rows, f"{media}_percent", "dimensionless-share", scale=0.01)
            for media in ("audio", "video")
        }

    if dataset_id == "a6_sales":
        # Stored in millions as printed; scaled to absolute counts here.
        return {
            name: _annual(rows, f"{name}_millions", "count-per-year", scale=1e6)
            for name in ("cd", "cassette", "vinyl", "dvd", "vhs")
        }

    if dataset_id == "a7_minutes_per_unit":
        return {r["media"]: float(r["minutes_per_unit"]) for r in rows}

    if dataset_id == "a8_unit_storage":
        return {r["media"]: float(r["megabytes_per_unit"]) for r in rows}

    raise KeyError(dataset_id)


@dataclass(frozen=True)
class Datasets:
    """All bundled tables, loaded and typed.

    The `custom_*` fields carry user-supplied extensions declared in a
    scenario config: extra performance series, reference media units,
    mail weights, replacement media-share series, and replacement
    competitor sets. Bundled data is never mutated.
    """

    bandwidth_nominal: AnnualSeries
    bandwidth_real: AnnualSeries
    deflator: Deflator
    compression: Mapping[str, AnnualSeries]
    postage: RateSchedule
    traffic: AnnualSeries
    media_share: Mapping[str, AnnualSeries]
    sales: Mapping[str, AnnualSeries]
    minutes_per_unit: Mapping[str, float]
    unit_storage_mb: Mapping[str, float]
    custom_series: Mapping[str, AnnualSeries] = field(default_factory=dict)
    custom_media: Mapping[str, MediaSpec] = field(default_factory=dict)
    custom_mail: Mapping[str, int] = field(default_factory=dict)
    media_share_override: Mapping[str, AnnualSeries] = field(default_factory=dict)
    physical_media_override: Mapping[str, tuple[PhysicalMediaSpec, ...]] = field(default_factory=dict)

    def case_media_share(self, case: str) -> AnnualSeries:
        if case in self.media_share_override:
            return self.media_share_override[case]
        return self.media_share[case]

    def physical_media(self, case: str) -> list[PhysicalMediaSpec]:
        """Competitor media for a case, built from tables A.6-A.8 unless
        the case carries a user-supplied competitor set."""
        if case in self.physical_media_override:
            return list(self.physical_media_override[case])
        audio_raw = one_minute_size_bits("audio")
        if case == "audio":
            return [
                PhysicalMediaSpec("cd", DigitalStorage(self.unit_storage_mb["CD"]), self.sales["cd"]),
                PhysicalMediaSpec(
                    "cassette",
                    AnalogStorage(self.minutes_per_unit["Cassette"], audio_raw),
                    self.sales["cassette"],
                ),
                PhysicalMediaSpec(
                    "vinyl",
                    AnalogStorage(self.minutes_per_unit["Vinyl"], audio_raw),
                    self.sales["vinyl"],
                ),
            ]
        if case == "video":
            return [
                PhysicalMediaSpec("dvd", DigitalStorage(self.unit_storage_mb["DVD"]), self.sales["dvd"]),
                PhysicalMediaSpec(
                    "vhs",
                    AnalogStorage(self.minutes_per_unit["VHS"], VHS_RAW_BITS_PER_MINUTE),
                    self.sales["vhs"],
                ),
            ]
        raise ValueError(f"unknown case {case!r}")


def load_all(directory: Path | None = None) -> Datasets:
    directory = directory or data_dir()
    a1 = load_bundled("a1_bandwidth_cost", directory)
    return Datasets(
        bandwidth_nominal=a1["nominal"],
        bandwidth_real=a1["real_2016"],
        deflator=a1["deflator"],
        compression=load_bundled("a2_compression", directory),
        postage=load_bundled("a3_postage", directory),
        traffic=load_bundled("a4_traffic", directory),
        media_share=load_bundled("a5_media_share", directory),
        sales=load_bundled("a6_sales", directory),
        minutes_per_unit=load_bundled("a7_minutes_per_unit", directory),
        unit_storage_mb=load_bundled("a8_unit_storage", directory),
    )


def parse_series_csv(path: str | Path, declared_unit: str) -> AnnualSeries:
    """Read a `year,value` CSV into a validated series.

    The unit is supplied by the caller (manifest or CLI flag), never
    inferred. Malformed rows are reported with their line number.
    """
    path = Path(path)
    if declared_unit not in UNIT_TAGS:
        raise ValueError(f"unknown unit tag {declared_unit!r}")
    if not path.exists():
        raise FileNotFoundError(f"no such file: {path}")
    pairs: list[tuple[int, float]] = []
    seen: dict[int, int] = {}
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header[:2]] != ["year", "value"]:
            raise ValueError(f"{path}:1: expected header 'year,value'")
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) < 2:
                raise ValueError(f"{path}:{lineno}: expected two columns")
            try:
                year = int(row[0])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: bad year {row[0]!r}") from None
            try:
                value = float(row[1])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: bad value {row[1]!r}") from None
            if year in seen:
                raise ValueError(f"{path}:{lineno}: duplicate year {year} (first at line {seen[year]})")
            if not math.isfinite(value):
                raise ValueError(f"{path}:{lineno}: non-finite value")
            if value < 0:
                raise ValueError(f"{path}:{lineno}: negative value")
            seen[year] = lineno
            pairs.append((year, value))
    pairs.sort()
    return AnnualSeries(tuple(pairs), declared_unit)


def write_series_csv(series: AnnualSeries, path: str | Path) -> None:
    """Write a series in the `year,value` exchange format."""
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["year", "value"])
        for year, value in series:
            writer.writerow([year, repr(value)])


@dataclass(frozen=True)
class Finding:
    """One machine-readable validation finding."""

    code: str
    message: str


def validate_dataset(series: AnnualSeries, expectations: Mapping[str, object] | None = None) -> list[Finding]:
    """Check coverage, positivity, and contiguity; findings, not exceptions."""
    expectations = expectations or {}
    findings: list[Finding] = []
    if len(series) == 0:
        findings.append(Finding("empty-series", "series has no entries"))
        return findings
    years = series.years
    cover = expectations.get("coverage")
    if cover is not None:
        lo, hi = cover  # type: ignore[misc]
        if years[0] != lo or years[-1] != hi:
            findings.append(
                Finding("coverage", f"covers {years[0]}-{years[-1]}, expected {lo}-{hi}")
            )
    if expectations.get("contiguous"):
        missing = sorted(set(range(years[0], years[-1] + 1)) - set(years))
        if missing:
            findings.append(Finding("gap", f"missing years {missing}"))
    if expectations.get("positive"):
        zeros = [y for y, v in series if v <= 0]
        if zeros:
            findings.append(Finding("non-positive", f"non-positive values at {zeros}"))
    return findings


def export_bundled(out_dir: str | Path, directory: Path | None = None) -> list[Path]:
    """Copy every bundled CSV and manifest into `out_dir` for auditing."""
    directory = directory or data_dir()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for dataset_id in DATASET_IDS:
        _read_table(dataset_id, directory)  # checksum gate before export
        for suffix in (".csv", ".manifest.json"):
            src = directory / f"{dataset_id}{suffix}"
            dst = out / src.name
            shutil.copyfile(src, dst)
            written.append(dst)
    return written
