"""Usage and adoption-share computation across distribution domains.

Internet usage derives from total traffic and the media share of that
traffic; physical-media usage derives from unit sales. All domains are
expressed in a common usage metric (compression-adjusted minutes, raw
bits, or unit counts) and the adoption share is the internet's fraction
of the total.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .errors import UnitMismatchError
from .series import AnnualSeries

BITS_PER_GIGABYTE = 8e9  # decimal gigabytes
BITS_PER_MEGABYTE = 8e6  # decimal megabytes


@dataclass(frozen=True)
class DomainUsage:
    """A distribution domain's yearly usage in a common metric."""

    domain_name: str
    minutes: AnnualSeries


@dataclass(frozen=True)
class AnalogStorage:
    """Analog medium: content measured in minutes per unit.

    `raw_bits_per_minute` is the digital-equivalent size of one minute of
    the medium's native-quality content, used only by the raw-bits metric.
    """

    minutes_per_unit: float
    raw_bits_per_minute: float

    def __post_init__(self) -> None:
        if self.minutes_per_unit <= 0:
            raise ValueError("minutes per unit must be positive")
        if self.raw_bits_per_minute <= 0:
            raise ValueError("raw bits per minute must be positive")


@dataclass(frozen=True)
class DigitalStorage:
    """Digital medium: content measured by on-disc capacity."""

    unit_storage_megabytes: float

    def __post_init__(self) -> None:
        if self.unit_storage_megabytes <= 0:
            raise ValueError("unit storage must be positive")


@dataclass(frozen=True)
class PhysicalMediaSpec:
    """A physical competitor medium and its yearly unit sales."""

    name: str
    storage: AnalogStorage | DigitalStorage
    yearly_sales: AnnualSeries  # absolute unit counts per year

    def __post_init__(self) -> None:
        if self.yearly_sales.unit != "count-per-year":
            raise ValueError(f"sales series tagged {self.yearly_sales.unit!r}")


@dataclass(frozen=True)
class UsageMetric:
    """How usage is counted: minutes, raw bits, or fixed-length units."""

    kind: str  # "minutes" | "raw_bits" | "units"
    unit_length_minutes: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("minutes", "raw_bits", "units"):
            raise ValueError(f"unknown usage metric {self.kind!r}")
        if self.kind == "units":
            if self.unit_length_minutes is None or self.unit_length_minutes <= 0:
                raise ValueError("units metric needs a positive unit length")
        elif self.unit_length_minutes is not None:
            raise ValueError(f"{self.kind} metric takes no unit length")

    @classmethod
    def minutes(cls) -> "UsageMetric":
        return cls("minutes")

    @classmethod
    def raw_bits(cls) -> "UsageMetric":
        return cls("raw_bits")

    @classmethod
    def units(cls, unit_length_minutes: float) -> "UsageMetric":
        return cls("units", unit_length_minutes)

    def label(self) -> str:
        if self.kind == "units":
            length = self.unit_length_minutes
            return f"units:{int(length) if float(length).is_integer() else length}"
        return self.kind


def extend_compression(compression: AnnualSeries, from_year: int, to_year: int) -> AnnualSeries:
    """Extend a compression schedule: ratio 1 before coverage, carry the
    last value forward after it."""
    if len(compression) == 0:
        raise ValueError("empty compression series")
    known = compression.to_mapping()
    first, last = compression.years[0], compression.years[-1]
    pairs = []
    for year in range(from_year, to_year + 1):
        if year < first:
            pairs.append((year, 1.0))
        elif year > last:
            pairs.append((year, known[last]))
        elif year in known:
            pairs.append((year, known[year]))
    return AnnualSeries(tuple(pairs), compression.unit)


def internet_media_minutes(
    traffic: AnnualSeries,
    media_share: AnnualSeries,
    compression: AnnualSeries,
    one_min_uncompressed_bits: float,
) -> AnnualSeries:
    """Minutes of media moved over the internet per year.

    traffic_bits(t) * share(t) / (one_minute_uncompressed / compression(t));
    traffic is in decimal gigabytes per year. Years missing from any input
    are omitted.
    """
    if one_min_uncompressed_bits <= 0:
        raise ValueError("one-minute size must be positive")
    share = media_share.to_mapping()
    comp = compression.to_mapping()
    pairs = []
    for year, gigabytes in traffic:
        if year not in share or year not in comp:
            continue
        compressed_minute = one_min_uncompressed_bits / comp[year]
        pairs.append((year, gigabytes * BITS_PER_GIGABYTE * share[year] / compressed_minute))
    return AnnualSeries(tuple(pairs), "minutes-per-year")


def analog_media_minutes(spec: PhysicalMediaSpec) -> AnnualSeries:
    """Minutes sold on an analog medium: sales * minutes per unit."""
    if not isinstance(spec.storage, AnalogStorage):
        raise ValueError(f"{spec.name} is not an analog medium")
    scaled = spec.yearly_sales.scale(spec.storage.minutes_per_unit)
    return AnnualSeries(scaled.entries, "minutes-per-year")


def digital_media_minutes(
    spec: PhysicalMediaSpec,
    compression: AnnualSeries,
    one_min_uncompressed_bits: float,
) -> AnnualSeries:
    """Minutes storable on a digital medium's yearly sales.

    sales * storage_bits * compression(t) / one_minute_uncompressed; years
    missing from the compression series are omitted.
    """
    if not isinstance(spec.storage, DigitalStorage):
        raise ValueError(f"{spec.name} is not a digital medium")
    storage_bits = spec.storage.unit_storage_megabytes * BITS_PER_MEGABYTE
    comp = compression.to_mapping()
    pairs = []
    for year, sales in spec.yearly_sales:
        if year not in comp:
            continue
        pairs.append((year, sales * storage_bits * comp[year] / one_min_uncompressed_bits))
    return AnnualSeries(tuple(pairs), "minutes-per-year")


def internet_media_raw_bits(traffic: AnnualSeries, media_share: AnnualSeries) -> AnnualSeries:
    """Raw bits carried for a media type: traffic * share, no compression
    adjustment."""
    share = media_share.to_mapping()
    pairs = [
        (year, gigabytes * BITS_PER_GIGABYTE * share[year])
        for year, gigabytes in traffic
        if year in share
    ]
    return AnnualSeries(tuple(pairs), "count-per-year")


def physical_media_raw_bits(spec: PhysicalMediaSpec) -> AnnualSeries:
    """Raw bits represented by a physical medium's yearly sales.

    Digital media count their on-disc capacity; analog media count the
    digital equivalent of their native-quality content.
    """
    if isinstance(spec.storage, DigitalStorage):
        per_unit = spec.storage.unit_storage_megabytes * BITS_PER_MEGABYTE
    else:
        per_unit = spec.storage.minutes_per_unit * spec.storage.raw_bits_per_minute
    scaled = spec.yearly_sales.scale(per_unit)
    return AnnualSeries(scaled.entries, "count-per-year")


def adoption_share(
    internet: DomainUsage,
    physical: list[DomainUsage],
    metric: UsageMetric | None = None,
    denominator: str = "all-domains",
) -> AnnualSeries:
    """Internet share of total usage, per year, over the common year range.

    All usages must carry the same unit tag. The units metric divides every
    domain by the same unit length, which leaves shares bit-identical to the
    minutes metric; it exists so unit counts can be reported alongside.
    `denominator` is "all-domains" (internet included; shares lie in [0, 1])
    or "competitors-only" (internet over the physical total).
    """
    if denominator not in ("all-domains", "competitors-only"):
        raise ValueError(f"unknown denominator mode {denominator!r}")
    metric = metric or UsageMetric.minutes()
    usages = [internet] + list(physical)
    unit = internet.minutes.unit
    for usage in usages:
        if usage.minutes.unit != unit:
            raise UnitMismatchError(
                f"{usage.domain_name} is {usage.minutes.unit!r}, expected {unit!r}"
            )
    series = [u.minutes for u in usages]
    if metric.kind == "units":
        series = [s.scale(1.0 / metric.unit_length_minutes) for s in series]

    common = set(series[0].years)
    for s in series[1:]:
        common &= set(s.years)
    if not common:
        raise ValueError("domains share no years")

    maps = [s.to_mapping() for s in series]
    pairs = []
    for year in sorted(common):
        net = maps[0][year]
        competitors = sum(m[year] for m in maps[1:])
        total = net + competitors if denominator == "all-domains" else competitors
        if total == 0:
            warnings.warn(f"zero total usage in {year}; year omitted", stacklevel=2)
            continue
        pairs.append((year, net / total))
    return AnnualSeries(tuple(pairs), "dimensionless-share")


def protocol_mix(protocol_shares: list[tuple[AnnualSeries, float]]) -> AnnualSeries:
    """Media share of total internet use from per-protocol shares.

    Sum over protocols of internet_share_i(t) * media_fraction_i, over the
    years common to all protocol series.
    """
    for _, fraction in protocol_shares:
        if not 0.0 <= fraction <= 1.0:
            raise ValueError(f"media fraction {fraction} outside [0, 1]")
    if not protocol_shares:
        return AnnualSeries((), "dimensionless-share")
    common = set(protocol_shares[0][0].years)
    for s, _ in protocol_shares[1:]:
        common &= set(s.years)
    pairs = []
    for year in sorted(common):
        pairs.append((year, sum(s[year] * f for s, f in protocol_shares)))
    return AnnualSeries(tuple(pairs), "dimensionless-share")
