"""Injection channels and their per-field length limits.

Limits are character counts over printable ASCII.  Fields the measurements
only bound from below (``> 2000``) are ``lower_bound_only``: values up to
2000 characters are accepted, longer ones are reported as unverified.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Optional, Union

LOWER_BOUND = 2000


class Delivery(str, enum.Enum):
    MULTI_FIELD = "MultiField"
    SINGLE_FIELD_TIMED = "SingleFieldTimed"
    SINGLE_SHOT = "SingleShot"


@dataclass(frozen=True)
class FieldSpec:
    field_name: str
    max_length: int
    lower_bound_only: bool = False

    def __post_init__(self) -> None:
        if self.max_length < 1:
            raise ValueError(f"max_length must be >= 1, got {self.max_length}")

    def describe(self) -> str:
        return f"> {self.max_length}" if self.lower_bound_only else str(self.max_length)


@dataclass(frozen=True)
class Channel:
    name: str
    fields: tuple[FieldSpec, ...]
    delivery: Delivery

    def field(self, field_name: str) -> FieldSpec:
        for spec in self.fields:
            if spec.field_name.lower() == field_name.lower():
                return spec
        raise UnknownField(f"{self.name} has no field {field_name!r}")

    @property
    def field_names(self) -> tuple[str, ...]:
        return tuple(f.field_name for f in self.fields)


class CatalogError(ValueError):
    pass


class UnknownField(KeyError):
    pass


def _lb(*names: str) -> tuple[FieldSpec, ...]:
    return tuple(FieldSpec(n, LOWER_BOUND, lower_bound_only=True) for n in names)


_BUILTIN: tuple[Channel, ...] = (
    Channel("WiFi", (FieldSpec("SSID", 32),), Delivery.SINGLE_FIELD_TIMED),
    Channel("Bluetooth", (FieldSpec("DeviceName", 248),), Delivery.SINGLE_FIELD_TIMED),
    Channel("NFC", _lb("Content"), Delivery.SINGLE_SHOT),
    Channel("SMS", (FieldSpec("MessageBody", 140),), Delivery.SINGLE_SHOT),
    Channel("QRCode", _lb("Content"), Delivery.SINGLE_SHOT),
    Channel(
        "MP3MP4",
        _lb("Title", "Artist", "Album", "Composer", "Genre", "Comment", "Copyright"),
        Delivery.MULTI_FIELD,
    ),
    Channel(
        "JPEG",
        _lb("Title", "Artist", "Comment", "Copyright", "Tag", "Subject")
        + (FieldSpec("Model", 32), FieldSpec("Maker", 42)),
        Delivery.MULTI_FIELD,
    ),
)

_ALIASES = {
    "wifi": "WiFi", "wi-fi": "WiFi", "bluetooth": "Bluetooth", "nfc": "NFC",
    "sms": "SMS", "qrcode": "QRCode", "qr": "QRCode", "barcode": "QRCode",
    "mp3mp4": "MP3MP4", "mp3": "MP3MP4", "mp4": "MP3MP4", "jpeg": "JPEG", "jpg": "JPEG",
}


def builtin_channels() -> list[Channel]:
    return list(_BUILTIN)


def get_channel(name: str, channels: Optional[Iterable[Channel]] = None) -> Channel:
    pool = list(channels) if channels is not None else builtin_channels()
    canonical = _ALIASES.get(name.lower(), name)
    for ch in pool:
        if ch.name.lower() == canonical.lower():
            return ch
    raise KeyError(f"unknown channel {name!r}")


@dataclass(frozen=True)
class Validation:
    """Outcome of checking a value against a field limit.

    ``ok`` is True exactly when the value is ASCII and within ``limit``.
    ``unverified`` marks lower-bound-only fields asked to hold more than
    the known bound.
    """

    ok: bool
    field_name: str
    length: int
    limit: int
    reason: str = ""
    unverified: bool = False

    def __bool__(self) -> bool:
        return self.ok


def validate_value(channel: Channel, field_name: str, value: str) -> Validation:
    spec = channel.field(field_name)
    n = len(value)
    if not value.isascii():
        return Validation(False, spec.field_name, n, spec.max_length, "non-ASCII")
    if n <= spec.max_length:
        return Validation(True, spec.field_name, n, spec.max_length)
    if spec.lower_bound_only:
        return Validation(
            False, spec.field_name, n, spec.max_length,
            "unverified beyond measured bound", unverified=True,
        )
    return Validation(False, spec.field_name, n, spec.max_length, f"exceeds limit {spec.max_length}")


_RECORD = re.compile(r"^\s*([A-Za-z0-9_\-]+)\.([A-Za-z0-9_\-]+)\s*=\s*(\S+)\s*$")


def load_overrides(
    source: Union[str, Path], base: Optional[Iterable[Channel]] = None
) -> list[Channel]:
    """Apply a ``channel.field=limit`` override file to ``base``.

    Unknown channels and fields are added; existing fields may only be
    tightened.  Lower-bound fields become hard limits when overridden.
    """
    text = Path(source).read_text(encoding="utf-8")
    return apply_overrides(text, base)


def apply_overrides(text: str, base: Optional[Iterable[Channel]] = None) -> list[Channel]:
    channels = {c.name.lower(): c for c in (base if base is not None else builtin_channels())}
    order = list(channels)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _RECORD.match(line)
        if not m:
            raise CatalogError(f"line {lineno}: expected channel.field=limit, got {raw.strip()!r}")
        ch_name, field_name, limit_s = m.groups()
        try:
            limit = int(limit_s)
        except ValueError:
            raise CatalogError(f"line {lineno}: limit must be an integer") from None
        if limit < 1:
            raise CatalogError(f"line {lineno}: limit must be >= 1")
        key = _ALIASES.get(ch_name.lower(), ch_name).lower()
        if key not in channels:
            channels[key] = Channel(ch_name, (FieldSpec(field_name, limit),), Delivery.SINGLE_SHOT)
            order.append(key)
            continue
        ch = channels[key]
        try:
            existing = ch.field(field_name)
        except UnknownField:
            fields = ch.fields + (FieldSpec(field_name, limit),)
            delivery = ch.delivery
            if delivery is Delivery.SINGLE_SHOT and len(fields) > 1:
                delivery = Delivery.MULTI_FIELD
            channels[key] = replace(ch, fields=fields, delivery=delivery)
            continue
        if limit > existing.max_length:
            raise CatalogError(
                f"line {lineno}: {ch.name}.{existing.field_name} cannot be loosened "
                f"beyond {existing.describe()}"
            )
        fields = tuple(
            FieldSpec(f.field_name, limit) if f is existing else f for f in ch.fields
        )
        channels[key] = replace(ch, fields=fields)
    return [channels[k] for k in order]
