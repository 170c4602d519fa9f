"""Catalog of JavaScript entry points that hand external data to a page.

This is a reconstruction: it lists common bridge-plugin APIs for each
injection channel.  Extend it with an override file, one record per line::

    callback:bluetoothSerial.list=Bluetooth:0
    callback:jsmediatags.read=MP3MP4:1.onSuccess
    return:EXIF.getTag=JPEG
    event:onSMSArrive=SMS
    promise:WifiWizard2.scan=WiFi
    service:BluetoothPlugin=Bluetooth

``#`` starts a comment.  ``callback`` records name the argument positions
holding success callbacks; ``N.key`` means property ``key`` of an object
literal at position ``N``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Union

from .channels import CatalogError

EXTERNAL_CHANNELS = ("WiFi", "Bluetooth", "NFC", "SMS", "QRCode", "MP3MP4", "JPEG")
INTERNAL = "Internal"
WEB = "Web"
UNKNOWN = "Unknown"
SOURCE_CHANNELS = EXTERNAL_CHANNELS + (INTERNAL, WEB, UNKNOWN)

KINDS = ("callback", "return", "event", "promise")

BRIDGE_CALLS = ("PhoneGap.exec", "phonegap.exec", "cordova.exec", "Cordova.exec")


@dataclass(frozen=True)
class SourceSpec:
    api: str
    channel: str
    kind: str = "callback"
    callbacks: tuple[str, ...] = ("0",)

    def matches(self, dotted: str) -> bool:
        return dotted == self.api or dotted.endswith("." + self.api)


def _cb(api: str, channel: str, *positions: Union[int, str]) -> SourceSpec:
    return SourceSpec(api, channel, "callback", tuple(str(p) for p in positions) or ("0",))


_BUILTIN_SPECS: tuple[SourceSpec, ...] = (
    # Bluetooth discovery and reads
    _cb("bluetoothSerial.list", "Bluetooth", 0),
    _cb("bluetoothSerial.discoverUnpaired", "Bluetooth", 0),
    _cb("bluetoothSerial.setDeviceDiscoveredListener", "Bluetooth", 0),
    _cb("bluetoothSerial.read", "Bluetooth", 0),
    _cb("bluetoothSerial.subscribe", "Bluetooth", 1),
    _cb("bluetoothSerial.readUntil", "Bluetooth", 1),
    _cb("bluetooth.startDiscovery", "Bluetooth", 0),
    _cb("bluetooth.getBondedDevices", "Bluetooth", 0),
    _cb("bluetooth.getPaired", "Bluetooth", 0),
    _cb("bluetoothle.startScan", "Bluetooth", 0),
    _cb("bluetoothle.retrieveConnected", "Bluetooth", 0),
    _cb("ble.scan", "Bluetooth", 2),
    _cb("ble.startScan", "Bluetooth", 1),
    _cb("ble.startScanWithOptions", "Bluetooth", 2),
    _cb("networking.bluetooth.getDevices", "Bluetooth", 0),
    _cb("networking.bluetooth.onDeviceAdded.addListener", "Bluetooth", 0),
    # Wi-Fi scans
    _cb("WifiWizard.getScanResults", "WiFi", 0, 1),
    _cb("WifiWizard.getCurrentSSID", "WiFi", 0),
    _cb("wifi.getAccessPoints", "WiFi", 0),
    _cb("WifiAdmin.scan", "WiFi", 0),
    _cb("wifiScanner.scan", "WiFi", 0),
    SourceSpec("WifiWizard2.scan", "WiFi", "promise"),
    SourceSpec("WifiWizard2.getScanResults", "WiFi", "promise"),
    # SMS
    SourceSpec("onSMSArrive", "SMS", "event"),
    _cb("SmsReceiver.startReception", "SMS", 0),
    _cb("smsreceiver.startReception", "SMS", 0),
    _cb("SMSReceive.startWatch", "SMS", 0),
    _cb("SMS.listSMS", "SMS", 1),
    # NFC
    _cb("nfc.addNdefListener", "NFC", 0),
    _cb("nfc.addTagDiscoveredListener", "NFC", 0),
    _cb("nfc.addMimeTypeListener", "NFC", 1),
    _cb("nfc.addNdefFormatableListener", "NFC", 0),
    _cb("nfc.readerMode", "NFC", 1),
    # barcodes / QR codes
    _cb("barcodeScanner.scan", "QRCode", 0),
    _cb("BarcodeScanner.scan", "QRCode", 0),
    _cb("zBar.scan", "QRCode", 1),
    _cb("QRScanner.scan", "QRCode", 0),
    # media metadata
    _cb("ID3.loadTags", "MP3MP4", 1),
    SourceSpec("ID3.getAllTags", "MP3MP4", "return"),
    _cb("jsmediatags.read", "MP3MP4", "1.onSuccess"),
    _cb("MediaMetadata.read", "MP3MP4", 1),
    SourceSpec("EXIF.getTag", "JPEG", "return"),
    SourceSpec("EXIF.getAllTags", "JPEG", "return"),
    # on-device resources
    _cb("contacts.find", INTERNAL, 1),
    _cb("geolocation.getCurrentPosition", INTERNAL, 0),
    _cb("geolocation.watchPosition", INTERNAL, 0),
    _cb("calendar.findEvent", INTERNAL, 5),
    _cb("calendar.listEventsInRange", INTERNAL, 2),
    SourceSpec("localStorage.getItem", INTERNAL, "return"),
    # web
    _cb("$.get", WEB, 1, 2),
    _cb("$.getJSON", WEB, 1, 2),
    _cb("$.post", WEB, 1, 2),
    _cb("$.ajax", WEB, "0.success"),
    _cb("jQuery.get", WEB, 1, 2),
    _cb("jQuery.getJSON", WEB, 1, 2),
    _cb("jQuery.ajax", WEB, "0.success"),
    _cb("facebookConnectPlugin.api", WEB, 2),
)

_BUILTIN_SERVICES: dict[str, str] = {
    "BluetoothPlugin": "Bluetooth", "BluetoothSerial": "Bluetooth", "Bluetooth": "Bluetooth",
    "BluetoothLePlugin": "Bluetooth", "BLE": "Bluetooth",
    "WifiWizard": "WiFi", "WifiWizard2": "WiFi", "WifiAdmin": "WiFi", "WifiInfo": "WiFi",
    "SMSPlugin": "SMS", "Sms": "SMS", "SMS": "SMS", "SMSReceive": "SMS", "SmsReceiver": "SMS",
    "NfcPlugin": "NFC", "NFC": "NFC",
    "BarcodeScanner": "QRCode", "QRScanner": "QRCode", "CsZBar": "QRCode", "ZBar": "QRCode",
    "Contacts": INTERNAL, "Calendar": INTERNAL, "Geolocation": INTERNAL, "File": INTERNAL,
    "Camera": INTERNAL, "Storage": INTERNAL,
    "FacebookConnectPlugin": WEB, "Twitter": WEB, "ChildBrowser": WEB,
}


@dataclass(frozen=True)
class SourceCatalog:
    specs: tuple[SourceSpec, ...] = _BUILTIN_SPECS
    services: dict[str, str] = field(default_factory=lambda: dict(_BUILTIN_SERVICES))

    def lookup(self, dotted: str, kinds: Iterable[str] = KINDS) -> Optional[SourceSpec]:
        kinds = tuple(kinds)
        best = None
        for spec in self.specs:
            if spec.kind in kinds and spec.kind != "event" and spec.matches(dotted):
                if best is None or len(spec.api) > len(best.api):
                    best = spec
        return best

    def event(self, name: str) -> Optional[SourceSpec]:
        for spec in self.specs:
            if spec.kind == "event" and spec.api == name:
                return spec
        return None

    def service_channel(self, service: Optional[str]) -> str:
        if service is None:
            return UNKNOWN
        return self.services.get(service, UNKNOWN)


def default_catalog() -> SourceCatalog:
    return SourceCatalog()


_LINE = re.compile(r"^\s*(callback|return|event|promise|service)\s*:\s*([\w$.\-]+)\s*=\s*(\w+)\s*(?::\s*([\w.,\s]+))?$")


def apply_source_overrides(text: str, base: Optional[SourceCatalog] = None) -> SourceCatalog:
    base = base or default_catalog()
    specs = list(base.specs)
    services = dict(base.services)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _LINE.match(line)
        if not m:
            raise CatalogError(f"line {lineno}: expected kind:api=Channel[:args], got {raw.strip()!r}")
        kind, api, channel, args = m.groups()
        if channel not in SOURCE_CHANNELS:
            raise CatalogError(f"line {lineno}: unknown channel {channel!r}")
        if kind == "service":
            services[api] = channel
            continue
        callbacks = tuple(a.strip() for a in args.split(",")) if args else ("0",)
        for cb in callbacks:
            if not re.fullmatch(r"\d+(\.[\w$]+)?", cb):
                raise CatalogError(f"line {lineno}: bad callback position {cb!r}")
        specs = [s for s in specs if not (s.api == api and s.kind == kind)]
        specs.append(SourceSpec(api, channel, kind, callbacks))
    return SourceCatalog(tuple(specs), services)


def load_source_overrides(path: Union[str, Path], base: Optional[SourceCatalog] = None) -> SourceCatalog:
    return apply_source_overrides(Path(path).read_text(encoding="utf-8"), base)
