from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from hybridscan.channels import (
    CatalogError, Delivery, FieldSpec, UnknownField, apply_overrides, builtin_channels, get_channel,
    load_overrides, validate_value,
)


def test_builtin_names_and_delivery():
    got = {c.name: c.delivery for c in builtin_channels()}
    assert got == {
        "WiFi": Delivery.SINGLE_FIELD_TIMED, "Bluetooth": Delivery.SINGLE_FIELD_TIMED,
        "NFC": Delivery.SINGLE_SHOT, "SMS": Delivery.SINGLE_SHOT, "QRCode": Delivery.SINGLE_SHOT,
        "MP3MP4": Delivery.MULTI_FIELD, "JPEG": Delivery.MULTI_FIELD,
    }


@pytest.mark.parametrize("alias,name", [("wi-fi", "WiFi"), ("qr", "QRCode"), ("jpg", "JPEG"), ("BLUETOOTH", "Bluetooth")])
def test_aliases(alias, name):
    assert get_channel(alias).name == name


def test_unknown_channel_and_field():
    with pytest.raises(KeyError):
        get_channel("zigbee")
    with pytest.raises(UnknownField):
        get_channel("wifi").field("Password")


@pytest.mark.parametrize("channel,field,limit", [("WiFi", "SSID", 32), ("Bluetooth", "DeviceName", 248), ("SMS", "MessageBody", 140), ("JPEG", "Model", 32), ("JPEG", "Maker", 42)])
def test_hard_limit_boundary(channel, field, limit):
    ch = get_channel(channel)
    assert validate_value(ch, field, "a" * limit)
    over = validate_value(ch, field, "a" * (limit + 1))
    assert not over and not over.unverified
    assert over.length == limit + 1


def test_lower_bound_fields_flag_long_values():
    nfc = get_channel("nfc")
    assert validate_value(nfc, "Content", "x" * 2000)
    v = validate_value(nfc, "Content", "x" * 2001)
    assert not v and v.unverified and "unverified" in v.reason
    assert nfc.field("Content").describe() == "> 2000"


def test_non_ascii_rejected():
    v = validate_value(get_channel("wifi"), "ssid", "café")
    assert not v and v.reason == "non-ASCII"


def test_field_spec_rejects_zero():
    with pytest.raises(ValueError):
        FieldSpec("x", 0)


def test_override_tightens_and_adds(tmp_path):
    path = tmp_path / "limits.txt"
    path.write_text("# lab measurements\nWiFi.SSID=20\nLoRa.Payload=51\nSMS.Sender=11\n")
    channels = load_overrides(path)
    assert get_channel("wifi", channels).field("SSID").max_length == 20
    lora = get_channel("LoRa", channels)
    assert lora.field("Payload").max_length == 51
    sms = get_channel("sms", channels)
    assert sms.field_names == ("MessageBody", "Sender") and sms.delivery is Delivery.MULTI_FIELD
    # builtins untouched
    assert get_channel("wifi").field("SSID").max_length == 32


def test_override_makes_lower_bound_hard():
    channels = apply_overrides("jpeg.title=500")
    spec = get_channel("jpeg", channels).field("Title")
    assert spec.max_length == 500 and not spec.lower_bound_only


@pytest.mark.parametrize("text", ["WiFi.SSID=33", "WiFi.SSID=0", "WiFi.SSID=ten", "nonsense"])
def test_override_errors(text):
    with pytest.raises(CatalogError):
        apply_overrides(text)


@given(st.text(alphabet=st.characters(min_codepoint=32, max_codepoint=126), max_size=300))
def test_validation_matches_length(value):
    v = validate_value(get_channel("bluetooth"), "DeviceName", value)
    assert bool(v) == (len(value) <= 248)
