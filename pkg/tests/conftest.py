from __future__ import annotations

from pathlib import Path

import pytest

from hybridscan.cli import fixtures_root

FIXTURES = fixtures_root()
APPS = FIXTURES / "apps"
PLUGINS = FIXTURES / "plugins"
PAYLOADS = FIXTURES / "payloads"


@pytest.fixture
def apps_dir() -> Path:
    return APPS


@pytest.fixture
def plugins_dir() -> Path:
    return PLUGINS


@pytest.fixture
def make_app(tmp_path):
    """Write ``{relative path: text}`` into a fresh app directory."""

    def make(files: dict[str, str], name: str = "app") -> Path:
        root = tmp_path / name
        for rel, text in files.items():
            p = root / rel
            p.parent.mkdir(parents=True, exist_ok=True)
            p.write_text(text, encoding="utf-8")
        return root

    return make
