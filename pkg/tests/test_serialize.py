import json

import pytest

from picardforms.fjcore import build_basic
from picardforms.pmforms import form_by_name
from picardforms.serialize import (
    ChecksumError,
    DiskCache,
    SchemaVersionError,
    deserialize,
    serialize,
)


def same(F, G):
    return (
        len(F.components) == len(G.components)
        and all(a == b for a, b in zip(F.components, G.components))
        and tuple(F.weight) == tuple(G.weight)
        and (F.det_char, F.s4_sign, F.name) == (G.det_char, G.s4_sign, G.name)
    )


@pytest.mark.parametrize("name", ["zeta", "chi44", "E11", "chi4m2"])
def test_round_trip(name):
    F = form_by_name(name, 15, 12)
    data = serialize(F)
    G = deserialize(data)
    assert same(F, G)
    assert serialize(G) == data


def test_truncated_file():
    data = serialize(build_basic("zeta", 9, 8))
    with pytest.raises(ChecksumError):
        deserialize(data[: len(data) // 2])


def test_edited_payload():
    wrapper = json.loads(serialize(build_basic("zeta", 9, 8)))
    wrapper["form"]["name"] = "other"
    with pytest.raises(ChecksumError):
        deserialize(json.dumps(wrapper))


def test_schema_version():
    wrapper = json.loads(serialize(build_basic("zeta", 9, 8)))
    wrapper["schema_version"] = 99
    with pytest.raises(SchemaVersionError):
        deserialize(json.dumps(wrapper))


def test_schema_fields():
    form = json.loads(serialize(build_basic("E11", 9, 8)))["form"]
    assert {"name", "weight", "det_char", "s4_sign", "qv_thirds_trunc", "u_trunc", "components"} <= set(form)
    cell = form["components"][0]["terms"][0]["u_cells"][0]
    assert set(cell["coeff"]) == {"re", "rho", "c1_exp", "gam_exp"}
    assert form["depth_certified"] == {"qv_thirds": 9, "u": 8}


def test_cache_hit_is_byte_identical(tmp_path):
    cache = DiskCache(tmp_path)
    calls = []

    def build():
        calls.append(1)
        return build_basic("zeta", 9, 8)

    a = cache.form("t", build, n=1)
    b = cache.form("t", build, n=1)
    assert len(calls) == 1
    assert serialize(a) == serialize(b)
    assert not list(tmp_path.glob(".tmp-*"))


def test_corrupt_cache_entry_is_rebuilt(tmp_path):
    cache = DiskCache(tmp_path)
    cache.form("t", lambda: build_basic("zeta", 9, 8), n=2)
    (entry,) = tmp_path.glob("*.json")
    entry.write_bytes(entry.read_bytes()[:40])
    F = cache.form("t", lambda: build_basic("zeta", 9, 8), n=2)
    assert same(F, build_basic("zeta", 9, 8))


def test_disabled_cache(monkeypatch):
    monkeypatch.delenv("PM_CACHE", raising=False)
    assert not DiskCache().enabled
