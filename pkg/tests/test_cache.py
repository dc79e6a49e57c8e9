import json

import pytest

from ospq import cache
from ospq.repcore import irreducible


@pytest.fixture
def tmp_cache(tmp_path):
    cache.set_cache_dir(tmp_path)
    yield tmp_path
    cache.set_cache_dir(None)


def test_round_trip(tmp_cache):
    key = cache.cache_key(1, "demo", [1, 2])
    payload = cache._payload("demo", {"x": 1})
    assert cache.cache_put(key, payload)
    assert cache.cache_get(key) == payload


def test_missing_entry_is_a_miss(tmp_cache):
    assert cache.cache_get(cache.cache_key(1, "demo", [])) is None


def test_no_directory_means_no_caching():
    cache.set_cache_dir(None)
    assert cache.cache_put("k", b"{}") is False
    assert cache.cache_get("k") is None


def test_entries_are_write_once(tmp_cache):
    key = cache.cache_key(1, "demo", [])
    assert cache.cache_put(key, cache._payload("demo", 1))
    assert not cache.cache_put(key, cache._payload("demo", 2))
    assert json.loads(cache.cache_get(key))["body"] == 1
    assert not list(tmp_cache.glob(".tmp-*"))


def test_corrupt_entry_is_ignored(tmp_cache):
    key = cache.cache_key(1, "demo", [])
    (tmp_cache / f"{key}.json").write_text("{not json")
    assert cache.cache_get(key) is None


def test_schema_mismatch_is_ignored(tmp_cache):
    key = cache.cache_key(1, "demo", [])
    (tmp_cache / f"{key}.json").write_text(json.dumps({"schema": cache.SCHEMA_VERSION + 1, "body": 0}))
    assert cache.cache_get(key) is None


def test_keys_depend_on_every_argument():
    keys = {cache.cache_key(1, "a", [1]), cache.cache_key(2, "a", [1]), cache.cache_key(1, "b", [1]), cache.cache_key(1, "a", [2])}
    assert len(keys) == 4


def test_irreducible_is_restored_from_disk(tmp_cache):
    w = irreducible(1, (2,))
    cache.store_irreducible(1, (2,), w, [()] * w.dim)
    mod, words = cache.load_irreducible(1, (2,))
    assert mod.to_json() == w.to_json()
    assert len(words) == w.dim
