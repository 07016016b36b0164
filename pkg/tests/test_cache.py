import json
import threading

from waring.cache import ResultCache, from_record, to_record
from waring.engine import waring_number
from waring.ring import RingSpec
from waring.verify import verify_decomposition, verify_lower_certificate


def test_round_trip_and_reverify(tmp_path):
    c = ResultCache(tmp_path / "r.jsonl")
    for spec in [RingSpec(2, 2, 6), RingSpec(2, 1, 4), RingSpec(3, 2, 3)]:
        fresh = waring_number(spec)
        c.put(fresh)
        hit = c.get(spec.p, spec.e, spec.k, fresh.M, auto_cap=None)
        assert hit == fresh
        assert verify_decomposition(hit.certificate_spec, hit.worst_class_decomposition)
        assert verify_lower_certificate(hit.certificate_spec, hit.witness)


def test_record_fields(tmp_path):
    r = waring_number(RingSpec(2, 3, 10))
    rec = to_record(r)
    for f in ["p", "e", "k", "M", "N_prime", "lower", "upper", "g", "witness_digits", "decomposition"]:
        assert f in rec
    assert from_record(json.loads(json.dumps(rec))) == r


def test_keying(tmp_path):
    c = ResultCache(tmp_path / "r.jsonl")
    r = waring_number(RingSpec(2, 3, 10), lb_precision=7)  # unresolved at N' = 7
    c.put(r)
    assert c.get(2, 3, 10, 7, 7) == r
    assert c.get(2, 3, 10, 7, 8) is None
    assert c.get(2, 3, 10, 7, None, auto_cap=17) is None  # unresolved and not at the cap
    assert c.get(2, 2, 10, 7, 7) is None


def test_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("WARING_CACHE", str(tmp_path / "x.jsonl"))
    assert ResultCache().path == tmp_path / "x.jsonl"


def test_append_only_concurrent(tmp_path):
    path = tmp_path / "r.jsonl"
    c = ResultCache(path)
    r = waring_number(RingSpec(2, 2, 6))
    threads = [threading.Thread(target=c.put, args=(r,)) for _ in range(16)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    lines = path.read_text().splitlines()
    assert len(lines) == 16 and all(json.loads(x)["g"] == 6 for x in lines)
    path.write_text(path.read_text() + '{"torn')
    assert c.get(2, 2, 6, 5) == r
