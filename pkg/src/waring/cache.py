"""Append-only JSON-lines store of computed Waring results.

One record per line, keyed by (p, e, k, M, N_prime).  Records carry the
witness and the worst-class decomposition with its k-th roots so that a
record read back can be re-verified without recomputation.
"""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path

from .engine import Decomposition, LowerBoundCertificate, WaringResult
from .ring import Element

DEFAULT_PATH = Path.home() / ".cache" / "waring" / "results.jsonl"


def default_path() -> Path:
    env = os.environ.get("WARING_CACHE")
    return Path(env) if env else DEFAULT_PATH


def _digits(a: Element) -> list[int]:
    return list(a.digits)


def _el(d) -> Element:
    return Element(tuple(int(x) for x in d))


def decomposition_to_dict(dec: Decomposition) -> dict:
    return {
        "target": _digits(dec.target),
        "anchor": _digits(dec.anchor),
        "anchor_root": _digits(dec.anchor_root),
        "tail": [_digits(t) for t in dec.tail],
        "tail_roots": [_digits(t) for t in dec.tail_roots],
    }


def decomposition_from_dict(d: dict) -> Decomposition:
    return Decomposition(
        target=_el(d["target"]),
        anchor=_el(d["anchor"]),
        tail=tuple(_el(t) for t in d["tail"]),
        anchor_root=_el(d["anchor_root"]),
        tail_roots=tuple(_el(t) for t in d["tail_roots"]),
    )


def to_record(r: WaringResult) -> dict:
    return {
        "p": r.p,
        "e": r.e,
        "k": r.k,
        "M": r.M,
        "N_prime": r.N_prime,
        "lower": r.lower,
        "upper": r.upper,
        "g": r.g,
        "witness_digits": _digits(r.witness.witness),
        "witness_m": r.witness.m,
        "delegated_from": r.delegated_from,
        "decomposition": [decomposition_to_dict(r.worst_class_decomposition)],
    }


def from_record(rec: dict) -> WaringResult:
    cert = LowerBoundCertificate(_el(rec["witness_digits"]), rec["N_prime"], rec["witness_m"])
    return WaringResult(
        p=rec["p"],
        e=rec["e"],
        k=rec["k"],
        M=rec["M"],
        N_prime=rec["N_prime"],
        lower=rec["lower"],
        upper=rec["upper"],
        witness=cert,
        worst_class_decomposition=decomposition_from_dict(rec["decomposition"][0]),
        delegated_from=rec.get("delegated_from"),
    )


class ResultCache:
    """Reads the whole file on lookup; appends are serialized by a lock."""

    def __init__(self, path: Path | str | None = None):
        self.path = Path(path) if path is not None else default_path()
        self._lock = threading.Lock()

    def records(self):
        if not self.path.exists():
            return
        with self.path.open() as f:
            for line in f:
                line = line.strip()
                if not line:
                    continue
                try:
                    yield json.loads(line)
                except json.JSONDecodeError:
                    continue  # torn line from an interrupted writer

    def get(self, p: int, e: int, k: int, M: int, N_prime: int | None = None,
            auto_cap: int | None = None) -> WaringResult | None:
        """Latest matching record.

        With ``N_prime`` the key must match exactly.  Without it (automatic
        precision) a resolved record qualifies, as does an unresolved one
        taken at ``auto_cap``.
        """
        found = None
        for rec in self.records():
            if (rec["p"], rec["e"], rec["k"], rec["M"]) != (p, e, k, M):
                continue
            if N_prime is not None:
                ok = rec["N_prime"] == N_prime
            else:
                ok = rec["g"] is not None or rec["N_prime"] == auto_cap
            if ok:
                found = rec
        return from_record(found) if found else None

    def put(self, r: WaringResult) -> None:
        line = json.dumps(to_record(r), separators=(",", ":")) + "\n"
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a") as f:
                f.write(line)
