"""Append-only JSON-lines cache of per-partition weight records.

One record per line, keyed by (dimension, canonical partition).  A hit
is only trusted after the vertex fingerprint is recomputed and matches;
stale lines are recomputed and re-appended, and compaction rewrites the
file keeping the last record per key.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction

from .forms import (
    FormProduct,
    PartitionWeight,
    SpecializedValue,
    compute_weight,
    vertex_fingerprint,
)
from .kclass import vertex

ENV_CACHE_DIR = "DTVERTEX_CACHE_DIR"


def default_cache_path():
    base = os.environ.get(ENV_CACHE_DIR)
    return os.path.join(base, "weights.jsonl") if base else None


def record_from_weight(w):
    return {
        "d": w.d,
        "partition": w.partition.serialize(),
        "arity": w.partition.arity,
        "fingerprint": w.fingerprint,
        "verdict": w.verdict,
        "sqrt": w.sqrt.serialize(),
        "taut": w.taut.serialize(),
        "specialized": w.value.serialize(),
        "omega": str(w.omega),
        "sign": w.sign,
    }


def weight_from_record(rec, pi):
    value = SpecializedValue.from_serialized(rec["specialized"])
    sqrt = FormProduct.from_serialized(rec["sqrt"])
    taut = FormProduct.from_serialized(rec["taut"])
    return PartitionWeight(
        pi,
        rec["d"],
        rec["verdict"],
        rec["fingerprint"],
        sqrt,
        taut,
        taut * sqrt,
        value,
        Fraction(rec["omega"]),
        rec["sign"],
    )


class WeightCache:
    """JSONL-backed store; in-memory index of the last record per key."""

    def __init__(self, path):
        self.path = path
        self.records = {}
        if path and os.path.exists(path):
            with open(path) as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    rec = json.loads(line)
                    self.records[(rec["d"], rec["partition"])] = rec

    def append(self, rec):
        self.records[(rec["d"], rec["partition"])] = rec
        if self.path:
            with open(self.path, "a") as fh:
                fh.write(json.dumps(rec, sort_keys=True, separators=(",", ":")) + "\n")

    def compact(self):
        """Rewrite the file with one line per key, sorted."""
        if not self.path:
            return 0
        keys = sorted(self.records)
        with open(self.path, "w") as fh:
            for k in keys:
                fh.write(
                    json.dumps(self.records[k], sort_keys=True, separators=(",", ":"))
                    + "\n"
                )
        return len(keys)

    def get_weight(self, pi, d):
        """Weight for a partition, re-verifying the vertex fingerprint."""
        rec = self.records.get((d, pi.serialize()))
        if rec is not None:
            if rec["fingerprint"] == vertex_fingerprint(vertex(pi, d)):
                return weight_from_record(rec, pi)
        w = compute_weight(pi, d)
        self.append(record_from_weight(w))
        return w
