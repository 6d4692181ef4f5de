"""
Canonical JSON for Fourier-Jacobi forms, and the on-disk cache.

The payload is wrapped as {schema_version, checksum, form}; the checksum is
sha256 over the canonical encoding of the form, so a truncated or edited file
is rejected on load.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path

from .arith import CoeffScalar, EisRat
from .fjcore import FJSeries, VectorFJ, row_poly

SCHEMA_VERSION = 1


class SerializationError(ValueError):
    pass


class SchemaVersionError(SerializationError):
    pass


class ChecksumError(SerializationError):
    pass


def _q(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def series_to_dict(s, index=0, with_poly=False):
    e, g = s.grading if s.grading is not None else (0, 0)
    terms = {}
    for t, m, r in s.cells():
        terms.setdefault(t, []).append({"m": m, "coeff": {"re": _q(r.re), "rho": _q(r.rh), "c1_exp": m + e, "gam_exp": g}})
    out = []
    for t in sorted(terms):
        entry = {"t": t, "u_cells": terms[t]}
        if with_poly:
            p = row_poly(s, t)
            if p is not None:
                entry["elliptic_poly"] = p.render()
        out.append(entry)
    return {"index": index, "qv_thirds_trunc": s.qtrunc, "u_trunc": s.utrunc, "terms": out}


def form_to_dict(F, with_poly=False):
    if isinstance(F, FJSeries):
        F = VectorFJ([F], (0, None))
    comps = [series_to_dict(c, i, with_poly) for i, c in enumerate(F.components)]
    w = [F.weight[0], _q(F.weight[1]) if F.weight[1] is not None else None]
    if w[1] is not None and Fraction(w[1]).denominator == 1:
        w[1] = int(Fraction(w[1]))
    return {
        "name": F.name,
        "weight": w,
        "det_char": F.det_char,
        "s4_sign": F.s4_sign,
        "qv_thirds_trunc": F.qtrunc,
        "u_trunc": F.utrunc,
        "depth_certified": {"qv_thirds": F.qtrunc, "u": F.utrunc},
        "components": comps,
    }


def series_from_dict(d):
    cells = {}
    for term in d["terms"]:
        for cell in term["u_cells"]:
            c = cell["coeff"]
            r = EisRat(Fraction(c["re"]), Fraction(c["rho"]))
            cells[(term["t"], cell["m"])] = CoeffScalar.monomial(r, c["c1_exp"], c["gam_exp"])
    return FJSeries.from_cells(cells, d["qv_thirds_trunc"], d["u_trunc"])


def form_from_dict(d):
    comps = [series_from_dict(c) for c in sorted(d["components"], key=lambda c: c["index"])]
    j, k = d["weight"]
    if k is not None:
        k = Fraction(k)
        k = int(k) if k.denominator == 1 else k
    return VectorFJ(comps, (j, k), d["det_char"], d["s4_sign"], d["name"])


def serialize(F, with_poly=False):
    form = form_to_dict(F, with_poly)
    body = canonical(form)
    wrapper = {"schema_version": SCHEMA_VERSION, "checksum": hashlib.sha256(body.encode()).hexdigest(), "form": form}
    return canonical(wrapper).encode()


def deserialize(data):
    try:
        wrapper = json.loads(data)
    except (ValueError, UnicodeDecodeError) as exc:
        raise ChecksumError("payload is not valid JSON (truncated?)") from exc
    if not isinstance(wrapper, dict) or "form" not in wrapper:
        raise SerializationError("missing form payload")
    if wrapper.get("schema_version") != SCHEMA_VERSION:
        raise SchemaVersionError("schema version %r, expected %d" % (wrapper.get("schema_version"), SCHEMA_VERSION))
    body = canonical(wrapper["form"])
    if hashlib.sha256(body.encode()).hexdigest() != wrapper.get("checksum"):
        raise ChecksumError("checksum mismatch")
    return form_from_dict(wrapper["form"])


# ---------------------------------------------------------------- disk cache


def code_version():
    """sha256 over the package sources; any code change invalidates the cache."""
    h = hashlib.sha256()
    root = Path(__file__).parent
    for p in sorted(root.glob("*.py")):
        h.update(p.name.encode())
        h.update(p.read_bytes())
    return h.hexdigest()[:16]


class DiskCache:
    def __init__(self, directory=None):
        directory = directory or os.environ.get("PM_CACHE")
        self.dir = Path(directory) if directory else None
        self.version = code_version()

    @property
    def enabled(self):
        return self.dir is not None

    def key(self, op, **args):
        raw = canonical({"op": op, "args": args, "code": self.version})
        return hashlib.sha256(raw.encode()).hexdigest()

    def get(self, key):
        if not self.enabled:
            return None
        p = self.dir / (key + ".json")
        try:
            return p.read_bytes()
        except FileNotFoundError:
            return None

    def put(self, key, data):
        if not self.enabled:
            return
        self.dir.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.dir, prefix=".tmp-")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(data)
            os.replace(tmp, self.dir / (key + ".json"))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def form(self, op, build, **args):
        """Cached VectorFJ: a corrupt entry is rebuilt rather than trusted."""
        k = self.key(op, **args)
        data = self.get(k)
        if data is not None:
            try:
                return deserialize(data)
            except SerializationError:
                pass
        F = build()
        self.put(k, serialize(F))
        return F
