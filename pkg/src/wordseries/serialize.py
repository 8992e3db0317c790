"""JSON form of coefficient maps and normal-form results.

Exact entries store numerator/denominator pairs, float entries store real
and imaginary parts; both list words in canonical order so a save/load
roundtrip is bit-exact.
"""
from __future__ import annotations

import json
from pathlib import Path

from . import coefficients as cf
from .algebra import CoeffMap
from .errors import ConfigError
from .extended import FreqVector
from .normal_form import GAUGE, Decomposition, NormalFormResult


def coeffmap_to_json(m: CoeffMap, nonzero_only: bool = True) -> dict:
    entries = []
    for w, c in m.items():
        if nonzero_only and cf.is_zero(c):
            continue
        if m.mode == cf.EXACT:
            nr, dr, ni, di = cf.rational_parts(c)
            entries.append({"word": list(w), "num_re": nr, "den_re": dr, "num_im": ni, "den_im": di})
        else:
            c = complex(c)
            entries.append({"word": list(w), "re": c.real, "im": c.imag})
    return {"alphabet_size": m.alphabet_size, "order": m.order, "mode": m.mode, "entries": entries}


def coeffmap_from_json(obj: dict) -> CoeffMap:
    try:
        A, N, mode = int(obj["alphabet_size"]), int(obj["order"]), obj["mode"]
        if mode not in cf.MODES:
            raise ConfigError(f"unknown mode {mode!r}")
        values = {}
        for e in obj["entries"]:
            w = tuple(int(a) for a in e["word"])
            if mode == cf.EXACT:
                values[w] = cf.from_rational_parts(e["num_re"], e["den_re"], e["num_im"], e["den_im"])
            else:
                values[w] = complex(float(e["re"]), float(e["im"]))
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed coefficient map: {exc}") from exc
    return CoeffMap.from_dict(A, N, values, mode)


def _vector_json(v: FreqVector) -> dict:
    if v.is_exact:
        return {"model": v.model, "values": [cf.format_coeff(c) for c in v.exact]}
    return {"model": v.model, "values": [[c.real, c.imag] for c in v.values]}


def normal_form_to_json(result: NormalFormResult) -> dict:
    return {
        "metadata": {"v": _vector_json(result.v),
                     "resonant_word_count": len(result.resonant_support),
                     "gauge": result.gauge},
        "kappa": coeffmap_to_json(result.kappa),
        "beta_hat": coeffmap_to_json(result.beta_hat),
    }


def decomposition_to_json(dec: Decomposition) -> dict:
    return {
        "metadata": {"v": _vector_json(dec.v), "gauge": GAUGE},
        "rho_v": coeffmap_to_json(dec.rho_v),
        "beta_bar": coeffmap_to_json(dec.beta_bar),
        "rho": [{"u": _vector_json(u), "coefficients": coeffmap_to_json(r)} for u, r in dec.rho],
    }


def write_json(path, obj) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=1) + "\n")
    return path


def read_json(path) -> dict:
    return json.loads(Path(path).read_text())
