"""Declarative TOML model files.

A model file describes the fields, the commuting generators and their
frequency table, the vector ``v``, the perturbation weights and the
experiment settings.  Everything is validated before any computation and
errors point at the offending line.  Three shorthand kinds build the
letters automatically: ``eigen_split``, ``angle`` and ``action_angle``;
``explicit`` (the default) lists them one by one.

Polynomials are lists of terms ``{c = "1/2-3*I", m = [2, 0, 1]}`` where
``m`` holds one exponent per variable (a Fourier index for angle variables).
"""
from __future__ import annotations

import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from . import coefficients as cf
from .algebra import CoeffMap
from .errors import ConfigError
from .extended import GENERIC, RATIONAL, FreqTable, FreqVector
from .fields import Poly, hamiltonian_field
from .models import Model, action_angle_model, angle_model, eigen_split

KINDS = ("explicit", "eigen_split", "angle", "action_angle")
TOP_KEYS = {"name", "kind", "dim", "angles", "n_dof", "frequency", "generators", "letters",
            "eigenvalues", "perturbation", "n_y", "m", "d", "harmonics", "beta", "experiment"}
EXPERIMENT_KEYS = {"order", "eps", "t_final", "t_points", "x0", "seed", "u", "mode", "tolerance"}


@dataclass
class ExperimentConfig:
    order: int = 3
    eps: tuple = (0.1, 0.05, 0.025)
    t_final: float = 1.0
    t_points: tuple = (0.25, 0.5, 0.75, 1.0)
    x0: tuple | None = None
    seed: int = 0
    u: tuple | None = None
    mode: str = cf.EXACT
    tolerance: float = 1e-8

    def validate(self, where=None):
        if self.order < 1:
            raise ConfigError("order must be at least 1", where)
        if not self.eps or any(e <= 0 for e in self.eps):
            raise ConfigError("eps values must be positive", where)
        if any(a <= b for a, b in zip(self.eps, self.eps[1:])):
            raise ConfigError("eps values must be strictly descending", where)
        if self.mode not in cf.MODES:
            raise ConfigError(f"mode must be one of {cf.MODES}", where)
        if self.t_final <= 0:
            raise ConfigError("t_final must be positive", where)


@dataclass
class ModelConfig:
    model: Model
    v: FreqVector
    beta_weights: tuple
    experiment: ExperimentConfig = field(default_factory=ExperimentConfig)
    path: str | None = None

    def beta(self, order: int | None = None, mode: str | None = None) -> CoeffMap:
        """Infinitesimal character supported on letters with the configured weights."""
        order = order or self.experiment.order
        m = CoeffMap.letters(self.model.alphabet_size, order, cf.EXACT, self.beta_weights)
        return m.to_float() if (mode or self.experiment.mode) == cf.FLOAT else m

    def u_vector(self) -> FreqVector | None:
        if self.experiment.u is None:
            return None
        return FreqVector.rational(self.model.table, self.experiment.u)


class _Locator:
    """Best-effort line numbers for keys and array-of-table headers."""

    def __init__(self, text: str):
        self.lines = text.splitlines()

    def key(self, name: str, nth: int = 0):
        pat = re.compile(rf"^\s*(\[\[?\s*{re.escape(name)}\s*\]\]?|{re.escape(name)}\s*=)")
        hits = [i + 1 for i, line in enumerate(self.lines) if pat.match(line)]
        return hits[nth] if nth < len(hits) else (hits[-1] if hits else None)

    def table(self, name: str, nth: int = 0):
        pat = re.compile(rf"^\s*\[\[\s*{re.escape(name)}\s*\]\]")
        hits = [i + 1 for i, line in enumerate(self.lines) if pat.match(line)]
        return hits[nth] if nth < len(hits) else self.key(name)

    def within(self, start, name: str):
        """Line of ``name = ...`` inside the block opened at ``start``."""
        if start is None:
            return None
        pat = re.compile(rf"^\s*{re.escape(name)}\s*=")
        for i in range(start, len(self.lines)):
            if self.lines[i].lstrip().startswith("["):
                break
            if pat.match(self.lines[i]):
                return i + 1
        return start


def _coeff(x, where):
    if isinstance(x, bool) or isinstance(x, float):
        raise ConfigError(f"coefficient {x!r} must be an integer or an exact string like '1/3-2*I'", where)
    try:
        return cf.parse_gauss(x)
    except Exception as exc:
        raise ConfigError(f"cannot parse coefficient {x!r}: {exc}", where) from exc


def _complex(x, where) -> complex:
    try:
        if isinstance(x, (int, float)):
            return complex(x)
        if isinstance(x, list) and len(x) == 2:
            return complex(float(x[0]), float(x[1]))
        return cf.to_complex(cf.parse_gauss(x))
    except Exception as exc:
        raise ConfigError(f"cannot parse number {x!r}", where) from exc


def _poly(terms, nvars, angles, where) -> Poly:
    if not isinstance(terms, list):
        raise ConfigError("a polynomial is a list of {c, m} terms", where)
    acc = {}
    for t in terms:
        if not isinstance(t, dict) or set(t) - {"c", "m"} or "c" not in t:
            raise ConfigError(f"bad term {t!r}; expected {{c = ..., m = [...]}}", where)
        m = tuple(t.get("m", [0] * nvars))
        if len(m) != nvars or not all(isinstance(e, int) for e in m):
            raise ConfigError(f"term exponent {list(m)} needs {nvars} integers", where)
        if any(e < 0 for i, e in enumerate(m) if i not in angles):
            raise ConfigError(f"negative exponent in {list(m)}", where)
        acc[m] = acc.get(m, cf.zero(cf.EXACT)) + _coeff(t["c"], where)
    return Poly(nvars, acc, angles)


def _field(comps, nvars, angles, where):
    if not isinstance(comps, list) or len(comps) != nvars:
        raise ConfigError(f"a field needs {nvars} components", where)
    return tuple(_poly(c, nvars, angles, where) for c in comps)


def _check_keys(obj, allowed, where, what):
    extra = set(obj) - set(allowed)
    if extra:
        raise ConfigError(f"unknown key(s) {sorted(extra)} in {what}", where)


def _require(obj, key, where, what):
    if key not in obj:
        raise ConfigError(f"missing key {key!r} in {what}", where)
    return obj[key]


def load_model_config(path) -> ModelConfig:
    text = Path(path).read_text()
    cfg = parse_model_config(text)
    cfg.path = str(path)
    return cfg


def parse_model_config(text: str) -> ModelConfig:
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        m = re.search(r"line (\d+)", str(exc))
        raise ConfigError(f"TOML syntax: {exc}", int(m.group(1)) if m else None) from exc
    loc = _Locator(text)
    _check_keys(raw, TOP_KEYS, None, "model file")
    kind = raw.get("kind", "explicit")
    if kind not in KINDS:
        raise ConfigError(f"kind must be one of {KINDS}", loc.key("kind"))
    name = str(raw.get("name", ""))

    if kind == "explicit":
        model = _explicit(raw, loc, name)
    elif kind == "eigen_split":
        model = _eigen(raw, loc, name)
    elif kind == "angle":
        model = _angle(raw, loc, name)
    else:
        model = _action_angle(raw, loc, name)

    freq = _require(raw, "frequency", loc.key("frequency"), "model file")
    fl = loc.key("frequency")
    _check_keys(freq, {"values", "model"}, fl, "[frequency]")
    values = _require(freq, "values", fl, "[frequency]")
    if len(values) != model.d:
        raise ConfigError(f"[frequency] needs {model.d} values", loc.key("values"))
    vmodel = freq.get("model", RATIONAL)
    if vmodel == RATIONAL:
        v = FreqVector.rational(model.table, [_coeff(x, loc.key("values")) for x in values])
    elif vmodel == GENERIC:
        v = FreqVector.generic(model.table, [_complex(x, loc.key("values")) for x in values])
    else:
        raise ConfigError(f"frequency model must be {RATIONAL!r} or {GENERIC!r}", fl)

    beta = raw.get("beta", {})
    _check_keys(beta, {"weights"}, loc.key("beta"), "[beta]")
    weights = beta.get("weights", [1] * model.alphabet_size)
    if len(weights) != model.alphabet_size:
        raise ConfigError(f"[beta] weights needs {model.alphabet_size} entries", loc.key("weights"))
    weights = tuple(_coeff(w, loc.key("weights")) for w in weights)

    exp = _experiment(raw.get("experiment", {}), loc, model)
    return ModelConfig(model, v, weights, exp)


def _explicit(raw, loc, name) -> Model:
    dim = _require(raw, "dim", None, "model file")
    angles = tuple(raw.get("angles", []))
    if not isinstance(dim, int) or dim < 1:
        raise ConfigError("dim must be a positive integer", loc.key("dim"))
    if any(not 0 <= a < dim for a in angles):
        raise ConfigError("angle indices out of range", loc.key("angles"))
    n_dof = raw.get("n_dof")
    gens_raw = _require(raw, "generators", None, "model file")
    letters_raw = _require(raw, "letters", None, "model file")
    gens, gen_h = [], []
    for i, g in enumerate(gens_raw):
        where = loc.table("generators", i)
        _check_keys(g, {"field", "hamiltonian"}, where, "[[generators]]")
        f, h = _field_or_hamiltonian(g, dim, angles, n_dof, loc.within(where, "field" if "field" in g else "hamiltonian"))
        gens.append(f)
        gen_h.append(h)
    fields, nus, labels, hams = [], [], [], []
    for i, entry in enumerate(letters_raw):
        where = loc.table("letters", i)
        _check_keys(entry, {"label", "nu", "field", "hamiltonian"}, where, "[[letters]]")
        nu = _require(entry, "nu", where, "[[letters]]")
        nu_line = loc.within(where, "nu")
        if len(nu) != len(gens):
            raise ConfigError(f"nu needs {len(gens)} entries (one per generator)", nu_line)
        nus.append(tuple(_coeff(x, nu_line) for x in nu))
        body = loc.within(where, "field" if "field" in entry else "hamiltonian")
        f, h = _field_or_hamiltonian(entry, dim, angles, n_dof, body)
        fields.append(f)
        hams.append(h)
        labels.append(str(entry.get("label", i)))
    hamiltonian = all(h is not None for h in hams + gen_h)
    if any(h is not None for h in hams + gen_h) and not hamiltonian:
        raise ConfigError("either every field or none is given by a Hamiltonian", loc.key("letters"))
    return Model(dim, fields, gens, FreqTable(tuple(nus)), angles, tuple(labels),
                 tuple(hams) if hamiltonian else None, tuple(gen_h) if hamiltonian else None,
                 n_dof, name)


def _field_or_hamiltonian(obj, dim, angles, n_dof, where):
    if ("field" in obj) == ("hamiltonian" in obj):
        raise ConfigError("give exactly one of 'field' or 'hamiltonian'", where)
    if "field" in obj:
        return _field(obj["field"], dim, angles, where), None
    if n_dof is None or 2 * n_dof > dim:
        raise ConfigError("Hamiltonian entries need n_dof with 2*n_dof <= dim", where)
    H = _poly(obj["hamiltonian"], dim, angles, where)
    return hamiltonian_field(H, n_dof), H


def _eigen(raw, loc, name) -> Model:
    eig = _require(raw, "eigenvalues", None, "model file")
    pert = _require(raw, "perturbation", None, "model file")
    _check_keys(pert, {"field"}, loc.key("perturbation"), "[perturbation]")
    lams = [_coeff(x, loc.key("eigenvalues")) for x in eig]
    f = _field(_require(pert, "field", loc.key("perturbation"), "[perturbation]"), len(lams), (),
               loc.key("field"))
    model, _ = eigen_split(lams, f, name)
    return model


def _harmonics(raw, loc, nvars, angles, key):
    out = {}
    for i, h in enumerate(_require(raw, "harmonics", None, "model file")):
        where = loc.table("harmonics", i)
        _check_keys(h, {"k", key}, where, "[[harmonics]]")
        k = tuple(_require(h, "k", where, "[[harmonics]]"))
        if k in out:
            raise ConfigError(f"duplicate harmonic {list(k)}", where)
        val = _require(h, key, where, "[[harmonics]]")
        out[k] = _field(val, nvars, angles, where) if key == "field" else _poly(val, nvars, angles, where)
    return out


def _angle(raw, loc, name) -> Model:
    n_y = _require(raw, "n_y", None, "model file")
    d = _require(raw, "d", None, "model file")
    D = n_y + d
    harmonics = _harmonics(raw, loc, D, tuple(range(n_y, D)), "field")
    if any(len(k) != d for k in harmonics):
        raise ConfigError(f"harmonic indices need {d} entries", loc.key("harmonics"))
    return angle_model(n_y, harmonics, name=name)


def _action_angle(raw, loc, name) -> Model:
    m = _require(raw, "m", None, "model file")
    d = _require(raw, "d", None, "model file")
    D = 2 * (m + d)
    harmonics = _harmonics(raw, loc, D, tuple(range(2 * m + d, D)), "hamiltonian")
    if any(len(k) != d for k in harmonics):
        raise ConfigError(f"harmonic indices need {d} entries", loc.key("harmonics"))
    return action_angle_model(m, d, harmonics, name=name)


def _experiment(raw, loc, model) -> ExperimentConfig:
    where = loc.key("experiment")
    _check_keys(raw, EXPERIMENT_KEYS, where, "[experiment]")
    exp = ExperimentConfig()
    if "order" in raw:
        exp.order = int(raw["order"])
    if "eps" in raw:
        exp.eps = tuple(float(e) for e in raw["eps"])
    if "t_final" in raw:
        exp.t_final = float(raw["t_final"])
    if "t_points" in raw:
        exp.t_points = tuple(float(t) for t in raw["t_points"])
    if "x0" in raw:
        if len(raw["x0"]) != model.dim:
            raise ConfigError(f"x0 needs {model.dim} entries", loc.key("x0"))
        exp.x0 = tuple(_complex(x, loc.key("x0")) for x in raw["x0"])
    if "seed" in raw:
        exp.seed = int(raw["seed"])
    if "u" in raw:
        if len(raw["u"]) != model.d:
            raise ConfigError(f"u needs {model.d} entries", loc.key("u"))
        exp.u = tuple(_coeff(x, loc.key("u")) for x in raw["u"])
    if "mode" in raw:
        exp.mode = raw["mode"]
    if "tolerance" in raw:
        exp.tolerance = float(raw["tolerance"])
    exp.validate(where)
    return exp
