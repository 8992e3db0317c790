"""Command-line driver.

Usage::

    wordseries <command> --model FILE [--order N] [--eps 0.1,0.05] [--out DIR]
                         [--seed S] [--mode exact|float] [--in DIR]

Commands: ``normal-form``, ``invariants``, ``decompose``, ``drift``,
``flow-compare``, ``verify`` and ``check-residual`` (re-validates the files
``normal-form`` wrote to ``--in``).  Exit codes: 0 ok, 1 validation error,
2 property failure, 3 small divisor.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import random
import sys
from pathlib import Path

import numpy as np

from . import coefficients as cf
from .algebra import CoeffMap, is_character, random_character, random_infinitesimal
from .config import ModelConfig, load_model_config
from .errors import (ConfigError, IntegrationError, PreconditionError, SmallDivisorError, UnsupportedModelError,
                     WordSeriesError)
from .extended import ALGEBRA, ExtCoeff, ext_bracket, ext_exp, ext_log, nu_word, resonance_space
from .harness import drift, flow_compare
from .models import assemble_hamiltonian, check_poisson_assumption, verify_assumption
from .normal_form import (beta_bar_recursion, check_normal_form, decompose, normal_form,
                          normal_form_residual, rho_recursion, verify_unique_characterization,
                          zero_letter)
from .serialize import (coeffmap_from_json, coeffmap_to_json, decomposition_to_json,
                        normal_form_to_json, read_json, write_json)

log = logging.getLogger("wordseries")

EXIT_OK, EXIT_VALIDATION, EXIT_PROPERTY, EXIT_SMALL_DIVISOR = 0, 1, 2, 3
SYMBOLIC_ORDER_CAP = 4


def _word_label(cfg: ModelConfig, w) -> str:
    return " ".join(cfg.model.labels[a] for a in w) or "∅"


def _order(cfg: ModelConfig, args) -> int:
    return args.order or cfg.experiment.order


def _mode(cfg: ModelConfig, args) -> str:
    return args.mode or cfg.experiment.mode


def _eps(cfg: ModelConfig, args) -> tuple:
    if not args.eps:
        return cfg.experiment.eps
    vals = tuple(float(x) for chunk in args.eps for x in chunk.split(",") if x.strip())
    if not vals or any(e <= 0 for e in vals) or any(a <= b for a, b in zip(vals, vals[1:])):
        raise ConfigError("--eps values must be positive and strictly descending")
    return vals


def _x0(cfg: ModelConfig, seed: int) -> np.ndarray:
    if cfg.experiment.x0 is not None:
        return np.array(cfg.experiment.x0, dtype=complex)
    rng = np.random.default_rng(seed)
    x = rng.uniform(-0.5, 0.5, cfg.model.dim).astype(complex)
    for a in cfg.model.angles:
        x[a] = rng.uniform(0, 2 * np.pi)
    return x


def _summary(out: Path, lines: list[str]):
    out.mkdir(parents=True, exist_ok=True)
    (out / "summary.txt").write_text("\n".join(lines) + "\n")
    for line in lines:
        print(line)


# ---------------------------------------------------------------------------

def cmd_normal_form(cfg: ModelConfig, args) -> int:
    N, out = _order(cfg, args), Path(args.out)
    beta = cfg.beta(N, _mode(cfg, args))
    result = normal_form(cfg.v, beta)
    report = check_normal_form(cfg.v, beta, result)
    write_json(out / "normal_form.json", normal_form_to_json(result))
    write_json(out / "kappa.json", coeffmap_to_json(result.kappa))
    write_json(out / "beta_hat.json", coeffmap_to_json(result.beta_hat))
    rows = [f"{'word':<24} {'nu':>10}  beta_hat"]
    for w in result.resonant_support:
        rows.append(f"{_word_label(cfg, w):<24} {cf.format_coeff(nu_word(cfg.v, w)[0]):>10}  "
                    f"{cf.format_coeff(result.beta_hat[w])}")
    (out / "resonant_words.txt").write_text("\n".join(rows) + "\n")
    ok = report["residual_zero"] and report["beta_hat_resonant"] and report["kappa_character"]
    lines = [f"model: {cfg.model.name}", f"order: {N}", f"gauge: {result.gauge}",
             f"resonant words in support of beta_hat: {len(result.resonant_support)}"]
    if not result.resonant_support:
        lines.append("beta_hat = 0 (no resonant words carry coefficients)")
    lines.append(f"checks: {json.dumps({k: v for k, v in report.items() if k != 'residual_words'})}")
    _summary(out, lines)
    return EXIT_OK if ok else EXIT_PROPERTY


def cmd_check_residual(cfg: ModelConfig, args) -> int:
    src = Path(args.input or args.out)
    kappa = coeffmap_from_json(read_json(src / "kappa.json"))
    beta_hat = coeffmap_from_json(read_json(src / "beta_hat.json"))
    beta = cfg.beta(kappa.order, kappa.mode)
    res = normal_form_residual(cfg.v, beta, kappa, beta_hat)
    tol = 0 if res.mode == cf.EXACT else 1e-10
    bad = [w for w, c in res.items() if abs(cf.to_complex(c)) > tol]
    off = [w for w, c in beta_hat.items() if not cf.is_zero(c) and not nu_word(cfg.v, w)[1]]
    char = is_character(kappa)
    print(f"residual words: {len(bad)}; beta_hat off resonance: {len(off)}; kappa character: {char}")
    for w in bad[:10]:
        print(f"  residual at {_word_label(cfg, w)}: {cf.format_coeff(res[w])}")
    return EXIT_OK if not bad and not off and char else EXIT_PROPERTY


def cmd_decompose(cfg: ModelConfig, args) -> int:
    N, out = _order(cfg, args), Path(args.out)
    beta = cfg.beta(N, _mode(cfg, args))
    dec = decompose(cfg.v, beta)
    write_json(out / "decomposition.json", decomposition_to_json(dec))
    ok = (dec.rho_v + dec.beta_bar).allclose(beta) if beta.mode == cf.FLOAT else dec.rho_v + dec.beta_bar == beta
    _summary(out, [f"model: {cfg.model.name}", f"order: {N}", f"dim V(v): {len(dec.rho)}",
                   f"rho(v) + beta_bar == beta: {ok}"])
    return EXIT_OK if ok else EXIT_PROPERTY


def cmd_invariants(cfg: ModelConfig, args) -> int:
    N, out = _order(cfg, args), Path(args.out)
    model = cfg.model
    if not model.is_hamiltonian:
        raise UnsupportedModelError("invariants need a Hamiltonian model")
    rep = check_poisson_assumption(model)
    if not rep["ok"]:
        raise PreconditionError(f"Poisson-bracket assumption fails: {rep}")
    beta = cfg.beta(N, _mode(cfg, args))
    result = normal_form(cfg.v, beta)
    dec = decompose(cfg.v, beta, result=result)
    entries = []
    for i, (u, rho) in enumerate(dec.rho):
        write_json(out / f"rho_{i}.json", coeffmap_to_json(rho))
        H = assemble_hamiltonian(ExtCoeff(u, rho, check=False), model)
        terms = [{"m": list(k), "c": cf.format_coeff(c)} for k, c in H.terms.items()]
        entries.append({"u": [cf.format_coeff(c) for c in u.exact], "terms": terms})
    write_json(out / "invariants.json", {"dim_V": len(dec.rho),
                                         "variables": "model variables then epsilon",
                                         "invariants": entries})
    _summary(out, [f"model: {model.name}", f"order: {N}", f"dim V(v) = {len(dec.rho)}"]
             + [f"u{i} = {e['u']}: {len(e['terms'])} terms" for i, e in enumerate(entries)])
    return EXIT_OK


def cmd_drift(cfg: ModelConfig, args) -> int:
    N, out = _order(cfg, args), Path(args.out)
    model = cfg.model
    if not model.is_hamiltonian:
        raise UnsupportedModelError("drift needs a Hamiltonian model")
    eps = _eps(cfg, args)
    beta = cfg.beta(N, cf.EXACT)
    basis = [cfg.u_vector()] if cfg.u_vector() is not None else None
    rep = drift(model, cfg.v, beta, _x0(cfg, args.seed), eps, cfg.experiment.t_final, basis)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "drift.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["invariant", "eps", "max_drift", "step"])
        for name, e, d in rep.rows:
            w.writerow([name, e, f"{d:.6e}", rep.steps[e]])
    lines = [f"model: {model.name}", f"order: {N}", f"expected drift order: {N + 1}"]
    lines += [f"{k}: fitted order {p:.3f}, ratio orders {[round(r, 3) for r in rep.ratios[k]]}"
              for k, p in rep.fitted.items()]
    lines += [f"control (full Hamiltonian) eps={e}: {c:.3e}" for e, c in rep.control.items()]
    ok = rep.passes()
    lines.append(f"pass: {ok}")
    _summary(out, lines)
    return EXIT_OK if ok else EXIT_PROPERTY


def cmd_flow_compare(cfg: ModelConfig, args) -> int:
    N, out = _order(cfg, args), Path(args.out)
    eps = _eps(cfg, args)
    beta = cfg.beta(N, cf.EXACT)
    rep = flow_compare(cfg.model, cfg.v, beta, _x0(cfg, args.seed), eps, cfg.experiment.t_points)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "flow.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["eps", "t", "error"])
        for e, t, err in rep.rows:
            w.writerow([e, t, f"{err:.6e}"])
    ok = rep.fitted_order >= N + 0.7
    _summary(out, [f"model: {cfg.model.name}", f"order: {N}",
                   f"max errors: {[f'{e:.3e}' for e in rep.errors]}",
                   f"fitted order: {rep.fitted_order:.3f} (need >= {N + 0.7})", f"pass: {ok}"])
    return EXIT_OK if ok else EXIT_PROPERTY


def run_verify(cfg: ModelConfig, order: int, seed: int, mode: str = cf.EXACT) -> dict:
    """Run every property suite that applies to the model; returns ``{suite: {ok, detail}}``."""
    from . import identities as ids

    model, v = cfg.model, cfg.v
    rng = random.Random(seed)
    A = model.alphabet_size
    Ns = min(order, SYMBOLIC_ORDER_CAP)
    suites = {}

    def record(name, ok, detail=None):
        suites[name] = {"ok": bool(ok), "detail": detail}

    rep = verify_assumption(model, seed=seed)
    record("assumption", rep["ok"], {k: rep[k] for k in ("failed_letters", "generator_failures")})

    beta = cfg.beta(order, mode)
    result = normal_form(v, beta)
    nf = check_normal_form(v, beta, result)
    record("normal_form", nf["residual_zero"] and nf["beta_hat_resonant"] and nf["kappa_character"]
           and nf["beta_hat_infinitesimal"], {"residual_words": [list(w) for w in nf["residual_words"]]})

    dec = decompose(v, beta, result=result)
    elems = [ExtCoeff(v, dec.rho_v, check=False), ExtCoeff(v.scale(0), dec.beta_bar, check=False)]
    elems += [ExtCoeff(u, r, check=False) for u, r in dec.rho]
    bad = []
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            c = ext_bracket(elems[i], elems[j]).delta
            if not (c.is_zero() if c.mode == cf.EXACT else c.max_abs() < 1e-9):
                bad.append((i, j))
    record("commutation", not bad, {"nonzero_pairs": bad})

    try:
        zero_letter(v)
        weights_one = all(w == cf.gauss(1) for w in cfg.beta_weights)
    except UnsupportedModelError:
        weights_one = False
    if weights_one and v.is_exact and mode == cf.EXACT:
        uc = verify_unique_characterization(v, beta, dec.beta_bar, dec.rho)
        rec_ok = beta_bar_recursion(v, order) == dec.beta_bar and all(
            rho_recursion(u, v, order) == r for u, r in dec.rho)
        record("uniqueness", uc["ok"] and rec_ok, {"recursions_agree": rec_ok})

    # raises SmallDivisorError when some nonresonant ν^v_w sits on 2πik
    bs = beta.truncate(Ns)
    back = ext_log(ext_exp(ExtCoeff(v, bs, check=False))).delta
    gap = back.max_abs_diff(bs.to_float())
    record("ext_exp_log", gap < 1e-10, {"gap": gap})

    b = random_infinitesimal(A, Ns, rng)
    g = random_character(A, Ns, rng)
    if v.is_exact:
        record("xi_commutator", ids.check_xi_commutator(model, v, b))
        record("dynkin", ids.check_dynkin(model, b))
    if model.flow_kind is not None:
        if v.is_exact:
            record("pushforward", ids.check_pushforward(model, v, g)[0])
        gap = ids.check_xi_conjugation(model, v, g)
        record("xi_conjugation", gap < 1e-8, {"gap": gap})
    if not model.angles:
        d2 = random_character(A, Ns, rng)
        ok, gap = ids.check_composition(model, g, d2)
        record("composition", ok, {"gap": gap})
        if model.flow_kind is not None:
            u = v.scale(cf.gauss(1, 0) / 3) if v.is_exact else v.scale(1 / 3)
            gap = ids.check_ext_composition(model, ExtCoeff(u, g, check=False), ExtCoeff(v, d2, check=False))
            record("ext_composition", gap < 1e-8, {"gap": gap})
    if model.is_hamiltonian:
        record("hamiltonian_fields", ids.check_hamiltonian_fields(model))
        a2 = check_poisson_assumption(model)
        record("poisson_assumption", a2["ok"], a2)
        if a2["ok"] and v.is_exact:
            b2 = random_infinitesimal(A, min(Ns, 3), rng)
            ok = ids.check_bracket_correspondence(
                model, ExtCoeff(v, b.truncate(min(Ns, 3)), check=False), ExtCoeff(v.scale(2), b2, check=False))
            record("bracket_correspondence", ok)

    for name, m in (("kappa", result.kappa), ("beta_hat", result.beta_hat)):
        back = coeffmap_from_json(json.loads(json.dumps(coeffmap_to_json(m, nonzero_only=False))))
        record(f"json_roundtrip_{name}", back == m)
    return suites


def cmd_verify(cfg: ModelConfig, args) -> int:
    out = Path(args.out)
    suites = run_verify(cfg, _order(cfg, args), args.seed, _mode(cfg, args))
    ok = all(s["ok"] for s in suites.values())
    write_json(out / "verify.json", {"model": cfg.model.name, "ok": ok, "suites": suites})
    _summary(out, [f"{'PASS' if s['ok'] else 'FAIL'}  {name}" for name, s in suites.items()]
             + [f"overall: {'PASS' if ok else 'FAIL'}"])
    return EXIT_OK if ok else EXIT_PROPERTY


COMMANDS = {
    "normal-form": cmd_normal_form,
    "invariants": cmd_invariants,
    "decompose": cmd_decompose,
    "drift": cmd_drift,
    "flow-compare": cmd_flow_compare,
    "verify": cmd_verify,
    "check-residual": cmd_check_residual,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wordseries", description=__doc__.split("\n\n")[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--model", required=True, help="TOML model file")
    p.add_argument("--order", type=int, help="truncation order N (default from the model file)")
    p.add_argument("--eps", nargs="+", help="descending epsilon ladder, e.g. 0.1,0.05,0.025")
    p.add_argument("--out", default="out", help="output directory")
    p.add_argument("--in", dest="input", help="directory with kappa.json/beta_hat.json (check-residual)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--mode", choices=cf.MODES)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = load_model_config(args.model)
        if args.seed is None:
            args.seed = cfg.experiment.seed
        if args.order is not None and args.order < 1:
            raise ConfigError("--order must be at least 1")
        return COMMANDS[args.command](cfg, args)
    except SmallDivisorError as exc:
        print(f"small divisor: {exc}", file=sys.stderr)
        return EXIT_SMALL_DIVISOR
    except IntegrationError as exc:
        print(f"integration failed: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    except (WordSeriesError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
