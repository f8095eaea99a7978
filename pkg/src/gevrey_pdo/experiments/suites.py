"""Suite definitions: each suite expands its config into cases, each case yields records.

A case is plain data (kind plus parameters) so it can cross a process
boundary; its random stream is derived from ``(seed, suite, case index)``
alone, which keeps results independent of worker scheduling.
"""
from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .. import conjugation as cj
from .. import inequalities as ineq
from ..gevrey import dominating_scale, spatial_gevrey_seminorm, verify_embedding
from ..grid import SampledFunction, make_grid
from ..quantization import (estimate_action_norm, gevrey_random_input, quantize, quantize_direct,
                            radius_gain_diagnostic)
from ..symbols import SymbolClassParams, canonical_symbol, gevrey_bump, random_bandlimited_symbol
from .config import SuiteConfig, case_rng, default_config
from .report import ResultRecord


@dataclass(frozen=True)
class Case:
    index: int
    label: str
    kind: str
    params: dict

    @property
    def case_id(self) -> str:
        return f"{self.index:05d}-{self.label}"


def _upper(measured, bound, tol=0.0, **params):
    """Record data for a ``measured <= bound`` check."""
    margin = bound - measured
    return dict(params=params, measured=measured, bound=bound, margin=margin, passed=bool(margin >= -tol))


def _lower(measured, bound, tol=0.0, **params):
    """Record data for a ``measured >= bound`` check."""
    margin = measured - bound
    return dict(params=params, measured=measured, bound=bound, margin=margin, passed=bool(margin >= -tol))


# ---------------------------------------------------------------------------
# inequalities


def _cases_inequalities(cfg: SuiteConfig):
    sw, n_total = cfg.sweeps, cfg.samples["per_inequality"]
    cases = []
    triples = list(itertools.product(sw["d"], sw["sigma"], sw["K"]))
    pairs = list(itertools.product(sw["d"], sw["sigma"]))
    for name, combos in (("tri1", triples), ("tri2", triples), ("poly", pairs)):
        n = -(-n_total // len(combos)) if combos else 0
        for combo in combos:
            d, sigma = combo[0], combo[1]
            K = combo[2] if len(combo) > 2 else None
            label = f"{name}-d{d}-s{sigma:g}" + (f"-K{K:g}" if K else "")
            cases.append((label, "ineq_sweep", {"inequality": name, "d": d, "sigma": sigma, "K": K, "samples": n}))
    cases.append(("tri1-constant-range", "tri1_range", {"samples": cfg.samples["constant_grid"]}))
    cases.append(("mean-value-witness", "mean_value_witness", {"K": 1.1, "sigma": 0.9}))
    cases.append(("sigma-one-counterexample", "sigma_one", {"K": 2.0}))
    return cases


def _run_ineq_sweep(p, rng, cfg):
    fn = {"tri1": ineq.sweep_tri1, "tri2": ineq.sweep_tri2}.get(p["inequality"])
    if fn is None:
        res = ineq.sweep_poly_gevrey(rng, p["samples"], p["d"], p["sigma"])
    else:
        res = fn(rng, p["samples"], p["d"], p["sigma"], p["K"])
    tol = cfg.tolerances["relative"]
    rec = _upper(-res.worst_relative_defect, 0.0, tol, **p, violations=res.violations)
    rec["passed"] = res.violations == 0
    return [rec]


def _run_tri1_range(p, rng, cfg):
    n = p["samples"]
    Ks = np.exp(np.linspace(math.log(1.001), math.log(1e3), n))
    sig = np.exp(np.linspace(math.log(0.01), math.log(0.99), n))
    c = np.array([[ineq.tri1_constant(K, s) for s in sig] for K in Ks])
    rec = _upper(float(c.max()), 1.0, **p, minimum=float(c.min()))
    rec["passed"] = bool(c.max() < 1 and c.min() > 0)
    return [rec]


def _run_mean_value_witness(p, rng, cfg):
    cmp = ineq.compare_remark_constants(p["K"], p["sigma"])
    rec = _lower(cmp.mean_value_constant, 1.0, **p, difference_constant=cmp.difference_constant)
    rec["passed"] = cmp.mean_value_constant > 1 and cmp.difference_constant < 1
    return [rec]


def _run_sigma_one(p, rng, cfg):
    ce = ineq.sigma_one_counterexample(0.99, p["K"])
    return [_upper(ce.defect, 0.0, **p, constant=ce.constant, eta=float(ce.eta[0]))]


# ---------------------------------------------------------------------------
# embedding


def _cases_embedding(cfg):
    return [(f"s{s:g}-f{f:g}", "embedding", {"s": s, "tau_fraction": f})
            for s, f in itertools.product(cfg.sweeps["s"], cfg.sweeps["tau_fraction"])]


def _run_embedding(p, rng, cfg):
    g = cfg.grid
    grid = make_grid(g["d"], g["N"], g["L"])
    s = p["s"]
    bump = gevrey_bump(s)
    amax = cfg.samples["alpha_max"]
    per_order = spatial_gevrey_seminorm(bump, s, 1.0, amax, grid=grid, method="analytic").per_order
    R = dominating_scale(per_order, s)
    semi = spatial_gevrey_seminorm(bump, s, R, amax, grid=grid, method="analytic").value
    tau = p["tau_fraction"] * s * R ** (-1 / s)
    f = SampledFunction.from_function(grid, bump)
    rep = verify_embedding(f, s, R, tau, 2.0 ** g["d"], seminorm=semi)
    return [_upper(rep.lhs, rep.rhs, cfg.tolerances["margin"], **p, R=R, tau=tau)]


# ---------------------------------------------------------------------------
# quantization


def _cases_quantization(cfg):
    hs = cfg.sweeps["h"]
    if not hs:
        return []
    return [(f"h{hs[i % len(hs)]:g}", "quant_oracle", {"h": hs[i % len(hs)]})
            for i in range(cfg.samples["cases"])]


def _grid(cfg, N=None):
    g = cfg.grid
    return make_grid(g["d"], N or g["N"], g["L"])


def _run_quant(p, rng, cfg):
    grid = _grid(cfg)
    a = random_bandlimited_symbol(grid, rng, band=cfg.samples["symbol_band"])
    u = gevrey_random_input(grid, rng, 0.5, 0.0, cfg.samples["input_band"])
    fast = quantize(a, u, p["h"])
    direct = quantize_direct(a, u, p["h"])
    err = float(np.linalg.norm(fast.values - direct.values) / np.linalg.norm(direct.values))
    return [_upper(err, cfg.tolerances["relative"], **p)]


# ---------------------------------------------------------------------------
# conjugation


def _cases_conjugation(cfg):
    sw, sm = cfg.sweeps, cfg.samples
    cases = []
    for sigma, tau in itertools.product(sw["sigma"], sw["tau"]):
        base = {"sigma": sigma, "tau": tau}
        cases += [(f"identity-s{sigma:g}-t{tau:g}", "conj_identity", base) for _ in range(sm["identity_cases"])]
        cases += [(f"kernel-s{sigma:g}-t{tau:g}", "conj_kernel", base) for _ in range(sm["kernel_cases"])]
        for m in sw["m"]:
            cases.append((f"multiplication-constant-s{sigma:g}-t{tau:g}-m{m:g}", "multiplication", {**base, "m": m}))
    if sm["partition"]:
        cases.append(("partition", "partition", {"samples": sm["partition"]}))
    if sm["weight"]:
        cases.append(("weight-bounds", "weight_bounds", {"samples": sm["weight"]}))
    return cases


def _run_conj_identity(p, rng, cfg):
    grid = _grid(cfg)
    a = random_bandlimited_symbol(grid, rng, band=cfg.samples["symbol_band"])
    u = gevrey_random_input(grid, rng, p["sigma"], p["tau"], cfg.samples["input_band"])
    err = cj.conjugation_identity_error(a, u, p["sigma"], p["tau"])
    return [_upper(err, cfg.tolerances["identity"], **p)]


def _run_conj_kernel(p, rng, cfg):
    grid = _grid(cfg)
    band = grid.N // 8
    F = gevrey_random_input(grid, rng, p["sigma"], 0.0, band)
    v = gevrey_random_input(grid, rng, p["sigma"], 0.0, band)
    cp = cj.ConjugationParams(p["sigma"], p["tau"])
    spatial = cj.conjugated_multiply(F, v, cp).spectrum
    kernel = cj.conjugation_kernel_sum(F, v, cp)
    err = float(np.linalg.norm(spatial - kernel) / np.linalg.norm(kernel))
    return [_upper(err, cfg.tolerances["kernel"], **p)]


def multiplication_corpus(rng, n_pairs: int, n_bumps: int = 3):
    """Parameters of Gaussian wave packets on a period-``2 pi`` torus, drawn once per corpus."""
    def draw():
        return (rng.uniform(-1, 1, n_bumps), rng.uniform(0.3, 0.8, n_bumps),
                rng.normal(size=n_bumps), rng.integers(-6, 7, n_bumps))
    return [(draw(), draw()) for _ in range(n_pairs)]


def _packet(params):
    c, w, amp, k = params

    def f(x):
        x = x[..., 0]
        return sum(amp[j] * np.exp(-((x - c[j]) / w[j]) ** 2 + 1j * k[j] * x) for j in range(len(c)))
    return f


def _run_multiplication(p, rng, cfg):
    corpus = multiplication_corpus(rng, cfg.samples["corpus"])
    cp = cj.ConjugationParams(p["sigma"], p["tau"], p["m"])
    consts = []
    for N in cfg.sweeps["N_refine"]:
        grid = make_grid(1, N, 2 * math.pi)
        pairs = [(SampledFunction.from_function(grid, _packet(a)), SampledFunction.from_function(grid, _packet(b)))
                 for a, b in corpus]
        consts.append(cj.fitted_multiplication_constant(pairs, cp))
    spread = (max(consts) - min(consts)) / min(consts)
    return [_upper(spread, cfg.tolerances["stability"], **p, C_min=min(consts), C_max=max(consts))]


def _run_partition(p, rng, cfg):
    n = p["samples"]
    bad = 0
    for d in (1, 2, 3):
        m = n // 3 + (1 if d <= n % 3 else 0)
        K = np.exp(rng.uniform(math.log(1.001), math.log(100), m))
        xi = rng.normal(size=(m, d)) * np.exp(rng.uniform(-2, 8, (m, 1)))
        eta = rng.normal(size=(m, d)) * np.exp(rng.uniform(-2, 8, (m, 1)))
        if d == 1:
            # exact boundary ties |xi - eta| = |eta| / K on a quarter of the samples
            q = m // 4
            K[:q] = rng.integers(2, 9, q)
            eta[:q, 0] = K[:q] * rng.integers(1, 100, q)
            xi[:q, 0] = eta[:q, 0] + eta[:q, 0] / K[:q]
        p1, p2, p3 = cj.region_predicates(xi, eta, K)
        count = p1.astype(int) + (p2 & ~p1) + (p3 & ~p1 & ~p2)
        expected = np.where(p1, 1, np.where(p2, 2, np.where(p3, 3, 0)))
        labels = cj.classify_regions(xi, eta, K)
        bad += int(np.count_nonzero(count != 1) + np.count_nonzero(labels != expected))
    return [_upper(float(bad), 0.0, **p)]


def _run_weight_bounds(p, rng, cfg):
    n = p["samples"]
    worst = -math.inf
    for _ in range(8):
        s = float(rng.choice([1.5, 2.0, 3.0]))
        delta = float(rng.uniform(0, 0.5))
        sigma = (1 - delta) / s * float(rng.uniform(0.3, 1.0))
        tau = float(rng.uniform(0.1, 1.0))
        tp = tau * float(rng.uniform(0.0, 0.95))
        K = cj.choose_K(tau, tp, sigma, delta, s)
        d = int(rng.integers(1, 4))
        xi = rng.normal(size=(n // 8, d)) * np.exp(rng.uniform(0, 8, (n // 8, 1)))
        eta = rng.normal(size=(n // 8, d)) * np.exp(rng.uniform(0, 8, (n // 8, 1)))
        lw = cj.log_weight(xi, eta, sigma, tau, tp, delta, s)
        lab = cj.classify_regions(xi, eta, K)
        bounds = cj.log_region_bounds(xi, eta, sigma, tau, tp, delta, s, K)
        for r in cj.Region:
            sel = lab == r
            if sel.any():
                excess = (lw[sel] - bounds[r][sel]) / np.maximum(1.0, np.abs(bounds[r][sel]))
                worst = max(worst, float(excess.max()))
    return [_upper(worst, 0.0, 1e-12, **p)]


# ---------------------------------------------------------------------------
# action


def _cases_action(cfg):
    sw = cfg.sweeps
    cases = []
    for s, delta, tau in itertools.product(sw["s"], sw["delta"], sw["tau"]):
        base = {"s": s, "delta": delta, "tau": tau}
        for N in sw["N_refine"]:
            cases.append((f"norm-s{s:g}-d{delta:g}-t{tau:g}-N{N}", "action_norm", {**base, "N": N}))
        cases.append((f"drift-s{s:g}-d{delta:g}-t{tau:g}", "action_drift", base))
        for fac in sw["diagnostic_tau_prime_factor"]:
            cases.append((f"diagnostic-s{s:g}-d{delta:g}-t{tau:g}-x{fac:g}", "action_diag", {**base, "factor": fac}))
    return cases


def _action_symbol(p, N, cfg):
    grid = make_grid(cfg.grid["d"], N, cfg.grid["L"])
    return canonical_symbol(SymbolClassParams(0.0, 1.0, p["delta"], p["s"], 1.0), grid)


def _action_seed(cfg, p):
    # one stream per parameter set, shared by every N so the inputs coincide across grids
    return case_rng(cfg.seed, f"action-inputs-{p['s']:g}-{p['delta']:g}-{p['tau']:g}", 0)


def _run_action_norm(p, rng, cfg):
    a = _action_symbol(p, p["N"], cfg)
    sigma = (1 - p["delta"]) / p["s"]
    rep = estimate_action_norm(a, sigma, p["tau"], p["tau"] / 2, cfg.samples["inputs"], _action_seed(cfg, p),
                               band=cfg.samples["band"])
    return [_upper(rep.empirical_norm, rep.bound, **p, sigma=sigma, tau_prime=p["tau"] / 2)]


def _run_action_drift(p, rng, cfg):
    sigma = (1 - p["delta"]) / p["s"]
    norms = []
    for N in cfg.sweeps["N_refine"]:
        a = _action_symbol(p, N, cfg)
        norms.append(estimate_action_norm(a, sigma, p["tau"], p["tau"] / 2, cfg.samples["inputs"],
                                          _action_seed(cfg, p), band=cfg.samples["band"],
                                          with_bound=False).empirical_norm)
    drift = abs(norms[-1] / norms[0] - 1)
    rec = _upper(drift, cfg.tolerances["drift"], **p, sigma=sigma, tau_prime=p["tau"] / 2,
                 norm_coarse=norms[0], norm_fine=norms[-1])
    rec["passed"] = rec["passed"] and all(math.isfinite(x) for x in norms)
    return [rec]


def _run_action_diag(p, rng, cfg):
    sigma = (1 - p["delta"]) / p["s"]
    bands = cfg.sweeps["diagnostic_bands"]
    N = max(max(cfg.sweeps["N_refine"]), 4 * max(bands))
    N = 1 << (N - 1).bit_length()
    a = _action_symbol(p, N, cfg)
    tp = p["tau"] * p["factor"]
    ratios = radius_gain_diagnostic(a, sigma, p["tau"], tp, bands, cfg.samples["diagnostic_inputs"],
                                    seed=int(rng.integers(2**32)))
    growth = ratios[-1] / ratios[0]
    return [_lower(growth, cfg.tolerances["growth"], **p, sigma=sigma, tau_prime=tp, N=N,
                   band_low=bands[0], band_high=bands[-1])]


# ---------------------------------------------------------------------------
# conjugated-symbol expansion and seminorm envelope


def _cases_symbol5(cfg):
    sw = cfg.sweeps
    cases = []
    for m, s, sigma, tau in itertools.product(sw["m"], sw["s"], sw["sigma"], sw["tau"]):
        for k in sw["k"]:
            cases.append((f"expansion-k{k}-m{m:g}-s{s:g}-sg{sigma:g}-t{tau:g}", "expansion",
                          {"k": k, "m": m, "s": s, "sigma": sigma, "tau": tau}))
    for s, tau_bar in itertools.product(sw["s"], sw["tau_bar"]):
        for na, nb in sw["orders"]:
            cases.append((f"envelope-a{na}-b{nb}-s{s:g}-tb{tau_bar:g}", "envelope",
                          {"alpha": na, "beta": nb, "s": s, "tau_bar": tau_bar}))
    for sigma, tau in itertools.product(sw["sigma"], sw["tau"]):
        for o in sw["fd_orders"]:
            cases.append((f"faa-di-bruno-o{o}-sg{sigma:g}-t{tau:g}", "faa_di_bruno", {"order": o, "sigma": sigma, "tau": tau}))
    return cases


def _run_expansion(p, rng, cfg):
    a = canonical_symbol(SymbolClassParams(p["m"], 1.0, 0.0, p["s"], 1.0), _grid(cfg))
    rep = cj.expansion_remainder(a, p["k"], p["sigma"], p["tau"])
    return [_upper(rep.fitted_order, rep.predicted_order + cfg.tolerances["order_slack"], **p,
                   predicted=rep.predicted_order, sign=rep.sign)]


def _run_envelope(p, rng, cfg):
    grid = make_grid(1, cfg.samples["envelope_N"], cfg.samples["envelope_L"])
    a = canonical_symbol(SymbolClassParams(0.0, 1.0, 0.0, p["s"], 1.0), grid)
    sw = cfg.sweeps
    fit = cj.lemma51_envelope(a, (p["alpha"],), (p["beta"],), p["tau_bar"], sw["gaps"], sw["held_out_gaps"])
    out = []
    for held, reps in ((False, fit.reports), (True, fit.held_out)):
        for r in reps:
            rec = _upper(r.measured, fit.c_fit * r.bound_curve, 1e-12 * r.measured, **p,
                         gap=r.tau_bar - r.tau, held_out=held, c_fit=fit.c_fit)
            out.append(rec)
    return out


def _run_faa(p, rng, cfg):
    n = cfg.samples["fd_points"]
    grid = np.linspace(-100, 100, n)
    X, E = np.meshgrid(grid, grid)
    base = float(cj.exponential_factor_ratios(p["sigma"], p["tau"], p["order"], X, E).max())
    wide = float(cj.exponential_factor_ratios(p["sigma"], p["tau"], p["order"], 4 * X, 4 * E).max())
    return [_upper(wide, base, **p)]


# ---------------------------------------------------------------------------
# dispatch


CASE_BUILDERS = {
    "inequalities": _cases_inequalities,
    "embedding": _cases_embedding,
    "quantization": _cases_quantization,
    "conjugation": _cases_conjugation,
    "action": _cases_action,
    "symbol5": _cases_symbol5,
}

RUNNERS = {
    "ineq_sweep": _run_ineq_sweep, "tri1_range": _run_tri1_range, "mean_value_witness": _run_mean_value_witness,
    "sigma_one": _run_sigma_one, "embedding": _run_embedding, "quant_oracle": _run_quant,
    "conj_identity": _run_conj_identity, "conj_kernel": _run_conj_kernel, "multiplication": _run_multiplication,
    "partition": _run_partition, "weight_bounds": _run_weight_bounds, "action_norm": _run_action_norm,
    "action_drift": _run_action_drift, "action_diag": _run_action_diag, "expansion": _run_expansion,
    "envelope": _run_envelope, "faa_di_bruno": _run_faa,
}

SUITE_DESCRIPTIONS = {
    "inequalities": "weighted triangle and polynomial/Gevrey inequalities, constant ranges, counterexamples",
    "embedding": "spatial Gevrey seminorm against Fourier Gevrey norm for compactly supported bumps",
    "quantization": "Fourier-side op_h against direct quadrature",
    "conjugation": "conjugated symbol identity, conjugated multiplication, regions and weight bounds",
    "action": "loss-of-radius operator norm, grid drift and necessity of tau' < tau",
    "symbol5": "expansion remainder orders and seminorm envelope of the conjugated symbol",
}


def build_cases(cfg: SuiteConfig) -> list[Case]:
    return [Case(i, label, kind, params) for i, (label, kind, params) in enumerate(CASE_BUILDERS[cfg.suite](cfg))]


def run_case(case: Case, cfg: SuiteConfig) -> list[ResultRecord]:
    rng = case_rng(cfg.seed, cfg.suite, case.index)
    t0 = time.perf_counter()
    try:
        results = RUNNERS[case.kind](dict(case.params), rng, cfg)
    except (ValueError, ArithmeticError) as exc:
        # a domain or numerical failure becomes a failing record, not a crash
        results = [dict(params={**case.params, "error": f"{type(exc).__name__}: {exc}"}, measured=math.nan,
                        bound=math.nan, margin=math.nan, passed=False)]
    wall = (time.perf_counter() - t0) * 1000
    out = []
    for j, res in enumerate(results):
        cid = case.case_id if len(results) == 1 else f"{case.case_id}-{j:03d}"
        out.append(ResultRecord(cfg.suite, cid, res["params"], float(res["measured"]), float(res["bound"]),
                                float(res["margin"]), bool(res["passed"]), wall))
    return out


def _run_case_star(args):
    return run_case(*args)


def run_suite(cfg: SuiteConfig, workers: int = 1) -> list[ResultRecord]:
    """Execute every case of ``cfg.suite``; records come back sorted by case id."""
    cases = build_cases(cfg)
    if workers > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_case_star, [(c, cfg) for c in cases]))
    else:
        chunks = [run_case(c, cfg) for c in cases]
    return sorted((r for chunk in chunks for r in chunk), key=lambda r: r.case_id)


def run_default(suite: str, seed: int = 0, **overrides) -> list[ResultRecord]:
    cfg = default_config(suite, seed)
    for section, values in overrides.items():
        getattr(cfg, section).update(values)
    return run_suite(cfg)
