"""One numerical check per verifiable statement about the weighted spectrum.

Every check returns a :class:`Verdict`. ``margin >= -tolerance`` means the
statement holds on the discrete problem; quantities that enter the decision
are kept in ``quantities`` for the reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import orlicz
from .assembly import FormMatrices, assemble_frac, pitt_weight_integrals, sandwich_check
from .errors import ConfigurationError
from .mesh import DomainSpec, FunctionVec, Mesh, WeightSpec, check_w2, coeffs_of
from .pencil import EigenResult
from .problem import setup_problem
from .special import DimConstants, pitt_constant

DEFAULT_SEED = 0x5EED

TOLERANCES = {
    "hardy": 1e-8,
    "sign_first": 1e-10,
    "sign_claim": 1e-10,
    "frac_pitt": 1e-9,
}


@dataclass
class Verdict:
    name: str
    quantities: dict
    margin: float
    passed: bool
    config_digest: str = ""
    flags: list = field(default_factory=list)
    message: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "pass": bool(self.passed),
            "margin": _plain(self.margin),
            "flags": list(self.flags),
            "message": self.message,
            "quantities": {k: _plain(v) for k, v in self.quantities.items()},
            "config_digest": self.config_digest,
        }


def _plain(v):
    if isinstance(v, (np.floating, np.integer)):
        v = v.item()
    if isinstance(v, np.ndarray):
        return [_plain(x) for x in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    return v


def _verdict(name: str, margin: float, quantities: dict, tol: float = 0.0, **kw) -> Verdict:
    return Verdict(name=name, quantities=quantities, margin=float(margin) + 0.0,
                   passed=bool(margin >= -tol), **kw)


def random_functions(n: int, trials: int, seed: int = DEFAULT_SEED) -> np.ndarray:
    """Rows of random mesh functions mixing Gaussian noise and smooth modes."""
    rng = np.random.default_rng(seed)
    x = (np.arange(n) + 0.5) / n
    out = rng.standard_normal((trials, n))
    modes = np.arange(1, 6)
    smooth = rng.standard_normal((trials, modes.size)) @ np.sin(np.pi * np.outer(modes, x))
    mix = rng.uniform(0, 1, (trials, 1))
    return mix * out + (1 - mix) * smooth


# -- Hardy / Pitt ----------------------------------------------------------------

def check_hardy(mats: FormMatrices, constants: DimConstants, trials: int = 1000,
                seed: int = DEFAULT_SEED, samples: np.ndarray | None = None) -> Verdict:
    """int u^2 ln(1/|x|) + (ln 2 + Psi(N/4)) int u^2 <= E_L(u, u) / 2 for random u."""
    U = random_functions(mats.mesh.n, trials, seed) if samples is None else np.atleast_2d(samples)
    l2 = np.einsum("ti,ij,tj->t", U, mats.M1, U)
    keep = l2 > 0
    U, l2 = U[keep], l2[keep]
    half_el = 0.5 * np.einsum("ti,ij,tj->t", U, mats.EL, U)
    logterm = np.einsum("ti,ij,tj->t", U, mats.Mlog, U)
    ratios = (half_el - logterm - constants.hardy_c * l2) / l2
    margin = float(ratios.min()) if ratios.size else 0.0
    return _verdict("hardy", margin, {"trials": int(ratios.size), "hardy_c": constants.hardy_c,
                                      "mean_margin": float(ratios.mean()) if ratios.size else 0.0},
                    TOLERANCES["hardy"])


def check_sandwich(mats: FormMatrices, constants: DimConstants, trials: int = 1000,
                   seed: int = DEFAULT_SEED) -> Verdict:
    U = random_functions(mats.mesh.n, trials, seed)
    failures = sum(not sandwich_check(mats, u, constants) for u in U)
    return _verdict("sandwich", -float(failures), {"trials": trials, "failures": failures})


# -- sign structure ---------------------------------------------------------------

def check_sign_first(result: EigenResult | np.ndarray) -> Verdict:
    """The first eigenvector does not change sign."""
    v = result.vector(1) if isinstance(result, EigenResult) else coeffs_of(result)
    s = 1.0 if v.sum() >= 0 else -1.0
    scale = float(np.max(np.abs(v)))
    margin = float(np.min(v * s)) / scale
    return _verdict("sign_first", margin, {"min_entry": float(np.min(v * s)), "max_abs": scale},
                    TOLERANCES["sign_first"])


def _sign_split(v: np.ndarray, rel: float):
    scale = float(np.max(np.abs(v))) if v.size else 0.0
    return float(np.max(v, initial=0.0)), float(-np.min(v, initial=0.0)), scale


def check_sign_changing(result: EigenResult | np.ndarray, k: int = 2, exploratory: bool = False) -> Verdict:
    """The k-th eigenvector takes both signs with magnitude above 1e-8 of its peak."""
    v = result.vector(k) if isinstance(result, EigenResult) else coeffs_of(result)
    top, bottom, scale = _sign_split(v, 1e-8)
    margin = min(top, bottom) / scale - 1e-8 if scale > 0 else -1.0
    flags = ["exploratory"] if exploratory else []
    return _verdict(f"sign_changing_k{k}", margin, {"max_positive": top, "max_negative": bottom},
                    flags=flags)


def check_sign_claim(mats: FormMatrices, v, label: str = "sign_claim") -> Verdict:
    """E_L(v+, v-) <= 0, reported relative to ||v||^2."""
    x = coeffs_of(v)
    plus, minus = np.maximum(x, 0.0), np.maximum(-x, 0.0)
    cross = float(plus @ mats.EL @ minus)
    l2 = float(x @ mats.M1 @ x)
    margin = -cross / l2 if l2 > 0 else 0.0
    return _verdict(label, margin, {"E_L(v+,v-)": cross}, TOLERANCES["sign_claim"])


def check_sign_claim_batch(mats: FormMatrices, vectors: np.ndarray, label: str) -> Verdict:
    """Worst case of :func:`check_sign_claim` over the rows of ``vectors``."""
    worst = None
    for v in np.atleast_2d(vectors):
        ver = check_sign_claim(mats, v, label)
        if worst is None or ver.margin < worst.margin:
            worst = ver
    worst.quantities["count"] = int(np.atleast_2d(vectors).shape[0])
    return worst


def check_gap(result: EigenResult | np.ndarray) -> Verdict:
    """lambda_2 - lambda_1 exceeds 1e-6 max(1, |lambda_1|)."""
    lam = result.lambdas if isinstance(result, EigenResult) else np.asarray(result, dtype=float)
    if lam.size < 2:
        return _verdict("gap", -1.0, {}, message="fewer than two eigenvalues")
    gap = float(lam[1] - lam[0])
    threshold = 1e-6 * max(1.0, abs(float(lam[0])))
    margin = gap - threshold
    return Verdict("gap", {"lambda_1": float(lam[0]), "lambda_2": float(lam[1]), "gap": gap},
                   margin, margin > 0)


# -- second eigenvalue via odd maps ------------------------------------------------

def oddmap_values(mats: FormMatrices, v: np.ndarray, angles: int = 720):
    """E_L(f(delta), f(delta)) along f(delta) = (d1 v+ - d2 v-) / sqrt(d1^2 J(v+) + d2^2 J(v-))."""
    plus, minus = np.maximum(v, 0.0), np.maximum(-v, 0.0)
    A = plus @ mats.EL @ plus
    B = minus @ mats.EL @ minus
    C = plus @ mats.EL @ minus
    Jp = plus @ mats.Mw @ plus
    Jm = minus @ mats.Mw @ minus
    theta = 2.0 * np.pi * np.arange(angles) / angles
    d1, d2 = np.cos(theta), np.sin(theta)
    denom = d1 * d1 * Jp + d2 * d2 * Jm
    values = (d1 * d1 * A - 2.0 * d1 * d2 * C + d2 * d2 * B) / denom
    return values, denom, (A, B, C, Jp, Jm)


def check_lambda2_oddmap(mats: FormMatrices, result: EigenResult, k: int = 2, angles: int = 720) -> Verdict:
    """Max of E_L over the odd circle built from v_k against lambda_2 (and lambda_k)."""
    v = result.vector(k)
    values, denom, (A, B, C, Jp, Jm) = oddmap_values(mats, v, angles)
    name = "lambda2_oddmap" if k == 2 else f"lambda2_oddmap_k{k}"
    if np.any(denom <= 0) or Jp <= 0 or Jm <= 0:
        return Verdict(name, {"J_plus": float(Jp), "J_minus": float(Jm)}, -1.0, False,
                       flags=["inconclusive"], message="denominator not positive on the circle")
    peak = float(values.max())
    lam2, lamk = float(result.lambdas[1]), float(result.lambdas[k - 1])
    q = {"max_value": peak, "lambda_2": lam2, "lambda_k": lamk, "angles": angles,
         "value_at_(1,0)": float(A / Jp), "E_L(v+,v-)": float(C)}
    if k == 2:
        margin = 1e-8 - abs(peak - lam2) / abs(lam2)
    else:
        margin = min(1e-8 - (peak - lamk) / abs(lamk), 1e-8 - (lam2 - peak) / abs(lam2))
    return _verdict(name, margin, q)


# -- nodal domain bound ------------------------------------------------------------

@dataclass(frozen=True)
class NodalData:
    omega_plus_measure: float
    omega_minus_measure: float
    sides: dict


def nodal_quantities(mats: FormMatrices, constants: DimConstants, v: np.ndarray, lam: float,
                     weight_norm_theta: float, theta_inv, beta: float) -> NodalData:
    h = mats.mesh.h
    thr = 1e-12 * float(np.max(np.abs(v)))
    phi = orlicz.phi()
    psi = orlicz.psi(beta)
    sides = {}
    measures = {}
    for sign, part in (("+", np.where(v > thr, v, 0.0)), ("-", np.where(v < -thr, -v, 0.0))):
        measure = h * int(np.count_nonzero(part))
        measures[sign] = measure
        energy = float(part @ mats.E @ part)
        l2 = float(part @ mats.M1 @ part)
        phi_norm = orlicz.luxemburg_norm(part, phi, h)
        r1 = phi_norm**2 / energy
        r2 = l2 / energy
        bracket = 1.0 - max(constants.c_N * measure - constants.rho_N, 0.0) * r2
        inv = theta_inv(1.0 / measure)
        rhs = inv * bracket / (2.0 * r1 * weight_norm_theta)
        el_pp = float(part @ mats.EL @ part)
        J_part = float(part @ mats.Mw @ part)
        sides[sign] = {
            "measure": measure, "r1": r1, "r2": r2, "bracket": bracket,
            "theta_inv": inv, "rhs": rhs, "vacuous": bracket <= 0,
            # E_L(v+, v+) <= lambda J(v+) holds along the way
            "chain_energy": el_pp, "chain_weighted": lam * J_part,
            "chain_l2": l2, "chain_energy_E": energy,
            "psi_norm_of_square": orlicz.luxemburg_norm(part * part, psi, h),
        }
    return NodalData(measures["+"], measures["-"], sides)


def check_nodal_bound(mats: FormMatrices, result: EigenResult, constants: DimConstants, k: int = 2,
                      beta: float = orlicz.DEFAULT_BETA, global_constants: orlicz.EmbeddingConstants | None = None,
                      theta_pair=None) -> Verdict:
    """|lambda_k| >= theta^{-1}(1/|Omega^pm|)(1 - max(c|Omega^pm| - rho, 0) S2) / (2 S1 ||omega||_theta).

    Evaluated with the per-function ratios ||v^pm||_phi^2 / E(v^pm) and
    ||v^pm||^2 / E(v^pm) in place of S1 and S2. The bound with global
    constants is reported as information only.
    """
    v = result.vector(k)
    top, bottom, scale = _sign_split(v, 1e-12)
    if min(top, bottom) <= 1e-12 * scale:
        raise ConfigurationError(f"eigenvector {k} does not change sign; nodal bound needs a nodal eigenfunction")
    lam = float(result.lambdas[k - 1])
    psi_star = orlicz.conjugate_of(orlicz.psi(beta))
    theta1, theta2 = theta_pair or orlicz.make_theta_pair(psi_star)
    h = mats.mesh.h
    omega_cells = np.diag(mats.Mw) / h
    w_norm = orlicz.luxemburg_norm(omega_cells, theta1, h)
    data = nodal_quantities(mats, constants, v, lam, w_norm, lambda x: orlicz.left_inverse(theta2, x), beta)
    q = {"lambda": lam, "omega_theta_norm": w_norm,
         "omega_plus_measure": data.omega_plus_measure, "omega_minus_measure": data.omega_minus_measure}
    margins, flags = [], []
    for sign, side in data.sides.items():
        for key in ("measure", "r1", "r2", "bracket", "theta_inv", "rhs"):
            q[f"{key}{sign}"] = side[key]
        q[f"chain_holds{sign}"] = side["chain_energy"] <= side["chain_weighted"] + 1e-10 * abs(side["chain_weighted"])
        if side["vacuous"]:
            flags.append(f"vacuous{sign}")
            margins.append(0.0)
        else:
            margins.append((abs(lam) - side["rhs"] * (1 - 1e-8)) / abs(lam))
        if global_constants is not None:
            g_bracket = 1.0 - max(constants.c_N * side["measure"] - constants.rho_N, 0.0) * global_constants.S2
            q[f"global_rhs{sign}"] = side["theta_inv"] * g_bracket / (2 * global_constants.S1_lb * w_norm)
    return _verdict(f"nodal_bound_k{k}", min(margins), q, flags=flags)


# -- monotonicity ------------------------------------------------------------------

def check_monotonicity_weight(domain: DomainSpec, n: int, w1: WeightSpec, w2: WeightSpec,
                              kmax: int = 5, N: int = 1) -> Verdict:
    """lambda_k(w2) <= lambda_k(w1) for w1 <= w2, with strict sub-checks for k = 1, 2."""
    p1 = setup_problem(domain, n, w1, N)
    p2 = setup_problem(domain, n, w2, N)
    m1, m2 = np.diag(p1.mats.Mw), np.diag(p2.mats.Mw)
    if np.any(m1 > m2 + 1e-14):
        raise ConfigurationError("weight monotonicity needs omega_1 <= omega_2 on every cell")
    k = min(kmax, len(p1.result), len(p2.result))
    l1, l2 = p1.result.lambdas[:k], p2.result.lambdas[:k]
    weak = float(np.min(l1 + 1e-9 - l2))
    q = {"lambda_w1": l1, "lambda_w2": l2}
    flags = []
    margin = weak
    differs = np.any(m2 > m1 + 1e-14)
    if differs:
        strict1 = float(l1[0] - l2[0]) - 1e-8
        q["strict_lambda1_margin"] = strict1
        margin = min(margin, strict1)
    else:
        flags.append("strict_not_applicable")
    if np.all(m2 > m1 + 1e-14) and k >= 2:
        strict2 = float(l1[1] - l2[1]) - 1e-8
        q["strict_lambda2_margin"] = strict2
        margin = min(margin, strict2)
    return Verdict("monotonicity_weight", q, margin, margin >= 0, flags=flags)


def check_weight_scaling(domain: DomainSpec, n: int, w: WeightSpec, factors=(2.0, 4.0),
                         kmax: int = 5, N: int = 1) -> Verdict:
    """lambda_k(c omega) = lambda_k(omega) / c."""
    base = setup_problem(domain, n, w, N).result.lambdas[:kmax]
    worst = 0.0
    for c in factors:
        scaled = setup_problem(domain, n, w.scaled(c), N).result.lambdas[:kmax]
        worst = max(worst, float(np.max(np.abs(scaled * c - base) / np.abs(base))))
    return _verdict("weight_scaling", 1e-10 - worst, {"max_rel_error": worst, "factors": list(factors)})


def aligned_sub_mesh(small: DomainSpec, large: DomainSpec, n_small: int) -> int:
    """Cell count on ``large`` with the same width as ``n_small`` cells on ``small``."""
    if not large.contains(small):
        raise ConfigurationError("domain monotonicity needs Omega_1 contained in Omega_2")
    h = small.measure / n_small
    n_large = large.measure / h
    offset = (small.a - large.a) / h
    if abs(n_large - round(n_large)) > 1e-9 or abs(offset - round(offset)) > 1e-9:
        raise ConfigurationError("meshes are not aligned: Omega_1 cells must be Omega_2 cells")
    return int(round(n_large))


def check_monotonicity_domain(small: DomainSpec, large: DomainSpec, n_small: int, w: WeightSpec,
                              kmax: int = 5, N: int = 1) -> Verdict:
    """lambda_k(Omega_2) <= lambda_k(Omega_1) for Omega_1 in Omega_2, strict for k = 1."""
    n_large = aligned_sub_mesh(small, large, n_small)
    p1 = setup_problem(small, n_small, w, N)
    p2 = setup_problem(large, n_large, w, N)
    k = min(kmax, len(p1.result), len(p2.result))
    l1, l2 = p1.result.lambdas[:k], p2.result.lambdas[:k]
    weak = float(np.min(l1 + 1e-9 - l2))
    q = {"lambda_small": l1, "lambda_large": l2, "n_large": n_large}
    margin, flags = weak, []
    if (small.a, small.b) != (large.a, large.b):
        strict = float(l1[0] - l2[0]) - 1e-8
        q["strict_lambda1_margin"] = strict
        margin = min(margin, strict)
    else:
        flags.append("strict_not_applicable")
    return Verdict("monotonicity_domain", q, margin, margin >= 0, flags=flags)


# -- small-order expansion -----------------------------------------------------------

def smooth_bump(mesh: Mesh) -> np.ndarray:
    """C-infinity bump supported in the domain, sampled at cell centers."""
    a, b = mesh.domain.a, mesh.domain.b
    t = 2.0 * (mesh.centers - 0.5 * (a + b)) / (b - a)
    out = np.zeros_like(t)
    inside = np.abs(t) < 1
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - t[inside] ** 2))
    return out


def frac_expansion_errors(mats: FormMatrices, constants: DimConstants, s: float, u: np.ndarray):
    """Form-side and Pitt-side first-order errors plus the Pitt inequality slack at order s."""
    mesh = mats.mesh
    Es = assemble_frac(mesh, s, constants).Es
    frac_val = float(u @ Es @ u)
    l2 = float(u @ mats.M1 @ u)
    el = float(u @ mats.EL @ u)
    form_err = abs((frac_val - l2) / s - el)
    pitt_lhs = pitt_constant(constants.N, s) * float(np.sum(u * u * pitt_weight_integrals(mesh, s)))
    first_order = 2.0 * constants.hardy_c * l2 + 2.0 * float(u @ mats.Mlog @ u)
    pitt_err = abs((pitt_lhs - l2) / s - first_order)
    return form_err, pitt_err, frac_val - pitt_lhs, l2


def check_frac_expansion(mats: FormMatrices, constants: DimConstants, s_list, u=None) -> Verdict:
    """Errors of both first-order expansions shrink along descending s; Pitt inequality holds."""
    s_list = [float(s) for s in s_list]
    if any(b >= a for a, b in zip(s_list, s_list[1:])):
        raise ConfigurationError("s_list must be strictly descending")
    x = smooth_bump(mats.mesh) if u is None else coeffs_of(u)
    if not np.any(x):
        return Verdict("frac_expansion", {}, 0.0, True, flags=["vacuous"])
    form, pitt, pitt_slack = [], [], []
    for s in s_list:
        fe, pe, slack, l2 = frac_expansion_errors(mats, constants, s, x)
        form.append(fe)
        pitt.append(pe)
        pitt_slack.append(slack / l2)
    q = {"s": s_list, "form_err": form, "pitt_err": pitt, "pitt_slack": pitt_slack}
    margins = [min(pitt_slack) + TOLERANCES["frac_pitt"]]
    message = []
    for label, errs in (("form", form), ("pitt", pitt)):
        for i in range(len(errs) - 1):
            if not errs[i + 1] < errs[i]:
                message.append(f"{label} error not decreasing between s={s_list[i]} and s={s_list[i + 1]}")
        steps = [(errs[i] - errs[i + 1]) / errs[0] for i in range(len(errs) - 1)]
        margins.append(min(steps) if steps else 0.0)
        margins.append((0.5 * errs[0] - errs[-1]) / errs[0])
    margin = min(margins)
    passed = not message and margin >= 0
    if margins[0] < 0:
        message.append("Pitt inequality violated")
    return Verdict("frac_expansion", q, margin, passed, message="; ".join(message))


# -- Orlicz lemma ----------------------------------------------------------------------

def check_norm_lemma_sweep(mesh: Mesh, trials: int = 500, beta: float = orlicz.DEFAULT_BETA,
                           seed: int = DEFAULT_SEED) -> Verdict:
    eta, psi = orlicz.eta(beta), orlicz.psi(beta)
    worst = math.inf
    for u in random_functions(mesh.n, trials, seed):
        rep = orlicz.check_norm_lemma(u, eta, psi, mesh.h)
        worst = min(worst, (rep.rhs - rep.lhs) / rep.rhs)
    return _verdict("norm_lemma", worst, {"trials": trials}, 1e-10)


def check_w2_verdict(weight: WeightSpec, mesh: Mesh, constants: DimConstants) -> Verdict:
    rep = check_w2(weight, mesh, constants)
    return Verdict("w2_assumption", {"max_violation": rep.max_violation,
                                     "lambda0": weight.w2_lambda0, "alpha": weight.w2_alpha},
                   -rep.max_violation, rep.ok, flags=["sampled"])


# -- suite -------------------------------------------------------------------------------

def _default_compare_weight(w: WeightSpec) -> WeightSpec | None:
    """omega + 0.5 on x > 0 when omega is constant; otherwise the suite needs it configured."""
    if w.kind != "constant":
        return None
    c = float(w.params["value"])
    return WeightSpec.piecewise([0.0], [c, c + 0.5], w2_lambda0=w.w2_lambda0, w2_alpha=w.w2_alpha)


def _default_outer(domain: DomainSpec) -> DomainSpec:
    mid, r = 0.5 * (domain.a + domain.b), domain.measure
    return DomainSpec(mid - r, mid + r)


def run_all(config) -> list[Verdict]:
    """Every check on the configured problem.

    Setup failures, including the (omega_0) gate, propagate. Failures inside
    individual checks are recorded as failed verdicts and the suite goes on.
    """
    from .config import RunConfig

    if not isinstance(config, RunConfig):
        raise TypeError("run_all expects a RunConfig")
    digest = config.digest()
    seed = config.verify.seed
    trials = config.verify.trials
    beta = config.orlicz.beta
    kmax = config.solve.kmax
    domain = config.domain.spec()
    weight = config.weight.spec()
    prob = setup_problem(domain, config.n, weight, config.N, config.solve.shift_hint)
    mats, constants, result = prob.mats, prob.constants, prob.result
    kmax_eff = min(kmax, len(result))

    checks = [
        ("w2_assumption", lambda: check_w2_verdict(weight, prob.mesh, constants)),
        ("hardy", lambda: check_hardy(mats, constants, trials, seed)),
        ("sandwich", lambda: check_sandwich(mats, constants, min(trials, 200), seed)),
        ("sign_first", lambda: check_sign_first(result)),
    ]
    exploratory = not weight.is_bounded
    for k in range(2, kmax_eff + 1):
        checks.append((f"sign_changing_k{k}", lambda k=k: check_sign_changing(result, k, exploratory)))
    checks += [
        ("gap", lambda: check_gap(result)),
        ("sign_claim_random", lambda: check_sign_claim_batch(
            mats, random_functions(prob.mesh.n, min(trials, 200), seed + 1), "sign_claim_random")),
        ("sign_claim_eigenvectors", lambda: check_sign_claim_batch(
            mats, result.vectors[:, :kmax_eff].T, "sign_claim_eigenvectors")),
        ("lambda2_oddmap", lambda: check_lambda2_oddmap(mats, result, 2)),
    ]
    if kmax_eff >= 3:
        checks.append(("lambda2_oddmap_k3", lambda: check_lambda2_oddmap(mats, result, 3)))

    theta_cache = {}

    def theta_pair():
        if "pair" not in theta_cache:
            theta_cache["pair"] = orlicz.make_theta_pair(orlicz.conjugate_of(orlicz.psi(beta)))
        return theta_cache["pair"]

    for k in config.verify.nodal_k:
        if k <= len(result):
            checks.append((f"nodal_bound_k{k}", lambda k=k: check_nodal_bound(
                mats, result, constants, k, beta, theta_pair=theta_pair())))

    compare = (config.verify.compare_weight.spec() if config.verify.compare_weight is not None
               else _default_compare_weight(weight))
    if compare is not None:
        checks.append(("monotonicity_weight", lambda: check_monotonicity_weight(
            domain, config.n, weight, compare, kmax, config.N)))
    outer = (config.verify.outer_domain.spec() if config.verify.outer_domain is not None
             else _default_outer(domain))
    checks += [
        ("weight_scaling", lambda: check_weight_scaling(
            domain, config.n, weight, tuple(config.verify.scale_factors), kmax, config.N)),
        ("monotonicity_domain", lambda: check_monotonicity_domain(
            domain, outer, config.n, weight, kmax, config.N)),
        ("frac_expansion", lambda: check_frac_expansion(mats, constants, config.verify.s_list)),
        ("norm_lemma", lambda: check_norm_lemma_sweep(prob.mesh, min(trials, 500), beta, seed)),
    ]

    verdicts = []
    for name, fn in checks:
        try:
            v = fn()
        except Exception as exc:  # collected, suite continues
            v = Verdict(name, {}, -math.inf, False, flags=["error"],
                        message=f"{type(exc).__name__}: {exc}")
        v.config_digest = digest
        verdicts.append(v)
    return verdicts
