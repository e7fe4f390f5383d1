"""Self-contained verification battery over the package's invariants.

run_all() exercises the basis, the coefficient builders, both
observable routes and the densities, then reports one record per case
with its residual and tolerance.  Closed-form series that disagree
systematically with the governing index-space route are reported under
"errata" together with the deviation actually observed and the
residual of the corrected variant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import basis, closed_forms, coherent, observables
from .basis import PhysicsConfig
from .errors import GrapheneError

SUITE_NAME = "graphene-coherent-states"

# Polar test sets: radii and angles exercised per family.
EIGEN_RADII = (0.5, 1.0, 2.0, 3.0)
EIGEN_ANGLES = (0.0, math.pi / 4.0, math.pi / 2.0)
FIGURE_B0S = (0.125, 2.0)
FIGURE_R_LISTS = {"one": (1.0, 4.0, 5.0), "shifted": (1.0, 3.0, 5.0), "cubic": (1.0, 50.0, 100.0)}
FIGURE_ANGLES = (0.0, math.pi / 4.0, math.pi / 2.0)

_FAMILIES = (coherent.ONE, coherent.SHIFTED, coherent.CUBIC)


@dataclass
class CaseResult:
    name: str
    params: dict
    residual: float
    tolerance: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def _case(name: str, params: dict, residual: float, tolerance: float) -> CaseResult:
    return CaseResult(name, params, float(residual), float(tolerance), bool(residual <= tolerance))


def _scaled_gap(a: float, b: float) -> float:
    """|a - b| scaled against max(1, |b|); b is the governing value."""
    return abs(a - b) / max(1.0, abs(b))


def suite_basis() -> list:
    cases = []

    gram = basis.overlap_gram(60)
    dev = np.max(np.abs(gram - np.eye(61)))
    cases.append(_case("basis/orthonormality", {"n_max": 60}, dev, 1e-10))

    # Ladder action checked pointwise with central differences.
    step = 1e-5
    zs = np.linspace(-6.5, 6.5, 261)
    table = basis.ho_table(21, zs)
    up = basis.ho_table(21, zs + step)
    down = basis.ho_table(21, zs - step)
    worst_low = 0.0
    worst_raise = 0.0
    for n in range(1, 21):
        deriv = (up[n] - down[n]) / (2.0 * step)
        lowered = (zs * table[n] + deriv) / math.sqrt(2.0)
        worst_low = max(worst_low, float(np.max(np.abs(lowered - math.sqrt(n) * table[n - 1]))))
        raised = (zs * table[n] - deriv) / math.sqrt(2.0)
        worst_raise = max(worst_raise, float(np.max(np.abs(raised - math.sqrt(n + 1.0) * table[n + 1]))))
    cases.append(_case("basis/lowering-action", {"n_range": "1..20", "fd_step": step}, worst_low, 1e-8))
    cases.append(_case("basis/raising-action", {"n_range": "1..20", "fd_step": step}, worst_raise, 1e-8))

    worst = 0.0
    worst_params = {}
    for b0 in (0.125, 2.0):
        cfg = PhysicsConfig(b0=b0, k=1.0)
        for n in (0, 7, 33):
            half = basis.quadrature_half_width(n)
            lo = float(cfg.x_of_z(-half))
            hi = float(cfg.x_of_z(half))

            def integrand(xs, n=n, cfg=cfg):
                z = cfg.z_of_x(xs)
                vals = basis.ho_eigenfunction(n, z)
                return cfg.scale * np.asarray(vals) ** 2

            res = abs(basis.integrate_interval(integrand, lo, hi) - 1.0)
            if res > worst:
                worst, worst_params = res, {"b0": b0, "n": n}
    cases.append(_case("basis/x-normalization", worst_params, worst, 1e-10))

    worst = 0.0
    for b0 in (0.125, 2.0, 1.0 / 3.0):
        cfg = PhysicsConfig(b0=b0)
        for n in range(1, 51):
            upper = basis.oscillator_eigenvalue(cfg, "+", n - 1)
            lower = basis.oscillator_eigenvalue(cfg, "-", n)
            worst = max(worst, abs(upper - lower))
    cases.append(_case("basis/energy-bookkeeping", {"n_max": 50}, worst, 0.0))

    return cases


def suite_coherent(cfg: PhysicsConfig) -> list:
    cases = []
    worst_norm = 0.0
    for fam in _FAMILIES:
        for r in EIGEN_RADII:
            for theta in EIGEN_ANGLES:
                alpha = r * complex(math.cos(theta), math.sin(theta))
                state = coherent.build_coefficients(fam, alpha, cfg)
                out = coherent.apply_annihilation(fam, state.coeffs)
                residual = float(np.linalg.norm(out - alpha * state.coeffs))
                cases.append(
                    _case(
                        f"coherent/eigenstate/{fam.kind}",
                        {"r": r, "theta": theta},
                        residual,
                        1e-8,
                    )
                )
                worst_norm = max(worst_norm, abs(float(np.sum(np.abs(state.coeffs) ** 2)) - 1.0))
    cases.append(_case("coherent/normalization", {"states": "eigenstate grid"}, worst_norm, 1e-12))

    zero_leak = 0.0
    for fam, zeros in ((coherent.SHIFTED, 1), (coherent.CUBIC, 2)):
        state = coherent.build_coefficients(fam, 1.5 + 0.5j, cfg)
        zero_leak = max(zero_leak, float(np.max(np.abs(state.coeffs[:zeros]))))
    cases.append(_case("coherent/support-zeros", {"families": "shifted,cubic"}, zero_leak, 0.0))

    worst = 0.0
    for fam in _FAMILIES:
        state = coherent.build_coefficients(fam, 1.7 * complex(math.cos(0.5), math.sin(0.5)), cfg)
        a = state.coeffs
        for n in range(fam.first_nonzero - 1, a.size - 1):
            lhs = coherent.c_n(fam, n + 1) * a[n + 1]
            rhs = state.alpha * a[n]
            if abs(rhs) > 0.0:
                worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1e-300))
    cases.append(_case("coherent/recursion-ratio", {"alpha": "1.7 exp(i 0.5)"}, worst, 1e-12))

    rng = np.random.default_rng(77)
    worst = 0.0
    for fam in _FAMILIES:
        vec = rng.normal(size=21) + 1j * rng.normal(size=21)
        vec /= np.linalg.norm(vec)
        worst = max(worst, _block_equivalence_residual(fam, vec))
    cases.append(_case("coherent/block-equivalence", {"n_max": 20}, worst, 1e-13))

    return cases


def _block_equivalence_residual(fam: coherent.LadderFamily, vec: np.ndarray) -> float:
    """Worst gap between the block-built annihilation action and apply_annihilation.

    The operator acts blockwise on the two spinor components: the lower
    block applies f after the plain lowering step, the upper block the
    modifier pinned by f1_consistency.  Re-projecting each output
    component onto the spinor basis must reproduce b_{n-1} = c_n a_n,
    and the two components must agree with each other.
    """
    size = vec.size
    w = np.array([basis.spinor_weight(n) for n in range(size)])
    direct = coherent.apply_annihilation(fam, vec)

    # Lower components: L[j] = w_j a_j; output L'[j] = f(j+1) sqrt(j+1) L[j+1],
    # and the output spinor expansion requires b_j = L'[j] / w_j.
    from_lower = np.zeros(size, dtype=complex)
    for j in range(size - 1):
        el = basis.ladder_matrix_elements("lower", j, j + 1)
        from_lower[j] = fam.f(j + 1) * el * w[j + 1] * vec[j + 1] / w[j]

    # Upper components: U[j] = w_{j+2} a_{j+2} at oscillator index j+1;
    # output U'[j] = f1(j) sqrt(j+1) U[j], recovered as b_{j+1} = U'[j] / w_{j+1}.
    from_upper = np.zeros(size, dtype=complex)
    for j in range(size - 2):
        el = basis.ladder_matrix_elements("lower", j, j + 1)
        from_upper[j + 1] = (
            coherent.f1_consistency(fam, j + 2) * el * w[j + 2] * vec[j + 2] / w[j + 1]
        )

    gap = float(np.max(np.abs(from_lower[:-1] - direct[:-1])))
    gap = max(gap, float(np.max(np.abs(from_upper[1:-1] - direct[1:-1]))))
    return gap


def suite_observables(cfg: PhysicsConfig) -> tuple:
    cases = []
    errata = []

    expected = {"one": 0.25, "shifted": 1.0, "cubic": 4.0}
    for fam in _FAMILIES:
        state = coherent.build_coefficients(fam, 0.0, cfg)
        mv = observables.uncertainty_product(state)
        cases.append(
            _case(
                f"observables/vacuum-product/{fam.kind}",
                {"expected": expected[fam.kind]},
                abs(mv.product - expected[fam.kind]),
                1e-9,
            )
        )

    # Closed forms against the governing contraction on a polar grid.
    radii = (0.5, 1.5, 3.0)
    for fam in _FAMILIES:
        for obs in observables.OBSERVABLES:
            worst_ref = 0.0
            worst_corr = 0.0
            worst_point = {}
            for r in radii:
                for theta in EIGEN_ANGLES:
                    alpha = r * complex(math.cos(theta), math.sin(theta))
                    state = coherent.build_coefficients(fam, alpha, cfg)
                    generic = observables.expectation_generic(state, obs)
                    ref = closed_forms.expectation_closed_form(fam, alpha, obs, cfg, "reference")
                    corr = closed_forms.expectation_closed_form(fam, alpha, obs, cfg, "corrected")
                    gap_ref = _scaled_gap(ref, generic)
                    gap_corr = _scaled_gap(corr, generic)
                    if gap_ref > worst_ref:
                        worst_ref = gap_ref
                        worst_point = {"r": r, "theta": theta}
                    worst_corr = max(worst_corr, gap_corr)
            entry = closed_forms.closed_form_erratum(fam.kind, obs)
            if entry is None:
                cases.append(
                    _case(
                        f"observables/closed-form/{fam.kind}/{obs}",
                        {"grid": "9-point polar, |alpha| <= 3"},
                        worst_ref,
                        1e-8,
                    )
                )
            else:
                cases.append(
                    _case(
                        f"observables/closed-form/{fam.kind}/{obs}/corrected",
                        {"grid": "9-point polar, |alpha| <= 3"},
                        worst_corr,
                        1e-8,
                    )
                )
                errata.append(
                    {
                        "family": entry.family,
                        "observable": entry.observable,
                        "description": entry.description,
                        "reference_deviation": worst_ref,
                        "worst_at": worst_point,
                        "corrected_residual": worst_corr,
                    }
                )

    # Momentum mean vanishes identically for real alpha, coordinate mean
    # for imaginary alpha; the contraction keeps this exact.
    worst = 0.0
    for fam in _FAMILIES:
        state = coherent.build_coefficients(fam, 1.25 + 0.0j, cfg)
        worst = max(worst, abs(observables.expectation_generic(state, "p")))
        state = coherent.build_coefficients(fam, -0.75 + 0.0j, cfg)
        worst = max(worst, abs(observables.expectation_generic(state, "p")))
        state = coherent.build_coefficients(fam, 1.5j, cfg)
        worst = max(worst, abs(observables.expectation_generic(state, "z")))
    cases.append(_case("observables/axis-parity", {"alphas": "real and imaginary"}, worst, 0.0))

    floor_gap = 0.0
    for fam in _FAMILIES:
        for r in (0.0, 0.5, 1.0, 2.0, 3.0):
            for theta in EIGEN_ANGLES:
                alpha = r * complex(math.cos(theta), math.sin(theta))
                mv = observables.uncertainty_product(coherent.build_coefficients(fam, alpha, cfg))
                floor_gap = max(floor_gap, 0.25 - mv.product)
    cases.append(_case("observables/uncertainty-floor", {"floor": 0.25}, max(0.0, floor_gap), 1e-12))

    rng = np.random.default_rng(20240815)
    worst = 0.0
    base = PhysicsConfig(b0=0.7, k=0.3)
    quad = PhysicsConfig(b0=2.8, k=0.3)
    for _ in range(10):
        alpha = complex(rng.uniform(-2.5, 2.5), rng.uniform(-2.5, 2.5))
        fam = _FAMILIES[rng.integers(0, 3)]
        e1 = observables.mean_energy(coherent.build_coefficients(fam, alpha, base))
        e2 = observables.mean_energy(coherent.build_coefficients(fam, alpha, quad))
        if e1 > 0.0:
            worst = max(worst, abs(e2 - 2.0 * e1) / e1)
    cases.append(_case("observables/energy-field-scaling", {"b0_ratio": 4.0}, worst, 1e-12))

    return cases, errata


def suite_density() -> list:
    cases = []

    for fam in _FAMILIES:
        for b0 in FIGURE_B0S:
            cfg = PhysicsConfig(b0=b0, k=1.0)
            for r in FIGURE_R_LISTS[fam.kind]:
                for theta in FIGURE_ANGLES:
                    alpha = r * complex(math.cos(theta), math.sin(theta))
                    state = coherent.build_coefficients(fam, alpha, cfg)
                    total = observables.density_normalization(state)
                    cases.append(
                        _case(
                            f"density/normalization/{fam.kind}",
                            {"b0": b0, "r": r, "theta": theta},
                            abs(total - 1.0),
                            1e-6,
                        )
                    )

    cfg = PhysicsConfig(b0=0.5, k=0.2)
    xs = np.linspace(-8.0, 8.0, 161)
    worst = 0.0
    for fam in _FAMILIES:
        for theta in (0.3, 1.1):
            plus = observables.probability_density(
                coherent.build_coefficients(fam, 1.8 * complex(math.cos(theta), math.sin(theta)), cfg), xs
            )
            minus = observables.probability_density(
                coherent.build_coefficients(fam, 1.8 * complex(math.cos(theta), -math.sin(theta)), cfg), xs
            )
            worst = max(worst, float(np.max(np.abs(plus - minus))))
    cases.append(_case("density/theta-parity", {"r": 1.8}, worst, 1e-12))

    low = 0.0
    for fam in _FAMILIES:
        state = coherent.build_coefficients(fam, 2.2 * complex(math.cos(0.9), math.sin(0.9)), cfg)
        low = min(low, float(np.min(observables.probability_density(state, xs))))
    cases.append(_case("density/positivity", {"grid": "161 x-points"}, max(0.0, -low), 0.0))

    worst = 0.0
    probe_x = np.linspace(-5.0, 5.0, 7)
    for fam in _FAMILIES:
        for r in (1.0, 2.5):
            alpha = r * complex(math.cos(math.pi / 3.0), math.sin(math.pi / 3.0))
            state = coherent.build_coefficients(fam, alpha, cfg)
            direct = observables.probability_density(state, probe_x)
            closed = closed_forms.density_closed_form(fam, alpha, cfg, probe_x, state.trunc_order)
            worst = max(worst, float(np.max(np.abs(direct - closed))))
    cases.append(_case("density/closed-form-agreement", {"radii": "1.0, 2.5"}, worst, 1e-8))

    cases.append(_density_maximum_case())
    return cases


def _argmax_refined(xs: np.ndarray, vals: np.ndarray) -> float:
    """Grid argmax sharpened by a parabola through the three top samples."""
    i = int(np.argmax(vals))
    if i == 0 or i == vals.size - 1:
        return float(xs[i])
    y0, y1, y2 = vals[i - 1], vals[i], vals[i + 1]
    denom = y0 - 2.0 * y1 + y2
    if denom == 0.0:
        return float(xs[i])
    shift = 0.5 * (y0 - y2) / denom
    return float(xs[i] + shift * (xs[i + 1] - xs[i]))


def _density_maximum_case() -> CaseResult:
    cfg = PhysicsConfig(b0=2.0, k=1.0)
    r = 4.0
    peaks = []
    for theta in FIGURE_ANGLES:
        alpha = r * complex(math.cos(theta), math.sin(theta))
        state = coherent.build_coefficients(coherent.ONE, alpha, cfg)
        lo, hi = observables.suggest_x_range(state)
        xs = np.linspace(lo, hi, 4001)
        vals = observables.probability_density(state, xs)
        peaks.append(_argmax_refined(xs, vals))
    gaps = [peaks[i + 1] - peaks[i] for i in range(len(peaks) - 1)]
    monotone = all(g > 0.0 for g in gaps) or all(g < 0.0 for g in gaps)
    direction = "increasing" if gaps[0] > 0.0 else "decreasing"
    separation = min(abs(g) for g in gaps)
    return CaseResult(
        name="density/maximum-shift",
        params={
            "family": "one",
            "b0": 2.0,
            "k": 1.0,
            "r": 4.0,
            "thetas": [0.0, math.pi / 4.0, math.pi / 2.0],
            "peaks": [float(p) for p in peaks],
            "direction": direction,
        },
        residual=0.0 if monotone else separation,
        tolerance=0.0,
        passed=monotone,
    )


def run_all() -> dict:
    """Execute every suite and assemble the JSON-shaped report."""
    cfg = PhysicsConfig(b0=0.5, k=0.0)
    cases = []
    errata = []
    cases.extend(suite_basis())
    cases.extend(suite_coherent(cfg))
    obs_cases, obs_errata = suite_observables(cfg)
    cases.extend(obs_cases)
    errata.extend(obs_errata)
    cases.extend(suite_density())
    return {
        "suite": SUITE_NAME,
        "cases": [c.to_json() for c in cases],
        "errata": errata,
    }


def all_passed(report: dict) -> bool:
    return all(case["pass"] for case in report["cases"])
