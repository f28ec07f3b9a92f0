//! Two-constituent states on which the composite law `p = ρ^{γ−1}ρ̃`
//! (`K₁ = 1`) is not monotone.
//!
//! Both constructions start from `ρ̃¹ = 1`, `ρ̃² = (M₁/M₂)^{(γ−1)/(2γ)}`,
//! `ρ¹ = M₁ − ε`, `ρ² = (M₂ + ε)ρ̃²` and differ only in how `ε` is chosen.
//! Component densities are recovered with
//! [`reconstruct_densities`](crate::mixture::reconstruct_densities) and the
//! pressures are evaluated from those components.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::mixture::{composite_pressure, molar_weighted_sum, reconstruct_pair};

/// Products whose magnitude falls below this fraction of the scale of the
/// compared quantities are flagged as near-degenerate.
const DEGENERATE_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CaseKind {
    /// Non-monotone in `ρ̃`.
    TildeRho,
    /// Non-monotone in `ρ` for the given ratio `(M₁ − ε)/(M₂ + ε)`.
    TotalRho { ratio: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CounterexampleState {
    pub total_density: f64,
    pub tilde_density: f64,
    pub components: [f64; 2],
    pub pressure: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// `(p² − p¹)(ρ̃² − ρ̃¹) < 0` with positive components.
    TildeRhoViolated,
    /// `(p² − p¹)(ρ² − ρ¹) < 0` with positive components.
    TotalRhoViolated,
    NotReproduced,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::TildeRhoViolated => "non-monotone-in-tilde-rho",
            Verdict::TotalRhoViolated => "non-monotone-in-rho",
            Verdict::NotReproduced => "not-reproduced",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CounterexampleReport {
    pub m1: f64,
    pub m2: f64,
    pub gamma: f64,
    pub epsilon: f64,
    pub kind: CaseKind,
    pub states: [CounterexampleState; 2],
    /// `(p² − p¹)(ρ̃² − ρ̃¹)`
    pub product_tilde: f64,
    /// `(p² − p¹)(ρ² − ρ¹)`
    pub product_total: f64,
    pub all_positive: bool,
    pub verdict: Verdict,
    pub near_degenerate: bool,
}

impl CounterexampleReport {
    /// The product the construction is designed to make negative.
    pub fn target_product(&self) -> f64 {
        match self.kind {
            CaseKind::TildeRho => self.product_tilde,
            CaseKind::TotalRho { .. } => self.product_total,
        }
    }

    pub fn reproduced(&self) -> bool {
        self.verdict != Verdict::NotReproduced
    }
}

fn check_params(m1: f64, m2: f64, gamma: f64) -> Result<()> {
    if !(m2 > 0.0 && m1 > m2 && m1.is_finite()) {
        return Err(invalid(format!("need M1 > M2 > 0, got M1={m1}, M2={m2}")));
    }
    if !(gamma > 1.0 && gamma.is_finite()) {
        return Err(invalid(format!("gamma must exceed 1, got {gamma}")));
    }
    Ok(())
}

fn tilde_rho_second(m1: f64, m2: f64, gamma: f64) -> f64 {
    (m1 / m2).powf((gamma - 1.0) / (2.0 * gamma))
}

/// `ε = (√(M₁M₂)/3)·(M₁ − M₂)/(M₁ + M₂)`
pub fn case_tilde_rho(m1: f64, m2: f64, gamma: f64) -> Result<CounterexampleReport> {
    check_params(m1, m2, gamma)?;
    let eps = (m1 * m2).sqrt() / 3.0 * (m1 - m2) / (m1 + m2);
    build(m1, m2, gamma, eps, CaseKind::TildeRho)
}

/// Open interval `((M₁/M₂)^{(γ−1)/(2γ)}, (M₁/M₂)^{1/2})` for the ratio
/// `(M₁ − ε)/(M₂ + ε)`.
pub fn total_ratio_bounds(m1: f64, m2: f64, gamma: f64) -> (f64, f64) {
    (tilde_rho_second(m1, m2, gamma), (m1 / m2).sqrt())
}

/// `ε = (M₁ − rM₂)/(1 + r)`; `r` defaults to the geometric mean of the bounds.
pub fn case_total_rho(m1: f64, m2: f64, gamma: f64, ratio: Option<f64>) -> Result<CounterexampleReport> {
    check_params(m1, m2, gamma)?;
    let (lower, upper) = total_ratio_bounds(m1, m2, gamma);
    let ratio = ratio.unwrap_or_else(|| (lower * upper).sqrt());
    if !(ratio > lower && ratio < upper) {
        return Err(Error::RatioOutOfRange { ratio, lower, upper });
    }
    let eps = (m1 - ratio * m2) / (1.0 + ratio);
    build(m1, m2, gamma, eps, CaseKind::TotalRho { ratio })
}

fn build(m1: f64, m2: f64, gamma: f64, eps: f64, kind: CaseKind) -> Result<CounterexampleReport> {
    let tilde2 = tilde_rho_second(m1, m2, gamma);
    let pairs = [(m1 - eps, 1.0), ((m2 + eps) * tilde2, tilde2)];
    let mut states = [CounterexampleState {
        total_density: 0.0,
        tilde_density: 0.0,
        components: [0.0; 2],
        pressure: 0.0,
    }; 2];
    for (state, (rho, tilde)) in states.iter_mut().zip(pairs) {
        let (r1, r2) = reconstruct_pair(rho, tilde, m1, m2)?;
        state.total_density = rho;
        state.tilde_density = tilde;
        state.components = [r1, r2];
        state.pressure = component_pressure([r1, r2], m1, m2, gamma);
    }
    let [a, b] = states;
    let dp = b.pressure - a.pressure;
    let product_tilde = dp * (b.tilde_density - a.tilde_density);
    let product_total = dp * (b.total_density - a.total_density);
    let all_positive = states.iter().all(|s| s.components.iter().all(|&c| c > 0.0));
    let (target, scale) = match kind {
        CaseKind::TildeRho => (product_tilde, a.pressure * a.tilde_density),
        CaseKind::TotalRho { .. } => (product_total, a.pressure * a.total_density),
    };
    let verdict = match (all_positive && target < 0.0, kind) {
        (false, _) => Verdict::NotReproduced,
        (true, CaseKind::TildeRho) => Verdict::TildeRhoViolated,
        (true, CaseKind::TotalRho { .. }) => Verdict::TotalRhoViolated,
    };
    Ok(CounterexampleReport {
        m1,
        m2,
        gamma,
        epsilon: eps,
        kind,
        states,
        product_tilde,
        product_total,
        all_positive,
        verdict,
        near_degenerate: target.abs() < DEGENERATE_MARGIN * scale.abs(),
    })
}

/// `p = ρ^{γ−1} ρ̃` evaluated from the component densities.
fn component_pressure(rho: [f64; 2], m1: f64, m2: f64, gamma: f64) -> f64 {
    let total = rho[0] + rho[1];
    composite_pressure(1.0, total, molar_weighted_sum(&rho, &[m1, m2]), gamma)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralCounterexample {
    /// `∫ (p(ρ¹) − p(ρ²)) (w·ρ¹ − w·ρ²)` over the two-cell domain.
    pub value: f64,
    /// `|Ω| (p_A − p_B)(w·ρ_A − w·ρ_B)`
    pub pointwise_scaled: f64,
    /// Componentwise `∫ρ¹` and `∫ρ²`.
    pub masses_first: [f64; 2],
    pub masses_second: [f64; 2],
    /// Cell values of the two distributions, `[cell][component]`.
    pub first: [[f64; 2]; 2],
    pub second: [[f64; 2]; 2],
}

impl IntegralCounterexample {
    pub fn masses_equal(&self) -> bool {
        self.masses_first == self.masses_second
    }
}

/// Splits `Ω` into two halves; the first distribution takes state A on the
/// left half and B on the right, the second swaps them.
pub fn integral_counterexample(report: &CounterexampleReport, weight: [f64; 2], measure: f64) -> Result<IntegralCounterexample> {
    if !(measure > 0.0 && measure.is_finite()) {
        return Err(invalid(format!("domain measure must be positive, got {measure}")));
    }
    let [a, b] = report.states;
    if !report.all_positive {
        return Err(invalid("report states must have positive components"));
    }
    let half = 0.5 * measure;
    let first = [a.components, b.components];
    let second = [b.components, a.components];
    let pressure = |c: [f64; 2]| component_pressure(c, report.m1, report.m2, report.gamma);
    let dot = |c: [f64; 2]| weight[0] * c[0] + weight[1] * c[1];

    let mut value = 0.0;
    let mut masses_first = [0.0; 2];
    let mut masses_second = [0.0; 2];
    for cell in 0..2 {
        let (r1, r2) = (first[cell], second[cell]);
        value += half * (pressure(r1) - pressure(r2)) * (dot(r1) - dot(r2));
        for j in 0..2 {
            masses_first[j] += half * r1[j];
            masses_second[j] += half * r2[j];
        }
    }
    let pointwise_scaled = measure * (a.pressure - b.pressure) * (dot(a.components) - dot(b.components));
    Ok(IntegralCounterexample {
        value,
        pointwise_scaled,
        masses_first,
        masses_second,
        first,
        second,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightChoice {
    Fixed([f64; 2]),
    /// `w = (1/M₁, 1/M₂)` of each draw, i.e. the `ρ̃` combination.
    InverseMolar,
}

impl WeightChoice {
    pub fn resolve(&self, m1: f64, m2: f64) -> [f64; 2] {
        match *self {
            WeightChoice::Fixed(w) => w,
            WeightChoice::InverseMolar => [1.0 / m1, 1.0 / m2],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchRanges {
    pub m1: (f64, f64),
    pub m2: (f64, f64),
    pub gamma: (f64, f64),
}

impl Default for SearchRanges {
    fn default() -> Self {
        Self {
            m1: (1.5, 3.0),
            m2: (0.5, 1.0),
            gamma: (1.2, 3.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SearchOutcome {
    Found {
        report: CounterexampleReport,
        weight: [f64; 2],
        value: f64,
        /// 1-based index of the draw that produced the hit.
        draw: usize,
    },
    Exhausted {
        samples: usize,
    },
}

/// Random search for parameters whose two-cell integral is negative for the
/// weight `w`. Each admissible draw `(M₁, M₂, γ, t)` is tried with both
/// constructions, the ratio of the `ρ` case being `lo^{1−t} hi^t`.
pub fn weight_search(weight: WeightChoice, ranges: SearchRanges, samples: usize, seed: u64) -> Result<SearchOutcome> {
    for (name, (lo, hi)) in [("M1", ranges.m1), ("M2", ranges.m2), ("gamma", ranges.gamma)] {
        if !(lo <= hi && lo.is_finite() && hi.is_finite()) {
            return Err(invalid(format!("empty or non-finite range for {name}: [{lo}, {hi}]")));
        }
    }
    if !(ranges.m2.0 > 0.0 && ranges.gamma.0 > 1.0) {
        return Err(invalid("search ranges need M2 > 0 and gamma > 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw_in = |(lo, hi): (f64, f64), rng: &mut ChaCha8Rng| lo + (hi - lo) * rng.gen::<f64>();
    for draw in 1..=samples {
        let m1 = draw_in(ranges.m1, &mut rng);
        let m2 = draw_in(ranges.m2, &mut rng);
        let gamma = draw_in(ranges.gamma, &mut rng);
        let t: f64 = rng.gen_range(0.05..0.95);
        if !(m1 > m2) || !(gamma > 1.0) {
            continue;
        }
        let w = weight.resolve(m1, m2);
        let (lo, hi) = total_ratio_bounds(m1, m2, gamma);
        let ratio = lo.powf(1.0 - t) * hi.powf(t);
        let candidates = [
            case_tilde_rho(m1, m2, gamma),
            case_total_rho(m1, m2, gamma, Some(ratio)),
        ];
        for report in candidates.into_iter().flatten() {
            if !report.all_positive {
                continue;
            }
            let integral = integral_counterexample(&report, w, 1.0)?;
            if integral.value < 0.0 {
                return Ok(SearchOutcome::Found {
                    report,
                    weight: w,
                    value: integral.value,
                    draw,
                });
            }
        }
    }
    Ok(SearchOutcome::Exhausted { samples })
}
