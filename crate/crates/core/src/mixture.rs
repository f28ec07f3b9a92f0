//! Constitutive quantities derived from partial densities.
//!
//! Every function here is a pure map from densities (or concentrations) and
//! the per-constituent constants held by [`MixtureSpec`] to a scalar or a
//! small vector. The solver evaluates the same quantities cell by cell through
//! the slice-level helpers at the bottom of this module.

use crate::error::{invalid, Error, Result};

/// Tolerance for `Σ ξ_i = 1` and `Σ α_i = 1`.
pub const SIMPLEX_TOL: f64 = 1e-12;

/// Reference state of a material volume: the point the adiabat passes through.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceState {
    /// Per-constituent densities `ρ_{0i}` (kg/m³).
    pub densities: Vec<f64>,
    /// Temperature `θ_0` (K).
    pub temperature: f64,
    /// Volume `V_0` (m³).
    pub volume: f64,
}

/// Per-constituent physical constants of an N-component mixture of ideal gases.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureSpec {
    molar_masses: Vec<f64>,
    gammas: Vec<f64>,
    pure_viscosities: Vec<f64>,
    gas_constant: f64,
    reference: ReferenceState,
}

impl MixtureSpec {
    pub fn new(
        molar_masses: Vec<f64>,
        gammas: Vec<f64>,
        pure_viscosities: Vec<f64>,
        gas_constant: f64,
        reference: ReferenceState,
    ) -> Result<Self> {
        let n = molar_masses.len();
        if n == 0 {
            return Err(invalid("a mixture needs at least one constituent"));
        }
        for (name, len) in [
            ("gammas", gammas.len()),
            ("pure_viscosities", pure_viscosities.len()),
            ("reference densities", reference.densities.len()),
        ] {
            if len != n {
                return Err(invalid(format!(
                    "{name} has {len} entries but there are {n} molar masses"
                )));
            }
        }
        if let Some(m) = molar_masses.iter().find(|m| !(**m > 0.0 && m.is_finite())) {
            return Err(invalid(format!("molar masses must be positive, got {m}")));
        }
        if let Some(g) = gammas.iter().find(|g| !(**g > 1.0 && g.is_finite())) {
            return Err(invalid(format!("adiabatic indices must exceed 1, got {g}")));
        }
        if let Some(mu) = pure_viscosities.iter().find(|m| !(**m >= 0.0 && m.is_finite())) {
            return Err(invalid(format!("pure viscosities must be nonnegative, got {mu}")));
        }
        if !(gas_constant > 0.0 && gas_constant.is_finite()) {
            return Err(invalid(format!("gas constant must be positive, got {gas_constant}")));
        }
        if let Some(r) = reference.densities.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
            return Err(invalid(format!("reference densities must be positive, got {r}")));
        }
        if !(reference.temperature > 0.0) || !(reference.volume > 0.0) {
            return Err(invalid("reference temperature and volume must be positive"));
        }
        Ok(Self {
            molar_masses,
            gammas,
            pure_viscosities,
            gas_constant,
            reference,
        })
    }

    /// Same as [`MixtureSpec::new`] but takes molecular degrees of freedom
    /// `ν_i` instead of adiabatic indices.
    pub fn from_degrees_of_freedom(
        molar_masses: Vec<f64>,
        dofs: Vec<f64>,
        pure_viscosities: Vec<f64>,
        gas_constant: f64,
        reference: ReferenceState,
    ) -> Result<Self> {
        if let Some(nu) = dofs.iter().find(|nu| !(**nu > 0.0 && nu.is_finite())) {
            return Err(invalid(format!("degrees of freedom must be positive, got {nu}")));
        }
        let gammas = dofs.iter().map(|&nu| gamma_from_dof(nu)).collect();
        Self::new(molar_masses, gammas, pure_viscosities, gas_constant, reference)
    }

    pub fn n_constituents(&self) -> usize {
        self.molar_masses.len()
    }

    pub fn molar_masses(&self) -> &[f64] {
        &self.molar_masses
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn degrees_of_freedom(&self) -> Vec<f64> {
        self.gammas.iter().map(|&g| dof_from_gamma(g)).collect()
    }

    pub fn pure_viscosities(&self) -> &[f64] {
        &self.pure_viscosities
    }

    pub fn gas_constant(&self) -> f64 {
        self.gas_constant
    }

    pub fn reference(&self) -> &ReferenceState {
        &self.reference
    }

    pub fn gamma_min(&self) -> f64 {
        self.gammas.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn gamma_max(&self) -> f64 {
        self.gammas.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `ν = 2/(γ − 1)`
pub fn dof_from_gamma(gamma: f64) -> f64 {
    2.0 / (gamma - 1.0)
}

/// `γ = 1 + 2/ν`
pub fn gamma_from_dof(dof: f64) -> f64 {
    1.0 + 2.0 / dof
}

/// Partial densities `ρ_i ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityVector(Vec<f64>);

impl DensityVector {
    pub fn new(rho: Vec<f64>) -> Result<Self> {
        if rho.is_empty() {
            return Err(invalid("density vector is empty"));
        }
        if let Some(r) = rho.iter().find(|r| !(**r >= 0.0 && r.is_finite())) {
            return Err(invalid(format!("partial densities must be nonnegative, got {r}")));
        }
        Ok(Self(rho))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Mass fractions `ξ_i ∈ [0, 1]` with `Σ ξ_i = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationVector(Vec<f64>);

impl ConcentrationVector {
    pub fn new(xi: Vec<f64>) -> Result<Self> {
        if xi.is_empty() {
            return Err(invalid("concentration vector is empty"));
        }
        if let Some(x) = xi.iter().find(|x| !(**x >= 0.0 && **x <= 1.0)) {
            return Err(invalid(format!("concentrations must lie in [0, 1], got {x}")));
        }
        let sum: f64 = xi.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_TOL {
            return Err(invalid(format!("concentrations must sum to 1, got {sum}")));
        }
        Ok(Self(xi))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `ξ_i = ρ_i / Σρ_j`
pub fn concentrations(rho: &DensityVector) -> Result<ConcentrationVector> {
    let total = rho.total();
    if !(total > 0.0) {
        return Err(Error::NonPositiveDensity(total));
    }
    Ok(ConcentrationVector(
        rho.as_slice().iter().map(|r| r / total).collect(),
    ))
}

/// Returns `(ρ̃, ξ̃)` with `ρ̃ = Σ ρ_i/M_i` and `ξ̃ = ρ̃/ρ`.
pub fn tilde_quantities(rho: &DensityVector, molar_masses: &[f64]) -> Result<(f64, f64)> {
    check_len(molar_masses.len(), rho.len())?;
    let total = rho.total();
    if !(total > 0.0) {
        return Err(Error::NonPositiveDensity(total));
    }
    let tilde_rho = molar_weighted_sum(rho.as_slice(), molar_masses);
    Ok((tilde_rho, tilde_rho / total))
}

/// Mixture adiabatic index
/// `γ(ξ) = 1 + (Σ ξ_i/M_i) / (Σ ξ_j/(M_j(γ_j − 1)))`.
///
/// A vanishing concentration drops out of both sums, so the simplex boundary
/// needs no special treatment.
pub fn adiabatic_index(xi: &ConcentrationVector, spec: &MixtureSpec) -> Result<f64> {
    check_len(spec.n_constituents(), xi.len())?;
    Ok(gamma_of(xi.as_slice(), spec))
}

/// How the exponent of the composite pressure law is obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaMode {
    /// A constant exponent, typically `γ` of the initial mean concentration.
    Frozen(f64),
    /// `γ(ξ)` re-evaluated from the local concentrations.
    Pointwise,
}

/// Composite pressure law `p = K₁ ρ^{γ−1} ρ̃`.
pub fn pressure_composite(
    rho: &DensityVector,
    k1: f64,
    spec: &MixtureSpec,
    gamma_mode: GammaMode,
) -> Result<f64> {
    check_len(spec.n_constituents(), rho.len())?;
    let total = rho.total();
    if !(total > 0.0) {
        return Err(Error::NonPositiveDensity(total));
    }
    if !(k1 > 0.0) {
        return Err(invalid(format!("K1 must be positive, got {k1}")));
    }
    let gamma = match gamma_mode {
        GammaMode::Frozen(g) if g > 1.0 => g,
        GammaMode::Frozen(g) => return Err(invalid(format!("gamma must exceed 1, got {g}"))),
        GammaMode::Pointwise => {
            let xi: Vec<f64> = rho.as_slice().iter().map(|r| r / total).collect();
            gamma_of(&xi, spec)
        }
    };
    let tilde_rho = molar_weighted_sum(rho.as_slice(), spec.molar_masses());
    Ok(composite_pressure(k1, total, tilde_rho, gamma))
}

/// Simple barotropic law `p = K ρ^γ`.
pub fn pressure_simple(rho_total: f64, k: f64, gamma: f64) -> Result<f64> {
    if !(rho_total > 0.0) {
        return Err(Error::NonPositiveDensity(rho_total));
    }
    if !(k > 0.0) || !(gamma > 1.0) {
        return Err(invalid(format!("need K > 0 and gamma > 1, got K={k}, gamma={gamma}")));
    }
    Ok(k * rho_total.powf(gamma))
}

/// Source of the pressure-gradient weights `α_i`.
#[derive(Debug, Clone, PartialEq)]
pub enum AlphaMode {
    /// `α_i = ξ_i`.
    Concentration,
    /// Fixed positive weights summing to one.
    Constant(Vec<f64>),
}

impl AlphaMode {
    pub fn validate(&self, n: usize) -> Result<()> {
        if let AlphaMode::Constant(a) = self {
            check_len(n, a.len())?;
            if let Some(x) = a.iter().find(|x| !(**x > 0.0)) {
                return Err(invalid(format!("alpha constants must be positive, got {x}")));
            }
            let sum: f64 = a.iter().sum();
            if (sum - 1.0).abs() > SIMPLEX_TOL {
                return Err(invalid(format!("alpha constants must sum to 1, got {sum}")));
            }
        }
        Ok(())
    }
}

pub fn alpha_coeffs(xi: &ConcentrationVector, mode: &AlphaMode) -> Result<Vec<f64>> {
    mode.validate(xi.len())?;
    Ok(match mode {
        AlphaMode::Concentration => xi.as_slice().to_vec(),
        AlphaMode::Constant(a) => a.clone(),
    })
}

/// `v = Σ α_i u_i`
pub fn average_velocity(alpha: &[f64], u: &[f64]) -> f64 {
    alpha.iter().zip(u).map(|(a, u)| a * u).sum()
}

/// Inverts `(ρ_1, ρ_2) ↦ (ρ, ρ̃)` for two constituents.
pub fn reconstruct_densities(rho_total: f64, tilde_rho: f64, m1: f64, m2: f64) -> Result<DensityVector> {
    let (r1, r2) = reconstruct_pair(rho_total, tilde_rho, m1, m2)?;
    Ok(DensityVector(vec![r1, r2]))
}

/// Raw reconstruction; components may come out negative for inadmissible
/// `(ρ, ρ̃)` pairs, which callers are expected to inspect.
pub(crate) fn reconstruct_pair(rho_total: f64, tilde_rho: f64, m1: f64, m2: f64) -> Result<(f64, f64)> {
    if m1 == m2 {
        return Err(Error::DegenerateReconstruction(m1));
    }
    if !(m1 > 0.0 && m2 > 0.0) {
        return Err(invalid("molar masses must be positive"));
    }
    let d = m1 - m2;
    Ok((
        m1 * (rho_total - m2 * tilde_rho) / d,
        m2 * (m1 * tilde_rho - rho_total) / d,
    ))
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

// Slice-level kernels shared with the solver's per-cell loop.

pub(crate) fn molar_weighted_sum(values: &[f64], molar_masses: &[f64]) -> f64 {
    values.iter().zip(molar_masses).map(|(v, m)| v / m).sum()
}

pub(crate) fn gamma_of(xi: &[f64], spec: &MixtureSpec) -> f64 {
    let (lo, hi) = (spec.gamma_min(), spec.gamma_max());
    if lo == hi {
        return lo;
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for ((x, m), g) in xi.iter().zip(spec.molar_masses()).zip(spec.gammas()) {
        num += x / m;
        den += x / (m * (g - 1.0));
    }
    // rounding can leave the interval near a pure constituent
    (1.0 + num / den).clamp(lo, hi)
}

pub(crate) fn composite_pressure(k1: f64, rho_total: f64, tilde_rho: f64, gamma: f64) -> f64 {
    k1 * rho_total.powf(gamma - 1.0) * tilde_rho
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn reference(n: usize) -> ReferenceState {
        ReferenceState {
            densities: vec![1.0; n],
            temperature: 1.0,
            volume: 1.0,
        }
    }

    fn spec(m: &[f64], g: &[f64]) -> MixtureSpec {
        MixtureSpec::new(m.to_vec(), g.to_vec(), vec![1.0; m.len()], 1.0, reference(m.len())).unwrap()
    }

    fn dv(v: &[f64]) -> DensityVector {
        DensityVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn spec_rejects_bad_constants() {
        let r = reference(2);
        assert!(MixtureSpec::new(vec![], vec![], vec![], 1.0, reference(0)).is_err());
        assert!(MixtureSpec::new(vec![1.0, 0.0], vec![1.4, 1.4], vec![0.0; 2], 1.0, r.clone()).is_err());
        assert!(MixtureSpec::new(vec![1.0, 1.0], vec![1.4, 1.0], vec![0.0; 2], 1.0, r.clone()).is_err());
        assert!(MixtureSpec::new(vec![1.0, 1.0], vec![1.4, 1.4], vec![0.0; 2], 0.0, r.clone()).is_err());
        assert!(MixtureSpec::new(vec![1.0, 1.0], vec![1.4, 1.4], vec![-1.0, 0.0], 1.0, r).is_err());
        let bad_ref = ReferenceState {
            densities: vec![1.0, 0.0],
            temperature: 1.0,
            volume: 1.0,
        };
        assert!(MixtureSpec::new(vec![1.0, 1.0], vec![1.4, 1.4], vec![0.0; 2], 1.0, bad_ref).is_err());
    }

    #[test]
    fn dof_round_trip() {
        let s = MixtureSpec::from_degrees_of_freedom(vec![1.0, 2.0], vec![3.0, 5.0], vec![0.0; 2], 1.0, reference(2))
            .unwrap();
        assert_relative_eq!(s.gammas()[0], 5.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(s.gammas()[1], 1.4, max_relative = 1e-15);
        let back = s.degrees_of_freedom();
        assert_relative_eq!(back[0], 3.0, max_relative = 1e-14);
        assert_relative_eq!(back[1], 5.0, max_relative = 1e-14);
    }

    #[test]
    fn concentrations_examples() {
        assert_eq!(concentrations(&dv(&[1.0, 1.0])).unwrap().as_slice(), &[0.5, 0.5]);
        assert_eq!(concentrations(&dv(&[3.0, 0.0])).unwrap().as_slice(), &[1.0, 0.0]);
        // 1.68573 / 1.842865 and 0.157135 / 1.842865, evaluated independently
        let xi = concentrations(&dv(&[1.68573, 0.157135])).unwrap();
        assert_relative_eq!(xi.as_slice()[0], 0.9147333092765884, max_relative = 1e-14);
        assert_relative_eq!(xi.as_slice()[1], 0.08526669072341164, max_relative = 1e-13);
        assert!(matches!(
            concentrations(&dv(&[0.0, 0.0])),
            Err(Error::NonPositiveDensity(_))
        ));
    }

    #[test]
    fn tilde_examples() {
        assert_eq!(tilde_quantities(&dv(&[1.0, 1.0]), &[1.0, 1.0]).unwrap(), (2.0, 1.0));
        assert_eq!(tilde_quantities(&dv(&[2.0, 0.0]), &[2.0, 1.0]).unwrap(), (1.0, 0.5));
        let (rt, _) = tilde_quantities(&dv(&[1.68573, 0.157135]), &[2.0, 1.0]).unwrap();
        assert_relative_eq!(rt, 1.0, max_relative = 1e-12);
        assert!(tilde_quantities(&dv(&[1.0]), &[1.0, 2.0]).is_err());
    }

    #[test]
    fn adiabatic_index_examples() {
        let s = spec(&[1.0, 3.0], &[1.4, 1.4]);
        let xi = ConcentrationVector::new(vec![0.2, 0.8]).unwrap();
        assert_relative_eq!(adiabatic_index(&xi, &s).unwrap(), 1.4, max_relative = 1e-15);

        // 1/(2/3) = 1.5 and 1/(2/5) = 2.5 weighted by 1/2: denominator 0.75 + 1.25
        let s = spec(&[1.0, 1.0], &[5.0 / 3.0, 7.0 / 5.0]);
        let xi = ConcentrationVector::new(vec![0.5, 0.5]).unwrap();
        assert_relative_eq!(adiabatic_index(&xi, &s).unwrap(), 1.5, max_relative = 1e-15);

        let xi = ConcentrationVector::new(vec![1.0, 0.0]).unwrap();
        assert_relative_eq!(adiabatic_index(&xi, &s).unwrap(), 5.0 / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn composite_pressure_examples() {
        let s = spec(&[1.0, 1.0], &[2.0, 2.0]);
        assert_eq!(pressure_composite(&dv(&[1.0, 0.0]), 1.0, &s, GammaMode::Frozen(2.0)).unwrap(), 1.0);

        let s = spec(&[2.0, 1.0], &[2.0, 2.0]);
        let p1 = pressure_composite(
            &dv(&[1.685730319472645544, 0.157134840263677227]),
            1.0,
            &s,
            GammaMode::Frozen(2.0),
        )
        .unwrap();
        assert_relative_eq!(p1, 1.842865159736322772, max_relative = 1e-14);
        let p2 = pressure_composite(
            &dv(&[0.373731740112762019, 1.002341244946340057]),
            1.0,
            &s,
            GammaMode::Frozen(2.0),
        )
        .unwrap();
        assert_relative_eq!(p2, 1.636435784595317271, max_relative = 1e-14);

        assert!(pressure_composite(&dv(&[0.0, 0.0]), 1.0, &s, GammaMode::Pointwise).is_err());
        assert!(pressure_composite(&dv(&[1.0, 0.0]), 0.0, &s, GammaMode::Pointwise).is_err());
    }

    #[test]
    fn composite_forms_agree() {
        // K₁ρ^{γ−1}ρ̃ against K₁ρ^γ ξ̃
        let s = spec(&[0.028, 0.004, 0.044], &[1.4, 5.0 / 3.0, 1.3]);
        let rho = dv(&[0.7, 0.05, 0.3]);
        let p = pressure_composite(&rho, 2.5e4, &s, GammaMode::Pointwise).unwrap();
        let xi = concentrations(&rho).unwrap();
        let g = adiabatic_index(&xi, &s).unwrap();
        let (_, tx) = tilde_quantities(&rho, s.molar_masses()).unwrap();
        let alt = 2.5e4 * rho.total().powf(g) * tx;
        assert_relative_eq!(p, alt, max_relative = 1e-12);
    }

    #[test]
    fn simple_pressure_examples() {
        assert_eq!(pressure_simple(1.0, 1.0, 1.7).unwrap(), 1.0);
        assert_eq!(pressure_simple(2.0, 1.0, 2.0).unwrap(), 4.0);
        assert_relative_eq!(pressure_simple(8.0, 1.0, 5.0 / 3.0).unwrap(), 32.0, max_relative = 1e-14);
        assert!(pressure_simple(0.0, 1.0, 2.0).is_err());
        assert!(pressure_simple(-1.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn alpha_examples() {
        let xi = ConcentrationVector::new(vec![0.3, 0.7]).unwrap();
        assert_eq!(alpha_coeffs(&xi, &AlphaMode::Concentration).unwrap(), vec![0.3, 0.7]);
        assert_eq!(
            alpha_coeffs(&xi, &AlphaMode::Constant(vec![0.5, 0.5])).unwrap(),
            vec![0.5, 0.5]
        );
        let xi = ConcentrationVector::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(alpha_coeffs(&xi, &AlphaMode::Concentration).unwrap(), vec![1.0, 0.0]);
        assert!(alpha_coeffs(&xi, &AlphaMode::Constant(vec![0.6, 0.6])).is_err());
        assert!(alpha_coeffs(&xi, &AlphaMode::Constant(vec![1.2, -0.2])).is_err());
    }

    #[test]
    fn average_velocity_examples() {
        assert_eq!(average_velocity(&[0.2, 0.8], &[1.0, 1.0]), 1.0);
        assert_eq!(average_velocity(&[0.5, 0.5], &[0.0, 2.0]), 1.0);
        assert_relative_eq!(average_velocity(&[0.3, 0.7], &[1.0, -1.0]), -0.4, max_relative = 1e-15);
    }

    #[test]
    fn reconstruction_examples() {
        assert_eq!(reconstruct_densities(2.0, 1.5, 2.0, 1.0).unwrap().as_slice(), &[1.0, 1.0]);
        let r = reconstruct_densities(1.842865159736322772, 1.0, 2.0, 1.0).unwrap();
        assert_relative_eq!(r.as_slice()[0], 1.685730319472645544, max_relative = 1e-14);
        assert_relative_eq!(r.as_slice()[1], 0.157134840263677227, max_relative = 1e-13);
        let r = reconstruct_densities(1.376072985059102076, 1.189207115002721066, 2.0, 1.0).unwrap();
        assert_relative_eq!(r.as_slice()[0], 0.373731740112762019, max_relative = 1e-13);
        assert_relative_eq!(r.as_slice()[1], 1.002341244946340057, max_relative = 1e-13);
        assert!(matches!(
            reconstruct_densities(1.0, 1.0, 1.5, 1.5),
            Err(Error::DegenerateReconstruction(_))
        ));
    }

    fn simplex2() -> impl Strategy<Value = [f64; 2]> {
        (0.0f64..=1.0).prop_map(|t| [t, 1.0 - t])
    }

    proptest! {
        #[test]
        fn concentrations_sum_to_one(rho in proptest::collection::vec(0.0f64..1e3, 1..6)) {
            prop_assume!(rho.iter().sum::<f64>() > 1e-9);
            let xi = concentrations(&dv(&rho)).unwrap();
            prop_assert!((xi.as_slice().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn gamma_within_constituent_range(
            xi in simplex2(),
            g1 in 1.01f64..3.0,
            g2 in 1.01f64..3.0,
            m1 in 0.002f64..0.2,
            m2 in 0.002f64..0.2,
        ) {
            let s = spec(&[m1, m2], &[g1, g2]);
            let g = adiabatic_index(&ConcentrationVector::new(xi.to_vec()).unwrap(), &s).unwrap();
            prop_assert!(g >= g1.min(g2) && g <= g1.max(g2));
        }

        #[test]
        fn equal_indices_are_reproduced_exactly(
            xi in simplex2(),
            g in 1.01f64..3.0,
            m1 in 0.002f64..0.2,
            m2 in 0.002f64..0.2,
        ) {
            let s = spec(&[m1, m2], &[g, g]);
            prop_assert_eq!(adiabatic_index(&ConcentrationVector::new(xi.to_vec()).unwrap(), &s).unwrap(), g);
        }

        #[test]
        fn reconstruction_inverts_tilde(
            r1 in 1e-3f64..10.0,
            r2 in 1e-3f64..10.0,
            m1 in 0.5f64..5.0,
            dm in 0.01f64..5.0,
        ) {
            let m2 = m1 + dm;
            let (rt, _) = tilde_quantities(&dv(&[r1, r2]), &[m1, m2]).unwrap();
            let back = reconstruct_densities(r1 + r2, rt, m1, m2).unwrap();
            let scale = r1 + r2;
            prop_assert!((back.as_slice()[0] - r1).abs() <= 1e-10 * scale * (m2 / dm));
            prop_assert!((back.as_slice()[1] - r2).abs() <= 1e-10 * scale * (m2 / dm));
        }

        #[test]
        fn simple_pressure_strictly_increasing(
            a in 1e-3f64..1e3,
            b in 1e-3f64..1e3,
            k in 1e-3f64..1e3,
            g in 1.01f64..3.0,
        ) {
            prop_assume!(a < b * (1.0 - 1e-9));
            prop_assert!(pressure_simple(a, k, g).unwrap() < pressure_simple(b, k, g).unwrap());
        }
    }
}
