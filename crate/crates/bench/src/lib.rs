//! Fixtures shared by the criterion benches.

use multifluid_core::mixture::{MixtureSpec, ReferenceState};

/// Two ideal gases with distinct molar masses and adiabatic indices.
pub fn two_gas() -> MixtureSpec {
    MixtureSpec::new(
        vec![2.0, 1.0],
        vec![1.4, 5.0 / 3.0],
        vec![0.02, 0.01],
        1.0,
        ReferenceState {
            densities: vec![1.0, 1.0],
            temperature: 1.0,
            volume: 1.0,
        },
    )
    .expect("fixture constants are valid")
}
