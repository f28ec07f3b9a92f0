use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FieldState, Grid1D};

/// Pointwise initial data; the solver stores cell averages of `ρ_i` and `ρ_i u_i`.
pub trait InitialCondition {
    fn n_constituents(&self) -> usize;
    fn density(&self, constituent: usize, x: f64) -> f64;
    fn velocity(&self, constituent: usize, x: f64) -> f64;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    Uniform,
    /// `sin(2π k x / L)`
    Sine { wavenumber: f64 },
    /// `exp(−(d/w)²)` with `d` the periodic distance to `center`.
    Bump { center: f64, width: f64 },
    /// Independent uniform draws in `[−1, 1]` per constituent and cell.
    Random { seed: u64 },
}

/// `ρ_i(x) = ρ̄_i (1 + a_i s(x))`, `u_i(x) = ū_i + b_i s(x)` for a named shape `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    shape: Shape,
    length: f64,
    dx: f64,
    base_density: Vec<f64>,
    density_amplitude: Vec<f64>,
    base_velocity: Vec<f64>,
    velocity_amplitude: Vec<f64>,
    // [i][cell] draws for the random shape
    density_noise: Vec<Vec<f64>>,
    velocity_noise: Vec<Vec<f64>>,
}

impl Profile {
    pub fn new(
        shape: Shape,
        grid: &Grid1D,
        base_density: Vec<f64>,
        density_amplitude: Vec<f64>,
        base_velocity: Vec<f64>,
        velocity_amplitude: Vec<f64>,
    ) -> crate::Result<Self> {
        let n = base_density.len();
        for len in [density_amplitude.len(), base_velocity.len(), velocity_amplitude.len()] {
            crate::mixture::check_len(n, len)?;
        }
        let (density_noise, velocity_noise) = match shape {
            Shape::Random { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut table = || -> Vec<Vec<f64>> {
                    (0..n)
                        .map(|_| (0..grid.n_cells()).map(|_| rng.gen_range(-1.0..=1.0)).collect())
                        .collect()
                };
                let d = table();
                (d, table())
            }
            _ => (Vec::new(), Vec::new()),
        };
        Ok(Self {
            shape,
            length: grid.length(),
            dx: grid.dx(),
            base_density,
            density_amplitude,
            base_velocity,
            velocity_amplitude,
            density_noise,
            velocity_noise,
        })
    }

    /// Uniform state with the given densities and velocities.
    pub fn uniform(grid: &Grid1D, density: Vec<f64>, velocity: Vec<f64>) -> crate::Result<Self> {
        let n = density.len();
        Self::new(Shape::Uniform, grid, density, vec![0.0; n], velocity, vec![0.0; n])
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    fn shape_value(&self, noise: &[Vec<f64>], i: usize, x: f64) -> f64 {
        match &self.shape {
            Shape::Uniform => 0.0,
            Shape::Sine { wavenumber } => (2.0 * std::f64::consts::PI * wavenumber * x / self.length).sin(),
            Shape::Bump { center, width } => {
                let mut d = (x - center).rem_euclid(self.length);
                if d > 0.5 * self.length {
                    d = self.length - d;
                }
                (-(d / width).powi(2)).exp()
            }
            Shape::Random { .. } => {
                let cells = noise[i].len();
                let k = ((x / self.dx).floor().max(0.0) as usize).min(cells - 1);
                noise[i][k]
            }
        }
    }
}

impl InitialCondition for Profile {
    fn n_constituents(&self) -> usize {
        self.base_density.len()
    }

    fn density(&self, i: usize, x: f64) -> f64 {
        self.base_density[i] * (1.0 + self.density_amplitude[i] * self.shape_value(&self.density_noise, i, x))
    }

    fn velocity(&self, i: usize, x: f64) -> f64 {
        self.base_velocity[i] + self.velocity_amplitude[i] * self.shape_value(&self.velocity_noise, i, x)
    }
}

// Three-point Gauss–Legendre on [−1/2, 1/2].
const GAUSS_NODES: [f64; 3] = [-0.387_298_334_620_741_7, 0.0, 0.387_298_334_620_741_7];
const GAUSS_WEIGHTS: [f64; 3] = [5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0];

pub(super) fn cell_averages(grid: &Grid1D, ic: &dyn InitialCondition) -> FieldState {
    let n = ic.n_constituents();
    let dx = grid.dx();
    let mut rho = vec![vec![0.0; grid.n_cells()]; n];
    let mut momentum = vec![vec![0.0; grid.n_cells()]; n];
    for k in 0..grid.n_cells() {
        let xc = grid.center(k);
        for i in 0..n {
            let (mut r, mut m) = (0.0, 0.0);
            for (s, w) in GAUSS_NODES.iter().zip(GAUSS_WEIGHTS) {
                let x = xc + s * dx;
                let d = ic.density(i, x);
                r += w * d;
                m += w * d * ic.velocity(i, x);
            }
            rho[i][k] = r;
            momentum[i][k] = m;
        }
    }
    FieldState {
        time: 0.0,
        rho,
        momentum,
    }
}
