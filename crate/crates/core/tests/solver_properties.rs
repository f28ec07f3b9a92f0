use multifluid_core::diagnostics::{extremum_check, field_bounds, masses};
use multifluid_core::solver::RunSettings;
use multifluid_core::{
    AlphaMode, Forcing, Grid1D, MixtureSpec, PressureSetting, Profile, ReferenceState, Shape, Solver,
    SolverConfig, ViscosityModel, ViscositySetting,
};
use proptest::prelude::*;

fn mixture(m: [f64; 2], g: [f64; 2]) -> MixtureSpec {
    MixtureSpec::new(
        m.to_vec(),
        g.to_vec(),
        vec![0.02, 0.01],
        1.0,
        ReferenceState {
            densities: vec![1.0, 1.0],
            temperature: 1.0,
            volume: 1.0,
        },
    )
    .unwrap()
}

#[derive(Debug, Clone)]
struct Case {
    m: [f64; 2],
    g: [f64; 2],
    rho: [f64; 2],
    amp: [f64; 2],
    vel_amp: [f64; 2],
    seed: u64,
    alpha: Option<f64>,
    pointwise: bool,
    dependent: bool,
}

fn cases() -> impl Strategy<Value = Case> {
    (
        (0.5f64..4.0, 0.5f64..4.0, 1.1f64..1.8, 1.1f64..1.8),
        (0.2f64..2.0, 0.2f64..2.0, 0.0f64..0.5, 0.0f64..0.5),
        (0.0f64..0.3, 0.0f64..0.3, any::<u64>()),
        (prop::option::of(0.1f64..0.9), any::<bool>(), any::<bool>()),
    )
        .prop_map(|((m1, m2, g1, g2), (r1, r2, a1, a2), (b1, b2, seed), (alpha, pointwise, dependent))| Case {
            m: [m1, m2],
            g: [g1, g2],
            rho: [r1, r2],
            amp: [a1, a2],
            vel_amp: [b1, b2],
            seed,
            alpha,
            pointwise,
            dependent,
        })
}

fn setup(c: &Case, cells: usize) -> (Solver, multifluid_core::FieldState) {
    let grid = Grid1D::new(cells, 1.0).unwrap();
    let model = ViscosityModel::simple(vec![0.02, 0.01]).unwrap();
    let config = SolverConfig {
        grid,
        mixture: mixture(c.m, c.g),
        pressure: PressureSetting::Composite {
            k1: 1.0,
            pointwise: c.pointwise,
        },
        alpha: match c.alpha {
            Some(a) => AlphaMode::Constant(vec![a, 1.0 - a]),
            None => AlphaMode::Concentration,
        },
        viscosity: if c.dependent {
            ViscositySetting::ConcentrationDependent(model)
        } else {
            ViscositySetting::Frozen(model)
        },
        forcing: Forcing::Zero,
    };
    let profile = Profile::new(
        Shape::Random { seed: c.seed },
        &grid,
        c.rho.to_vec(),
        c.amp.to_vec(),
        vec![0.0, 0.0],
        c.vel_amp.to_vec(),
    )
    .unwrap();
    Solver::init(config, &profile).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn masses_conserved_and_concentrations_bounded(c in cases()) {
        let (solver, s0) = setup(&c, 32);
        let m0 = masses(&solver, &s0);
        let xi0 = solver.primitives(&s0).unwrap().concentration;
        let bounds: Vec<_> = xi0.iter().map(|x| field_bounds(x)).collect();
        let settings = RunSettings { max_steps: Some(200), ..RunSettings::new(10.0, 0.4) };
        let out = solver.run(s0, &settings).unwrap();
        let last = &out.final_state;
        for (a, b) in m0.iter().zip(masses(&solver, last)) {
            prop_assert!((a - b).abs() <= 1e-12 * a);
        }
        let xi = solver.primitives(last).unwrap().concentration;
        for (a, b) in xi[0].iter().zip(&xi[1]) {
            prop_assert!((a + b - 1.0).abs() <= 1e-12);
        }
        for (x, b) in xi.iter().zip(&bounds) {
            let v = extremum_check(x, *b);
            prop_assert!(v.passed, "range [{}, {}] leaves {:?}", v.min, v.max, b);
        }
    }

    #[test]
    fn dissipation_is_nonnegative(c in cases()) {
        let (solver, s0) = setup(&c, 16);
        let settings = RunSettings { max_steps: Some(50), ..RunSettings::new(10.0, 0.4) };
        let out = solver.run(s0, &settings).unwrap();
        for row in &out.diagnostics {
            prop_assert!(row.dissipation >= -1e-12);
        }
    }

    #[test]
    fn uniform_states_are_fixed_points(c in cases()) {
        let c = Case { amp: [0.0; 2], vel_amp: [0.0; 2], ..c };
        let grid = Grid1D::new(16, 1.0).unwrap();
        let (solver, _) = setup(&c, 16);
        let profile = Profile::uniform(&grid, c.rho.to_vec(), vec![0.3, -0.1]).unwrap();
        let s0 = multifluid_core::solver::init_state(
            SolverConfig {
                grid,
                mixture: solver.mixture().clone(),
                pressure: PressureSetting::Composite { k1: 1.0, pointwise: c.pointwise },
                alpha: solver.alpha_mode().clone(),
                viscosity: ViscositySetting::Frozen(ViscosityModel::simple(vec![0.02, 0.01]).unwrap()),
                forcing: Forcing::Zero,
            },
            &profile,
        )
        .unwrap()
        .1;
        let dt = solver.stable_dt(&s0, 0.4).unwrap();
        let mut s = s0.clone();
        for _ in 0..20 {
            s = solver.step(&s, dt).unwrap();
        }
        prop_assert_eq!(s.rho, s0.rho);
        prop_assert_eq!(s.momentum, s0.momentum);
    }
}
