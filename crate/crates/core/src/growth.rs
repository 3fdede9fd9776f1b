//! Particle-number growth law dN/dt = sqrt(N)/tau and the trajectory it
//! drives, where tau = hbar/mc^2 is the rest-energy oscillation time of the
//! constituent mass.
//!
//! The closed form is sqrt(N(t)) = sqrt(N0) + t/(2 tau). Alongside it sit a
//! fixed-step fourth-order Runge-Kutta integrator (the convergence witness)
//! and a stochastic mode that draws whole-number increments with the same
//! mean rate. Every point carries the derived radius R = G m N / c^2 and
//! the local expansion rate H = (dN/dt)/N = 1/(tau sqrt(N)).

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Normal, Poisson};
use thiserror::Error;

use crate::quantity::{Dimension, Quantity};
use crate::registry::Registry;
use crate::relations::ops::{compton_scales, schwarzschild_radius};
use crate::relations::{expect_dim, expect_positive, EngineError};

/// Above this mean increment, Poisson draws switch to their Gaussian
/// approximation; exact Poisson sampling is wasteful at cosmological rates.
const GAUSSIAN_SWITCHOVER: f64 = 1e6;

/// A step's mean increment may not exceed this fraction of N.
const STABILITY_FRACTION: f64 = 0.1;

/// Hard cap on steps per run, to keep mistyped step sizes from hanging.
const MAX_STEPS: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthMode {
    Exact,
    Rk4,
    Stochastic,
}

impl fmt::Display for GrowthMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthMode::Exact => write!(f, "exact"),
            GrowthMode::Rk4 => write!(f, "rk4"),
            GrowthMode::Stochastic => write!(f, "stochastic"),
        }
    }
}

impl FromStr for GrowthMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(GrowthMode::Exact),
            "rk4" => Ok(GrowthMode::Rk4),
            "stochastic" => Ok(GrowthMode::Stochastic),
            other => Err(format!(
                "unknown mode \"{other}\", expected exact, rk4, or stochastic"
            )),
        }
    }
}

/// Run parameters. Times are plain seconds; the constituent mass is a
/// dimensioned quantity so the clock tau can be derived from it.
#[derive(Debug, Clone)]
pub struct GrowthParams {
    pub mass: Quantity,
    /// Initial count. The numerical modes need n0 >= 1 because sqrt(N) has
    /// no Lipschitz bound at zero; only the closed form handles n0 = 0.
    pub n0: f64,
    /// Horizon in seconds; rounded to a whole number of steps.
    pub t_end: f64,
    /// Step in seconds.
    pub dt: f64,
    pub mode: GrowthMode,
    pub seed: u64,
    /// Members in the stochastic ensemble; ignored by the other modes.
    pub ensemble_size: usize,
    /// Keep every stride-th step (the final step is always kept).
    pub stride: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    /// Seconds.
    pub t: f64,
    /// Particle count.
    pub n: f64,
    /// Radius G m N / c^2 in centimetres.
    pub r: f64,
    /// Local expansion rate (dN/dt)/N in inverse seconds; infinite at N = 0.
    pub h_local: f64,
}

#[derive(Debug, Error)]
pub enum GrowthError {
    #[error("invalid growth parameters: {what}")]
    InvalidParams { what: String },
    #[error("integration produced a non-finite count at step {step} (t = {t:e} s)")]
    Integration { step: u64, t: f64 },
    #[error("timestep too large at step {step}: mean increment {mean_step:e} exceeds {limit:e}, one tenth of the current count")]
    Stability {
        step: u64,
        mean_step: f64,
        limit: f64,
    },
    #[error("need at least 3 uniformly spaced trajectory points, got {got}")]
    TooFewPoints { got: usize },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// The growth clock tau = hbar/mc^2 for the given constituent mass.
pub fn characteristic_time(reg: &Registry, m: Quantity) -> Result<Quantity, EngineError> {
    Ok(compton_scales(reg, m)?.1)
}

/// Closed-form sqrt(N) from a zero-count start: sqrt(N(t)) = t/(2 tau).
pub fn exact_root_n(reg: &Registry, t: Quantity, m: Quantity) -> Result<Quantity, EngineError> {
    expect_dim(t, Dimension::time())?;
    if t.value() < 0.0 {
        return Err(EngineError::Precondition {
            what: format!("time must be non-negative, got {:e}", t.value()),
        });
    }
    let tau = characteristic_time(reg, m)?;
    Ok(t.div(tau.scale(2.0)?)?)
}

struct RunSetup {
    tau: f64,
    /// G m / c^2: radius contributed per unit count.
    r_unit: f64,
    n_steps: u64,
    stride: u64,
}

fn validate(reg: &Registry, params: &GrowthParams) -> Result<RunSetup, GrowthError> {
    let invalid = |what: String| GrowthError::InvalidParams { what };

    expect_dim(params.mass, Dimension::mass())?;
    expect_positive(params.mass, "mass")?;
    if !(params.dt.is_finite() && params.dt > 0.0) {
        return Err(invalid(format!("dt must be positive, got {:e}", params.dt)));
    }
    if !(params.t_end.is_finite() && params.t_end >= params.dt) {
        return Err(invalid(format!(
            "t_end must be at least one step, got t_end {:e} with dt {:e}",
            params.t_end, params.dt
        )));
    }
    if !(params.n0.is_finite() && params.n0 >= 0.0) {
        return Err(invalid(format!(
            "initial count must be non-negative, got {:e}",
            params.n0
        )));
    }
    if params.mode != GrowthMode::Exact && params.n0 < 1.0 {
        return Err(invalid(format!(
            "{} mode needs an initial count of at least 1, got {:e}",
            params.mode, params.n0
        )));
    }
    if params.mode == GrowthMode::Stochastic && params.ensemble_size == 0 {
        return Err(invalid("ensemble size must be at least 1".to_string()));
    }
    if params.stride == 0 {
        return Err(invalid("stride must be at least 1".to_string()));
    }
    let n_steps = (params.t_end / params.dt).round() as u64;
    if n_steps == 0 {
        return Err(invalid("horizon rounds to zero steps".to_string()));
    }
    if n_steps > MAX_STEPS {
        return Err(invalid(format!(
            "{n_steps} steps exceed the cap of {MAX_STEPS}"
        )));
    }
    let tau = characteristic_time(reg, params.mass)?.value();
    let r_unit = schwarzschild_radius(reg, params.mass)?.value();
    Ok(RunSetup {
        tau,
        r_unit,
        n_steps,
        stride: params.stride as u64,
    })
}

fn point(setup: &RunSetup, t: f64, n: f64) -> TrajectoryPoint {
    let h_local = if n > 0.0 {
        1.0 / (setup.tau * n.sqrt())
    } else {
        f64::INFINITY
    };
    TrajectoryPoint {
        t,
        n,
        r: setup.r_unit * n,
        h_local,
    }
}

fn keep(k: u64, setup: &RunSetup) -> bool {
    k.is_multiple_of(setup.stride) || k == setup.n_steps
}

/// Deterministic trajectory in exact or rk4 mode. Points are stored every
/// stride steps plus the final step; timestamps are recomputed as k*dt so
/// no rounding accumulates.
pub fn integrate(
    reg: &Registry,
    params: &GrowthParams,
) -> Result<Vec<TrajectoryPoint>, GrowthError> {
    let setup = validate(reg, params)?;
    match params.mode {
        GrowthMode::Exact => {
            let root0 = params.n0.sqrt();
            let mut points = Vec::new();
            for k in 0..=setup.n_steps {
                if !keep(k, &setup) {
                    continue;
                }
                let t = k as f64 * params.dt;
                let root = root0 + t / (2.0 * setup.tau);
                points.push(point(&setup, t, root * root));
            }
            Ok(points)
        }
        GrowthMode::Rk4 => {
            let rate = |n: f64| n.sqrt() / setup.tau;
            let mut n = params.n0;
            let mut points = vec![point(&setup, 0.0, n)];
            for k in 0..setup.n_steps {
                let dt = params.dt;
                let k1 = rate(n);
                let k2 = rate(n + 0.5 * dt * k1);
                let k3 = rate(n + 0.5 * dt * k2);
                let k4 = rate(n + dt * k3);
                n += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                let t = (k + 1) as f64 * dt;
                if !n.is_finite() {
                    return Err(GrowthError::Integration { step: k + 1, t });
                }
                if keep(k + 1, &setup) {
                    points.push(point(&setup, t, n));
                }
            }
            Ok(points)
        }
        GrowthMode::Stochastic => Err(GrowthError::InvalidParams {
            what: "stochastic runs go through simulate_stochastic".to_string(),
        }),
    }
}

/// One whole-number growth increment with the given mean: Poisson below the
/// switchover, Gaussian (clamped at zero) above it.
pub(crate) fn draw_increment<R: Rng>(rng: &mut R, mean: f64) -> f64 {
    if mean < GAUSSIAN_SWITCHOVER {
        let pois = Poisson::new(mean).expect("mean is positive and finite");
        rng.sample(pois)
    } else {
        let normal = Normal::new(mean, mean.sqrt()).expect("mean is positive and finite");
        rng.sample::<f64, _>(normal).max(0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StochasticRun {
    /// One stored trajectory per member, in member order.
    pub trajectories: Vec<Vec<TrajectoryPoint>>,
    /// Ensemble-mean count at each stored time, with R and H derived from
    /// the mean.
    pub mean: Vec<TrajectoryPoint>,
    /// Sample standard deviation of the count at each stored time.
    pub std_n: Vec<f64>,
    /// Mean and sample standard deviation of sqrt(N) at the final time.
    pub mean_sqrt_n_end: f64,
    pub std_sqrt_n_end: f64,
}

impl StochasticRun {
    pub fn ensemble_size(&self) -> usize {
        self.trajectories.len()
    }

    /// Standard error of the final-time mean of sqrt(N).
    pub fn se_sqrt_n_end(&self) -> f64 {
        self.std_sqrt_n_end / (self.ensemble_size() as f64).sqrt()
    }
}

/// Monte Carlo ensemble of growth trajectories. Member i runs on its own
/// generator seeded with seed + i, so members are independent and each is
/// reproducible on its own.
pub fn simulate_stochastic(
    reg: &Registry,
    params: &GrowthParams,
) -> Result<StochasticRun, GrowthError> {
    if params.mode != GrowthMode::Stochastic {
        return Err(GrowthError::InvalidParams {
            what: format!(
                "simulate_stochastic needs stochastic mode, got {}",
                params.mode
            ),
        });
    }
    let setup = validate(reg, params)?;
    let mut trajectories = Vec::with_capacity(params.ensemble_size);
    for member in 0..params.ensemble_size {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed.wrapping_add(member as u64));
        let mut n = params.n0;
        let mut points = vec![point(&setup, 0.0, n)];
        for k in 0..setup.n_steps {
            let mean_step = n.sqrt() * params.dt / setup.tau;
            let limit = STABILITY_FRACTION * n;
            if mean_step > limit {
                return Err(GrowthError::Stability {
                    step: k,
                    mean_step,
                    limit,
                });
            }
            n += draw_increment(&mut rng, mean_step);
            let t = (k + 1) as f64 * params.dt;
            if !n.is_finite() {
                return Err(GrowthError::Integration { step: k + 1, t });
            }
            if keep(k + 1, &setup) {
                points.push(point(&setup, t, n));
            }
        }
        trajectories.push(points);
    }

    let stored = trajectories[0].len();
    let members = trajectories.len() as f64;
    let mut mean = Vec::with_capacity(stored);
    let mut std_n = Vec::with_capacity(stored);
    for idx in 0..stored {
        let t = trajectories[0][idx].t;
        let mean_count = trajectories.iter().map(|tr| tr[idx].n).sum::<f64>() / members;
        let var = if trajectories.len() > 1 {
            trajectories
                .iter()
                .map(|tr| (tr[idx].n - mean_count).powi(2))
                .sum::<f64>()
                / (members - 1.0)
        } else {
            0.0
        };
        mean.push(point(&setup, t, mean_count));
        std_n.push(var.sqrt());
    }

    let roots: Vec<f64> = trajectories
        .iter()
        .map(|tr| tr.last().expect("at least one point").n.sqrt())
        .collect();
    let mean_sqrt_n_end = roots.iter().sum::<f64>() / members;
    let std_sqrt_n_end = if roots.len() > 1 {
        (roots
            .iter()
            .map(|r| (r - mean_sqrt_n_end).powi(2))
            .sum::<f64>()
            / (members - 1.0))
            .sqrt()
    } else {
        0.0
    };

    Ok(StochasticRun {
        trajectories,
        mean,
        std_n,
        mean_sqrt_n_end,
        std_sqrt_n_end,
    })
}

/// Largest relative deviation from the identity d2R/dt2 = H^2 R / 2 along a
/// uniformly spaced trajectory, with the second derivative taken by central
/// differences. The closed-form trajectory satisfies the identity exactly.
pub fn check_acceleration(points: &[TrajectoryPoint]) -> Result<f64, GrowthError> {
    if points.len() < 3 {
        return Err(GrowthError::TooFewPoints { got: points.len() });
    }
    let dt = points[1].t - points[0].t;
    for pair in points.windows(2) {
        let step = pair[1].t - pair[0].t;
        if !step.is_finite() || step <= 0.0 || (step / dt - 1.0).abs() > 1e-9 {
            return Err(GrowthError::InvalidParams {
                what: format!("points must be uniformly spaced, found steps {dt:e} and {step:e}"),
            });
        }
    }
    let mut worst: f64 = 0.0;
    for j in 1..points.len() - 1 {
        let second = (points[j + 1].r - 2.0 * points[j].r + points[j - 1].r) / (dt * dt);
        let expected = points[j].h_local.powi(2) * points[j].r / 2.0;
        if !(expected.is_finite() && expected > 0.0) {
            return Err(GrowthError::InvalidParams {
                what: format!(
                    "acceleration is undefined at t = {:e} where N = 0",
                    points[j].t
                ),
            });
        }
        worst = worst.max((second - expected).abs() / expected);
    }
    Ok(worst)
}

/// CSV export, header `t,N,R,H_local`, one row per stored point, CGS units,
/// shortest-round-trip values.
pub fn trajectory_csv(points: &[TrajectoryPoint]) -> String {
    let mut out = String::from("t,N,R,H_local\n");
    for p in points {
        out.push_str(&format!("{:e},{:e},{:e},{:e}\n", p.t, p.n, p.r, p.h_local));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(got: f64, want: f64) {
        assert!(
            (got / want - 1.0).abs() < 1e-12,
            "got {got:e}, want {want:e}"
        );
    }

    fn reg() -> Registry {
        Registry::with_defaults()
    }

    fn pion_params(mode: GrowthMode) -> GrowthParams {
        let reg = reg();
        GrowthParams {
            mass: reg.quantity("m_pi").unwrap(),
            n0: 0.0,
            t_end: 1e17,
            dt: 1e15,
            mode,
            seed: 42,
            ensemble_size: 1,
            stride: 1,
        }
    }

    const TAU_PI: f64 = 4.717792401682505e-24;

    #[test]
    fn closed_form_root_count() {
        let reg = reg();
        let m_pi = reg.quantity("m_pi").unwrap();

        let zero = exact_root_n(&reg, Quantity::seconds(0.0).unwrap(), m_pi).unwrap();
        assert_eq!(zero.value(), 0.0);
        assert!(zero.is_dimensionless());

        let now = exact_root_n(&reg, Quantity::seconds(1e17).unwrap(), m_pi).unwrap();
        close(now.value(), 1.0598177228436016e40);

        // Within a dex of the cruder 2mc^2 T/hbar estimate.
        let estimate = Quantity::dimensionless(4.239270891374407e40).unwrap();
        let gap = now.dex_gap(estimate).unwrap();
        close(gap, 0.6020599913279625);
        assert!(gap < 1.0);

        // Halving the mass doubles tau and halves the slope.
        let half = exact_root_n(
            &reg,
            Quantity::seconds(1e17).unwrap(),
            m_pi.scale(0.5).unwrap(),
        )
        .unwrap();
        close(half.value() * 2.0, now.value());

        let negative = Quantity::seconds(-1.0).unwrap();
        assert!(matches!(
            exact_root_n(&reg, negative, m_pi),
            Err(EngineError::Precondition { .. })
        ));
    }

    #[test]
    fn exact_trajectory_shape() {
        let reg = reg();
        let points = integrate(&reg, &pion_params(GrowthMode::Exact)).unwrap();
        assert_eq!(points.len(), 101);
        assert_eq!(points[0].n, 0.0);
        assert_eq!(points[0].h_local, f64::INFINITY);

        let r_unit = 6.674e-8 * 2.488e-25 / (2.998e10f64 * 2.998e10);
        let mut previous = -1.0;
        for p in &points {
            assert!(p.n >= previous);
            previous = p.n;
            if p.n > 0.0 {
                close(p.r, r_unit * p.n);
                // H sqrt(N) = 1/tau at every point.
                close(p.h_local * p.n.sqrt(), 1.0 / TAU_PI);
            }
        }

        // sqrt(N) is affine in t: H = 2/t from a zero start.
        let last = points.last().unwrap();
        close(last.h_local, 2.0 / last.t);
        close(last.h_local, 2e-17);
        // Within half a dex of the mass-derived expansion rate.
        let gap = (last.h_local.log10() - 2.7686243846203746e-17f64.log10()).abs();
        assert!(gap < 0.5, "gap {gap}");
    }

    #[test]
    fn rk4_tracks_the_closed_form() {
        let reg = reg();
        let mut params = pion_params(GrowthMode::Rk4);
        params.n0 = 1.0;
        params.dt = 2.0 * TAU_PI;
        params.t_end = 1e6 * TAU_PI;
        params.stride = 500_000;
        let numeric = integrate(&reg, &params).unwrap();

        params.mode = GrowthMode::Exact;
        let exact = integrate(&reg, &params).unwrap();

        let got = numeric.last().unwrap().n;
        let want = exact.last().unwrap().n;
        let rel = (got / want - 1.0).abs();
        assert!(rel <= 1e-6, "relative error {rel:e}");
    }

    #[test]
    fn rk4_converges_at_fourth_order() {
        let reg = reg();
        let error_at = |dt: f64| {
            let mut params = pion_params(GrowthMode::Rk4);
            params.n0 = 1.0;
            params.dt = dt;
            params.t_end = 20.0 * TAU_PI;
            params.stride = 1_000_000;
            let numeric = integrate(&reg, &params).unwrap();
            params.mode = GrowthMode::Exact;
            let exact = integrate(&reg, &params).unwrap();
            (numeric.last().unwrap().n / exact.last().unwrap().n - 1.0).abs()
        };
        let mut errors = Vec::new();
        for halvings in 0..4 {
            errors.push(error_at(2.0 * TAU_PI / f64::powi(2.0, halvings)));
        }
        for pair in errors.windows(2) {
            let ratio = pair[0] / pair[1];
            assert!(
                (8.0..=32.0).contains(&ratio),
                "halving the step changed the error by {ratio}, errors {errors:?}"
            );
        }
    }

    #[test]
    fn stochastic_ensemble_matches_the_mean_growth() {
        let reg = reg();
        let mut params = pion_params(GrowthMode::Stochastic);
        params.n0 = 100.0;
        params.dt = 0.25 * TAU_PI;
        params.t_end = 100.0 * TAU_PI;
        params.ensemble_size = 256;
        let run = simulate_stochastic(&reg, &params).unwrap();

        assert_eq!(run.ensemble_size(), 256);
        // Exact sqrt(N) after 100 tau from sqrt(100): 10 + 50.
        let want = 60.0;
        let se = run.se_sqrt_n_end();
        assert!(se > 0.0);
        let z = (run.mean_sqrt_n_end - want) / se;
        assert!(z.abs() <= 3.0, "z = {z}, mean = {}", run.mean_sqrt_n_end);

        // Counts never shrink, and spread grows along the run.
        for trajectory in &run.trajectories {
            let mut previous = 0.0;
            for p in trajectory {
                assert!(p.n >= previous);
                previous = p.n;
            }
        }
        let quarter = run.std_n.len() / 4;
        assert!(run.std_n[quarter] > 0.0);
        assert!(run.std_n[2 * quarter] > run.std_n[quarter]);
        assert!(run.std_n[run.std_n.len() - 1] > run.std_n[2 * quarter]);
    }

    #[test]
    fn same_seed_reproduces_the_ensemble() {
        let reg = reg();
        let mut params = pion_params(GrowthMode::Stochastic);
        params.n0 = 100.0;
        params.dt = 0.25 * TAU_PI;
        params.t_end = 50.0 * TAU_PI;
        params.ensemble_size = 8;
        let a = simulate_stochastic(&reg, &params).unwrap();
        let b = simulate_stochastic(&reg, &params).unwrap();
        assert_eq!(a, b);

        params.seed = 43;
        let c = simulate_stochastic(&reg, &params).unwrap();
        assert_ne!(a.trajectories, c.trajectories);
    }

    #[test]
    fn oversized_steps_are_rejected_as_unstable() {
        let reg = reg();
        let mut params = pion_params(GrowthMode::Stochastic);
        params.n0 = 1.0;
        params.dt = TAU_PI;
        params.t_end = 10.0 * TAU_PI;
        match simulate_stochastic(&reg, &params) {
            Err(GrowthError::Stability {
                step,
                mean_step,
                limit,
            }) => {
                assert_eq!(step, 0);
                assert!(mean_step > limit);
            }
            other => panic!("expected stability error, got {other:?}"),
        }
    }

    #[test]
    fn parameter_validation_catches_misuse() {
        let reg = reg();

        let mut bad_dt = pion_params(GrowthMode::Exact);
        bad_dt.dt = 0.0;
        assert!(matches!(
            integrate(&reg, &bad_dt),
            Err(GrowthError::InvalidParams { .. })
        ));

        let mut short = pion_params(GrowthMode::Exact);
        short.t_end = short.dt / 2.0;
        assert!(integrate(&reg, &short).is_err());

        let mut negative_count = pion_params(GrowthMode::Exact);
        negative_count.n0 = -1.0;
        assert!(integrate(&reg, &negative_count).is_err());

        // Numerical modes refuse the singular start.
        let rk4_zero = pion_params(GrowthMode::Rk4);
        assert!(matches!(
            integrate(&reg, &rk4_zero),
            Err(GrowthError::InvalidParams { .. })
        ));

        let stochastic_direct = pion_params(GrowthMode::Stochastic);
        assert!(matches!(
            integrate(&reg, &stochastic_direct),
            Err(GrowthError::InvalidParams { .. })
        ));

        let mut not_mass = pion_params(GrowthMode::Exact);
        not_mass.mass = Quantity::seconds(1.0).unwrap();
        assert!(matches!(
            integrate(&reg, &not_mass),
            Err(GrowthError::Engine(_))
        ));

        let mut no_members = pion_params(GrowthMode::Stochastic);
        no_members.n0 = 100.0;
        no_members.ensemble_size = 0;
        assert!(simulate_stochastic(&reg, &no_members).is_err());

        let mut too_many = pion_params(GrowthMode::Exact);
        too_many.dt = 1e-3;
        assert!(matches!(
            integrate(&reg, &too_many),
            Err(GrowthError::InvalidParams { .. })
        ));
    }

    #[test]
    fn acceleration_identity_holds_on_the_closed_form() {
        let reg = reg();
        let mut params = pion_params(GrowthMode::Exact);
        params.dt = 1e14;
        let points = integrate(&reg, &params).unwrap();
        let deviation = check_acceleration(&points).unwrap();
        assert!(deviation <= 1e-6, "deviation {deviation:e}");

        // The second derivative is the positive constant G m^3 c^2 / 2 hbar^2.
        let dt = points[1].t - points[0].t;
        let j = points.len() / 2;
        let second = (points[j + 1].r - 2.0 * points[j].r + points[j - 1].r) / (dt * dt);
        assert!(second > 0.0);
        assert!(
            (second / 4.1501679525459416e-7 - 1.0).abs() < 1e-8,
            "second derivative {second:e}"
        );
    }

    #[test]
    fn acceleration_check_rejects_thin_or_ragged_input() {
        let reg = reg();
        let points = integrate(&reg, &pion_params(GrowthMode::Exact)).unwrap();
        assert!(matches!(
            check_acceleration(&points[..2]),
            Err(GrowthError::TooFewPoints { got: 2 })
        ));

        let mut ragged = points[..4].to_vec();
        ragged[3].t *= 1.5;
        assert!(matches!(
            check_acceleration(&ragged),
            Err(GrowthError::InvalidParams { .. })
        ));
    }

    #[test]
    fn csv_layout_and_infinite_rate() {
        let reg = reg();
        let mut params = pion_params(GrowthMode::Exact);
        params.dt = 2.5e16;
        let points = integrate(&reg, &params).unwrap();
        let csv = trajectory_csv(&points);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("t,N,R,H_local"));
        assert_eq!(csv.lines().count(), points.len() + 1);
        // The zero-count start has no finite rate.
        assert!(csv.lines().nth(1).unwrap().ends_with(",inf"));
        // Values round-trip through shortest form.
        let last = csv.lines().last().unwrap();
        let n_field: f64 = last.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(n_field.to_bits(), points.last().unwrap().n.to_bits());
    }

    #[test]
    fn stride_keeps_the_final_point() {
        let reg = reg();
        let mut params = pion_params(GrowthMode::Exact);
        params.stride = 7;
        let points = integrate(&reg, &params).unwrap();
        // 100 steps: kept are 0, 7, ..., 98, then 100.
        assert_eq!(points.len(), 16);
        assert_eq!(points.last().unwrap().t, 1e17);
    }

    #[test]
    fn increment_draws_follow_their_mean() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let draws = 10_000;

        let small: f64 = (0..draws).map(|_| draw_increment(&mut rng, 3.0)).sum();
        let small_mean = small / draws as f64;
        // 3 sigma for a Poisson mean estimate.
        assert!((small_mean - 3.0).abs() < 3.0 * (3.0f64 / draws as f64).sqrt());

        let big_mean_target = 2e6;
        let mut big_sum = 0.0;
        for _ in 0..draws {
            let draw = draw_increment(&mut rng, big_mean_target);
            assert!(draw >= 0.0);
            big_sum += draw;
        }
        let big_mean = big_sum / draws as f64;
        assert!((big_mean - big_mean_target).abs() < 3.0 * (big_mean_target / draws as f64).sqrt());
    }

    proptest! {
        #[test]
        fn counts_never_decrease(
            n0 in 0.0f64..1e6,
            steps in 2u32..50,
            dt_in_tau in 0.1f64..100.0,
        ) {
            let reg = Registry::with_defaults();
            let mut params = pion_params(GrowthMode::Exact);
            params.n0 = n0;
            params.dt = dt_in_tau * TAU_PI;
            params.t_end = f64::from(steps) * params.dt;
            let points = integrate(&reg, &params).unwrap();
            let r_unit = 6.674e-8 * 2.488e-25 / (2.998e10f64 * 2.998e10);
            let mut previous = -1.0;
            for p in &points {
                prop_assert!(p.n >= previous);
                prop_assert!(p.n.is_finite());
                prop_assert!((p.r - r_unit * p.n).abs() <= 1e-12 * p.r.abs());
                previous = p.n;
            }
        }

        #[test]
        fn rk4_counts_never_decrease(
            n0 in 1.0f64..1e4,
            steps in 2u32..50,
        ) {
            let reg = Registry::with_defaults();
            let mut params = pion_params(GrowthMode::Rk4);
            params.n0 = n0;
            params.dt = 0.5 * TAU_PI;
            params.t_end = f64::from(steps) * params.dt;
            let points = integrate(&reg, &params).unwrap();
            let mut previous = 0.0;
            for p in &points {
                prop_assert!(p.n >= previous);
                previous = p.n;
            }
        }
    }
}
