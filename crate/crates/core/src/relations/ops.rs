//! The closed-form expressions behind every cataloged check, usable on
//! their own. Each function takes the constants registry plus explicit
//! inputs, checks dimensions and signs up front, and returns dimensioned
//! results.

use crate::quantity::{Dimension, Quantity, Rational};
use crate::registry::Registry;
use crate::relations::{expect_dim, expect_positive, EngineError, HorizonResult, RelationReport};

/// Compton length and time of a mass: (hbar/mc, hbar/mc^2).
pub fn compton_scales(reg: &Registry, m: Quantity) -> Result<(Quantity, Quantity), EngineError> {
    expect_dim(m, Dimension::mass())?;
    expect_positive(m, "mass")?;
    let hbar = reg.quantity("hbar")?;
    let c = reg.quantity("c")?;
    let length = hbar.div(m.mul(c)?)?;
    let time = length.div(c)?;
    Ok((length, time))
}

/// Radial coordinate of a spinning charged point mass where no classical
/// horizon forms: real part GM/c^2, imaginary part
/// sqrt(G^2 Q^2/c^8 + a^2 - G^2 M^2/c^4) with a = L/Mc.
///
/// The charge term's units differ from the spin and mass terms as the
/// formula stands, so the discriminant is assembled from bare CGS
/// magnitudes and the root is reported in centimetres. For
/// elementary-particle inputs the spin term dominates by over ninety
/// orders of magnitude and the distinction is invisible.
pub fn kerr_newman_horizon(
    reg: &Registry,
    m: Quantity,
    q: Quantity,
    l: Quantity,
) -> Result<HorizonResult, EngineError> {
    expect_dim(m, Dimension::mass())?;
    expect_dim(q, Dimension::charge())?;
    expect_dim(l, Dimension::angular_momentum())?;
    expect_positive(m, "mass")?;
    let g = reg.quantity("G")?.value();
    let c = reg.quantity("c")?.value();
    let a = l.value() / (m.value() * c);
    let charge_term = g * g * q.value() * q.value() / c.powi(8);
    let spin_term = a * a;
    let mass_term = g * g * m.value() * m.value() / c.powi(4);
    let discriminant = charge_term + spin_term - mass_term;
    if discriminant < 0.0 {
        return Err(EngineError::Regime { discriminant });
    }
    let real_part = schwarzschild_radius(reg, m)?;
    let imag_part = Quantity::centimeters(discriminant.sqrt())?;
    Ok(HorizonResult {
        real_part,
        imag_part,
    })
}

/// Electrostatic energy scale of a jittering charge against its rest
/// energy: lhs = hbar/a0 with a0 = hbar/2mc^2 (so exactly 2mc^2), rhs =
/// mc^2. The factor 2 is kept as the formula gives it; the default
/// tolerance absorbs the 0.301 dex it costs.
pub fn zitter_charge_energy(
    reg: &Registry,
    m: Quantity,
    tolerance_dex: f64,
) -> Result<RelationReport, EngineError> {
    expect_dim(m, Dimension::mass())?;
    expect_positive(m, "mass")?;
    let hbar = reg.quantity("hbar")?;
    let c = reg.quantity("c")?;
    let rest_energy = m.mul(c)?.mul(c)?;
    let a0 = hbar.div(rest_energy.scale(2.0)?)?;
    let lhs = hbar.div(a0)?;
    RelationReport::new(
        "zitter_charge_energy",
        "Eq. 5",
        lhs,
        rest_energy,
        tolerance_dex,
    )
}

/// Electric-to-gravitational force ratio e^2/(G m1 m2) against the
/// dimensionless anchor 1e40.
pub fn em_grav_ratio(
    reg: &Registry,
    m1: Quantity,
    m2: Quantity,
    tolerance_dex: f64,
) -> Result<RelationReport, EngineError> {
    for m in [m1, m2] {
        expect_dim(m, Dimension::mass())?;
        expect_positive(m, "mass")?;
    }
    let e = reg.quantity("e")?;
    let g = reg.quantity("G")?;
    let lhs = e.mul(e)?.div(g.mul(m1)?.mul(m2)?)?;
    let rhs = Quantity::dimensionless(1e40)?;
    RelationReport::new("em_grav_ratio", "Eq. 10", lhs, rhs, tolerance_dex)
}

/// Quantized area ladder (n + 1/2)(hbar/mc)^2. The oscillator frequency
/// behind it is taken as 2mc^2/hbar, the unique choice that makes the
/// levels come out as multiples of the squared Compton length.
pub fn space_levels(reg: &Registry, m: Quantity, n: u32) -> Result<Quantity, EngineError> {
    let (compton_len, _) = compton_scales(reg, m)?;
    let square = compton_len.mul(compton_len)?;
    Ok(square.scale(f64::from(n) + 0.5)?)
}

/// Magnetic fluctuation over a region of size lambda: B^2 = hbar c/lambda^4
/// (an energy density), so the region carries energy B^2 lambda^3 =
/// hbar c/lambda and mass hbar/(lambda c). Returns (energy, mass).
pub fn zpf_energy_of_region(
    reg: &Registry,
    lambda: Quantity,
) -> Result<(Quantity, Quantity), EngineError> {
    expect_dim(lambda, Dimension::length())?;
    expect_positive(lambda, "length")?;
    let hbar = reg.quantity("hbar")?;
    let c = reg.quantity("c")?;
    let b_squared = hbar.mul(c)?.div(lambda.pow(Rational::from_integer(4))?)?;
    let energy = b_squared.mul(lambda.pow(Rational::from_integer(3))?)?;
    let mass = energy.div(c)?.div(c)?;
    Ok((energy, mass))
}

/// Curvature fluctuation probed at length l: l_planck/l^3, an inverse area.
pub fn curvature_fluctuation(reg: &Registry, l: Quantity) -> Result<Quantity, EngineError> {
    expect_dim(l, Dimension::length())?;
    expect_positive(l, "length")?;
    let l_planck = reg.quantity("l_planck")?;
    Ok(l_planck.div(l.pow(Rational::from_integer(3))?)?)
}

/// Count times particle mass against the observed total mass.
pub fn universe_mass(
    reg: &Registry,
    n: Quantity,
    m: Quantity,
    tolerance_dex: f64,
) -> Result<RelationReport, EngineError> {
    expect_dim(n, Dimension::dimensionless())?;
    expect_positive(n, "count")?;
    expect_dim(m, Dimension::mass())?;
    expect_positive(m, "mass")?;
    let lhs = n.mul(m)?;
    let rhs = reg.quantity("M_obs")?;
    RelationReport::new("universe_mass", "Eq. 16", lhs, rhs, tolerance_dex)
}

/// Gravitational radius GM/c^2. Linear in M.
pub fn schwarzschild_radius(reg: &Registry, m: Quantity) -> Result<Quantity, EngineError> {
    expect_dim(m, Dimension::mass())?;
    expect_positive(m, "mass")?;
    let g = reg.quantity("G")?;
    let c = reg.quantity("c")?;
    Ok(g.mul(m)?.div(c.mul(c)?)?)
}

/// Mean spacing R/sqrt(N) against the pion Compton length.
pub fn eddington_length(
    reg: &Registry,
    r: Quantity,
    n: Quantity,
    tolerance_dex: f64,
) -> Result<RelationReport, EngineError> {
    expect_dim(r, Dimension::length())?;
    expect_positive(r, "radius")?;
    expect_dim(n, Dimension::dimensionless())?;
    expect_positive(n, "count")?;
    let lhs = r.div(n.sqrt()?)?;
    let (rhs, _) = compton_scales(reg, reg.quantity("m_pi")?)?;
    RelationReport::new("eddington_length", "Eq. 30", lhs, rhs, tolerance_dex)
}

/// Age in rest-energy oscillation periods, 2mc^2 T/hbar, against sqrt of
/// the particle count.
pub fn age_root_n(
    reg: &Registry,
    t: Quantity,
    m: Quantity,
    tolerance_dex: f64,
) -> Result<RelationReport, EngineError> {
    expect_dim(t, Dimension::time())?;
    expect_positive(t, "time")?;
    expect_dim(m, Dimension::mass())?;
    expect_positive(m, "mass")?;
    let hbar = reg.quantity("hbar")?;
    let c = reg.quantity("c")?;
    let lhs = m.mul(c)?.mul(c)?.mul(t)?.scale(2.0)?.div(hbar)?;
    let rhs = reg.quantity("N_obs")?.sqrt()?;
    RelationReport::new("age_root_n", "Eq. 23", lhs, rhs, tolerance_dex)
}

/// Expansion rate from a particle mass alone: G m^3 c/hbar^2. Cubic in m.
pub fn hubble_from_pion(reg: &Registry, m: Quantity) -> Result<Quantity, EngineError> {
    expect_dim(m, Dimension::mass())?;
    expect_positive(m, "mass")?;
    let g = reg.quantity("G")?;
    let c = reg.quantity("c")?;
    let hbar = reg.quantity("hbar")?;
    let m3 = m.pow(Rational::from_integer(3))?;
    Ok(g.mul(m3)?.mul(c)?.div(hbar.mul(hbar)?)?)
}

/// Particle mass from an expansion rate: (hbar^2 H/(G c))^(1/3). Exact
/// inverse of [`hubble_from_pion`].
pub fn pion_from_hubble(reg: &Registry, h: Quantity) -> Result<Quantity, EngineError> {
    expect_dim(h, Dimension::inverse_time())?;
    expect_positive(h, "rate")?;
    let g = reg.quantity("G")?;
    let c = reg.quantity("c")?;
    let hbar = reg.quantity("hbar")?;
    let cubed = hbar.mul(hbar)?.mul(h)?.div(g.mul(c)?)?;
    Ok(cubed.pow(Rational::new(1, 3))?)
}

/// Vacuum-energy rate scale H^2.
pub fn cosmological_constant(reg: &Registry, h: Quantity) -> Result<Quantity, EngineError> {
    let _ = reg;
    expect_dim(h, Dimension::inverse_time())?;
    expect_positive(h, "rate")?;
    Ok(h.mul(h)?)
}

/// Wavelength whose light-crossing time is tau: c*tau.
pub fn cmb_wavelength(reg: &Registry, tau: Quantity) -> Result<Quantity, EngineError> {
    expect_dim(tau, Dimension::time())?;
    expect_positive(tau, "time")?;
    let c = reg.quantity("c")?;
    Ok(c.mul(tau)?)
}

/// Age solving 2Gm^3c/hbar^2 = 1/T, i.e. hbar^2/(2G m^3 c); equal to half
/// the reciprocal of [`hubble_from_pion`] by construction.
pub fn half_hubble_age(reg: &Registry, m: Quantity) -> Result<Quantity, EngineError> {
    let rate = hubble_from_pion(reg, m)?;
    Ok(rate.scale(2.0)?.recip()?)
}

/// Mean interparticle spacing (V/N)^(1/3) of an assembly whose thermal
/// speed is c; reduces to the Compton length, and is computed as such.
pub fn thermal_spacing(reg: &Registry, m: Quantity) -> Result<Quantity, EngineError> {
    Ok(compton_scales(reg, m)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantity::QuantityError;
    use crate::relations::Verdict;
    use proptest::prelude::*;

    // Relative comparison for values frozen from an independent oracle.
    fn close(got: f64, want: f64) {
        assert!(
            (got / want - 1.0).abs() < 1e-12,
            "got {got:e}, want {want:e}"
        );
    }

    fn reg() -> Registry {
        Registry::with_defaults()
    }

    #[test]
    fn compton_scales_for_both_reference_masses() {
        let reg = reg();
        let (len_e, t_e) = compton_scales(&reg, reg.quantity("m_e").unwrap()).unwrap();
        close(len_e.value(), 3.863226122644357e-11);
        close(t_e.value(), 1.2886011082869768e-21);
        assert_eq!(len_e.dim(), Dimension::length());
        assert_eq!(t_e.dim(), Dimension::time());
        // Within one dex of the 1e-11 cm anchor.
        let anchor = Quantity::centimeters(1e-11).unwrap();
        assert!(len_e.dex_gap(anchor).unwrap() < 1.0);

        let (len_pi, t_pi) = compton_scales(&reg, reg.quantity("m_pi").unwrap()).unwrap();
        close(len_pi.value(), 1.414394162024415e-13);
        close(t_pi.value(), 4.717792401682505e-24);
    }

    #[test]
    fn compton_scales_rejects_non_mass_and_non_positive() {
        let reg = reg();
        let not_mass = Quantity::centimeters(1.0).unwrap();
        assert!(matches!(
            compton_scales(&reg, not_mass),
            Err(EngineError::Quantity(
                QuantityError::DimensionMismatch { .. }
            ))
        ));
        let zero = Quantity::grams(0.0).unwrap();
        assert!(matches!(
            compton_scales(&reg, zero),
            Err(EngineError::Precondition { .. })
        ));
    }

    #[test]
    fn horizon_for_electron_parameters() {
        let reg = reg();
        let m = reg.quantity("m_e").unwrap();
        let q = reg.quantity("e").unwrap();
        let spin = reg.quantity("hbar").unwrap().scale(0.5).unwrap();
        let h = kerr_newman_horizon(&reg, m, q, spin).unwrap();
        close(h.real_part.value(), 6.763845009414772e-56);
        close(h.imag_part.value(), 1.9316130613221784e-11);
        assert_eq!(h.real_part.dim(), Dimension::length());
        assert_eq!(h.imag_part.dim(), Dimension::length());
        assert!(h.imag_part.value() >= 0.0);

        // The spin term dominates: the imaginary part lands on hbar/2mc.
        let c = reg.quantity("c").unwrap();
        let half_compton = reg
            .quantity("hbar")
            .unwrap()
            .scale(0.5)
            .unwrap()
            .div(m.mul(c).unwrap())
            .unwrap();
        assert!(h.imag_part.dex_gap(half_compton).unwrap() < 0.5);
    }

    #[test]
    fn horizon_without_spin_or_charge_is_out_of_regime() {
        let reg = reg();
        let m = reg.quantity("m_e").unwrap();
        let q = Quantity::new(0.0, Dimension::charge()).unwrap();
        let spin = Quantity::new(0.0, Dimension::angular_momentum()).unwrap();
        match kerr_newman_horizon(&reg, m, q, spin) {
            Err(EngineError::Regime { discriminant }) => assert!(discriminant < 0.0),
            other => panic!("expected regime error, got {other:?}"),
        }
    }

    #[test]
    fn charge_energy_factor_is_mass_independent() {
        let reg = reg();
        let rep = zitter_charge_energy(&reg, reg.quantity("m_e").unwrap(), 0.5).unwrap();
        close(rep.lhs.value(), 1.6374345687199998e-6);
        close(rep.rhs.value(), 8.187172843599999e-7);
        // The two sides differ by exactly a factor of two.
        close(rep.gap_dex, std::f64::consts::LOG10_2);
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(rep.lhs.dim(), Dimension::energy());

        let rep_pi = zitter_charge_energy(&reg, reg.quantity("m_pi").unwrap(), 0.5).unwrap();
        close(rep_pi.gap_dex, std::f64::consts::LOG10_2);

        // A tolerance tighter than the factor of two fails.
        let tight = zitter_charge_energy(&reg, reg.quantity("m_e").unwrap(), 0.2).unwrap();
        assert_eq!(tight.verdict, Verdict::Fail);
    }

    #[test]
    fn force_ratio_depends_on_the_mass_pair() {
        let reg = reg();
        let m_e = reg.quantity("m_e").unwrap();
        let m_p = reg.quantity("m_p").unwrap();
        let ep = em_grav_ratio(&reg, m_e, m_p, 1.5).unwrap();
        close(ep.lhs.value(), 2.2681529010070478e39);
        close(ep.gap_dex, 0.6443276720783513);
        assert_eq!(ep.verdict, Verdict::Pass);
        assert!(ep.lhs.is_dimensionless());
        assert_eq!(ep.rhs.value(), 1e40);

        let ee = em_grav_ratio(&reg, m_e, m_e, 1.5).unwrap();
        close(ee.lhs.value(), 4.165791857925997e42);
        close(ee.gap_dex, 2.619697566808936);
        assert_eq!(ee.verdict, Verdict::Fail);
    }

    #[test]
    fn area_ladder_spacing() {
        let reg = reg();
        let m_e = reg.quantity("m_e").unwrap();
        let level0 = space_levels(&reg, m_e, 0).unwrap();
        close(level0.value(), 7.462258037340876e-22);
        assert_eq!(level0.dim(), Dimension::area());
        let level1 = space_levels(&reg, m_e, 1).unwrap();
        close(level1.value(), 2.238677411202263e-21);
        // level(n)/level(0) = 2n + 1.
        for n in 0..6u32 {
            let level = space_levels(&reg, m_e, n).unwrap();
            close(level.value() / level0.value(), f64::from(2 * n + 1));
        }
    }

    #[test]
    fn field_fluctuation_energy_round_trips_the_mass() {
        let reg = reg();
        for symbol in ["m_e", "m_pi"] {
            let m = reg.quantity(symbol).unwrap();
            let (lambda, _) = compton_scales(&reg, m).unwrap();
            let (energy, mass) = zpf_energy_of_region(&reg, lambda).unwrap();
            assert_eq!(energy.dim(), Dimension::energy());
            assert_eq!(mass.dim(), Dimension::mass());
            assert!(
                (mass.value() / m.value() - 1.0).abs() < 1e-12,
                "{symbol} round trip"
            );
        }
        let m_e = reg.quantity("m_e").unwrap();
        let (lambda_e, _) = compton_scales(&reg, m_e).unwrap();
        let (energy_e, _) = zpf_energy_of_region(&reg, lambda_e).unwrap();
        close(energy_e.value(), 8.1871728436e-7);
    }

    #[test]
    fn curvature_probe_values() {
        let reg = reg();
        let probe = Quantity::centimeters(1e-11).unwrap();
        let curv = curvature_fluctuation(&reg, probe).unwrap();
        close(curv.value(), 1.616);
        assert_eq!(curv.dim(), Dimension::inverse_area());

        let l_planck = reg.quantity("l_planck").unwrap();
        let at_floor = curvature_fluctuation(&reg, l_planck).unwrap();
        close(at_floor.value(), 3.829281442995785e65);
        // At the floor the value is 1/l_planck^2.
        close(at_floor.value(), 1.0 / (1.616e-33f64 * 1.616e-33));
    }

    #[test]
    fn count_times_mass_lands_near_the_total() {
        let reg = reg();
        let n = reg.quantity("N_obs").unwrap();
        let m_pi = reg.quantity("m_pi").unwrap();
        let rep = universe_mass(&reg, n, m_pi, 1.0).unwrap();
        close(rep.lhs.value(), 2.4879999999999996e55);
        assert_eq!(rep.rhs.value(), 1e56);
        close(rep.gap_dex, 0.604149623981219);
        assert_eq!(rep.verdict, Verdict::Pass);

        let zero_count = Quantity::dimensionless(0.0).unwrap();
        assert!(matches!(
            universe_mass(&reg, zero_count, m_pi, 1.0),
            Err(EngineError::Precondition { .. })
        ));
    }

    #[test]
    fn gravitational_radius_is_linear() {
        let reg = reg();
        let m = reg.quantity("M_obs").unwrap();
        let r = schwarzschild_radius(&reg, m).unwrap();
        close(r.value(), 7.425452859166507e27);
        assert_eq!(r.dim(), Dimension::length());
        assert!(r.dex_gap(reg.quantity("R_obs").unwrap()).unwrap() < 0.5);

        let doubled = schwarzschild_radius(&reg, m.scale(2.0).unwrap()).unwrap();
        close(doubled.value() / r.value(), 2.0);
    }

    #[test]
    fn spacing_from_radius_and_count() {
        let reg = reg();
        let r = reg.quantity("R_obs").unwrap();
        let n = reg.quantity("N_obs").unwrap();
        let rep = eddington_length(&reg, r, n, 1.5).unwrap();
        close(rep.lhs.value(), 1e-12);
        close(rep.rhs.value(), 1.414394162024415e-13);
        close(rep.gap_dex, 0.8494295448973304);
        assert_eq!(rep.verdict, Verdict::Pass);

        // Four times the count halves the spacing.
        let rep4 = eddington_length(&reg, r, n.scale(4.0).unwrap(), 1.5).unwrap();
        close(rep4.lhs.value() * 2.0, rep.lhs.value());
    }

    #[test]
    fn age_in_oscillation_periods() {
        let reg = reg();
        let t = reg.quantity("T_obs").unwrap();
        let m_pi = reg.quantity("m_pi").unwrap();
        let rep = age_root_n(&reg, t, m_pi, 1.0).unwrap();
        close(rep.lhs.value(), 4.239270891374407e40);
        close(rep.rhs.value(), 1e40);
        close(rep.gap_dex, 0.6272911690735721);
        assert_eq!(rep.verdict, Verdict::Pass);
        assert!(rep.lhs.is_dimensionless());

        let half = age_root_n(&reg, t.scale(0.5).unwrap(), m_pi, 1.0).unwrap();
        close(rep.lhs.value() / half.lhs.value(), 2.0);
    }

    #[test]
    fn expansion_rate_from_mass_and_back() {
        let reg = reg();
        let m_pi = reg.quantity("m_pi").unwrap();
        let h = hubble_from_pion(&reg, m_pi).unwrap();
        close(h.value(), 2.7686243846203746e-17);
        assert_eq!(h.dim(), Dimension::inverse_time());
        assert!(h.dex_gap(reg.quantity("H_obs").unwrap()).unwrap() < 1.5);

        // Cubic scaling.
        let h2 = hubble_from_pion(&reg, m_pi.scale(2.0).unwrap()).unwrap();
        close(h2.value() / h.value(), 8.0);

        // Exact inverse round trip.
        let back = pion_from_hubble(&reg, h).unwrap();
        assert!((back.value() / m_pi.value() - 1.0).abs() < 1e-12);
        assert_eq!(back.dim(), Dimension::mass());

        // The observed rate lands within half a dex of the pion mass.
        let from_obs = pion_from_hubble(&reg, reg.quantity("H_obs").unwrap()).unwrap();
        close(from_obs.value(), 1.0808638250491188e-25);
        assert!(from_obs.dex_gap(m_pi).unwrap() < 0.5);
        close(from_obs.dex_gap(m_pi).unwrap(), 0.362079394142276);
    }

    #[test]
    fn vacuum_rate_scale_for_both_rates() {
        let reg = reg();
        let from_obs = cosmological_constant(&reg, reg.quantity("H_obs").unwrap()).unwrap();
        close(from_obs.value(), 5.1529e-36);
        assert_eq!(from_obs.dim(), Dimension::from_ints(0, 0, -2));

        let m_pi = reg.quantity("m_pi").unwrap();
        let h_derived = hubble_from_pion(&reg, m_pi).unwrap();
        let from_derived = cosmological_constant(&reg, h_derived).unwrap();
        close(from_derived.value(), 7.665280983114548e-34);
    }

    #[test]
    fn background_radiation_wavelength() {
        let reg = reg();
        let tau = reg.quantity("tau_fluct").unwrap();
        let lambda = cmb_wavelength(&reg, tau).unwrap();
        close(lambda.value(), 0.29979999999999996);
        assert!(lambda.dex_gap(Quantity::centimeters(0.3).unwrap()).unwrap() < 0.1);
    }

    #[test]
    fn age_from_mass_alone() {
        let reg = reg();
        let m_pi = reg.quantity("m_pi").unwrap();
        let t = half_hubble_age(&reg, m_pi).unwrap();
        close(t.value(), 1.8059510086578916e16);
        assert_eq!(t.dim(), Dimension::time());
        assert!(t.dex_gap(reg.quantity("T_obs").unwrap()).unwrap() < 1.0);

        // T equals half the reciprocal rate, exactly up to rounding.
        let h = hubble_from_pion(&reg, m_pi).unwrap();
        let product = t.mul(h).unwrap().scale(2.0).unwrap();
        assert!((product.value() - 1.0).abs() < 1e-12);
        assert!(product.is_dimensionless());
    }

    #[test]
    fn thermal_spacing_is_the_compton_length() {
        let reg = reg();
        let m_e = reg.quantity("m_e").unwrap();
        let spacing = thermal_spacing(&reg, m_e).unwrap();
        let (compton, _) = compton_scales(&reg, m_e).unwrap();
        assert_eq!(spacing.value().to_bits(), compton.value().to_bits());
        close(spacing.value(), 3.863226122644357e-11);
    }

    fn arb_mass() -> impl Strategy<Value = Quantity> {
        (-30.0f64..-20.0).prop_map(|e| Quantity::grams(10f64.powf(e)).unwrap())
    }

    proptest! {
        #[test]
        fn compton_length_decreases_with_mass(m in arb_mass(), factor in 1.01f64..100.0) {
            let reg = Registry::with_defaults();
            let (small, _) = compton_scales(&reg, m.scale(factor).unwrap()).unwrap();
            let (large, _) = compton_scales(&reg, m).unwrap();
            prop_assert!(small.value() < large.value());
        }

        #[test]
        fn expansion_rate_increases_with_mass(m in arb_mass(), factor in 1.01f64..100.0) {
            let reg = Registry::with_defaults();
            let low = hubble_from_pion(&reg, m).unwrap();
            let high = hubble_from_pion(&reg, m.scale(factor).unwrap()).unwrap();
            prop_assert!(high.value() > low.value());
        }

        #[test]
        fn rate_round_trip_is_identity(m in arb_mass()) {
            let reg = Registry::with_defaults();
            let h = hubble_from_pion(&reg, m).unwrap();
            let back = pion_from_hubble(&reg, h).unwrap();
            prop_assert!((back.value() / m.value() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn curvature_decreases_with_probe_length(
            e in -30.0f64..0.0, factor in 1.01f64..100.0
        ) {
            let reg = Registry::with_defaults();
            let l = Quantity::centimeters(10f64.powf(e)).unwrap();
            let big_probe = curvature_fluctuation(&reg, l.scale(factor).unwrap()).unwrap();
            let small_probe = curvature_fluctuation(&reg, l).unwrap();
            prop_assert!(big_probe.value() < small_probe.value());
        }
    }
}
