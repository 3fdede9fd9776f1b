//! The shipped set of consistency checks, one strategy type per claim.
//!
//! Entries are registered in a fixed order that follows the argument from
//! particle scales out to cosmology, so reports come back the same way on
//! every run. Each default tolerance is the loosest round value the shipped
//! constants actually satisfy.

use std::collections::BTreeMap;

use crate::quantity::Quantity;
use crate::registry::Registry;
use crate::relations::{ops, EngineError, Relation, RelationReport};

struct KerrNewmanHorizon;

impl Relation for KerrNewmanHorizon {
    fn id(&self) -> &'static str {
        "kerr_newman_horizon"
    }
    fn anchor(&self) -> &'static str {
        "Eq. 1"
    }
    fn default_tolerance_dex(&self) -> f64 {
        0.5
    }
    fn evaluate(&self, reg: &Registry, tol: f64) -> Result<RelationReport, EngineError> {
        let m = reg.quantity("m_e")?;
        let q = reg.quantity("e")?;
        let spin = reg.quantity("hbar")?.scale(0.5)?;
        let horizon = ops::kerr_newman_horizon(reg, m, q, spin)?;
        let (compton_len, _) = ops::compton_scales(reg, m)?;
        let rhs = compton_len.scale(0.5)?;
        RelationReport::new(self.id(), self.anchor(), horizon.imag_part, rhs, tol)
    }
}

struct ComptonScales;

impl Relation for ComptonScales {
    fn id(&self) -> &'static str {
        "compton_scales"
    }
    fn anchor(&self) -> &'static str {
        "Sec. 2"
    }
    fn default_tolerance_dex(&self) -> f64 {
        1.0
    }
    fn evaluate(&self, reg: &Registry, tol: f64) -> Result<RelationReport, EngineError> {
        let (compton_len, _) = ops::compton_scales(reg, reg.quantity("m_e")?)?;
        let rhs = Quantity::centimeters(1e-11)?;
        RelationReport::new(self.id(), self.anchor(), compton_len, rhs, tol)
    }
}

struct ZitterChargeEnergy;

impl Relation for ZitterChargeEnergy {
    fn id(&self) -> &'static str {
        "zitter_charge_energy"
    }
    fn anchor(&self) -> &'static str {
        "Eq. 5"
    }
    // Loose enough for the built-in factor of two (0.301 dex).
    fn default_tolerance_dex(&self) -> f64 {
        0.5
    }
    fn evaluate(&self, reg: &Registry, tol: f64) -> Result<RelationReport, EngineError> {
        ops::zitter_charge_energy(reg, reg.quantity("m_e")?, tol)
    }
}

struct EmGravRatio;

impl Relation for EmGravRatio {
    fn id(&self) -> &'static str {
        "em_grav_ratio"
    }
    fn anchor(&self) -> &'static str {
        "Eq. 10"
    }
    fn default_tolerance_dex(&self) -> f64 {
        1.5
    }
    fn evaluate(&self, reg: &Registry, tol: f64) -> Result<RelationReport, EngineError> {
        // Electron-proton is the canonical pair for this ratio; it lands
        // nearest the 1e40 anchor.
        ops::em_grav_ratio(reg, reg.quantity("m_e")?, reg.quantity("m_p")?, tol)
    }
}

struct SpaceLevels;

impl Relation for SpaceLevels {
    fn id(&self) -> &'static str {
        "space_levels"
    }
    fn anchor(&self) -> &'static str {
        "Eq. 12"
    }
    // The ground level sits half a unit up the ladder (0.301 dex).
    fn default_tolerance_dex(&self) -> f64 {
        0.5
    }
    fn evaluate(&self, reg: &Registry, tol: f64) -> Result<RelationReport, EngineError> {
        let m = reg.quantity("m_e")?;
        let ground = ops::space_levels(reg, m, 0)?;
        let (compton_len, _) = ops::compton_scales(reg, m)?;
        let unit = compton_len.mul(compton_len)?;
        RelationReport::new(self.id(), self.anchor(), ground, unit, tol)
    }
}

struct ZpfEnergy;

impl Relation for ZpfEnergy {
    fn id(&self) -> &'static str {
        "zpf_energy"
    }
    fn anchor(&self) -> &'static str {
        "Eq. 13"
    }
    fn default_tolerance_dex(&self) -> f64 {
        0.5
    }
    fn evaluate(&self, reg: &Registry, tol: f64) -> Result<RelationReport, EngineError> {
        let m = reg.quantity("m_e")?;
        let c = reg.quantity("c")?;
        let (lambda, _) = ops::compton_scales(reg, m)?;
        let (energy, _) = ops::zpf_energy_of_region(reg, lambda)?;
        let rest_energy = m.mul(c)?.mul(c)?;
        RelationReport::new(self.id(), self.anchor(), energy, rest_energy, tol)
    }
}

struct CurvatureFluctuation;

impl Relation for CurvatureFluctuation {
    fn id(&self) -> &'static str {
        "curvature_fluctuation"
    }
    fn anchor(&self) -> &'static str {
        "Eq. 14"
    }
    fn default_tolerance_dex(&self) -> f64 {
        2.0
    }
    fn evaluate(&self, reg: &Registry, tol: f64) -> Result<RelationReport, EngineError> {
        // The claim equates an inverse area with the bare number 1, so the
        // row compares magnitudes with the dimension set aside.
        let probe = Quantity::centimeters(1e-11)?;
        let curv = ops::curvature_fluctuation(reg, probe)?;
        let lhs = Quantity::dimensionless(curv.value())?;
        let rhs = Quantity::dimensionless(1.0)?;
        RelationReport::new(self.id(), self.anchor(), lhs, rhs, tol)
    }
}

struct UniverseMass;

impl Relation for UniverseMass {
    fn id(&self) -> &'static str {
        "universe_mass"
    }
    fn anchor(&self) -> &'static str {
        "Eq. 16"
    }
    fn default_tolerance_dex(&self) -> f64 {
        1.0
    }
    fn evaluate(&self, reg: &Registry, tol: f64) -> Result<RelationReport, EngineError> {
        ops::universe_mass(reg, reg.quantity("N_obs")?, reg.quantity("m_pi")?, tol)
    }
}

struct ThermalSpacing;

impl Relation for ThermalSpacing {
    fn id(&self) -> &'static str {
        "thermal_spacing"
    }
    fn anchor(&self) -> &'static str {
        "Sec. 3"
    }
    fn default_tolerance_dex(&self) -> f64 {
        0.5
    }
    fn evaluate(&self, reg: &Registry, tol: f64) -> Result<RelationReport, EngineError> {
        let m = reg.quantity("m_e")?;
        let spacing = ops::thermal_spacing(reg, m)?;
        let (compton_len, _) = ops::compton_scales(reg, m)?;
        RelationReport::new(self.id(), self.anchor(), spacing, compton_len, tol)
    }
}

struct SchwarzschildRadius;

impl Relation for SchwarzschildRadius {
    fn id(&self) -> &'static str {
        "schwarzschild_radius"
    }
    fn anchor(&self) -> &'static str {
        "Eq. 22"
    }
    fn default_tolerance_dex(&self) -> f64 {
        0.5
    }
    fn evaluate(&self, reg: &Registry, tol: f64) -> Result<RelationReport, EngineError> {
        let radius = ops::schwarzschild_radius(reg, reg.quantity("M_obs")?)?;
        RelationReport::new(
            self.id(),
            self.anchor(),
            radius,
            reg.quantity("R_obs")?,
            tol,
        )
    }
}

struct AgeRootN;

impl Relation for AgeRootN {
    fn id(&self) -> &'static str {
        "age_root_n"
    }
    fn anchor(&self) -> &'static str {
        "Eq. 23"
    }
    fn default_tolerance_dex(&self) -> f64 {
        1.0
    }
    fn evaluate(&self, reg: &Registry, tol: f64) -> Result<RelationReport, EngineError> {
        ops::age_root_n(reg, reg.quantity("T_obs")?, reg.quantity("m_pi")?, tol)
    }
}

struct HubbleFromPion;

impl Relation for HubbleFromPion {
    fn id(&self) -> &'static str {
        "hubble_from_pion"
    }
    fn anchor(&self) -> &'static str {
        "Eq. 25"
    }
    fn default_tolerance_dex(&self) -> f64 {
        1.5
    }
    fn evaluate(&self, reg: &Registry, tol: f64) -> Result<RelationReport, EngineError> {
        let rate = ops::hubble_from_pion(reg, reg.quantity("m_pi")?)?;
        RelationReport::new(self.id(), self.anchor(), rate, reg.quantity("H_obs")?, tol)
    }
}

struct PionFromHubble;

impl Relation for PionFromHubble {
    fn id(&self) -> &'static str {
        "pion_from_hubble"
    }
    fn anchor(&self) -> &'static str {
        "Eq. 26"
    }
    fn default_tolerance_dex(&self) -> f64 {
        0.5
    }
    fn evaluate(&self, reg: &Registry, tol: f64) -> Result<RelationReport, EngineError> {
        let mass = ops::pion_from_hubble(reg, reg.quantity("H_obs")?)?;
        RelationReport::new(self.id(), self.anchor(), mass, reg.quantity("m_pi")?, tol)
    }
}

struct CosmologicalConstant;

impl Relation for CosmologicalConstant {
    fn id(&self) -> &'static str {
        "cosmological_constant"
    }
    fn anchor(&self) -> &'static str {
        "Eq. 27"
    }
    // Twice the rate row's tolerance: squaring doubles dex gaps.
    fn default_tolerance_dex(&self) -> f64 {
        3.0
    }
    fn evaluate(&self, reg: &Registry, tol: f64) -> Result<RelationReport, EngineError> {
        // Both candidate rates appear: the mass-derived one on the left,
        // the observed one on the right.
        let derived_rate = ops::hubble_from_pion(reg, reg.quantity("m_pi")?)?;
        let lhs = ops::cosmological_constant(reg, derived_rate)?;
        let rhs = ops::cosmological_constant(reg, reg.quantity("H_obs")?)?;
        RelationReport::new(self.id(), self.anchor(), lhs, rhs, tol)
    }
}

struct CmbWavelength;

impl Relation for CmbWavelength {
    fn id(&self) -> &'static str {
        "cmb_wavelength"
    }
    fn anchor(&self) -> &'static str {
        "Sec. 4"
    }
    fn default_tolerance_dex(&self) -> f64 {
        0.1
    }
    fn evaluate(&self, reg: &Registry, tol: f64) -> Result<RelationReport, EngineError> {
        let lambda = ops::cmb_wavelength(reg, reg.quantity("tau_fluct")?)?;
        let rhs = Quantity::centimeters(0.3)?;
        RelationReport::new(self.id(), self.anchor(), lambda, rhs, tol)
    }
}

struct EddingtonLength;

impl Relation for EddingtonLength {
    fn id(&self) -> &'static str {
        "eddington_length"
    }
    fn anchor(&self) -> &'static str {
        "Eq. 30"
    }
    fn default_tolerance_dex(&self) -> f64 {
        1.5
    }
    fn evaluate(&self, reg: &Registry, tol: f64) -> Result<RelationReport, EngineError> {
        ops::eddington_length(reg, reg.quantity("R_obs")?, reg.quantity("N_obs")?, tol)
    }
}

struct HalfHubbleAge;

impl Relation for HalfHubbleAge {
    fn id(&self) -> &'static str {
        "half_hubble_age"
    }
    fn anchor(&self) -> &'static str {
        "Eq. 31"
    }
    fn default_tolerance_dex(&self) -> f64 {
        1.0
    }
    fn evaluate(&self, reg: &Registry, tol: f64) -> Result<RelationReport, EngineError> {
        let age = ops::half_hubble_age(reg, reg.quantity("m_pi")?)?;
        RelationReport::new(self.id(), self.anchor(), age, reg.quantity("T_obs")?, tol)
    }
}

/// Runtime registry of checks. Lookup is by id; iteration order is fixed.
pub struct Catalog {
    entries: Vec<Box<dyn Relation>>,
}

impl Catalog {
    pub fn standard() -> Self {
        Catalog {
            entries: vec![
                Box::new(KerrNewmanHorizon),
                Box::new(ComptonScales),
                Box::new(ZitterChargeEnergy),
                Box::new(EmGravRatio),
                Box::new(SpaceLevels),
                Box::new(ZpfEnergy),
                Box::new(CurvatureFluctuation),
                Box::new(UniverseMass),
                Box::new(ThermalSpacing),
                Box::new(SchwarzschildRadius),
                Box::new(AgeRootN),
                Box::new(HubbleFromPion),
                Box::new(PionFromHubble),
                Box::new(CosmologicalConstant),
                Box::new(CmbWavelength),
                Box::new(EddingtonLength),
                Box::new(HalfHubbleAge),
            ],
        }
    }

    pub fn ids(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.id()).collect()
    }

    pub fn get(&self, id: &str) -> Option<&dyn Relation> {
        self.entries
            .iter()
            .find(|e| e.id() == id)
            .map(|e| e.as_ref())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Evaluate every check in catalog order. Overrides replace default
    /// tolerances per id and are validated up front, so either the whole
    /// run happens or nothing does.
    pub fn run_all(
        &self,
        reg: &Registry,
        tolerance_overrides: &BTreeMap<String, f64>,
    ) -> Result<Vec<RelationReport>, EngineError> {
        for (id, &tol) in tolerance_overrides {
            if self.get(id).is_none() {
                return Err(EngineError::UnknownRelation { id: id.clone() });
            }
            if !(tol.is_finite() && tol > 0.0) {
                return Err(EngineError::InvalidTolerance {
                    id: id.clone(),
                    value: tol,
                });
            }
        }
        let mut reports = Vec::with_capacity(self.entries.len());
        for entry in &self.entries {
            let tol = tolerance_overrides
                .get(entry.id())
                .copied()
                .unwrap_or_else(|| entry.default_tolerance_dex());
            reports.push(entry.evaluate(reg, tol)?);
        }
        Ok(reports)
    }
}
