//! Frequency-dependent permittivity models.
//!
//! The unit cell carries a two-phase permittivity: a constant background value
//! ε_a and an inclusion value ε_b(ω) given by one of four rational models, each
//! holomorphic away from a known finite pole set. Frequencies are in reduced
//! units ω·a/c with lattice constant a = 1 and light speed c = 1.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sim::SearchRegion;

/// Default guard distance between admitted frequencies and permittivity poles,
/// ten times the default search precision β₀ = 1e-4 so quadrature nodes can
/// never straddle a pole.
pub const DEFAULT_POLE_GUARD: f64 = 1e-3;

/// Inclusion permittivity ε_b(ω).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelKind {
    /// ε_b constant (frequency independent).
    Constant { eps_b: f64 },
    /// ε_b(ω) = ε_∞ (ω_L² − ω²) / (ω_T² − ω²), poles at ±ω_T.
    Lorentz {
        eps_inf: f64,
        omega_l: f64,
        omega_t: f64,
    },
    /// ε_b(ω) = 1 − ω_p²/ω².
    DrudeLossless { omega_p: f64 },
    /// ε_b(ω) = 1 − ω_p² / (ω(ω + iγ)).
    DrudeLossy { omega_p: f64, gamma: f64 },
}

/// Piecewise-constant-in-space permittivity: `eps_background` outside the
/// inclusion disc, `kind` inside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DielectricModel {
    pub kind: ModelKind,
    pub eps_background: f64,
    pub pole_guard: f64,
}

impl DielectricModel {
    fn new(kind: ModelKind) -> Self {
        Self {
            kind,
            eps_background: 1.0,
            pole_guard: DEFAULT_POLE_GUARD,
        }
    }

    pub fn constant(eps_b: f64) -> Result<Self> {
        if !(eps_b > 0.0) || !eps_b.is_finite() {
            return Err(Error::InvalidModel(format!(
                "constant model needs eps_b > 0, got {eps_b}"
            )));
        }
        Ok(Self::new(ModelKind::Constant { eps_b }))
    }

    pub fn lorentz(eps_inf: f64, omega_l: f64, omega_t: f64) -> Result<Self> {
        if !(eps_inf > 0.0) {
            return Err(Error::InvalidModel(format!(
                "lorentz model needs eps_inf > 0, got {eps_inf}"
            )));
        }
        if !(omega_l > omega_t && omega_t > 0.0) {
            return Err(Error::InvalidModel(format!(
                "lorentz model needs omega_l > omega_t > 0, got omega_l={omega_l}, omega_t={omega_t}"
            )));
        }
        Ok(Self::new(ModelKind::Lorentz {
            eps_inf,
            omega_l,
            omega_t,
        }))
    }

    pub fn drude_lossless(omega_p: f64) -> Result<Self> {
        if !(omega_p > 0.0) {
            return Err(Error::InvalidModel(format!(
                "drude model needs omega_p > 0, got {omega_p}"
            )));
        }
        Ok(Self::new(ModelKind::DrudeLossless { omega_p }))
    }

    pub fn drude_lossy(omega_p: f64, gamma: f64) -> Result<Self> {
        if !(omega_p > 0.0) {
            return Err(Error::InvalidModel(format!(
                "drude model needs omega_p > 0, got {omega_p}"
            )));
        }
        if !(gamma > 0.0) {
            return Err(Error::InvalidModel(format!(
                "lossy drude model needs gamma > 0, got {gamma}"
            )));
        }
        Ok(Self::new(ModelKind::DrudeLossy { omega_p, gamma }))
    }

    pub fn with_background(mut self, eps_a: f64) -> Result<Self> {
        if !(eps_a > 0.0) || !eps_a.is_finite() {
            return Err(Error::InvalidModel(format!(
                "background permittivity must be positive, got {eps_a}"
            )));
        }
        self.eps_background = eps_a;
        Ok(self)
    }

    pub fn with_pole_guard(mut self, guard: f64) -> Self {
        self.pole_guard = guard;
        self
    }

    /// Inclusion permittivity ε_b(ω).
    ///
    /// Fails with [`Error::PoleProximity`] when ω is within the pole guard of a
    /// singularity of the raw formula (this includes ω = 0 for the Drude
    /// models, where ε_b itself diverges even though ω²ε_b does not).
    pub fn eval(&self, omega: Complex64) -> Result<Complex64> {
        self.guard_against(&self.formula_poles(), omega)?;
        Ok(match self.kind {
            ModelKind::Constant { eps_b } => Complex64::new(eps_b, 0.0),
            ModelKind::Lorentz {
                eps_inf,
                omega_l,
                omega_t,
            } => {
                let w2 = omega * omega;
                eps_inf * (omega_l * omega_l - w2) / (omega_t * omega_t - w2)
            }
            ModelKind::DrudeLossless { omega_p } => 1.0 - omega_p * omega_p / (omega * omega),
            ModelKind::DrudeLossy { omega_p, gamma } => {
                1.0 - omega_p * omega_p / (omega * (omega + Complex64::new(0.0, gamma)))
            }
        })
    }

    /// ω² ε_b(ω) in pole-reduced form. This is the coefficient that actually
    /// enters the operator, and it stays finite at removable singularities of
    /// the raw formula (ω = 0 for Drude).
    pub fn omega2_eps_b(&self, omega: Complex64) -> Result<Complex64> {
        self.guard_against(&self.poles(), omega)?;
        let w2 = omega * omega;
        Ok(match self.kind {
            ModelKind::Constant { eps_b } => w2 * eps_b,
            ModelKind::Lorentz {
                eps_inf,
                omega_l,
                omega_t,
            } => w2 * eps_inf * (omega_l * omega_l - w2) / (omega_t * omega_t - w2),
            ModelKind::DrudeLossless { omega_p } => w2 - omega_p * omega_p,
            ModelKind::DrudeLossy { omega_p, gamma } => {
                w2 - omega_p * omega_p * omega / (omega + Complex64::new(0.0, gamma))
            }
        })
    }

    /// Poles of ω ↦ ω²ε_b(ω), the singularities that matter for holomorphy of
    /// the assembled operator.
    pub fn poles(&self) -> Vec<Complex64> {
        match self.kind {
            ModelKind::Constant { .. } | ModelKind::DrudeLossless { .. } => vec![],
            ModelKind::Lorentz { omega_t, .. } => vec![
                Complex64::new(omega_t, 0.0),
                Complex64::new(-omega_t, 0.0),
            ],
            ModelKind::DrudeLossy { gamma, .. } => vec![Complex64::new(0.0, -gamma)],
        }
    }

    /// Singularities of the raw formula ω ↦ ε_b(ω) (superset of [`poles`](Self::poles)).
    fn formula_poles(&self) -> Vec<Complex64> {
        match self.kind {
            ModelKind::Constant { .. } => vec![],
            ModelKind::Lorentz { omega_t, .. } => vec![
                Complex64::new(omega_t, 0.0),
                Complex64::new(-omega_t, 0.0),
            ],
            ModelKind::DrudeLossless { .. } => vec![Complex64::ZERO],
            ModelKind::DrudeLossy { gamma, .. } => {
                vec![Complex64::ZERO, Complex64::new(0.0, -gamma)]
            }
        }
    }

    fn guard_against(&self, poles: &[Complex64], omega: Complex64) -> Result<()> {
        for &pole in poles {
            if (omega - pole).norm() <= self.pole_guard {
                return Err(Error::PoleProximity {
                    omega,
                    pole,
                    guard: self.pole_guard,
                });
            }
        }
        Ok(())
    }

    /// True iff every pole of ω²ε_b lies at distance greater than `guard` from
    /// the closed disk circumscribing `region`, so the operator is holomorphic
    /// on everything the indicator will ever sample inside that region.
    pub fn region_is_holomorphic(&self, region: &SearchRegion, guard: f64) -> bool {
        let radius = region.circum_radius();
        self.poles()
            .iter()
            .all(|pole| (pole - region.center).norm() - radius > guard)
    }

    /// Analytic dε_b/dω. Used by the holomorphy smoke tests.
    pub fn eval_derivative(&self, omega: Complex64) -> Result<Complex64> {
        self.guard_against(&self.formula_poles(), omega)?;
        Ok(match self.kind {
            ModelKind::Constant { .. } => Complex64::ZERO,
            ModelKind::Lorentz {
                eps_inf,
                omega_l,
                omega_t,
            } => {
                let den = omega_t * omega_t - omega * omega;
                2.0 * eps_inf * omega * (omega_l * omega_l - omega_t * omega_t) / (den * den)
            }
            ModelKind::DrudeLossless { omega_p } => {
                2.0 * omega_p * omega_p / (omega * omega * omega)
            }
            ModelKind::DrudeLossy { omega_p, gamma } => {
                let den = omega * omega + Complex64::new(0.0, gamma) * omega;
                omega_p * omega_p * (2.0 * omega + Complex64::new(0.0, gamma)) / (den * den)
            }
        })
    }
}
