/// Numerical thresholds shared by every operation.
///
/// The defaults are the values every verdict in this crate is calibrated
/// against; the CLI exposes them as overrides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Values in `(-eps_neg, 0)` are clamped to zero; anything below is an error.
    pub eps_neg: f64,
    /// Slack allowed when checking that mass plus tail bound equals one.
    pub eps_mass: f64,
    /// An index is an atom when its mass strictly exceeds this.
    pub support_threshold: f64,
    /// Floor of the negativity threshold applied to log-series coefficients.
    pub negativity_floor: f64,
    /// Tail bounds above this make the divisibility test inconclusive.
    pub heavy_tail: f64,
    /// Jump atoms with mass at or below this are flagged as faint.
    pub faint_jump_mass: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        eps_neg: 1e-12,
        eps_mass: 1e-9,
        support_threshold: 1e-12,
        negativity_floor: 1e-9,
        heavy_tail: 1e-6,
        faint_jump_mass: 1e-9,
    };

    /// Sets a field by name. Used by the CLI `--tolerance name=value` flag.
    pub fn set(&mut self, name: &str, value: f64) -> Option<()> {
        let slot = match name {
            "eps_neg" => &mut self.eps_neg,
            "eps_mass" => &mut self.eps_mass,
            "support_threshold" => &mut self.support_threshold,
            "negativity_floor" => &mut self.negativity_floor,
            "heavy_tail" => &mut self.heavy_tail,
            "faint_jump_mass" => &mut self.faint_jump_mass,
            _ => return None,
        };
        *slot = value;
        Some(())
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Default truncation index for constructed laws.
pub const DEFAULT_TRUNCATION: usize = 256;
