//! System parameters shared by every analytic and simulation routine.
//!
//! All values are stored in linear units (mW, Hz, metres); dB conversion
//! happens once, at the configuration boundary. Only the ratio `p_b / p_d`
//! enters any formula, so scaling both powers by a common factor leaves
//! every output bit-identical.

use std::fmt;

/// Channel access for D2D traffic relative to status-update traffic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AccessMode {
    /// D2D messages and status updates share one band and interfere.
    #[default]
    CoChannel,
    /// D2D messages and status updates use disjoint bands.
    Orthogonal,
}

impl fmt::Display for AccessMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AccessMode::CoChannel => write!(f, "co-channel"),
            AccessMode::Orthogonal => write!(f, "orthogonal"),
        }
    }
}

/// Immutable bundle of system parameters.
///
/// The defaults reproduce the reference configuration used throughout the
/// numerical experiments: `lambda_b = 1e-4` BS/m², `lambda_d = 20 lambda_b`,
/// `alpha = 4`, `jm_radius = 40` m, `q_d = 0.3`, `r_d = 2` m, 3 dB SIR
/// thresholds and a 200 kHz channel.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkParams {
    /// Base-station density, 1/m².
    pub lambda_b: f64,
    /// Device density, 1/m².
    pub lambda_d: f64,
    /// D2D medium-access probability.
    pub q_d: f64,
    /// D2D link distance, m.
    pub r_d: f64,
    /// Path-loss exponent (> 2).
    pub alpha: f64,
    /// Fractional power-control exponent in [0, 1].
    pub epsilon: f64,
    /// Baseline update transmit power, linear mW.
    pub p_b: f64,
    /// D2D transmit power, linear mW.
    pub p_d: f64,
    /// Maximum device transmit power, linear mW. Only used to derive
    /// `jm_radius` when that is not given directly.
    pub p_max: Option<f64>,
    /// Radius of the serving region around each BS, m.
    pub jm_radius: f64,
    /// SIR threshold for status updates, linear.
    pub beta_b: f64,
    /// SIR threshold for D2D messages, linear.
    pub beta_d: f64,
    /// Channel bandwidth, Hz.
    pub bandwidth: f64,
    pub access_mode: AccessMode,
}

impl Default for NetworkParams {
    fn default() -> Self {
        NetworkParams {
            lambda_b: 1e-4,
            lambda_d: 2e-3,
            q_d: 0.3,
            r_d: 2.0,
            alpha: 4.0,
            epsilon: 0.0,
            p_b: 1.0,
            p_d: 1.0,
            p_max: None,
            jm_radius: 40.0,
            beta_b: 2.0,
            beta_d: 2.0,
            bandwidth: 200_000.0,
            access_mode: AccessMode::CoChannel,
        }
    }
}

impl NetworkParams {
    /// `delta = 2 / alpha`, the stable exponent of the path-loss law.
    pub fn delta(&self) -> f64 {
        2.0 / self.alpha
    }

    /// Probability that a point lies within distance `x` of some BS:
    /// `F(x) = 1 - exp(-pi lambda_b x^2)`.
    pub fn coverage_within(&self, x: f64) -> f64 {
        -(-std::f64::consts::PI * self.lambda_b * x * x).exp_m1()
    }

    /// Fraction of devices eligible for status updates, `F(J)`.
    pub fn coverage_fraction(&self) -> f64 {
        self.coverage_within(self.jm_radius)
    }

    /// Density of devices left after removing one per cell,
    /// `lambda_d' = lambda_d - lambda_b`.
    pub fn lambda_d_thinned(&self) -> f64 {
        self.lambda_d - self.lambda_b
    }

    /// Power ratio `p_b / p_d`; everything downstream depends on the two
    /// powers only through this.
    pub fn power_ratio(&self) -> f64 {
        self.p_b / self.p_d
    }

    /// Checks every invariant and returns either the list of warnings or
    /// the full list of violations.
    pub fn validate(&self) -> Result<Vec<ValidationIssue>, ValidationErrors> {
        let mut errors = Vec::new();
        let mut warnings = Vec::new();

        if !(self.alpha > 2.0) {
            errors.push(ValidationIssue::new(
                IssueCode::AlphaTooSmall,
                format!("alpha = {} but the path-loss exponent must exceed 2", self.alpha),
            ));
        }
        if !(self.lambda_b > 0.0) || !self.lambda_b.is_finite() {
            errors.push(ValidationIssue::new(
                IssueCode::NonPositive,
                format!("lambda_b = {} must be positive and finite", self.lambda_b),
            ));
        }
        if !(self.lambda_d > 0.0) || !self.lambda_d.is_finite() {
            errors.push(ValidationIssue::new(
                IssueCode::NonPositive,
                format!("lambda_d = {} must be positive and finite", self.lambda_d),
            ));
        } else if self.lambda_d < self.lambda_b {
            errors.push(ValidationIssue::new(
                IssueCode::DensityOrder,
                format!(
                    "lambda_d = {} must not be below lambda_b = {}",
                    self.lambda_d, self.lambda_b
                ),
            ));
        } else if self.lambda_d < 5.0 * self.lambda_b {
            warnings.push(ValidationIssue::new(
                IssueCode::DensityRatioLow,
                format!(
                    "lambda_d / lambda_b = {:.3} is below 5; the thinned-PPP \
                     approximation degrades at low density ratios",
                    self.lambda_d / self.lambda_b
                ),
            ));
        }
        for (name, value) in [("q_d", self.q_d), ("epsilon", self.epsilon)] {
            if !(0.0..=1.0).contains(&value) {
                errors.push(ValidationIssue::new(
                    IssueCode::ProbabilityOutOfRange,
                    format!("{name} = {value} must lie in [0, 1]"),
                ));
            }
        }
        if !(self.jm_radius > 0.0) {
            errors.push(ValidationIssue::new(
                IssueCode::JmRadiusInvalid,
                format!("jm_radius = {} must be positive", self.jm_radius),
            ));
        } else if !self.jm_radius.is_finite() {
            errors.push(ValidationIssue::new(
                IssueCode::JmRadiusInvalid,
                "jm_radius is infinite; the spatial AoI moments diverge as the cell \
                 radius grows without bound, so a finite radius must be supplied"
                    .to_string(),
            ));
        }
        let positives = [
            ("r_d", self.r_d),
            ("p_b", self.p_b),
            ("p_d", self.p_d),
            ("beta_b", self.beta_b),
            ("beta_d", self.beta_d),
            ("bandwidth", self.bandwidth),
        ];
        for (name, value) in positives {
            if !(value > 0.0) || !value.is_finite() {
                errors.push(ValidationIssue::new(
                    IssueCode::NonPositive,
                    format!("{name} = {value} must be positive and finite"),
                ));
            }
        }
        if let Some(p_max) = self.p_max {
            if !(p_max > 0.0) || !p_max.is_finite() {
                errors.push(ValidationIssue::new(
                    IssueCode::NonPositive,
                    format!("p_max = {p_max} must be positive and finite"),
                ));
            }
        }

        if errors.is_empty() {
            Ok(warnings)
        } else {
            Err(ValidationErrors(errors))
        }
    }
}

/// Serving-region radius implied by a transmit-power budget:
/// `J = (p_max / p_b)^(1 / (alpha epsilon))`.
///
/// With `epsilon = 0` devices transmit at fixed power, so the budget either
/// always holds (`J = +inf`, and the caller must then choose a finite radius
/// explicitly) or never does (`J = 0`).
pub fn jm_radius_from_power(p_max: f64, p_b: f64, alpha: f64, epsilon: f64) -> f64 {
    debug_assert!(p_max > 0.0 && p_b > 0.0 && alpha > 2.0 && (0.0..=1.0).contains(&epsilon));
    if epsilon == 0.0 {
        return if p_max >= p_b { f64::INFINITY } else { 0.0 };
    }
    (p_max / p_b).powf(1.0 / (alpha * epsilon))
}

/// Converts a dB value to linear scale.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Converts a linear value to dB.
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// Machine-readable classification of a validation finding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IssueCode {
    AlphaTooSmall,
    DensityOrder,
    DensityRatioLow,
    ProbabilityOutOfRange,
    JmRadiusInvalid,
    NonPositive,
}

impl IssueCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            IssueCode::AlphaTooSmall => "ALPHA_TOO_SMALL",
            IssueCode::DensityOrder => "DENSITY_ORDER",
            IssueCode::DensityRatioLow => "DENSITY_RATIO_LOW",
            IssueCode::ProbabilityOutOfRange => "PROBABILITY_OUT_OF_RANGE",
            IssueCode::JmRadiusInvalid => "JM_RADIUS_INVALID",
            IssueCode::NonPositive => "NON_POSITIVE",
        }
    }
}

/// One violated invariant or warning, with a code and a human explanation.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationIssue {
    pub code: IssueCode,
    pub message: String,
}

impl ValidationIssue {
    fn new(code: IssueCode, message: String) -> Self {
        ValidationIssue { code, message }
    }
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code.as_str(), self.message)
    }
}

/// All invariant violations found by [`NetworkParams::validate`].
#[derive(Debug, Clone, thiserror::Error)]
#[error("invalid parameters: {}", .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
pub struct ValidationErrors(pub Vec<ValidationIssue>);
