//! Closed-form map families.

use std::fmt;

use crate::error::{Error, Result};
use crate::specfun::gamma_positive;

/// Largest admitted FLM order. Integer shifts of the order only integrate
/// or differentiate the map, so nothing new happens beyond a few units.
pub const ALPHA_MAX: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Fractional logistic map of order `alpha`.
    Flm,
    /// `lam * x * (1 - x)`.
    ClassicLogistic,
    /// `lam * x * exp(-beta * x)`.
    Ricker,
    /// `lam * x / (1 + x)^beta`.
    Hassel,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Flm => "flm",
            Family::ClassicLogistic => "logistic",
            Family::Ricker => "ricker",
            Family::Hassel => "hassel",
        })
    }
}

/// A map family with its parameters. `alpha` is only meaningful for
/// [`Family::Flm`] and `beta` only for Ricker and Hassel; the other fields
/// are kept at 0 and 1 respectively.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapSpec {
    pub family: Family,
    pub alpha: f64,
    pub lam: f64,
    pub beta: f64,
}

impl MapSpec {
    pub fn flm(alpha: f64, lam: f64) -> Result<Self> {
        Self::new(Family::Flm, alpha, lam, 1.0)
    }

    pub fn logistic(lam: f64) -> Result<Self> {
        Self::new(Family::ClassicLogistic, 0.0, lam, 1.0)
    }

    pub fn ricker(lam: f64, beta: f64) -> Result<Self> {
        Self::new(Family::Ricker, 0.0, lam, beta)
    }

    pub fn hassel(lam: f64, beta: f64) -> Result<Self> {
        Self::new(Family::Hassel, 0.0, lam, beta)
    }

    pub fn new(family: Family, alpha: f64, lam: f64, beta: f64) -> Result<Self> {
        let spec = MapSpec {
            family,
            alpha,
            lam,
            beta,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lam > 0.0) || !self.lam.is_finite() {
            return Err(Error::invalid("lam", "must be a finite value > 0"));
        }
        match self.family {
            Family::Flm => {
                if !(0.0..=ALPHA_MAX).contains(&self.alpha) {
                    return Err(Error::invalid(
                        "alpha",
                        format!("must lie in [0, {ALPHA_MAX}]"),
                    ));
                }
            }
            Family::ClassicLogistic => {
                if self.alpha != 0.0 {
                    return Err(Error::invalid(
                        "alpha",
                        "only the flm family takes an order",
                    ));
                }
            }
            Family::Ricker | Family::Hassel => {
                if self.alpha != 0.0 {
                    return Err(Error::invalid(
                        "alpha",
                        "only the flm family takes an order",
                    ));
                }
                if !(self.lam > 1.0) {
                    return Err(Error::invalid(
                        "lam",
                        format!("{} needs lam > 1", self.family),
                    ));
                }
                if !(self.beta > 0.0) || !self.beta.is_finite() {
                    return Err(Error::invalid("beta", "must be a finite value > 0"));
                }
            }
        }
        Ok(())
    }

    /// Effective FLM order: 0 for every non-FLM family.
    pub fn order(&self) -> f64 {
        match self.family {
            Family::Flm => self.alpha,
            _ => 0.0,
        }
    }

    pub fn domain(&self) -> MapDomain {
        let upper_zero = match self.family {
            Family::Flm => flm_upper_zero(self.alpha),
            Family::ClassicLogistic => 1.0,
            Family::Ricker | Family::Hassel => f64::INFINITY,
        };
        MapDomain {
            lower: 0.0,
            upper_zero,
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        check_x(x)?;
        Ok(self.evaluator().eval(x))
    }

    pub fn derivative(&self, x: f64) -> Result<f64> {
        check_x(x)?;
        Ok(self.evaluator().derivative(x))
    }

    /// Precomputed evaluator for hot loops. Inputs are assumed `>= 0`.
    pub(crate) fn evaluator(&self) -> Evaluator {
        match self.family {
            Family::Flm if self.alpha != 0.0 => {
                Evaluator::Flm(FlmCoeffs::new(self.alpha, self.lam))
            }
            Family::Flm | Family::ClassicLogistic => Evaluator::Logistic { lam: self.lam },
            Family::Ricker => Evaluator::Ricker {
                lam: self.lam,
                beta: self.beta,
            },
            Family::Hassel => Evaluator::Hassel {
                lam: self.lam,
                beta: self.beta,
            },
        }
    }
}

/// Real domain of a map: `[lower, upper_zero]` is where it is non-negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapDomain {
    pub lower: f64,
    pub upper_zero: f64,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct FlmCoeffs {
    alpha: f64,
    /// lam / Γ(alpha + 2)
    prefactor: f64,
    /// 2 / (alpha + 2)
    slope: f64,
}

impl FlmCoeffs {
    fn new(alpha: f64, lam: f64) -> Self {
        FlmCoeffs {
            alpha,
            prefactor: lam / gamma_positive(alpha + 2.0),
            slope: 2.0 / (alpha + 2.0),
        }
    }

    fn eval(&self, x: f64) -> f64 {
        self.prefactor * (1.0 - self.slope * x) * x.powf(1.0 + self.alpha)
    }

    fn derivative(&self, x: f64) -> f64 {
        if x == 0.0 {
            return 0.0;
        }
        let xa = x.powf(self.alpha);
        self.prefactor * ((1.0 + self.alpha) * xa - 2.0 * x * xa)
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum Evaluator {
    Flm(FlmCoeffs),
    Logistic { lam: f64 },
    Ricker { lam: f64, beta: f64 },
    Hassel { lam: f64, beta: f64 },
}

impl Evaluator {
    #[inline]
    pub(crate) fn eval(&self, x: f64) -> f64 {
        match *self {
            Evaluator::Flm(c) => c.eval(x),
            Evaluator::Logistic { lam } => lam * x * (1.0 - x),
            Evaluator::Ricker { lam, beta } => lam * x * (-beta * x).exp(),
            Evaluator::Hassel { lam, beta } => lam * x / (1.0 + x).powf(beta),
        }
    }

    #[inline]
    pub(crate) fn derivative(&self, x: f64) -> f64 {
        match *self {
            Evaluator::Flm(c) => c.derivative(x),
            Evaluator::Logistic { lam } => lam * (1.0 - 2.0 * x),
            Evaluator::Ricker { lam, beta } => lam * (-beta * x).exp() * (1.0 - beta * x),
            Evaluator::Hassel { lam, beta } => {
                lam * ((1.0 + x) - beta * x) / (1.0 + x).powf(beta + 1.0)
            }
        }
    }
}

fn check_x(x: f64) -> Result<()> {
    if x >= 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "x",
            value: x,
            reason: "maps are defined for finite x >= 0",
        })
    }
}

fn check_flm(alpha: f64, lam: f64) -> Result<()> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::Domain {
            name: "alpha",
            value: alpha,
            reason: "order must be a finite value >= 0",
        });
    }
    // lam = 0 is admitted here (the zero map); MapSpec requires lam > 0.
    if !(lam >= 0.0) || !lam.is_finite() {
        return Err(Error::Domain {
            name: "lam",
            value: lam,
            reason: "lam must be a finite value >= 0",
        });
    }
    Ok(())
}

/// Fractional logistic map `lam / Γ(alpha + 2) * (1 - 2x/(alpha + 2)) * x^(1 + alpha)`.
///
/// `alpha = 0` is evaluated as `lam * x * (1 - x)` exactly.
pub fn flm_eval(alpha: f64, lam: f64, x: f64) -> Result<f64> {
    check_flm(alpha, lam)?;
    check_x(x)?;
    if alpha == 0.0 {
        return Ok(lam * x * (1.0 - x));
    }
    Ok(FlmCoeffs::new(alpha, lam).eval(x))
}

/// The order-1/2 map `4 lam / (3√π) * (1 - 4x/5) * x^(3/2)`, written out
/// independently of [`flm_eval`].
pub fn semi_logistic_eval(lam: f64, x: f64) -> Result<f64> {
    check_flm(0.5, lam)?;
    check_x(x)?;
    let sqrt_pi = std::f64::consts::PI.sqrt();
    Ok(4.0 * lam / (3.0 * sqrt_pi) * (1.0 - 4.0 * x / 5.0) * (x * x.sqrt()))
}

/// `d/dx` of the FLM: `lam / Γ(alpha + 2) * ((1 + alpha) x^alpha - 2 x^(1 + alpha))`.
///
/// Algebraically this is the FLM of order `alpha - 1`. At `x = 0` the
/// one-sided limit is used: 0 for `alpha > 0`, `lam` for `alpha = 0`.
pub fn flm_derivative(alpha: f64, lam: f64, x: f64) -> Result<f64> {
    check_flm(alpha, lam)?;
    check_x(x)?;
    if alpha == 0.0 {
        return Ok(lam * (1.0 - 2.0 * x));
    }
    Ok(FlmCoeffs::new(alpha, lam).derivative(x))
}

/// Positive zero of the FLM, `1 + alpha/2`.
pub fn flm_upper_zero(alpha: f64) -> f64 {
    1.0 + 0.5 * alpha
}

/// Critical point `(1 + alpha)/2` where the FLM attains its maximum.
pub fn flm_critical_point(alpha: f64) -> f64 {
    0.5 * (1.0 + alpha)
}

pub fn map_eval(spec: &MapSpec, x: f64) -> Result<f64> {
    spec.eval(x)
}

pub fn map_derivative(spec: &MapSpec, x: f64) -> Result<f64> {
    spec.derivative(x)
}
