//! Unit-scale Gumbel primitives and the Gumbel-softmax building blocks.
//!
//! The density is the standard max-stable one,
//! `G(x | mu) = exp(-(x - mu) - exp(-(x - mu)))`, which is closed under
//! shifting and under `max` with location `log(sum(exp(mu_i)))`.

use rand::Rng;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant, the mean of a standard Gumbel.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Uniform draw on the open interval (0, 1).
///
/// `Rng::gen::<f64>()` samples `[0, 1)`; exact zeros are redrawn.
pub fn open_unit_uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.gen();
        if u > 0.0 {
            return u;
        }
    }
}

/// Standard logistic draw from a single open uniform.
pub fn logistic_sample<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u = open_unit_uniform(rng);
    u.ln() - (-u).ln_1p()
}

/// Unit-scale Gumbel with location `loc`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gumbel {
    pub loc: f64,
}

impl Gumbel {
    pub fn new(loc: f64) -> Self {
        Gumbel { loc }
    }

    pub fn log_pdf(&self, x: f64) -> f64 {
        let z = x - self.loc;
        -z - (-z).exp()
    }

    /// Inverse-CDF transform of an open uniform: `loc - ln(-ln u)`.
    pub fn from_uniform(&self, u: f64) -> f64 {
        self.loc - (-u.ln()).ln()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.from_uniform(open_unit_uniform(rng))
    }

    /// Closed form `a - b + (1 - e^(a-b)) Ei(-e^(-a))` with `a = self.loc`.
    ///
    /// This is the expression obtained by integrating the log-ratio terms over
    /// `[0, inf)`; it is not the full-support KL (see [`Gumbel::kl_standard`])
    /// and can be negative.
    pub fn kl_half_line(&self, other: &Gumbel) -> f64 {
        let d = self.loc - other.loc;
        let ei = exponential_integral_ei(-(-self.loc).exp())
            .expect("argument is strictly negative");
        d + (1.0 - d.exp()) * ei
    }

    /// Full-support KL divergence `KL(G(a) || G(b)) = (a - b) + e^(b - a) - 1`.
    pub fn kl_standard(&self, other: &Gumbel) -> f64 {
        let d = self.loc - other.loc;
        d + (-d).exp_m1()
    }
}

/// Log-density of a unit-scale Gumbel.
pub fn gumbel_log_pdf(x: f64, loc: f64) -> f64 {
    Gumbel::new(loc).log_pdf(x)
}

pub fn gumbel_sample<R: Rng + ?Sized>(rng: &mut R, loc: f64) -> f64 {
    Gumbel::new(loc).sample(rng)
}

/// See [`Gumbel::kl_half_line`].
pub fn gumbel_kl(a: f64, b: f64) -> f64 {
    Gumbel::new(a).kl_half_line(&Gumbel::new(b))
}

/// See [`Gumbel::kl_standard`].
pub fn gumbel_kl_standard(a: f64, b: f64) -> f64 {
    Gumbel::new(a).kl_standard(&Gumbel::new(b))
}

const EI_SWITCH: f64 = 1.0;

/// Exponential integral `Ei(z)` for `z < 0`.
///
/// Uses the power series for `|z| <= 1` and a Lentz continued fraction for
/// `E1(-z) = -Ei(z)` beyond.
pub fn exponential_integral_ei(z: f64) -> Result<f64> {
    if !(z.is_finite() && z < 0.0) {
        return Err(Error::DomainError(format!("Ei requires a finite z < 0, got {z}")));
    }
    let x = -z;
    if x <= EI_SWITCH {
        // gamma + ln|z| + sum_k z^k / (k k!)
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..200 {
            term *= z / k as f64;
            let add = term / k as f64;
            sum += add;
            if add.abs() < 1e-17 * sum.abs().max(1e-300) {
                break;
            }
        }
        Ok(EULER_GAMMA + x.ln() + sum)
    } else {
        const TINY: f64 = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..1000 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        Ok(-h * (-x).exp())
    }
}

/// Relaxed Bernoulli(`zeta`) draw at temperature `tau` from one logistic
/// variable.
pub fn binary_gumbel_softmax<R: Rng + ?Sized>(zeta: f64, tau: f64, rng: &mut R) -> Result<f64> {
    check_binary_args(zeta, tau)?;
    let l = logistic_sample(rng);
    Ok(relaxed_bernoulli(zeta, tau, l))
}

/// As [`binary_gumbel_softmax`] with the logistic noise supplied.
pub fn binary_gumbel_softmax_with_noise(zeta: f64, tau: f64, logistic: f64) -> Result<f64> {
    check_binary_args(zeta, tau)?;
    Ok(relaxed_bernoulli(zeta, tau, logistic))
}

fn check_binary_args(zeta: f64, tau: f64) -> Result<()> {
    if !(zeta > 0.0 && zeta < 1.0) {
        return Err(Error::DomainError(format!("zeta must lie in (0, 1), got {zeta}")));
    }
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::DomainError(format!("tau must be positive, got {tau}")));
    }
    Ok(())
}

// sigmoid((ln z - ln(1-z) - l) / tau), clamped to the open interval
fn relaxed_bernoulli(zeta: f64, tau: f64, logistic: f64) -> f64 {
    let a = zeta.ln() / tau;
    let b = ((-zeta).ln_1p() + logistic) / tau;
    let d = a - b;
    let x = if d >= 0.0 {
        1.0 / (1.0 + (-d).exp())
    } else {
        let e = d.exp();
        e / (1.0 + e)
    };
    x.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn log_pdf_values() {
        assert_eq!(gumbel_log_pdf(0.0, 0.0), -1.0);
        assert_abs_diff_eq!(gumbel_log_pdf(5.0, 0.0), -5.0 - (-5f64).exp(), epsilon = 1e-15);
        assert_abs_diff_eq!(gumbel_log_pdf(5.0, 0.0), -5.006_737_946_999_085, epsilon = 1e-12);
        for mu in [-3.0, 0.5, 7.0] {
            assert_abs_diff_eq!(gumbel_log_pdf(mu + 1.3, mu), gumbel_log_pdf(1.3, 0.0), epsilon = 1e-12);
        }
    }

    #[test]
    fn density_integrates_to_one() {
        // trapezoid on [-10, 40]
        let h = 1e-3;
        let n = (50.0 / h) as usize;
        let s: f64 = (0..=n)
            .map(|k| {
                let x = -10.0 + k as f64 * h;
                let w = if k == 0 || k == n { 0.5 } else { 1.0 };
                w * gumbel_log_pdf(x, 0.0).exp()
            })
            .sum();
        assert_abs_diff_eq!(s * h, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn shift_property_on_shared_uniforms() {
        let mut r1 = ChaCha8Rng::seed_from_u64(3);
        let mut r2 = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a = gumbel_sample(&mut r1, 0.0);
            let b = gumbel_sample(&mut r2, 3.0);
            assert_abs_diff_eq!(b, a + 3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn ei_reference_values() {
        // reference values from an independent special-function library
        let cases = [
            (-1.0, -0.219_383_934_395_520_5),
            (-(-1f64).exp(), -0.759_415_796_768_330_4),
            (-50.0, -3.783_264_029_550_459e-24),
            (-1e-6, -13.238_295_893_062_49),
            (-5.0, -0.001_148_295_591_275_325_7),
            (-0.5, -0.559_773_594_776_160_8),
            (-1.5, -0.100_019_582_406_632_65),
        ];
        for (z, want) in cases {
            let got = exponential_integral_ei(z).unwrap();
            assert!((got - want).abs() <= 1e-12, "Ei({z}) = {got}, want {want}");
        }
        assert!(exponential_integral_ei(0.0).is_err());
        assert!(exponential_integral_ei(0.3).is_err());
        assert!(exponential_integral_ei(f64::NAN).is_err());
    }

    #[test]
    fn ei_is_continuous_at_the_switch() {
        let lo = exponential_integral_ei(-1.0 + 1e-12).unwrap();
        let hi = exponential_integral_ei(-1.0 - 1e-12).unwrap();
        assert!((lo - hi).abs() < 1e-11);
    }

    #[test]
    fn kl_closed_forms() {
        for a in [-2.0, 0.0, 1.5] {
            assert_eq!(gumbel_kl(a, a), 0.0);
            assert_eq!(gumbel_kl_standard(a, a), 0.0);
        }
        assert_abs_diff_eq!(gumbel_kl(1.0, 0.0), 2.304_890_363_831_769_5, epsilon = 1e-12);
        assert_abs_diff_eq!(gumbel_kl(0.0, 1.0), -1.138_677_095_208_104, epsilon = 1e-12);
        assert!(gumbel_kl_standard(0.0, 1.0) > 0.0);
    }

    #[test]
    fn binary_softmax_fixed_noise() {
        for tau in [0.01, 0.5, 1.0, 3.0] {
            assert_abs_diff_eq!(binary_gumbel_softmax_with_noise(0.5, tau, 0.0).unwrap(), 0.5);
        }
        assert_abs_diff_eq!(binary_gumbel_softmax_with_noise(0.9, 1.0, 0.0).unwrap(), 0.9, epsilon = 1e-15);
        assert!(binary_gumbel_softmax_with_noise(0.0, 1.0, 0.0).is_err());
        assert!(binary_gumbel_softmax_with_noise(1.0, 1.0, 0.0).is_err());
        assert!(binary_gumbel_softmax_with_noise(0.4, 0.0, 0.0).is_err());
        let x = binary_gumbel_softmax_with_noise(0.999, 1e-4, -40.0).unwrap();
        assert!(x > 0.0 && x < 1.0);
        let x = binary_gumbel_softmax_with_noise(0.001, 1e-4, 40.0).unwrap();
        assert!(x > 0.0 && x < 1.0);
    }

    #[test]
    fn logistic_is_symmetric_in_distribution() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let n = 200_000;
        let mean: f64 = (0..n).map(|_| logistic_sample(&mut rng)).sum::<f64>() / n as f64;
        // logistic variance is pi^2 / 3
        let se = (std::f64::consts::PI.powi(2) / 3.0 / n as f64).sqrt();
        assert!(mean.abs() < 4.0 * se);
    }
}
