//! Small log-space helpers.

/// `log(sum(exp(xs)))` with the running maximum subtracted.
///
/// Summation order follows `xs`, so callers that present the same values in
/// the same order get bit-identical results.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let s: f64 = xs.iter().map(|&x| (x - m).exp()).sum();
    m + s.ln()
}

/// Normalised probabilities from unnormalised log-weights.
pub fn softmax(xs: &[f64]) -> Vec<f64> {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let e: Vec<f64> = xs.iter().map(|&x| (x - m).exp()).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| x / s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_sum_exp_is_stable_for_large_values() {
        let v = log_sum_exp(&[1000.0, 1000.0]);
        assert!((v - (1000.0 + 2f64.ln())).abs() < 1e-12);
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
        assert_eq!(log_sum_exp(&[-3.5]), -3.5);
    }

    #[test]
    fn softmax_sums_to_one() {
        let p = softmax(&[0.1, -2.0, 700.0, 699.0]);
        let s: f64 = p.iter().sum();
        assert!((s - 1.0).abs() <= 4.0 * f64::EPSILON);
        assert!(p[0] < 1e-300);
    }
}
