//! Thin layer over `statrs` special functions plus the few combinatorial
//! helpers the fading models need.

pub use statrs::function::erf::erf;
pub use statrs::function::gamma::{gamma, ln_gamma};

/// Falling factorial `x (x-1) ... (x-k+1)`; equals `Gamma(x+1)/Gamma(x-k+1)`
/// without touching gamma poles.
pub fn falling_factorial(x: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (x - j as f64))
}

/// Rising factorial (Pochhammer symbol) `(x)_k = x (x+1) ... (x+k-1)`.
pub fn pochhammer(x: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (x + j as f64))
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * j as f64)
}

/// Regularized lower incomplete gamma `P(n, x)` for a positive integer shape.
///
/// Uses `1 - e^{-x} sum_{q<n} x^q/q!` when that is well conditioned and the
/// complementary series `e^{-x} sum_{q>=n} x^q/q!` otherwise.
/// `ln Γ(x + a) - ln Γ(x + 1)` without the cancellation of the direct
/// difference at large `x`.
pub fn ln_gamma_ratio(x: f64, a: f64) -> f64 {
    if x < 50.0 {
        return ln_gamma(x + a) - ln_gamma(x + 1.0);
    }
    // Stirling: (z - 1/2) ln z - z + 1/(12z) - 1/(360z³) + 1/(1260z⁵), with
    // the large logarithms combined analytically
    let corr = |z: f64| {
        let r = 1.0 / (z * z);
        (1.0 / 12.0 - r * (1.0 / 360.0 - r / 1260.0)) / z
    };
    (a - 1.0) * x.ln() + (x + a - 0.5) * (a / x).ln_1p() - (x + 0.5) * (1.0 / x).ln_1p() - (a - 1.0)
        + corr(x + a)
        - corr(x + 1.0)
}

pub fn lower_regularized_gamma_int(n: usize, x: f64) -> f64 {
    assert!(n >= 1);
    if x <= 0.0 {
        return 0.0;
    }
    if x == f64::INFINITY {
        return 1.0;
    }
    if x < n as f64 {
        // sum_{q>=n} x^q / q!, all terms positive
        let mut term = (n as f64 * x.ln() - ln_gamma(n as f64 + 1.0) - x).exp();
        let mut sum = term;
        let mut q = n as f64;
        loop {
            q += 1.0;
            term *= x / q;
            sum += term;
            // `<=` also ends the loop when the leading term underflows
            if term <= 1e-17 * sum {
                break;
            }
        }
        sum.min(1.0)
    } else {
        let mut term = (-x).exp();
        let mut upper = term;
        for q in 1..n {
            term *= x / q as f64;
            upper += term;
        }
        (1.0 - upper).max(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn falling_factorial_vanishes_at_integers() {
        assert_eq!(falling_factorial(2.0, 3), 0.0);
        assert_eq!(falling_factorial(5.0, 2), 20.0);
        assert!((falling_factorial(0.5, 2) - (-0.25)).abs() < 1e-15);
    }

    #[test]
    fn pochhammer_of_negative_integer() {
        // (1-m)_l for m = 3: (-2)_0 = 1, (-2)_1 = -2, (-2)_2 = 2, (-2)_3 = 0
        assert_eq!(pochhammer(-2.0, 0), 1.0);
        assert_eq!(pochhammer(-2.0, 1), -2.0);
        assert_eq!(pochhammer(-2.0, 2), 2.0);
        assert_eq!(pochhammer(-2.0, 3), 0.0);
    }

    #[test]
    fn incomplete_gamma_matches_statrs() {
        for n in [1usize, 2, 5, 19] {
            for x in [1e-6, 0.3, 1.0, 4.0, 19.0, 60.0] {
                let ours = lower_regularized_gamma_int(n, x);
                let theirs = statrs::function::gamma::gamma_lr(n as f64, x);
                assert!(
                    (ours - theirs).abs() <= 1e-13 * theirs.max(1e-300) + 1e-15,
                    "n={n} x={x}: {ours} vs {theirs}"
                );
            }
        }
    }

    #[test]
    fn incomplete_gamma_small_argument_keeps_relative_precision() {
        // P(1, x) = 1 - e^{-x} = -expm1(-x)
        let x = 1e-12;
        let p = lower_regularized_gamma_int(1, x);
        assert!((p / -(-x).exp_m1() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gamma_ratio_branches_agree() {
        for a in [-2.3, 0.46, 1.0, 2.7] {
            for x in [49.999, 50.0, 120.0] {
                let direct = ln_gamma(x + a) - ln_gamma(x + 1.0);
                assert!((ln_gamma_ratio(x, a) - direct).abs() < 1e-12, "a={a} x={x}");
            }
            // Γ(x + a)/Γ(x + 1) ~ x^(a-1)
            let x = 1e15;
            assert!((ln_gamma_ratio(x, a) - (a - 1.0) * x.ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn incomplete_gamma_extremes() {
        assert_eq!(lower_regularized_gamma_int(3, 1e-320), 0.0);
        assert_eq!(lower_regularized_gamma_int(3, f64::INFINITY), 1.0);
        assert_eq!(lower_regularized_gamma_int(1, 800.0), 1.0);
    }
}
