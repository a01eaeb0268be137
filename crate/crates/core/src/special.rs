//! Gamma function at half-integers and unit-ball volumes.

use std::f64::consts::PI;

/// `Γ(k/2)` for a positive integer `k`, by the recurrence `Γ(x+1) = xΓ(x)`
/// from `Γ(1) = 1` and `Γ(1/2) = √π`.
pub fn gamma_half(k: u32) -> f64 {
    assert!(k > 0, "Γ(0) is undefined");
    let mut x = if k % 2 == 0 { 1.0 } else { 0.5 };
    let mut g = if k % 2 == 0 { 1.0 } else { PI.sqrt() };
    while 2.0 * x < f64::from(k) {
        g *= x;
        x += 1.0;
    }
    g
}

/// Volume `κₙ = π^{n/2} / Γ(n/2 + 1)` of the `n`-dimensional unit ball (`κ₀ = 1`).
pub fn kappa(n: usize) -> f64 {
    let n = n as u32;
    PI.powf(f64::from(n) / 2.0) / gamma_half(n + 2)
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_values() {
        assert_eq!(gamma_half(2), 1.0);
        assert!((gamma_half(1) - PI.sqrt()).abs() < 1e-15);
        assert!((gamma_half(5) - 0.75 * PI.sqrt()).abs() < 1e-15);
        assert_eq!(gamma_half(10), 24.0);
    }

    #[test]
    fn ball_volumes() {
        assert_eq!(kappa(0), 1.0);
        assert!((kappa(1) - 2.0).abs() < 1e-15);
        assert!((kappa(2) - PI).abs() < 1e-15);
        assert!((kappa(3) - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((kappa(4) - PI * PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(3, 4), 0.0);
        assert_eq!(factorial(5), 120.0);
    }
}
