//! Complex gamma-family functions and `sin(πz)`.
//!
//! Everything here works in binary64. `lngamma` uses the g = 7, nine-term
//! Lanczos approximation on `Re z >= 1/2`; the left half-plane is reached by
//! the reflection formula on the real axis and by upward recurrence off it,
//! which keeps the imaginary part on the principal (continuous) branch.

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

/// Minimum distance from a pole of Γ accepted by [`lngamma`].
pub const POLE_GUARD: f64 = 1e-6;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum NumericsError {
    #[error("argument {0} is within the pole guard of a nonpositive integer")]
    PoleProximity(Complex64),
}

/// If `z` lies within `tol` of a nonpositive integer `-n`, returns `n`.
pub fn nonpositive_integer_near(z: Complex64, tol: f64) -> Option<u64> {
    let r = z.re.round();
    if r <= 0.0 && (z - Complex64::new(r, 0.0)).norm() < tol {
        Some((-r) as u64)
    } else {
        None
    }
}

/// Distance from `x` to the nearest integer.
pub fn distance_to_integer(x: f64) -> f64 {
    (x - x.round()).abs()
}

fn lanczos_ln_gamma(z: Complex64) -> Complex64 {
    debug_assert!(z.re >= 0.5);
    let z1 = z - 1.0;
    let mut series = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (z1 + i as f64);
    }
    let t = z1 + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z1 + 0.5) * t.ln() - t + series.ln()
}

/// Principal branch of `ln Γ(z)`.
///
/// Fails with [`NumericsError::PoleProximity`] within [`POLE_GUARD`] of
/// `{0, -1, -2, ...}`.
pub fn lngamma(z: Complex64) -> Result<Complex64, NumericsError> {
    if nonpositive_integer_near(z, POLE_GUARD).is_some() {
        return Err(NumericsError::PoleProximity(z));
    }
    if z.re >= 0.5 {
        return Ok(lanczos_ln_gamma(z));
    }
    if z.im == 0.0 {
        // ln Γ(z) = ln π - ln sin(πz) - ln Γ(1 - z)
        let s = sinpi(z);
        return Ok(LN_PI - s.ln() - lanczos_ln_gamma(1.0 - z));
    }
    // Shift into the Lanczos region; every z + k sits in the same open
    // half-plane so the principal logs add up to the continuous branch.
    let shift = (0.5 - z.re).ceil() as usize;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..shift {
        acc += (z + k as f64).ln();
    }
    Ok(lanczos_ln_gamma(z + shift as f64) - acc)
}

/// Γ(z), failing near poles.
pub fn gamma(z: Complex64) -> Result<Complex64, NumericsError> {
    if z.re >= 0.5 {
        return Ok(lanczos_ln_gamma(z).exp());
    }
    if nonpositive_integer_near(z, POLE_GUARD).is_some() {
        return Err(NumericsError::PoleProximity(z));
    }
    Ok(PI / (sinpi(z) * lanczos_ln_gamma(1.0 - z).exp()))
}

/// 1/Γ(z). Entire; exactly zero at `0, -1, -2, ...`.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    if z.re >= 0.5 {
        (-lanczos_ln_gamma(z)).exp()
    } else {
        sinpi(z) * lanczos_ln_gamma(1.0 - z).exp() / PI
    }
}

/// sin(πx) for real x with exact zeros at integers.
pub fn sinpi_real(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round(); // r in [-1, 1]
    let (sign, r) = if r < 0.0 { (-1.0, -r) } else { (1.0, r) };
    let v = if r <= 0.25 {
        (PI * r).sin()
    } else if r <= 0.75 {
        (PI * (r - 0.5)).cos()
    } else {
        (PI * (1.0 - r)).sin()
    };
    sign * v
}

/// cos(πx) for real x with exact zeros at half-integers.
pub fn cospi_real(x: f64) -> f64 {
    let r = (x - 2.0 * (x / 2.0).round()).abs(); // r in [0, 1]
    if r <= 0.25 {
        (PI * r).cos()
    } else if r <= 0.75 {
        -(PI * (r - 0.5)).sin()
    } else {
        -(PI * (1.0 - r)).cos()
    }
}

/// sin(πz), reducing `Re z` before scaling by π.
pub fn sinpi(z: Complex64) -> Complex64 {
    let y = PI * z.im;
    Complex64::new(sinpi_real(z.re) * y.cosh(), cospi_real(z.re) * y.sinh())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
    }

    /// Points in [-5,5]^2 at least 0.05 from every pole.
    fn box_samples(n: usize, seed: u64) -> Vec<Complex64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let z = c(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let near_pole = (-6..=0).any(|k| (z - c(k as f64, 0.0)).norm() < 0.05);
            if !near_pole {
                out.push(z);
            }
        }
        out
    }

    #[test]
    fn lngamma_trivial_values() {
        assert!(lngamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        let half = lngamma(c(0.5, 0.0)).unwrap();
        assert!((half.re - 0.572_364_942_924_700_1).abs() < 1e-14);
        assert_eq!(half.im, 0.0);
    }

    #[test]
    fn lngamma_rejects_poles() {
        assert!(matches!(lngamma(c(0.0, 0.0)), Err(NumericsError::PoleProximity(_))));
        assert!(lngamma(c(-3.0 + 5e-7, 0.0)).is_err());
        assert!(lngamma(c(-3.0 + 5e-6, 0.0)).is_ok());
    }

    #[test]
    fn recip_gamma_zeros_and_values() {
        for k in 0..8 {
            assert_eq!(recip_gamma(c(-(k as f64), 0.0)), c(0.0, 0.0));
        }
        assert!((recip_gamma(c(1.0, 0.0)) - 1.0).norm() < 1e-15);
        let inv_sqrt_pi = 1.0 / PI.sqrt();
        assert!((recip_gamma(c(0.5, 0.0)) - inv_sqrt_pi).norm() < 1e-15);
    }

    #[test]
    fn sinpi_exact_points() {
        assert_eq!(sinpi(c(0.5, 0.0)), c(1.0, 0.0));
        assert_eq!(sinpi(c(7.0, 0.0)).re, 0.0);
        assert_eq!(sinpi(c(-12.0, 0.0)).re, 0.0);
        assert_eq!(cospi_real(2.5), 0.0);
        assert_eq!(sinpi_real(1e17 + 1.0), 0.0);
    }

    #[test]
    fn reflection_identity() {
        for z in box_samples(1000, 11) {
            let lhs = recip_gamma(z) * recip_gamma(1.0 - z);
            let rhs = sinpi(z) / PI;
            assert!(rel(lhs, rhs) < 1e-12, "z = {z}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn recurrence_identity() {
        for z in box_samples(1000, 12) {
            let lhs = lngamma(z + 1.0).unwrap().exp();
            let rhs = z * lngamma(z).unwrap().exp();
            assert!(rel(lhs, rhs) < 1e-12, "z = {z}");
        }
    }

    #[test]
    fn sinpi_periodicity() {
        for z in box_samples(1000, 13) {
            assert!(rel(sinpi(z + 2.0), sinpi(z)) < 1e-13, "z = {z}");
        }
    }

    #[test]
    fn gamma_matches_lngamma() {
        for z in box_samples(200, 14) {
            let g = gamma(z).unwrap();
            assert!(rel(g, lngamma(z).unwrap().exp()) < 1e-12);
            assert!(rel(g * recip_gamma(z), c(1.0, 0.0)) < 1e-12);
        }
    }

    #[test]
    fn lngamma_branch_is_continuous() {
        // Walk a path crossing into the left half-plane; the imaginary part
        // must not jump by 2π.
        let mut prev = lngamma(c(3.0, 0.8)).unwrap();
        for i in 1..=800 {
            let z = c(3.0 - i as f64 * 0.01, 0.8);
            let cur = lngamma(z).unwrap();
            assert!((cur.im - prev.im).abs() < 0.1, "jump at {z}");
            prev = cur;
        }
    }
}
