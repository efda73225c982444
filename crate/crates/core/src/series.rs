//! Unit-argument hypergeometric sums with analytic tail correction.
//!
//! A balanced `4F3(1)` has terms decaying only like `k^-2`, so plain
//! summation needs ~10^8 terms for eight digits. Here the first `N` terms
//! are summed directly (compensated), the term sequence is fitted to
//! `t_k = k^-p (c0 + c1/k + c2/k^2 + c3/k^3)` at `k = N/8, N/4, N/2, N-1`,
//! and the remainder is added as `Σ_j c_j ζ(p + j, N)` with Hurwitz zeta.
//! The same engine serves the very-well-poised `7F6(1)`, whose exponent
//! `p` is complex.

use crate::numerics::{lngamma, nonpositive_integer_near, NumericsError, POLE_GUARD};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Numerator parameters this close to `0, -1, ...` truncate the series.
pub const TERMINATION_TOL: f64 = 1e-10;
/// Allowed deviation from `Σden - Σnum = 1`.
pub const BALANCE_TOL: f64 = 1e-10;

const MIN_TERMS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesOptions {
    /// Terms summed directly before the tail model takes over.
    pub max_terms: usize,
    /// Maximum accepted `tail_bound / Σ|t_k|`.
    pub rel_target: f64,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions { max_terms: 100_000, rel_target: 1e-9 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesResult {
    pub value: Complex64,
    /// Absolute error estimate: tail-model spread plus rounding.
    pub tail_bound: f64,
    pub terms_used: usize,
    pub terminated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SeriesError {
    #[error("parameters are not balanced: Σden - Σnum - 1 = {0}")]
    NotSaalschutzian(Complex64),
    #[error("denominator parameter {0} sits on a pole")]
    DenominatorPole(Complex64),
    #[error("tail bound {tail_bound:e} misses target (scale {scale:e})")]
    NoConvergence { tail_bound: f64, scale: f64 },
    #[error("series diverges: Re(2 + 2A - B - C - D - E - F) = {0} <= 0")]
    ConvergenceConditionViolated(f64),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Regularized Saalschützian series
/// `Σ_k Γ(k+a)Γ(k+b)Γ(k+c)Γ(k+d) / (k! Γ(k+e)Γ(k+f)Γ(k+g))`.
///
/// When a numerator parameter sits on `-n` the series stops after `n + 1`
/// terms. Its own Γ factor is infinite there and is left out, so the value
/// is the finite polynomial part times the remaining Γ ratio.
pub fn eval_4f3_star(
    num: [Complex64; 4],
    den: [Complex64; 3],
    opts: &SeriesOptions,
) -> Result<SeriesResult, SeriesError> {
    let excess = den.iter().sum::<Complex64>() - num.iter().sum::<Complex64>() - 1.0;
    if excess.norm() >= BALANCE_TOL {
        return Err(SeriesError::NotSaalschutzian(excess));
    }
    let termination = termination_point(&num);
    check_denominators(&den, termination)?;

    let mut log_first = Complex64::new(0.0, 0.0);
    for (i, &a) in num.iter().enumerate() {
        if termination.map(|(idx, _)| idx) != Some(i) {
            log_first += lngamma(a)?;
        }
    }
    for &b in &den {
        log_first -= lngamma(b)?;
    }
    let first = log_first.exp();
    // exponent p = 1 + Σden - Σnum, i.e. 2 up to the balance tolerance
    let exponent = 2.0 + excess;
    sum_series(first, &num, &den, exponent, termination.map(|(_, n)| n), opts)
}

/// Very-well-poised
/// `7F6[A, 1+A/2, B, C, D, E, F; A/2, 1+A-B, ..., 1+A-F; 1]`, unregularized.
pub fn eval_7f6_vwp(params: [Complex64; 6], opts: &SeriesOptions) -> Result<SeriesResult, SeriesError> {
    let [a, b, c, d, e, f] = params;
    let one = Complex64::new(1.0, 0.0);
    let lower = [b, c, d, e, f];
    let den = lower.map(|p| 1.0 + a - p);
    check_denominators(&den, termination_point(&lower))?;
    let excess = 2.0 + 2.0 * a - b - c - d - e - f;
    if termination_point(&lower).is_none() && excess.re <= 0.0 {
        return Err(SeriesError::ConvergenceConditionViolated(excess.re));
    }
    if lower.iter().any(|&p| nonpositive_integer_near(p, TERMINATION_TOL) == Some(0)) {
        return Ok(SeriesResult { value: one, tail_bound: 0.0, terms_used: 1, terminated: true });
    }
    // (a)_k (1+a/2)_k / (a/2)_k = (a+2k) (a+1)_{k-1} for k >= 1, which removes
    // the a/2 pole; sum u_k = t_{k+1} and add the leading 1.
    let mut num = vec![a + 1.0, a / 2.0 + 2.0, one];
    num.extend(lower.map(|p| p + 1.0));
    let mut shifted_den = vec![a / 2.0 + 1.0, 2.0 * one];
    shifted_den.extend(den.map(|q| q + 1.0));
    let termination = termination_point(&num);
    check_denominators(&shifted_den, termination)?;
    let first = (a + 2.0) * lower.iter().product::<Complex64>() / den.iter().product::<Complex64>();
    let tail = sum_series(first, &num, &shifted_den, 1.0 + 2.0 * excess, termination.map(|(_, n)| n), opts)?;
    Ok(SeriesResult { value: tail.value + 1.0, terms_used: tail.terms_used + 1, ..tail })
}

/// First numerator parameter sitting on a nonpositive integer, with the
/// index of its last nonzero term.
fn termination_point(num: &[Complex64]) -> Option<(usize, u64)> {
    num.iter()
        .enumerate()
        .filter_map(|(i, &a)| nonpositive_integer_near(a, TERMINATION_TOL).map(|n| (i, n)))
        .min_by_key(|&(_, n)| n)
}

fn check_denominators(den: &[Complex64], termination: Option<(usize, u64)>) -> Result<(), SeriesError> {
    for &b in den {
        if let Some(m) = nonpositive_integer_near(b, POLE_GUARD) {
            // the ratio divides by (k + b) at k = m; harmless only if the
            // series has already stopped
            let reached = termination.map_or(true, |(_, n)| m < n);
            if reached {
                return Err(SeriesError::DenominatorPole(b));
            }
        }
    }
    Ok(())
}

#[inline]
fn ratio(k: f64, num: &[Complex64], den: &[Complex64]) -> Complex64 {
    let mut top = Complex64::new(1.0, 0.0);
    for &a in num {
        top *= k + a;
    }
    let mut bottom = Complex64::new(k + 1.0, 0.0);
    for &b in den {
        bottom *= k + b;
    }
    top / bottom
}

/// Neumaier-compensated complex accumulator.
#[derive(Default)]
struct CompensatedSum {
    re: f64,
    im: f64,
    re_c: f64,
    im_c: f64,
}

impl CompensatedSum {
    fn add(&mut self, z: Complex64) {
        fn step(sum: &mut f64, comp: &mut f64, x: f64) {
            let t = *sum + x;
            if sum.abs() >= x.abs() {
                *comp += (*sum - t) + x;
            } else {
                *comp += (x - t) + *sum;
            }
            *sum = t;
        }
        step(&mut self.re, &mut self.re_c, z.re);
        step(&mut self.im, &mut self.im_c, z.im);
    }

    fn value(&self) -> Complex64 {
        Complex64::new(self.re + self.re_c, self.im + self.im_c)
    }
}

fn sum_series(
    first: Complex64,
    num: &[Complex64],
    den: &[Complex64],
    exponent: Complex64,
    terminate_after: Option<u64>,
    opts: &SeriesOptions,
) -> Result<SeriesResult, SeriesError> {
    if let Some(n) = terminate_after {
        let mut sum = CompensatedSum::default();
        let mut t = first;
        for k in 0..=n {
            sum.add(t);
            if k < n {
                t *= ratio(k as f64, num, den);
            }
        }
        return Ok(SeriesResult {
            value: sum.value(),
            tail_bound: 0.0,
            terms_used: n as usize + 1,
            terminated: true,
        });
    }

    let n_terms = opts.max_terms.max(MIN_TERMS);
    let sample_at = [n_terms / 8, n_terms / 4, n_terms / 2, n_terms - 1];
    let mut samples = [Complex64::new(0.0, 0.0); 4];
    let mut next_sample = 0;

    let mut sum = CompensatedSum::default();
    let mut abs_sum = 0.0;
    let mut weighted_abs = 0.0;
    let mut t = first;
    for k in 0..n_terms {
        sum.add(t);
        let mag = t.norm();
        abs_sum += mag;
        weighted_abs += mag * (k as f64 + 1.0);
        if next_sample < 4 && k == sample_at[next_sample] {
            samples[next_sample] = t;
            next_sample += 1;
        }
        t *= ratio(k as f64, num, den);
    }

    let ks: Vec<f64> = sample_at.iter().map(|&k| k as f64).collect();
    let tail4 = fitted_tail(&ks, &samples, exponent, n_terms as f64);
    let tail3 = fitted_tail(&ks[1..], &samples[1..], exponent, n_terms as f64);
    let rounding = 16.0 * f64::EPSILON * weighted_abs;
    let tail_bound = (tail4 - tail3).norm() + rounding;
    let value = sum.value() + tail4;

    let scale = abs_sum + tail4.norm();
    if !value.is_finite() || !tail_bound.is_finite() || tail_bound > opts.rel_target * scale {
        return Err(SeriesError::NoConvergence { tail_bound, scale });
    }
    Ok(SeriesResult { value, tail_bound, terms_used: n_terms, terminated: false })
}

/// Fits `t_k k^p = Σ_j c_j k^-j` through the samples and returns the tail
/// `Σ_{k >= start} t_k`.
fn fitted_tail(ks: &[f64], ts: &[Complex64], exponent: Complex64, start: f64) -> Complex64 {
    let n = ks.len();
    let mut m = vec![vec![Complex64::new(0.0, 0.0); n + 1]; n];
    for (row, (&k, &t)) in m.iter_mut().zip(ks.iter().zip(ts)) {
        let u = 1.0 / k;
        let mut p = 1.0;
        for entry in row.iter_mut().take(n) {
            *entry = Complex64::new(p, 0.0);
            p *= u;
        }
        row[n] = t * (exponent * k.ln()).exp();
    }
    let coeffs = solve(m);
    coeffs
        .iter()
        .enumerate()
        .map(|(j, &c)| c * hurwitz_zeta(exponent + j as f64, start))
        .sum()
}

/// Gaussian elimination with partial pivoting on an augmented matrix.
fn solve(mut m: Vec<Vec<Complex64>>) -> Vec<Complex64> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].norm().total_cmp(&m[j][col].norm()))
            .unwrap_or(col);
        m.swap(col, pivot);
        for row in col + 1..n {
            let factor = m[row][col] / m[col][col];
            for k in col..=n {
                let v = m[col][k];
                m[row][k] -= factor * v;
            }
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut acc = m[row][n];
        for k in row + 1..n {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    x
}

// B_2j / (2j)! for j = 1..8
const BERNOULLI_OVER_FACTORIAL: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
];

/// Hurwitz zeta `Σ_{k>=0} (k + q)^-s` for `Re s > 1`, `q > 0`, by
/// Euler–Maclaurin after shifting `q` past 16.
pub fn hurwitz_zeta(s: Complex64, q: f64) -> Complex64 {
    let mut q = q;
    let mut acc = Complex64::new(0.0, 0.0);
    while q < 16.0 {
        acc += (-s * q.ln()).exp();
        q += 1.0;
    }
    let ln_q = q.ln();
    let q_pow = (-s * ln_q).exp(); // q^-s
    acc += q_pow * q / (s - 1.0) + q_pow * 0.5;
    // (s)_{2j-1} q^{-s-2j+1}
    let mut rising = s * q_pow / q;
    let q2 = q * q;
    for (j, &coef) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        acc += coef * rising;
        let m = 2.0 * (j as f64 + 1.0);
        rising *= (s + (m - 1.0)) * (s + m) / q2;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::gamma;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn r(x: f64) -> Complex64 {
        c(x, 0.0)
    }

    #[test]
    fn hurwitz_matches_riemann_zeta() {
        // ζ(2) = π²/6, ζ(3) = Apéry
        let z2 = hurwitz_zeta(r(2.0), 1.0);
        assert!((z2.re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-14);
        let z3 = hurwitz_zeta(r(3.0), 1.0);
        assert!((z3.re - 1.202_056_903_159_594_2).abs() < 1e-14);
    }

    #[test]
    fn hurwitz_shift_identity() {
        let s = c(1.7, 0.4);
        let lhs = hurwitz_zeta(s, 2.5) - hurwitz_zeta(s, 3.5);
        let rhs = (-s * 2.5f64.ln()).exp();
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn terminating_star_two_terms() {
        let (b, cc, d, e, f) = (0.3, 0.4, 0.5, 0.7, 0.9);
        let g = 1.0 + (-1.0 + b + cc + d) - e - f;
        let res = eval_4f3_star(
            [r(-1.0), r(b), r(cc), r(d)],
            [r(e), r(f), r(g)],
            &SeriesOptions::default(),
        )
        .unwrap();
        let gammas = gamma(r(b)).unwrap() * gamma(r(cc)).unwrap() * gamma(r(d)).unwrap()
            / (gamma(r(e)).unwrap() * gamma(r(f)).unwrap() * gamma(r(g)).unwrap());
        let expected = gammas * (1.0 - b * cc * d / (e * f * g));
        assert!(res.terminated);
        assert_eq!(res.terms_used, 2);
        assert_eq!(res.tail_bound, 0.0);
        assert!((res.value - expected).norm() < 1e-14 * expected.norm());
    }

    #[test]
    fn rejects_unbalanced() {
        let err = eval_4f3_star(
            [r(0.21), r(0.33), r(0.47), r(0.59)],
            [r(1.13), r(1.27), r(1.20)],
            &SeriesOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, SeriesError::NotSaalschutzian(_)));
    }

    #[test]
    fn rejects_denominator_pole() {
        let num = [r(0.3), r(0.4), r(0.5), r(0.6)];
        let den = [r(-1.0), r(2.4), r(1.4)];
        assert!(matches!(
            eval_4f3_star(num, den, &SeriesOptions::default()),
            Err(SeriesError::DenominatorPole(_))
        ));
    }

    #[test]
    fn vwp_trivial_cases() {
        let opts = SeriesOptions::default();
        let one = eval_7f6_vwp([c(0.37, 0.1), r(0.0), r(0.0), r(0.0), r(0.0), r(0.0)], &opts).unwrap();
        assert_eq!(one.terms_used, 1);
        assert!((one.value - 1.0).norm() < 1e-15);

        let (a, b, cc, d, e, f) = (c(1.3, 0.2), r(-1.0), r(0.3), r(0.4), r(0.2), r(0.1));
        let two = eval_7f6_vwp([a, b, cc, d, e, f], &opts).unwrap();
        let num = [a, 1.0 + a / 2.0, b, cc, d, e, f];
        let den = [a / 2.0, 1.0 + a - b, 1.0 + a - cc, 1.0 + a - d, 1.0 + a - e, 1.0 + a - f];
        let t1 = num.iter().product::<Complex64>() / den.iter().product::<Complex64>();
        assert_eq!(two.terms_used, 2);
        assert!((two.value - (1.0 + t1)).norm() < 1e-14);
    }

    #[test]
    fn vwp_removable_at_zero() {
        // the (a)_k / (a/2)_k pair has a finite limit as a -> 0
        let opts = SeriesOptions::default();
        let rest = [r(0.24), r(0.13), r(0.28), r(0.25), r(0.45)];
        let at = |a: Complex64| eval_7f6_vwp([a, rest[0], rest[1], rest[2], rest[3], rest[4]], &opts).unwrap();
        let zero = at(r(0.0));
        assert!(!zero.terminated);
        let near = (at(r(1e-7)).value + at(r(-1e-7)).value) / 2.0;
        assert!((zero.value - near).norm() < 1e-9);
    }

    #[test]
    fn vwp_divergent_is_rejected() {
        let p = [r(0.5), r(0.6), r(0.7), r(0.8), r(0.9), r(0.3)];
        assert!(matches!(
            eval_7f6_vwp(p, &SeriesOptions::default()),
            Err(SeriesError::ConvergenceConditionViolated(_))
        ));
    }

    #[test]
    fn term_decay_law() {
        // |t_k| k^2 settles for balanced input
        let num = [c(0.31, 0.12), c(0.42, -0.07), c(0.57, 0.21), c(0.23, -0.15)];
        let den = [c(0.66, 0.05), c(0.74, -0.18)];
        let g = 1.0 + num.iter().sum::<Complex64>() - den[0] - den[1];
        let den = [den[0], den[1], g];
        let mut t = c(1.0, 0.0);
        let mut at = [0.0; 2];
        for k in 0..20_000usize {
            if k == 10_000 {
                at[0] = t.norm() * (k as f64).powi(2);
            }
            t *= ratio(k as f64, &num, &den);
        }
        at[1] = t.norm() * 20_000f64.powi(2);
        assert!((at[0] - at[1]).abs() / at[1] < 0.05);
    }

    #[test]
    fn tail_model_beats_truncation() {
        // Same series at two budgets must agree far better than the raw
        // truncation error (~1/N).
        let num = [r(0.21), r(0.33), r(0.47), r(0.59)];
        let den = [r(1.13), r(1.27), r(0.2)];
        let small = eval_4f3_star(num, den, &SeriesOptions { max_terms: 2_000, rel_target: 1e-6 }).unwrap();
        let large = eval_4f3_star(num, den, &SeriesOptions::default()).unwrap();
        assert!((small.value - large.value).norm() < 1e-10 * large.value.norm());
    }
}
