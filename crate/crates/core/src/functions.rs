//! The functions `K` and `L` on V, their symmetric reparameterizations,
//! and the coset-indexed family `J_σ`.

use crate::forms::{lf, LinearForm};
use crate::group::{structure, CosetId, Side};
use crate::numerics::{distance_to_integer, gamma, recip_gamma, sinpi, NumericsError, POLE_GUARD};
use crate::point::{PointV, TwiddleParams};
use crate::series::{eval_4f3_star, eval_7f6_vwp, SeriesError, SeriesOptions};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum FunctionError {
    #[error("prefactor sin(π{0}) vanishes")]
    PrefactorPole(Complex64),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

fn check_sin(z: Complex64) -> Result<Complex64, FunctionError> {
    if z.im.abs() < POLE_GUARD && distance_to_integer(z.re) < POLE_GUARD {
        return Err(FunctionError::PrefactorPole(z));
    }
    Ok(sinpi(z))
}

fn rgamma_product(args: &[Complex64]) -> Complex64 {
    args.iter().map(|&z| recip_gamma(z)).product()
}

/// `K(x)`: the two series complementary in `a`, over
/// `sin(πa) Γ(a)² Γ(b)Γ(c)Γ(d) Γ(1+a-e)Γ(1+a-f)Γ(1+a-g)`.
pub fn eval_k_with(x: &PointV, opts: &SeriesOptions) -> Result<Complex64, FunctionError> {
    let [a, b, c, d, e, f, g] = x.coords();
    let sin = check_sin(a)?;
    let s1 = eval_4f3_star([a, b, c, d], [e, f, g], opts)?;
    let s2 = eval_4f3_star([a, 1.0 + a - e, 1.0 + a - f, 1.0 + a - g], [1.0 + a - b, 1.0 + a - c, 1.0 + a - d], opts)?;
    let pre = rgamma_product(&[a, a, b, c, d, 1.0 + a - e, 1.0 + a - f, 1.0 + a - g]) / sin;
    Ok((s1.value + s2.value) * pre)
}

/// `L(x)`: the two series supplementary in `e`, over
/// `sin(πe) Γ(a)Γ(b)Γ(c)Γ(d) Γ(1+a-e)Γ(1+b-e)Γ(1+c-e)Γ(1+d-e)`.
pub fn eval_l_with(x: &PointV, opts: &SeriesOptions) -> Result<Complex64, FunctionError> {
    let [a, b, c, d, e, f, g] = x.coords();
    let sin = check_sin(e)?;
    let s1 = eval_4f3_star([a, b, c, d], [e, f, g], opts)?;
    let shifted = [1.0 + a - e, 1.0 + b - e, 1.0 + c - e, 1.0 + d - e];
    let s2 = eval_4f3_star(shifted, [2.0 - e, 1.0 + f - e, 1.0 + g - e], opts)?;
    let pre = rgamma_product(&[a, b, c, d]) * rgamma_product(&shifted) / sin;
    Ok((s1.value - s2.value) * pre)
}

/// Every gamma or sine argument that `K(x)` evaluates.
pub fn k_series_arguments() -> &'static [LinearForm] {
    static CELL: OnceLock<Vec<LinearForm>> = OnceLock::new();
    CELL.get_or_init(|| {
        ["a", "b", "c", "d", "e", "f", "g", "1+a-e", "1+a-f", "1+a-g", "1+a-b", "1+a-c", "1+a-d"].map(lf).to_vec()
    })
}

/// Every gamma or sine argument that `L(x)` evaluates.
pub fn l_series_arguments() -> &'static [LinearForm] {
    static CELL: OnceLock<Vec<LinearForm>> = OnceLock::new();
    CELL.get_or_init(|| {
        ["a", "b", "c", "d", "e", "f", "g", "1+a-e", "1+b-e", "1+c-e", "1+d-e", "2-e", "1+f-e", "1+g-e"]
            .map(lf)
            .to_vec()
    })
}

pub fn eval_k(x: &PointV) -> Result<Complex64, FunctionError> {
    eval_k_with(x, &SeriesOptions::default())
}

pub fn eval_l(x: &PointV) -> Result<Complex64, FunctionError> {
    eval_l_with(x, &SeriesOptions::default())
}

/// Parameters `(A, B, C, D, E, F)` of the very-well-poised form of `L(x)`.
pub fn vwp_parameters(x: &PointV) -> [Complex64; 6] {
    let [a, b, c, d, e, _, g] = x.coords();
    [d + g - e, g - a, g - b, g - c, d, 1.0 + d - e]
}

/// `L(x)` through its very-well-poised `7F6(1)` representation; converges
/// for `Re(f - d) > 0`.
pub fn eval_l_via_7f6(x: &PointV, opts: &SeriesOptions) -> Result<Complex64, FunctionError> {
    let params = vwp_parameters(x);
    let [a, b, c, d, e, f] = params;
    let series = eval_7f6_vwp(params, opts)?;
    let excess = 2.0 + 2.0 * a - b - c - d - e - f;
    let pre = gamma(1.0 + a)? * rgamma_product(&[1.0 + a - b, 1.0 + a - c, 1.0 + a - d, 1.0 + a - e, 1.0 + a - f, excess])
        / PI;
    Ok(pre * series.value)
}

pub fn eval_k_tilde(t: &TwiddleParams) -> Result<Complex64, FunctionError> {
    eval_k(&t.to_point())
}

pub fn eval_l_tilde(t: &TwiddleParams) -> Result<Complex64, FunctionError> {
    eval_l(&t.to_point())
}

/// `J_σ(x)`: `K` or `L` at `ρx` for the canonical representative `ρ ∈ σ`.
pub fn eval_j_with(id: CosetId, x: &PointV, opts: &SeriesOptions) -> Result<Complex64, FunctionError> {
    let y = structure().rep(id).apply(x);
    match id.side() {
        Side::K => eval_k_with(&y, opts),
        Side::L => eval_l_with(&y, opts),
    }
}

pub fn eval_j(id: CosetId, x: &PointV) -> Result<Complex64, FunctionError> {
    eval_j_with(id, x, &SeriesOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefactor_pole() {
        let x = PointV::balanced([-1.0, 0.3, 0.4, 0.5, 0.7, 0.9].map(|v| Complex64::new(v, 0.0)));
        assert!(matches!(eval_k(&x), Err(FunctionError::PrefactorPole(_))));
        let y = PointV::balanced([0.2, 0.3, 0.4, 0.5, 2.0, 0.9].map(|v| Complex64::new(v, 0.0)));
        assert!(matches!(eval_l(&y), Err(FunctionError::PrefactorPole(_))));
    }
}
