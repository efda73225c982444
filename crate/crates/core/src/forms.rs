//! Affine forms in the parameters `a..g`, stored as exact integer rows.
//!
//! On the hyperplane `e + f + g - a - b - c - d = 1` every constant can be
//! traded for that combination, so an affine form such as `1+a-e` is kept
//! as the purely linear row `(0,-1,-1,-1,0,1,1)`. Composition with a group
//! element is then a row-times-matrix product.

use crate::point::PointV;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// The row representing the constant 1 on V.
pub const ONE: [i32; 7] = [-1, -1, -1, -1, 1, 1, 1];

const NAMES: [char; 7] = ['a', 'b', 'c', 'd', 'e', 'f', 'g'];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormParseError {
    #[error("empty form")]
    Empty,
    #[error("unexpected character {0:?} in {1:?}")]
    Unexpected(char, String),
    #[error("coefficient overflow in {0:?}")]
    Overflow(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinearForm(pub [i32; 7]);

impl LinearForm {
    pub fn new(row: [i32; 7]) -> Self {
        LinearForm(row)
    }

    /// Affine form `constant + Σ coeffs[i] x_i`, with the constant folded in.
    pub fn affine(constant: i32, coeffs: [i32; 7]) -> Self {
        let mut row = coeffs;
        for (r, one) in row.iter_mut().zip(ONE) {
            *r += constant * one;
        }
        LinearForm(row)
    }

    pub fn eval(&self, x: &PointV) -> Complex64 {
        self.0.iter().zip(x.coords()).map(|(&c, v)| v * c as f64).sum()
    }

    /// `x ↦ self(ρx)`.
    pub fn compose(&self, rho: &[[i32; 7]; 7]) -> Self {
        let mut out = [0i32; 7];
        for (i, &c) in self.0.iter().enumerate() {
            for (o, &m) in out.iter_mut().zip(&rho[i]) {
                *o += c * m;
            }
        }
        LinearForm(out)
    }

    /// Forms that equal a constant everywhere on V (multiples of [`ONE`]).
    pub fn constant_on_v(&self) -> Option<i32> {
        let k = self.0[4];
        (self.0 == ONE.map(|v| v * k)).then_some(k)
    }

    /// Writes the form back as `constant + Σ c_i x_i` with the smallest
    /// number of nonzero coefficients over all constant choices.
    fn display_parts(&self) -> (i32, [i32; 7]) {
        (-3..=3)
            .map(|k| {
                let mut row = self.0;
                for (r, one) in row.iter_mut().zip(ONE) {
                    *r -= k * one;
                }
                (k, row)
            })
            .min_by_key(|(k, row)| (row.iter().filter(|&&c| c != 0).count(), k.abs()))
            .expect("nonempty range")
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k, row) = self.display_parts();
        // Positive terms first so that `b-a` reads as written in the tables.
        let mut terms: Vec<(i32, Option<char>)> = vec![(k, None)];
        terms.extend(row.iter().copied().zip(NAMES.map(Some)));
        terms.retain(|&(c, _)| c != 0);
        terms.sort_by_key(|&(c, name)| (c < 0, name.is_none() == (c < 0)));
        let mut out = String::new();
        for (c, name) in terms {
            let sign = if c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
            match (c.abs(), name) {
                (m, None) => out.push_str(&format!("{sign}{m}")),
                (1, Some(name)) => out.push_str(&format!("{sign}{name}")),
                (m, Some(name)) => out.push_str(&format!("{sign}{m}{name}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl FromStr for LinearForm {
    type Err = FormParseError;

    /// Parses sums like `1+a-e`, `e-2a`, `1+a+b-g`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(FormParseError::Empty);
        }
        let mut constant = 0i32;
        let mut coeffs = [0i32; 7];
        let mut chars = src.chars().peekable();
        while chars.peek().is_some() {
            let sign = match chars.peek() {
                Some('+') => {
                    chars.next();
                    1
                }
                Some('-') => {
                    chars.next();
                    -1
                }
                _ => 1,
            };
            let mut digits = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_digit()) {
                digits.push(c);
                chars.next();
            }
            let magnitude: Option<i32> = if digits.is_empty() { None } else { digits.parse().ok() };
            if !digits.is_empty() && magnitude.is_none() {
                return Err(FormParseError::Overflow(src.clone()));
            }
            match chars.peek().copied() {
                Some(v) if NAMES.contains(&v) => {
                    chars.next();
                    let idx = NAMES.iter().position(|&n| n == v).expect("checked");
                    coeffs[idx] += sign * magnitude.unwrap_or(1);
                }
                Some(c) if c != '+' && c != '-' => {
                    return Err(FormParseError::Unexpected(c, src.clone()));
                }
                _ => match magnitude {
                    Some(m) => constant += sign * m,
                    None => {
                        let c = chars.peek().copied().unwrap_or('\0');
                        return Err(FormParseError::Unexpected(c, src.clone()));
                    }
                },
            }
        }
        Ok(LinearForm::affine(constant, coeffs))
    }
}

/// Parses a form known at compile time; panics on malformed input.
pub fn lf(s: &str) -> LinearForm {
    s.parse().unwrap_or_else(|e| panic!("bad form {s:?}: {e}"))
}
