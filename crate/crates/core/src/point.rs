//! Points of the hyperplane `V: e + f + g - a - b - c - d = 1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance for membership in V.
pub const BALANCE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("point is off the hyperplane: e+f+g-a-b-c-d-1 = {0}")]
pub struct NotOnV(pub Complex64);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointV([Complex64; 7]);

impl PointV {
    pub fn new(coords: [Complex64; 7]) -> Result<Self, NotOnV> {
        let p = PointV(coords);
        let excess = p.excess();
        if excess.norm() < BALANCE_TOL {
            Ok(p)
        } else {
            Err(NotOnV(excess))
        }
    }

    /// Completes `(a..f)` with `g = 1 + a + b + c + d - e - f`.
    pub fn balanced(abcdef: [Complex64; 6]) -> Self {
        let [a, b, c, d, e, f] = abcdef;
        PointV([a, b, c, d, e, f, 1.0 + a + b + c + d - e - f])
    }

    pub fn excess(&self) -> Complex64 {
        let [a, b, c, d, e, f, g] = self.0;
        e + f + g - a - b - c - d - 1.0
    }

    pub fn coords(&self) -> [Complex64; 7] {
        self.0
    }

    pub fn a(&self) -> Complex64 {
        self.0[0]
    }
    pub fn b(&self) -> Complex64 {
        self.0[1]
    }
    pub fn c(&self) -> Complex64 {
        self.0[2]
    }
    pub fn d(&self) -> Complex64 {
        self.0[3]
    }
    pub fn e(&self) -> Complex64 {
        self.0[4]
    }
    pub fn f(&self) -> Complex64 {
        self.0[5]
    }
    pub fn g(&self) -> Complex64 {
        self.0[6]
    }

    /// Image under an integer matrix acting on column vectors.
    pub fn transform(&self, m: &[[i32; 7]; 7]) -> PointV {
        let mut out = [Complex64::new(0.0, 0.0); 7];
        for (o, row) in out.iter_mut().zip(m) {
            *o = row.iter().zip(&self.0).map(|(&c, v)| v * c as f64).sum();
        }
        PointV(out)
    }
}

/// Symmetric coordinates `x0..x5` on V.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwiddleParams(pub [Complex64; 6]);

impl TwiddleParams {
    /// The induced `(A, B, C, D, E, F, G)`; lies on V identically.
    pub fn to_point(&self) -> PointV {
        let [x0, x1, x2, x3, x4, x5] = self.0;
        let base = 0.5 + x0 + x1 + x2;
        PointV([
            base + x3 + x4 + x5,
            base - x3 - x4 + x5,
            base + x3 - x4 - x5,
            base - x3 + x4 - x5,
            1.0 + 2.0 * (x1 + x2),
            1.0 + 2.0 * (x0 + x1),
            1.0 + 2.0 * (x0 + x2),
        ])
    }
}
