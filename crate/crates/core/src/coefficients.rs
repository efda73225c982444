//! Coefficient atoms `S`, `A`, `B1..B5`, `C` and their products.
//!
//! `S(u1, ..., un) = Π sin(π u_i)` and `A(u1, ..., u4) = Π 1/Γ(u_i)`. The
//! `B_k` and `C` atoms are fixed trigonometric polynomials evaluated at
//! `y = Mx` for an argument map `M`; every atom carries length (number of
//! gamma functions it stands for) and width (number of summands).

use crate::forms::{lf, LinearForm};
use crate::group::GroupElement;
use crate::numerics::{recip_gamma, sinpi};
use crate::point::PointV;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

/// Inside `|sin π(f-g)| < B3_GUARD`, `B3` is evaluated as a contour mean.
pub const B3_GUARD: f64 = 1e-4;
const B3_RADIUS: f64 = 0.05;
const B3_NODES: usize = 16;

type Coords = [Complex64; 7];

fn sprod(args: &[Complex64]) -> Complex64 {
    args.iter().map(|&z| sinpi(z)).product()
}

fn pi_pow(n: i32) -> f64 {
    PI.powi(n)
}

// Inner brackets shared by several atoms.
fn bracket_abcd_shift(y: &Coords) -> Complex64 {
    let [a, b, c, d, e, f, g] = *y;
    sprod(&[b - a, c - a, d - a]) + sprod(&[e - 2.0 * a, f - a, g - a])
}

fn bracket_bcd(y: &Coords) -> Complex64 {
    let [a, b, c, d, e, f, g] = *y;
    sprod(&[b, c, d]) + sprod(&[e - a, f, g])
}

fn b1(y: &Coords) -> Complex64 {
    let [a, b, c, d, e, f, g] = *y;
    pi_pow(-4) * sprod(&[b, c]) * (sprod(&[b - a, c - a, d]) + sprod(&[e - a, f - a, g - a]))
}

fn b2(y: &Coords) -> Complex64 {
    let [a, _, _, _, _, f, g] = *y;
    pi_pow(-4) * sprod(&[f - a, g - a]) * bracket_abcd_shift(y)
}

fn b3_direct(y: &Coords) -> Complex64 {
    let [a, b, c, d, e, f, g] = *y;
    let num = sprod(&[f, f - e, g - a, g - b, g - c, g - d]) - sprod(&[g, g - e, f - a, f - b, f - c, f - d]);
    num / (pi_pow(4) * sinpi(f - g))
}

/// The numerator of `B3` vanishes with `sin π(f-g)`, so `B3` is analytic
/// in `f`; near the removable points it is recovered as the mean over a
/// circle in `f` (trapezoid rule, geometrically convergent).
fn b3(y: &Coords) -> Complex64 {
    if sinpi(y[5] - y[6]).norm() >= B3_GUARD {
        return b3_direct(y);
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..B3_NODES {
        let theta = 2.0 * PI * k as f64 / B3_NODES as f64;
        let mut shifted = *y;
        shifted[5] += Complex64::from_polar(B3_RADIUS, theta);
        acc += b3_direct(&shifted);
    }
    acc / B3_NODES as f64
}

fn b4(y: &Coords) -> Complex64 {
    let [a, _, _, _, _, f, g] = *y;
    pi_pow(-4) * sprod(&[f - a, g - a]) * bracket_bcd(y)
}

fn b5(y: &Coords) -> Complex64 {
    let [_, b, _, _, e, _, _] = *y;
    pi_pow(-4) * sprod(&[b, e - b]) * bracket_abcd_shift(y)
}

/// `C = π^-4 S(e-a) [S(b,c,d) B2 + S(e,f-a,g-a) B4]`.
fn c_compact(y: &Coords) -> Complex64 {
    let [a, b, c, d, e, f, g] = *y;
    pi_pow(-4) * sinpi(e - a) * (sprod(&[b, c, d]) * b2(y) + sprod(&[e, f - a, g - a]) * b4(y))
}

/// The fully expanded `π^-8` form of `C`.
pub fn c_expanded(x: &PointV) -> Complex64 {
    let y = x.coords();
    let [a, b, c, d, e, f, g] = y;
    pi_pow(-8)
        * sprod(&[e - a, f - a, g - a])
        * (sprod(&[b, c, d]) * bracket_abcd_shift(&y) + sprod(&[e, f - a, g - a]) * bracket_bcd(&y))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BKind {
    B1,
    B2,
    B3,
    B4,
    B5,
}

impl BKind {
    pub fn from_index(k: u8) -> Option<BKind> {
        Some(match k {
            1 => BKind::B1,
            2 => BKind::B2,
            3 => BKind::B3,
            4 => BKind::B4,
            5 => BKind::B5,
            _ => return None,
        })
    }

    pub fn index(self) -> u8 {
        self as u8 + 1
    }

    fn eval_coords(self, y: &Coords) -> Complex64 {
        match self {
            BKind::B1 => b1(y),
            BKind::B2 => b2(y),
            BKind::B3 => b3(y),
            BKind::B4 => b4(y),
            BKind::B5 => b5(y),
        }
    }

    /// Sine arguments appearing inside the atom, in terms of `y`.
    pub fn internal_forms(self) -> Vec<LinearForm> {
        let list: &[&str] = match self {
            BKind::B1 => &["b", "c", "b-a", "c-a", "d", "e-a", "f-a", "g-a"],
            BKind::B2 => &["f-a", "g-a", "b-a", "c-a", "d-a", "e-2a"],
            BKind::B3 => &["f", "f-e", "g-a", "g-b", "g-c", "g-d", "g", "g-e", "f-a", "f-b", "f-c", "f-d", "f-g"],
            BKind::B4 => &["f-a", "g-a", "b", "c", "d", "e-a", "f", "g"],
            BKind::B5 => &["b", "e-b", "b-a", "c-a", "d-a", "e-2a", "f-a", "g-a"],
        };
        list.iter().map(|s| lf(s)).collect()
    }
}

/// Evaluates `B_k` at `x` (identity argument map).
pub fn eval_b(kind: BKind, x: &PointV) -> Complex64 {
    kind.eval_coords(&x.coords())
}

pub fn eval_c(x: &PointV) -> Complex64 {
    c_compact(&x.coords())
}

pub fn eval_s(forms: &[LinearForm], x: &PointV) -> Complex64 {
    forms.iter().map(|f| sinpi(f.eval(x))).product()
}

pub fn eval_a(forms: &[LinearForm; 4], x: &PointV) -> Complex64 {
    forms.iter().map(|f| recip_gamma(f.eval(x))).product()
}

/// Seven forms `x ↦ (φ_1(x), ..., φ_7(x))`; the point at which a `B_k` or
/// `C` atom is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArgMap(pub [LinearForm; 7]);

impl ArgMap {
    pub fn identity() -> Self {
        ArgMap(std::array::from_fn(|i| GroupElement::identity().row(i)))
    }

    pub fn parse(forms: [&str; 7]) -> Self {
        ArgMap(forms.map(lf))
    }

    fn apply(&self, x: &PointV) -> Coords {
        self.0.map(|f| f.eval(x))
    }

    fn compose(&self, rho: &GroupElement) -> Self {
        ArgMap(self.0.map(|f| f.compose(rho.matrix())))
    }

    /// Whether the map sends V into V.
    pub fn preserves_v(&self) -> bool {
        let one = LinearForm(crate::forms::ONE);
        let mut image = [0i32; 7];
        for (coef, f) in one.0.iter().zip(&self.0) {
            for (o, v) in image.iter_mut().zip(f.0) {
                *o += coef * v;
            }
        }
        image == one.0
    }
}

impl fmt::Display for ArgMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == ArgMap::identity() {
            return f.write_str("x");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoeffAtom {
    S(Vec<LinearForm>),
    A([LinearForm; 4]),
    B(BKind, ArgMap),
    C(ArgMap),
}

impl CoeffAtom {
    pub fn eval(&self, x: &PointV) -> Complex64 {
        match self {
            CoeffAtom::S(forms) => eval_s(forms, x),
            CoeffAtom::A(forms) => eval_a(forms, x),
            CoeffAtom::B(kind, map) => kind.eval_coords(&map.apply(x)),
            CoeffAtom::C(map) => c_compact(&map.apply(x)),
        }
    }

    pub fn length(&self) -> u32 {
        match self {
            CoeffAtom::S(forms) => 2 * forms.len() as u32,
            CoeffAtom::A(_) => 4,
            CoeffAtom::B(..) => 10,
            CoeffAtom::C(_) => 18,
        }
    }

    pub fn width(&self) -> u32 {
        match self {
            CoeffAtom::S(_) | CoeffAtom::A(_) => 1,
            CoeffAtom::B(..) => 2,
            CoeffAtom::C(_) => 4,
        }
    }

    /// The atom as a function of `x` after substituting `x ↦ ρx`.
    pub fn transport(&self, rho: &GroupElement) -> CoeffAtom {
        let m = rho.matrix();
        match self {
            CoeffAtom::S(forms) => CoeffAtom::S(forms.iter().map(|f| f.compose(m)).collect()),
            CoeffAtom::A(forms) => CoeffAtom::A(forms.map(|f| f.compose(m))),
            CoeffAtom::B(kind, map) => CoeffAtom::B(*kind, map.compose(rho)),
            CoeffAtom::C(map) => CoeffAtom::C(map.compose(rho)),
        }
    }

    /// Every sine or gamma argument, as forms in `x`; these are the
    /// quantities a sampled point must keep away from the integers.
    pub fn argument_forms(&self) -> Vec<LinearForm> {
        let through = |map: &ArgMap, inner: Vec<LinearForm>| -> Vec<LinearForm> {
            let m: [[i32; 7]; 7] = map.0.map(|f| f.0);
            inner.into_iter().map(|f| f.compose(&m)).collect()
        };
        match self {
            CoeffAtom::S(forms) => forms.clone(),
            CoeffAtom::A(forms) => forms.to_vec(),
            CoeffAtom::B(kind, map) => through(map, kind.internal_forms()),
            CoeffAtom::C(map) => {
                let mut inner = vec![lf("e-a"), lf("b"), lf("c"), lf("d"), lf("e"), lf("f-a"), lf("g-a")];
                inner.extend(BKind::B2.internal_forms());
                inner.extend(BKind::B4.internal_forms());
                through(map, inner)
            }
        }
    }
}

impl fmt::Display for CoeffAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |forms: &[LinearForm]| forms.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",");
        match self {
            CoeffAtom::S(forms) => write!(f, "S({})", join(forms)),
            CoeffAtom::A(forms) => write!(f, "A({})", join(forms)),
            CoeffAtom::B(kind, map) => write!(f, "B{}({map})", kind.index()),
            CoeffAtom::C(map) => write!(f, "C({map})"),
        }
    }
}

/// `±` a product of atoms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffExpr {
    pub sign: i8,
    pub atoms: Vec<CoeffAtom>,
}

impl CoeffExpr {
    pub fn new(sign: i8, atoms: Vec<CoeffAtom>) -> Self {
        assert!(sign == 1 || sign == -1);
        CoeffExpr { sign, atoms }
    }

    pub fn eval(&self, x: &PointV) -> Complex64 {
        self.atoms.iter().map(|a| a.eval(x)).product::<Complex64>() * self.sign as f64
    }

    /// Additive: the number of gamma functions the coefficient stands for.
    pub fn length(&self) -> u32 {
        self.atoms.iter().map(CoeffAtom::length).sum()
    }

    /// Multiplicative: the number of summands after expansion.
    pub fn width(&self) -> u32 {
        self.atoms.iter().map(CoeffAtom::width).product()
    }

    pub fn metadata(&self) -> (u32, u32) {
        (self.length(), self.width())
    }

    pub fn transport(&self, rho: &GroupElement) -> CoeffExpr {
        CoeffExpr { sign: self.sign, atoms: self.atoms.iter().map(|a| a.transport(rho)).collect() }
    }

    pub fn argument_forms(&self) -> Vec<LinearForm> {
        self.atoms.iter().flat_map(CoeffAtom::argument_forms).collect()
    }
}

impl fmt::Display for CoeffExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.atoms.iter().map(|a| a.to_string()).collect();
        write!(f, "{}{}", if self.sign < 0 { "-" } else { "+" }, body.join("·"))
    }
}

/// Shorthand constructors for catalog transcription.
pub mod build {
    use super::*;

    pub fn s(forms: &[&str]) -> CoeffAtom {
        CoeffAtom::S(forms.iter().map(|f| lf(f)).collect())
    }

    pub fn a(forms: [&str; 4]) -> CoeffAtom {
        CoeffAtom::A(forms.map(lf))
    }

    pub fn b(k: u8) -> CoeffAtom {
        CoeffAtom::B(BKind::from_index(k).expect("k in 1..=5"), ArgMap::identity())
    }

    pub fn b_at(k: u8, args: [&str; 7]) -> CoeffAtom {
        CoeffAtom::B(BKind::from_index(k).expect("k in 1..=5"), ArgMap::parse(args))
    }

    pub fn c() -> CoeffAtom {
        CoeffAtom::C(ArgMap::identity())
    }
}
