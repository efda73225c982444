#![allow(dead_code)]

use klrel::forms::LinearForm;
use klrel::functions::{eval_k, eval_l, k_series_arguments, l_series_arguments};
use klrel::group::{matrix_a, GroupElement, Side};
use klrel::point::PointV;
use klrel::relations::Sampler;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use std::sync::OnceLock;

pub fn golden() -> &'static Value {
    static CELL: OnceLock<Value> = OnceLock::new();
    CELL.get_or_init(|| {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/golden.json");
        let text = std::fs::read_to_string(path).expect("golden.json present");
        serde_json::from_str(&text).expect("golden.json parses")
    })
}

pub fn complex(v: &Value) -> Complex64 {
    let part = |i: usize| v[i].as_str().expect("string").parse::<f64>().expect("float");
    Complex64::new(part(0), part(1))
}

pub fn complexes(v: &Value) -> Vec<Complex64> {
    v.as_array().expect("array").iter().map(complex).collect()
}

/// The golden point `x*`, with `g` recomputed from the balance.
pub fn x_star() -> PointV {
    let coords = complexes(&golden()["x_star"]);
    PointV::balanced(std::array::from_fn(|i| coords[i]))
}

pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

/// The standard generating sets for `G_K` and `G_L` together with the Coxeter
/// generator `s3 = (34)A`, which lies in both.
pub fn invariance_generators(side: Side) -> Vec<(&'static str, GroupElement)> {
    let t = |i, j| GroupElement::from_cycles(&[&[i, j]]);
    let s3 = t(3, 4).mul(&matrix_a());
    let first = match side {
        Side::K => ("(56)", t(5, 6)),
        Side::L => ("(12)", t(1, 2)),
    };
    vec![first, ("(23)", t(2, 3)), ("(34)", t(3, 4)), ("(67)", t(6, 7)), ("A", matrix_a()), ("(34)A", s3)]
}

/// Arguments of the series behind `K` or `L`, pulled back along each element.
pub fn pulled_back_arguments(side: Side, elements: &[&GroupElement]) -> Sampler {
    let inner = match side {
        Side::K => k_series_arguments(),
        Side::L => l_series_arguments(),
    };
    Sampler::from_forms(elements.iter().flat_map(|g| inner.iter().map(|f| f.compose(g.matrix()))))
}

pub fn eval_side(side: Side, x: &PointV) -> Complex64 {
    match side {
        Side::K => eval_k(x),
        Side::L => eval_l(x),
    }
    .expect("sampled point is evaluable")
}

/// Largest relative discrepancy of `F(gx)` against `F(x)` over `n` sampled points.
pub fn max_invariance_error(side: Side, g: &GroupElement, n: usize, seed: u64) -> f64 {
    let id = GroupElement::identity();
    let points = pulled_back_arguments(side, &[&id, g]).sample_many(n, seed).expect("sampling succeeds");
    points.iter().map(|x| rel_err(eval_side(side, &g.apply(x)), eval_side(side, x))).fold(0.0, f64::max)
}

/// A sampled point with `Re(f - d) > 0.2`, clear of every argument of both
/// representations of `L`.
pub fn vwp_points(n: usize, seed: u64) -> Vec<PointV> {
    let mut forms: Vec<LinearForm> = l_series_arguments().to_vec();
    forms.extend(
        ["d+g-e", "1+d+g-e", "1+a+d-e", "1+b+d-e", "1+c+d-e", "1+g-e", "g", "f-d"].map(klrel::forms::lf),
    );
    let sampler = Sampler::from_forms(forms);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let x = sampler.sample(&mut rng).expect("sampling succeeds");
        if (x.f() - x.d()).re > 0.2 {
            out.push(x);
        }
    }
    out
}

pub fn random_complex(rng: &mut impl Rng, re: f64, im: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-re..re), rng.gen_range(-im..im))
}

pub fn random_v_point(rng: &mut impl Rng) -> PointV {
    PointV::balanced(std::array::from_fn(|_| random_complex(rng, 2.0, 0.5)))
}

fn sines(args: &[Complex64]) -> Complex64 {
    args.iter().map(|&z| klrel::numerics::sinpi(z)).product()
}

/// `|S(p-q,r-s) - S(p-r,q-s) + S(q-r,p-s)|`.
pub fn trig_defect_a(p: Complex64, q: Complex64, r: Complex64, s: Complex64) -> f64 {
    (sines(&[p - q, r - s]) - sines(&[p - r, q - s]) + sines(&[q - r, p - s])).norm()
}

/// Both sides of the four-sine difference identity on V.
pub fn trig_sides_b(x: &PointV) -> (Complex64, Complex64) {
    let [a, b, c, d, e, f, g] = x.coords();
    let lhs = sines(&[g - a, f - b, f - c, f - d]) - sines(&[f - a, g - b, g - c, g - d]);
    let rhs = sines(&[f - g]) * (sines(&[b - a, c - a, d - a]) + sines(&[e - 2.0 * a, f - a, g - a]));
    (lhs, rhs)
}

/// A point on V with `f - g = n` exactly, moved by `delta` in `f` (and
/// `-delta` in `g`).
pub fn b3_point(n: f64, delta: f64) -> PointV {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let (a, b, cc, d, e) = (c(0.31, 0.1), c(0.42, -0.05), c(0.27, 0.2), c(0.55, 0.0), c(0.8, -0.1));
    let f = (n + 1.0 + a + b + cc + d - e) / 2.0 + delta / 2.0;
    PointV::balanced([a, b, cc, d, e, f])
}
