//! The eighteen three-term relations `γ1 J_σ + γ2 J_τ + γ3 J_μ = 0`, their
//! transport along M, and numerical verification.

use crate::classification::{type_of, Composition, ThreeSet, TypeSymbol};
use crate::coefficients::build::{a, b, b_at, c, s};
use crate::coefficients::CoeffExpr;
use crate::forms::LinearForm;
use crate::functions::{eval_j_with, k_series_arguments, l_series_arguments, FunctionError};
use crate::group::{structure, CosetId, GroupElement, Side};
use crate::point::PointV;
use crate::series::SeriesOptions;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::sync::OnceLock;
use thiserror::Error;

pub const DEFAULT_TOLERANCE: f64 = 1e-6;
/// Sampled forms must keep `dist(Re u, Z) >= 0.02` or `|Im u| >= 0.02`.
pub const SAMPLE_GUARD: f64 = 0.02;
const REJECTION_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RelationError {
    #[error("point rejected: {0}")]
    SamplingRejected(String),
    #[error("no acceptable point after {0} draws")]
    RejectionBudgetExceeded(usize),
    #[error(transparent)]
    Function(#[from] FunctionError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coset: CosetId,
    pub coeff: CoeffExpr,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Relation {
    pub family: String,
    #[serde(rename = "type")]
    pub type_symbol: TypeSymbol,
    pub terms: [Term; 3],
}

impl Relation {
    pub fn cosets(&self) -> [CosetId; 3] {
        self.terms.each_ref().map(|t| t.coset)
    }

    pub fn three_set(&self) -> ThreeSet {
        ThreeSet::new(self.cosets()).expect("relation cosets are distinct")
    }

    pub fn composition(&self) -> Composition {
        self.three_set().composition()
    }

    /// `x ↦ ρx` throughout: cosets move by right multiplication by `ρ`
    /// and every coefficient argument is composed with `ρ`.
    pub fn transport(&self, rho: &GroupElement) -> Relation {
        let st = structure();
        let terms = self.terms.each_ref().map(|t| Term {
            coset: st.act(t.coset, rho).expect("ρ must lie in M"),
            coeff: t.coeff.transport(rho),
        });
        Relation { family: self.family.clone(), type_symbol: self.type_symbol, terms }
    }

    /// Sine and gamma arguments of every coefficient and of every series
    /// behind `J_σ`, excluding forms that are constant on V.
    pub fn guard_forms(&self) -> Vec<LinearForm> {
        let st = structure();
        let mut out = BTreeSet::new();
        for t in &self.terms {
            let inner = match t.coset.side() {
                Side::K => k_series_arguments(),
                Side::L => l_series_arguments(),
            };
            let rep = st.rep(t.coset).matrix();
            out.extend(inner.iter().map(|f| f.compose(rep)));
            out.extend(t.coeff.argument_forms());
        }
        out.into_iter().filter(|f| f.constant_on_v().is_none()).collect()
    }

    /// `(|Σ γ_ℓ J_ℓ|, max_ℓ |γ_ℓ J_ℓ|)` at `x`.
    pub fn residual_with(&self, x: &PointV, opts: &SeriesOptions) -> Result<(f64, f64), RelationError> {
        if x.excess().norm() >= crate::point::BALANCE_TOL {
            return Err(RelationError::SamplingRejected("point is off V".into()));
        }
        let mut sum = Complex64::new(0.0, 0.0);
        let mut scale: f64 = 0.0;
        for t in &self.terms {
            let term = t.coeff.eval(x) * eval_j_with(t.coset, x, opts)?;
            sum += term;
            scale = scale.max(term.norm());
        }
        Ok((sum.norm(), scale))
    }

    pub fn residual(&self, x: &PointV) -> Result<(f64, f64), RelationError> {
        self.residual_with(x, &SeriesOptions::default())
    }
}

fn term(coset: &str, sign: i8, atoms: Vec<crate::coefficients::CoeffAtom>) -> Term {
    Term { coset: coset.parse().expect("catalog labels are valid"), coeff: CoeffExpr::new(sign, atoms) }
}

fn rel(family: &str, type_symbol: &str, terms: [Term; 3]) -> Relation {
    Relation { family: family.to_string(), type_symbol: type_symbol.parse().expect("valid"), terms }
}

const A_1A: [&str; 4] = ["1-a", "e-a", "f-a", "g-a"];
const A_1B: [&str; 4] = ["1-b", "e-b", "f-b", "g-b"];
const A_1C: [&str; 4] = ["1-c", "e-c", "f-c", "g-c"];
const A_1D: [&str; 4] = ["1-d", "e-d", "f-d", "g-d"];
const A_B1: [&str; 4] = ["b", "1+b-e", "1+b-f", "1+b-g"];
const A_A1: [&str; 4] = ["a", "1+a-e", "1+a-f", "1+a-g"];
const A_ABCD: [&str; 4] = ["a", "b", "c", "d"];
const A_E: [&str; 4] = ["e-a", "e-b", "e-c", "e-d"];
const A_F: [&str; 4] = ["f-a", "f-b", "f-c", "f-d"];
const A_G: [&str; 4] = ["g-a", "g-b", "g-c", "g-d"];
const A_1F: [&str; 4] = ["1+a-f", "1+b-f", "1+c-f", "1+d-f"];
const A_1G: [&str; 4] = ["1+a-g", "1+b-g", "1+c-g", "1+d-g"];
const A_1E: [&str; 4] = ["1+a-e", "1+b-e", "1+c-e", "1+d-e"];
const A_ONE: [&str; 4] = ["1-a", "1-b", "1-c", "1-d"];

fn build_catalog() -> Vec<Relation> {
    vec![
        rel(
            "Orbit1_LKK",
            "222",
            [
                term("p0", 1, vec![s(&["a"]), a(A_B1)]),
                term("p1", -1, vec![s(&["b"]), a(A_A1)]),
                term("3", -1, vec![s(&["b-a"]), a(A_ABCD)]),
            ],
        ),
        rel(
            "Orbit1_KLL",
            "222",
            [
                term("p0", 1, vec![s(&["f-e"]), a(A_1A)]),
                term("6", 1, vec![s(&["f-a"]), a(A_E)]),
                term("5", -1, vec![s(&["e-a"]), a(A_F)]),
            ],
        ),
        rel(
            "KKK_222",
            "222",
            [
                term("p0", 1, vec![s(&["c-b"]), a(A_1A)]),
                term("p1", 1, vec![s(&["a-c"]), a(A_1B)]),
                term("p2", 1, vec![s(&["b-a"]), a(A_1C)]),
            ],
        ),
        rel(
            "coherent_LLL",
            "222",
            [
                term("6", 1, vec![s(&["f-g"]), a(A_E)]),
                term("5", 1, vec![s(&["g-e"]), a(A_F)]),
                term("4", 1, vec![s(&["e-f"]), a(A_G)]),
            ],
        ),
        rel(
            "Orbit3_LKK",
            "224",
            [
                term("p0", 1, vec![s(&["c"]), a(A_1A), a(A_B1)]),
                term("1bar", -1, vec![s(&["b-a"]), a(A_ABCD), a(A_1C)]),
                term("p1", -1, vec![b(1)]),
            ],
        ),
        rel(
            "Orbit4_LKK",
            "224",
            [
                term("p0", 1, vec![s(&["f-a"]), a(A_1A), a(A_1G)]),
                term("n4", -1, vec![s(&["g-a"]), a(A_F), a(A_A1)]),
                term("4", -1, vec![b(2)]),
            ],
        ),
        rel(
            "incoherent_LLL",
            "224",
            [
                term("6", 1, vec![s(&["g"]), a(A_1F), a(A_E)]),
                term("6bar", 1, vec![s(&["e-f"]), a(A_ABCD), a(A_G)]),
                term("5", -1, vec![b(3)]),
            ],
        ),
        rel(
            "Orbit2_KLL",
            "224",
            [
                term("p0", 1, vec![s(&["g"]), a(A_1F), a(A_1A)]),
                term("6bar", 1, vec![s(&["f-a"]), a(A_ABCD), a(A_G)]),
                term("5", -1, vec![b(4)]),
            ],
        ),
        rel(
            "KKK_224",
            "224",
            [
                term("p0", 1, vec![s(&["e-a-b"]), a(A_1A), a(A_B1)]),
                term("n4", 1, vec![s(&["b-a"]), a(["1+a-e", "1+b-e", "g-c", "g-d"]), a(["a", "b", "f-c", "f-d"])]),
                term("p1", -1, vec![b(5)]),
            ],
        ),
        rel(
            "Orbit3_KLL",
            "244",
            [
                term("p0", 1, vec![a(A_1A), b(3)]),
                term("6bar", 1, vec![s(&["e-a"]), a(A_F), a(A_G), a(A_ABCD)]),
                term("6", -1, vec![a(A_E), b(4)]),
            ],
        ),
        rel(
            "Orbit4_KLL",
            "244",
            [
                term("p0", 1, vec![s(&["d-c"]), a(A_1A), a(A_ONE), a(A_B1)]),
                term("1bar", -1, vec![a(A_1C), b_at(1, ["a", "b", "d", "c", "e", "f", "g"])]),
                term("2bar", 1, vec![a(A_1D), b(1)]),
            ],
        ),
        rel(
            "Orbit2_LKK",
            "244",
            [
                term("p0", 1, vec![a(A_1A), b_at(4, ["b", "a", "c", "d", "e", "f", "g"])]),
                term("p1", -1, vec![a(A_1B), b(4)]),
                term("6bar", -1, vec![s(&["b-a"]), a(A_F), a(A_G), a(A_ABCD)]),
            ],
        ),
        rel(
            "Orbit6_LKK",
            "244",
            [
                term("p0", 1, vec![s(&["a"]), a(A_1F), a(A_1G), a(A_1A)]),
                term("n4", -1, vec![a(A_A1), b(4)]),
                term("6bar", -1, vec![a(A_ABCD), b(2)]),
            ],
        ),
        rel(
            "KKK_244",
            "244",
            [
                term("p0", 1, vec![s(&["f-e"]), a(["1-a", "1-b", "1+c-g", "1+d-g"]), a(A_B1), a(A_1A)]),
                term(
                    "n4",
                    -1,
                    vec![a(["1+a-e", "1+b-e", "f-c", "f-d"]), b_at(5, ["a", "b", "c", "d", "f", "e", "g"])],
                ),
                term("n8", 1, vec![a(["1+a-f", "1+b-f", "e-c", "e-d"]), b(5)]),
            ],
        ),
        rel(
            "Orbit7_LKK",
            "246",
            [
                term("p0", 1, vec![a(A_1E), a(A_1A), b(4)]),
                term("n0", -1, vec![s(&["e-a"]), a(A_F), a(A_G), a(A_ABCD), a(A_A1)]),
                term("6", -1, vec![c()]),
            ],
        ),
        rel(
            "KKK_246",
            "246",
            [
                term("p0", 1, vec![a(A_ONE), a(A_1E), b(2)]),
                term("n0", 1, vec![s(&["e"]), a(A_F), a(A_G), a(A_A1), a(A_A1)]),
                term("p4", -1, vec![c()]),
            ],
        ),
        rel(
            "Orbit5_LKK",
            "444",
            [
                term(
                    "p0",
                    1,
                    vec![a(A_1A), a(A_1F), b_at(4, ["e-a", "e-b", "e-c", "e-d", "1+e-f", "e", "1+e-g"])],
                ),
                term("n4", -1, vec![a(A_G), a(A_A1), b_at(4, ["a", "b", "c", "d", "g", "f", "e"])]),
                term("4bar", -1, vec![a(A_ABCD), a(A_E), b(2)]),
            ],
        ),
        rel(
            "KKK_444",
            "444",
            [
                term(
                    "p0",
                    1,
                    vec![
                        a(A_1A),
                        a(A_B1),
                        b_at(5, ["e-a", "b", "1+b-f", "g-a", "1+b-a", "1+b+c-f", "1+b+d-f"]),
                    ],
                ),
                term(
                    "n4",
                    1,
                    vec![
                        a(["a", "1+a-e", "f-d", "g-d"]),
                        a(["b", "1+b-e", "f-c", "g-c"]),
                        b_at(5, ["1+b-e", "b", "f-c", "g-c", "1+a+b-e", "1+b-c", "1+b+d-e"]),
                    ],
                ),
                term("p5", 1, vec![a(A_ABCD), a(A_E), b(5)]),
            ],
        ),
    ]
}

/// The eighteen canonical relations.
pub fn catalog() -> &'static [Relation] {
    static CELL: OnceLock<Vec<Relation>> = OnceLock::new();
    CELL.get_or_init(build_catalog)
}

pub fn find(family: &str) -> Option<&'static Relation> {
    catalog().iter().find(|r| r.family.eq_ignore_ascii_case(family))
}

/// Checks the structural laws: declared type, coefficient lengths
/// `2(a+b+c) - 6`, and widths `2^(d(other two)/2 - 1)`.
pub fn structural_violations(r: &Relation) -> Vec<String> {
    let mut out = Vec::new();
    let actual = type_of(&r.three_set());
    if actual != r.type_symbol {
        out.push(format!("{}: declared type {} but cosets have type {actual}", r.family, r.type_symbol));
    }
    let expected_len = 2 * actual.sum() - 6;
    let ids = r.cosets();
    for (l, t) in r.terms.iter().enumerate() {
        if t.coeff.length() != expected_len {
            out.push(format!("{}: γ{} has length {} != {expected_len}", r.family, l + 1, t.coeff.length()));
        }
        let others: Vec<CosetId> = (0..3).filter(|&j| j != l).map(|j| ids[j]).collect();
        let d = crate::classification::distance(others[0], others[1]) as u32;
        let expected_width = 1u32 << (d / 2 - 1);
        if t.coeff.width() != expected_width {
            out.push(format!("{}: γ{} has width {} != {expected_width}", r.family, l + 1, t.coeff.width()));
        }
    }
    out
}

/// Rejection sampler for points of V away from every guarded argument.
pub struct Sampler {
    forms: Vec<LinearForm>,
}

impl Sampler {
    /// Guards the given forms; forms constant on V are ignored.
    pub fn from_forms(forms: impl IntoIterator<Item = LinearForm>) -> Self {
        let set: BTreeSet<LinearForm> = forms.into_iter().filter(|f| f.constant_on_v().is_none()).collect();
        Sampler { forms: set.into_iter().collect() }
    }

    pub fn for_relations<'a>(relations: impl IntoIterator<Item = &'a Relation>) -> Self {
        Self::from_forms(relations.into_iter().flat_map(Relation::guard_forms))
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    /// Whether every guarded form stays clear of the integers at `x`.
    pub fn accepts(&self, x: &PointV) -> bool {
        self.forms.iter().all(|f| {
            let u = f.eval(x);
            crate::numerics::distance_to_integer(u.re) >= SAMPLE_GUARD || u.im.abs() >= SAMPLE_GUARD
        })
    }

    pub fn draw(rng: &mut impl Rng) -> PointV {
        PointV::balanced(std::array::from_fn(|_| {
            Complex64::new(rng.gen_range(0.15..0.85), rng.gen_range(-0.3..0.3))
        }))
    }

    pub fn sample(&self, rng: &mut impl Rng) -> Result<PointV, RelationError> {
        for _ in 0..REJECTION_BUDGET {
            let x = Self::draw(rng);
            if self.accepts(&x) {
                return Ok(x);
            }
        }
        Err(RelationError::RejectionBudgetExceeded(REJECTION_BUDGET))
    }

    pub fn sample_many(&self, n: usize, seed: u64) -> Result<Vec<PointV>, RelationError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| self.sample(&mut rng)).collect()
    }
}

/// One point guarded against every catalog relation.
pub fn sample_point(seed: u64) -> Result<PointV, RelationError> {
    static SAMPLER: OnceLock<Sampler> = OnceLock::new();
    let sampler = SAMPLER.get_or_init(|| Sampler::for_relations(catalog()));
    sampler.sample(&mut ChaCha8Rng::seed_from_u64(seed))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointFailure {
    pub index: usize,
    /// `residual / scale`, absent if evaluation itself failed.
    pub relative_residual: Option<f64>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: String,
    #[serde(rename = "type")]
    pub type_symbol: TypeSymbol,
    pub cosets: [CosetId; 3],
    pub points: usize,
    pub max_rel_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub failures: Vec<PointFailure>,
}

/// Relative residual at one point.
pub fn relative_residual(r: &Relation, x: &PointV, opts: &SeriesOptions) -> Result<f64, RelationError> {
    let (res, scale) = r.residual_with(x, opts)?;
    Ok(res / scale)
}

/// Assembles a report from per-point outcomes (in point order).
pub fn report_from(r: &Relation, outcomes: &[Result<f64, RelationError>], tolerance: f64) -> VerificationReport {
    let mut max: f64 = 0.0;
    let mut failures = Vec::new();
    for (index, outcome) in outcomes.iter().enumerate() {
        match outcome {
            Ok(rel) => {
                max = max.max(*rel);
                if !(*rel < tolerance) {
                    failures.push(PointFailure {
                        index,
                        relative_residual: Some(*rel),
                        message: "residual above tolerance".into(),
                    });
                }
            }
            Err(e) => failures.push(PointFailure { index, relative_residual: None, message: e.to_string() }),
        }
    }
    VerificationReport {
        family: r.family.clone(),
        type_symbol: r.type_symbol,
        cosets: r.cosets(),
        points: outcomes.len(),
        max_rel_residual: max,
        tolerance,
        pass: failures.is_empty(),
        failures,
    }
}

/// Verifies `r` at `n` points drawn from its own guarded sampler.
pub fn verify(r: &Relation, n: usize, seed: u64, tolerance: f64) -> Result<VerificationReport, RelationError> {
    let points = Sampler::for_relations([r]).sample_many(n, seed)?;
    let opts = SeriesOptions::default();
    let outcomes: Vec<_> = points.iter().map(|x| relative_residual(r, x, &opts)).collect();
    Ok(report_from(r, &outcomes, tolerance))
}

/// `n` transports `(catalog index, ρ index)` drawn deterministically.
pub fn random_transports(n: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = structure().order();
    (0..n).map(|_| (rng.gen_range(0..catalog().len()), rng.gen_range(0..order))).collect()
}
