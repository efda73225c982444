//! The matrix group `M ≅ W(D6)` acting on V, its subgroups `G_K ≅ S6` and
//! `G_L ≅ W(D5)`, and their labeled right cosets.
//!
//! Elements are exact 7×7 integer matrices acting on column vectors. The
//! whole group (23040 elements) is enumerated once and kept in a
//! [`Structure`] with multiplication-by-generator tables and the action of
//! every element on the 44 cosets.

use crate::forms::{lf, LinearForm, ONE};
use crate::point::PointV;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use thiserror::Error;

pub type Mat7 = [[i32; 7]; 7];

pub const GROUP_ORDER: usize = 23_040;
pub const GK_ORDER: usize = 720;
pub const GL_ORDER: usize = 1_920;
pub const K_COSETS: usize = 32;
pub const L_COSETS: usize = 12;
pub const N_COSETS: usize = K_COSETS + L_COSETS;

const CLOSURE_BUDGET: usize = 50_000;
const CACHE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("integer overflow in matrix product")]
    Overflow,
    #[error("closure exceeded {0} elements")]
    ClosureBudgetExceeded(usize),
    #[error("coset labeling failed: {0}")]
    LabelingMismatch(String),
    #[error("matrix is not an element of M")]
    NotInGroup,
    #[error("cache: {0}")]
    Cache(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(pub Mat7);

impl GroupElement {
    pub fn identity() -> Self {
        let mut m = [[0; 7]; 7];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        GroupElement(m)
    }

    /// Permutation matrix with `P e_i = e_{σ(i)}`, from 1-based cycles.
    pub fn from_cycles(cycles: &[&[usize]]) -> Self {
        let mut sigma: [usize; 7] = std::array::from_fn(|i| i);
        for cycle in cycles {
            for (j, &from) in cycle.iter().enumerate() {
                let to = cycle[(j + 1) % cycle.len()];
                sigma[from - 1] = to - 1;
            }
        }
        let mut m = [[0; 7]; 7];
        for (i, &s) in sigma.iter().enumerate() {
            m[s][i] = 1;
        }
        GroupElement(m)
    }

    /// The matrix whose rows are the given forms, i.e. `x ↦ (φ_1(x), ...)`.
    pub fn from_forms(forms: &[LinearForm; 7]) -> Self {
        GroupElement(forms.map(|f| f.0))
    }

    pub fn matrix(&self) -> &Mat7 {
        &self.0
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, GroupError> {
        let mut out = [[0i32; 7]; 7];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let mut acc = 0i32;
                for k in 0..7 {
                    let term = self.0[i][k].checked_mul(rhs.0[k][j]).ok_or(GroupError::Overflow)?;
                    acc = acc.checked_add(term).ok_or(GroupError::Overflow)?;
                }
                *entry = acc;
            }
        }
        Ok(GroupElement(out))
    }

    /// Product for elements already known to lie in M (entries stay tiny).
    pub fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("products of group elements stay small")
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| acc.mul(self))
    }

    pub fn apply(&self, x: &PointV) -> PointV {
        x.transform(&self.0)
    }

    pub fn row(&self, i: usize) -> LinearForm {
        LinearForm(self.0[i])
    }

    pub fn max_abs_entry(&self) -> i32 {
        self.0.iter().flatten().map(|v| v.abs()).max().unwrap_or(0)
    }

    /// Exact determinant by fraction-free elimination.
    pub fn det(&self) -> i64 {
        let mut m: Vec<Vec<i64>> = self.0.iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect();
        let n = 7;
        let mut sign = 1;
        let mut prev = 1i64;
        for k in 0..n - 1 {
            if m[k][k] == 0 {
                match (k + 1..n).find(|&i| m[i][k] != 0) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        sign * m[n - 1][n - 1]
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..7).map(|i| self.row(i).to_string()).collect();
        write!(f, "x ↦ ({})", rows.join(", "))
    }
}

/// The matrix `A`: `x ↦ (a, b, g-c, g-d, e+g-c-d, f+g-c-d, g)`.
pub fn matrix_a() -> GroupElement {
    GroupElement::from_forms(&["a", "b", "g-c", "g-d", "e+g-c-d", "f+g-c-d", "g"].map(lf))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    S1,
    S2,
    S3,
    S4,
    S5,
    S1Prime,
}

impl Generator {
    pub const ALL: [Generator; 6] =
        [Generator::S1, Generator::S2, Generator::S3, Generator::S4, Generator::S5, Generator::S1Prime];

    pub fn element(self) -> GroupElement {
        match self {
            Generator::S1 => GroupElement::from_cycles(&[&[3, 4]]),
            Generator::S2 => GroupElement::from_cycles(&[&[2, 3]]),
            Generator::S3 => GroupElement::from_cycles(&[&[3, 4]]).mul(&matrix_a()),
            Generator::S4 => GroupElement::from_cycles(&[&[6, 7]]),
            Generator::S5 => GroupElement::from_cycles(&[&[5, 6]]),
            Generator::S1Prime => GroupElement::from_cycles(&[&[1, 2]]),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::S1 => "s1",
            Generator::S2 => "s2",
            Generator::S3 => "s3",
            Generator::S4 => "s4",
            Generator::S5 => "s5",
            Generator::S1Prime => "s1'",
        }
    }

    /// Coxeter exponent `m_ij` from the D6 diagram `1' - 2`, `1 - 2 - 3 - 4 - 5`.
    pub fn coxeter_m(self, other: Generator) -> u32 {
        use Generator::*;
        if self == other {
            return 1;
        }
        let node = |g: Generator| match g {
            S1 => 1,
            S2 => 2,
            S3 => 3,
            S4 => 4,
            S5 => 5,
            S1Prime => 0,
        };
        let (i, j) = (node(self), node(other));
        let adjacent = match (i.min(j), i.max(j)) {
            (0, 2) => true,
            (0, _) => false,
            (x, y) => y - x == 1,
        };
        if adjacent {
            3
        } else {
            2
        }
    }
}

pub fn generators() -> [GroupElement; 6] {
    Generator::ALL.map(Generator::element)
}

pub fn gk_generators() -> Vec<GroupElement> {
    [Generator::S1, Generator::S2, Generator::S3, Generator::S4, Generator::S5].map(Generator::element).to_vec()
}

pub fn gl_generators() -> Vec<GroupElement> {
    [Generator::S1Prime, Generator::S1, Generator::S2, Generator::S3, Generator::S4]
        .map(Generator::element)
        .to_vec()
}

/// Breadth-first closure of `gens` under right multiplication.
pub fn closure(gens: &[GroupElement], budget: usize) -> Result<Vec<GroupElement>, GroupError> {
    let id = GroupElement::identity();
    let mut seen = HashMap::from([(id, 0usize)]);
    let mut out = vec![id];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.checked_mul(s)?;
            if !seen.contains_key(&h) {
                if out.len() >= budget {
                    return Err(GroupError::ClosureBudgetExceeded(budget));
                }
                seen.insert(h, out.len());
                out.push(h);
                queue.push_back(h);
            }
        }
    }
    Ok(out)
}

pub fn subgroup(gens: &[GroupElement]) -> Result<Vec<GroupElement>, GroupError> {
    closure(gens, CLOSURE_BUDGET)
}

/// `w0 = (12)(34) [[(1234)(567)]^2 A]^4`.
pub fn central_involution_word() -> GroupElement {
    let rot = GroupElement::from_cycles(&[&[1, 2, 3, 4], &[5, 6, 7]]);
    let inner = rot.pow(2).mul(&matrix_a());
    GroupElement::from_cycles(&[&[1, 2], &[3, 4]]).mul(&inner.pow(4))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    K,
    L,
}

/// A labeled right coset: `p0..p15`, `n0..n15` of `G_K`, then `1..6`,
/// `1bar..6bar` of `G_L`. The derived order is the label order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetId(u8);

impl CosetId {
    pub fn p(k: u8) -> Self {
        assert!(k < 16);
        CosetId(k)
    }
    pub fn n(k: u8) -> Self {
        assert!(k < 16);
        CosetId(16 + k)
    }
    /// `L_i` for `i` in `1..=6`.
    pub fn l(i: u8) -> Self {
        assert!((1..=6).contains(&i));
        CosetId(31 + i)
    }
    /// `L_ī` for `i` in `1..=6`.
    pub fn lbar(i: u8) -> Self {
        assert!((1..=6).contains(&i));
        CosetId(37 + i)
    }

    pub fn from_index(i: usize) -> Self {
        assert!(i < N_COSETS);
        CosetId(i as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn all() -> impl Iterator<Item = CosetId> {
        (0..N_COSETS as u8).map(CosetId)
    }

    pub fn k_side() -> impl Iterator<Item = CosetId> {
        (0..K_COSETS as u8).map(CosetId)
    }

    pub fn l_side() -> impl Iterator<Item = CosetId> {
        (K_COSETS as u8..N_COSETS as u8).map(CosetId)
    }

    pub fn side(self) -> Side {
        if (self.0 as usize) < K_COSETS {
            Side::K
        } else {
            Side::L
        }
    }

    /// For K-labels, `(positive, k)` with `k = 4q + r`.
    pub fn k_parts(self) -> Option<(bool, u8)> {
        match self.0 {
            0..=15 => Some((true, self.0)),
            16..=31 => Some((false, self.0 - 16)),
            _ => None,
        }
    }

    /// For L-labels, `(i, barred)`.
    pub fn l_parts(self) -> Option<(u8, bool)> {
        match self.0 {
            32..=37 => Some((self.0 - 31, false)),
            38..=43 => Some((self.0 - 37, true)),
            _ => None,
        }
    }

    pub fn label(self) -> String {
        match (self.k_parts(), self.l_parts()) {
            (Some((true, k)), _) => format!("p{k}"),
            (Some((false, k)), _) => format!("n{k}"),
            (_, Some((i, false))) => i.to_string(),
            (_, Some((i, true))) => format!("{i}bar"),
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for CosetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown coset label {0:?}")]
pub struct CosetParseError(pub String);

impl FromStr for CosetId {
    type Err = CosetParseError;

    /// Accepts `p0`, `n15`, `6`, `6bar` and `6̄`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || CosetParseError(s.to_string());
        let t = s.trim();
        let parse_k = |rest: &str| rest.parse::<u8>().ok().filter(|&k| k < 16);
        if let Some(rest) = t.strip_prefix('p') {
            return parse_k(rest).map(CosetId::p).ok_or_else(err);
        }
        if let Some(rest) = t.strip_prefix('n') {
            return parse_k(rest).map(CosetId::n).ok_or_else(err);
        }
        let (digits, barred) = match t.strip_suffix("bar").or_else(|| t.strip_suffix('\u{304}')) {
            Some(d) => (d, true),
            None => (t, false),
        };
        let i = digits.parse::<u8>().ok().filter(|i| (1..=6).contains(i)).ok_or_else(err)?;
        Ok(if barred { CosetId::lbar(i) } else { CosetId::l(i) })
    }
}

impl Serialize for CosetId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

impl<'de> Deserialize<'de> for CosetId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The transformation in coset `p_k` (or `n_k` when `positive` is false).
pub fn k_label_display(positive: bool, k: u8) -> GroupElement {
    let (q, r) = ((k / 4) as usize, (k % 4) as usize);
    const ABCD: [&str; 4] = ["a", "b", "c", "d"];
    const ONE_EFG: [&str; 4] = ["1", "e", "f", "g"];
    // R^j(x, y, z, t) picks entries cyclically shifted by j
    let one_q = lf(ONE_EFG[q]);
    let forms: [LinearForm; 7] = std::array::from_fn(|i| {
        let base = if i < 4 { lf(ABCD[(i + r) % 4]) } else { lf(ONE_EFG[(i - 3 + q) % 4]) };
        let row = std::array::from_fn(|j| match (positive, i < 4) {
            (true, _) => ONE[j] + base.0[j] - one_q.0[j],
            (false, true) => one_q.0[j] - base.0[j],
            (false, false) => ONE[j] + one_q.0[j] - base.0[j],
        });
        LinearForm(row)
    });
    GroupElement::from_forms(&forms)
}

/// The transformation defining `L_i` (or `L_ī`).
pub fn l_label_display(i: u8, barred: bool) -> GroupElement {
    let plain: [&str; 7] = match i {
        6 => ["a", "b", "c", "d", "e", "f", "g"],
        5 => ["a", "b", "c", "d", "f", "e", "g"],
        4 => ["a", "b", "c", "d", "g", "f", "e"],
        3 => ["a", "1+a-e", "1+a-f", "1+a-g", "1+a-b", "1+a-c", "1+a-d"],
        2 => ["a", "1+a-e", "1+a-f", "1+a-g", "1+a-c", "1+a-b", "1+a-d"],
        1 => ["a", "1+a-e", "1+a-f", "1+a-g", "1+a-d", "1+a-c", "1+a-b"],
        _ => panic!("L label out of range: {i}"),
    };
    let bar: [&str; 7] = match i {
        6 => ["1-a", "1-b", "1-c", "1-d", "2-e", "2-f", "2-g"],
        5 => ["1-a", "1-b", "1-c", "1-d", "2-f", "2-e", "2-g"],
        4 => ["1-a", "1-b", "1-c", "1-d", "2-g", "2-f", "2-e"],
        3 => ["1-a", "e-a", "f-a", "g-a", "1+b-a", "1+c-a", "1+d-a"],
        2 => ["1-a", "e-a", "f-a", "g-a", "1+c-a", "1+b-a", "1+d-a"],
        1 => ["1-a", "e-a", "f-a", "g-a", "1+d-a", "1+c-a", "1+b-a"],
        _ => unreachable!(),
    };
    GroupElement::from_forms(&(if barred { bar } else { plain }).map(lf))
}

/// The transformation displayed for a label.
pub fn label_display(id: CosetId) -> GroupElement {
    match (id.k_parts(), id.l_parts()) {
        (Some((pos, k)), _) => k_label_display(pos, k),
        (_, Some((i, bar))) => l_label_display(i, bar),
        _ => unreachable!(),
    }
}

/// Image of an L-label under `Φ(g)`, as `(i, barred)`.
pub type SignedLabel = (u8, bool);

/// The signed permutation `Φ(g)` of `{1..6}` induced on `G_L\M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PermImage(pub [SignedLabel; 6]);

impl PermImage {
    pub fn identity() -> Self {
        PermImage(std::array::from_fn(|i| (i as u8 + 1, false)))
    }

    pub fn image(&self, i: u8) -> SignedLabel {
        self.0[i as usize - 1]
    }

    pub fn bar_count(&self) -> usize {
        self.0.iter().filter(|(_, b)| *b).count()
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = [false; 6];
        for &(i, _) in &self.0 {
            seen[i as usize - 1] = true;
        }
        seen.iter().all(|&s| s)
    }
}

impl fmt::Display for PermImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, &(j, bar))| format!("{}→{}{}", i + 1, j, if bar { "bar" } else { "" }))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// The enumerated group together with its coset tables.
pub struct Structure {
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, u16>,
    /// `right_gen[i][k]` = index of `elements[i] * generator k`.
    right_gen: Vec<[u16; 6]>,
    /// `action[i][σ]` = `σ · elements[i]` for every coset.
    action: Vec<[u8; N_COSETS]>,
    reps: [GroupElement; N_COSETS],
    gk_size: usize,
    gl_size: usize,
    w0: u16,
    opposite: [[bool; N_COSETS]; N_COSETS],
}

impl Structure {
    pub fn build() -> Result<Structure, GroupError> {
        let gens = generators();
        let elements = closure(&gens, CLOSURE_BUDGET)?;
        let index: HashMap<GroupElement, u16> =
            elements.iter().enumerate().map(|(i, g)| (*g, i as u16)).collect();
        let lookup = |g: &GroupElement| index.get(g).copied().ok_or(GroupError::NotInGroup);

        let mut right_gen = Vec::with_capacity(elements.len());
        for g in &elements {
            let mut row = [0u16; 6];
            for (slot, s) in row.iter_mut().zip(&gens) {
                *slot = lookup(&g.checked_mul(s)?)?;
            }
            right_gen.push(row);
        }

        let gk = subgroup(&gk_generators())?;
        let gl = subgroup(&gl_generators())?;
        let k_part = partition(&elements, &index, &gk_generators())?;
        let l_part = partition(&elements, &index, &gl_generators())?;

        // Attach labels through the displayed transformations.
        let mut k_block_label = vec![None; k_part.blocks];
        let mut l_block_label = vec![None; l_part.blocks];
        for id in CosetId::all() {
            let g = lookup(&label_display(id)).map_err(|_| {
                GroupError::LabelingMismatch(format!("display of {id} is not in M"))
            })? as usize;
            let (table, part) = match id.side() {
                Side::K => (&mut k_block_label, &k_part),
                Side::L => (&mut l_block_label, &l_part),
            };
            let block = part.block_of[g] as usize;
            if let Some(prev) = table.get(block).copied().flatten() {
                return Err(GroupError::LabelingMismatch(format!("{prev} and {id} share a coset")));
            }
            if block >= table.len() {
                return Err(GroupError::LabelingMismatch(format!("bad block for {id}")));
            }
            table[block] = Some(id);
        }
        if k_block_label.iter().chain(&l_block_label).any(Option::is_none) || k_part.blocks + l_part.blocks != N_COSETS
        {
            return Err(GroupError::LabelingMismatch("unlabeled coset".into()));
        }
        let k_of = |i: usize| k_block_label[k_part.block_of[i] as usize].expect("labeled");
        let l_of = |i: usize| l_block_label[l_part.block_of[i] as usize].expect("labeled");

        let mut reps: [Option<GroupElement>; N_COSETS] = [None; N_COSETS];
        for (i, g) in elements.iter().enumerate() {
            for id in [k_of(i), l_of(i)] {
                let slot = &mut reps[id.index()];
                if slot.map_or(true, |r| g < &r) {
                    *slot = Some(*g);
                }
            }
        }
        let reps = reps.map(|r| r.expect("every coset is nonempty"));

        // σ·s for each generator s, then propagate along the BFS tree.
        let mut gen_action = [[0u8; N_COSETS]; 6];
        for (k, s) in gens.iter().enumerate() {
            for id in CosetId::all() {
                let h = lookup(&reps[id.index()].checked_mul(s)?)? as usize;
                let image = match id.side() {
                    Side::K => k_of(h),
                    Side::L => l_of(h),
                };
                gen_action[k][id.index()] = image.0;
            }
        }
        let mut action = vec![[u8::MAX; N_COSETS]; elements.len()];
        action[0] = std::array::from_fn(|i| i as u8);
        let mut queue = VecDeque::from([0usize]);
        let mut done = vec![false; elements.len()];
        done[0] = true;
        while let Some(i) = queue.pop_front() {
            for k in 0..6 {
                let j = right_gen[i][k] as usize;
                if !done[j] {
                    done[j] = true;
                    action[j] = action[i].map(|s| gen_action[k][s as usize]);
                    queue.push_back(j);
                }
            }
        }

        let w0 = lookup(&central_involution_word())?;
        let mut opposite = [[false; N_COSETS]; N_COSETS];
        for i in 0..elements.len() {
            let j = lookup(&elements[w0 as usize].mul(&elements[i]))? as usize;
            for s in [k_of(i), l_of(i)] {
                for t in [k_of(j), l_of(j)] {
                    opposite[s.index()][t.index()] = true;
                }
            }
        }

        Ok(Structure {
            elements,
            index,
            right_gen,
            action,
            reps,
            gk_size: gk.len(),
            gl_size: gl.len(),
            w0,
            opposite,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }

    pub fn gk_order(&self) -> usize {
        self.gk_size
    }

    pub fn gl_order(&self) -> usize {
        self.gl_size
    }

    /// Index of `elements[i] * generator`.
    pub fn right_mul_generator(&self, i: usize, gen: Generator) -> usize {
        let k = Generator::ALL.iter().position(|&g| g == gen).expect("listed");
        self.right_gen[i][k] as usize
    }

    pub fn w0(&self) -> &GroupElement {
        &self.elements[self.w0 as usize]
    }

    /// Canonical representative: the lexicographically least member.
    pub fn rep(&self, id: CosetId) -> &GroupElement {
        &self.reps[id.index()]
    }

    /// `σ · elements[i]`.
    pub fn act_index(&self, id: CosetId, i: usize) -> CosetId {
        CosetId(self.action[i][id.index()])
    }

    /// `σ · g` for any `g ∈ M`.
    pub fn act(&self, id: CosetId, g: &GroupElement) -> Option<CosetId> {
        self.index_of(g).map(|i| self.act_index(id, i))
    }

    /// Cosets `G_K g` and `G_L g`.
    pub fn cosets_of_index(&self, i: usize) -> (CosetId, CosetId) {
        (self.act_index(CosetId::p(0), i), self.act_index(CosetId::l(6), i))
    }

    pub fn coset_members(&self, id: CosetId) -> Vec<&GroupElement> {
        let side_origin = match id.side() {
            Side::K => CosetId::p(0),
            Side::L => CosetId::l(6),
        };
        (0..self.order())
            .filter(|&i| self.act_index(side_origin, i) == id)
            .map(|i| &self.elements[i])
            .collect()
    }

    /// Some member of `σ` equals `w0` times some member of `τ`.
    pub fn is_opposite(&self, s: CosetId, t: CosetId) -> bool {
        self.opposite[s.index()][t.index()]
    }

    pub fn phi_index(&self, i: usize) -> PermImage {
        PermImage(std::array::from_fn(|j| {
            let img = self.act_index(CosetId::l(j as u8 + 1), i);
            img.l_parts().expect("L cosets map to L cosets")
        }))
    }

    pub fn phi(&self, g: &GroupElement) -> Option<PermImage> {
        self.index_of(g).map(|i| self.phi_index(i))
    }

    pub fn to_tables(&self) -> GroupTables {
        GroupTables {
            version: CACHE_VERSION,
            order: self.order(),
            generators: Generator::ALL.iter().map(|g| (g.name().to_string(), g.element())).collect(),
            w0: *self.w0(),
            cosets: CosetId::all().map(|id| CosetEntry { id, side: id.side(), rep: *self.rep(id) }).collect(),
            elements: self.elements.clone(),
        }
    }
}

struct Partition {
    block_of: Vec<u16>,
    blocks: usize,
}

/// Right cosets `Hg` as orbits of left multiplication by `H`'s generators.
fn partition(
    elements: &[GroupElement],
    index: &HashMap<GroupElement, u16>,
    h_gens: &[GroupElement],
) -> Result<Partition, GroupError> {
    let mut block_of = vec![u16::MAX; elements.len()];
    let mut blocks = 0usize;
    for start in 0..elements.len() {
        if block_of[start] != u16::MAX {
            continue;
        }
        block_of[start] = blocks as u16;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for s in h_gens {
                let j = *index.get(&s.checked_mul(&elements[i])?).ok_or(GroupError::NotInGroup)? as usize;
                if block_of[j] == u16::MAX {
                    block_of[j] = blocks as u16;
                    queue.push_back(j);
                }
            }
        }
        blocks += 1;
    }
    Ok(Partition { block_of, blocks })
}

/// The shared structure, built on first use.
pub fn structure() -> &'static Structure {
    static CELL: OnceLock<Structure> = OnceLock::new();
    CELL.get_or_init(|| Structure::build().expect("group construction is deterministic and verified by tests"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetEntry {
    pub id: CosetId,
    pub side: Side,
    pub rep: GroupElement,
}

/// Serializable snapshot of the group and coset tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTables {
    pub version: u32,
    pub order: usize,
    pub generators: Vec<(String, GroupElement)>,
    pub w0: GroupElement,
    pub cosets: Vec<CosetEntry>,
    pub elements: Vec<GroupElement>,
}

impl GroupTables {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tables serialize")
    }

    /// Parses a cache and checks it entry by entry against `reference`.
    pub fn load(json: &str, reference: &Structure) -> Result<GroupTables, GroupError> {
        let tables: GroupTables = serde_json::from_str(json).map_err(|e| GroupError::Cache(e.to_string()))?;
        if tables.version != CACHE_VERSION {
            return Err(GroupError::Cache(format!("version {} != {CACHE_VERSION}", tables.version)));
        }
        if tables != reference.to_tables() {
            return Err(GroupError::Cache("contents differ from the enumerated group".into()));
        }
        Ok(tables)
    }
}
