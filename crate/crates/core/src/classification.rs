//! Distances between cosets, types of three-element sets, and orbit
//! partitions under right multiplication by M.

use crate::group::{structure, CosetId, Generator, Side, Structure};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Distance on `G_K\M`: `d(p_{4q+r}, p_{4s+t}) = 4 - 2(δ_qs + δ_rt)` within
/// a sign class and `2 + 2(δ_qs + δ_rt)` across. `None` unless both are K-side.
pub fn hamming_distance(s: CosetId, t: CosetId) -> Option<u8> {
    let (ps, ks) = s.k_parts()?;
    let (pt, kt) = t.k_parts()?;
    let deltas = u8::from(ks / 4 == kt / 4) + u8::from(ks % 4 == kt % 4);
    Some(if ps == pt { 4 - 2 * deltas } else { 2 + 2 * deltas })
}

pub fn is_opposite(s: CosetId, t: CosetId) -> bool {
    structure().is_opposite(s, t)
}

/// The metric on all 44 cosets.
pub fn distance(s: CosetId, t: CosetId) -> u8 {
    if s == t {
        return 0;
    }
    if let Some(d) = hamming_distance(s, t) {
        return d;
    }
    if is_opposite(s, t) {
        4
    } else {
        2
    }
}

/// No two members are swapped by `w0` (i.e. no `{i, ī}` pair).
pub fn is_l_coherent(set: &[CosetId]) -> bool {
    set.iter().all(|s| s.side() == Side::L)
        && set.iter().all(|s| {
            let (i, bar) = s.l_parts().expect("L-side");
            !set.contains(&if bar { CosetId::l(i) } else { CosetId::lbar(i) })
        })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("three-set members must be distinct")]
    NotDistinct,
}

/// An unordered set of three distinct cosets, stored sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ThreeSet([CosetId; 3]);

impl ThreeSet {
    pub fn new(members: [CosetId; 3]) -> Result<Self, SetError> {
        let mut m = members;
        m.sort();
        if m[0] == m[1] || m[1] == m[2] {
            return Err(SetError::NotDistinct);
        }
        Ok(ThreeSet(m))
    }

    pub fn members(&self) -> [CosetId; 3] {
        self.0
    }

    pub fn contains(&self, id: CosetId) -> bool {
        self.0.contains(&id)
    }

    /// Image under right multiplication by `elements[i]`.
    pub fn act_index(&self, s: &Structure, i: usize) -> ThreeSet {
        let mut m = self.0.map(|c| s.act_index(c, i));
        m.sort();
        ThreeSet(m)
    }

    pub fn k_count(&self) -> usize {
        self.0.iter().filter(|c| c.side() == Side::K).count()
    }

    pub fn composition(&self) -> Composition {
        match self.k_count() {
            3 => Composition::KKK,
            2 => Composition::LKK,
            1 => Composition::KLL,
            _ => Composition::LLL,
        }
    }
}

impl fmt::Display for ThreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}, {}}}", self.0[0], self.0[1], self.0[2])
    }
}

/// Which functions a three-set involves: `(L,K,K)` has one L and two K.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Composition {
    LLL,
    KLL,
    LKK,
    KKK,
}

/// Sorted pair distances, e.g. `244`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeSymbol(pub [u8; 3]);

impl TypeSymbol {
    pub const ALLOWED: [TypeSymbol; 5] =
        [TypeSymbol([2, 2, 2]), TypeSymbol([2, 2, 4]), TypeSymbol([2, 4, 4]), TypeSymbol([2, 4, 6]), TypeSymbol([4, 4, 4])];

    pub fn sum(&self) -> u32 {
        self.0.iter().map(|&d| d as u32).sum()
    }
}

impl fmt::Display for TypeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.0[0], self.0[1], self.0[2])
    }
}

impl FromStr for TypeSymbol {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits: Vec<u8> = s.bytes().filter(u8::is_ascii_digit).map(|b| b - b'0').collect();
        match digits[..] {
            [x, y, z] => Ok(TypeSymbol([x, y, z])),
            _ => Err(format!("bad type symbol {s:?}")),
        }
    }
}

impl Serialize for TypeSymbol {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TypeSymbol {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

pub fn type_of(set: &ThreeSet) -> TypeSymbol {
    let [x, y, z] = set.0;
    let mut d = [distance(x, y), distance(x, z), distance(y, z)];
    d.sort();
    TypeSymbol(d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Three K-cosets.
    K3,
    /// Three L-cosets.
    L3,
    /// One K-coset and two L-cosets.
    KL2,
    /// One L-coset and two K-cosets.
    LK2,
    /// All three-element subsets of the 44 cosets.
    T3,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::K3, Family::L3, Family::KL2, Family::LK2, Family::T3];

    pub fn name(self) -> &'static str {
        match self {
            Family::K3 => "K3",
            Family::L3 => "L3",
            Family::KL2 => "KL2",
            Family::LK2 => "LK2",
            Family::T3 => "T3",
        }
    }

    pub fn contains(self, set: &ThreeSet) -> bool {
        match self {
            Family::K3 => set.k_count() == 3,
            Family::L3 => set.k_count() == 0,
            Family::KL2 => set.k_count() == 1,
            Family::LK2 => set.k_count() == 2,
            Family::T3 => true,
        }
    }

    pub fn members(self) -> Vec<ThreeSet> {
        let ids: Vec<CosetId> = CosetId::all().collect();
        let mut out = Vec::new();
        for i in 0..ids.len() {
            for j in i + 1..ids.len() {
                for k in j + 1..ids.len() {
                    let set = ThreeSet([ids[i], ids[j], ids[k]]);
                    if self.contains(&set) {
                        out.push(set);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family {s:?} (expected K3, L3, KL2, LK2 or T3)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    /// Lexicographically least member.
    pub representative: ThreeSet,
    pub size: usize,
    #[serde(rename = "type")]
    pub type_symbol: TypeSymbol,
    pub composition: Composition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub family: Family,
    pub orbits: Vec<Orbit>,
    pub total: usize,
}

/// An orbit partition with a member lookup.
pub struct OrbitPartition {
    pub report: OrbitReport,
    orbit_of: HashMap<ThreeSet, usize>,
}

impl OrbitPartition {
    pub fn orbit_of(&self, set: &ThreeSet) -> Option<&Orbit> {
        self.orbit_of.get(set).map(|&i| &self.report.orbits[i])
    }

    pub fn orbit_index(&self, set: &ThreeSet) -> Option<usize> {
        self.orbit_of.get(set).copied()
    }
}

fn generator_indices(s: &Structure) -> Vec<usize> {
    Generator::ALL.iter().map(|g| s.index_of(&g.element()).expect("generators lie in M")).collect()
}

/// Breadth-first orbit sweep over the family under the generators of M.
/// Orbits are listed in order of their representatives.
pub fn orbit_partition(family: Family) -> OrbitPartition {
    let s = structure();
    let gens = generator_indices(s);
    let members = family.members();
    let mut orbit_of: HashMap<ThreeSet, usize> = HashMap::with_capacity(members.len());
    let mut found: Vec<(ThreeSet, usize)> = Vec::new();
    for start in &members {
        if orbit_of.contains_key(start) {
            continue;
        }
        let id = found.len();
        orbit_of.insert(*start, id);
        let mut queue = VecDeque::from([*start]);
        let mut size = 0;
        let mut least = *start;
        while let Some(set) = queue.pop_front() {
            size += 1;
            least = least.min(set);
            for &g in &gens {
                let image = set.act_index(s, g);
                if !orbit_of.contains_key(&image) {
                    orbit_of.insert(image, id);
                    queue.push_back(image);
                }
            }
        }
        found.push((least, size));
    }
    // renumber by representative
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by_key(|&i| found[i].0);
    let mut renumber = vec![0; found.len()];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new;
    }
    for v in orbit_of.values_mut() {
        *v = renumber[*v];
    }
    let orbits = order
        .iter()
        .map(|&i| {
            let (rep, size) = found[i];
            Orbit { representative: rep, size, type_symbol: type_of(&rep), composition: rep.composition() }
        })
        .collect();
    OrbitPartition { report: OrbitReport { family, orbits, total: members.len() }, orbit_of }
}

pub fn orbits(family: Family) -> OrbitReport {
    orbit_partition(family).report
}

/// Product-action count: with `anchor` fixed, the stabilizer of `anchor`
/// acts on pairs from `pool`; each suborbit size times the orbit length of
/// `anchor` is the size of the corresponding orbit of `{anchor} ∪ pair`.
/// Returned sorted, keyed by the least pair in each suborbit.
pub fn product_action_sizes(anchor: CosetId, pool: Side) -> BTreeMap<(CosetId, CosetId), usize> {
    let s = structure();
    let mut anchor_orbit = vec![anchor];
    let mut queue = VecDeque::from([anchor]);
    let gens = generator_indices(s);
    while let Some(c) = queue.pop_front() {
        for &g in &gens {
            let img = s.act_index(c, g);
            if !anchor_orbit.contains(&img) {
                anchor_orbit.push(img);
                queue.push_back(img);
            }
        }
    }
    let stabilizer: Vec<usize> = (0..s.order()).filter(|&i| s.act_index(anchor, i) == anchor).collect();
    let ids: Vec<CosetId> = CosetId::all().filter(|c| c.side() == pool && *c != anchor).collect();
    let mut seen: HashMap<(CosetId, CosetId), ()> = HashMap::new();
    let mut out = BTreeMap::new();
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            let pair = (ids[i], ids[j]);
            if seen.contains_key(&pair) {
                continue;
            }
            let mut suborbit = Vec::new();
            for &h in &stabilizer {
                let (x, y) = (s.act_index(pair.0, h), s.act_index(pair.1, h));
                let p = (x.min(y), x.max(y));
                if seen.insert(p, ()).is_none() {
                    suborbit.push(p);
                }
            }
            let least = *suborbit.iter().min().expect("contains the pair itself");
            out.insert(least, suborbit.len() * anchor_orbit.len());
        }
    }
    out
}
