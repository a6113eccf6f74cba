//! Vertex enumeration and coordinate topology of the cycle products `C_m^N`.
//!
//! Elements of `Z_m^N` are written in signed coordinates
//! `{-floor((m-1)/2), ..., floor(m/2)}`; for m = 4 the value 2 is its own
//! negation. Vertices are indexed by increasing path distance to the origin,
//! then by increasing number of level-2 coordinates, then lexicographically
//! on the signed coordinates, so each level set occupies one contiguous
//! index range.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use crate::config::Budget;
use crate::error::Error;
use crate::Result;

pub const SUPPORTED_MODULI: [u32; 3] = [3, 4, 5];

pub fn validate_modulus(m: u32) -> Result<()> {
    if SUPPORTED_MODULI.contains(&m) {
        Ok(())
    } else {
        Err(Error::UnsupportedModulus(m))
    }
}

/// Maximal coordinate level, `floor(m/2)`.
pub fn max_level(m: u32) -> i8 {
    (m / 2) as i8
}

/// Signed representative of `x` modulo `m` in the range
/// `{-floor((m-1)/2), ..., floor(m/2)}`.
pub fn signed_rep(x: i32, m: u32) -> i8 {
    let m = m as i32;
    let lo = -((m - 1) / 2);
    (((x - lo).rem_euclid(m)) + lo) as i8
}

/// A vertex of `C_m^N` in signed-coordinate form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    m: u32,
    coords: Vec<i8>,
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl GroupElement {
    pub fn new(m: u32, coords: Vec<i8>) -> Result<Self> {
        validate_modulus(m)?;
        if coords.is_empty() {
            return Err(Error::ZeroDimension);
        }
        let lo = -(((m - 1) / 2) as i8);
        let hi = max_level(m);
        for &c in &coords {
            if c < lo || c > hi {
                return Err(Error::BadConfig(format!(
                    "coordinate {c} outside the signed range [{lo}, {hi}] for m = {m}"
                )));
            }
        }
        Ok(GroupElement { m, coords })
    }

    pub fn origin(m: u32, n: usize) -> Result<Self> {
        Self::new(m, vec![0; n])
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn coords(&self) -> &[i8] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Level of coordinate `k`: the absolute value of the signed coordinate.
    pub fn level(&self, k: usize) -> u32 {
        self.coords[k].unsigned_abs() as u32
    }

    /// Path distance to the origin: the sum of all coordinate levels.
    pub fn path_distance(&self) -> u32 {
        self.coords.iter().map(|c| c.unsigned_abs() as u32).sum()
    }

    pub fn level_signature(&self) -> LevelSignature {
        let mm = (self.m / 2) as usize;
        let mut counts = vec![0u32; mm];
        for &c in &self.coords {
            let l = c.unsigned_abs() as usize;
            if l > 0 {
                counts[l - 1] += 1;
            }
        }
        LevelSignature { m: self.m, n: self.coords.len(), counts }
    }

    /// The two neighbors per coordinate, `v ± e_k`, as a deduplicated set.
    /// Every vertex has exactly 2N distinct neighbors for m >= 3.
    pub fn neighbors(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(2 * self.coords.len());
        for k in 0..self.coords.len() {
            for step in [1i32, -1] {
                let mut c = self.coords.clone();
                c[k] = signed_rep(c[k] as i32 + step, self.m);
                let g = GroupElement { m: self.m, coords: c };
                if !out.contains(&g) {
                    out.push(g);
                }
            }
        }
        out
    }

    /// Neighbors of `v` in coordinate `k` whose level there is one higher.
    /// Unique when the coordinate is non-null; the pair `v ± e_k` when null.
    pub fn raise(&self, k: usize) -> Result<Vec<GroupElement>> {
        self.check_coord(k)?;
        if self.level(k) as i8 >= max_level(self.m) {
            return Err(Error::MaxLevel { k });
        }
        Ok(self.coord_steps(k, self.level(k) + 1))
    }

    /// Neighbors of `v` in coordinate `k` whose level there is one lower.
    /// Unique except for m even at the top level, where `v ∓ e_k` is a pair.
    pub fn lower(&self, k: usize) -> Result<Vec<GroupElement>> {
        self.check_coord(k)?;
        if self.level(k) == 0 {
            return Err(Error::NullLevel { k });
        }
        Ok(self.coord_steps(k, self.level(k) - 1))
    }

    fn coord_steps(&self, k: usize, target_level: u32) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(2);
        for step in [1i32, -1] {
            let mut c = self.coords.clone();
            c[k] = signed_rep(c[k] as i32 + step, self.m);
            if c[k].unsigned_abs() as u32 == target_level {
                let g = GroupElement { m: self.m, coords: c };
                if !out.contains(&g) {
                    out.push(g);
                }
            }
        }
        out
    }

    /// Negates coordinate `k`; an involution. For m = 4 a level-2 coordinate
    /// is fixed since 2 = -2 mod 4.
    pub fn reflect(&self, k: usize) -> Result<GroupElement> {
        self.check_coord(k)?;
        let mut c = self.coords.clone();
        c[k] = signed_rep(-(c[k] as i32), self.m);
        Ok(GroupElement { m: self.m, coords: c })
    }

    fn check_coord(&self, k: usize) -> Result<()> {
        if k >= self.coords.len() {
            return Err(Error::BadCoordinate { k, n: self.coords.len() });
        }
        Ok(())
    }

    fn sort_key(&self) -> (u32, u32, Vec<i8>) {
        let q2 = self.coords.iter().filter(|c| c.unsigned_abs() == 2).count() as u32;
        (self.path_distance(), q2, self.coords.clone())
    }
}

/// Counts of coordinates at each level 1..floor(m/2).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelSignature {
    m: u32,
    n: usize,
    counts: Vec<u32>,
}

impl fmt::Display for LevelSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.len() == 1 {
            write!(f, "S_{}", self.counts[0])
        } else {
            write!(f, "S_{{{},{}}}", self.counts[0], self.counts[1])
        }
    }
}

impl LevelSignature {
    pub fn new(m: u32, n: usize, counts: Vec<u32>) -> Result<Self> {
        validate_modulus(m)?;
        if counts.len() != (m / 2) as usize {
            return Err(Error::InfeasibleSignature(format!(
                "expected {} level counts for m = {m}, got {}",
                m / 2,
                counts.len()
            )));
        }
        let total: u32 = counts.iter().sum();
        if total as usize > n {
            return Err(Error::InfeasibleSignature(format!(
                "{total} non-null coordinates do not fit in dimension {n}"
            )));
        }
        Ok(LevelSignature { m, n, counts })
    }

    /// Signature with `p` level-one and (for m = 4, 5) `q` level-two coords.
    pub fn from_pq(m: u32, n: usize, p: u32, q: u32) -> Result<Self> {
        let counts = if m == 3 {
            if q != 0 {
                return Err(Error::InfeasibleSignature("m = 3 has no level-2 coordinates".into()));
            }
            vec![p]
        } else {
            vec![p, q]
        };
        Self::new(m, n, counts)
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Number of level-one coordinates.
    pub fn p(&self) -> u32 {
        self.counts[0]
    }

    /// Number of level-two coordinates (zero for m = 3).
    pub fn q(&self) -> u32 {
        self.counts.get(1).copied().unwrap_or(0)
    }

    /// Common path distance of the member vertices.
    pub fn distance(&self) -> u32 {
        self.counts.iter().enumerate().map(|(i, c)| (i as u32 + 1) * c).sum()
    }

    pub fn nonnull(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// Number of vertices carrying this signature: choose the positions
    /// multinomially, then signs (level m/2 is self-negating for even m).
    pub fn cardinality(&self) -> u64 {
        let mut card = 1u64;
        let mut remaining = self.n as u64;
        for (i, &c) in self.counts.iter().enumerate() {
            card *= binomial(remaining, c as u64);
            remaining -= c as u64;
            let level = i as u32 + 1;
            let self_negating = self.m % 2 == 0 && level == self.m / 2;
            if !self_negating {
                card *= 1u64 << c;
            }
        }
        card
    }

    /// Every feasible signature for `(m, n)`, in table order:
    /// by distance, then by the level-2 count.
    pub fn all_feasible(m: u32, n: usize) -> Result<Vec<LevelSignature>> {
        validate_modulus(m)?;
        let mut out = Vec::new();
        if m == 3 {
            for p in 0..=n as u32 {
                out.push(LevelSignature { m, n, counts: vec![p] });
            }
        } else {
            for q in 0..=n as u32 {
                for p in 0..=(n as u32 - q) {
                    out.push(LevelSignature { m, n, counts: vec![p, q] });
                }
            }
            out.sort_by_key(|s| (s.distance(), s.q()));
        }
        Ok(out)
    }

    fn of_element(v: &GroupElement) -> LevelSignature {
        v.level_signature()
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// The ordered vertex set of `C_m^N` with index lookups and per-signature
/// block ranges. Immutable after construction; all queries are pure.
#[derive(Debug, Clone)]
pub struct VertexTable {
    m: u32,
    n: usize,
    elements: Vec<GroupElement>,
    index: HashMap<Vec<i8>, usize>,
    blocks: Vec<(LevelSignature, Range<usize>)>,
}

impl VertexTable {
    /// Enumerates all m^N vertices in table order under the given budget.
    pub fn new(m: u32, n: usize, budget: &Budget) -> Result<Self> {
        validate_modulus(m)?;
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let size = (m as u128).pow(n as u32);
        budget.check(size)?;
        let size = size as usize;

        let lo = -(((m - 1) / 2) as i32);
        let hi = max_level(m) as i32;
        let mut elements = Vec::with_capacity(size);
        let mut coords = vec![lo; n];
        'all: loop {
            elements.push(GroupElement {
                m,
                coords: coords.iter().map(|&c| c as i8).collect(),
            });
            let mut k = n;
            loop {
                if k == 0 {
                    break 'all;
                }
                k -= 1;
                if coords[k] < hi {
                    coords[k] += 1;
                    for c in coords.iter_mut().skip(k + 1) {
                        *c = lo;
                    }
                    break;
                }
                coords[k] = lo;
            }
        }
        debug_assert_eq!(elements.len(), size);
        elements.sort_by_key(|e| e.sort_key());

        let mut index = HashMap::with_capacity(size);
        for (i, e) in elements.iter().enumerate() {
            index.insert(e.coords.clone(), i);
        }

        let mut blocks: Vec<(LevelSignature, Range<usize>)> = Vec::new();
        for (i, e) in elements.iter().enumerate() {
            let sig = LevelSignature::of_element(e);
            match blocks.last_mut() {
                Some((s, r)) if *s == sig => r.end = i + 1,
                _ => blocks.push((sig, i..i + 1)),
            }
        }

        Ok(VertexTable { m, n, elements, index, blocks })
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn index_of(&self, v: &GroupElement) -> usize {
        self.index[v.coords()]
    }

    pub fn distance(&self, i: usize) -> u32 {
        self.elements[i].path_distance()
    }

    /// Blocks in table order; ranges partition `0..len()`.
    pub fn blocks(&self) -> &[(LevelSignature, Range<usize>)] {
        &self.blocks
    }

    /// Contiguous index range of one level set.
    pub fn level_set(&self, sig: &LevelSignature) -> Result<Range<usize>> {
        if sig.modulus() != self.m || sig.dim() != self.n {
            return Err(Error::InfeasibleSignature(format!(
                "signature {sig} does not belong to C_{}^{}",
                self.m, self.n
            )));
        }
        self.blocks
            .iter()
            .find(|(s, _)| s == sig)
            .map(|(_, r)| r.clone())
            .ok_or_else(|| Error::InfeasibleSignature(format!("{sig} has no vertices")))
    }

    /// Indices of the ball `{v : d(v) <= k}`; contiguous by construction.
    pub fn ball(&self, k: u32) -> Range<usize> {
        let end = self.elements.partition_point(|e| e.path_distance() <= k);
        0..end
    }

    pub fn max_distance(&self) -> u32 {
        self.n as u32 * max_level(self.m) as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(m: u32, n: usize) -> VertexTable {
        VertexTable::new(m, n, &Budget::default()).unwrap()
    }

    fn el(m: u32, coords: &[i8]) -> GroupElement {
        GroupElement::new(m, coords.to_vec()).unwrap()
    }

    #[test]
    fn signed_representatives() {
        assert_eq!(signed_rep(3, 5), -2);
        assert_eq!(signed_rep(4, 5), -1);
        assert_eq!(signed_rep(-3, 5), 2);
        assert_eq!(signed_rep(3, 4), -1);
        assert_eq!(signed_rep(-2, 4), 2);
        assert_eq!(signed_rep(2, 3), -1);
    }

    #[test]
    fn path_distance_examples() {
        assert_eq!(el(4, &[0, 1, 2, 1]).path_distance(), 4);
        assert_eq!(el(4, &[0, 0, 0, 0]).path_distance(), 0);
        assert_eq!(el(5, &[-2, 2, 0, 1]).path_distance(), 5);
    }

    #[test]
    fn level_signature_examples() {
        // equi-level pair in C_4^4
        let a = el(4, &[0, 1, 2, 1]).level_signature();
        let b = el(4, &[-1, 0, 1, 2]).level_signature();
        assert_eq!(a, b);
        assert_eq!(a.counts(), &[2, 1]);

        let o = el(5, &[0, 0, 0]).level_signature();
        assert_eq!(o.counts(), &[0, 0]);

        let c = el(5, &[-2, -2, 1]).level_signature();
        assert_eq!((c.p(), c.q()), (1, 2));
    }

    #[test]
    fn neighbors_examples() {
        let v = el(5, &[0, 1]);
        let nb = v.neighbors();
        assert_eq!(nb.len(), 4);
        for w in [[1, 1], [-1, 1], [0, 2], [0, 0]] {
            assert!(nb.contains(&el(5, &w)));
        }

        let o = el(3, &[0, 0]);
        assert_eq!(o.neighbors().len(), 4);

        // m = 4: both steps from a level-2 coordinate land on distinct vertices
        let two = el(4, &[2]);
        let nb = two.neighbors();
        assert_eq!(nb.len(), 2);
        assert!(nb.contains(&el(4, &[1])) && nb.contains(&el(4, &[-1])));
    }

    #[test]
    fn raise_examples() {
        assert_eq!(el(5, &[-1, 1]).raise(0).unwrap(), vec![el(5, &[-2, 1])]);
        let pair = el(5, &[0, 1]).raise(0).unwrap();
        assert_eq!(pair.len(), 2);
        assert!(pair.contains(&el(5, &[1, 1])) && pair.contains(&el(5, &[-1, 1])));
        assert!(matches!(el(3, &[1]).raise(0), Err(Error::MaxLevel { k: 0 })));
        // m = 4: raising either sign of a level-1 coordinate gives the single
        // self-negating level-2 vertex
        assert_eq!(el(4, &[-1]).raise(0).unwrap(), vec![el(4, &[2])]);
    }

    #[test]
    fn lower_examples() {
        assert_eq!(el(5, &[-1, 1]).lower(0).unwrap(), vec![el(5, &[0, 1])]);
        let pair = el(4, &[2, 0]).lower(0).unwrap();
        assert_eq!(pair.len(), 2);
        assert!(pair.contains(&el(4, &[1, 0])) && pair.contains(&el(4, &[-1, 0])));
        assert!(matches!(el(5, &[0, 1]).lower(0), Err(Error::NullLevel { k: 0 })));
        // odd m at the top level lowers uniquely
        assert_eq!(el(5, &[-2]).lower(0).unwrap(), vec![el(5, &[-1])]);
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(el(5, &[-1, 2]).reflect(0).unwrap(), el(5, &[1, 2]));
        let v = el(5, &[-1, 2]);
        assert_eq!(v.reflect(1).unwrap().reflect(1).unwrap(), v);
        assert_eq!(el(4, &[2, 0]).reflect(0).unwrap(), el(4, &[2, 0]));
    }

    #[test]
    fn table_sizes_and_ordering() {
        let t = table(5, 4);
        assert_eq!(t.len(), 625);
        // distances never decrease along the table
        for i in 1..t.len() {
            assert!(t.distance(i) >= t.distance(i - 1));
        }
        assert_eq!(t.element(0), &el(5, &[0, 0, 0, 0]));

        // indices 74..=121 one-based are the (p,q) = (1,1) block
        let sig = LevelSignature::from_pq(5, 4, 1, 1).unwrap();
        assert_eq!(t.level_set(&sig).unwrap(), 73..121);

        let t3 = table(3, 1);
        assert_eq!(
            t3.elements(),
            &[el(3, &[0]), el(3, &[-1]), el(3, &[1])]
        );
    }

    #[test]
    fn level_set_cardinalities() {
        // Table rows for C_5^4: 1, 8, 24, 8, 32, 48
        let t = table(5, 4);
        let expect = [
            ((0, 0), 1usize, 0usize),
            ((1, 0), 8, 1),
            ((2, 0), 24, 9),
            ((0, 1), 8, 33),
            ((3, 0), 32, 41),
            ((1, 1), 48, 73),
        ];
        for ((p, q), card, start) in expect {
            let sig = LevelSignature::from_pq(5, 4, p, q).unwrap();
            let r = t.level_set(&sig).unwrap();
            assert_eq!(r.len(), card, "cardinality of ({p},{q})");
            assert_eq!(r.start, start, "start of ({p},{q})");
            assert_eq!(sig.cardinality() as usize, card);
        }

        // partition identity for C_3^N
        for n in 1..=5usize {
            let total: u64 = LevelSignature::all_feasible(3, n)
                .unwrap()
                .iter()
                .map(|s| s.cardinality())
                .sum();
            assert_eq!(total, 3u64.pow(n as u32));
        }
    }

    #[test]
    fn infeasible_signature_is_rejected() {
        assert!(LevelSignature::from_pq(5, 2, 2, 1).is_err());
        assert!(LevelSignature::new(6, 2, vec![1, 0]).is_err());
    }

    #[test]
    fn budget_rejects_oversized_tables() {
        let tiny = Budget { max_vertices: 100 };
        assert!(matches!(
            VertexTable::new(5, 4, &tiny),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
