//! The adjacency operator of `C_m^N` and its exact integer pieces: outer,
//! inner and neutral adjacencies, per-block subadjacencies, coordinate
//! reflections, the level-one reflection sum, the twisted outer adjacency,
//! and commutators. No floating point enters this module.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::Range;

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::error::Error;
use crate::group::{LevelSignature, VertexTable};
#[cfg(test)]
use crate::group::GroupElement;
use crate::Result;

/// Sparse integer matrix on the ordered vertex set. Rows index the codomain,
/// columns the domain: entry (i, j) is the coefficient with which a unit of
/// input at vertex j arrives at vertex i. Equality compares the matrix
/// alone; the support annotations are metadata.
#[derive(Debug, Clone)]
pub struct IntOperator {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), i64>,
    /// Level signature the domain is declared to live on, when known.
    domain_support: Option<LevelSignature>,
    /// Level signature the codomain is declared to live on, when known.
    codomain_support: Option<LevelSignature>,
}

impl PartialEq for IntOperator {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl Eq for IntOperator {}

impl IntOperator {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntOperator { rows, cols, entries: BTreeMap::new(), domain_support: None, codomain_support: None }
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = BTreeMap::new();
        for i in 0..n {
            entries.insert((i, i), 1);
        }
        IntOperator { rows: n, cols: n, entries, domain_support: None, codomain_support: None }
    }

    /// 0/1 diagonal projector onto an index range.
    pub fn projector(n: usize, support: &Range<usize>) -> Self {
        let mut entries = BTreeMap::new();
        for i in support.clone() {
            entries.insert((i, i), 1);
        }
        IntOperator { rows: n, cols: n, entries, domain_support: None, codomain_support: None }
    }

    pub fn domain_support(&self) -> Option<&LevelSignature> {
        self.domain_support.as_ref()
    }

    pub fn codomain_support(&self) -> Option<&LevelSignature> {
        self.codomain_support.as_ref()
    }

    /// Declares the supports; panics if any entry lies outside them.
    pub fn with_supports(
        mut self,
        table: &VertexTable,
        domain: LevelSignature,
        codomain: LevelSignature,
    ) -> Result<Self> {
        let dom = table.level_set(&domain)?;
        let cod = table.level_set(&codomain)?;
        for (&(i, j), _) in &self.entries {
            if !cod.contains(&i) || !dom.contains(&j) {
                return Err(Error::InfeasibleSignature(format!(
                    "entry ({i}, {j}) lies outside the declared supports {codomain} x {domain}"
                )));
            }
        }
        self.domain_support = Some(domain);
        self.codomain_support = Some(codomain);
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        assert!(i < self.rows && j < self.cols);
        if v == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: i64) {
        self.set(i, j, self.get(i, j) + v);
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    pub fn max_abs(&self) -> i64 {
        self.entries.values().map(|v| v.abs()).max().unwrap_or(0)
    }

    pub fn transpose(&self) -> Self {
        let mut entries = BTreeMap::new();
        for (&(i, j), &v) in &self.entries {
            entries.insert((j, i), v);
        }
        IntOperator {
            rows: self.cols,
            cols: self.rows,
            entries,
            domain_support: self.codomain_support.clone(),
            codomain_support: self.domain_support.clone(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero(self.rows, self.cols);
        }
        let entries = self.entries.iter().map(|(&k, &v)| (k, v * c)).collect();
        IntOperator {
            rows: self.rows,
            cols: self.cols,
            entries,
            domain_support: self.domain_support.clone(),
            codomain_support: self.codomain_support.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (&(i, j), &v) in &other.entries {
            out.add_to(i, j, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                lhs: format!("{}x{}", self.rows, self.cols),
                rhs: format!("{}x{}", other.rows, other.cols),
            });
        }
        let mut out = IntOperator::zero(self.rows, other.cols);
        for (&(i, k), &a) in &self.entries {
            for (&(_, j), &b) in other.entries.range((k, 0)..(k + 1, 0)) {
                out.add_to(i, j, a * b);
            }
        }
        out.domain_support = other.domain_support.clone();
        out.codomain_support = self.codomain_support.clone();
        Ok(out)
    }

    /// Same-shape copy with entries outside the given row/column ranges
    /// dropped: the two-sided support restriction used for block statements.
    pub fn masked(&self, row_support: &Range<usize>, col_support: &Range<usize>) -> Self {
        let entries = self
            .entries
            .iter()
            .filter(|(&(i, j), _)| row_support.contains(&i) && col_support.contains(&j))
            .map(|(&k, &v)| (k, v))
            .collect();
        IntOperator { rows: self.rows, cols: self.cols, entries, domain_support: None, codomain_support: None }
    }

    /// Entries restricted to columns in the range (domain restriction).
    pub fn masked_cols(&self, col_support: &Range<usize>) -> Self {
        self.masked(&(0..self.rows), col_support)
    }

    pub fn apply_big(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![BigInt::from(0); self.rows];
        for (&(i, j), &a) in &self.entries {
            out[i] += a * &v[j];
        }
        out
    }

    pub fn apply_f64(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![0.0; self.rows];
        for (&(i, j), &a) in &self.entries {
            out[i] += a as f64 * v[j];
        }
        out
    }

    pub fn apply_complex(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for (&(i, j), &a) in &self.entries {
            out[i] += v[j] * a as f64;
        }
        out
    }

    pub fn row_sums(&self) -> Vec<i64> {
        let mut out = vec![0; self.rows];
        for (&(i, _), &v) in &self.entries {
            out[i] += v;
        }
        out
    }

    pub fn trace(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Coordinate-list text: `i j value` per line, sorted, for external diffing.
    pub fn to_triplets(&self) -> String {
        let mut s = String::new();
        for (&(i, j), &v) in &self.entries {
            let _ = writeln!(s, "{i} {j} {v}");
        }
        s
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                lhs: format!("{}x{}", self.rows, self.cols),
                rhs: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(())
    }
}

/// Adjacency operator: symmetric 0/1 with every row summing to 2N.
pub fn adjacency(table: &VertexTable) -> IntOperator {
    let n = table.len();
    let mut a = IntOperator::zero(n, n);
    for j in 0..n {
        for w in table.element(j).neighbors() {
            a.set(table.index_of(&w), j, 1);
        }
    }
    a
}

/// Outer adjacency: moves mass one step away from the origin.
/// Entry (i, j) = 1 iff v_i ~ v_j and d(v_i) = d(v_j) + 1; lower triangular
/// in table order.
pub fn outer_adjacency(table: &VertexTable) -> IntOperator {
    directed_adjacency(table, |di, dj| di == dj + 1)
}

/// Inner adjacency: the adjoint (transpose) of the outer adjacency.
pub fn inner_adjacency(table: &VertexTable) -> IntOperator {
    directed_adjacency(table, |di, dj| di + 1 == dj)
}

/// Neutral adjacency: edges between equi-distance vertices. Zero for m = 4;
/// sign flips at level 1 for m = 3 and at level 2 for m = 5.
pub fn neutral_adjacency(table: &VertexTable) -> IntOperator {
    directed_adjacency(table, |di, dj| di == dj)
}

fn directed_adjacency(table: &VertexTable, keep: impl Fn(u32, u32) -> bool) -> IntOperator {
    let n = table.len();
    let mut a = IntOperator::zero(n, n);
    for j in 0..n {
        let dj = table.distance(j);
        for w in table.element(j).neighbors() {
            let i = table.index_of(&w);
            if keep(table.distance(i), dj) {
                a.set(i, j, 1);
            }
        }
    }
    a
}

/// The k-reflection as a permutation matrix; an involution.
pub fn reflection_op(table: &VertexTable, k: usize) -> Result<IntOperator> {
    let n = table.len();
    let mut a = IntOperator::zero(n, n);
    for i in 0..n {
        let w = table.element(i).reflect(k)?;
        // (rho_k f)(v) = f(reflect_k v): row v, column reflect_k(v)
        a.set(i, table.index_of(&w), 1);
    }
    Ok(a)
}

/// Sum of coordinate reflections over the level-one coordinates of each
/// vertex: (R_1 f)(v) = sum over k with d_k(v) = 1 of f(reflect_k v).
pub fn r1_op(table: &VertexTable) -> IntOperator {
    reflection_sum(table, 1)
}

/// Sum of coordinate reflections over coordinates at the given level.
pub fn reflection_sum(table: &VertexTable, level: u32) -> IntOperator {
    let n = table.len();
    let mut a = IntOperator::zero(n, n);
    for i in 0..n {
        let v = table.element(i);
        for k in 0..v.dim() {
            if v.level(k) == level {
                let w = v.reflect(k).expect("valid coordinate");
                a.add_to(i, table.index_of(&w), 1);
            }
        }
    }
    a
}

/// Transitions reachable by a single adjacency step or the neutral map.
fn allowed_transition(from: &LevelSignature, to: &LevelSignature) -> bool {
    let (p, q) = (from.p() as i64, from.q() as i64);
    let (p2, q2) = (to.p() as i64, to.q() as i64);
    [(p + 1, q), (p - 1, q + 1), (p - 1, q), (p + 1, q - 1), (p, q)].contains(&(p2, q2))
}

/// Restriction of the adjacency operator to the (codomain, domain) block
/// pair; the neutral case (from == to) restricts the neutral adjacency.
pub fn subadjacency(
    table: &VertexTable,
    from: &LevelSignature,
    to: &LevelSignature,
) -> Result<IntOperator> {
    if !allowed_transition(from, to) {
        return Err(Error::InfeasibleSignature(format!(
            "{to} is not reachable from {from} by one adjacency step"
        )));
    }
    let from_range = table.level_set(from)?;
    let to_range = table.level_set(to)?;
    adjacency(table)
        .masked(&to_range, &from_range)
        .with_supports(table, from.clone(), to.clone())
}

/// Twisted outer adjacency from `Sigma_{p,q}` into `Sigma_{p-1,q+1}` (m = 5):
/// lower a level-two coordinate, then reflect it. Equals the commutator of
/// the neutral adjacency with the internal raise.
pub fn twisted_outer(table: &VertexTable, from: &LevelSignature) -> Result<IntOperator> {
    if table.modulus() != 5 {
        return Err(Error::UnsupportedModulus(table.modulus()));
    }
    let (p, q) = (from.p(), from.q());
    if p == 0 {
        return Err(Error::InfeasibleSignature(format!(
            "{from} has no level-one coordinate to convert"
        )));
    }
    let to = LevelSignature::from_pq(5, table.dim(), p - 1, q + 1)?;
    let to_range = table.level_set(&to)?;
    let n = table.len();
    let mut a = IntOperator::zero(n, n);
    for i in to_range {
        let v = table.element(i);
        for k in 0..v.dim() {
            if v.level(k) == 2 {
                let lowered = v.lower(k)?;
                debug_assert_eq!(lowered.len(), 1);
                let w = lowered[0].reflect(k)?;
                a.add_to(i, table.index_of(&w), 1);
            }
        }
    }
    a.with_supports(table, from.clone(), to)
}

/// XY - YX in exact integer arithmetic.
pub fn commutator(x: &IntOperator, y: &IntOperator) -> Result<IntOperator> {
    x.mul(y)?.sub(&y.mul(x)?)
}

/// Exact comparison of two operators.
#[derive(Debug, Clone)]
pub struct CommutatorReport {
    pub lhs: IntOperator,
    pub rhs: IntOperator,
    pub residual: IntOperator,
    pub is_exact_match: bool,
}

impl CommutatorReport {
    pub fn compare(lhs: IntOperator, rhs: IntOperator) -> Result<Self> {
        let residual = lhs.sub(&rhs)?;
        let is_exact_match = residual.is_zero();
        Ok(CommutatorReport { lhs, rhs, residual, is_exact_match })
    }
}

/// Splits A into outer + inner + neutral and checks the pieces agree with
/// the full operator and each other.
pub fn split_consistency(table: &VertexTable) -> Result<()> {
    let a = adjacency(table);
    let ap = outer_adjacency(table);
    let am = inner_adjacency(table);
    let a0 = neutral_adjacency(table);
    if ap.transpose() != am {
        return Err(Error::VerificationFailed("outer adjacency transpose != inner".into()));
    }
    if ap.add(&am)?.add(&a0)? != a {
        return Err(Error::VerificationFailed("A != A_+ + A_- + A_0".into()));
    }
    let expected = 2 * table.dim() as i64;
    if a.row_sums().iter().any(|&s| s != expected) {
        return Err(Error::VerificationFailed("adjacency row sums != 2N".into()));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Exact theorem checks
// ---------------------------------------------------------------------------

use crate::CheckLine;

/// Commutator support lemma: [A_-, A_+] has nonzero entries only at vertex
/// pairs with equal level vectors (positionwise equality of levels).
pub fn samelevel_support_check(table: &VertexTable) -> Result<CheckLine> {
    let ap = outer_adjacency(table);
    let am = inner_adjacency(table);
    let c = commutator(&am, &ap)?;
    let mut pass = true;
    for (i, j, _) in c.entries() {
        let vi = table.element(i);
        let vj = table.element(j);
        if (0..vi.dim()).any(|k| vi.level(k) != vj.level(k)) {
            pass = false;
            break;
        }
    }
    Ok(CheckLine::new("commutator supported on equal level vectors", pass))
}

/// The commutator theorem per level set, asserted with zero integer residual
/// on each (block, block) restriction:
///   m = 3: C = (2N - 3r) I - A_0
///   m = 4: C = 2(N - r) I
///   m = 5: C = (2N - 2p - 3q) I - R_1
pub fn commutator_theorem_check(table: &VertexTable) -> Result<Vec<CheckLine>> {
    commutator_theorem_check_within(table, None)
}

/// Same check restricted to blocks at distance <= max_d when given.
pub fn commutator_theorem_check_within(
    table: &VertexTable,
    max_d: Option<u32>,
) -> Result<Vec<CheckLine>> {
    let n = table.dim() as i64;
    let ap = outer_adjacency(table);
    let am = inner_adjacency(table);
    let a0 = neutral_adjacency(table);
    let c = commutator(&am, &ap)?;
    let r1 = r1_op(table);
    let mut lines = Vec::new();
    for (sig, range) in table.blocks() {
        if max_d.is_some_and(|d| sig.distance() > d) {
            continue;
        }
        let (p, q) = (sig.p() as i64, sig.q() as i64);
        let scalar = match table.modulus() {
            3 => 2 * n - 3 * p,
            4 => 2 * (n - (p + 2 * q)),
            _ => 2 * n - 2 * p - 3 * q,
        };
        let mut rhs = IntOperator::projector(table.len(), range).scale(scalar);
        match table.modulus() {
            3 => rhs = rhs.sub(&a0.masked(range, range))?,
            4 => {}
            _ => rhs = rhs.sub(&r1.masked(range, range))?,
        }
        let report = CommutatorReport::compare(c.masked_cols(range), rhs)?;
        lines.push(CheckLine::new(
            format!("commutator identity on {sig} (scalar {scalar})"),
            report.is_exact_match,
        ));
    }
    Ok(lines)
}

/// Neutral-commutator interchange (m = 5): with the internal raise
/// A_+ = A_{(p,q)->(p-1,q+1)} and its adjoint A_- back from the raised
/// block,
///   A_- (A_0 A_+ - A_+ A_0) = (R_1 - A_0) + TwistedOuter * A_{(p,q)->(p+1,q-1)}
/// as operators on each level set. Infeasible subadjacencies are zero.
pub fn neutral_commutator_check(table: &VertexTable) -> Result<Vec<CheckLine>> {
    neutral_commutator_check_within(table, None)
}

/// Same check restricted to blocks at distance <= max_d when given.
pub fn neutral_commutator_check_within(
    table: &VertexTable,
    max_d: Option<u32>,
) -> Result<Vec<CheckLine>> {
    if table.modulus() != 5 {
        return Err(Error::UnsupportedModulus(table.modulus()));
    }
    let size = table.len();
    let a0 = neutral_adjacency(table);
    let r1 = r1_op(table);
    let n_dim = table.dim() as u32;
    let mut lines = Vec::new();
    for (sig, range) in table.blocks() {
        if max_d.is_some_and(|d| sig.distance() > d) {
            continue;
        }
        let (p, q) = (sig.p(), sig.q());
        let zero = IntOperator::zero(size, size);
        let (raise, back, a0_up) = if p >= 1 && (p - 1 + q + 1) <= n_dim {
            let up = LevelSignature::from_pq(5, table.dim(), p - 1, q + 1)?;
            let up_range = table.level_set(&up)?;
            (
                subadjacency(table, sig, &up)?,
                subadjacency(table, &up, sig)?,
                a0.masked(&up_range, &up_range),
            )
        } else {
            (zero.clone(), zero.clone(), zero.clone())
        };
        let a0_here = a0.masked(range, range);
        let lhs = back.mul(&a0_up.mul(&raise)?.sub(&raise.mul(&a0_here)?)?)?;

        let twist_term = if q >= 1 {
            let lower_sig = LevelSignature::from_pq(5, table.dim(), p + 1, q - 1)?;
            let lower = subadjacency(table, sig, &lower_sig)?;
            twisted_outer(table, &lower_sig)?.mul(&lower)?
        } else {
            zero.clone()
        };
        let rhs = r1.masked(range, range).sub(&a0_here)?.add(&twist_term)?;
        let ok = lhs.masked_cols(range) == rhs.masked_cols(range);
        lines.push(CheckLine::new(format!("neutral commutator interchange on {sig}"), ok));
    }
    Ok(lines)
}

/// Kernel-interchange form of the commutator theorem (m = 5): on each level
/// set, A_- A_+ h = (2N - 2p - 3q) h - R_1 h + A_+ A_- h.
pub fn kernel_interchange_check(table: &VertexTable) -> Result<Vec<CheckLine>> {
    if table.modulus() != 5 {
        return Err(Error::UnsupportedModulus(table.modulus()));
    }
    let n = table.dim() as i64;
    let ap = outer_adjacency(table);
    let am = inner_adjacency(table);
    let r1 = r1_op(table);
    let mut lines = Vec::new();
    for (sig, range) in table.blocks() {
        let (p, q) = (sig.p() as i64, sig.q() as i64);
        let scalar = 2 * n - 2 * p - 3 * q;
        let lhs = am.mul(&ap)?.masked_cols(range);
        let rhs = IntOperator::projector(table.len(), range)
            .scale(scalar)
            .sub(&r1.masked(range, range))?
            .add(&ap.mul(&am)?.masked_cols(range))?;
        lines.push(CheckLine::new(
            format!("inner-outer interchange on {sig} (scalar {scalar})"),
            lhs == rhs,
        ));
    }
    Ok(lines)
}

/// Minimal-polynomial bound for the neutral adjacency on each level set
/// (m = 5): the powers A_0^0, ..., A_0^{q+1} restricted to the block are
/// linearly dependent (Krylov rank deficiency).
pub fn neutral_minimal_polynomial_check(table: &VertexTable) -> Result<Vec<CheckLine>> {
    use num_bigint::BigInt;
    if table.modulus() != 5 {
        return Err(Error::UnsupportedModulus(table.modulus()));
    }
    let a0 = neutral_adjacency(table);
    let mut lines = Vec::new();
    for (sig, range) in table.blocks() {
        let q = sig.q() as usize;
        let block = a0.masked(range, range);
        let b = range.len();
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(q + 2);
        let mut power = IntOperator::projector(table.len(), range);
        for _ in 0..=(q + 1) {
            let mut flat = vec![BigInt::from(0); b * b];
            for (i, j, v) in power.entries() {
                flat[(i - range.start) * b + (j - range.start)] = BigInt::from(v);
            }
            rows.push(flat);
            power = block.mul(&power)?;
        }
        let rank = crate::exact::int_rank(&rows);
        lines.push(CheckLine::new(
            format!("neutral adjacency on {sig} annihilated by degree <= {}", q + 1),
            rank <= q + 1,
        ));
    }
    Ok(lines)
}

/// Exact eigenvalue-range certificates: the products over the candidate
/// integer eigenvalues annihilate the reflection sum and the neutral
/// adjacency on each level set.
pub fn reflection_spectrum_check(table: &VertexTable) -> Result<Vec<CheckLine>> {
    if table.modulus() != 5 {
        return Err(Error::UnsupportedModulus(table.modulus()));
    }
    let r1 = r1_op(table);
    let a0 = neutral_adjacency(table);
    let mut lines = Vec::new();
    for (sig, range) in table.blocks() {
        let proj = IntOperator::projector(table.len(), range);
        let annihilates = |op: &IntOperator, eigenvalues: Vec<i64>| -> Result<bool> {
            let block = op.masked(range, range);
            let mut prod = proj.clone();
            for ev in eigenvalues {
                prod = block.sub(&proj.scale(ev))?.mul(&prod)?;
            }
            Ok(prod.is_zero())
        };
        let p = sig.p();
        let q = sig.q();
        let r1_ok = annihilates(&r1, (0..=p).map(|t| 2 * t as i64 - p as i64).collect())?;
        let a0_ok = annihilates(&a0, (0..=q).map(|s| 2 * s as i64 - q as i64).collect())?;
        lines.push(CheckLine::new(
            format!("reflection sum spectrum on {sig} inside [-p, p]"),
            r1_ok,
        ));
        lines.push(CheckLine::new(
            format!("neutral adjacency spectrum on {sig} inside [-q, q]"),
            a0_ok,
        ));
    }
    Ok(lines)
}

/// R_1 commutes with the neutral adjacency on each level set.
pub fn r1_neutral_commute_check(table: &VertexTable) -> Result<CheckLine> {
    let r1 = r1_op(table);
    let a0 = neutral_adjacency(table);
    let pass = commutator(&r1, &a0)?.is_zero();
    Ok(CheckLine::new("reflection sum commutes with the neutral adjacency", pass))
}

/// Brute-force neighbor oracle straight from the `v - w = ±e_k` definition,
/// independent of the table's neighbor method. Test support.
pub fn adjacency_by_definition(table: &VertexTable) -> IntOperator {
    let n = table.len();
    let m = table.modulus();
    let mut a = IntOperator::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let vi = table.element(i).coords();
            let vj = table.element(j).coords();
            let mut diffs = Vec::new();
            for k in 0..vi.len() {
                let d = crate::group::signed_rep(vi[k] as i32 - vj[k] as i32, m);
                if d != 0 {
                    diffs.push(d);
                }
            }
            if diffs.len() == 1 && (diffs[0] == 1 || diffs[0] == -1) {
                a.set(i, j, 1);
            }
        }
    }
    a
}
