//! Exact linear algebra over the integers and rationals: incremental
//! fraction-free row echelon forms, rank, nullspace bases, and linear solves.
//! Every rank statement made elsewhere in the crate reduces to these.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Divide a vector by the gcd of its entries and make the leading nonzero
/// entry positive. Zero vectors are returned unchanged.
pub fn normalize_int_vec(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return;
    }
    let lead_negative = v
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| x.is_negative())
        .unwrap_or(false);
    if lead_negative {
        g = -g;
    }
    if !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Incremental fraction-free row echelon form over the integers.
///
/// Rows are kept content-reduced with positive leading entries, ordered by
/// pivot column. `reduce` maps a vector to its residue against the current
/// rows; a zero residue means membership in the row span.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<BigInt>)>, // (pivot column, row)
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }

    /// Residue of `v` against the accumulated rows, content-reduced.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let coef = v[*pivot].clone();
            if coef.is_zero() {
                continue;
            }
            let lead = row[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row.iter()) {
                *x = &*x * &lead - r * &coef;
            }
            normalize_int_vec(&mut v);
        }
        v
    }

    /// Inserts `v` if it enlarges the row span. Returns true on growth.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        let mut res = self.reduce(v);
        let pivot = match res.iter().position(|x| !x.is_zero()) {
            Some(p) => p,
            None => return false,
        };
        normalize_int_vec(&mut res);
        let at = self
            .rows
            .partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, res));
        true
    }

    /// True iff `v` lies in the row span.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}

/// Rank of an integer matrix given as rows.
pub fn int_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

/// Integer basis of the nullspace `{x : M x = 0}` of an integer matrix.
///
/// Basis vectors are content-reduced with positive leading entry and are
/// produced in a deterministic order (one per free column, ascending).
pub fn int_nullspace(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut ech = Echelon::new();
    for r in rows {
        debug_assert_eq!(r.len(), cols);
        ech.insert(r);
    }
    let pivots: Vec<usize> = ech.rows.iter().map(|(p, _)| *p).collect();
    let mut basis = Vec::with_capacity(cols - pivots.len());
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        // back-substitute over the rationals, bottom row first
        let mut x = vec![BigRational::zero(); cols];
        x[free] = BigRational::one();
        for (pivot, row) in ech.rows.iter().rev() {
            let mut acc = BigRational::zero();
            for j in pivot + 1..cols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc += BigRational::from(row[j].clone()) * &x[j];
                }
            }
            x[*pivot] = -acc / BigRational::from(row[*pivot].clone());
        }
        let mut v = clear_denominators(&x);
        normalize_int_vec(&mut v);
        basis.push(v);
    }
    basis
}

/// Scale a rational vector to integers by the lcm of denominators.
pub fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    v.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

pub fn int_to_rat(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from(x.clone())).collect()
}

/// Exact solve of `sum_j c_j basis_j = target` by Gaussian elimination.
/// Returns None when the system is inconsistent.
pub fn solve_in_span(basis: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let k = basis.len();
    let n = target.len();
    // augmented rows: one per coordinate
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivot_rows = Vec::with_capacity(k);
    let mut r0 = 0usize;
    for c in 0..k {
        let Some(pr) = (r0..n).find(|&r| !aug[r][c].is_zero()) else {
            continue;
        };
        aug.swap(r0, pr);
        let lead = aug[r0][c].clone();
        for x in aug[r0].iter_mut() {
            *x = &*x / &lead;
        }
        for r in 0..n {
            if r != r0 && !aug[r][c].is_zero() {
                let f = aug[r][c].clone();
                for j in 0..=k {
                    let s = &aug[r0][j] * &f;
                    aug[r][j] = &aug[r][j] - s;
                }
            }
        }
        pivot_rows.push((r0, c));
        r0 += 1;
    }
    // inconsistent if a zero row has nonzero rhs
    for r in r0..n {
        if !aug[r][k].is_zero() {
            return None;
        }
    }
    let mut coeffs = vec![BigRational::zero(); k];
    for (r, c) in pivot_rows {
        coeffs[c] = aug[r][k].clone();
    }
    Some(coeffs)
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}
