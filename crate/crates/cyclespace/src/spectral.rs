//! Graph Fourier transform on `C_m^N`.
//!
//! The transform is the N-fold Kronecker power of the size-m DFT, reindexed
//! on both the vertex and the frequency side by the common table ordering.
//! Assembled directly from character phases, which is the same matrix.

use nalgebra::{Complex, DMatrix};
use num_complex::Complex64;

use crate::error::Error;
use crate::group::VertexTable;
use crate::intop::{adjacency, IntOperator};
use crate::Result;

/// Unitary graph Fourier basis with per-frequency eigenvalue bookkeeping.
/// Row k of `matrix` is the (conjugated) character of the frequency vector
/// at table index k; columns follow the vertex ordering.
#[derive(Debug, Clone)]
pub struct FourierBasis {
    pub matrix: DMatrix<Complex64>,
    /// Adjacency eigenvalue sum_i 2 cos(2 pi k_i / m) per frequency index.
    pub adjacency_eigenvalues: Vec<f64>,
    /// Laplacian eigenvalue 2N minus the adjacency eigenvalue.
    pub laplacian_eigenvalues: Vec<f64>,
}

/// Size-m unitary DFT matrix with entries e^{-2 pi i j k / m} / sqrt(m).
pub fn dft_matrix(m: u32) -> Result<DMatrix<Complex64>> {
    crate::group::validate_modulus(m)?;
    Ok(character_matrix(m, &(0..m as i64).map(|x| vec![x]).collect::<Vec<_>>(), -1.0))
}

fn character_matrix(m: u32, vectors: &[Vec<i64>], sign: f64) -> DMatrix<Complex64> {
    let n = vectors.len();
    let scale = 1.0 / (n as f64).sqrt();
    // roots-of-unity table: exact periodicity via integer phases mod m
    let roots: Vec<Complex64> = (0..m)
        .map(|p| {
            let theta = sign * 2.0 * std::f64::consts::PI * p as f64 / m as f64;
            Complex::new(theta.cos(), theta.sin())
        })
        .collect();
    DMatrix::from_fn(n, n, |i, j| {
        let phase: i64 = vectors[i]
            .iter()
            .zip(&vectors[j])
            .map(|(a, b)| a * b)
            .sum::<i64>()
            .rem_euclid(m as i64);
        roots[phase as usize] * scale
    })
}

/// Graph Fourier transform in table ordering. `sign = -1` is the forward
/// convention used everywhere; swapping it conjugates the matrix and leaves
/// every reported spectrum unchanged.
pub fn gft_with_sign(table: &VertexTable, sign: f64) -> FourierBasis {
    let m = table.modulus();
    let vectors: Vec<Vec<i64>> = table
        .elements()
        .iter()
        .map(|e| e.coords().iter().map(|&c| c as i64).collect())
        .collect();
    let matrix = character_matrix(m, &vectors, sign);
    let adjacency_eigenvalues: Vec<f64> = table
        .elements()
        .iter()
        .map(|e| {
            e.coords()
                .iter()
                .map(|&c| 2.0 * (2.0 * std::f64::consts::PI * c as f64 / m as f64).cos())
                .sum()
        })
        .collect();
    let laplacian_eigenvalues =
        adjacency_eigenvalues.iter().map(|&a| 2.0 * table.dim() as f64 - a).collect();
    FourierBasis { matrix, adjacency_eigenvalues, laplacian_eigenvalues }
}

pub fn gft(table: &VertexTable) -> FourierBasis {
    gft_with_sign(table, -1.0)
}

impl FourierBasis {
    pub fn len(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.nrows() == 0
    }

    /// Max-entry deviation of F F* from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let prod = &self.matrix * self.matrix.adjoint();
        max_entry_error(&prod, |i, j| {
            if i == j {
                Complex::new(1.0, 0.0)
            } else {
                Complex::new(0.0, 0.0)
            }
        })
    }

    /// Max-entry deviation of F A F* from the eigenvalue diagonal.
    pub fn diagonalization_error(&self, a: &IntOperator) -> f64 {
        let fa = sparse_right_mul(&self.matrix, a);
        let prod = fa * self.matrix.adjoint();
        max_entry_error(&prod, |i, j| {
            if i == j {
                Complex::new(self.adjacency_eigenvalues[i], 0.0)
            } else {
                Complex::new(0.0, 0.0)
            }
        })
    }

    /// Laplacian consistency: L = 2N I - A diagonalizes with the catalog
    /// eigenvalues.
    pub fn laplacian_error(&self, table: &VertexTable) -> f64 {
        let n = table.len();
        let a = adjacency(table);
        let l = IntOperator::identity(n).scale(2 * table.dim() as i64).sub(&a).expect("shape");
        let fl = sparse_right_mul(&self.matrix, &l);
        let prod = fl * self.matrix.adjoint();
        max_entry_error(&prod, |i, j| {
            if i == j {
                Complex::new(self.laplacian_eigenvalues[i], 0.0)
            } else {
                Complex::new(0.0, 0.0)
            }
        })
    }

    /// CSV catalog: frequency index, coordinates, adjacency eigenvalue,
    /// Laplacian eigenvalue.
    pub fn eigencatalog_csv(&self, table: &VertexTable, one_based: bool) -> String {
        let mut out = String::from("index,coords,adjacency_eigenvalue,laplacian_eigenvalue\n");
        let offset = usize::from(one_based);
        for i in 0..self.len() {
            let coords: Vec<String> =
                table.element(i).coords().iter().map(|c| c.to_string()).collect();
            out.push_str(&format!(
                "{},{},{},{}\n",
                i + offset,
                coords.join(" "),
                crate::config::fmt_float(self.adjacency_eigenvalues[i]),
                crate::config::fmt_float(self.laplacian_eigenvalues[i]),
            ));
        }
        out
    }
}

/// F * A for sparse integer A, exploiting A's sparsity column-wise.
pub fn sparse_right_mul(f: &DMatrix<Complex64>, a: &IntOperator) -> DMatrix<Complex64> {
    let mut out = DMatrix::from_element(f.nrows(), a.cols(), Complex::new(0.0, 0.0));
    for (k, j, v) in a.entries() {
        let scale = v as f64;
        for i in 0..f.nrows() {
            out[(i, j)] += f[(i, k)] * scale;
        }
    }
    out
}

fn max_entry_error(m: &DMatrix<Complex64>, expect: impl Fn(usize, usize) -> Complex64) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            worst = worst.max((m[(i, j)] - expect(i, j)).norm());
        }
    }
    worst
}

/// Guard for dense spectral work; graph-only queries have no such limit.
pub fn check_dense_budget(table: &VertexTable, budget: &crate::config::Budget) -> Result<()> {
    if (table.len() as u128) > budget.max_vertices {
        return Err(Error::BudgetExceeded {
            needed: table.len() as u128,
            budget: budget.max_vertices,
        });
    }
    Ok(())
}
