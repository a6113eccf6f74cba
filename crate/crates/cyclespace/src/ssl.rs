//! Spatio-spectral limiting: spatial truncation to a distance ball, spectral
//! truncation through the graph Fourier transform, eigendecomposition of the
//! compressed operator, classification of eigenvectors by base support and
//! reflection eigenvalue, and the linkage of those eigenvectors to the
//! adjacency-invariant spaces.

use std::collections::BTreeMap;
use std::ops::Range;

use nalgebra::{Complex, DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::config::{fmt_float, Tolerances};
use crate::error::Error;
use crate::group::{LevelSignature, VertexTable};
use crate::intop::{r1_op, IntOperator};
use crate::spaces::{all_space_params, build_v, build_w, SpaceParams};
use crate::spectral::FourierBasis;
use crate::Result;

/// Parameters of one limiting experiment.
#[derive(Debug, Clone, Copy)]
pub struct SslConfig {
    pub m: u32,
    pub n_dim: usize,
    pub k: u32,
    pub tolerances: Tolerances,
}

impl SslConfig {
    pub fn new(m: u32, n_dim: usize, k: u32, tolerances: Tolerances) -> Result<Self> {
        crate::group::validate_modulus(m)?;
        let max = n_dim as u32 * (m / 2);
        if k > max {
            return Err(Error::BadConfig(format!(
                "truncation radius K = {k} outside 0..={max} for C_{m}^{n_dim}"
            )));
        }
        Ok(SslConfig { m, n_dim, k, tolerances })
    }
}

/// Diagonal 0/1 projector onto the vertices at distance <= k.
pub fn spatial_projection(table: &VertexTable, k: u32) -> IntOperator {
    IntOperator::projector(table.len(), &table.ball(k))
}

/// Spectral truncation P = F^{-1} Q F with Q the distance-<= k frequency
/// ball in the same table ordering. An orthogonal projection.
pub fn spectral_projection(basis: &FourierBasis, table: &VertexTable, k: u32) -> DMatrix<Complex64> {
    let ball = table.ball(k);
    let f_ball = basis.matrix.rows(ball.start, ball.len());
    f_ball.adjoint() * f_ball
}

/// Max-entry deviation of P^2 from P.
pub fn projection_law_error(p: &DMatrix<Complex64>) -> f64 {
    let sq = p * p;
    (sq - p).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Max-entry deviation of P from its adjoint.
pub fn hermiticity_error(p: &DMatrix<Complex64>) -> f64 {
    (p.adjoint() - p).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn complex_trace(p: &DMatrix<Complex64>) -> Complex64 {
    (0..p.nrows().min(p.ncols())).map(|i| p[(i, i)]).sum()
}

/// One eigenvalue cluster of the compressed operator.
#[derive(Debug, Clone)]
pub struct ClusterInfo {
    /// Positions in the descending spectrum.
    pub range: Range<usize>,
    pub value: f64,
    pub base: LevelSignature,
    pub r1: i64,
    pub rayleigh_residual: f64,
}

/// Clusters sharing (base, reflection eigenvalue, dimension), merged.
#[derive(Debug, Clone)]
pub struct SslClass {
    pub base: LevelSignature,
    pub r1: i64,
    pub dim: usize,
    pub multiplicity: usize,
    pub members: Vec<Range<usize>>,
}

/// Eigendecomposition of the ball-compressed limiting operator with the
/// per-eigenspace classification records.
#[derive(Debug)]
pub struct SslReport {
    pub m: u32,
    pub n_dim: usize,
    pub k: u32,
    /// Descending eigenvalues of QPQ on the range of Q.
    pub spectrum: Vec<f64>,
    /// Columns: transformed eigenvectors Q F v, normalized, in spectrum
    /// order; supported on the ball indices.
    pub vectors: DMatrix<Complex64>,
    pub ball: Range<usize>,
    pub clusters: Vec<ClusterInfo>,
    pub classes: Vec<SslClass>,
    /// Count of spectrum entries above the cluster tolerance.
    pub nonzero_count: usize,
    /// Max |sigma_i^2 - lambda_i| between the singular route and the
    /// Hermitian route.
    pub svd_agreement: f64,
    /// |trace(QPQ) - sum of spectrum|.
    pub trace_error: f64,
    /// How far the spectrum leaves [0, 1].
    pub range_excess: f64,
}

/// Eigen-decomposition of the self-adjoint compression QPQ on range(Q),
/// cross-checked against the singular value decomposition of PQ.
pub fn decompose(
    p: &DMatrix<Complex64>,
    q: &IntOperator,
    table: &VertexTable,
    fourier: &FourierBasis,
    config: &SslConfig,
) -> Result<SslReport> {
    let n = table.len();
    if p.nrows() != n || q.rows() != n {
        return Err(Error::DimensionMismatch {
            lhs: format!("{}x{}", p.nrows(), p.ncols()),
            rhs: format!("{n}x{n}"),
        });
    }
    let ball_indices: Vec<usize> = (0..n).filter(|&i| q.get(i, i) == 1).collect();
    let b = ball_indices.len();
    if b == 0 {
        return Err(Error::BadConfig("spatial projection has empty range".into()));
    }
    let contiguous = ball_indices.last() == Some(&(b - 1));
    if !contiguous {
        return Err(Error::BadConfig("spatial projection range must be contiguous".into()));
    }
    let ball = 0..b;

    // Hermitian route: eigendecomposition of the compressed block
    let compressed = DMatrix::from_fn(b, b, |i, j| p[(ball_indices[i], ball_indices[j])]);
    let herm_err = hermiticity_error(&compressed);
    if herm_err > 1e-8 {
        return Err(Error::NumericalFailure(format!(
            "compressed operator is not Hermitian (max deviation {herm_err:.2e})"
        )));
    }
    let sym = nalgebra::SymmetricEigen::new(compressed.clone());
    let mut order: Vec<usize> = (0..b).collect();
    order.sort_by(|&i, &j| {
        sym.eigenvalues[j]
            .partial_cmp(&sym.eigenvalues[i])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(i.cmp(&j))
    });
    let spectrum: Vec<f64> = order.iter().map(|&i| sym.eigenvalues[i]).collect();

    // singular route on the nonzero column block of PQ
    let pq_cols = DMatrix::from_fn(n, b, |i, j| p[(i, ball_indices[j])]);
    let svd = nalgebra::SVD::new(pq_cols, false, false);
    let mut sigmas: Vec<f64> = svd.singular_values.iter().copied().collect();
    sigmas.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    let svd_agreement = spectrum
        .iter()
        .zip(&sigmas)
        .map(|(l, s)| (s * s - l).abs())
        .fold(0.0, f64::max);
    if svd_agreement > config.tolerances.spectrum_agreement {
        return Err(Error::NumericalFailure(format!(
            "eigenvalue and singular routes disagree by {svd_agreement:.2e}"
        )));
    }

    // transformed eigenvectors w = Q F v, normalized, phase-canonicalized
    let mut vectors = DMatrix::from_element(n, b, Complex::new(0.0, 0.0));
    for (col, &oi) in order.iter().enumerate() {
        let mut v = DVector::from_element(n, Complex::new(0.0, 0.0));
        for (row, &bi) in ball_indices.iter().enumerate() {
            v[bi] = sym.eigenvectors[(row, oi)];
        }
        let mut w = &fourier.matrix * v;
        for i in b..n {
            w[i] = Complex::new(0.0, 0.0);
        }
        let norm = w.norm();
        if norm > 0.0 {
            w /= Complex::new(norm, 0.0);
        }
        // deterministic phase: largest-modulus entry made real positive
        let mut best = 0usize;
        for i in 0..n {
            if w[i].norm() > w[best].norm() + 1e-12 {
                best = i;
            }
        }
        if w[best].norm() > 0.0 {
            let phase = w[best] / Complex::new(w[best].norm(), 0.0);
            w /= phase;
        }
        vectors.set_column(col, &w);
    }

    let trace: f64 = complex_trace(&compressed).re;
    let trace_error = (trace - spectrum.iter().sum::<f64>()).abs();
    let range_excess = spectrum
        .iter()
        .map(|&l| (-l).max(l - 1.0).max(0.0))
        .fold(0.0, f64::max);
    let nonzero_count = spectrum.iter().filter(|&&l| l > config.tolerances.cluster_tol).count();

    Ok(SslReport {
        m: config.m,
        n_dim: config.n_dim,
        k: config.k,
        spectrum,
        vectors,
        ball,
        clusters: Vec::new(),
        classes: Vec::new(),
        nonzero_count,
        svd_agreement,
        trace_error,
        range_excess,
    })
}

/// Decompose and classify in one step.
pub fn decompose_classified(
    p: &DMatrix<Complex64>,
    q: &IntOperator,
    table: &VertexTable,
    fourier: &FourierBasis,
    config: &SslConfig,
) -> Result<SslReport> {
    let mut report = decompose(p, q, table, fourier, config)?;
    classify(&mut report, table, &config.tolerances, None)?;
    Ok(report)
}

/// Groups the above-tolerance spectrum into clusters and labels each with
/// its base support and reflection eigenvalue. Classification happens on an
/// orthonormal cluster basis, so it is invariant under rotations inside a
/// degenerate eigenvalue; passing a seed applies a random unitary to every
/// cluster first (used to demonstrate that invariance).
pub fn classify(
    report: &mut SslReport,
    table: &VertexTable,
    tolerances: &Tolerances,
    rotation_seed: Option<u64>,
) -> Result<()> {
    let r1 = r1_op(table);
    let nz = report.nonzero_count;
    let mut boundaries = vec![0usize];
    for i in 1..nz {
        if (report.spectrum[i - 1] - report.spectrum[i]).abs() > tolerances.cluster_tol {
            boundaries.push(i);
        }
    }
    boundaries.push(nz);

    let mut rng = rotation_seed.map(ChaCha8Rng::seed_from_u64);
    let mut clusters = Vec::new();
    for w in boundaries.windows(2) {
        let (start, end) = (w[0], w[1]);
        let size = end - start;
        let mut cols: Vec<DVector<Complex64>> =
            (start..end).map(|c| report.vectors.column(c).into_owned()).collect();
        if let Some(rng) = rng.as_mut() {
            cols = rotate_cluster(&cols, rng);
        }
        let (base, base_range) = base_support(table, &cols, tolerances.zero_tol)?;
        // Rayleigh quotient of the reflection sum on the base restriction
        let mut num = 0.0;
        let mut den = 0.0;
        for col in &cols {
            let restricted: Vec<Complex64> = {
                let mut full = vec![Complex::new(0.0, 0.0); table.len()];
                for i in base_range.clone() {
                    full[i] = col[i];
                }
                full
            };
            let image = r1.apply_complex(&restricted);
            for i in base_range.clone() {
                num += (restricted[i].conj() * image[i]).re;
                den += restricted[i].norm_sqr();
            }
        }
        let rayleigh = num / den;
        let rounded = rayleigh.round();
        let residual = (rayleigh - rounded).abs();
        if residual >= tolerances.rayleigh_residual {
            return Err(Error::ClassificationAmbiguous(format!(
                "reflection Rayleigh quotient {rayleigh} is not near an integer \
                 (cluster at spectrum positions {start}..{end})"
            )));
        }
        clusters.push(ClusterInfo {
            range: start..end,
            value: report.spectrum[start],
            base,
            r1: rounded as i64,
            rayleigh_residual: residual,
        });
        let _ = size;
    }

    // merge clusters sharing (base, r1, dimension); order rows by the
    // base block's table position, then by the reflection eigenvalue
    let mut merged: BTreeMap<(usize, i64, usize), Vec<Range<usize>>> = BTreeMap::new();
    let block_pos = |sig: &LevelSignature| {
        table.blocks().iter().position(|(s, _)| s == sig).expect("block exists")
    };
    for c in &clusters {
        merged
            .entry((block_pos(&c.base), c.r1, c.range.len()))
            .or_default()
            .push(c.range.clone());
    }
    let classes = merged
        .into_iter()
        .map(|((pos, r1, dim), members)| SslClass {
            base: table.blocks()[pos].0.clone(),
            r1,
            dim,
            multiplicity: members.len(),
            members,
        })
        .collect();
    report.clusters = clusters;
    report.classes = classes;
    Ok(())
}

fn rotate_cluster(cols: &[DVector<Complex64>], rng: &mut ChaCha8Rng) -> Vec<DVector<Complex64>> {
    let k = cols.len();
    // random unitary from Gram-Schmidt on a Gaussian matrix
    let mut gauss = DMatrix::from_fn(k, k, |_, _| {
        let (u1, u2): (f64, f64) = (rng.gen::<f64>().max(1e-12), rng.gen());
        let r = (-2.0 * u1.ln()).sqrt();
        Complex::new(r * (2.0 * std::f64::consts::PI * u2).cos(), r * (2.0 * std::f64::consts::PI * u2).sin())
    });
    for j in 0..k {
        for prev in 0..j {
            let mut dot = Complex::new(0.0, 0.0);
            for i in 0..k {
                dot += gauss[(i, prev)].conj() * gauss[(i, j)];
            }
            for i in 0..k {
                let s = gauss[(i, prev)] * dot;
                gauss[(i, j)] -= s;
            }
        }
        let norm: f64 = (0..k).map(|i| gauss[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        for i in 0..k {
            gauss[(i, j)] /= Complex::new(norm, 0.0);
        }
    }
    (0..k)
        .map(|j| {
            let mut out = DVector::from_element(cols[0].len(), Complex::new(0.0, 0.0));
            for (i, col) in cols.iter().enumerate() {
                let s = gauss[(i, j)];
                out += col * s;
            }
            out
        })
        .collect()
}

fn base_support(
    table: &VertexTable,
    cols: &[DVector<Complex64>],
    zero_tol: f64,
) -> Result<(LevelSignature, Range<usize>)> {
    let total: f64 = cols.iter().map(|c| c.norm_squared()).sum::<f64>().sqrt();
    for (sig, range) in table.blocks() {
        let mut norm2 = 0.0;
        for col in cols {
            for i in range.clone() {
                norm2 += col[i].norm_sqr();
            }
        }
        if norm2.sqrt() > zero_tol * total {
            return Ok((sig.clone(), range.clone()));
        }
    }
    Err(Error::ClassificationAmbiguous("cluster vanishes on every level set".into()))
}

/// True iff every eigenvector in the classes based at the origin block is
/// constant on each level set (relative sup-norm deviation below `tol`).
/// Returns the flag and the number of such eigenvectors.
pub fn level_vector_check(report: &SslReport, table: &VertexTable, tol: f64) -> (bool, usize) {
    let mut pass = true;
    let mut count = 0;
    for class in &report.classes {
        if class.base.distance() != 0 {
            continue;
        }
        for range in &class.members {
            for col in range.clone() {
                count += 1;
                pass &= column_is_level_constant(report, table, col, tol);
            }
        }
    }
    (pass, count)
}

fn column_is_level_constant(
    report: &SslReport,
    table: &VertexTable,
    col: usize,
    tol: f64,
) -> bool {
    let w = report.vectors.column(col);
    let scale = w.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
    for (_, range) in table.blocks() {
        let mean: Complex64 =
            range.clone().map(|i| w[i]).sum::<Complex64>() / Complex::new(range.len() as f64, 0.0);
        for i in range.clone() {
            if (w[i] - mean).norm() > tol * scale {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Linkage with the invariant spaces
// ---------------------------------------------------------------------------

/// Per-class linkage of the computed eigenvectors with the invariant-space
/// family: the base-block restriction must be an exact reflection
/// eigenvector, must lie in the span of the invariant spaces' base-block
/// contents, and (for the non-boundary classes) in the base space
/// W_{p,q,lambda} itself.
#[derive(Debug, Clone)]
pub struct ClassLinkage {
    pub base: LevelSignature,
    pub r1: i64,
    pub dim: usize,
    pub multiplicity: usize,
    pub eigen_residual: f64,
    pub family_span_residual: f64,
    pub w_span_residual: f64,
}

#[derive(Debug)]
pub struct LinkageReport {
    pub per_class: Vec<ClassLinkage>,
    /// Rank of the union of ball-truncated invariant spaces.
    pub union_rank: usize,
    /// Worst residual of any eigenvector against that union.
    pub global_residual: f64,
}

/// Builds every invariant space based inside the ball and checks the
/// eigenvector classes against them.
pub fn linkage_report(
    table: &VertexTable,
    report: &SslReport,
    zero_tol: f64,
) -> Result<LinkageReport> {
    let n = table.len();
    let ball_len = report.ball.len();
    let r1 = r1_op(table);

    // group every V vector by its support block; remember (p,q,lambda)
    let mut v_by_block: BTreeMap<usize, Vec<Vec<f64>>> = BTreeMap::new();
    let mut w_bases: BTreeMap<(u32, u32, i64), Vec<Vec<f64>>> = BTreeMap::new();
    for params in all_space_params(table.modulus(), table.dim())? {
        let SpaceParams::C5 { p, q, lambda, .. } = params else {
            return Err(Error::BadConfig("linkage is defined for m = 5".into()));
        };
        let sig = params.signature(table.dim())?;
        if sig.distance() > report.k {
            continue;
        }
        let w = build_w(table, params)?;
        if w.dim() == 0 {
            continue;
        }
        for vec in w.int_vectors() {
            w_bases
                .entry((p, q, lambda))
                .or_default()
                .push(vec.iter().map(big_to_f64).collect());
        }
        let v = build_v(table, &w)?;
        for (vec, support) in v.int_vectors().iter().zip(&v.supports) {
            let pos = table.blocks().iter().position(|(s, _)| s == support).expect("block");
            v_by_block.entry(pos).or_default().push(vec.iter().map(big_to_f64).collect());
        }
    }

    // orthonormal bases per block (block-local coordinates)
    let mut block_bases: BTreeMap<usize, Vec<Vec<f64>>> = BTreeMap::new();
    for (&pos, vecs) in &v_by_block {
        let range = &table.blocks()[pos].1;
        let local: Vec<Vec<f64>> = vecs.iter().map(|v| v[range.clone()].to_vec()).collect();
        block_bases.insert(pos, orthonormalize(local));
    }

    let mut per_class = Vec::new();
    for class in &report.classes {
        let pos = table.blocks().iter().position(|(s, _)| s == &class.base).expect("block");
        let range = table.blocks()[pos].1.clone();
        let family = block_bases.get(&pos).cloned().unwrap_or_default();
        let key = (class.base.p(), class.base.q(), class.r1);
        let w_local: Vec<Vec<f64>> = w_bases
            .get(&key)
            .map(|vs| vs.iter().map(|v| v[range.clone()].to_vec()).collect())
            .unwrap_or_default();
        let w_basis = orthonormalize(w_local);

        let mut eigen_residual: f64 = 0.0;
        let mut family_res: f64 = 0.0;
        let mut w_res: f64 = 0.0;
        for member in &class.members {
            for col in member.clone() {
                let w = report.vectors.column(col);
                let re: Vec<f64> = range.clone().map(|i| w[i].re).collect();
                let im: Vec<f64> = range.clone().map(|i| w[i].im).collect();
                // reflection eigen-residual on the base restriction
                let mut full = vec![Complex::new(0.0, 0.0); n];
                for i in range.clone() {
                    full[i] = w[i];
                }
                let image = r1.apply_complex(&full);
                let mut res2 = 0.0;
                for i in range.clone() {
                    res2 += (image[i] - full[i] * class.r1 as f64).norm_sqr();
                }
                eigen_residual = eigen_residual.max(res2.sqrt());
                family_res = family_res
                    .max(projection_residual(&family, &re).hypot(projection_residual(&family, &im)));
                w_res = w_res
                    .max(projection_residual(&w_basis, &re).hypot(projection_residual(&w_basis, &im)));
            }
        }
        per_class.push(ClassLinkage {
            base: class.base.clone(),
            r1: class.r1,
            dim: class.dim,
            multiplicity: class.multiplicity,
            eigen_residual,
            family_span_residual: family_res,
            w_span_residual: w_res,
        });
    }

    // global union restricted to the ball
    let mut union: Vec<Vec<f64>> = Vec::new();
    for (&pos, vecs) in &v_by_block {
        let range = &table.blocks()[pos].1;
        if range.end > ball_len {
            continue;
        }
        for v in vecs {
            union.push(v[report.ball.clone()].to_vec());
        }
    }
    let union_basis = orthonormalize(union);
    let union_rank = union_basis.len();
    let mut global_residual: f64 = 0.0;
    for col in 0..report.nonzero_count {
        let w = report.vectors.column(col);
        let re: Vec<f64> = report.ball.clone().map(|i| w[i].re).collect();
        let im: Vec<f64> = report.ball.clone().map(|i| w[i].im).collect();
        global_residual = global_residual.max(
            projection_residual(&union_basis, &re).hypot(projection_residual(&union_basis, &im)),
        );
    }
    let _ = zero_tol;
    Ok(LinkageReport { per_class, union_rank, global_residual })
}

fn big_to_f64(x: &num_bigint::BigInt) -> f64 {
    x.to_string().parse::<f64>().unwrap_or(0.0)
}

/// Modified Gram-Schmidt with a drop tolerance; returns an orthonormal
/// spanning set.
fn orthonormalize(vecs: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for mut v in vecs {
        for _ in 0..2 {
            for b in &basis {
                let dot: f64 = b.iter().zip(&v).map(|(a, c)| a * c).sum();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= dot * y;
                }
            }
        }
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-10 {
            for x in v.iter_mut() {
                *x /= norm;
            }
            basis.push(v);
        }
    }
    basis
}

fn projection_residual(basis: &[Vec<f64>], v: &[f64]) -> f64 {
    let mut res = v.to_vec();
    for b in basis {
        let dot: f64 = b.iter().zip(res.iter()).map(|(a, c)| a * c).sum();
        for (x, y) in res.iter_mut().zip(b) {
            *x -= dot * y;
        }
    }
    res.iter().map(|x| x * x).sum::<f64>().sqrt()
}

// ---------------------------------------------------------------------------
// Text outputs
// ---------------------------------------------------------------------------

impl SslReport {
    /// CSV rows: index, value, base p, base q, r1, class id.
    pub fn to_csv(&self, one_based: bool) -> String {
        let offset = usize::from(one_based);
        let mut out = String::from("index,value,base_p,base_q,r1,class_id\n");
        for (ci, cluster) in self.clusters.iter().enumerate() {
            let class_id = self
                .classes
                .iter()
                .position(|c| {
                    c.base == cluster.base && c.r1 == cluster.r1 && c.dim == cluster.range.len()
                })
                .unwrap_or(usize::MAX);
            let _ = ci;
            for i in cluster.range.clone() {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    i + offset,
                    fmt_float(self.spectrum[i]),
                    cluster.base.p(),
                    cluster.base.q(),
                    cluster.r1,
                    class_id,
                ));
            }
        }
        out
    }

    pub fn to_json(&self, one_based: bool) -> serde_json::Value {
        let offset = usize::from(one_based);
        let rounded = |x: f64| -> f64 { fmt_float(x).parse().unwrap_or(x) };
        json!({
            "config": {"m": self.m, "n": self.n_dim, "k": self.k},
            "ball_size": self.ball.len(),
            "nonzero_count": self.nonzero_count,
            "spectrum": self.spectrum.iter().map(|&x| rounded(x)).collect::<Vec<_>>(),
            "clusters": self.clusters.iter().map(|c| json!({
                "start": c.range.start + offset,
                "size": c.range.len(),
                "value": rounded(c.value),
                "base": [c.base.p(), c.base.q()],
                "r1": c.r1,
            })).collect::<Vec<_>>(),
            "classes": self.classes.iter().map(|c| json!({
                "base": [c.base.p(), c.base.q()],
                "r1": c.r1,
                "dim": c.dim,
                "multiplicity": c.multiplicity,
                "members": c.members.iter()
                    .map(|r| json!([r.start + offset, r.end - 1 + offset]))
                    .collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "checks": {
                "svd_agreement": rounded(self.svd_agreement),
                "trace_error": rounded(self.trace_error),
                "range_excess": rounded(self.range_excess),
            },
        })
    }

    /// Class table in the row order base-block, then reflection eigenvalue.
    pub fn class_table(&self, one_based: bool) -> String {
        let offset = usize::from(one_based);
        let mut out = String::from("base\tdim (#)\tr1\teigenvector indices\n");
        for c in &self.classes {
            let members: Vec<String> = c
                .members
                .iter()
                .map(|r| {
                    if r.len() == 1 {
                        format!("{}", r.start + offset)
                    } else {
                        format!("{}-{}", r.start + offset, r.end - 1 + offset)
                    }
                })
                .collect();
            out.push_str(&format!(
                "{}\t{} ({})\t{}\t{}\n",
                c.base,
                c.dim,
                c.multiplicity,
                c.r1,
                members.join(",")
            ));
        }
        out
    }

    /// Spectrum data: position and eigenvalue, one row per nonzero entry.
    pub fn fig_spectrum(&self, one_based: bool) -> String {
        let offset = usize::from(one_based);
        let mut out = String::from("# index eigenvalue\n");
        for i in 0..self.nonzero_count {
            out.push_str(&format!("{} {}\n", i + offset, fmt_float(self.spectrum[i])));
        }
        out
    }

    /// Real parts of the origin-based eigenvectors against vertex index.
    pub fn fig_level_vectors(&self, table: &VertexTable, one_based: bool) -> String {
        let offset = usize::from(one_based);
        let cols: Vec<usize> = self
            .classes
            .iter()
            .filter(|c| c.base.distance() == 0)
            .flat_map(|c| c.members.iter().flat_map(|r| r.clone()))
            .collect();
        let mut out = format!(
            "# vertex_index then re(w) for the {} origin-based eigenvectors\n",
            cols.len()
        );
        for i in 0..table.len() {
            let mut row = format!("{}", i + offset);
            for &c in &cols {
                row.push(' ');
                row.push_str(&fmt_float(self.vectors[(i, c)].re));
            }
            row.push('\n');
            out.push_str(&row);
        }
        out
    }

    /// One representative eigenvector per class, real parts sorted in
    /// descending order within each level set.
    pub fn fig_class_representatives(&self, table: &VertexTable, one_based: bool) -> String {
        let offset = usize::from(one_based);
        let mut out = String::from("# position then one column per class: ");
        let reps: Vec<usize> = self.classes.iter().map(|c| c.members[0].start).collect();
        let labels: Vec<String> = self
            .classes
            .iter()
            .map(|c| format!("{} r1={}", c.base, c.r1))
            .collect();
        out.push_str(&labels.join(" | "));
        out.push('\n');
        let ball_len = self.ball.len();
        // per class: values sorted within each block
        let mut columns: Vec<Vec<f64>> = Vec::new();
        for &rep in &reps {
            let mut column = Vec::with_capacity(ball_len);
            for (_, range) in table.blocks() {
                if range.end > ball_len {
                    break;
                }
                let mut vals: Vec<f64> =
                    range.clone().map(|i| self.vectors[(i, rep)].re).collect();
                vals.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
                column.extend(vals);
            }
            columns.push(column);
        }
        for i in 0..ball_len {
            let mut row = format!("{}", i + offset);
            for col in &columns {
                row.push(' ');
                row.push_str(&fmt_float(col[i]));
            }
            row.push('\n');
            out.push_str(&row);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Budget;
    use crate::spectral::gft;

    fn table(m: u32, n: usize) -> VertexTable {
        VertexTable::new(m, n, &Budget::default()).unwrap()
    }

    fn default_config(m: u32, n: usize, k: u32) -> SslConfig {
        SslConfig::new(m, n, k, Tolerances::default()).unwrap()
    }

    #[test]
    fn spatial_projection_traces() {
        let t = table(5, 2);
        assert_eq!(spatial_projection(&t, 0).trace(), 1);
        assert_eq!(spatial_projection(&t, 4).trace(), 25);
        let t3 = table(3, 2);
        assert_eq!(spatial_projection(&t3, 1).trace(), 5);
    }

    #[test]
    fn k_out_of_range_is_rejected() {
        assert!(SslConfig::new(5, 4, 99, Tolerances::default()).is_err());
        assert!(SslConfig::new(5, 4, 8, Tolerances::default()).is_ok());
    }

    #[test]
    fn spectral_projection_is_projection() {
        let t = table(3, 2);
        let f = gft(&t);
        let p = spectral_projection(&f, &t, 1);
        assert!(projection_law_error(&p) < 1e-12);
        assert!(hermiticity_error(&p) < 1e-13);
        assert!((complex_trace(&p).re - 5.0).abs() < 1e-10);
        // full-radius truncation is the identity
        let full = spectral_projection(&f, &t, t.max_distance());
        let id_err = (0..t.len())
            .flat_map(|i| (0..t.len()).map(move |j| (i, j)))
            .map(|(i, j)| {
                (full[(i, j)] - if i == j { Complex::new(1.0, 0.0) } else { Complex::new(0.0, 0.0) })
                    .norm()
            })
            .fold(0.0, f64::max);
        assert!(id_err < 1e-12);
    }

    #[test]
    fn small_ssl_run_m3() {
        // C_3^2 with K=1: 5 nonzero spectrum values (the trace of Q)
        let t = table(3, 2);
        let f = gft(&t);
        let config = default_config(3, 2, 1);
        let q = spatial_projection(&t, 1);
        let p = spectral_projection(&f, &t, 1);
        let report = decompose_classified(&p, &q, &t, &f, &config).unwrap();
        assert_eq!(report.nonzero_count, 5);
        assert!(report.range_excess < 1e-10);
        assert!(report.trace_error < 1e-8);
        let total: usize = report.classes.iter().map(|c| c.dim * c.multiplicity).sum();
        assert_eq!(total, 5);
    }

    #[test]
    fn rank_one_spatial_projection_gives_trace_fraction() {
        // Q at K=0 against P at K=1 on C_3^2: the single nonzero value is
        // P[0,0] = (ball size) / 9
        let t = table(3, 2);
        let f = gft(&t);
        let config = default_config(3, 2, 0);
        let q = spatial_projection(&t, 0);
        let p = spectral_projection(&f, &t, 1);
        let report = decompose(&p, &q, &t, &f, &config).unwrap();
        assert_eq!(report.nonzero_count, 1);
        assert!((report.spectrum[0] - 5.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn level_vector_check_negative_control() {
        // in C_3^2 with K=1 the one-dimensional origin-based eigenspace is
        // level-constant; a perturbed copy is not
        let t = table(3, 2);
        let f = gft(&t);
        let config = default_config(3, 2, 1);
        let q = spatial_projection(&t, 1);
        let p = spectral_projection(&f, &t, 1);
        let mut report = decompose_classified(&p, &q, &t, &f, &config).unwrap();
        let col = report
            .classes
            .iter()
            .find(|c| c.base.distance() == 0 && c.dim == 1)
            .map(|c| c.members[0].start)
            .unwrap();
        assert!(column_is_level_constant(&report, &t, col, 1e-8));
        report.vectors[(1, col)] += Complex::new(1e-3, 0.0);
        assert!(!column_is_level_constant(&report, &t, col, 1e-8));
    }

    #[test]
    fn csv_is_deterministic() {
        let t = table(3, 2);
        let f = gft(&t);
        let config = default_config(3, 2, 1);
        let q = spatial_projection(&t, 1);
        let p = spectral_projection(&f, &t, 1);
        let r1 = decompose_classified(&p, &q, &t, &f, &config).unwrap();
        let r2 = decompose_classified(&p, &q, &t, &f, &config).unwrap();
        assert_eq!(r1.to_csv(true), r2.to_csv(true));
        assert_eq!(
            serde_json::to_string(&r1.to_json(true)).unwrap(),
            serde_json::to_string(&r2.to_json(true)).unwrap()
        );
    }
}
