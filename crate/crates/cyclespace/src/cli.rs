//! Command-line front end: `levels`, `verify`, `spaces`, `spectrum`, `ssl`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad configuration,
//! 3 resource budget exceeded. All file outputs are deterministic for a
//! fixed configuration (floats are serialized at fixed precision).

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::config::{Budget, Tolerances};
use crate::error::Error;
use crate::group::{LevelSignature, VertexTable};
use crate::intop::{
    adjacency, commutator_theorem_check, inner_adjacency, kernel_interchange_check,
    neutral_adjacency, neutral_commutator_check, neutral_minimal_polynomial_check,
    outer_adjacency, r1_neutral_commute_check, r1_op, reflection_op, reflection_spectrum_check,
    samelevel_support_check, split_consistency, subadjacency, twisted_outer, IntOperator,
};
use crate::spaces::{
    all_space_params, build_v, build_w, eigen_shift_check, level_matrix, multiplier_sequence,
    multiplier_consistency, level_matrix_consistency, subspace_to_json, verify_invariance,
    SpaceParams,
};
use crate::spectral::{gft, gft_with_sign};
use crate::ssl::{
    classify, decompose, decompose_classified, hermiticity_error, level_vector_check,
    projection_law_error, spatial_projection, spectral_projection, SslConfig,
};
use crate::{CheckLine, Result};

#[derive(Debug, Parser)]
#[command(name = "cyclespace", version, about = "Cycle-product graphs: level sets, exact operator identities, invariant spaces, and spatio-spectral limiting")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every feasible level signature with cardinality and index range.
    Levels {
        #[arg(long)]
        m: u32,
        #[arg(long = "N")]
        n: usize,
        /// Report one-based index ranges.
        #[arg(long)]
        one_based: bool,
    },
    /// Run every exact identity check in scope for (m, N).
    Verify {
        #[arg(long)]
        m: u32,
        #[arg(long = "N")]
        n: usize,
    },
    /// Dump the base spaces W and invariant spaces V.
    Spaces {
        #[arg(long)]
        m: u32,
        #[arg(long = "N")]
        n: usize,
        /// Include full vectors (otherwise dimensions only).
        #[arg(long)]
        full: bool,
        /// Output file (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the per-frequency eigenvalue catalog as CSV.
    Spectrum {
        #[arg(long)]
        m: u32,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        one_based: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the spatio-spectral limiting pipeline and write its report.
    Ssl {
        #[arg(long)]
        m: u32,
        #[arg(long = "N")]
        n: usize,
        #[arg(long = "K")]
        k: u32,
        /// Figure data to emit (fig3, fig4, fig5), comma separated.
        #[arg(long, value_delimiter = ',')]
        emit: Vec<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        /// Output directory for report and figure files.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long)]
        one_based: bool,
        /// Eigenvalue grouping tolerance.
        #[arg(long, default_value_t = 1e-8)]
        cluster_tol: f64,
        /// Relative threshold for treating a block restriction as zero.
        #[arg(long, default_value_t = 1e-9)]
        zero_tol: f64,
        /// Seed for the rotated-cluster classification stability check.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Entry point used by the binary; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Levels { m, n, one_based } => {
            print!("{}", cmd_levels(m, n, one_based)?);
            Ok(0)
        }
        Command::Verify { m, n } => {
            let lines = verification_suite(m, n)?;
            let mut all_pass = true;
            for line in &lines {
                println!("{} {}", if line.pass { "ok  " } else { "FAIL" }, line.name);
                all_pass &= line.pass;
            }
            println!(
                "{} of {} checks passed",
                lines.iter().filter(|l| l.pass).count(),
                lines.len()
            );
            Ok(if all_pass { 0 } else { 1 })
        }
        Command::Spaces { m, n, full, out } => {
            let doc = cmd_spaces(m, n, full)?;
            let text = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
            write_or_print(out, &text)?;
            Ok(0)
        }
        Command::Spectrum { m, n, one_based, out } => {
            let budget = Budget::from_env()?;
            let table = VertexTable::new(m, n, &budget)?;
            crate::spectral::check_dense_budget(&table, &budget)?;
            let basis = gft(&table);
            write_or_print(out, &basis.eigencatalog_csv(&table, one_based))?;
            Ok(0)
        }
        Command::Ssl { m, n, k, emit, format, out, one_based, cluster_tol, zero_tol, seed } => {
            cmd_ssl(SslArgs { m, n, k, emit, format, out, one_based, cluster_tol, zero_tol, seed })
        }
    }
}

fn write_or_print(path: Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Level-set table: one row per feasible signature, totals at the end.
pub fn cmd_levels(m: u32, n: usize, one_based: bool) -> Result<String> {
    crate::group::validate_modulus(m)?;
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let offset = u64::from(one_based);
    let mut out = String::from("base\tcardinality\tindices\n");
    let mut start = 0u64;
    let mut total = 0u64;
    for sig in LevelSignature::all_feasible(m, n)? {
        let card = sig.cardinality();
        if card == 0 {
            continue;
        }
        let lo = start + offset;
        let hi = start + card - 1 + offset;
        let indices = if card == 1 { format!("{lo}") } else { format!("{lo}-{hi}") };
        out.push_str(&format!("{sig}\t{card}\t{indices}\n"));
        start += card;
        total += card;
    }
    out.push_str(&format!("total\t{total}\t\n"));
    Ok(out)
}

/// Every exact identity check in scope for `(m, N)`.
pub fn verification_suite(m: u32, n: usize) -> Result<Vec<CheckLine>> {
    let budget = Budget::from_env()?;
    let table = VertexTable::new(m, n, &budget)?;
    let mut lines = Vec::new();

    // partition of the vertex set by level signatures
    let covered: u64 = LevelSignature::all_feasible(m, n)?.iter().map(|s| s.cardinality()).sum();
    lines.push(CheckLine::new(
        "level-set cardinalities partition the vertex set",
        covered == table.len() as u64,
    ));

    lines.push(CheckLine::new(
        "adjacency splits into outer + inner + neutral with row sums 2N",
        split_consistency(&table).is_ok(),
    ));
    lines.push(samelevel_support_check(&table)?);
    lines.extend(commutator_theorem_check(&table)?);

    match m {
        3 => {
            lines.push(CheckLine::new(
                "neutral adjacency equals the level-one reflection sum",
                neutral_adjacency(&table) == r1_op(&table),
            ));
            lines.extend(eigen_shift_check(&table)?);
            lines.extend(space_suite(&table)?);
        }
        4 => {
            lines.push(CheckLine::new(
                "no neutral adjacencies",
                neutral_adjacency(&table).is_zero(),
            ));
            lines.extend(space_suite(&table)?);
        }
        5 => {
            lines.extend(m5_operator_suite(&table)?);
            lines.extend(eigen_shift_check(&table)?);
            lines.extend(space_suite(&table)?);
        }
        other => return Err(Error::UnsupportedModulus(other)),
    }
    Ok(lines)
}

fn m5_operator_suite(table: &VertexTable) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    let n_dim = table.dim() as u32;
    let ap = outer_adjacency(table);
    let am = inner_adjacency(table);
    let a0 = neutral_adjacency(table);

    // the two outer subadjacencies sum to the outer adjacency on each block
    let mut pass = true;
    for (sig, range) in table.blocks() {
        let (p, q) = (sig.p(), sig.q());
        let mut sum = IntOperator::zero(table.len(), table.len());
        if p + q < n_dim {
            let to = LevelSignature::from_pq(5, table.dim(), p + 1, q)?;
            sum = sum.add(&subadjacency(table, sig, &to)?)?;
        }
        if p >= 1 {
            let to = LevelSignature::from_pq(5, table.dim(), p - 1, q + 1)?;
            sum = sum.add(&subadjacency(table, sig, &to)?)?;
        }
        pass &= sum == ap.masked_cols(range);
    }
    lines.push(CheckLine::new("outer subadjacencies sum to the outer adjacency", pass));

    // neutral subadjacency squares to the identity on q = 1 blocks
    let mut pass = true;
    for (sig, range) in table.blocks() {
        if sig.q() == 1 {
            let block = a0.masked(range, range);
            pass &= block.mul(&block)? == IntOperator::projector(table.len(), range);
        }
    }
    lines.push(CheckLine::new("neutral subadjacency squares to the identity on q = 1 blocks", pass));

    // coordinate reflections commute with outer and inner adjacency
    let mut pass = true;
    for k in 0..table.dim() {
        let rho = reflection_op(table, k)?;
        pass &= rho.mul(&ap)? == ap.mul(&rho)?;
        pass &= rho.mul(&am)? == am.mul(&rho)?;
    }
    lines.push(CheckLine::new("coordinate reflections commute with outer and inner adjacency", pass));

    // twisted outer adjacency equals the neutral commutator
    let mut pass = true;
    for (sig, _) in table.blocks().to_vec() {
        let (p, q) = (sig.p(), sig.q());
        if p == 0 {
            continue;
        }
        let to = LevelSignature::from_pq(5, table.dim(), p - 1, q + 1)?;
        let internal = subadjacency(table, &sig, &to)?;
        let tw = twisted_outer(table, &sig)?;
        let comm = a0.mul(&internal)?.sub(&internal.mul(&a0)?)?;
        let from_range = table.level_set(&sig)?;
        pass &= comm.masked_cols(&from_range) == tw;
    }
    lines.push(CheckLine::new(
        "twisted outer adjacency equals the neutral-outer commutator",
        pass,
    ));

    lines.extend(neutral_commutator_check(table)?);
    lines.extend(kernel_interchange_check(table)?);
    lines.push(r1_neutral_commute_check(table)?);
    lines.extend(neutral_minimal_polynomial_check(table)?);
    lines.extend(reflection_spectrum_check(table)?);
    Ok(lines)
}

fn space_suite(table: &VertexTable) -> Result<Vec<CheckLine>> {
    let m = table.modulus();
    let n = table.dim();
    let a = adjacency(table);
    let mut lines = Vec::new();
    for params in all_space_params(m, n)? {
        let w = build_w(table, params)?;
        if w.dim() == 0 {
            continue;
        }
        let label = params.label();
        let chain = match params {
            SpaceParams::C3 { r, lambda } => Some((r, lambda)),
            SpaceParams::C4 { p, q } => Some((p + 2 * q, 0)),
            SpaceParams::C5 { .. } => None,
        };
        if let Some((r, lambda)) = chain {
            let seq = multiplier_sequence(m, n, r, lambda)?;
            lines.push(CheckLine::new(
                format!("multiplier recursion at {label}"),
                multiplier_consistency(table, &w, &seq).is_ok(),
            ));
            let lm = level_matrix(m, n, r, lambda)?;
            lines.push(CheckLine::new(
                format!("level matrix representation at {label}"),
                level_matrix_consistency(table, &w, &lm).is_ok(),
            ));
        }
        let v = build_v(table, &w)?;
        lines.push(CheckLine::new(
            format!("adjacency invariance of V at {label} (dim {})", v.dim()),
            verify_invariance(&v, &a),
        ));
    }
    Ok(lines)
}

/// Dimensions (and optionally vectors) of every base and invariant space.
pub fn cmd_spaces(m: u32, n: usize, full: bool) -> Result<serde_json::Value> {
    let budget = Budget::from_env()?;
    let table = VertexTable::new(m, n, &budget)?;
    let mut spaces = Vec::new();
    for params in all_space_params(m, n)? {
        let w = build_w(&table, params)?;
        let v = if w.dim() > 0 { Some(build_v(&table, &w)?) } else { None };
        let mut entry = json!({
            "params": params.label(),
            "w_dim": w.dim(),
            "v_dim": v.as_ref().map(|v| v.dim()).unwrap_or(0),
            "closure_rounds": v.as_ref().map(|v| v.closure_rounds).unwrap_or(0),
        });
        if full {
            entry["w"] = subspace_to_json(&w);
            if let Some(v) = &v {
                entry["v"] = subspace_to_json(v);
            }
        }
        spaces.push(entry);
    }
    Ok(json!({"m": m, "n": n, "spaces": spaces}))
}

struct SslArgs {
    m: u32,
    n: usize,
    k: u32,
    emit: Vec<String>,
    format: OutputFormat,
    out: PathBuf,
    one_based: bool,
    cluster_tol: f64,
    zero_tol: f64,
    seed: u64,
}

fn cmd_ssl(args: SslArgs) -> Result<i32> {
    let budget = Budget::from_env()?;
    let tolerances = Tolerances {
        cluster_tol: args.cluster_tol,
        zero_tol: args.zero_tol,
        ..Tolerances::default()
    };
    let config = SslConfig::new(args.m, args.n, args.k, tolerances)?;
    let table = VertexTable::new(args.m, args.n, &budget)?;
    crate::spectral::check_dense_budget(&table, &budget)?;

    let fourier = gft(&table);
    let unitarity = fourier.unitarity_error();
    let diagonalization = fourier.diagonalization_error(&adjacency(&table));
    let q = spatial_projection(&table, args.k);
    let p = spectral_projection(&fourier, &table, args.k);
    let projection = projection_law_error(&p).max(hermiticity_error(&p));
    let mut report = decompose_classified(&p, &q, &table, &fourier, &config)?;

    // classification must not depend on the basis chosen inside a
    // degenerate cluster: re-run with randomly rotated cluster bases
    let baseline = report.class_table(args.one_based);
    classify(&mut report, &table, &tolerances, Some(args.seed))?;
    let rotated = report.class_table(args.one_based);
    if rotated != baseline {
        return Err(Error::ClassificationAmbiguous(
            "classification changed under a rotated cluster basis".into(),
        ));
    }
    classify(&mut report, &table, &tolerances, None)?;

    println!("spatio-spectral limiting on C_{}^{} with K = {}", args.m, args.n, args.k);
    println!(
        "ball size {}, nonzero spectrum entries {}",
        report.ball.len(),
        report.nonzero_count
    );
    println!(
        "unitarity {:.2e}, diagonalization {:.2e}, projection law {:.2e}, route agreement {:.2e}",
        unitarity, diagonalization, projection, report.svd_agreement
    );
    print!("{}", report.class_table(args.one_based));

    std::fs::create_dir_all(&args.out)?;
    match args.format {
        OutputFormat::Csv => {
            std::fs::write(args.out.join("report.csv"), report.to_csv(args.one_based))?;
        }
        OutputFormat::Json => {
            let text =
                serde_json::to_string_pretty(&report.to_json(args.one_based)).expect("serializable");
            std::fs::write(args.out.join("report.json"), text + "\n")?;
        }
    }
    for fig in &args.emit {
        let (name, data) = match fig.as_str() {
            "fig3" => ("fig3.txt", report.fig_spectrum(args.one_based)),
            "fig4" => ("fig4.txt", report.fig_level_vectors(&table, args.one_based)),
            "fig5" => ("fig5.txt", report.fig_class_representatives(&table, args.one_based)),
            other => {
                return Err(Error::BadConfig(format!(
                    "unknown figure {other}; expected fig3, fig4 or fig5"
                )))
            }
        };
        std::fs::write(args.out.join(name), data)?;
    }
    let (levels_ok, level_count) = level_vector_check(&report, &table, 1e-8);
    println!(
        "origin-based eigenvectors are level-constant: {} ({} vectors)",
        levels_ok, level_count
    );
    Ok(0)
}

/// Spectrum invariance under the opposite transform convention: reported
/// eigenvalues agree to the stated tolerance.
pub fn convention_flip_spectrum_gap(m: u32, n: usize, k: u32) -> Result<f64> {
    let budget = Budget::from_env()?;
    let table = VertexTable::new(m, n, &budget)?;
    let tolerances = Tolerances::default();
    let config = SslConfig::new(m, n, k, tolerances)?;
    let q = spatial_projection(&table, k);
    let mut spectra = Vec::new();
    for sign in [-1.0, 1.0] {
        let fourier = gft_with_sign(&table, sign);
        let p = spectral_projection(&fourier, &table, k);
        let report = decompose(&p, &q, &table, &fourier, &config)?;
        spectra.push(report.spectrum);
    }
    Ok(spectra[0]
        .iter()
        .zip(&spectra[1])
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels_table_m3() {
        let out = cmd_levels(3, 2, false).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[1], "S_0\t1\t0");
        assert_eq!(lines[2], "S_1\t4\t1-4");
        assert_eq!(lines[3], "S_2\t4\t5-8");
        assert_eq!(lines[4], "total\t9\t");
    }

    #[test]
    fn levels_rejects_unsupported_modulus() {
        assert!(matches!(cmd_levels(6, 2, false), Err(Error::UnsupportedModulus(6))));
    }

    #[test]
    fn verify_smallest_case_passes() {
        let lines = verification_suite(3, 1).unwrap();
        assert!(lines.iter().all(|l| l.pass), "{:?}", lines);
    }

    #[test]
    fn spaces_report_shape() {
        let doc = cmd_spaces(3, 2, false).unwrap();
        assert_eq!(doc["m"], 3);
        assert!(doc["spaces"].as_array().unwrap().len() >= 3);
    }

    #[test]
    fn convention_flip_leaves_spectrum() {
        let gap = convention_flip_spectrum_gap(3, 2, 1).unwrap();
        assert!(gap < 1e-10, "gap = {gap}");
    }
}
