//! Integration of the spectral and limiting pipeline below the flagship
//! configuration: projections, decomposition cross-checks, classification
//! stability, and transform-convention independence.

use cyclespace::cli::convention_flip_spectrum_gap;
use cyclespace::config::{Budget, Tolerances};
use cyclespace::group::VertexTable;
use cyclespace::intop::adjacency;
use cyclespace::spectral::gft;
use cyclespace::ssl::{
    classify, complex_trace, decompose, decompose_classified, hermiticity_error,
    projection_law_error, spatial_projection, spectral_projection, SslConfig,
};

fn table(m: u32, n: usize) -> VertexTable {
    VertexTable::new(m, n, &Budget::default()).unwrap()
}

#[test]
fn projections_on_c5_squared() {
    let t = table(5, 2);
    let f = gft(&t);
    assert!(f.unitarity_error() < 1e-13);
    assert!(f.diagonalization_error(&adjacency(&t)) < 1e-12);
    let p = spectral_projection(&f, &t, 2);
    assert!(projection_law_error(&p) < 1e-12);
    assert!(hermiticity_error(&p) < 1e-13);
    let q = spatial_projection(&t, 2);
    assert_eq!(q.trace(), 13); // 1 + 4 + (4 + 4)
    assert!((complex_trace(&p).re - 13.0).abs() < 1e-9);
}

#[test]
fn trace_fraction_for_rank_one_spatial_cut() {
    // Q at K=0 against the K=2 spectral cut on C_5^2: the single nonzero
    // eigenvalue is the trace fraction 13/25 at the origin diagonal entry
    let t = table(5, 2);
    let f = gft(&t);
    let q = spatial_projection(&t, 0);
    let p = spectral_projection(&f, &t, 2);
    let config = SslConfig::new(5, 2, 0, Tolerances::default()).unwrap();
    let report = decompose(&p, &q, &t, &f, &config).unwrap();
    assert_eq!(report.nonzero_count, 1);
    assert!((report.spectrum[0] - 13.0 / 25.0).abs() < 1e-12);
}

#[test]
fn convention_flip_is_spectrum_neutral() {
    for (m, n, k) in [(3u32, 2usize, 1u32), (5, 2, 2), (4, 2, 2)] {
        let gap = convention_flip_spectrum_gap(m, n, k).unwrap();
        assert!(gap < 1e-10, "m={m} N={n} K={k}: gap {gap}");
    }
}

#[test]
fn classification_is_stable_under_cluster_rotation() {
    let t = table(5, 2);
    let f = gft(&t);
    let tolerances = Tolerances::default();
    let config = SslConfig::new(5, 2, 2, tolerances).unwrap();
    let q = spatial_projection(&t, 2);
    let p = spectral_projection(&f, &t, 2);
    let mut report = decompose_classified(&p, &q, &t, &f, &config).unwrap();
    let baseline = report.class_table(false);
    for seed in [0u64, 1, 42] {
        classify(&mut report, &t, &tolerances, Some(seed)).unwrap();
        assert_eq!(report.class_table(false), baseline, "seed {seed}");
    }
}

#[test]
fn spectrum_lies_in_unit_interval() {
    let t = table(4, 2);
    let f = gft(&t);
    let config = SslConfig::new(4, 2, 2, Tolerances::default()).unwrap();
    let q = spatial_projection(&t, 2);
    let p = spectral_projection(&f, &t, 2);
    let report = decompose(&p, &q, &t, &f, &config).unwrap();
    assert!(report.range_excess < 1e-10);
    assert!(report.trace_error < 1e-8);
    assert_eq!(report.nonzero_count, report.ball.len());

    // classification on this m = 4 cut genuinely mixes reflection
    // eigenvalues; the contract reports the ambiguity instead of guessing
    let mut r = report;
    let err = classify(&mut r, &t, &Tolerances::default(), None);
    assert!(matches!(err, Err(cyclespace::Error::ClassificationAmbiguous(_))));

    // a classifiable configuration accounts for the whole range of Q
    let t = table(5, 2);
    let f = gft(&t);
    let config = SslConfig::new(5, 2, 2, Tolerances::default()).unwrap();
    let q = spatial_projection(&t, 2);
    let p = spectral_projection(&f, &t, 2);
    let report = decompose_classified(&p, &q, &t, &f, &config).unwrap();
    let classified: usize = report.classes.iter().map(|c| c.dim * c.multiplicity).sum();
    assert_eq!(classified, report.ball.len());
}

#[test]
fn report_outputs_are_deterministic_and_well_formed() {
    let t = table(5, 2);
    let f = gft(&t);
    let config = SslConfig::new(5, 2, 1, Tolerances::default()).unwrap();
    let q = spatial_projection(&t, 1);
    let p = spectral_projection(&f, &t, 1);
    let a = decompose_classified(&p, &q, &t, &f, &config).unwrap();
    let b = decompose_classified(&p, &q, &t, &f, &config).unwrap();
    assert_eq!(a.to_csv(true), b.to_csv(true));
    assert_eq!(a.fig_spectrum(true), b.fig_spectrum(true));
    assert_eq!(a.fig_level_vectors(&t, true), b.fig_level_vectors(&t, true));
    assert_eq!(a.fig_class_representatives(&t, true), b.fig_class_representatives(&t, true));
    // CSV has one row per nonzero spectrum entry plus a header
    let rows = a.to_csv(true).lines().count();
    assert_eq!(rows, a.nonzero_count + 1);
}
