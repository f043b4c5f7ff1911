mod common;

use bridgelen::{
    bridge_length, mst_longest_edge, oracle_bridge_length, required_half_width, spans_lattice,
    CandidateEdge,
};
use common::fixture;

#[test]
fn lattices_have_known_bridge_lengths() {
    for (name, beta) in [
        ("z1.json", 1.0),
        ("z2.json", 1.0),
        ("z3.json", 1.0),
        ("bcc.json", 0.75f64.sqrt()),
    ] {
        let set = fixture(name);
        let report = bridge_length(&set, Default::default()).unwrap();
        assert!((report.beta - beta).abs() <= 1e-12 * beta, "{name}: {}", report.beta);
        let oracle = oracle_bridge_length(&set, required_half_width(&set)).unwrap();
        assert!((oracle - beta).abs() <= 1e-12 * beta, "{name}: oracle {oracle}");
    }
}

fn edge(dest_t: [i64; 2]) -> (usize, usize, Vec<i64>) {
    (0, 1, dest_t.to_vec())
}

fn key(e: &CandidateEdge) -> (usize, usize, Vec<i64>) {
    (e.source, e.dest, e.translation.clone())
}

#[test]
fn labelled_cycle_trace() {
    let set = fixture("labelled_cycle.json");
    let report = bridge_length(&set, Default::default()).unwrap();

    let forest: Vec<_> = report.forest_edges.iter().map(key).collect();
    assert_eq!(forest, vec![edge([0, 1])]);
    let cycles: Vec<_> = report
        .basis_cycle_edges
        .iter()
        .map(|c| (key(&c.edge), c.cycle_sum.clone()))
        .collect();
    assert_eq!(
        cycles,
        vec![(edge([0, 0]), vec![0, 1]), (edge([1, 1]), vec![-1, 0])]
    );
    assert_eq!(report.edges_examined, 3);
    assert_eq!(key(&report.last_edge), edge([1, 1]));
    assert_eq!(report.invariant_factors, ["1", "1"]);
    assert!(spans_lattice(&report.translational_matrix()));
    assert!((report.beta - 0.75).abs() < 1e-12);

    let lengths: Vec<f64> = [0.45f64.hypot(0.4), 0.55f64.hypot(0.4), 0.75]
        .into_iter()
        .collect();
    let seen = [
        report.forest_edges[0].length,
        report.basis_cycle_edges[0].edge.length,
        report.basis_cycle_edges[1].edge.length,
    ];
    for (a, b) in seen.iter().zip(&lengths) {
        assert!((a - b).abs() < 1e-12);
    }
    let oracle = oracle_bridge_length(&set, required_half_width(&set)).unwrap();
    assert!((oracle - 0.75).abs() < 1e-12);
}

#[test]
fn gap_bridge_separates_finite_and_periodic() {
    let set = fixture("gap_bridge.json");
    let cartesian = set.motif_cartesian();
    let min_gap = (0..cartesian.len())
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .map(|(i, j)| dist(&cartesian[i], &cartesian[j]))
        .fold(f64::INFINITY, f64::min);
    assert!((min_gap - 1.0).abs() < 1e-9);

    for k in 1..=3 {
        let mst = mst_longest_edge(&set.extended_motif(k)).unwrap();
        assert!((mst - 3.0).abs() < 1e-9, "k = {k}: {mst}");
    }
    let report = bridge_length(&set, Default::default()).unwrap();
    assert!((report.beta - 2.0).abs() < 1e-9);
    let oracle = oracle_bridge_length(&set, required_half_width(&set)).unwrap();
    assert!((oracle - 2.0).abs() < 1e-9);
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

#[test]
fn cif_with_centring_matches_json() {
    use bridgelen::ingest::{load_file, InputFormat, LoadOptions};
    let from_cif = load_file(&common::fixture_path("bcc.cif"), &LoadOptions::default()).unwrap();
    assert_eq!(from_cif.motif_len(), 2);
    let report = bridge_length(&from_cif, Default::default()).unwrap();
    assert!((report.beta - 0.75f64.sqrt()).abs() < 1e-12);

    let plain = LoadOptions {
        expand_symmetry: false,
        ..Default::default()
    };
    let primitive = load_file(&common::fixture_path("bcc.cif"), &plain).unwrap();
    assert_eq!(primitive.motif_len(), 1);

    let forced = LoadOptions {
        format: Some(InputFormat::Cif),
        ..Default::default()
    };
    assert!(load_file(&common::fixture_path("bcc.json"), &forced).is_err());
    assert!(matches!(
        load_file(&common::fixture_path("missing.json"), &LoadOptions::default()),
        Err(bridgelen::IngestError::Io { .. })
    ));
}
