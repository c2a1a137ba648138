use degree_lab::experiment::{emit_report, run_experiment, ConcentrationReport, ReportFormat};
use degree_lab::io::{graph_to_string, read_forest, read_graph, write_forest, write_graph};
use degree_lab::pruefer::sample_forest;
use degree_lab::samplers::sample_gnm;
use degree_lab::{ExperimentConfig, ExperimentKind, Verdict};

fn bins_report(threads: usize) -> ConcentrationReport {
    let cfg = ExperimentConfig::new(ExperimentKind::Bins { n: 5_000, k: 5_000 }, 64, 0xAB);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(|| run_experiment(&cfg).unwrap())
}

#[test]
fn json_round_trip() {
    let report = bins_report(4);
    let bytes = emit_report(&report, ReportFormat::Json).unwrap();
    let parsed: ConcentrationReport = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(
        parsed,
        ConcentrationReport {
            records: Vec::new(),
            ..report.clone()
        }
    );

    let value: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
    for key in [
        "kind",
        "params",
        "prediction",
        "histogram",
        "hitFraction",
        "verdict",
        "masterSeed",
        "trialSeeds",
        "elapsedMs",
    ] {
        assert!(value.get(key).is_some(), "missing {key}");
    }
    assert_eq!(value["kind"], "bins");
    let mass: u64 = report.histogram.iter().map(|&(_, c)| c).sum();
    assert_eq!(mass, 64);
    assert!((0.0..=1.0).contains(&report.hit_fraction));
    assert_eq!(
        report.verdict == Verdict::Pass,
        report.hit_fraction >= report.threshold
    );
}

#[test]
fn thread_count_does_not_change_the_report() {
    let a = emit_report(&bins_report(1).without_timing(), ReportFormat::Json).unwrap();
    let b = emit_report(&bins_report(8).without_timing(), ReportFormat::Json).unwrap();
    assert_eq!(a, b);
}

#[test]
fn census_experiment() {
    let cfg = ExperimentConfig::new(ExperimentKind::Census { n: 3, m: 2 }, 30_000, 7);
    let r = run_experiment(&cfg).unwrap();
    assert!(r.auxiliary["tvDistance"] < 0.02);
    assert_eq!(r.histogram.len(), 3);
    assert!(r.passed());
}

#[test]
fn edge_list_round_trips() {
    let g = sample_gnm(300, 200, 5).unwrap().graph;
    let mut buf = Vec::new();
    write_graph(&mut buf, &g).unwrap();
    assert_eq!(read_graph(&buf[..]).unwrap(), g);
    assert_eq!(String::from_utf8(buf).unwrap(), graph_to_string(&g));

    let f = sample_forest(200, 7, 5).unwrap();
    let mut buf = Vec::new();
    write_forest(&mut buf, &f).unwrap();
    assert_eq!(read_forest(&buf[..]).unwrap(), f);
}
