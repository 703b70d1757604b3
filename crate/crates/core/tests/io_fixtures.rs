use hedonic_core::io::{
    graph_to_string, instance_to_string, parse_graph, parse_instance, parse_partition,
    partition_to_string,
};
use hedonic_core::solve::{brute_force_optimal, OracleOptions};
use hedonic_core::welfare::nash_welfare;
use hedonic_core::{fixtures, Partition};
use std::fs;
use std::path::PathBuf;

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn instance_fixtures_roundtrip() {
    for name in [
        "fig1.json",
        "fig3.json",
        "asym4.json",
        "triangles.json",
        "two_sided.json",
        "k_coloring.json",
        "ks_factor.json",
    ] {
        let game = parse_instance(&fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        let text = instance_to_string(&game);
        assert_eq!(parse_instance(&text).unwrap(), game, "{name}");
    }
}

#[test]
fn fixtures_match_builtin_examples() {
    assert_eq!(
        parse_instance(&fixture("fig1.json")).unwrap(),
        fixtures::fig1_game()
    );
    assert_eq!(
        parse_instance(&fixture("fig3.json")).unwrap(),
        fixtures::fig3_game()
    );
    assert_eq!(
        parse_instance(&fixture("asym4.json")).unwrap(),
        fixtures::asymmetric_four()
    );
    assert_eq!(
        parse_partition(&fixture("fig1_opt.json"), 6).unwrap(),
        fixtures::fig1_optimal()
    );
    assert_eq!(
        parse_partition(&fixture("fig1_triangles.json"), 6).unwrap(),
        fixtures::fig1_triangles()
    );
    assert_eq!(
        parse_partition(&fixture("fig3_opt.json"), 4).unwrap(),
        fixtures::fig3_optimal()
    );
}

#[test]
fn fixture_partitions_and_graphs_roundtrip() {
    let asym = parse_instance(&fixture("asym4.json")).unwrap();
    let pairs = parse_partition(&fixture("asym4_pairs.json"), 4).unwrap();
    assert!(nash_welfare(&asym, &pairs).unwrap().is_zero());
    assert_eq!(
        parse_partition(&partition_to_string(&pairs), 4).unwrap(),
        pairs
    );
    for name in [
        "triangles_graph.json",
        "coloring_graph.json",
        "ks_graph.json",
    ] {
        let g = parse_graph(&fixture(name)).unwrap();
        assert_eq!(parse_graph(&graph_to_string(&g)).unwrap(), g, "{name}");
    }
}

#[test]
fn fig1_fixture_solves_to_81() {
    let game = parse_instance(&fixture("fig1.json")).unwrap();
    let r = brute_force_optimal(&game, &OracleOptions::default()).unwrap();
    assert_eq!(r.partition, fixtures::fig1_optimal());
    assert_eq!(r.welfare.product(), &hedonic_core::rational::int(81));
    assert_ne!(r.partition, Partition::singletons(6));
}
