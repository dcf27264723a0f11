use std::path::PathBuf;

use swarm_wilson::fixtures;
use swarm_wilson::wg::parse_wg;
use swarm_wilson::wilson::decide_reachable;

fn read(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn shipped_graphs_match_the_builtin_fixtures() {
    let pairs = [
        ("c5_saturated.wg", fixtures::c5()),
        ("p5_saturated.wg", fixtures::p5()),
        ("bowtie_saturated.wg", fixtures::bowtie()),
        ("tri_sq_saturated.wg", fixtures::tri_sq()),
        ("theta5_saturated.wg", fixtures::theta5()),
        ("pendant4_saturated.wg", fixtures::pendant4()),
        ("p5_123.wg", fixtures::p5()),
        ("star4_12.wg", fixtures::star4()),
        ("spider_123.wg", fixtures::spider()),
        ("pendant4_123.wg", fixtures::pendant4()),
        ("theta5_pendant_5.wg", fixtures::theta5_pendant()),
        ("tree7_start.wg", fixtures::tree7()),
        ("g12_standard.wg", fixtures::g12()),
    ];
    for (file, g) in pairs {
        let parsed = parse_wg(&read(file)).unwrap();
        assert_eq!(*parsed.graph, g, "{file}");
        assert_eq!(parsed.graph.name(), g.name(), "{file}");
        assert!(parsed.config.is_some());
    }
}

#[test]
fn shipped_pairs_decide_as_expected() {
    let load = |f: &str| parse_wg(&read(f)).unwrap().config.unwrap();
    assert!(decide_reachable(&load("p5_123.wg"), &load("p5_slide.wg")).unwrap().reachable);
    assert!(!decide_reachable(&load("p5_123.wg"), &load("p5_swap.wg")).unwrap().reachable);
    assert!(decide_reachable(&load("tree7_start.wg"), &load("tree7_moved.wg")).unwrap().reachable);
    assert!(decide_reachable(&load("star4_12.wg"), &load("star4_21.wg")).unwrap().reachable);
}

#[test]
fn broken_file_is_rejected() {
    let err = parse_wg(&read("bad_disconnected_support.wg")).unwrap_err();
    assert_eq!(err.code(), "DisconnectedSupport");
}
