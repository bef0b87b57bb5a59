use proptest::prelude::*;
use zfourier::config::{RunConfig, KEYS};

#[test]
fn parses_keys_comments_and_blank_lines() {
    let text =
        "# run settings\nquadrature.nodes = 24\n\nzeta.em_terms=40 # more terms\nzeros.count=50\ncache.dir=/tmp/c\n";
    let c = RunConfig::parse(text).unwrap();
    assert_eq!(c.quadrature_nodes, 24);
    assert_eq!(c.zeta_em_terms, 40);
    assert_eq!(c.zeros_count, 50);
    assert_eq!(c.cache_dir.to_str(), Some("/tmp/c"));
    assert_eq!(c.quadrature_y_max, RunConfig::default().quadrature_y_max);
}

#[test]
fn rejects_unknown_keys_with_line() {
    let err = RunConfig::parse("zeros.count=10\nquadrature.order=3\n").unwrap_err();
    assert_eq!(err.line, 2);
    assert!(err.message.contains("quadrature.order"));
}

#[test]
fn rejects_non_positive_and_malformed_values() {
    for text in [
        "quadrature.tol=0",
        "quadrature.nodes=-3",
        "deriv.radius=nan",
        "zeros.count=",
        "series.k_max=1.5",
        "cache.dir=",
        "no equals sign",
    ] {
        assert!(RunConfig::parse(text).is_err(), "{text}");
    }
}

#[test]
fn overrides_apply_after_file() {
    let c = RunConfig::parse("zeros.count=50\n")
        .unwrap()
        .with_overrides([("zeros.count", "20")])
        .unwrap();
    assert_eq!(c.zeros_count, 20);
    assert!(RunConfig::default().with_overrides([("bogus", "1")]).is_err());
}

#[test]
fn hash_tracks_results_not_cache_location() {
    let base = RunConfig::default();
    let moved = base.clone().with_overrides([("cache.dir", "elsewhere")]).unwrap();
    let finer = base.clone().with_overrides([("quadrature.tol", "1e-12")]).unwrap();
    assert_eq!(base.hash(), moved.hash());
    assert_ne!(base.hash(), finer.hash());
    assert_eq!(base.entries().len(), KEYS.len() - 1);
}

proptest! {
    #[test]
    fn positive_counts_round_trip(v in 1usize..1_000_000, k in 0usize..4) {
        let key = ["quadrature.nodes", "zeta.em_terms", "series.k_max", "zeros.count"][k];
        let c = RunConfig::parse(&format!("{key}={v}")).unwrap();
        prop_assert_eq!(c.entries()[key].clone(), v.to_string());
    }

    #[test]
    fn hash_is_deterministic(tol in 1e-14f64..1e-3) {
        let a = RunConfig::default().with_overrides([("quadrature.tol", tol.to_string().as_str())]).unwrap();
        let b = RunConfig::parse(&format!("quadrature.tol={tol}")).unwrap();
        prop_assert_eq!(a.hash(), b.hash());
    }
}
