use std::time::Instant;

use weierstrass::catalog::{run_catalog, IDS};
use weierstrass::criteria::{CertifyConfig, Property};

#[test]
fn full_catalog_matches_and_is_deterministic() {
    let cfg = CertifyConfig::default();
    let t = Instant::now();
    let first = run_catalog(None, &cfg).unwrap();
    let elapsed = t.elapsed();
    for e in &first {
        for c in &e.cases {
            for k in &c.checks {
                println!(
                    "{:<16} {:<26} {} {}",
                    e.id,
                    c.label,
                    if k.matched { "ok  " } else { "MISS" },
                    k.actual
                );
            }
        }
    }
    println!("catalog took {elapsed:?}");
    assert_eq!(first.len(), IDS.len());
    assert!(first.iter().all(|e| e.matched));

    let beyond = &first[6].cases[0];
    println!(
        "gamma-a-beyond l-Weierstrass recorded as {}",
        beyond
            .verdict(Property::LWeierstrass)
            .unwrap()
            .outcome
            .label()
    );

    let again = run_catalog(None, &cfg).unwrap();
    assert_eq!(
        serde_json::to_string(&first).unwrap(),
        serde_json::to_string(&again).unwrap()
    );
}
