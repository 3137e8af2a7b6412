use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use unilat_core::construct::construct_2uninorm;
use unilat_core::sample::random_lattice;
use unilat_core::search::{search_generators, SearchConfig};
use unilat_core::verify::verify_full;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(20240913);
    for round in 0..8 {
        let l = random_lattice(&mut rng, 6);
        let cfg = SearchConfig {
            max_abs: 3,
            max_results: Some(40),
            node_budget: 400_000,
            ..SearchConfig::default()
        };
        let outcome = search_generators(&l, &cfg).unwrap();
        println!("round {round}: n={} found={} partial={}", l.n(), outcome.generators.len(), outcome.partial);
        for g in outcome.generators.iter().take(10) {
            let table = construct_2uninorm(g, false).unwrap();
            let report = verify_full(&table);
            if !report.passed() {
                let a = g.anchors();
                println!("  FAIL anchors e1={} a={} e2={}", l.label(a.e1), l.label(a.a), l.label(a.e2));
                println!("  covers: {:?}", l.covers().iter().map(|&(u,v)| format!("{}<{}", l.label(u), l.label(v))).collect::<Vec<_>>());
                for x in l.elements() {
                    println!("    f({}) = {}", l.label(x), g.value(x));
                }
                for e in &report.entries {
                    if !matches!(e.status, unilat_core::verify::AxiomStatus::Pass) {
                        println!("    axiom {}: {:?}", e.axiom, e.status);
                    }
                }
                for x in l.elements() {
                    let row: Vec<&str> = l.elements().map(|y| l.label(table.at(x, y))).collect();
                    println!("    row {}: {:?}", l.label(x), row);
                }
                return;
            }
        }
    }
    println!("all sound");
}
