use ik22::graph::SimpleGraph;
use ik22::{catalog, minor, planar};
use rand::{Rng, SeedableRng};

fn main() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12345);
    let k5 = catalog::complete(5);
    let k33 = catalog::k33();
    let mut disagreements = 0;
    let t0 = std::time::Instant::now();
    for trial in 0..3000 {
        let n = rng.gen_range(1..=12);
        let p: f64 = rng.gen_range(0.1..0.7);
        let mut g = SimpleGraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        let dmp = planar::is_planar_simple(&g);
        let oracle = minor::has_minor(&g, &k5).is_none() && minor::has_minor(&g, &k33).is_none();
        if dmp != oracle {
            disagreements += 1;
            println!("DISAGREE trial {trial}: dmp={dmp} oracle={oracle} g={:?}", g);
            if disagreements > 5 { break; }
        }
    }
    println!("done in {:?}, disagreements={disagreements}", t0.elapsed());
}
