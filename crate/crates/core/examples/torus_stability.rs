//! Hilbert-Mumford verdicts for every support of a rank-two weight system.

use gauged::algebra::rational::rat;
use gauged::stability::{classify, hm_weight, WeightSystem};

fn main() {
    let weights = vec![vec![1, 0], vec![0, 1], vec![-1, -1], vec![1, 1]];
    let ws = WeightSystem::new(2, weights, vec![rat(0, 1), rat(1, 2)], None).expect("valid weights");
    for s in ws.all_supports() {
        let v = classify(&ws, &s);
        print!("{s}: {v}");
        if let Some(w) = &v.witness {
            let hm = hm_weight(&ws, &s, w).expect("witness has the right length");
            print!("  (weight along witness {hm})");
        }
        println!();
    }
}
