//! Mundet semistability of toric gauged maps, the shift symmetry of the
//! verdict and the dimension of the quot compactification.

use gauged::algebra::rational::{int, rat};
use gauged::mundet::{mundet_classify, mundet_weight_toric, quot_moduli_dimension, GaugedMapData};
use gauged::stability::WeightSystem;

fn main() {
    let ws = WeightSystem::rank_one(&[1, 1, 1], rat(1, 3)).expect("valid weights");
    for d in 0..3 {
        let g = GaugedMapData::new(ws.clone(), vec![d], [1, 2], 1).expect("valid map");
        let w = mundet_weight_toric(&g, &[int(1)]).expect("non-zero coweight");
        println!("d(P) = {d}: {} (weight along 1: {w})", mundet_classify(&g));
    }

    let g = GaugedMapData::new(ws, vec![1], [1], 1).expect("valid map");
    let moved = g.shifted(&[2], vec![rat(1, 3) - int(2)]).expect("same rank");
    println!(
        "shifting d(P) by 2 and theta by -2 keeps the verdict: {} -> {}",
        mundet_classify(&g),
        mundet_classify(&moved)
    );

    for k in 1..=4 {
        let dims: Vec<String> = (0..=3)
            .map(|d| quot_moduli_dimension(k, d, 0).expect("k > 0").to_string())
            .collect();
        println!("k = {k}: dim P = {}", dims.join(" "));
    }
}
