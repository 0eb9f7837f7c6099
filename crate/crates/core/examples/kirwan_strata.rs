//! Kempf-Ness strata of a `C^*` action and the stratum of each support.

use gauged::algebra::rational::rat;
use gauged::stability::{kn_strata, stratum_of, WeightSystem};

fn main() {
    let ws = WeightSystem::rank_one(&[2, 1, 0, -1], rat(1, 2)).expect("valid weights");
    let strata = kn_strata(&ws);
    for (i, s) in strata.iter().enumerate() {
        println!("stratum {}: {s}", i + 1);
    }
    for s in ws.all_supports() {
        match stratum_of(&ws, &strata, &s) {
            Some(i) => println!("{s} lies in stratum {}", i + 1),
            None => println!("{s} is semistable"),
        }
    }
}
