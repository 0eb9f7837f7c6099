//! Truncated J-functions of projective space satisfy their quantum
//! differential and difference equations.

use gauged::potentials::{qde_classical_term, qde_residual_cohomological, qde_residual_ktheoretic};

fn main() {
    for k in 1..=4 {
        let h = qde_residual_cohomological(k, 5).expect("k, D >= 1");
        let kt = qde_residual_ktheoretic(k, 5).expect("k, D >= 1");
        println!(
            "k = {k}: classical {} | {}; residuals {} and {}",
            qde_classical_term(k, false),
            qde_classical_term(k, true),
            h,
            kt
        );
    }
}
