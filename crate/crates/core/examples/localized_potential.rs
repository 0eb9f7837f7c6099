//! Localized gauged potentials of linear actions and the Δ-factors.

use gauged::potentials::{delta_factor_symbolic, localized_potential, Branch, LinearActionSpec};

fn main() {
    for m in -2..=2 {
        println!("Delta_{m} = {}", delta_factor_symbolic(m));
    }
    let line = LinearActionSpec::projective_space(1, 3);
    println!("{}", localized_potential(&line, Branch::Displayed));
    println!("{}", localized_potential(&line, Branch::Opposite));
    let flop = LinearActionSpec::new(1, vec![vec![1], vec![1], vec![-1], vec![-1]], 2).expect("rank one");
    println!("{}", localized_potential(&flop, Branch::Displayed));
}
