//! Quantum cohomology and quantum K-theory presentations of projective
//! spaces, and a toric presentation.

use gauged::algebra::poly::MultiPoly;
use gauged::potentials::presentation::qk_reduce;
use gauged::potentials::{batyrev_presentation, qh_presentation, qk_presentation, LinearActionSpec};

fn main() {
    let qh = qh_presentation(3).expect("k >= 2");
    print!("{qh}");
    let beta7 = MultiPoly::var("beta").pow(7);
    println!("beta^7 -> {}", qh.reduce(&beta7).expect("rewrites"));

    let qk = qk_presentation(3).expect("k >= 2");
    print!("{qk}");
    let linv = MultiPoly::var("Linv");
    let top = (MultiPoly::one() - linv.clone()).pow(3);
    println!("(1 - Linv)^3 -> {}", qk_reduce(&qk, &top).expect("rewrites"));
    println!("Linv^4 -> {}", qk_reduce(&qk, &linv.pow(4)).expect("rewrites"));

    let hirzebruch = LinearActionSpec::new(2, vec![vec![1, 0], vec![1, 0], vec![1, 1], vec![0, 1]], 0).expect("rank two");
    let toric = batyrev_presentation(&hirzebruch, &[vec![1, 0], vec![0, 1]]).expect("classes of rank two");
    print!("{toric}");
}
