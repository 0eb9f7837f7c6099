//! Strata of scaled marked curves: census, dimensions, images of the
//! forgetful map, the divisor relations and balanced edge parameters.

use gauged::algebra::rational::int;
use gauged::curves::{
    check_balanced, divisor_pairs, enumerate_types, parse_term, rho_image, stratum_dimension, EdgeParams, Mode,
    DEFAULT_BOUND,
};

fn main() {
    for mode in [Mode::Projective, Mode::Affine] {
        for n in 1..=3 {
            let types = enumerate_types(n, mode, DEFAULT_BOUND).expect("within bound");
            println!("{mode:?}, n = {n}: {} types", types.len());
        }
    }

    for t in enumerate_types(2, Mode::Projective, DEFAULT_BOUND).expect("within bound") {
        let dim = stratum_dimension(&t).expect("valid type");
        let rho = rho_image(&t).expect("projective type");
        println!("  {t:<24} dim {dim}  rho {}", rho.as_str());
    }

    for mode in [Mode::Projective, Mode::Affine] {
        let rel = divisor_pairs(2, mode, DEFAULT_BOUND).expect("within bound");
        let side = |v: &[gauged::curves::DivisorMember]| v.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" + ");
        println!("{} ~ {}", side(&rel.left), side(&rel.right));
    }

    let t = parse_term("τ((κ(z1) κ(z2)))", Mode::Projective).expect("valid term");
    for params in [[2, 3, 3], [2, 3, 5]] {
        let p = EdgeParams(params.iter().map(|&x| int(x)).collect());
        println!("{t} with {params:?}: balanced = {}", check_balanced(&t, &p).expect("three edges"));
    }
}
