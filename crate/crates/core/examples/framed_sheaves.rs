//! The framed-sheaf fundamental solution, evaluated symbolically and at a
//! rational point, together with ages and the crepancy test.

use std::collections::BTreeMap;

use gauged::potentials::framed::{format_point, FramedPoint};
use gauged::potentials::{age, crepancy_check, framed_sheaf_fundamental_solution, FramedMode, FramedSheafSpec};

fn main() {
    let symbolic = FramedSheafSpec {
        k: 1,
        r: 1,
        truncation: 2,
        mode: FramedMode::Symbolic,
    };
    let s = framed_sheaf_fundamental_solution(&symbolic).expect("small enough");
    println!("symbolic: {s}");

    let point = FramedPoint::default_for(1);
    let at: BTreeMap<String, _> = point.to_map();
    let specialized = framed_sheaf_fundamental_solution(&FramedSheafSpec {
        mode: FramedMode::Specialized(point.clone()),
        ..symbolic
    })
    .expect("no vanishing factor");
    println!("at {}: {specialized}", format_point(&point));
    println!("agree: {}", s.specialize(&at).expect("all symbols bound") == specialized);

    println!("age(3; 1, 2) = {}", age(3, &[1, 2]).expect("exponents below order"));
    println!("weights 0 1 1 -1 -1: {}", crepancy_check(&[0, 1, 1, -1, -1]));
    println!("weights 1 1: {}", crepancy_check(&[1, 1]));
}
