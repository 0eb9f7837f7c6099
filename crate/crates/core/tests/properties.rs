use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use gauged::algebra::poly::MultiPoly;
use gauged::algebra::ratfun::RationalFunction;
use gauged::algebra::rational::{int, rat, Rational};
use gauged::algebra::rewrite::Term;
use gauged::algebra::series::TruncatedSeries;
use gauged::curves::{
    automorphism_count, check_balanced, degenerations, enumerate_types, stratum_dimension, validate, EdgeParams,
    Label, Mode, ScaledType,
};
use gauged::mundet::{
    mundet_classify, mundet_weight_toric, ramanathan_weight, total_mundet_weight, FiltrationData, GaugedMapData,
    MundetStatus,
};
use gauged::potentials::framed::FramedPoint;
use gauged::potentials::{
    age, batyrev_presentation, delta_factor_symbolic, framed_sheaf_fundamental_solution, qh_presentation,
    FramedMode, FramedSheafSpec, LinearActionSpec,
};
use gauged::stability::{classify, hm_weight, kn_strata, StabilityStatus, WeightSystem};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("non-zero", |q| !q.is_zero())
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    let term = (small_rational(), 0u32..3, 0u32..3, 0u32..2)
        .prop_map(|(c, a, b, e)| MultiPoly::monomial(c, &[("x", a), ("y", b), ("z", e)]));
    prop::collection::vec(term, 0..4).prop_map(|ts| ts.into_iter().fold(MultiPoly::zero(), |acc, t| acc + t))
}

fn nonzero_poly() -> impl Strategy<Value = MultiPoly> {
    poly().prop_filter("non-zero", |p| !p.is_zero())
}

fn series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(poly(), 4).prop_map(|cs| {
        TruncatedSeries::from_coefficients("q", 3, cs.into_iter().map(RationalFunction::from))
    })
}

fn weight_vectors(r: usize, max_k: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, r), 1..=max_k)
}

fn weight_system(max_r: usize, max_k: usize) -> impl Strategy<Value = WeightSystem> {
    (1..=max_r)
        .prop_flat_map(move |r| {
            (
                Just(r),
                weight_vectors(r, max_k),
                prop::collection::vec((-3i64..=3).prop_map(|n| rat(n, 2)), r),
            )
        })
        .prop_map(|(r, w, theta)| WeightSystem::new(r, w, theta, None).expect("valid"))
}

fn coweight(r: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(-3i64..=3, r)
        .prop_filter("non-zero", |v| v.iter().any(|&x| x != 0))
        .prop_map(|v| v.into_iter().map(int).collect())
}

fn neg(v: &[Rational]) -> Vec<Rational> {
    v.iter().map(|x| -x).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn series_ring_axioms(a in series(), b in series(), c in series()) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), ab.add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(ab, b.mul(&a).unwrap());
    }

    #[test]
    fn rational_function_equality_is_an_equivalence(p in poly(), q in nonzero_poly(), r in nonzero_poly(), s in nonzero_poly()) {
        let a = RationalFunction::new(p.clone(), q.clone()).unwrap();
        let b = RationalFunction::new(&p * &r, &q * &r).unwrap();
        let c = RationalFunction::new(&(&p * &r) * &s, &(&q * &r) * &s).unwrap();
        prop_assert_eq!(&a, &a);
        prop_assert_eq!(&a == &b, &b == &a);
        prop_assert!(a == b && b == c);
        prop_assert_eq!(&a, &c);
    }

    #[test]
    fn normal_form_is_idempotent_and_evaluates_consistently(k in 2u32..=5, e in 0u32..20, f in 0u32..4, t in nonzero_rational()) {
        let qh = qh_presentation(k).unwrap();
        let m = Term::new(int(1), &[("beta", e), ("q", f)]);
        let nf = qh.presentation.normal_form(&m).unwrap();
        prop_assert_eq!(qh.reduce(&nf).unwrap(), nf.clone());
        let point: BTreeMap<String, Rational> =
            [("beta".to_string(), t.clone()), ("q".to_string(), num_traits::pow(t.clone(), k as usize))].into();
        prop_assert_eq!(m.to_poly().eval(&point).unwrap(), nf.eval(&point).unwrap());
    }

    #[test]
    fn witnesses_destabilize(ws in weight_system(3, 5), mask in 1u32..32) {
        let k = ws.num_weights();
        let idx: Vec<usize> = (1..=k).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        prop_assume!(!idx.is_empty());
        let s = ws.support(idx).unwrap();
        let v = classify(&ws, &s);
        prop_assert_eq!(v.witness.is_some(), v.status == StabilityStatus::Unstable);
        if let Some(w) = &v.witness {
            prop_assert!(hm_weight(&ws, &s, w).unwrap().is_positive());
        }
    }

    #[test]
    fn verdicts_are_scale_invariant(ws in weight_system(2, 5), c in 2i64..=4, lambda in coweight(2)) {
        let scaled_w: Vec<Vec<i64>> = ws.weights().iter().map(|w| w.iter().map(|x| x * c).collect()).collect();
        let scaled_t: Vec<Rational> = ws.theta().iter().map(|t| t * int(c)).collect();
        let scaled = WeightSystem::new(ws.rank(), scaled_w, scaled_t, None).unwrap();
        let lambda = &lambda[..ws.rank()];
        prop_assume!(lambda.iter().any(|x| !x.is_zero()));
        let doubled: Vec<Rational> = lambda.iter().map(|x| x * int(2)).collect();
        for s in ws.all_supports() {
            prop_assert_eq!(classify(&ws, &s).status, classify(&scaled, &s).status);
            let a = hm_weight(&ws, &s, lambda).unwrap();
            let b = hm_weight(&ws, &s, &doubled).unwrap();
            prop_assert_eq!(a.signum(), b.signum());
        }
    }

    #[test]
    fn polystable_weights_vanish_symmetrically(ws in weight_system(2, 5), lambda in coweight(2)) {
        let lambda = &lambda[..ws.rank()];
        prop_assume!(lambda.iter().any(|x| !x.is_zero()));
        for s in ws.all_supports() {
            let status = classify(&ws, &s).status;
            if status.is_polystable() && hm_weight(&ws, &s, lambda).unwrap().is_zero() {
                prop_assert!(hm_weight(&ws, &s, &neg(lambda)).unwrap().is_zero());
            }
            if status.is_semistable() {
                prop_assert!(!hm_weight(&ws, &s, lambda).unwrap().is_positive());
            }
        }
    }

    #[test]
    fn strata_cover_unstable_supports(ws in weight_system(2, 5)) {
        let strata = kn_strata(&ws);
        for s in ws.all_supports() {
            let covering = strata.iter().filter(|st| st.contains(&ws, &s)).count();
            let unstable = classify(&ws, &s).status == StabilityStatus::Unstable;
            prop_assert_eq!(covering, usize::from(unstable), "support {}", s);
        }
    }

    #[test]
    fn mundet_verdict_matches_weights(ws in weight_system(1, 5), d in -2i64..=2, mask in 0u32..32) {
        let support: Vec<usize> = (1..=ws.num_weights()).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let g = GaugedMapData::new(ws, vec![d], support, 0).unwrap();
        let unstable = mundet_classify(&g).status == MundetStatus::Unstable;
        let destabilized = [int(1), int(-1)]
            .iter()
            .any(|l| mundet_weight_toric(&g, std::slice::from_ref(l)).unwrap().is_destabilizing());
        prop_assert_eq!(unstable, destabilized);
        if g.support.is_empty() {
            prop_assert!(unstable);
        }
    }

    #[test]
    fn mundet_shift_equivariance(ws in weight_system(2, 4), d in prop::collection::vec(-2i64..=2, 2), c in prop::collection::vec(-3i64..=3, 2), mask in 0u32..16) {
        let r = ws.rank();
        let support: Vec<usize> = (1..=ws.num_weights()).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let g = GaugedMapData::new(ws.clone(), d[..r].to_vec(), support, 0).unwrap();
        let c = &c[..r];
        let c_dual = ws.dual(&c.iter().map(|&x| int(x)).collect::<Vec<_>>());
        let theta: Vec<Rational> = ws.theta().iter().zip(&c_dual).map(|(t, x)| t - x).collect();
        let moved = g.shifted(c, theta).unwrap();
        prop_assert_eq!(mundet_classify(&g).status, mundet_classify(&moved).status);
    }

    #[test]
    fn ramanathan_sign_follows_subbundle_degree(a in -5i64..=5, mu_x in small_rational()) {
        let f = FiltrationData::new(vec![(1, a), (1, -a)]).unwrap();
        let w = ramanathan_weight(&f, &[int(1), int(-1)]).unwrap();
        prop_assert_eq!(w.signum(), int(a.signum()));
        prop_assert_eq!(total_mundet_weight(&w, &mu_x), &w + &mu_x);
    }

    #[test]
    fn balanced_is_invariant_under_vertex_rescaling(seed in 0usize..1000, gamma in prop::collection::vec(nonzero_rational(), 12), c in nonzero_rational()) {
        let pool: Vec<ScaledType> = [Mode::Projective, Mode::Affine]
            .iter()
            .flat_map(|&m| enumerate_types(3, m, 6).unwrap())
            .filter(|t| t.num_edges() > 0)
            .collect();
        let t = &pool[seed % pool.len()];
        let verts = t.vertices();
        let internal: Vec<usize> = (0..verts.len())
            .filter(|&v| !verts[v].vertex.children.is_empty() && verts[v].vertex.label != Label::Transition)
            .collect();
        prop_assume!(!internal.is_empty());
        let v = internal[seed % internal.len()];
        let gamma: Vec<Rational> = gamma[..t.num_edges()].to_vec();
        let mut moved = gamma.clone();
        if v > 0 {
            moved[v - 1] *= &c;
        }
        for (e, fv) in verts.iter().enumerate().skip(1) {
            if fv.parent == Some(v) {
                moved[e - 1] /= &c;
            }
        }
        prop_assert_eq!(
            check_balanced(t, &EdgeParams(gamma)).unwrap(),
            check_balanced(t, &EdgeParams(moved)).unwrap()
        );
    }

    #[test]
    fn delta_factor_recursion(m in -3i64..=3) {
        let step = MultiPoly::var("theta") + MultiPoly::var("w") + MultiPoly::var("zeta").scale(&int(m));
        prop_assert_eq!(delta_factor_symbolic(m), delta_factor_symbolic(m - 1).mul_poly(&step));
    }

    #[test]
    fn toric_rewriting_agrees_with_projective(k in 2u32..=4, exps in prop::collection::vec(0u32..6, 4), e in 0u32..3) {
        let spec = LinearActionSpec::projective_space(k as usize, 1);
        let toric = batyrev_presentation(&spec, &[vec![1]]).unwrap();
        let qh = qh_presentation(k).unwrap();
        let names: Vec<String> = (1..=k).map(|j| format!("beta{j}")).collect();
        let mut powers: Vec<(&str, u32)> = names.iter().zip(&exps).map(|(n, &x)| (n.as_str(), x)).collect();
        powers.push(("q", e));
        let m = Term::new(int(1), &powers).to_poly();
        let identify = |p: &MultiPoly| names.iter().fold(p.clone(), |acc, n| acc.substitute(n, &MultiPoly::var("beta")));
        let via_toric = qh.reduce(&identify(&toric.reduce(&m).unwrap())).unwrap();
        prop_assert_eq!(via_toric, qh.reduce(&identify(&m)).unwrap());
    }

    #[test]
    fn framed_paths_agree(k in 1u32..=2, r in 1u32..=2, d in 1u32..=2, theta in prop::collection::vec(nonzero_rational(), 2), xi1 in nonzero_rational(), xi2 in nonzero_rational(), zeta in nonzero_rational()) {
        let point = FramedPoint { theta: theta[..k as usize].to_vec(), xi1, xi2, zeta };
        let sym = framed_sheaf_fundamental_solution(&FramedSheafSpec { k, r, truncation: d, mode: FramedMode::Symbolic }).unwrap();
        let spec = FramedSheafSpec { k, r, truncation: d, mode: FramedMode::Specialized(point.clone()) };
        if let Ok(a) = framed_sheaf_fundamental_solution(&spec) {
            prop_assert_eq!(a, sym.specialize(&point.to_map()).unwrap());
        }
    }

    #[test]
    fn age_is_additive(order in 1u32..7, a in prop::collection::vec(0u32..7, 0..4), b in prop::collection::vec(0u32..7, 0..4)) {
        let a: Vec<u32> = a.into_iter().map(|s| s % order).collect();
        let b: Vec<u32> = b.into_iter().map(|s| s % order).collect();
        let joined: Vec<u32> = a.iter().chain(&b).copied().collect();
        prop_assert_eq!(age(order, &joined).unwrap(), age(order, &a).unwrap() + age(order, &b).unwrap());
    }
}

#[test]
fn enumerated_types_are_valid_rigid_and_closed_under_degeneration() {
    for mode in [Mode::Projective, Mode::Affine] {
        for n in 0..=3 {
            let Ok(types) = enumerate_types(n, mode, 6) else {
                assert_eq!((n, mode), (0, Mode::Affine));
                continue;
            };
            for t in &types {
                assert_eq!(validate(t), Ok(()), "{t}");
                assert_eq!(automorphism_count(t), 1, "{t}");
                for child in degenerations(t) {
                    if validate(&child).is_ok() {
                        assert!(types.contains(&child), "{t} degenerates to {child}, which is missing");
                    }
                }
            }
            if n >= 1 {
                let top = types.iter().map(|t| stratum_dimension(t).unwrap()).max().unwrap();
                let expected = if mode == Mode::Projective { n + 1 } else { n - 1 };
                assert_eq!(top, expected, "{mode:?}, n = {n}");
            }
        }
    }
}

#[test]
fn boundary_strata_of_two_marked_curves() {
    let types = enumerate_types(2, Mode::Projective, 6).unwrap();
    let by_dim = |d: u32| types.iter().filter(|t| stratum_dimension(t).unwrap() == d).count();
    assert_eq!((by_dim(3), by_dim(2), by_dim(1)), (1, 3, 2));
    assert!(Rational::one().is_positive());
}
