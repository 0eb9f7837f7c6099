//! Fundamental solution for framed sheaves of rank `r` and charge `k`.
//!
//! The coefficient of `q^d`, `d >= 1`, sums over compositions
//! `d = d_1 + ... + d_k` the product over ordered pairs `i != j` of
//!
//! ```text
//! Δ(θ_i - θ_j, ξ1 + ξ2) Δ(θ_i - θ_j, 0) / (Δ(θ_i - θ_j, ξ1) Δ(θ_i - θ_j, ξ2))
//! ```
//!
//! at `m = d_i - d_j`, times `Δ(θ_i, 0)^{-r}` at `m = d_i` and
//! `Δ(-θ_i, ξ1 + ξ2)^{-r}` at `m = -d_i`. No mirror-map correction is
//! applied.
//!
//! Symbolic mode keeps each composition term as a product of powers of
//! primitive linear forms and sums over a common multiple of their
//! denominators. Specialized mode evaluates every Δ directly in rationals.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::poly::MultiPoly;
use crate::algebra::ratfun::RationalFunction;
use crate::algebra::rational::{format_rational, int, Rational};
use crate::algebra::series::TruncatedSeries;

use super::{compositions, PotentialError};

/// Values of `θ_1..θ_k`, `ξ1`, `ξ2` and `ζ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedPoint {
    pub theta: Vec<Rational>,
    pub xi1: Rational,
    pub xi2: Rational,
    pub zeta: Rational,
}

impl FramedPoint {
    /// Reciprocals of the first `k + 3` primes.
    pub fn default_for(k: u32) -> Self {
        let primes = first_primes(k as usize + 3);
        let inv = |p: u64| Rational::new(1.into(), p.into());
        let k = k as usize;
        FramedPoint {
            theta: primes[..k].iter().map(|&p| inv(p)).collect(),
            xi1: inv(primes[k]),
            xi2: inv(primes[k + 1]),
            zeta: inv(primes[k + 2]),
        }
    }

    pub fn to_map(&self) -> BTreeMap<String, Rational> {
        let mut m: BTreeMap<String, Rational> = self
            .theta
            .iter()
            .enumerate()
            .map(|(i, t)| (format!("theta{}", i + 1), t.clone()))
            .collect();
        m.insert("xi1".into(), self.xi1.clone());
        m.insert("xi2".into(), self.xi2.clone());
        m.insert("zeta".into(), self.zeta.clone());
        m
    }
}

fn first_primes(n: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut c = 2u64;
    while out.len() < n {
        if out.iter().all(|p| c % p != 0) {
            out.push(c);
        }
        c += 1;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FramedMode {
    Symbolic,
    Specialized(FramedPoint),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedSheafSpec {
    pub k: u32,
    pub r: u32,
    pub truncation: u32,
    pub mode: FramedMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
enum W {
    Zero,
    Xi1,
    Xi2,
    XiSum,
}

/// `Δ_m(A, w)` raised to `power`, with `A = Σ a_i θ_i`.
#[derive(Debug, Clone)]
struct DeltaUse {
    a: Vec<i64>,
    w: W,
    m: i64,
    power: i64,
}

fn delta_uses(k: usize, r: i64, d: &[u32]) -> Vec<DeltaUse> {
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let mut a = vec![0; k];
            a[i] = 1;
            a[j] = -1;
            let m = i64::from(d[i]) - i64::from(d[j]);
            for (w, power) in [(W::XiSum, 1), (W::Zero, 1), (W::Xi1, -1), (W::Xi2, -1)] {
                out.push(DeltaUse {
                    a: a.clone(),
                    w,
                    m,
                    power,
                });
            }
        }
    }
    for i in 0..k {
        let mut a = vec![0; k];
        a[i] = 1;
        out.push(DeltaUse {
            a: a.clone(),
            w: W::Zero,
            m: i64::from(d[i]),
            power: -r,
        });
        a[i] = -1;
        out.push(DeltaUse {
            a,
            w: W::XiSum,
            m: -i64::from(d[i]),
            power: -r,
        });
    }
    out
}

/// `(l, exponent)` for each linear factor `A + w + l ζ` of `Δ_m^power`.
fn factor_exponents(u: &DeltaUse) -> Vec<(i64, i64)> {
    if u.m >= 0 {
        (1..=u.m).map(|l| (l, u.power)).collect()
    } else {
        (u.m + 1..=0).map(|l| (l, -u.power)).collect()
    }
}

fn describe(u: &DeltaUse, l: i64) -> String {
    let mut parts = Vec::new();
    for (i, &c) in u.a.iter().enumerate() {
        match c {
            0 => {}
            1 => parts.push(format!("+ theta{}", i + 1)),
            -1 => parts.push(format!("- theta{}", i + 1)),
            c => parts.push(format!("{c:+}*theta{}", i + 1)),
        }
    }
    match u.w {
        W::Zero => {}
        W::Xi1 => parts.push("+ xi1".into()),
        W::Xi2 => parts.push("+ xi2".into()),
        W::XiSum => parts.push("+ xi1 + xi2".into()),
    }
    if l != 0 {
        parts.push(format!("{} {}*zeta", if l < 0 { "-" } else { "+" }, l.abs()));
    }
    let s = parts.join(" ");
    s.strip_prefix("+ ").map(str::to_string).unwrap_or(s)
}

fn linear_form(u: &DeltaUse, l: i64) -> MultiPoly {
    let mut p = MultiPoly::zero();
    for (i, &c) in u.a.iter().enumerate() {
        if c != 0 {
            p = p + MultiPoly::var(&format!("theta{}", i + 1)).scale(&int(c));
        }
    }
    let xi1 = MultiPoly::var("xi1");
    let xi2 = MultiPoly::var("xi2");
    p = match u.w {
        W::Zero => p,
        W::Xi1 => p + xi1,
        W::Xi2 => p + xi2,
        W::XiSum => p + xi1 + xi2,
    };
    p + MultiPoly::var("zeta").scale(&int(l))
}

/// A coefficient times a product of powers of primitive linear forms.
#[derive(Debug, Clone)]
struct Factored {
    coeff: Rational,
    powers: BTreeMap<String, (MultiPoly, i64)>,
}

fn factored_term(k: usize, r: i64, d: &[u32]) -> Factored {
    let mut t = Factored {
        coeff: int(1),
        powers: BTreeMap::new(),
    };
    for u in delta_uses(k, r, d) {
        for (l, e) in factor_exponents(&u) {
            let (c, p) = linear_form(&u, l).primitive();
            t.coeff *= pow_rational(&c, e);
            let entry = t.powers.entry(p.to_string()).or_insert((p, 0));
            entry.1 += e;
        }
    }
    t.powers.retain(|_, (_, e)| *e != 0);
    t
}

fn pow_rational(c: &Rational, e: i64) -> Rational {
    let base = if e < 0 { c.recip() } else { c.clone() };
    (0..e.abs()).fold(int(1), |acc, _| acc * &base)
}

fn sum_factored(terms: &[Factored]) -> RationalFunction {
    let mut den_exp: BTreeMap<&str, (&MultiPoly, i64)> = BTreeMap::new();
    for t in terms {
        for (key, (p, e)) in &t.powers {
            if *e < 0 {
                let entry = den_exp.entry(key.as_str()).or_insert((p, 0));
                entry.1 = entry.1.max(-e);
            }
        }
    }
    let mut num = MultiPoly::zero();
    for t in terms {
        let mut prod = MultiPoly::constant(t.coeff.clone());
        for (key, (p, e)) in &t.powers {
            let shift = den_exp.get(key.as_str()).map_or(0, |x| x.1);
            prod = prod * p.pow((e + shift) as u32);
        }
        for (key, (p, e)) in &den_exp {
            if !t.powers.contains_key(*key) {
                prod = prod * p.pow(*e as u32);
            }
        }
        num = num + prod;
    }
    let den = den_exp.values().fold(MultiPoly::one(), |acc, (p, e)| acc * p.pow(*e as u32));
    RationalFunction::new(num, den).expect("product of non-zero linear forms")
}

fn symbolic_coefficient(k: usize, r: i64, d: u32) -> RationalFunction {
    let terms: Vec<Factored> = compositions(d, k).iter().map(|c| factored_term(k, r, c)).collect();
    sum_factored(&terms)
}

fn delta_value(u: &DeltaUse, point: &FramedPoint) -> Result<Rational, PotentialError> {
    let a: Rational = u
        .a
        .iter()
        .zip(&point.theta)
        .map(|(&c, t)| t * int(c))
        .sum();
    let w = match u.w {
        W::Zero => int(0),
        W::Xi1 => point.xi1.clone(),
        W::Xi2 => point.xi2.clone(),
        W::XiSum => &point.xi1 + &point.xi2,
    };
    let f = |l: i64| &a + &w + &point.zeta * int(l);
    let delta = if u.m >= 0 {
        (1..=u.m).map(f).product::<Rational>()
    } else {
        let mut den = int(1);
        for l in u.m + 1..=0 {
            let v = f(l);
            if v == int(0) {
                return Err(PotentialError::VanishingDenominator(describe(u, l)));
            }
            den *= v;
        }
        den.recip()
    };
    if u.power < 0 && delta == int(0) {
        let l = (1..=u.m).find(|&l| f(l) == int(0)).unwrap_or(0);
        return Err(PotentialError::VanishingDenominator(describe(u, l)));
    }
    Ok(pow_rational(&delta, u.power))
}

fn specialized_coefficient(k: usize, r: i64, d: u32, point: &FramedPoint) -> Result<Rational, PotentialError> {
    let mut total = int(0);
    for c in compositions(d, k) {
        let mut term = int(1);
        for u in delta_uses(k, r, &c) {
            term *= delta_value(&u, point)?;
        }
        total += term;
    }
    Ok(total)
}

pub fn framed_sheaf_fundamental_solution(spec: &FramedSheafSpec) -> Result<TruncatedSeries, PotentialError> {
    if spec.k == 0 {
        return Err(PotentialError::NonPositive("k"));
    }
    if spec.r == 0 {
        return Err(PotentialError::NonPositive("r"));
    }
    if spec.truncation == 0 {
        return Err(PotentialError::NonPositive("truncation"));
    }
    let k = spec.k as usize;
    let r = i64::from(spec.r);
    let degrees: Vec<u32> = (1..=spec.truncation).collect();
    let coeffs: Vec<RationalFunction> = match &spec.mode {
        FramedMode::Symbolic => {
            if spec.k > 3 || spec.truncation > 3 {
                return Err(PotentialError::SymbolicTooLarge {
                    k: spec.k,
                    d: spec.truncation,
                });
            }
            degrees.par_iter().map(|&d| symbolic_coefficient(k, r, d)).collect()
        }
        FramedMode::Specialized(point) => {
            if point.theta.len() != k {
                return Err(PotentialError::WeightLength {
                    index: 0,
                    expected: k,
                    found: point.theta.len(),
                });
            }
            degrees
                .par_iter()
                .map(|&d| specialized_coefficient(k, r, d, point).map(RationalFunction::constant))
                .collect::<Result<_, _>>()?
        }
    };
    let mut out = TruncatedSeries::zero(&["q"], spec.truncation);
    for (d, c) in degrees.iter().zip(coeffs) {
        out.set(&[*d], c).expect("arity one");
    }
    Ok(out)
}

/// Human-readable form of a specialization point.
pub fn format_point(point: &FramedPoint) -> String {
    point
        .to_map()
        .iter()
        .map(|(k, v)| format!("{k}={}", format_rational(v)))
        .collect::<Vec<_>>()
        .join(" ")
}
