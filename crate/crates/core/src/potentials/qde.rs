//! Residuals of the quantum differential and difference equations of
//! `P^{k-1}` applied to truncated J-functions.
//!
//! With `R = (beta + zeta q d/dq)^k I - q I`, the constant term of `R` is the
//! classical relation `beta^k`; the returned residual is `(R - beta^k) / q`,
//! truncated at `D - 1`, which vanishes identically. The K-theoretic case
//! uses the operator multiplying the `q^d` coefficient by
//! `1 - Linv zeta^d` and the classical term `(1 - Linv)^k`.

use crate::algebra::poly::MultiPoly;
use crate::algebra::ratfun::RationalFunction;
use crate::algebra::rational::int;
use crate::algebra::series::TruncatedSeries;

use super::PotentialError;

fn check(k: u32, d: u32) -> Result<(), PotentialError> {
    if k == 0 {
        return Err(PotentialError::NonPositive("k"));
    }
    if d == 0 {
        return Err(PotentialError::NonPositive("truncation"));
    }
    Ok(())
}

/// `1 / Π_{m=1}^{d} f(m)^k` for `d = 0..=D`.
fn hypergeometric(d_max: u32, k: u32, f: impl Fn(u32) -> MultiPoly) -> TruncatedSeries {
    let mut den = MultiPoly::one();
    let mut coeffs = vec![RationalFunction::one()];
    for d in 1..=d_max {
        den = den * f(d).pow(k);
        coeffs.push(RationalFunction::new(MultiPoly::one(), den.clone()).expect("non-zero product"));
    }
    TruncatedSeries::from_coefficients("q", d_max, coeffs)
}

/// Applies `P^k - q`, where `P` multiplies the `q^d` coefficient by `w(d)`,
/// and drops the classical constant term.
fn residual(series: &TruncatedSeries, k: u32, w: impl Fn(u32) -> MultiPoly) -> TruncatedSeries {
    let mut applied = series.clone();
    for _ in 0..k {
        applied = applied.map_coefficients(|d, c| c.mul_poly(&w(d[0])));
    }
    let r = applied.sub(&series.shift(&[1]).expect("arity one")).expect("same symbols");
    let d_max = series.truncation();
    let lowered = (1..=d_max).map(|e| r.coefficient(&[e]));
    TruncatedSeries::from_coefficients("q", d_max - 1, lowered)
}

fn beta_plus(m: u32) -> MultiPoly {
    MultiPoly::var("beta") + MultiPoly::var("zeta").scale(&int(i64::from(m)))
}

fn one_minus_linv(m: u32) -> MultiPoly {
    MultiPoly::one() - MultiPoly::var("Linv") * MultiPoly::var("zeta").pow(m)
}

pub fn qde_residual_cohomological(k: u32, d: u32) -> Result<TruncatedSeries, PotentialError> {
    check(k, d)?;
    let i = hypergeometric(d, k, beta_plus);
    Ok(residual(&i, k, beta_plus))
}

pub fn qde_residual_ktheoretic(k: u32, d: u32) -> Result<TruncatedSeries, PotentialError> {
    check(k, d)?;
    let j = hypergeometric(d, k, one_minus_linv);
    Ok(residual(&j, k, one_minus_linv))
}

/// Degree-zero term of the residual: `beta^k`, or `(1 - Linv)^k`.
pub fn qde_classical_term(k: u32, ktheory: bool) -> MultiPoly {
    if ktheory {
        one_minus_linv(0).pow(k)
    } else {
        beta_plus(0).pow(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residuals_vanish() {
        for k in 1..=3 {
            assert!(qde_residual_cohomological(k, 3).unwrap().is_zero());
            assert!(qde_residual_ktheoretic(k, 2).unwrap().is_zero());
        }
        assert!(qde_residual_ktheoretic(4, 2).unwrap().is_zero());
        assert_eq!(qde_residual_cohomological(3, 1).unwrap().truncation(), 0);
        assert_eq!(qde_classical_term(2, false).to_string(), "beta^2");
        assert_eq!(qde_classical_term(2, true).to_string(), "1 - 2*Linv + Linv^2");
    }

    #[test]
    fn a_wrong_series_leaves_a_residual() {
        // dropping the square in the denominators breaks the identity at k = 2
        let i = hypergeometric(2, 1, beta_plus);
        assert!(!residual(&i, 2, beta_plus).is_zero());
    }
}
