//! Small dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use super::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rational], c: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * c).collect()
}

pub fn mat_vec(m: &Matrix, v: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| dot(row, v)).collect()
}

/// `a^T m b`.
pub fn bilinear(m: &Matrix, a: &[Rational], b: &[Rational]) -> Rational {
    dot(a, &mat_vec(m, b))
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the row space (as rows of the reduced echelon form).
pub fn row_space_basis(vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut m = vectors.to_vec();
    let piv = rref(&mut m);
    m.truncate(piv.len());
    m
}

/// Basis of `{x : v . x = 0 for all rows v}`; `dim` is the ambient dimension.
pub fn nullspace(vectors: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    let mut m = vectors.to_vec();
    let piv = rref(&mut m);
    let free: Vec<usize> = (0..dim).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); dim];
            x[f] = Rational::one();
            for (row, &pc) in piv.iter().enumerate() {
                x[pc] = -m[row][f].clone();
            }
            x
        })
        .collect()
}

pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    let mut m = vectors.to_vec();
    rref(&mut m).len()
}

/// Unique solution of the square system `a x = b`, if `a` is invertible.
pub fn solve(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() != n || piv.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant by fraction-exact elimination.
pub fn determinant(a: &Matrix) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let t = &m[c][j] * &f;
                m[i][j] -= t;
            }
        }
    }
    det
}

/// Sylvester's criterion on a symmetric matrix.
pub fn is_positive_definite(a: &Matrix) -> bool {
    let n = a.len();
    (1..=n).all(|k| {
        let minor: Matrix = a[..k].iter().map(|row| row[..k].to_vec()).collect();
        determinant(&minor) > Rational::zero()
    })
}

pub fn is_symmetric(a: &Matrix) -> bool {
    let n = a.len();
    a.iter().all(|r| r.len() == n) && (0..n).all(|i| (0..i).all(|j| a[i][j] == a[j][i]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve(&a, &[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, vec![vec![rat(3, 5), rat(-1, 5)], vec![rat(-1, 5), rat(2, 5)]]);
        assert!(solve(&m(&[&[1, 2], &[2, 4]]), &[int(1), int(1)]).is_none());
    }

    #[test]
    fn determinants_and_definiteness() {
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), int(-1));
        assert!(is_positive_definite(&m(&[&[2, -1], &[-1, 2]])));
        assert!(!is_positive_definite(&m(&[&[1, 2], &[2, 1]])));
        assert!(is_symmetric(&m(&[&[1, 2], &[2, 1]])));
        assert!(!is_symmetric(&m(&[&[1, 2], &[3, 1]])));
    }

    #[test]
    fn nullspace_basis() {
        let ns = nullspace(&m(&[&[1, 1, 0]]), 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(dot(&[int(1), int(1), int(0)], v).is_zero());
        }
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
    }
}
