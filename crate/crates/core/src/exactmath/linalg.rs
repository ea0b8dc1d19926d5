use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Field;

/// Determinant by fraction-carrying Gaussian elimination.
pub fn det<T: Field>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    let mut sign_flip = false;
    let mut acc = T::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return T::zero();
        };
        if piv != col {
            m.swap(piv, col);
            sign_flip = !sign_flip;
        }
        let p = m[col][col].clone();
        acc = acc * &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone() / p.clone();
            for c in col..n {
                let v = f.clone() * &m[col][c];
                m[r][c] = m[r][c].clone() - &v;
            }
        }
    }
    if sign_flip {
        -acc
    } else {
        acc
    }
}

/// Determinant of an integer matrix by Bareiss fraction-free elimination.
pub fn det_integer(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(piv, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Solve `m·x = rhs` for square invertible `m`.
pub fn solve<T: Field>(m: &[Vec<T>], rhs: &[T]) -> Option<Vec<T>> {
    let n = m.len();
    let mut a: Vec<Vec<T>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let p = a[col][col].clone();
        for c in col..=n {
            a[col][c] = a[col][c].clone() / p.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..=n {
                let v = f.clone() * &a[col][c];
                a[r][c] = a[r][c].clone() - &v;
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Basis of the right null space of `m` (rows × cols), via reduced row echelon form.
pub fn null_space<T: Field>(m: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    let mut a: Vec<Vec<T>> = m.to_vec();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(piv, r);
        let p = a[r][c].clone();
        for k in c..cols {
            a[r][k] = a[r][k].clone() / p.clone();
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for k in c..cols {
                let v = f.clone() * &a[r][k];
                a[i][k] = a[i][k].clone() - &v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

pub type Mat3 = [[super::Rational; 3]; 3];

pub fn mat3_det(m: &Mat3) -> super::Rational {
    det(m.iter().map(|r| r.to_vec()).collect())
}

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(super::rat(0), |acc, k| acc + &a[i][k] * &b[k][j]))
    })
}

pub fn mat3_identity() -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| super::rat((i == j) as i64)))
}

pub fn mat3_inverse(m: &Mat3) -> Option<Mat3> {
    let d = mat3_det(m);
    if num_traits::Zero::is_zero(&d) {
        return None;
    }
    let c = |r: usize, s: usize| -> super::Rational {
        let rows: Vec<usize> = (0..3).filter(|&x| x != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&x| x != s).collect();
        &m[rows[0]][cols[0]] * &m[rows[1]][cols[1]] - &m[rows[0]][cols[1]] * &m[rows[1]][cols[0]]
    };
    Some(std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let sign = if (i + j) % 2 == 0 { super::rat(1) } else { super::rat(-1) };
            sign * c(j, i) / &d
        })
    }))
}

pub fn mat3_apply(m: &Mat3, v: &[super::Rational; 3]) -> [super::Rational; 3] {
    std::array::from_fn(|i| (0..3).fold(super::rat(0), |acc, k| acc + &m[i][k] * &v[k]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, Rational};

    #[test]
    fn bareiss_matches_rational_elimination() {
        let ints = [[3, -1, 4, 1], [5, 9, -2, 6], [5, 3, 5, -8], [9, 7, 9, 3]];
        let big: Vec<Vec<BigInt>> = ints.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        let q: Vec<Vec<Rational>> = ints.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect();
        assert_eq!(Rational::from_integer(det_integer(big)), det(q));
        let singular = vec![vec![BigInt::from(0), BigInt::from(1)], vec![BigInt::from(0), BigInt::from(2)]];
        assert_eq!(det_integer(singular), BigInt::from(0));
    }

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
    }

    #[test]
    fn determinant_and_inverse() {
        assert_eq!(det(m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])), rat(6));
        assert_eq!(det(m(&[&[0, 1], &[1, 0]])), rat(-1));
        let a: Mat3 = [[rat(2), rat(0), rat(1)], [rat(1), rat(3), rat(2)], [rat(1), rat(1), rat(2)]];
        let inv = mat3_inverse(&a).unwrap();
        assert_eq!(mat3_mul(&a, &inv), mat3_identity());
    }

    #[test]
    fn null_space_of_rank_deficient() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = null_space(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for row in &a {
                let dot = row.iter().zip(&v).fold(rat(0), |acc, (x, y)| acc + x * y);
                assert_eq!(dot, rat(0));
            }
        }
    }
}
