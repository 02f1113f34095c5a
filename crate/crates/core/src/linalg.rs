//! Exact linear algebra on small symmetric integer matrices.

#![allow(clippy::needless_range_loop)]

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Reduced fraction with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

impl Rational {
    pub fn from_big(q: &BigRational) -> Option<Rational> {
        // BigRational is kept reduced with a positive denominator
        Some(Rational {
            num: q.numer().to_i64()?,
            den: q.denom().to_i64()?,
        })
    }

    pub fn integer(v: i64) -> Rational {
        Rational { num: v, den: 1 }
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.is_integer().then_some(self.num)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Counts of positive, negative and zero entries after diagonalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn to_rational(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect()
}

/// Determinant by Bareiss fraction-free elimination. The empty matrix has
/// determinant 1.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a = to_big(m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // exact by Sylvester's identity
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

/// Inertia of a symmetric matrix by congruence diagonalization over the
/// rationals.
///
/// A zero diagonal pivot is replaced by a nonzero one if available; when the
/// whole remaining diagonal vanishes but some `a[i][j] != 0`, row and column
/// `j` are added into `i`, which makes `a[i][i] = 2 a[i][j]`.
pub fn inertia(m: &[Vec<i64>]) -> Inertia {
    let n = m.len();
    let mut a = to_rational(m);
    let mut out = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[i][i].is_zero()).or_else(|| {
            let (i, j) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero())?;
            for c in 0..n {
                let v = a[j][c].clone();
                a[i][c] += v;
            }
            for r in 0..n {
                let v = a[r][j].clone();
                a[r][i] += v;
            }
            Some(i)
        });
        let Some(p) = pivot else {
            out.zero += n - k;
            break;
        };
        a.swap(p, k);
        for row in a.iter_mut() {
            row.swap(p, k);
        }
        let d = a[k][k].clone();
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] / &d;
            for c in k..n {
                let v = &f * &a[k][c];
                a[r][c] -= v;
            }
            for rr in k..n {
                let v = &f * &a[rr][k];
                a[rr][r] -= v;
            }
        }
        if d.is_positive() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
    }
    out
}

pub fn signature(m: &[Vec<i64>]) -> i64 {
    inertia(m).signature()
}

/// Solves `m x = b` exactly; `None` when `m` is singular.
pub fn solve(m: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut a = to_rational(m);
    for (row, &rhs) in a.iter_mut().zip(b) {
        row.push(BigRational::from_integer(BigInt::from(rhs)));
    }
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(p, k);
        let d = a[k][k].clone();
        for c in k..=n {
            a[k][c] = &a[k][c] / &d;
        }
        for r in 0..n {
            if r == k || a[r][k].is_zero() {
                continue;
            }
            let f = a[r][k].clone();
            for c in k..=n {
                let v = &f * &a[k][c];
                a[r][c] -= v;
            }
        }
    }
    Some(
        a.into_iter()
            .map(|mut row| row.pop().expect("augmented column"))
            .collect(),
    )
}

/// `vᵀ m⁻¹ v`, or `None` when `m` is singular.
pub fn inverse_form(m: &[Vec<i64>], v: &[i64]) -> Option<BigRational> {
    let x = solve(m, v)?;
    Some(
        x.iter()
            .zip(v)
            .map(|(xi, &vi)| xi * BigRational::from_integer(BigInt::from(vi)))
            .fold(BigRational::zero(), |acc, t| acc + t),
    )
}

/// Whether `m` is symmetric and square.
pub fn is_symmetric(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    m.iter().all(|row| row.len() == n) && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}
