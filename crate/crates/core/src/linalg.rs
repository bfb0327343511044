//! Exact linear algebra: fraction-free determinants over polynomial rings and
//! rational null spaces.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::exact::{MultiPoly, Scalar};
use crate::par::{self, Exec};

pub trait Ring: Clone + PartialEq {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn ring_is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Exact division; `None` if `other` does not divide `self`.
    fn div_exact(&self, other: &Self) -> Option<Self>;
    fn neg(&self) -> Self {
        Self::ring_zero().sub(self)
    }
}

impl Ring for Scalar {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn ring_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        (!Zero::is_zero(other)).then(|| self / other)
    }
}

impl Ring for MultiPoly {
    fn ring_zero() -> Self {
        MultiPoly::zero()
    }
    fn ring_one() -> Self {
        MultiPoly::one()
    }
    fn ring_is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        MultiPoly::div_exact(self, other)
    }
}

/// Determinant by Bareiss elimination with row pivoting.
///
/// Panics if an intermediate division is inexact, which would mean the ring
/// is not an integral domain.
pub fn bareiss_det<R: Ring>(matrix: &[Vec<R>]) -> R {
    let n = matrix.len();
    if n == 0 {
        return R::ring_one();
    }
    let mut m: Vec<Vec<R>> = matrix.to_vec();
    let mut prev = R::ring_one();
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].ring_is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].ring_is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return R::ring_zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev).expect("Bareiss step must divide exactly");
            }
            m[i][k] = R::ring_zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Division-free determinant by expansion along rows, memoizing the minor on
/// the first k rows for every k-subset of columns. Costs k·C(n,k)
/// multiplications per layer; avoids the multivariate exact divisions that
/// make Bareiss slow on dense symbolic matrices. Layers run under `exec`.
pub fn minor_expansion_det<R: Ring + Send + Sync>(matrix: &[Vec<R>], exec: Exec) -> R {
    let n = matrix.len();
    assert!(n < 32, "minor expansion is exponential in the size");
    let mut layer: HashMap<u32, R> = HashMap::from([(0u32, R::ring_one())]);
    for row in 0..n {
        let keys: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() as usize == row + 1).collect();
        let next = par::map(exec, &keys, |&mask| {
            let mut acc = R::ring_zero();
            // Sign of column c within the subset: parity of set bits above it.
            for c in 0..n {
                if mask & (1 << c) == 0 || matrix[row][c].ring_is_zero() {
                    continue;
                }
                let Some(minor) = layer.get(&(mask & !(1 << c))) else { continue };
                if minor.ring_is_zero() {
                    continue;
                }
                let t = matrix[row][c].mul(minor);
                acc = if (mask >> (c + 1)).count_ones() % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            (mask, acc)
        });
        layer = next.into_iter().filter(|(_, v)| !v.ring_is_zero()).collect();
    }
    layer.remove(&((1u32 << n) - 1)).unwrap_or_else(R::ring_zero)
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut [Vec<Scalar>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
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
        let inv = Scalar::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of { v : M v = 0 } for an r×c rational matrix with `cols` columns.
pub fn null_space(matrix: &[Vec<Scalar>], cols: usize) -> Vec<Vec<Scalar>> {
    let mut m: Vec<Vec<Scalar>> = matrix.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

pub fn rank(matrix: &[Vec<Scalar>]) -> usize {
    let mut m = matrix.to_vec();
    rref(&mut m).len()
}

/// `c` with `a = c·b` when `b ≠ 0`, judged on graded-lex leading coefficients.
pub fn constant_ratio(a: &MultiPoly, b: &MultiPoly) -> Option<Scalar> {
    let (_, ca) = a.leading()?;
    let (_, cb) = b.leading()?;
    let c = ca / cb;
    (a - &b.scale(&c)).is_zero().then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, symmetric, Var};

    #[test]
    fn bareiss_matches_leibniz() {
        let x = |i| MultiPoly::var(Var::lambda(i));
        let m = vec![
            vec![x(1), MultiPoly::int(2), x(2)],
            vec![MultiPoly::int(0), x(2), MultiPoly::int(1)],
            vec![&x(1) + &x(2), MultiPoly::int(3), MultiPoly::int(0)],
        ];
        assert_eq!(bareiss_det(&m), symmetric::det(&m));
        assert_eq!(minor_expansion_det(&m, Exec::Parallel), symmetric::det(&m));
        assert_eq!(minor_expansion_det(&m, Exec::Sequential), symmetric::det(&m));
        let s = vec![vec![int(0), int(1)], vec![int(2), int(3)]];
        assert_eq!(bareiss_det(&s), int(-2));
    }

    #[test]
    fn null_space_basic() {
        let m = vec![vec![int(1), int(2), int(3)], vec![int(2), int(4), int(6)]];
        let ns = null_space(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let dot: Scalar = (0..3).map(|i| &m[0][i] * &v[i]).sum();
            assert!(dot.is_zero());
        }
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn ratio_detection() {
        let x = MultiPoly::var(Var::lambda(1));
        let p = &x + &MultiPoly::int(1);
        assert_eq!(constant_ratio(&p.scale(&int(3)), &p), Some(int(3)));
        assert_eq!(constant_ratio(&x, &p), None);
    }
}
