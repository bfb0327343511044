use num_traits::One;

use super::poly::MultiPoly;
use super::scalar::{binomial, frac, from_bigint, rising, Scalar};
use super::var::Var;
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

fn coeffs(p: &MultiPoly, z: Var) -> Vec<MultiPoly> {
    p.univariate_coeffs(z)
}

fn trim(mut c: Vec<MultiPoly>) -> Vec<MultiPoly> {
    while c.last().is_some_and(MultiPoly::is_zero) {
        c.pop();
    }
    c
}

/// p(z + s) on coefficient vectors.
fn shift(c: &[MultiPoly], s: &Scalar) -> Vec<MultiPoly> {
    let mut out = vec![MultiPoly::zero(); c.len()];
    for (k, ck) in c.iter().enumerate() {
        if ck.is_zero() {
            continue;
        }
        let mut pw = Scalar::one();
        for i in (0..=k).rev() {
            let b = from_bigint(binomial(k as i64, i as i64)) * &pw;
            out[i] += &ck.scale(&b);
            pw *= s;
        }
    }
    out
}

/// The unique f with f(z) − f(z−1) = r(z) and f(0) = 0.
pub fn discrete_antiderivative(r: &MultiPoly, z: Var) -> MultiPoly {
    let mut rem = trim(coeffs(r, z));
    if rem.is_empty() {
        return MultiPoly::zero();
    }
    let d = rem.len() - 1;
    let mut f = vec![MultiPoly::zero(); d + 2];
    // z^k − (z−1)^k has leading term k z^{k−1}; peel from the top.
    for k in (1..=d + 1).rev() {
        let c = rem[k - 1].scale(&frac(1, k as i64));
        if c.is_zero() {
            continue;
        }
        let mut basis = vec![MultiPoly::zero(); k + 1];
        basis[k] = MultiPoly::one();
        let shifted = shift(&basis, &-Scalar::one());
        for i in 0..k {
            let diff = &basis[i] - &shifted[i];
            rem[i] -= &(&diff * &c);
        }
        f[k] = c;
    }
    debug_assert!(rem.iter().all(MultiPoly::is_zero));
    MultiPoly::from_univariate(&f, z)
}

/// D p(z) = p(z+½) − p(z−½).
fn central_difference(c: &[MultiPoly]) -> Vec<MultiPoly> {
    let up = shift(c, &frac(1, 2));
    let down = shift(c, &frac(-1, 2));
    trim(up.iter().zip(&down).map(|(a, b)| a - b).collect())
}

fn forward(w: &[MultiPoly], n: usize) -> Vec<MultiPoly> {
    let mut c = vec![MultiPoly::zero(); n - 1];
    c.extend(w.iter().cloned());
    for _ in 1..n {
        c = central_difference(&c);
    }
    trim(c)
}

/// Forward: f = (2 sinh(∂/2))^{n−1} (z^{n−1} w). Inverse: recovers w from f.
pub fn sinh_transform(p: &MultiPoly, n: usize, z: Var, direction: Direction) -> Result<MultiPoly> {
    assert!(n >= 1, "rank must be positive");
    let c = trim(coeffs(p, z));
    match direction {
        Direction::Forward => Ok(MultiPoly::from_univariate(&forward(&c, n), z)),
        Direction::Inverse => {
            if c.is_empty() {
                return Ok(MultiPoly::zero());
            }
            // D^{n−1} z^{n−1+k} = (n−1+k)!/k! z^k + lower terms of the same parity.
            let mut rem = c.clone();
            let mut w = vec![MultiPoly::zero(); c.len()];
            for k in (0..c.len()).rev() {
                if rem[k].is_zero() {
                    continue;
                }
                let lead = from_bigint(rising(k as i64 + 1, n as i64 - 1));
                let wk = rem[k].scale(&(Scalar::one() / lead));
                let mut unit = vec![MultiPoly::zero(); k + 1];
                unit[k] = wk.clone();
                let img = forward(&unit, n);
                for (i, t) in img.iter().enumerate() {
                    rem[i] -= t;
                }
                w[k] = wk;
            }
            if rem.iter().any(|t| !t.is_zero()) || trim(forward(&w, n)) != c {
                return Err(Error::NoPolynomialSolution);
            }
            Ok(MultiPoly::from_univariate(&w, z))
        }
    }
}
