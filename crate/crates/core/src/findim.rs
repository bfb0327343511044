//! Finite-dimensional irreducibles L(λ): classification, box decomposition,
//! characters and dimensions, and the design of deformations with prescribed ν.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::casimir::compute_p;
use crate::error::{Error, Result};
use crate::exact::scalar::{divisors, factorial, from_bigint, int, is_integer, to_i64};
use crate::exact::symmetric::{complete_homogeneous, rho};
use crate::exact::{sinh_transform, Direction, MultiPoly, Scalar, Var};
use crate::linalg::{bareiss_det, null_space};
use crate::pbw::DeformationGl;

/// k_i: the least k ≥ 0 with P(λ) = P(λ − (k+1)e_i), or none.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum K {
    Finite(u64),
    Infinite,
}

impl K {
    pub fn finite(self) -> Option<u64> {
        match self {
            K::Finite(k) => Some(k),
            K::Infinite => None,
        }
    }
}

/// Integer roots of a univariate polynomial in `v` with rational coefficients.
///
/// Panics if the polynomial involves other variables. The zero polynomial has
/// every integer as a root; callers handle that case first.
pub fn integer_roots(p: &MultiPoly, v: Var) -> Vec<i64> {
    let coeffs: Vec<Scalar> = p
        .univariate_coeffs(v)
        .iter()
        .map(|c| c.as_constant().expect("integer_roots needs rational coefficients"))
        .collect();
    let mut c = coeffs;
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    assert!(!c.is_empty(), "integer_roots of the zero polynomial");
    let mut roots = Vec::new();
    let shift = c.iter().position(|x| !x.is_zero()).unwrap();
    if shift > 0 {
        roots.push(0);
        c.drain(..shift);
    }
    if c.len() == 1 {
        return roots;
    }
    let lcm = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| (x * Scalar::from_integer(lcm.clone())).to_integer()).collect();
    // Cauchy bound: |root| ≤ 1 + max |a_i / a_lead|.
    let lead = ints.last().unwrap().abs();
    let bound = ints[..ints.len() - 1].iter().map(|a| a.abs()).max().unwrap_or_default() / &lead + 1;
    let eval = |x: &BigInt| ints.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a);
    for d in divisors(&ints[0]) {
        if d > bound {
            continue;
        }
        for cand in [d.clone(), -d] {
            if eval(&cand).is_zero() {
                if let Ok(r) = i64::try_from(cand) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort_unstable();
    roots.dedup();
    roots
}

fn shift_weight(lambda: &[Scalar], i: usize, amount: &MultiPoly) -> HashMap<Var, MultiPoly> {
    lambda
        .iter()
        .enumerate()
        .map(|(j, l)| {
            let mut val = MultiPoly::constant(l.clone());
            if j == i {
                val -= amount;
            }
            (Var::lambda(j + 1), val)
        })
        .collect()
}

/// μ ↦ P(λ) − P(λ − μ e_i) as a polynomial in `Var::MU`.
pub fn p_difference(p: &MultiPoly, lambda: &[Scalar], i: usize) -> MultiPoly {
    let at = |m: HashMap<Var, MultiPoly>| p.substitute(&m);
    let zero = MultiPoly::zero();
    &at(shift_weight(lambda, i, &zero)) - &at(shift_weight(lambda, i, &MultiPoly::var(Var::MU)))
}

/// k_i from the integer roots of the P-difference in direction e_i (0-based i).
pub fn k_index(p: &MultiPoly, lambda: &[Scalar], i: usize) -> K {
    let diff = p_difference(p, lambda, i);
    if diff.is_zero() {
        return K::Finite(0);
    }
    match integer_roots(&diff, Var::MU).into_iter().find(|&r| r >= 1) {
        Some(r) => K::Finite(r as u64 - 1),
        None => K::Infinite,
    }
}

/// Weyl dimension ∏_{i<j}(λ_i − λ_j + j − i)/(j − i) of V_λ.
pub fn weyl_dimension(lambda: &[Scalar]) -> Scalar {
    let n = lambda.len();
    let mut out = Scalar::one();
    for i in 0..n {
        for j in i + 1..n {
            let gap = int((j - i) as i64);
            out *= (&lambda[i] - &lambda[j] + &gap) / gap;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoxComponent {
    #[serde(serialize_with = "crate::json::ser_scalars")]
    pub highest_weight: Vec<Scalar>,
    #[serde(serialize_with = "crate::json::ser_scalar")]
    pub dimension: Scalar,
}

/// ⊕ V_{λ′} over the box 0 ≤ λ − λ′ ≤ ν, with total dimension.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Character {
    pub components: Vec<BoxComponent>,
    #[serde(serialize_with = "crate::json::ser_scalar")]
    pub dimension: Scalar,
}

pub fn character(lambda: &[Scalar], nu: &[u64]) -> Result<Character> {
    if lambda.len() != nu.len() {
        return Err(Error::InvalidInput("λ and ν have different lengths".into()));
    }
    let n = lambda.len();
    let mut components = Vec::new();
    let mut c = vec![0u64; n];
    loop {
        let hw: Vec<Scalar> = lambda.iter().zip(&c).map(|(l, &ci)| l - int(ci as i64)).collect();
        if hw.windows(2).any(|w| !is_integer(&(&w[0] - &w[1])) || w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("box weight {:?} is not dominant", c)));
        }
        let dimension = weyl_dimension(&hw);
        components.push(BoxComponent { highest_weight: hw, dimension });
        // Odometer over the box, last coordinate fastest.
        let mut pos = n;
        loop {
            if pos == 0 {
                let dimension = components.iter().map(|b| b.dimension.clone()).sum();
                return Ok(Character { components, dimension });
            }
            pos -= 1;
            if c[pos] < nu[pos] {
                c[pos] += 1;
                break;
            }
            c[pos] = 0;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiniteDimReport {
    pub finite: bool,
    pub reason: Option<String>,
    pub k: Vec<K>,
    pub nu: Option<Vec<u64>>,
    pub character: Option<Character>,
}

/// Integer gaps λ_i − λ_{i+1} ≥ 0, or the first violation.
fn dominant_gaps(lambda: &[Scalar]) -> std::result::Result<Vec<u64>, String> {
    lambda
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let d = &w[0] - &w[1];
            match to_i64(&d) {
                Some(v) if v >= 0 => Ok(v as u64),
                _ => Err(format!("λ_{} − λ_{} = {} is not a nonnegative integer", i + 1, i + 2, crate::exact::fmt_scalar(&d))),
            }
        })
        .collect()
}

pub fn classify_with_p(lambda: &[Scalar], p: &MultiPoly) -> FiniteDimReport {
    let n = lambda.len();
    let k: Vec<K> = (0..n).map(|i| k_index(p, lambda, i)).collect();
    let gaps = match dominant_gaps(lambda) {
        Ok(g) => g,
        Err(reason) => return FiniteDimReport { finite: false, reason: Some(reason), k, nu: None, character: None },
    };
    let Some(kn) = k[n - 1].finite() else {
        let reason = format!("P(λ) − P(λ − μe_{n}) has no positive integer root");
        return FiniteDimReport { finite: false, reason: Some(reason), k, nu: None, character: None };
    };
    let mut nu: Vec<u64> = (0..n - 1).map(|i| k[i].finite().map_or(gaps[i], |ki| ki.min(gaps[i]))).collect();
    nu.push(kn);
    let character = character(lambda, &nu).expect("box weights are dominant by construction");
    FiniteDimReport { finite: true, reason: None, k, nu: Some(nu), character: Some(character) }
}

pub fn classify(lambda: &[Scalar], d: &DeformationGl) -> Result<FiniteDimReport> {
    if lambda.len() != d.n {
        return Err(Error::InvalidInput(format!("λ has {} entries, rank is {}", lambda.len(), d.n)));
    }
    if d.zeta.iter().any(|z| z.as_constant().is_none()) {
        return Err(Error::InvalidInput("classification needs numeric ζ".into()));
    }
    Ok(classify_with_p(lambda, &compute_p(d)?))
}

/// Output of the deformation designer.
#[derive(Clone, Debug, PartialEq)]
pub struct DesignedDeformation {
    pub lambda: Vec<Scalar>,
    pub nu: Vec<u64>,
    /// w_0 … w_{n+1}.
    pub w: Vec<Scalar>,
    /// ζ_0 … ζ_n recovered from w.
    pub zeta: Option<Vec<Scalar>>,
    /// det of the n equations plus each extra row (l, ν′) for 0 ≤ ν′ < ν_l,
    /// paired with the closed-form value.
    pub nondegeneracy: Vec<((usize, u64), Scalar, Scalar)>,
}

impl DesignedDeformation {
    pub fn deformation(&self) -> Option<DeformationGl> {
        self.zeta.as_ref().map(|z| DeformationGl::numeric(self.lambda.len(), z))
    }

    /// P(λ) = Σ w_j H_j(λ+ρ) from the designed w.
    pub fn p(&self) -> MultiPoly {
        p_from_w(&self.w, self.lambda.len())
    }
}

pub fn p_from_w(w: &[Scalar], n: usize) -> MultiPoly {
    let r = rho(n);
    let args: Vec<MultiPoly> = (1..=n).map(|i| &MultiPoly::var(Var::lambda(i)) + &MultiPoly::constant(r[i - 1].clone())).collect();
    w.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| complete_homogeneous(j, &args).scale(c)).sum()
}

/// R^N_{mj} = H_N(λ′) − H_N(λ′ − (m+1)e_j) for N = 1..=n+1.
fn r_row(lp: &[Scalar], m: u64, j: usize) -> Vec<Scalar> {
    let n = lp.len();
    let at = |shift: i64| -> Vec<MultiPoly> {
        lp.iter().enumerate().map(|(i, x)| MultiPoly::constant(if i == j { x - int(shift) } else { x.clone() })).collect()
    };
    let base = at(0);
    let moved = at(m as i64 + 1);
    (1..=n + 1)
        .map(|big| (&complete_homogeneous(big, &base) - &complete_homogeneous(big, &moved)).as_constant().unwrap())
        .collect()
}

pub fn design_deformation(lambda: &[Scalar], nu: &[u64]) -> Result<DesignedDeformation> {
    let n = lambda.len();
    if n == 0 || nu.len() != n {
        return Err(Error::InvalidInput("λ and ν must have the same positive length".into()));
    }
    let gaps = dominant_gaps(lambda).map_err(Error::InvalidInput)?;
    if let Some(i) = (0..n - 1).find(|&i| nu[i] > gaps[i]) {
        return Err(Error::InvalidInput(format!("ν_{} exceeds λ_{} − λ_{}", i + 1, i + 1, i + 2)));
    }
    let r = rho(n);
    let lp: Vec<Scalar> = lambda.iter().zip(&r).map(|(a, b)| a + b).collect();
    let rows: Vec<Vec<Scalar>> = (0..n).map(|j| r_row(&lp, nu[j], j)).collect();
    let ns = null_space(&rows, n + 1);
    if ns.len() != 1 {
        return Err(Error::Inconsistent(format!("expected a one-dimensional solution space, got {}", ns.len())));
    }
    let sol = &ns[0];
    let bad = |l: usize, m: u64| -> bool {
        let row = r_row(&lp, m, l);
        row.iter().zip(sol).map(|(a, b)| a * b).sum::<Scalar>().is_zero()
    };
    if let Some((l, m)) = (0..n).flat_map(|l| (0..nu[l]).map(move |m| (l, m))).find(|&(l, m)| bad(l, m)) {
        return Err(Error::Inconsistent(format!("designed P also vanishes at shift {} in direction {}", m + 1, l + 1)));
    }
    // Closed-form check of the nondegeneracy determinants.
    let kk: Vec<Scalar> = lp.iter().map(|x| x - &lp[n - 1]).collect();
    let mut nondegeneracy = Vec::new();
    for l in 0..n {
        for extra in 0..nu[l] {
            let mut m = rows.clone();
            m.push(r_row(&lp, extra, l));
            let det = bareiss_det(&m);
            let mut nodes: Vec<Scalar> = (0..n).map(|i| &kk[i] - int(nu[i] as i64 + 1)).collect();
            nodes.push(&kk[l] - int(extra as i64 + 1));
            let mut t: Scalar = nu.iter().map(|&v| int(v as i64 + 1)).product::<Scalar>() * int(extra as i64 + 1);
            for a in 0..=n {
                for b in a + 1..=n {
                    t *= &nodes[b] - &nodes[a];
                }
            }
            if det.is_zero() || det != t {
                return Err(Error::Inconsistent(format!("nondegeneracy determinant {det} differs from {t}")));
            }
            nondegeneracy.push(((l + 1, extra), det, t));
        }
    }
    let mut w = vec![Scalar::zero()];
    w.extend(sol.iter().cloned());
    // Pin w_0 so that f(0) = 0; the constant w_0 contributes (n−1)!·w_0 to f(0).
    let f = sinh_transform(&MultiPoly::from_univariate(&w.iter().cloned().map(MultiPoly::constant).collect::<Vec<_>>(), Var::Z), n, Var::Z, Direction::Forward)?;
    w[0] = -f.constant_term() / from_bigint(factorial(n as u64 - 1));
    let zeta = recover_zeta(&w, n).ok();
    Ok(DesignedDeformation { lambda: lambda.to_vec(), nu: nu.to_vec(), w, zeta, nondegeneracy })
}

/// ζ_k = [z^k](f(z) − f(z−1))·k!/(n+k)! with f the forward transform of w.
pub fn recover_zeta(w: &[Scalar], n: usize) -> Result<Vec<Scalar>> {
    let z = Var::Z;
    let wp = MultiPoly::from_univariate(&w.iter().cloned().map(MultiPoly::constant).collect::<Vec<_>>(), z);
    let f = sinh_transform(&wp, n, z, Direction::Forward)?;
    if !f.constant_term().is_zero() {
        return Err(Error::Inconsistent("f(0) ≠ 0".into()));
    }
    let diff = &f - &f.substitute_one(z, &(&MultiPoly::var(z) - &MultiPoly::one()));
    let coeffs = diff.univariate_coeffs(z);
    let zeta: Vec<Scalar> = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c.as_constant().unwrap() * from_bigint(factorial(k as u64)) / from_bigint(factorial((n + k) as u64)))
        .collect();
    Ok(zeta)
}

/// gl_1 with [y, x] = φ(h): finite iff some ν ≥ 0 has Σ_{s=0}^{ν} φ(λ − s) = 0.
/// Returns the least such ν, scanning up to `bound`.
pub fn gl1_oracle_nu(phi: &[Scalar], lambda: &Scalar, bound: u64) -> Option<u64> {
    let eval = |x: &Scalar| phi.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c);
    let mut acc = Scalar::zero();
    for s in 0..=bound {
        acc += eval(&(lambda - int(s as i64)));
        if acc.is_zero() {
            return Some(s);
        }
    }
    None
}

/// φ(h) = Σ (j+1) ζ_j h^j, the gl_1 commutator [y, x].
pub fn gl1_phi(zeta: &[Scalar]) -> Vec<Scalar> {
    zeta.iter().enumerate().map(|(j, z)| z * int(j as i64 + 1)).collect()
}

pub fn brute_force_k(p: &MultiPoly, lambda: &[Scalar], i: usize, bound: u64) -> K {
    let diff = p_difference(p, lambda, i);
    for k in 0..=bound {
        let v = diff.substitute_one(Var::MU, &MultiPoly::int(k as i64 + 1));
        if v.is_zero() {
            return K::Finite(k);
        }
    }
    K::Infinite
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn roots_of_small_polys() {
        let mu = MultiPoly::var(Var::MU);
        // (μ − 3)(μ + 2)(2μ − 1) μ
        let p = &(&(&(&mu - &MultiPoly::int(3)) * &(&mu + &MultiPoly::int(2))) * &(&mu.scale(&int(2)) - &MultiPoly::one())) * &mu;
        assert_eq!(integer_roots(&p, Var::MU), vec![-2, 0, 3]);
        let q = &mu.scale(&frac(1, 3)) - &MultiPoly::constant(frac(5, 3));
        assert_eq!(integer_roots(&q, Var::MU), vec![5]);
        assert!(integer_roots(&(&mu.pow(2) + &MultiPoly::one()), Var::MU).is_empty());
    }

    #[test]
    fn example_two_zero() {
        let ch = character(&ints(&[2, 0]), &[0, 3]).unwrap();
        let dims: Vec<Scalar> = ch.components.iter().map(|c| c.dimension.clone()).collect();
        assert_eq!(dims, ints(&[3, 4, 5, 6]));
        assert_eq!(ch.dimension, int(18));
    }

    #[test]
    fn zeta0_gl2_never_finite() {
        let d = DeformationGl::ints(2, &[1]);
        for l in [[5, 3], [0, 0], [2, 0]] {
            assert!(!classify(&ints(&l), &d).unwrap().finite);
        }
    }

    #[test]
    fn design_round_trip_gl2() {
        let lam = ints(&[5, 3]);
        let des = design_deformation(&lam, &[1, 2]).unwrap();
        let d = des.deformation().unwrap();
        assert_eq!(d.zeta.len(), 3);
        let rep = classify(&lam, &d).unwrap();
        assert_eq!(rep.nu, Some(vec![1, 2]));
        assert_eq!(compute_p(&d).unwrap(), des.p());
    }

    #[test]
    fn gl1_matches_oracle() {
        // φ(h) = 2h + 3 from ζ = (3, 1)
        let zeta = ints(&[3, 1]);
        let d = DeformationGl::numeric(1, &zeta);
        for l in -6..=6 {
            let lam = int(l);
            let rep = classify(std::slice::from_ref(&lam), &d).unwrap();
            let oracle = gl1_oracle_nu(&gl1_phi(&zeta), &lam, 50);
            assert_eq!(rep.nu.map(|v| v[0]), oracle, "λ = {l}");
        }
    }
}
