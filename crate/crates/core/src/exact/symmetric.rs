use num_traits::One;

use super::poly::MultiPoly;
use super::scalar::{int, Scalar};
use super::series::LaurentSeries;
use super::var::Var;

/// H_j(x_1..x_n), the sum of all degree-j monomials in the given arguments.
pub fn complete_homogeneous(j: usize, args: &[MultiPoly]) -> MultiPoly {
    assert!(!args.is_empty(), "complete_homogeneous needs at least one argument");
    // h[k] holds H_k in the arguments seen so far.
    let mut h: Vec<MultiPoly> = (0..=j).map(|k| if k == 0 { MultiPoly::one() } else { args[0].pow(k as u32) }).collect();
    for x in &args[1..] {
        for k in 1..=j {
            let t = &h[k - 1] * x;
            h[k] += &t;
        }
    }
    h.swap_remove(j)
}

pub fn complete_homogeneous_vars(j: usize, vars: &[Var]) -> MultiPoly {
    let args: Vec<MultiPoly> = vars.iter().map(|&v| MultiPoly::var(v)).collect();
    complete_homogeneous(j, &args)
}

/// The generic matrix A = (e_ij).
pub fn generic_matrix(n: usize) -> Vec<Vec<MultiPoly>> {
    (1..=n).map(|i| (1..=n).map(|j| MultiPoly::var(Var::e(i, j))).collect()).collect()
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    // Heap's algorithm with parity tracking.
    let mut out = Vec::new();
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut even = true;
    out.push((a.clone(), even));
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            even = !even;
            out.push((a.clone(), even));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Leibniz determinant; meant for the small symbolic matrices used here.
pub fn det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one();
    }
    let mut total = MultiPoly::zero();
    for (p, even) in permutations(n) {
        let mut t = MultiPoly::one();
        for (row, &col) in p.iter().enumerate() {
            if m[row][col].is_zero() {
                t = MultiPoly::zero();
                break;
            }
            t = &t * &m[row][col];
        }
        if even {
            total += &t;
        } else {
            total -= &t;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Sums of principal k×k minors: det(1 − tA) = Σ_k Q_k (−t)^k.
pub fn principal_minor_sums(a: &[Vec<MultiPoly>]) -> Vec<MultiPoly> {
    let n = a.len();
    (0..=n)
        .map(|k| {
            subsets(n, k)
                .into_iter()
                .map(|s| {
                    let sub: Vec<Vec<MultiPoly>> = s.iter().map(|&i| s.iter().map(|&j| a[i][j].clone()).collect()).collect();
                    det(&sub)
                })
                .sum()
        })
        .collect()
}

/// Q_0..Q_n for the generic n×n matrix.
pub fn char_poly_coeffs(n: usize) -> Vec<MultiPoly> {
    principal_minor_sums(&generic_matrix(n))
}

/// det(1 − vA) as a polynomial in `var`.
pub fn det_one_minus(a: &[Vec<MultiPoly>], var: Var) -> MultiPoly {
    let q = principal_minor_sums(a);
    let mut out = MultiPoly::zero();
    for (k, qk) in q.iter().enumerate() {
        let sign = if k % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        out += &qk.mul_monomial(&super::poly::Monomial::pow(var, k as u32), &sign);
    }
    out
}

/// Tr S^j A for j = 0..=jmax, from det(1 − zA)^{-1} = Σ_j Tr S^j A z^j.
///
/// Uses h_j = Σ_{k=1}^{min(j,n)} (−1)^{k+1} Q_k h_{j−k}.
pub fn complete_traces(a: &[Vec<MultiPoly>], jmax: usize) -> Vec<MultiPoly> {
    let q = principal_minor_sums(a);
    let n = a.len();
    let mut h: Vec<MultiPoly> = vec![MultiPoly::one()];
    for j in 1..=jmax {
        let mut acc = MultiPoly::zero();
        for k in 1..=j.min(n) {
            let t = &q[k] * &h[j - k];
            if k % 2 == 1 {
                acc += &t;
            } else {
                acc -= &t;
            }
        }
        h.push(acc);
    }
    h
}

pub fn trace_power_sym(j: usize, n: usize) -> MultiPoly {
    complete_traces(&generic_matrix(n), j).swap_remove(j)
}

/// det(1 − zA)^{-1} as a series in `var` through `order`.
pub fn inverse_det_series(a: &[Vec<MultiPoly>], var: Var, order: i64) -> LaurentSeries {
    let h = complete_traces(a, order.max(0) as usize);
    LaurentSeries::from_coeffs(var, 0, h, order)
}

/// Matrix product for small symbolic matrices.
pub fn mat_mul(a: &[Vec<MultiPoly>], b: &[Vec<MultiPoly>]) -> Vec<Vec<MultiPoly>> {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

pub fn identity(n: usize) -> Vec<Vec<MultiPoly>> {
    (0..n).map(|i| (0..n).map(|j| MultiPoly::int((i == j) as i64)).collect()).collect()
}

pub fn trace(a: &[Vec<MultiPoly>]) -> MultiPoly {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

/// ρ = ((n−1)/2, (n−3)/2, …, −(n−1)/2).
pub fn rho(n: usize) -> Vec<Scalar> {
    (0..n).map(|i| super::scalar::frac(n as i64 - 1 - 2 * i as i64, 2)).collect()
}

/// Σ_{p ⊢ m} (p_j + 1) ∏ λ_i^{p_i}: the leading HC term of [y_j, x_j] per unit ζ_m.
pub fn weighted_complete(m: usize, j: usize, args: &[MultiPoly]) -> MultiPoly {
    let n = args.len();
    let mut total = MultiPoly::zero();
    let mut exps = vec![0usize; n];
    fn go(pos: usize, left: usize, exps: &mut Vec<usize>, j: usize, args: &[MultiPoly], total: &mut MultiPoly) {
        if pos + 1 == exps.len() {
            exps[pos] = left;
            let mut t = MultiPoly::constant(int(exps[j] as i64 + 1));
            for (i, &e) in exps.iter().enumerate() {
                t = &t * &args[i].pow(e as u32);
            }
            *total += &t;
            return;
        }
        for e in 0..=left {
            exps[pos] = e;
            go(pos + 1, left - e, exps, j, args, total);
        }
    }
    go(0, m, &mut exps, j, args, &mut total);
    total
}
