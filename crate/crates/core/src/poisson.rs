//! The Poisson algebra S(gl_n) ⊗ S(V ⊕ V*) with deformed bracket, its central
//! generators, and the trace-derivative form of the pairing.

use crate::exact::symmetric::{char_poly_coeffs, complete_traces, generic_matrix};
use crate::exact::{LaurentSeries, MultiPoly, Var, VarKind};
use crate::par::{self, Exec};
use crate::pbw::{zeta_pair_commutative, DeformationGl};

/// Bracket engine on polynomials in e_ij, x_i, y_i.
#[derive(Clone, Debug)]
pub struct PoissonGl {
    n: usize,
    /// `pair[i-1][j-1]` = {y_i, x_j}.
    pair: Vec<Vec<MultiPoly>>,
}

impl PoissonGl {
    pub fn new(d: &DeformationGl) -> PoissonGl {
        let n = d.n;
        let pair = (1..=n).map(|i| (1..=n).map(|j| zeta_pair_commutative(i, j, d)).collect()).collect();
        PoissonGl { n, pair }
    }

    /// An arbitrary (possibly non-invariant) {y_i, x_j}; used to exercise Jacobi failures.
    pub fn with_pairing(n: usize, pair: Vec<Vec<MultiPoly>>) -> PoissonGl {
        assert!(pair.len() == n && pair.iter().all(|r| r.len() == n), "pairing must be n×n");
        PoissonGl { n, pair }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> Vec<Var> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                out.push(Var::e(i, j));
            }
        }
        out.extend((1..=n).map(Var::x));
        out.extend((1..=n).map(Var::y));
        out
    }

    /// {u, v} for two generator variables.
    pub fn bracket_vars(&self, u: Var, v: Var) -> MultiPoly {
        use VarKind::*;
        let d = |a: u16, b: u16| a == b;
        match (u.kind(), v.kind()) {
            (E(i, j), E(k, l)) => {
                let mut out = MultiPoly::zero();
                if d(j, k) {
                    out += &MultiPoly::var(Var::e(i as usize, l as usize));
                }
                if d(l, i) {
                    out -= &MultiPoly::var(Var::e(k as usize, j as usize));
                }
                out
            }
            (E(i, j), Y(k)) if d(j, k) => MultiPoly::var(Var::y(i as usize)),
            (E(i, j), X(k)) if d(i, k) => -MultiPoly::var(Var::x(j as usize)),
            (Y(i), X(j)) => self.pair[i as usize - 1][j as usize - 1].clone(),
            (Y(_) | X(_), E(..)) | (X(_), Y(_)) => -self.bracket_vars(v, u),
            _ => MultiPoly::zero(),
        }
    }

    fn active(&self, a: &MultiPoly) -> Vec<(Var, MultiPoly)> {
        a.vars()
            .into_iter()
            .filter(|v| matches!(v.kind(), VarKind::E(..) | VarKind::X(_) | VarKind::Y(_)))
            .map(|v| (v, a.derivative(v)))
            .collect()
    }

    /// {a, b} = Σ_{u,v} ∂_u a ∂_v b {u, v}.
    pub fn bracket(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let da = self.active(a);
        let db = self.active(b);
        let mut out = MultiPoly::zero();
        for (u, pa) in &da {
            for (v, pb) in &db {
                let br = self.bracket_vars(*u, *v);
                if br.is_zero() {
                    continue;
                }
                out += &(&(pa * pb) * &br);
            }
        }
        out
    }

    pub fn jacobi(&self, a: &MultiPoly, b: &MultiPoly, c: &MultiPoly) -> MultiPoly {
        let t1 = self.bracket(a, &self.bracket(b, c));
        let t2 = self.bracket(b, &self.bracket(c, a));
        let t3 = self.bracket(c, &self.bracket(a, b));
        &(&t1 + &t2) + &t3
    }
}

pub fn pbracket(a: &MultiPoly, b: &MultiPoly, d: &DeformationGl) -> MultiPoly {
    PoissonGl::new(d).bracket(a, b)
}

/// τ_k = Σ_i x_i {Q_k, y_i}, bracket taken at ζ = 0.
pub fn tau_k(k: usize, n: usize) -> MultiPoly {
    assert!((1..=n).contains(&k), "k out of range");
    let p = PoissonGl::new(&DeformationGl::zero(n));
    let q = &char_poly_coeffs(n)[k];
    (1..=n).map(|i| &MultiPoly::var(Var::x(i)) * &p.bracket(q, &MultiPoly::var(Var::y(i)))).sum()
}

/// Res_z ζ(z^{-1}) z^{-1} det(1−zA)^{-1} (1−uz)^{-1} as a polynomial in u = t^{-1}.
fn residue_in_u(d: &DeformationGl, a: &[Vec<MultiPoly>]) -> crate::Result<MultiPoly> {
    let Some(m) = d.degree() else {
        return Ok(MultiPoly::zero());
    };
    let order = (m + a.len() + 2) as i64;
    let zeta_inv = LaurentSeries::from_coeffs(Var::Z, -(m as i64) - 1, d.zeta[..=m].iter().rev().cloned().collect(), order);
    let inv_det = LaurentSeries::from_coeffs(Var::Z, 0, complete_traces(a, order as usize), order);
    let geo = LaurentSeries::geometric(&MultiPoly::var(Var::TINV), Var::Z, order);
    zeta_inv.mul(&inv_det).mul(&geo).residue()
}

/// c(t) multiplied out: returns [t^i] for i = 0..=n, given det(1 − tA) = Σ (−1)^k Q_k t^k.
fn c_coefficients(q: &[MultiPoly], r: &MultiPoly) -> Vec<MultiPoly> {
    let n = q.len() - 1;
    let ru = r.univariate_coeffs(Var::TINV);
    (0..=n)
        .map(|i| {
            let mut acc = MultiPoly::zero();
            for (p, rp) in ru.iter().enumerate() {
                let k = i + p;
                if k > n || rp.is_zero() {
                    continue;
                }
                let t = &q[k] * rp;
                if k % 2 == 0 {
                    acc += &t;
                } else {
                    acc -= &t;
                }
            }
            acc
        })
        .collect()
}

/// (c_1, …, c_n) with (−1)^i c_i the coefficient of t^i in c(t).
pub fn poisson_c_series(d: &DeformationGl) -> crate::Result<Vec<MultiPoly>> {
    let a = generic_matrix(d.n);
    let q = char_poly_coeffs(d.n);
    let r = residue_in_u(d, &a)?;
    let coeffs = c_coefficients(&q, &r);
    Ok((1..=d.n).map(|i| if i % 2 == 0 { coeffs[i].clone() } else { -coeffs[i].clone() }).collect())
}

/// Σ_j ζ_j Tr S^{j+1} A.
pub fn c1_closed_form(d: &DeformationGl) -> MultiPoly {
    let m = d.zeta.len();
    let h = complete_traces(&generic_matrix(d.n), m + 1);
    d.zeta.iter().enumerate().map(|(j, z)| &h[j + 1] * z).sum()
}

/// Residuals of {τ_k + c_k, g} over all generators g.
#[derive(Clone, Debug)]
pub struct CenterCertificate {
    pub n: usize,
    /// (k, generator name, residual).
    pub residuals: Vec<(usize, String, MultiPoly)>,
}

impl CenterCertificate {
    pub fn passed(&self) -> bool {
        self.residuals.iter().all(|(_, _, r)| r.is_zero())
    }

    pub fn failures(&self) -> usize {
        self.residuals.iter().filter(|(_, _, r)| !r.is_zero()).count()
    }
}

pub fn center_generators_gl(d: &DeformationGl) -> crate::Result<Vec<MultiPoly>> {
    let c = poisson_c_series(d)?;
    Ok((1..=d.n).map(|k| &tau_k(k, d.n) + &c[k - 1]).collect())
}

pub fn verify_center_gl(d: &DeformationGl, exec: Exec) -> crate::Result<CenterCertificate> {
    let p = PoissonGl::new(d);
    let z = center_generators_gl(d)?;
    let gens = p.generators();
    let jobs: Vec<(usize, Var)> = (1..=d.n).flat_map(|k| gens.iter().map(move |&g| (k, g))).collect();
    let residuals = par::map(exec, &jobs, |&(k, g)| (k, g.to_string(), p.bracket(&z[k - 1], &MultiPoly::var(g))));
    Ok(CenterCertificate { n: d.n, residuals })
}

/// Compares {y_i, x_j} with Σ_l ζ_l ∂Tr S^{l+1}A/∂e_ji for every (i, j).
pub fn pair_vs_trace_derivative(d: &DeformationGl) -> Vec<((usize, usize), MultiPoly)> {
    let n = d.n;
    let h = complete_traces(&generic_matrix(n), d.zeta.len() + 1);
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let lhs = zeta_pair_commutative(i, j, d);
            let rhs: MultiPoly = d.zeta.iter().enumerate().map(|(l, z)| &h[l + 1].derivative(Var::e(j, i)) * z).sum();
            out.push(((i, j), &lhs - &rhs));
        }
    }
    out
}

/// Substitutes e_ij ↦ δ_ij λ_i.
pub fn diagonal_restriction(p: &MultiPoly, n: usize) -> MultiPoly {
    let mut map = std::collections::HashMap::new();
    for i in 1..=n {
        for j in 1..=n {
            let v = if i == j { MultiPoly::var(Var::lambda(i)) } else { MultiPoly::zero() };
            map.insert(Var::e(i, j), v);
        }
    }
    p.substitute(&map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> MultiPoly {
        MultiPoly::var(x)
    }

    #[test]
    fn gl1_basics() {
        let d = DeformationGl::symbolic(1, 0);
        let p = PoissonGl::new(&d);
        assert_eq!(p.bracket(&v(Var::y(1)), &v(Var::x(1))), v(Var::zeta(0)));
        assert_eq!(tau_k(1, 1), &v(Var::x(1)) * &v(Var::y(1)));
        let c = poisson_c_series(&d).unwrap();
        assert_eq!(c[0], &v(Var::zeta(0)) * &v(Var::e(1, 1)));
    }

    #[test]
    fn c1_matches_closed_form() {
        for n in 1..=3 {
            let d = DeformationGl::symbolic(n, 2);
            assert_eq!(poisson_c_series(&d).unwrap()[0], c1_closed_form(&d));
        }
    }

    #[test]
    fn center_n2() {
        let d = DeformationGl::symbolic(2, 2);
        let cert = verify_center_gl(&d, Exec::Sequential).unwrap();
        assert!(cert.passed(), "{:?}", cert.residuals.iter().filter(|r| !r.2.is_zero()).collect::<Vec<_>>());
    }

    #[test]
    fn trace_derivative_n2() {
        let d = DeformationGl::ints(2, &[0, 1]);
        assert!(pair_vs_trace_derivative(&d).iter().all(|(_, r)| r.is_zero()));
        let tr = &v(Var::e(1, 1)) + &v(Var::e(2, 2));
        assert_eq!(zeta_pair_commutative(1, 1, &d), &tr + &v(Var::e(1, 1)));
        assert_eq!(zeta_pair_commutative(1, 2, &d), v(Var::e(1, 2)));
    }
}
