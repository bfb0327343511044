//! The quadratic Casimir t_1′ of H_ζ(gl_n), the f/g/w pipeline, and the
//! polynomial P(λ) by which t_1′ acts on M(λ).

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::scalar::{binomial, factorial, from_bigint, frac, rising};
use crate::exact::symmetric::{complete_homogeneous, complete_traces, generic_matrix, rho};
use crate::exact::{discrete_antiderivative, sinh_transform, Direction, LaurentSeries, MultiPoly, Scalar, Var};
use crate::par::{self, Exec};
use crate::pbw::{DeformationGl, GlAlgebra, Generator, PbwElement, PbwMonomial};
use crate::poisson::PoissonGl;
use crate::verma::{hc_project, lambda_vars};

/// f, g and w derived from ζ. All are polynomials in `Var::Z`.
#[derive(Clone, Debug, PartialEq)]
pub struct Pipeline {
    pub d: DeformationGl,
    /// r(z) = ∂^n(z^n ζ(z)).
    pub r: MultiPoly,
    pub f: MultiPoly,
    pub g: MultiPoly,
    pub w: MultiPoly,
}

impl Pipeline {
    pub fn w_coeffs(&self) -> Vec<MultiPoly> {
        self.w.univariate_coeffs(Var::Z)
    }

    pub fn g_coeffs(&self) -> Vec<MultiPoly> {
        self.g.univariate_coeffs(Var::Z)
    }
}

pub fn build_pipeline(d: &DeformationGl) -> Result<Pipeline> {
    let n = d.n;
    let z = Var::Z;
    let r_coeffs: Vec<MultiPoly> = d
        .zeta
        .iter()
        .enumerate()
        .map(|(k, zk)| zk.scale(&from_bigint(factorial((n + k) as u64) / factorial(k as u64))))
        .collect();
    let r = MultiPoly::from_univariate(&r_coeffs, z);
    let f = discrete_antiderivative(&r, z);
    let g_coeffs: Vec<MultiPoly> = f
        .univariate_coeffs(z)
        .iter()
        .enumerate()
        .map(|(m, fm)| fm.scale(&(Scalar::one() / from_bigint(rising(m as i64 + 1, n as i64 - 1)))))
        .collect();
    let g = MultiPoly::from_univariate(&g_coeffs, z);
    let w = sinh_transform(&f, n, z, Direction::Inverse)?;
    let shifted = |p: &MultiPoly| p.substitute_one(z, &(&MultiPoly::var(z) - &MultiPoly::one()));
    if &f - &shifted(&f) != r || !f.constant_term().is_zero() || sinh_transform(&w, n, z, Direction::Forward)? != f {
        return Err(Error::Inconsistent("pipeline invariants failed".into()));
    }
    Ok(Pipeline { d: d.clone(), r, f, g, w })
}

/// Which of the two equivalent formulas builds the Casimir.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    Residue,
    TraceSum,
}

fn xy_part(alg: &GlAlgebra) -> PbwElement {
    let l = alg.layout();
    let mut out = PbwElement::zero();
    for j in 1..=alg.n() {
        let m = PbwMonomial::one(l.len()).with(l.index(Generator::X(j)), 1).with(l.index(Generator::Y(j)), 1);
        out.add_term(m, MultiPoly::one());
    }
    out
}

/// Res_z g(z^{-1}) det(1−zA)^{-1} dz/z with commuting entries A = (e_ij).
pub fn casimir_residue_commutative(p: &Pipeline) -> Result<MultiPoly> {
    let g = p.g_coeffs();
    if g.is_empty() {
        return Ok(MultiPoly::zero());
    }
    let deg = g.len() as i64 - 1;
    let order = deg + p.d.n as i64 + 2;
    let a = generic_matrix(p.d.n);
    // g(z^{-1}) z^{-1} = Σ g_m z^{-m-1}
    let lead = LaurentSeries::from_coeffs(Var::Z, -deg - 1, g.iter().rev().cloned().collect(), order);
    let inv_det = LaurentSeries::from_coeffs(Var::Z, 0, complete_traces(&a, order as usize), order);
    lead.mul(&inv_det).residue()
}

pub fn casimir_in(alg: &GlAlgebra, p: &Pipeline, construction: Construction) -> Result<PbwElement> {
    let c_part = match construction {
        Construction::Residue => alg.symmetrize(&casimir_residue_commutative(p)?),
        Construction::TraceSum => {
            let g = p.g_coeffs();
            let h = complete_traces(&generic_matrix(alg.n()), g.len());
            let mut out = PbwElement::zero();
            for (j, gj) in g.iter().enumerate() {
                if !gj.is_zero() {
                    out.add_scaled(&alg.symmetrize(&h[j]), gj);
                }
            }
            out
        }
    };
    Ok(xy_part(alg).add(&c_part))
}

pub fn casimir_element(d: &DeformationGl, construction: Construction) -> Result<PbwElement> {
    let alg = GlAlgebra::new(d.clone());
    casimir_in(&alg, &build_pipeline(d)?, construction)
}

/// Σ_j w_j H_j(λ+ρ).
pub fn p_from_pipeline(p: &Pipeline) -> MultiPoly {
    let n = p.d.n;
    let r = rho(n);
    let args: Vec<MultiPoly> = lambda_vars(n).iter().zip(&r).map(|(l, c)| l + &MultiPoly::constant(c.clone())).collect();
    p.w_coeffs().iter().enumerate().filter(|(_, w)| !w.is_zero()).map(|(j, w)| &complete_homogeneous(j, &args) * w).sum()
}

pub fn compute_p(d: &DeformationGl) -> Result<MultiPoly> {
    Ok(p_from_pipeline(&build_pipeline(d)?))
}

/// P(λ) read off directly as HC(t_1′).
pub fn p_from_hc(d: &DeformationGl) -> Result<MultiPoly> {
    let alg = GlAlgebra::new(d.clone());
    let c = casimir_in(&alg, &build_pipeline(d)?, Construction::TraceSum)?;
    Ok(hc_project(&c, alg.layout()))
}

/// [t_1′, g] for every generator g.
pub fn centrality_residuals(alg: &GlAlgebra, c: &PbwElement, exec: Exec) -> Vec<(Generator, PbwElement)> {
    let gens = alg.layout().gens().to_vec();
    par::map(exec, &gens, |&g| (g, alg.commutator(c, &alg.gen(g))))
}

/// Coefficients (−1)^j/(k+n+1)·C(k+n+1, j+1) of Tr S^{k+1−j}A, j = 0..=k.
pub fn bridge_coefficients(k: usize, n: usize) -> Vec<Scalar> {
    let big = (k + n + 1) as i64;
    (0..=k as i64)
        .map(|j| {
            let s = if j % 2 == 0 { 1 } else { -1 };
            from_bigint(binomial(big, j + 1)) * frac(s, big)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct BridgeReport {
    pub k: usize,
    pub n: usize,
    pub coefficients: Vec<Scalar>,
    /// (l, [Sym Tr S^{k+1}A, y_l] − Sym of the Poisson side).
    pub residuals: Vec<(usize, PbwElement)>,
}

impl BridgeReport {
    pub fn holds(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero())
    }
}

/// [Tr S^{k+1}A, y_l] in U(gl_n) ⋉ V against {F, y_l} with F the combination
/// above, identifying Σ h_i y_i with Σ Sym(h_i) y_i.
pub fn bridge_identity_check(k: usize, n: usize) -> BridgeReport {
    let alg = GlAlgebra::new(DeformationGl::zero(n));
    let pois = PoissonGl::new(&DeformationGl::zero(n));
    let h = complete_traces(&generic_matrix(n), k + 1);
    let coefficients = bridge_coefficients(k, n);
    let f: MultiPoly = coefficients.iter().enumerate().map(|(j, c)| h[k + 1 - j].scale(c)).sum();
    let lie = alg.symmetrize(&h[k + 1]);
    let l = alg.layout();
    let residuals = (1..=n)
        .map(|yl| {
            let lhs = alg.commutator(&lie, &alg.gen(Generator::Y(yl)));
            let pb = pois.bracket(&f, &MultiPoly::var(Var::y(yl)));
            let mut rhs = PbwElement::zero();
            for i in 1..=n {
                let coeff = pb.derivative(Var::y(i));
                if !coeff.is_zero() {
                    rhs = rhs.add(&alg.mul_elem_gen(&alg.symmetrize(&coeff), l.index(Generator::Y(i))));
                }
            }
            (yl, lhs.sub(&rhs))
        })
        .collect();
    BridgeReport { k, n, coefficients, residuals }
}
