//! Weights, Kostant partitions, Verma modules, Harish-Chandra projection and
//! Shapovalov forms.

use std::collections::HashMap;
use std::sync::Arc;

use dashmap::DashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::symmetric::rho;
use crate::exact::{Monomial, MultiPoly, Scalar, Var};
use crate::linalg::{minor_expansion_det, null_space};
use crate::par::{self, Exec};
use crate::pbw::{DeformationGl, Generator, GlAlgebra, Layout, PbwElement, PbwMonomial};

/// An element of Q⁺ given by its nonnegative coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QPlusElement {
    pub nu: Vec<i64>,
}

impl QPlusElement {
    pub fn new(nu: Vec<i64>) -> Result<QPlusElement> {
        if nu.is_empty() {
            return Err(Error::InvalidInput("weight needs at least one coordinate".into()));
        }
        if nu.iter().any(|&c| c < 0) {
            return Err(Error::InvalidInput(format!("negative coordinate in {nu:?}")));
        }
        Ok(QPlusElement { nu })
    }

    pub fn n(&self) -> usize {
        self.nu.len()
    }
}

/// A positive root: e_i − e_j (i<j) from gl_n, or the V-weight e_k.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Root {
    Gl(usize, usize),
    V(usize),
}

impl Root {
    pub fn vector(self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        match self {
            Root::Gl(i, j) => {
                v[i - 1] += 1;
                v[j - 1] -= 1;
            }
            Root::V(k) => v[k - 1] += 1,
        }
        v
    }

    /// The lowering generator f_α.
    pub fn lowering(self) -> Generator {
        match self {
            Root::Gl(i, j) => Generator::E(j, i),
            Root::V(k) => Generator::X(k),
        }
    }
}

pub fn positive_roots(n: usize) -> Vec<Root> {
    let mut out: Vec<Root> = (1..=n).map(Root::V).collect();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(Root::Gl(i, j));
        }
    }
    out
}

fn height(v: &[i64]) -> i64 {
    let n = v.len() as i64;
    v.iter().enumerate().map(|(i, &c)| (n - i as i64) * c).sum()
}

/// A multiset of positive roots summing to a target weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct KostantPartition {
    pub multiplicities: Vec<(Root, u32)>,
}

impl KostantPartition {
    /// f^m as an n⁻ PBW monomial.
    pub fn monomial(&self, layout: &Layout) -> PbwMonomial {
        let mut m = PbwMonomial::one(layout.len());
        for &(r, k) in &self.multiplicities {
            m.0[layout.index(r.lowering())] += k as u16;
        }
        m
    }

    pub fn weight(&self, n: usize) -> Vec<i64> {
        let mut w = vec![0; n];
        for &(r, k) in &self.multiplicities {
            for (a, b) in w.iter_mut().zip(r.vector(n)) {
                *a += b * k as i64;
            }
        }
        w
    }
}

fn enumerate(target: &[i64], roots: &[(Root, Vec<i64>, i64)], idx: usize, cur: &mut Vec<(Root, u32)>, out: &mut Vec<KostantPartition>) {
    if target.iter().all(|&c| c == 0) {
        out.push(KostantPartition { multiplicities: cur.clone() });
        return;
    }
    if idx == roots.len() || height(target) <= 0 {
        return;
    }
    let (r, v, h) = &roots[idx];
    let max = height(target) / h;
    let mut t = target.to_vec();
    for k in 0..=max {
        if k > 0 {
            for (a, b) in t.iter_mut().zip(v) {
                *a -= b;
            }
            cur.push((*r, k as u32));
        }
        enumerate(&t, roots, idx + 1, cur, out);
        if k > 0 {
            cur.pop();
        }
    }
}

/// All partitions of an integer vector into positive roots, in canonical order.
pub fn partitions_of(target: &[i64]) -> Vec<KostantPartition> {
    let n = target.len();
    let roots: Vec<(Root, Vec<i64>, i64)> = positive_roots(n)
        .into_iter()
        .map(|r| {
            let v = r.vector(n);
            let h = height(&v);
            (r, v, h)
        })
        .collect();
    let mut out = Vec::new();
    enumerate(target, &roots, 0, &mut Vec::new(), &mut out);
    out
}

pub fn kostant_partitions(nu: &QPlusElement) -> Vec<KostantPartition> {
    partitions_of(&nu.nu)
}

/// τ(v) for any integer vector (zero off Q⁺).
pub fn kostant_count(target: &[i64]) -> usize {
    if height(target) < 0 {
        return 0;
    }
    partitions_of(target).len()
}

/// Keeps the purely diagonal monomials and evaluates e_ii ↦ λ_i.
pub fn hc_project(a: &PbwElement, layout: &Layout) -> MultiPoly {
    let n = layout.n();
    let diag: Vec<usize> = (1..=n).map(|i| layout.index(Generator::E(i, i))).collect();
    let mut out = MultiPoly::zero();
    for (m, c) in a.terms() {
        let only_diag = m.0.iter().enumerate().all(|(i, &e)| e == 0 || diag.contains(&i));
        if !only_diag {
            continue;
        }
        let mono = Monomial::from_pairs((1..=n).map(|i| (Var::lambda(i), m.0[diag[i - 1]] as u32)));
        out += &c.mul_monomial(&mono, &Scalar::from_integer(1.into()));
    }
    out
}

pub fn lambda_vars(n: usize) -> Vec<MultiPoly> {
    (1..=n).map(|i| MultiPoly::var(Var::lambda(i))).collect()
}

type VermaKey = (u16, PbwMonomial);

/// The Verma module M(λ) with basis the n⁻ PBW monomials applied to v_λ.
pub struct Verma<'a> {
    alg: &'a GlAlgebra,
    lambda: Vec<MultiPoly>,
    cache: DashMap<VermaKey, Arc<PbwElement>>,
}

impl<'a> Verma<'a> {
    pub fn new(alg: &'a GlAlgebra, lambda: Vec<MultiPoly>) -> Verma<'a> {
        assert_eq!(lambda.len(), alg.n(), "highest weight has the wrong length");
        Verma { alg, lambda, cache: DashMap::new() }
    }

    pub fn symbolic(alg: &'a GlAlgebra) -> Verma<'a> {
        Verma::new(alg, lambda_vars(alg.n()))
    }

    pub fn algebra(&self) -> &GlAlgebra {
        self.alg
    }

    pub fn lambda(&self) -> &[MultiPoly] {
        &self.lambda
    }

    /// g · (u v_λ) for a generator index `g` and n⁻ monomial `u`.
    pub fn act(&self, g: usize, u: &PbwMonomial) -> Arc<PbwElement> {
        let layout = self.alg.layout();
        if layout.is_diagonal(g) {
            let Generator::E(i, _) = layout.gen(g) else { unreachable!() };
            let w = u.weight(layout)[i - 1];
            let c = &self.lambda[i - 1] + &MultiPoly::int(w);
            return Arc::new(PbwElement::monomial(u.clone(), c));
        }
        let first = u.first();
        if layout.is_lowering(g) && first.is_none_or(|f| g <= f) {
            return Arc::new(PbwElement::monomial(u.with(g, 1), MultiPoly::one()));
        }
        let Some(f) = first else {
            // Raising generator on the highest-weight vector.
            return Arc::new(PbwElement::zero());
        };
        let key = (g as u16, u.clone());
        if let Some(hit) = self.cache.get(&key) {
            return Arc::clone(hit.value());
        }
        // g·u_1·u' = u_1·(g·u') + [g, u_1]·u'
        let rest = u.with(f, -1);
        let inner = self.act(g, &rest);
        let mut out = self.act_vec(f, &inner);
        let br = self.alg.bracket_gens(layout.gen(g), layout.gen(f));
        let tail = PbwElement::monomial(rest, MultiPoly::one());
        out.add_scaled(&self.act_element(&br, &tail), &MultiPoly::one());
        let out = Arc::new(out);
        self.cache.insert(key, Arc::clone(&out));
        out
    }

    pub fn act_vec(&self, g: usize, v: &PbwElement) -> PbwElement {
        let mut out = PbwElement::zero();
        for (m, c) in v.terms() {
            out.add_scaled(&self.act(g, m), c);
        }
        out
    }

    /// a · v for an algebra element in PBW form.
    pub fn act_element(&self, a: &PbwElement, v: &PbwElement) -> PbwElement {
        let mut out = PbwElement::zero();
        for (m, c) in a.terms() {
            let mut cur = v.clone();
            for g in m.word().into_iter().rev() {
                cur = self.act_vec(g, &cur);
                if cur.is_zero() {
                    break;
                }
            }
            out.add_scaled(&cur, c);
        }
        out
    }

    /// Applies the generator word left-to-right as an operator product
    /// w_1 w_2 … w_k, i.e. w_k acts first.
    pub fn act_word(&self, word: &[usize], v: &PbwElement) -> PbwElement {
        let mut cur = v.clone();
        for &g in word.iter().rev() {
            cur = self.act_vec(g, &cur);
            if cur.is_zero() {
                break;
            }
        }
        cur
    }

    /// S(f^a, f^b) = coefficient of v_λ in σ(f^a) f^b v_λ.
    pub fn shapovalov(&self, a: &PbwMonomial, b: &PbwMonomial) -> MultiPoly {
        let layout = self.alg.layout();
        // σ(u_1 … u_k) = σ(u_k) … σ(u_1), so σ(u_1) acts first.
        let word: Vec<usize> = a.word().into_iter().rev().map(|i| layout.index(layout.gen(i).sigma())).collect();
        let v = PbwElement::monomial(b.clone(), MultiPoly::one());
        self.act_word(&word, &v).coeff(&PbwMonomial::one(layout.len()))
    }
}

/// Shapovalov Gram matrix on the f^m basis of U(n⁻)_ν.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub nu: QPlusElement,
    pub basis: Vec<KostantPartition>,
    pub entries: Vec<Vec<MultiPoly>>,
}

impl GramMatrix {
    pub fn tau(&self) -> usize {
        self.basis.len()
    }

    pub fn det(&self) -> MultiPoly {
        minor_expansion_det(&self.entries, Exec::Parallel)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.entries.len();
        (0..n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }
}

pub fn gram_in(verma: &Verma<'_>, nu: &QPlusElement, exec: Exec) -> GramMatrix {
    let layout = verma.algebra().layout();
    let basis = kostant_partitions(nu);
    let monos: Vec<PbwMonomial> = basis.iter().map(|p| p.monomial(layout)).collect();
    let t = monos.len();
    let flat = par::map_range(exec, t * t, |k| verma.shapovalov(&monos[k / t], &monos[k % t]));
    let entries = flat.chunks(t.max(1)).map(|row| row.to_vec()).collect();
    GramMatrix { nu: nu.clone(), basis, entries: if t == 0 { Vec::new() } else { entries } }
}

/// The Gram matrix with symbolic highest weight λ.
pub fn gram_matrix(nu: &QPlusElement, d: &DeformationGl) -> GramMatrix {
    let alg = GlAlgebra::new(d.clone());
    let verma = Verma::symbolic(&alg);
    gram_in(&verma, nu, Exec::Parallel)
}

/// ∏_{α∈Δ⁺(V)} ∏_k (P(λ)−P(λ−kα))^{τ(ν−kα)} · ∏_{α∈Δ⁺(gl)} ∏_k ((λ+ρ,α)−k)^{τ(ν−kα)}.
pub fn predicted_det_from_p(nu: &QPlusElement, p: &MultiPoly) -> MultiPoly {
    let n = nu.n();
    let r = rho(n);
    let lam = lambda_vars(n);
    let mut out = MultiPoly::one();
    for root in positive_roots(n) {
        let v = root.vector(n);
        for k in 1.. {
            let shifted: Vec<i64> = nu.nu.iter().zip(&v).map(|(a, b)| a - k * b).collect();
            if height(&shifted) < 0 {
                break;
            }
            let mult = kostant_count(&shifted);
            if mult == 0 {
                continue;
            }
            let factor = match root {
                Root::V(i) => {
                    let mut map = HashMap::new();
                    map.insert(Var::lambda(i), &lam[i - 1] - &MultiPoly::int(k));
                    p - &p.substitute(&map)
                }
                Root::Gl(i, j) => {
                    let c = &r[i - 1] - &r[j - 1] - Scalar::from_integer(k.into());
                    &(&lam[i - 1] - &lam[j - 1]) + &MultiPoly::constant(c)
                }
            };
            out = &out * &factor.pow(mult as u32);
        }
    }
    out
}

pub fn predicted_shapovalov_det(nu: &QPlusElement, d: &DeformationGl) -> Result<MultiPoly> {
    let p = crate::casimir::compute_p(d)?;
    Ok(predicted_det_from_p(nu, &p))
}

/// Kernel of S_ν(λ) at a numeric weight, and the singular vectors inside it.
#[derive(Clone, Debug)]
pub struct CriticalReport {
    pub basis: Vec<KostantPartition>,
    pub kernel: Vec<Vec<Scalar>>,
    /// Vectors of the kernel annihilated by every e_{i,i+1} and y_i.
    pub singular: Vec<Vec<Scalar>>,
    /// True when every vector in `singular` was re-checked against n⁺.
    pub verified: bool,
}

fn to_scalar(p: &MultiPoly) -> Result<Scalar> {
    p.as_constant().ok_or_else(|| Error::InvalidInput(format!("expected a numeric value, got {p}")))
}

pub fn raising_simple(layout: &Layout) -> Vec<usize> {
    let n = layout.n();
    let mut out: Vec<usize> = (1..n).map(|i| layout.index(Generator::E(i, i + 1))).collect();
    out.extend((1..=n).map(|i| layout.index(Generator::Y(i))));
    out
}

pub fn critical_vectors(nu: &QPlusElement, lambda: &[Scalar], d: &DeformationGl) -> Result<CriticalReport> {
    let alg = GlAlgebra::new(d.clone());
    let verma = Verma::new(&alg, lambda.iter().cloned().map(MultiPoly::constant).collect());
    critical_vectors_in(&verma, nu, Exec::Parallel)
}

pub fn critical_vectors_in(verma: &Verma<'_>, nu: &QPlusElement, exec: Exec) -> Result<CriticalReport> {
    let layout = verma.algebra().layout();
    let gram = gram_in(verma, nu, exec);
    let t = gram.tau();
    let s: Vec<Vec<Scalar>> = gram.entries.iter().map(|r| r.iter().map(to_scalar).collect::<Result<_>>()).collect::<Result<_>>()?;
    if nu.nu.iter().all(|&c| c == 0) {
        return Ok(CriticalReport { basis: gram.basis, kernel: Vec::new(), singular: Vec::new(), verified: true });
    }
    let kernel = null_space(&s, t);
    let monos: Vec<PbwMonomial> = gram.basis.iter().map(|p| p.monomial(layout)).collect();
    // Rows: for each raising generator and each target monomial, the
    // coefficient in g · (Σ c_b f^b) as a linear form in c.
    let raising = raising_simple(layout);
    let images: Vec<Vec<PbwElement>> = raising.iter().map(|&g| monos.iter().map(|m| (*verma.act(g, m)).clone()).collect()).collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for img in &images {
        let mut targets: Vec<PbwMonomial> = img.iter().flat_map(|e| e.terms().map(|(m, _)| m.clone())).collect();
        targets.sort();
        targets.dedup();
        for tm in targets {
            rows.push(img.iter().map(|e| to_scalar(&e.coeff(&tm))).collect::<Result<_>>()?);
        }
    }
    // Singular vectors = ker S ∩ ker(n⁺): solve in kernel coordinates.
    let singular = if kernel.is_empty() {
        Vec::new()
    } else {
        let k = kernel.len();
        let restricted: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|row| (0..k).map(|a| (0..t).map(|b| &row[b] * &kernel[a][b]).sum()).collect())
            .collect();
        null_space(&restricted, k)
            .into_iter()
            .map(|coef| (0..t).map(|b| (0..k).map(|a| &coef[a] * &kernel[a][b]).sum()).collect())
            .collect()
    };
    let verified = singular.iter().all(|v: &Vec<Scalar>| {
        let vec = monos.iter().zip(v).fold(PbwElement::zero(), |mut acc, (m, c)| {
            acc.add_term(m.clone(), MultiPoly::constant(c.clone()));
            acc
        });
        raising.iter().all(|&g| verma.act_vec(g, &vec).is_zero())
    });
    Ok(CriticalReport { basis: gram.basis, kernel, singular, verified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, Var};

    #[test]
    fn partition_counts() {
        let zero = QPlusElement::new(vec![0, 0]).unwrap();
        assert_eq!(kostant_partitions(&zero).len(), 1);
        let a = QPlusElement::new(vec![1, 0]).unwrap();
        let parts = kostant_partitions(&a);
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().any(|p| p.multiplicities == vec![(Root::V(1), 1)]));
        assert!(parts.iter().any(|p| p.multiplicities == vec![(Root::V(2), 1), (Root::Gl(1, 2), 1)]));
        let b = QPlusElement::new(vec![1, 1]).unwrap();
        assert_eq!(kostant_partitions(&b).len(), 2);
        assert!(QPlusElement::new(vec![1, -1]).is_err());
        assert_eq!(kostant_count(&[1, -1]), 1);
        assert_eq!(kostant_count(&[-1, 0]), 0);
    }

    #[test]
    fn hc_examples() {
        let z0 = MultiPoly::var(Var::zeta(0));
        let alg = GlAlgebra::new(DeformationGl::new(1, vec![z0.clone()]));
        let l = alg.layout();
        assert_eq!(hc_project(&alg.gen(Generator::E(1, 1)), l), MultiPoly::var(Var::lambda(1)));
        let xy = alg.normal_order(&[Generator::X(1), Generator::Y(1)]);
        assert!(hc_project(&xy, l).is_zero());
        let yx = alg.normal_order(&[Generator::Y(1), Generator::X(1)]);
        assert_eq!(hc_project(&yx, l), z0);
        let alg2 = GlAlgebra::new(DeformationGl::zero(2));
        assert!(hc_project(&alg2.gen(Generator::E(1, 2)), alg2.layout()).is_zero());
    }

    #[test]
    fn gl1_gram_is_factorial() {
        let z0 = MultiPoly::var(Var::zeta(0));
        let d = DeformationGl::new(1, vec![z0.clone()]);
        for m in 1..=4 {
            let nu = QPlusElement::new(vec![m]).unwrap();
            let g = gram_matrix(&nu, &d);
            assert_eq!(g.tau(), 1);
            let fact: i64 = (1..=m).product();
            assert_eq!(g.entries[0][0], z0.pow(m as u32).scale(&int(fact)));
        }
    }

    #[test]
    fn gram_matches_hc_of_products() {
        let d = DeformationGl::symbolic(2, 1);
        let alg = GlAlgebra::new(d);
        let verma = Verma::symbolic(&alg);
        let l = alg.layout();
        let nu = QPlusElement::new(vec![1, 1]).unwrap();
        let g = gram_in(&verma, &nu, Exec::Sequential);
        for (a, pa) in g.basis.iter().enumerate() {
            for (b, pb) in g.basis.iter().enumerate() {
                let ma = PbwElement::monomial(pa.monomial(l), MultiPoly::one());
                let mb = PbwElement::monomial(pb.monomial(l), MultiPoly::one());
                let prod = alg.mul(&alg.sigma(&ma), &mb);
                assert_eq!(hc_project(&prod, l), g.entries[a][b]);
            }
        }
        assert!(g.is_symmetric());
    }
}
