//! The Poisson algebra S(sp_2n) ⊗ S(V) with deformed bracket {v, v′} = ζ(v, v′):
//! basis, pairing, central generators, the slice restriction and the
//! cancellation identity used for the center.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::symmetric::{complete_traces, det_one_minus, mat_mul};
use crate::exact::{int, LaurentSeries, Monomial, MultiPoly, Scalar, Var, VarKind};
use crate::linalg::rref;
use crate::par::{self, Exec};

pub type Matrix = Vec<Vec<Scalar>>;

fn zeros(m: usize) -> Matrix {
    vec![vec![Scalar::zero(); m]; m]
}

fn unit(m: usize, i: usize, j: usize) -> Matrix {
    let mut a = zeros(m);
    a[i - 1][j - 1] = Scalar::one();
    a
}

fn combine(a: &Matrix, b: &Matrix, sb: i64) -> Matrix {
    a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y * int(sb)).collect()).collect()
}

fn mat_mul_s(a: &Matrix, b: &Matrix) -> Matrix {
    let m = a.len();
    (0..m).map(|i| (0..m).map(|j| (0..m).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
}

fn transpose(a: &Matrix) -> Matrix {
    let m = a.len();
    (0..m).map(|i| (0..m).map(|j| a[j][i].clone()).collect()).collect()
}

fn trace_s(a: &Matrix) -> Scalar {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

/// ω, the basis B of sp_2n, and the trace-form dual basis.
#[derive(Clone, Debug)]
pub struct SymplecticData {
    pub n: usize,
    pub j: Matrix,
    pub basis: Vec<Matrix>,
    pub labels: Vec<String>,
    /// Tr(dual[a] · basis[b]) = δ_ab.
    pub dual: Vec<Matrix>,
    /// Indices into `basis` of e_{2j−1,2j−1} − e_{2j,2j}.
    pub cartan: Vec<usize>,
}

impl SymplecticData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn omega(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let m = 2 * self.n;
        (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).map(|(a, b)| &x[a] * &self.j[a][b] * &y[b]).sum()
    }

    /// Coordinates of an sp_2n matrix along B.
    pub fn coordinates(&self, a: &Matrix) -> Vec<Scalar> {
        self.dual.iter().map(|d| trace_s(&mat_mul_s(d, a))).collect()
    }

    pub fn is_symplectic(&self, b: &Matrix) -> bool {
        let lhs = mat_mul_s(b, &self.j);
        let rhs = mat_mul_s(&self.j, &transpose(b));
        lhs.iter().zip(&rhs).all(|(r1, r2)| r1.iter().zip(r2).all(|(x, y)| (x + y).is_zero()))
    }

    /// v_j* as (sign, index): v_{2b−1}* = v_{2b}, v_{2b}* = −v_{2b−1}.
    pub fn dual_vector(&self, j: usize) -> (i64, usize) {
        if j % 2 == 1 {
            (1, j + 1)
        } else {
            (-1, j - 1)
        }
    }

    /// The generic element A = Σ_f X_f f^∨ with X_f = `Var::sp(f)`.
    pub fn generic_matrix(&self) -> Vec<Vec<MultiPoly>> {
        let m = 2 * self.n;
        let mut a = vec![vec![MultiPoly::zero(); m]; m];
        for (k, d) in self.dual.iter().enumerate() {
            for (r, row) in d.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        a[r][c] += &MultiPoly::term(x.clone(), Monomial::var(Var::sp(k)));
                    }
                }
            }
        }
        a
    }

    /// Aᵀ: the matrix of the point of sp_2n* ≅ sp_2n at which X_f = Tr(Aᵀ f).
    pub fn point_matrix(&self) -> Vec<Vec<MultiPoly>> {
        let a = self.generic_matrix();
        (0..a.len()).map(|i| (0..a.len()).map(|j| a[j][i].clone()).collect()).collect()
    }

    /// [b_a, b_b] along B.
    pub fn structure(&self, a: usize, b: usize) -> Vec<Scalar> {
        let x = &self.basis[a];
        let y = &self.basis[b];
        self.coordinates(&combine(&mat_mul_s(x, y), &mat_mul_s(y, x), -1))
    }
}

pub fn sp_basis(n: usize) -> SymplecticData {
    assert!(n >= 1, "half-rank must be positive");
    let m = 2 * n;
    let mut j = zeros(m);
    for b in 1..=n {
        j[2 * b - 2][2 * b - 1] = Scalar::one();
        j[2 * b - 1][2 * b - 2] = -Scalar::one();
    }
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    let mut cartan = Vec::new();
    for q in 1..=n {
        let (o, e) = (2 * q - 1, 2 * q);
        basis.push(unit(m, o, e));
        labels.push(format!("e_{o},{e}"));
        basis.push(unit(m, e, o));
        labels.push(format!("e_{e},{o}"));
        cartan.push(basis.len());
        basis.push(combine(&unit(m, o, o), &unit(m, e, e), -1));
        labels.push(format!("e_{o},{o}-e_{e},{e}"));
    }
    for k in 1..=n {
        for l in k + 1..=n {
            let fam = [
                ((2 * l - 1, 2 * k), (2 * k - 1, 2 * l), 1),
                ((2 * l, 2 * k), (2 * k - 1, 2 * l - 1), -1),
                ((2 * l - 1, 2 * k - 1), (2 * k, 2 * l), -1),
                ((2 * l, 2 * k - 1), (2 * k, 2 * l - 1), 1),
            ];
            for ((a, b), (c, d), s) in fam {
                basis.push(combine(&unit(m, a, b), &unit(m, c, d), s));
                let op = if s > 0 { '+' } else { '-' };
                labels.push(format!("e_{a},{b}{op}e_{c},{d}"));
            }
        }
    }
    // Trace-form Gram matrix and its inverse give the dual basis.
    let dim = basis.len();
    let gram: Matrix = (0..dim).map(|a| (0..dim).map(|b| trace_s(&mat_mul_s(&basis[a], &basis[b]))).collect()).collect();
    let mut aug: Matrix = gram
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut row = row.clone();
            row.extend((0..dim).map(|c| if c == r { Scalar::one() } else { Scalar::zero() }));
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    assert_eq!(pivots.len(), dim, "trace form is nondegenerate on sp_2n");
    let inv: Matrix = aug.iter().map(|row| row[dim..].to_vec()).collect();
    let dual = (0..dim)
        .map(|f| {
            let mut acc = zeros(m);
            for g in 0..dim {
                if !inv[g][f].is_zero() {
                    acc = combine_scaled(&acc, &basis[g], &inv[g][f]);
                }
            }
            acc
        })
        .collect();
    let data = SymplecticData { n, j, basis, labels, dual, cartan };
    debug_assert!(data.basis.iter().all(|b| data.is_symplectic(b)));
    data
}

fn combine_scaled(a: &Matrix, b: &Matrix, s: &Scalar) -> Matrix {
    a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y * s).collect()).collect()
}

/// ζ = ζ_0 r_0 + ζ_2 r_2 + …; `zeta[k]` is the coefficient of r_{2k}.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationSp {
    pub n: usize,
    pub zeta: Vec<MultiPoly>,
}

impl DeformationSp {
    pub fn new(n: usize, even: Vec<MultiPoly>) -> DeformationSp {
        assert!(n >= 1, "half-rank must be positive");
        DeformationSp { n, zeta: even }
    }

    /// From the full list (ζ_0, ζ_1, ζ_2, …); nonzero odd entries are rejected.
    pub fn from_full(n: usize, full: Vec<MultiPoly>) -> Result<DeformationSp> {
        if let Some(k) = full.iter().enumerate().position(|(k, z)| k % 2 == 1 && !z.is_zero()) {
            return Err(Error::InvalidInput(format!("ζ_{k} must vanish: only even r_j give a PBW deformation")));
        }
        Ok(DeformationSp::new(n, full.into_iter().step_by(2).collect()))
    }

    pub fn symbolic(n: usize, k: usize) -> DeformationSp {
        DeformationSp::new(n, (0..=k).map(|j| MultiPoly::var(Var::zeta(2 * j))).collect())
    }

    pub fn ints(n: usize, even: &[i64]) -> DeformationSp {
        DeformationSp::new(n, even.iter().map(|&z| MultiPoly::int(z)).collect())
    }

    pub fn zero(n: usize) -> DeformationSp {
        DeformationSp::new(n, Vec::new())
    }

    fn degree(&self) -> Option<usize> {
        self.zeta.iter().rposition(|z| !z.is_zero())
    }
}

/// Q_0..Q_n with det(1 − zA) = Σ Q_i z^{2i}.
pub fn q_coeffs(data: &SymplecticData) -> Vec<MultiPoly> {
    let c = det_one_minus(&data.generic_matrix(), Var::Z).univariate_coeffs(Var::Z);
    debug_assert!(c.iter().skip(1).step_by(2).all(MultiPoly::is_zero));
    (0..=data.n).map(|i| c.get(2 * i).cloned().unwrap_or_default()).collect()
}

/// Bracket engine on polynomials in X_f and v_j.
#[derive(Clone, Debug)]
pub struct PoissonSp {
    pub data: SymplecticData,
    /// `pair[i][j]` = {v_{i+1}, v_{j+1}}.
    pair: Vec<Vec<MultiPoly>>,
    structure: Vec<MultiPoly>,
}

fn vvar(j: usize) -> MultiPoly {
    MultiPoly::var(Var::v(j))
}

impl PoissonSp {
    pub fn new(d: &DeformationSp) -> PoissonSp {
        let data = sp_basis(d.n);
        let pair = pairing_matrix(&data, d);
        let dim = data.dim();
        let structure = (0..dim)
            .flat_map(|a| (0..dim).map(move |b| (a, b)))
            .map(|(a, b)| {
                data.structure(a, b)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| MultiPoly::term(c, Monomial::var(Var::sp(k))))
                    .sum()
            })
            .collect();
        PoissonSp { data, pair, structure }
    }

    pub fn generators(&self) -> Vec<Var> {
        let mut out: Vec<Var> = (0..self.data.dim()).map(Var::sp).collect();
        out.extend((1..=2 * self.data.n).map(Var::v));
        out
    }

    /// e(v_j) = Σ_a e_aj v_a.
    pub fn act(&self, e: usize, j: usize) -> MultiPoly {
        let b = &self.data.basis[e];
        (0..2 * self.data.n)
            .filter(|&a| !b[a][j - 1].is_zero())
            .map(|a| vvar(a + 1).scale(&b[a][j - 1]))
            .sum()
    }

    pub fn bracket_vars(&self, u: Var, v: Var) -> MultiPoly {
        match (u.kind(), v.kind()) {
            (VarKind::Sp(a), VarKind::Sp(b)) => self.structure[a as usize * self.data.dim() + b as usize].clone(),
            (VarKind::Sp(a), VarKind::V(j)) => self.act(a as usize, j as usize),
            (VarKind::V(_), VarKind::Sp(_)) => -self.bracket_vars(v, u),
            (VarKind::V(i), VarKind::V(j)) => self.pair[i as usize - 1][j as usize - 1].clone(),
            _ => MultiPoly::zero(),
        }
    }

    fn active(a: &MultiPoly) -> Vec<(Var, MultiPoly)> {
        a.vars()
            .into_iter()
            .filter(|v| matches!(v.kind(), VarKind::Sp(_) | VarKind::V(_)))
            .map(|v| (v, a.derivative(v)))
            .collect()
    }

    pub fn bracket(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let da = Self::active(a);
        let db = Self::active(b);
        let mut out = MultiPoly::zero();
        for (u, pa) in &da {
            for (v, pb) in &db {
                let br = self.bracket_vars(*u, *v);
                if !br.is_zero() {
                    out += &(&(pa * pb) * &br);
                }
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

/// {v_i, v_j} = Σ_k ζ_{2k} [z^{2k}] ω(v_i, (1−z²A²)^{-1} v_j) det(1−zA)^{-1}.
fn pairing_matrix(data: &SymplecticData, d: &DeformationSp) -> Vec<Vec<MultiPoly>> {
    let m = 2 * data.n;
    let mut out = vec![vec![MultiPoly::zero(); m]; m];
    let Some(kmax) = d.degree() else {
        return out;
    };
    let a = data.generic_matrix();
    let a2 = mat_mul(&a, &a);
    let h = complete_traces(&a, 2 * kmax);
    let jm: Vec<Vec<MultiPoly>> = data.j.iter().map(|r| r.iter().cloned().map(MultiPoly::constant).collect()).collect();
    // J A^{2p} for p = 0..=kmax
    let mut pw = vec![jm];
    for _ in 0..kmax {
        let next = mat_mul(pw.last().unwrap(), &a2);
        pw.push(next);
    }
    for (k, zk) in d.zeta.iter().enumerate() {
        if zk.is_zero() {
            continue;
        }
        for (p, jp) in pw.iter().enumerate().take(k + 1) {
            let hq = &h[2 * (k - p)];
            for i in 0..m {
                for j in 0..m {
                    if !jp[i][j].is_zero() {
                        out[i][j] += &(&(&jp[i][j] * hq) * zk);
                    }
                }
            }
        }
    }
    out
}

pub fn zeta_pair_sp(i: usize, j: usize, d: &DeformationSp) -> MultiPoly {
    pairing_matrix(&sp_basis(d.n), d)[i - 1][j - 1].clone()
}

/// `Bracket`: (−1)^{i−1} Σ_j {Q_i, v_j} v_j*, the central one.
/// `ClosedForm`: −Σ_{j<i} Q_j ω(A^{2i−1−2j} v, v), which equals the
/// bracket form times (−1)^{i−1}.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TauConstruction {
    Bracket,
    ClosedForm,
}

fn sign(k: usize) -> Scalar {
    if k.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

pub fn tau_sp_in(p: &PoissonSp, i: usize, construction: TauConstruction) -> MultiPoly {
    let n = p.data.n;
    assert!((1..=n).contains(&i), "i out of range");
    let q = q_coeffs(&p.data);
    match construction {
        TauConstruction::Bracket => {
            let mut out = MultiPoly::zero();
            for j in 1..=2 * n {
                let (s, k) = p.data.dual_vector(j);
                let br = p.bracket(&q[i], &vvar(j));
                out += &(&br * &vvar(k)).scale(&int(s));
            }
            out.scale(&sign(i - 1))
        }
        TauConstruction::ClosedForm => {
            let a = p.data.point_matrix();
            let v: Vec<MultiPoly> = (1..=2 * n).map(vvar).collect();
            let jm = &p.data.j;
            let mut out = MultiPoly::zero();
            let mut powers = vec![a.clone()];
            for _ in 1..2 * i {
                let next = mat_mul(powers.last().unwrap(), &a);
                powers.push(next);
            }
            for (jj, qj) in q.iter().enumerate().take(i) {
                let b = &powers[2 * i - 2 - 2 * jj];
                // ω(Bv, v) = Σ (Bv)_r J_rs v_s
                let bv: Vec<MultiPoly> = (0..2 * n).map(|r| (0..2 * n).map(|c| &b[r][c] * &v[c]).sum()).collect();
                let om: MultiPoly = (0..2 * n)
                    .flat_map(|r| (0..2 * n).map(move |s| (r, s)))
                    .filter(|&(r, s)| !jm[r][s].is_zero())
                    .map(|(r, s)| (&bv[r] * &v[s]).scale(&jm[r][s]))
                    .sum();
                out -= &(qj * &om);
            }
            out
        }
    }
}

pub fn tau_sp(i: usize, n: usize, construction: TauConstruction) -> MultiPoly {
    tau_sp_in(&PoissonSp::new(&DeformationSp::zero(n)), i, construction)
}

/// (c_1, …, c_n) with (−1)^{i−1} c_i the coefficient of t^{2i} in c(t).
pub fn poisson_c_series_sp(d: &DeformationSp) -> Result<Vec<MultiPoly>> {
    let data = sp_basis(d.n);
    c_series_in(&data, d)
}

fn c_series_in(data: &SymplecticData, d: &DeformationSp) -> Result<Vec<MultiPoly>> {
    let n = data.n;
    let Some(kmax) = d.degree() else {
        return Ok(vec![MultiPoly::zero(); n]);
    };
    let a = data.generic_matrix();
    let top = 2 * kmax as i64;
    let order = top + 2 * n as i64 + 2;
    // ζ(z^{-1}) z^{-1}
    let mut lead = vec![MultiPoly::zero(); top as usize + 1];
    for (k, zk) in d.zeta.iter().enumerate() {
        lead[top as usize - 2 * k] = zk.clone();
    }
    let zeta_inv = LaurentSeries::from_coeffs(Var::Z, -top - 1, lead, order);
    let inv_det = LaurentSeries::from_coeffs(Var::Z, 0, complete_traces(&a, order as usize), order);
    // 1/(1 − z²u²) with u = t^{-1}
    let geo_coeffs: Vec<MultiPoly> =
        (0..=order).map(|k| if k % 2 == 0 { MultiPoly::var(Var::TINV).pow(k as u32) } else { MultiPoly::zero() }).collect();
    let geo = LaurentSeries::from_coeffs(Var::Z, 0, geo_coeffs, order);
    let r = zeta_inv.mul(&inv_det).mul(&geo).residue()?.scale(&int(2));
    let ru = r.univariate_coeffs(Var::TINV);
    let q = q_coeffs(data);
    // det(1 − tA) = Σ Q_i t^{2i}
    Ok((1..=n)
        .map(|i| {
            let mut acc = MultiPoly::zero();
            for (p, rp) in ru.iter().enumerate() {
                let deg = 2 * i + p;
                if deg % 2 == 0 && deg / 2 <= n && !rp.is_zero() {
                    acc += &(&q[deg / 2] * rp);
                }
            }
            acc.scale(&sign(i - 1))
        })
        .collect())
}

#[derive(Clone, Debug)]
pub struct SpCenterCertificate {
    pub n: usize,
    pub residuals: Vec<(usize, String, MultiPoly)>,
    /// τ_i = (−1)^{i−1} · (closed form) for every i.
    pub tau_agree: bool,
}

impl SpCenterCertificate {
    pub fn passed(&self) -> bool {
        self.tau_agree && self.residuals.iter().all(|(_, _, r)| r.is_zero())
    }
}

pub fn verify_center_sp(d: &DeformationSp, exec: Exec) -> Result<SpCenterCertificate> {
    verify_center_sp_with(d, TauConstruction::Bracket, exec)
}

/// Residuals of {τ_i + c_i, g} with τ_i taken literally from `construction`.
pub fn verify_center_sp_with(d: &DeformationSp, construction: TauConstruction, exec: Exec) -> Result<SpCenterCertificate> {
    let p = PoissonSp::new(d);
    let c = c_series_in(&p.data, d)?;
    let n = d.n;
    let bracket: Vec<MultiPoly> = (1..=n).map(|i| tau_sp_in(&p, i, TauConstruction::Bracket)).collect();
    let closed: Vec<MultiPoly> = (1..=n).map(|i| tau_sp_in(&p, i, TauConstruction::ClosedForm)).collect();
    let tau_agree = (1..=n).all(|i| bracket[i - 1] == closed[i - 1].scale(&sign(i - 1)));
    let taus = match construction {
        TauConstruction::Bracket => bracket,
        TauConstruction::ClosedForm => closed,
    };
    let z: Vec<MultiPoly> = taus.iter().zip(&c).map(|(t, ci)| t + ci).collect();
    let gens = p.generators();
    let jobs: Vec<(usize, Var)> = (1..=n).flat_map(|i| gens.iter().map(move |&g| (i, g))).collect();
    let labels = &p.data.labels;
    let residuals = par::map(exec, &jobs, |&(i, g)| {
        let name = match g.kind() {
            VarKind::Sp(k) => labels[k as usize].clone(),
            _ => g.to_string(),
        };
        (i, name, p.bracket(&z[i - 1], &MultiPoly::var(g)))
    });
    Ok(SpCenterCertificate { n, residuals, tau_agree })
}

#[derive(Clone, Debug)]
pub struct SliceCertificate {
    pub n: usize,
    /// (i, τ_i|_M, f_i, sign s with τ_i|_M = s·f_i, or None).
    pub entries: Vec<(usize, MultiPoly, MultiPoly, Option<i64>)>,
}

impl SliceCertificate {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.3.is_some())
    }

    pub fn signs(&self) -> Vec<Option<i64>> {
        self.entries.iter().map(|e| e.3).collect()
    }
}

/// The slice matrix Y with entries y_{2a−1,2a}, y_{2a,2a−1} (a < n) and y_{2n−1,2n}.
fn slice_matrix(n: usize) -> Vec<Vec<MultiPoly>> {
    let m = 2 * n;
    let mut y = vec![vec![MultiPoly::zero(); m]; m];
    for k in 1..=2 * n.saturating_sub(1) {
        if k < 2 * n - 2 {
            y[k - 1][k] = MultiPoly::var(Var::slice_e(k, k + 1));
            y[k][k - 1] = MultiPoly::var(Var::slice_e(k + 1, k));
        }
    }
    y[m - 2][m - 1] = MultiPoly::var(Var::slice_e(m - 1, m));
    y
}

/// Restricts τ_i to the slice and compares with
/// f_i = σ_{i−1}(y_21 y_12, y_32 y_23, …) y_{2n−1,2n} y_{2n}².
pub fn slice_check(n: usize) -> Result<SliceCertificate> {
    let p = PoissonSp::new(&DeformationSp::zero(n));
    let y = slice_matrix(n);
    // The displayed matrix must lie in sp_2n: Y J + J Yᵀ = 0.
    let m = 2 * n;
    let jm: Vec<Vec<MultiPoly>> = p.data.j.iter().map(|r| r.iter().cloned().map(MultiPoly::constant).collect()).collect();
    let yt: Vec<Vec<MultiPoly>> = (0..m).map(|i| (0..m).map(|j| y[j][i].clone()).collect()).collect();
    let lhs = mat_mul(&y, &jm);
    let rhs = mat_mul(&jm, &yt);
    if lhs.iter().zip(&rhs).any(|(a, b)| a.iter().zip(b).any(|(x, z)| !(x + z).is_zero())) {
        return Err(Error::InvalidInput(format!("the slice matrix is not in sp_{} for n = {n}", 2 * n)));
    }
    // X_f = Tr(Yᵀ f) makes the point matrix equal to Y.
    let mut map: HashMap<Var, MultiPoly> = HashMap::new();
    for (k, f) in p.data.basis.iter().enumerate() {
        let val: MultiPoly = (0..m)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .filter(|&(a, b)| !f[a][b].is_zero())
            .map(|(a, b)| y[a][b].scale(&f[a][b]))
            .sum();
        map.insert(Var::sp(k), val);
    }
    for j in 1..m {
        map.insert(Var::v(j), MultiPoly::zero());
    }
    map.insert(Var::v(m), MultiPoly::var(Var::slice_v(m)));
    let pairs: Vec<MultiPoly> = (1..=(2 * n).saturating_sub(3)).map(|k| &MultiPoly::var(Var::slice_e(k + 1, k)) * &MultiPoly::var(Var::slice_e(k, k + 1))).collect();
    let tail = &MultiPoly::var(Var::slice_e(m - 1, m)) * &MultiPoly::var(Var::slice_v(m)).pow(2);
    let entries = (1..=n)
        .map(|i| {
            let restricted = tau_sp_in(&p, i, TauConstruction::Bracket).substitute(&map);
            let f = &elementary(i - 1, &pairs) * &tail;
            let s = if restricted == f {
                Some(1)
            } else if restricted == -f.clone() {
                Some(-1)
            } else {
                None
            };
            (i, restricted, f, s)
        })
        .collect();
    Ok(SliceCertificate { n, entries })
}

fn elementary(k: usize, args: &[MultiPoly]) -> MultiPoly {
    let mut e = vec![MultiPoly::zero(); k + 1];
    e[0] = MultiPoly::one();
    for a in args {
        for j in (1..=k).rev() {
            let t = &e[j - 1] * a;
            e[j] += &t;
        }
    }
    e.swap_remove(k)
}

#[derive(Clone, Debug)]
pub struct AppendixCertificate {
    pub n: usize,
    pub i: usize,
    /// (s, full sum for v = v_s, its restriction to the Cartan subalgebra).
    pub sums: Vec<(usize, MultiPoly, MultiPoly)>,
}

impl AppendixCertificate {
    pub fn passed(&self) -> bool {
        self.sums.iter().all(|(_, a, b)| a.is_zero() && b.is_zero())
    }
}

/// Σ_j Σ_{e∈B} {∂Q_i/∂X_e, v} e(v_j) v_j* for every basis vector v.
pub fn appendix_identity_check(n: usize, i: usize) -> AppendixCertificate {
    let p = PoissonSp::new(&DeformationSp::zero(n));
    let q = &q_coeffs(&p.data)[i];
    let dim = p.data.dim();
    let grads: Vec<MultiPoly> = (0..dim).map(|e| q.derivative(Var::sp(e))).collect();
    // Σ_j e(v_j) v_j* depends only on e.
    let contract: Vec<MultiPoly> = (0..dim)
        .map(|e| {
            (1..=2 * n)
                .map(|j| {
                    let (s, k) = p.data.dual_vector(j);
                    (&p.act(e, j) * &vvar(k)).scale(&int(s))
                })
                .sum()
        })
        .collect();
    let cartan_map: HashMap<Var, MultiPoly> =
        (0..dim).filter(|k| !p.data.cartan.contains(k)).map(|k| (Var::sp(k), MultiPoly::zero())).collect();
    let sums = (1..=2 * n)
        .map(|s| {
            let v = vvar(s);
            let total: MultiPoly = (0..dim)
                .filter(|&e| !grads[e].is_zero())
                .map(|e| &p.bracket(&grads[e], &v) * &contract[e])
                .sum();
            let restricted = total.substitute(&cartan_map);
            (s, total, restricted)
        })
        .collect();
    AppendixCertificate { n, i, sums }
}
