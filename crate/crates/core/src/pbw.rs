//! The algebra H_ζ(gl_n): generators, the deformation pairing, symmetrization
//! and normal ordering into the PBW basis.
//!
//! Generator order: x_1..x_n < e_ij (i>j) < e_ii < e_ij (i<j) < y_1..y_n, with
//! each e-block in lexicographic (i,j) order. With this order n⁻ sits on the
//! left of every monomial and n⁺ on the right, so the Harish-Chandra
//! projection is a plain monomial filter.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use num_traits::One;

use crate::exact::symmetric::{complete_traces, generic_matrix, identity, mat_mul};
use crate::exact::{int, Monomial, MultiPoly, Scalar, Var, VarKind};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    X(usize),
    E(usize, usize),
    Y(usize),
}

impl Generator {
    pub fn sigma(self) -> Generator {
        match self {
            Generator::X(i) => Generator::Y(i),
            Generator::Y(i) => Generator::X(i),
            Generator::E(i, j) => Generator::E(j, i),
        }
    }

    /// h-weight as a vector of length n.
    pub fn weight(self, n: usize) -> Vec<i64> {
        let mut w = vec![0; n];
        match self {
            Generator::X(i) => w[i - 1] -= 1,
            Generator::Y(i) => w[i - 1] += 1,
            Generator::E(i, j) => {
                w[i - 1] += 1;
                w[j - 1] -= 1;
            }
        }
        w
    }

    pub fn var(self) -> Var {
        match self {
            Generator::X(i) => Var::x(i),
            Generator::Y(i) => Var::y(i),
            Generator::E(i, j) => Var::e(i, j),
        }
    }

    pub fn from_var(v: Var) -> Option<Generator> {
        match v.kind() {
            VarKind::X(i) => Some(Generator::X(i as usize)),
            VarKind::Y(i) => Some(Generator::Y(i as usize)),
            VarKind::E(i, j) => Some(Generator::E(i as usize, j as usize)),
            _ => None,
        }
    }

    pub fn parse(name: &str) -> Option<Generator> {
        Var::parse(name).and_then(Generator::from_var)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.var())
    }
}

/// Index bookkeeping for the fixed generator order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    n: usize,
    gens: Vec<Generator>,
}

impl Layout {
    pub fn new(n: usize) -> Layout {
        assert!(n >= 1, "rank must be positive");
        let mut gens: Vec<Generator> = (1..=n).map(Generator::X).collect();
        for i in 1..=n {
            for j in 1..i {
                gens.push(Generator::E(i, j));
            }
        }
        gens.extend((1..=n).map(|i| Generator::E(i, i)));
        for i in 1..=n {
            for j in i + 1..=n {
                gens.push(Generator::E(i, j));
            }
        }
        gens.extend((1..=n).map(Generator::Y));
        Layout { n, gens }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gen(&self, idx: usize) -> Generator {
        self.gens[idx]
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn index(&self, g: Generator) -> usize {
        let n = self.n;
        let lower = n * (n - 1) / 2;
        match g {
            Generator::X(i) => i - 1,
            Generator::E(i, j) if i > j => n + (i - 1) * (i - 2) / 2 + (j - 1),
            Generator::E(i, j) if i == j => n + lower + i - 1,
            Generator::E(i, j) => {
                // Upper entries in lex order: row i contributes n - i entries.
                let before: usize = (1..i).map(|r| n - r).sum();
                n + lower + n + before + (j - i - 1)
            }
            Generator::Y(i) => n + n * n + i - 1,
        }
    }

    pub fn is_lowering(&self, idx: usize) -> bool {
        matches!(self.gens[idx], Generator::X(_)) || matches!(self.gens[idx], Generator::E(i, j) if i > j)
    }

    pub fn is_raising(&self, idx: usize) -> bool {
        matches!(self.gens[idx], Generator::Y(_)) || matches!(self.gens[idx], Generator::E(i, j) if i < j)
    }

    pub fn is_diagonal(&self, idx: usize) -> bool {
        matches!(self.gens[idx], Generator::E(i, j) if i == j)
    }
}

/// A PBW monomial: dense exponents over the generator order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial(pub Vec<u16>);

impl PbwMonomial {
    pub fn one(len: usize) -> PbwMonomial {
        PbwMonomial(vec![0; len])
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    pub fn with(&self, idx: usize, delta: i32) -> PbwMonomial {
        let mut m = self.clone();
        m.0[idx] = (m.0[idx] as i32 + delta) as u16;
        m
    }

    /// The generator word in PBW order, repeats expanded.
    pub fn word(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.degree());
        for (i, &e) in self.0.iter().enumerate() {
            for _ in 0..e {
                w.push(i);
            }
        }
        w
    }

    pub fn weight(&self, layout: &Layout) -> Vec<i64> {
        let mut w = vec![0; layout.n()];
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                for (a, b) in w.iter_mut().zip(layout.gen(i).weight(layout.n())) {
                    *a += b * e as i64;
                }
            }
        }
        w
    }

    pub fn display(&self, layout: &Layout) -> String {
        if self.is_one() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { layout.gen(i).to_string() } else { format!("{}^{e}", layout.gen(i)) })
            .collect();
        parts.join("*")
    }
}

impl fmt::Debug for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A finite combination of PBW monomials with polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct PbwElement {
    terms: BTreeMap<PbwMonomial, MultiPoly>,
}

impl PbwElement {
    pub fn zero() -> PbwElement {
        PbwElement::default()
    }

    pub fn monomial(m: PbwMonomial, c: MultiPoly) -> PbwElement {
        let mut e = PbwElement::zero();
        e.add_term(m, c);
        e
    }

    pub fn scalar(len: usize, c: MultiPoly) -> PbwElement {
        PbwElement::monomial(PbwMonomial::one(len), c)
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: MultiPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &PbwElement, c: &MultiPoly) {
        if c.is_zero() {
            return;
        }
        let unit = c.as_constant().filter(|k| k.is_one()).is_some();
        for (m, k) in &other.terms {
            if unit {
                self.add_term(m.clone(), k.clone());
            } else {
                self.add_term(m.clone(), k * c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> MultiPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &MultiPoly) -> PbwElement {
        let mut out = PbwElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> PbwElement {
        self.scale(&MultiPoly::int(-1))
    }

    pub fn add(&self, other: &PbwElement) -> PbwElement {
        let mut out = self.clone();
        out.add_scaled(other, &MultiPoly::one());
        out
    }

    pub fn sub(&self, other: &PbwElement) -> PbwElement {
        let mut out = self.clone();
        out.add_scaled(other, &MultiPoly::int(-1));
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&PbwMonomial) -> bool) -> PbwElement {
        PbwElement {
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> PbwElement {
        let mut out = PbwElement::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// The commutative image: each monomial becomes the product of its
    /// generator variables.
    pub fn to_commutative(&self, layout: &Layout) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mono = Monomial::from_pairs(
                m.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (layout.gen(i).var(), e as u32)),
            );
            out += &c.mul_monomial(&mono, &Scalar::one());
        }
        out
    }

    pub fn display(&self, layout: &Layout) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let cs = if c.len() == 1 { c.to_string() } else { format!("({c})") };
                if m.is_one() {
                    cs
                } else if c.as_constant().is_some_and(|k| k.is_one()) {
                    m.display(layout)
                } else {
                    format!("{cs}*{}", m.display(layout))
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// LaTeX with parenthesized polynomial coefficients, highest term first.
    pub fn to_latex(&self, layout: &Layout) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let word: Vec<String> = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        let v = layout.gen(i).var().latex();
                        if e == 1 {
                            v
                        } else {
                            format!("{v}^{{{e}}}")
                        }
                    })
                    .collect();
                let cs = c.to_latex();
                match (word.is_empty(), c.as_constant().is_some_and(|k| k.is_one())) {
                    (true, _) => cs,
                    (false, true) => word.join(" "),
                    (false, false) if c.len() == 1 => format!("{cs} {}", word.join(" ")),
                    _ => format!("\\left({cs}\\right) {}", word.join(" ")),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// The deformation parameter ζ = Σ ζ_j r_j with numeric or symbolic ζ_j.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationGl {
    pub n: usize,
    pub zeta: Vec<MultiPoly>,
}

impl DeformationGl {
    pub fn new(n: usize, zeta: Vec<MultiPoly>) -> DeformationGl {
        assert!(n >= 1, "rank must be positive");
        DeformationGl { n, zeta }
    }

    pub fn numeric(n: usize, zeta: &[Scalar]) -> DeformationGl {
        DeformationGl::new(n, zeta.iter().cloned().map(MultiPoly::constant).collect())
    }

    pub fn ints(n: usize, zeta: &[i64]) -> DeformationGl {
        DeformationGl::new(n, zeta.iter().map(|&z| MultiPoly::int(z)).collect())
    }

    /// ζ_0 r_0 + … + ζ_m r_m with every ζ_j a free symbol.
    pub fn symbolic(n: usize, m: usize) -> DeformationGl {
        DeformationGl::new(n, (0..=m).map(|j| MultiPoly::var(Var::zeta(j))).collect())
    }

    pub fn zero(n: usize) -> DeformationGl {
        DeformationGl::new(n, Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.zeta.iter().all(MultiPoly::is_zero)
    }

    /// Index of the highest nonzero ζ_j.
    pub fn degree(&self) -> Option<usize> {
        self.zeta.iter().rposition(|z| !z.is_zero())
    }

    /// ζ(z) = Σ ζ_j z^j.
    pub fn zeta_poly(&self, z: Var) -> MultiPoly {
        MultiPoly::from_univariate(&self.zeta, z)
    }

    pub fn with_rank(&self, n: usize) -> DeformationGl {
        DeformationGl::new(n, self.zeta.clone())
    }
}

/// Coefficient of τ^k in (x_j, (1−τA)^{-1} y_i) det(1−τA)^{-1} for k = 0..=kmax,
/// with commuting entries A_ab = e_ab. Entry `[k][i-1][j-1]`.
pub fn pairing_coefficients(n: usize, kmax: usize) -> Vec<Vec<Vec<MultiPoly>>> {
    let a = generic_matrix(n);
    let h = complete_traces(&a, kmax);
    let mut powers = vec![identity(n)];
    for _ in 0..kmax {
        let next = mat_mul(powers.last().unwrap(), &a);
        powers.push(next);
    }
    (0..=kmax)
        .map(|k| {
            (0..n)
                .map(|i| (0..n).map(|j| (0..=k).map(|p| &powers[p][i][j] * &h[k - p]).sum()).collect())
                .collect()
        })
        .collect()
}

/// ζ(y_i, x_j) as a commutative polynomial in the e_ab (no symmetrization).
pub fn zeta_pair_commutative(i: usize, j: usize, d: &DeformationGl) -> MultiPoly {
    let Some(m) = d.degree() else {
        return MultiPoly::zero();
    };
    let coeffs = pairing_coefficients(d.n, m);
    (0..=m).map(|k| &coeffs[k][i - 1][j - 1] * &d.zeta[k]).sum()
}

type MulKey = (PbwMonomial, u16);

/// H_ζ(gl_n) with memoized normal ordering.
pub struct GlAlgebra {
    deformation: DeformationGl,
    layout: Layout,
    commutes: Vec<bool>,
    pairs: Vec<OnceLock<PbwElement>>,
    mul_cache: DashMap<MulKey, Arc<PbwElement>>,
    sym_cache: DashMap<Monomial, Arc<PbwElement>>,
}

impl GlAlgebra {
    pub fn new(deformation: DeformationGl) -> GlAlgebra {
        let n = deformation.n;
        let layout = Layout::new(n);
        let len = layout.len();
        let mut alg = GlAlgebra {
            deformation,
            layout,
            commutes: vec![true; len * len],
            pairs: (0..n * n).map(|_| OnceLock::new()).collect(),
            mul_cache: DashMap::new(),
            sym_cache: DashMap::new(),
        };
        for a in 0..len {
            for b in 0..len {
                let ga = alg.layout.gen(a);
                let gb = alg.layout.gen(b);
                let zero = match (ga, gb) {
                    (Generator::Y(_), Generator::X(_)) | (Generator::X(_), Generator::Y(_)) => false,
                    _ => alg.structural_bracket(ga, gb).is_zero(),
                };
                alg.commutes[a * len + b] = zero;
            }
        }
        alg
    }

    pub fn n(&self) -> usize {
        self.layout.n()
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn deformation(&self) -> &DeformationGl {
        &self.deformation
    }

    pub fn len(&self) -> usize {
        self.layout.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layout.is_empty()
    }

    pub fn one(&self) -> PbwElement {
        PbwElement::scalar(self.len(), MultiPoly::one())
    }

    pub fn gen(&self, g: Generator) -> PbwElement {
        let idx = self.layout.index(g);
        PbwElement::monomial(PbwMonomial::one(self.len()).with(idx, 1), MultiPoly::one())
    }

    fn unit(&self, g: Generator, c: i64) -> PbwElement {
        let idx = self.layout.index(g);
        PbwElement::monomial(PbwMonomial::one(self.len()).with(idx, 1), MultiPoly::int(c))
    }

    /// Brackets that do not involve the deformation.
    fn structural_bracket(&self, a: Generator, b: Generator) -> PbwElement {
        use Generator::*;
        let d = |p: usize, q: usize| p == q;
        match (a, b) {
            (E(i, j), E(k, l)) => {
                let mut out = PbwElement::zero();
                if d(j, k) {
                    out = out.add(&self.unit(E(i, l), 1));
                }
                if d(l, i) {
                    out = out.add(&self.unit(E(k, j), -1));
                }
                out
            }
            (E(i, j), Y(k)) => {
                if d(j, k) {
                    self.unit(Y(i), 1)
                } else {
                    PbwElement::zero()
                }
            }
            (Y(_), E(_, _)) => self.structural_bracket(b, a).neg(),
            (E(i, _), X(k)) if !d(i, k) => PbwElement::zero(),
            (E(_, j), X(_)) => self.unit(X(j), -1),
            (X(_), E(_, _)) => self.structural_bracket(b, a).neg(),
            _ => PbwElement::zero(),
        }
    }

    /// [a, b] for two generators, in PBW form.
    pub fn bracket_gens(&self, a: Generator, b: Generator) -> PbwElement {
        match (a, b) {
            (Generator::Y(i), Generator::X(j)) => self.zeta_pair(i, j).clone(),
            (Generator::X(j), Generator::Y(i)) => self.zeta_pair(i, j).neg(),
            _ => self.structural_bracket(a, b),
        }
    }

    /// ζ(y_i, x_j) ∈ U(gl_n), computed once per (i, j).
    pub fn zeta_pair(&self, i: usize, j: usize) -> &PbwElement {
        let n = self.n();
        self.pairs[(i - 1) * n + (j - 1)].get_or_init(|| {
            let Some(m) = self.deformation.degree() else {
                return PbwElement::zero();
            };
            let coeffs = pairing_coefficients(n, m);
            let mut out = PbwElement::zero();
            for (k, zk) in self.deformation.zeta.iter().enumerate().take(m + 1) {
                if zk.is_zero() {
                    continue;
                }
                out.add_scaled(&self.symmetrize(&coeffs[k][i - 1][j - 1]), zk);
            }
            out
        })
    }

    fn gens_commute(&self, a: usize, b: usize) -> bool {
        let len = self.len();
        if self.commutes[a * len + b] {
            return true;
        }
        match (self.layout.gen(a), self.layout.gen(b)) {
            (Generator::Y(i), Generator::X(j)) | (Generator::X(j), Generator::Y(i)) => self.zeta_pair(i, j).is_zero(),
            _ => false,
        }
    }

    /// m · g in PBW form.
    pub fn mul_gen(&self, m: &PbwMonomial, g: usize) -> Arc<PbwElement> {
        let fast = match m.last() {
            None => true,
            Some(h) if g >= h => true,
            _ => (g + 1..self.len()).all(|k| m.0[k] == 0 || self.gens_commute(k, g)),
        };
        if fast {
            return Arc::new(PbwElement::monomial(m.with(g, 1), MultiPoly::one()));
        }
        let key = (m.clone(), g as u16);
        if let Some(hit) = self.mul_cache.get(&key) {
            return Arc::clone(hit.value());
        }
        let h = m.last().expect("nonempty monomial");
        let rest = m.with(h, -1);
        // m·g = (m'·g)·h + m'·[h, g]
        let left = self.mul_gen(&rest, g);
        let mut out = PbwElement::zero();
        for (mono, c) in left.terms() {
            out.add_scaled(&self.mul_gen(mono, h), c);
        }
        let br = self.bracket_gens(self.layout.gen(h), self.layout.gen(g));
        for (mono, c) in br.terms() {
            out.add_scaled(&self.mul_monomials(&rest, mono), c);
        }
        let out = Arc::new(out);
        self.mul_cache.insert(key, Arc::clone(&out));
        out
    }

    pub fn mul_elem_gen(&self, a: &PbwElement, g: usize) -> PbwElement {
        let mut out = PbwElement::zero();
        for (m, c) in a.terms() {
            out.add_scaled(&self.mul_gen(m, g), c);
        }
        out
    }

    pub fn mul_monomials(&self, a: &PbwMonomial, b: &PbwMonomial) -> PbwElement {
        let mut acc = PbwElement::monomial(a.clone(), MultiPoly::one());
        for g in b.word() {
            acc = self.mul_elem_gen(&acc, g);
        }
        acc
    }

    pub fn mul(&self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        let mut out = PbwElement::zero();
        for (mb, cb) in b.terms() {
            let mut acc = a.clone();
            for g in mb.word() {
                acc = self.mul_elem_gen(&acc, g);
            }
            out.add_scaled(&acc, cb);
        }
        out
    }

    pub fn normal_order_indices(&self, word: &[usize]) -> PbwElement {
        let mut acc = self.one();
        for &g in word {
            acc = self.mul_elem_gen(&acc, g);
        }
        acc
    }

    pub fn normal_order(&self, word: &[Generator]) -> PbwElement {
        let idx: Vec<usize> = word.iter().map(|&g| self.layout.index(g)).collect();
        self.normal_order_indices(&idx)
    }

    pub fn commutator(&self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    /// The anti-involution y_i ↦ x_i, e_ij ↦ e_ji, re-normal-ordered.
    pub fn sigma(&self, a: &PbwElement) -> PbwElement {
        let mut out = PbwElement::zero();
        for (m, c) in a.terms() {
            let word: Vec<usize> = m.word().into_iter().rev().map(|i| self.layout.index(self.layout.gen(i).sigma())).collect();
            out.add_scaled(&self.normal_order_indices(&word), c);
        }
        out
    }

    /// Symmetrization S(gl_n) → U(gl_n). Non-e variables are treated as scalars.
    pub fn symmetrize(&self, p: &MultiPoly) -> PbwElement {
        let mut out = PbwElement::zero();
        for (m, c) in p.terms() {
            let mut e_part = Vec::new();
            let mut rest = Vec::new();
            for &(v, e) in m.factors() {
                if v.is_e() {
                    e_part.push((v, e));
                } else {
                    rest.push((v, e));
                }
            }
            let key = Monomial::from_pairs(e_part);
            let sym = self.symmetrize_monomial(&key);
            out.add_scaled(&sym, &MultiPoly::term(c.clone(), Monomial::from_pairs(rest)));
        }
        out
    }

    fn symmetrize_monomial(&self, m: &Monomial) -> Arc<PbwElement> {
        if let Some(hit) = self.sym_cache.get(m) {
            return Arc::clone(hit.value());
        }
        let mut word: Vec<usize> = Vec::new();
        for &(v, e) in m.factors() {
            let g = Generator::from_var(v).expect("e variable");
            word.extend(std::iter::repeat_n(self.layout.index(g), e as usize));
        }
        word.sort_unstable();
        let mut out = PbwElement::zero();
        let mut count = 0i64;
        loop {
            out.add_scaled(&self.normal_order_indices(&word), &MultiPoly::one());
            count += 1;
            if !next_permutation(&mut word) {
                break;
            }
        }
        let out = Arc::new(out.scale(&MultiPoly::constant(Scalar::one() / int(count))));
        self.sym_cache.insert(m.clone(), Arc::clone(&out));
        out
    }

    /// Monomials of `a` of top degree in x and y.
    pub fn top_xy_layer(&self, a: &PbwElement) -> PbwElement {
        let xy = |m: &PbwMonomial| -> usize {
            (0..self.len())
                .filter(|&i| matches!(self.layout.gen(i), Generator::X(_) | Generator::Y(_)))
                .map(|i| m.0[i] as usize)
                .sum()
        };
        let top = a.terms().map(|(m, _)| xy(m)).max().unwrap_or(0);
        a.filter(|m| xy(m) == top)
    }

    pub fn cache_len(&self) -> usize {
        self.mul_cache.len()
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// ζ(y_i, x_j) for a fresh algebra; prefer `GlAlgebra::zeta_pair` in loops.
pub fn zeta_pair(i: usize, j: usize, d: &DeformationGl) -> PbwElement {
    GlAlgebra::new(d.clone()).zeta_pair(i, j).clone()
}
