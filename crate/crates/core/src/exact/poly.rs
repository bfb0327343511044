use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use super::scalar::{fmt_scalar, int, Scalar};
use super::var::Var;

/// A monomial as a sorted sparse list of (variable, positive exponent).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, u32); 6]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial::pow(v, 1)
    }

    pub fn pow(v: Var, e: u32) -> Monomial {
        let mut m = Monomial::one();
        if e > 0 {
            m.0.push((v, e));
        }
        m
    }

    /// Builds from arbitrary (var, exp) pairs, merging repeats and dropping zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Monomial {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::new();
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let oe = other.0[j].1;
                j += 1;
                match e.cmp(&oe) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push((v, e - oe)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Removes every power of `v`, returning the exponent that was present.
    pub fn split_off(&self, v: Var) -> (u32, Monomial) {
        let e = self.exponent(v);
        let rest = Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect());
        (e, rest)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then lex with smaller
    /// variables more significant.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.0, &other.0);
        let mut i = 0;
        loop {
            match (a.get(i), b.get(i)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va != vb {
                        return if va < vb { Ordering::Greater } else { Ordering::Less };
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
            }
            i += 1;
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sparse multivariate polynomial over exact rationals. Terms are kept in
/// graded-lex order and no zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    /// Common denominator and the integer numerators over it.
    fn integer_form(&self) -> (BigInt, Vec<(&Monomial, BigInt)>) {
        let denom = self.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let nums = self.terms.iter().map(|(m, c)| (m, c.numer() * (&denom / c.denom()))).collect();
        (denom, nums)
    }

    fn from_numerators(terms: impl IntoIterator<Item = (Monomial, BigInt)>, denom: &BigInt) -> MultiPoly {
        MultiPoly {
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m, Scalar::new(c, denom.clone()))).collect(),
        }
    }

    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> MultiPoly {
        MultiPoly::term(c, Monomial::one())
    }

    pub fn int(c: i64) -> MultiPoly {
        MultiPoly::constant(int(c))
    }

    pub fn var(v: Var) -> MultiPoly {
        MultiPoly::term(Scalar::one(), Monomial::var(v))
    }

    pub fn term(c: Scalar, m: Monomial) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(items: impl IntoIterator<Item = (Monomial, Scalar)>) -> MultiPoly {
        let mut p = MultiPoly::zero();
        for (m, c) in items {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The constant value when the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one())
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            if e > 0 {
                out.add_term(rest.mul(&Monomial::pow(v, e - 1)), c * int(e as i64));
            }
        }
        out
    }

    /// Coefficients of the powers of `v`: `p = Σ_k out[k] v^k`.
    pub fn univariate_coeffs(&self, v: Var) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            out[e as usize].add_term(rest, c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    pub fn from_univariate(coeffs: &[MultiPoly], v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            out += &c.mul_monomial(&Monomial::pow(v, k as u32), &Scalar::one());
        }
        out
    }

    /// Substitutes each mapped variable by a polynomial; unmapped variables stay.
    pub fn substitute(&self, map: &HashMap<Var, MultiPoly>) -> MultiPoly {
        let mut powers: HashMap<(Var, u32), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = MultiPoly::constant(c.clone());
            let mut keep = Monomial::one();
            for &(v, e) in m.factors() {
                match map.get(&v) {
                    Some(p) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| p.pow(e));
                        acc = &acc * &*pw;
                    }
                    None => keep = keep.mul(&Monomial::pow(v, e)),
                }
            }
            out += &acc.mul_monomial(&keep, &Scalar::one());
        }
        out
    }

    pub fn substitute_one(&self, v: Var, value: &MultiPoly) -> MultiPoly {
        let mut map = HashMap::new();
        map.insert(v, value.clone());
        self.substitute(&map)
    }

    /// Evaluates with every variable numeric; `None` if some variable is unmapped.
    pub fn eval(&self, values: &HashMap<Var, Scalar>) -> Option<Scalar> {
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.factors() {
                let x = values.get(&v)?;
                t *= num_traits::pow(x.clone(), e as usize);
            }
            total += t;
        }
        Some(total)
    }

    /// Exact division. Returns `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (dm, dc) = d.leading()?;
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&(Scalar::one() / c)));
        }
        let mut rem = self.clone();
        let mut q = MultiPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.div(dm)?;
            let c = rc / dc;
            rem -= &d.mul_monomial(&m, &c);
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Keeps only terms for which `keep` holds.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let coeff = if a.denom().is_one() {
                a.numer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
            };
            if m.is_one() {
                s.push_str(&coeff);
                continue;
            }
            if !a.is_one() {
                s.push_str(&coeff);
                s.push(' ');
            }
            let parts: Vec<String> = m
                .factors()
                .iter()
                .map(|&(v, e)| if e == 1 { v.latex() } else { format!("{}^{{{e}}}", v.latex()) })
                .collect();
            s.push_str(&parts.join(" "));
        }
        s
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_scalar(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_scalar(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Scalar> for MultiPoly {
    fn from(c: Scalar) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let (da, a) = self.integer_form();
        let (db, b) = rhs.integer_form();
        let denom = &da * &db;
        if let (Some(sa), Some(sb)) = (small_form(&a), small_form(&b)) {
            if let Some(acc) = product_i128(&sa, &sb) {
                return MultiPoly::from_numerators(acc.into_iter().map(|(m, c)| (m, BigInt::from(c))), &denom);
            }
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(a.len().max(b.len()));
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        MultiPoly::from_numerators(acc, &denom)
    }
}

fn small_form<'a>(v: &[(&'a Monomial, BigInt)]) -> Option<Vec<(&'a Monomial, i128)>> {
    v.iter().map(|(m, c)| c.to_i64().map(|c| (*m, c as i128))).collect()
}

/// Σ a·b over integer coefficients, or None on i128 overflow.
fn product_i128(a: &[(&Monomial, i128)], b: &[(&Monomial, i128)]) -> Option<HashMap<Monomial, i128>> {
    let mut acc: HashMap<Monomial, i128> = HashMap::with_capacity(a.len().max(b.len()));
    for (ma, ca) in a {
        for (mb, cb) in b {
            let slot = acc.entry(ma.mul(mb)).or_insert(0);
            *slot = slot.checked_add(ca * cb)?;
        }
    }
    Some(acc)
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::frac;

    fn l(i: usize) -> MultiPoly {
        MultiPoly::var(Var::lambda(i))
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::var(Var::lambda(1));
        let b = Monomial::var(Var::lambda(2));
        let a2 = Monomial::pow(Var::lambda(2), 2);
        assert!(a > b);
        assert!(a2 > a);
        let ab = a.mul(&b);
        let aa = Monomial::pow(Var::lambda(1), 2);
        assert!(aa > ab && ab > a2);
    }

    #[test]
    fn arithmetic_identities() {
        let p = &l(1) + &MultiPoly::int(2);
        let q = &l(1) - &MultiPoly::int(2);
        let prod = &p * &q;
        let expected = &l(1).pow(2) - &MultiPoly::int(4);
        assert_eq!(prod, expected);
        assert_eq!(prod.div_exact(&p), Some(q.clone()));
        assert_eq!((&l(1) + &l(2)).div_exact(&l(1)), None);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn derivative_and_substitution() {
        let p = &l(1).pow(3) * &l(2);
        assert_eq!(p.derivative(Var::lambda(1)), &MultiPoly::int(3) * &(&l(1).pow(2) * &l(2)));
        let s = p.substitute_one(Var::lambda(1), &MultiPoly::constant(frac(1, 2)));
        assert_eq!(s, l(2).scale(&frac(1, 8)));
        let coeffs = p.univariate_coeffs(Var::lambda(1));
        assert_eq!(coeffs.len(), 4);
        assert_eq!(MultiPoly::from_univariate(&coeffs, Var::lambda(1)), p);
    }

    #[test]
    fn display_is_readable() {
        let p = &(&l(1).pow(2) - &l(2).scale(&frac(3, 2))) + &MultiPoly::int(1);
        assert_eq!(p.to_string(), "lambda_1^2 - 3/2*lambda_2 + 1");
        assert_eq!(p.to_latex(), "\\lambda_{1}^{2} - \\frac{3}{2} \\lambda_{2} + 1");
    }
}
