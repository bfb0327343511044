use num_traits::{One, Zero};

use super::poly::{Monomial, MultiPoly};
use super::scalar::Scalar;
use super::var::Var;
use crate::error::{Error, Result};

/// Truncated Laurent series `Σ_{k=low}^{order} c_k v^k + O(v^{order+1})`.
///
/// Coefficients at or below `order` are exact; asking for anything above it
/// is an error.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries {
    var: Var,
    low: i64,
    order: i64,
    coeffs: Vec<MultiPoly>,
}

impl LaurentSeries {
    pub fn zero(var: Var, order: i64) -> LaurentSeries {
        LaurentSeries { var, low: order + 1, order, coeffs: Vec::new() }
    }

    /// `c v^k`, known exactly up to `order`.
    pub fn monomial(var: Var, c: MultiPoly, k: i64, order: i64) -> LaurentSeries {
        LaurentSeries::from_coeffs(var, k, vec![c], order)
    }

    pub fn from_coeffs(var: Var, low: i64, coeffs: Vec<MultiPoly>, order: i64) -> LaurentSeries {
        let mut coeffs = coeffs;
        let keep = (order - low + 1).max(0) as usize;
        coeffs.truncate(keep);
        LaurentSeries { var, low, order, coeffs }
    }

    /// A polynomial in `var` (the other variables ride along in coefficients).
    pub fn from_poly(p: &MultiPoly, var: Var, order: i64) -> LaurentSeries {
        LaurentSeries::from_coeffs(var, 0, p.univariate_coeffs(var), order)
    }

    /// `Σ_{k≥0} (a v)^k` to the given order.
    pub fn geometric(a: &MultiPoly, var: Var, order: i64) -> LaurentSeries {
        let mut coeffs = Vec::new();
        let mut pw = MultiPoly::one();
        for _ in 0..=order.max(-1) {
            coeffs.push(pw.clone());
            pw = &pw * a;
        }
        LaurentSeries::from_coeffs(var, 0, coeffs, order)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn coeff(&self, k: i64) -> Result<MultiPoly> {
        if k > self.order {
            return Err(Error::Truncation { requested: k, order: self.order });
        }
        if k < self.low {
            return Ok(MultiPoly::zero());
        }
        Ok(self.coeffs.get((k - self.low) as usize).cloned().unwrap_or_default())
    }

    pub fn residue(&self) -> Result<MultiPoly> {
        self.coeff(-1)
    }

    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        assert_eq!(self.var, other.var, "series in different variables");
        let order = self.order.min(other.order);
        let low = self.low.min(other.low);
        let mut coeffs = vec![MultiPoly::zero(); (order - low + 1).max(0) as usize];
        for s in [self, other] {
            for (i, c) in s.coeffs.iter().enumerate() {
                let k = s.low + i as i64;
                if k <= order {
                    coeffs[(k - low) as usize] += c;
                }
            }
        }
        LaurentSeries { var: self.var, low, order, coeffs }
    }

    pub fn scale(&self, c: &MultiPoly) -> LaurentSeries {
        LaurentSeries {
            var: self.var,
            low: self.low,
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Product; valid through `min(order_a + low_b, order_b + low_a)`.
    pub fn mul(&self, other: &LaurentSeries) -> LaurentSeries {
        assert_eq!(self.var, other.var, "series in different variables");
        let low = self.low + other.low;
        let order = (self.order + other.low).min(other.order + self.low);
        let len = (order - low + 1).max(0) as usize;
        let mut coeffs = vec![MultiPoly::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= len {
                    break;
                }
                coeffs[k] += &(a * b);
            }
        }
        LaurentSeries { var: self.var, low, order, coeffs }
    }

    /// Multiplicative inverse of a power series whose constant coefficient is
    /// a nonzero rational.
    pub fn inverse(&self) -> Result<LaurentSeries> {
        if self.low != 0 {
            return Err(Error::InvalidInput("inverse needs a power series starting at v^0".into()));
        }
        let c0 = self
            .coeff(0)?
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidInput("constant coefficient must be a nonzero rational".into()))?;
        let inv0 = Scalar::one() / c0;
        let n = self.order.max(-1);
        let mut out: Vec<MultiPoly> = Vec::new();
        for k in 0..=n {
            let mut acc = if k == 0 { MultiPoly::one() } else { MultiPoly::zero() };
            for j in 1..=k {
                let a = self.coeff(j)?;
                if !a.is_zero() {
                    acc -= &(&a * &out[(k - j) as usize]);
                }
            }
            out.push(acc.scale(&inv0));
        }
        Ok(LaurentSeries { var: self.var, low: 0, order: self.order, coeffs: out })
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> LaurentSeries {
        LaurentSeries {
            var: self.var,
            low: self.low,
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Collapses the known part back into a polynomial (only for `low >= 0`).
    pub fn to_poly(&self) -> MultiPoly {
        assert!(self.low >= 0, "negative powers cannot become a polynomial");
        let mut out = MultiPoly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            out += &c.mul_monomial(&Monomial::pow(self.var, (self.low as u32) + i as u32), &Scalar::one());
        }
        out
    }
}

/// Coefficient of `v^{-1}`.
pub fn laurent_residue(s: &LaurentSeries) -> Result<MultiPoly> {
    s.residue()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_pole() {
        let s = LaurentSeries::monomial(Var::Z, MultiPoly::one(), -1, 4);
        assert_eq!(laurent_residue(&s).unwrap(), MultiPoly::one());
    }

    #[test]
    fn regular_series_has_no_residue() {
        let h = MultiPoly::var(Var::lambda(1));
        let s = LaurentSeries::geometric(&h, Var::Z, 5);
        assert!(laurent_residue(&s).unwrap().is_zero());
    }

    #[test]
    fn beyond_truncation_is_an_error() {
        let s = LaurentSeries::geometric(&MultiPoly::one(), Var::Z, 3);
        assert!(matches!(s.coeff(4), Err(Error::Truncation { requested: 4, order: 3 })));
        let pole = LaurentSeries::monomial(Var::Z, MultiPoly::one(), -5, -3);
        assert!(pole.residue().is_err());
    }

    #[test]
    fn double_pole_against_geometric_expansion() {
        let h = MultiPoly::var(Var::e(1, 1));
        let zeta0 = MultiPoly::var(Var::zeta(0));
        let pole = LaurentSeries::monomial(Var::Z, zeta0.clone(), -2, 6);
        let geo = LaurentSeries::geometric(&h, Var::Z, 6);
        let prod = pole.mul(&geo);
        assert_eq!(prod.residue().unwrap(), &zeta0 * &h);
        assert_eq!(prod.order(), 4);
    }

    #[test]
    fn inverse_of_one_minus_hz() {
        let h = MultiPoly::var(Var::lambda(2));
        let p = LaurentSeries::from_coeffs(Var::Z, 0, vec![MultiPoly::one(), -&h], 6);
        let inv = p.inverse().unwrap();
        assert_eq!(inv, LaurentSeries::geometric(&h, Var::Z, 6));
        let one = p.mul(&inv);
        for k in 0..=6 {
            let want = if k == 0 { MultiPoly::one() } else { MultiPoly::zero() };
            assert_eq!(one.coeff(k).unwrap(), want);
        }
    }
}
