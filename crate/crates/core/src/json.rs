//! Canonical JSON: rationals as "p" or "p/q" strings, polynomials as sorted
//! term lists. Identical inputs always serialize to identical bytes.

use serde::ser::{SerializeSeq, Serializer};
use serde_json::{json, Value};

use crate::exact::{fmt_scalar, MultiPoly, Scalar};
use crate::pbw::{Layout, PbwElement};

pub fn ser_scalar<S: Serializer>(s: &Scalar, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&fmt_scalar(s))
}

pub fn ser_scalars<S: Serializer>(v: &[Scalar], ser: S) -> Result<S::Ok, S::Error> {
    let mut seq = ser.serialize_seq(Some(v.len()))?;
    for s in v {
        seq.serialize_element(&fmt_scalar(s))?;
    }
    seq.end()
}

pub fn scalar(s: &Scalar) -> Value {
    Value::String(fmt_scalar(s))
}

pub fn scalars(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

/// [[coeff, [[var, exp], ...]], ...] in ascending term order.
pub fn poly(p: &MultiPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| {
                let factors: Vec<Value> = m.factors().iter().map(|(v, e)| json!([v.to_string(), e])).collect();
                json!([fmt_scalar(c), factors])
            })
            .collect(),
    )
}

/// [[word, coeff-poly], ...] with each PBW monomial written as generator powers.
pub fn pbw(a: &PbwElement, layout: &Layout) -> Value {
    Value::Array(
        a.terms()
            .map(|(m, c)| {
                let word: Vec<Value> = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| json!([layout.gen(i).to_string(), e]))
                    .collect();
                json!([word, poly(c)])
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, Var};

    #[test]
    fn poly_is_canonical() {
        let x = MultiPoly::var(Var::lambda(1));
        let y = MultiPoly::var(Var::lambda(2));
        let a = &(&x * &y) + &x.scale(&frac(1, 2));
        let b = &x.scale(&frac(1, 2)) + &(&y * &x);
        assert_eq!(poly(&a).to_string(), poly(&b).to_string());
        assert_eq!(poly(&a).to_string(), r#"[["1/2",[["lambda_1",1]]],["1",[["lambda_1",1],["lambda_2",1]]]]"#);
    }
}
