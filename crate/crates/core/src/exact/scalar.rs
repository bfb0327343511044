use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar. Always normalized (lowest terms, positive denominator).
pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn from_bigint(v: BigInt) -> Scalar {
    BigRational::from_integer(v)
}

/// `p` or `p/q`, never a decimal point.
pub fn fmt_scalar(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parses `p`, `-p`, `p/q`. Returns `None` for anything else.
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

pub fn is_integer(s: &Scalar) -> bool {
    s.denom().is_one()
}

pub fn to_i64(s: &Scalar) -> Option<i64> {
    if is_integer(s) {
        s.numer().to_i64()
    } else {
        None
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// Rising-style product `a (a+1) ... (a+len-1)` as an integer; empty product is 1.
pub fn rising(a: i64, len: i64) -> BigInt {
    (0..len).fold(BigInt::one(), |acc, i| acc * BigInt::from(a + i))
}

/// Positive divisors of |v|. `v` must be nonzero.
pub fn divisors(v: &BigInt) -> Vec<BigInt> {
    let v = v.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= v {
        if v.is_multiple_of(&d) {
            let q = &v / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
