//! Arbitrary-precision integers and reduced fractions.
//!
//! Every walk statistic in the crate is one of these two types. Floating point
//! only appears when a value is rendered for humans.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

pub type ExactInt = BigInt;
pub type ExactRational = BigRational;

/// `num / den` reduced to lowest terms. Panics on a zero denominator.
pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> ExactRational {
    BigRational::new(num.into(), den.into())
}

pub fn int(v: impl Into<BigInt>) -> ExactRational {
    BigRational::from_integer(v.into())
}

/// Nearest `f64`; only for display and z-scores.
pub fn to_f64(r: &ExactRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Renders `r` rounded (half away from zero) to `sig` significant digits.
///
/// Plain notation is used for decimal exponents in `-7..21`, scientific
/// notation (`1.5e+30`) outside that window. Trailing zeros are trimmed.
pub fn to_decimal(r: &ExactRational, sig: usize) -> String {
    assert!(sig > 0);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    let ten = BigInt::from(10);
    let lower = num_traits::pow(ten.clone(), sig - 1);
    let upper = &lower * &ten;

    // Find e with lower <= a * 10^e < upper.
    let mut e: i64 = sig as i64 - 1 - (a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64);
    let scaled = |e: i64| -> BigRational {
        if e >= 0 {
            &a * BigRational::from_integer(num_traits::pow(ten.clone(), e as usize))
        } else {
            &a / BigRational::from_integer(num_traits::pow(ten.clone(), (-e) as usize))
        }
    };
    loop {
        let s = scaled(e);
        if s < BigRational::from_integer(lower.clone()) {
            e += 1;
        } else if s >= BigRational::from_integer(upper.clone()) {
            e -= 1;
        } else {
            break;
        }
    }
    let s = scaled(e);
    let (q, rem) = s.numer().div_rem(s.denom());
    let mut m = if BigInt::from(2) * rem >= *s.denom() { q + BigInt::one() } else { q };
    if m == upper {
        m /= &ten;
        e -= 1;
    }
    let digits = m.to_string();
    // value = digits * 10^(-e); exponent of the leading digit:
    let lead_exp = sig as i64 - 1 - e;
    let body = if (-7..21).contains(&lead_exp) {
        if e <= 0 {
            let mut s = digits.clone();
            s.extend(std::iter::repeat_n('0', (-e) as usize));
            s
        } else {
            let point = digits.len() as i64 - e;
            let s = if point > 0 {
                format!("{}.{}", &digits[..point as usize], &digits[point as usize..])
            } else {
                format!("0.{}{}", "0".repeat((-point) as usize), digits)
            };
            trim_fraction(s)
        }
    } else {
        let mantissa = trim_fraction(format!("{}.{}", &digits[..1], &digits[1..]));
        let sign = if lead_exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{}", lead_exp.abs())
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_fraction(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0');
    t.trim_end_matches('.').to_string()
}

/// An integer as a JSON number when it fits in `i64`, otherwise as a decimal string.
pub fn int_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

/// `{"num": .., "den": .., "decimal": ".."}` with a 12-significant-digit rendering.
pub fn exact_json(r: &ExactRational) -> Value {
    json!({
        "num": int_json(r.numer()),
        "den": int_json(r.denom()),
        "decimal": to_decimal(r, 12),
    })
}

/// Inverse of [`exact_json`]; ignores the decimal rendering.
pub fn exact_from_json(v: &Value) -> Option<ExactRational> {
    let part = |key: &str| -> Option<BigInt> {
        match v.get(key)? {
            Value::Number(n) => n.as_i64().map(BigInt::from),
            Value::String(s) => s.parse().ok(),
            _ => None,
        }
    };
    let den = part("den")?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(part("num")?, den))
}
