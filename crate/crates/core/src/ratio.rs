//! Exact rational helpers built on [`num_rational::Ratio`].

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::Serializer;

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

pub fn ratio(num: i128, den: i128) -> Rational {
    Rational::new(num, den)
}

pub fn int(v: u64) -> Rational {
    Rational::from_integer(v as i128)
}

/// Parses `a/b`, an integer, or a finite decimal such as `0.25` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Domain(format!("cannot parse {s:?} as a rational number"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i128 = n.trim().parse().map_err(|_| bad())?;
        let d: i128 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    if frac.len() > 30 {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let num: i128 = if digits.is_empty() {
        0
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let den = 10i128.pow(frac.len() as u32);
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn fmt(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `floor(r)` for a nonnegative rational.
pub fn floor_u64(r: &Rational) -> u64 {
    debug_assert!(*r >= Rational::zero());
    (r.numer() / r.denom()) as u64
}

pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt(r))
}

pub fn serialize_map<S: Serializer>(
    m: &std::collections::BTreeMap<String, Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(k, &fmt(v))?;
    }
    map.end()
}
