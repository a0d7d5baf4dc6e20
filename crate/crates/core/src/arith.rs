//! Exact scalars used throughout the crate.
//!
//! Everything is computed over the rationals; integers and rationals are the
//! arbitrary-precision types from `malachite`, which keep small values inline.

use std::str::FromStr;

use malachite_base::num::arithmetic::traits::{Gcd, Lcm};
use malachite_base::num::basic::traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use malachite_nz::integer::Integer;
pub use malachite_nz::natural::Natural;
pub use malachite_q::Rational as Q;

/// Rational from a machine integer.
#[inline]
pub fn q(n: i64) -> Q {
    Q::from(n)
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Q {
    assert!(d != 0, "zero denominator");
    Q::from_integers(Integer::from(n), Integer::from(d))
}

#[inline]
pub fn is_zero(x: &Q) -> bool {
    *x == Q::ZERO
}

pub fn numerator(x: &Q) -> Integer {
    Integer::from_sign_and_abs(*x >= Q::ZERO, x.to_numerator())
}

pub fn denominator(x: &Q) -> Natural {
    x.to_denominator()
}

/// Least common multiple of the denominators of `xs` (1 for an empty slice).
pub fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a Q>) -> Natural {
    xs.into_iter()
        .fold(Natural::ONE, |acc, x| acc.lcm(x.to_denominator()))
}

/// Greatest common divisor of the absolute values (0 for an empty or all-zero input).
pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a Integer>) -> Natural {
    let mut g = Natural::ZERO;
    for x in xs {
        g = g.gcd(x.unsigned_abs_ref());
        if g == Natural::ONE {
            break;
        }
    }
    g
}

/// Converts a rational that is known to be an integer into `i64`.
pub fn to_i64(x: &Q) -> Option<i64> {
    if x.to_denominator() != Natural::ONE {
        return None;
    }
    i64::try_from(&numerator(x)).ok()
}

/// Seeded random rational with numerator in `[-10, 10]` and denominator in `[1, 10]`.
pub fn random_rational<R: rand::Rng + ?Sized>(rng: &mut R) -> Q {
    frac(rng.gen_range(-10..=10), rng.gen_range(1..=10))
}

pub fn random_vector<R: rand::Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Q> {
    (0..n).map(|_| random_rational(rng)).collect()
}

/// JSON form of a rational: decimal strings for numerator and denominator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QJson {
    pub n: String,
    pub d: String,
}

impl From<&Q> for QJson {
    fn from(x: &Q) -> Self {
        QJson {
            n: numerator(x).to_string(),
            d: denominator(x).to_string(),
        }
    }
}

impl TryFrom<&QJson> for Q {
    type Error = String;

    fn try_from(j: &QJson) -> Result<Q, String> {
        let n = Integer::from_str(&j.n).map_err(|_| format!("bad numerator {:?}", j.n))?;
        let d = Integer::from_str(&j.d).map_err(|_| format!("bad denominator {:?}", j.d))?;
        if d == Integer::ZERO {
            return Err("zero denominator".into());
        }
        Ok(Q::from_integers(n, d))
    }
}

/// Serde adapter: `#[serde(with = "crate::arith::qserde")]` on a `Q` field.
pub mod qserde {
    use super::{QJson, Q};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        QJson::from(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let j = QJson::deserialize(d)?;
        Q::try_from(&j).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Q>` fields.
pub mod qvec {
    use super::{QJson, Q};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        xs.iter().map(QJson::from).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        Vec::<QJson>::deserialize(d)?
            .iter()
            .map(|j| Q::try_from(j).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        for x in [frac(-7, 3), q(0), frac(123456789, 1000), q(1) << 200u64] {
            let j = QJson::from(&x);
            assert_eq!(Q::try_from(&j).unwrap(), x);
        }
        let j = QJson::from(&frac(-6, 4));
        assert_eq!(j.n, "-3");
        assert_eq!(j.d, "2");
    }

    #[test]
    fn zero_denominator_rejected() {
        let j = QJson {
            n: "1".into(),
            d: "0".into(),
        };
        assert!(Q::try_from(&j).is_err());
    }

    #[test]
    fn lcm_and_gcd() {
        let xs = [frac(1, 4), frac(5, 6), q(3)];
        assert_eq!(lcm_denominators(&xs), Natural::from(12u32));
        let ys = [Integer::from(-12), Integer::from(18), Integer::from(30)];
        assert_eq!(gcd_all(&ys), Natural::from(6u32));
        assert_eq!(to_i64(&frac(10, 5)), Some(2));
        assert_eq!(to_i64(&frac(1, 5)), None);
    }
}
