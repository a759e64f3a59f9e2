use std::fmt;
use std::ops::{Div, Mul};
use std::str::FromStr;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::sums::EXACT_FLOAT_LIMIT;

/// Non-negative physical quantity held as `numer / denom`.
///
/// A plain decimal has `denom = 1`. Keeping the ratio lets a reciprocal
/// parameter such as `tau = 1/7 s` stay exact, and products of integer-valued
/// ratios are reduced by their gcd so phases `m^k * number / trial` can be
/// reduced modulo one without rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    numer: f64,
    denom: f64,
}

impl Quantity {
    pub const ONE: Quantity = Quantity {
        numer: 1.0,
        denom: 1.0,
    };

    pub fn new(value: f64) -> Self {
        Quantity {
            numer: value,
            denom: 1.0,
        }
    }

    pub fn ratio(numer: f64, denom: f64) -> Result<Self> {
        if !numer.is_finite() || !denom.is_finite() || denom == 0.0 {
            return Err(invalid(format!("invalid ratio {numer}/{denom}")));
        }
        let (numer, denom) = if denom < 0.0 {
            (-numer, -denom)
        } else {
            (numer, denom)
        };
        Ok(Quantity { numer, denom }.reduce())
    }

    /// `1 / n` for a positive integer `n`.
    pub fn reciprocal_of(n: u64) -> Self {
        Quantity {
            numer: 1.0,
            denom: n as f64,
        }
    }

    pub fn numer(self) -> f64 {
        self.numer
    }

    pub fn denom(self) -> f64 {
        self.denom
    }

    pub fn value(self) -> f64 {
        self.numer / self.denom
    }

    pub fn is_finite(self) -> bool {
        self.numer.is_finite() && self.denom.is_finite() && self.denom > 0.0
    }

    pub fn recip(self) -> Self {
        Quantity {
            numer: self.denom,
            denom: self.numer,
        }
    }

    /// Nearest integer when the value is integral within `tol`.
    pub fn as_integer(self, tol: f64) -> Option<u64> {
        let v = self.value();
        let r = v.round();
        ((v - r).abs() <= tol && r >= 0.0 && r < EXACT_FLOAT_LIMIT).then_some(r as u64)
    }

    /// Fractional part of `multiplier * self`, in `[0, 1)`.
    #[inline]
    pub fn cycles(self, multiplier: f64) -> f64 {
        let c = (multiplier * self.numer).rem_euclid(self.denom) / self.denom;
        if c >= 1.0 {
            0.0
        } else {
            c
        }
    }

    fn reduce(self) -> Self {
        match (as_exact_int(self.numer), as_exact_int(self.denom)) {
            (Some(n), Some(d)) if d > 0 => {
                let g = gcd(n, d).max(1);
                Quantity {
                    numer: (n / g) as f64,
                    denom: (d / g) as f64,
                }
            }
            _ => self,
        }
    }
}

impl Default for Quantity {
    fn default() -> Self {
        Quantity::ONE
    }
}

impl From<f64> for Quantity {
    fn from(value: f64) -> Self {
        Quantity::new(value)
    }
}

fn as_exact_int(x: f64) -> Option<u128> {
    (x >= 0.0 && x < EXACT_FLOAT_LIMIT && x.fract() == 0.0).then_some(x as u128)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Mul for Quantity {
    type Output = Quantity;

    fn mul(self, rhs: Quantity) -> Quantity {
        let ints = [self.numer, self.denom, rhs.numer, rhs.denom].map(as_exact_int);
        if let [Some(a), Some(b), Some(c), Some(d)] = ints {
            let g1 = gcd(a, d).max(1);
            let g2 = gcd(c, b).max(1);
            let numer = (a / g1) * (c / g2);
            let denom = (b / g2) * (d / g1);
            return Quantity {
                numer: numer as f64,
                denom: denom as f64,
            }
            .reduce();
        }
        Quantity {
            numer: self.numer * rhs.numer,
            denom: self.denom * rhs.denom,
        }
    }
}

impl Mul<f64> for Quantity {
    type Output = Quantity;

    fn mul(self, rhs: f64) -> Quantity {
        self * Quantity::new(rhs)
    }
}

impl Div for Quantity {
    type Output = Quantity;

    fn div(self, rhs: Quantity) -> Quantity {
        self * rhs.recip()
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom == 1.0 {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

impl FromStr for Quantity {
    type Err = Error;

    /// Decimal (`2.5e-6`) or fraction (`1/3`, `999999/1e6`) notation.
    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| invalid(format!("not a number: '{s}'")))
        };
        match s.split_once('/') {
            Some((n, d)) => Quantity::ratio(parse(n)?, parse(d)?),
            None => {
                let v = parse(s)?;
                if !v.is_finite() {
                    return Err(invalid(format!("not a finite number: '{s}'")));
                }
                Ok(Quantity::new(v))
            }
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.denom == 1.0 {
            serializer.serialize_f64(self.numer)
        } else {
            serializer.serialize_str(&self.to_string())
        }
    }
}

impl<'de> Deserialize<'de> for Quantity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct QuantityVisitor;

        impl Visitor<'_> for QuantityVisitor {
            type Value = Quantity;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number or a fraction string such as \"1/3\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Quantity, E> {
                Ok(Quantity::new(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Quantity, E> {
                Ok(Quantity::new(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Quantity, E> {
                Ok(Quantity::new(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Quantity, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(QuantityVisitor)
    }
}
