use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact, strictly positive ingredient amount.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quantity(Rational64);

impl Quantity {
    /// `None` for zero or negative values.
    pub fn new(value: Rational64) -> Option<Self> {
        (value > Rational64::zero()).then_some(Self(value))
    }

    pub fn from_integer(n: i64) -> Option<Self> {
        Self::new(Rational64::from_integer(n))
    }

    pub fn ratio(self) -> Rational64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Multiplies by `num / den`; used to rescale to a reference serving count.
    pub fn scaled(self, num: i64, den: i64) -> Self {
        Self(self.0 * Rational64::new(num, den))
    }

    /// Parses one number token: integer, decimal, `a/b` or `w a/b`.
    pub fn parse_number(s: &str) -> Option<Rational64> {
        let s = s.trim();
        if let Some((whole, frac)) = s.split_once(char::is_whitespace) {
            let w = Self::parse_number(whole)?;
            let f = Self::parse_number(frac)?;
            return (w.is_integer() && !f.is_integer()).then_some(w + f);
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.parse().ok()?;
            let d: i64 = d.parse().ok()?;
            return (d != 0).then(|| Rational64::new(n, d));
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 9 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            let int: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
            let den = 10i64.pow(frac.len() as u32);
            let num: i64 = frac.parse().ok()?;
            return Some(Rational64::new(int * den + num, den));
        }
        s.parse::<i64>().ok().map(Rational64::from_integer)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_number(s).and_then(Self::new).ok_or_else(|| format!("invalid quantity `{s}`"))
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Quantity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
