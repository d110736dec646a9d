use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A norm exponent `1 <= p <= inf`, carried together with its Hölder
/// conjugate `q` (`1/p + 1/q = 1`).
///
/// `q` is computed once, so `e.conjugate().conjugate() == e` bitwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Exponent {
    p: f64,
    q: f64,
}

impl Exponent {
    pub const ONE: Exponent = Exponent {
        p: 1.0,
        q: f64::INFINITY,
    };
    pub const TWO: Exponent = Exponent { p: 2.0, q: 2.0 };
    pub const INFINITY: Exponent = Exponent {
        p: f64::INFINITY,
        q: 1.0,
    };

    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidExponent(p));
        }
        let q = if p == 1.0 {
            f64::INFINITY
        } else if p.is_infinite() {
            1.0
        } else if p == 2.0 {
            2.0
        } else {
            p / (p - 1.0)
        };
        Ok(Self { p, q })
    }

    pub fn value(self) -> f64 {
        self.p
    }

    pub fn conjugate(self) -> Self {
        Self {
            p: self.q,
            q: self.p,
        }
    }

    pub fn is_infinite(self) -> bool {
        self.p.is_infinite()
    }

    pub fn is_one(self) -> bool {
        self.p == 1.0
    }

    /// The member of the conjugate pair that is `>= 2`.
    pub fn at_least_two(self) -> Self {
        if self.p >= 2.0 {
            self
        } else {
            self.conjugate()
        }
    }
}

impl TryFrom<f64> for Exponent {
    type Error = Error;

    fn try_from(p: f64) -> Result<Self> {
        Self::new(p)
    }
}

impl From<Exponent> for f64 {
    fn from(e: Exponent) -> f64 {
        e.p
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => return Ok(Self::INFINITY),
            _ => {}
        }
        let p: f64 = t
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("cannot parse exponent '{s}'")))?;
        Self::new(p)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            f.write_str(&crate::format::fmt_g15(self.p))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn conjugates() {
        assert_eq!(Exponent::new(2.0).unwrap().conjugate().value(), 2.0);
        assert_eq!(Exponent::INFINITY.conjugate().value(), 1.0);
        assert!(Exponent::ONE.conjugate().is_infinite());
        let q = Exponent::new(4.0).unwrap().conjugate().value();
        assert!((q - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_below_one() {
        assert!(Exponent::new(0.5).is_err());
        assert!(Exponent::new(f64::NAN).is_err());
        assert!("abc".parse::<Exponent>().is_err());
    }

    #[test]
    fn parses_inf_spelling() {
        assert!("inf".parse::<Exponent>().unwrap().is_infinite());
        assert!("INF".parse::<Exponent>().unwrap().is_infinite());
        assert_eq!("2.5".parse::<Exponent>().unwrap().value(), 2.5);
        assert_eq!(Exponent::INFINITY.to_string(), "inf");
    }

    proptest! {
        #[test]
        fn holder_relation(p in 1.0f64..1e6) {
            let e = Exponent::new(p).unwrap();
            let q = e.conjugate().value();
            if q.is_finite() {
                prop_assert!((1.0 / p + 1.0 / q - 1.0).abs() < 1e-12);
            }
            prop_assert_eq!(e.conjugate().conjugate(), e);
            prop_assert!(e.at_least_two().value() >= 2.0);
        }
    }
}
