//! Binary quartic forms `a x^4 + b x^2 y^2 + c y^4`, their square values,
//! residue sieves and the certified box search.

mod certificate;
mod search;
mod sieve;

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact::{gcd, ExactInt};

pub use certificate::{
    certificate_issues, verify_certificate, CertificateError, SearchCertificate, TOOL_VERSION,
};
pub use search::{expected_candidate_count, search, SearchError, SearchOptions};
pub use sieve::{build_sieve, SieveError, SieveSpec, MAX_SIEVE_MODULUS};

/// Coefficients of `a x^4 + b x^2 y^2 + c y^4`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuarticForm {
    coef_a: ExactInt,
    coef_b: ExactInt,
    coef_c: ExactInt,
}

impl QuarticForm {
    pub fn new(a: impl Into<ExactInt>, b: impl Into<ExactInt>, c: impl Into<ExactInt>) -> Self {
        QuarticForm {
            coef_a: a.into(),
            coef_b: b.into(),
            coef_c: c.into(),
        }
    }

    pub fn coef_a(&self) -> &ExactInt {
        &self.coef_a
    }

    pub fn coef_b(&self) -> &ExactInt {
        &self.coef_b
    }

    pub fn coef_c(&self) -> &ExactInt {
        &self.coef_c
    }

    /// `4t^4 - 5t^2 s^2 + s^4`, the isosceles median quartic.
    pub fn isosceles() -> Self {
        QuarticForm::new(4, -5, 1)
    }

    /// `x^4 + 10 x^2 y^2 + 9 y^4`, the lifted form.
    pub fn lifted() -> Self {
        QuarticForm::new(1, 10, 9)
    }

    /// `m^4 - 5 m^2 n^2 + 4 n^4`, i.e. `h^2` in the isosceles generators.
    pub fn h_square() -> Self {
        QuarticForm::new(1, -5, 4)
    }

    pub(crate) fn small_coefficients(&self) -> Option<[i128; 3]> {
        let conv = |v: &ExactInt| i128::try_from(v).ok();
        Some([
            conv(&self.coef_a)?,
            conv(&self.coef_b)?,
            conv(&self.coef_c)?,
        ])
    }
}

impl fmt::Display for QuarticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.coef_a, self.coef_b, self.coef_c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed form `{0}`: expected three comma-separated integers such as 4,-5,1")]
pub struct FormParseError(pub String);

impl FromStr for QuarticForm {
    type Err = FormParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(FormParseError(s.to_string()));
        }
        let mut c = parts.iter().map(|p| {
            crate::decimal::parse_strict::<ExactInt>(p).map_err(|_| FormParseError(s.to_string()))
        });
        Ok(QuarticForm::new(
            c.next().unwrap()?,
            c.next().unwrap()?,
            c.next().unwrap()?,
        ))
    }
}

// Serialized as a three-element array of decimal strings.
impl Serialize for QuarticForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::decimal::vec::serialize(&[&self.coef_a, &self.coef_b, &self.coef_c], s)
    }
}

impl<'de> Deserialize<'de> for QuarticForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<ExactInt> = crate::decimal::vec::deserialize(d)?;
        let [a, b, c]: [ExactInt; 3] = v
            .try_into()
            .map_err(|_| serde::de::Error::custom("form needs exactly three coefficients"))?;
        Ok(QuarticForm::new(a, b, c))
    }
}

/// `a x^4 + b x^2 y^2 + c y^4`, exactly.
pub fn eval_form(f: &QuarticForm, x: &ExactInt, y: &ExactInt) -> ExactInt {
    let x2 = x * x;
    let y2 = y * y;
    &f.coef_a * &x2 * &x2 + &f.coef_b * &x2 * &y2 + &f.coef_c * &y2 * &y2
}

/// A triple with `z^2 = form(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Solution {
    #[serde(with = "crate::decimal")]
    pub x: ExactInt,
    #[serde(with = "crate::decimal")]
    pub y: ExactInt,
    #[serde(with = "crate::decimal")]
    pub z: ExactInt,
    pub primitive: bool,
    pub trivial: bool,
}

impl Solution {
    /// Builds the triple with its flags derived from the values.
    pub fn new(x: ExactInt, y: ExactInt, z: ExactInt) -> Self {
        let primitive = gcd(&x, &y) == ExactInt::from(1);
        let trivial = x.is_zero() || y.is_zero() || z.is_zero();
        Solution {
            x,
            y,
            z,
            primitive,
            trivial,
        }
    }

    pub fn from_i64(x: i64, y: i64, z: i64) -> Self {
        Solution::new(x.into(), y.into(), z.into())
    }

    /// True when `z^2` equals the form value at `(x, y)`.
    pub fn satisfies(&self, f: &QuarticForm) -> bool {
        &self.z * &self.z == eval_form(f, &self.x, &self.y)
    }

    /// True when the stored flags match the values.
    pub fn flags_consistent(&self) -> bool {
        let fresh = Solution::new(self.x.clone(), self.y.clone(), self.z.clone());
        fresh.primitive == self.primitive && fresh.trivial == self.trivial
    }

    pub fn is_canonical(&self) -> bool {
        !self.z.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> ExactInt {
        v.into()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(
            eval_form(&QuarticForm::isosceles(), &int(1), &int(1)),
            int(0)
        );
        assert_eq!(
            eval_form(&QuarticForm::isosceles(), &int(1), &int(2)),
            int(0)
        );
        assert_eq!(eval_form(&QuarticForm::lifted(), &int(1), &int(1)), int(20));
        assert_eq!(
            eval_form(&QuarticForm::isosceles(), &int(2), &int(3)),
            int(-35)
        );
    }

    #[test]
    fn form_parsing() {
        let f: QuarticForm = "4,-5,1".parse().unwrap();
        assert_eq!(f, QuarticForm::isosceles());
        assert_eq!(f.to_string(), "4,-5,1");
        assert!("4,-5".parse::<QuarticForm>().is_err());
        assert!("4,x,1".parse::<QuarticForm>().is_err());
        assert!("4,+5,1".parse::<QuarticForm>().is_err());
        let wide: QuarticForm = "123456789012345678901234567890,0,1".parse().unwrap();
        assert_eq!(wide.coef_a().to_string(), "123456789012345678901234567890");
        assert!(wide.small_coefficients().is_some());
    }

    #[test]
    fn solution_flags() {
        let s = Solution::from_i64(1, 1, 0);
        assert!(s.trivial && s.primitive);
        assert!(s.satisfies(&QuarticForm::isosceles()));
        let s = Solution::from_i64(2, 2, 8);
        assert!(!s.primitive && !s.trivial);
        assert!(s.satisfies(&QuarticForm::new(1, 2, 1)));
        let mut bad = s.clone();
        bad.trivial = true;
        assert!(!bad.flags_consistent());
    }
}
