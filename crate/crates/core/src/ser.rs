//! Serialization of exact values: rationals become `{"num": .., "den": ..}`
//! with decimal-string integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::diagonal::DiagonalReport;
use crate::geometry::{HPoint, LatticePoint};
use crate::rho::RhoParam;

/// A rational as a serializable `{num, den}` pair.
pub struct Rat<'a>(pub &'a BigRational);

impl Serialize for Rat<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Rational", 2)?;
        st.serialize_field("num", &self.0.numer().to_string())?;
        st.serialize_field("den", &self.0.denom().to_string())?;
        st.end()
    }
}

pub fn rational<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    Rat(r).serialize(s)
}

pub fn opt_rational<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => Rat(r).serialize(s),
        None => s.serialize_none(),
    }
}

pub fn rational_pair<S: Serializer>(r: &(BigRational, BigRational), s: S) -> Result<S::Ok, S::Error> {
    (Rat(&r.0), Rat(&r.1)).serialize(s)
}

/// `floor(v·10^digits)/10^digits` as a decimal string.
pub fn decimal(v: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let t = (v * BigRational::from_integer(scale.clone())).floor().to_integer();
    let neg = t.is_negative();
    let a = t.abs();
    let int = &a / &scale;
    let frac = (&a % &scale).to_string();
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{frac:0>width$}", width = digits as usize)
}

impl Serialize for RhoParam {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RhoParam", 5)?;
        st.serialize_field("num", &self.numer().to_string())?;
        st.serialize_field("den", &self.denom().to_string())?;
        st.serialize_field("uncertainty", &Rat(self.uncertainty()))?;
        st.serialize_field("max_safe_index", &self.max_safe_index())?;
        st.serialize_field("certified", &self.is_certified())?;
        st.end()
    }
}

impl Serialize for HPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Point", 2)?;
        st.serialize_field("x", &Rat(&self.x()))?;
        st.serialize_field("y", &Rat(&self.y()))?;
        st.end()
    }
}

impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LatticePoint", 6)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("sign_x", &self.sign_x)?;
        st.serialize_field("sign_y", &self.sign_y)?;
        st.serialize_field("x", &Rat(&self.x()))?;
        st.serialize_field("y", &Rat(&self.y()))?;
        st.end()
    }
}

impl Serialize for DiagonalReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DiagonalReport", 10)?;
        st.serialize_field("d", &Rat(&self.d))?;
        st.serialize_field("realizing_index", &self.realizing_index)?;
        st.serialize_field("regime", &self.regime)?;
        st.serialize_field("t", &self.t)?;
        st.serialize_field("m1", &self.m1)?;
        st.serialize_field("classification", &self.classification)?;
        st.serialize_field("edge_endpoints", &self.edge_endpoints)?;
        st.serialize_field("threshold", &self.threshold)?;
        st.serialize_field("interval_tag", &self.interval_tag)?;
        st.serialize_field("domination", &self.domination)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(decimal(&r(1, 3), 4), "0.3333");
        assert_eq!(decimal(&r(-1, 3), 2), "-0.34");
        assert_eq!(decimal(&r(5, 2), 0), "2");
        assert_eq!(decimal(&r(1, 200), 3), "0.005");
    }

    #[test]
    fn rational_json() {
        let v = serde_json::to_string(&Rat(&BigRational::new(6.into(), 8.into()))).unwrap();
        assert_eq!(v, r#"{"num":"3","den":"4"}"#);
    }
}
