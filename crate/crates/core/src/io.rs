//! Versioned JSON point-set documents with exact `[numerator, denominator]`
//! coordinates.
//!
//! Integers that fit in an `i64` are written as JSON numbers, larger ones as
//! decimal strings; both forms are accepted on input.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactgeom::{PlanarPoint, PlanarSet, PointSet, Rational, SpatialPoint, SpatialSet};
use crate::generators::GenSpec;

pub const POINTSET_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntRepr {
    Small(i64),
    Big(String),
}

impl IntRepr {
    fn from_bigint(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(s) => IntRepr::Small(s),
            None => IntRepr::Big(v.to_string()),
        }
    }

    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            IntRepr::Small(v) => Ok(BigInt::from(*v)),
            IntRepr::Big(s) => s.trim().parse().map_err(|_| Error::Parse(format!("not an integer: {s:?}"))),
        }
    }
}

pub type RationalRepr = [IntRepr; 2];

pub fn encode_rational(r: &Rational) -> RationalRepr {
    [IntRepr::from_bigint(r.numer()), IntRepr::from_bigint(r.denom())]
}

pub fn decode_rational(r: &RationalRepr) -> Result<Rational> {
    let num = r[0].to_bigint()?;
    let den = r[1].to_bigint()?;
    if den.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rational::new(num, den))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSetDocument {
    pub schema_version: u32,
    pub dimension: usize,
    pub n: usize,
    pub points: Vec<Vec<RationalRepr>>,
    #[serde(default)]
    pub genspec: Option<GenSpec>,
}

impl PointSetDocument {
    pub fn from_set(set: &PointSet, genspec: Option<GenSpec>) -> Self {
        let points: Vec<Vec<RationalRepr>> = match set {
            PointSet::Planar(s) => s.points().iter().map(|p| vec![encode_rational(&p.x), encode_rational(&p.y)]).collect(),
            PointSet::Spatial(s) => s.points().iter().map(|p| p.coords().map(encode_rational).to_vec()).collect(),
        };
        Self { schema_version: POINTSET_SCHEMA_VERSION, dimension: set.dimension(), n: set.len(), points, genspec }
    }

    pub fn to_set(&self) -> Result<PointSet> {
        if self.schema_version != POINTSET_SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported schema_version {}", self.schema_version)));
        }
        if self.points.len() != self.n {
            return Err(Error::Parse(format!("n is {} but {} points are listed", self.n, self.points.len())));
        }
        let decode_row = |i: usize, row: &Vec<RationalRepr>| -> Result<Vec<Rational>> {
            if row.len() != self.dimension {
                return Err(Error::Parse(format!("point {i} has {} coordinates, expected {}", row.len(), self.dimension)));
            }
            row.iter().map(decode_rational).collect()
        };
        match self.dimension {
            2 => {
                let pts = self
                    .points
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        let mut c = decode_row(i, row)?.into_iter();
                        Ok(PlanarPoint::new(c.next().unwrap(), c.next().unwrap()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(PointSet::Planar(PlanarSet::new(pts)?))
            }
            3 => {
                let pts = self
                    .points
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        let mut c = decode_row(i, row)?.into_iter();
                        Ok(SpatialPoint::new(c.next().unwrap(), c.next().unwrap(), c.next().unwrap()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(PointSet::Spatial(SpatialSet::new(pts)?))
            }
            d => Err(Error::Parse(format!("unsupported dimension {d}"))),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Short content hash of a spatial set's exact coordinates.
pub fn set_id(set: &SpatialSet) -> String {
    let mut hasher = Sha256::new();
    for p in set.points() {
        for c in p.coords() {
            hasher.update(c.numer().to_string().as_bytes());
            hasher.update(b"/");
            hasher.update(c.denom().to_string().as_bytes());
            hasher.update(b",");
        }
        hasher.update(b";");
    }
    let digest = hasher.finalize();
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::ratio;
    use num_traits::One;

    #[test]
    fn accepts_numbers_and_strings() {
        let text = r#"{"schema_version":1,"dimension":2,"n":2,"points":[[[1,2],["3","1"]],[[0,1],[-7,3]]]}"#;
        let doc = PointSetDocument::from_json(text).unwrap();
        let PointSet::Planar(s) = doc.to_set().unwrap() else { panic!("planar expected") };
        assert_eq!(s.point(0), &PlanarPoint::new(ratio(1, 2), ratio(3, 1)));
        assert_eq!(s.point(1).y, ratio(-7, 3));
    }

    #[test]
    fn big_integers_round_trip_as_strings() {
        let big = Rational::new(BigInt::one() << 80, BigInt::from(3));
        let repr = encode_rational(&big);
        assert!(matches!(repr[0], IntRepr::Big(_)));
        assert_eq!(decode_rational(&repr).unwrap(), big);
    }

    #[test]
    fn malformed_documents() {
        let bad_dim = r#"{"schema_version":1,"dimension":3,"n":1,"points":[[[1,1],[2,1]]]}"#;
        assert!(PointSetDocument::from_json(bad_dim).unwrap().to_set().is_err());
        let zero_den = r#"{"schema_version":1,"dimension":2,"n":1,"points":[[[1,0],[2,1]]]}"#;
        assert!(PointSetDocument::from_json(zero_den).unwrap().to_set().is_err());
        assert!(PointSetDocument::from_json("{").is_err());
    }

    #[test]
    fn set_id_depends_on_coordinates() {
        let a = SpatialSet::from_ints(&[(0, 0, 0), (1, 0, 0)]).unwrap();
        let b = SpatialSet::from_ints(&[(0, 0, 0), (2, 0, 0)]).unwrap();
        assert_eq!(set_id(&a).len(), 16);
        assert_ne!(set_id(&a), set_id(&b));
        assert_eq!(set_id(&a), set_id(&a.clone()));
    }
}
