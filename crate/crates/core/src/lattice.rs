//! Integer model of a Neron-Severi group with its intersection pairing.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use crate::linalg::Inertia;
use crate::num::{self, Int};
use crate::{linalg, Error, Result};

/// Integer coordinate vector of a numerical divisor class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass(pub Vec<Int>);

impl DivisorClass {
    pub fn new(coords: Vec<Int>) -> Self {
        DivisorClass(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        DivisorClass(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass(vec![BigInt::zero(); rank])
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Coordinates divided by their gcd.
    pub fn primitive(&self) -> DivisorClass {
        DivisorClass(linalg::primitive(&self.0))
    }

    pub fn gcd(&self) -> Int {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn parse(s: &str) -> Result<Self> {
        num::parse_int_vec(s).map(DivisorClass)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        num::int_vec::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for DivisorClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        num::int_vec::deserialize(d).map(DivisorClass)
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.len(), rhs.len(), "adding classes of different rank");
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(
            self.len(),
            rhs.len(),
            "subtracting classes of different rank"
        );
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&DivisorClass> for &Int {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass(rhs.0.iter().map(|a| self * a).collect())
    }
}

/// Result of checking the Hodge-index signature of a lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureReport {
    pub ok: bool,
    pub inertia: Inertia,
}

/// A finite-rank lattice with a symmetric integral intersection form.
///
/// The gram matrix is always symmetric. Its inertia is computed once, exactly,
/// at construction; [`IntersectionLattice::new`] additionally insists on
/// signature `(1, rank - 1)` while [`IntersectionLattice::from_gram`] only
/// records it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    gram: Vec<Vec<Int>>,
    canonical: Option<DivisorClass>,
    inertia: Inertia,
}

impl IntersectionLattice {
    /// Builds a lattice and requires signature `(1, rank - 1)`.
    pub fn new(gram: Vec<Vec<Int>>, canonical: Option<DivisorClass>) -> Result<Self> {
        let lattice = Self::from_gram(gram, canonical)?;
        let report = lattice.validate_signature();
        if !report.ok {
            return Err(Error::input(format!(
                "intersection form must have signature (1, {}); computed inertia \
                 (n+, n-, n0) = ({}, {}, {})",
                lattice.rank() - 1,
                report.inertia.positive,
                report.inertia.negative,
                report.inertia.zero
            )));
        }
        Ok(lattice)
    }

    /// Builds a lattice from any symmetric gram matrix.
    pub fn from_gram(gram: Vec<Vec<Int>>, canonical: Option<DivisorClass>) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::input("lattice rank must be positive"));
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(Error::input(format!(
                    "gram row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::input(format!(
                        "gram matrix is not symmetric: entry ({i},{j}) = {} but ({j},{i}) = {}",
                        gram[i][j], gram[j][i]
                    )));
                }
            }
        }
        if let Some(k) = &canonical {
            if k.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: k.len(),
                });
            }
        }
        let inertia = linalg::inertia(&gram);
        Ok(IntersectionLattice {
            gram,
            canonical,
            inertia,
        })
    }

    pub fn from_i64s(gram: &[&[i64]], canonical: Option<&[i64]>) -> Result<Self> {
        let gram = gram
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::new(gram, canonical.map(DivisorClass::from_i64s))
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Int>] {
        &self.gram
    }

    pub fn canonical(&self) -> Option<&DivisorClass> {
        self.canonical.as_ref()
    }

    pub fn inertia(&self) -> Inertia {
        self.inertia
    }

    pub fn validate_signature(&self) -> SignatureReport {
        SignatureReport {
            ok: self.inertia.is_hyperbolic(),
            inertia: self.inertia,
        }
    }

    pub fn check_class(&self, a: &DivisorClass) -> Result<()> {
        if a.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: a.len(),
            });
        }
        Ok(())
    }

    /// `a^T G b`.
    pub fn pair(&self, a: &DivisorClass, b: &DivisorClass) -> Result<Int> {
        self.check_class(a)?;
        self.check_class(b)?;
        Ok(self.pair_unchecked(a, b))
    }

    pub(crate) fn pair_unchecked(&self, a: &DivisorClass, b: &DivisorClass) -> Int {
        let mut total = BigInt::zero();
        for (i, ai) in a.0.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let row: Int = self.gram[i].iter().zip(&b.0).map(|(g, bj)| g * bj).sum();
            total += ai * row;
        }
        total
    }

    pub fn square(&self, a: &DivisorClass) -> Result<Int> {
        self.pair(a, a)
    }

    /// The linear form `x -> x . a` as a Euclidean coefficient vector `G a`.
    pub fn dual_form(&self, a: &DivisorClass) -> Result<Vec<Int>> {
        self.check_class(a)?;
        Ok(self.gram.iter().map(|row| linalg::dot(row, &a.0)).collect())
    }

    /// Arithmetic genus from adjunction, `2g - 2 = C.(C + K)`.
    pub fn genus(&self, c: &DivisorClass) -> Result<Int> {
        let k = self
            .canonical
            .as_ref()
            .ok_or_else(|| Error::unsupported("genus needs a canonical class on the lattice"))?;
        let twice = self.pair(c, &(c + k))? + BigInt::from(2);
        if twice.is_odd() {
            return Err(Error::input(format!(
                "C.(C+K) is odd for C = {c}; the class cannot be a smooth curve in this model"
            )));
        }
        Ok(twice / 2)
    }
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    rank: usize,
    #[serde(with = "gram_serde")]
    gram: Vec<Vec<Int>>,
    #[serde(default)]
    canonical: Option<DivisorClass>,
}

mod gram_serde {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(g: &[Vec<Int>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(g.len()))?;
        for row in g {
            seq.serialize_element(&DivisorClass(row.clone()))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Int>>, D::Error> {
        let rows: Vec<DivisorClass> = Deserialize::deserialize(d)?;
        Ok(rows.into_iter().map(|r| r.0).collect())
    }
}

impl Serialize for IntersectionLattice {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LatticeJson {
            rank: self.rank(),
            gram: self.gram.clone(),
            canonical: self.canonical.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntersectionLattice {
    /// Reads the lattice JSON object; symmetry and rank are checked, the
    /// signature is only recorded (see [`IntersectionLattice::from_gram`]).
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = LatticeJson::deserialize(d)?;
        if raw.rank != raw.gram.len() {
            return Err(D::Error::custom(format!(
                "rank {} does not match gram size {}",
                raw.rank,
                raw.gram.len()
            )));
        }
        IntersectionLattice::from_gram(raw.gram, raw.canonical).map_err(D::Error::custom)
    }
}
