//! Exact coefficient arithmetic: the rationals and GF(2).

use std::fmt;

use num::{BigRational, One, Signed, Zero};

/// Exact field arithmetic for the ring computations.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
}

/// Arbitrary-precision rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Q(pub BigRational);

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Q {
    pub fn numer_i64(&self) -> Option<i64> {
        use num::ToPrimitive;
        self.0.numer().to_i64()
    }

    pub fn denom_i64(&self) -> Option<i64> {
        use num::ToPrimitive;
        self.0.denom().to_i64()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl Coeff for Q {
    fn zero() -> Self {
        Q(BigRational::zero())
    }
    fn one() -> Self {
        Q(BigRational::one())
    }
    fn from_int(v: i64) -> Self {
        Q(BigRational::from_integer(v.into()))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Q(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Q(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Q(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Q(-self.0.clone())
    }
    fn inv(&self) -> Self {
        Q(self.0.recip())
    }
}

/// The field with two elements.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct F2(pub u8);

impl fmt::Debug for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Coeff for F2 {
    fn zero() -> Self {
        F2(0)
    }
    fn one() -> Self {
        F2(1)
    }
    fn from_int(v: i64) -> Self {
        F2((v.rem_euclid(2)) as u8)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        F2(self.0 ^ rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        F2(self.0 ^ rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        F2(self.0 & rhs.0)
    }
    fn neg(&self) -> Self {
        *self
    }
    fn inv(&self) -> Self {
        debug_assert!(self.0 == 1);
        *self
    }
}

/// A row-echelon eliminator with class bookkeeping: rows tagged with a
/// basis index can be tracked when expressing vectors.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    /// (pivot column, row, basis tag)
    rows: Vec<(usize, Vec<S>, Option<usize>)>,
}

impl<S: Coeff> Echelon<S> {
    pub fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn tagged_rows(&self) -> impl Iterator<Item = (usize, &Vec<S>)> {
        self.rows
            .iter()
            .filter_map(|(_, row, tag)| tag.map(|t| (t, row)))
    }

    /// Pivot columns in increasing order.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _, _)| *p).collect()
    }

    /// (pivot, row) pairs in pivot order.
    pub fn pivot_rows(&self) -> impl Iterator<Item = (usize, &Vec<S>)> {
        self.rows.iter().map(|(p, row, _)| (*p, row))
    }

    /// Reduce a vector by the current rows; returns the residual.
    pub fn reduce(&self, mut v: Vec<S>) -> Vec<S> {
        for (pivot, row, _) in &self.rows {
            if !v[*pivot].is_zero() {
                let factor = v[*pivot].clone();
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    *x = x.sub(&factor.mul(y));
                }
            }
        }
        v
    }

    /// Reduce and record the coefficients of tagged rows used. Returns
    /// `(residual, tagged coefficients)`.
    pub fn express(&self, mut v: Vec<S>) -> (Vec<S>, Vec<(usize, S)>) {
        let mut coords = Vec::new();
        for (pivot, row, tag) in &self.rows {
            if !v[*pivot].is_zero() {
                let factor = v[*pivot].clone();
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    *x = x.sub(&factor.mul(y));
                }
                if let Some(t) = tag {
                    coords.push((*t, factor));
                }
            }
        }
        (v, coords)
    }

    /// Insert a vector if independent; the stored row is normalized to a
    /// unit leading coefficient and back-substituted into existing rows, so
    /// the row set stays fully reduced. Returns true when the row was added.
    pub fn insert(&mut self, v: Vec<S>, tag: Option<usize>) -> bool {
        let mut r = self.reduce(v);
        let pivot = match r.iter().position(|x| !x.is_zero()) {
            None => return false,
            Some(p) => p,
        };
        let inv = r[pivot].inv();
        for x in r.iter_mut() {
            *x = x.mul(&inv);
        }
        for (_, row, _) in self.rows.iter_mut() {
            if !row[pivot].is_zero() {
                let factor = row[pivot].clone();
                for (x, y) in row.iter_mut().zip(r.iter()) {
                    *x = x.sub(&factor.mul(y));
                }
            }
        }
        self.rows.push((pivot, r, tag));
        self.rows.sort_by_key(|(p, _, _)| *p);
        true
    }
}

impl<S: Coeff> Default for Echelon<S> {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_express_roundtrip() {
        // two-phase usage: a fixed coboundary space, then basis rows
        let mut cob: Echelon<Q> = Echelon::new();
        assert!(cob.insert(vec![Q::one(), Q::one(), Q::zero()], None));
        let mut hre: Echelon<Q> = Echelon::new();
        let candidate = cob.reduce(vec![Q::zero(), Q::one(), Q::from_int(2)]);
        assert!(hre.insert(candidate, Some(0)));
        // v = coboundary + 3 * candidate
        let v = vec![Q::one(), Q::from_int(4), Q::from_int(6)];
        let (residual, coords) = hre.express(cob.reduce(v));
        assert!(residual.iter().all(Coeff::is_zero));
        assert_eq!(coords.len(), 1);
        assert_eq!(coords[0].0, 0);
        assert_eq!(coords[0].1, Q::from_int(3));
    }

    #[test]
    fn echelon_insert_rejects_dependent_rows() {
        let mut e: Echelon<Q> = Echelon::new();
        assert!(e.insert(vec![Q::one(), Q::from_int(2)], None));
        assert!(e.insert(vec![Q::zero(), Q::one()], None));
        assert!(!e.insert(vec![Q::from_int(3), Q::from_int(7)], None));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn f2_arithmetic() {
        assert_eq!(F2::one().add(&F2::one()), F2::zero());
        assert_eq!(F2::from_int(-3), F2::one());
    }
}
