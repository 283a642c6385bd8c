//! Noncommutative power series in `X_1 .. X_n`, truncated above a fixed degree.

use std::collections::BTreeMap;
use std::ops::Mul;

use num::{One, Zero};

use crate::Q;

/// A truncated series; words are lists of variable indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagnusSeries {
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Q>,
}

impl MagnusSeries {
    pub fn one(degree: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(Vec::new(), Q::one());
        MagnusSeries { degree, coeffs }
    }

    /// Image of a generator: `1 + X_i`.
    pub fn generator(i: usize, degree: usize) -> Self {
        let mut s = Self::one(degree);
        if degree >= 1 {
            s.coeffs.insert(vec![i], Q::one());
        }
        s
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, word: &[usize]) -> Q {
        self.coeffs.get(word).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Q)> {
        self.coeffs.iter()
    }

    /// Inverse of a series with constant term 1.
    pub fn inverse(&self) -> Self {
        assert!(self.coeff(&[]).is_one(), "only units with constant term 1 are inverted");
        // (1 + A)⁻¹ = Σ (−A)^k
        let mut minus_a = self.clone();
        minus_a.coeffs.remove(&Vec::new());
        for v in minus_a.coeffs.values_mut() {
            *v = -v.clone();
        }
        let mut total = Self::one(self.degree);
        let mut power = Self::one(self.degree);
        for _ in 0..self.degree {
            power = &power * &minus_a;
            total = total.plus(&power);
        }
        total
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::one(self.degree);
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            let e = out.coeffs.entry(w.clone()).or_insert_with(Q::zero);
            *e += c;
            if e.is_zero() {
                out.coeffs.remove(w);
            }
        }
        out
    }
}

impl Mul for &MagnusSeries {
    type Output = MagnusSeries;
    fn mul(self, rhs: &MagnusSeries) -> MagnusSeries {
        let degree = self.degree.min(rhs.degree);
        let mut coeffs: BTreeMap<Vec<usize>, Q> = BTreeMap::new();
        for (u, a) in &self.coeffs {
            for (v, b) in &rhs.coeffs {
                if u.len() + v.len() > degree {
                    continue;
                }
                let w: Vec<usize> = u.iter().chain(v).copied().collect();
                *coeffs.entry(w).or_insert_with(Q::zero) += a * b;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        MagnusSeries { degree, coeffs }
    }
}
