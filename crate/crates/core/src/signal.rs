//! Finite complex signals and support sets.

use std::ops::Index;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite, non-empty complex vector.
///
/// Real inputs are embedded with zero imaginary parts. All entries are
/// finite; the ambient dimension is the length of the vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    entries: Vec<Complex64>,
}

impl Signal {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(pos) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(pos));
        }
        Ok(Self { entries })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(vec![Complex64::new(0.0, 0.0); dim])
    }

    /// The standard basis vector `e_index` in `dim` dimensions.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::DimensionMismatch { expected: dim, found: index + 1 });
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); dim];
        entries[index] = Complex64::new(1.0, 0.0);
        Self::new(entries)
    }

    pub fn from_dvector(v: &DVector<Complex64>) -> Result<Self> {
        Self::new(v.iter().copied().collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }

    pub fn to_dvector(&self) -> DVector<Complex64> {
        DVector::from_column_slice(&self.entries)
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.entries.iter().map(|z| z.norm()).collect()
    }

    pub fn norm_l1(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).sum()
    }

    pub fn norm_l2(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn norm_linf(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// Multiplies every entry by `c`.
    pub fn scaled(&self, c: Complex64) -> Result<Self> {
        Self::new(self.entries.iter().map(|z| z * c).collect())
    }

    /// Copy of the signal with the entries in `indices` set to zero.
    pub fn with_zeroed(&self, indices: &[usize]) -> Self {
        let mut entries = self.entries.clone();
        for &i in indices {
            if let Some(e) = entries.get_mut(i) {
                *e = Complex64::new(0.0, 0.0);
            }
        }
        Self { entries }
    }

    /// Indices of entries with modulus above `zero_tol`, ascending.
    pub fn support(&self, zero_tol: f64) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, z)| z.norm() > zero_tol)
            .map(|(i, _)| i)
            .collect()
    }
}

impl Index<usize> for Signal {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.entries[i]
    }
}

impl Serialize for Signal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        complex_vec::serialize(&self.entries, s)
    }
}

impl<'de> Deserialize<'de> for Signal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = complex_vec::deserialize(d)?;
        Signal::new(entries).map_err(serde::de::Error::custom)
    }
}

/// Ordered set of distinct zero-based column indices.
///
/// The order is the insertion order, which for solver output is the
/// selection order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SupportSet {
    indices: Vec<usize>,
}

impl SupportSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Validates that `indices` are distinct and all below `n`.
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        let mut seen = vec![false; n];
        for &i in &indices {
            if i >= n {
                return Err(Error::InvalidSupport(format!("index {i} >= {n}")));
            }
            if seen[i] {
                return Err(Error::InvalidSupport(format!("duplicate index {i}")));
            }
            seen[i] = true;
        }
        Ok(Self { indices })
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    pub(crate) fn push_unchecked(&mut self, i: usize) {
        debug_assert!(!self.contains(i));
        self.indices.push(i);
    }

    /// Ascending copy of the indices.
    pub fn sorted(&self) -> Vec<usize> {
        let mut v = self.indices.clone();
        v.sort_unstable();
        v
    }

    /// Indices in `0..n` that are not in the set, ascending.
    pub fn complement(&self, n: usize) -> Vec<usize> {
        let mut taken = vec![false; n];
        for &i in &self.indices {
            taken[i] = true;
        }
        (0..n).filter(|&i| !taken[i]).collect()
    }
}

/// Serializes complex vectors as arrays of `{re, im}` objects.
pub(crate) mod complex_vec {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Cell {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|z| Cell { re: z.re, im: z.im }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let cells = Vec::<Cell>::deserialize(d)?;
        Ok(cells.into_iter().map(|c| Complex64::new(c.re, c.im)).collect())
    }
}
