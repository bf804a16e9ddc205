//! Weights under the Cartan subalgebra `H = span{d_i, δ_j}`: a tuple of
//! `m + n` eigenvalues, the first `m` for `d_i = t_i ∂/∂t_i` and the last `n`
//! for `δ_j = ξ_j ∂/∂ξ_j`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::param::WeightParam;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<WeightParam>);

impl Weight {
    pub fn zero(len: usize) -> Self {
        Weight(vec![WeightParam::zero(); len])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight(v.iter().map(|&k| WeightParam::from_int(k)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        debug_assert_eq!(self.len(), other.len());
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        debug_assert_eq!(self.len(), other.len());
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add_ints(&self, v: &[i64]) -> Weight {
        debug_assert_eq!(self.len(), v.len());
        Weight(self.0.iter().zip(v).map(|(a, &k)| a.shift(k)).collect())
    }

    /// The integer vector `self - other`, if every coordinate difference is
    /// an integer.
    pub fn integer_offset(&self, other: &Weight) -> Option<Vec<i64>> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.integer_offset(b))
            .collect()
    }

    /// Integer coordinates, if all are integers.
    pub fn as_ints(&self) -> Option<Vec<i64>> {
        self.integer_offset(&Weight::zero(self.len()))
    }

    /// `λ`, the even part.
    pub fn lambda(&self, m: usize) -> &[WeightParam] {
        &self.0[..m]
    }

    /// `μ`, the odd part.
    pub fn mu(&self, m: usize) -> &[WeightParam] {
        &self.0[m..]
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
