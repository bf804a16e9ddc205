//! The supercommutative algebra `A_{m,n}` of polynomials in even `t_i` and
//! odd `ξ_j`, and its constant-coefficient derivations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::index::{tau_unchecked, MultiIndex, OddSet};
use crate::lincomb::LinComb;
use crate::scalar::Scalar;

/// `t^α ξ_I`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub alpha: MultiIndex,
    pub odd: OddSet,
}

impl Monomial {
    pub fn new(alpha: MultiIndex, odd: OddSet) -> Self {
        Monomial { alpha, odd }
    }

    pub fn one(m: usize) -> Self {
        Monomial::new(MultiIndex::zeros(m), OddSet::EMPTY)
    }

    pub fn t(m: usize, i: usize) -> Self {
        Monomial::new(MultiIndex::unit(m, i), OddSet::EMPTY)
    }

    pub fn xi(m: usize, j: usize) -> Self {
        Monomial::new(MultiIndex::zeros(m), OddSet::single(j))
    }

    pub fn is_one(&self) -> bool {
        self.odd.is_empty() && self.alpha.is_zero()
    }

    pub fn parity(&self) -> u32 {
        self.odd.len() % 2
    }

    /// `|α| + |I|`.
    pub fn degree(&self) -> u32 {
        self.alpha.total() + self.odd.len()
    }

    /// `(t^α ξ_I)(t^β ξ_J) = (-1)^{τ(I,J)} t^{α+β} ξ_{I∪J}`, zero if the odd
    /// parts meet.
    pub fn mul(&self, other: &Monomial) -> Option<(Scalar, Monomial)> {
        if !self.odd.is_disjoint(other.odd) {
            return None;
        }
        let sign = Scalar::sign(tau_unchecked(self.odd, other.odd));
        Some((
            sign,
            Monomial::new(self.alpha.add(&other.alpha), self.odd.union(other.odd)),
        ))
    }

    /// All monomials with `|α| ≤ d` and any odd part, ordered by
    /// `(|α|, α, I)`.
    pub fn all(m: usize, n: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for a in MultiIndex::all_up_to(m, d) {
            for s in OddSet::all(n) {
                out.push(Monomial::new(a.clone(), s));
            }
        }
        out
    }

    /// All monomials of total degree `|α| + |I| ≤ d`.
    pub fn all_of_degree_at_most(m: usize, n: usize, d: u32) -> Vec<Monomial> {
        Monomial::all(m, n, d)
            .into_iter()
            .filter(|x| x.degree() <= d)
            .collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tpart = !self.alpha.is_zero();
        if tpart {
            write!(f, "t^{}", self.alpha)?;
        }
        if !self.odd.is_empty() {
            if tpart {
                write!(f, " ")?;
            }
            write!(f, "xi{}", self.odd)?;
        }
        if !tpart && self.odd.is_empty() {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `∂/∂t_i` or `∂/∂ξ_j` (0-based). Even symbols sort before odd ones.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DerivSymbol {
    T(usize),
    Xi(usize),
}

impl DerivSymbol {
    pub fn parity(self) -> u32 {
        match self {
            DerivSymbol::T(_) => 0,
            DerivSymbol::Xi(_) => 1,
        }
    }

    /// Position among the `m + n` symbols.
    pub fn index(self, m: usize) -> usize {
        match self {
            DerivSymbol::T(i) => i,
            DerivSymbol::Xi(j) => m + j,
        }
    }

    pub fn all(m: usize, n: usize) -> Vec<DerivSymbol> {
        (0..m)
            .map(DerivSymbol::T)
            .chain((0..n).map(DerivSymbol::Xi))
            .collect()
    }

    /// The derivative of a monomial, `None` when it vanishes.
    pub fn apply_mono(self, x: &Monomial) -> Option<(Scalar, Monomial)> {
        match self {
            DerivSymbol::T(i) => {
                let a = x.alpha.get(i);
                if a == 0 {
                    return None;
                }
                Some((
                    Scalar::from_int(a as i64),
                    Monomial::new(x.alpha.shifted(i, -1)?, x.odd),
                ))
            }
            DerivSymbol::Xi(j) => {
                if !x.odd.contains(j) {
                    return None;
                }
                Some((
                    Scalar::sign(x.odd.count_below(j)),
                    Monomial::new(x.alpha.clone(), x.odd.remove(j)),
                ))
            }
        }
    }
}

impl fmt::Display for DerivSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivSymbol::T(i) => write!(f, "D t{}", i + 1),
            DerivSymbol::Xi(j) => write!(f, "D xi{}", j + 1),
        }
    }
}

impl fmt::Debug for DerivSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of `A_{m,n}`.
pub type SuperPoly = LinComb<Monomial>;

impl SuperPoly {
    pub fn monomial(x: Monomial) -> Self {
        SuperPoly::basis(x)
    }

    pub fn one(m: usize) -> Self {
        SuperPoly::basis(Monomial::one(m))
    }

    pub fn mul(&self, other: &SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero();
        for (a, x) in self.iter() {
            for (b, y) in other.iter() {
                if let Some((s, c)) = a.mul(b) {
                    out.add_term(c, s * x * y);
                }
            }
        }
        out
    }

    /// `Some(p)` if every term has parity `p`; zero counts as even.
    pub fn parity(&self) -> Option<u32> {
        let mut it = self.keys().map(Monomial::parity);
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }
}

/// `∂(a)` for a constant-coefficient derivation.
pub fn apply_deriv(d: DerivSymbol, a: &SuperPoly) -> SuperPoly {
    let mut out = SuperPoly::zero();
    for (x, c) in a.iter() {
        if let Some((s, y)) = d.apply_mono(x) {
            out.add_term(y, s * c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(a: &[u32], odd: &[usize]) -> Monomial {
        Monomial::new(
            MultiIndex::from_slice(a),
            OddSet::from_one_based(odd, 4).unwrap(),
        )
    }

    #[test]
    fn derivative_examples() {
        let p = SuperPoly::monomial(mono(&[2], &[1]));
        assert_eq!(
            apply_deriv(DerivSymbol::T(0), &p),
            SuperPoly::term(mono(&[1], &[1]), Scalar::from_int(2))
        );
        let q = SuperPoly::monomial(mono(&[0], &[1, 2]));
        assert_eq!(
            apply_deriv(DerivSymbol::Xi(1), &q),
            SuperPoly::term(mono(&[0], &[1]), Scalar::from_int(-1))
        );
        let r = SuperPoly::monomial(mono(&[1], &[]));
        assert!(apply_deriv(DerivSymbol::Xi(0), &r).is_zero());
    }

    #[test]
    fn odd_square_vanishes() {
        let x = SuperPoly::monomial(mono(&[0], &[1]));
        assert!(x.mul(&x).is_zero());
        let y = SuperPoly::monomial(mono(&[0], &[2]));
        assert_eq!(x.mul(&y), -&y.mul(&x));
    }

    #[test]
    fn display() {
        assert_eq!(mono(&[2, 0], &[1, 3]).to_string(), "t^(2,0) xi{1,3}");
        assert_eq!(mono(&[0, 0], &[]).to_string(), "1");
        assert_eq!(DerivSymbol::Xi(1).to_string(), "D xi2");
    }
}
