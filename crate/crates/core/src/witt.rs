//! The Witt superalgebra `W_{m,n}` of superderivations of `A_{m,n}` and the
//! extended algebra `W ⋉ A`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{Dims, MultiIndex, OddSet};
use crate::lincomb::LinComb;
use crate::scalar::Scalar;
use crate::superpoly::{DerivSymbol, Monomial, SuperPoly};
use crate::weight::Weight;

/// The basis derivation `t^α ξ_I ∂`. Ordered by `(∂, α, I)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WittTerm {
    pub d: DerivSymbol,
    pub mono: Monomial,
}

impl WittTerm {
    pub fn new(mono: Monomial, d: DerivSymbol) -> Self {
        WittTerm { d, mono }
    }

    pub fn from_parts(alpha: MultiIndex, odd: OddSet, d: DerivSymbol) -> Self {
        WittTerm::new(Monomial::new(alpha, odd), d)
    }

    /// The constant-coefficient derivation `∂`.
    pub fn deriv(m: usize, d: DerivSymbol) -> Self {
        WittTerm::new(Monomial::one(m), d)
    }

    pub fn parity(&self) -> u32 {
        (self.mono.parity() + self.d.parity()) % 2
    }

    /// The `k` with `[d, x] = k x` for `d = Σ d_i + Σ δ_j`.
    pub fn grade(&self) -> i64 {
        self.mono.degree() as i64 - 1
    }

    /// `(α, 1_I)` minus the weight of `∂`.
    pub fn weight_ints(&self, dims: Dims) -> Vec<i64> {
        let mut w = mono_weight_ints(&self.mono, dims);
        w[self.d.index(dims.m)] -= 1;
        w
    }

    pub fn weight(&self, dims: Dims) -> Weight {
        Weight::from_ints(&self.weight_ints(dims))
    }

    /// Every basis term with `|α| ≤ d`, in term order.
    pub fn all(dims: Dims, d: u32) -> Vec<WittTerm> {
        let mut out = Vec::new();
        for ds in DerivSymbol::all(dims.m, dims.n) {
            for mono in Monomial::all(dims.m, dims.n, d) {
                out.push(WittTerm::new(mono, ds));
            }
        }
        out.sort();
        out
    }

    /// `x(a)` on a single monomial.
    pub fn act_mono(&self, a: &Monomial) -> SuperPoly {
        match self.d.apply_mono(a) {
            None => SuperPoly::zero(),
            Some((c, b)) => match self.mono.mul(&b) {
                None => SuperPoly::zero(),
                Some((s, r)) => SuperPoly::term(r, s * c),
            },
        }
    }

    /// `[x, y]` on basis terms: `f ∂_a(g) ∂_b - (-1)^{|x||y|} g ∂_b(f) ∂_a`
    /// for `x = f ∂_a`, `y = g ∂_b`.
    pub fn bracket(&self, other: &WittTerm) -> WittElem {
        let mut out = WittElem::zero();
        if let Some((c, dg)) = self.d.apply_mono(&other.mono) {
            if let Some((s, r)) = self.mono.mul(&dg) {
                out.add_term(WittTerm::new(r, other.d), s * c);
            }
        }
        if let Some((c, df)) = other.d.apply_mono(&self.mono) {
            if let Some((s, r)) = other.mono.mul(&df) {
                let sign = Scalar::sign(self.parity() * other.parity() + 1);
                out.add_term(WittTerm::new(r, self.d), sign * s * c);
            }
        }
        out
    }
}

impl fmt::Display for WittTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            write!(f, "{}", self.d)
        } else {
            write!(f, "{} {}", self.mono, self.d)
        }
    }
}

impl fmt::Debug for WittTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integer weight `(α, 1_I)` of a monomial.
pub fn mono_weight_ints(x: &Monomial, dims: Dims) -> Vec<i64> {
    let mut w: Vec<i64> = x.alpha.as_slice().iter().map(|&a| a as i64).collect();
    w.extend((0..dims.n).map(|j| x.odd.contains(j) as i64));
    w
}

/// An element of `W_{m,n}`.
pub type WittElem = LinComb<WittTerm>;

impl WittElem {
    pub fn from_term(x: WittTerm) -> Self {
        WittElem::basis(x)
    }

    /// `d_i = t_i ∂/∂t_i`.
    pub fn d_even(dims: Dims, i: usize) -> Self {
        WittElem::basis(WittTerm::new(Monomial::t(dims.m, i), DerivSymbol::T(i)))
    }

    /// `δ_j = ξ_j ∂/∂ξ_j`.
    pub fn d_odd(dims: Dims, j: usize) -> Self {
        WittElem::basis(WittTerm::new(Monomial::xi(dims.m, j), DerivSymbol::Xi(j)))
    }

    /// `x(a)`, extended linearly.
    pub fn act(&self, a: &SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero();
        for (x, c) in self.iter() {
            for (mono, k) in a.iter() {
                out.add_scaled(&x.act_mono(mono), &(c * k));
            }
        }
        out
    }

    /// The superbracket, extended bilinearly from basis terms.
    pub fn bracket(&self, other: &WittElem) -> WittElem {
        let mut out = WittElem::zero();
        for (x, c) in self.iter() {
            for (y, k) in other.iter() {
                out.add_scaled(&x.bracket(y), &(c * k));
            }
        }
        out
    }

    pub fn parity(&self) -> Option<u32> {
        let mut it = self.keys().map(WittTerm::parity);
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }

    /// The common weight of all terms; zero and mixed elements are rejected.
    pub fn weight_of(&self, dims: Dims) -> Result<Weight> {
        let mut it = self.keys().map(|x| x.weight_ints(dims));
        let first = it.next().ok_or(Error::NotHomogeneous)?;
        if it.all(|w| w == first) {
            Ok(Weight::from_ints(&first))
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    pub fn decompose_by_weight(&self, dims: Dims) -> BTreeMap<Weight, WittElem> {
        let mut out: BTreeMap<Weight, WittElem> = BTreeMap::new();
        for (x, c) in self.iter() {
            out.entry(x.weight(dims))
                .or_default()
                .add_term(x.clone(), c.clone());
        }
        out
    }

    /// The `W_k` component under `d = Σ d_i + Σ δ_j`.
    pub fn grading_component(&self, k: i64) -> WittElem {
        self.filter(|x| x.grade() == k)
    }
}

/// The common weight of a homogeneous polynomial.
pub fn poly_weight(a: &SuperPoly, dims: Dims) -> Result<Weight> {
    let mut it = a.keys().map(|x| mono_weight_ints(x, dims));
    let first = it.next().ok_or(Error::NotHomogeneous)?;
    if it.all(|w| w == first) {
        Ok(Weight::from_ints(&first))
    } else {
        Err(Error::NotHomogeneous)
    }
}

/// An element `x + a` of `W ⋉ A`.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct ExtWittElem {
    pub w: WittElem,
    pub a: SuperPoly,
}

impl ExtWittElem {
    pub fn from_witt(w: WittElem) -> Self {
        ExtWittElem {
            w,
            a: SuperPoly::zero(),
        }
    }

    pub fn from_poly(a: SuperPoly) -> Self {
        ExtWittElem {
            w: WittElem::zero(),
            a,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.a.is_zero()
    }

    /// `[x + a, y + b] = [x, y] + x(b) - (-1)^{|a||y|} y(a)`, with `[a, b] = 0`.
    pub fn bracket(&self, other: &ExtWittElem) -> ExtWittElem {
        let w = self.w.bracket(&other.w);
        let mut a = self.w.act(&other.a);
        for (y, c) in other.w.iter() {
            for (mono, k) in self.a.iter() {
                let sign = Scalar::sign(mono.parity() * y.parity() + 1);
                a.add_scaled(&y.act_mono(mono), &(sign * c * k));
            }
        }
        ExtWittElem { w, a }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(m: usize, n: usize) -> Dims {
        Dims::new(m, n).unwrap()
    }

    fn term(a: &[u32], odd: &[usize], d: DerivSymbol) -> WittElem {
        WittElem::from_term(WittTerm::from_parts(
            MultiIndex::from_slice(a),
            OddSet::from_one_based(odd, 4).unwrap(),
            d,
        ))
    }

    #[test]
    fn bracket_examples() {
        let d = dims(2, 1);
        let d1 = WittElem::d_even(d, 0);
        let t2 = term(&[2, 0], &[], DerivSymbol::T(0));
        assert_eq!(d1.bracket(&t2), t2);
        assert!(d1.bracket(&WittElem::d_even(d, 1)).is_zero());
        let dx = term(&[0, 0], &[], DerivSymbol::Xi(0));
        let delta = WittElem::d_odd(d, 0);
        assert_eq!(dx.bracket(&delta), dx);
    }

    #[test]
    fn act_examples() {
        let mono = |a: &[u32], odd: &[usize]| {
            SuperPoly::monomial(Monomial::new(
                MultiIndex::from_slice(a),
                OddSet::from_one_based(odd, 4).unwrap(),
            ))
        };
        let x = term(&[1], &[], DerivSymbol::T(0));
        assert_eq!(
            x.act(&mono(&[3], &[])),
            mono(&[3], &[]).scale(&Scalar::from_int(3))
        );
        let y = term(&[0], &[1], DerivSymbol::Xi(1));
        assert_eq!(y.act(&mono(&[0], &[2])), mono(&[0], &[1]));
        let z = term(&[1], &[], DerivSymbol::Xi(0));
        assert_eq!(z.act(&mono(&[0], &[1, 2])), mono(&[1], &[2]));
    }

    #[test]
    fn weights_and_grading() {
        let d = dims(2, 2);
        let x = term(&[2, 0], &[1], DerivSymbol::T(1));
        assert_eq!(x.weight_of(d).unwrap(), Weight::from_ints(&[2, -1, 1, 0]));
        assert_eq!(
            WittElem::d_even(d, 0).weight_of(d).unwrap(),
            Weight::zero(4)
        );
        let y = term(&[1, 0], &[1], DerivSymbol::T(1));
        assert_eq!(y.grading_component(1), y);
        assert!(y.grading_component(0).is_zero());
        let mixed = &term(&[1, 0], &[], DerivSymbol::T(0)) + &term(&[0, 1], &[], DerivSymbol::T(0));
        assert_eq!(mixed.weight_of(d), Err(Error::NotHomogeneous));
        let p = SuperPoly::monomial(Monomial::t(2, 0)) + SuperPoly::monomial(Monomial::t(2, 1));
        assert_eq!(poly_weight(&p, d), Err(Error::NotHomogeneous));
    }

    #[test]
    fn extended_bracket() {
        let d = dims(1, 2);
        let euler = ExtWittElem::from_witt(WittElem::d_even(d, 0));
        let t1 = ExtWittElem::from_poly(SuperPoly::monomial(Monomial::t(1, 0)));
        assert_eq!(euler.bracket(&t1), t1);
        let x1 = ExtWittElem::from_poly(SuperPoly::monomial(Monomial::xi(1, 0)));
        let x2 = ExtWittElem::from_poly(SuperPoly::monomial(Monomial::xi(1, 1)));
        assert!(x1.bracket(&x2).is_zero());
        let dx = ExtWittElem::from_witt(term(&[0], &[], DerivSymbol::Xi(0)));
        assert_eq!(dx.bracket(&x1), ExtWittElem::from_poly(SuperPoly::one(1)));
        // [a, x] = -(-1)^{|a||x|} x(a): odd-odd gives +x(a)
        assert_eq!(x1.bracket(&dx), ExtWittElem::from_poly(SuperPoly::one(1)));
    }

    #[test]
    fn finite_dimension_without_even_variables() {
        for n in 1..=4 {
            assert_eq!(WittTerm::all(dims(0, n), 0).len(), n << n);
        }
    }
}
