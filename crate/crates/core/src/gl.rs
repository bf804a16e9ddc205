//! The general linear superalgebra `gl(m,n)` on matrix units, its enveloping
//! algebra and the identification `𝔪Δ/𝔪²Δ ≅ gl(m,n)`.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{Dims, MultiIndex, OddSet};
use crate::lincomb::LinComb;
use crate::pbw::{LieLetter, PbwEngine, Word};
use crate::scalar::Scalar;
use crate::superpoly::{DerivSymbol, Monomial};
use crate::witt::{WittElem, WittTerm};

/// The matrix unit `E_{a+1,b+1}` of `gl(m,n)` (stored 0-based). Rows and
/// columns `< m` are even.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GlUnit {
    pub m: u8,
    pub a: u8,
    pub b: u8,
}

impl GlUnit {
    pub fn new(dims: Dims, a: usize, b: usize) -> Result<Self> {
        let bound = dims.total();
        for k in [a, b] {
            if k >= bound {
                return Err(Error::IndexOutOfRange { index: k, bound });
            }
        }
        Ok(GlUnit {
            m: dims.m as u8,
            a: a as u8,
            b: b as u8,
        })
    }

    fn odd_index(self, k: u8) -> u32 {
        (k >= self.m) as u32
    }

    pub fn parity(self) -> u32 {
        (self.odd_index(self.a) + self.odd_index(self.b)) % 2
    }

    /// Degree in the gradation `gl(m,n) = gl_{-1} ⊕ gl_0 ⊕ gl_1`.
    pub fn degree(self) -> i32 {
        self.odd_index(self.b) as i32 - self.odd_index(self.a) as i32
    }

    pub fn is_diagonal(self) -> bool {
        self.a == self.b
    }

    /// `e_a - e_b` as integers.
    pub fn weight_ints(self, total: usize) -> Vec<i64> {
        let mut w = vec![0; total];
        w[self.a as usize] += 1;
        w[self.b as usize] -= 1;
        w
    }

    pub fn all(dims: Dims) -> Vec<GlUnit> {
        let t = dims.total();
        (0..t)
            .flat_map(|a| (0..t).map(move |b| (a, b)))
            .map(|(a, b)| GlUnit {
                m: dims.m as u8,
                a: a as u8,
                b: b as u8,
            })
            .collect()
    }

    /// Units of the even part `gl_m ⊕ gl_n`.
    pub fn even(dims: Dims) -> Vec<GlUnit> {
        Self::all(dims)
            .into_iter()
            .filter(|u| u.degree() == 0)
            .collect()
    }

    /// `[E_ab, E_cd] = δ_bc E_ad - (-1)^{|E_ab||E_cd|} δ_da E_cb`.
    pub fn bracket(self, other: GlUnit) -> GlElem {
        let mut out = GlElem::zero();
        if self.b == other.a {
            out.add_term(GlUnit { b: other.b, ..self }, Scalar::one());
        }
        if other.b == self.a {
            let c = -Scalar::sign(self.parity() * other.parity());
            out.add_term(
                GlUnit {
                    a: other.a,
                    b: self.b,
                    ..self
                },
                c,
            );
        }
        out
    }

    /// `x_a ∂_b` in `W`, where `x` runs over `t_1..t_m, ξ_1..ξ_n`.
    pub fn to_witt(self, n: usize) -> WittTerm {
        let m = self.m as usize;
        let (a, b) = (self.a as usize, self.b as usize);
        let mono = if a < m {
            Monomial::new(MultiIndex::unit(m, a), OddSet::EMPTY)
        } else {
            Monomial::new(MultiIndex::zeros(m), OddSet::single(a - m))
        };
        let d = if b < m {
            DerivSymbol::T(b)
        } else {
            DerivSymbol::Xi(b - m)
        };
        debug_assert!(a < m + n && b < m + n);
        WittTerm::new(mono, d)
    }
}

impl LieLetter for GlUnit {
    fn parity(&self) -> u32 {
        GlUnit::parity(*self)
    }

    fn bracket(&self, other: &Self) -> Vec<(Self, Scalar)> {
        GlUnit::bracket(*self, *other).into_iter().collect()
    }
}

impl fmt::Display for GlUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E({},{})", self.a + 1, self.b + 1)
    }
}

impl fmt::Debug for GlUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type GlElem = LinComb<GlUnit>;

pub fn glmn_bracket(x: &GlElem, y: &GlElem) -> GlElem {
    let mut out = GlElem::zero();
    for (u, c) in x.iter() {
        for (v, d) in y.iter() {
            out.add_scaled(&GlUnit::bracket(*u, *v), &(c * d));
        }
    }
    out
}

/// Parity of a homogeneous element, `None` for zero or mixed elements.
pub fn gl_parity(x: &GlElem) -> Option<u32> {
    let mut ps = x.keys().map(|u| u.parity());
    let p = ps.next()?;
    ps.all(|q| q == p).then_some(p)
}

/// PBW words in `U(gl(m,n))`.
pub type GlWord = Word<GlUnit>;
pub type UGlElem = LinComb<GlWord>;

pub(crate) fn gl_engine() -> &'static PbwEngine<GlUnit> {
    static ENGINE: OnceLock<PbwEngine<GlUnit>> = OnceLock::new();
    ENGINE.get_or_init(PbwEngine::new)
}

pub fn ugl_product(x: &UGlElem, y: &UGlElem) -> UGlElem {
    gl_engine().product(x, y)
}

/// Transport of `[E, F]` along `E_ab ↦ x_a ∂_b`: the image of the `gl`
/// bracket equals the degree-0 component of the Witt bracket of the images.
pub fn pi3_transport_holds(x: GlUnit, y: GlUnit, n: usize) -> bool {
    let lhs: WittElem = x
        .bracket(y)
        .iter()
        .map(|(u, c)| (u.to_witt(n), c.clone()))
        .collect();
    let rhs = x.to_witt(n).bracket(&y.to_witt(n)).grading_component(0);
    lhs == rhs
}

/// Super Jacobi on a triple of units:
/// `[x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]]`.
pub fn gl_jacobi_holds(x: GlUnit, y: GlUnit, z: GlUnit) -> bool {
    let (bx, by, bz) = (GlElem::basis(x), GlElem::basis(y), GlElem::basis(z));
    let lhs = glmn_bracket(&bx, &glmn_bracket(&by, &bz));
    let mut rhs = glmn_bracket(&glmn_bracket(&bx, &by), &bz);
    rhs.add_scaled(
        &glmn_bracket(&by, &glmn_bracket(&bx, &bz)),
        &Scalar::sign(x.parity() * y.parity()),
    );
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(d: Dims, a: usize, b: usize) -> GlUnit {
        GlUnit::new(d, a - 1, b - 1).unwrap()
    }

    #[test]
    fn unit_brackets() {
        let d = Dims::new(2, 1).unwrap();
        let got = glmn_bracket(&GlElem::basis(e(d, 1, 3)), &GlElem::basis(e(d, 3, 1)));
        let want: GlElem = [(e(d, 1, 1), Scalar::one()), (e(d, 3, 3), Scalar::one())]
            .into_iter()
            .collect();
        assert_eq!(got, want);
        assert_eq!(e(d, 1, 1).bracket(e(d, 1, 2)), GlElem::basis(e(d, 1, 2)));
        assert!(e(d, 1, 2).bracket(e(d, 1, 2)).is_zero());
    }

    #[test]
    fn grading() {
        let d = Dims::new(1, 1).unwrap();
        assert_eq!(e(d, 2, 1).degree(), -1);
        assert_eq!(e(d, 1, 2).degree(), 1);
        assert_eq!(e(d, 2, 2).degree(), 0);
        assert!(GlUnit::new(d, 2, 0).is_err());
    }

    #[test]
    fn odd_square_in_enveloping() {
        let d = Dims::new(1, 1).unwrap();
        let x = UGlElem::basis([e(d, 1, 2)].into_iter().collect());
        assert!(ugl_product(&x, &x).is_zero());
        let y = UGlElem::basis([e(d, 2, 1)].into_iter().collect());
        let mut want = ugl_product(&y, &x).scale(&Scalar::from_int(-1));
        want.add_term([e(d, 1, 1)].into_iter().collect(), Scalar::one());
        want.add_term([e(d, 2, 2)].into_iter().collect(), Scalar::one());
        assert_eq!(ugl_product(&x, &y), want);
    }

    #[test]
    fn transport_small() {
        let d = Dims::new(1, 1).unwrap();
        for x in GlUnit::all(d) {
            for y in GlUnit::all(d) {
                assert!(pi3_transport_holds(x, y, 1));
            }
        }
    }
}
