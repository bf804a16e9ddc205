//! The alternating products
//! `ω^{r,j,∂,∂'}_{α,β,I,J} = Σ_i (-1)^i (r choose i) t^{α+(r-i)e_j} ξ_I ∂ · t^{β+ie_j} ξ_J ∂'`
//! in `U(W)`, their recurrence, and the reduction identities that promote
//! annihilation from purely even ω's to all of them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::{binom_u, MultiIndex, OddSet};
use crate::scalar::Scalar;
use crate::superpoly::{DerivSymbol, Monomial};
use crate::ubar::{u_bracket, u_product, UElem};
use crate::witt::WittTerm;

#[derive(Clone, Debug, Serialize)]
pub struct OmegaElem {
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
    pub odd_i: OddSet,
    pub odd_j: OddSet,
    pub r: u32,
    pub j: usize,
    pub d: DerivSymbol,
    pub d2: DerivSymbol,
    #[serde(skip)]
    pub expansion: UElem,
}

/// `t^{α + k e_j} ξ_I ∂` as a letter, or `None` if an exponent is negative.
fn letter(alpha: &MultiIndex, j: usize, k: i64, odd: OddSet, d: DerivSymbol) -> Option<UElem> {
    let a = alpha.shifted(j, k)?;
    Some(UElem::letter(WittTerm::new(Monomial::new(a, odd), d)))
}

/// `Σ_i c_i · (t^{a + (s - i)e_j} ξ_P ∂₁) · (t^{b + (i + o)e_j} ξ_Q ∂₂)` for
/// `i = 0..=top`, terms with a negative exponent dropped.
struct PairSum<'a> {
    a: &'a MultiIndex,
    s: i64,
    p: OddSet,
    d1: DerivSymbol,
    b: &'a MultiIndex,
    o: i64,
    q: OddSet,
    d2: DerivSymbol,
}

impl PairSum<'_> {
    fn eval(&self, j: usize, top: u32, coef: impl Fn(u32) -> Scalar) -> UElem {
        let mut out = UElem::zero();
        for i in 0..=top {
            let c = coef(i);
            if c.is_zero() {
                continue;
            }
            let (Some(x), Some(y)) = (
                letter(self.a, j, self.s - i as i64, self.p, self.d1),
                letter(self.b, j, i as i64 + self.o, self.q, self.d2),
            ) else {
                continue;
            };
            out.add_scaled(&u_product(&x, &y), &c);
        }
        out
    }
}

fn alt_binom(r: u32, i: u32) -> Scalar {
    Scalar::sign(i) * binom_u(r, i)
}

fn check_j(alpha: &MultiIndex, j: usize) -> Result<()> {
    let m = alpha.len();
    if m == 0 {
        return Err(Error::NoEvenVariables);
    }
    if j >= m {
        return Err(Error::IndexOutOfRange {
            index: j + 1,
            bound: m,
        });
    }
    Ok(())
}

/// `ω^{r,j,∂,∂'}_{α,β,I,J}` (with `j` 0-based).
#[allow(clippy::too_many_arguments)]
pub fn omega(
    alpha: &MultiIndex,
    beta: &MultiIndex,
    odd_i: OddSet,
    odd_j: OddSet,
    r: u32,
    j: usize,
    d: DerivSymbol,
    d2: DerivSymbol,
) -> Result<OmegaElem> {
    check_j(alpha, j)?;
    if beta.len() != alpha.len() {
        return Err(Error::LengthMismatch {
            expected: alpha.len(),
            got: beta.len(),
        });
    }
    Ok(OmegaElem {
        alpha: alpha.clone(),
        beta: beta.clone(),
        odd_i,
        odd_j,
        r,
        j,
        d,
        d2,
        expansion: omega_expansion(alpha, beta, odd_i, odd_j, r, j, d, d2),
    })
}

#[allow(clippy::too_many_arguments)]
fn omega_expansion(
    alpha: &MultiIndex,
    beta: &MultiIndex,
    odd_i: OddSet,
    odd_j: OddSet,
    r: u32,
    j: usize,
    d: DerivSymbol,
    d2: DerivSymbol,
) -> UElem {
    PairSum {
        a: alpha,
        s: r as i64,
        p: odd_i,
        d1: d,
        b: beta,
        o: 0,
        q: odd_j,
        d2,
    }
    .eval(j, r, |i| alt_binom(r, i))
}

/// `ω^r_{α+e_j,β} - ω^r_{α,β+e_j} = ω^{r+1}_{α,β}`.
#[allow(clippy::too_many_arguments)]
pub fn verify_omega_recurrence(
    alpha: &MultiIndex,
    beta: &MultiIndex,
    odd_i: OddSet,
    odd_j: OddSet,
    r: u32,
    j: usize,
    d: DerivSymbol,
    d2: DerivSymbol,
) -> Result<bool> {
    check_j(alpha, j)?;
    let w = |a: &MultiIndex, b: &MultiIndex, r| omega_expansion(a, b, odd_i, odd_j, r, j, d, d2);
    let lhs = &w(&alpha.inc(j), beta, r) - &w(alpha, &beta.inc(j), r);
    Ok(lhs == w(alpha, beta, r + 1))
}

/// Which reduction identities hold for one parameter choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaReduction {
    /// Second difference of the bracket family `f` equals `-2 ω^{r+2}_{α,β+γ,∅,I}`.
    pub first: bool,
    /// `h(α+e_j,β,γ) - h(α,β,γ+e_j) = -2 ω^{r+2}_{α+γ,β,J,I}`.
    pub second: bool,
    /// `y(α,β+e_j,γ) - y(α,β,γ+e_j) = -ω^{r+4}_{α,β+γ,J,I}` with `(∂/∂t_j, ∂)`.
    pub third: bool,
}

impl OmegaReduction {
    pub fn holds(&self) -> bool {
        self.first && self.second && self.third
    }
}

/// Parameters of one reduction check (`j` 0-based).
#[derive(Clone, Debug, Serialize)]
pub struct ReductionParams {
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
    pub gamma: MultiIndex,
    pub odd_i: OddSet,
    pub odd_j: OddSet,
    pub r: u32,
    pub j: usize,
    pub d: DerivSymbol,
}

/// Checks the three reduction identities as exact identities in `U(W)`.
/// With `corrupt` set, one term of `f` has its sign flipped.
pub fn omega_reduction(p: &ReductionParams, corrupt: bool) -> Result<OmegaReduction> {
    check_j(&p.alpha, p.j)?;
    Ok(OmegaReduction {
        first: reduction_first(p, corrupt),
        second: reduction_second(p),
        third: reduction_third(p),
    })
}

/// The conjunction of the three identities.
pub fn verify_omega_reduction(p: &ReductionParams) -> Result<bool> {
    Ok(omega_reduction(p, false)?.holds())
}

fn reduction_first(p: &ReductionParams, corrupt: bool) -> bool {
    let j = p.j;
    let dt = DerivSymbol::T(j);
    let e = OddSet::EMPTY;
    let second_sign = if corrupt {
        Scalar::one()
    } else {
        Scalar::from_int(-1)
    };
    let f = |a: &MultiIndex, b: &MultiIndex, g: &MultiIndex| -> UElem {
        let w1 = omega_expansion(&a.inc(j), b, e, e, p.r, j, dt, dt);
        let w0 = omega_expansion(a, b, e, e, p.r, j, dt, dt);
        let x1 = letter(g, j, 0, p.odd_i, dt).expect("nonnegative");
        let x0 = letter(g, j, 1, p.odd_i, dt).expect("nonnegative");
        let mut out = u_bracket(&w1, &x1);
        out.add_scaled(&u_bracket(&w0, &x0), &second_sign);
        out
    };
    let (a, b, g) = (&p.alpha, &p.beta, &p.gamma);
    let lhs = (f(&a.inc(j), &b.inc(j), g) - f(a, &b.inc(j), &g.inc(j)))
        - (f(&a.inc(j), b, &g.inc(j)) - f(a, b, &g.inc(j).inc(j)));
    let rhs =
        omega_expansion(a, &b.add(g), e, p.odd_i, p.r + 2, j, dt, dt).scale(&Scalar::from_int(-2));
    lhs == rhs
}

fn reduction_second(p: &ReductionParams) -> bool {
    let j = p.j;
    let dt = DerivSymbol::T(j);
    let r2 = p.r + 2;
    let h = |a: &MultiIndex, b: &MultiIndex, g: &MultiIndex| -> UElem {
        let ag = a.add(g);
        let shift = g.get(j) as i64 - a.get(j) as i64 - r2 as i64;
        PairSum {
            a: &ag,
            s: r2 as i64 - 1,
            p: p.odd_j,
            d1: dt,
            b,
            o: 0,
            q: p.odd_i,
            d2: dt,
        }
        .eval(j, r2, |i| {
            alt_binom(r2, i) * Scalar::from_int(shift + i as i64)
        })
    };
    let (a, b, g) = (&p.alpha, &p.beta, &p.gamma);
    let lhs = h(&a.inc(j), b, g) - h(a, b, &g.inc(j));
    let rhs =
        omega_expansion(&a.add(g), b, p.odd_j, p.odd_i, r2, j, dt, dt).scale(&Scalar::from_int(-2));
    lhs == rhs
}

fn reduction_third(p: &ReductionParams) -> bool {
    let j = p.j;
    let dt = DerivSymbol::T(j);
    let d = p.d;
    let r2 = p.r + 2;
    let sign_id = Scalar::sign(p.odd_i.len() * d.parity());
    let x = |a: &MultiIndex, b: &MultiIndex, g: &MultiIndex| -> UElem {
        let gj = Scalar::from_int(g.get(j) as i64);
        if gj.is_zero() {
            return UElem::zero();
        }
        let ag = a.add(g);
        let bg = b.add(g);
        let first = PairSum {
            a: &ag,
            s: r2 as i64 - 1,
            p: p.odd_j,
            d1: d,
            b,
            o: 0,
            q: p.odd_i,
            d2: dt,
        }
        .eval(j, r2, |i| alt_binom(r2, i) * &sign_id * &gj);
        let second = PairSum {
            a,
            s: r2 as i64,
            p: p.odd_j,
            d1: dt,
            b: &bg,
            o: -1,
            q: p.odd_i,
            d2: d,
        }
        .eval(j, r2, |i| alt_binom(r2, i) * &gj);
        first + second
    };
    let y = |a: &MultiIndex, b: &MultiIndex, g: &MultiIndex| -> UElem {
        let (a1, a2) = (a.inc(j), a.inc(j).inc(j));
        let (g1, g2) = (g.inc(j), g.inc(j).inc(j));
        (x(&a2, b, g) - x(&a1, b, &g1)) - (x(&a1, b, &g1) - x(a, b, &g2))
    };
    let (a, b, g) = (&p.alpha, &p.beta, &p.gamma);
    let lhs = y(a, &b.inc(j), g) - y(a, b, &g.inc(j));
    let rhs = -omega_expansion(a, &b.add(g), p.odd_j, p.odd_i, p.r + 4, j, dt, d);
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::from_slice(v)
    }

    #[test]
    fn r_zero_is_a_single_product() {
        let dt = DerivSymbol::T(0);
        let w = omega(
            &mi(&[1]),
            &mi(&[2]),
            OddSet::EMPTY,
            OddSet::single(0),
            0,
            0,
            dt,
            DerivSymbol::Xi(0),
        )
        .unwrap();
        let x = UElem::letter(WittTerm::new(Monomial::t(1, 0), dt));
        let y = UElem::letter(WittTerm::new(
            Monomial::new(mi(&[2]), OddSet::single(0)),
            DerivSymbol::Xi(0),
        ));
        assert_eq!(w.expansion, u_product(&x, &y));
    }

    #[test]
    fn r_one_hand_expansion() {
        let dt = DerivSymbol::T(0);
        let w = omega(
            &mi(&[0]),
            &mi(&[0]),
            OddSet::EMPTY,
            OddSet::EMPTY,
            1,
            0,
            dt,
            dt,
        )
        .unwrap();
        let x = UElem::letter(WittTerm::new(Monomial::t(1, 0), dt));
        let d = UElem::letter(WittTerm::deriv(1, dt));
        assert_eq!(w.expansion, &u_product(&x, &d) - &u_product(&d, &x));
    }

    #[test]
    fn needs_even_variables() {
        let dx = DerivSymbol::Xi(0);
        let e = MultiIndex::zeros(0);
        assert_eq!(
            omega(&e, &e, OddSet::EMPTY, OddSet::EMPTY, 0, 0, dx, dx).unwrap_err(),
            Error::NoEvenVariables
        );
    }

    #[test]
    fn reduction_examples() {
        let p = ReductionParams {
            alpha: mi(&[0]),
            beta: mi(&[0]),
            gamma: mi(&[0]),
            odd_i: OddSet::EMPTY,
            odd_j: OddSet::single(0),
            r: 0,
            j: 0,
            d: DerivSymbol::Xi(0),
        };
        assert!(verify_omega_reduction(&p).unwrap());
        let q = ReductionParams {
            alpha: mi(&[1]),
            beta: mi(&[0]),
            gamma: mi(&[1]),
            odd_i: OddSet::single(0),
            odd_j: OddSet::EMPTY,
            r: 1,
            j: 0,
            d: DerivSymbol::T(0),
        };
        assert!(verify_omega_reduction(&q).unwrap());
        assert!(!omega_reduction(&q, true).unwrap().first);
    }
}
