//! The quotient `Ū = U(W ⋉ A)/𝒥 = A·U(W)`, where the enveloping copy of `A`
//! is identified with `A` itself.
//!
//! Normal words are `t^γ ξ_K · x_1 ⋯ x_k` with a single monomial prefix and
//! PBW-normal Witt letters. The family `X_{α,I,∂}`, the `A`-basis
//! decomposition of `A·W` and the Weyl superalgebra `𝒦_{m,n}` live here.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::index::{binom_multi, tau_unchecked, MultiIndex, OddSet};
use crate::lincomb::LinComb;
use crate::pbw::{LieLetter, PbwEngine, Word};
use crate::scalar::Scalar;
use crate::superpoly::{DerivSymbol, Monomial, SuperPoly};
use crate::witt::{WittElem, WittTerm};

/// A Witt basis element used as a PBW letter, ordered by
/// `(|α| + |I|, ∂, α, I)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Letter(pub WittTerm);

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        a.mono
            .degree()
            .cmp(&b.mono.degree())
            .then_with(|| a.d.cmp(&b.d))
            .then_with(|| a.mono.alpha.cmp(&b.mono.alpha))
            .then_with(|| a.mono.odd.cmp(&b.mono.odd))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl LieLetter for Letter {
    fn parity(&self) -> u32 {
        self.0.parity()
    }

    fn bracket(&self, other: &Self) -> Vec<(Self, Scalar)> {
        self.0
            .bracket(&other.0)
            .into_iter()
            .map(|(t, c)| (Letter(t), c))
            .collect()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `prefix · letters` in normal form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct UWord {
    pub prefix: Monomial,
    pub letters: Word<Letter>,
}

impl UWord {
    pub fn parity(&self) -> u32 {
        (self.prefix.parity() + self.letters.iter().map(LieLetter::parity).sum::<u32>()) % 2
    }
}

impl fmt::Display for UWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() || !self.prefix.is_one() {
            write!(f, "{}", self.prefix)?;
        }
        for (k, x) in self.letters.iter().enumerate() {
            if k > 0 || !self.prefix.is_one() {
                write!(f, "·")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for UWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of `Ū` in normal form.
pub type UElem = LinComb<UWord>;

struct Engine {
    pbw: PbwEngine<Letter>,
    xs: DashMap<(MultiIndex, OddSet, DerivSymbol), Arc<UElem>>,
}

fn engine() -> &'static Engine {
    static ENGINE: OnceLock<Engine> = OnceLock::new();
    ENGINE.get_or_init(|| Engine {
        pbw: PbwEngine::new(),
        xs: DashMap::new(),
    })
}

/// Number of memoized word normal forms (diagnostics).
pub fn memo_size() -> usize {
    engine().pbw.memo_len()
}

/// `(x_1 ⋯ x_k) · a` rewritten as `Σ c · b · s` with `b` a monomial and `s`
/// a subsequence of the letters, using `x·a = (-1)^{|x||a|} a·x + x(a)`.
fn move_left(letters: &[Letter], a: &Monomial) -> Vec<(Scalar, Monomial, Word<Letter>)> {
    let Some((last, init)) = letters.split_last() else {
        return vec![(Scalar::one(), a.clone(), SmallVec::new())];
    };
    let mut out = Vec::new();
    let sign = Scalar::sign(last.parity() * a.parity());
    for (c, b, mut s) in move_left(init, a) {
        s.push(last.clone());
        out.push((c * &sign, b, s));
    }
    for (b, c) in last.0.act_mono(a) {
        for (k, q, s) in move_left(init, &b) {
            out.push((k * &c, q, s));
        }
    }
    out
}

impl UElem {
    pub fn one(m: usize) -> Self {
        UElem::from_mono(Monomial::one(m))
    }

    pub fn from_mono(a: Monomial) -> Self {
        UElem::basis(UWord {
            prefix: a,
            letters: SmallVec::new(),
        })
    }

    pub fn from_poly(a: &SuperPoly) -> Self {
        a.map_keys(|x| UWord {
            prefix: x.clone(),
            letters: SmallVec::new(),
        })
    }

    /// The Witt basis element `t^α ξ_I ∂` as a single letter.
    pub fn letter(x: WittTerm) -> Self {
        let m = x.mono.alpha.len();
        let mut letters = SmallVec::new();
        letters.push(Letter(x));
        UElem::basis(UWord {
            prefix: Monomial::one(m),
            letters,
        })
    }

    pub fn from_witt(x: &WittElem) -> Self {
        x.map_keys(|t| {
            let m = t.mono.alpha.len();
            let mut letters = SmallVec::new();
            letters.push(Letter(t.clone()));
            UWord {
                prefix: Monomial::one(m),
                letters,
            }
        })
    }

    /// `a · x` for a monomial prefix and a Witt letter; already normal.
    pub fn prefixed_letter(a: Monomial, x: WittTerm) -> Self {
        let mut letters = SmallVec::new();
        letters.push(Letter(x));
        UElem::basis(UWord { prefix: a, letters })
    }

    pub fn mul(&self, other: &UElem) -> UElem {
        u_product(self, other)
    }

    /// The superbracket, extended bilinearly from normal words.
    pub fn bracket(&self, other: &UElem) -> UElem {
        u_bracket(self, other)
    }

    pub fn parity(&self) -> Option<u32> {
        let mut it = self.keys().map(UWord::parity);
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }

    /// Largest number of Witt letters in any word.
    pub fn max_letters(&self) -> usize {
        self.keys().map(|w| w.letters.len()).max().unwrap_or(0)
    }
}

/// The associative product on normal forms.
pub fn u_product(a: &UElem, b: &UElem) -> UElem {
    let eng = engine();
    let mut out = UElem::zero();
    for (u, x) in a.iter() {
        for (v, y) in b.iter() {
            let xy = x * y;
            for (c, q, s) in move_left(&u.letters, &v.prefix) {
                let Some((sign, prefix)) = u.prefix.mul(&q) else {
                    continue;
                };
                let coef = &xy * &(c * sign);
                let mut w = s;
                w.extend(v.letters.iter().cloned());
                if PbwEngine::is_normal(&w) {
                    out.add_term(
                        UWord {
                            prefix: prefix.clone(),
                            letters: w,
                        },
                        coef,
                    );
                    continue;
                }
                for (nw, k) in eng.pbw.normalize(&w).iter() {
                    out.add_term(
                        UWord {
                            prefix: prefix.clone(),
                            letters: nw.clone(),
                        },
                        &coef * k,
                    );
                }
            }
        }
    }
    out
}

/// `[u, v] = uv - (-1)^{|u||v|} vu` on normal words, extended bilinearly.
pub fn u_bracket(a: &UElem, b: &UElem) -> UElem {
    let mut out = UElem::zero();
    for (u, x) in a.iter() {
        for (v, y) in b.iter() {
            let uu = UElem::term(u.clone(), x.clone());
            let vv = UElem::term(v.clone(), y.clone());
            let sign = Scalar::sign(u.parity() * v.parity() + 1);
            out = out + u_product(&uu, &vv);
            out.add_scaled(&u_product(&vv, &uu), &sign);
        }
    }
    out
}

/// `X_{α,I,∂} = Σ_{β≤α, J⊆I} (-1)^{|β|+|J|+τ(J,I∖J)} (α choose β) t^β ξ_J · t^{α-β} ξ_{I∖J} ∂`.
#[derive(Clone, Debug)]
pub struct XElem {
    pub alpha: MultiIndex,
    pub odd: OddSet,
    pub d: DerivSymbol,
    pub expansion: Arc<UElem>,
}

pub fn x_elem(alpha: &MultiIndex, odd: OddSet, d: DerivSymbol) -> XElem {
    let key = (alpha.clone(), odd, d);
    let eng = engine();
    let expansion = match eng.xs.get(&key) {
        Some(hit) => Arc::clone(hit.value()),
        None => {
            let e = Arc::new(x_expansion(alpha, odd, d));
            eng.xs.insert(key, Arc::clone(&e));
            e
        }
    };
    XElem {
        alpha: alpha.clone(),
        odd,
        d,
        expansion,
    }
}

fn x_expansion(alpha: &MultiIndex, odd: OddSet, d: DerivSymbol) -> UElem {
    let mut out = UElem::zero();
    for beta in alpha.below() {
        let rest = alpha.checked_sub(&beta).expect("β ≤ α");
        for j in odd.subsets() {
            let k = odd.minus(j);
            let e = beta.total() + j.len() + tau_unchecked(j, k);
            let coef = Scalar::sign(e) * binom_multi(alpha, &beta);
            out.add_term(
                UWord {
                    prefix: Monomial::new(beta.clone(), j),
                    letters: smallvec::smallvec![Letter(WittTerm::from_parts(rest.clone(), k, d))],
                },
                coef,
            );
        }
    }
    out
}

/// Probe for the centrality check: an element of `A` or of `Δ`.
#[derive(Clone, Debug)]
pub enum Probe {
    Poly(SuperPoly),
    Deriv(DerivSymbol),
}

/// `[X_{α,I,∂}, probe] = 0` in `Ū`.
pub fn verify_t_central(alpha: &MultiIndex, odd: OddSet, d: DerivSymbol, probe: &Probe) -> bool {
    let x = x_elem(alpha, odd, d);
    let p = match probe {
        Probe::Poly(a) => UElem::from_poly(a),
        Probe::Deriv(e) => UElem::letter(WittTerm::deriv(alpha.len(), *e)),
    };
    u_bracket(&x.expansion, &p).is_zero()
}

pub type ABasisKey = (MultiIndex, OddSet, DerivSymbol);

/// Coefficients `c_{α,I,∂} ∈ A` with `w = Σ c_{α,I,∂} · X_{α,I,∂}`, via
/// `t^α ξ_I ∂ = Σ (α choose β) (-1)^{τ(J,I∖J)} t^β ξ_J · X_{α-β,I∖J,∂}`.
pub fn decompose_in_a_basis(w: &UElem) -> Result<BTreeMap<ABasisKey, SuperPoly>> {
    let mut out: BTreeMap<ABasisKey, SuperPoly> = BTreeMap::new();
    for (word, c) in w.iter() {
        if word.letters.len() != 1 {
            return Err(Error::OutsideAW);
        }
        let x = &word.letters[0].0;
        let (alpha, odd) = (&x.mono.alpha, x.mono.odd);
        for beta in alpha.below() {
            let rest = alpha.checked_sub(&beta).expect("β ≤ α");
            for j in odd.subsets() {
                let k = odd.minus(j);
                let coef = Scalar::sign(tau_unchecked(j, k)) * binom_multi(alpha, &beta) * c;
                let Some((s, q)) = word.prefix.mul(&Monomial::new(beta.clone(), j)) else {
                    continue;
                };
                let entry = out.entry((rest.clone(), k, x.d)).or_default();
                entry.add_term(q, coef * s);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// `Σ c_{α,I,∂} · X_{α,I,∂}`.
pub fn reconstruct_from_a_basis(coeffs: &BTreeMap<ABasisKey, SuperPoly>) -> UElem {
    let mut out = UElem::zero();
    for ((alpha, odd, d), c) in coeffs {
        let x = x_elem(alpha, *odd, *d);
        out = out + u_product(&UElem::from_poly(c), &x.expansion);
    }
    out
}

/// Generators of the Weyl superalgebra `𝒦_{m,n}` (0-based).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KmnGen {
    T(usize),
    Xi(usize),
    D(DerivSymbol),
}

/// The product of a word in the generators of `𝒦_{m,n}`, normal-formed in `Ū`.
pub fn kmn_inject(m: usize, word: &[KmnGen]) -> UElem {
    let mut out = UElem::one(m);
    for g in word {
        let e = match g {
            KmnGen::T(i) => UElem::from_mono(Monomial::t(m, *i)),
            KmnGen::Xi(j) => UElem::from_mono(Monomial::xi(m, *j)),
            KmnGen::D(d) => UElem::letter(WittTerm::deriv(m, *d)),
        };
        out = u_product(&out, &e);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_t() -> UElem {
        UElem::from_mono(Monomial::t(1, 0))
    }

    fn dt() -> UElem {
        UElem::letter(WittTerm::deriv(1, DerivSymbol::T(0)))
    }

    #[test]
    fn weyl_relation() {
        let lhs = u_product(&dt(), &one_t());
        let want = &u_product(&one_t(), &dt()) + &UElem::one(1);
        assert_eq!(lhs, want);
        assert_eq!(lhs.len(), 2);
    }

    #[test]
    fn odd_derivation_squares_to_zero() {
        let d = UElem::letter(WittTerm::deriv(1, DerivSymbol::Xi(0)));
        assert!(u_product(&d, &d).is_zero());
    }

    #[test]
    fn ideal_relation() {
        let t2 = UElem::from_mono(Monomial::t(2, 1));
        let t1 = UElem::from_mono(Monomial::t(2, 0));
        let p = u_product(&t1, &t2);
        assert_eq!(
            p,
            UElem::from_mono(Monomial::new(
                MultiIndex::from_slice(&[1, 1]),
                OddSet::EMPTY
            ))
        );
    }

    #[test]
    fn x_examples() {
        let dt1 = DerivSymbol::T(0);
        let x0 = x_elem(&MultiIndex::zeros(1), OddSet::EMPTY, dt1);
        assert_eq!(*x0.expansion, dt());
        let x1 = x_elem(&MultiIndex::unit(1, 0), OddSet::EMPTY, dt1);
        let want =
            &UElem::letter(WittTerm::new(Monomial::t(1, 0), dt1)) - &u_product(&one_t(), &dt());
        assert_eq!(*x1.expansion, want);
        let dx = DerivSymbol::Xi(0);
        let x2 = x_elem(&MultiIndex::zeros(1), OddSet::single(0), dx);
        let want = &UElem::letter(WittTerm::new(Monomial::xi(1, 0), dx))
            - &u_product(
                &UElem::from_mono(Monomial::xi(1, 0)),
                &UElem::letter(WittTerm::deriv(1, dx)),
            );
        assert_eq!(*x2.expansion, want);
    }

    #[test]
    fn centrality_examples() {
        let t1 = Probe::Poly(SuperPoly::monomial(Monomial::t(1, 0)));
        assert!(verify_t_central(
            &MultiIndex::unit(1, 0),
            OddSet::EMPTY,
            DerivSymbol::T(0),
            &t1
        ));
        assert!(!verify_t_central(
            &MultiIndex::zeros(1),
            OddSet::EMPTY,
            DerivSymbol::T(0),
            &t1
        ));
        assert!(verify_t_central(
            &MultiIndex::zeros(1),
            OddSet::single(0),
            DerivSymbol::Xi(0),
            &Probe::Deriv(DerivSymbol::Xi(0))
        ));
    }

    #[test]
    fn decomposition_examples() {
        let dt1 = DerivSymbol::T(0);
        let w = UElem::letter(WittTerm::new(Monomial::t(1, 0), dt1));
        let dec = decompose_in_a_basis(&w).unwrap();
        assert_eq!(dec.len(), 2);
        assert_eq!(
            dec[&(MultiIndex::zeros(1), OddSet::EMPTY, dt1)],
            SuperPoly::monomial(Monomial::t(1, 0))
        );
        assert_eq!(
            dec[&(MultiIndex::unit(1, 0), OddSet::EMPTY, dt1)],
            SuperPoly::one(1)
        );
        assert_eq!(reconstruct_from_a_basis(&dec), w);
        let two = u_product(&dt(), &dt());
        assert_eq!(decompose_in_a_basis(&two), Err(Error::OutsideAW));
    }

    #[test]
    fn clifford_relation() {
        let d = KmnGen::D(DerivSymbol::Xi(0));
        let x = KmnGen::Xi(0);
        let s = &kmn_inject(1, &[d, x]) + &kmn_inject(1, &[x, d]);
        assert_eq!(s, UElem::one(1));
        assert!(kmn_inject(1, &[x, x]).is_zero());
    }
}
