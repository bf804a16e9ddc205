//! Simple weight modules over the Weyl superalgebra `𝒦_{m,n}`: tensor
//! products of one factor per even variable (`t^λ ℂ[t^{±1}]`, `ℂ[t]` or
//! `ℂ[t^{±1}]/ℂ[t]`) with the exterior algebra on `ξ_1..ξ_n`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, ParseError, Result};
use crate::index::{Dims, OddSet};
use crate::param::{Coeff, WeightParam};
use crate::scalar::Scalar;
use crate::superpoly::{DerivSymbol, Monomial};
use crate::ubar::{KmnGen, UWord};
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EvenFactor {
    /// `t^λ ℂ[t^{±1}]` with `λ ∉ ℤ`.
    Shifted(WeightParam),
    /// `ℂ[t]`.
    Poly,
    /// `ℂ[t^{±1}]/ℂ[t]`, basis `t^{-k}` for `k ≥ 1`.
    LaurentModPoly,
}

impl fmt::Display for EvenFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvenFactor::Shifted(l) => write!(f, "L({l})"),
            EvenFactor::Poly => write!(f, "P"),
            EvenFactor::LaurentModPoly => write!(f, "LmodP"),
        }
    }
}

impl FromStr for EvenFactor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "P" => Ok(EvenFactor::Poly),
            "LmodP" => Ok(EvenFactor::LaurentModPoly),
            _ => {
                let inner = s
                    .strip_prefix("L(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| ParseError::ModuleSpec(s.to_string()))?;
                let l: WeightParam = inner.parse()?;
                if l.is_integer() {
                    return Err(Error::IntegralShift(l.to_string()));
                }
                Ok(EvenFactor::Shifted(l))
            }
        }
    }
}

/// One factor per even variable; the `n` exterior factors are implicit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylSpec {
    pub even: Vec<EvenFactor>,
    pub n: usize,
}

impl WeylSpec {
    /// Parses a comma-separated list such as `"L(l1),P,LmodP"`; the empty
    /// string is the spec with no even variables.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let even = if s.trim().is_empty() {
            Vec::new()
        } else {
            s.split(',').map(str::parse).collect::<Result<_>>()?
        };
        Ok(WeylSpec { even, n })
    }

    pub fn dims(&self) -> Result<Dims> {
        Dims::new(self.even.len(), self.n)
    }
}

impl fmt::Display for WeylSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.even.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SupportFactor {
    /// `λ + ℤ`.
    Coset(WeightParam),
    /// `ℤ₊`.
    NonNegative,
    /// `−ℕ`.
    Negative,
}

/// `X_1 × ⋯ × X_m × {0,1}^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportDescriptor {
    pub even: Vec<SupportFactor>,
    pub n: usize,
}

impl SupportDescriptor {
    pub fn contains(&self, w: &Weight) -> bool {
        let m = self.even.len();
        if w.len() != m + self.n {
            return false;
        }
        let even_ok = self.even.iter().zip(&w.0).all(|(f, x)| match f {
            SupportFactor::Coset(l) => x.integer_offset(l).is_some(),
            SupportFactor::NonNegative => x
                .integer_offset(&WeightParam::zero())
                .is_some_and(|k| k >= 0),
            SupportFactor::Negative => x
                .integer_offset(&WeightParam::zero())
                .is_some_and(|k| k < 0),
        });
        even_ok
            && w.0[m..]
                .iter()
                .all(|x| x.is_zero() || *x == WeightParam::from_int(1))
    }
}

impl fmt::Display for SupportDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .even
            .iter()
            .map(|x| match x {
                SupportFactor::Coset(l) => format!("{l}+ℤ"),
                SupportFactor::NonNegative => "ℤ₊".into(),
                SupportFactor::Negative => "−ℕ".into(),
            })
            .collect();
        parts.extend((0..self.n).map(|_| "{0,1}".to_string()));
        write!(f, "{}", parts.join(" × "))
    }
}

pub fn weyl_support(spec: &WeylSpec) -> SupportDescriptor {
    SupportDescriptor {
        even: spec
            .even
            .iter()
            .map(|f| match f {
                EvenFactor::Shifted(l) => SupportFactor::Coset(l.clone()),
                EvenFactor::Poly => SupportFactor::NonNegative,
                EvenFactor::LaurentModPoly => SupportFactor::Negative,
            })
            .collect(),
        n: spec.n,
    }
}

/// The basis vector `t^{λ+k} ξ^ε` (integer exponents `k`, shifts `λ` taken
/// from the spec).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct PKey {
    pub k: SmallVec<[i64; 4]>,
    pub eps: OddSet,
}

/// Prints `t^(k₁,…)ξ{…}` with offsets relative to the shifts.
impl fmt::Display for PKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ks: Vec<String> = self.k.iter().map(i64::to_string).collect();
        write!(f, "t^({})", ks.join(","))?;
        if !self.eps.is_empty() {
            write!(f, "xi{}", self.eps)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct WeylModule {
    pub spec: WeylSpec,
    pub dims: Dims,
    /// Exponents range over `[-w, w]` (`[0, w]` for `ℂ[t]`, `[-w, -1]` for
    /// `ℂ[t^{±1}]/ℂ[t]`).
    pub window: u32,
}

impl WeylModule {
    pub fn new(spec: WeylSpec, window: u32) -> Result<Self> {
        let dims = spec.dims()?;
        Ok(WeylModule { spec, dims, window })
    }

    fn range(&self, f: &EvenFactor) -> (i64, i64) {
        let w = self.window as i64;
        match f {
            EvenFactor::Shifted(_) => (-w, w),
            EvenFactor::Poly => (0, w),
            EvenFactor::LaurentModPoly => (-w, -1),
        }
    }

    pub fn in_support(&self, key: &PKey) -> bool {
        self.spec.even.iter().zip(&key.k).all(|(f, &k)| match f {
            EvenFactor::Shifted(_) => true,
            EvenFactor::Poly => k >= 0,
            EvenFactor::LaurentModPoly => k <= -1,
        })
    }

    pub fn in_window(&self, key: &PKey) -> bool {
        self.spec.even.iter().zip(&key.k).all(|(f, &k)| {
            let (lo, hi) = self.range(f);
            lo <= k && k <= hi
        })
    }

    /// Window basis, sorted.
    pub fn basis(&self) -> Vec<PKey> {
        let mut ks: Vec<SmallVec<[i64; 4]>> = vec![SmallVec::new()];
        for f in &self.spec.even {
            let (lo, hi) = self.range(f);
            ks = ks
                .into_iter()
                .flat_map(|p| {
                    (lo..=hi).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        let mut out: Vec<PKey> = ks
            .into_iter()
            .flat_map(|k| {
                OddSet::all(self.spec.n)
                    .into_iter()
                    .map(move |eps| PKey { k: k.clone(), eps })
            })
            .collect();
        out.sort();
        out
    }

    pub fn weight(&self, key: &PKey) -> Weight {
        let mut w: Vec<WeightParam> = self
            .spec
            .even
            .iter()
            .zip(&key.k)
            .map(|(f, &k)| match f {
                EvenFactor::Shifted(l) => l.shift(k),
                _ => WeightParam::from_int(k),
            })
            .collect();
        w.extend((0..self.spec.n).map(|j| WeightParam::from_int(key.eps.contains(j) as i64)));
        Weight(w)
    }

    /// The basis vector of weight `w`, if `w` lies in the support.
    pub fn key_of_weight(&self, w: &Weight) -> Option<PKey> {
        let m = self.spec.even.len();
        if w.len() != m + self.spec.n {
            return None;
        }
        let mut k = SmallVec::new();
        for (f, x) in self.spec.even.iter().zip(&w.0) {
            let e = match f {
                EvenFactor::Shifted(l) => x.integer_offset(l)?,
                _ => x.integer_offset(&WeightParam::zero())?,
            };
            k.push(e);
        }
        let mut eps = OddSet::EMPTY;
        for j in 0..self.spec.n {
            match w.0[m + j].integer_offset(&WeightParam::zero())? {
                0 => {}
                1 => eps = eps.insert(j),
                _ => return None,
            }
        }
        let key = PKey { k, eps };
        self.in_support(&key).then_some(key)
    }

    pub fn parity(&self, key: &PKey) -> u32 {
        key.eps.len() % 2
    }

    /// `g · key`, or `None` when the result is zero.
    pub fn weyl_action(&self, g: KmnGen, key: &PKey) -> Option<(Coeff, PKey)> {
        let mut out = key.clone();
        match g {
            KmnGen::T(i) => {
                if self.spec.even[i] == EvenFactor::LaurentModPoly && key.k[i] == -1 {
                    return None;
                }
                out.k[i] += 1;
                Some((Coeff::one(), out))
            }
            KmnGen::D(DerivSymbol::T(i)) => {
                let c = match &self.spec.even[i] {
                    EvenFactor::Shifted(l) => l.shift(key.k[i]).to_coeff(),
                    _ => Coeff::from_int(key.k[i]),
                };
                if c.is_zero() {
                    return None;
                }
                out.k[i] -= 1;
                Some((c, out))
            }
            KmnGen::Xi(j) => {
                if key.eps.contains(j) {
                    return None;
                }
                out.eps = key.eps.insert(j);
                Some((Coeff::from(Scalar::sign(key.eps.count_below(j))), out))
            }
            KmnGen::D(DerivSymbol::Xi(j)) => {
                if !key.eps.contains(j) {
                    return None;
                }
                out.eps = key.eps.remove(j);
                Some((Coeff::from(Scalar::sign(key.eps.count_below(j))), out))
            }
        }
    }

    /// Applies a word of generators, rightmost first.
    pub fn act_gens(&self, word: &[KmnGen], key: &PKey) -> Option<(Coeff, PKey)> {
        let mut c = Coeff::one();
        let mut cur = key.clone();
        for g in word.iter().rev() {
            let (x, next) = self.weyl_action(*g, &cur)?;
            c = &c * &x;
            cur = next;
        }
        Some((c, cur))
    }

    /// Applies a normal word `t^α ξ_I · ∂_1 ⋯ ∂_k` of `𝒦_{m,n}`.
    pub fn act_uword(&self, w: &UWord, key: &PKey) -> Result<Option<(Coeff, PKey)>> {
        let mut word: Vec<KmnGen> = Vec::new();
        word.extend(monomial_gens(&w.prefix));
        for x in &w.letters {
            if !x.0.mono.is_one() {
                return Err(Error::OutsideWeyl);
            }
            word.push(KmnGen::D(x.0.d));
        }
        Ok(self.act_gens(&word, key))
    }
}

/// `t^α ξ_I` as the generator word `t_1^{α_1} ⋯ t_m^{α_m} ξ_{i_1} ⋯ ξ_{i_k}`.
pub fn monomial_gens(a: &Monomial) -> Vec<KmnGen> {
    let mut out = Vec::new();
    for (i, &e) in a.alpha.as_slice().iter().enumerate() {
        out.extend((0..e).map(|_| KmnGen::T(i)));
    }
    out.extend(a.odd.iter().map(KmnGen::Xi));
    out
}
