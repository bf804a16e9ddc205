//! The homomorphism `π : W ⋉ A → 𝒦_{m,n} ⊗ U(gl(m,n))`.
//!
//! `π(t^α ξ_I ∂_c) = t^α ξ_I ∂_c ⊗ 1 + Σ_k α_k t^{α-e_k} ξ_I ⊗ E_{k,c}
//!   + (-1)^{|I|-1} Σ_k ∂_{ξ_k}(t^α ξ_I) ⊗ E_{m+k,c}` and `π(a) = a ⊗ 1`.

use std::fmt;

use serde::Serialize;
use smallvec::smallvec;

use crate::gl::{gl_engine, GlUnit, GlWord};
use crate::index::{Dims, MultiIndex};
use crate::lincomb::LinComb;
use crate::pbw::word_parity;
use crate::scalar::Scalar;
use crate::superpoly::{DerivSymbol, Monomial, SuperPoly};
use crate::ubar::{u_product, Letter, UElem, UWord};
use crate::witt::{ExtWittElem, WittElem, WittTerm};

/// `k ⊗ g` with `k` a normal word of `𝒦_{m,n}` and `g` a PBW word of
/// `U(gl(m,n))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PiKey {
    pub k: UWord,
    pub g: GlWord,
}

impl PiKey {
    pub fn parity(&self) -> u32 {
        (self.k.parity() + word_parity(&self.g)) % 2
    }
}

impl fmt::Display for PiKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊗ ", self.k)?;
        if self.g.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.g.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("·"))
    }
}

impl fmt::Debug for PiKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type PiImage = LinComb<PiKey>;

/// A basis element of `W ⋉ A`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum PiGen {
    Witt(WittTerm),
    Poly(Monomial),
}

impl PiGen {
    pub fn parity(&self) -> u32 {
        match self {
            PiGen::Witt(x) => x.parity(),
            PiGen::Poly(a) => a.parity(),
        }
    }

    pub fn to_ext(&self) -> ExtWittElem {
        match self {
            PiGen::Witt(x) => ExtWittElem::from_witt(WittElem::from_term(x.clone())),
            PiGen::Poly(a) => ExtWittElem::from_poly(SuperPoly::monomial(a.clone())),
        }
    }

    /// All Witt terms and monomials with `|α| ≤ d`.
    pub fn all(dims: Dims, d: u32) -> Vec<PiGen> {
        let mut out: Vec<PiGen> = WittTerm::all(dims, d)
            .into_iter()
            .map(PiGen::Witt)
            .collect();
        out.extend(
            Monomial::all(dims.m, dims.n, d)
                .into_iter()
                .map(PiGen::Poly),
        );
        out
    }
}

impl fmt::Display for PiGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PiGen::Witt(x) => write!(f, "{x}"),
            PiGen::Poly(a) => write!(f, "{a}"),
        }
    }
}

/// `Exact` is `π`; `DropSign` omits the factor `(-1)^{|I|-1}` and serves as a
/// mutation control.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
pub enum PiVariant {
    #[default]
    Exact,
    DropSign,
}

fn key(prefix: Monomial, letter: Option<WittTerm>, g: GlWord) -> PiKey {
    PiKey {
        k: UWord {
            prefix,
            letters: letter.into_iter().map(Letter).collect(),
        },
        g,
    }
}

pub fn pi_of_witt(dims: Dims, x: &WittTerm, variant: PiVariant) -> PiImage {
    let m = dims.m;
    let col = x.d.index(m);
    let unit = |row: usize| GlUnit {
        m: m as u8,
        a: row as u8,
        b: col as u8,
    };
    let mut out = PiImage::zero();
    out.add_term(
        key(x.mono.clone(), Some(WittTerm::deriv(m, x.d)), smallvec![]),
        Scalar::one(),
    );
    for k in 0..m {
        let a = x.mono.alpha.get(k);
        if a == 0 {
            continue;
        }
        let lowered = x.mono.alpha.shifted(k, -1).expect("positive exponent");
        out.add_term(
            key(Monomial::new(lowered, x.mono.odd), None, smallvec![unit(k)]),
            Scalar::from_int(a as i64),
        );
    }
    let odd_len = x.mono.odd.len();
    if odd_len > 0 {
        let sign = match variant {
            PiVariant::Exact => Scalar::sign(odd_len - 1),
            PiVariant::DropSign => Scalar::one(),
        };
        for k in 0..dims.n {
            if let Some((c, mono)) = DerivSymbol::Xi(k).apply_mono(&x.mono) {
                out.add_term(key(mono, None, smallvec![unit(m + k)]), &c * &sign);
            }
        }
    }
    out
}

pub fn pi_of_generator(dims: Dims, x: &PiGen, variant: PiVariant) -> PiImage {
    match x {
        PiGen::Witt(w) => pi_of_witt(dims, w, variant),
        PiGen::Poly(a) => PiImage::basis(key(a.clone(), None, smallvec![])),
    }
}

/// `π` extended linearly to `W ⋉ A`.
pub fn pi_of_ext(dims: Dims, x: &ExtWittElem, variant: PiVariant) -> PiImage {
    let mut out = PiImage::zero();
    for (w, c) in x.w.iter() {
        out.add_scaled(&pi_of_witt(dims, w, variant), c);
    }
    for (a, c) in x.a.iter() {
        out.add_term(key(a.clone(), None, smallvec![]), c.clone());
    }
    out
}

/// `(k₁ ⊗ g₁)(k₂ ⊗ g₂) = (-1)^{|g₁||k₂|} k₁k₂ ⊗ g₁g₂`.
pub fn tensor_product(x: &PiImage, y: &PiImage) -> PiImage {
    let mut out = PiImage::zero();
    for (p, c) in x.iter() {
        for (q, d) in y.iter() {
            let sign = Scalar::sign(word_parity(&p.g) * q.k.parity());
            let coef = &(c * d) * &sign;
            let ks = u_product(&UElem::basis(p.k.clone()), &UElem::basis(q.k.clone()));
            if ks.is_zero() {
                continue;
            }
            let mut w: GlWord = p.g.clone();
            w.extend(q.g.iter().copied());
            let gs = gl_engine().normalize(&w);
            for (k, a) in ks.iter() {
                for (g, b) in gs.iter() {
                    out.add_term(
                        PiKey {
                            k: k.clone(),
                            g: g.clone(),
                        },
                        &(&coef * a) * b,
                    );
                }
            }
        }
    }
    out
}

/// `[X, Y] = XY - (-1)^{|X||Y|} YX` for homogeneous images.
pub fn tensor_bracket(x: &PiImage, y: &PiImage, px: u32, py: u32) -> PiImage {
    let mut out = tensor_product(x, y);
    out.add_scaled(&tensor_product(y, x), &-Scalar::sign(px * py));
    out
}

/// `π([x, y]) = [π(x), π(y)]`.
pub fn verify_pi_homomorphism(dims: Dims, x: &PiGen, y: &PiGen, variant: PiVariant) -> bool {
    let br = x.to_ext().bracket(&y.to_ext());
    let lhs = pi_of_ext(dims, &br, variant);
    let rhs = tensor_bracket(
        &pi_of_generator(dims, x, variant),
        &pi_of_generator(dims, y, variant),
        x.parity(),
        y.parity(),
    );
    lhs == rhs
}

/// `π(d_i) = d_i ⊗ 1 + 1 ⊗ E_{i,i}` and `π(δ_j) = δ_j ⊗ 1 + 1 ⊗ E_{m+j,m+j}`,
/// compared both as elements and as printed strings.
pub fn pi_cartan_matches(dims: Dims) -> bool {
    let m = dims.m;
    let zero = MultiIndex::zeros(m);
    let mut cases: Vec<(Monomial, DerivSymbol, usize)> = (0..m)
        .map(|i| (Monomial::t(m, i), DerivSymbol::T(i), i))
        .collect();
    cases.extend((0..dims.n).map(|j| (Monomial::xi(m, j), DerivSymbol::Xi(j), m + j)));
    cases.into_iter().all(|(mono, d, diag)| {
        let got = pi_of_witt(dims, &WittTerm::new(mono.clone(), d), PiVariant::Exact);
        let e = GlUnit {
            m: m as u8,
            a: diag as u8,
            b: diag as u8,
        };
        let mut want = PiImage::zero();
        want.add_term(
            key(mono.clone(), Some(WittTerm::deriv(m, d)), smallvec![]),
            Scalar::one(),
        );
        want.add_term(
            key(
                Monomial::new(zero.clone(), Default::default()),
                None,
                smallvec![e],
            ),
            Scalar::one(),
        );
        let text = format!("1 ⊗ {e} + {mono}·[{}] ⊗ 1", WittTerm::deriv(m, d));
        got == want && got.to_string() == text
    })
}
