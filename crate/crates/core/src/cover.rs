//! ω-annihilation on tensor modules and the windowed A-cover
//! `V̂ = (W ⊗ V)/X(V)` with `θ(x ⊗ v) = x·v` and
//! `X(V) = {z ∈ Ker θ : A·z ⊆ Ker θ}`.
//!
//! For `V = F(P, M)`, `π(a x) = (a ⊗ 1)π(x) + Σ_k ∂_k(a)·(first order terms)`,
//! so `θ(a z) = a·θ(z) + Σ_k ∂_{t_k}(a)·ψ_k(z) ± Σ_k ∂_{ξ_k}(a)·ψ'_k(z)`
//! with `ψ_k(z) = θ(t_k z) - t_k θ(z)` and `ψ'_k(z) = θ(ξ_k z) - ξ_k θ(z)`.
//! Hence `z ∈ X(V)` iff `θ(z)`, `θ(t_k z)` and `θ(ξ_k z)` all vanish, which
//! makes `X(V)` computable exactly one weight space at a time.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::{binom_u, MultiIndex, OddSet};
use crate::linalg::{add_entry, axpy, Echelon, SVec};
use crate::param::Coeff;
use crate::scalar::Scalar;
use crate::superpoly::{DerivSymbol, Monomial};
use crate::tensor::{basis_vec, FKey, FVec, TensorModule};
use crate::weight::Weight;
use crate::weyl::EvenFactor;
use crate::witt::WittTerm;

/// Elements of `W ⊗ V`.
pub type WVec = SVec<(WittTerm, FKey)>;

/// One parameter set `(α, β, I, J, j, ∂, ∂')` of `ω^{r,j,∂,∂'}_{α,β,I,J}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct OmegaParams {
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
    pub odd_i: OddSet,
    pub odd_j: OddSet,
    pub j: usize,
    pub d: DerivSymbol,
    pub d2: DerivSymbol,
}

impl OmegaParams {
    /// `(t^{α+(r-i)e_j} ξ_I ∂, t^{β+ie_j} ξ_J ∂')` for `i = 0..=r`.
    pub fn pairs(&self, r: u32) -> Vec<(Scalar, WittTerm, WittTerm)> {
        (0..=r)
            .map(|i| {
                let c = &Scalar::sign(i) * &binom_u(r, i);
                let a = self.alpha.shifted(self.j, (r - i) as i64).expect("raising");
                let b = self.beta.shifted(self.j, i as i64).expect("raising");
                (
                    c,
                    WittTerm::from_parts(a, self.odd_i, self.d),
                    WittTerm::from_parts(b, self.odd_j, self.d2),
                )
            })
            .collect()
    }
}

/// The grid `α, β ∈ {0..=entry_max}^m`, all `I, J`, `j`, `∂`, `∂'`.
pub fn omega_grid(m: usize, n: usize, entry_max: u32) -> Vec<OmegaParams> {
    let boxes = MultiIndex::all_in_box(m, entry_max);
    let sets = OddSet::all(n);
    let ds = DerivSymbol::all(m, n);
    let mut out = Vec::new();
    for alpha in &boxes {
        for beta in &boxes {
            for &odd_i in &sets {
                for &odd_j in &sets {
                    for j in 0..m {
                        for &d in &ds {
                            for &d2 in &ds {
                                out.push(OmegaParams {
                                    alpha: alpha.clone(),
                                    beta: beta.clone(),
                                    odd_i,
                                    odd_j,
                                    j,
                                    d,
                                    d2,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaSampling {
    pub entry_max: u32,
    /// Cap on parameter sets; larger grids are subsampled with `seed`.
    pub max_params: usize,
    /// Cap on module vectors.
    pub max_vectors: usize,
    pub seed: u64,
}

impl Default for OmegaSampling {
    fn default() -> Self {
        OmegaSampling {
            entry_max: 2,
            max_params: 4000,
            max_vectors: 6,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RStatus {
    pub r: u32,
    pub applications: usize,
    pub nonzero: usize,
    pub truncated: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnnihilationReport {
    pub r_max: u32,
    pub minimal_r: Option<u32>,
    pub per_r: Vec<RStatus>,
    /// A nonzero application at `minimal_r - 1`.
    pub witness: Option<String>,
    pub params: usize,
    pub vectors: Vec<String>,
    /// Annihilation at `r` persists for every larger searched `r`.
    pub monotone: bool,
}

/// `ω·v = Σ_i (-1)^i (r choose i) x_i·(y_i·v)`.
pub fn apply_omega(f: &TensorModule, p: &OmegaParams, r: u32, v: &FVec) -> (FVec, bool) {
    let mut out = FVec::new();
    let mut edge = false;
    for (c, x, y) in p.pairs(r) {
        let (yv, e1) = f.act_witt(&y, v);
        let (xyv, e2) = f.act_witt(&x, &yv);
        edge |= e1 || e2;
        axpy(&mut out, &Coeff::from(c), &xyv);
    }
    (out, edge)
}

/// Basis vectors away from the window boundary (the support boundary of
/// `ℂ[t]` does not count) with untruncated `M`-component.
pub fn interior_basis(f: &TensorModule) -> Vec<FKey> {
    let w = f.p.window as i64;
    f.basis()
        .into_iter()
        .filter(|(p, j)| {
            f.m.is_interior(*j)
                && f.p.spec.even.iter().zip(&p.k).all(|(e, &k)| match e {
                    EvenFactor::Poly => k < w,
                    EvenFactor::LaurentModPoly => k > -w,
                    EvenFactor::Shifted(_) => -w < k && k < w,
                })
        })
        .collect()
}

pub fn omega_annihilation_search(
    f: &TensorModule,
    r_max: u32,
    sampling: &OmegaSampling,
) -> Result<AnnihilationReport> {
    let (m, n) = (f.dims.m, f.dims.n);
    if m == 0 {
        return Err(Error::NoEvenVariables);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    let mut vectors = interior_basis(f);
    if vectors.is_empty() {
        return Err(Error::NoInterior);
    }
    if vectors.len() > sampling.max_vectors {
        vectors.shuffle(&mut rng);
        vectors.truncate(sampling.max_vectors);
        vectors.sort();
    }
    let mut params = omega_grid(m, n, sampling.entry_max);
    if params.len() > sampling.max_params {
        params.shuffle(&mut rng);
        params.truncate(sampling.max_params);
        params.sort();
    }
    let mut per_r = Vec::new();
    let mut witnesses: Vec<Option<String>> = Vec::new();
    for r in 0..=r_max {
        let results: Vec<(bool, bool, usize, usize)> = params
            .par_iter()
            .flat_map_iter(|p| vectors.iter().enumerate().map(move |(vi, v)| (p, vi, v)))
            .map(|(p, vi, v)| {
                let (y, edge) = apply_omega(f, p, r, &basis_vec(v.clone()));
                let pi = params.binary_search(p).unwrap_or(0);
                (!y.is_empty(), edge, pi, vi)
            })
            .collect();
        let nonzero = results.iter().filter(|x| x.0).count();
        let truncated = results.iter().filter(|x| x.1).count();
        let witness = results.iter().find(|x| x.0).map(|&(_, _, pi, vi)| {
            let p = &params[pi];
            let v = &vectors[vi];
            format!(
                "r={r} alpha={} beta={} I={} J={} j={} d={} d'={} v={}⊗{}",
                p.alpha,
                p.beta,
                p.odd_i,
                p.odd_j,
                p.j + 1,
                p.d,
                p.d2,
                v.0,
                f.m.labels[v.1]
            )
        });
        per_r.push(RStatus {
            r,
            applications: results.len(),
            nonzero,
            truncated,
        });
        witnesses.push(witness);
    }
    let minimal_r = per_r.iter().find(|s| s.nonzero == 0).map(|s| s.r);
    let monotone = match minimal_r {
        Some(r0) => per_r.iter().filter(|s| s.r >= r0).all(|s| s.nonzero == 0),
        None => true,
    };
    let witness = minimal_r
        .and_then(|r0| r0.checked_sub(1))
        .and_then(|r| witnesses[r as usize].clone());
    Ok(AnnihilationReport {
        r_max,
        minimal_r,
        per_r,
        witness,
        params: params.len(),
        vectors: vectors
            .iter()
            .map(|v| format!("{}⊗{}", v.0, f.m.labels[v.1]))
            .collect(),
        monotone,
    })
}

/// `θ(z) = Σ x·v`.
pub fn theta(f: &TensorModule, z: &WVec) -> FVec {
    let mut out = FVec::new();
    for ((x, v), c) in z {
        let (y, _) = f.act_witt(x, &basis_vec(v.clone()));
        axpy(&mut out, c, &y);
    }
    out
}

/// `a·(x ⊗ v) = (a x) ⊗ v`.
pub fn a_mul(a: &Monomial, z: &WVec) -> WVec {
    let mut out = WVec::new();
    for ((x, v), c) in z {
        if let Some((s, mono)) = a.mul(&x.mono) {
            add_entry(
                &mut out,
                (WittTerm::new(mono, x.d), v.clone()),
                c * &Coeff::from(s),
            );
        }
    }
    out
}

/// `y·(x ⊗ v) = [y, x] ⊗ v + (-1)^{|y||x|} x ⊗ y·v`.
pub fn w_act(f: &TensorModule, y: &WittTerm, z: &WVec) -> WVec {
    let mut out = WVec::new();
    for ((x, v), c) in z {
        for (b, k) in y.bracket(x).iter() {
            add_entry(
                &mut out,
                (b.clone(), v.clone()),
                c * &Coeff::from(k.clone()),
            );
        }
        let sign = Coeff::from(Scalar::sign(y.parity() * x.parity()));
        let (yv, _) = f.act_witt(y, &basis_vec(v.clone()));
        for (u, d) in yv {
            add_entry(&mut out, (x.clone(), u), &(c * &sign) * &d);
        }
    }
    out
}

/// `(θ(z), θ(t_1 z), …, θ(t_m z), θ(ξ_1 z), …, θ(ξ_n z))`; `z ∈ X(V)` iff this
/// vanishes.
pub fn phi(f: &TensorModule, z: &WVec) -> SVec<(u8, FKey)> {
    let (m, n) = (f.dims.m, f.dims.n);
    let mut out = SVec::new();
    let mut push = |tag: u8, v: FVec| {
        for (k, c) in v {
            add_entry(&mut out, (tag, k), c);
        }
    };
    push(0, theta(f, z));
    for k in 0..m {
        push(1 + k as u8, theta(f, &a_mul(&Monomial::t(m, k), z)));
    }
    for j in 0..n {
        push(1 + (m + j) as u8, theta(f, &a_mul(&Monomial::xi(m, j), z)));
    }
    out
}

pub fn in_x(f: &TensorModule, z: &WVec) -> bool {
    phi(f, z).is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum CKey {
    Img(u8, FKey),
    Src(usize),
}

#[derive(Clone, Debug)]
pub struct CoverBlock {
    /// Basis `x ⊗ v` of `(W ⊗ V)_w` (restricted to `|α| ≤ deg`).
    pub basis: Vec<(WittTerm, FKey)>,
    /// `dim V̂_w = dim (W ⊗ V)_w - dim X(V)_w`.
    pub cover_dim: usize,
    /// A basis of `X(V)_w` in block coordinates.
    pub kernel: Vec<SVec<usize>>,
    pub v_dim: usize,
    /// Every basis vector of `(W ⊗ V)_w` was enumerated.
    pub reliable: bool,
}

pub struct CoverWindow<'a> {
    pub f: &'a TensorModule,
    pub deg: u32,
    pub blocks: BTreeMap<Weight, CoverBlock>,
}

/// Largest `|α|` of a Witt term `x` with `x ⊗ v` of weight `w`, when `P` is a
/// product of `ℂ[t]` factors and `M` is untruncated.
fn needed_degree(f: &TensorModule, w: &Weight) -> Option<u32> {
    if f.m.is_truncated() || f.p.spec.even.iter().any(|e| *e != EvenFactor::Poly) {
        return None;
    }
    let m = f.dims.m;
    let mut total = 0i64;
    for t in 0..m {
        let mut low: Option<i64> = None;
        for mu in &f.m.weights {
            let off = w.0[t].integer_offset(&mu.0[t]);
            let off = off?;
            low = Some(low.map_or(off, |l: i64| l.max(off)));
        }
        total += low.unwrap_or(0).max(0);
    }
    Some((total + 1) as u32)
}

pub fn cover_block(f: &TensorModule, w: &Weight, deg: u32) -> CoverBlock {
    let mut basis = Vec::new();
    for x in WittTerm::all(f.dims, deg) {
        let wx = x.weight(f.dims);
        for (j, mu) in f.m.weights.iter().enumerate() {
            if let Some(p) = f.p.key_of_weight(&w.sub(&wx).sub(mu)) {
                basis.push((x.clone(), (p, j)));
            }
        }
    }
    let mut ech: Echelon<CKey> = Echelon::new();
    for (i, (x, v)) in basis.iter().enumerate() {
        let z: WVec = [((x.clone(), v.clone()), Coeff::one())]
            .into_iter()
            .collect();
        let mut row: SVec<CKey> = phi(f, &z)
            .into_iter()
            .map(|((t, k), c)| (CKey::Img(t, k), c))
            .collect();
        row.insert(CKey::Src(i), Coeff::one());
        ech.insert(&row);
    }
    let mut kernel = Vec::new();
    let mut rank = 0;
    for row in ech.rows() {
        match row.keys().next() {
            Some(CKey::Img(..)) => rank += 1,
            Some(CKey::Src(_)) => kernel.push(
                row.iter()
                    .filter_map(|(k, c)| match k {
                        CKey::Src(i) => Some((*i, c.clone())),
                        CKey::Img(..) => None,
                    })
                    .collect(),
            ),
            None => {}
        }
    }
    let reliable = needed_degree(f, w).is_some_and(|d| d <= deg);
    CoverBlock {
        v_dim: f.weight_dim(w),
        cover_dim: rank,
        kernel,
        basis,
        reliable,
    }
}

/// The A-cover on the weights of the interior window basis, using Witt terms
/// with `|α| ≤ deg`.
pub fn build_cover(f: &TensorModule, deg: u32) -> Result<CoverWindow<'_>> {
    let interior = interior_basis(f);
    if interior.is_empty() {
        return Err(Error::NoInterior);
    }
    let xs = WittTerm::all(f.dims, 1);
    let nontrivial = interior.iter().any(|v| {
        xs.iter()
            .any(|x| !f.act_witt(x, &basis_vec(v.clone())).0.is_empty())
    });
    if !nontrivial {
        return Err(Error::TrivialModule);
    }
    let weights: std::collections::BTreeSet<Weight> =
        interior.iter().map(|k| f.weight(k)).collect();
    let weights: Vec<Weight> = weights.into_iter().collect();
    let blocks: Vec<(Weight, CoverBlock)> = weights
        .par_iter()
        .map(|w| (w.clone(), cover_block(f, w, deg)))
        .collect();
    Ok(CoverWindow {
        f,
        deg,
        blocks: blocks.into_iter().collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverRow {
    pub weight: String,
    pub v_dim: usize,
    pub cover_dim: usize,
    pub reliable: bool,
}

impl CoverWindow<'_> {
    pub fn rows(&self) -> Vec<CoverRow> {
        self.blocks
            .iter()
            .map(|(w, b)| CoverRow {
                weight: w.to_string(),
                v_dim: b.v_dim,
                cover_dim: b.cover_dim,
                reliable: b.reliable,
            })
            .collect()
    }

    pub fn kernel_vector(&self, w: &Weight, k: usize) -> WVec {
        let b = &self.blocks[w];
        b.kernel[k]
            .iter()
            .map(|(i, c)| (b.basis[*i].clone(), c.clone()))
            .collect()
    }
}

/// `dim B = (r+1)^m · 2^n · (m+n)` for `B = span{t^α ξ_I ∂ : α_i ≤ r}`.
pub fn b_dim(m: usize, n: usize, r: u32) -> usize {
    (r as usize + 1).pow(m as u32) * (1 << n) * (m + n)
}

/// `(W ⊗ V)_w = (B ⊗ V)_w + X(V)_w` on every reliable block, checked as
/// `Φ(B ⊗ V) = Φ(W ⊗ V)` with `X(V) = Ker Φ`.
pub fn verify_b_spanning(c: &CoverWindow<'_>, r: u32) -> bool {
    c.blocks.iter().filter(|(_, b)| b.reliable).all(|(_, b)| {
        let mut in_b: Echelon<(u8, FKey)> = Echelon::new();
        for (x, v) in b
            .basis
            .iter()
            .filter(|(x, _)| x.mono.alpha.as_slice().iter().all(|&a| a <= r))
        {
            let z: WVec = [((x.clone(), v.clone()), Coeff::one())]
                .into_iter()
                .collect();
            in_b.insert(&phi(c.f, &z));
        }
        in_b.rank() == b.cover_dim
    })
}

/// `Σ_i (-1)^i (r choose i) t^{α+(r-i)e_j} ξ_I ∂ ⊗ t^{β+ie_j} ξ_J ∂'·v ∈ X(V)`.
pub fn hat_relation_holds(f: &TensorModule, p: &OmegaParams, r: u32, v: &FKey) -> bool {
    let mut z = WVec::new();
    for (c, x, y) in p.pairs(r) {
        let (yv, _) = f.act_witt(&y, &basis_vec(v.clone()));
        for (u, d) in yv {
            add_entry(&mut z, (x.clone(), u), &d * &Coeff::from(c.clone()));
        }
    }
    in_x(f, &z)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeResult {
    Full,
    Proper,
    Inconclusive,
}

/// Closes `v` under the local generators `t^α ξ_I ∂` with `|α| + |I| ≤ 2`.
/// Vectors leaving the window are kept but not expanded further.
pub fn submodule_probe(f: &TensorModule, v: &FVec) -> ProbeResult {
    let gens: Vec<WittTerm> = WittTerm::all(f.dims, 2)
        .into_iter()
        .filter(|x| x.grade() <= 1)
        .collect();
    let mut span: Echelon<FKey> = Echelon::new();
    let start = span.reduce(v);
    if start.is_empty() {
        return ProbeResult::Proper;
    }
    span.insert(&start);
    let mut queue = vec![start];
    let mut edge = false;
    while let Some(x) = queue.pop() {
        if x.keys().any(|k| !f.in_window(k)) {
            edge = true;
            continue;
        }
        for g in &gens {
            let (y, e) = f.act_witt(g, &x);
            edge |= e;
            let r = span.reduce(&y);
            if !r.is_empty() {
                span.insert(&r);
                queue.push(r);
            }
        }
    }
    if interior_basis(f)
        .iter()
        .all(|k| span.contains(&basis_vec(k.clone())))
    {
        ProbeResult::Full
    } else if !edge {
        ProbeResult::Proper
    } else {
        ProbeResult::Inconclusive
    }
}
