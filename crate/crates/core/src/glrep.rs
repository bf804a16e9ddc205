//! Concrete `gl` modules: finite-dimensional simples realised inside tensor
//! powers of the natural module, Laurent-monomial modules with bounded
//! multiplicities, and outer tensor products `V₁ ⊗ V₂` over `gl_m ⊕ gl_n`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::gl::GlUnit;
use crate::index::Dims;
use crate::linalg::{add_entry, Echelon, SVec};
use crate::module::{Truncation, WeightModule};
use crate::param::{Coeff, WeightParam};
use crate::weight::Weight;

type Tensor = SVec<Vec<u8>>;

fn permutations_with_sign(k: usize) -> Vec<(Vec<u8>, bool)> {
    if k == 0 {
        return vec![(vec![], false)];
    }
    let mut out = Vec::new();
    for (p, odd) in permutations_with_sign(k - 1) {
        // insert k-1 at position i; it passes over k-1-i larger-position entries
        for i in 0..k {
            let mut q = p.clone();
            q.insert(i, (k - 1) as u8);
            out.push((q, odd ^ ((k - 1 - i) % 2 == 1)));
        }
    }
    out
}

/// `E_ab` on a tensor power: replaces one factor `e_b` by `e_a`.
fn apply_unit(a: u8, b: u8, v: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for (key, c) in v {
        for p in 0..key.len() {
            if key[p] == b {
                let mut k2 = key.clone();
                k2[p] = a;
                add_entry(&mut out, k2, c.clone());
            }
        }
    }
    out
}

fn tensor_weight(key: &[u8], k: usize) -> Vec<i64> {
    let mut w = vec![0; k];
    for &x in key {
        w[x as usize] += 1;
    }
    w
}

/// The simple `gl_k`-module with highest weight `λ`, realised as
/// `det^{λ_k} ⊗` the cyclic span of a column-antisymmetrised highest-weight
/// vector in `V^{⊗d}`. The module has ambient dims `(k, 0)`.
pub fn build_glm_simple(lambda: &[i64]) -> Result<WeightModule> {
    let k = lambda.len();
    let show = || format!("{lambda:?}");
    if k == 0 || lambda.windows(2).any(|p| p[0] < p[1]) {
        return Err(Error::NotDominant(show()));
    }
    let shift = lambda[k - 1];
    let mu: Vec<usize> = lambda.iter().map(|&l| (l - shift) as usize).collect();

    let mut hw = Tensor::new();
    hw.insert(vec![], Coeff::one());
    for c in 0..mu[0] {
        let len = mu.iter().filter(|&&x| x > c).count();
        let mut next = Tensor::new();
        for (key, x) in &hw {
            for (p, odd) in permutations_with_sign(len) {
                let mut k2 = key.clone();
                k2.extend(p);
                add_entry(&mut next, k2, if odd { -x.clone() } else { x.clone() });
            }
        }
        hw = next;
    }

    let mut spaces: BTreeMap<Vec<i64>, Echelon<Vec<u8>>> = BTreeMap::new();
    let top = tensor_weight(hw.keys().next().expect("nonzero"), k);
    spaces.entry(top).or_default().insert(&hw);
    let mut queue = vec![hw];
    while let Some(v) = queue.pop() {
        for a in 0..k.saturating_sub(1) {
            let w = apply_unit(a as u8 + 1, a as u8, &v);
            let Some(key) = w.keys().next() else { continue };
            let ech = spaces.entry(tensor_weight(key, k)).or_default();
            let r = ech.reduce(&w);
            if !r.is_empty() {
                ech.insert(&r);
                queue.push(r);
            }
        }
    }

    let dims = Dims { m: k, n: 0 };
    let mut labels = Vec::new();
    let mut weights = Vec::new();
    let mut offsets = BTreeMap::new();
    for (w, ech) in &spaces {
        offsets.insert(w.clone(), labels.len());
        let shifted: Vec<i64> = w.iter().map(|x| x + shift).collect();
        for r in 0..ech.rank() {
            labels.push(format!("w{}#{}", Weight::from_ints(&shifted), r));
            weights.push(Weight::from_ints(&shifted));
        }
    }
    let mut actions = BTreeMap::new();
    for u in GlUnit::all(dims) {
        let mut cols = vec![Vec::new(); labels.len()];
        for (w, ech) in &spaces {
            let mut target = w.clone();
            target[u.a as usize] += 1;
            target[u.b as usize] -= 1;
            for (r, row) in ech.rows().iter().enumerate() {
                let j = offsets[w] + r;
                let img = apply_unit(u.a, u.b, row);
                let mut col = SVec::new();
                if let Some(t) = spaces.get(&target) {
                    let coords = t.coords(&img).expect("module is closed under the action");
                    for (i, c) in coords {
                        add_entry(&mut col, offsets[&target] + i, c);
                    }
                } else {
                    debug_assert!(img.is_empty());
                }
                if u.is_diagonal() && shift != 0 {
                    add_entry(&mut col, j, Coeff::from_int(shift));
                }
                cols[j] = col.into_iter().collect();
            }
        }
        actions.insert(u, cols);
    }
    Ok(WeightModule {
        dims,
        parities: vec![0; labels.len()],
        labels,
        weights,
        actions,
        escapes: BTreeMap::new(),
        truncation: None,
    })
}

/// The two families of simple bounded `gl_n`-modules used here.
#[derive(Clone, Debug, PartialEq)]
pub enum GlnKind {
    Finite(Vec<i64>),
    /// `x^γ ℂ[x^{±1}]` in degree `Σγ`, truncated to `|ν_i| ≤ radius`.
    Laurent {
        gamma: Vec<WeightParam>,
        radius: u32,
    },
}

/// A simple bounded `gl_n`-module with ambient dims `(0, n)`.
pub fn build_gln_bounded(kind: &GlnKind) -> Result<WeightModule> {
    match kind {
        GlnKind::Finite(lambda) => {
            let mut v = build_glm_simple(lambda)?;
            let n = lambda.len();
            v.dims = Dims { m: 0, n };
            v.actions = v
                .actions
                .into_iter()
                .map(|(u, c)| (GlUnit { m: 0, ..u }, c))
                .collect();
            Ok(v)
        }
        GlnKind::Laurent { gamma, radius } => laurent_module(gamma, *radius),
    }
}

fn laurent_module(gamma: &[WeightParam], radius: u32) -> Result<WeightModule> {
    let n = gamma.len();
    if n == 0 {
        return Err(Error::LengthMismatch {
            expected: 1,
            got: 0,
        });
    }
    if let Some(g) = gamma.iter().find(|g| g.is_integer()) {
        return Err(Error::IntegralShift(g.to_string()));
    }
    let r = radius as i64;
    let mut nus: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        nus = nus
            .into_iter()
            .flat_map(|p| {
                (-r..=r).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    nus.retain(|nu| nu.iter().sum::<i64>() == 0);
    let index: BTreeMap<Vec<i64>, usize> = nus
        .iter()
        .enumerate()
        .map(|(i, nu)| (nu.clone(), i))
        .collect();
    let base = Weight(gamma.to_vec());
    let weights: Vec<Weight> = nus.iter().map(|nu| base.add_ints(nu)).collect();
    let labels = weights.iter().map(|w| format!("x^{w}")).collect();
    let dims = Dims { m: 0, n };
    let mut actions = BTreeMap::new();
    let mut escapes: BTreeMap<GlUnit, BTreeSet<usize>> = BTreeMap::new();
    for u in GlUnit::all(dims) {
        let (i, j) = (u.a as usize, u.b as usize);
        let mut cols = Vec::with_capacity(nus.len());
        for (col, nu) in nus.iter().enumerate() {
            let c = weights[col].0[j].to_coeff();
            let mut target = nu.clone();
            target[i] += 1;
            target[j] -= 1;
            match index.get(&target) {
                Some(&row) => cols.push(vec![(row, c)]),
                None => {
                    escapes.entry(u).or_default().insert(col);
                    cols.push(vec![]);
                }
            }
        }
        actions.insert(u, cols);
    }
    Ok(WeightModule {
        dims,
        parities: vec![0; nus.len()],
        labels,
        weights,
        actions,
        escapes,
        truncation: Some(Truncation::Laurent {
            gamma: gamma.to_vec(),
            radius,
        }),
    })
}

/// The trivial module of `gl_0`, the neutral factor of [`outer_product`].
pub fn trivial_gl0() -> WeightModule {
    WeightModule {
        dims: Dims { m: 0, n: 0 },
        labels: vec!["1".into()],
        weights: vec![Weight(vec![])],
        parities: vec![0],
        actions: BTreeMap::new(),
        escapes: BTreeMap::new(),
        truncation: None,
    }
}

/// `V₁ ⊗ V₂` as a module over `gl(m,n)₀ = gl_m ⊕ gl_n`, where `V₁` has dims
/// `(m, 0)` and `V₂` has dims `(0, n)`.
pub fn outer_product(v1: &WeightModule, v2: &WeightModule) -> Result<WeightModule> {
    if v1.dims.n != 0 || v2.dims.m != 0 {
        return Err(Error::Incompatible(
            "outer product expects a gl_m-module and a gl_n-module".into(),
        ));
    }
    let (m, n) = (v1.dims.m, v2.dims.n);
    let dims = Dims::new(m, n)?;
    let d2 = v2.dim();
    let mut labels = Vec::new();
    let mut weights = Vec::new();
    let mut parities = Vec::new();
    for a in 0..v1.dim() {
        for b in 0..d2 {
            labels.push(format!("{}⊗{}", v1.labels[a], v2.labels[b]));
            let mut w = v1.weights[a].0.clone();
            w.extend(v2.weights[b].0.iter().cloned());
            weights.push(Weight(w));
            parities.push((v1.parities[a] + v2.parities[b]) % 2);
        }
    }
    let mut actions = BTreeMap::new();
    let mut escapes: BTreeMap<GlUnit, BTreeSet<usize>> = BTreeMap::new();
    for (u, cols) in &v1.actions {
        let lifted = GlUnit { m: m as u8, ..*u };
        let mut out = vec![Vec::new(); labels.len()];
        for (a, col) in cols.iter().enumerate() {
            for b in 0..d2 {
                out[a * d2 + b] = col.iter().map(|(i, c)| (i * d2 + b, c.clone())).collect();
            }
        }
        actions.insert(lifted, out);
        if let Some(s) = v1.escapes.get(u) {
            let e = escapes.entry(lifted).or_default();
            for &a in s {
                e.extend((0..d2).map(|b| a * d2 + b));
            }
        }
    }
    for (u, cols) in &v2.actions {
        let lifted = GlUnit {
            m: m as u8,
            a: u.a + m as u8,
            b: u.b + m as u8,
        };
        let mut out = vec![Vec::new(); labels.len()];
        for a in 0..v1.dim() {
            for (b, col) in cols.iter().enumerate() {
                out[a * d2 + b] = col.iter().map(|(i, c)| (a * d2 + i, c.clone())).collect();
            }
        }
        actions.insert(lifted, out);
        if let Some(s) = v2.escapes.get(u) {
            let e = escapes.entry(lifted).or_default();
            for &b in s {
                e.extend((0..v1.dim()).map(|a| a * d2 + b));
            }
        }
    }
    let truncation = match (&v1.truncation, &v2.truncation) {
        (None, None) => None,
        (Some(t), None) | (None, Some(t)) => Some(t.clone()),
        (Some(s), Some(t)) => Some(Truncation::Product(vec![s.clone(), t.clone()])),
    };
    Ok(WeightModule {
        dims,
        labels,
        weights,
        parities,
        actions,
        escapes,
        truncation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::SVec;

    #[test]
    fn small_simples() {
        assert_eq!(build_glm_simple(&[1, 0]).unwrap().dim(), 2);
        let det = build_glm_simple(&[1, 1]).unwrap();
        assert_eq!(det.dim(), 1);
        assert_eq!(det.weights[0], Weight::from_ints(&[1, 1]));
        assert_eq!(build_glm_simple(&[2, 0]).unwrap().dim(), 3);
        assert_eq!(build_glm_simple(&[0, 0, 0]).unwrap().dim(), 1);
        assert!(matches!(
            build_glm_simple(&[0, 1]),
            Err(Error::NotDominant(_))
        ));
        assert!(build_glm_simple(&[]).is_err());
    }

    #[test]
    fn negative_shift_is_a_representation() {
        let v = build_glm_simple(&[0, -2]).unwrap();
        assert_eq!(v.dim(), 3);
        let units = GlUnit::all(v.dims);
        assert!(v.respects_weights());
        assert!(v.verify_representation(&units));
    }

    #[test]
    fn laurent_operators() {
        let g = vec![WeightParam::symbol("g1"), WeightParam::symbol("g2")];
        let v = build_gln_bounded(&GlnKind::Laurent {
            gamma: g.clone(),
            radius: 2,
        })
        .unwrap();
        let d = v.dims;
        let e = |a, b| GlUnit::new(d, a, b).unwrap();
        let x0 = v
            .weights
            .iter()
            .position(|w| *w == Weight(g.clone()))
            .unwrap();
        let start: SVec<usize> = [(x0, Coeff::one())].into_iter().collect();
        let (img, _) = v.act(e(0, 0), &start);
        assert_eq!(img[&x0], Coeff::var("g1"));
        let (two, edge) = v.act_word(&[e(0, 1), e(1, 0)], &start);
        assert!(!edge);
        let want = &Coeff::var("g1") * &(&Coeff::var("g2") + &Coeff::one());
        assert_eq!(two[&x0], want);
        assert!(v.max_weight_dim() == 1);
        assert!(v.verify_representation(&GlUnit::all(d)));
        let bad = GlnKind::Laurent {
            gamma: vec![WeightParam::from_int(1), WeightParam::symbol("g")],
            radius: 1,
        };
        assert!(matches!(
            build_gln_bounded(&bad),
            Err(Error::IntegralShift(_))
        ));
    }

    #[test]
    fn outer_product_dims() {
        let v1 = build_glm_simple(&[1, 0]).unwrap();
        let v2 = build_gln_bounded(&GlnKind::Finite(vec![1, 0])).unwrap();
        let v = outer_product(&v1, &v2).unwrap();
        assert_eq!(v.dim(), 4);
        assert_eq!(v.dims, Dims::new(2, 2).unwrap());
        assert!(v.verify_representation(&GlUnit::even(v.dims)));
        let only_odd = outer_product(&trivial_gl0(), &v2).unwrap();
        assert_eq!(only_odd.dims, Dims::new(0, 2).unwrap());
    }
}
