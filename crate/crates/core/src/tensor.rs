//! Tensor modules `F(P, M) = P ⊗ M` over `W ⋉ A`, with `W` acting through
//! `π` and `A` acting on the first factor.
//!
//! Sign convention: `(k ⊗ g)·(p ⊗ v) = (-1)^{|g||p|} (k·p) ⊗ (g·v)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use dashmap::DashMap;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::Dims;
use crate::linalg::{add_entry, axpy, SVec};
use crate::module::WeightModule;
use crate::param::Coeff;
use crate::pbw::word_parity;
use crate::pi::{pi_of_witt, PiImage, PiVariant};
use crate::scalar::Scalar;
use crate::superpoly::Monomial;
use crate::weight::Weight;
use crate::weyl::{PKey, WeylModule};
use crate::witt::{ExtWittElem, WittElem, WittTerm};

pub type FKey = (PKey, usize);
pub type FVec = SVec<FKey>;

pub struct TensorModule {
    pub p: WeylModule,
    pub m: WeightModule,
    pub dims: Dims,
    pub variant: PiVariant,
    cache: DashMap<WittTerm, Arc<PiImage>>,
}

pub fn build_tensor_module(p: WeylModule, m: WeightModule) -> Result<TensorModule> {
    if p.dims != m.dims {
        return Err(Error::Incompatible(format!(
            "P has (m,n) = ({},{}) but M has ({},{})",
            p.dims.m, p.dims.n, m.dims.m, m.dims.n
        )));
    }
    Ok(TensorModule {
        dims: p.dims,
        p,
        m,
        variant: PiVariant::Exact,
        cache: DashMap::new(),
    })
}

pub fn basis_vec(k: FKey) -> FVec {
    [(k, Coeff::one())].into_iter().collect()
}

impl TensorModule {
    pub fn with_variant(mut self, variant: PiVariant) -> Self {
        self.variant = variant;
        self.cache.clear();
        self
    }

    pub fn pi_image(&self, x: &WittTerm) -> Arc<PiImage> {
        if let Some(hit) = self.cache.get(x) {
            return Arc::clone(hit.value());
        }
        let img = Arc::new(pi_of_witt(self.dims, x, self.variant));
        self.cache.insert(x.clone(), Arc::clone(&img));
        img
    }

    /// Window basis `p ⊗ v`, sorted.
    pub fn basis(&self) -> Vec<FKey> {
        let ps = self.p.basis();
        ps.into_iter()
            .flat_map(|p| (0..self.m.dim()).map(move |j| (p.clone(), j)))
            .collect()
    }

    pub fn weight(&self, k: &FKey) -> Weight {
        self.p.weight(&k.0).add(&self.m.weights[k.1])
    }

    pub fn parity(&self, k: &FKey) -> u32 {
        (self.p.parity(&k.0) + self.m.parities[k.1]) % 2
    }

    pub fn in_window(&self, k: &FKey) -> bool {
        self.p.in_window(&k.0)
    }

    /// `img · v`; the flag reports a target outside the window or a
    /// truncated action on `M`.
    pub fn act_image(&self, img: &PiImage, v: &FVec) -> (FVec, bool) {
        let mut out = FVec::new();
        let mut edge = false;
        for (key, c) in img.iter() {
            let gp = word_parity(&key.g);
            for ((p, j), x) in v {
                let e_j: SVec<usize> = [(*j, Coeff::one())].into_iter().collect();
                let (gv, e) = self.m.act_word(&key.g, &e_j);
                edge |= e;
                if gv.is_empty() {
                    continue;
                }
                let Some((kc, p2)) = self
                    .p
                    .act_uword(&key.k, p)
                    .expect("images of π lie in the Weyl superalgebra")
                else {
                    continue;
                };
                edge |= !self.p.in_window(&p2);
                let sign = Scalar::sign(gp * self.p.parity(p));
                let base = &(x * &kc) * &Coeff::from(c * &sign);
                for (i, y) in gv {
                    add_entry(&mut out, (p2.clone(), i), &base * &y);
                }
            }
        }
        (out, edge)
    }

    pub fn act_witt(&self, x: &WittTerm, v: &FVec) -> (FVec, bool) {
        self.act_image(&self.pi_image(x), v)
    }

    pub fn act_witt_elem(&self, x: &WittElem, v: &FVec) -> (FVec, bool) {
        let mut out = FVec::new();
        let mut edge = false;
        for (t, c) in x.iter() {
            let (y, e) = self.act_witt(t, v);
            edge |= e;
            axpy(&mut out, &Coeff::from(c.clone()), &y);
        }
        (out, edge)
    }

    /// `a · (p ⊗ v) = (a·p) ⊗ v`.
    pub fn act_poly(&self, a: &Monomial, v: &FVec) -> (FVec, bool) {
        let gens = crate::weyl::monomial_gens(a);
        let mut out = FVec::new();
        let mut edge = false;
        for ((p, j), x) in v {
            if let Some((c, p2)) = self.p.act_gens(&gens, p) {
                edge |= !self.p.in_window(&p2);
                add_entry(&mut out, (p2, *j), x * &c);
            }
        }
        (out, edge)
    }

    pub fn act_ext(&self, e: &ExtWittElem, v: &FVec) -> (FVec, bool) {
        let (mut out, mut edge) = self.act_witt_elem(&e.w, v);
        for (a, c) in e.a.iter() {
            let (y, ed) = self.act_poly(a, v);
            edge |= ed;
            axpy(&mut out, &Coeff::from(c.clone()), &y);
        }
        (out, edge)
    }

    /// Number of `(p, v)` with `p` in the support of `P`, `v` a basis vector
    /// of `M` and `wt(p) + wt(v) = w`.
    pub fn weight_dim(&self, w: &Weight) -> usize {
        self.m
            .weights
            .iter()
            .filter(|mu| self.p.key_of_weight(&w.sub(mu)).is_some())
            .count()
    }

    /// Exact dimensions of the weight spaces met by the window basis.
    /// Rows are marked incomplete when `M` itself is truncated.
    pub fn weight_dim_table(&self) -> Vec<DimRow> {
        let weights: std::collections::BTreeSet<Weight> =
            self.basis().iter().map(|k| self.weight(k)).collect();
        let complete = !self.m.is_truncated();
        weights
            .into_iter()
            .map(|w| DimRow {
                dim: self.weight_dim(&w),
                weight: w,
                complete,
            })
            .collect()
    }

    /// `2^{mn}·N·dim V₁` bounds the weight spaces of `M`; the weight spaces of
    /// `F` are bounded by `|S|·|S₁|` times that.
    pub fn certify_bounded(&self, n_bound: usize, dim_v1: usize) -> BoundednessCertificate {
        let table = self.weight_dim_table();
        let observed = table.iter().map(|r| r.dim).max().unwrap_or(0);
        let bound = (1usize << (self.dims.m * self.dims.n)) * n_bound * dim_v1;
        let m = self.dims.m;
        let s1: std::collections::BTreeSet<Vec<_>> =
            self.m.weights.iter().map(|w| w.0[..m].to_vec()).collect();
        let f_bound = (1usize << self.dims.n) * s1.len().max(1) * bound;
        let module_max = self.m.max_weight_dim();
        BoundednessCertificate {
            n_bound,
            dim_v1,
            bound,
            f_bound,
            observed_max: observed,
            weights_checked: table.len(),
            odd_support_size: 1 << self.dims.n,
            even_weight_count: s1.len(),
            max_module_weight_dim: module_max,
            complete: table.iter().all(|r| r.complete),
            verdict: if module_max <= bound && observed <= f_bound {
                Verdict::Bounded
            } else {
                Verdict::Exceeded
            },
        }
    }

    /// Seeded checks of `a·(a'·w) = (aa')·w`, `1·w = w`,
    /// `[x,a]·w = x·a·w - (-1)^{|x||a|} a·x·w` and
    /// `[x,y]·w = x·y·w - (-1)^{|x||y|} y·x·w` for Witt terms and monomials
    /// with `|α| ≤ deg`. Samples touching the window edge are skipped.
    pub fn verify_aw_axioms(&self, samples: usize, seed: u64, deg: u32) -> AwReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xs = WittTerm::all(self.dims, deg);
        let monos = Monomial::all(self.dims.m, self.dims.n, deg);
        let ws: Vec<FKey> = self.basis();
        let mut report = AwReport::default();
        if ws.is_empty() {
            return report;
        }
        for s in 0..samples {
            let w = basis_vec(ws.choose(&mut rng).expect("nonempty").clone());
            let kind = s % 4;
            let (ok, edge, what) = match kind {
                0 => {
                    let a = monos.choose(&mut rng).expect("nonempty");
                    let b = monos.choose(&mut rng).expect("nonempty");
                    let (bw, e1) = self.act_poly(b, &w);
                    let (lhs, e2) = self.act_poly(a, &bw);
                    let (rhs, e3) = match a.mul(b) {
                        Some((c, ab)) => {
                            let (y, e) = self.act_poly(&ab, &w);
                            (crate::linalg::scaled(&y, &Coeff::from(c)), e)
                        }
                        None => (FVec::new(), false),
                    };
                    (lhs == rhs, e1 || e2 || e3, format!("assoc a={a} a'={b}"))
                }
                1 => {
                    let (y, e) = self.act_poly(&Monomial::one(self.dims.m), &w);
                    (y == w, e, "unit".to_string())
                }
                2 => {
                    let x = xs.choose(&mut rng).expect("nonempty");
                    let a = monos.choose(&mut rng).expect("nonempty");
                    let br = ExtWittElem::from_witt(WittElem::from_term(x.clone())).bracket(
                        &ExtWittElem::from_poly(crate::superpoly::SuperPoly::monomial(a.clone())),
                    );
                    let (lhs, e1) = self.act_ext(&br, &w);
                    let (aw, e2) = self.act_poly(a, &w);
                    let (xaw, e3) = self.act_witt(x, &aw);
                    let (xw, e4) = self.act_witt(x, &w);
                    let (axw, e5) = self.act_poly(a, &xw);
                    let mut rhs = xaw;
                    axpy(
                        &mut rhs,
                        &Coeff::from(-Scalar::sign(x.parity() * a.parity())),
                        &axw,
                    );
                    (
                        lhs == rhs,
                        e1 || e2 || e3 || e4 || e5,
                        format!("[x,a] x={x} a={a}"),
                    )
                }
                _ => {
                    let x = xs.choose(&mut rng).expect("nonempty");
                    let y = xs.choose(&mut rng).expect("nonempty");
                    let (lhs, e1) = self.act_witt_elem(&x.bracket(y), &w);
                    let (yw, e2) = self.act_witt(y, &w);
                    let (xyw, e3) = self.act_witt(x, &yw);
                    let (xw, e4) = self.act_witt(x, &w);
                    let (yxw, e5) = self.act_witt(y, &xw);
                    let mut rhs = xyw;
                    axpy(
                        &mut rhs,
                        &Coeff::from(-Scalar::sign(x.parity() * y.parity())),
                        &yxw,
                    );
                    (
                        lhs == rhs,
                        e1 || e2 || e3 || e4 || e5,
                        format!("[x,y] x={x} y={y}"),
                    )
                }
            };
            if edge {
                report.skipped_edge += 1;
                continue;
            }
            report.checked += 1;
            if !ok {
                report.failures += 1;
                if report.first_failure.is_none() {
                    let k = w.keys().next().expect("basis vector");
                    report.first_failure = Some(format!("{what} w={}⊗{}", k.0, self.m.labels[k.1]));
                }
            }
        }
        report.passed = report.failures == 0 && report.checked > 0;
        report
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DimRow {
    pub weight: Weight,
    pub dim: usize,
    pub complete: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Bounded,
    Exceeded,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundednessCertificate {
    /// Bound on the weight multiplicities of `V₂`.
    pub n_bound: usize,
    pub dim_v1: usize,
    /// `2^{mn}·N·dim V₁`, a bound for the weight spaces of `M`.
    pub bound: usize,
    /// `|S|·|S₁|·bound`, a bound for the weight spaces of `F`.
    pub f_bound: usize,
    pub observed_max: usize,
    pub weights_checked: usize,
    /// `|S| = 2^n`.
    pub odd_support_size: usize,
    /// Number of distinct `gl_m`-weights of `M`.
    pub even_weight_count: usize,
    pub max_module_weight_dim: usize,
    pub complete: bool,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AwReport {
    pub checked: usize,
    pub skipped_edge: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
    pub passed: bool,
}

/// Dimension table as CSV: the weight entries followed by the dimension.
pub fn dims_csv(rows: &[DimRow]) -> String {
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.weight.0.iter().map(ToString::to_string).collect();
        out.push_str(&format!("\"{}\",{}\n", cells.join(","), r.dim));
    }
    out
}

/// Groups the window basis by weight.
pub fn weight_blocks(f: &TensorModule) -> BTreeMap<Weight, Vec<FKey>> {
    let mut out: BTreeMap<Weight, Vec<FKey>> = BTreeMap::new();
    for k in f.basis() {
        out.entry(f.weight(&k)).or_default().push(k);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glrep::{build_glm_simple, build_gln_bounded, outer_product, GlnKind};
    use crate::index::{MultiIndex, OddSet};
    use crate::kac::{kac_module, simple_top};
    use crate::superpoly::DerivSymbol;
    use crate::weyl::WeylSpec;

    fn f11(window: u32) -> TensorModule {
        let p = WeylModule::new(WeylSpec::parse("P", 1).unwrap(), window).unwrap();
        let d = Dims::new(1, 1).unwrap();
        let m = WeightModule::one_dimensional(d, Weight::from_ints(&[0, 0]));
        build_tensor_module(p, m).unwrap()
    }

    fn key(k: i64, eps: &[usize], j: usize) -> FKey {
        (
            PKey {
                k: [k].into_iter().collect(),
                eps: OddSet::from_indices(eps),
            },
            j,
        )
    }

    #[test]
    fn trivial_m_dims() {
        let f = f11(4);
        let table = f.weight_dim_table();
        assert_eq!(table.len(), 10);
        assert!(table.iter().all(|r| r.dim == 1 && r.complete));
        let cert = f.certify_bounded(1, 1);
        assert_eq!(cert.bound, 2);
        assert_eq!(cert.verdict, Verdict::Bounded);
        let d1 = WittTerm::from_parts(
            MultiIndex::from_slice(&[1]),
            OddSet::EMPTY,
            DerivSymbol::T(0),
        );
        let (y, _) = f.act_witt(&d1, &basis_vec(key(0, &[], 0)));
        assert!(y.is_empty());
    }

    #[test]
    fn euler_operator_on_natural() {
        let p = WeylModule::new(WeylSpec::parse("P,P", 1).unwrap(), 3).unwrap();
        let v1 = build_glm_simple(&[1, 0]).unwrap();
        let v2 = build_gln_bounded(&GlnKind::Finite(vec![0])).unwrap();
        let k = kac_module(&outer_product(&v1, &v2).unwrap()).unwrap();
        let top = simple_top(&k);
        let f = build_tensor_module(p, top.quotient.clone()).unwrap();
        let d1 = WittTerm::from_parts(
            MultiIndex::from_slice(&[1, 0]),
            OddSet::EMPTY,
            DerivSymbol::T(0),
        );
        for b in f.basis().into_iter().filter(|b| f.in_window(b)).take(40) {
            let w = f.weight(&b);
            let (y, _) = f.act_witt(&d1, &basis_vec(b.clone()));
            // d_1 acts by the first weight coordinate
            let want = crate::linalg::scaled(&basis_vec(b), &w.0[0].to_coeff());
            assert_eq!(y, want);
        }
        let report = f.verify_aw_axioms(200, 3, 2);
        assert!(report.passed, "{report:?}");
        let cert = f.certify_bounded(1, 2);
        assert_eq!(cert.bound, 8);
        assert!(cert.observed_max <= cert.bound);
    }

    #[test]
    fn mismatched_dims_rejected() {
        let p = WeylModule::new(WeylSpec::parse("P", 1).unwrap(), 2).unwrap();
        let m =
            WeightModule::one_dimensional(Dims::new(2, 1).unwrap(), Weight::from_ints(&[0, 0, 0]));
        assert!(build_tensor_module(p, m).is_err());
    }

    #[test]
    fn empty_window_table() {
        let p = WeylModule::new(WeylSpec::parse("LmodP", 0).unwrap(), 0).unwrap();
        let m = WeightModule::one_dimensional(Dims::new(1, 0).unwrap(), Weight::from_ints(&[0]));
        let f = build_tensor_module(p, m).unwrap();
        assert!(f.weight_dim_table().is_empty());
    }
}
