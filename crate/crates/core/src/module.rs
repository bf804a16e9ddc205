//! Weight modules over `gl(m,n)` (or its even part) given by explicit sparse
//! action matrices on a labelled basis.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::gl::GlUnit;
use crate::index::Dims;
use crate::linalg::{add_entry, SVec};
use crate::param::{Coeff, WeightParam};
use crate::scalar::Scalar;
use crate::weight::Weight;

/// Image of each basis vector under one generator.
pub type ActionColumns = Vec<Vec<(usize, Coeff)>>;

/// How an intrinsically infinite module was cut down to finitely many basis
/// vectors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Truncation {
    /// Laurent monomials `x^{γ+ν}` with `Σν = 0` and `|ν_i| ≤ radius`.
    Laurent {
        gamma: Vec<WeightParam>,
        radius: u32,
    },
    /// A product of truncated factors.
    Product(Vec<Truncation>),
    /// Quotient or induced module built from a truncated input.
    Derived(Box<Truncation>),
}

#[derive(Clone, Debug)]
pub struct WeightModule {
    /// Ambient `gl(m,n)`; weights have `m + n` entries.
    pub dims: Dims,
    pub labels: Vec<String>,
    pub weights: Vec<Weight>,
    pub parities: Vec<u32>,
    /// Units absent from the map act as zero.
    pub actions: BTreeMap<GlUnit, ActionColumns>,
    /// Basis vectors whose image under a unit leaves the truncation.
    pub escapes: BTreeMap<GlUnit, BTreeSet<usize>>,
    pub truncation: Option<Truncation>,
}

#[derive(Serialize)]
struct ModuleJson<'a> {
    dims: Dims,
    labels: &'a [String],
    weights: Vec<String>,
    parities: &'a [u32],
    actions: Vec<(String, usize, usize, String)>,
    escapes: Vec<(String, usize)>,
    truncation: &'a Option<Truncation>,
}

impl WeightModule {
    /// The one-dimensional module of weight `w` on which every off-diagonal
    /// unit acts by zero.
    pub fn one_dimensional(dims: Dims, w: Weight) -> WeightModule {
        let mut actions = BTreeMap::new();
        for u in GlUnit::all(dims).into_iter().filter(|u| u.is_diagonal()) {
            let c = w.0[u.a as usize].to_coeff();
            let col = if c.is_zero() { vec![] } else { vec![(0, c)] };
            actions.insert(u, vec![col]);
        }
        WeightModule {
            dims,
            labels: vec!["v".into()],
            weights: vec![w],
            parities: vec![0],
            actions,
            escapes: BTreeMap::new(),
            truncation: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncation.is_some()
    }

    pub fn units(&self) -> impl Iterator<Item = &GlUnit> {
        self.actions.keys()
    }

    pub fn act_basis(&self, u: GlUnit, j: usize) -> &[(usize, Coeff)] {
        self.actions.get(&u).map_or(&[][..], |cols| &cols[j][..])
    }

    pub fn escapes_at(&self, u: GlUnit, j: usize) -> bool {
        self.escapes.get(&u).is_some_and(|s| s.contains(&j))
    }

    /// Whether no unit sends basis vector `j` out of the truncation.
    pub fn is_interior(&self, j: usize) -> bool {
        self.escapes.values().all(|s| !s.contains(&j))
    }

    /// `u · v`, together with whether some term escaped the truncation.
    pub fn act(&self, u: GlUnit, v: &SVec<usize>) -> (SVec<usize>, bool) {
        let mut out = SVec::new();
        let mut edge = false;
        for (&j, c) in v {
            edge |= self.escapes_at(u, j);
            for (i, x) in self.act_basis(u, j) {
                add_entry(&mut out, *i, c * x);
            }
        }
        (out, edge)
    }

    /// Applies `u_1 ⋯ u_k`, the rightmost unit first.
    pub fn act_word(&self, word: &[GlUnit], v: &SVec<usize>) -> (SVec<usize>, bool) {
        let mut cur = v.clone();
        let mut edge = false;
        for &u in word.iter().rev() {
            let (next, e) = self.act(u, &cur);
            edge |= e;
            cur = next;
        }
        (cur, edge)
    }

    pub fn weight_spaces(&self) -> BTreeMap<Weight, Vec<usize>> {
        let mut out: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (j, w) in self.weights.iter().enumerate() {
            out.entry(w.clone()).or_default().push(j);
        }
        out
    }

    pub fn max_weight_dim(&self) -> usize {
        self.weight_spaces()
            .values()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
    }

    /// Every action entry goes from weight `w` to `w + e_a - e_b`.
    pub fn respects_weights(&self) -> bool {
        let t = self.dims.total();
        self.actions.iter().all(|(u, cols)| {
            let shift = u.weight_ints(t);
            cols.iter().enumerate().all(|(j, col)| {
                let target = self.weights[j].add_ints(&shift);
                col.iter().all(|(i, _)| self.weights[*i] == target)
            })
        })
    }

    /// Checks `[x,y]·v = x·y·v - (-1)^{|x||y|} y·x·v` on every basis vector
    /// for all pairs of the given units, skipping vectors whose computation
    /// touches the truncation edge.
    pub fn verify_representation(&self, units: &[GlUnit]) -> bool {
        for &x in units {
            for &y in units {
                let br = x.bracket(y);
                let sign = Coeff::from(Scalar::sign(x.parity() * y.parity()));
                for j in 0..self.dim() {
                    let e: SVec<usize> = [(j, Coeff::one())].into_iter().collect();
                    let (xy, e1) = self.act_word(&[x, y], &e);
                    let (yx, e2) = self.act_word(&[y, x], &e);
                    let mut lhs = SVec::new();
                    let mut e3 = false;
                    for (u, c) in br.iter() {
                        let (img, ed) = self.act(*u, &e);
                        e3 |= ed;
                        crate::linalg::axpy(&mut lhs, &Coeff::from(c.clone()), &img);
                    }
                    if e1 || e2 || e3 {
                        continue;
                    }
                    let mut rhs = xy;
                    crate::linalg::axpy(&mut rhs, &-sign.clone(), &yx);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The parity-changed module `Π(M)`.
    pub fn parity_change(&self) -> WeightModule {
        let mut out = self.clone();
        for p in out.parities.iter_mut() {
            *p ^= 1;
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut actions = Vec::new();
        for (u, cols) in &self.actions {
            for (j, col) in cols.iter().enumerate() {
                for (i, c) in col {
                    actions.push((u.to_string(), *i, j, c.to_string()));
                }
            }
        }
        let escapes = self
            .escapes
            .iter()
            .flat_map(|(u, s)| s.iter().map(move |&j| (u.to_string(), j)))
            .collect();
        serde_json::to_value(ModuleJson {
            dims: self.dims,
            labels: &self.labels,
            weights: self.weights.iter().map(ToString::to_string).collect(),
            parities: &self.parities,
            actions,
            escapes,
            truncation: &self.truncation,
        })
        .expect("module serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_is_a_representation() {
        let d = Dims::new(1, 1).unwrap();
        let m = WeightModule::one_dimensional(d, Weight::from_ints(&[2, -1]));
        assert_eq!(m.dim(), 1);
        assert!(m.respects_weights());
        assert!(m.verify_representation(&GlUnit::even(d)));
        let json = m.to_json();
        assert_eq!(json["actions"][0][3], "2/1");
    }
}
