//! Kac modules `K(V) = Λ(gl(m,n)_{-1}) ⊗ V` and their simple tops.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gl::GlUnit;
use crate::linalg::{add_entry, axpy, Echelon, SVec};
use crate::module::{Truncation, WeightModule};
use crate::param::Coeff;
use crate::scalar::Scalar;
use crate::weight::Weight;

#[derive(Clone, Debug)]
pub struct KacModule {
    pub base: WeightModule,
    pub total: WeightModule,
    /// `|S|` for the basis vector `y_S ⊗ v`.
    pub lambda_degree: Vec<u32>,
    /// The odd lowering units `E_{m+j,i}`, in the order used for `S`.
    pub lowering: Vec<GlUnit>,
}

fn sign_below(s: u32, q: usize) -> Coeff {
    Coeff::from(Scalar::sign((s & ((1u32 << q) - 1)).count_ones()))
}

struct Builder<'a> {
    v: &'a WeightModule,
    lowering: &'a [GlUnit],
    pos: BTreeMap<GlUnit, usize>,
}

impl Builder<'_> {
    fn index(&self, s: u32, j: usize) -> usize {
        s as usize * self.v.dim() + j
    }

    /// `E · (y_S ⊗ v_j)` by moving `E` rightwards through the product
    /// `y_{q_1} ⋯ y_{q_k}` (increasing `q`).
    fn act(&self, e: GlUnit, s: u32, j: usize) -> (SVec<usize>, bool) {
        if s == 0 {
            return match e.degree() {
                1 => (SVec::new(), false),
                -1 => {
                    let q = self.pos[&e];
                    (
                        [(self.index(1 << q, j), Coeff::one())]
                            .into_iter()
                            .collect(),
                        false,
                    )
                }
                _ => {
                    let edge = self.v.escapes_at(e, j);
                    let out = self
                        .v
                        .act_basis(e, j)
                        .iter()
                        .map(|(i, c)| (self.index(0, *i), c.clone()))
                        .collect();
                    (out, edge)
                }
            };
        }
        let q = s.trailing_zeros() as usize;
        let rest = s & !(1 << q);
        let y = self.lowering[q];
        let mut out = SVec::new();
        let mut edge = false;
        for (f, c) in GlUnit::bracket(e, y).iter() {
            let (img, ed) = self.act(*f, rest, j);
            edge |= ed;
            axpy(&mut out, &Coeff::from(c.clone()), &img);
        }
        let (img, ed) = self.act(e, rest, j);
        edge |= ed;
        let sign = Coeff::from(Scalar::sign(e.parity()));
        for (k, c) in img {
            let (s2, j2) = (k / self.v.dim(), k % self.v.dim());
            if s2 as u32 & (1 << q) != 0 {
                continue;
            }
            let c = &(&c * &sign) * &sign_below(s2 as u32, q);
            add_entry(&mut out, self.index(s2 as u32 | (1 << q), j2), c);
        }
        (out, edge)
    }
}

/// Induces `V` (a weight module over the even part, odd units acting by
/// zero) up to `gl(m,n)`. The basis is `y_S ⊗ v` for subsets `S` of the odd
/// lowering units; `1 ⊗ V` keeps the parities of `V`.
pub fn kac_module(v: &WeightModule) -> Result<KacModule> {
    let dims = v.dims;
    if v.units().any(|u| u.degree() != 0) {
        return Err(Error::Incompatible(
            "Kac induction expects a module over the even part".into(),
        ));
    }
    let (m, n) = (dims.m, dims.n);
    if m * n > 16 {
        return Err(Error::InvalidDims { m, n });
    }
    let lowering: Vec<GlUnit> = (0..n)
        .flat_map(|j| (0..m).map(move |i| (j, i)))
        .map(|(j, i)| GlUnit::new(dims, m + j, i))
        .collect::<Result<_>>()?;
    let pos = lowering.iter().enumerate().map(|(q, u)| (*u, q)).collect();
    let b = Builder {
        v,
        lowering: &lowering,
        pos,
    };
    let subsets = 1u32 << lowering.len();
    let t = dims.total();
    let mut labels = Vec::new();
    let mut weights = Vec::new();
    let mut parities = Vec::new();
    let mut lambda_degree = Vec::new();
    for s in 0..subsets {
        let mut shift = vec![0i64; t];
        let mut name = String::new();
        for (q, y) in lowering.iter().enumerate() {
            if s & (1 << q) != 0 {
                shift[y.a as usize] += 1;
                shift[y.b as usize] -= 1;
                name.push_str(&y.to_string());
            }
        }
        if name.is_empty() {
            name.push('1');
        }
        for j in 0..v.dim() {
            labels.push(format!("{name}⊗{}", v.labels[j]));
            weights.push(v.weights[j].add_ints(&shift));
            parities.push((v.parities[j] + s.count_ones()) % 2);
            lambda_degree.push(s.count_ones());
        }
    }
    let mut actions = BTreeMap::new();
    let mut escapes: BTreeMap<GlUnit, BTreeSet<usize>> = BTreeMap::new();
    for e in GlUnit::all(dims) {
        let mut cols = Vec::with_capacity(labels.len());
        for s in 0..subsets {
            for j in 0..v.dim() {
                let (img, edge) = b.act(e, s, j);
                if edge {
                    escapes.entry(e).or_default().insert(b.index(s, j));
                }
                cols.push(img.into_iter().collect());
            }
        }
        actions.insert(e, cols);
    }
    let total = WeightModule {
        dims,
        labels,
        weights,
        parities,
        actions,
        escapes,
        truncation: v
            .truncation
            .clone()
            .map(|t| Truncation::Derived(Box::new(t))),
    };
    Ok(KacModule {
        base: v.clone(),
        total,
        lambda_degree,
        lowering,
    })
}

impl KacModule {
    pub fn dim(&self) -> usize {
        self.total.dim()
    }

    /// Whether every weight space of `K(V)` lies in a single `Λ^k ⊗ V`.
    pub fn lambda_degree_single_valued(&self) -> bool {
        self.total.weight_spaces().values().all(|idx| {
            idx.iter()
                .all(|&i| self.lambda_degree[i] == self.lambda_degree[idx[0]])
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleTopSummary {
    pub dim: usize,
    pub radical_dims: Vec<(String, usize)>,
    pub approximate: bool,
    pub certified: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct SimpleTop {
    pub quotient: WeightModule,
    pub radical_dims: BTreeMap<Weight, usize>,
    /// Functionals on `K(V)` whose common kernel is the radical; row `i`
    /// gives the coordinate of the quotient basis vector `i`.
    pub projection: Vec<SVec<usize>>,
    /// Set for truncated inputs; such results are never certified.
    pub approximate: bool,
    /// Cyclicity certificate, computed for untruncated quotients of
    /// dimension at most 200.
    pub certified: Option<bool>,
}

/// Transposed action tables: `rows[u][i]` lists `(j, c)` with
/// `u·e_j = Σ c e_i + ⋯`.
fn transpose(k: &WeightModule) -> BTreeMap<GlUnit, Vec<Vec<(usize, Coeff)>>> {
    k.actions
        .iter()
        .map(|(u, cols)| {
            let mut rows = vec![Vec::new(); k.dim()];
            for (j, col) in cols.iter().enumerate() {
                for (i, c) in col {
                    rows[*i].push((j, c.clone()));
                }
            }
            (*u, rows)
        })
        .collect()
}

fn pull_back(f: &SVec<usize>, rows: &[Vec<(usize, Coeff)>]) -> SVec<usize> {
    let mut out = SVec::new();
    for (&i, c) in f {
        for (j, x) in &rows[i] {
            add_entry(&mut out, *j, c * x);
        }
    }
    out
}

/// The largest submodule of `K(V)` meeting `1 ⊗ V` trivially, and the simple
/// quotient `L(V)`.
///
/// The radical is the common kernel of the smallest space of functionals
/// containing the coordinates on `1 ⊗ V` and closed under `f ↦ f∘E`; this
/// is the stable limit of `N_{k+1} = {v ∈ N_k : E·v ∈ N_k}`.
pub fn simple_top(k: &KacModule) -> SimpleTop {
    let total = &k.total;
    let tr = transpose(total);
    let mut spaces: BTreeMap<Weight, Echelon<usize>> = BTreeMap::new();
    let mut queue: Vec<SVec<usize>> = Vec::new();
    for (j, &deg) in k.lambda_degree.iter().enumerate() {
        if deg == 0 {
            let f: SVec<usize> = [(j, Coeff::one())].into_iter().collect();
            spaces
                .entry(total.weights[j].clone())
                .or_default()
                .insert(&f);
            queue.push(f);
        }
    }
    while let Some(f) = queue.pop() {
        for rows in tr.values() {
            let h = pull_back(&f, rows);
            let Some(&j) = h.keys().next() else { continue };
            let ech = spaces.entry(total.weights[j].clone()).or_default();
            let r = ech.reduce(&h);
            if !r.is_empty() {
                ech.insert(&r);
                queue.push(r);
            }
        }
    }

    let mut projection = Vec::new();
    let mut offsets = BTreeMap::new();
    for (w, ech) in &spaces {
        offsets.insert(w.clone(), projection.len());
        projection.extend(ech.rows().iter().cloned());
    }
    let mut labels = Vec::new();
    let mut weights = Vec::new();
    let mut parities = Vec::new();
    for (w, ech) in &spaces {
        for r in 0..ech.rank() {
            let p = *ech.pivot_of(r);
            labels.push(format!("[{}]", total.labels[p]));
            weights.push(w.clone());
            parities.push(total.parities[p]);
        }
    }
    let t = total.dims.total();
    let mut actions = BTreeMap::new();
    for (u, rows) in &tr {
        let mut cols = vec![Vec::new(); projection.len()];
        for (i, f) in projection.iter().enumerate() {
            let h = pull_back(f, rows);
            if h.is_empty() {
                continue;
            }
            let target = weights[i].sub(&Weight::from_ints(&u.weight_ints(t)));
            let coords = spaces[&target].coords(&h).expect("functionals are closed");
            for (r, c) in coords {
                cols[offsets[&target] + r].push((i, c));
            }
        }
        actions.insert(*u, cols);
    }

    let mut radical_dims = BTreeMap::new();
    for (w, idx) in total.weight_spaces() {
        let rank = spaces.get(&w).map_or(0, Echelon::rank);
        radical_dims.insert(w, idx.len() - rank);
    }
    let approximate = total.is_truncated();
    let quotient = WeightModule {
        dims: total.dims,
        labels,
        weights,
        parities,
        actions,
        escapes: BTreeMap::new(),
        truncation: total
            .truncation
            .clone()
            .map(|t| Truncation::Derived(Box::new(t))),
    };
    let certified =
        (!approximate && quotient.dim() <= 200).then(|| is_cyclic_everywhere(&quotient));
    SimpleTop {
        quotient,
        radical_dims,
        projection,
        approximate,
        certified,
    }
}

impl SimpleTop {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn radical_dim(&self) -> usize {
        self.radical_dims.values().sum()
    }

    /// A basis of the radical, weight space by weight space.
    pub fn radical_basis(&self, k: &KacModule) -> Vec<SVec<usize>> {
        let total = &k.total;
        let mut out = Vec::new();
        for (w, idx) in total.weight_spaces() {
            let rows: Vec<&SVec<usize>> = self
                .projection
                .iter()
                .filter(|f| f.keys().next().is_some_and(|&j| total.weights[j] == w))
                .collect();
            let pivots: BTreeSet<usize> = rows
                .iter()
                .map(|f| *f.keys().next().expect("nonzero"))
                .collect();
            for &free in idx.iter().filter(|j| !pivots.contains(j)) {
                let mut v: SVec<usize> = [(free, Coeff::one())].into_iter().collect();
                for f in &rows {
                    if let Some(c) = f.get(&free) {
                        add_entry(&mut v, *f.keys().next().expect("nonzero"), -c.clone());
                    }
                }
                out.push(v);
            }
        }
        out
    }

    pub fn summary(&self) -> SimpleTopSummary {
        SimpleTopSummary {
            dim: self.dim(),
            radical_dims: self
                .radical_dims
                .iter()
                .filter(|(_, &d)| d > 0)
                .map(|(w, &d)| (w.to_string(), d))
                .collect(),
            approximate: self.approximate,
            certified: self.certified,
        }
    }
}

/// The submodule generated by `v` under all units of `module`, and whether
/// the closure touched a truncation edge.
pub fn generated_submodule(module: &WeightModule, v: &SVec<usize>) -> (Echelon<usize>, bool) {
    let mut span = Echelon::new();
    let mut edge = false;
    let start = span.reduce(v);
    if start.is_empty() {
        return (span, edge);
    }
    span.insert(&start);
    let mut queue = vec![start];
    let units: Vec<GlUnit> = module.units().copied().collect();
    while let Some(x) = queue.pop() {
        for &u in &units {
            let (y, e) = module.act(u, &x);
            edge |= e;
            let r = span.reduce(&y);
            if !r.is_empty() {
                span.insert(&r);
                queue.push(r);
            }
        }
    }
    (span, edge)
}

/// Every basis vector, and one generic vector per weight space, generates
/// the whole module.
pub fn is_cyclic_everywhere(module: &WeightModule) -> bool {
    let full = module.dim();
    let mut probes: Vec<SVec<usize>> = (0..full)
        .map(|j| [(j, Coeff::one())].into_iter().collect())
        .collect();
    for idx in module.weight_spaces().values().filter(|idx| idx.len() > 1) {
        probes.push(
            idx.iter()
                .enumerate()
                .map(|(k, &j)| (j, Coeff::from_int(k as i64 + 1)))
                .collect(),
        );
    }
    probes
        .iter()
        .all(|v| generated_submodule(module, v).0.rank() == full)
}

/// Brute-force radical: the span of all proper cyclic submodules generated by
/// weight vectors drawn from each weight space (every small-integer vector
/// when the space is small, otherwise basis vectors plus seeded random
/// combinations).
pub fn brute_force_radical(k: &KacModule, seed: u64) -> Echelon<usize> {
    let total = &k.total;
    let full = total.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut radical = Echelon::new();
    for idx in total.weight_spaces().values() {
        let mut candidates: Vec<SVec<usize>> = Vec::new();
        let d = idx.len() as u32;
        if 5u64.pow(d) <= 4096 {
            for code in 1..5u64.pow(d) {
                let mut v = SVec::new();
                let mut c = code;
                for &j in idx {
                    add_entry(&mut v, j, Coeff::from_int((c % 5) as i64 - 2));
                    c /= 5;
                }
                if v.values()
                    .next()
                    .is_some_and(|x| x.as_scalar().is_some_and(|s| !s.is_negative()))
                {
                    candidates.push(v);
                }
            }
        } else {
            for &j in idx {
                candidates.push([(j, Coeff::one())].into_iter().collect());
            }
            for _ in 0..64 {
                let mut v = SVec::new();
                for &j in idx {
                    add_entry(&mut v, j, Coeff::from_int(rng.gen_range(-3..=3)));
                }
                candidates.push(v);
            }
        }
        for v in candidates {
            if v.is_empty() || radical.contains(&v) {
                continue;
            }
            let (span, _) = generated_submodule(total, &v);
            if span.rank() < full {
                for row in span.rows() {
                    radical.insert(row);
                }
            }
        }
    }
    radical
}

/// The brute-force radical and the invariant-subspace radical coincide.
pub fn radical_oracle_agrees(k: &KacModule, top: &SimpleTop, seed: u64) -> bool {
    let brute = brute_force_radical(k, seed);
    if brute.rank() != top.radical_dim() {
        return false;
    }
    top.radical_basis(k).iter().all(|v| brute.contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glrep::{build_glm_simple, build_gln_bounded, outer_product, GlnKind};
    use crate::index::Dims;

    fn gl11(a: i64, b: i64) -> KacModule {
        let d = Dims::new(1, 1).unwrap();
        kac_module(&WeightModule::one_dimensional(
            d,
            Weight::from_ints(&[a, b]),
        ))
        .unwrap()
    }

    #[test]
    fn trivial_gl11() {
        let k = gl11(0, 0);
        assert_eq!(k.dim(), 2);
        let d = k.total.dims;
        let up = GlUnit::new(d, 0, 1).unwrap();
        // E_12 · (E_21 ⊗ v) = (E_11 + E_22) ⊗ v = 0
        assert!(k.total.act_basis(up, 1).is_empty());
        assert!(k.total.verify_representation(&GlUnit::all(d)));
        let top = simple_top(&k);
        assert_eq!(top.dim(), 1);
        assert_eq!(top.certified, Some(true));
        let rad = top.radical_basis(&k);
        assert_eq!(rad.len(), 1);
        assert_eq!(rad[0].keys().copied().collect::<Vec<_>>(), vec![1]);
        assert!(k.total.labels[1].starts_with("E(2,1)"));
        assert!(radical_oracle_agrees(&k, &top, 1));
    }

    #[test]
    fn typical_gl11_is_simple() {
        let k = gl11(2, 1);
        let top = simple_top(&k);
        assert_eq!(top.dim(), 2);
        assert_eq!(top.radical_dim(), 0);
        assert!(radical_oracle_agrees(&k, &top, 1));
    }

    #[test]
    fn gl21_natural() {
        let v1 = build_glm_simple(&[1, 0]).unwrap();
        let v2 = build_gln_bounded(&GlnKind::Finite(vec![0])).unwrap();
        let v = outer_product(&v1, &v2).unwrap();
        let k = kac_module(&v).unwrap();
        assert_eq!(k.dim(), 8);
        assert!(k.lambda_degree_single_valued());
        assert!(k.total.respects_weights());
        assert!(k.total.verify_representation(&GlUnit::all(k.total.dims)));
        let top = simple_top(&k);
        assert!(top.dim() <= 8);
        assert_eq!(top.certified, Some(true));
        assert!(top
            .quotient
            .verify_representation(&GlUnit::all(k.total.dims)));
        assert!(radical_oracle_agrees(&k, &top, 7));
    }

    #[test]
    fn odd_input_rejected() {
        let k = gl11(0, 0);
        assert!(kac_module(&k.total).is_err());
    }
}
