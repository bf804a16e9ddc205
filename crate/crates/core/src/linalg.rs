//! Sparse exact linear algebra over [`Coeff`]: vectors keyed by any ordered
//! basis label and an incrementally maintained reduced row echelon form.

use std::collections::BTreeMap;

use crate::param::Coeff;

pub type SVec<K> = BTreeMap<K, Coeff>;

/// `v += c · w`, dropping cancelled entries.
pub fn axpy<K: Ord + Clone>(v: &mut SVec<K>, c: &Coeff, w: &SVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in w {
        let add = c * x;
        match v.get_mut(k) {
            Some(y) => {
                let s = &*y + &add;
                if s.is_zero() {
                    v.remove(k);
                } else {
                    *y = s;
                }
            }
            None => {
                if !add.is_zero() {
                    v.insert(k.clone(), add);
                }
            }
        }
    }
}

pub fn scaled<K: Ord + Clone>(v: &SVec<K>, c: &Coeff) -> SVec<K> {
    if c.is_zero() {
        return SVec::new();
    }
    v.iter().map(|(k, x)| (k.clone(), c * x)).collect()
}

pub fn add_entry<K: Ord>(v: &mut SVec<K>, k: K, c: Coeff) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(&k) {
        Some(y) => {
            let s = &*y + &c;
            if s.is_zero() {
                v.remove(&k);
            } else {
                *y = s;
            }
        }
        None => {
            v.insert(k, c);
        }
    }
}

/// A subspace in reduced row echelon form. Each row has leading entry 1 at
/// its pivot (its smallest key) and zeros at every other pivot.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: Vec<SVec<K>>,
    pivots: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SVec<K>] {
        &self.rows
    }

    pub fn pivot_keys(&self) -> impl Iterator<Item = &K> {
        self.pivots.keys()
    }

    pub fn pivot_of(&self, row: usize) -> &K {
        self.rows[row].keys().next().expect("rows are nonzero")
    }

    pub fn reduce(&self, v: &SVec<K>) -> SVec<K> {
        let hits: Vec<(usize, Coeff)> = v
            .iter()
            .filter_map(|(k, c)| self.pivots.get(k).map(|&r| (r, c.clone())))
            .collect();
        let mut out = v.clone();
        for (r, c) in hits {
            axpy(&mut out, &-c, &self.rows[r]);
        }
        out
    }

    pub fn contains(&self, v: &SVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns the new row's index when `v` was
    /// independent.
    pub fn insert(&mut self, v: &SVec<K>) -> Option<usize> {
        let mut r = self.reduce(v);
        let (pk, lead) = r.iter().next().map(|(k, c)| (k.clone(), c.clone()))?;
        let inv = lead.recip();
        r = scaled(&r, &inv);
        for row in self.rows.iter_mut() {
            if let Some(c) = row.get(&pk).cloned() {
                axpy(row, &-c, &r);
            }
        }
        self.pivots.insert(pk, self.rows.len());
        self.rows.push(r);
        Some(self.rows.len() - 1)
    }

    /// Coordinates of `v` in the row basis, if `v` lies in the span.
    pub fn coords(&self, v: &SVec<K>) -> Option<Vec<(usize, Coeff)>> {
        let coords: Vec<(usize, Coeff)> = v
            .iter()
            .filter_map(|(k, c)| self.pivots.get(k).map(|&r| (r, c.clone())))
            .collect();
        let mut rest = v.clone();
        for (r, c) in &coords {
            axpy(&mut rest, &-c.clone(), &self.rows[*r]);
        }
        rest.is_empty().then_some(coords)
    }
}
