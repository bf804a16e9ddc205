//! PBW normal forms in the enveloping algebra of a Lie superalgebra given by
//! an ordered basis of letters and their brackets.
//!
//! A word is normal when its letters are non-decreasing and no odd letter is
//! repeated. Rewriting uses `x·y = (-1)^{|x||y|} y·x + [x,y]` at the leftmost
//! descent and `x·x = ½[x,x]` for equal odd letters. Normal forms of whole
//! words are memoized in a concurrent map.

use std::hash::Hash;
use std::sync::Arc;

use dashmap::DashMap;
use smallvec::SmallVec;

use crate::lincomb::LinComb;
use crate::scalar::Scalar;

pub trait LieLetter: Clone + Ord + Hash + Eq + Send + Sync {
    fn parity(&self) -> u32;
    /// `[self, other]` in the letter basis.
    fn bracket(&self, other: &Self) -> Vec<(Self, Scalar)>;
}

pub type Word<L> = SmallVec<[L; 4]>;

pub fn word_parity<L: LieLetter>(w: &[L]) -> u32 {
    w.iter().map(LieLetter::parity).sum::<u32>() % 2
}

pub struct PbwEngine<L: LieLetter> {
    memo: DashMap<Word<L>, Arc<LinComb<Word<L>>>>,
}

impl<L: LieLetter> Default for PbwEngine<L> {
    fn default() -> Self {
        PbwEngine {
            memo: DashMap::new(),
        }
    }
}

impl<L: LieLetter> PbwEngine<L> {
    pub fn new() -> Self {
        PbwEngine::default()
    }

    pub fn is_normal(w: &[L]) -> bool {
        Self::first_descent(w).is_none()
    }

    fn first_descent(w: &[L]) -> Option<usize> {
        (0..w.len().saturating_sub(1)).find(|&i| {
            let (x, y) = (&w[i], &w[i + 1]);
            x > y || (x == y && x.parity() == 1)
        })
    }

    /// The normal form of an arbitrary word.
    pub fn normalize(&self, w: &[L]) -> Arc<LinComb<Word<L>>> {
        let Some(i) = Self::first_descent(w) else {
            return Arc::new(LinComb::basis(w.iter().cloned().collect::<Word<_>>()));
        };
        if let Some(hit) = self.memo.get(w) {
            return Arc::clone(hit.value());
        }
        let (x, y) = (&w[i], &w[i + 1]);
        let mut out = LinComb::zero();
        let splice = |z: &L| -> Word<L> {
            let mut v: Word<L> = SmallVec::with_capacity(w.len() - 1);
            v.extend(w[..i].iter().cloned());
            v.push(z.clone());
            v.extend(w[i + 2..].iter().cloned());
            v
        };
        if x == y {
            let half = Scalar::new(1, 2);
            for (z, c) in x.bracket(y) {
                out.add_scaled(&self.normalize(&splice(&z)), &(&c * &half));
            }
        } else {
            let mut swapped: Word<L> = w.iter().cloned().collect::<Word<_>>();
            swapped.swap(i, i + 1);
            let sign = Scalar::sign(x.parity() * y.parity());
            out.add_scaled(&self.normalize(&swapped), &sign);
            for (z, c) in x.bracket(y) {
                out.add_scaled(&self.normalize(&splice(&z)), &c);
            }
        }
        let out = Arc::new(out);
        self.memo
            .insert(w.iter().cloned().collect::<Word<_>>(), Arc::clone(&out));
        out
    }

    /// Product of two linear combinations of words.
    pub fn product(&self, a: &LinComb<Word<L>>, b: &LinComb<Word<L>>) -> LinComb<Word<L>> {
        let mut out = LinComb::zero();
        for (u, x) in a.iter() {
            for (v, y) in b.iter() {
                let mut w: Word<L> = u.clone();
                w.extend(v.iter().cloned());
                out.add_scaled(&self.normalize(&w), &(x * y));
            }
        }
        out
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}
