//! Sparse exact linear algebra: vectors keyed by an ordered basis label and
//! incrementally maintained reduced row echelon bases.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Rational;

/// A finitely supported vector; zero coefficients are never stored.
pub type SparseVec<K> = BTreeMap<K, Rational>;

pub fn add_scaled<K: Ord + Clone>(acc: &mut SparseVec<K>, v: &SparseVec<K>, s: &Rational) {
    if s.is_zero() {
        return;
    }
    for (k, c) in v {
        add_term(acc, k.clone(), c * s);
    }
}

pub fn add_term<K: Ord>(acc: &mut SparseVec<K>, k: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match acc.entry(k) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub fn scaled<K: Ord + Clone>(v: &SparseVec<K>, s: &Rational) -> SparseVec<K> {
    if s.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(k, c)| (k.clone(), c * s)).collect()
}

/// Reduced row echelon basis of a subspace. Each row has coefficient 1 at its
/// pivot (its smallest key) and 0 at every other row's pivot.
#[derive(Clone, Debug)]
pub struct EchelonBasis<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for EchelonBasis<K> {
    fn default() -> Self {
        EchelonBasis {
            rows: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> EchelonBasis<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    pub fn is_pivot(&self, k: &K) -> bool {
        self.rows.contains_key(k)
    }

    /// The remainder of `v` modulo the span; zero at every pivot.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut out = v.clone();
        for (p, row) in &self.rows {
            if let Some(c) = out.get(p).cloned() {
                add_scaled(&mut out, row, &-c);
            }
        }
        out
    }

    /// Adds `v` to the span. Returns `true` when the span grew.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let mut r = self.reduce(v);
        let Some((pivot, lead)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        if !lead.is_one() {
            r = scaled(&r, &lead.recip());
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                add_scaled(row, &r, &-c);
            }
        }
        self.rows.insert(pivot, r);
        true
    }

    /// Coordinates of `v` over the rows (pivot → coefficient) if `v` is in the span.
    pub fn coordinates(&self, v: &SparseVec<K>) -> Option<Vec<(K, Rational)>> {
        if !self.reduce(v).is_empty() {
            return None;
        }
        Some(
            self.rows
                .keys()
                .filter_map(|p| v.get(p).map(|c| (p.clone(), c.clone())))
                .collect(),
        )
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Recombines coordinates produced by [`Self::coordinates`].
    pub fn combine(&self, coords: &[(K, Rational)]) -> SparseVec<K> {
        let mut out = SparseVec::new();
        for (p, c) in coords {
            if let Some(row) = self.rows.get(p) {
                add_scaled(&mut out, row, c);
            }
        }
        out
    }
}

/// Basis of the null space of the linear map sending column key `j` to
/// `columns[j]`, returned as vectors over the column keys in echelon form.
pub fn null_space<C: Ord + Clone, R: Ord + Clone>(
    columns: &[(C, SparseVec<R>)],
) -> EchelonBasis<C> {
    // Row-reduce the augmented system [image | identity] column by column.
    let mut tracked: Vec<(SparseVec<R>, SparseVec<C>)> = Vec::new();
    let mut kernel = EchelonBasis::new();
    for (key, col) in columns {
        let mut img = col.clone();
        let mut pre: SparseVec<C> = SparseVec::new();
        pre.insert(key.clone(), Rational::one());
        for (tv, tp) in &tracked {
            let p = tv.keys().next().unwrap();
            if let Some(c) = img.get(p).cloned() {
                let c = -c;
                add_scaled(&mut img, tv, &c);
                add_scaled(&mut pre, tp, &c);
            }
        }
        if img.is_empty() {
            kernel.insert(&pre);
        } else {
            let lead = img.values().next().unwrap().recip();
            let img = scaled(&img, &lead);
            let pre = scaled(&pre, &lead);
            let p = img.keys().next().unwrap().clone();
            for (tv, tp) in tracked.iter_mut() {
                if let Some(c) = tv.get(&p).cloned() {
                    let c = -c;
                    add_scaled(tv, &img, &c);
                    add_scaled(tp, &pre, &c);
                }
            }
            tracked.push((img, pre));
        }
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn v(entries: &[(u32, Rational)]) -> SparseVec<u32> {
        let mut out = SparseVec::new();
        for (k, c) in entries {
            add_term(&mut out, *k, c.clone());
        }
        out
    }

    #[test]
    fn echelon_membership_and_certificates() {
        let mut b = EchelonBasis::new();
        assert!(b.insert(&v(&[(0, int(2)), (1, int(4))])));
        assert!(b.insert(&v(&[(1, int(1)), (2, int(1))])));
        assert!(!b.insert(&v(&[(0, int(1)), (1, int(3)), (2, int(1))])));
        assert_eq!(b.dim(), 2);
        let x = v(&[(0, int(3)), (1, int(5)), (2, int(-1))]);
        let coords = b.coordinates(&x).unwrap();
        assert_eq!(b.combine(&coords), x);
        assert!(b.coordinates(&v(&[(2, int(1))])).is_none());
        assert!(b.contains(&SparseVec::new()));
    }

    #[test]
    fn null_space_small() {
        // columns: e0 -> (1,1), e1 -> (2,2), e2 -> (0,1)
        let cols = vec![
            (0u32, v(&[(0, int(1)), (1, int(1))])),
            (1u32, v(&[(0, int(2)), (1, int(2))])),
            (2u32, v(&[(1, int(1))])),
        ];
        let k = null_space(&cols);
        assert_eq!(k.dim(), 1);
        let row = k.rows().next().unwrap();
        assert_eq!(row, &v(&[(0, int(1)), (1, rat(-1, 2))]));
    }
}
