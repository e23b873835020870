//! Exact sparse linear algebra over the rationals.
//!
//! Matrices are handled column by column. Elimination keys every reduced
//! column on its lowest nonzero row, so reducing a vector only ever looks
//! at leading entries.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::rational::Rational;

/// Sparse vector: strictly increasing indices, nonzero values.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseVec {
    pub entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, Rational::one())] }
    }

    /// From unsorted entries, summing repeats and dropping zeros.
    pub fn from_unsorted(mut entries: Vec<(usize, Rational)>) -> Self {
        entries.sort_by_key(|e| e.0);
        let mut out: Vec<(usize, Rational)> = Vec::with_capacity(entries.len());
        for (i, c) in entries {
            match out.last_mut() {
                Some((j, d)) if *j == i => *d += &c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SparseVec { entries: out }
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); len];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &Rational, other: &SparseVec) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let a = core::mem::take(&mut self.entries);
        let b = &other.entries;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut j = 0;
        for (ai, av) in a {
            while j < b.len() && b[j].0 < ai {
                out.push((b[j].0, c * &b[j].1));
                j += 1;
            }
            if j < b.len() && b[j].0 == ai {
                let v = &av + &(c * &b[j].1);
                if !v.is_zero() {
                    out.push((ai, v));
                }
                j += 1;
            } else {
                out.push((ai, av));
            }
        }
        out.extend(b[j..].iter().map(|(i, v)| (*i, c * v)));
        self.entries = out;
    }
}

/// Column-major sparse matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, ncols: usize) -> Self {
        SparseMatrix { rows, cols: vec![SparseVec::new(); ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, c) in &v.entries {
            out.axpy(c, &self.cols[*j]);
        }
        out
    }

    /// `self * other`.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        SparseMatrix { rows: self.rows, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn from_dense(rows: usize, cols: usize, entries: &[Vec<Rational>]) -> Self {
        let mut m = SparseMatrix::zero(rows, cols);
        for (j, col) in m.cols.iter_mut().enumerate() {
            *col = SparseVec::from_unsorted((0..rows).map(|i| (i, entries[i][j].clone())).collect());
        }
        m
    }

    /// Rank by sparse elimination with Markowitz-style pivots: shortest
    /// column first, then the sparsest row in it, preferring unit entries.
    pub fn rank(&self) -> usize {
        let mut cols: Vec<SparseVec> = self.cols.iter().filter(|c| !c.is_zero()).cloned().collect();
        let mut alive = vec![true; cols.len()];
        let mut rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.rows];
        for (j, c) in cols.iter().enumerate() {
            for (i, _) in &c.entries {
                rows[*i].insert(j);
            }
        }
        let mut rank = 0;
        loop {
            let Some(p) = (0..cols.len()).filter(|&j| alive[j]).min_by_key(|&j| cols[j].entries.len()) else {
                return rank;
            };
            alive[p] = false;
            if cols[p].is_zero() {
                continue;
            }
            let (r, c) = cols[p]
                .entries
                .iter()
                .min_by_key(|(i, v)| (rows[*i].len(), !(v.is_one() || (-v).is_one())))
                .map(|(i, v)| (*i, v.clone()))
                .unwrap();
            let pivot = core::mem::take(&mut cols[p]);
            for (i, _) in &pivot.entries {
                rows[*i].remove(&p);
            }
            let others: Vec<usize> = rows[r].iter().copied().collect();
            let inv = c.recip();
            for j in others {
                let f = -&(&cols[j].get(r) * &inv);
                cols[j].axpy(&f, &pivot);
                for (i, _) in &pivot.entries {
                    if cols[j].get(*i).is_zero() {
                        rows[*i].remove(&j);
                    } else {
                        rows[*i].insert(j);
                    }
                }
            }
            rank += 1;
        }
    }
}

/// Incrementally built echelon basis. Every stored vector carries a tag
/// vector that records what it is a combination of.
#[derive(Clone, Debug)]
pub struct Echelon {
    pivots: Vec<Option<(SparseVec, Option<SparseVec>)>>,
    count: usize,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { pivots: vec![None; dim], count: 0 }
    }

    pub fn rank(&self) -> usize {
        self.count
    }

    /// Reduces `v` (with optional `tag`) against the basis; on a nonzero
    /// remainder stores it and returns its pivot row.
    pub fn insert(&mut self, v: SparseVec, tag: Option<SparseVec>) -> Option<usize> {
        let (rem, tag) = self.reduce(v, tag, |_, _| {});
        let (lead, c) = rem.leading().map(|(i, c)| (i, c.clone()))?;
        let inv = c.recip();
        let rem = rem.scale(&inv);
        let tag = tag.map(|t| t.scale(&inv));
        self.pivots[lead] = Some((rem, tag));
        self.count += 1;
        Some(lead)
    }

    /// Reduces until the leading entry has no pivot. Calls `visit(pivot,
    /// factor)` for each subtraction of `factor * basis[pivot]`.
    pub fn reduce(
        &self,
        mut v: SparseVec,
        mut tag: Option<SparseVec>,
        mut visit: impl FnMut(usize, &Rational),
    ) -> (SparseVec, Option<SparseVec>) {
        while let Some((lead, c)) = v.leading().map(|(i, c)| (i, c.clone())) {
            match &self.pivots[lead] {
                Some((p, ptag)) => {
                    visit(lead, &c);
                    let f = -&c;
                    v.axpy(&f, p);
                    if let (Some(t), Some(pt)) = (tag.as_mut(), ptag.as_ref()) {
                        t.axpy(&f, pt);
                    }
                }
                None => break,
            }
        }
        (v, tag)
    }

    pub fn pivot_tag(&self, row: usize) -> Option<&SparseVec> {
        self.pivots[row].as_ref().and_then(|(_, t)| t.as_ref())
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone(), None, |_, _| {}).0.is_zero()
    }
}

/// Basis of the kernel of `m`, as vectors over its columns.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<SparseVec> {
    let mut ech = Echelon::new(m.rows);
    let mut out = Vec::new();
    for (j, col) in m.cols.iter().enumerate() {
        let (rem, tag) = ech.reduce(col.clone(), Some(SparseVec::unit(j)), |_, _| {});
        match rem.leading().map(|(i, c)| (i, c.clone())) {
            None => out.push(tag.unwrap()),
            Some((lead, c)) => {
                let inv = c.recip();
                ech.pivots[lead] = Some((rem.scale(&inv), tag.map(|t| t.scale(&inv))));
                ech.count += 1;
            }
        }
    }
    out
}

/// Some solution `x` of `m x = b`, if one exists.
pub fn solve(m: &SparseMatrix, b: &SparseVec) -> Option<SparseVec> {
    let mut ech = Echelon::new(m.rows);
    for (j, col) in m.cols.iter().enumerate() {
        ech.insert(col.clone(), Some(SparseVec::unit(j)));
    }
    let mut x = SparseVec::new();
    let (rem, _) = ech.reduce(b.clone(), None, |row, f| {
        x.axpy(f, ech.pivot_tag(row).unwrap());
    });
    rem.is_zero().then_some(x)
}

/// Inverse of a dense square rational matrix (row-major), if invertible.
pub fn invert_dense(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, p) in m[r].iter_mut().zip(pivot_row.iter()) {
                    *x -= &(&f * p);
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn mat(rows: &[&[i64]]) -> SparseMatrix {
        let dense: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        SparseMatrix::from_dense(rows.len(), rows[0].len(), &dense)
    }

    proptest::proptest! {
        #[test]
        fn markowitz_rank_matches_echelon(
            rows in 1usize..9,
            entries in proptest::collection::vec((0usize..9, 0usize..9, -3i64..4), 0..40),
        ) {
            let mut dense = vec![vec![Rational::zero(); 9]; rows];
            for (r, c, v) in entries {
                dense[r % rows][c] = Rational::from_int(v);
            }
            let m = SparseMatrix::from_dense(rows, 9, &dense);
            let mut ech = Echelon::new(rows);
            let expect = m.cols.iter().filter(|c| ech.insert((*c).clone(), None).is_some()).count();
            proptest::prop_assert_eq!(m.rank(), expect);
        }
    }

    #[test]
    fn kernel_and_rank() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let ker = kernel_basis(&m);
        assert_eq!(ker.len(), 2);
        for k in &ker {
            assert!(m.apply(k).is_zero());
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = mat(&[&[1, 1], &[0, 2], &[1, 3]]);
        let b = SparseVec::from_dense(&[q(3), q(4), q(7)]);
        let x = solve(&m, &b).unwrap();
        assert_eq!(m.apply(&x), b);
        let bad = SparseVec::from_dense(&[q(1), q(0), q(0)]);
        assert!(solve(&m, &bad).is_none());
    }

    #[test]
    fn dense_inverse() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = invert_dense(&a).unwrap();
        assert_eq!(inv, vec![vec![q(1), q(-1)], vec![q(-1), q(2)]]);
        assert!(invert_dense(&[vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
    }

    #[test]
    fn axpy_merges() {
        let mut a = SparseVec::from_unsorted(vec![(0, q(1)), (3, q(2))]);
        let b = SparseVec::from_unsorted(vec![(1, q(1)), (3, q(1)), (5, q(1))]);
        a.axpy(&q(-2), &b);
        assert_eq!(a, SparseVec::from_unsorted(vec![(0, q(1)), (1, q(-2)), (5, q(-2))]));
    }
}
