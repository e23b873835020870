//! Koszul complexes computing Hochschild homology of bimodules over the
//! reduced ring.
//!
//! Term `h` holds one copy of the bimodule per subset `I` of the variables
//! with `|I| = h`, shifted up by `2h`. Subsets are encoded as bitmasks and
//! listed in lexicographic order of their sorted elements.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::bimodule::{BimoduleMap, GradedBimodule};
use crate::matrix::PolyMatrix;
use crate::poly::Poly;
use crate::rational::Rational;

/// Column-sparse matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePolyMatrix {
    pub rows: usize,
    pub cols: Vec<Vec<(usize, Poly)>>,
}

impl SparsePolyMatrix {
    pub fn zero(rows: usize, ncols: usize) -> Self {
        SparsePolyMatrix { rows, cols: alloc::vec![Vec::new(); ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn push(&mut self, row: usize, col: usize, p: Poly) {
        if !p.is_zero() {
            self.cols[col].push((row, p));
        }
    }

    /// Sums repeated rows and drops zeros, column by column.
    fn normalize(&mut self) {
        for col in &mut self.cols {
            col.sort_by_key(|e| e.0);
            let mut out: Vec<(usize, Poly)> = Vec::with_capacity(col.len());
            for (r, p) in core::mem::take(col) {
                match out.last_mut() {
                    Some((lr, lp)) if *lr == r => *lp = lp.add(&p),
                    _ => out.push((r, p)),
                }
            }
            out.retain(|(_, p)| !p.is_zero());
            *col = out;
        }
    }

    /// `self * other`.
    pub fn compose(&self, other: &SparsePolyMatrix) -> SparsePolyMatrix {
        let mut out = SparsePolyMatrix::zero(self.rows, other.ncols());
        for (c, col) in other.cols.iter().enumerate() {
            for (k, p) in col {
                for (r, q) in &self.cols[*k] {
                    out.cols[c].push((*r, q.mul(p)));
                }
            }
        }
        out.normalize();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }
}

/// A complex of graded free left modules, differential lowering `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    pub nvars: usize,
    /// Generator degrees per position.
    pub terms: BTreeMap<i32, Vec<i32>>,
    /// `diffs[h]` maps position `h` to `h - 1`.
    pub diffs: BTreeMap<i32, SparsePolyMatrix>,
}

impl FreeComplex {
    pub fn degrees(&self, h: i32) -> &[i32] {
        self.terms.get(&h).map_or(&[], Vec::as_slice)
    }

    pub fn diff(&self, h: i32) -> Option<&SparsePolyMatrix> {
        self.diffs.get(&h)
    }

    pub fn is_complex(&self) -> bool {
        self.diffs.iter().all(|(h, d)| self.diffs.get(&(h - 1)).is_none_or(|e| e.compose(d).is_zero()))
    }
}

/// Subsets of `0..n` with `k` elements, lexicographic in their elements.
pub fn subsets(n: usize, k: usize) -> Vec<u32> {
    fn rec(start: usize, n: usize, k: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(i + 1, n, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, 0, &mut out);
    out
}

/// Position of every subset inside its own size class.
fn subset_index(n: usize) -> BTreeMap<u32, usize> {
    let mut map = BTreeMap::new();
    for k in 0..=n {
        for (j, s) in subsets(n, k).into_iter().enumerate() {
            map.insert(s, j);
        }
    }
    map
}

/// The Koszul complex `C(M)`: differential blocks
/// `±(y_i · id - R(i))` from copy `I` to copy `I \ {i}`, with the minus
/// sign when `I` has an odd number of elements below `i`.
pub fn koszul_hh_complex(m: &GradedBimodule) -> FreeComplex {
    let n = m.nvars();
    let r = m.rank();
    let index = subset_index(n);
    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for h in 0..=n {
        let subs = subsets(n, h);
        let degrees: Vec<i32> = subs
            .iter()
            .flat_map(|_| m.degrees().iter().map(move |d| d + 2 * h as i32))
            .collect();
        terms.insert(h as i32, degrees);
        if h == 0 {
            continue;
        }
        let rows = subsets(n, h - 1).len() * r;
        let mut d = SparsePolyMatrix::zero(rows, subs.len() * r);
        for (j, &set) in subs.iter().enumerate() {
            for i in 0..n {
                if set & (1 << i) == 0 {
                    continue;
                }
                let below = (set & ((1u32 << i) - 1)).count_ones();
                let sign = if below % 2 == 1 { Rational::from_int(-1) } else { Rational::one() };
                let jt = index[&(set & !(1 << i))];
                let yi = Poly::var(n, i).scale(&sign);
                let action = m.action(i);
                for g in 0..r {
                    let col = j * r + g;
                    d.push(jt * r + g, col, yi.clone());
                    for (row, p) in action.column(g) {
                        d.push(jt * r + row, col, p.scale(&sign).neg());
                    }
                }
            }
        }
        d.normalize();
        diffs.insert(h as i32, d);
    }
    FreeComplex { nvars: n, terms, diffs }
}

/// The chain map induced by `f` on Koszul complexes: `f` applied on each
/// subset copy, no signs. Position `h` maps to position `h`.
pub fn koszul_hh_map(f: &BimoduleMap) -> BTreeMap<i32, SparsePolyMatrix> {
    let n = f.source.nvars();
    let (rs, rt) = (f.source.rank(), f.target.rank());
    let mut out = BTreeMap::new();
    for h in 0..=n {
        let copies = subsets(n, h).len();
        let mut m = SparsePolyMatrix::zero(copies * rt, copies * rs);
        for j in 0..copies {
            for g in 0..rs {
                for (row, p) in f.matrix.column(g) {
                    m.push(j * rt + row, j * rs + g, p.clone());
                }
            }
        }
        out.insert(h as i32, m);
    }
    out
}

/// A homotopy-equivalent smaller complex together with the comparison
/// maps: `proj[h]` (original -> minimal) and `incl[h]` (minimal ->
/// original) are chain maps with `proj ∘ incl = id`.
#[derive(Clone, Debug)]
pub struct MinimalComplex {
    pub complex: FreeComplex,
    pub proj: BTreeMap<i32, PolyMatrix>,
    pub incl: BTreeMap<i32, PolyMatrix>,
}

fn dense(d: &SparsePolyMatrix, nvars: usize) -> PolyMatrix {
    let mut m = PolyMatrix::zero(nvars, d.rows, d.ncols());
    for (c, col) in d.cols.iter().enumerate() {
        for (r, p) in col {
            m.set(*r, c, p.clone());
        }
    }
    m
}

fn sparse(m: &PolyMatrix) -> SparsePolyMatrix {
    let mut out = SparsePolyMatrix::zero(m.rows(), m.cols());
    for c in 0..m.cols() {
        for (r, p) in m.column(c) {
            out.cols[c].push((r, p.clone()));
        }
    }
    out
}

/// Cancels generator pairs joined by a nonzero constant entry until every
/// differential entry lies in the ideal of positive-degree polynomials.
pub fn minimize(c: &FreeComplex) -> MinimalComplex {
    let nv = c.nvars;
    let mut alive: BTreeMap<i32, Vec<bool>> = c.terms.iter().map(|(&h, g)| (h, alloc::vec![true; g.len()])).collect();
    let mut d: BTreeMap<i32, PolyMatrix> = c.diffs.iter().map(|(&h, m)| (h, dense(m, nv))).collect();
    let mut proj: BTreeMap<i32, PolyMatrix> =
        c.terms.iter().map(|(&h, g)| (h, PolyMatrix::identity(nv, g.len()))).collect();
    let mut incl = proj.clone();
    let positions: Vec<i32> = d.keys().copied().collect();
    for h in positions {
        loop {
            let dh = &d[&h];
            let (src, tgt) = (&alive[&h], &alive[&(h - 1)]);
            let pivot = (0..dh.cols())
                .filter(|&x| src[x])
                .find_map(|x| {
                    dh.column(x)
                        .find(|(y, p)| tgt[*y] && p.as_constant().is_some())
                        .map(|(y, p)| (x, y, p.as_constant().unwrap()))
                });
            let Some((x, y, c0)) = pivot else { break };
            let inv = c0.recip();
            let dh = d.get_mut(&h).unwrap();
            let col_x: Vec<(usize, Poly)> =
                dh.column(x).filter(|(b, _)| *b != y && tgt[*b]).map(|(b, p)| (b, p.scale(&inv))).collect();
            let row_y: Vec<(usize, Poly)> =
                (0..dh.cols()).filter(|&a| a != x && src[a]).map(|a| (a, dh.get(y, a).clone())).filter(|(_, p)| !p.is_zero()).collect();
            for (b, gb) in &col_x {
                for (a, da) in &row_y {
                    let v = dh.get(*b, *a).sub(&gb.mul(da));
                    dh.set(*b, *a, v);
                }
            }
            let p = proj.get_mut(&(h - 1)).unwrap();
            for (b, gb) in &col_x {
                for k in 0..p.cols() {
                    let py = p.get(y, k);
                    if !py.is_zero() {
                        let v = p.get(*b, k).sub(&gb.mul(py));
                        p.set(*b, k, v);
                    }
                }
            }
            let g = incl.get_mut(&h).unwrap();
            for (a, da) in &row_y {
                let da = da.scale(&inv);
                for k in 0..g.rows() {
                    let gx = g.get(k, x);
                    if !gx.is_zero() {
                        let v = g.get(k, *a).sub(&gx.mul(&da));
                        g.set(k, *a, v);
                    }
                }
            }
            alive.get_mut(&h).unwrap()[x] = false;
            alive.get_mut(&(h - 1)).unwrap()[y] = false;
        }
    }
    let keep = |h: i32| -> Vec<usize> { (0..alive[&h].len()).filter(|&i| alive[&h][i]).collect() };
    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    let mut proj_out = BTreeMap::new();
    let mut incl_out = BTreeMap::new();
    for (&h, degs) in &c.terms {
        let k = keep(h);
        terms.insert(h, k.iter().map(|&i| degs[i]).collect());
        let all: Vec<usize> = (0..degs.len()).collect();
        proj_out.insert(h, proj[&h].select(&k, &all));
        incl_out.insert(h, incl[&h].select(&all, &k));
    }
    for (&h, m) in &d {
        diffs.insert(h, sparse(&m.select(&keep(h - 1), &keep(h))));
    }
    MinimalComplex { complex: FreeComplex { nvars: nv, terms, diffs }, proj: proj_out, incl: incl_out }
}

/// Block-diagonal matrix with `copies` copies of `m`.
pub fn block_diagonal(m: &PolyMatrix, copies: usize) -> PolyMatrix {
    let mut out = PolyMatrix::zero(m.nvars(), copies * m.rows(), copies * m.cols());
    for j in 0..copies {
        for c in 0..m.cols() {
            for (r, p) in m.column(c) {
                out.set(j * m.rows() + r, j * m.cols() + c, p.clone());
            }
        }
    }
    out
}
