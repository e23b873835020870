//! Degreewise homology and the iterated homology `HHH` of a braid.
//!
//! Every graded piece of a free module over the reduced ring is finite
//! dimensional, so each computation runs on exact rational matrices for a
//! single internal degree `q`. Hochschild homology is taken first, summand
//! by summand; the Rouquier differentials then act on chosen
//! representatives and the homology in the `t` direction is taken last.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::hochschild::{block_diagonal, koszul_hh_complex, minimize, subsets, FreeComplex, MinimalComplex, SparsePolyMatrix};
use crate::laurent::LaurentPoly;
use crate::linalg::{kernel_basis, solve, Echelon, SparseMatrix, SparseVec};
use crate::matrix::PolyMatrix;
use crate::poly::Mono;
use crate::rational::Rational;
use crate::rouquier::{braid_complex, reduced_braid_complex, BimoduleComplex};

/// The `(generator, monomial)` pairs of total degree `q`.
#[derive(Clone, Debug)]
pub struct SliceBasis {
    starts: Vec<usize>,
    totals: Vec<Option<u32>>,
    monos: BTreeMap<u32, Vec<Mono>>,
    entries: Vec<(usize, Mono)>,
}

impl SliceBasis {
    pub fn new(nvars: usize, degrees: &[i32], q: i32) -> Self {
        let mut monos: BTreeMap<u32, Vec<Mono>> = BTreeMap::new();
        let mut starts = Vec::with_capacity(degrees.len() + 1);
        let mut totals = Vec::with_capacity(degrees.len());
        let mut entries = Vec::new();
        for (g, &d) in degrees.iter().enumerate() {
            starts.push(entries.len());
            let e = q - d;
            if e < 0 || e % 2 != 0 {
                totals.push(None);
                continue;
            }
            let total = (e / 2) as u32;
            let list = monos.entry(total).or_insert_with(|| Mono::all_of_total(nvars, total));
            entries.extend(list.iter().map(|&m| (g, m)));
            totals.push(Some(total));
        }
        starts.push(entries.len());
        SliceBasis { starts, totals, monos, entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn index(&self, generator: usize, mono: Mono) -> Option<usize> {
        let total = self.totals[generator]?;
        let k = self.monos[&total].binary_search(&mono).ok()?;
        Some(self.starts[generator] + k)
    }

    pub fn entry(&self, idx: usize) -> (usize, Mono) {
        self.entries[idx]
    }
}

/// Expands a polynomial matrix into the rational matrix between slices.
fn slice_matrix(d: &SparsePolyMatrix, src: &SliceBasis, tgt: &SliceBasis) -> SparseMatrix {
    let cols = src
        .entries
        .iter()
        .map(|&(g, mu)| {
            let mut entries = Vec::new();
            for (row, p) in &d.cols[g] {
                for (nu, x) in p.terms() {
                    let i = tgt.index(*row, nu.mul(mu)).expect("homogeneous differential");
                    entries.push((i, x.clone()));
                }
            }
            SparseVec::from_unsorted(entries)
        })
        .collect();
    SparseMatrix { rows: tgt.dim(), cols }
}

/// A finite-dimensional rational complex with differentials lowering the
/// position: `diffs[p] : C_p -> C_{p-1}`.
#[derive(Clone, Debug, Default)]
pub struct SlicedComplex {
    pub dims: BTreeMap<i32, usize>,
    pub diffs: BTreeMap<i32, SparseMatrix>,
    pub bases: BTreeMap<i32, SliceBasis>,
}

impl SlicedComplex {
    pub fn from_maps(dims: BTreeMap<i32, usize>, diffs: BTreeMap<i32, SparseMatrix>) -> Self {
        SlicedComplex { dims, diffs, bases: BTreeMap::new() }
    }
}

/// The degree-`q` part of a free complex.
pub fn degree_slice(c: &FreeComplex, q: i32) -> SlicedComplex {
    let bases: BTreeMap<i32, SliceBasis> =
        c.terms.iter().map(|(&h, degs)| (h, SliceBasis::new(c.nvars, degs, q))).collect();
    let dims = bases.iter().map(|(&h, b)| (h, b.dim())).collect();
    let diffs = c
        .diffs
        .iter()
        .map(|(&h, d)| (h, slice_matrix(d, &bases[&h], &bases[&(h - 1)])))
        .collect();
    SlicedComplex { dims, diffs, bases }
}

/// Writes cycles in terms of chosen homology representatives.
#[derive(Clone, Debug)]
pub struct Projector {
    ech: Echelon,
    reps: Vec<SparseVec>,
    incoming: Option<SparseMatrix>,
}

impl Projector {
    /// Coordinates of the class of the cycle `z`.
    pub fn project(&self, z: &SparseVec) -> Result<SparseVec> {
        let mut coords = SparseVec::new();
        let (rem, _) = self.ech.reduce(z.clone(), None, |row, f| {
            if let Some(tag) = self.ech.pivot_tag(row) {
                coords.axpy(f, tag);
            }
        });
        if !rem.is_zero() {
            return Err(Error::NotACycle);
        }
        Ok(coords)
    }

    /// Coordinates `a` and a chain `w` with `z = Σ a_k rep_k + d w`.
    pub fn project_with_witness(&self, z: &SparseVec) -> Result<(SparseVec, SparseVec)> {
        let coords = self.project(z)?;
        let mut rest = z.clone();
        for (k, a) in &coords.entries {
            rest.axpy(&-a, &self.reps[*k]);
        }
        let w = match &self.incoming {
            Some(d) => solve(d, &rest).ok_or(Error::NotACycle)?,
            None if rest.is_zero() => SparseVec::new(),
            None => return Err(Error::NotACycle),
        };
        Ok((coords, w))
    }
}

#[derive(Clone, Debug)]
pub struct HomologyAt {
    pub dim: usize,
    pub reps: Vec<SparseVec>,
    pub projector: Projector,
}

/// Homology at every position, with representatives chosen from a kernel
/// basis.
pub fn homology_with_reps(s: &SlicedComplex) -> Result<BTreeMap<i32, HomologyAt>> {
    for (&p, d) in &s.diffs {
        if let Some(e) = s.diffs.get(&(p - 1)) {
            if !e.compose(d).is_zero() {
                return Err(Error::NotAComplex { position: p });
            }
        }
    }
    let mut out = BTreeMap::new();
    for (&p, &dim) in &s.dims {
        let kernel = match s.diffs.get(&p) {
            Some(d) => kernel_basis(d),
            None => (0..dim).map(SparseVec::unit).collect(),
        };
        let incoming = s.diffs.get(&(p + 1)).cloned();
        let mut ech = Echelon::new(dim);
        if let Some(d) = &incoming {
            for col in &d.cols {
                ech.insert(col.clone(), None);
            }
        }
        let mut reps = Vec::new();
        for v in kernel {
            if ech.insert(v.clone(), Some(SparseVec::unit(reps.len()))).is_some() {
                reps.push(v);
            }
        }
        let projector = Projector { ech, reps: reps.clone(), incoming };
        out.insert(p, HomologyAt { dim: reps.len(), reps, projector });
    }
    Ok(out)
}

/// Dimensions indexed by `(q, h, t)`: internal degree, Hochschild degree,
/// cohomological degree. Only `q <= qmax` is computed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TrigradedDims {
    pub entries: BTreeMap<(i32, i32, i32), u64>,
    pub qmax: i32,
}

impl TrigradedDims {
    pub fn new(qmax: i32) -> Self {
        TrigradedDims { entries: BTreeMap::new(), qmax }
    }

    pub fn insert(&mut self, key: (i32, i32, i32), dim: u64) {
        if dim > 0 {
            *self.entries.entry(key).or_insert(0) += dim;
        }
    }

    pub fn get(&self, q: i32, h: i32, t: i32) -> u64 {
        self.entries.get(&(q, h, t)).copied().unwrap_or(0)
    }

    pub fn total_rank(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn shifted(&self, dq: i32, dh: i32, dt: i32) -> Self {
        TrigradedDims {
            entries: self.entries.iter().map(|(&(q, h, t), &d)| ((q + dq, h + dh, t + dt), d)).collect(),
            qmax: self.qmax + dq,
        }
    }

    /// Entries with `q <= bound`.
    pub fn truncated(&self, bound: i32) -> Self {
        TrigradedDims {
            entries: self.entries.iter().filter(|(k, _)| k.0 <= bound).map(|(k, d)| (*k, *d)).collect(),
            qmax: bound.min(self.qmax),
        }
    }
}

/// Everything about a braid that does not depend on `q`: the (optionally
/// reduced) Rouquier complex, a minimal Koszul complex for every summand
/// word and the Rouquier blocks transported to those minimal complexes.
pub struct HhhPlan {
    complex: BimoduleComplex,
    koszul: BTreeMap<Vec<usize>, MinimalComplex>,
    blocks: BTreeMap<(usize, usize), BTreeMap<i32, PolyMatrix>>,
    qmax: i32,
}

struct SummandHomology {
    bases: BTreeMap<i32, SliceBasis>,
    homology: BTreeMap<i32, HomologyAt>,
}

impl HhhPlan {
    pub fn new(word: &BraidWord, qmax: i32, reduce: bool) -> Result<Self> {
        let complex = if reduce { reduced_braid_complex(word)? } else { braid_complex(word)? };
        Self::from_complex(complex, qmax)
    }

    pub fn from_complex(complex: BimoduleComplex, qmax: i32) -> Result<Self> {
        if qmax < 0 || qmax % 2 != 0 {
            return Err(Error::InvalidQmax(qmax));
        }
        let complex = complex.compact();
        let mut koszul = BTreeMap::new();
        for id in complex.ids() {
            let s = complex.summand(id);
            if !koszul.contains_key(&s.word) {
                koszul.insert(s.word.clone(), minimize(&koszul_hh_complex(&s.module.shift(-s.shift))));
            }
        }
        let nvars = complex.strands() - 1;
        let mut blocks = BTreeMap::new();
        for src in complex.ids() {
            let ks = &koszul[&complex.summand(src).word];
            for (tgt, block) in complex.outgoing(src) {
                let kt = &koszul[&complex.summand(tgt).word];
                let per_h = (0..=nvars as i32)
                    .map(|h| {
                        let copies = subsets(nvars, h as usize).len();
                        let full = block_diagonal(block, copies);
                        (h, kt.proj[&h].mul(&full).mul(&ks.incl[&h]))
                    })
                    .collect();
                blocks.insert((src, tgt), per_h);
            }
        }
        Ok(HhhPlan { complex, koszul, blocks, qmax })
    }

    pub fn complex(&self) -> &BimoduleComplex {
        &self.complex
    }

    pub fn qmax(&self) -> i32 {
        self.qmax
    }

    /// The internal degrees that can carry homology, in increasing order.
    pub fn q_values(&self) -> Vec<i32> {
        let ids = self.complex.ids();
        let Some(lo) = ids.iter().map(|&i| self.complex.summand(i).shift).min() else {
            return Vec::new();
        };
        (lo..=self.qmax).step_by(2).collect()
    }

    /// All `((q, h, t), dim)` with nonzero dimension at this `q`.
    pub fn compute_q(&self, q: i32) -> Result<Vec<((i32, i32, i32), u64)>> {
        let c = &self.complex;
        let ids = c.ids();
        let mut local: BTreeMap<(Vec<usize>, i32), SummandHomology> = BTreeMap::new();
        for &id in &ids {
            let s = c.summand(id);
            let key = (s.word.clone(), q - s.shift);
            if local.contains_key(&key) {
                continue;
            }
            let sliced = degree_slice(&self.koszul[&s.word].complex, key.1);
            let homology = homology_with_reps(&sliced)?;
            local.insert(key, SummandHomology { bases: sliced.bases, homology });
        }
        let lookup = |id: usize| {
            let s = c.summand(id);
            &local[&(s.word.clone(), q - s.shift)]
        };

        let nvars = c.strands() - 1;
        let mut out = Vec::new();
        for h in 0..=nvars as i32 {
            // positions of every summand's classes inside V_t
            let mut offset: BTreeMap<usize, usize> = BTreeMap::new();
            let mut dim_t: BTreeMap<i32, usize> = BTreeMap::new();
            for &id in &ids {
                let d = dim_t.entry(c.t_of(id)).or_insert(0);
                offset.insert(id, *d);
                *d += lookup(id).homology[&h].dim;
            }
            let mut maps: BTreeMap<i32, Vec<Vec<(usize, Rational)>>> = BTreeMap::new();
            for &src in &ids {
                let t = c.t_of(src);
                let sh = lookup(src);
                let at = &sh.homology[&h];
                if at.dim == 0 {
                    continue;
                }
                let cols = maps.entry(t).or_insert_with(|| alloc::vec![Vec::new(); dim_t[&t]]);
                for (tgt, _) in c.outgoing(src) {
                    let th = lookup(tgt);
                    let tat = &th.homology[&h];
                    if tat.dim == 0 {
                        continue;
                    }
                    let block = &self.blocks[&(src, tgt)][&h];
                    for (k, rep) in at.reps.iter().enumerate() {
                        let image = apply_matrix(block, &sh.bases[&h], &th.bases[&h], rep);
                        let coords = tat.projector.project(&image)?;
                        let col = &mut cols[offset[&src] + k];
                        col.extend(coords.entries.into_iter().map(|(i, x)| (offset[&tgt] + i, x)));
                    }
                }
            }
            let mut ranks: BTreeMap<i32, usize> = BTreeMap::new();
            for (t, cols) in maps {
                let rows = dim_t.get(&(t + 1)).copied().unwrap_or(0);
                let m = SparseMatrix { rows, cols: cols.into_iter().map(SparseVec::from_unsorted).collect() };
                ranks.insert(t, m.rank());
            }
            for (&t, &d) in &dim_t {
                let r_out = ranks.get(&t).copied().unwrap_or(0);
                let r_in = ranks.get(&(t - 1)).copied().unwrap_or(0);
                let dim = d - r_out - r_in;
                if dim > 0 {
                    out.push(((q, h, t), dim as u64));
                }
            }
        }
        Ok(out)
    }
}

/// Applies a degree-0 matrix of polynomials to a slice vector.
fn apply_matrix(m: &PolyMatrix, src: &SliceBasis, tgt: &SliceBasis, v: &SparseVec) -> SparseVec {
    let mut entries = Vec::new();
    for (idx, x) in &v.entries {
        let (gen, mu) = src.entry(*idx);
        for (row, p) in m.column(gen) {
            for (nu, y) in p.terms() {
                let i = tgt.index(row, nu.mul(mu)).expect("degree-0 map");
                entries.push((i, x * y));
            }
        }
    }
    SparseVec::from_unsorted(entries)
}

/// `HHH` of the closure of `word` for `q <= qmax`.
pub fn hhh(word: &BraidWord, qmax: i32, reduce: bool) -> Result<TrigradedDims> {
    let plan = HhhPlan::new(word, qmax, reduce)?;
    let mut dims = TrigradedDims::new(qmax);
    for q in plan.q_values() {
        for (k, d) in plan.compute_q(q)? {
            dims.insert(k, d);
        }
    }
    Ok(dims)
}

/// `Σ dim · q^q a^h t^t`, terms ordered by `(t, h, q)`.
pub fn poincare(d: &TrigradedDims) -> String {
    if d.is_empty() {
        return String::from("0");
    }
    let mut keys: Vec<_> = d.entries.iter().collect();
    keys.sort_by_key(|(&(q, h, t), _)| (t, h, q));
    let mut parts = Vec::new();
    for (&(q, h, t), &dim) in keys {
        let mut factors = Vec::new();
        for (name, e) in [("q", q), ("a", h), ("t", t)] {
            match e {
                0 => {}
                1 => factors.push(String::from(name)),
                e => factors.push(alloc::format!("{name}^{e}")),
            }
        }
        let body = factors.join("*");
        parts.push(match (dim, body.is_empty()) {
            (d, true) => alloc::format!("{d}"),
            (1, false) => body,
            (d, false) => alloc::format!("{d}*{body}"),
        });
    }
    parts.join(" + ")
}

/// `Σ (-1)^t dim · q^q a^h` as a Laurent polynomial in `(q, a)`.
pub fn euler(d: &TrigradedDims) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for (&(q, h, t), &dim) in &d.entries {
        let sign = if t.rem_euclid(2) == 0 { 1 } else { -1 };
        p.add_term(q, h, Rational::from_int(sign * dim as i64));
    }
    p
}

/// The shift `Δ` with `d2 = d1 + Δ`, if one exists. Tables computed with
/// different truncations are compared on the window both of them cover.
pub fn compare_up_to_shift(d1: &TrigradedDims, d2: &TrigradedDims) -> Option<(i32, i32, i32)> {
    let (Some((&a, _)), Some((&b, _))) = (d1.entries.iter().next(), d2.entries.iter().next()) else {
        return (d1.is_empty() && d2.is_empty()).then_some((0, 0, 0));
    };
    let delta = (b.0 - a.0, b.1 - a.1, b.2 - a.2);
    let window = (d1.qmax + delta.0).min(d2.qmax);
    let moved = d1.shifted(delta.0, delta.1, delta.2).truncated(window);
    (moved.entries == d2.truncated(window).entries).then_some(delta)
}
