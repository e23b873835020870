//! Rouquier complexes of braid words and their reduction.
//!
//! A complex is an arena of summands, each placed at a cohomological degree
//! `t`, with differential blocks keyed by `(source, target)`. A block is the
//! matrix of a degree-0 bimodule map from a summand at `t` to one at `t + 1`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::bimodule::{
    check_map, elementary_maps, identity_tensor, is_isomorphic, square_split, word_bimodule, Defect,
    GradedBimodule, SquareSplit,
};
use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::rational::Rational;

/// `B_{w_1} ⊗ ... ⊗ B_{w_k}{shift}`; the empty word is `R{shift}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub word: Vec<usize>,
    pub shift: i32,
    pub module: GradedBimodule,
}

/// Memoized tensor words on a fixed number of strands.
pub struct WordModules {
    strands: usize,
    cache: BTreeMap<Vec<usize>, GradedBimodule>,
}

impl WordModules {
    pub fn new(strands: usize) -> Self {
        WordModules { strands, cache: BTreeMap::new() }
    }

    pub fn get(&mut self, word: &[usize]) -> Result<GradedBimodule> {
        if let Some(m) = self.cache.get(word) {
            return Ok(m.clone());
        }
        let m = match word.split_last() {
            None => GradedBimodule::regular(self.strands),
            Some((&last, rest)) if !rest.is_empty() => {
                self.get(rest)?.tensor(&GradedBimodule::elementary(self.strands, last)?)?
            }
            Some(_) => word_bimodule(self.strands, word)?,
        };
        self.cache.insert(word.to_vec(), m.clone());
        Ok(m)
    }

    pub fn summand(&mut self, word: Vec<usize>, shift: i32) -> Result<Summand> {
        let module = self.get(&word)?.shift(shift);
        Ok(Summand { word, shift, module })
    }
}

#[derive(Clone, Debug)]
struct Node {
    t: i32,
    summand: Summand,
}

#[derive(Clone, Debug)]
pub struct BimoduleComplex {
    strands: usize,
    nodes: Vec<Option<Node>>,
    blocks: BTreeMap<(usize, usize), PolyMatrix>,
    incoming: Vec<BTreeSet<usize>>,
}

impl BimoduleComplex {
    pub fn new(strands: usize) -> Self {
        BimoduleComplex { strands, nodes: Vec::new(), blocks: BTreeMap::new(), incoming: Vec::new() }
    }

    /// `R` in degree 0.
    pub fn identity(strands: usize) -> Self {
        let mut c = Self::new(strands);
        let r = GradedBimodule::regular(strands);
        c.add_summand(0, Summand { word: Vec::new(), shift: 0, module: r });
        c
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn add_summand(&mut self, t: i32, summand: Summand) -> usize {
        self.nodes.push(Some(Node { t, summand }));
        self.incoming.push(BTreeSet::new());
        self.nodes.len() - 1
    }

    /// Sets (or with a zero matrix, clears) the block `src -> tgt`.
    pub fn set_block(&mut self, src: usize, tgt: usize, m: PolyMatrix) {
        debug_assert_eq!(self.t_of(src) + 1, self.t_of(tgt));
        if m.is_zero() {
            self.blocks.remove(&(src, tgt));
            self.incoming[tgt].remove(&src);
        } else {
            self.blocks.insert((src, tgt), m);
            self.incoming[tgt].insert(src);
        }
    }

    pub fn remove(&mut self, id: usize) {
        let outs: Vec<usize> = self.outgoing(id).map(|(t, _)| t).collect();
        for tgt in outs {
            self.blocks.remove(&(id, tgt));
            self.incoming[tgt].remove(&id);
        }
        for src in core::mem::take(&mut self.incoming[id]) {
            self.blocks.remove(&(src, id));
        }
        self.nodes[id] = None;
    }

    fn node(&self, id: usize) -> &Node {
        self.nodes[id].as_ref().expect("removed summand")
    }

    pub fn summand(&self, id: usize) -> &Summand {
        &self.node(id).summand
    }

    pub fn t_of(&self, id: usize) -> i32 {
        self.node(id).t
    }

    /// Live summand ids ordered by `(t, id)`.
    pub fn ids(&self) -> Vec<usize> {
        let mut ids: Vec<(i32, usize)> = self
            .nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| n.as_ref().map(|n| (n.t, i)))
            .collect();
        ids.sort_unstable();
        ids.into_iter().map(|(_, i)| i).collect()
    }

    pub fn ids_at(&self, t: i32) -> Vec<usize> {
        self.ids().into_iter().filter(|&i| self.t_of(i) == t).collect()
    }

    pub fn len(&self) -> usize {
        self.nodes.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Smallest and largest occupied cohomological degree.
    pub fn t_range(&self) -> Option<(i32, i32)> {
        let ts = self.nodes.iter().flatten().map(|n| n.t);
        let lo = ts.clone().min()?;
        Some((lo, ts.max()?))
    }

    pub fn block(&self, src: usize, tgt: usize) -> Option<&PolyMatrix> {
        self.blocks.get(&(src, tgt))
    }

    pub fn outgoing(&self, src: usize) -> impl Iterator<Item = (usize, &PolyMatrix)> {
        self.blocks.range((src, 0)..(src + 1, 0)).map(|(&(_, t), m)| (t, m))
    }

    pub fn incoming(&self, tgt: usize) -> impl Iterator<Item = usize> + '_ {
        self.incoming[tgt].iter().copied()
    }

    /// `(t, word, shift)` of every summand, sorted.
    pub fn census(&self) -> Vec<(i32, Vec<usize>, i32)> {
        let mut out: Vec<_> = self
            .nodes
            .iter()
            .flatten()
            .map(|n| (n.t, n.summand.word.clone(), n.summand.shift))
            .collect();
        out.sort();
        out
    }

    /// Copy with ids renumbered densely in `(t, id)` order.
    pub fn compact(&self) -> Self {
        let ids = self.ids();
        let mut renum = BTreeMap::new();
        let mut out = Self::new(self.strands);
        for &i in &ids {
            let n = self.node(i);
            renum.insert(i, out.add_summand(n.t, n.summand.clone()));
        }
        for (&(s, t), m) in &self.blocks {
            out.set_block(renum[&s], renum[&t], m.clone());
        }
        out
    }
}

/// The two-term complex of `σ_i` (`sign > 0`) or `σ_i^{-1}`.
pub fn crossing_complex(strands: usize, i: usize, sign: i32) -> Result<BimoduleComplex> {
    let (br, rb) = elementary_maps(strands, i)?;
    let mut words = WordModules::new(strands);
    let mut c = BimoduleComplex::new(strands);
    if sign > 0 {
        let r = c.add_summand(-1, words.summand(Vec::new(), 2)?);
        let b = c.add_summand(0, words.summand(alloc::vec![i], 0)?);
        c.set_block(r, b, rb.matrix);
    } else {
        let b = c.add_summand(0, words.summand(alloc::vec![i], -2)?);
        let r = c.add_summand(1, words.summand(Vec::new(), -2)?);
        c.set_block(b, r, br.matrix);
    }
    Ok(c)
}

fn sign_matrix(t: i32, m: PolyMatrix) -> PolyMatrix {
    if t.rem_euclid(2) == 1 {
        m.neg()
    } else {
        m
    }
}

/// `C ⊗ D` with `d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy`.
pub fn tensor_complexes(c: &BimoduleComplex, d: &BimoduleComplex) -> Result<BimoduleComplex> {
    if c.strands != d.strands {
        return Err(Error::StrandMismatch { left: c.strands, right: d.strands });
    }
    let mut words = WordModules::new(c.strands);
    let mut out = BimoduleComplex::new(c.strands);
    let mut pairs: Vec<(i32, usize, usize)> = Vec::new();
    for x in c.ids() {
        for y in d.ids() {
            pairs.push((c.t_of(x) + d.t_of(y), x, y));
        }
    }
    pairs.sort_by_key(|p| p.0);
    let mut index = BTreeMap::new();
    for &(t, x, y) in &pairs {
        let (sx, sy) = (c.summand(x), d.summand(y));
        let mut word = sx.word.clone();
        word.extend_from_slice(&sy.word);
        let id = out.add_summand(t, words.summand(word, sx.shift + sy.shift)?);
        index.insert((x, y), id);
    }
    for x in c.ids() {
        let mx = &c.summand(x).module;
        let tx = c.t_of(x);
        for y in d.ids() {
            let src = index[&(x, y)];
            let rank_y = d.summand(y).module.rank();
            for (x2, f) in c.outgoing(x) {
                out.set_block(src, index[&(x2, y)], f.kron_identity(rank_y));
            }
            for (y2, g) in d.outgoing(y) {
                out.set_block(src, index[&(x, y2)], sign_matrix(tx, identity_tensor(mx, g)));
            }
        }
    }
    Ok(out)
}

/// Left fold of crossing complexes along the word.
pub fn braid_complex(word: &BraidWord) -> Result<BimoduleComplex> {
    let mut acc = BimoduleComplex::identity(word.strands());
    for &l in word.letters() {
        let x = crossing_complex(word.strands(), l.unsigned_abs() as usize, l.signum())?;
        acc = tensor_complexes(&acc, &x)?;
    }
    Ok(acc)
}

/// Crossing-by-crossing construction, reducing after every tensor step.
pub fn reduced_braid_complex(word: &BraidWord) -> Result<BimoduleComplex> {
    let mut reducer = Reducer::new(word.strands());
    let mut acc = BimoduleComplex::identity(word.strands());
    for &l in word.letters() {
        let x = crossing_complex(word.strands(), l.unsigned_abs() as usize, l.signum())?;
        acc = tensor_complexes(&acc, &x)?;
        reducer.reduce(&mut acc)?;
        acc = acc.compact();
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexDefect {
    Block { t: i32, src: usize, tgt: usize, defect: Defect },
    SquareNonzero { t: i32, src: usize, tgt: usize },
}

impl fmt::Display for ComplexDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexDefect::Block { t, src, tgt, defect } => {
                write!(f, "block {src} -> {tgt} at t={t}: {defect}")
            }
            ComplexDefect::SquareNonzero { t, src, tgt } => {
                write!(f, "d∘d nonzero from summand {src} at t={t} to summand {tgt}")
            }
        }
    }
}

/// Checks every block (degree-0 intertwiner) and `d∘d = 0`; reports the
/// first violation.
pub fn validate_complex(c: &BimoduleComplex) -> core::result::Result<(), ComplexDefect> {
    for (&(src, tgt), m) in &c.blocks {
        let t = c.t_of(src);
        check_map(&c.summand(src).module, &c.summand(tgt).module, m, 0)
            .map_err(|defect| ComplexDefect::Block { t, src, tgt, defect })?;
    }
    for src in c.ids() {
        let mut square: BTreeMap<usize, PolyMatrix> = BTreeMap::new();
        for (mid, f) in c.outgoing(src) {
            for (tgt, g) in c.outgoing(mid) {
                let p = g.mul(f);
                match square.get_mut(&tgt) {
                    Some(acc) => *acc = acc.add(&p),
                    None => {
                        square.insert(tgt, p);
                    }
                }
            }
        }
        if let Some((&tgt, _)) = square.iter().find(|(_, m)| !m.is_zero()) {
            return Err(ComplexDefect::SquareNonzero { t: c.t_of(src), src, tgt });
        }
    }
    Ok(())
}

/// Gaussian elimination of contractible pairs `X --c·id--> X`.
///
/// Before each round every summand word is normalized: an adjacent pair
/// `i i` is split along `B_i ⊗ B_i ≅ B_i{2} ⊕ B_i`, and far-commuting
/// descents `a b` (`a > b + 1`) are reordered, both through explicit
/// isomorphisms. This lets identical summands meet at the word level.
pub fn gaussian_reduce(c: &BimoduleComplex) -> BimoduleComplex {
    let mut out = c.clone();
    Reducer::new(c.strands)
        .reduce(&mut out)
        .expect("local splitting maps exist for every generator");
    out.compact()
}

struct Reducer {
    words: WordModules,
    squares: BTreeMap<usize, SquareSplit>,
    swaps: BTreeMap<(usize, usize), (PolyMatrix, PolyMatrix)>,
}

enum Rewrite {
    Square(usize),
    Swap(usize),
}

impl Reducer {
    fn new(strands: usize) -> Self {
        Reducer { words: WordModules::new(strands), squares: BTreeMap::new(), swaps: BTreeMap::new() }
    }

    fn reduce(&mut self, c: &mut BimoduleComplex) -> Result<()> {
        loop {
            self.normalize(c)?;
            match find_pair(c) {
                Some((b, b2, s)) => eliminate(c, b, b2, &s),
                None => return Ok(()),
            }
        }
    }

    fn normalize(&mut self, c: &mut BimoduleComplex) -> Result<()> {
        loop {
            let mut changed = false;
            for id in c.ids() {
                if let Some(rw) = find_rewrite(&c.summand(id).word) {
                    match rw {
                        Rewrite::Square(k) => self.split_square(c, id, k)?,
                        Rewrite::Swap(k) => self.swap(c, id, k)?,
                    }
                    changed = true;
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    /// Lifts a local map on letters `k..k+len` of `word` to the whole word.
    fn lift(&mut self, word: &[usize], k: usize, len: usize, local: &PolyMatrix) -> Result<PolyMatrix> {
        let left = self.words.get(&word[..k])?;
        let right = self.words.get(&word[k + len..])?;
        Ok(identity_tensor(&left, local).kron_identity(right.rank()))
    }

    fn split_square(&mut self, c: &mut BimoduleComplex, id: usize, k: usize) -> Result<()> {
        let s = c.summand(id).clone();
        let t = c.t_of(id);
        let i = s.word[k];
        if !self.squares.contains_key(&i) {
            self.squares.insert(i, square_split(c.strands, i)?);
        }
        let split = self.squares[&i].clone();
        let mut new_word = s.word.clone();
        new_word.remove(k);
        let mut parts = Vec::new();
        for (j, up) in [(0, 2), (1, 0)] {
            let p = self.lift(&s.word, k, 2, &split.p[j].matrix)?;
            let e = self.lift(&s.word, k, 2, &split.e[j].matrix)?;
            let summand = self.words.summand(new_word.clone(), s.shift + up)?;
            parts.push((c.add_summand(t, summand), p, e));
        }
        self.reroute(c, id, &parts);
        Ok(())
    }

    fn swap(&mut self, c: &mut BimoduleComplex, id: usize, k: usize) -> Result<()> {
        let s = c.summand(id).clone();
        let t = c.t_of(id);
        let (a, b) = (s.word[k], s.word[k + 1]);
        if !self.swaps.contains_key(&(a, b)) {
            let ab = self.words.get(&[a, b])?;
            let ba = self.words.get(&[b, a])?;
            let (phi, psi) =
                is_isomorphic(&ab, &ba)?.ok_or(Error::Unsupported("far generators do not commute"))?;
            self.swaps.insert((a, b), (phi.matrix, psi.matrix));
        }
        let (phi, psi) = self.swaps[&(a, b)].clone();
        let forward = self.lift(&s.word, k, 2, &phi)?;
        let back = self.lift(&s.word, k, 2, &psi)?;
        let mut new_word = s.word.clone();
        new_word.swap(k, k + 1);
        let summand = self.words.summand(new_word, s.shift)?;
        let new_id = c.add_summand(t, summand);
        self.reroute(c, id, &[(new_id, forward, back)]);
        Ok(())
    }

    /// Replaces summand `old` by `parts`, each `(id, into_part, from_part)`.
    fn reroute(&self, c: &mut BimoduleComplex, old: usize, parts: &[(usize, PolyMatrix, PolyMatrix)]) {
        let ins: Vec<usize> = c.incoming(old).collect();
        let outs: Vec<(usize, PolyMatrix)> = c.outgoing(old).map(|(t, m)| (t, m.clone())).collect();
        for x in ins {
            let f = c.block(x, old).unwrap().clone();
            for (id, p, _) in parts {
                c.set_block(x, *id, p.mul(&f));
            }
        }
        for (y, g) in outs {
            for (id, _, e) in parts {
                c.set_block(*id, y, g.mul(e));
            }
        }
        c.remove(old);
    }
}

fn find_rewrite(word: &[usize]) -> Option<Rewrite> {
    for k in 0..word.len().saturating_sub(1) {
        if word[k] == word[k + 1] {
            return Some(Rewrite::Square(k));
        }
    }
    for k in 0..word.len().saturating_sub(1) {
        if word[k] > word[k + 1] + 1 {
            return Some(Rewrite::Swap(k));
        }
    }
    None
}

/// First block (by `(t, id)` of its source) that is a nonzero scalar
/// between summands with equal word and shift.
fn find_pair(c: &BimoduleComplex) -> Option<(usize, usize, Rational)> {
    for src in c.ids() {
        let s = c.summand(src);
        for (tgt, m) in c.outgoing(src) {
            let t = c.summand(tgt);
            if s.word != t.word || s.shift != t.shift {
                continue;
            }
            if let Some(x) = m.as_scalar() {
                if !x.is_zero() {
                    return Some((src, tgt, x));
                }
            }
        }
    }
    None
}

/// Removes `b --s·id--> b2` and corrects `x -> y` by `- g s^{-1} h` for
/// every `h : x -> b2`, `g : b -> y`.
fn eliminate(c: &mut BimoduleComplex, b: usize, b2: usize, s: &Rational) {
    let inv = s.recip();
    let ins: Vec<(usize, PolyMatrix)> = c
        .incoming(b2)
        .filter(|&x| x != b)
        .map(|x| (x, c.block(x, b2).unwrap().clone()))
        .collect();
    let outs: Vec<(usize, PolyMatrix)> =
        c.outgoing(b).filter(|&(y, _)| y != b2).map(|(y, m)| (y, m.clone())).collect();
    for (x, h) in &ins {
        let h = h.scale(&inv);
        for (y, g) in &outs {
            let correction = g.mul(&h);
            let updated = match c.block(*x, *y) {
                Some(old) => old.sub(&correction),
                None => correction.neg(),
            };
            c.set_block(*x, *y, updated);
        }
    }
    c.remove(b);
    c.remove(b2);
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn word(m: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(m, letters.to_vec()).unwrap()
    }

    fn counts(c: &BimoduleComplex) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for (t, _, _) in c.census() {
            *out.entry(t).or_insert(0) += 1;
        }
        out
    }

    #[test]
    fn crossings() {
        let c = crossing_complex(2, 1, 1).unwrap();
        assert_eq!(c.census(), vec![(-1, vec![], 2), (0, vec![1], 0)]);
        let (_, m) = c.outgoing(c.ids()[0]).next().unwrap();
        assert_eq!(m.cols(), 1);
        assert_eq!(m.rows(), 2);
        validate_complex(&c).unwrap();
        let c = crossing_complex(2, 1, -1).unwrap();
        assert_eq!(c.census(), vec![(0, vec![1], -2), (1, vec![], -2)]);
        validate_complex(&c).unwrap();
        assert!(crossing_complex(2, 2, 1).is_err());
    }

    #[test]
    fn binomial_terms() {
        let c = braid_complex(&word(2, &[1, 1])).unwrap();
        assert_eq!(counts(&c), BTreeMap::from([(-2, 1), (-1, 2), (0, 1)]));
        validate_complex(&c).unwrap();
        let c = braid_complex(&word(2, &[1, 1, 1])).unwrap();
        assert_eq!(c.len(), 8);
        assert_eq!(c.t_range(), Some((-3, 0)));
        validate_complex(&braid_complex(&word(2, &[1, -1])).unwrap()).unwrap();
        validate_complex(&braid_complex(&word(3, &[1, -2, 1, 2])).unwrap()).unwrap();
        let c = braid_complex(&word(4, &[2, -3, 1])).unwrap();
        assert!(c.census().contains(&(0, vec![2, 3, 1], -2)));
    }

    #[test]
    fn tensor_with_identity() {
        let x = crossing_complex(3, 2, -1).unwrap();
        let c = tensor_complexes(&BimoduleComplex::identity(3), &x).unwrap();
        assert_eq!(c.census(), x.census());
        assert_eq!(c.blocks, x.blocks);
    }

    #[test]
    fn flipped_sign_is_reported() {
        let mut c = braid_complex(&word(2, &[1, 1])).unwrap();
        let src = c.ids_at(-2)[0];
        let (tgt, m) = c.outgoing(src).next().map(|(t, m)| (t, m.clone())).unwrap();
        c.set_block(src, tgt, m.neg());
        match validate_complex(&c) {
            Err(ComplexDefect::SquareNonzero { t, src: s, .. }) => assert_eq!((t, s), (-2, src)),
            other => panic!("expected a d∘d violation, got {other:?}"),
        }
    }

    #[test]
    fn powers_of_one_generator_reduce_to_n_plus_one_terms() {
        for n in [2usize, 3] {
            let c = gaussian_reduce(&braid_complex(&word(2, &vec![1; n])).unwrap());
            validate_complex(&c).unwrap();
            let n = n as i32;
            let mut expected = vec![(-n, vec![], 2 * n)];
            for k in 1..=n {
                expected.push((-n + k, vec![1], 2 * (n - k)));
            }
            assert_eq!(c.census(), expected);
            let again = gaussian_reduce(&c);
            assert_eq!(again.census(), c.census());
        }
    }

    #[test]
    fn inverse_pair_reduces_to_identity() {
        let c = gaussian_reduce(&braid_complex(&word(2, &[1, -1])).unwrap());
        assert_eq!(c.census(), vec![(0, vec![], 0)]);
        let c = reduced_braid_complex(&word(3, &[2, 1, -1, -2])).unwrap();
        assert_eq!(c.census(), vec![(0, vec![], 0)]);
    }

    #[test]
    fn reduction_keeps_validity() {
        for w in [&[1, 2, 1][..], &[1, -2, 1, -2], &[2, 2, -1]] {
            let c = gaussian_reduce(&braid_complex(&word(3, w)).unwrap());
            validate_complex(&c).unwrap();
        }
        let c = gaussian_reduce(&braid_complex(&word(4, &[3, 1, -3])).unwrap());
        validate_complex(&c).unwrap();
    }
}
