//! Graded bimodules over the reduced ring, stored as free left modules with
//! right-action matrices, and the maps between them.
//!
//! Column `c` of `action(v)` expresses `gen_c * y_{v+1}` in the generators,
//! so the right action of a polynomial is its evaluation at the (commuting)
//! action matrices. A map is the matrix of images of source generators.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::{invert_dense, kernel_basis, solve, Echelon, SparseMatrix, SparseVec};
use crate::matrix::{MatrixEvaluator, PolyMatrix};
use crate::poly::{demazure_split, Mono, Poly};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct GradedBimodule {
    strands: usize,
    degrees: Vec<i32>,
    actions: Arc<Vec<PolyMatrix>>,
}

/// First violated structural condition found by a validator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Defect {
    ActionsDoNotCommute { a: usize, b: usize },
    InhomogeneousAction { var: usize, row: usize, col: usize },
    InhomogeneousMap { row: usize, col: usize },
    NotIntertwining { var: usize },
    Shape,
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::ActionsDoNotCommute { a, b } => {
                write!(f, "right actions of y{} and y{} do not commute", a + 1, b + 1)
            }
            Defect::InhomogeneousAction { var, row, col } => {
                write!(f, "action of y{} has an inhomogeneous entry at ({row}, {col})", var + 1)
            }
            Defect::InhomogeneousMap { row, col } => {
                write!(f, "map entry ({row}, {col}) has the wrong degree")
            }
            Defect::NotIntertwining { var } => {
                write!(f, "map does not commute with the right action of y{}", var + 1)
            }
            Defect::Shape => f.write_str("matrix shape does not match source and target"),
        }
    }
}

impl GradedBimodule {
    /// Builds a bimodule from raw data without checking it; see `validate`.
    pub fn from_parts(strands: usize, degrees: Vec<i32>, actions: Vec<PolyMatrix>) -> Self {
        assert!(strands >= 1);
        assert_eq!(actions.len(), strands - 1);
        GradedBimodule { strands, degrees, actions: Arc::new(actions) }
    }

    /// The ring `R` itself.
    pub fn regular(strands: usize) -> Self {
        assert!(strands >= 1, "need at least one strand");
        let n = strands - 1;
        let actions = (0..n).map(|v| PolyMatrix::from_rows(n, alloc::vec![alloc::vec![Poly::var(n, v)]]));
        Self::from_parts(strands, alloc::vec![0], actions.collect())
    }

    /// `B_i = R ⊗_{R_i} R` with generators `1⊗1` (degree 0) and `1⊗y_i`
    /// (degree 2).
    pub fn elementary(strands: usize, i: usize) -> Result<Self> {
        let n = strands.saturating_sub(1);
        if i == 0 || i > n {
            return Err(Error::GeneratorOutOfRange { index: i as i64, strands });
        }
        let yi2 = Poly::var(n, i - 1).pow(2);
        let mut actions = Vec::with_capacity(n);
        for v in 0..n {
            let (a, b) = demazure_split(i, &Poly::var(n, v))?;
            let by2 = b.mul(&yi2);
            actions.push(PolyMatrix::from_rows(n, alloc::vec![alloc::vec![a.clone(), by2], alloc::vec![b, a]]));
        }
        Ok(Self::from_parts(strands, alloc::vec![0, 2], actions))
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn nvars(&self) -> usize {
        self.strands - 1
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    /// Right action of `y_{v+1}`.
    pub fn action(&self, v: usize) -> &PolyMatrix {
        &self.actions[v]
    }

    pub fn actions(&self) -> &[PolyMatrix] {
        &self.actions
    }

    /// `M{k}`: every generator degree raised by `k`.
    pub fn shift(&self, k: i32) -> Self {
        GradedBimodule {
            strands: self.strands,
            degrees: self.degrees.iter().map(|d| d + k).collect(),
            actions: self.actions.clone(),
        }
    }

    fn check_strands(&self, other: &Self) -> Result<()> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch { left: self.strands, right: other.strands });
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_strands(other)?;
        let n = self.nvars();
        let z01 = PolyMatrix::zero(n, self.rank(), other.rank());
        let z10 = PolyMatrix::zero(n, other.rank(), self.rank());
        let actions = (0..n)
            .map(|v| {
                PolyMatrix::blocks(
                    n,
                    &[alloc::vec![self.action(v), &z01], alloc::vec![&z10, other.action(v)]],
                )
            })
            .collect();
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        Ok(Self::from_parts(self.strands, degrees, actions))
    }

    /// `M ⊗_R N`; generator `(a, b)` sits at index `a * N.rank + b`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.check_strands(other)?;
        let mut degrees = Vec::with_capacity(self.rank() * other.rank());
        for a in &self.degrees {
            for b in &other.degrees {
                degrees.push(a + b);
            }
        }
        let mut eval = MatrixEvaluator::new(self.nvars(), self.rank(), &self.actions);
        let actions = other.actions.iter().map(|r| through_left(&mut eval, r)).collect();
        Ok(Self::from_parts(self.strands, degrees, actions))
    }

    /// Graded rank as a Laurent polynomial `Σ q^{deg}`.
    pub fn graded_rank(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for &d in &self.degrees {
            p.add_term(d, 0, Rational::one());
        }
        p
    }

    pub fn validate(&self) -> core::result::Result<(), Defect> {
        let n = self.nvars();
        for v in 0..n {
            let a = self.action(v);
            if a.rows() != self.rank() || a.cols() != self.rank() {
                return Err(Defect::Shape);
            }
            for r in 0..self.rank() {
                for c in 0..self.rank() {
                    if !a.get(r, c).is_homogeneous_of(2 + self.degrees[c] - self.degrees[r]) {
                        return Err(Defect::InhomogeneousAction { var: v, row: r, col: c });
                    }
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if self.action(a).mul(self.action(b)) != self.action(b).mul(self.action(a)) {
                    return Err(Defect::ActionsDoNotCommute { a, b });
                }
            }
        }
        Ok(())
    }

    /// Deterministic text dump: generator degrees, then one matrix per
    /// variable.
    pub fn render(&self) -> String {
        let mut s = alloc::format!("degrees {:?}\n", self.degrees);
        for (v, a) in self.actions.iter().enumerate() {
            s.push_str(&alloc::format!("y{} {:?}\n", v + 1, a));
        }
        s
    }
}

impl fmt::Debug for GradedBimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedBimodule(m={}, degrees={:?})", self.strands, self.degrees)
    }
}

/// For `g : N -> N'` (matrix over `N`'s generators), the matrix of
/// `id_M ⊗ g : M⊗N -> M⊗N'`. Polynomial coefficients of `g` pass through
/// to the left factor as right actions on `M`.
pub(crate) fn through_left(eval: &mut MatrixEvaluator<'_>, g: &PolyMatrix) -> PolyMatrix {
    let rm = eval.size();
    let mut out = PolyMatrix::zero(g.nvars(), rm * g.rows(), rm * g.cols());
    for b in 0..g.cols() {
        for (c, p) in g.column(b) {
            let e = eval.eval(p);
            for a in 0..rm {
                for (a2, q) in e.column(a) {
                    out.set(a2 * g.rows() + c, a * g.cols() + b, q.clone());
                }
            }
        }
    }
    out
}

/// Matrix of `id_m ⊗ g` for a matrix `g` between bimodules on the right.
pub fn identity_tensor(m: &GradedBimodule, g: &PolyMatrix) -> PolyMatrix {
    let mut eval = MatrixEvaluator::new(m.nvars(), m.rank(), &m.actions);
    through_left(&mut eval, g)
}

pub fn regular_bimodule(strands: usize) -> GradedBimodule {
    GradedBimodule::regular(strands)
}

pub fn elementary_bimodule(strands: usize, i: usize) -> Result<GradedBimodule> {
    GradedBimodule::elementary(strands, i)
}

pub fn shift(m: &GradedBimodule, k: i32) -> GradedBimodule {
    m.shift(k)
}

pub fn tensor_bimodule(m: &GradedBimodule, n: &GradedBimodule) -> Result<GradedBimodule> {
    m.tensor(n)
}

/// Tensor product of elementary bimodules along a word (empty word: `R`).
pub fn word_bimodule(strands: usize, word: &[usize]) -> Result<GradedBimodule> {
    let mut acc = GradedBimodule::regular(strands);
    for (k, &i) in word.iter().enumerate() {
        let b = GradedBimodule::elementary(strands, i)?;
        acc = if k == 0 { b } else { acc.tensor(&b)? };
    }
    Ok(acc)
}

/// A homogeneous left-linear map; `matrix` has `target.rank` rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BimoduleMap {
    pub source: GradedBimodule,
    pub target: GradedBimodule,
    pub matrix: PolyMatrix,
    pub degree: i32,
}

impl fmt::Debug for BimoduleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BimoduleMap(degree {}, {:?})", self.degree, self.matrix)
    }
}

impl BimoduleMap {
    pub fn new(source: GradedBimodule, target: GradedBimodule, matrix: PolyMatrix, degree: i32) -> Self {
        assert_eq!(matrix.rows(), target.rank());
        assert_eq!(matrix.cols(), source.rank());
        BimoduleMap { source, target, matrix, degree }
    }

    pub fn identity(m: &GradedBimodule) -> Self {
        Self::new(m.clone(), m.clone(), PolyMatrix::identity(m.nvars(), m.rank()), 0)
    }

    pub fn zero(source: &GradedBimodule, target: &GradedBimodule, degree: i32) -> Self {
        let z = PolyMatrix::zero(source.nvars(), target.rank(), source.rank());
        Self::new(source.clone(), target.clone(), z, degree)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree {
            return Err(Error::ShapeMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(BimoduleMap { matrix: self.matrix.add(&other.matrix), ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(BimoduleMap { matrix: self.matrix.sub(&other.matrix), ..self.clone() })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BimoduleMap { matrix: self.matrix.scale(c), ..self.clone() }
    }

    pub fn validate(&self) -> core::result::Result<(), Defect> {
        check_map(&self.source, &self.target, &self.matrix, self.degree)
    }
}

/// Checks shape, homogeneity and intertwining of a matrix as a map
/// `s -> t` of the given degree.
pub fn check_map(
    s: &GradedBimodule,
    t: &GradedBimodule,
    matrix: &PolyMatrix,
    degree: i32,
) -> core::result::Result<(), Defect> {
    if matrix.rows() != t.rank() || matrix.cols() != s.rank() || s.strands != t.strands {
        return Err(Defect::Shape);
    }
    for r in 0..t.rank() {
        for c in 0..s.rank() {
            if !matrix.get(r, c).is_homogeneous_of(degree + s.degrees[c] - t.degrees[r]) {
                return Err(Defect::InhomogeneousMap { row: r, col: c });
            }
        }
    }
    for v in 0..s.nvars() {
        if t.action(v).mul(matrix) != matrix.mul(s.action(v)) {
            return Err(Defect::NotIntertwining { var: v });
        }
    }
    Ok(())
}

/// `(br, rb)`: the multiplication map `B_i -> R` and the degree-2 map
/// `R -> B_i`, `1 -> y_i⊗1 + 1⊗y_i`.
pub fn elementary_maps(strands: usize, i: usize) -> Result<(BimoduleMap, BimoduleMap)> {
    let b = GradedBimodule::elementary(strands, i)?;
    let r = GradedBimodule::regular(strands);
    let n = strands - 1;
    let yi = Poly::var(n, i - 1);
    let br = PolyMatrix::from_rows(n, alloc::vec![alloc::vec![Poly::one(n), yi.clone()]]);
    let rb = PolyMatrix::from_rows(n, alloc::vec![alloc::vec![yi], alloc::vec![Poly::one(n)]]);
    Ok((BimoduleMap::new(b.clone(), r.clone(), br, 0), BimoduleMap::new(r, b, rb, 2)))
}

/// `g ∘ f`.
pub fn compose(g: &BimoduleMap, f: &BimoduleMap) -> Result<BimoduleMap> {
    if f.target != g.source {
        return Err(Error::ShapeMismatch);
    }
    Ok(BimoduleMap::new(f.source.clone(), g.target.clone(), g.matrix.mul(&f.matrix), f.degree + g.degree))
}

/// `f ⊗ g`, factored as `(f ⊗ id) ∘ (id ⊗ g)`.
pub fn tensor_map(f: &BimoduleMap, g: &BimoduleMap) -> Result<BimoduleMap> {
    f.source.check_strands(&g.source)?;
    let m = &f.source;
    let mut eval = MatrixEvaluator::new(m.nvars(), m.rank(), &m.actions);
    let id_g = through_left(&mut eval, &g.matrix);
    let f_id = f.matrix.kron_identity(g.target.rank());
    Ok(BimoduleMap::new(
        f.source.tensor(&g.source)?,
        f.target.tensor(&g.target)?,
        f_id.mul(&id_g),
        f.degree + g.degree,
    ))
}

/// Basis of the degree-`d` bimodule maps `m -> n`, by solving the
/// intertwining equations on the finitely many admissible monomials.
pub fn hom_space(m: &GradedBimodule, n: &GradedBimodule, d: i32) -> Result<Vec<BimoduleMap>> {
    m.check_strands(n)?;
    let nv = m.nvars();
    let mut unknowns: Vec<(usize, usize, Mono)> = Vec::new();
    for r in 0..n.rank() {
        for c in 0..m.rank() {
            let e = d + m.degrees[c] - n.degrees[r];
            if e < 0 || e % 2 != 0 {
                continue;
            }
            for mono in Mono::all_of_total(nv, (e / 2) as u32) {
                unknowns.push((r, c, mono));
            }
        }
    }
    let mut rows: BTreeMap<(usize, usize, usize, Mono), usize> = BTreeMap::new();
    let mut row_of = |key: (usize, usize, usize, Mono)| {
        let next = rows.len();
        *rows.entry(key).or_insert(next)
    };
    let mut cols = Vec::with_capacity(unknowns.len());
    for &(r0, c0, mu) in &unknowns {
        let mut entries = Vec::new();
        for v in 0..nv {
            // (R_N X)[r, c0] += R_N[r, r0] * mu
            for (r, p) in n.action(v).column(r0) {
                for (k, c) in p.terms() {
                    entries.push((row_of((v, r, c0, k.mul(mu))), c.clone()));
                }
            }
            // (X R_M)[r0, c] -= mu * R_M[c0, c]
            for c in 0..m.rank() {
                for (k, x) in m.action(v).get(c0, c).terms() {
                    entries.push((row_of((v, r0, c, k.mul(mu))), -x));
                }
            }
        }
        cols.push(SparseVec::from_unsorted(entries));
    }
    let system = SparseMatrix { rows: rows.len(), cols };
    let basis = kernel_basis(&system)
        .into_iter()
        .map(|vec| {
            let mut mat = PolyMatrix::zero(nv, n.rank(), m.rank());
            for (u, coef) in &vec.entries {
                let (r, c, mono) = unknowns[*u];
                let e = mat.get(r, c).add(&Poly::monomial(nv, mono, coef.clone()));
                mat.set(r, c, e);
            }
            BimoduleMap::new(m.clone(), n.clone(), mat, d)
        })
        .collect();
    Ok(basis)
}

/// Splitting of a degree-0 idempotent `e` on `m`: returns the image `S`
/// with `incl : S -> m` and `proj : m -> S`, `proj ∘ incl = id`,
/// `incl ∘ proj = e`.
pub fn split_idempotent(
    m: &GradedBimodule,
    e: &BimoduleMap,
) -> Result<(GradedBimodule, BimoduleMap, BimoduleMap)> {
    if e.source != *m || e.target != *m {
        return Err(Error::ShapeMismatch);
    }
    if e.degree != 0 || e.matrix.mul(&e.matrix) != e.matrix {
        return Err(Error::NotIdempotent);
    }
    let nv = m.nvars();
    let rank = m.rank();
    let constants = |mat: &PolyMatrix, r: usize, c: usize| mat.get(r, c).constant_term();

    // generators: columns of e whose constant parts are independent
    let mut ech = Echelon::new(rank);
    let cols: Vec<usize> = (0..rank)
        .filter(|&c| {
            let v = SparseVec::from_unsorted((0..rank).map(|r| (r, constants(&e.matrix, r, c))).collect());
            ech.insert(v, None).is_some()
        })
        .collect();
    let all_rows: Vec<usize> = (0..rank).collect();
    let incl = e.matrix.select(&all_rows, &cols);
    let k = cols.len();

    // rows on which the constant part of incl is invertible
    let mut ech = Echelon::new(k);
    let rows: Vec<usize> = (0..rank)
        .filter(|&r| {
            let v = SparseVec::from_unsorted((0..k).map(|j| (j, constants(&incl, r, j))).collect());
            ech.insert(v, None).is_some()
        })
        .collect();
    debug_assert_eq!(rows.len(), k);

    // invert the square block D + N with D constant, N degree-nilpotent
    let all_cols: Vec<usize> = (0..k).collect();
    let square = incl.select(&rows, &all_cols);
    let d: Vec<Vec<Rational>> = (0..k).map(|r| (0..k).map(|c| constants(&square, r, c)).collect()).collect();
    let d_inv = invert_dense(&d).ok_or(Error::NotIdempotent)?;
    let d_inv = PolyMatrix::from_rows(
        nv,
        d_inv.into_iter().map(|row| row.into_iter().map(|x| Poly::constant(nv, x)).collect()).collect(),
    );
    let d_poly = PolyMatrix::from_rows(
        nv,
        d.into_iter().map(|row| row.into_iter().map(|x| Poly::constant(nv, x)).collect()).collect(),
    );
    let step = d_inv.mul(&square.sub(&d_poly)).neg();
    let mut inv = d_inv.clone();
    let mut term = d_inv;
    for _ in 0..=k {
        term = step.mul(&term);
        if term.is_zero() {
            break;
        }
        inv = inv.add(&term);
    }
    debug_assert!(term.is_zero());

    let mut left = PolyMatrix::zero(nv, k, rank);
    for (j, &r) in rows.iter().enumerate() {
        for i in 0..k {
            left.set(i, r, inv.get(i, j).clone());
        }
    }
    let proj = left.mul(&e.matrix);
    let degrees: Vec<i32> = cols.iter().map(|&c| m.degrees[c]).collect();
    let actions = m.actions.iter().map(|a| proj.mul(a).mul(&incl)).collect();
    let s = GradedBimodule::from_parts(m.strands, degrees, actions);
    debug_assert_eq!(proj.mul(&incl), PolyMatrix::identity(nv, k));
    let incl = BimoduleMap::new(s.clone(), m.clone(), incl, 0);
    let proj = BimoduleMap::new(m.clone(), s.clone(), proj, 0);
    Ok((s, incl, proj))
}

/// Flattens polynomial matrices into sparse vectors over a shared
/// `(row, col, monomial)` index.
#[derive(Default)]
struct Flattener {
    index: BTreeMap<(usize, usize, Mono), usize>,
}

impl Flattener {
    fn flatten(&mut self, m: &PolyMatrix) -> SparseVec {
        let mut entries = Vec::new();
        for c in 0..m.cols() {
            for (r, p) in m.column(c) {
                for (mono, x) in p.terms() {
                    let next = self.index.len();
                    let i = *self.index.entry((r, c, *mono)).or_insert(next);
                    entries.push((i, x.clone()));
                }
            }
        }
        SparseVec::from_unsorted(entries)
    }
}

const ATTEMPTS: usize = 8;
const SEED: u64 = 0x5eed_b1b1;

fn random_combination(rng: &mut ChaCha8Rng, basis: &[BimoduleMap]) -> BimoduleMap {
    let mut acc = BimoduleMap::zero(&basis[0].source, &basis[0].target, basis[0].degree);
    for f in basis {
        let c = Rational::from_int((rng.next_u32() % 61) as i64 - 30);
        acc.matrix = acc.matrix.add(&f.matrix.scale(&c));
    }
    acc
}

/// Some combination `x` of `basis` with `after(x) = goal`.
fn solve_combination(
    basis: &[BimoduleMap],
    goal: &PolyMatrix,
    apply: impl Fn(&BimoduleMap) -> PolyMatrix,
) -> Option<BimoduleMap> {
    let mut flat = Flattener::default();
    let b = flat.flatten(goal);
    let cols: Vec<SparseVec> = basis.iter().map(|f| flat.flatten(&apply(f))).collect();
    let system = SparseMatrix { rows: flat.index.len(), cols };
    let x = solve(&system, &b)?;
    let mut acc = BimoduleMap::zero(&basis[0].source, &basis[0].target, basis[0].degree);
    for (j, c) in &x.entries {
        acc.matrix = acc.matrix.add(&basis[*j].matrix.scale(c));
    }
    Some(acc)
}

fn sorted_degrees(m: &GradedBimodule) -> Vec<i32> {
    let mut d = m.degrees.clone();
    d.sort_unstable();
    d
}

/// A pair `φ : m -> n`, `ψ : n -> m` of mutually inverse degree-0 maps, if
/// one is found. A generic combination of degree-0 maps is an isomorphism
/// whenever any is; the search is seeded and so deterministic.
pub fn is_isomorphic(m: &GradedBimodule, n: &GradedBimodule) -> Result<Option<(BimoduleMap, BimoduleMap)>> {
    m.check_strands(n)?;
    if sorted_degrees(m) != sorted_degrees(n) {
        return Ok(None);
    }
    if m.rank() == 0 {
        return Ok(Some((BimoduleMap::zero(m, n, 0), BimoduleMap::zero(n, m, 0))));
    }
    let forward = hom_space(m, n, 0)?;
    let backward = hom_space(n, m, 0)?;
    if forward.is_empty() || backward.is_empty() {
        return Ok(None);
    }
    let id_n = PolyMatrix::identity(n.nvars(), n.rank());
    let id_m = PolyMatrix::identity(m.nvars(), m.rank());
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..ATTEMPTS {
        let phi = random_combination(&mut rng, &forward);
        let Some(psi) = solve_combination(&backward, &id_n, |p| phi.matrix.mul(&p.matrix)) else {
            continue;
        };
        if psi.matrix.mul(&phi.matrix) == id_m {
            return Ok(Some((phi, psi)));
        }
    }
    Ok(None)
}

/// A split injection `ι : s -> p` with retraction `π : p -> s`
/// (`π ∘ ι = id_s`), both of degree 0, if one is found.
pub fn find_split(s: &GradedBimodule, p: &GradedBimodule) -> Result<Option<(BimoduleMap, BimoduleMap)>> {
    s.check_strands(p)?;
    let into = hom_space(s, p, 0)?;
    let back = hom_space(p, s, 0)?;
    if into.is_empty() || back.is_empty() {
        return Ok(None);
    }
    let id_s = PolyMatrix::identity(s.nvars(), s.rank());
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..ATTEMPTS {
        let iota = random_combination(&mut rng, &into);
        if let Some(pi) = solve_combination(&back, &id_s, |q| q.matrix.mul(&iota.matrix)) {
            return Ok(Some((iota, pi)));
        }
    }
    Ok(None)
}

/// Explicit decomposition `B_i ⊗ B_i ≅ B_i{2} ⊕ B_i`: `p[k] ∘ e[l] = δ_kl`
/// and `e[0] ∘ p[0] + e[1] ∘ p[1] = id`.
#[derive(Clone, Debug)]
pub struct SquareSplit {
    pub e: [BimoduleMap; 2],
    pub p: [BimoduleMap; 2],
}

pub fn square_split(strands: usize, i: usize) -> Result<SquareSplit> {
    let b = GradedBimodule::elementary(strands, i)?;
    let bb = b.tensor(&b)?;
    let upper = b.shift(2);
    let (e1, p1) = find_split(&upper, &bb)?.ok_or(Error::Unsupported("B_i B_i does not split"))?;
    let rest = BimoduleMap::identity(&bb).sub(&compose(&e1, &p1)?)?;
    let (c, incl, proj) = split_idempotent(&bb, &rest)?;
    let (phi, psi) = is_isomorphic(&c, &b)?.ok_or(Error::Unsupported("complement is not B_i"))?;
    let e2 = compose(&incl, &psi)?;
    let p2 = compose(&phi, &proj)?;
    Ok(SquareSplit { e: [e1, e2], p: [p1, p2] })
}

/// Complement of a split copy of `B_i{2}` inside `B_i B_j B_i`.
fn middle_complement(strands: usize, i: usize, j: usize) -> Result<GradedBimodule> {
    let p = word_bimodule(strands, &[i, j, i])?;
    let b = GradedBimodule::elementary(strands, i)?.shift(2);
    let (e, pi) = find_split(&b, &p)?.ok_or(Error::Unsupported("no split copy of B_i{2} in B_i B_j B_i"))?;
    let rest = BimoduleMap::identity(&p).sub(&compose(&e, &pi)?)?;
    Ok(split_idempotent(&p, &rest)?.0)
}

/// The middle Soergel relation: the complements in `B_i B_{i+1} B_i` and
/// `B_{i+1} B_i B_{i+1}` with an isomorphism between them, if found.
pub struct MiddleRelation {
    pub left: GradedBimodule,
    pub right: GradedBimodule,
    pub iso: Option<(BimoduleMap, BimoduleMap)>,
}

pub fn middle_relation(strands: usize, i: usize) -> Result<MiddleRelation> {
    if i + 2 > strands {
        return Err(Error::GeneratorOutOfRange { index: (i + 1) as i64, strands });
    }
    let left = middle_complement(strands, i, i + 1)?;
    let right = middle_complement(strands, i + 1, i)?;
    let iso = is_isomorphic(&left, &right)?;
    Ok(MiddleRelation { left, right, iso })
}
