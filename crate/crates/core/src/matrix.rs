//! Dense matrices of polynomials.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::poly::{Mono, Poly};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    nvars: usize,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(nvars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix { nvars, rows, cols, data: alloc::vec![Poly::zero(nvars); rows * cols] }
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        Self::scalar(nvars, n, &Rational::one())
    }

    pub fn scalar(nvars: usize, n: usize, c: &Rational) -> Self {
        let mut m = Self::zero(nvars, n, n);
        for i in 0..n {
            m.set(i, i, Poly::constant(nvars, c.clone()));
        }
        m
    }

    /// Row-major construction.
    pub fn from_rows(nvars: usize, rows: Vec<Vec<Poly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(nvars, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, p) in row.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, p: Poly) {
        self.data[r * self.cols + c] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    /// Nonzero entries of column `c` as `(row, entry)`.
    pub fn column(&self, c: usize) -> impl Iterator<Item = (usize, &Poly)> {
        (0..self.rows).map(move |r| (r, self.get(r, c))).filter(|(_, p)| !p.is_zero())
    }

    /// `Some(c)` if the matrix is square and equals `c * I`.
    pub fn as_scalar(&self) -> Option<Rational> {
        if self.rows != self.cols {
            return None;
        }
        let mut scalar: Option<Rational> = None;
        for r in 0..self.rows {
            for c in 0..self.cols {
                let p = self.get(r, c);
                if r == c {
                    let v = p.as_constant()?;
                    match &scalar {
                        None => scalar = Some(v),
                        Some(s) if *s == v => {}
                        Some(_) => return None,
                    }
                } else if !p.is_zero() {
                    return None;
                }
            }
        }
        Some(scalar.unwrap_or_default())
    }

    pub fn try_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch);
        }
        Ok(self.mul(other))
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = PolyMatrix::zero(self.nvars, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sum");
        PolyMatrix {
            nvars: self.nvars,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyMatrix {
        self.map(Poly::neg)
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        self.map(|p| p.scale(c))
    }

    pub fn scale_poly(&self, f: &Poly) -> PolyMatrix {
        self.map(|p| p.mul(f))
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix {
            nvars: self.nvars,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.nvars, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    /// Kronecker product with an identity: `self ⊗ I_n`, blocks indexed
    /// `(row, k)` -> `row * n + k`.
    pub fn kron_identity(&self, n: usize) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.nvars, self.rows * n, self.cols * n);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let p = self.get(r, c);
                if p.is_zero() {
                    continue;
                }
                for k in 0..n {
                    out.set(r * n + k, c * n + k, p.clone());
                }
            }
        }
        out
    }

    /// Submatrix with the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.nvars, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Block matrix `[[a, b], [c, d]]`-style assembly from a grid.
    pub fn blocks(nvars: usize, grid: &[Vec<&PolyMatrix>]) -> PolyMatrix {
        let rows: usize = grid.iter().map(|row| row[0].rows).sum();
        let cols: usize = grid[0].iter().map(|b| b.cols).sum();
        let mut out = PolyMatrix::zero(nvars, rows, cols);
        let mut r0 = 0;
        for row in grid {
            let mut c0 = 0;
            for b in row {
                for r in 0..b.rows {
                    for c in 0..b.cols {
                        out.set(r0 + r, c0 + c, b.get(r, c).clone());
                    }
                }
                c0 += b.cols;
            }
            r0 += row[0].rows;
        }
        out
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Evaluates polynomials at a family of pairwise commuting matrices
/// (`y_{k+1} -> mats[k]`), caching monomial powers.
pub struct MatrixEvaluator<'a> {
    mats: &'a [PolyMatrix],
    size: usize,
    nvars: usize,
    cache: BTreeMap<Mono, PolyMatrix>,
}

impl<'a> MatrixEvaluator<'a> {
    pub fn new(nvars: usize, size: usize, mats: &'a [PolyMatrix]) -> Self {
        MatrixEvaluator { mats, size, nvars, cache: BTreeMap::new() }
    }

    fn mono(&mut self, m: Mono) -> PolyMatrix {
        if let Some(v) = self.cache.get(&m) {
            return v.clone();
        }
        let value = if m == Mono::ONE {
            PolyMatrix::identity(self.nvars, self.size)
        } else {
            let v = (0..self.mats.len()).find(|&v| m.exponent(v) > 0).unwrap();
            let rest = m.div_var(v).unwrap();
            let r = self.mono(rest);
            self.mats[v].mul(&r)
        };
        self.cache.insert(m, value.clone());
        value
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn eval(&mut self, p: &Poly) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.nvars, self.size, self.size);
        for (m, c) in p.terms() {
            if *m == Mono::ONE {
                for i in 0..self.size {
                    let e = out.get(i, i).add(&Poly::constant(self.nvars, c.clone()));
                    out.set(i, i, e);
                }
            } else {
                out = out.add(&self.mono(*m).scale(c));
            }
        }
        out
    }
}
