//! Graded polynomials in the difference variables `y_1 .. y_{m-1}`.
//!
//! `y_i` stands for `x_i - x_{i+1}` and carries degree 2. Monomials are
//! packed exponent vectors, eight bits per variable.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Largest supported number of difference variables (strands − 1).
pub const MAX_VARS: usize = 8;
const BITS: u32 = 8;
const MASK: u64 = 0xff;

/// A monomial `y_1^{e_1} ... y_n^{e_n}`; `y_1` occupies the high byte so
/// integer order is lexicographic order on exponent vectors.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    #[inline]
    fn shift(var: usize) -> u32 {
        BITS * (MAX_VARS - 1 - var) as u32
    }

    /// `y_{var+1}` (0-based variable index).
    pub fn var(var: usize) -> Mono {
        assert!(var < MAX_VARS);
        Mono(1 << Self::shift(var))
    }

    pub fn from_exponents(exps: &[u32]) -> Mono {
        assert!(exps.len() <= MAX_VARS);
        let mut m = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e as u64 <= MASK, "exponent overflow");
            m |= (e as u64) << Self::shift(i);
        }
        Mono(m)
    }

    #[inline]
    pub fn exponent(self, var: usize) -> u32 {
        ((self.0 >> Self::shift(var)) & MASK) as u32
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|v| self.exponent(v)).collect()
    }

    /// Sum of exponents (half the graded degree).
    pub fn total(self) -> u32 {
        (0..MAX_VARS).map(|v| self.exponent(v)).sum()
    }

    /// Graded degree, `2 * total`.
    pub fn degree(self) -> i32 {
        2 * self.total() as i32
    }

    #[inline]
    pub fn mul(self, other: Mono) -> Mono {
        debug_assert!((0..MAX_VARS).all(|v| self.exponent(v) + other.exponent(v) <= MASK as u32));
        Mono(self.0 + other.0)
    }

    /// `self / y_var`, if divisible.
    pub fn div_var(self, var: usize) -> Option<Mono> {
        if self.exponent(var) == 0 {
            None
        } else {
            Some(Mono(self.0 - (1 << Self::shift(var))))
        }
    }

    /// All monomials in `nvars` variables whose exponents sum to `total`,
    /// in increasing `Mono` order.
    pub fn all_of_total(nvars: usize, total: u32) -> Vec<Mono> {
        fn rec(var: usize, nvars: usize, left: u32, acc: &mut Vec<u32>, out: &mut Vec<Mono>) {
            if var + 1 == nvars {
                acc.push(left);
                out.push(Mono::from_exponents(acc));
                acc.pop();
                return;
            }
            for e in 0..=left {
                acc.push(e);
                rec(var + 1, nvars, left - e, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if total == 0 {
                out.push(Mono::ONE);
            }
            return out;
        }
        rec(0, nvars, total, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Graded order used for rendering: higher degree first, then lex.
    fn render_cmp(&self, other: &Mono) -> Ordering {
        other.total().cmp(&self.total()).then(other.0.cmp(&self.0))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents(MAX_VARS))
    }
}

/// Sparse polynomial over the rationals. Terms are sorted by monomial and
/// never carry a zero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: u8,
    terms: Vec<(Mono, Rational)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        Poly { nvars: nvars as u8, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Poly {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.push((Mono::ONE, c));
        }
        p
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, Rational::one())
    }

    /// The variable `y_{var+1}`.
    pub fn var(nvars: usize, var: usize) -> Poly {
        assert!(var < nvars, "variable index out of range");
        Poly::monomial(nvars, Mono::var(var), Rational::one())
    }

    pub fn monomial(nvars: usize, m: Mono, c: Rational) -> Poly {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(nvars: usize, mut terms: Vec<(Mono, Rational)>) -> Poly {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Mono, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        let mut p = Poly::zero(nvars);
        p.terms = out;
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    pub fn terms(&self) -> &[(Mono, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(Mono::ONE)
    }

    /// `Some(c)` when the polynomial is the constant `c` (including 0).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if *m == Mono::ONE => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coeff(&self, m: Mono) -> Rational {
        match self.terms.binary_search_by(|(k, _)| k.cmp(&m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Graded degree if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous_of(&self, deg: i32) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == deg)
    }

    fn check_vars(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch { left: self.nvars(), right: other.nvars() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_vars(other)?;
        Ok(self.add(other))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars());
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: Mono, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars());
        }
        // monomial multiplication preserves order
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_vars(other)?;
        Ok(self.mul(other))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars());
        }
        if let [(m, c)] = other.terms.as_slice() {
            return self.mul_mono(*m, c);
        }
        if let [(m, c)] = self.terms.as_slice() {
            return other.mul_mono(*m, c);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(*mb), ca * cb));
            }
        }
        Poly::from_terms(self.nvars(), terms)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Ring homomorphism sending `y_{k+1}` to `images[k]`.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars());
        let nv = images.first().map_or(self.nvars(), |p| p.nvars());
        let mut out = Poly::zero(nv);
        // cache powers per variable
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| alloc::vec![Poly::one(nv), p.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(nv, c.clone());
            for (v, pw) in powers.iter_mut().enumerate() {
                let e = m.exponent(v) as usize;
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul(&pw[1]);
                    pw.push(next);
                }
                if e > 0 {
                    t = t.mul(&pw[e]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Exact division by `y_{var+1}`; `None` if some term is not divisible.
    pub fn div_var(&self, var: usize) -> Option<Poly> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| m.div_var(var).map(|d| (d, c.clone())))
            .collect::<Option<Vec<_>>>()?;
        Some(Poly { nvars: self.nvars, terms })
    }

    /// Deterministic text form such as `3/2*y1^2*y2 - y3`.
    pub fn render(&self) -> alloc::string::String {
        use alloc::string::String;
        use core::fmt::Write;
        if self.is_zero() {
            return String::from("0");
        }
        let mut terms: Vec<&(Mono, Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.render_cmp(&b.0));
        let mut s = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<alloc::string::String> = Vec::new();
            for v in 0..self.nvars() {
                match m.exponent(v) {
                    0 => {}
                    1 => factors.push(alloc::format!("y{}", v + 1)),
                    e => factors.push(alloc::format!("y{}^{}", v + 1, e)),
                }
            }
            if factors.is_empty() {
                let _ = write!(s, "{abs}");
            } else {
                if !abs.is_one() {
                    let _ = write!(s, "{abs}*");
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.render())
    }
}

/// Product of two polynomials over the same variables.
pub fn poly_mul(p: &Poly, r: &Poly) -> Result<Poly> {
    p.try_mul(r)
}

fn check_generator(nvars: usize, i: usize) -> Result<()> {
    if i == 0 || i > nvars {
        return Err(Error::GeneratorOutOfRange { index: i as i64, strands: nvars + 1 });
    }
    Ok(())
}

/// The automorphism induced by `x_i <-> x_{i+1}` (1-based `i`):
/// `y_i -> -y_i`, `y_{i±1} -> y_{i±1} + y_i`, other variables fixed.
pub fn transposition_action(i: usize, p: &Poly) -> Result<Poly> {
    let n = p.nvars();
    check_generator(n, i)?;
    let k = i - 1;
    let images: Vec<Poly> = (0..n)
        .map(|v| {
            let y = Poly::var(n, v);
            if v == k {
                y.neg()
            } else if v + 1 == k || v == k + 1 {
                y.add(&Poly::var(n, k))
            } else {
                y
            }
        })
        .collect();
    Ok(p.substitute(&images))
}

/// Splits `p = sym + y_i * quot` with both parts fixed by the `i`-th
/// transposition.
pub fn demazure_split(i: usize, p: &Poly) -> Result<(Poly, Poly)> {
    let sp = transposition_action(i, p)?;
    let half = Rational::new(1, 2);
    let sym = p.add(&sp).scale(&half);
    let anti = p.sub(&sp).scale(&half);
    let quot = anti.div_var(i - 1).expect("antisymmetric polynomial is divisible by y_i");
    Ok((sym, quot))
}
