//! Laurent polynomials in one or two formal variables with rational
//! coefficients. The second variable is optional: univariate values simply
//! keep its exponent at zero.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<(i32, i32), Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    /// `c * x^e1 * w^e2`.
    pub fn monomial(e1: i32, e2: i32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(e1, e2, c);
        p
    }

    /// `x^e`.
    pub fn x(e: i32) -> Self {
        Self::monomial(e, 0, Rational::one())
    }

    /// `w^e` (second variable).
    pub fn w(e: i32) -> Self {
        Self::monomial(0, e, Rational::one())
    }

    pub fn add_term(&mut self, e1: i32, e2: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((e1, e2)).or_insert_with(Rational::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&(e1, e2));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i32, &Rational)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e1: i32, e2: i32) -> Rational {
        self.terms.get(&(e1, e2)).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from_int(-1))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (&(a, b), k) in &self.terms {
            out.add_term(a, b, k * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            for (&(d, e), k) in &other.terms {
                out.add_term(a + d, b + e, c * k);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by the monomial `x^e1 w^e2`.
    pub fn shift(&self, e1: i32, e2: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&(a, b), c)| ((a + e1, b + e2), c.clone())).collect(),
        }
    }

    /// Applies `x -> x^k1`, `w -> w^k2` on exponents (e.g. `k1 = -1` for
    /// the bar-type substitution `x -> x^{-1}`).
    pub fn rescale_exponents(&self, k1: i32, k2: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&(a, b), c)| ((a * k1, b * k2), c.clone())).collect(),
        }
    }

    /// Substitutes the second variable by a Laurent polynomial (univariate
    /// in the first variable or bivariate; the result collects everything).
    pub fn substitute_second(&self, image: &LaurentPoly, inverse: Option<&LaurentPoly>) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            let base = if b >= 0 {
                image.pow(b as u32)
            } else {
                inverse.expect("negative power needs an inverse").pow((-b) as u32)
            };
            out = out.add(&base.shift(a, 0).scale(c));
        }
        out
    }

    /// Every coefficient is a non-negative integer.
    pub fn has_natural_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn min_exponents(&self) -> Option<(i32, i32)> {
        self.terms.keys().next().copied()
    }

    pub fn max_first_exponent(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.0).max()
    }

    /// Exact division by `(1 - x^2)`; `None` if it does not divide.
    pub fn div_one_minus_x2(&self) -> Option<Self> {
        let mut by_second: BTreeMap<i32, BTreeMap<i32, Rational>> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            by_second.entry(b).or_default().insert(a, c.clone());
        }
        let mut out = Self::zero();
        for (b, row) in by_second {
            let lo = *row.keys().next().unwrap();
            let hi = *row.keys().next_back().unwrap();
            // p_e = q_e - q_{e-2}, so q_e = p_e + q_{e-2}
            let mut quot: BTreeMap<i32, Rational> = BTreeMap::new();
            let mut e = lo;
            while e <= hi - 2 {
                let prev = quot.get(&(e - 2)).cloned().unwrap_or_default();
                let v = &row.get(&e).cloned().unwrap_or_default() + &prev;
                quot.insert(e, v);
                e += 1;
            }
            // the two top coefficients must match -q_{e-2}
            for e in (hi - 1).max(lo)..=hi {
                let prev = quot.get(&(e - 2)).cloned().unwrap_or_default();
                let p = row.get(&e).cloned().unwrap_or_default();
                if p != -&prev {
                    return None;
                }
            }
            for (e, c) in quot {
                out.add_term(e, b, c);
            }
        }
        Some(out)
    }

    /// Renders with the given variable names, highest first exponent first.
    pub fn render(&self, x: &str, w: &str) -> String {
        use core::fmt::Write;
        if self.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        let keys: Vec<_> = self.terms.iter().rev().collect();
        for (k, (&(a, b), c)) in keys.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (e, name) in [(a, x), (b, w)] {
                match e {
                    0 => {}
                    1 => factors.push(String::from(name)),
                    e => factors.push(alloc::format!("{name}^{e}")),
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

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x", "w"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_render() {
        let q = LaurentPoly::x(1);
        let qi = LaurentPoly::x(-1);
        let p = q.add(&qi);
        assert_eq!(p.mul(&p).render("q", "a"), "q^2 + 2 + q^-2");
        assert!(q.mul(&qi).sub(&LaurentPoly::one()).is_zero());
    }

    #[test]
    fn divide_by_one_minus_q2() {
        let f = LaurentPoly::one().sub(&LaurentPoly::x(2));
        let g = LaurentPoly::x(-3).add(&LaurentPoly::monomial(1, 2, Rational::from_int(5)));
        let prod = f.mul(&g);
        assert_eq!(prod.div_one_minus_x2().unwrap(), g);
        assert!(LaurentPoly::one().div_one_minus_x2().is_none());
        assert!(LaurentPoly::x(2).add(&LaurentPoly::one()).div_one_minus_x2().is_none());
        assert_eq!(LaurentPoly::zero().div_one_minus_x2().unwrap(), LaurentPoly::zero());
    }
}
