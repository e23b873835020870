use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A braid word on `strands` strands; letter `±i` is `σ_i^{±1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::GeneratorOutOfRange { index: 0, strands });
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::GeneratorOutOfRange { index: l as i64, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn empty(strands: usize) -> Self {
        assert!(strands >= 1);
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of crossing signs.
    pub fn writhe(&self) -> i32 {
        self.letters.iter().map(|l| l.signum()).sum()
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch { left: self.strands, right: other.strands });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// Cyclic rotation moving the first `k` letters to the end (a
    /// conjugate braid).
    pub fn rotate(&self, k: usize) -> BraidWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let n = letters.len();
            letters.rotate_left(k % n);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// Adds a strand and a positive (or negative) crossing with it.
    pub fn stabilize(&self, positive: bool) -> BraidWord {
        let mut letters = self.letters.clone();
        let s = self.strands as i32;
        letters.push(if positive { s } else { -s });
        BraidWord { strands: self.strands + 1, letters }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BraidWord(m={}, [{}])", self.strands, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn validation_and_moves() {
        assert!(BraidWord::new(3, vec![1, -2]).is_ok());
        assert!(BraidWord::new(3, vec![3]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
        let w = BraidWord::new(3, vec![1, 1, -2]).unwrap();
        assert_eq!(w.writhe(), 1);
        assert_eq!(w.rotate(1).letters(), &[1, -2, 1]);
        let s = w.stabilize(true);
        assert_eq!((s.strands(), s.letters()), (4, &[1, 1, -2, 3][..]));
    }
}
