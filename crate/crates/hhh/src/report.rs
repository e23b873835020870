//! JSON and text renderings of computed homology.

use std::fmt::Write;

use hhh_core::braid::BraidWord;
use hhh_core::homology::{euler, poincare, TrigradedDims};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub q: i32,
    pub a: i32,
    pub t: i32,
    pub dim: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HhhReport {
    pub strands: usize,
    pub word: Vec<i32>,
    pub qmax: i32,
    pub entries: Vec<Entry>,
    pub poincare: String,
    pub euler: String,
}

pub fn entries(dims: &TrigradedDims) -> Vec<Entry> {
    dims.entries.iter().map(|(&(q, a, t), &dim)| Entry { q, a, t, dim }).collect()
}

pub fn dims_from_entries(qmax: i32, entries: &[Entry]) -> TrigradedDims {
    let mut dims = TrigradedDims::new(qmax);
    for e in entries {
        dims.insert((e.q, e.a, e.t), e.dim);
    }
    dims
}

impl HhhReport {
    pub fn new(word: &BraidWord, dims: &TrigradedDims) -> Self {
        HhhReport {
            strands: word.strands(),
            word: word.letters().to_vec(),
            qmax: dims.qmax,
            entries: entries(dims),
            poincare: poincare(dims),
            euler: euler(dims).render("q", "a"),
        }
    }

    pub fn dims(&self) -> TrigradedDims {
        dims_from_entries(self.qmax, &self.entries)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// A table sorted by `(t, h, q)` followed by the two polynomials.
    pub fn to_text(&self) -> String {
        let mut rows = self.entries.clone();
        rows.sort_by_key(|e| (e.t, e.a, e.q));
        let word: Vec<String> = self.word.iter().map(i32::to_string).collect();
        let mut s = String::new();
        let _ = writeln!(s, "braid: [{}] on {} strands, q <= {}", word.join(" "), self.strands, self.qmax);
        let _ = writeln!(s, "{:>5} {:>5} {:>5} {:>5}", "t", "h", "q", "dim");
        for e in &rows {
            let _ = writeln!(s, "{:>5} {:>5} {:>5} {:>5}", e.t, e.a, e.q, e.dim);
        }
        let _ = writeln!(s, "poincare: {}", self.poincare);
        let _ = writeln!(s, "euler: {}", self.euler);
        s
    }
}
