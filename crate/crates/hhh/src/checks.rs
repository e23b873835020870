//! The relation suites behind `check ...` and the census behind
//! `reduce-info`.

use std::fmt::Write;

use hhh_core::bimodule::{is_isomorphic, middle_relation, GradedBimodule};
use hhh_core::braid::BraidWord;
use hhh_core::hecke::{
    homfly, is_kl_triangular, kl_coordinates, kl_elements, match_euler, HeckeElement, Perm,
};
use hhh_core::homology::{compare_up_to_shift, euler, TrigradedDims};
use hhh_core::rouquier::{braid_complex, reduced_braid_complex, BimoduleComplex};
use hhh_core::{LaurentPoly, Rational};
use serde::Serialize;

use crate::{run_hhh, CliError, RunConfig};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Suite {
    pub name: String,
    pub checks: Vec<Check>,
}

impl Suite {
    fn new(name: &str) -> Self {
        Suite { name: name.into(), checks: Vec::new() }
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let status = if c.passed { "ok" } else { "FAILED" };
            let _ = write!(s, "{status:>6}  {}", c.name);
            if !c.detail.is_empty() {
                let _ = write!(s, ": {}", c.detail);
            }
            s.push('\n');
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(s, "{}: {} checks, {} failed", self.name, self.checks.len(), failed);
        s
    }

    /// `Ok` with the suite if every check passed, `CheckFailed` otherwise.
    pub fn into_result(self) -> Result<Suite, (Suite, CliError)> {
        if self.passed() {
            Ok(self)
        } else {
            let msg = format!("{} reported failures", self.name);
            Err((self, CliError::CheckFailed(msg)))
        }
    }
}

fn q(e: i32) -> LaurentPoly {
    LaurentPoly::x(e)
}

/// Relations of the Hecke algebra on `strands` strands, and for at most
/// three strands the Kazhdan-Lusztig checks.
pub fn hecke_suite(strands: usize) -> Result<Suite, CliError> {
    let mut s = Suite::new("hecke");
    let m = strands;
    let t = |i| HeckeElement::generator(m, i);
    let one = HeckeElement::one(m);
    for i in 1..m {
        let lhs = t(i).mul(&t(i))?;
        let rhs = t(i).scale(&q(2).sub(&LaurentPoly::one())).add(&one.scale(&q(2)));
        s.push(format!("quadratic T{i}"), lhs == rhs, "");
        let inv = t(i).mul(&HeckeElement::generator_inverse(m, i))?;
        s.push(format!("inverse T{i}"), inv == one, "");
        s.push(format!("iota involution T{i}"), t(i).iota().iota() == t(i), "");
        for j in i + 1..m {
            if j == i + 1 {
                let a = t(i).mul(&t(j))?.mul(&t(i))?;
                let b = t(j).mul(&t(i))?.mul(&t(j))?;
                s.push(format!("braid T{i} T{j}"), a == b, "");
            } else {
                s.push(format!("far commutation T{i} T{j}"), t(i).mul(&t(j))? == t(j).mul(&t(i))?, "");
            }
        }
    }
    if m > 3 {
        s.push("kazhdan-lusztig", true, "skipped: closed forms cover m <= 3");
        return Ok(s);
    }
    let kl = kl_elements(m)?;
    for (w, c) in &kl {
        s.push(format!("C'{w:?} iota-fixed"), &c.iota() == c, "");
        s.push(format!("C'{w:?} unitriangular"), is_kl_triangular(w, c), "");
    }
    if m >= 2 {
        let c1 = &kl[&Perm::simple(m, 1)];
        s.push("C'1^2 = (q + 1/q) C'1", c1.mul(c1)? == c1.scale(&q(1).add(&q(-1))), "");
    }
    if m == 3 {
        let (c1, c2) = (&kl[&Perm::simple(3, 1)], &kl[&Perm::simple(3, 2)]);
        let a = c1.mul(c2)?.mul(c1)?.sub(c1);
        let b = c2.mul(c1)?.mul(c2)?.sub(c2);
        s.push("C'1 C'2 C'1 - C'1 = C'2 C'1 C'2 - C'2", a == b, "");
    }
    let (mut pairs, mut bad) = (0, Vec::new());
    for (w, cw) in &kl {
        for (y, cy) in &kl {
            pairs += 1;
            let ok = kl_coordinates(&cw.mul(cy)?, &kl)
                .is_some_and(|coords| coords.values().all(LaurentPoly::has_natural_coefficients));
            if !ok {
                bad.push(format!("{w:?}*{y:?}"));
            }
        }
    }
    let detail = if bad.is_empty() { format!("{pairs} products") } else { bad.join(", ") };
    s.push("C' structure constants in N[q, 1/q]", bad.is_empty(), detail);
    Ok(s)
}

/// The Soergel relations: the square, far commutation and the middle
/// relation, plus a negative control.
pub fn soergel_suite() -> Result<Suite, CliError> {
    let mut s = Suite::new("soergel");
    let b1 = GradedBimodule::elementary(2, 1)?;
    let sq = is_isomorphic(&b1.tensor(&b1)?, &b1.direct_sum(&b1.shift(2))?)?;
    s.push("B1 B1 = B1 + B1{2} (m=2)", sq.is_some(), "");
    let (c1, c3) = (GradedBimodule::elementary(4, 1)?, GradedBimodule::elementary(4, 3)?);
    let far = is_isomorphic(&c1.tensor(&c3)?, &c3.tensor(&c1)?)?;
    s.push("B1 B3 = B3 B1 (m=4)", far.is_some(), "");
    let rel = middle_relation(3, 1)?;
    let mut gf = LaurentPoly::one();
    for (e, c) in [(2, 2), (4, 2), (6, 1)] {
        gf.add_term(e, 0, Rational::from_int(c));
    }
    s.push("complements in B1 B2 B1 and B2 B1 B2 isomorphic (m=3)", rel.iso.is_some(), "");
    let ranks = (rel.left.graded_rank(), rel.right.graded_rank());
    s.push(
        "complement graded rank 1 + 2q^2 + 2q^4 + q^6",
        ranks.0 == gf && ranks.1 == gf,
        format!("{} / {}", ranks.0.render("q", "_"), ranks.1.render("q", "_")),
    );
    let control = is_isomorphic(&GradedBimodule::regular(2), &b1)?;
    s.push("R and B1 not isomorphic", control.is_none(), "");
    Ok(s)
}

/// Euler characteristic of the computed table against the HOMFLYPT oracle.
pub fn euler_suite(config: &RunConfig) -> Result<Suite, CliError> {
    let mut s = Suite::new("euler");
    let dims = run_hhh(config)?;
    let chi = euler(&dims);
    let p = homfly(&config.word);
    let found = match_euler(&chi, &p, config.qmax);
    let detail = match found {
        Some(m) => format!(
            "chi = {} ; homfly = {} ; chi(a -> -v^2) = ({}) * homfly{} ; writhe {}",
            chi.render("q", "a"),
            p.render(),
            LaurentPoly::monomial(m.q_shift, m.v_shift, Rational::from_int(m.sign as i64)).render("q", "v"),
            if m.windowed { format!(" (compared for q <= {})", config.qmax) } else { String::new() },
            config.word.writhe()
        ),
        None => format!("chi = {} ; homfly = {} ; no monomial matches", chi.render("q", "a"), p.render()),
    };
    s.push("euler(HHH) = monomial * homfly", found.is_some(), detail);
    Ok(s)
}

fn compare(s: &mut Suite, name: &str, a: &TrigradedDims, b: &TrigradedDims, exact: bool) {
    match compare_up_to_shift(a, b) {
        Some(d) if !exact || d == (0, 0, 0) => s.push(name, true, format!("shift {d:?}")),
        Some(d) => s.push(name, false, format!("needs shift {d:?}")),
        None => s.push(name, false, "tables differ"),
    }
}

/// Markov moves and braid relations applied to the configured word.
pub fn invariance_suite(config: &RunConfig) -> Result<Suite, CliError> {
    let mut s = Suite::new("invariance");
    let w = &config.word;
    let run = |word: &BraidWord, reduce: bool| {
        let mut c = config.clone();
        c.word = word.clone();
        c.reduce = reduce;
        run_hhh(&c)
    };
    let base = run(w, config.reduce)?;
    let other = run(w, !config.reduce)?;
    s.push("reduce on/off agree", base == other, "");
    for k in 1..w.len() {
        compare(&mut s, &format!("conjugation: rotate by {k}"), &base, &run(&w.rotate(k), config.reduce)?, false);
    }
    for positive in [true, false] {
        let name = if positive { "stabilization (+)" } else { "stabilization (-)" };
        compare(&mut s, name, &base, &run(&w.stabilize(positive), config.reduce)?, false);
    }
    if w.strands() >= 2 {
        let inserted = w.concat(&BraidWord::new(w.strands(), vec![1, -1])?)?;
        compare(&mut s, "insert s1 s1^-1", &base, &run(&inserted, config.reduce)?, true);
    }
    let l = w.letters();
    let found = (0..l.len().saturating_sub(2))
        .find(|&k| l[k] > 0 && l[k + 2] == l[k] && (l[k + 1] == l[k] + 1 || l[k + 1] == l[k] - 1));
    match found {
        Some(k) => {
            let mut letters = l.to_vec();
            letters.splice(k..k + 3, [l[k + 1], l[k], l[k + 1]]);
            let moved = BraidWord::new(w.strands(), letters)?;
            compare(&mut s, &format!("braid relation at letter {}", k + 1), &base, &run(&moved, config.reduce)?, true);
        }
        None => s.push("braid relation", true, "skipped: no positive s_i s_j s_i pattern"),
    }
    Ok(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct SummandInfo {
    pub t: i32,
    pub word: Vec<usize>,
    pub shift: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReduceInfo {
    pub strands: usize,
    pub braid: Vec<i32>,
    pub before: Vec<SummandInfo>,
    pub after: Vec<SummandInfo>,
}

fn summaries(c: &BimoduleComplex) -> Vec<SummandInfo> {
    c.census().into_iter().map(|(t, word, shift)| SummandInfo { t, word, shift }).collect()
}

pub fn reduce_info(word: &BraidWord) -> Result<ReduceInfo, CliError> {
    Ok(ReduceInfo {
        strands: word.strands(),
        braid: word.letters().to_vec(),
        before: summaries(&braid_complex(word)?),
        after: summaries(&reduced_braid_complex(word)?),
    })
}

impl ReduceInfo {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "before: {} summands", self.before.len());
        let _ = writeln!(s, "after: {} summands", self.after.len());
        for e in &self.after {
            let word: Vec<String> = e.word.iter().map(|i| format!("B{i}")).collect();
            let name = if word.is_empty() { "R".to_string() } else { word.join(" ") };
            let _ = writeln!(s, "  t={:<3} {}{{{}}}", e.t, name, e.shift);
        }
        s
    }
}
