//! Greedy search for a small set of power relators that imposes an
//! exponent law on a quotient.

use crate::error::QuotientError;
use crate::pquotient::{evaluate_free_word, higman_words, pquotient, ExponentLaw, QuotientSystem};
use crate::subgroup::{subgroup_closure, SubgroupBuilder};
use crate::word::{FreeWord, Presentation, RelatorExpr};

/// `k` such that the `n`-th power subgroup of `qs_free` has order `p^k`.
///
/// Computed as the order difference and checked against the normal closure
/// of the `n`-th powers of all words up to the class length.
pub fn power_subgroup_target(
    qs_free: &QuotientSystem,
    qs_exp: &QuotientSystem,
    n: u64,
) -> Result<usize, QuotientError> {
    if qs_free.source().generators() != qs_exp.source().generators() {
        return Err(QuotientError::Mismatch("generator lists differ".into()));
    }
    if qs_free.pclass() != qs_exp.pclass() && !qs_exp.is_terminal() {
        return Err(QuotientError::Mismatch(format!(
            "classes differ: {} and {}",
            qs_free.pclass(),
            qs_exp.pclass()
        )));
    }
    let (a, b) = (qs_free.order_exponent(), qs_exp.order_exponent());
    if b > a {
        return Err(QuotientError::Mismatch(format!(
            "exponent quotient p^{b} is larger than p^{a}"
        )));
    }
    let words = higman_words(qs_free.source().rank(), qs_free.pclass() as usize, n);
    let pc = qs_free.pc();
    let powers: Vec<_> = words
        .iter()
        .map(|w| pc.power(&qs_free.evaluate_word(w), n as i64))
        .collect();
    let closure = subgroup_closure(pc, &powers, true).order_exponent();
    if closure != a - b {
        return Err(QuotientError::Mismatch(format!(
            "power subgroup has order p^{closure}, expected p^{}",
            a - b
        )));
    }
    Ok(a - b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Acceptance {
    /// Position in the candidate list.
    pub index: usize,
    pub word: FreeWord,
    pub before: usize,
    pub after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyTrace {
    pub candidates: Vec<FreeWord>,
    pub accepted: Vec<Acceptance>,
    pub target: usize,
}

impl GreedyTrace {
    pub fn accepted_words(&self) -> Vec<FreeWord> {
        self.accepted.iter().map(|a| a.word.clone()).collect()
    }

    pub fn final_order(&self) -> usize {
        self.accepted.last().map_or(0, |a| a.after)
    }

    /// One line per acceptance: index, word, orders before and after.
    pub fn render(&self, names: &[String]) -> String {
        let mut out = format!("target {}\n", self.target);
        for a in &self.accepted {
            out.push_str(&format!(
                "{} {} {} {}\n",
                a.index,
                a.word.render(names),
                a.before,
                a.after
            ));
        }
        out
    }
}

/// Scans `candidates` in order, keeping each word whose `n`-th power enlarges
/// the normal closure built so far, until it reaches order `p^target`.
pub fn greedy_select(
    qs_free: &QuotientSystem,
    candidates: &[FreeWord],
    n: u64,
    target: usize,
) -> Result<GreedyTrace, QuotientError> {
    let pc = qs_free.pc();
    let mut l = SubgroupBuilder::new(pc, true);
    let mut accepted = Vec::new();
    for (index, w) in candidates.iter().enumerate() {
        if l.order_exponent() >= target {
            break;
        }
        let x = pc.power(&evaluate_free_word(pc, qs_free.images(), w), n as i64);
        let before = l.order_exponent();
        if l.add(&x) > 0 {
            accepted.push(Acceptance {
                index,
                word: w.clone(),
                before,
                after: l.order_exponent(),
            });
        }
    }
    if l.order_exponent() != target {
        return Err(QuotientError::Unreachable {
            target,
            achieved: l.order_exponent(),
        });
    }
    Ok(GreedyTrace {
        candidates: candidates.to_vec(),
        accepted,
        target,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassStep {
    pub class: u32,
    pub trace: GreedyTrace,
    /// All accepted words so far, in acceptance order.
    pub cumulative: Vec<FreeWord>,
}

/// `base` with `w^n` appended for each word.
pub fn with_power_relators(base: &Presentation, words: &[FreeWord], n: u64) -> Presentation {
    let mut rels = base.relators().to_vec();
    rels.extend(
        words
            .iter()
            .map(|w| RelatorExpr::power(RelatorExpr::from_word(w), n as i64)),
    );
    base.with_relators(rels)
        .expect("power relators only use base generators")
}

/// Runs the greedy selection class by class, each time on the quotient
/// presented by the base relators plus the powers accepted so far.
pub fn lift_minimization(
    base: &Presentation,
    p: u32,
    n: u64,
    class_from: u32,
    class_to: u32,
    pool: &[FreeWord],
) -> Result<Vec<ClassStep>, QuotientError> {
    if class_from < 1 || class_to < class_from {
        return Err(QuotientError::InvalidParameter(format!(
            "bad class range {class_from}..{class_to}"
        )));
    }
    let law = ExponentLaw::new(n);
    let mut cumulative: Vec<FreeWord> = Vec::new();
    let mut steps = Vec::new();
    for c in class_from..=class_to {
        let pres = with_power_relators(base, &cumulative, n);
        let qs_free = pquotient(&pres, p, c, None)?;
        let qs_exp = pquotient(base, p, c, Some(&law))?;
        let target = qs_free.order_exponent() - qs_exp.order_exponent().min(qs_free.order_exponent());
        let trace = greedy_select(&qs_free, pool, n, target)?;
        cumulative.extend(trace.accepted_words());
        steps.push(ClassStep {
            class: c,
            trace,
            cumulative: cumulative.clone(),
        });
    }
    Ok(steps)
}
