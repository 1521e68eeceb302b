//! Class-by-class p-quotient computation.
//!
//! One class step works on an [`Extension`]: the current quotient with a new
//! central generator ("tail") appended to every non-defining relation. Each
//! enforcement stage collects linear relations among the tails, eliminates
//! them and rebuilds the presentation, so every stage boundary is itself a
//! valid presentation that can be checkpointed.

use std::collections::{HashMap, HashSet};

use crate::error::QuotientError;
use crate::linalg::Echelon;
use crate::pc::{Definition, Letter, NormalWord, PcBuilder, PcPresentation};
use crate::subgroup::subgroup_closure;
use crate::word::{enumerate_words, FreeWord, Presentation};

/// A finitely presented group together with its current p-quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSystem {
    source: Presentation,
    pc: PcPresentation,
    images: Vec<NormalWord>,
    pclass: u32,
    terminal: bool,
}

impl QuotientSystem {
    pub(crate) fn from_parts(
        source: Presentation,
        pc: PcPresentation,
        images: Vec<NormalWord>,
        pclass: u32,
        terminal: bool,
    ) -> Self {
        Self {
            source,
            pc,
            images,
            pclass,
            terminal,
        }
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn pc(&self) -> &PcPresentation {
        &self.pc
    }

    pub fn prime(&self) -> u32 {
        self.pc.prime()
    }

    /// Images of the source generators.
    pub fn images(&self) -> &[NormalWord] {
        &self.images
    }

    /// `k` with quotient order `p^k`.
    pub fn order_exponent(&self) -> usize {
        self.pc.ngens()
    }

    pub fn pclass(&self) -> u32 {
        self.pclass
    }

    /// True once a class step produced no new generators.
    pub fn is_terminal(&self) -> bool {
        self.terminal
    }

    /// Image of a free word in the source generators.
    pub fn evaluate_word(&self, w: &FreeWord) -> NormalWord {
        evaluate_free_word(&self.pc, &self.images, w)
    }

    pub fn evaluate(&self, expr: &crate::word::RelatorExpr) -> NormalWord {
        expr.evaluate(&self.pc, &self.images)
    }

    /// True iff the images generate the whole quotient.
    pub fn is_epimorphic(&self) -> bool {
        subgroup_closure(&self.pc, &self.images, false).order_exponent() == self.pc.ngens()
    }
}

pub(crate) fn evaluate_free_word(pc: &PcPresentation, images: &[NormalWord], w: &FreeWord) -> NormalWord {
    let mut acc = pc.identity();
    for &(g, e) in w.syllables() {
        let x = pc.power(&images[g as usize], e as i64);
        acc = pc.multiply(&acc, &x);
    }
    acc
}

/// Class 1: the elementary abelian mod-p abelianization of `pres`.
pub fn initial_quotient(pres: &Presentation, p: u32) -> Result<QuotientSystem, QuotientError> {
    if !crate::pc::is_prime(p) {
        return Err(QuotientError::InvalidParameter(format!("{p} is not prime")));
    }
    let d = pres.rank();
    let mut ech = Echelon::new(p, d);
    for r in pres.relators() {
        let mut v = vec![0u32; d];
        for &(g, e) in r.flatten().syllables() {
            let x = (e as i64).rem_euclid(p as i64) as u32;
            v[g as usize] = (v[g as usize] + x) % p;
        }
        ech.insert(v);
    }
    let free = ech.free_columns();
    let n = free.len();
    let mut b = PcBuilder::new(p);
    for &g in &free {
        b.add_generator(1, Some(Definition::Image(g as u32)));
    }
    let pc = b.build()?;
    let subst = ech.substitution();
    let images = (0..d)
        .map(|g| {
            let mut v = vec![0u32; n];
            for &(k, c) in &subst[g] {
                v[k] = (v[k] + c) % p;
            }
            NormalWord::from_exponents(v)
        })
        .collect();
    Ok(QuotientSystem {
        source: pres.clone(),
        pc,
        images,
        pclass: if n == 0 { 0 } else { 1 },
        terminal: n == 0,
    })
}

/// How the exponent law is imposed during a class step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentLaw {
    pub exponent: u64,
    /// Words whose powers are imposed; `None` means the full list of
    /// words up to the new class length (enough by Higman's lemma).
    pub words: Option<Vec<FreeWord>>,
}

impl ExponentLaw {
    pub fn new(exponent: u64) -> Self {
        Self {
            exponent,
            words: None,
        }
    }
}

/// Progress marker within a class step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Tailed,
    Consistent,
    RelatorsDone,
    ExponentDone,
}

impl Stage {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::Tailed => "tailed",
            Self::Consistent => "consistent",
            Self::RelatorsDone => "relators-done",
            Self::ExponentDone => "exponent-done",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        Some(match s {
            "tailed" => Self::Tailed,
            "consistent" => Self::Consistent,
            "relators-done" => Self::RelatorsDone,
            "exponent-done" => Self::ExponentDone,
            _ => return None,
        })
    }
}

/// Statistics for one elimination pass.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StageStats {
    pub relations: usize,
    pub eliminated: usize,
}

/// A class step in progress: old generators followed by surviving tails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    source: Presentation,
    pc: PcPresentation,
    images: Vec<NormalWord>,
    old_ngens: usize,
    pclass: u32,
    stage: Stage,
}

impl Extension {
    pub(crate) fn from_parts(
        source: Presentation,
        pc: PcPresentation,
        images: Vec<NormalWord>,
        old_ngens: usize,
        pclass: u32,
        stage: Stage,
    ) -> Self {
        Self {
            source,
            pc,
            images,
            old_ngens,
            pclass,
            stage,
        }
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn pc(&self) -> &PcPresentation {
        &self.pc
    }

    pub fn images(&self) -> &[NormalWord] {
        &self.images
    }

    pub fn stage(&self) -> Stage {
        self.stage
    }

    /// Class of the quotient being extended.
    pub fn pclass(&self) -> u32 {
        self.pclass
    }

    pub fn old_ngens(&self) -> usize {
        self.old_ngens
    }

    /// Number of surviving tail generators (the current multiplicator rank).
    pub fn tail_count(&self) -> usize {
        self.pc.ngens() - self.old_ngens
    }

    /// Adds tails to every non-defining relation of weight at most `class + 1`
    /// and, when `image_tails` is set, to every source generator whose image
    /// is not itself a defining generator.
    pub fn with_tails(qs: &QuotientSystem, image_tails: bool) -> Result<Self, QuotientError> {
        let pc = &qs.pc;
        let n = pc.ngens();
        let c = qs.pclass;
        let w = pc.weights();
        let defs: HashSet<Definition> = pc.definitions().iter().flatten().copied().collect();

        // columns are ordered so that the survivors of elimination (which
        // favours later columns) are weight c+1 relations where possible
        let mut early: Vec<Definition> = Vec::new();
        let mut late: Vec<Definition> = Vec::new();
        let mut latest: Vec<Definition> = Vec::new();
        if image_tails {
            for x in 0..qs.source.rank() as u32 {
                if !defs.contains(&Definition::Image(x)) {
                    early.push(Definition::Image(x));
                }
            }
        }
        for i in 0..n {
            let d = Definition::Power(i as u32);
            if defs.contains(&d) {
                continue;
            }
            if w[i] + 1 == c + 1 {
                late.push(d);
            } else {
                early.push(d);
            }
        }
        for j in 0..n {
            for i in 0..j {
                let d = Definition::Commutator(j as u32, i as u32);
                if defs.contains(&d) || w[i] + w[j] > c + 1 {
                    continue;
                }
                if w[i] + w[j] < c + 1 {
                    early.push(d);
                } else if w[i] == 1 {
                    latest.push(d);
                } else {
                    late.push(d);
                }
            }
        }
        let tails: Vec<Definition> = early.into_iter().chain(late).chain(latest).collect();

        let mut b = PcBuilder::from_presentation(pc);
        let mut tail_of: HashMap<Definition, u32> = HashMap::new();
        for &d in &tails {
            let t = b.add_generator(c + 1, Some(d));
            tail_of.insert(d, t);
        }
        let append = |rhs: &[Letter], t: Option<&u32>| -> Vec<Letter> {
            let mut v = rhs.to_vec();
            if let Some(&t) = t {
                v.push((t, 1));
            }
            v
        };
        for i in 0..n {
            let t = tail_of.get(&Definition::Power(i as u32));
            b.set_power(i as u32, append(pc.power_rhs(i), t))?;
        }
        for j in 0..n {
            for i in 0..j {
                let t = tail_of.get(&Definition::Commutator(j as u32, i as u32));
                if t.is_some() {
                    b.set_comm(j as u32, i as u32, append(pc.comm_rhs(j, i), t))?;
                }
            }
        }
        let tailed = b.build()?;
        let total = tailed.ngens();
        let images = qs
            .images
            .iter()
            .enumerate()
            .map(|(x, img)| {
                let mut v = img.resized(total);
                if let Some(&t) = tail_of.get(&Definition::Image(x as u32)) {
                    v.exponents_mut()[t as usize] = 1;
                }
                v
            })
            .collect();
        Ok(Self {
            source: qs.source.clone(),
            pc: tailed,
            images,
            old_ngens: n,
            pclass: c,
            stage: Stage::Tailed,
        })
    }

    /// Tail part of an element that must be trivial in the old quotient.
    fn tail_vector(&self, x: &NormalWord, what: &dyn Fn() -> String) -> Result<Vec<u32>, QuotientError> {
        let e = x.exponents();
        if e[..self.old_ngens].iter().any(|&v| v != 0) {
            return Err(QuotientError::Inconsistent(format!(
                "{} is nontrivial in the class {} quotient",
                what(),
                self.pclass
            )));
        }
        Ok(e[self.old_ngens..].to_vec())
    }

    /// Eliminates the given relations among tails and rebuilds.
    fn eliminate(&mut self, relations: Vec<Vec<u32>>) -> Result<StageStats, QuotientError> {
        let p = self.pc.prime();
        let m = self.tail_count();
        let mut ech = Echelon::new(p, m);
        let count = relations.len();
        for r in relations {
            ech.insert(r);
        }
        let stats = StageStats {
            relations: count,
            eliminated: ech.rank(),
        };
        if ech.rank() == 0 {
            return Ok(stats);
        }
        let subst = ech.substitution();
        let free = ech.free_columns();
        let n = self.old_ngens;
        let new_total = n + free.len();
        let rewrite = |x: &[Letter]| -> Vec<Letter> {
            let mut acc = vec![0u32; free.len()];
            let mut out = Vec::new();
            for &(g, e) in x {
                let g = g as usize;
                if g < n {
                    out.push((g as u32, e));
                } else {
                    for &(k, c) in &subst[g - n] {
                        acc[k] = ((acc[k] as u64 + c as u64 * e as u64) % p as u64) as u32;
                    }
                }
            }
            out.extend(
                acc.iter()
                    .enumerate()
                    .filter(|(_, &e)| e != 0)
                    .map(|(k, &e)| ((n + k) as u32, e)),
            );
            out
        };
        let old = &self.pc;
        let mut b = PcBuilder::new(p);
        for g in 0..n {
            b.add_generator(old.weight(g), old.definition(g));
        }
        for &f in &free {
            b.add_generator(old.weight(n + f), old.definition(n + f));
        }
        for i in 0..n {
            b.set_power(i as u32, rewrite(old.power_rhs(i)))?;
        }
        for (j, i, w) in old.comm_relations() {
            if j < n {
                b.set_comm(j as u32, i as u32, rewrite(w))?;
            }
        }
        let pc = b.build()?;
        self.images = self
            .images
            .iter()
            .map(|x| NormalWord::from_letters(new_total, &rewrite(&x.letters())))
            .collect();
        self.pc = pc;
        Ok(stats)
    }

    /// Enforces the weight-bounded overlap conditions.
    pub fn enforce_consistency(&mut self) -> Result<StageStats, QuotientError> {
        let overlaps = self.pc.overlaps(Some(self.pclass + 1));
        let mut rels = Vec::new();
        for o in overlaps {
            let (left, right) = self.pc.evaluate_overlap(o);
            let (l, r) = (left.exponents(), right.exponents());
            if l[..self.old_ngens] != r[..self.old_ngens] {
                return Err(QuotientError::Inconsistent(format!(
                    "overlap {o} disagrees below the tails"
                )));
            }
            let p = self.pc.prime();
            let v: Vec<u32> = l[self.old_ngens..]
                .iter()
                .zip(&r[self.old_ngens..])
                .map(|(&a, &b)| (a + p - b) % p)
                .collect();
            if v.iter().any(|&e| e != 0) {
                rels.push(v);
            }
        }
        let s = self.eliminate(rels)?;
        self.stage = Stage::Consistent;
        Ok(s)
    }

    /// Enforces the source presentation's relators.
    pub fn enforce_relators(&mut self) -> Result<StageStats, QuotientError> {
        let mut rels = Vec::new();
        for r in self.source.relators() {
            let x = r.evaluate(&self.pc, &self.images);
            let names = self.source.generators();
            rels.push(self.tail_vector(&x, &|| format!("relator {}", r.render(names)))?);
        }
        let s = self.eliminate(rels)?;
        self.stage = Stage::RelatorsDone;
        Ok(s)
    }

    /// Imposes `w^n = 1` for each listed word (the Higman list when `None`).
    pub fn enforce_exponent(&mut self, law: &ExponentLaw) -> Result<StageStats, QuotientError> {
        let n = law.exponent;
        let words = match &law.words {
            Some(w) => w.clone(),
            None => higman_words(self.source.rank(), self.pclass as usize + 1, n),
        };
        let mut cache: HashMap<Vec<u32>, NormalWord> = HashMap::new();
        let mut rels = Vec::new();
        for w in &words {
            let img = if w.is_positive() {
                self.image_cached(&w.letters()?, &mut cache)
            } else {
                evaluate_free_word(&self.pc, &self.images, w)
            };
            let x = self.pc.power(&img, n as i64);
            let names = self.source.generators();
            rels.push(self.tail_vector(&x, &|| format!("({})^{n}", w.render(names)))?);
        }
        let s = self.eliminate(rels)?;
        self.stage = Stage::ExponentDone;
        Ok(s)
    }

    fn image_cached(&self, letters: &[u32], cache: &mut HashMap<Vec<u32>, NormalWord>) -> NormalWord {
        if letters.is_empty() {
            return self.pc.identity();
        }
        if let Some(x) = cache.get(letters) {
            return x.clone();
        }
        let (last, prefix) = letters.split_last().unwrap();
        let head = self.image_cached(prefix, cache);
        let x = self.pc.multiply(&head, &self.images[*last as usize]);
        cache.insert(letters.to_vec(), x.clone());
        x
    }

    /// Converts the finished extension into the next-class quotient.
    pub fn finish(self) -> QuotientSystem {
        let grew = self.tail_count() > 0;
        QuotientSystem {
            source: self.source,
            pc: self.pc,
            images: self.images,
            pclass: if grew { self.pclass + 1 } else { self.pclass },
            terminal: !grew,
        }
    }
}

/// Words whose powers certify the exponent law in class `len`.
pub fn higman_words(rank: usize, len: usize, exponent: u64) -> Vec<FreeWord> {
    let forbidden = u32::try_from(exponent).unwrap_or(u32::MAX);
    enumerate_words(rank as u32, len, forbidden)
}

/// Runs one class step: tails, consistency, relators, then the exponent law.
pub fn extend_one_class(
    qs: &QuotientSystem,
    exponent_law: Option<&ExponentLaw>,
) -> Result<QuotientSystem, QuotientError> {
    if qs.terminal {
        return Ok(qs.clone());
    }
    let mut ext = Extension::with_tails(qs, true)?;
    continue_extension::<QuotientError>(&mut ext, exponent_law, &mut |_, _| Ok(()))?;
    Ok(ext.finish())
}

/// Drives an extension from its recorded stage to completion, calling
/// `on_stage` after every stage.
pub fn continue_extension<E>(
    ext: &mut Extension,
    exponent_law: Option<&ExponentLaw>,
    on_stage: &mut dyn FnMut(&Extension, StageStats) -> Result<(), E>,
) -> Result<(), E>
where
    E: From<QuotientError>,
{
    if ext.stage < Stage::Consistent {
        let s = ext.enforce_consistency()?;
        on_stage(ext, s)?;
    }
    if ext.stage < Stage::RelatorsDone {
        let s = ext.enforce_relators()?;
        on_stage(ext, s)?;
    }
    if ext.stage < Stage::ExponentDone {
        let s = match exponent_law {
            Some(law) => ext.enforce_exponent(law)?,
            None => {
                ext.stage = Stage::ExponentDone;
                StageStats::default()
            }
        };
        on_stage(ext, s)?;
    }
    Ok(())
}

/// Iterates class steps until `class_cap` (0 = no cap) or termination.
pub fn pquotient(
    pres: &Presentation,
    p: u32,
    class_cap: u32,
    exponent_law: Option<&ExponentLaw>,
) -> Result<QuotientSystem, QuotientError> {
    let mut qs = initial_quotient(pres, p)?;
    while !qs.terminal && (class_cap == 0 || qs.pclass < class_cap) {
        qs = extend_one_class(&qs, exponent_law)?;
    }
    Ok(qs)
}

/// The p-covering group of a quotient and where its multiplicator sits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverResult {
    pub cover: PcPresentation,
    /// Indices of the central generators spanning the p-multiplicator.
    pub multiplicator: std::ops::Range<usize>,
}

impl CoverResult {
    pub fn multiplicator_rank(&self) -> usize {
        self.multiplicator.len()
    }

    pub fn order_exponent(&self) -> usize {
        self.cover.ngens()
    }

    /// Image of a cover element in the original quotient.
    pub fn restrict(&self, x: &NormalWord) -> NormalWord {
        x.resized(self.multiplicator.start)
    }
}

/// Largest central elementary abelian extension with the same generator
/// count: tails plus consistency only.
pub fn p_covering_group(qs: &QuotientSystem) -> Result<CoverResult, QuotientError> {
    let mut ext = Extension::with_tails(qs, false)?;
    ext.enforce_consistency()?;
    let start = ext.old_ngens;
    let end = ext.pc.ngens();
    Ok(CoverResult {
        cover: ext.pc,
        multiplicator: start..end,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_presentation;

    #[test]
    fn initial_quotients() {
        let free = Presentation::free(&["a", "b"]);
        let qs = initial_quotient(&free, 5).unwrap();
        assert_eq!((qs.order_exponent(), qs.pclass()), (2, 1));

        let g = parse_presentation("gens a,b,c,d; rel [b,a]*[c,d];").unwrap();
        assert_eq!(initial_quotient(&g, 5).unwrap().order_exponent(), 4);

        let a = parse_presentation("gens a,b,c,d; rel a^3; rel b^3; rel c^3; rel d^3; rel [b,a]*[c,d];")
            .unwrap();
        assert_eq!(initial_quotient(&a, 3).unwrap().order_exponent(), 4);
    }

    #[test]
    fn dependent_generators_get_images() {
        let pres = parse_presentation("gens a,b,c; rel a*c^-1; rel b^5;").unwrap();
        let qs = initial_quotient(&pres, 5).unwrap();
        assert_eq!(qs.order_exponent(), 2);
        assert_eq!(qs.images()[0], qs.images()[2]);
        assert!(!qs.images()[1].is_identity());
        assert!(qs.is_epimorphic());
    }

    #[test]
    fn zero_rank_is_terminal() {
        let pres = parse_presentation("gens a; rel a;").unwrap();
        let qs = initial_quotient(&pres, 3).unwrap();
        assert!(qs.is_terminal());
        assert_eq!(qs.order_exponent(), 0);
    }

    #[test]
    fn cover_of_elementary_abelian() {
        let qs = initial_quotient(&Presentation::free(&["a", "b"]), 5).unwrap();
        let cover = p_covering_group(&qs).unwrap();
        assert_eq!(cover.multiplicator_rank(), 3);
        assert_eq!(cover.order_exponent(), 5);
        assert_eq!(cover.cover.truncate(2).unwrap(), *qs.pc());
    }

    #[test]
    fn exponent_on_generators_only() {
        let qs = initial_quotient(&Presentation::free(&["a", "b"]), 5).unwrap();
        let law = ExponentLaw {
            exponent: 5,
            words: Some(vec![FreeWord::generator(0), FreeWord::generator(1)]),
        };
        let q2 = extend_one_class(&qs, Some(&law)).unwrap();
        assert_eq!((q2.order_exponent(), q2.pclass()), (3, 2));
        for x in crate::testing::all_elements(q2.pc()) {
            assert!(q2.pc().power(&x, 5).is_identity());
        }
    }

    #[test]
    fn exponent_law_fixed_point() {
        let free = Presentation::free(&["a", "b"]);
        let law = ExponentLaw::new(3);
        let qs = pquotient(&free, 3, 0, Some(&law)).unwrap();
        assert_eq!((qs.order_exponent(), qs.pclass(), qs.is_terminal()), (3, 2, true));
        let mut ext = Extension::with_tails(&qs, true).unwrap();
        ext.enforce_consistency().unwrap();
        ext.enforce_relators().unwrap();
        let before = ext.tail_count();
        let stats = ext.enforce_exponent(&ExponentLaw {
            exponent: 3,
            words: Some(vec![]),
        });
        assert_eq!(stats.unwrap().eliminated, 0);
        assert_eq!(ext.tail_count(), before);
    }
}
