//! Subgroups given by induced (echelonized) generating sequences.

use crate::error::PcError;
use crate::pc::{inv_mod, NormalWord, PcPresentation};

/// An echelonized generating sequence: one generator per leading index,
/// leading exponent 1, zero exponents at every other generator's lead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcSubgroup {
    gens: Vec<NormalWord>,
    leads: Vec<usize>,
}

impl PcSubgroup {
    pub fn trivial() -> Self {
        Self {
            gens: Vec::new(),
            leads: Vec::new(),
        }
    }

    /// The whole group, generated by the PC generators themselves.
    pub fn whole(pc: &PcPresentation) -> Self {
        Self {
            gens: (0..pc.ngens()).map(|g| pc.gen(g)).collect(),
            leads: (0..pc.ngens()).collect(),
        }
    }

    pub fn generators(&self) -> &[NormalWord] {
        &self.gens
    }

    pub fn leading_indices(&self) -> &[usize] {
        &self.leads
    }

    /// `k` with `|H| = p^k`.
    pub fn order_exponent(&self) -> usize {
        self.gens.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, pc: &PcPresentation, x: &NormalWord) -> bool {
        self.sift(pc, x).is_identity()
    }

    /// Right-multiplies `x` by inverses of generators until no lead matches.
    /// The result is the canonical representative of the left coset `xH`.
    pub fn sift(&self, pc: &PcPresentation, x: &NormalWord) -> NormalWord {
        let p = pc.prime();
        let mut x = x.clone();
        for (s, &l) in self.gens.iter().zip(&self.leads) {
            let e = x.exponents()[l];
            if e != 0 {
                // s^(p-e) has lead exponent p-e; repeated right multiplication
                // keeps everything before l untouched
                let t = pc.power(s, (p - e) as i64);
                x = pc.multiply(&x, &t);
                debug_assert_eq!(x.exponents()[l], 0);
            }
        }
        x
    }

    pub fn is_subgroup_of(&self, pc: &PcPresentation, other: &PcSubgroup) -> bool {
        self.gens.iter().all(|g| other.contains(pc, g))
    }
}

/// Incremental closure under products, powers and (optionally) conjugation.
#[derive(Clone, Debug)]
pub struct SubgroupBuilder<'a> {
    pc: &'a PcPresentation,
    normal: bool,
    slots: Vec<Option<NormalWord>>,
    count: usize,
}

impl<'a> SubgroupBuilder<'a> {
    pub fn new(pc: &'a PcPresentation, normal: bool) -> Self {
        Self {
            pc,
            normal,
            slots: vec![None; pc.ngens()],
            count: 0,
        }
    }

    pub fn from_subgroup(pc: &'a PcPresentation, sub: &PcSubgroup, normal: bool) -> Self {
        let mut b = Self::new(pc, normal);
        for (g, &l) in sub.gens.iter().zip(&sub.leads) {
            b.slots[l] = Some(g.clone());
        }
        b.count = sub.gens.len();
        b
    }

    pub fn order_exponent(&self) -> usize {
        self.count
    }

    fn sift(&self, x: &NormalWord) -> NormalWord {
        let p = self.pc.prime();
        let mut x = x.clone();
        while let Some((l, e)) = x.leading() {
            match &self.slots[l] {
                Some(s) => {
                    let t = self.pc.power(s, (p - e) as i64);
                    x = self.pc.multiply(&x, &t);
                }
                None => break,
            }
        }
        x
    }

    pub fn contains(&self, x: &NormalWord) -> bool {
        self.sift(x).is_identity()
    }

    /// Sifts `x` in; returns the new lead if it enlarged the echelon.
    fn insert(&mut self, x: &NormalWord) -> Option<usize> {
        let r = self.sift(x);
        let (l, e) = r.leading()?;
        let r = if e == 1 {
            r
        } else {
            self.pc.power(&r, inv_mod(e, self.pc.prime()) as i64)
        };
        debug_assert_eq!(r.leading(), Some((l, 1)));
        self.slots[l] = Some(r);
        self.count += 1;
        Some(l)
    }

    /// Adds `x` and closes; returns how many factors of `p` the order grew by.
    pub fn add(&mut self, x: &NormalWord) -> usize {
        self.add_all(std::slice::from_ref(x))
    }

    pub fn add_all(&mut self, xs: &[NormalWord]) -> usize {
        let before = self.count;
        let mut queue: Vec<usize> = xs.iter().filter_map(|x| self.insert(x)).collect();
        while let Some(l) = queue.pop() {
            let g = self.slots[l].clone().expect("queued slot is filled");
            let mut fresh = Vec::new();
            let pw = self.pc.power(&g, self.pc.prime() as i64);
            fresh.push(pw);
            for h in self.slots.iter().flatten() {
                fresh.push(self.pc.commutator(&g, h));
            }
            if self.normal {
                for a in 0..self.pc.ngens() {
                    fresh.push(self.pc.commutator(&g, &self.pc.gen(a)));
                }
            }
            for x in fresh {
                if let Some(l) = self.insert(&x) {
                    queue.push(l);
                }
            }
        }
        self.count - before
    }

    /// Canonical echelon: each generator zero at the other generators' leads.
    pub fn finish(&self) -> PcSubgroup {
        let p = self.pc.prime();
        let leads: Vec<usize> = (0..self.slots.len()).filter(|&l| self.slots[l].is_some()).collect();
        let gens = leads
            .iter()
            .map(|&l| {
                let mut s = self.slots[l].clone().unwrap();
                for &m in leads.iter().filter(|&&m| m > l) {
                    let e = s.exponents()[m];
                    if e != 0 {
                        let t = self.pc.power(self.slots[m].as_ref().unwrap(), (p - e) as i64);
                        s = self.pc.multiply(&s, &t);
                    }
                }
                s
            })
            .collect();
        PcSubgroup { gens, leads }
    }
}

/// `<seeds>` or, with `normal`, the normal closure `<seeds>^G`.
pub fn subgroup_closure(pc: &PcPresentation, seeds: &[NormalWord], normal: bool) -> PcSubgroup {
    let mut b = SubgroupBuilder::new(pc, normal);
    b.add_all(seeds);
    b.finish()
}

/// Normal closure of all commutators of PC generators.
pub fn derived_subgroup(pc: &PcPresentation) -> PcSubgroup {
    let seeds: Vec<NormalWord> = pc.comm_relations().map(|(j, i, _)| pc.comm_word(j, i)).collect();
    subgroup_closure(pc, &seeds, true)
}

/// `gamma_k`: `gamma_1 = G`, `gamma_{k+1} = [gamma_k, G]`.
pub fn lower_central_term(pc: &PcPresentation, k: usize) -> PcSubgroup {
    let mut term = PcSubgroup::whole(pc);
    for _ in 1..k.max(1) {
        if term.is_trivial() {
            break;
        }
        let seeds: Vec<NormalWord> = term
            .gens
            .iter()
            .flat_map(|x| (0..pc.ngens()).map(move |g| (x, g)))
            .map(|(x, g)| pc.commutator(x, &pc.gen(g)))
            .collect();
        term = subgroup_closure(pc, &seeds, true);
    }
    term
}

/// Terms `gamma_1, gamma_2, ...` up to and including the first trivial one.
pub fn lower_central_series(pc: &PcPresentation) -> Vec<PcSubgroup> {
    let mut out = vec![PcSubgroup::whole(pc)];
    while !out.last().unwrap().is_trivial() {
        let k = out.len() + 1;
        out.push(lower_central_term(pc, k));
    }
    out
}

/// Nilpotency class: the largest `k` with `gamma_k` nontrivial (0 for the trivial group).
pub fn nilpotency_class(pc: &PcPresentation) -> usize {
    lower_central_series(pc).len() - 1
}

/// First generator of `sub` failing to commute with some PC generator.
fn centrality_witness(pc: &PcPresentation, sub: &PcSubgroup) -> Option<String> {
    for (s, &l) in sub.gens.iter().zip(&sub.leads) {
        for g in 0..pc.ngens() {
            let c = pc.commutator(s, &pc.gen(g));
            if !c.is_identity() {
                return Some(format!(
                    "generator with lead {}, a{}] = {}",
                    l + 1,
                    g + 1,
                    c.render()
                ));
            }
        }
    }
    None
}

/// `central_sub ∩ other`, for `central_sub` central in the whole group.
///
/// Works in the graph of `c ↦ c·other` inside `(C·O)/O × C`: pairs carry a
/// canonical left-coset representative next to the element of `C`, and the
/// echelon part whose leads fall in the `C` half is the intersection.
pub fn central_intersection(
    pc: &PcPresentation,
    central_sub: &PcSubgroup,
    other: &PcSubgroup,
) -> Result<PcSubgroup, PcError> {
    if let Some(witness) = centrality_witness(pc, central_sub) {
        return Err(PcError::NotCentral { witness });
    }
    let n = pc.ngens();
    let p = pc.prime();
    let mut pairs = PairEchelon {
        pc,
        other,
        slots: vec![None; 2 * n],
    };
    let mut queue: Vec<usize> = Vec::new();
    for c in central_sub.generators() {
        let pair = (other.sift(pc, c), c.clone());
        if let Some(l) = pairs.insert(pair) {
            queue.push(l);
        }
    }
    while let Some(l) = queue.pop() {
        let g = pairs.slots[l].clone().unwrap();
        let pw = pairs.power(&g, p as u64);
        if let Some(l) = pairs.insert(pw) {
            queue.push(l);
        }
    }
    let seeds: Vec<NormalWord> = pairs.slots[n..].iter().flatten().map(|(_, c)| c.clone()).collect();
    Ok(subgroup_closure(pc, &seeds, false))
}

type Pair = (NormalWord, NormalWord);

struct PairEchelon<'a> {
    pc: &'a PcPresentation,
    other: &'a PcSubgroup,
    slots: Vec<Option<Pair>>,
}

impl PairEchelon<'_> {
    fn lead(&self, x: &Pair) -> Option<(usize, u32)> {
        x.0.leading()
            .or_else(|| x.1.leading().map(|(l, e)| (l + self.pc.ngens(), e)))
    }

    fn mul(&self, x: &Pair, y: &Pair) -> Pair {
        let r = self.pc.multiply(&x.0, &y.0);
        (self.other.sift(self.pc, &r), self.pc.multiply(&x.1, &y.1))
    }

    fn power(&self, x: &Pair, mut k: u64) -> Pair {
        let n = self.pc.ngens();
        let mut acc = (NormalWord::identity(n), NormalWord::identity(n));
        let mut base = x.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn insert(&mut self, mut x: Pair) -> Option<usize> {
        let p = self.pc.prime();
        while let Some((l, e)) = self.lead(&x) {
            match &self.slots[l] {
                Some(s) => {
                    let t = self.power(s, (p - e) as u64);
                    x = self.mul(&x, &t);
                }
                None => {
                    let x = if e == 1 { x } else { self.power(&x, inv_mod(e, p) as u64) };
                    self.slots[l] = Some(x);
                    return Some(l);
                }
            }
        }
        None
    }
}

/// Invariants `p^e1 >= p^e2 >= ...` of an abelian subgroup, as exponents `e_i`.
pub fn abelian_invariant_exponents(pc: &PcPresentation, sub: &PcSubgroup) -> Result<Vec<u32>, PcError> {
    let gens = sub.generators();
    for (i, x) in gens.iter().enumerate() {
        for y in &gens[..i] {
            if !pc.commutator(x, y).is_identity() {
                return Err(PcError::NotAbelian);
            }
        }
    }
    let p = pc.prime() as i64;
    // d[k] = log_p |H^(p^k)|
    let mut dims = vec![sub.order_exponent()];
    let mut layer: Vec<NormalWord> = gens.to_vec();
    while *dims.last().unwrap() > 0 {
        layer = layer.iter().map(|x| pc.power(x, p)).collect();
        dims.push(subgroup_closure(pc, &layer, false).order_exponent());
    }
    // number of cyclic factors of order > p^k is dims[k] - dims[k+1]
    let mut out = Vec::new();
    for k in (0..dims.len() - 1).rev() {
        let at_least = dims[k] - dims[k + 1];
        let more = if k + 2 < dims.len() { dims[k + 1] - dims[k + 2] } else { 0 };
        for _ in 0..(at_least - more) {
            out.push(k as u32 + 1);
        }
    }
    Ok(out)
}

/// Invariants as prime powers, largest first.
pub fn abelian_invariants(pc: &PcPresentation, sub: &PcSubgroup) -> Result<Vec<u128>, PcError> {
    Ok(abelian_invariant_exponents(pc, sub)?
        .into_iter()
        .map(|e| (pc.prime() as u128).pow(e))
        .collect())
}

/// Exponent of an abelian subgroup (1 for the trivial subgroup).
pub fn subgroup_exponent(pc: &PcPresentation, sub: &PcSubgroup) -> Result<u128, PcError> {
    Ok(abelian_invariants(pc, sub)?.first().copied().unwrap_or(1))
}
