//! Power-commutator presentations of finite p-groups and collection.
//!
//! Generators `a_0 .. a_{n-1}` all have relative order `p`. Relations are
//! `a_i^p = w_i` and `[a_j, a_i] = w_ji` for `j > i`, with `w_i` supported on
//! generators after `i` and `w_ji` supported on generators after `j`.
//! Commutators follow `[x, y] = x^-1 y^-1 x y` everywhere.

use std::fmt;

use crate::error::PcError;
use crate::word::GroupOps;

/// A generator with an exponent in `1..p`.
pub type Letter = (u32, u32);

/// Where a PC generator came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Definition {
    /// Image of a defining generator of the source presentation.
    Image(u32),
    /// Tail of the power relation of a generator.
    Power(u32),
    /// Tail of the commutator relation `[a_j, a_i]`.
    Commutator(u32, u32),
}

impl fmt::Display for Definition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Image(g) => write!(f, "image {}", g + 1),
            Self::Power(i) => write!(f, "pow {}", i + 1),
            Self::Commutator(j, i) => write!(f, "comm {} {}", j + 1, i + 1),
        }
    }
}

/// Dense exponent vector of an element in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalWord(Vec<u32>);

impl NormalWord {
    pub fn identity(ngens: usize) -> Self {
        Self(vec![0; ngens])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    pub fn from_letters(ngens: usize, letters: &[Letter]) -> Self {
        let mut v = vec![0; ngens];
        for &(g, e) in letters {
            v[g as usize] = e;
        }
        Self(v)
    }

    /// The generator `a_g` as a normal word.
    pub fn generator(ngens: usize, g: usize) -> Self {
        let mut v = vec![0; ngens];
        v[g] = 1;
        Self(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut Vec<u32> {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// First nonzero position and its exponent.
    pub fn leading(&self) -> Option<(usize, u32)> {
        self.0.iter().enumerate().find(|(_, &e)| e != 0).map(|(i, &e)| (i, e))
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i as u32, e))
            .collect()
    }

    /// Pads with zeros (new trailing generators) or truncates.
    pub fn resized(&self, ngens: usize) -> Self {
        let mut v = self.0.clone();
        v.resize(ngens, 0);
        Self(v)
    }

    /// `gen^exp` pairs, 1-based, space separated; `1` for the identity.
    pub fn render(&self) -> String {
        render_letters(&self.letters())
    }
}

pub(crate) fn render_letters(letters: &[Letter]) -> String {
    if letters.is_empty() {
        return String::new();
    }
    letters
        .iter()
        .map(|&(g, e)| format!("{}^{}", g + 1, e))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Modular inverse for a prime modulus.
pub fn inv_mod(x: u32, p: u32) -> u32 {
    debug_assert!(x % p != 0);
    let mut acc = 1u64;
    let mut base = (x % p) as u64;
    let mut k = p - 2;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        k >>= 1;
    }
    acc as u32
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d: &u32| (*d as u64) * (*d as u64) <= p as u64).all(|d| p % d != 0)
}

/// A power-commutator presentation with a weight filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    prime: u32,
    weights: Vec<u32>,
    power: Vec<Vec<Letter>>,
    /// `comm[j]` holds the nontrivial `(i, [a_j, a_i])` for `i < j`, sorted by `i`.
    comm: Vec<Vec<(u32, Vec<Letter>)>>,
    definitions: Vec<Option<Definition>>,
    central: Vec<bool>,
}

/// Mutable staging area for a [`PcPresentation`].
#[derive(Clone, Debug)]
pub struct PcBuilder {
    prime: u32,
    weights: Vec<u32>,
    power: Vec<Vec<Letter>>,
    comm: Vec<Vec<(u32, Vec<Letter>)>>,
    definitions: Vec<Option<Definition>>,
}

impl PcBuilder {
    pub fn new(prime: u32) -> Self {
        Self {
            prime,
            weights: Vec::new(),
            power: Vec::new(),
            comm: Vec::new(),
            definitions: Vec::new(),
        }
    }

    pub fn from_presentation(pc: &PcPresentation) -> Self {
        Self {
            prime: pc.prime,
            weights: pc.weights.clone(),
            power: pc.power.clone(),
            comm: pc.comm.clone(),
            definitions: pc.definitions.clone(),
        }
    }

    pub fn ngens(&self) -> usize {
        self.weights.len()
    }

    /// Appends a generator with trivial relations; returns its index.
    pub fn add_generator(&mut self, weight: u32, definition: Option<Definition>) -> u32 {
        self.weights.push(weight);
        self.power.push(Vec::new());
        self.comm.push(Vec::new());
        self.definitions.push(definition);
        (self.weights.len() - 1) as u32
    }

    fn check_word(&self, after: u32, word: &[Letter]) -> Result<(), PcError> {
        let n = self.ngens();
        let mut last = after;
        for &(g, e) in word {
            if g as usize >= n {
                return Err(PcError::GeneratorOutOfRange { index: g, ngens: n });
            }
            if g <= last || e == 0 || e >= self.prime {
                return Err(PcError::Malformed(format!(
                    "right-hand side {} is not a normal word supported after generator {}",
                    render_letters(word),
                    after + 1
                )));
            }
            last = g;
        }
        Ok(())
    }

    pub fn set_power(&mut self, i: u32, rhs: Vec<Letter>) -> Result<(), PcError> {
        self.check_index(i)?;
        self.check_word(i, &rhs)?;
        self.power[i as usize] = rhs;
        Ok(())
    }

    pub fn set_comm(&mut self, j: u32, i: u32, rhs: Vec<Letter>) -> Result<(), PcError> {
        self.check_index(j)?;
        if i >= j {
            return Err(PcError::Malformed(format!("commutator ({}, {}) needs j > i", j + 1, i + 1)));
        }
        self.check_word(j, &rhs)?;
        let row = &mut self.comm[j as usize];
        match row.binary_search_by_key(&i, |(k, _)| *k) {
            Ok(pos) if rhs.is_empty() => {
                row.remove(pos);
            }
            Ok(pos) => row[pos].1 = rhs,
            Err(_) if rhs.is_empty() => {}
            Err(pos) => row.insert(pos, (i, rhs)),
        }
        Ok(())
    }

    pub fn set_definition(&mut self, g: u32, def: Option<Definition>) -> Result<(), PcError> {
        self.check_index(g)?;
        self.definitions[g as usize] = def;
        Ok(())
    }

    fn check_index(&self, g: u32) -> Result<(), PcError> {
        if (g as usize) < self.ngens() {
            Ok(())
        } else {
            Err(PcError::GeneratorOutOfRange {
                index: g,
                ngens: self.ngens(),
            })
        }
    }

    pub fn build(self) -> Result<PcPresentation, PcError> {
        if !is_prime(self.prime) {
            return Err(PcError::Malformed(format!("{} is not prime", self.prime)));
        }
        if self.weights.windows(2).any(|w| w[0] > w[1]) || self.weights.iter().any(|&w| w == 0) {
            return Err(PcError::Malformed("weights must be positive and nondecreasing".into()));
        }
        let n = self.weights.len();
        let mut central: Vec<bool> = (0..n).map(|j| self.comm[j].is_empty()).collect();
        for row in &self.comm {
            for (i, _) in row {
                central[*i as usize] = false;
            }
        }
        Ok(PcPresentation {
            prime: self.prime,
            weights: self.weights,
            power: self.power,
            comm: self.comm,
            definitions: self.definitions,
            central,
        })
    }
}

enum Frame<'a> {
    Word { letters: &'a [Letter], pos: usize },
    /// `a_g^e`
    Gen { g: u32, e: u32 },
    /// `(a_h [a_h, a_g])^reps`, the conjugate `a_h^{a_g}` repeated.
    Conj { h: u32, rhs: &'a [Letter], pos: usize, reps: u32 },
}

impl PcPresentation {
    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn ngens(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, g: usize) -> u32 {
        self.weights[g]
    }

    /// Largest weight (0 for the trivial group).
    pub fn class(&self) -> u32 {
        self.weights.last().copied().unwrap_or(0)
    }

    pub fn power_rhs(&self, i: usize) -> &[Letter] {
        &self.power[i]
    }

    pub fn comm_rhs(&self, j: usize, i: usize) -> &[Letter] {
        let row = &self.comm[j];
        match row.binary_search_by_key(&(i as u32), |(k, _)| *k) {
            Ok(pos) => &row[pos].1,
            Err(_) => &[],
        }
    }

    /// Nontrivial commutator relations `(j, i, rhs)` in `(j, i)` order.
    pub fn comm_relations(&self) -> impl Iterator<Item = (usize, usize, &[Letter])> {
        self.comm
            .iter()
            .enumerate()
            .flat_map(|(j, row)| row.iter().map(move |(i, w)| (j, *i as usize, w.as_slice())))
    }

    pub fn definition(&self, g: usize) -> Option<Definition> {
        self.definitions[g]
    }

    pub fn definitions(&self) -> &[Option<Definition>] {
        &self.definitions
    }

    pub fn is_central(&self, g: usize) -> bool {
        self.central[g]
    }

    /// Number of generators of weight 1.
    pub fn rank(&self) -> usize {
        self.weights.iter().take_while(|&&w| w == 1).count()
    }

    pub fn identity(&self) -> NormalWord {
        NormalWord::identity(self.ngens())
    }

    pub fn gen(&self, g: usize) -> NormalWord {
        NormalWord::generator(self.ngens(), g)
    }

    pub fn power_word(&self, i: usize) -> NormalWord {
        NormalWord::from_letters(self.ngens(), &self.power[i])
    }

    pub fn comm_word(&self, j: usize, i: usize) -> NormalWord {
        NormalWord::from_letters(self.ngens(), self.comm_rhs(j, i))
    }

    /// Collects an arbitrary word `a_{g1}^{e1} a_{g2}^{e2} ...` to normal form.
    pub fn collect(&self, word: &[(u32, i64)]) -> Result<NormalWord, PcError> {
        let n = self.ngens();
        let p = self.prime as i64;
        let mut exps = self.identity();
        for &(g, e) in word {
            if g as usize >= n {
                return Err(PcError::GeneratorOutOfRange { index: g, ngens: n });
            }
            if e >= 0 {
                let mut left = e;
                while left > 0 {
                    let chunk = left.min(p - 1);
                    self.collect_into(&mut exps.0, &[(g, chunk as u32)]);
                    left -= chunk;
                }
            } else {
                let inv = self.inverse(&self.gen(g as usize));
                let letters = inv.letters();
                for _ in 0..e.unsigned_abs() {
                    self.collect_into(&mut exps.0, &letters);
                }
            }
        }
        Ok(exps)
    }

    /// Multiplies `exps` on the right by a word of letters, collecting from the left.
    pub(crate) fn collect_into(&self, exps: &mut [u32], word: &[Letter]) {
        let mut stack: Vec<Frame<'_>> = vec![Frame::Word {
            letters: word,
            pos: 0,
        }];
        self.run(exps, &mut stack);
    }

    fn run<'a>(&'a self, exps: &mut [u32], stack: &mut Vec<Frame<'a>>) {
        while let Some(top) = stack.last_mut() {
            let (g, e) = match top {
                Frame::Word { letters, pos } => {
                    if *pos == letters.len() {
                        stack.pop();
                        continue;
                    }
                    *pos += 1;
                    letters[*pos - 1]
                }
                Frame::Gen { g, e } => {
                    let l = (*g, *e);
                    stack.pop();
                    l
                }
                Frame::Conj { h, rhs, pos, reps } => {
                    if *pos > rhs.len() {
                        *reps -= 1;
                        if *reps == 0 {
                            stack.pop();
                            continue;
                        }
                        *pos = 0;
                    }
                    *pos += 1;
                    if *pos == 1 {
                        (*h, 1)
                    } else {
                        rhs[*pos - 2]
                    }
                }
            };
            self.mul_letter(exps, g, e, stack);
        }
    }

    fn mul_letter<'a>(&'a self, exps: &mut [u32], g: u32, e: u32, stack: &mut Vec<Frame<'a>>) {
        let p = self.prime;
        let gi = g as usize;
        let n = exps.len();
        let blocking = (gi + 1..n).rev().find(|&h| exps[h] != 0 && !self.central[h]);
        let Some(last) = blocking else {
            let s = exps[gi] + e;
            if s >= p {
                exps[gi] = s - p;
                if !self.power[gi].is_empty() {
                    stack.push(Frame::Word {
                        letters: &self.power[gi],
                        pos: 0,
                    });
                }
            } else {
                exps[gi] = s;
            }
            return;
        };
        if e > 1 {
            stack.push(Frame::Gen { g, e: e - 1 });
        }
        let row = &self.comm;
        for h in (gi + 1..=last).rev() {
            let reps = exps[h];
            if reps == 0 || self.central[h] {
                continue;
            }
            exps[h] = 0;
            let rhs = match row[h].binary_search_by_key(&g, |(k, _)| *k) {
                Ok(pos) => row[h][pos].1.as_slice(),
                Err(_) => &[],
            };
            if rhs.is_empty() {
                stack.push(Frame::Gen { g: h as u32, e: reps });
            } else {
                stack.push(Frame::Conj {
                    h: h as u32,
                    rhs,
                    pos: 0,
                    reps,
                });
            }
        }
        let s = exps[gi] + 1;
        if s == p {
            exps[gi] = 0;
            if !self.power[gi].is_empty() {
                stack.push(Frame::Word {
                    letters: &self.power[gi],
                    pos: 0,
                });
            }
        } else {
            exps[gi] = s;
        }
    }

    pub fn multiply(&self, u: &NormalWord, v: &NormalWord) -> NormalWord {
        let mut exps = u.clone();
        self.collect_into(&mut exps.0, &v.letters());
        exps
    }

    /// `u * a_g^e` for `e` in `1..p`.
    pub fn multiply_gen(&self, u: &NormalWord, g: usize, e: u32) -> NormalWord {
        let mut exps = u.clone();
        self.collect_into(&mut exps.0, &[(g as u32, e)]);
        exps
    }

    pub fn inverse(&self, u: &NormalWord) -> NormalWord {
        let p = self.prime;
        let mut w = u.clone();
        let mut inv = self.identity();
        for i in 0..self.ngens() {
            let e = w.0[i];
            if e != 0 {
                self.collect_into(&mut w.0, &[(i as u32, p - e)]);
                inv.0[i] = p - e;
            }
        }
        debug_assert!(w.is_identity());
        inv
    }

    pub fn power(&self, u: &NormalWord, k: i64) -> NormalWord {
        GroupOps::pow(self, u, k)
    }

    /// `[u, v] = u^-1 v^-1 u v`
    pub fn commutator(&self, u: &NormalWord, v: &NormalWord) -> NormalWord {
        let uv = self.multiply(u, v);
        let vu = self.multiply(v, u);
        self.left_quotient(&vu, &uv)
    }

    /// `x^-1 y`
    pub fn left_quotient(&self, x: &NormalWord, y: &NormalWord) -> NormalWord {
        let xi = self.inverse(x);
        self.multiply(&xi, y)
    }

    pub fn conjugate(&self, u: &NormalWord, by: &NormalWord) -> NormalWord {
        let t = self.multiply(u, by);
        self.left_quotient(by, &t)
    }

    /// `k` such that `u` has order `p^k`.
    pub fn order_exponent(&self, u: &NormalWord) -> u32 {
        let mut x = u.clone();
        let mut k = 0;
        while !x.is_identity() {
            x = self.power(&x, self.prime as i64);
            k += 1;
        }
        k
    }

    /// Order of `u` as an integer (saturates at `u128::MAX`).
    pub fn order_of(&self, u: &NormalWord) -> u128 {
        (self.prime as u128)
            .checked_pow(self.order_exponent(u))
            .unwrap_or(u128::MAX)
    }

    /// Overlaps to test, optionally restricted to total weight at most `bound`.
    pub fn overlaps(&self, bound: Option<u32>) -> Vec<Overlap> {
        let n = self.ngens();
        let w = &self.weights;
        let ok = |s: u32| bound.map_or(true, |b| s <= b);
        let mut out = Vec::new();
        for i in 0..n {
            if ok(2 * w[i] + 1) {
                out.push(Overlap::PowerPower(i));
            }
        }
        for j in 0..n {
            for i in 0..j {
                if ok(w[j] + w[i] + 1) {
                    out.push(Overlap::PowerLeft(j, i));
                    out.push(Overlap::PowerRight(j, i));
                }
            }
        }
        for k in 0..n {
            for j in 0..k {
                if !ok(w[k] + w[j] + 1) {
                    continue;
                }
                for i in 0..j {
                    if ok(w[k] + w[j] + w[i]) {
                        out.push(Overlap::Triple(k, j, i));
                    }
                }
            }
        }
        out
    }

    /// Both collected sides of an overlap.
    pub fn evaluate_overlap(&self, o: Overlap) -> (NormalWord, NormalWord) {
        let p = self.prime;
        let l = |g: usize, e: u32| [(g as u32, e)];
        match o {
            Overlap::Triple(k, j, i) => {
                let mut left = self.gen(k);
                self.collect_into(&mut left.0, &l(j, 1));
                self.collect_into(&mut left.0, &l(i, 1));
                let ji = self.multiply_gen(&self.gen(j), i, 1);
                let mut right = self.gen(k);
                self.collect_into(&mut right.0, &ji.letters());
                (left, right)
            }
            Overlap::PowerLeft(j, i) => {
                let mut left = self.power_word(j);
                self.collect_into(&mut left.0, &l(i, 1));
                let ji = self.multiply_gen(&self.gen(j), i, 1);
                let mut right = self.identity();
                right.0[j] = p - 1;
                self.collect_into(&mut right.0, &ji.letters());
                (left, right)
            }
            Overlap::PowerRight(j, i) => {
                let mut left = self.gen(j);
                self.collect_into(&mut left.0, &self.power[i]);
                let mut right = self.gen(j);
                self.collect_into(&mut right.0, &l(i, p - 1));
                self.collect_into(&mut right.0, &l(i, 1));
                (left, right)
            }
            Overlap::PowerPower(i) => {
                let mut left = self.gen(i);
                self.collect_into(&mut left.0, &self.power[i]);
                let mut right = self.power_word(i);
                self.collect_into(&mut right.0, &l(i, 1));
                (left, right)
            }
        }
    }

    /// Consistency test restricted to overlaps of weight at most the class.
    /// The restriction is only sound when relations respect the weights, so
    /// other presentations get the full test.
    pub fn check_consistency(&self) -> ConsistencyReport {
        let bound = self.respects_weights().then(|| self.class());
        self.check_overlaps(bound)
    }

    /// Whether `a_i^p` has weight above `a_i` and `[a_j, a_i]` weight at
    /// least `w_j + w_i`.
    pub fn respects_weights(&self) -> bool {
        let w = &self.weights;
        let min_weight = |rhs: &[Letter]| rhs.iter().map(|&(g, _)| w[g as usize]).min();
        (0..self.ngens()).all(|i| min_weight(&self.power[i]).map_or(true, |m| m > w[i]))
            && self
                .comm_relations()
                .all(|(j, i, rhs)| min_weight(rhs).map_or(true, |m| m >= w[j] + w[i]))
    }

    /// Consistency test over every overlap, ignoring weights.
    pub fn check_consistency_full(&self) -> ConsistencyReport {
        self.check_overlaps(None)
    }

    fn check_overlaps(&self, bound: Option<u32>) -> ConsistencyReport {
        let overlaps = self.overlaps(bound);
        let checked = overlaps.len();
        let violations = overlaps
            .into_iter()
            .filter_map(|o| {
                let (left, right) = self.evaluate_overlap(o);
                (left != right).then_some(Violation {
                    overlap: o,
                    left,
                    right,
                })
            })
            .collect();
        ConsistencyReport {
            checked,
            violations,
        }
    }

    /// Truncates to the first `n` generators, dropping everything supported later.
    pub fn truncate(&self, n: usize) -> Result<PcPresentation, PcError> {
        let mut b = PcBuilder::new(self.prime);
        for g in 0..n {
            b.add_generator(self.weights[g], self.definitions[g]);
        }
        let keep = |w: &[Letter]| -> Vec<Letter> {
            w.iter().copied().filter(|&(g, _)| (g as usize) < n).collect()
        };
        for i in 0..n {
            b.set_power(i as u32, keep(&self.power[i]))?;
        }
        for (j, i, w) in self.comm_relations() {
            if j < n {
                b.set_comm(j as u32, i as u32, keep(w))?;
            }
        }
        b.build()
    }
}

impl GroupOps for PcPresentation {
    type Elem = NormalWord;

    fn identity(&self) -> NormalWord {
        PcPresentation::identity(self)
    }

    fn mul(&self, x: &NormalWord, y: &NormalWord) -> NormalWord {
        self.multiply(x, y)
    }

    fn inv(&self, x: &NormalWord) -> NormalWord {
        self.inverse(x)
    }

    fn comm(&self, x: &NormalWord, y: &NormalWord) -> NormalWord {
        self.commutator(x, y)
    }
}

/// An overlap whose two collections must agree in a consistent presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Overlap {
    /// `(a_k a_j) a_i = a_k (a_j a_i)` for `k > j > i`.
    Triple(usize, usize, usize),
    /// `(a_j^p) a_i = a_j^{p-1} (a_j a_i)` for `j > i`.
    PowerLeft(usize, usize),
    /// `a_j (a_i^p) = (a_j a_i^{p-1}) a_i` for `j > i`.
    PowerRight(usize, usize),
    /// `a_i (a_i^p) = (a_i^p) a_i`.
    PowerPower(usize),
}

impl fmt::Display for Overlap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Triple(k, j, i) => write!(f, "(a{} a{}) a{}", k + 1, j + 1, i + 1),
            Self::PowerLeft(j, i) => write!(f, "a{}^p a{}", j + 1, i + 1),
            Self::PowerRight(j, i) => write!(f, "a{} a{}^p", j + 1, i + 1),
            Self::PowerPower(i) => write!(f, "a{} a{}^p", i + 1, i + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub overlap: Overlap,
    pub left: NormalWord,
    pub right: NormalWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }
}
