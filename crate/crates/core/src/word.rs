//! Free words, relator expressions and presentation parsing.
//!
//! Words are stored run-length encoded as `(generator, exponent)` pairs with
//! zero-based generator indices. A [`FreeWord`] is always freely reduced.

use std::fmt;

use crate::error::WordError;

/// One run of a free word: generator index and nonzero exponent.
pub type Syllable = (u32, i32);

/// A freely reduced word in a free group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    syllables: Vec<Syllable>,
}

impl FreeWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(g: u32) -> Self {
        Self {
            syllables: vec![(g, 1)],
        }
    }

    /// Builds a word from arbitrary syllables, merging and cancelling as needed.
    pub fn from_syllables<I: IntoIterator<Item = Syllable>>(items: I) -> Self {
        let mut w = Self::identity();
        for s in items {
            w.push(s);
        }
        w
    }

    /// Builds a positive word from a letter sequence.
    pub fn from_letters(letters: &[u32]) -> Self {
        Self::from_syllables(letters.iter().map(|&g| (g, 1)))
    }

    fn push(&mut self, (g, e): Syllable) {
        if e == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some((h, f)) if *h == g => {
                *f += e;
                if *f == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push((g, e)),
        }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Total number of letters, counting exponents with multiplicity.
    pub fn length(&self) -> usize {
        self.syllables.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.syllables.iter().all(|&(_, e)| e > 0)
    }

    pub fn max_generator(&self) -> Option<u32> {
        self.syllables.iter().map(|&(g, _)| g).max()
    }

    pub fn inverse(&self) -> Self {
        Self {
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut w = self.clone();
        for &s in &other.syllables {
            w.push(s);
        }
        w
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Self::identity();
        for _ in 0..k.unsigned_abs() {
            for &s in &base.syllables {
                w.push(s);
            }
        }
        w
    }

    /// Letter sequence of a positive word.
    pub fn letters(&self) -> Result<Vec<u32>, WordError> {
        let mut out = Vec::with_capacity(self.length());
        for &(g, e) in &self.syllables {
            if e < 0 {
                return Err(WordError::NegativeExponent);
            }
            out.extend(std::iter::repeat(g).take(e as usize));
        }
        Ok(out)
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.syllables.is_empty() {
            return "1".to_string();
        }
        self.syllables
            .iter()
            .map(|&(g, e)| {
                let name = &names[g as usize];
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A relator expression tree over generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RelatorExpr {
    Gen(u32),
    Product(Vec<RelatorExpr>),
    Inverse(Box<RelatorExpr>),
    Power(Box<RelatorExpr>, i64),
    /// `[x, y] = x^-1 y^-1 x y`
    Commutator(Box<RelatorExpr>, Box<RelatorExpr>),
}

impl RelatorExpr {
    pub fn gen(g: u32) -> Self {
        Self::Gen(g)
    }

    pub fn product(factors: Vec<RelatorExpr>) -> Self {
        Self::Product(factors)
    }

    pub fn inverse(x: RelatorExpr) -> Self {
        Self::Inverse(Box::new(x))
    }

    pub fn power(x: RelatorExpr, k: i64) -> Self {
        Self::Power(Box::new(x), k)
    }

    pub fn commutator(x: RelatorExpr, y: RelatorExpr) -> Self {
        Self::Commutator(Box::new(x), Box::new(y))
    }

    /// Expression for a free word, as a product of generator powers.
    pub fn from_word(w: &FreeWord) -> Self {
        let mut factors: Vec<RelatorExpr> = w
            .syllables()
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    Self::Gen(g)
                } else {
                    Self::power(Self::Gen(g), e as i64)
                }
            })
            .collect();
        match factors.len() {
            0 => Self::power(Self::Gen(0), 0),
            1 => factors.pop().unwrap(),
            _ => Self::Product(factors),
        }
    }

    pub fn max_generator(&self) -> Option<u32> {
        match self {
            Self::Gen(g) => Some(*g),
            Self::Product(xs) => xs.iter().filter_map(|x| x.max_generator()).max(),
            Self::Inverse(x) | Self::Power(x, _) => x.max_generator(),
            Self::Commutator(x, y) => x.max_generator().max(y.max_generator()),
        }
    }

    /// Flattens the tree to a freely reduced word.
    pub fn flatten(&self) -> FreeWord {
        match self {
            Self::Gen(g) => FreeWord::generator(*g),
            Self::Product(xs) => xs
                .iter()
                .fold(FreeWord::identity(), |acc, x| acc.mul(&x.flatten())),
            Self::Inverse(x) => x.flatten().inverse(),
            Self::Power(x, k) => x.flatten().pow(*k),
            Self::Commutator(x, y) => {
                let (x, y) = (x.flatten(), y.flatten());
                x.inverse().mul(&y.inverse()).mul(&x).mul(&y)
            }
        }
    }

    /// Evaluates the expression in a group, given images of the generators.
    pub fn evaluate<G: GroupOps>(&self, group: &G, images: &[G::Elem]) -> G::Elem {
        match self {
            Self::Gen(g) => images[*g as usize].clone(),
            Self::Product(xs) => {
                let mut acc = group.identity();
                for x in xs {
                    acc = group.mul(&acc, &x.evaluate(group, images));
                }
                acc
            }
            Self::Inverse(x) => group.inv(&x.evaluate(group, images)),
            Self::Power(x, k) => group.pow(&x.evaluate(group, images), *k),
            Self::Commutator(x, y) => {
                let x = x.evaluate(group, images);
                let y = y.evaluate(group, images);
                group.comm(&x, &y)
            }
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        match self {
            Self::Gen(g) => names[*g as usize].clone(),
            Self::Product(xs) => xs
                .iter()
                .map(|x| match x {
                    Self::Product(_) => format!("({})", x.render(names)),
                    _ => x.render(names),
                })
                .collect::<Vec<_>>()
                .join("*"),
            Self::Inverse(x) => format!("{}^-1", x.render_atom(names)),
            Self::Power(x, k) => format!("{}^{}", x.render_atom(names), k),
            Self::Commutator(x, y) => format!("[{},{}]", x.render(names), y.render(names)),
        }
    }

    fn render_atom(&self, names: &[String]) -> String {
        match self {
            Self::Gen(_) | Self::Commutator(..) => self.render(names),
            _ => format!("({})", self.render(names)),
        }
    }
}

/// The group operations needed to evaluate relator expressions.
pub trait GroupOps {
    type Elem: Clone;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Self::Elem;

    fn pow(&self, x: &Self::Elem, k: i64) -> Self::Elem {
        let mut base = if k < 0 { self.inv(x) } else { x.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = self.identity();
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

    fn comm(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(&self.inv(&yx), &xy)
    }
}

/// A finite presentation: named generators and relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<RelatorExpr>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<RelatorExpr>) -> Result<Self, WordError> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(WordError::DuplicateGenerator(g.clone()));
            }
        }
        let n = generators.len() as u32;
        if let Some(r) = relators.iter().find(|r| r.max_generator().is_some_and(|g| g >= n)) {
            return Err(WordError::GeneratorOutOfRange(r.max_generator().unwrap(), n));
        }
        Ok(Self {
            generators,
            relators,
        })
    }

    /// Free group on the given generator names.
    pub fn free(names: &[&str]) -> Self {
        Self::new(names.iter().map(|s| s.to_string()).collect(), vec![])
            .expect("distinct names")
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[RelatorExpr] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<u32> {
        self.generators.iter().position(|g| g == name).map(|i| i as u32)
    }

    pub fn with_relators(&self, relators: Vec<RelatorExpr>) -> Result<Self, WordError> {
        Self::new(self.generators.clone(), relators)
    }

    /// Parses one expression against this presentation's generators.
    pub fn parse_expr(&self, text: &str) -> Result<RelatorExpr, WordError> {
        let mut p = Parser::new(text, &self.generators);
        let e = p.product()?;
        p.expect_end()?;
        Ok(e)
    }

    pub fn render(&self) -> String {
        let mut out = format!("gens {};\n", self.generators.join(","));
        for r in &self.relators {
            out.push_str(&format!("rel {};\n", r.render(&self.generators)));
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Parses presentation source text: `gens a,b; rel [b,a]; ...`.
pub fn parse_presentation(text: &str) -> Result<Presentation, WordError> {
    let mut p = Parser::new(text, &[]);
    p.keyword("gens")?;
    let mut names = vec![p.ident()?.1];
    while p.eat(',') {
        names.push(p.ident()?.1);
    }
    p.expect(';')?;
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(WordError::DuplicateGenerator(n.clone()));
        }
    }
    p.names = names.clone();
    let mut relators = Vec::new();
    while !p.at_end() {
        p.keyword("rel")?;
        relators.push(p.product()?);
        p.expect(';')?;
    }
    Presentation::new(names, relators)
}

/// Parses a word list: one expression per line, blank lines and `#` comments skipped.
pub fn parse_word_list(text: &str, names: &[String]) -> Result<Vec<FreeWord>, WordError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut p = Parser::new(body, names);
        let e = p.product().map_err(|e| e.at_line(lineno + 1))?;
        p.expect_end().map_err(|e| e.at_line(lineno + 1))?;
        out.push(e.flatten());
    }
    Ok(out)
}

pub fn render_word_list(words: &[FreeWord], names: &[String]) -> String {
    let mut out = String::new();
    for w in words {
        out.push_str(&w.render(names));
        out.push('\n');
    }
    out
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    names: Vec<String>,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, names: &[String]) -> Self {
        Self {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
            names: names.to_vec(),
            _src: src,
        }
    }

    fn error(&self, msg: impl Into<String>) -> WordError {
        WordError::Syntax {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while let Some(&c) = self.chars.get(self.pos) {
            if c == '#' {
                while let Some(&c) = self.chars.get(self.pos) {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), WordError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |f| format!("'{f}'"));
            Err(self.error(format!("expected '{c}', found {found}")))
        }
    }

    fn expect_end(&mut self) -> Result<(), WordError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
        }
    }

    fn ident(&mut self) -> Result<((usize, usize), String), WordError> {
        self.skip_ws();
        let at = (self.line, self.col);
        let mut s = String::new();
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_alphanumeric() || c == '_' {
                if s.is_empty() && c.is_ascii_digit() {
                    break;
                }
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if s.is_empty() {
            return Err(self.error("expected identifier"));
        }
        Ok((at, s))
    }

    fn keyword(&mut self, kw: &str) -> Result<(), WordError> {
        let (at, s) = self.ident()?;
        if s == kw {
            Ok(())
        } else {
            Err(WordError::Syntax {
                line: at.0,
                col: at.1,
                msg: format!("expected '{kw}', found '{s}'"),
            })
        }
    }

    fn integer(&mut self) -> Result<i64, WordError> {
        self.skip_ws();
        let mut s = String::new();
        if self.chars.get(self.pos) == Some(&'-') {
            s.push('-');
            self.bump();
        }
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_ascii_digit() {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        s.parse().map_err(|_| self.error("expected integer exponent"))
    }

    fn product(&mut self) -> Result<RelatorExpr, WordError> {
        let mut factors = vec![self.power()?];
        while self.eat('*') {
            factors.push(self.power()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            RelatorExpr::Product(factors)
        })
    }

    fn power(&mut self) -> Result<RelatorExpr, WordError> {
        let mut base = self.atom()?;
        while self.eat('^') {
            let k = self.integer()?;
            base = RelatorExpr::power(base, k);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RelatorExpr, WordError> {
        match self.peek() {
            Some('[') => {
                self.bump();
                let x = self.product()?;
                self.expect(',')?;
                let y = self.product()?;
                self.expect(']')?;
                Ok(RelatorExpr::commutator(x, y))
            }
            Some('(') => {
                self.bump();
                let x = self.product()?;
                self.expect(')')?;
                Ok(x)
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let ((line, col), name) = self.ident()?;
                match self.names.iter().position(|n| *n == name) {
                    Some(i) => Ok(RelatorExpr::Gen(i as u32)),
                    None => Err(WordError::UndeclaredGenerator { name, line, col }),
                }
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// True iff no cyclic rotation of the (positive) word is lexicographically smaller.
pub fn cyclically_minimal(word: &FreeWord) -> Result<bool, WordError> {
    Ok(is_least_rotation(&word.letters()?))
}

fn is_least_rotation(s: &[u32]) -> bool {
    let n = s.len();
    (1..n).all(|r| {
        for i in 0..n {
            let (a, b) = (s[(r + i) % n], s[i]);
            if a != b {
                return a > b;
            }
        }
        true
    })
}

fn is_proper_power(s: &[u32]) -> bool {
    let n = s.len();
    (1..n).any(|d| n % d == 0 && (d..n).all(|i| s[i] == s[i - d]))
}

/// Pruning rules applied by [`enumerate_words_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordFilter {
    /// Drop words of the form `v^m` with `m > 1`; their powers follow from those of `v`.
    pub skip_proper_powers: bool,
}

impl WordFilter {
    /// Cyclic minimality plus the forbidden-subword rule, nothing else.
    pub fn stated_rules() -> Self {
        Self {
            skip_proper_powers: false,
        }
    }
}

impl Default for WordFilter {
    fn default() -> Self {
        Self {
            skip_proper_powers: true,
        }
    }
}

/// Positive words of length at most `max_len` over `alphabet` letters, keeping
/// only cyclically minimal words without a linear subword `x^forbidden_power`
/// and without proper-power words. Output is length-then-lexicographic.
pub fn enumerate_words(alphabet: u32, max_len: usize, forbidden_power: u32) -> Vec<FreeWord> {
    enumerate_words_with(alphabet, max_len, forbidden_power, WordFilter::default())
}

pub fn enumerate_words_with(
    alphabet: u32,
    max_len: usize,
    forbidden_power: u32,
    filter: WordFilter,
) -> Vec<FreeWord> {
    let mut out = Vec::new();
    if alphabet == 0 {
        return out;
    }
    let mut buf = Vec::with_capacity(max_len);
    for len in 1..=max_len {
        extend_words(
            &mut buf,
            len,
            alphabet,
            forbidden_power as usize,
            filter,
            &mut out,
        );
    }
    out
}

fn extend_words(
    buf: &mut Vec<u32>,
    len: usize,
    alphabet: u32,
    forbidden: usize,
    filter: WordFilter,
    out: &mut Vec<FreeWord>,
) {
    if buf.len() == len {
        if is_least_rotation(buf) && !(filter.skip_proper_powers && is_proper_power(buf)) {
            out.push(FreeWord::from_letters(buf));
        }
        return;
    }
    for x in 0..alphabet {
        // a rotation starting at the first letter is the word itself, so every
        // later letter must be at least the first one
        if !buf.is_empty() && x < buf[0] {
            continue;
        }
        let run = buf.iter().rev().take_while(|&&y| y == x).count();
        if run + 1 >= forbidden {
            continue;
        }
        buf.push(x);
        extend_words(buf, len, alphabet, forbidden, filter, out);
        buf.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_commutator_relator() {
        let p = parse_presentation("gens a,b; rel [b,a];").unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.relators(), &[RelatorExpr::commutator(RelatorExpr::Gen(1), RelatorExpr::Gen(0))]);
    }

    #[test]
    fn parses_product_of_commutators() {
        let p = parse_presentation("gens a,b,c,d; rel [b,a]*[c,d];").unwrap();
        assert_eq!(p.rank(), 4);
        let g = RelatorExpr::Gen;
        assert_eq!(
            p.relators()[0],
            RelatorExpr::product(vec![
                RelatorExpr::commutator(g(1), g(0)),
                RelatorExpr::commutator(g(2), g(3)),
            ])
        );
    }

    #[test]
    fn dangling_operator_is_a_syntax_error() {
        match parse_presentation("gens a; rel a*;") {
            Err(WordError::Syntax { line, col, .. }) => assert_eq!((line, col), (1, 15)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn undeclared_generator() {
        match parse_presentation("gens a,b;\nrel a*c;") {
            Err(WordError::UndeclaredGenerator { name, line, col }) => {
                assert_eq!(name, "c");
                assert_eq!((line, col), (2, 7));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn comments_and_powers() {
        let p = parse_presentation("# header\ngens x, y; # two\nrel x^5; rel (x*y)^-2;\n").unwrap();
        assert_eq!(p.relators().len(), 2);
        assert_eq!(p.relators()[1].flatten().syllables(), &[(1, -1), (0, -1), (1, -1), (0, -1)]);
    }

    #[test]
    fn flatten_examples() {
        let (a, b) = (RelatorExpr::Gen(0), RelatorExpr::Gen(1));
        assert_eq!(
            RelatorExpr::commutator(b.clone(), a.clone()).flatten().syllables(),
            &[(1, -1), (0, -1), (1, 1), (0, 1)]
        );
        let ab = RelatorExpr::product(vec![a.clone(), b.clone()]);
        assert!(RelatorExpr::power(ab, 0).flatten().is_identity());
        let aai = RelatorExpr::product(vec![a.clone(), RelatorExpr::inverse(a)]);
        assert!(aai.flatten().is_identity());
    }

    #[test]
    fn cyclic_minimality_examples() {
        assert!(cyclically_minimal(&FreeWord::from_letters(&[0, 1])).unwrap());
        assert!(!cyclically_minimal(&FreeWord::from_letters(&[1, 0])).unwrap());
        assert!(cyclically_minimal(&FreeWord::from_letters(&[0, 1, 0, 1])).unwrap());
        assert_eq!(
            cyclically_minimal(&FreeWord::from_syllables([(0, 1), (1, -1)])),
            Err(WordError::NegativeExponent)
        );
    }

    #[test]
    fn small_enumerations_with_stated_rules() {
        let r = WordFilter::stated_rules();
        let one = enumerate_words_with(1, 3, 5, r);
        assert_eq!(one.len(), 3);
        assert_eq!(one[2], FreeWord::from_syllables([(0, 3)]));
        let two = enumerate_words_with(2, 2, 5, r);
        let n = names(&["a", "b"]);
        let rendered: Vec<_> = two.iter().map(|w| w.render(&n)).collect();
        assert_eq!(rendered, ["a", "b", "a^2", "a*b", "b^2"]);
    }

    #[test]
    fn proper_powers_are_dropped_by_default() {
        let n = names(&["a", "b"]);
        let two: Vec<_> = enumerate_words(2, 4, 5).iter().map(|w| w.render(&n)).collect();
        assert!(!two.contains(&"a^2".to_string()));
        assert!(!two.contains(&"a*b*a*b".to_string()));
        assert!(two.contains(&"a^3*b".to_string()));
    }

    #[test]
    fn forbidden_subword() {
        let w = enumerate_words_with(2, 6, 5, WordFilter::stated_rules());
        assert!(w.contains(&FreeWord::from_syllables([(0, 4), (1, 1)])));
        assert!(!w.contains(&FreeWord::from_syllables([(0, 5), (1, 1)])));
        assert!(!w.contains(&FreeWord::from_syllables([(0, 1), (1, 5)])));
        assert!(!w.contains(&FreeWord::from_syllables([(0, 1), (1, 4), (0, 1)])));
        assert!(w.contains(&FreeWord::from_syllables([(0, 2), (1, 4)])));
    }

    #[test]
    fn word_list_round_trip() {
        let n = names(&["a", "b"]);
        let words = enumerate_words(2, 5, 5);
        let text = render_word_list(&words, &n);
        assert_eq!(parse_word_list(&text, &n).unwrap(), words);
    }
}
