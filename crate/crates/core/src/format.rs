//! Text serialization of presentations and quotient state.
//!
//! ```text
//! pcp v1 p=3 n=3 class=2
//! w 1 1
//! w 2 1
//! w 3 2
//! comm 2 1 = 3^1
//! def 1 image 1
//! def 2 image 2
//! def 3 comm 2 1
//! ```
//!
//! Generators are numbered from 1. Trivial relations are omitted. A quotient
//! state appends a `qs` section after the presentation.

use sha2::{Digest, Sha256};

use crate::error::{PcError, QuotientError};
use crate::pc::{Definition, Letter, NormalWord, PcBuilder, PcPresentation};
use crate::pquotient::{Extension, QuotientSystem, Stage};
use crate::word::Presentation;

pub fn render_pcp(pc: &PcPresentation) -> String {
    let mut out = format!(
        "pcp v1 p={} n={} class={}\n",
        pc.prime(),
        pc.ngens(),
        pc.class()
    );
    for (g, w) in pc.weights().iter().enumerate() {
        out.push_str(&format!("w {} {}\n", g + 1, w));
    }
    for i in 0..pc.ngens() {
        let w = pc.power_rhs(i);
        if !w.is_empty() {
            out.push_str(&format!("pow {} = {}\n", i + 1, letters_text(w)));
        }
    }
    let mut comms: Vec<_> = pc.comm_relations().collect();
    comms.sort_by_key(|&(j, i, _)| (j, i));
    for (j, i, w) in comms {
        out.push_str(&format!("comm {} {} = {}\n", j + 1, i + 1, letters_text(w)));
    }
    for (g, d) in pc.definitions().iter().enumerate() {
        if let Some(d) = d {
            out.push_str(&format!("def {} {}\n", g + 1, d));
        }
    }
    out
}

fn letters_text(w: &[Letter]) -> String {
    NormalWord::from_letters(w.last().map_or(0, |l| l.0 as usize + 1), w).render()
}

fn format_err(line: usize, msg: impl std::fmt::Display) -> PcError {
    PcError::Format(format!("line {line}: {msg}"))
}

fn parse_num<T: std::str::FromStr>(s: &str, line: usize) -> Result<T, PcError> {
    s.parse()
        .map_err(|_| format_err(line, format!("expected a number, found `{s}`")))
}

/// 1-based index to 0-based.
fn parse_index(s: &str, line: usize) -> Result<u32, PcError> {
    let k: u32 = parse_num(s, line)?;
    k.checked_sub(1)
        .ok_or_else(|| format_err(line, "generator numbers start at 1"))
}

fn parse_letters(text: &str, line: usize) -> Result<Vec<Letter>, PcError> {
    text.split_whitespace()
        .map(|tok| {
            let (g, e) = tok
                .split_once('^')
                .ok_or_else(|| format_err(line, format!("expected gen^exp, found `{tok}`")))?;
            Ok((parse_index(g, line)?, parse_num(e, line)?))
        })
        .collect()
}

fn parse_definition(toks: &[&str], line: usize) -> Result<Definition, PcError> {
    match toks {
        ["image", k] => Ok(Definition::Image(parse_index(k, line)?)),
        ["pow", i] => Ok(Definition::Power(parse_index(i, line)?)),
        ["comm", j, i] => Ok(Definition::Commutator(parse_index(j, line)?, parse_index(i, line)?)),
        _ => Err(format_err(line, "malformed definition")),
    }
}

fn header_field<'a>(tok: Option<&'a str>, key: &str, line: usize) -> Result<&'a str, PcError> {
    tok.and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| format_err(line, format!("missing `{key}=` in header")))
}

/// Parses the presentation part of `text`; returns it with the number of
/// lines consumed.
fn parse_pcp_lines(lines: &[&str]) -> Result<(PcPresentation, usize), PcError> {
    let header = lines.first().ok_or_else(|| format_err(1, "empty input"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("pcp") {
        return Err(format_err(1, "expected `pcp` header"));
    }
    match toks.next() {
        Some("v1") => {}
        Some(v) => return Err(format_err(1, format!("unsupported version `{v}`"))),
        None => return Err(format_err(1, "missing version")),
    }
    let p: u32 = parse_num(header_field(toks.next(), "p", 1)?, 1)?;
    let n: usize = parse_num(header_field(toks.next(), "n", 1)?, 1)?;
    let class: u32 = parse_num(header_field(toks.next(), "class", 1)?, 1)?;

    let mut weights = vec![0u32; n];
    let mut powers: Vec<(u32, Vec<Letter>)> = Vec::new();
    let mut comms: Vec<(u32, u32, Vec<Letter>)> = Vec::new();
    let mut defs: Vec<(u32, Definition)> = Vec::new();
    let mut used = 1;
    for (k, raw) in lines.iter().enumerate().skip(1) {
        let line = k + 1;
        let text = raw.trim();
        if text.is_empty() {
            used = k + 1;
            continue;
        }
        let (lhs, rhs) = match text.split_once('=') {
            Some((l, r)) => (l, Some(r)),
            None => (text, None),
        };
        let toks: Vec<&str> = lhs.split_whitespace().collect();
        let check = |g: u32| -> Result<u32, PcError> {
            if (g as usize) < n {
                Ok(g)
            } else {
                Err(format_err(line, format!("generator {} out of range", g + 1)))
            }
        };
        match (toks.as_slice(), rhs) {
            (["w", g, w], None) => {
                let g = check(parse_index(g, line)?)?;
                weights[g as usize] = parse_num(w, line)?;
            }
            (["pow", i], Some(r)) => {
                powers.push((check(parse_index(i, line)?)?, parse_letters(r, line)?));
            }
            (["comm", j, i], Some(r)) => {
                let (j, i) = (check(parse_index(j, line)?)?, check(parse_index(i, line)?)?);
                comms.push((j, i, parse_letters(r, line)?));
            }
            (["def", g, rest @ ..], None) => {
                defs.push((check(parse_index(g, line)?)?, parse_definition(rest, line)?));
            }
            _ => break,
        }
        used = k + 1;
    }
    let mut b = PcBuilder::new(p);
    for &w in &weights {
        b.add_generator(w, None);
    }
    for (i, w) in powers {
        b.set_power(i, w)?;
    }
    for (j, i, w) in comms {
        b.set_comm(j, i, w)?;
    }
    for (g, d) in defs {
        b.set_definition(g, Some(d))?;
    }
    let pc = b.build()?;
    if n > 0 && pc.class() != class {
        return Err(format_err(1, format!("header class {class} disagrees with weights")));
    }
    Ok((pc, used))
}

pub fn parse_pcp(text: &str) -> Result<PcPresentation, PcError> {
    let lines: Vec<&str> = text.lines().collect();
    let (pc, used) = parse_pcp_lines(&lines)?;
    if let Some(extra) = lines[used..].iter().position(|l| !l.trim().is_empty()) {
        return Err(format_err(used + extra + 1, "unexpected record"));
    }
    Ok(pc)
}

/// SHA-256 of the rendered source presentation, in hex.
pub fn source_digest(pres: &Presentation) -> String {
    hex::encode(Sha256::digest(pres.render().as_bytes()))
}

/// A quotient at a class boundary or partway through a class step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientState {
    Complete(QuotientSystem),
    InProgress(Extension),
}

impl QuotientState {
    pub fn pc(&self) -> &PcPresentation {
        match self {
            Self::Complete(qs) => qs.pc(),
            Self::InProgress(ext) => ext.pc(),
        }
    }

    pub fn source(&self) -> &Presentation {
        match self {
            Self::Complete(qs) => qs.source(),
            Self::InProgress(ext) => ext.source(),
        }
    }
}

pub fn render_state(state: &QuotientState) -> String {
    let mut out = render_pcp(state.pc());
    out.push_str("qs v1\n");
    out.push_str(&format!("source {}\n", source_digest(state.source())));
    let (images, pclass) = match state {
        QuotientState::Complete(qs) => (qs.images(), qs.pclass()),
        QuotientState::InProgress(ext) => (ext.images(), ext.pclass()),
    };
    for (k, img) in images.iter().enumerate() {
        out.push_str(&format!("image {} = {}\n", k + 1, img.render()));
    }
    out.push_str(&format!("pclass {pclass}\n"));
    match state {
        QuotientState::Complete(qs) => {
            out.push_str("stage complete\n");
            out.push_str(&format!("terminal {}\n", qs.is_terminal()));
        }
        QuotientState::InProgress(ext) => {
            out.push_str(&format!("stage {}\n", ext.stage().tag()));
            out.push_str(&format!("tails {}\n", ext.old_ngens() + 1));
        }
    }
    out
}

/// Parses a state written by [`render_state`] for the given source.
pub fn parse_state(text: &str, source: &Presentation) -> Result<QuotientState, QuotientError> {
    let lines: Vec<&str> = text.lines().collect();
    let (pc, used) = parse_pcp_lines(&lines)?;
    let n = pc.ngens();
    let mut images = vec![None; source.rank()];
    let mut pclass = None;
    let mut stage: Option<Option<Stage>> = None;
    let mut terminal = None;
    let mut tails = None;
    let mut seen_header = false;
    for (k, raw) in lines.iter().enumerate().skip(used) {
        let line = k + 1;
        let text = raw.trim();
        if text.is_empty() {
            continue;
        }
        let toks: Vec<&str> = text.split_whitespace().collect();
        match toks.as_slice() {
            ["qs", "v1"] => seen_header = true,
            ["qs", v] => return Err(format_err(line, format!("unsupported qs version `{v}`")).into()),
            ["source", d] => {
                if *d != source_digest(source) {
                    return Err(QuotientError::Mismatch(
                        "checkpoint was written for a different source presentation".into(),
                    ));
                }
            }
            ["image", g, "=", rest @ ..] => {
                let g = parse_index(g, line)? as usize;
                if g >= images.len() {
                    return Err(format_err(line, "image of an unknown generator").into());
                }
                let letters = parse_letters(&rest.join(" "), line)?;
                if letters.iter().any(|&(h, _)| h as usize >= n) {
                    return Err(format_err(line, "image uses an unknown generator").into());
                }
                images[g] = Some(NormalWord::from_letters(n, &letters));
            }
            ["pclass", c] => pclass = Some(parse_num::<u32>(c, line)?),
            ["stage", "complete"] => stage = Some(None),
            ["stage", s] => {
                stage = Some(Some(
                    Stage::from_tag(s).ok_or_else(|| format_err(line, format!("unknown stage `{s}`")))?,
                ))
            }
            ["terminal", t] => {
                terminal = Some(parse_num::<bool>(t, line)?);
            }
            ["tails", t] => tails = Some(parse_num::<usize>(t, line)?),
            _ => return Err(format_err(line, "unexpected record").into()),
        }
    }
    let missing = |what: &str| QuotientError::Pc(PcError::Format(format!("missing `{what}` record")));
    if !seen_header {
        return Err(missing("qs v1"));
    }
    let images: Vec<NormalWord> = images
        .into_iter()
        .map(|x| x.ok_or_else(|| missing("image")))
        .collect::<Result<_, _>>()?;
    let pclass = pclass.ok_or_else(|| missing("pclass"))?;
    match stage.ok_or_else(|| missing("stage"))? {
        None => Ok(QuotientState::Complete(QuotientSystem::from_parts(
            source.clone(),
            pc,
            images,
            pclass,
            terminal.ok_or_else(|| missing("terminal"))?,
        ))),
        Some(stage) => {
            let start = tails.ok_or_else(|| missing("tails"))?;
            if start == 0 || start > n + 1 {
                return Err(missing("valid tails"));
            }
            Ok(QuotientState::InProgress(Extension::from_parts(
                source.clone(),
                pc,
                images,
                start - 1,
                pclass,
                stage,
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pquotient::{extend_one_class, initial_quotient, ExponentLaw};

    fn heisenberg() -> PcPresentation {
        let mut b = PcBuilder::new(3);
        b.add_generator(1, Some(Definition::Image(0)));
        b.add_generator(1, Some(Definition::Image(1)));
        b.add_generator(2, Some(Definition::Commutator(1, 0)));
        b.set_comm(1, 0, vec![(2, 1)]).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn renders_heisenberg() {
        let text = render_pcp(&heisenberg());
        assert_eq!(
            text,
            "pcp v1 p=3 n=3 class=2\nw 1 1\nw 2 1\nw 3 2\ncomm 2 1 = 3^1\n\
             def 1 image 1\ndef 2 image 2\ndef 3 comm 2 1\n"
        );
        assert_eq!(parse_pcp(&text).unwrap(), heisenberg());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_pcp("pcp v2 p=3 n=0 class=0\n").is_err());
        assert!(parse_pcp("pcp v1 p=4 n=0 class=0\n").is_err());
        assert!(parse_pcp("pcp v1 p=3 n=1 class=1\nw 1 1\npow 1 = 1^1\n").is_err());
        assert!(parse_pcp("pcp v1 p=3 n=1 class=1\nw 2 1\n").is_err());
    }

    #[test]
    fn state_round_trip() {
        let src = Presentation::free(&["a", "b"]);
        let qs = initial_quotient(&src, 3).unwrap();
        let qs = extend_one_class(&qs, Some(&ExponentLaw::new(3))).unwrap();
        let state = QuotientState::Complete(qs);
        let text = render_state(&state);
        assert_eq!(parse_state(&text, &src).unwrap(), state);

        let mut ext = Extension::with_tails(
            match &state {
                QuotientState::Complete(q) => q,
                _ => unreachable!(),
            },
            true,
        )
        .unwrap();
        ext.enforce_consistency().unwrap();
        let state = QuotientState::InProgress(ext);
        assert_eq!(parse_state(&render_state(&state), &src).unwrap(), state);
    }

    #[test]
    fn digest_mismatch_is_detected() {
        let src = Presentation::free(&["a", "b"]);
        let text = render_state(&QuotientState::Complete(initial_quotient(&src, 3).unwrap()));
        let other = Presentation::free(&["a", "c"]);
        assert!(matches!(parse_state(&text, &other), Err(QuotientError::Mismatch(_))));
    }
}
