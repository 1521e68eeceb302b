//! Checkpointed p-quotient runs.
//!
//! A state file is the quotient state followed by `log` lines describing
//! the run so far. Files are replaced atomically, so a killed process leaves
//! either the previous or the next state behind.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use pgroup_core::format::{parse_state, render_state};
use pgroup_core::pquotient::continue_extension;
use pgroup_core::{initial_quotient, ExponentLaw, Extension, Presentation, QuotientState, QuotientSystem};

use crate::job::Failure;

pub struct Run {
    dir: Option<PathBuf>,
    pub log: Vec<String>,
    pub times: Vec<String>,
    started: Instant,
    budget: Option<Duration>,
}

impl Run {
    pub fn new(dir: Option<PathBuf>, budget_secs: Option<f64>) -> Self {
        Self {
            dir,
            log: Vec::new(),
            times: Vec::new(),
            started: Instant::now(),
            budget: budget_secs.map(Duration::from_secs_f64),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn save(&mut self, name: &str, state: &QuotientState, run_log: &[String]) -> Result<(), Failure> {
        if let Some(dir) = &self.dir {
            let mut text = render_state(state);
            for line in run_log {
                text.push_str("log ");
                text.push_str(line);
                text.push('\n');
            }
            write_atomic(&dir.join(name), &text)?;
        }
        if let Some(b) = self.budget {
            if self.started.elapsed() > b {
                let at = match &self.dir {
                    Some(d) => format!("checkpoint written to {}", d.display()),
                    None => "no checkpoint directory was given".to_string(),
                };
                return Err(Failure::Budget(at));
            }
        }
        Ok(())
    }

    fn load(&self, name: &str, source: &Presentation) -> Result<Option<(QuotientState, Vec<String>)>, Failure> {
        let Some(dir) = &self.dir else {
            return Ok(None);
        };
        let path = dir.join(name);
        if !path.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(&path)
            .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
        let mut state_text = String::new();
        let mut log = Vec::new();
        for line in text.lines() {
            match line.strip_prefix("log ") {
                Some(l) => log.push(l.to_string()),
                None => {
                    state_text.push_str(line);
                    state_text.push('\n');
                }
            }
        }
        let state = parse_state(&state_text, source)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        Ok(Some((state, log)))
    }
}

pub fn write_atomic(path: &Path, text: &str) -> Result<(), Failure> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text)
        .and_then(|_| fs::rename(&tmp, path))
        .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

fn order(p: u32, n: usize) -> String {
    format!("{p}^{n}")
}

/// Computes the p-quotient of `source` to `cap` (0 = until terminal),
/// checkpointing to `name` after every stage and resuming from it if present.
pub fn run_quotient(
    run: &mut Run,
    name: &str,
    source: &Presentation,
    p: u32,
    cap: u32,
    law: Option<&ExponentLaw>,
) -> Result<QuotientSystem, Failure> {
    let tag = name.trim_end_matches(".pcp");
    let (mut state, mut log) = match run.load(name, source)? {
        Some((state, log)) => {
            if state.pc().prime() != p {
                return Err(Failure::input(format!("{name} was computed for another prime")));
            }
            (state, log)
        }
        None => {
            let qs = initial_quotient(source, p)?;
            let log = vec![format!(
                "{tag} class 1 order {}",
                order(p, qs.order_exponent())
            )];
            let state = QuotientState::Complete(qs);
            run.save(name, &state, &log)?;
            (state, log)
        }
    };
    loop {
        state = match state {
            QuotientState::Complete(qs) => {
                if qs.is_terminal() || (cap > 0 && qs.pclass() >= cap) {
                    run.log.extend(log);
                    return Ok(qs);
                }
                let t = Instant::now();
                let ext = Extension::with_tails(&qs, true)?;
                let c = qs.pclass() + 1;
                log.push(format!("{tag} class {c} tails {}", ext.tail_count()));
                run.times.push(format!("{tag} class {c} tails {:.3}s", t.elapsed().as_secs_f64()));
                let state = QuotientState::InProgress(ext);
                run.save(name, &state, &log)?;
                state
            }
            QuotientState::InProgress(mut ext) => {
                let c = ext.pclass() + 1;
                let mut t = Instant::now();
                continue_extension::<Failure>(&mut ext, law, &mut |e, stats| {
                    log.push(format!(
                        "{tag} class {c} {} relations {} eliminated {} multiplicator {}",
                        e.stage().tag(),
                        stats.relations,
                        stats.eliminated,
                        e.tail_count()
                    ));
                    run.times.push(format!(
                        "{tag} class {c} {} {:.3}s",
                        e.stage().tag(),
                        t.elapsed().as_secs_f64()
                    ));
                    t = Instant::now();
                    run.save(name, &QuotientState::InProgress(e.clone()), &log)
                })?;
                let qs = ext.finish();
                log.push(if qs.is_terminal() {
                    format!("{tag} class {c} terminal at class {}", qs.pclass())
                } else {
                    format!("{tag} class {c} order {}", order(p, qs.order_exponent()))
                });
                let state = QuotientState::Complete(qs);
                run.save(name, &state, &log)?;
                state
            }
        };
    }
}
