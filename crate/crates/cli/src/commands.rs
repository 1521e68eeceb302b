use std::fs;
use std::path::PathBuf;

use pgroup_core::format::source_digest;
use pgroup_core::minimize::{greedy_select, power_subgroup_target, with_power_relators};
use pgroup_core::schur::{
    analyze_extension, base_class, central_extension_presentation, exponent_bound_certificate,
    gamma_membership, multiplier_result, relators_are_central, CentralExtensionSpec,
};
use pgroup_core::word::{enumerate_words, enumerate_words_with, render_word_list, WordFilter};
use pgroup_core::{p_covering_group, ExponentLaw, NormalWord, Presentation, QuotientSystem, RelatorExpr};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::driver::{run_quotient, write_atomic, Run};
use crate::job::{Command, Failure, JobConfig};

/// Deterministic structured text; lines starting with `time` carry wall
/// times and are the only ones that differ between identical runs.
pub struct Report {
    lines: Vec<String>,
}

impl Report {
    fn new(job: &JobConfig) -> Self {
        let mut r = Self {
            lines: vec![format!("report v1 {}", job.command.name())],
        };
        if let Some(mb) = job.memory_mb {
            r.push(format!("memory-advisory {mb} MB"));
        }
        r
    }

    fn push(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    fn check(&mut self, what: &str, ok: bool) -> bool {
        self.push(format!("check {what}: {}", if ok { "ok" } else { "FAILED" }));
        ok
    }

    fn finish(mut self, run: &Run) -> String {
        for l in &run.log {
            self.lines.push(format!("log {l}"));
        }
        for t in &run.times {
            self.lines.push(format!("time {t}"));
        }
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }
}

fn source_lines(report: &mut Report, pres: &Presentation, job: &JobConfig, p: u32) {
    report.push(format!("input sha256:{}", source_digest(pres)));
    report.push(format!("prime {p}"));
    if job.command == Command::Minimize {
        let from = job.class_from.unwrap_or(1);
        report.push(format!("classes {from}..{}", job.class_to.unwrap_or(from)));
    } else {
        match job.class_cap() {
            0 => report.push("class-cap none"),
            c => report.push(format!("class-cap {c}")),
        }
    }
    if let Some(n) = job.exponent {
        report.push(format!("exponent-law {n}"));
    }
}

/// Generator names for a word alphabet.
fn alphabet(k: u32) -> Vec<String> {
    if k <= 26 {
        (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (1..=k).map(|i| format!("x{i}")).collect()
    }
}

pub fn execute(job: &JobConfig) -> Result<String, Failure> {
    let mut run = Run::new(job.checkpoint.clone(), job.budget_secs);
    let report = match job.command {
        Command::Words => return words(job),
        Command::Pq => pq(job, &mut run)?,
        Command::Cover => cover(job, &mut run)?,
        Command::Multiplier => multiplier(job, &mut run)?,
        Command::Order => order(job, &mut run)?,
        Command::Gamma => gamma(job, &mut run)?,
        Command::Minimize => minimize(job, &mut run)?,
    };
    let text = report.finish(&run);
    if let Some(dir) = run.dir() {
        write_atomic(&dir.join("report.txt"), &text)?;
    }
    if let Some(out) = &job.output {
        if job.command != Command::Minimize {
            write_atomic(out, &text)?;
        }
    }
    Ok(text)
}

fn words(job: &JobConfig) -> Result<String, Failure> {
    let k = job.rank.ok_or_else(|| Failure::Usage("words needs --rank".into()))?;
    let c = job.length.ok_or_else(|| Failure::Usage("words needs --length".into()))?;
    let p = job.prime.ok_or_else(|| Failure::Usage("words needs --prime".into()))?;
    if k == 0 || c == 0 || p < 2 {
        return Err(Failure::input("need rank >= 1, length >= 1 and prime >= 2"));
    }
    let list = if job.stated_rules {
        enumerate_words_with(k, c, p, WordFilter::stated_rules())
    } else {
        enumerate_words(k, c, p)
    };
    if let Some(out) = &job.output {
        write_atomic(out, &render_word_list(&list, &alphabet(k)))?;
    }
    Ok(format!("{}\n", list.len()))
}

fn law(job: &JobConfig) -> Result<Option<ExponentLaw>, Failure> {
    Ok(job.exponent()?.map(ExponentLaw::new))
}

/// Power checks on random elements beyond the word list used to impose the law.
fn exponent_sample(qs: &QuotientSystem, n: u64, samples: usize) -> bool {
    let pc = qs.pc();
    let p = pc.prime();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    (0..samples).all(|_| {
        let v = (0..pc.ngens()).map(|_| rng.gen_range(0..p)).collect();
        pc.power(&NormalWord::from_exponents(v), n as i64).is_identity()
    })
}

fn quotient_claims(report: &mut Report, qs: &QuotientSystem, law: Option<&ExponentLaw>) -> Result<(), Failure> {
    let p = qs.prime();
    report.push(format!("result order {p}^{}", qs.order_exponent()));
    report.push(format!("result class {}", qs.pclass()));
    report.push(format!("result terminal {}", qs.is_terminal()));
    if !report.check("images generate the quotient", qs.is_epimorphic()) {
        return Err(Failure::Internal(anyhow::anyhow!("generator images do not generate the quotient")));
    }
    if let Some(law) = law {
        let ok = exponent_sample(qs, law.exponent, 1000);
        if !report.check(&format!("1000 random elements have exponent dividing {}", law.exponent), ok) {
            return Err(Failure::Internal(anyhow::anyhow!("exponent law fails on a random element")));
        }
    }
    Ok(())
}

fn pq(job: &JobConfig, run: &mut Run) -> Result<Report, Failure> {
    let pres = job.load_presentation()?;
    let p = job.prime()?;
    let law = law(job)?;
    let qs = run_quotient(run, "state.pcp", &pres, p, job.class_cap(), law.as_ref())?;
    let mut report = Report::new(job);
    source_lines(&mut report, &pres, job, p);
    quotient_claims(&mut report, &qs, law.as_ref())?;
    Ok(report)
}

fn cover(job: &JobConfig, run: &mut Run) -> Result<Report, Failure> {
    let pres = job.load_presentation()?;
    let p = job.prime()?;
    let cap = job.required_class()?;
    let law = law(job)?;
    let qs = run_quotient(run, "state.pcp", &pres, p, cap, law.as_ref())?;
    let cover = p_covering_group(&qs)?;
    let mut report = Report::new(job);
    source_lines(&mut report, &pres, job, p);
    quotient_claims(&mut report, &qs, law.as_ref())?;
    report.push(format!("result cover order {p}^{}", cover.order_exponent()));
    report.push(format!("result multiplicator rank {}", cover.multiplicator_rank()));
    let truncated = cover.cover.truncate(cover.multiplicator.start)?;
    if !report.check("cover truncates to the quotient", truncated == *qs.pc()) {
        return Err(Failure::Internal(anyhow::anyhow!("cover does not truncate to the quotient")));
    }
    if let Some(dir) = run.dir() {
        write_atomic(&dir.join("cover.pcp"), &pgroup_core::format::render_pcp(&cover.cover))?;
    }
    Ok(report)
}

fn extension_spec(job: &JobConfig, pres: &Presentation) -> Result<CentralExtensionSpec, Failure> {
    let retained: Vec<usize> = job
        .retain
        .iter()
        .map(|&r| {
            r.checked_sub(1)
                .ok_or_else(|| Failure::input("relator numbers start at 1"))
        })
        .collect::<Result<_, _>>()?;
    let spec = CentralExtensionSpec::with_retained(pres.clone(), &retained)?;
    Ok(if job.truncate_base {
        spec.with_truncated_base()
    } else {
        spec
    })
}

fn parse_targets(job: &JobConfig, pres: &Presentation) -> Result<Vec<RelatorExpr>, Failure> {
    job.targets
        .iter()
        .map(|t| {
            pres.parse_expr(t)
                .map_err(|e| Failure::input(format!("target `{t}`: {e}")))
        })
        .collect()
}

fn multiplier(job: &JobConfig, run: &mut Run) -> Result<Report, Failure> {
    let pres = job.load_presentation()?;
    let p = job.prime()?;
    let cap = job.required_class()?;
    let spec = extension_spec(job, &pres)?;
    let witness = parse_targets(job, &pres)?.into_iter().next();
    let base = run_quotient(run, "base.pcp", &pres, p, cap, None)?;
    let base_class = base_class(&spec, &base, cap)?;
    let ext_pres = central_extension_presentation(&spec);
    let s = run_quotient(run, "state.pcp", &ext_pres, p, cap, None)?;
    let mut report = Report::new(job);
    source_lines(&mut report, &pres, job, p);
    report.push(format!(
        "base class {base_class}{}",
        if spec.truncates_base() && !base.is_terminal() {
            " (presentation truncated at the class cap)"
        } else {
            ""
        }
    ));
    report.push(format!("extension relators {}", ext_pres.relators().len()));
    report.push(format!("result extension order {p}^{}", s.order_exponent()));
    if !report.check("central relators are central in the extension", relators_are_central(&spec, &s)) {
        return Err(Failure::input(
            "a central relator is not central in the extension quotient; the class cap is too small",
        ));
    }
    // the bound concerns gamma_{2p}, which is trivial below that class
    let cert = if cap >= 2 * p {
        exponent_bound_certificate(&s)?
    } else {
        Default::default()
    };
    let data = analyze_extension(&spec, s, cap)?;
    let m = multiplier_result(&spec, &data, base_class, witness.as_ref())?;
    report.push(format!("result multiplier {}", m.summary()));
    let inv: Vec<String> = m.invariants().iter().map(|x| x.to_string()).collect();
    report.push(format!("result invariants {}", inv.join(" ")));
    if let Some(w) = &m.witness {
        report.push(format!("result witness order({}) = {}", w.expr, (p as u128).pow(w.order_exponent)));
    }
    for f in &cert.facts {
        report.push(format!("fact {}: {}", f.statement, f.holds));
    }
    Ok(report)
}

/// The quotient that `order` and `gamma` work in.
fn target_quotient(job: &JobConfig, run: &mut Run, pres: &Presentation, extension: bool) -> Result<QuotientSystem, Failure> {
    let p = job.prime()?;
    let cap = job.required_class()?;
    let source = if extension {
        central_extension_presentation(&extension_spec(job, pres)?)
    } else {
        pres.clone()
    };
    run_quotient(run, "state.pcp", &source, p, cap, law(job)?.as_ref())
}

fn order(job: &JobConfig, run: &mut Run) -> Result<Report, Failure> {
    let pres = job.load_presentation()?;
    let targets = parse_targets(job, &pres)?;
    if targets.is_empty() {
        return Err(Failure::Usage("order needs at least one --target".into()));
    }
    let s = target_quotient(job, run, &pres, true)?;
    let p = s.prime();
    let mut report = Report::new(job);
    source_lines(&mut report, &pres, job, p);
    report.push(format!("result extension order {p}^{}", s.order_exponent()));
    for t in &targets {
        let k = s.pc().order_exponent(&s.evaluate(t));
        report.push(format!(
            "result order({}) = {}",
            t.render(pres.generators()),
            (p as u128).pow(k)
        ));
    }
    report.push(format!(
        "note orders are computed in the p-class {} quotient of the central extension and are lower bounds for orders in the extension",
        job.class_cap()
    ));
    report.push(
        "note finite-quotient surrogate: where an integral nilpotent quotient is intended this computation stands in for it",
    );
    Ok(report)
}

fn gamma(job: &JobConfig, run: &mut Run) -> Result<Report, Failure> {
    let pres = job.load_presentation()?;
    let k = job
        .gamma
        .ok_or_else(|| Failure::Usage("gamma needs --k".into()))?;
    let targets = parse_targets(job, &pres)?;
    if targets.is_empty() {
        return Err(Failure::Usage("gamma needs at least one --target".into()));
    }
    let s = target_quotient(job, run, &pres, job.extension)?;
    let p = s.prime();
    let mut report = Report::new(job);
    source_lines(&mut report, &pres, job, p);
    report.push(format!(
        "group {} order {p}^{}",
        if job.extension { "extension" } else { "quotient" },
        s.order_exponent()
    ));
    for t in &targets {
        report.push(format!(
            "result {} in gamma_{k}: {}",
            t.render(pres.generators()),
            gamma_membership(&s, t, k)
        ));
    }
    Ok(report)
}

fn minimize(job: &JobConfig, run: &mut Run) -> Result<Report, Failure> {
    let base = job.load_presentation()?;
    let p = job.prime()?;
    let n = job
        .exponent()?
        .ok_or_else(|| Failure::Usage("minimize needs --exponent".into()))?;
    let from = job
        .class_from
        .ok_or_else(|| Failure::Usage("minimize needs --from".into()))?;
    let to = job.class_to.unwrap_or(from);
    if from < 1 || to < from {
        return Err(Failure::input(format!("bad class range {from}..{to}")));
    }
    let out_dir: PathBuf = job
        .output
        .clone()
        .or_else(|| job.checkpoint.clone())
        .ok_or_else(|| Failure::Usage("minimize needs --output or --checkpoint".into()))?;
    fs::create_dir_all(&out_dir)
        .map_err(|e| Failure::input(format!("cannot create {}: {e}", out_dir.display())))?;
    let length = job.length.unwrap_or(to as usize);
    let pool = enumerate_words(base.rank() as u32, length, n.min(u32::MAX as u64) as u32);
    let names = base.generators();
    let exp_law = ExponentLaw::new(n);

    let mut report = Report::new(job);
    source_lines(&mut report, &base, job, p);
    report.push(format!("candidates {} words of length at most {length}", pool.len()));
    let mut cumulative = Vec::new();
    let mut exp_order = 0;
    for c in from..=to {
        let pres = with_power_relators(&base, &cumulative, n);
        let free = run_quotient(run, &format!("free-c{c}.pcp"), &pres, p, c, None)?;
        let exp = run_quotient(run, &format!("exp-c{c}.pcp"), &base, p, c, Some(&exp_law))?;
        let target = power_subgroup_target(&free, &exp, n)?;
        let trace = greedy_select(&free, &pool, n, target)?;
        cumulative.extend(trace.accepted_words());
        exp_order = exp.order_exponent();
        write_atomic(
            &out_dir.join(format!("class_{c}.words")),
            &render_word_list(&cumulative, names),
        )?;
        write_atomic(&out_dir.join(format!("trace_{c}.txt")), &trace.render(names))?;
        report.push(format!(
            "result class {c} quotient {p}^{} exponent quotient {p}^{} target {p}^{target} accepted {} cumulative {}",
            free.order_exponent(),
            exp.order_exponent(),
            trace.accepted.len(),
            cumulative.len()
        ));
    }
    let check = with_power_relators(&base, &cumulative, n);
    let verify = run_quotient(run, "verify.pcp", &check, p, to, None)?;
    let ok = verify.order_exponent() == exp_order;
    report.push(format!(
        "result verification order {p}^{} with {} power relators",
        verify.order_exponent(),
        cumulative.len()
    ));
    if !report.check("selected relators reproduce the exponent quotient", ok) {
        return Err(Failure::Internal(anyhow::anyhow!(
            "selected relators give order {p}^{} instead of {p}^{exp_order}",
            verify.order_exponent()
        )));
    }
    Ok(report)
}
