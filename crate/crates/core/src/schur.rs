//! Central extensions and Schur multipliers.
//!
//! For `G = <X | V>` the group `<X | [v,x] : v in V, x in X>` is a central
//! extension of `G`; in a deep enough quotient `S` of it the image `T` of
//! the normal closure of `V` is central and `T ∩ S'` is the multiplier.

use crate::error::QuotientError;
use crate::pc::NormalWord;
use crate::pquotient::{pquotient, QuotientSystem};
use crate::subgroup::{
    abelian_invariant_exponents, central_intersection, derived_subgroup, lower_central_term,
    subgroup_closure, subgroup_exponent, PcSubgroup,
};
use crate::word::{Presentation, RelatorExpr};

/// A base presentation `<X | V>` with some relators imposed directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralExtensionSpec {
    base: Presentation,
    retained: Vec<bool>,
    truncate_base: bool,
}

impl CentralExtensionSpec {
    /// Every relator of `base` is made central.
    pub fn new(base: Presentation) -> Self {
        let n = base.relators().len();
        Self {
            base,
            retained: vec![false; n],
            truncate_base: false,
        }
    }

    /// Takes the base group to be `F / V^F γ_cap(F)` for the class cap used,
    /// as for a presentation that only defines the group up to that class.
    pub fn with_truncated_base(mut self) -> Self {
        self.truncate_base = true;
        self
    }

    pub fn truncates_base(&self) -> bool {
        self.truncate_base
    }

    /// Keeps the listed relators (indices into `base.relators()`) as relators.
    pub fn with_retained(base: Presentation, retained: &[usize]) -> Result<Self, QuotientError> {
        let mut spec = Self::new(base);
        for &i in retained {
            if i >= spec.retained.len() {
                return Err(QuotientError::InvalidParameter(format!(
                    "retained relator {i} out of range"
                )));
            }
            spec.retained[i] = true;
        }
        Ok(spec)
    }

    pub fn base(&self) -> &Presentation {
        &self.base
    }

    pub fn retained_relators(&self) -> Vec<RelatorExpr> {
        self.select(true)
    }

    /// The relators made central (`V'`).
    pub fn central_relators(&self) -> Vec<RelatorExpr> {
        self.select(false)
    }

    fn select(&self, keep: bool) -> Vec<RelatorExpr> {
        self.base
            .relators()
            .iter()
            .zip(&self.retained)
            .filter(|(_, &r)| r == keep)
            .map(|(v, _)| v.clone())
            .collect()
    }

    /// `[v, x]` for every central relator `v` and generator `x`.
    pub fn derived_relators(&self) -> Vec<RelatorExpr> {
        let mut out = Vec::new();
        for v in self.central_relators() {
            for x in 0..self.base.rank() as u32 {
                out.push(RelatorExpr::commutator(v.clone(), RelatorExpr::gen(x)));
            }
        }
        out
    }
}

/// The presentation with relators `retained ∪ derived`.
pub fn central_extension_presentation(spec: &CentralExtensionSpec) -> Presentation {
    let mut rels = spec.retained_relators();
    rels.extend(spec.derived_relators());
    spec.base
        .with_relators(rels)
        .expect("relators only use base generators")
}

/// The p-class `class_cap` quotient of the central extension.
pub fn extension_quotient(
    spec: &CentralExtensionSpec,
    p: u32,
    class_cap: u32,
) -> Result<QuotientSystem, QuotientError> {
    if class_cap == 0 {
        return Err(QuotientError::InvalidParameter("class cap must be positive".into()));
    }
    pquotient(&central_extension_presentation(spec), p, class_cap, None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub expr: String,
    pub order_exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplierResult {
    /// `k_i` with invariants `p^{k_i}`, largest first.
    pub invariant_exponents: Vec<u32>,
    pub prime: u32,
    /// p-class of the base group's quotient.
    pub base_class: u32,
    /// Order exponent of the extension quotient `S`.
    pub extension_order: usize,
    pub witness: Option<Witness>,
}

impl MultiplierResult {
    pub fn invariants(&self) -> Vec<u128> {
        self.invariant_exponents
            .iter()
            .map(|&k| (self.prime as u128).pow(k))
            .collect()
    }

    pub fn exponent(&self) -> u128 {
        self.invariants().first().copied().unwrap_or(1)
    }

    /// Order exponent of the multiplier.
    pub fn order_exponent(&self) -> u32 {
        self.invariant_exponents.iter().sum()
    }

    /// E.g. `31 x Z/5, exponent 5`.
    pub fn summary(&self) -> String {
        if self.invariant_exponents.is_empty() {
            return "trivial".to_string();
        }
        let inv = self.invariants();
        let mut parts = Vec::new();
        let mut k = 0;
        while k < inv.len() {
            let run = inv[k..].iter().take_while(|&&x| x == inv[k]).count();
            parts.push(if run == 1 {
                format!("Z/{}", inv[k])
            } else {
                format!("{run} x Z/{}", inv[k])
            });
            k += run;
        }
        format!("{}, exponent {}", parts.join(" + "), self.exponent())
    }
}

/// Default witness: `[b,a][c,d]` for four generators, `[b,a]` for two or three.
pub fn default_witness(rank: usize) -> Option<RelatorExpr> {
    let c = |j, i| RelatorExpr::commutator(RelatorExpr::gen(j), RelatorExpr::gen(i));
    match rank {
        0 | 1 => None,
        4 => Some(RelatorExpr::product(vec![c(1, 0), c(2, 3)])),
        _ => Some(c(1, 0)),
    }
}

/// The extension quotient `S` with the subgroups the multiplier is read from.
#[derive(Clone, Debug)]
pub struct ExtensionData {
    pub quotient: QuotientSystem,
    /// `<V images> γ_cap(S)`, normal and central.
    pub t: PcSubgroup,
    pub derived: PcSubgroup,
    pub multiplier: PcSubgroup,
}

/// p-class of the base group, checked against the cap. `base` is the
/// base presentation's p-quotient computed up to `class_cap`.
pub fn base_class(
    spec: &CentralExtensionSpec,
    base: &QuotientSystem,
    class_cap: u32,
) -> Result<u32, QuotientError> {
    if class_cap < 2 {
        return Err(QuotientError::InvalidParameter("class cap must be at least 2".into()));
    }
    if base.is_terminal() && base.pclass() < class_cap {
        Ok(base.pclass())
    } else if spec.truncate_base {
        Ok(class_cap - 1)
    } else {
        Err(QuotientError::InvalidParameter(format!(
            "class cap {class_cap} must exceed the base group's p-class"
        )))
    }
}

/// Builds `T`, `S'` and `T ∩ S'` in an extension quotient `s` of class
/// `class_cap`.
pub fn analyze_extension(
    spec: &CentralExtensionSpec,
    s: QuotientSystem,
    class_cap: u32,
) -> Result<ExtensionData, QuotientError> {
    let pc = s.pc();
    let mut seeds: Vec<NormalWord> = spec
        .base()
        .relators()
        .iter()
        .map(|v| s.evaluate(v))
        .collect();
    seeds.extend(
        lower_central_term(pc, class_cap as usize)
            .generators()
            .iter()
            .cloned(),
    );
    let t = subgroup_closure(pc, &seeds, true);
    let derived = derived_subgroup(pc);
    let multiplier = central_intersection(pc, &t, &derived)?;
    Ok(ExtensionData {
        quotient: s,
        t,
        derived,
        multiplier,
    })
}

/// True iff every central relator's image commutes with every generator.
pub fn relators_are_central(spec: &CentralExtensionSpec, s: &QuotientSystem) -> bool {
    let pc = s.pc();
    spec.central_relators().iter().all(|v| {
        let x = s.evaluate(v);
        s.images()
            .iter()
            .all(|g| pc.commutator(&x, g).is_identity())
    })
}

/// Reads the multiplier and witness order off analysed extension data.
pub fn multiplier_result(
    spec: &CentralExtensionSpec,
    data: &ExtensionData,
    base_class: u32,
    witness: Option<&RelatorExpr>,
) -> Result<MultiplierResult, QuotientError> {
    let pc = data.quotient.pc();
    let invariant_exponents = abelian_invariant_exponents(pc, &data.multiplier)?;
    let names = spec.base().generators();
    let witness = witness
        .cloned()
        .or_else(|| default_witness(spec.base().rank()))
        .map(|w| Witness {
            expr: w.render(names),
            order_exponent: pc.order_exponent(&data.quotient.evaluate(&w)),
        });
    Ok(MultiplierResult {
        invariant_exponents,
        prime: pc.prime(),
        base_class,
        extension_order: pc.ngens(),
        witness,
    })
}

/// Multiplier of `<X | V>` read off the class `class_cap` extension quotient.
pub fn schur_multiplier(
    spec: &CentralExtensionSpec,
    p: u32,
    class_cap: u32,
    witness: Option<&RelatorExpr>,
) -> Result<MultiplierResult, QuotientError> {
    let base = pquotient(spec.base(), p, class_cap, None)?;
    let base_class = base_class(spec, &base, class_cap)?;
    let s = extension_quotient(spec, p, class_cap)?;
    let data = analyze_extension(spec, s, class_cap)?;
    multiplier_result(spec, &data, base_class, witness)
}

/// Order exponent of `target` in the class `class_cap` extension quotient:
/// a lower bound for its order in the extension itself.
pub fn element_order_in_extension(
    spec: &CentralExtensionSpec,
    p: u32,
    class_cap: u32,
    target: &RelatorExpr,
) -> Result<u32, QuotientError> {
    let s = extension_quotient(spec, p, class_cap)?;
    Ok(s.pc().order_exponent(&s.evaluate(target)))
}

/// Whether the image of `target` lies in `γ_k`.
pub fn gamma_membership(qs: &QuotientSystem, target: &RelatorExpr, k: usize) -> bool {
    let x = qs.evaluate(target);
    lower_central_term(qs.pc(), k.max(1)).contains(qs.pc(), &x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact {
    pub statement: String,
    pub holds: bool,
}

/// Checked facts behind an exponent bound for derived groups of extensions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub facts: Vec<Fact>,
}

impl Certificate {
    pub fn push(&mut self, statement: impl Into<String>, holds: bool) {
        self.facts.push(Fact {
            statement: statement.into(),
            holds,
        });
    }

    pub fn all_hold(&self) -> bool {
        self.facts.iter().all(|f| f.holds)
    }

    pub fn is_vacuous(&self) -> bool {
        self.facts.is_empty()
    }
}

/// Records `[b,a]^p ∈ γ_{2p}(S)` and the exponent of `γ_{2p}(S)` for an
/// extension quotient `S` on at least two generators.
pub fn exponent_bound_certificate(ext: &QuotientSystem) -> Result<Certificate, QuotientError> {
    let mut cert = Certificate::default();
    let pc = ext.pc();
    if pc.ngens() == 0 || ext.source().rank() < 2 {
        return Ok(cert);
    }
    let p = pc.prime();
    let k = 2 * p as usize;
    let c = RelatorExpr::commutator(RelatorExpr::gen(1), RelatorExpr::gen(0));
    let names = ext.source().generators();
    let target = RelatorExpr::power(c, p as i64);
    cert.push(
        format!("{} in gamma_{k}", target.render(names)),
        gamma_membership(ext, &target, k),
    );
    let gamma = lower_central_term(pc, k);
    let e = subgroup_exponent(pc, &gamma)?;
    cert.push(
        format!("gamma_{k} has exponent {e} (dividing {p})"),
        e <= p as u128,
    );
    Ok(cert)
}
