//! Analysis reports: the full pipeline for one instance, as JSON or text.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::crossed::CrossedProduct;
use crate::dynamics::{EnvelopingSystem, PartialSystem, TransitivityTransfer};
use crate::error::{Error, Result};
use crate::field::{AnyField, Field};
use crate::instance::Instance;
use crate::simplicity::{decide_with, AlgebraFacts, DynamicsSimplicityReport, OracleConfig, SimplicityVerdict};
use crate::validation::ValidationReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub order: usize,
    pub abelian: bool,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationBlock {
    pub dynamics: ValidationReport,
    pub twisted: ValidationReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynamicsBlock {
    pub orbits: Vec<Vec<usize>>,
    pub transitive: bool,
    pub transitivity_criterion: bool,
    pub minimal: bool,
    pub topologically_free: bool,
    pub periodic_points: Vec<usize>,
    pub enveloping_size: usize,
    pub transitivity_transfer: TransitivityTransfer,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraBlock {
    pub dim: usize,
    pub associative: bool,
    pub unital: bool,
    pub commutative: bool,
    pub cocycle_symmetric: bool,
    pub alpha_identity: bool,
    pub centralizer_dim: usize,
    pub center_dim: usize,
    pub center_basis: Vec<Vec<Value>>,
    pub maximal_commutative: bool,
    pub alpha_simple: bool,
    pub invariants_dim: usize,
}

/// One row of the cross-check table. `holds` is absent when the check does not apply
/// or its comparison partner was not computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub check: String,
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
}

impl TheoremCheck {
    fn new(check: &str, applicable: bool, holds: Option<bool>) -> Self {
        TheoremCheck { check: check.into(), applicable, holds: if applicable { holds } else { None } }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub name: String,
    pub field: String,
    pub group: GroupSummary,
    pub space: usize,
    pub validation: ValidationBlock,
    pub dynamics: DynamicsBlock,
    pub algebra: AlgebraBlock,
    pub simplicity: SimplicityVerdict,
    /// Present when the action is the plain lift of the dynamics.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dynamics_simplicity: Option<DynamicsSimplicityReport>,
    pub theorems: Vec<TheoremCheck>,
}

/// Everything the `dynamics` verb prints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynamicsReport {
    pub name: String,
    pub validation: ValidationReport,
    pub dynamics: DynamicsBlock,
    pub dynamics_simplicity: DynamicsSimplicityReport,
}

fn dynamics_block(sys: &PartialSystem) -> Result<DynamicsBlock> {
    let env: EnvelopingSystem = sys.globalize()?;
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for x in 0..sys.size() {
        let o: Vec<usize> = sys.partial_orbit(x)?.into_iter().collect();
        if !orbits.contains(&o) {
            orbits.push(o);
        }
    }
    let transitive = sys.is_transitive();
    let criterion = sys.transitivity_criterion();
    if transitive != criterion {
        return Err(Error::disagreement("transitivity criterion", format!("orbits say {transitive}, criterion says {criterion}")));
    }
    Ok(DynamicsBlock {
        orbits,
        transitive,
        transitivity_criterion: criterion,
        minimal: sys.is_minimal(),
        topologically_free: sys.is_topologically_free(),
        periodic_points: sys.periodic_points().into_iter().collect(),
        enveloping_size: env.size,
        transitivity_transfer: sys.transitivity_transfer()?,
    })
}

/// Runs the full pipeline; structural answers are cross-checked and any mismatch is an error.
pub fn analyze(instance: &Instance, config: &OracleConfig) -> Result<AnalysisReport> {
    match instance.field.build()? {
        AnyField::Prime(f) => analyze_with(instance, f, config),
        AnyField::Rational(f) => analyze_with(instance, f, config),
    }
}

fn analyze_with<F: Field>(instance: &Instance, field: F, config: &OracleConfig) -> Result<AnalysisReport> {
    let sys = instance.system()?;
    let dyn_report = sys.validate();
    let action = instance.action(field)?;
    let tw_report = action.validate();
    if !dyn_report.valid {
        return Err(Error::Validation(Box::new(dyn_report)));
    }
    if !tw_report.valid {
        return Err(Error::Validation(Box::new(tw_report)));
    }
    let dynamics = dynamics_block(&sys)?;

    let cp = CrossedProduct::new(&action);
    let facts = AlgebraFacts::compute(&cp)?;
    let alg = &facts.alg;
    let assoc = cp.verify_associativity();
    if !assoc.holds {
        return Err(Error::disagreement("associativity", format!("fails at {:?}", assoc.witness)));
    }
    let unital = cp.identity_holds();
    let comm = cp.commutativity(alg)?;
    let commutant = cp.commutant_cx();
    if commutant != facts.centralizer {
        return Err(Error::disagreement(
            "commutant of C(X)",
            format!("Sep/Per span has dimension {}, centralizer has {}", commutant.dim(), facts.centralizer.dim()),
        ));
    }
    let same_dynamics = instance.supports.is_none();
    if same_dynamics && dynamics.topologically_free != facts.maximal_commutative {
        return Err(Error::disagreement(
            "topologically free iff maximal commutative",
            format!("free = {}, maximal commutative = {}", dynamics.topologically_free, facts.maximal_commutative),
        ));
    }

    let verdict = decide_with(&cp, &facts, config)?;
    let dynamics_simplicity =
        if instance.is_lift() { Some(DynamicsSimplicityReport::from_parts(&sys, &facts, verdict.clone())?) } else { None };

    let oracle_simple = verdict.oracle.as_ref().filter(|o| o.complete).map(|o| o.simple);
    let against_oracle = |predicted: bool| oracle_simple.map(|o| o == predicted);
    let abelian = action.group().is_abelian();
    let theorems = vec![
        TheoremCheck::new("associativity", true, Some(assoc.holds)),
        TheoremCheck::new("commutativity-characterization", true, Some(comm.characterization() == comm.commutative)),
        TheoremCheck::new("centralizer-formula", true, Some(true)),
        TheoremCheck::new("center-formula", true, Some(true)),
        TheoremCheck::new("commutant-sep-per", true, Some(true)),
        TheoremCheck::new("free-iff-maximal-commutative", same_dynamics, Some(true)),
        TheoremCheck::new("minimal-iff-alpha-simple", same_dynamics, Some(sys.is_minimal() == facts.alpha_simple)),
        TheoremCheck::new("transitivity-criterion", true, Some(true)),
        TheoremCheck::new("transitivity-transfer", true, Some(true)),
        TheoremCheck::new("maximal-commutative-route", facts.maximal_commutative, against_oracle(facts.alpha_simple)),
        TheoremCheck::new(
            "abelian-center-field-route",
            abelian,
            verdict.center_is_field.and_then(|zf| against_oracle(zf && facts.alpha_simple)),
        ),
        TheoremCheck::new(
            "centralizer-simple-route",
            verdict.centralizer_simple == Some(true),
            against_oracle(facts.alpha_simple),
        ),
        TheoremCheck::new("simple-implies-alpha-simple", true, Some(!verdict.simple || facts.alpha_simple)),
    ];

    let f = alg.field();
    Ok(AnalysisReport {
        name: instance.name.clone(),
        field: instance.field.to_string(),
        group: GroupSummary { order: action.group().order(), abelian, labels: action.group().labels().to_vec() },
        space: instance.space,
        validation: ValidationBlock { dynamics: dyn_report, twisted: tw_report },
        dynamics,
        algebra: AlgebraBlock {
            dim: cp.dim(),
            associative: assoc.holds,
            unital,
            commutative: comm.commutative,
            cocycle_symmetric: comm.cocycle_symmetric,
            alpha_identity: comm.alpha_identity,
            centralizer_dim: facts.centralizer.dim(),
            center_dim: facts.center.dim(),
            center_basis: facts.center.basis().iter().map(|v| v.iter().map(|c| f.to_json(c)).collect()).collect(),
            maximal_commutative: facts.maximal_commutative,
            alpha_simple: facts.alpha_simple,
            invariants_dim: action.invariants_subring().len(),
        },
        simplicity: verdict,
        dynamics_simplicity,
        theorems,
    })
}

pub fn dynamics_report(instance: &Instance, config: &OracleConfig) -> Result<DynamicsReport> {
    let sys = instance.system()?;
    let validation = sys.validate();
    if !validation.valid {
        return Err(Error::Validation(Box::new(validation)));
    }
    let dynamics = dynamics_block(&sys)?;
    let dynamics_simplicity = match instance.field.build()? {
        AnyField::Prime(f) => crate::simplicity::dynamics_simplicity_report(&sys, f, config)?,
        AnyField::Rational(f) => crate::simplicity::dynamics_simplicity_report(&sys, f, config)?,
    };
    Ok(DynamicsReport { name: instance.name.clone(), validation, dynamics, dynamics_simplicity })
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn sets(v: &[Vec<usize>]) -> String {
    let parts: Vec<String> =
        v.iter().map(|o| format!("{{{}}}", o.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))).collect();
    parts.join(" ")
}

fn write_dynamics(out: &mut String, d: &DynamicsBlock) {
    let _ = writeln!(out, "dynamics");
    let _ = writeln!(out, "  orbits: {}", sets(&d.orbits));
    let _ = writeln!(out, "  transitive: {} (criterion: {})", yes(d.transitive), yes(d.transitivity_criterion));
    let _ = writeln!(out, "  minimal: {}", yes(d.minimal));
    let _ = writeln!(out, "  topologically free: {}", yes(d.topologically_free));
    let pp: Vec<String> = d.periodic_points.iter().map(|x| x.to_string()).collect();
    let _ = writeln!(out, "  periodic points: [{}]", pp.join(","));
    let _ = writeln!(
        out,
        "  envelope: {} points, {} orbit(s), transitive {}",
        d.enveloping_size,
        d.transitivity_transfer.enveloping_orbits,
        yes(d.transitivity_transfer.enveloping)
    );
}

fn write_conditions(out: &mut String, r: &DynamicsSimplicityReport) {
    let _ = writeln!(out, "dynamics vs simplicity");
    let _ = writeln!(out, "  (i) minimal: {}", yes(r.condition_i));
    let _ = writeln!(out, "  (ii) maximal commutative and alpha-simple: {}", yes(r.condition_ii));
    let _ = writeln!(out, "  (iii) simple: {}", yes(r.condition_iii));
    if r.finite_gap {
        let _ = writeln!(out, "  note: minimal without (ii); the converse direction needs an infinite space");
    }
}

fn verdict_line(v: &SimplicityVerdict) -> String {
    let mut s = format!("{} (route {})", if v.simple { "simple" } else { "not simple" }, v.route.as_str());
    if let Some(o) = &v.oracle {
        let _ = write!(s, ", oracle {} over {} element(s){}", yes(o.simple), o.checked, if o.complete { "" } else { " (sampled)" });
    }
    if let Some(a) = v.oracle_agreement {
        let _ = write!(s, ", agreement {}", yes(a));
    }
    s
}

impl AnalysisReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "instance {}", self.name);
        let _ = writeln!(out, "  field {}, group of order {} (abelian {}), {} point(s)", self.field, self.group.order, yes(self.group.abelian), self.space);
        let _ = writeln!(out, "  validation: dynamics {}, twisted {}", self.validation.dynamics, self.validation.twisted);
        write_dynamics(&mut out, &self.dynamics);
        let a = &self.algebra;
        let _ = writeln!(out, "algebra");
        let _ = writeln!(out, "  dimension: {}", a.dim);
        let _ = writeln!(out, "  associative: {}, unital: {}", yes(a.associative), yes(a.unital));
        let _ = writeln!(
            out,
            "  commutative: {} (symmetric cocycle {}, alpha identity {})",
            yes(a.commutative),
            yes(a.cocycle_symmetric),
            yes(a.alpha_identity)
        );
        let _ = writeln!(out, "  centralizer of R: dimension {}", a.centralizer_dim);
        let _ = writeln!(out, "  center: dimension {}", a.center_dim);
        for v in &a.center_basis {
            let coords: Vec<String> = v.iter().map(|c| c.to_string().trim_matches('"').to_string()).collect();
            let _ = writeln!(out, "    [{}]", coords.join(" "));
        }
        let _ = writeln!(out, "  maximal commutative: {}", yes(a.maximal_commutative));
        let _ = writeln!(out, "  alpha-simple: {}", yes(a.alpha_simple));
        let _ = writeln!(out, "  invariants: dimension {}", a.invariants_dim);
        let _ = writeln!(out, "simplicity: {}", verdict_line(&self.simplicity));
        if let Some(w) = &self.simplicity.witness {
            let _ = writeln!(out, "  witness: {} generating an ideal of dimension {}", serde_json::to_string(&w.kind).expect("serializable").trim_matches('"'), w.ideal_dim);
        }
        if let Some(r) = &self.dynamics_simplicity {
            write_conditions(&mut out, r);
        }
        let _ = writeln!(out, "checks");
        for t in &self.theorems {
            let status = match (t.applicable, t.holds) {
                (false, _) => "n/a",
                (true, None) => "not compared",
                (true, Some(true)) => "ok",
                (true, Some(false)) => "FAILED",
            };
            let _ = writeln!(out, "  {}: {status}", t.check);
        }
        out
    }
}

impl DynamicsReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "instance {}", self.name);
        let _ = writeln!(out, "  validation: {}", self.validation);
        write_dynamics(&mut out, &self.dynamics);
        write_conditions(&mut out, &self.dynamics_simplicity);
        let _ = writeln!(out, "simplicity: {}", verdict_line(&self.dynamics_simplicity.verdict));
        out
    }
}

pub fn enveloping_text(name: &str, env: &EnvelopingSystem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "instance {name}");
    let _ = writeln!(out, "enveloping space: {} point(s)", env.size);
    let embed: Vec<String> = env.embed.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(out, "  embedding: [{}]", embed.join(","));
    for (g, b) in env.beta.iter().enumerate() {
        let img: Vec<String> = b.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "  beta_{g}: [{}]", img.join(","));
    }
    let orbits: Vec<Vec<usize>> = env.orbits().into_iter().map(|o| o.into_iter().collect()).collect();
    let _ = writeln!(out, "  orbits: {}", sets(&orbits));
    out
}
