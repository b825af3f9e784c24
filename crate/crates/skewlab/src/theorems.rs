//! Hypothesis/conclusion verification of the library's named results on
//! concrete instances, with three-valued evaluation (bounded checks can be
//! inconclusive) and counterexample hunting across a catalog.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::properties::{
    check_property, AnnKind, Cond, Ext, ExtKind, Instance, PropertyId, PropertyReport, Verdict,
    Witness,
};
use crate::skewpoly::DegreeBound;

/// Structural facts about an instance, decidable without enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atom {
    Prop(PropertyId),
    SigmaIdentity,
    SigmaAutomorphism,
    ModuleRegular,
    /// For every m and every idempotent e of R: m e = m sigma(e).
    IdempotentSigmaFix,
}

/// Three-valued propositional formulas over atoms.
#[derive(Debug, Clone, PartialEq)]
pub enum Formula {
    True,
    Atom(Atom),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    /// Pairwise equivalence of all members.
    AllEqual(Vec<Formula>),
}

fn prop(id: PropertyId) -> Formula {
    Formula::Atom(Atom::Prop(id))
}

fn implies(a: Formula, b: Formula) -> Formula {
    Formula::Implies(Box::new(a), Box::new(b))
}

fn iff(a: Formula, b: Formula) -> Formula {
    Formula::Iff(Box::new(a), Box::new(b))
}

#[derive(Debug, Clone)]
pub struct TheoremSpec {
    pub id: &'static str,
    pub statement: &'static str,
    pub hypothesis: Formula,
    pub conclusion: Formula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "verified")]
    Verified,
    #[serde(rename = "vacuous")]
    Vacuous,
    #[serde(rename = "REFUTED")]
    Refuted,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub instance: String,
    pub degree_bound: usize,
    pub hypotheses_hold: Option<bool>,
    pub conclusion_holds: Option<bool>,
    pub status: Status,
    /// Every property evaluation performed, keyed by property id, so
    /// verdicts and witnesses can be replayed.
    pub witnesses: BTreeMap<String, PropertyReport>,
}

/// Caching three-valued evaluator over one instance. The cache persists
/// across theorems so a suite run checks each property once; `used` tracks
/// what the current theorem touched for its witness map.
pub struct Evaluator<'a> {
    inst: &'a Instance,
    d: DegreeBound,
    budget: u64,
    cache: BTreeMap<String, PropertyReport>,
    used: std::collections::BTreeSet<String>,
}

impl<'a> Evaluator<'a> {
    pub fn new(inst: &'a Instance, d: DegreeBound, budget: u64) -> Self {
        Evaluator {
            inst,
            d,
            budget,
            cache: BTreeMap::new(),
            used: std::collections::BTreeSet::new(),
        }
    }

    fn used_reports(&self) -> BTreeMap<String, PropertyReport> {
        self.used
            .iter()
            .map(|k| (k.clone(), self.cache[k].clone()))
            .collect()
    }

    fn check(&mut self, id: PropertyId) -> Result<Option<bool>, Error> {
        let key = id.as_str().to_string();
        if !self.cache.contains_key(&key) {
            let rep = check_property(self.inst, id, self.d, self.budget)?;
            self.cache.insert(key.clone(), rep);
        }
        self.used.insert(key.clone());
        Ok(self.cache[&key].verdict.truth())
    }

    fn idempotent_sigma_fix(&mut self) -> Option<bool> {
        let key = "idempotent-sigma-fix";
        if !self.cache.contains_key(key) {
            let rep = idempotent_sigma_fix_report(self.inst);
            self.cache.insert(key.to_string(), rep);
        }
        self.used.insert(key.to_string());
        self.cache[key].verdict.truth()
    }

    fn atom(&mut self, a: &Atom) -> Result<Option<bool>, Error> {
        Ok(match a {
            Atom::Prop(id) => self.check(*id)?,
            Atom::SigmaIdentity => Some(self.inst.sigma.is_identity()),
            Atom::SigmaAutomorphism => Some(self.inst.sigma.is_automorphism()),
            Atom::ModuleRegular => Some(self.inst.module.is_regular()),
            Atom::IdempotentSigmaFix => self.idempotent_sigma_fix(),
        })
    }

    /// Kleene evaluation; short-circuits so guarded atoms (e.g. Laurent
    /// checks behind an automorphism test) are never evaluated when the
    /// guard is false.
    pub fn eval(&mut self, f: &Formula) -> Result<Option<bool>, Error> {
        Ok(match f {
            Formula::True => Some(true),
            Formula::Atom(a) => self.atom(a)?,
            Formula::And(fs) => {
                let mut unknown = false;
                let mut result = Some(true);
                for g in fs {
                    match self.eval(g)? {
                        Some(false) => {
                            result = Some(false);
                            break;
                        }
                        None => unknown = true,
                        Some(true) => {}
                    }
                }
                if result == Some(false) {
                    Some(false)
                } else if unknown {
                    None
                } else {
                    Some(true)
                }
            }
            Formula::Or(fs) => {
                let mut unknown = false;
                let mut result = Some(false);
                for g in fs {
                    match self.eval(g)? {
                        Some(true) => {
                            result = Some(true);
                            break;
                        }
                        None => unknown = true,
                        Some(false) => {}
                    }
                }
                if result == Some(true) {
                    Some(true)
                } else if unknown {
                    None
                } else {
                    Some(false)
                }
            }
            Formula::Implies(a, b) => match self.eval(a)? {
                Some(false) => Some(true),
                Some(true) => self.eval(b)?,
                None => match self.eval(b)? {
                    Some(true) => Some(true),
                    _ => None,
                },
            },
            Formula::Iff(a, b) => match (self.eval(a)?, self.eval(b)?) {
                (Some(x), Some(y)) => Some(x == y),
                _ => None,
            },
            Formula::AllEqual(fs) => {
                let mut values = Vec::new();
                for g in fs {
                    values.push(self.eval(g)?);
                }
                let known: Vec<bool> = values.iter().filter_map(|v| *v).collect();
                if known.windows(2).any(|w| w[0] != w[1]) {
                    Some(false)
                } else if values.iter().any(|v| v.is_none()) {
                    None
                } else {
                    Some(true)
                }
            }
        })
    }
}

/// Scan of m e = m sigma(e) over all module elements and ring idempotents.
fn idempotent_sigma_fix_report(inst: &Instance) -> PropertyReport {
    let module = &inst.module;
    let sigma = &inst.sigma;
    for m in module.elements() {
        for &e in &crate::finring::idempotents(&inst.ring) {
            if module.act(m, e) != module.act(m, sigma.apply(e)) {
                return PropertyReport {
                    property: "idempotent-sigma-fix".to_string(),
                    verdict: Verdict::Fails,
                    witness: Some(Witness::Elements { values: vec![m, e] }),
                    degree_bound: None,
                    note: None,
                };
            }
        }
    }
    PropertyReport {
        property: "idempotent-sigma-fix".to_string(),
        verdict: Verdict::Holds,
        witness: None,
        degree_bound: None,
        note: None,
    }
}

/// The builtin result library, in report order (sorted by id).
pub fn builtin_specs() -> Vec<TheoremSpec> {
    use AnnKind::*;
    use Cond::*;
    let pp = prop(PropertyId::Ann(Pp));
    let pq = prop(PropertyId::Ann(PqBaer));
    let poly_pp = prop(PropertyId::Extension(Ext::Poly, ExtKind::Pp));
    let poly_pq = prop(PropertyId::Extension(Ext::Poly, ExtKind::PqBaer));
    let series_pq = prop(PropertyId::Extension(Ext::TruncatedSeries, ExtKind::PqBaer));
    let laurent_pp = prop(PropertyId::Extension(Ext::Laurent, ExtKind::Pp));
    let poly_semi = prop(PropertyId::Extension(Ext::Poly, ExtKind::Semicommutative));
    let series_semi = prop(PropertyId::Extension(Ext::TruncatedSeries, ExtKind::Semicommutative));
    let armendariz = prop(PropertyId::SkewArmendariz);
    let four = vec![pp.clone(), pq.clone(), poly_pp.clone(), poly_pq.clone()];

    let mut specs = vec![
        TheoremSpec {
            id: "lemma_2_2",
            statement: "under either annihilator-transfer condition, idempotents act through sigma unchanged: m e = m sigma(e)",
            hypothesis: Formula::Or(vec![prop(PropertyId::Cond(C1)), prop(PropertyId::Cond(C2))]),
            conclusion: Formula::Atom(Atom::IdempotentSigmaFix),
        },
        TheoremSpec {
            id: "prop_2_3_1",
            statement: "a p.q.-Baer module satisfying C2 has a p.q.-Baer skew polynomial extension",
            hypothesis: Formula::And(vec![pq.clone(), prop(PropertyId::Cond(C2))]),
            conclusion: poly_pq.clone(),
        },
        TheoremSpec {
            id: "prop_2_3_2",
            statement: "if the skew polynomial or truncated series extension is p.q.-Baer and C1 holds, the base module is p.q.-Baer",
            hypothesis: Formula::And(vec![
                Formula::Or(vec![poly_pq.clone(), series_pq.clone()]),
                prop(PropertyId::Cond(C1)),
            ]),
            conclusion: pq.clone(),
        },
        TheoremSpec {
            id: "cor_2_4",
            statement: "for untwisted polynomials, the module is p.q.-Baer iff its polynomial extension is",
            hypothesis: Formula::Atom(Atom::SigmaIdentity),
            conclusion: iff(pq.clone(), poly_pq.clone()),
        },
        TheoremSpec {
            id: "cor_2_5",
            statement: "the ring case of the untwisted equivalence, via the regular module",
            hypothesis: Formula::And(vec![
                Formula::Atom(Atom::SigmaIdentity),
                Formula::Atom(Atom::ModuleRegular),
            ]),
            conclusion: iff(pq.clone(), poly_pq.clone()),
        },
        TheoremSpec {
            id: "cor_2_6_7",
            statement: "for compatible modules the p.q.-Baer property descends from either extension, transfers to polynomials, and under sigma-reducedness ascends as well",
            hypothesis: prop(PropertyId::Cond(Compatible)),
            conclusion: Formula::And(vec![
                implies(Formula::Or(vec![poly_pq.clone(), series_pq.clone()]), pq.clone()),
                iff(pq.clone(), poly_pq.clone()),
                implies(
                    prop(PropertyId::Cond(SigmaReduced)),
                    implies(pq.clone(), Formula::Or(vec![poly_pq.clone(), series_pq.clone()])),
                ),
            ]),
        },
        TheoremSpec {
            id: "prop_3_1",
            statement: "for skew Armendariz modules with C2, the p.p. property transfers to the polynomial extension, and to the Laurent extension when sigma is invertible",
            hypothesis: Formula::And(vec![armendariz.clone(), prop(PropertyId::Cond(C2))]),
            conclusion: Formula::And(vec![
                iff(pp.clone(), poly_pp.clone()),
                implies(Formula::Atom(Atom::SigmaAutomorphism), iff(pp.clone(), laurent_pp)),
            ]),
        },
        TheoremSpec {
            id: "lemma_3_3",
            statement: "semicommutative modules with the (*)-condition are sigma-skew Armendariz",
            hypothesis: Formula::And(vec![
                prop(PropertyId::Cond(Semicommutative)),
                prop(PropertyId::Cond(Star)),
            ]),
            conclusion: armendariz.clone(),
        },
        TheoremSpec {
            id: "prop_3_4",
            statement: "semicommutative modules with the (*)-condition have semicommutative polynomial and truncated series extensions",
            hypothesis: Formula::And(vec![
                prop(PropertyId::Cond(Semicommutative)),
                prop(PropertyId::Cond(Star)),
            ]),
            conclusion: Formula::And(vec![poly_semi.clone(), series_semi.clone()]),
        },
        TheoremSpec {
            id: "cor_3_5",
            statement: "semicommutative C1 modules that are p.q.-Baer or p.p. have semicommutative extensions",
            hypothesis: Formula::And(vec![
                prop(PropertyId::Cond(Semicommutative)),
                prop(PropertyId::Cond(C1)),
                Formula::Or(vec![pq.clone(), pp.clone()]),
            ]),
            conclusion: Formula::And(vec![poly_semi, series_semi]),
        },
        TheoremSpec {
            id: "thm_3_6",
            statement: "for semicommutative compatible modules, p.p., p.q.-Baer, and their polynomial counterparts are all equivalent",
            hypothesis: Formula::And(vec![
                prop(PropertyId::Cond(Semicommutative)),
                prop(PropertyId::Cond(Compatible)),
            ]),
            conclusion: Formula::AllEqual(four.clone()),
        },
        TheoremSpec {
            id: "cor_3_7",
            statement: "the untwisted case of the four-way equivalence for semicommutative modules",
            hypothesis: Formula::And(vec![
                Formula::Atom(Atom::SigmaIdentity),
                prop(PropertyId::Cond(Semicommutative)),
            ]),
            conclusion: Formula::AllEqual(four.clone()),
        },
        TheoremSpec {
            id: "cor_3_8",
            statement: "the untwisted four-way equivalence for reduced modules",
            hypothesis: Formula::And(vec![
                Formula::Atom(Atom::SigmaIdentity),
                prop(PropertyId::Cond(Reduced)),
            ]),
            conclusion: Formula::AllEqual(four),
        },
        TheoremSpec {
            id: "remark_pre_3_3",
            statement: "semicommutative (*)-modules are sigma-semicommutative and satisfy C1",
            hypothesis: Formula::And(vec![
                prop(PropertyId::Cond(Semicommutative)),
                prop(PropertyId::Cond(Star)),
            ]),
            conclusion: Formula::And(vec![
                prop(PropertyId::Cond(SigmaSemicommutative)),
                prop(PropertyId::Cond(C1)),
            ]),
        },
        TheoremSpec {
            id: "remark_def_2_1",
            statement: "compatibility is exactly the conjunction of C1 and C2",
            hypothesis: Formula::True,
            conclusion: iff(
                prop(PropertyId::Cond(Compatible)),
                Formula::And(vec![prop(PropertyId::Cond(C1)), prop(PropertyId::Cond(C2))]),
            ),
        },
    ];
    specs.sort_by_key(|s| s.id);
    specs
}

pub fn find_spec(id: &str) -> Result<TheoremSpec, Error> {
    builtin_specs()
        .into_iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::Unknown(format!("theorem '{id}'")))
}

/// Evaluates one spec on one instance. The conclusion is evaluated even
/// when the hypotheses fail, so vacuous reports still record whether the
/// conclusion happens to hold.
pub fn run_theorem(
    spec: &TheoremSpec,
    inst: &Instance,
    d: DegreeBound,
    budget: u64,
) -> Result<TheoremReport, Error> {
    let mut ev = Evaluator::new(inst, d, budget);
    run_theorem_with(spec, &mut ev)
}

/// Same, reusing an evaluator (and its property cache) across theorems.
pub fn run_theorem_with(spec: &TheoremSpec, ev: &mut Evaluator) -> Result<TheoremReport, Error> {
    ev.used.clear();
    let inst = ev.inst;
    let hypotheses_hold = ev.eval(&spec.hypothesis)?;
    let conclusion_holds = ev.eval(&spec.conclusion)?;
    let status = match (hypotheses_hold, conclusion_holds) {
        (Some(false), _) => Status::Vacuous,
        (Some(true), Some(true)) => Status::Verified,
        (Some(true), Some(false)) => Status::Refuted,
        (Some(true), None) | (None, _) => Status::Inconclusive,
    };
    Ok(TheoremReport {
        theorem: spec.id.to_string(),
        instance: inst.id.clone(),
        degree_bound: ev.d.0,
        hypotheses_hold,
        conclusion_holds,
        status,
        witnesses: ev.used_reports(),
    })
}

/// Runs every builtin spec on one instance, ordered by theorem id.
pub fn run_suite(inst: &Instance, d: DegreeBound, budget: u64) -> Result<Vec<TheoremReport>, Error> {
    let mut ev = Evaluator::new(inst, d, budget);
    builtin_specs()
        .iter()
        .map(|spec| run_theorem_with(spec, &mut ev))
        .collect()
}

/// Sweeps a spec across instances; returns the anomalies (everything not
/// verified) ordered by instance id, plus the count of verified instances.
pub fn hunt(
    instances: &[Instance],
    spec: &TheoremSpec,
    d: DegreeBound,
    budget: u64,
) -> Result<(Vec<TheoremReport>, usize), Error> {
    let mut reports: Vec<TheoremReport> = instances
        .iter()
        .map(|inst| run_theorem(spec, inst, d, budget))
        .collect::<Result<_, _>>()?;
    reports.sort_by(|a, b| a.instance.cmp(&b.instance));
    let verified = reports.iter().filter(|r| r.status == Status::Verified).count();
    reports.retain(|r| r.status != Status::Verified);
    Ok((reports, verified))
}
