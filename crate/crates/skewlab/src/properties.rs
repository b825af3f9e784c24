//! Decision procedures for the module/ring conditions under study, over
//! finite instances and bounded-degree skew extensions, including the
//! constructive idempotent-product witness.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::finmod::{
    annihilator, annihilator_lattice, cyclic_annihilator, element_annihilator, submodules,
    verify_module_axioms, AnnMode, ModuleTable,
};
use crate::finring::{
    find_idempotent_generator, idempotents, principal_right_ideal, verify_ring_axioms, Elem,
    Endomorphism, RightIdeal, RingTable,
};
use crate::skewpoly::{monomial_test_schedule, DegreeBound};

/// Default enumeration budget: maximum number of (m(x), f(x)) pairs a
/// bounded check may enumerate before reporting inconclusive.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A verified triple (R, sigma, M).
#[derive(Debug, Clone)]
pub struct Instance {
    pub ring: Arc<RingTable>,
    pub sigma: Arc<Endomorphism>,
    pub module: Arc<ModuleTable>,
    pub id: String,
}

impl Instance {
    pub fn new(
        ring: Arc<RingTable>,
        sigma: Arc<Endomorphism>,
        module: Arc<ModuleTable>,
    ) -> Result<Self, Error> {
        if sigma.ring != ring {
            return Err(Error::Contract(format!(
                "sigma {} does not belong to ring {}",
                sigma.name, ring.name
            )));
        }
        if module.ring != ring {
            return Err(Error::Contract(format!(
                "module {} is not over ring {}",
                module.name, ring.name
            )));
        }
        verify_ring_axioms(&ring)?;
        crate::finring::verify_endomorphism(ring.clone(), &sigma.name, sigma.map.clone())?;
        verify_module_axioms(&module)?;
        let id = format!("{}/{}/{}", ring.name, sigma.name, module.name);
        Ok(Instance { ring, sigma, module, id })
    }
}

/// Elementwise conditions, quantified over M x R (and an extra ring element
/// where stated).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cond {
    C1,
    C2,
    Compatible,
    Semicommutative,
    SigmaSemicommutative,
    Reduced,
    SigmaReduced,
    Star,
}

/// Annihilator-generation properties at the base module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AnnKind {
    Pp,
    PqBaer,
    QuasiBaer,
    Baer,
}

/// Which extension of M the bounded check works in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ext {
    Poly,
    Laurent,
    TruncatedSeries,
}

/// Which property is checked at the extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtKind {
    Pp,
    PqBaer,
    Semicommutative,
}

/// Stable string identifiers for every checkable property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropertyId {
    Cond(Cond),
    Ann(AnnKind),
    SkewArmendariz,
    Extension(Ext, ExtKind),
}

impl PropertyId {
    pub fn as_str(&self) -> &'static str {
        match self {
            PropertyId::Cond(Cond::C1) => "c1",
            PropertyId::Cond(Cond::C2) => "c2",
            PropertyId::Cond(Cond::Compatible) => "compatible",
            PropertyId::Cond(Cond::Semicommutative) => "semicommutative",
            PropertyId::Cond(Cond::SigmaSemicommutative) => "sigma-semicommutative",
            PropertyId::Cond(Cond::Reduced) => "reduced",
            PropertyId::Cond(Cond::SigmaReduced) => "sigma-reduced",
            PropertyId::Cond(Cond::Star) => "star",
            PropertyId::Ann(AnnKind::Pp) => "pp",
            PropertyId::Ann(AnnKind::PqBaer) => "pq-baer",
            PropertyId::Ann(AnnKind::QuasiBaer) => "quasi-baer",
            PropertyId::Ann(AnnKind::Baer) => "baer",
            PropertyId::SkewArmendariz => "sigma-skew-armendariz",
            PropertyId::Extension(Ext::Poly, ExtKind::Pp) => "poly-pp",
            PropertyId::Extension(Ext::Poly, ExtKind::PqBaer) => "poly-pq-baer",
            PropertyId::Extension(Ext::Poly, ExtKind::Semicommutative) => "poly-semicommutative",
            PropertyId::Extension(Ext::Laurent, ExtKind::Pp) => "laurent-pp",
            PropertyId::Extension(Ext::Laurent, ExtKind::PqBaer) => "laurent-pq-baer",
            PropertyId::Extension(Ext::Laurent, ExtKind::Semicommutative) => {
                "laurent-semicommutative"
            }
            PropertyId::Extension(Ext::TruncatedSeries, ExtKind::Pp) => "series-pp",
            PropertyId::Extension(Ext::TruncatedSeries, ExtKind::PqBaer) => "series-pq-baer",
            PropertyId::Extension(Ext::TruncatedSeries, ExtKind::Semicommutative) => {
                "series-semicommutative"
            }
        }
    }

    pub fn all() -> Vec<PropertyId> {
        use AnnKind::*;
        use Cond::*;
        let mut v: Vec<PropertyId> = [C1, C2, Compatible, Semicommutative, SigmaSemicommutative, Reduced, SigmaReduced, Star]
            .into_iter()
            .map(PropertyId::Cond)
            .collect();
        v.extend([Pp, PqBaer, QuasiBaer, Baer].into_iter().map(PropertyId::Ann));
        v.push(PropertyId::SkewArmendariz);
        for e in [Ext::Poly, Ext::Laurent, Ext::TruncatedSeries] {
            for k in [ExtKind::Pp, ExtKind::PqBaer, ExtKind::Semicommutative] {
                v.push(PropertyId::Extension(e, k));
            }
        }
        v
    }
}

impl std::str::FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        PropertyId::all()
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::Unknown(format!("property '{s}'")))
    }
}

impl std::fmt::Display for PropertyId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    HoldsUpToDegree,
    Inconclusive,
}

impl Verdict {
    /// Three-valued truth: inconclusive maps to None.
    pub fn truth(&self) -> Option<bool> {
        match self {
            Verdict::Holds | Verdict::HoldsUpToDegree => Some(true),
            Verdict::Fails => Some(false),
            Verdict::Inconclusive => None,
        }
    }
}

/// Replayable counterexample or witness data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// The least witnessing tuple of an elementwise condition, in the order
    /// the condition quantifies (m, a[, extra]).
    Elements { values: Vec<usize> },
    /// An annihilator with no idempotent generator.
    Annihilator { source: String, elements: Vec<usize> },
    /// A constructive idempotent.
    Idempotent { e: usize },
    /// A pair (m(x), f(x)) violating a bounded check; for Armendariz
    /// failures (i, j) locates the nonzero cross product.
    PolyPair {
        m: Vec<usize>,
        f: Vec<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        i: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        j: Option<usize>,
    },
    /// A monomial b x^k breaking a semicommutativity-style sandwich.
    PolyMonomial { m: Vec<usize>, f: Vec<usize>, b: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl PropertyReport {
    fn holds(property: &PropertyId) -> Self {
        PropertyReport {
            property: property.as_str().to_string(),
            verdict: Verdict::Holds,
            witness: None,
            degree_bound: None,
            note: None,
        }
    }

    fn holds_up_to(property: &PropertyId, d: usize, note: Option<String>) -> Self {
        PropertyReport {
            property: property.as_str().to_string(),
            verdict: Verdict::HoldsUpToDegree,
            witness: None,
            degree_bound: Some(d),
            note,
        }
    }

    fn fails(property: &PropertyId, witness: Witness, d: Option<usize>) -> Self {
        PropertyReport {
            property: property.as_str().to_string(),
            verdict: Verdict::Fails,
            witness: Some(witness),
            degree_bound: d,
            note: None,
        }
    }

    fn inconclusive(property: &PropertyId, note: String, d: Option<usize>) -> Self {
        PropertyReport {
            property: property.as_str().to_string(),
            verdict: Verdict::Inconclusive,
            witness: None,
            degree_bound: d,
            note: Some(note),
        }
    }
}

/// Exhaustive scan of an elementwise condition; failing verdicts carry the
/// least witness in scan order.
pub fn check_elementwise_condition(inst: &Instance, cond: Cond) -> PropertyReport {
    let id = PropertyId::Cond(cond);
    let r = &*inst.ring;
    let m = &*inst.module;
    let s = &*inst.sigma;
    let zero = m.zero;
    match cond {
        Cond::C1 => {
            for x in m.elements() {
                for a in r.elements() {
                    if m.act(x, a) == zero && m.act(x, s.apply(a)) != zero {
                        return PropertyReport::fails(&id, Witness::Elements { values: vec![x, a] }, None);
                    }
                }
            }
            PropertyReport::holds(&id)
        }
        Cond::C2 => {
            for x in m.elements() {
                for a in r.elements() {
                    if m.act(x, s.apply(a)) == zero && m.act(x, a) != zero {
                        return PropertyReport::fails(&id, Witness::Elements { values: vec![x, a] }, None);
                    }
                }
            }
            PropertyReport::holds(&id)
        }
        Cond::Compatible => {
            for x in m.elements() {
                for a in r.elements() {
                    if (m.act(x, a) == zero) != (m.act(x, s.apply(a)) == zero) {
                        return PropertyReport::fails(&id, Witness::Elements { values: vec![x, a] }, None);
                    }
                }
            }
            PropertyReport::holds(&id)
        }
        Cond::Semicommutative => {
            for x in m.elements() {
                for a in r.elements() {
                    if m.act(x, a) != zero {
                        continue;
                    }
                    for t in r.elements() {
                        if m.act(m.act(x, t), a) != zero {
                            return PropertyReport::fails(
                                &id,
                                Witness::Elements { values: vec![x, a, t] },
                                None,
                            );
                        }
                    }
                }
            }
            PropertyReport::holds(&id)
        }
        Cond::SigmaSemicommutative => {
            for x in m.elements() {
                for a in r.elements() {
                    if m.act(x, a) != zero {
                        continue;
                    }
                    let sa = s.apply(a);
                    for t in r.elements() {
                        if m.act(m.act(x, t), sa) != zero {
                            return PropertyReport::fails(
                                &id,
                                Witness::Elements { values: vec![x, a, t] },
                                None,
                            );
                        }
                    }
                }
            }
            PropertyReport::holds(&id)
        }
        Cond::Reduced => {
            for x in m.elements() {
                for a in r.elements() {
                    if m.act(x, r.prod(a, a)) != zero {
                        continue;
                    }
                    if let Some(c) = orbit_intersection_violation(m, x, a) {
                        return PropertyReport::fails(
                            &id,
                            Witness::Elements { values: vec![x, a, c] },
                            None,
                        );
                    }
                }
            }
            PropertyReport::holds(&id)
        }
        Cond::SigmaReduced => {
            // clause (1): ma = 0 implies mR intersect Ma = 0
            for x in m.elements() {
                for a in r.elements() {
                    if m.act(x, a) != zero {
                        continue;
                    }
                    if let Some(c) = orbit_intersection_violation(m, x, a) {
                        return PropertyReport::fails(
                            &id,
                            Witness::Elements { values: vec![x, a, c] },
                            None,
                        );
                    }
                }
            }
            // clause (2): sigma-compatibility
            let compat = check_elementwise_condition(inst, Cond::Compatible);
            if compat.verdict == Verdict::Fails {
                return PropertyReport {
                    property: id.as_str().to_string(),
                    ..compat
                };
            }
            PropertyReport::holds(&id)
        }
        Cond::Star => {
            for x in m.elements() {
                for a in r.elements() {
                    let t = m.act(x, s.apply(a));
                    if m.act(t, a) == zero && t != zero {
                        return PropertyReport::fails(&id, Witness::Elements { values: vec![x, a] }, None);
                    }
                }
            }
            PropertyReport::holds(&id)
        }
    }
}

/// First nonzero element of mR intersect Ma, if any.
fn orbit_intersection_violation(m: &ModuleTable, x: Elem, a: Elem) -> Option<Elem> {
    let mr: BTreeSet<Elem> = m.ring.elements().map(|t| m.act(x, t)).collect();
    let ma: BTreeSet<Elem> = m.elements().map(|n| m.act(n, a)).collect();
    mr.intersection(&ma).copied().find(|&c| c != m.zero)
}

/// Checks that every required annihilator is generated by an idempotent.
pub fn check_annihilator_property(inst: &Instance, kind: AnnKind) -> PropertyReport {
    let id = PropertyId::Ann(kind);
    let ring = &inst.ring;
    let module = &inst.module;
    let required: Vec<(String, BTreeSet<Elem>)> = match kind {
        AnnKind::Pp => module
            .elements()
            .map(|m| {
                let a = element_annihilator(module, m);
                (a.source, a.elements)
            })
            .collect(),
        AnnKind::PqBaer => module
            .elements()
            .map(|m| {
                let a = cyclic_annihilator(module, m);
                (a.source, a.elements)
            })
            .collect(),
        AnnKind::QuasiBaer => match submodules(module) {
            Err(e) => {
                return PropertyReport::inconclusive(&id, e.to_string(), None);
            }
            Ok(subs) => subs
                .into_iter()
                .map(|n| {
                    let a = annihilator(module, &n, AnnMode::Set)
                        .unwrap_or_else(|_| annihilator(module, &BTreeSet::from([module.zero]), AnnMode::Set).unwrap());
                    (format!("r({:?})", n.iter().collect::<Vec<_>>()), a.elements)
                })
                .collect(),
        },
        AnnKind::Baer => annihilator_lattice(module)
            .into_iter()
            .map(|a| (format!("r(X) = {:?}", a.elements.iter().collect::<Vec<_>>()), a.elements))
            .collect(),
    };
    for (source, elements) in required {
        let ideal = RightIdeal { elements: elements.clone() };
        match find_idempotent_generator(ring, &ideal) {
            Ok(Some(_)) => {}
            Ok(None) => {
                return PropertyReport::fails(
                    &id,
                    Witness::Annihilator {
                        source,
                        elements: elements.into_iter().collect(),
                    },
                    None,
                );
            }
            Err(e) => {
                return PropertyReport::inconclusive(&id, e.to_string(), None);
            }
        }
    }
    PropertyReport::holds(&id)
}

/// All polynomials of degree <= d over an alphabet of n coefficient
/// indices, as normalized coefficient vectors (no trailing zeros; the zero
/// polynomial is the empty vector). There are exactly n^(d+1) of them.
pub fn polys_up_to(n: usize, d: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![vec![]];
    for len in 1..=d + 1 {
        let total = n.pow(len as u32);
        for code in 0..total {
            let mut v = Vec::with_capacity(len);
            let mut c = code;
            for _ in 0..len {
                v.push(c % n);
                c /= n;
            }
            if v[len - 1] != 0 {
                out.push(v);
            }
        }
    }
    out
}

/// All coefficient vectors of exactly length `len` (truncated-series
/// representatives).
pub fn all_vectors(n: usize, len: usize) -> Vec<Vec<Elem>> {
    let total = n.pow(len as u32);
    (0..total)
        .map(|code| {
            let mut v = Vec::with_capacity(len);
            let mut c = code;
            for _ in 0..len {
                v.push(c % n);
                c /= n;
            }
            v
        })
        .collect()
}

fn pair_budget(msize: usize, rsize: usize, d: usize, budget: u64) -> Result<(), String> {
    let pairs = (msize as u128)
        .checked_pow(d as u32 + 1)
        .and_then(|a| a.checked_mul((rsize as u128).pow(d as u32 + 1)));
    match pairs {
        Some(p) if p <= budget as u128 => Ok(()),
        Some(p) => Err(format!(
            "enumeration needs {msize}^{} * {rsize}^{} = {p} pairs, budget is {budget}",
            d + 1,
            d + 1
        )),
        None => Err(format!("enumeration size overflows at degree {d}, budget is {budget}")),
    }
}

/// Coefficient-by-coefficient product m(x) * (b x^k) * phi(x), testing for
/// zero with early exit. `trunc` limits output exponents to <= D for the
/// truncated-series quotient.
fn sandwich_is_zero(
    module: &ModuleTable,
    sigma: &Endomorphism,
    mc: &[Elem],
    b: Elem,
    k: usize,
    phi: &[Elem],
    trunc: Option<usize>,
) -> bool {
    if mc.is_empty() || phi.is_empty() {
        return true;
    }
    let zero = module.zero;
    for s in 0..mc.len() + phi.len() - 1 {
        if let Some(d) = trunc {
            if s + k > d {
                break;
            }
        }
        let mut acc = zero;
        let lo = s.saturating_sub(phi.len() - 1);
        let hi = s.min(mc.len() - 1);
        for i in lo..=hi {
            let j = s - i;
            let mi = mc[i];
            if mi == zero {
                continue;
            }
            let tb = module.act(mi, sigma.power(i, b));
            if tb == zero {
                continue;
            }
            acc = module.sum(acc, module.act(tb, sigma.power(i + k, phi[j])));
        }
        if acc != zero {
            return false;
        }
    }
    true
}

/// m(x) * f(x) = 0 test (plain action, optional truncation).
fn action_is_zero(
    module: &ModuleTable,
    sigma: &Endomorphism,
    mc: &[Elem],
    fc: &[Elem],
    trunc: Option<usize>,
) -> bool {
    sandwich_is_zero(module, sigma, mc, module.ring.one, 0, fc, trunc)
}

/// Enumerates all zero products m(x)f(x) = 0 at degree <= D and checks the
/// cross products m_i sigma^i(a_j) = 0.
pub fn check_skew_armendariz(inst: &Instance, d: DegreeBound, budget: u64) -> PropertyReport {
    let id = PropertyId::SkewArmendariz;
    let module = &*inst.module;
    let sigma = &*inst.sigma;
    if let Err(note) = pair_budget(module.size, inst.ring.size, d.0, budget) {
        return PropertyReport::inconclusive(&id, note, Some(d.0));
    }
    let mpolys = polys_up_to(module.size, d.0);
    let rpolys = polys_up_to(inst.ring.size, d.0);
    for mc in &mpolys {
        for fc in &rpolys {
            if !action_is_zero(module, sigma, mc, fc, None) {
                continue;
            }
            for (i, &mi) in mc.iter().enumerate() {
                for (j, &aj) in fc.iter().enumerate() {
                    if module.act(mi, sigma.power(i, aj)) != module.zero {
                        return PropertyReport::fails(
                            &id,
                            Witness::PolyPair {
                                m: mc.clone(),
                                f: fc.clone(),
                                i: Some(i),
                                j: Some(j),
                            },
                            Some(d.0),
                        );
                    }
                }
            }
        }
    }
    PropertyReport::holds_up_to(&id, d.0, None)
}

/// Outcome of the constructive idempotent-product witness e = e_0 e_1 ... e_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PqWitnessOutcome {
    /// e with eR equal to the intersection of the coefficient annihilators.
    Witness { e: Elem },
    /// Coefficient `index` has an annihilator with no idempotent generator.
    NoGenerator { index: usize },
    /// All e_i exist but e_0...e_n fails to generate the intersection; the
    /// construction's hypotheses do not hold here.
    ProductMismatch { e: Elem },
}

fn idempotent_product_witness(
    inst: &Instance,
    coeffs: &[Elem],
    per_coeff: impl Fn(Elem) -> BTreeSet<Elem>,
) -> PqWitnessOutcome {
    let ring = &*inst.ring;
    let mut es = Vec::new();
    let mut intersection: BTreeSet<Elem> = ring.elements().collect();
    for (index, &mi) in coeffs.iter().enumerate() {
        let ann = per_coeff(mi);
        let ideal = RightIdeal { elements: ann.clone() };
        match find_idempotent_generator(ring, &ideal) {
            Ok(Some(e)) => es.push(e),
            _ => return PqWitnessOutcome::NoGenerator { index },
        }
        intersection = intersection.intersection(&ann).copied().collect();
    }
    let e = es.iter().fold(ring.one, |acc, &ei| ring.prod(acc, ei));
    if principal_right_ideal(ring, e).elements == intersection {
        PqWitnessOutcome::Witness { e }
    } else {
        PqWitnessOutcome::ProductMismatch { e }
    }
}

/// The constructive p.q.-Baer witness: e = e_0 e_1 ... e_n where
/// e_i generates r_R(m_i R); asserts eR equals the intersection of the
/// coefficient annihilators and reports a mismatch instead of returning an
/// unsound witness.
pub fn pq_baer_witness(inst: &Instance, coeffs: &[Elem]) -> PqWitnessOutcome {
    let mut c = coeffs.to_vec();
    crate::skewpoly::normalize(&mut c);
    idempotent_product_witness(inst, &c, |mi| cyclic_annihilator(&inst.module, mi).elements)
}

/// The analogous p.p. witness with per-element annihilators r_R(m_i).
pub fn pp_witness(inst: &Instance, coeffs: &[Elem]) -> PqWitnessOutcome {
    let mut c = coeffs.to_vec();
    crate::skewpoly::normalize(&mut c);
    idempotent_product_witness(inst, &c, |mi| element_annihilator(&inst.module, mi).elements)
}

struct ExtCtx<'a> {
    module: &'a ModuleTable,
    ring: &'a RingTable,
    sigma: &'a Endomorphism,
    schedule: Vec<usize>,
    trunc: Option<usize>,
}

impl ExtCtx<'_> {
    /// Membership of phi in the relevant annihilator of m(x). For p.p. this
    /// is m(x) phi = 0; for p.q.-Baer, m(x) g phi = 0 for all g, reduced to
    /// monomials g = b x^k over the finite exponent schedule. Both tests
    /// are exact (no truncation besides the series quotient itself).
    fn in_ann(&self, kind: ExtKind, mc: &[Elem], phi: &[Elem]) -> bool {
        match kind {
            ExtKind::Pp => action_is_zero(self.module, self.sigma, mc, phi, self.trunc),
            ExtKind::PqBaer => self.schedule.iter().all(|&k| {
                self.ring
                    .elements()
                    .all(|b| sandwich_is_zero(self.module, self.sigma, mc, b, k, phi, self.trunc))
            }),
            ExtKind::Semicommutative => unreachable!(),
        }
    }

    /// phi in E R[x;sigma] for an idempotent E, i.e. E phi = phi.
    fn covered(&self, e_poly: &[Elem], phi: &[Elem]) -> bool {
        let prod = self.ring_product(e_poly, phi);
        let mut p = phi.to_vec();
        match self.trunc {
            Some(d) => {
                p.resize(d + 1, 0);
                prod == p
            }
            None => {
                crate::skewpoly::normalize(&mut p);
                prod == p
            }
        }
    }

    fn ring_product(&self, f: &[Elem], g: &[Elem]) -> Vec<Elem> {
        let mut out = match self.trunc {
            Some(d) => vec![0; d + 1],
            None => vec![0; (f.len() + g.len()).saturating_sub(1)],
        };
        for (i, &fi) in f.iter().enumerate() {
            if fi == 0 {
                continue;
            }
            for (j, &gj) in g.iter().enumerate() {
                let k = i + j;
                if k >= out.len() {
                    continue;
                }
                out[k] = self.ring.sum(out[k], self.ring.prod(fi, self.sigma.power(i, gj)));
            }
        }
        if self.trunc.is_none() {
            crate::skewpoly::normalize(&mut out);
        }
        out
    }

    fn is_idempotent_poly(&self, e: &[Elem]) -> bool {
        let sq = self.ring_product(e, e);
        let mut en = e.to_vec();
        match self.trunc {
            Some(d) => {
                en.resize(d + 1, 0);
                sq == en
            }
            None => {
                crate::skewpoly::normalize(&mut en);
                sq == en
            }
        }
    }
}

/// Bounded-degree check that the chosen extension of M has the given
/// property.
///
/// For p.p./p.q.-Baer the search is for constant idempotent witnesses, as
/// produced by the constructive proofs; when no constant witness generates
/// some annihilator the procedure distinguishes a degree-bounded refutation
/// (no idempotent of degree <= D works: fails) from the regime where a
/// non-constant idempotent is needed (inconclusive).
///
/// For the Laurent extension (automorphisms only), offsets are units, so a
/// polynomial annihilates m(x) R[x,x^-1;sigma] iff all its unit shifts do;
/// the enumeration therefore ranges over polynomial representatives and the
/// exponent schedule, which covers all integer powers of sigma.
pub fn check_extension_property(
    inst: &Instance,
    ext: Ext,
    kind: ExtKind,
    d: DegreeBound,
    budget: u64,
) -> Result<PropertyReport, Error> {
    let id = PropertyId::Extension(ext, kind);
    if ext == Ext::Laurent && !inst.sigma.is_automorphism() {
        return Err(Error::Unsupported(format!(
            "Laurent extension requires an automorphism, {} is not invertible",
            inst.sigma.name
        )));
    }
    let module = &*inst.module;
    let ring = &*inst.ring;
    let sigma = &*inst.sigma;
    if let Err(note) = pair_budget(module.size, ring.size, d.0, budget) {
        return Ok(PropertyReport::inconclusive(&id, note, Some(d.0)));
    }
    let trunc = match ext {
        Ext::TruncatedSeries => Some(d.0),
        _ => None,
    };
    let schedule: Vec<usize> = match trunc {
        Some(dd) => monomial_test_schedule(sigma).into_iter().filter(|&k| k <= dd).collect(),
        None => monomial_test_schedule(sigma),
    };
    let ctx = ExtCtx { module, ring, sigma, schedule, trunc };
    let (mpolys, rpolys) = match trunc {
        Some(dd) => (all_vectors(module.size, dd + 1), all_vectors(ring.size, dd + 1)),
        None => (polys_up_to(module.size, d.0), polys_up_to(ring.size, d.0)),
    };
    let note = trunc.map(|dd| {
        format!("truncated power series: verified in the quotient modulo x^{}", dd + 1)
    });

    if kind == ExtKind::Semicommutative {
        for mc in &mpolys {
            for fc in &rpolys {
                if !action_is_zero(module, sigma, mc, fc, trunc) {
                    continue;
                }
                for &k in &ctx.schedule {
                    for b in ring.elements() {
                        if !sandwich_is_zero(module, sigma, mc, b, k, fc, trunc) {
                            let mut rep = PropertyReport::fails(
                                &id,
                                Witness::PolyMonomial { m: mc.clone(), f: fc.clone(), b, k },
                                Some(d.0),
                            );
                            rep.note = note.clone();
                            return Ok(rep);
                        }
                    }
                }
            }
        }
        return Ok(PropertyReport::holds_up_to(&id, d.0, note));
    }

    let constant_idempotents = idempotents(ring);
    for mc in &mpolys {
        // candidate order: the constructive product witness first, then all
        // constant idempotents ascending.
        let canonical = match kind {
            ExtKind::Pp => pp_witness(inst, mc),
            ExtKind::PqBaer => pq_baer_witness(inst, mc),
            ExtKind::Semicommutative => unreachable!(),
        };
        let mut candidates: Vec<Elem> = Vec::new();
        if let PqWitnessOutcome::Witness { e } = canonical {
            candidates.push(e);
        }
        for &e in &constant_idempotents {
            if !candidates.contains(&e) {
                candidates.push(e);
            }
        }
        let mut found = false;
        for &e in &candidates {
            if !ctx.in_ann(kind, mc, &[e]) {
                continue;
            }
            let ok = rpolys
                .iter()
                .all(|phi| ctx.covered(&[e], phi) || !ctx.in_ann(kind, mc, phi));
            if ok {
                found = true;
                break;
            }
        }
        if found {
            continue;
        }
        // no constant witness: collect the bounded annihilator and look for
        // a non-constant idempotent of degree <= D that generates it.
        let ann: Vec<&Vec<Elem>> = rpolys.iter().filter(|phi| ctx.in_ann(kind, mc, phi)).collect();
        let mut nonconstant_works = false;
        for e_poly in &rpolys {
            if e_poly.len() < 2 || !ctx.is_idempotent_poly(e_poly) {
                continue;
            }
            if ctx.in_ann(kind, mc, e_poly) && ann.iter().all(|phi| ctx.covered(e_poly, phi)) {
                nonconstant_works = true;
                break;
            }
        }
        if nonconstant_works {
            let mut msg = format!(
                "annihilator of m(x) with coefficients {mc:?} is generated only by a non-constant idempotent at degree <= {}",
                d.0
            );
            if let Some(extra) = &note {
                msg.push_str("; ");
                msg.push_str(extra);
            }
            return Ok(PropertyReport::inconclusive(&id, msg, Some(d.0)));
        }
        // genuinely no idempotent of degree <= D generates: report the best
        // constant candidate's first uncovered annihilator member.
        let mut best: Option<(usize, Elem)> = None;
        for &e in &constant_idempotents {
            if !ctx.in_ann(kind, mc, &[e]) {
                continue;
            }
            let cover = ann.iter().take_while(|phi| ctx.covered(&[e], phi)).count();
            let better = match best {
                None => true,
                Some((c, _)) => cover > c,
            };
            if better {
                best = Some((cover, e));
            }
        }
        let phi_witness = match best {
            Some((_, e)) => ann
                .iter()
                .find(|phi| !ctx.covered(&[e], phi))
                .map(|p| (*p).clone())
                .unwrap_or_default(),
            None => ann.first().map(|p| (*p).clone()).unwrap_or_default(),
        };
        let mut rep = PropertyReport::fails(
            &id,
            Witness::PolyPair { m: mc.clone(), f: phi_witness, i: None, j: None },
            Some(d.0),
        );
        rep.note = note.clone();
        return Ok(rep);
    }
    Ok(PropertyReport::holds_up_to(&id, d.0, note))
}

/// All phi(x) of degree <= D in the relevant right annihilator of m(x) at
/// the chosen extension: r(m(x)) for p.p., r(m(x) R[x;sigma]) for
/// p.q.-Baer. Exposes the raw membership test for oracle cross-checks.
pub fn extension_annihilator_members(
    inst: &Instance,
    ext: Ext,
    kind: ExtKind,
    mc: &[Elem],
    d: DegreeBound,
) -> Result<Vec<Vec<Elem>>, Error> {
    if kind == ExtKind::Semicommutative {
        return Err(Error::Contract("semicommutative has no annihilator target".into()));
    }
    if ext == Ext::Laurent && !inst.sigma.is_automorphism() {
        return Err(Error::Unsupported(format!(
            "Laurent extension requires an automorphism, {} is not invertible",
            inst.sigma.name
        )));
    }
    let trunc = match ext {
        Ext::TruncatedSeries => Some(d.0),
        _ => None,
    };
    let schedule: Vec<usize> = match trunc {
        Some(dd) => monomial_test_schedule(&inst.sigma).into_iter().filter(|&k| k <= dd).collect(),
        None => monomial_test_schedule(&inst.sigma),
    };
    let ctx = ExtCtx {
        module: &inst.module,
        ring: &inst.ring,
        sigma: &inst.sigma,
        schedule,
        trunc,
    };
    let rpolys = match trunc {
        Some(dd) => all_vectors(inst.ring.size, dd + 1),
        None => polys_up_to(inst.ring.size, d.0),
    };
    Ok(rpolys.into_iter().filter(|phi| ctx.in_ann(kind, mc, phi)).collect())
}

/// Dispatch by property identifier.
pub fn check_property(
    inst: &Instance,
    id: PropertyId,
    d: DegreeBound,
    budget: u64,
) -> Result<PropertyReport, Error> {
    match id {
        PropertyId::Cond(c) => Ok(check_elementwise_condition(inst, c)),
        PropertyId::Ann(k) => Ok(check_annihilator_property(inst, k)),
        PropertyId::SkewArmendariz => Ok(check_skew_armendariz(inst, d, budget)),
        PropertyId::Extension(e, k) => check_extension_property(inst, e, k, d, budget),
    }
}
