//! Finite right R-modules: axiom verification, annihilators of elements,
//! sets and cyclic submodules, and the submodule lattice.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::Error;
use crate::finring::{is_right_ideal, Elem, RingTable};

/// A finite right module over a [`RingTable`], with a full addition table
/// and an action table `action[m][a] = m*a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleTable {
    pub name: String,
    pub ring: Arc<RingTable>,
    pub size: usize,
    pub add: Vec<Vec<Elem>>,
    pub neg: Vec<Elem>,
    pub zero: Elem,
    pub action: Vec<Vec<Elem>>,
}

impl ModuleTable {
    pub fn from_tables(
        name: &str,
        ring: Arc<RingTable>,
        size: usize,
        add: Vec<Vec<Elem>>,
        action: Vec<Vec<Elem>>,
    ) -> Result<Self, Error> {
        if size == 0 {
            return Err(Error::Malformed(format!(
                "module {name}: size must be positive"
            )));
        }
        if add.len() != size || add.iter().any(|row| row.len() != size) {
            return Err(Error::Malformed(format!(
                "module {name}: add table must be {size}x{size}"
            )));
        }
        if action.len() != size || action.iter().any(|row| row.len() != ring.size) {
            return Err(Error::Malformed(format!(
                "module {name}: action table must be {size}x{}",
                ring.size
            )));
        }
        for (i, row) in add.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                if e >= size {
                    return Err(Error::Malformed(format!(
                        "module {name}: add[{i}][{j}] = {e} out of range"
                    )));
                }
            }
        }
        for (i, row) in action.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                if e >= size {
                    return Err(Error::Malformed(format!(
                        "module {name}: action[{i}][{j}] = {e} out of range"
                    )));
                }
            }
        }
        let mut neg = Vec::with_capacity(size);
        for m in 0..size {
            match (0..size).find(|&n| add[m][n] == 0) {
                Some(n) => neg.push(n),
                None => return Err(Error::axiom("additive-inverse", &[m])),
            }
        }
        Ok(ModuleTable {
            name: name.to_string(),
            ring,
            size,
            add,
            neg,
            zero: 0,
            action,
        })
    }

    /// The ring viewed as a right module over itself.
    pub fn regular(ring: Arc<RingTable>) -> Self {
        let add = ring.add.clone();
        let action = ring.mul.clone();
        let neg = ring.neg.clone();
        ModuleTable {
            name: "regular".to_string(),
            size: ring.size,
            add,
            neg,
            zero: ring.zero,
            action,
            ring,
        }
    }

    #[inline]
    pub fn sum(&self, m: Elem, n: Elem) -> Elem {
        self.add[m][n]
    }

    #[inline]
    pub fn act(&self, m: Elem, a: Elem) -> Elem {
        self.action[m][a]
    }

    #[inline]
    pub fn negate(&self, m: Elem) -> Elem {
        self.neg[m]
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    /// Whether this is literally the regular module of its ring.
    pub fn is_regular(&self) -> bool {
        self.size == self.ring.size && self.add == self.ring.add && self.action == self.ring.mul
    }
}

/// Verifies the abelian group and module laws, naming the first violated
/// axiom with a witnessing tuple. Scan order: additive group, right
/// distributivity (m+n)a, left distributivity m(a+b), associativity m(ab),
/// unitality m*1.
pub fn verify_module_axioms(m: &ModuleTable) -> Result<(), Error> {
    let n = m.size;
    let rn = m.ring.size;
    if m.add.len() != n
        || m.add.iter().any(|r| r.len() != n)
        || m.action.len() != n
        || m.action.iter().any(|r| r.len() != rn)
        || m.neg.len() != n
    {
        return Err(Error::Malformed(format!(
            "module {}: table dimensions inconsistent",
            m.name
        )));
    }
    for x in 0..n {
        if m.add[x][0] != x || m.add[0][x] != x {
            return Err(Error::axiom("additive-identity", &[x]));
        }
        if m.add[x][m.neg[x]] != 0 {
            return Err(Error::axiom("additive-inverse", &[x]));
        }
    }
    for x in 0..n {
        for y in 0..n {
            if m.add[x][y] != m.add[y][x] {
                return Err(Error::axiom("additive-commutativity", &[x, y]));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m.add[m.add[x][y]][z] != m.add[x][m.add[y][z]] {
                    return Err(Error::axiom("additive-associativity", &[x, y, z]));
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for a in 0..rn {
                if m.action[m.add[x][y]][a] != m.add[m.action[x][a]][m.action[y][a]] {
                    return Err(Error::axiom("action-right-distributivity", &[x, y, a]));
                }
            }
        }
    }
    for x in 0..n {
        for a in 0..rn {
            for b in 0..rn {
                if m.action[x][m.ring.add[a][b]] != m.add[m.action[x][a]][m.action[x][b]] {
                    return Err(Error::axiom("action-left-distributivity", &[x, a, b]));
                }
            }
        }
    }
    for x in 0..n {
        for a in 0..rn {
            for b in 0..rn {
                if m.action[x][m.ring.mul[a][b]] != m.action[m.action[x][a]][b] {
                    return Err(Error::axiom("action-associativity", &[x, a, b]));
                }
            }
        }
    }
    for x in 0..n {
        if m.action[x][m.ring.one] != x {
            return Err(Error::axiom("action-unital", &[x]));
        }
    }
    Ok(())
}

/// A right annihilator set in the base ring, with a description of what it
/// annihilates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnihilatorSet {
    pub elements: BTreeSet<Elem>,
    pub source: String,
}

/// Which set the annihilator is taken of: the given elements, or the cyclic
/// submodule mR generated by a single element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnnMode {
    Set,
    CyclicSubmodule,
}

/// r_R(X) or r_R(mR). In cyclic-submodule mode X must be a singleton {m};
/// mR is computed as the orbit { m*r : r in R } (already an additive
/// subgroup by right distributivity, asserted below).
pub fn annihilator(
    module: &ModuleTable,
    x: &BTreeSet<Elem>,
    mode: AnnMode,
) -> Result<AnnihilatorSet, Error> {
    let ring = &module.ring;
    match mode {
        AnnMode::Set => {
            let elements = (0..ring.size)
                .filter(|&a| x.iter().all(|&m| module.action[m][a] == module.zero))
                .collect();
            Ok(AnnihilatorSet {
                elements,
                source: format!("r({:?})", x.iter().collect::<Vec<_>>()),
            })
        }
        AnnMode::CyclicSubmodule => {
            if x.len() != 1 {
                return Err(Error::Contract(
                    "cyclic-submodule mode requires a singleton {m}".into(),
                ));
            }
            let m = *x.iter().next().unwrap();
            let orbit: BTreeSet<Elem> = (0..ring.size).map(|r| module.action[m][r]).collect();
            for &u in &orbit {
                for &v in &orbit {
                    assert!(
                        orbit.contains(&module.add[u][v]),
                        "orbit {m}R not additively closed"
                    );
                }
            }
            let elements: BTreeSet<Elem> = (0..ring.size)
                .filter(|&a| orbit.iter().all(|&u| module.action[u][a] == module.zero))
                .collect();
            assert!(
                is_right_ideal(ring, &elements),
                "annihilator of {m}R is not a right ideal"
            );
            Ok(AnnihilatorSet {
                elements,
                source: format!("r({m}R)"),
            })
        }
    }
}

/// r_R(m) for a single element.
pub fn element_annihilator(module: &ModuleTable, m: Elem) -> AnnihilatorSet {
    let mut a = annihilator(module, &BTreeSet::from([m]), AnnMode::Set).unwrap();
    a.source = format!("r({m})");
    a
}

/// r_R(mR) for a single element.
pub fn cyclic_annihilator(module: &ModuleTable, m: Elem) -> AnnihilatorSet {
    annihilator(module, &BTreeSet::from([m]), AnnMode::CyclicSubmodule).unwrap()
}

const SUBMODULE_SIZE_CAP: usize = 32;

fn close_under(module: &ModuleTable, gens: &BTreeSet<Elem>) -> BTreeSet<Elem> {
    let mut set: BTreeSet<Elem> = gens.clone();
    set.insert(module.zero);
    loop {
        let mut grew = false;
        let snapshot: Vec<Elem> = set.iter().copied().collect();
        for &m in &snapshot {
            if set.insert(module.neg[m]) {
                grew = true;
            }
            for &n in &snapshot {
                if set.insert(module.add[m][n]) {
                    grew = true;
                }
            }
            for a in 0..module.ring.size {
                if set.insert(module.action[m][a]) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    set
}

/// All submodules, by incremental closure from generators, sorted by size
/// then lexicographically. Refuses modules larger than 32 elements.
pub fn submodules(module: &ModuleTable) -> Result<Vec<BTreeSet<Elem>>, Error> {
    if module.size > SUBMODULE_SIZE_CAP {
        return Err(Error::Capacity(format!(
            "submodule lattice of module {} (size {}) exceeds cap {SUBMODULE_SIZE_CAP}",
            module.name, module.size
        )));
    }
    let bottom = close_under(module, &BTreeSet::new());
    let mut found: BTreeSet<BTreeSet<Elem>> = BTreeSet::from([bottom]);
    let mut frontier: Vec<BTreeSet<Elem>> = found.iter().cloned().collect();
    while let Some(s) = frontier.pop() {
        for m in module.elements() {
            if s.contains(&m) {
                continue;
            }
            let mut gens = s.clone();
            gens.insert(m);
            let closed = close_under(module, &gens);
            if found.insert(closed.clone()) {
                frontier.push(closed);
            }
        }
    }
    let mut out: Vec<BTreeSet<Elem>> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// The set of all r_R(X) over non-empty X, computed as all intersections of
/// the element-wise annihilators (r_R(X) is the intersection of r_R(m) over
/// m in X).
pub fn annihilator_lattice(module: &ModuleTable) -> Vec<AnnihilatorSet> {
    let singletons: Vec<BTreeSet<Elem>> = module
        .elements()
        .map(|m| element_annihilator(module, m).elements)
        .collect();
    let mut found: BTreeSet<BTreeSet<Elem>> = singletons.iter().cloned().collect();
    loop {
        let mut grew = false;
        let snapshot: Vec<BTreeSet<Elem>> = found.iter().cloned().collect();
        for s in &snapshot {
            for t in &singletons {
                let inter: BTreeSet<Elem> = s.intersection(t).copied().collect();
                if found.insert(inter) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    found
        .into_iter()
        .map(|elements| AnnihilatorSet {
            elements,
            source: "lattice".to_string(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::finring::verify_ring_axioms;

    fn z6_regular() -> ModuleTable {
        ModuleTable::regular(Arc::new(catalog::cyclic_ring(6)))
    }

    #[test]
    fn regular_module_passes_axioms() {
        for n in [2, 4, 6, 8] {
            let r = Arc::new(catalog::cyclic_ring(n));
            verify_ring_axioms(&r).unwrap();
            verify_module_axioms(&ModuleTable::regular(r)).unwrap();
        }
    }

    #[test]
    fn z2_over_z4_passes_axioms() {
        let r = Arc::new(catalog::cyclic_ring(4));
        let m = catalog::quotient_module(r, 2).unwrap();
        verify_module_axioms(&m).unwrap();
    }

    #[test]
    fn corrupted_action_names_associativity_witness() {
        let r = Arc::new(catalog::cyclic_ring(4));
        let mut m = ModuleTable::regular(r);
        // break (m*a)*b = m*(ab) without touching distributivity first:
        // corrupting action[3][3] = 9 mod 4 = 1 -> 3 breaks m(a+b) laws too,
        // so scan order decides the reported law; assert it is a module law
        // with a concrete witness.
        m.action[3][3] = 3;
        let err = verify_module_axioms(&m).unwrap_err();
        match err {
            Error::Axiom { law, witness } => {
                assert!(law.starts_with("action-"), "law = {law}");
                assert_eq!(witness.len(), 3);
            }
            other => panic!("expected axiom failure, got {other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch_is_malformed() {
        let r = Arc::new(catalog::cyclic_ring(4));
        let err =
            ModuleTable::from_tables("bad", r.clone(), 2, vec![vec![0, 1], vec![1, 0]], vec![vec![0; 3]; 2])
                .unwrap_err();
        assert!(matches!(err, Error::Malformed(_)));
    }

    #[test]
    fn cyclic_annihilators_match_spec_examples() {
        let m = z6_regular();
        assert_eq!(
            cyclic_annihilator(&m, 2).elements,
            BTreeSet::from([0, 3])
        );
        let z4 = ModuleTable::regular(Arc::new(catalog::cyclic_ring(4)));
        assert_eq!(
            cyclic_annihilator(&z4, 2).elements,
            BTreeSet::from([0, 2])
        );
        // annihilator of {zero} is everything
        assert_eq!(
            annihilator(&m, &BTreeSet::from([0]), AnnMode::Set)
                .unwrap()
                .elements
                .len(),
            6
        );
    }

    #[test]
    fn cyclic_mode_requires_singleton() {
        let m = z6_regular();
        let err = annihilator(&m, &BTreeSet::from([1, 2]), AnnMode::CyclicSubmodule).unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
    }

    #[test]
    fn submodules_of_z6_regular() {
        let m = z6_regular();
        let subs = submodules(&m).unwrap();
        let expect: Vec<BTreeSet<Elem>> = vec![
            BTreeSet::from([0]),
            BTreeSet::from([0, 3]),
            BTreeSet::from([0, 2, 4]),
            BTreeSet::from([0, 1, 2, 3, 4, 5]),
        ];
        assert_eq!(subs, expect);
    }

    #[test]
    fn submodules_contain_bottom_top_and_intersections() {
        for m in [
            z6_regular(),
            ModuleTable::regular(Arc::new(catalog::cyclic_ring(8))),
            ModuleTable::regular(Arc::new(catalog::t2z2_ring())),
        ] {
            let subs = submodules(&m).unwrap();
            let all: BTreeSet<Elem> = m.elements().collect();
            assert!(subs.contains(&BTreeSet::from([0])));
            assert!(subs.contains(&all));
            for a in &subs {
                for b in &subs {
                    let inter: BTreeSet<Elem> = a.intersection(b).copied().collect();
                    assert!(subs.contains(&inter));
                }
            }
        }
    }

    #[test]
    fn submodule_capacity_guard() {
        // fabricate a large module: regular over a size-33 "ring" is not in
        // the catalog, so fake the size check through a direct struct edit.
        let r = Arc::new(catalog::cyclic_ring(4));
        let mut m = ModuleTable::regular(r);
        m.size = 33;
        assert!(matches!(submodules(&m), Err(Error::Capacity(_))));
    }

    #[test]
    fn annihilator_lattice_z6() {
        let m = z6_regular();
        let lat: BTreeSet<BTreeSet<Elem>> = annihilator_lattice(&m)
            .into_iter()
            .map(|a| a.elements)
            .collect();
        let expect: BTreeSet<BTreeSet<Elem>> = [
            BTreeSet::from([0]),
            BTreeSet::from([0, 2, 4]),
            BTreeSet::from([0, 3]),
            BTreeSet::from([0, 1, 2, 3, 4, 5]),
        ]
        .into_iter()
        .collect();
        assert_eq!(lat, expect);
    }

    #[test]
    fn annihilator_lattice_z4_and_field() {
        let z4 = ModuleTable::regular(Arc::new(catalog::cyclic_ring(4)));
        let lat: BTreeSet<BTreeSet<Elem>> = annihilator_lattice(&z4)
            .into_iter()
            .map(|a| a.elements)
            .collect();
        assert_eq!(
            lat,
            [
                BTreeSet::from([0]),
                BTreeSet::from([0, 2]),
                BTreeSet::from([0, 1, 2, 3]),
            ]
            .into_iter()
            .collect()
        );
        let f4 = ModuleTable::regular(Arc::new(catalog::f4_ring()));
        assert_eq!(annihilator_lattice(&f4).len(), 2);
    }

    #[test]
    fn union_annihilator_is_intersection() {
        let m = z6_regular();
        let xs = [BTreeSet::from([1, 2]), BTreeSet::from([3]), BTreeSet::from([2, 4])];
        for x in &xs {
            for y in &xs {
                let union: BTreeSet<Elem> = x.union(y).copied().collect();
                let ru = annihilator(&m, &union, AnnMode::Set).unwrap().elements;
                let rx = annihilator(&m, x, AnnMode::Set).unwrap().elements;
                let ry = annihilator(&m, y, AnnMode::Set).unwrap().elements;
                let inter: BTreeSet<Elem> = rx.intersection(&ry).copied().collect();
                assert_eq!(ru, inter);
            }
        }
    }

    #[test]
    fn cyclic_annihilator_contained_in_element_annihilator() {
        for m in [
            z6_regular(),
            ModuleTable::regular(Arc::new(catalog::t2z2_ring())),
        ] {
            for x in m.elements() {
                let rm = element_annihilator(&m, x).elements;
                let rmr = cyclic_annihilator(&m, x).elements;
                assert!(rmr.is_subset(&rm));
            }
        }
    }
}
