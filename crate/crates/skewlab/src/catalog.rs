//! Builtin library of small rings, endomorphisms and modules, chosen so
//! that every hypothesis of every verified result both holds and fails
//! somewhere in the collection.

use std::sync::Arc;

use crate::error::Error;
use crate::finmod::{verify_module_axioms, ModuleTable};
use crate::finring::{verify_endomorphism, verify_ring_axioms, Elem, Endomorphism, RingTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Builtin,
    File,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub ring: Arc<RingTable>,
    pub endomorphisms: Vec<Arc<Endomorphism>>,
    pub modules: Vec<Arc<ModuleTable>>,
    pub provenance: Provenance,
}

impl CatalogEntry {
    pub fn sigma(&self, name: &str) -> Option<&Arc<Endomorphism>> {
        self.endomorphisms.iter().find(|e| e.name == name)
    }

    pub fn module(&self, name: &str) -> Option<&Arc<ModuleTable>> {
        self.modules.iter().find(|m| m.name == name)
    }
}

/// Z_n with the usual modular tables.
pub fn cyclic_ring(n: usize) -> RingTable {
    let add = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    let mul = (0..n).map(|i| (0..n).map(|j| (i * j) % n).collect()).collect();
    RingTable::from_tables(&format!("z{n}"), n, add, mul, if n == 1 { 0 } else { 1 }).unwrap()
}

/// GF(4) with elements 0, 1, a, a+1 (indices 0..3) and a^2 = a+1.
pub fn f4_ring() -> RingTable {
    let add = vec![
        vec![0, 1, 2, 3],
        vec![1, 0, 3, 2],
        vec![2, 3, 0, 1],
        vec![3, 2, 1, 0],
    ];
    let mul = vec![
        vec![0, 0, 0, 0],
        vec![0, 1, 2, 3],
        vec![0, 2, 3, 1],
        vec![0, 3, 1, 2],
    ];
    RingTable::from_tables("f4", 4, add, mul, 1).unwrap()
}

/// Z_2[t]/(t^2), elements 0, 1, t, 1+t (indices 0..3).
pub fn z2t2_ring() -> RingTable {
    let enc = |a: usize, b: usize| a + 2 * b; // a + b t
    let mut add = vec![vec![0; 4]; 4];
    let mut mul = vec![vec![0; 4]; 4];
    for a0 in 0..2 {
        for a1 in 0..2 {
            for b0 in 0..2 {
                for b1 in 0..2 {
                    let x = enc(a0, a1);
                    let y = enc(b0, b1);
                    add[x][y] = enc((a0 + b0) % 2, (a1 + b1) % 2);
                    mul[x][y] = enc((a0 * b0) % 2, (a0 * b1 + a1 * b0) % 2);
                }
            }
        }
    }
    RingTable::from_tables("z2t2", 4, add, mul, 1).unwrap()
}

/// Z_2 x Z_2 with componentwise operations; index = 2a + b for (a, b).
pub fn z2xz2_ring() -> RingTable {
    let enc = |a: usize, b: usize| 2 * a + b;
    let mut add = vec![vec![0; 4]; 4];
    let mut mul = vec![vec![0; 4]; 4];
    for a0 in 0..2 {
        for a1 in 0..2 {
            for b0 in 0..2 {
                for b1 in 0..2 {
                    let x = enc(a0, a1);
                    let y = enc(b0, b1);
                    add[x][y] = enc((a0 + b0) % 2, (a1 + b1) % 2);
                    mul[x][y] = enc(a0 * b0, a1 * b1);
                }
            }
        }
    }
    RingTable::from_tables("z2xz2", 4, add, mul, 3).unwrap()
}

/// Upper triangular 2x2 matrices over Z_2; index = 4a + 2b + d for
/// [[a, b], [0, d]].
pub fn t2z2_ring() -> RingTable {
    let enc = |a: usize, b: usize, d: usize| 4 * a + 2 * b + d;
    let dec = |x: usize| (x / 4, (x / 2) % 2, x % 2);
    let mut add = vec![vec![0; 8]; 8];
    let mut mul = vec![vec![0; 8]; 8];
    for x in 0..8 {
        for y in 0..8 {
            let (a, b, d) = dec(x);
            let (a2, b2, d2) = dec(y);
            add[x][y] = enc((a + a2) % 2, (b + b2) % 2, (d + d2) % 2);
            mul[x][y] = enc(a * a2, (a * b2 + b * d2) % 2, d * d2);
        }
    }
    RingTable::from_tables("t2z2", 8, add, mul, 5).unwrap()
}

/// Full 2x2 matrices over Z_2; index packs the four entries row-major.
pub fn m2z2_ring() -> RingTable {
    let dec = |x: usize| (x >> 3 & 1, x >> 2 & 1, x >> 1 & 1, x & 1);
    let enc = |a: usize, b: usize, c: usize, d: usize| (a << 3) | (b << 2) | (c << 1) | d;
    let mut add = vec![vec![0; 16]; 16];
    let mut mul = vec![vec![0; 16]; 16];
    for x in 0..16 {
        for y in 0..16 {
            let (a, b, c, d) = dec(x);
            let (e, f, g, h) = dec(y);
            add[x][y] = enc((a + e) % 2, (b + f) % 2, (c + g) % 2, (d + h) % 2);
            mul[x][y] = enc(
                (a * e + b * g) % 2,
                (a * f + b * h) % 2,
                (c * e + d * g) % 2,
                (c * f + d * h) % 2,
            );
        }
    }
    RingTable::from_tables("m2z2", 16, add, mul, 0b1001).unwrap()
}

/// Z_d as a right Z_n-module (d must divide n): m * a = m*a mod d.
pub fn quotient_module(ring: Arc<RingTable>, d: usize) -> Result<ModuleTable, Error> {
    let n = ring.size;
    if d == 0 || n % d != 0 {
        return Err(Error::Contract(format!("quotient module: {d} does not divide {n}")));
    }
    let add = (0..d).map(|i| (0..d).map(|j| (i + j) % d).collect()).collect();
    let action = (0..d).map(|m| (0..n).map(|a| (m * a) % d).collect()).collect();
    ModuleTable::from_tables(&format!("quot{d}"), ring, d, add, action)
}

const ENDO_ENUM_SIZE_CAP: usize = 8;

/// All unital ring endomorphisms, found by backtracking over generator
/// images with additive/multiplicative closure propagation. Guarded to
/// rings of size <= 8; larger rings must have their maps supplied
/// explicitly.
pub fn enumerate_endomorphisms(ring: &Arc<RingTable>) -> Result<Vec<Arc<Endomorphism>>, Error> {
    if ring.size > ENDO_ENUM_SIZE_CAP {
        return Err(Error::Capacity(format!(
            "endomorphism enumeration of ring {} (size {}) exceeds cap {ENDO_ENUM_SIZE_CAP}; supply maps explicitly",
            ring.name, ring.size
        )));
    }
    let n = ring.size;
    let mut results: Vec<Vec<Elem>> = Vec::new();
    let mut partial: Vec<Option<Elem>> = vec![None; n];
    partial[ring.zero] = Some(ring.zero);
    partial[ring.one] = Some(ring.one);
    fn propagate(ring: &RingTable, partial: &mut Vec<Option<Elem>>) -> bool {
        loop {
            let mut changed = false;
            for a in 0..ring.size {
                let Some(fa) = partial[a] else { continue };
                for b in 0..ring.size {
                    let Some(fb) = partial[b] else { continue };
                    for (src, img) in [
                        (ring.add[a][b], ring.add[fa][fb]),
                        (ring.mul[a][b], ring.mul[fa][fb]),
                    ] {
                        match partial[src] {
                            None => {
                                partial[src] = Some(img);
                                changed = true;
                            }
                            Some(existing) if existing != img => return false,
                            _ => {}
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }
    fn search(ring: &RingTable, partial: &mut Vec<Option<Elem>>, out: &mut Vec<Vec<Elem>>) {
        if !propagate(ring, partial) {
            return;
        }
        match partial.iter().position(|p| p.is_none()) {
            None => out.push(partial.iter().map(|p| p.unwrap()).collect()),
            Some(next) => {
                for img in 0..ring.size {
                    let mut branch = partial.clone();
                    branch[next] = Some(img);
                    search(ring, &mut branch, out);
                }
            }
        }
    }
    search(ring, &mut partial, &mut results);
    results.sort();
    results.dedup();
    let mut endos = Vec::new();
    for (i, map) in results.into_iter().enumerate() {
        // propagation guarantees the laws on closed pairs only; run the full
        // verifier as the final filter.
        let name = format!("endo{i}");
        if let Ok(e) = verify_endomorphism(ring.clone(), &name, map) {
            endos.push(Arc::new(e));
        }
    }
    Ok(endos)
}

fn named_endo(ring: &Arc<RingTable>, name: &str, map: Vec<Elem>) -> Arc<Endomorphism> {
    Arc::new(verify_endomorphism(ring.clone(), name, map).unwrap())
}

/// Renames enumerated endomorphisms using curated names where known, and
/// keeps stable `endoN` names for the rest.
fn with_curated_names(
    ring: &Arc<RingTable>,
    curated: &[(&str, Vec<Elem>)],
) -> Vec<Arc<Endomorphism>> {
    let enumerated = enumerate_endomorphisms(ring).expect("size within enumeration cap");
    let mut out: Vec<Arc<Endomorphism>> = Vec::new();
    for e in enumerated {
        let name = curated
            .iter()
            .find(|(_, map)| *map == e.map)
            .map(|(n, _)| n.to_string());
        match name {
            Some(n) => out.push(named_endo(ring, &n, e.map.clone())),
            None => out.push(e.clone()),
        }
    }
    // identity first, then curated names, then the rest; deterministic.
    out.sort_by_key(|e| {
        (
            !e.is_identity(),
            curated.iter().position(|(n, _)| *n == e.name).unwrap_or(usize::MAX),
            e.map.clone(),
        )
    });
    out
}

fn entry(
    id: &str,
    ring: RingTable,
    endomorphisms: Vec<Arc<Endomorphism>>,
    extra_modules: Vec<ModuleTable>,
) -> CatalogEntry {
    let ring = Arc::new(ring);
    verify_ring_axioms(&ring).expect("builtin ring must pass axioms");
    let mut modules = vec![Arc::new(ModuleTable::regular(ring.clone()))];
    for m in extra_modules {
        modules.push(Arc::new(m));
    }
    for m in &modules {
        verify_module_axioms(m).expect("builtin module must pass axioms");
    }
    CatalogEntry {
        id: id.to_string(),
        ring,
        endomorphisms,
        modules,
        provenance: Provenance::Builtin,
    }
}

/// The builtin catalog, constructed deterministically and fully verified at
/// load time.
pub fn builtin_catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();

    for n in [2usize, 3, 4, 6, 8, 12] {
        let ring = Arc::new(cyclic_ring(n));
        let endos = if n <= 8 {
            let mut es = enumerate_endomorphisms(&ring).unwrap();
            for e in es.iter_mut() {
                if e.is_identity() {
                    *e = named_endo(&ring, "id", e.map.clone());
                }
            }
            es.sort_by_key(|e| (!e.is_identity(), e.map.clone()));
            es
        } else {
            vec![named_endo(&ring, "id", (0..n).collect())]
        };
        let mut extra = Vec::new();
        for d in 2..n {
            if n % d == 0 {
                extra.push(quotient_module(ring.clone(), d).unwrap());
            }
        }
        out.push(entry(&format!("z{n}"), (*ring).clone(), endos, extra));
    }

    let f4 = Arc::new(f4_ring());
    out.push(entry(
        "f4",
        (*f4).clone(),
        with_curated_names(&f4, &[("id", (0..4).collect()), ("frobenius", vec![0, 1, 3, 2])]),
        vec![],
    ));

    let z2t2 = Arc::new(z2t2_ring());
    out.push(entry(
        "z2t2",
        (*z2t2).clone(),
        with_curated_names(&z2t2, &[("id", (0..4).collect())]),
        vec![],
    ));

    let z2xz2 = Arc::new(z2xz2_ring());
    out.push(entry(
        "z2xz2",
        (*z2xz2).clone(),
        with_curated_names(
            &z2xz2,
            &[
                ("id", (0..4).collect()),
                ("swap", vec![0, 2, 1, 3]),
                ("proj1", vec![0, 0, 3, 3]),
                ("proj2", vec![0, 3, 0, 3]),
            ],
        ),
        vec![],
    ));

    let t2 = Arc::new(t2z2_ring());
    out.push(entry(
        "t2z2",
        (*t2).clone(),
        with_curated_names(&t2, &[("id", (0..8).collect())]),
        vec![],
    ));

    // identity sigma only: the enumeration guard stops at size 8.
    let m2 = Arc::new(m2z2_ring());
    out.push(entry(
        "m2z2",
        (*m2).clone(),
        vec![named_endo(&m2, "id", (0..16).collect())],
        vec![],
    ));

    out
}
