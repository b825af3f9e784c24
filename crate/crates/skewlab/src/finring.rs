//! Finite unital associative rings given by explicit Cayley tables, ring
//! endomorphisms with their iterate schedule, and idempotent/ideal machinery.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::Error;

/// Ring and module elements are indices into their Cayley tables.
pub type Elem = usize;

/// A finite unital associative ring. `add` and `mul` are full `size x size`
/// tables of element indices, `neg` the additive inverse table. Index 0 is
/// the zero element by convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingTable {
    pub name: String,
    pub size: usize,
    pub add: Vec<Vec<Elem>>,
    pub mul: Vec<Vec<Elem>>,
    pub neg: Vec<Elem>,
    pub zero: Elem,
    pub one: Elem,
}

impl RingTable {
    /// Assembles a ring from its addition and multiplication tables. The
    /// negation table is derived from `add`. Dimension problems are reported
    /// as malformed input; a missing additive inverse as an axiom failure.
    pub fn from_tables(
        name: &str,
        size: usize,
        add: Vec<Vec<Elem>>,
        mul: Vec<Vec<Elem>>,
        one: Elem,
    ) -> Result<Self, Error> {
        if size == 0 {
            return Err(Error::Malformed(format!("ring {name}: size must be positive")));
        }
        check_table(name, "add", &add, size)?;
        check_table(name, "mul", &mul, size)?;
        if one >= size {
            return Err(Error::Malformed(format!(
                "ring {name}: one index {one} out of range"
            )));
        }
        let mut neg = Vec::with_capacity(size);
        for a in 0..size {
            match (0..size).find(|&b| add[a][b] == 0) {
                Some(b) => neg.push(b),
                None => return Err(Error::axiom("additive-inverse", &[a])),
            }
        }
        Ok(RingTable {
            name: name.to_string(),
            size,
            add,
            mul,
            neg,
            zero: 0,
            one,
        })
    }

    #[inline]
    pub fn sum(&self, a: Elem, b: Elem) -> Elem {
        self.add[a][b]
    }

    #[inline]
    pub fn prod(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a][b]
    }

    #[inline]
    pub fn negate(&self, a: Elem) -> Elem {
        self.neg[a]
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }
}

fn check_table(ring: &str, which: &str, table: &[Vec<Elem>], size: usize) -> Result<(), Error> {
    if table.len() != size {
        return Err(Error::Malformed(format!(
            "ring {ring}: {which} table has {} rows, expected {size}",
            table.len()
        )));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != size {
            return Err(Error::Malformed(format!(
                "ring {ring}: {which} row {i} has {} entries, expected {size}",
                row.len()
            )));
        }
        for (j, &e) in row.iter().enumerate() {
            if e >= size {
                return Err(Error::Malformed(format!(
                    "ring {ring}: {which}[{i}][{j}] = {e} out of range"
                )));
            }
        }
    }
    Ok(())
}

/// Checks every ring axiom by direct table loops and reports the first
/// violated law with a witnessing tuple. Scan order: zero/one distinctness,
/// additive group laws, multiplicative identity, left then right
/// distributivity, multiplicative associativity.
pub fn verify_ring_axioms(r: &RingTable) -> Result<(), Error> {
    let n = r.size;
    check_table(&r.name, "add", &r.add, n)?;
    check_table(&r.name, "mul", &r.mul, n)?;
    if r.neg.len() != n {
        return Err(Error::Malformed(format!(
            "ring {}: neg table has {} entries, expected {n}",
            r.name,
            r.neg.len()
        )));
    }
    if r.zero != 0 {
        return Err(Error::Malformed(format!(
            "ring {}: zero must be index 0",
            r.name
        )));
    }
    if n > 1 && r.one == r.zero {
        return Err(Error::axiom("zero-one-distinct", &[r.one]));
    }
    for a in 0..n {
        if r.add[a][0] != a || r.add[0][a] != a {
            return Err(Error::axiom("additive-identity", &[a]));
        }
        if r.add[a][r.neg[a]] != 0 {
            return Err(Error::axiom("additive-inverse", &[a]));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if r.add[a][b] != r.add[b][a] {
                return Err(Error::axiom("additive-commutativity", &[a, b]));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if r.add[r.add[a][b]][c] != r.add[a][r.add[b][c]] {
                    return Err(Error::axiom("additive-associativity", &[a, b, c]));
                }
            }
        }
    }
    for a in 0..n {
        if r.mul[a][r.one] != a || r.mul[r.one][a] != a {
            return Err(Error::axiom("multiplicative-identity", &[a]));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if r.mul[a][r.add[b][c]] != r.add[r.mul[a][b]][r.mul[a][c]] {
                    return Err(Error::axiom("distributivity", &[a, b, c]));
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if r.mul[r.add[a][b]][c] != r.add[r.mul[a][c]][r.mul[b][c]] {
                    return Err(Error::axiom("distributivity", &[a, b, c]));
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if r.mul[r.mul[a][b]][c] != r.mul[a][r.mul[b][c]] {
                    return Err(Error::axiom("multiplicative-associativity", &[a, b, c]));
                }
            }
        }
    }
    Ok(())
}

/// A unital ring endomorphism as an index map, together with its iterate
/// schedule: the least (mu, p) with sigma^{mu+p} = sigma^mu. All powers up
/// to mu+p-1 are precomputed, which makes quantification over {sigma^k} a
/// finite loop.
#[derive(Debug, Clone)]
pub struct Endomorphism {
    pub name: String,
    pub ring: Arc<RingTable>,
    pub map: Vec<Elem>,
    pub preperiod: usize,
    pub period: usize,
    powers: Vec<Vec<Elem>>,
    inverse: Option<Vec<Elem>>,
}

impl PartialEq for Endomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.map == other.map
    }
}
impl Eq for Endomorphism {}

impl Endomorphism {
    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    /// sigma^k(a), with k reduced through the iterate schedule.
    #[inline]
    pub fn power(&self, k: usize, a: Elem) -> Elem {
        self.powers[self.reduce(k)][a]
    }

    /// Reduces an exponent to the canonical representative in [0, mu+p).
    #[inline]
    pub fn reduce(&self, k: usize) -> usize {
        if k < self.preperiod + self.period {
            k
        } else {
            self.preperiod + (k - self.preperiod) % self.period
        }
    }

    /// sigma^k(a) for arbitrary integer k; negative exponents require an
    /// automorphism, where sigma^{-1} = sigma^{p-1}.
    pub fn power_signed(&self, k: i64, a: Elem) -> Result<Elem, Error> {
        if k >= 0 {
            return Ok(self.power(k as usize, a));
        }
        if !self.is_automorphism() {
            return Err(Error::Unsupported(format!(
                "negative power of non-automorphism {}",
                self.name
            )));
        }
        let p = self.period as i64;
        let r = k.rem_euclid(p) as usize;
        Ok(self.power(r, a))
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_automorphism(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn inverse_map(&self) -> Option<&[Elem]> {
        self.inverse.as_deref()
    }

    pub fn schedule(&self) -> (usize, usize) {
        (self.preperiod, self.period)
    }
}

/// Checks that `map` is additive, multiplicative and unital, and computes
/// the iterate schedule. The unital failure is reported distinctly from a
/// multiplicative one.
pub fn verify_endomorphism(
    ring: Arc<RingTable>,
    name: &str,
    map: Vec<Elem>,
) -> Result<Endomorphism, Error> {
    let n = ring.size;
    if map.len() != n {
        return Err(Error::Malformed(format!(
            "endomorphism {name}: map has {} entries, expected {n}",
            map.len()
        )));
    }
    if let Some((i, &e)) = map.iter().enumerate().find(|&(_, &e)| e >= n) {
        return Err(Error::Malformed(format!(
            "endomorphism {name}: map[{i}] = {e} out of range"
        )));
    }
    for a in 0..n {
        for b in 0..n {
            if map[ring.add[a][b]] != ring.add[map[a]][map[b]] {
                return Err(Error::axiom("endomorphism-additive", &[a, b]));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if map[ring.mul[a][b]] != ring.mul[map[a]][map[b]] {
                return Err(Error::axiom("endomorphism-multiplicative", &[a, b]));
            }
        }
    }
    if map[ring.one] != ring.one {
        return Err(Error::axiom("endomorphism-unital", &[ring.one]));
    }

    // Successive powers by direct table comparison until the first repeat.
    let mut powers: Vec<Vec<Elem>> = vec![(0..n).collect()];
    let (preperiod, period) = loop {
        let last = powers.last().unwrap();
        let next: Vec<Elem> = last.iter().map(|&a| map[a]).collect();
        if let Some(j) = powers.iter().position(|p| *p == next) {
            break (j, powers.len() - j);
        }
        powers.push(next);
    };
    powers.truncate(preperiod + period);

    let inverse = if is_permutation(&map) {
        let mut inv = vec![0; n];
        for (a, &b) in map.iter().enumerate() {
            inv[b] = a;
        }
        Some(inv)
    } else {
        None
    };

    Ok(Endomorphism {
        name: name.to_string(),
        ring,
        map,
        preperiod,
        period,
        powers,
        inverse,
    })
}

fn is_permutation(map: &[Elem]) -> bool {
    let mut seen = vec![false; map.len()];
    for &v in map {
        if seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// A right ideal as a plain element set; closure is checked by
/// [`is_right_ideal`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightIdeal {
    pub elements: BTreeSet<Elem>,
}

pub fn is_right_ideal(ring: &RingTable, set: &BTreeSet<Elem>) -> bool {
    if !set.contains(&ring.zero) {
        return false;
    }
    for &a in set {
        for &b in set {
            if !set.contains(&ring.add[a][b]) {
                return false;
            }
        }
        for r in 0..ring.size {
            if !set.contains(&ring.mul[a][r]) {
                return false;
            }
        }
    }
    true
}

/// All e with e*e = e, in increasing index order.
pub fn idempotents(ring: &RingTable) -> Vec<Elem> {
    (0..ring.size).filter(|&e| ring.mul[e][e] == e).collect()
}

/// The principal right ideal aR = { a*r : r in R }. Additive closure holds
/// by distributivity; it is asserted anyway.
pub fn principal_right_ideal(ring: &RingTable, a: Elem) -> RightIdeal {
    let elements: BTreeSet<Elem> = (0..ring.size).map(|r| ring.mul[a][r]).collect();
    for &x in &elements {
        for &y in &elements {
            assert!(
                elements.contains(&ring.add[x][y]),
                "principal right ideal {}R not additively closed",
                a
            );
        }
    }
    RightIdeal { elements }
}

/// Finds the least idempotent e with eR equal to the given ideal, or None
/// when no idempotent generates it.
pub fn find_idempotent_generator(
    ring: &RingTable,
    ideal: &RightIdeal,
) -> Result<Option<Elem>, Error> {
    if !is_right_ideal(ring, &ideal.elements) {
        return Err(Error::Contract(
            "find_idempotent_generator: input is not a right ideal".into(),
        ));
    }
    for e in idempotents(ring) {
        if principal_right_ideal(ring, e).elements == ideal.elements {
            return Ok(Some(e));
        }
    }
    Ok(None)
}
