//! Exact arithmetic in R[x;sigma], M[x;sigma], the Laurent extensions for
//! automorphisms, and truncated skew power series. Coefficient sequences are
//! normalized (no trailing zeros); the zero polynomial is the empty sequence.

use std::sync::Arc;

use crate::error::Error;
use crate::finmod::ModuleTable;
use crate::finring::{Elem, Endomorphism, RingTable};

/// Maximum degree for enumeration and bounded verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct DegreeBound(pub usize);

/// An element of R[x;sigma]: coeffs[i] is the coefficient of x^i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewPoly {
    pub sigma: Arc<Endomorphism>,
    pub coeffs: Vec<Elem>,
}

/// An element of M[x;sigma].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewModulePoly {
    pub module: Arc<ModuleTable>,
    pub sigma: Arc<Endomorphism>,
    pub coeffs: Vec<Elem>,
}

/// A Laurent polynomial: base coefficients starting at exponent `offset`
/// (possibly negative). Requires sigma to be an automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    pub sigma: Arc<Endomorphism>,
    pub coeffs: Vec<Elem>,
    pub offset: i64,
}

/// A Laurent polynomial with module coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentModulePoly {
    pub module: Arc<ModuleTable>,
    pub sigma: Arc<Endomorphism>,
    pub coeffs: Vec<Elem>,
    pub offset: i64,
}

pub fn normalize(coeffs: &mut Vec<Elem>) {
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
}

/// Normalization for Laurent values: strip trailing zeros, then leading
/// zeros (bumping the offset); zero becomes the empty sequence at offset 0.
pub fn normalize_laurent(coeffs: &mut Vec<Elem>, offset: &mut i64) {
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    while coeffs.first() == Some(&0) {
        coeffs.remove(0);
        *offset += 1;
    }
    if coeffs.is_empty() {
        *offset = 0;
    }
}

impl SkewPoly {
    pub fn new(sigma: Arc<Endomorphism>, mut coeffs: Vec<Elem>) -> Self {
        normalize(&mut coeffs);
        SkewPoly { sigma, coeffs }
    }

    pub fn zero(sigma: Arc<Endomorphism>) -> Self {
        SkewPoly { sigma, coeffs: vec![] }
    }

    pub fn constant(sigma: Arc<Endomorphism>, a: Elem) -> Self {
        SkewPoly::new(sigma, vec![a])
    }

    pub fn one(sigma: Arc<Endomorphism>) -> Self {
        let o = sigma.ring.one;
        SkewPoly::new(sigma, vec![o])
    }

    /// b * x^k.
    pub fn monomial(sigma: Arc<Endomorphism>, b: Elem, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = b;
        SkewPoly::new(sigma, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn ring(&self) -> &Arc<RingTable> {
        &self.sigma.ring
    }
}

impl SkewModulePoly {
    pub fn new(module: Arc<ModuleTable>, sigma: Arc<Endomorphism>, mut coeffs: Vec<Elem>) -> Self {
        normalize(&mut coeffs);
        SkewModulePoly { module, sigma, coeffs }
    }

    pub fn zero(module: Arc<ModuleTable>, sigma: Arc<Endomorphism>) -> Self {
        SkewModulePoly { module, sigma, coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

fn same_sigma(a: &Arc<Endomorphism>, b: &Arc<Endomorphism>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Raw product coefficients for formula (*): out[k] = sum_{i+j=k} m_i sigma^i(a_j),
/// combined with `combine` (module add or ring add) and `times` (module
/// action or ring mul).
fn convolve(
    mc: &[Elem],
    fc: &[Elem],
    sigma: &Endomorphism,
    combine: impl Fn(Elem, Elem) -> Elem,
    times: impl Fn(Elem, Elem) -> Elem,
) -> Vec<Elem> {
    if mc.is_empty() || fc.is_empty() {
        return vec![];
    }
    let mut out = vec![0; mc.len() + fc.len() - 1];
    for (i, &mi) in mc.iter().enumerate() {
        for (j, &aj) in fc.iter().enumerate() {
            out[i + j] = combine(out[i + j], times(mi, sigma.power(i, aj)));
        }
    }
    out
}

/// Product in R[x;sigma]: coefficient k is sum_{i+j=k} f_i sigma^i(g_j).
pub fn ring_mul(f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly, Error> {
    if !same_sigma(&f.sigma, &g.sigma) {
        return Err(Error::Contract("ring_mul: mismatched ring/sigma".into()));
    }
    let r = f.ring().clone();
    let mut coeffs = convolve(
        &f.coeffs,
        &g.coeffs,
        &f.sigma,
        |a, b| r.sum(a, b),
        |a, b| r.prod(a, b),
    );
    normalize(&mut coeffs);
    Ok(SkewPoly { sigma: f.sigma.clone(), coeffs })
}

/// Sum in R[x;sigma].
pub fn ring_add(f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly, Error> {
    if !same_sigma(&f.sigma, &g.sigma) {
        return Err(Error::Contract("ring_add: mismatched ring/sigma".into()));
    }
    let r = f.ring().clone();
    let mut coeffs = vec![0; f.coeffs.len().max(g.coeffs.len())];
    for (k, c) in coeffs.iter_mut().enumerate() {
        let a = f.coeffs.get(k).copied().unwrap_or(0);
        let b = g.coeffs.get(k).copied().unwrap_or(0);
        *c = r.sum(a, b);
    }
    normalize(&mut coeffs);
    Ok(SkewPoly { sigma: f.sigma.clone(), coeffs })
}

/// The scalar product (*) of M[x;sigma] over R[x;sigma].
pub fn module_action(m: &SkewModulePoly, f: &SkewPoly) -> Result<SkewModulePoly, Error> {
    if !same_sigma(&m.sigma, &f.sigma) || m.module.ring != f.sigma.ring {
        return Err(Error::Contract("module_action: mismatched references".into()));
    }
    let md = m.module.clone();
    let mut coeffs = convolve(
        &m.coeffs,
        &f.coeffs,
        &m.sigma,
        |a, b| md.sum(a, b),
        |x, a| md.act(x, a),
    );
    normalize(&mut coeffs);
    Ok(SkewModulePoly { module: m.module.clone(), sigma: m.sigma.clone(), coeffs })
}

/// Sum in M[x;sigma].
pub fn module_add(m: &SkewModulePoly, n: &SkewModulePoly) -> Result<SkewModulePoly, Error> {
    if !same_sigma(&m.sigma, &n.sigma) || m.module != n.module {
        return Err(Error::Contract("module_add: mismatched references".into()));
    }
    let md = m.module.clone();
    let mut coeffs = vec![0; m.coeffs.len().max(n.coeffs.len())];
    for (k, c) in coeffs.iter_mut().enumerate() {
        let a = m.coeffs.get(k).copied().unwrap_or(0);
        let b = n.coeffs.get(k).copied().unwrap_or(0);
        *c = md.sum(a, b);
    }
    normalize(&mut coeffs);
    Ok(SkewModulePoly { module: m.module.clone(), sigma: m.sigma.clone(), coeffs })
}

fn require_automorphism(sigma: &Endomorphism) -> Result<(), Error> {
    if !sigma.is_automorphism() {
        return Err(Error::Unsupported(format!(
            "Laurent extension requires an automorphism, {} is not invertible",
            sigma.name
        )));
    }
    Ok(())
}

impl LaurentPoly {
    pub fn new(sigma: Arc<Endomorphism>, mut coeffs: Vec<Elem>, mut offset: i64) -> Result<Self, Error> {
        require_automorphism(&sigma)?;
        normalize_laurent(&mut coeffs, &mut offset);
        Ok(LaurentPoly { sigma, coeffs, offset })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl LaurentModulePoly {
    pub fn new(
        module: Arc<ModuleTable>,
        sigma: Arc<Endomorphism>,
        mut coeffs: Vec<Elem>,
        mut offset: i64,
    ) -> Result<Self, Error> {
        require_automorphism(&sigma)?;
        normalize_laurent(&mut coeffs, &mut offset);
        Ok(LaurentModulePoly { module, sigma, coeffs, offset })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Product in R[x,x^-1;sigma]: x^i a = sigma^i(a) x^i for all integers i.
pub fn laurent_mul(u: &LaurentPoly, v: &LaurentPoly) -> Result<LaurentPoly, Error> {
    if !same_sigma(&u.sigma, &v.sigma) {
        return Err(Error::Contract("laurent_mul: mismatched ring/sigma".into()));
    }
    require_automorphism(&u.sigma)?;
    let r = u.sigma.ring.clone();
    if u.coeffs.is_empty() || v.coeffs.is_empty() {
        return LaurentPoly::new(u.sigma.clone(), vec![], 0);
    }
    let mut out = vec![0; u.coeffs.len() + v.coeffs.len() - 1];
    for (s, &us) in u.coeffs.iter().enumerate() {
        let exp = u.offset + s as i64;
        for (t, &vt) in v.coeffs.iter().enumerate() {
            let tw = u.sigma.power_signed(exp, vt)?;
            out[s + t] = r.sum(out[s + t], r.prod(us, tw));
        }
    }
    LaurentPoly::new(u.sigma.clone(), out, u.offset + v.offset)
}

/// Scalar product of M[x,x^-1;sigma] over R[x,x^-1;sigma].
pub fn laurent_action(u: &LaurentModulePoly, v: &LaurentPoly) -> Result<LaurentModulePoly, Error> {
    if !same_sigma(&u.sigma, &v.sigma) || u.module.ring != v.sigma.ring {
        return Err(Error::Contract("laurent_action: mismatched references".into()));
    }
    require_automorphism(&u.sigma)?;
    let md = u.module.clone();
    if u.coeffs.is_empty() || v.coeffs.is_empty() {
        return LaurentModulePoly::new(u.module.clone(), u.sigma.clone(), vec![], 0);
    }
    let mut out = vec![0; u.coeffs.len() + v.coeffs.len() - 1];
    for (s, &us) in u.coeffs.iter().enumerate() {
        let exp = u.offset + s as i64;
        for (t, &vt) in v.coeffs.iter().enumerate() {
            let tw = u.sigma.power_signed(exp, vt)?;
            out[s + t] = md.sum(out[s + t], md.act(us, tw));
        }
    }
    LaurentModulePoly::new(u.module.clone(), u.sigma.clone(), out, u.offset + v.offset)
}

/// Formula (*) computed modulo x^{D+1}. This is a truncation, not full
/// power-series semantics; inputs are coefficient prefixes of length <= D+1.
pub fn truncated_series_action(
    module: &ModuleTable,
    sigma: &Endomorphism,
    mc: &[Elem],
    fc: &[Elem],
    bound: DegreeBound,
) -> Vec<Elem> {
    let d = bound.0;
    let mut out = vec![0; d + 1];
    for (i, &mi) in mc.iter().enumerate().take(d + 1) {
        for (j, &aj) in fc.iter().enumerate().take(d + 1 - i) {
            out[i + j] = module.sum(out[i + j], module.act(mi, sigma.power(i, aj)));
        }
    }
    out
}

/// The finite exponent schedule K = {0, ..., mu+p-1}: every sigma^k with
/// k >= 0 equals sigma^j for some j in K, so universally quantified
/// conditions linear in a polynomial argument reduce to monomials b x^k
/// with k in K.
pub fn monomial_test_schedule(sigma: &Endomorphism) -> Vec<usize> {
    (0..sigma.preperiod + sigma.period).collect()
}

/// Parses a polynomial literal such as `2+3x+0x^2` or `1x^-1+2` into
/// (exponent, coefficient-index) pairs. Coefficients are element indices.
pub fn parse_poly_literal(s: &str) -> Result<Vec<(i64, Elem)>, Error> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Malformed("empty polynomial literal".into()));
    }
    let mut terms = Vec::new();
    for term in s.split('+') {
        if term.is_empty() {
            return Err(Error::Malformed(format!("empty term in literal '{s}'")));
        }
        let (coeff_str, exp) = match term.find('x') {
            None => (term, 0i64),
            Some(pos) => {
                let rest = &term[pos + 1..];
                let exp = if rest.is_empty() {
                    1
                } else if let Some(e) = rest.strip_prefix('^') {
                    e.parse::<i64>().map_err(|_| {
                        Error::Malformed(format!("bad exponent '{e}' in literal '{s}'"))
                    })?
                } else {
                    return Err(Error::Malformed(format!("bad term '{term}' in literal '{s}'")));
                };
                let c = &term[..pos];
                (if c.is_empty() { "1" } else { c }, exp)
            }
        };
        let coeff = coeff_str
            .parse::<usize>()
            .map_err(|_| Error::Malformed(format!("bad coefficient '{coeff_str}' in literal '{s}'")))?;
        terms.push((exp, coeff));
    }
    terms.sort_by_key(|&(e, _)| e);
    for w in terms.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::Malformed(format!(
                "duplicate exponent {} in literal '{s}'",
                w[0].0
            )));
        }
    }
    Ok(terms)
}

/// Builds a dense coefficient vector (offset, coeffs) from parsed literal
/// terms, validating coefficient range against the given size.
pub fn terms_to_coeffs(terms: &[(i64, Elem)], size: usize) -> Result<(i64, Vec<Elem>), Error> {
    let nonzero: Vec<&(i64, Elem)> = terms.iter().filter(|&&(_, c)| c != 0).collect();
    for &&(_, c) in &nonzero {
        if c >= size {
            return Err(Error::Malformed(format!("coefficient index {c} out of range (size {size})")));
        }
    }
    if nonzero.is_empty() {
        return Ok((0, vec![]));
    }
    let lo = nonzero.iter().map(|t| t.0).min().unwrap();
    let hi = nonzero.iter().map(|t| t.0).max().unwrap();
    let mut coeffs = vec![0; (hi - lo + 1) as usize];
    for &&(e, c) in &nonzero {
        coeffs[(e - lo) as usize] = c;
    }
    Ok((lo, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::finring::verify_endomorphism;

    fn setup_z6() -> (Arc<ModuleTable>, Arc<Endomorphism>) {
        let r = Arc::new(catalog::cyclic_ring(6));
        let sigma = Arc::new(verify_endomorphism(r.clone(), "id", (0..6).collect()).unwrap());
        let m = Arc::new(ModuleTable::regular(r));
        (m, sigma)
    }

    fn setup_f4() -> (Arc<ModuleTable>, Arc<Endomorphism>) {
        let r = Arc::new(catalog::f4_ring());
        let sigma = Arc::new(verify_endomorphism(r.clone(), "frobenius", vec![0, 1, 3, 2]).unwrap());
        let m = Arc::new(ModuleTable::regular(r));
        (m, sigma)
    }

    #[test]
    fn identity_sigma_gives_ordinary_convolution() {
        let (_, sigma) = setup_z6();
        let f = SkewPoly::new(sigma.clone(), vec![1, 2, 3]);
        let g = SkewPoly::new(sigma.clone(), vec![4, 5]);
        let fg = ring_mul(&f, &g).unwrap();
        // convolution oracle over Z_6
        let mut expect = vec![0usize; 4];
        for (i, &a) in [1, 2, 3].iter().enumerate() {
            for (j, &b) in [4, 5].iter().enumerate() {
                expect[i + j] = (expect[i + j] + a * b) % 6;
            }
        }
        assert_eq!(fg.coeffs, expect);
    }

    #[test]
    fn frobenius_twists_coefficients() {
        // alpha = 2, alpha^3 = 1 in F_4; (alpha x) * alpha = alpha*sigma(alpha) x = x
        let (_, sigma) = setup_f4();
        let f = SkewPoly::new(sigma.clone(), vec![0, 2]);
        let g = SkewPoly::constant(sigma.clone(), 2);
        let fg = ring_mul(&f, &g).unwrap();
        assert_eq!(fg.coeffs, vec![0, 1]);
    }

    #[test]
    fn zero_and_unit_laws() {
        let (m, sigma) = setup_z6();
        let z = SkewPoly::zero(sigma.clone());
        let f = SkewPoly::new(sigma.clone(), vec![2, 3]);
        assert!(ring_mul(&z, &f).unwrap().is_zero());
        let one = SkewPoly::one(sigma.clone());
        assert_eq!(ring_mul(&f, &one).unwrap(), f);
        let mp = SkewModulePoly::new(m.clone(), sigma.clone(), vec![2, 3]);
        assert_eq!(module_action(&mp, &one).unwrap(), mp);
    }

    #[test]
    fn module_action_example_mod6() {
        // (2 + 3x) * 3 = 6 + 9x = 3x over Z_6
        let (m, sigma) = setup_z6();
        let mp = SkewModulePoly::new(m, sigma.clone(), vec![2, 3]);
        let f = SkewPoly::constant(sigma, 3);
        let out = module_action(&mp, &f).unwrap();
        assert_eq!(out.coeffs, vec![0, 3]);
    }

    #[test]
    fn f4_module_action_matches_ring_mul_on_regular() {
        let (m, sigma) = setup_f4();
        let mp = SkewModulePoly::new(m, sigma.clone(), vec![0, 2]);
        let f = SkewPoly::constant(sigma, 2);
        assert_eq!(module_action(&mp, &f).unwrap().coeffs, vec![0, 1]);
    }

    #[test]
    fn mismatched_sigma_is_contract_violation() {
        let (_, id6) = setup_z6();
        let (_, frob) = setup_f4();
        let f = SkewPoly::new(id6, vec![1]);
        let g = SkewPoly::new(frob, vec![1]);
        assert!(matches!(ring_mul(&f, &g), Err(Error::Contract(_))));
    }

    #[test]
    fn laurent_conjugation_by_x_inverts_sigma() {
        // x^-1 * a * x = sigma^-1(a); with swap on Z_2 x Z_2, a=(1,0)=2 -> (0,1)=1
        let r = Arc::new(catalog::z2xz2_ring());
        let swap = Arc::new(verify_endomorphism(r.clone(), "swap", vec![0, 2, 1, 3]).unwrap());
        let xinv = LaurentPoly::new(swap.clone(), vec![3], -1).unwrap();
        let a = LaurentPoly::new(swap.clone(), vec![2], 0).unwrap();
        let x = LaurentPoly::new(swap.clone(), vec![3], 1).unwrap();
        let out = laurent_mul(&laurent_mul(&xinv, &a).unwrap(), &x).unwrap();
        assert_eq!((out.offset, out.coeffs.clone()), (0, vec![1]));
        // and x * a * x^-1 = sigma(a)
        let out2 = laurent_mul(&laurent_mul(&x, &a).unwrap(), &xinv).unwrap();
        assert_eq!((out2.offset, out2.coeffs), (0, vec![1]));
    }

    #[test]
    fn laurent_at_offset_zero_matches_ring_mul() {
        let (_, frob) = setup_f4();
        let f = SkewPoly::new(frob.clone(), vec![1, 2, 3]);
        let g = SkewPoly::new(frob.clone(), vec![2, 1]);
        let lf = LaurentPoly::new(frob.clone(), f.coeffs.clone(), 0).unwrap();
        let lg = LaurentPoly::new(frob.clone(), g.coeffs.clone(), 0).unwrap();
        let prod = ring_mul(&f, &g).unwrap();
        let lprod = laurent_mul(&lf, &lg).unwrap();
        assert_eq!(lprod.offset, 0);
        assert_eq!(lprod.coeffs, prod.coeffs);
    }

    #[test]
    fn laurent_requires_automorphism() {
        let r = Arc::new(catalog::z2xz2_ring());
        let proj = Arc::new(verify_endomorphism(r.clone(), "proj1", vec![0, 0, 3, 3]).unwrap());
        assert!(matches!(
            LaurentPoly::new(proj, vec![1], -1),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn laurent_unit_law() {
        let r = Arc::new(catalog::z2xz2_ring());
        let swap = Arc::new(verify_endomorphism(r.clone(), "swap", vec![0, 2, 1, 3]).unwrap());
        let u = LaurentPoly::new(swap.clone(), vec![1, 2, 3], -1).unwrap();
        let one = LaurentPoly::new(swap.clone(), vec![3], 0).unwrap();
        assert_eq!(laurent_mul(&u, &one).unwrap(), u);
    }

    #[test]
    fn truncated_geometric_series_mod2() {
        // (1+x+x^2+x^3)(1+x) = 1 mod x^4 over Z_2
        let r = Arc::new(catalog::cyclic_ring(2));
        let sigma = Arc::new(verify_endomorphism(r.clone(), "id", vec![0, 1]).unwrap());
        let m = ModuleTable::regular(r);
        let out = truncated_series_action(&m, &sigma, &[1, 1, 1, 1], &[1, 1], DegreeBound(3));
        assert_eq!(out, vec![1, 0, 0, 0]);
    }

    #[test]
    fn truncated_action_agrees_with_polynomial_action_without_loss() {
        let (m, sigma) = setup_z6();
        let mp = SkewModulePoly::new(m.clone(), sigma.clone(), vec![2, 3]);
        let f = SkewPoly::new(sigma.clone(), vec![1, 4]);
        let full = module_action(&mp, &f).unwrap();
        let trunc = truncated_series_action(&m, &sigma, &mp.coeffs, &f.coeffs, DegreeBound(4));
        let mut padded = full.coeffs.clone();
        padded.resize(5, 0);
        assert_eq!(trunc, padded);
        let zero = truncated_series_action(&m, &sigma, &[], &[1, 1], DegreeBound(3));
        assert_eq!(zero, vec![0; 4]);
    }

    #[test]
    fn schedule_examples() {
        let (_, id) = setup_z6();
        assert_eq!(monomial_test_schedule(&id), vec![0]);
        let (_, frob) = setup_f4();
        assert_eq!(monomial_test_schedule(&frob), vec![0, 1]);
        let r = Arc::new(catalog::z2xz2_ring());
        let proj = verify_endomorphism(r, "proj1", vec![0, 0, 3, 3]).unwrap();
        assert_eq!(monomial_test_schedule(&proj), vec![0, 1]);
    }

    #[test]
    fn x_commutation_law() {
        // x*a = sigma(a)*x in R[x;sigma]
        let (_, frob) = setup_f4();
        for a in 0..4 {
            let x = SkewPoly::monomial(frob.clone(), 1, 1);
            let ca = SkewPoly::constant(frob.clone(), a);
            let lhs = ring_mul(&x, &ca).unwrap();
            let rhs = ring_mul(&SkewPoly::constant(frob.clone(), frob.apply(a)), &x).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn poly_literal_parsing() {
        assert_eq!(parse_poly_literal("2+3x+0x^2").unwrap(), vec![(0, 2), (1, 3), (2, 0)]);
        assert_eq!(parse_poly_literal("1x^-1+2").unwrap(), vec![(-1, 1), (0, 2)]);
        assert_eq!(parse_poly_literal("x").unwrap(), vec![(1, 1)]);
        assert!(parse_poly_literal("2+2").is_err());
        assert!(parse_poly_literal("").is_err());
        let (off, coeffs) = terms_to_coeffs(&parse_poly_literal("2+3x+0x^2").unwrap(), 6).unwrap();
        assert_eq!((off, coeffs), (0, vec![2, 3]));
        let (off, coeffs) = terms_to_coeffs(&parse_poly_literal("1x^-1+2").unwrap(), 4).unwrap();
        assert_eq!((off, coeffs), (-1, vec![1, 2]));
        assert!(terms_to_coeffs(&[(0, 9)], 6).is_err());
    }
}
