//! p-ary functions as value tables, their Walsh spectra, and Krawtchouk polynomials.

use std::sync::Arc;

use rayon::prelude::*;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, Subspace, VectorSpace};

/// Where a function lives, which also fixes the pairing used by Walsh:
/// `Tr(wx)` on a field, `<w, x>` on a coordinate space.
#[derive(Clone, Debug)]
pub enum Domain {
    Field(Arc<Field>),
    Vector(VectorSpace),
}

impl PartialEq for Domain {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Domain::Field(a), Domain::Field(b)) => Arc::ptr_eq(a, b) || **a == **b,
            (Domain::Vector(a), Domain::Vector(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Domain {}

impl Domain {
    pub fn vector(p: u32, m: usize) -> Result<Domain> {
        Ok(Domain::Vector(VectorSpace::new(p, m)?))
    }

    pub fn space(&self) -> VectorSpace {
        match self {
            Domain::Field(f) => f.space(),
            Domain::Vector(v) => *v,
        }
    }

    pub fn p(&self) -> u32 {
        self.space().p
    }

    pub fn m(&self) -> usize {
        self.space().m
    }

    /// Number of elements, p^m.
    pub fn size(&self) -> usize {
        self.space().size()
    }

    pub fn field(&self) -> Option<&Arc<Field>> {
        match self {
            Domain::Field(f) => Some(f),
            Domain::Vector(_) => None,
        }
    }

    /// Coordinates `d(w)` with `pairing(w, x) = <d(w), x>`.
    pub fn dual_idx(&self, w: usize) -> usize {
        match self {
            Domain::Field(f) => f.dual_idx(w),
            Domain::Vector(_) => w,
        }
    }

    pub fn pairing(&self, w: usize, x: usize) -> u32 {
        match self {
            Domain::Field(f) => f.trace_form(w, x),
            Domain::Vector(v) => v.dot(w, x),
        }
    }

    /// `c * w` for a scalar c; the same on both kinds of domain.
    pub fn scale(&self, c: u32, w: usize) -> usize {
        self.space().scale(c, w)
    }

    /// Index of an element given in any accepted JSON form.
    pub fn resolve(&self, e: &ElementRepr) -> Result<usize> {
        let space = self.space();
        match e {
            ElementRepr::Coeffs { coeffs } => space.index_of(&FieldElement { coeffs: coeffs.clone() }),
            ElementRepr::Pow { pow } => match self {
                Domain::Field(f) => Ok(f.power_idx(*pow)),
                Domain::Vector(_) => Err(Error::Parse("power notation needs a field domain".into())),
            },
            ElementRepr::Index(i) if *i < space.size() => Ok(*i),
            ElementRepr::Index(_) => Err(Error::FieldMismatch),
        }
    }

    pub fn repr(&self, idx: usize) -> ElementRepr {
        ElementRepr::Coeffs { coeffs: self.space().digits(idx) }
    }

    pub fn subspace_from_repr(&self, repr: &SubspaceRepr) -> Result<Subspace> {
        let gens = repr.basis.iter().map(|e| self.resolve(e)).collect::<Result<Vec<_>>>()?;
        Ok(Subspace::span_indices(self.space(), &gens))
    }

    pub fn subspace_repr(&self, s: &Subspace) -> SubspaceRepr {
        SubspaceRepr { basis: s.basis().iter().map(|r| ElementRepr::Coeffs { coeffs: r.clone() }).collect() }
    }
}

/// JSON element forms: `{"coeffs": [...]}`, `{"pow": i}` (field only) or a bare index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRepr {
    Coeffs { coeffs: Vec<u32> },
    Pow { pow: i64 },
    Index(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceRepr {
    pub basis: Vec<ElementRepr>,
}

#[derive(Serialize, Deserialize)]
struct DomainRepr {
    p: u32,
    m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    modulus: Option<Vec<u32>>,
}

impl Serialize for Domain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let modulus = self.field().map(|f| f.modulus().to_vec());
        DomainRepr { p: self.p(), m: self.m(), modulus }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Domain {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = DomainRepr::deserialize(d)?;
        match r.modulus {
            Some(modulus) => Field::new(r.p, r.m, &modulus).map(Domain::Field),
            None => Domain::vector(r.p, r.m),
        }
        .map_err(de::Error::custom)
    }
}

/// A total function from the domain to F_p, stored by element index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PFunctionRepr")]
pub struct PFunction {
    domain: Domain,
    values: Vec<u8>,
}

#[derive(Deserialize)]
struct PFunctionRepr {
    domain: Domain,
    values: Vec<u8>,
}

impl TryFrom<PFunctionRepr> for PFunction {
    type Error = Error;
    fn try_from(r: PFunctionRepr) -> Result<Self> {
        PFunction::new(r.domain, r.values)
    }
}

impl PFunction {
    pub fn new(domain: Domain, values: Vec<u8>) -> Result<Self> {
        if values.len() != domain.size() {
            return Err(Error::LengthMismatch { left: values.len(), right: domain.size() });
        }
        if values.iter().any(|&v| v as u32 >= domain.p()) {
            return Err(Error::Parse("function value outside F_p".into()));
        }
        Ok(PFunction { domain, values })
    }

    pub fn zero(domain: Domain) -> Self {
        let values = vec![0; domain.size()];
        PFunction { domain, values }
    }

    pub fn from_fn(domain: Domain, f: impl Fn(usize) -> u32) -> Self {
        let p = domain.p();
        let values = (0..domain.size()).map(|x| (f(x) % p) as u8).collect();
        PFunction { domain, values }
    }

    /// `x ↦ pairing(w, x)`.
    pub fn linear(domain: Domain, w: usize) -> Self {
        let d = domain.clone();
        Self::from_fn(domain, move |x| d.pairing(w, x))
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn value(&self, x: usize) -> u32 {
        self.values[x] as u32
    }

    pub fn p(&self) -> u32 {
        self.domain.p()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&x| self.values[x] != 0).collect()
    }

    /// True when every value is 0 or 1.
    pub fn is_indicator(&self) -> bool {
        self.values.iter().all(|&v| v <= 1)
    }

    /// One residue per line, in enumeration order.
    pub fn to_truth_table(&self) -> String {
        let mut out = String::with_capacity(self.values.len() * 2);
        for v in &self.values {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_truth_table(domain: Domain, text: &str) -> Result<Self> {
        let values = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| l.parse::<u8>().map_err(|_| Error::Parse(format!("bad truth-table entry {l:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain, values)
    }

    /// `f̂(w) = Σ_x ζ^{f(x) - pairing(w, x)}`, by counting residues.
    pub fn walsh_at(&self, w: usize) -> Result<CycInt> {
        if w >= self.domain.size() {
            return Err(Error::DomainMismatch);
        }
        Ok(CycInt::from_counts(self.p(), &self.walsh_counts(w)))
    }

    fn walsh_counts(&self, w: usize) -> Vec<i64> {
        let p = self.p();
        let mut counts = vec![0i64; p as usize];
        for (x, &v) in self.values.iter().enumerate() {
            let j = (v as u32 + p - self.domain.pairing(w, x)) % p;
            counts[j as usize] += 1;
        }
        counts
    }

    pub fn walsh_spectrum(&self, algorithm: WalshAlgorithm) -> WalshSpectrum {
        match algorithm {
            WalshAlgorithm::Naive => self.spectrum_naive(),
            WalshAlgorithm::Fast => self.spectrum_fast(),
        }
    }

    fn spectrum_naive(&self) -> WalshSpectrum {
        let p = self.p() as usize;
        let coeffs: Vec<i64> = (0..self.domain.size())
            .into_par_iter()
            .flat_map_iter(|w| {
                let c = self.walsh_counts(w);
                let last = c[p - 1];
                (0..p - 1).map(move |j| c[j] - last)
            })
            .collect();
        WalshSpectrum { p: self.p(), coeffs }
    }

    /// Butterfly over the coordinates of F_p^m. Each slot holds a count
    /// vector over the powers of ζ, so multiplying by a power of ζ is a
    /// cyclic shift and the whole transform stays in integers.
    fn spectrum_fast(&self) -> WalshSpectrum {
        let p = self.p() as usize;
        let q = self.domain.size();
        let mut buf = vec![0i64; q * p];
        for (x, &v) in self.values.iter().enumerate() {
            buf[x * p + v as usize] = 1;
        }
        let mut stride = 1;
        for _ in 0..self.domain.m() {
            let block = stride * p * p;
            buf.par_chunks_mut(block).for_each(|chunk| {
                let mut inputs = vec![0i64; p * p];
                for r in 0..stride {
                    for c in 0..p {
                        let at = (c * stride + r) * p;
                        inputs[c * p..c * p + p].copy_from_slice(&chunk[at..at + p]);
                    }
                    for k in 0..p {
                        let at = (k * stride + r) * p;
                        let out = &mut chunk[at..at + p];
                        for (j, slot) in out.iter_mut().enumerate() {
                            *slot = (0..p).map(|c| inputs[c * p + (j + k * c) % p]).sum();
                        }
                    }
                }
            });
            stride *= p;
        }
        let coeffs: Vec<i64> = (0..q)
            .into_par_iter()
            .flat_map_iter(|w| {
                let u = self.domain.dual_idx(w);
                let raw = &buf[u * p..u * p + p];
                let last = raw[p - 1];
                (0..p - 1).map(move |j| raw[j] - last)
            })
            .collect();
        WalshSpectrum { p: self.p(), coeffs }
    }

    /// f(0) = 0 and f is not a linear functional.
    pub fn satisfies_fp_condition(&self) -> bool {
        if self.values[0] != 0 {
            return false;
        }
        !self.is_linear()
    }

    /// Whether f agrees with `<u, x>` for the u read off the basis vectors.
    fn is_linear(&self) -> bool {
        let space = self.domain.space();
        let u: Vec<u32> = (0..space.m).map(|i| self.value((space.p as usize).pow(i as u32))).collect();
        let u = space.index(&u);
        (0..self.values.len()).all(|x| self.value(x) == space.dot(u, x))
    }

    /// `f̂(w) σ_{-1}(f̂(w)) = p^m` for every w.
    pub fn is_bent(&self) -> bool {
        let spec = self.walsh_spectrum(WalshAlgorithm::Fast);
        let target = num_bigint::BigInt::from(self.domain.size() as u64);
        (0..self.domain.size()).into_par_iter().all(|w| {
            let v = spec.value(w);
            (&v * &v.conj()).equals_rational(target.clone())
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WalshAlgorithm {
    Naive,
    Fast,
}

/// All Walsh values of a function, in canonical integer coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshSpectrum {
    p: u32,
    coeffs: Vec<i64>,
}

impl WalshSpectrum {
    /// Wraps canonical coefficients laid out `p - 1` per point.
    pub fn from_raw(p: u32, coeffs: Vec<i64>) -> Self {
        assert_eq!(coeffs.len() % (p as usize - 1), 0, "coefficient count");
        WalshSpectrum { p, coeffs }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.coeffs.len() / (self.p as usize - 1)
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Canonical coefficients of f̂(w) on 1, ζ, …, ζ^{p-2}.
    pub fn coeffs(&self, w: usize) -> &[i64] {
        let k = self.p as usize - 1;
        &self.coeffs[w * k..w * k + k]
    }

    pub fn value(&self, w: usize) -> CycInt {
        let c = self.coeffs(w).iter().map(|&v| v.into()).collect();
        CycInt::from_coeffs(self.p, c).expect("coefficient count")
    }

    /// The integer value for p = 2; `None` for odd p.
    pub fn int_value(&self, w: usize) -> Option<i64> {
        (self.p == 2).then(|| self.coeffs[w])
    }

    /// `Σ_w f̂(w) σ_{-1}(f̂(w))`.
    pub fn parseval_sum(&self) -> CycInt {
        (0..self.len()).fold(CycInt::zero(self.p), |acc, w| {
            let v = self.value(w);
            acc + &v * &v.conj()
        })
    }
}

/// A Maiorana-McFarland description `f(x, y) = <φ(x), y> + g(x)` over F_2^s × F_2^t.
///
/// `phi[x]` is the index of φ(x) in F_2^t and `g[x]` the value of g.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MMSpec {
    pub p: u32,
    pub s: usize,
    pub t: usize,
    pub phi: Vec<usize>,
    pub g: Vec<u8>,
}

/// Builds the table on F_2^{s+t}; the element `(x, y)` has index `x + 2^s y`.
pub fn mm_function(spec: &MMSpec, m: usize) -> Result<PFunction> {
    if spec.p != 2 {
        return Err(Error::OddPrimeUnsupported);
    }
    if spec.s + spec.t != m {
        return Err(Error::DimensionMismatch(format!("s + t = {} but m = {m}", spec.s + spec.t)));
    }
    let (xs, ys) = (1usize << spec.s, 1usize << spec.t);
    if spec.phi.len() != xs || spec.g.len() != xs || spec.phi.iter().any(|&v| v >= ys) {
        return Err(Error::DimensionMismatch("phi and g must be tables on F_2^s".into()));
    }
    let domain = Domain::vector(2, m)?;
    Ok(PFunction::from_fn(domain, |idx| {
        let (x, y) = (idx % xs, idx / xs);
        (spec.phi[x] & y).count_ones() + spec.g[x] as u32
    }))
}

/// Generalized binomial `x (x-1) ⋯ (x-j+1) / j!` for any integer x.
pub fn binomial(x: i64, j: i64) -> i128 {
    if j < 0 {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..j {
        acc = acc * (x as i128 - i as i128) / (i as i128 + 1);
    }
    acc
}

/// `P_k(x) = Σ_j (-1)^j C(x, j) C(m - x, k - j)`.
pub fn krawtchouk(m: usize, k: i64, x: i64) -> Result<i128> {
    if k < 0 || k > m as i64 {
        return Err(Error::KOutOfRange { k, m });
    }
    Ok((0..=k)
        .map(|j| {
            let term = binomial(x, j) * binomial(m as i64 - x, k - j);
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f32_domain() -> Domain {
        Domain::Field(Field::new(2, 5, &[1, 0, 1, 0, 0, 1]).unwrap())
    }

    #[test]
    fn zero_and_linear_spectra() {
        for d in [f32_domain(), Domain::vector(3, 3).unwrap()] {
            let q = d.size() as i64;
            let zero = PFunction::zero(d.clone());
            let spec = zero.walsh_spectrum(WalshAlgorithm::Fast);
            assert!(spec.value(0).equals_rational(q));
            assert!((1..d.size()).all(|w| spec.value(w).is_zero()));
            let lin = PFunction::linear(d.clone(), 7);
            let spec = lin.walsh_spectrum(WalshAlgorithm::Fast);
            assert!(spec.value(7).equals_rational(q));
            assert!((0..d.size()).filter(|&w| w != 7).all(|w| spec.value(w).is_zero()));
            assert!(!zero.satisfies_fp_condition());
            assert!(!lin.satisfies_fp_condition());
            assert!(!zero.is_bent());
        }
    }

    #[test]
    fn fast_matches_naive() {
        let d = Domain::Field(Field::new(3, 3, &[1, 2, 0, 1]).unwrap());
        let f = PFunction::from_fn(d, |x| (x * x + 3 * x) as u32 % 7);
        assert_eq!(f.walsh_spectrum(WalshAlgorithm::Fast), f.walsh_spectrum(WalshAlgorithm::Naive));
    }

    #[test]
    fn walsh_at_rejects_foreign_points() {
        let f = PFunction::zero(f32_domain());
        assert_eq!(f.walsh_at(32), Err(Error::DomainMismatch));
    }

    #[test]
    fn single_point_indicator_satisfies_condition() {
        let d = Domain::vector(2, 4).unwrap();
        let f = PFunction::from_fn(d, |x| (x == 5) as u32);
        assert!(f.satisfies_fp_condition());
    }

    #[test]
    fn bent_examples() {
        let d = Domain::vector(2, 4).unwrap();
        let f = PFunction::from_fn(d, |x| ((x & 1) * (x >> 1 & 1) + (x >> 2 & 1) * (x >> 3 & 1)) as u32);
        assert!(f.is_bent());
        let spec = f.walsh_spectrum(WalshAlgorithm::Fast);
        assert!((0..16).all(|w| spec.int_value(w).unwrap().abs() == 4));

        // identity permutation for phi with g = 0 gives a bent function on F_2^6
        let mm = MMSpec { p: 2, s: 3, t: 3, phi: (0..8).collect(), g: vec![0; 8] };
        assert!(mm_function(&mm, 6).unwrap().is_bent());
    }

    #[test]
    fn mm_errors_and_zero() {
        let zero = MMSpec { p: 2, s: 2, t: 2, phi: vec![0; 4], g: vec![0; 4] };
        assert!(mm_function(&zero, 4).unwrap().values().iter().all(|&v| v == 0));
        assert!(matches!(mm_function(&zero, 5), Err(Error::DimensionMismatch(_))));
        let odd = MMSpec { p: 3, ..zero };
        assert_eq!(mm_function(&odd, 4), Err(Error::OddPrimeUnsupported));
    }

    #[test]
    fn krawtchouk_examples() {
        assert_eq!(krawtchouk(5, 2, 0).unwrap(), 10);
        assert_eq!(krawtchouk(5, 5, 3).unwrap(), -1);
        assert_eq!(krawtchouk(5, 1, 2).unwrap(), 1);
        assert_eq!(krawtchouk(5, 6, 0), Err(Error::KOutOfRange { k: 6, m: 5 }));
        assert_eq!(binomial(-3, 2), 6);
    }

    #[test]
    fn json_and_truth_table_round_trip() {
        let f = PFunction::from_fn(f32_domain(), |x| (x % 3 == 0) as u32);
        let json = serde_json::to_string(&f).unwrap();
        assert!(json.starts_with(r#"{"domain":{"p":2,"m":5,"modulus":[1,0,1,0,0,1]},"values":[1,0,0,1"#));
        assert_eq!(serde_json::from_str::<PFunction>(&json).unwrap(), f);
        let back = PFunction::from_truth_table(f32_domain(), &f.to_truth_table()).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<PFunction>(r#"{"domain":{"p":2,"m":2},"values":[0,1]}"#).is_err());
    }
}
