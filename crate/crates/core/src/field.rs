//! Arithmetic in F_{p^m}, the trace map, and subspaces of F_p^m.
//!
//! Elements are stored as polynomial-basis coordinate vectors. Every element
//! also has an *index* `Σ c_i p^i`, which fixes the enumeration order used by
//! function tables, spectra and codes throughout the crate.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// Largest field (or vector space) whose tables we are willing to build.
pub const MAX_ORDER: u64 = 1 << 22;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let (mut base, mut acc) = (a as u64 % p as u64, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// The coordinate space F_p^m with elements addressed by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VectorSpace {
    pub p: u32,
    pub m: usize,
}

impl VectorSpace {
    pub fn new(p: u32, m: usize) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if p > 255 {
            return Err(Error::PreconditionViolated("p must be below 256".into()));
        }
        if m == 0 {
            return Err(Error::DimensionMismatch("m must be positive".into()));
        }
        let size = (p as u64).checked_pow(m as u32).unwrap_or(u64::MAX);
        if size > MAX_ORDER {
            return Err(Error::FieldTooLarge { size, limit: MAX_ORDER });
        }
        Ok(VectorSpace { p, m })
    }

    /// Number of vectors, p^m.
    pub fn size(&self) -> usize {
        (self.p as usize).pow(self.m as u32)
    }

    pub fn digits(&self, mut idx: usize) -> Vec<u32> {
        let p = self.p as usize;
        (0..self.m)
            .map(|_| {
                let d = idx % p;
                idx /= p;
                d as u32
            })
            .collect()
    }

    pub fn index(&self, coords: &[u32]) -> usize {
        coords.iter().rev().fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.p == 2 {
            return a ^ b;
        }
        self.combine(a, 1, b)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.combine(a, self.p - 1, b)
    }

    /// `c * a`.
    pub fn scale(&self, c: u32, a: usize) -> usize {
        let p = self.p as usize;
        let c = (c % self.p) as usize;
        let (mut a, mut out, mut place) = (a, 0usize, 1usize);
        for _ in 0..self.m {
            out += (a % p * c % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    /// `a + c * b`.
    pub fn combine(&self, a: usize, c: u32, b: usize) -> usize {
        let p = self.p as usize;
        let c = (c % self.p) as usize;
        let (mut a, mut b, mut out, mut place) = (a, b, 0usize, 1usize);
        for _ in 0..self.m {
            out += ((a % p + c * (b % p)) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn dot(&self, a: usize, b: usize) -> u32 {
        let p = self.p as usize;
        let (mut a, mut b, mut acc) = (a, b, 0usize);
        for _ in 0..self.m {
            acc += (a % p) * (b % p);
            a /= p;
            b /= p;
        }
        (acc % p) as u32
    }

    /// Hamming weight of the coordinate vector with this index.
    pub fn weight(&self, mut idx: usize) -> usize {
        let p = self.p as usize;
        let mut w = 0;
        while idx > 0 {
            if !idx.is_multiple_of(p) {
                w += 1;
            }
            idx /= p;
        }
        w
    }

    pub fn element(&self, idx: usize) -> FieldElement {
        FieldElement { coeffs: self.digits(idx) }
    }

    pub fn index_of(&self, e: &FieldElement) -> Result<usize> {
        if e.coeffs.len() != self.m || e.coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.index(&e.coeffs))
    }
}

/// `Σ u_i v_i mod p`.
pub fn inner_product(u: &[u32], v: &[u32], p: u32) -> Result<u32> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch { left: u.len(), right: v.len() });
    }
    Ok((u.iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % p as u64) as u32)
}

/// Number of nonzero coordinates.
pub fn hamming_weight<T: Copy + Default + PartialEq>(v: &[T]) -> usize {
    v.iter().filter(|&&x| x != T::default()).count()
}

/// An element of F_{p^m} in polynomial-basis coordinates (constant term first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    pub coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// F_{p^m} = F_p[x]/(modulus), with `x` a primitive element `w`.
///
/// Multiplication uses exp/log tables; the trace of every element is cached.
pub struct Field {
    space: VectorSpace,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace: Vec<u8>,
    dual: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field(p={}, m={}, modulus={})", self.space.p, self.space.m, self.modulus_string())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.modulus == other.modulus
    }
}

impl Eq for Field {}

/// Remainder of `a` modulo the monic-or-not `b` over F_p (both constant-first).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db {
        let top = *r.last().unwrap();
        if top != 0 {
            let factor = top as u64 * lead_inv as u64 % p as u64;
            let shift = r.len() - 1 - db;
            for (j, &bj) in b.iter().enumerate() {
                let sub = factor * bj as u64 % p as u64;
                r[shift + j] = ((r[shift + j] as u64 + p as u64 - sub) % p as u64) as u32;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    for d in 1..=m / 2 {
        // every monic polynomial of degree d
        for tail in 0..(p as usize).pow(d as u32) {
            let mut g = VectorSpace { p, m: d }.digits(tail);
            g.push(1);
            if poly_rem(modulus, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds F_{p^m} from a monic modulus given constant term first.
    ///
    /// The modulus must be irreducible and the residue class of `x` must
    /// generate the multiplicative group.
    pub fn new(p: u32, m: usize, modulus: &[u32]) -> Result<Arc<Field>> {
        let space = VectorSpace::new(p, m)?;
        if modulus.len() != m + 1 || modulus[m] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadModulus { p, degree: m });
        }
        if !is_irreducible(modulus, p) {
            return Err(Error::ReducibleModulus { p });
        }
        let q = space.size();
        let mut exp = Vec::with_capacity(q - 1);
        let mut log = vec![u32::MAX; q];
        let mut cur = vec![0u32; m];
        cur[0] = 1;
        for i in 0..q - 1 {
            let idx = space.index(&cur);
            if i > 0 && idx == 1 {
                return Err(Error::NonPrimitiveGenerator { order: i as u64, expected: q as u64 - 1 });
            }
            exp.push(idx as u32);
            log[idx] = i as u32;
            // multiply by x
            let top = cur[m - 1];
            for j in (1..m).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..m {
                    let sub = top as u64 * modulus[j] as u64 % p as u64;
                    cur[j] = ((cur[j] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
        }
        let mut field = Field { space, modulus: modulus.to_vec(), exp, log, trace: Vec::new(), dual: Vec::new() };

        // Tr(w^i) for the polynomial basis, then extend linearly
        let basis_trace: Vec<u32> = (0..m)
            .map(|i| {
                let idx = p.pow(i as u32) as usize;
                let mut acc = 0usize;
                let mut frob = idx;
                for _ in 0..m {
                    acc = space.add(acc, frob);
                    frob = field.pow_idx(frob, p as u64);
                }
                assert!(acc < p as usize, "trace left the prime field");
                acc as u32
            })
            .collect();
        field.trace = (0..q)
            .map(|idx| {
                let d = space.digits(idx);
                (d.iter().zip(&basis_trace).map(|(&c, &t)| c as u64 * t as u64).sum::<u64>() % p as u64) as u8
            })
            .collect();
        let basis_idx: Vec<usize> = (0..m).map(|i| (p as usize).pow(i as u32)).collect();
        field.dual = (0..q)
            .map(|w| {
                let coords: Vec<u32> = basis_idx.iter().map(|&b| field.trace[field.mul_idx(w, b)] as u32).collect();
                space.index(&coords) as u32
            })
            .collect();
        Ok(Arc::new(field))
    }

    /// Parses a polynomial such as `x^5+2x^2+1` into a constant-first coefficient list.
    pub fn parse_modulus(text: &str, p: u32) -> Result<Vec<u32>> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut coeffs: Vec<u32> = Vec::new();
        for term in cleaned.replace('-', "+-").split('+').filter(|t| !t.is_empty()) {
            let (neg, term) = match term.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, term),
            };
            let (coef, deg) = if let Some(pos) = term.find(['x', 'X', 'w']) {
                let c = term[..pos].trim_end_matches('*');
                let c: u32 = if c.is_empty() { 1 } else { c.parse().map_err(|_| Error::Parse(text.into()))? };
                let rest = &term[pos + 1..];
                let d: usize = if rest.is_empty() {
                    1
                } else {
                    rest.trim_start_matches('^').parse().map_err(|_| Error::Parse(text.into()))?
                };
                (c, d)
            } else {
                (term.parse().map_err(|_| Error::Parse(text.into()))?, 0)
            };
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, 0);
            }
            let c = coef % p;
            let c = if neg { (p - c) % p } else { c };
            coeffs[deg] = (coeffs[deg] + c) % p;
        }
        if coeffs.is_empty() {
            return Err(Error::Parse(text.into()));
        }
        Ok(coeffs)
    }

    pub fn p(&self) -> u32 {
        self.space.p
    }

    pub fn m(&self) -> usize {
        self.space.m
    }

    pub fn order(&self) -> usize {
        self.space.size()
    }

    pub fn space(&self) -> VectorSpace {
        self.space
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn modulus_string(&self) -> String {
        let mut parts = Vec::new();
        for (d, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && d > 0 { String::new() } else { c.to_string() };
            parts.push(match d {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{d}"),
            });
        }
        parts.join("+")
    }

    // ---- index-level kernels ----

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.exp.len();
        self.exp[(self.log[a] as usize + self.log[b] as usize) % n] as usize
    }

    pub fn inv_idx(&self, a: usize) -> Option<usize> {
        if a == 0 {
            return None;
        }
        let n = self.exp.len();
        Some(self.exp[(n - self.log[a] as usize) % n] as usize)
    }

    pub fn pow_idx(&self, a: usize, e: u64) -> usize {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = self.exp.len() as u64;
        self.exp[((self.log[a] as u64 * (e % n)) % n) as usize] as usize
    }

    /// Index of `w^i`.
    pub fn power_idx(&self, i: i64) -> usize {
        let n = self.exp.len() as i64;
        self.exp[i.rem_euclid(n) as usize] as usize
    }

    /// Discrete logarithm to base `w`; `None` for zero.
    pub fn log_idx(&self, a: usize) -> Option<u32> {
        (a != 0).then(|| self.log[a])
    }

    pub fn trace_idx(&self, a: usize) -> u32 {
        self.trace[a] as u32
    }

    /// `Tr(a * b)`.
    pub fn trace_form(&self, a: usize, b: usize) -> u32 {
        self.trace[self.mul_idx(a, b)] as u32
    }

    /// Index of the vector `(Tr(a w^i))_i`, so that `Tr(a x) = <dual(a), x>`.
    pub fn dual_idx(&self, a: usize) -> usize {
        self.dual[a] as usize
    }

    // ---- element-level API ----

    pub fn element(&self, idx: usize) -> FieldElement {
        self.space.element(idx)
    }

    pub fn index_of(&self, e: &FieldElement) -> Result<usize> {
        self.space.index_of(e)
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// `w^i` for any integer `i`.
    pub fn generator_power(&self, i: i64) -> FieldElement {
        self.element(self.power_idx(i))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.element(self.space.add(self.index_of(a)?, self.index_of(b)?)))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.element(self.space.sub(self.index_of(a)?, self.index_of(b)?)))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.element(self.mul_idx(self.index_of(a)?, self.index_of(b)?)))
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.inv_idx(self.index_of(a)?).map(|i| self.element(i)).ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, a: &FieldElement, e: u64) -> Result<FieldElement> {
        Ok(self.element(self.pow_idx(self.index_of(a)?, e)))
    }

    pub fn log(&self, a: &FieldElement) -> Result<Option<u32>> {
        Ok(self.log_idx(self.index_of(a)?))
    }

    /// `Tr(x) = Σ_{i<m} x^{p^i}`.
    pub fn trace(&self, a: &FieldElement) -> Result<u32> {
        Ok(self.trace_idx(self.index_of(a)?))
    }
}

/// The bilinear form used to define orthogonal complements.
#[derive(Clone, Copy, Debug)]
pub enum Form<'a> {
    /// `B(x, y) = Tr(xy)` on F_q.
    Trace(&'a Field),
    /// Coordinate dot product on F_p^m.
    Dot,
}

/// A subspace of F_p^m stored by its reduced row-echelon basis.
///
/// Rows are ordered by pivot column (coordinate 0 first) and pivots are 1, so
/// two subspaces are equal exactly when their bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    space: VectorSpace,
    basis: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn zero(space: VectorSpace) -> Self {
        Subspace { space, basis: Vec::new() }
    }

    pub fn full(space: VectorSpace) -> Self {
        let basis = (0..space.m)
            .map(|i| {
                let mut r = vec![0; space.m];
                r[i] = 1;
                r
            })
            .collect();
        Subspace { space, basis }
    }

    /// Span of the given generators; dependent generators are dropped.
    pub fn span(space: VectorSpace, generators: &[FieldElement]) -> Result<Self> {
        let rows =
            generators.iter().map(|g| space.index_of(g).map(|_| g.coeffs.clone())).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_rows(space, rows))
    }

    pub fn span_indices(space: VectorSpace, generators: &[usize]) -> Self {
        Self::from_rows(space, generators.iter().map(|&g| space.digits(g)).collect())
    }

    pub(crate) fn from_rows(space: VectorSpace, rows: Vec<Vec<u32>>) -> Self {
        Subspace { space, basis: linalg::rref(rows, space.p) }
    }

    pub fn space(&self) -> VectorSpace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn basis_elements(&self) -> Vec<FieldElement> {
        self.basis.iter().map(|r| FieldElement { coeffs: r.clone() }).collect()
    }

    /// `p^dim`.
    pub fn size(&self) -> usize {
        (self.space.p as usize).pow(self.dim() as u32)
    }

    pub fn contains_idx(&self, idx: usize) -> bool {
        let mut rows = self.basis.clone();
        rows.push(self.space.digits(idx));
        linalg::rref(rows, self.space.p).len() == self.dim()
    }

    pub fn contains(&self, e: &FieldElement) -> Result<bool> {
        Ok(self.contains_idx(self.space.index_of(e)?))
    }

    /// Indices of all elements, ascending.
    pub fn element_indices(&self) -> Vec<usize> {
        let basis_idx: Vec<usize> = self.basis.iter().map(|r| self.space.index(r)).collect();
        let mut out = vec![0usize];
        for &b in &basis_idx {
            let current = out.clone();
            for c in 1..self.space.p {
                out.extend(current.iter().map(|&x| self.space.combine(x, c, b)));
            }
        }
        out.sort_unstable();
        out
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::from_rows(self.space, rows)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let a = self.orthogonal_complement(Form::Dot);
        let b = other.orthogonal_complement(Form::Dot);
        a.sum(&b).orthogonal_complement(Form::Dot)
    }

    /// Orthogonal complement under the chosen form.
    pub fn orthogonal_complement(&self, form: Form<'_>) -> Subspace {
        let rows: Vec<Vec<u32>> = match form {
            Form::Dot => self.basis.clone(),
            Form::Trace(field) => {
                self.basis.iter().map(|r| self.space.digits(field.dual_idx(self.space.index(r)))).collect()
            }
        };
        Self::from_rows(self.space, linalg::null_space(&rows, self.space.m, self.space.p))
    }
}

/// Which case of the subspace-family classification a family falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceCase {
    /// A single subspace.
    I,
    /// Two subspaces with complementary dimensions.
    Ii,
    /// More than two subspaces, all of dimension m/2.
    Iii,
    Violation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub satisfies_eq8: bool,
    pub case: SpaceCase,
    pub dims: Vec<usize>,
    /// `(i, j, dim(E_i ∩ E_j))` for i < j.
    pub intersection_dims: Vec<(usize, usize, usize)>,
    /// `(i, j, dim(E_i^⊥ ∩ E_j^⊥))` for i < j.
    pub perp_intersection_dims: Vec<(usize, usize, usize)>,
}

/// Checks pairwise trivial intersections of a family and of its complements,
/// then classifies the family.
pub fn check_space_conditions(family: &[Subspace], form: Form<'_>) -> Result<ConditionReport> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    let space = first.space();
    if family.iter().any(|e| e.space() != space) {
        return Err(Error::FieldMismatch);
    }
    let m = space.m;
    let dims: Vec<usize> = family.iter().map(Subspace::dim).collect();
    let perps: Vec<Subspace> = family.iter().map(|e| e.orthogonal_complement(form)).collect();
    let mut intersection_dims = Vec::new();
    let mut perp_intersection_dims = Vec::new();
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            intersection_dims.push((i, j, family[i].intersection(&family[j]).dim()));
            perp_intersection_dims.push((i, j, perps[i].intersection(&perps[j]).dim()));
        }
    }
    let satisfies_eq8 = dims.iter().all(|&t| (1..m).contains(&t))
        && intersection_dims.iter().all(|&(_, _, d)| d == 0)
        && perp_intersection_dims.iter().all(|&(_, _, d)| d == 0);
    let s = family.len();
    let case = if !satisfies_eq8 {
        SpaceCase::Violation
    } else if s == 1 {
        SpaceCase::I
    } else if s == 2 && dims[0] + dims[1] == m {
        SpaceCase::Ii
    } else if s > 2 && m % 2 == 0 && dims.iter().all(|&t| 2 * t == m) {
        SpaceCase::Iii
    } else {
        SpaceCase::Violation
    };
    Ok(ConditionReport { satisfies_eq8, case, dims, intersection_dims, perp_intersection_dims })
}
