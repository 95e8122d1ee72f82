//! Linear codes from functions and defining sets: weight distributions by
//! enumeration and by Walsh formulas, and four minimality tests.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::SubsetD;
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::field::{inv_mod, VectorSpace};
use crate::linalg;
use crate::pfunc::{PFunction, WalshAlgorithm, WalshSpectrum};

/// Guard rails for exhaustive work.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest number of codewords enumerated.
    pub codewords: u128,
    /// Largest pairwise work, counted as codeword pairs times length.
    pub pair_work: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { codewords: 1 << 26, pair_work: 1 << 38 }
    }
}

impl Budget {
    fn check_codewords(&self, count: u128) -> Result<()> {
        if count > self.codewords {
            return Err(Error::TooLargeToEnumerate { work: count, budget: self.codewords });
        }
        Ok(())
    }

    fn check_pairs(&self, work: u128) -> Result<()> {
        if work > self.pair_work {
            return Err(Error::TooLargeToEnumerate { work, budget: self.pair_work });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeFamily {
    /// `{(u f(x) - pairing(v, x))_{x ≠ 0}}`.
    Function(PFunction),
    /// `{(pairing(β, x))_{x ∈ D}}`.
    DefiningSet(SubsetD),
    Explicit,
}

/// A code given by generator rows over F_p.
///
/// `rows` is always linearly independent. When the family's natural
/// generators are independent (`natural == true`), message indices match the
/// natural labels: `u + p * v` for function codes and `β` for defining-set
/// codes. Otherwise a greedy independent subset of them is kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    pub family: CodeFamily,
    pub p: u32,
    pub n: usize,
    pub k: usize,
    pub natural: bool,
    rows: Vec<Vec<u8>>,
}

fn independent_rows(rows: Vec<Vec<u8>>, p: u32) -> (Vec<Vec<u8>>, bool) {
    let total = rows.len();
    let mut kept: Vec<Vec<u8>> = Vec::new();
    let mut as_u32: Vec<Vec<u32>> = Vec::new();
    for row in rows {
        let mut trial = as_u32.clone();
        trial.push(row.iter().map(|&v| v as u32).collect());
        if linalg::rank(trial.clone(), p) > kept.len() {
            as_u32 = trial;
            kept.push(row);
        }
    }
    let natural = kept.len() == total;
    (kept, natural)
}

impl CodeSpec {
    pub fn explicit(p: u32, rows: Vec<Vec<u8>>) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch { left: bad.len(), right: n });
        }
        let rows = rows.into_iter().map(|r| r.into_iter().map(|v| (v as u32 % p) as u8).collect()).collect();
        let (rows, natural) = independent_rows(rows, p);
        Ok(CodeSpec { family: CodeFamily::Explicit, p, n, k: rows.len(), natural, rows })
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// Number of codewords, p^k.
    pub fn size(&self) -> u128 {
        (self.p as u128).pow(self.k as u32)
    }

    fn message_space(&self) -> VectorSpace {
        VectorSpace { p: self.p, m: self.k }
    }

    pub fn codeword(&self, msg: usize) -> Vec<u8> {
        let p = self.p;
        let mut word = vec![0u8; self.n];
        let mut rest = msg;
        for row in &self.rows {
            let d = (rest % p as usize) as u32;
            rest /= p as usize;
            if d == 0 {
                continue;
            }
            for (w, &r) in word.iter_mut().zip(row) {
                *w = ((*w as u32 + d * r as u32) % p) as u8;
            }
        }
        word
    }

    /// Visits every codeword in message order, chunked across threads.
    fn par_for_each<F>(&self, out_per_msg: usize, out: &mut [u64], visit: F)
    where
        F: Fn(&[u8], &mut [u64]) + Sync,
    {
        let p = self.p as usize;
        let low = self.k.saturating_sub(6).min(14);
        let chunk_msgs = p.pow(low as u32);
        out.par_chunks_mut(chunk_msgs * out_per_msg).enumerate().for_each(|(c, slots)| {
            let base = c * chunk_msgs;
            let mut word = self.codeword(base);
            let mut digits = vec![0usize; low];
            for i in 0..chunk_msgs {
                visit(&word, &mut slots[i * out_per_msg..(i + 1) * out_per_msg]);
                for (j, d) in digits.iter_mut().enumerate() {
                    for (w, &r) in word.iter_mut().zip(&self.rows[j]) {
                        *w = ((*w as usize + r as usize) % p) as u8;
                    }
                    *d += 1;
                    if *d < p {
                        break;
                    }
                    *d = 0;
                }
            }
        });
    }

    /// Hamming weight of every codeword, by message index.
    pub fn weight_table(&self, budget: &Budget) -> Result<Vec<u32>> {
        budget.check_codewords(self.size())?;
        let mut out = vec![0u64; self.size() as usize];
        self.par_for_each(1, &mut out, |word, slot| {
            slot[0] = word.iter().filter(|&&v| v != 0).count() as u64;
        });
        Ok(out.into_iter().map(|w| w as u32).collect())
    }

    /// Support bitsets, `words_per_codeword()` u64s per message.
    fn support_table(&self) -> Vec<u64> {
        let wpc = self.words_per_codeword();
        let mut out = vec![0u64; self.size() as usize * wpc];
        self.par_for_each(wpc, &mut out, |word, slot| {
            for (i, &v) in word.iter().enumerate() {
                if v != 0 {
                    slot[i / 64] |= 1 << (i % 64);
                }
            }
        });
        out
    }

    fn words_per_codeword(&self) -> usize {
        self.n.div_ceil(64).max(1)
    }

    /// Messages whose lowest nonzero digit is 1: one per projective point.
    pub fn projective_messages(&self) -> Vec<usize> {
        let space = self.message_space();
        (1..self.size() as usize)
            .filter(|&msg| {
                let d = space.digits(msg);
                d.iter().find(|&&c| c != 0) == Some(&1)
            })
            .collect()
    }
}

/// Builds `C_f`. Rows are `f(x)` then `-pairing(e_i, x)`, over nonzero x.
pub fn build_function_code(f: &PFunction) -> CodeSpec {
    let domain = f.domain();
    let (p, q, m) = (domain.p(), domain.size(), domain.m());
    let mut rows = vec![(1..q).map(|x| f.value(x) as u8).collect::<Vec<u8>>()];
    for i in 0..m {
        let e = (p as usize).pow(i as u32);
        rows.push((1..q).map(|x| ((p - domain.pairing(e, x)) % p) as u8).collect());
    }
    if !f.satisfies_fp_condition() {
        log::warn!("f(0) != 0 or f is linear; the code may lose dimension");
    }
    let (rows, natural) = independent_rows(rows, p);
    CodeSpec { family: CodeFamily::Function(f.clone()), p, n: q - 1, k: rows.len(), natural, rows }
}

/// Builds `C_D` with coordinates in increasing index order.
pub fn build_defining_set_code(d: &SubsetD) -> Result<CodeSpec> {
    if d.is_empty() {
        return Err(Error::EmptyDefiningSet);
    }
    let domain = d.domain();
    let p = domain.p();
    let rows = (0..domain.m())
        .map(|i| {
            let e = (p as usize).pow(i as u32);
            d.elements().iter().map(|&x| domain.pairing(e, x) as u8).collect()
        })
        .collect();
    let (rows, natural) = independent_rows(rows, p);
    Ok(CodeSpec { family: CodeFamily::DefiningSet(d.clone()), p, n: d.len(), k: rows.len(), natural, rows })
}

/// Weight → frequency, including the zero codeword.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    pub n: usize,
    pub k: usize,
    pub counts: BTreeMap<usize, u64>,
}

impl WeightDistribution {
    pub fn from_weights(n: usize, k: usize, weights: impl IntoIterator<Item = u32>) -> Self {
        let mut counts = BTreeMap::new();
        for w in weights {
            *counts.entry(w as usize).or_insert(0) += 1;
        }
        WeightDistribution { n, k, counts }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn w_min(&self) -> Option<usize> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    pub fn w_max(&self) -> Option<usize> {
        self.counts.keys().copied().rev().find(|&w| w > 0)
    }

    /// `"1+z^10+21z^14+…"`, ascending weights.
    pub fn enumerator(&self) -> String {
        let mut out = String::new();
        for (&w, &c) in &self.counts {
            if !out.is_empty() {
                out.push('+');
            }
            if w == 0 {
                out.push_str(&c.to_string());
                continue;
            }
            if c != 1 {
                out.push_str(&c.to_string());
            }
            out.push('z');
            if w != 1 {
                out.push('^');
                out.push_str(&w.to_string());
            }
        }
        out
    }

    /// `[n, k, d]`.
    pub fn parameters(&self) -> String {
        format!("[{},{},{}]", self.n, self.k, self.w_min().unwrap_or(0))
    }

    /// `weight,frequency` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,frequency\n");
        for (w, c) in &self.counts {
            out.push_str(&format!("{w},{c}\n"));
        }
        out
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.parameters(), self.enumerator())
    }
}

#[derive(Serialize, Deserialize)]
struct WeightDistributionRepr {
    n: usize,
    k: usize,
    counts: BTreeMap<usize, u64>,
    enumerator: String,
}

impl Serialize for WeightDistribution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WeightDistributionRepr { n: self.n, k: self.k, counts: self.counts.clone(), enumerator: self.enumerator() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightDistribution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = WeightDistributionRepr::deserialize(d)?;
        let wd = WeightDistribution { n: r.n, k: r.k, counts: r.counts };
        if wd.enumerator() != r.enumerator {
            return Err(serde::de::Error::custom("enumerator does not match counts"));
        }
        Ok(wd)
    }
}

pub fn weight_distribution_enumerate(code: &CodeSpec, budget: &Budget) -> Result<WeightDistribution> {
    let table = code.weight_table(budget)?;
    Ok(WeightDistribution::from_weights(code.n, code.k, table))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Direct,
    Complement,
}

/// Canonical coefficients of a fixed element, as i64.
fn small_coeffs(z: &CycInt) -> Vec<i64> {
    z.coeffs().iter().map(|c| c.to_i64().expect("small value")).collect()
}

/// The spectrum of `f_{D̄}` from that of `f_D`:
/// `f̂_D + f̂_{D̄}` is `(q-1)ζ + q + 1` at 0 and `1 - ζ` elsewhere.
pub fn complement_spectrum(spec: &WalshSpectrum, q: usize) -> WalshSpectrum {
    let p = spec.p();
    let at_zero = small_coeffs(&(CycInt::zeta(p).scale(q as i64 - 1) + CycInt::from_int(p, q as i64 + 1)));
    let elsewhere = small_coeffs(&(CycInt::one(p) - CycInt::zeta(p)));
    let k = p as usize - 1;
    let mut coeffs = Vec::with_capacity(q * k);
    for w in 0..q {
        let base = if w == 0 { &at_zero } else { &elsewhere };
        coeffs.extend(base.iter().zip(spec.coeffs(w)).map(|(a, b)| a - b));
    }
    WalshSpectrum::from_raw(p, coeffs)
}

/// Weight of the function-code word `(u, v)` from the Walsh value at `u^{-1} v`.
fn formula_weight(p: u32, q: usize, spec: &WalshSpectrum, u: u32, v_scaled: usize) -> Result<u64> {
    let pm1 = q / p as usize;
    if p == 2 {
        let f = spec.int_value(v_scaled).expect("binary");
        let twice = q as i64 - f;
        if twice < 0 || twice % 2 != 0 {
            return Err(Error::DivisibilityAssertionFailed(format!("(q - f̂)/2 with f̂ = {f}")));
        }
        return Ok((twice / 2) as u64);
    }
    let value = CycInt::from_coeffs(p, spec.coeffs(v_scaled).iter().map(|&v| BigInt::from(v)).collect())?;
    let g = value.galois_sigma(u as i64)?.galois_sum()?;
    let (quot, rem) = num_integer::Integer::div_rem(&g, &BigInt::from(p));
    if !rem.is_zero() {
        return Err(Error::DivisibilityAssertionFailed(format!("Galois sum {g} not divisible by {p}")));
    }
    let w = BigInt::from(q - pm1) - quot;
    w.to_u64().ok_or_else(|| Error::DivisibilityAssertionFailed(format!("negative weight {w}")))
}

/// Weight distribution of `C_f` (or of `C_{f_{D̄}}`) from the Walsh spectrum of f.
pub fn weight_distribution_via_walsh(f: &PFunction, variant: Variant) -> Result<WeightDistribution> {
    let domain = f.domain();
    let (p, q, m) = (domain.p(), domain.size(), domain.m());
    let spec = f.walsh_spectrum(WalshAlgorithm::Fast);
    let spec = match variant {
        Variant::Direct => {
            if !f.satisfies_fp_condition() {
                return Err(Error::ConditionFpViolated);
            }
            spec
        }
        Variant::Complement => {
            if !f.is_indicator() || f.value(0) != 0 {
                return Err(Error::NonIndicatorComplement);
            }
            let comp = PFunction::from_fn(domain.clone(), |x| (x != 0 && f.value(x) == 0) as u32);
            if !comp.satisfies_fp_condition() {
                return Err(Error::ConditionFpViolated);
            }
            complement_spectrum(&spec, q)
        }
    };
    let simplex = (q - q / p as usize) as u64;
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    *counts.entry(0).or_default() += 1;
    *counts.entry(simplex as usize).or_default() += q as u64 - 1;
    let per_u: Vec<Vec<u64>> = (1..p)
        .into_par_iter()
        .map(|u| {
            let inv = inv_mod(u, p);
            (0..q).map(|v| formula_weight(p, q, &spec, u, domain.scale(inv, v))).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    for w in per_u.into_iter().flatten() {
        *counts.entry(w as usize).or_default() += 1;
    }
    Ok(WeightDistribution { n: q - 1, k: m + 1, counts })
}

/// `Σ_{y ∈ F_p^*} f̂_D(y β)` for every β, in canonical coordinates.
fn scaled_sums(spec: &WalshSpectrum, space: VectorSpace) -> Vec<i64> {
    let p = space.p;
    let k = p as usize - 1;
    let mut out = vec![0i64; space.size() * k];
    out.par_chunks_mut(k).enumerate().for_each(|(beta, slot)| {
        for y in 1..p {
            for (s, &c) in slot.iter_mut().zip(spec.coeffs(space.scale(y, beta))) {
                *s += c;
            }
        }
    });
    out
}

/// `wt(c_β) = ((p-1)/p)|D| - (1/(p(ζ-1))) Σ_y f̂_D(yβ)` for every β.
fn defining_set_weights(d: &SubsetD, spec: &WalshSpectrum) -> Result<Vec<u64>> {
    let space = d.domain().space();
    let p = space.p;
    let k = p as usize - 1;
    let sums = scaled_sums(spec, space);
    let zeta_minus_one = CycInt::zeta(p) - CycInt::one(p);
    (0..space.size())
        .into_par_iter()
        .map(|beta| {
            if beta == 0 {
                return Ok(0);
            }
            let s = CycInt::from_coeffs(p, sums[beta * k..beta * k + k].iter().map(|&v| v.into()).collect())?;
            let t = s.exact_div(&zeta_minus_one)?;
            let t = t.as_integer().ok_or(Error::ExactDivisionFailed)?;
            let num = BigInt::from((p as u64 - 1) * d.len() as u64) - t;
            let (w, r) = num_integer::Integer::div_rem(&num, &BigInt::from(p));
            if !r.is_zero() {
                return Err(Error::ExactDivisionFailed);
            }
            w.to_u64().ok_or(Error::ExactDivisionFailed)
        })
        .collect()
}

/// The weight of `c_β` in `C_D`, evaluated through the Walsh spectrum of `f_D`.
pub fn defining_set_weight(d: &SubsetD, beta: usize) -> Result<u64> {
    if d.is_empty() {
        return Err(Error::EmptyDefiningSet);
    }
    if beta == 0 {
        return Err(Error::ZeroBeta);
    }
    let f = d.characteristic_function();
    let p = d.domain().p();
    let zeta_minus_one = CycInt::zeta(p) - CycInt::one(p);
    let mut s = CycInt::zero(p);
    for y in 1..p {
        s = s + f.walsh_at(d.domain().scale(y, beta))?;
    }
    let t = s.exact_div(&zeta_minus_one)?;
    let t = t.as_integer().ok_or(Error::ExactDivisionFailed)?;
    let num = BigInt::from((p as u64 - 1) * d.len() as u64) - t;
    let (w, r) = num_integer::Integer::div_rem(&num, &BigInt::from(p));
    if !r.is_zero() {
        return Err(Error::ExactDivisionFailed);
    }
    w.to_u64().ok_or(Error::ExactDivisionFailed)
}

/// Weight distribution of `C_D` through the Walsh route; requires full rank.
pub fn defining_set_distribution_via_walsh(d: &SubsetD) -> Result<WeightDistribution> {
    if d.is_empty() {
        return Err(Error::EmptyDefiningSet);
    }
    let m = d.domain().m();
    let rank = d.rank();
    if rank < m {
        return Err(Error::DeficientRank { rank, m });
    }
    let spec = d.characteristic_function().walsh_spectrum(WalshAlgorithm::Fast);
    let weights = defining_set_weights(d, &spec)?;
    Ok(WeightDistribution::from_weights(d.len(), m, weights.into_iter().map(|w| w as u32)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Oracle,
    Sumcheck,
    BinaryWalsh,
    DefiningSet,
}

/// `a` covers `b` (message indices). `points` carries the Walsh-domain
/// points behind the witness when the test worked on a spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub a: usize,
    pub b: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityVerdict {
    pub minimal: bool,
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default)]
    pub settled_by_bound: bool,
}

impl MinimalityVerdict {
    fn from_witness(method: Method, witness: Option<Witness>) -> Self {
        MinimalityVerdict { minimal: witness.is_none(), method, witness, settled_by_bound: false }
    }
}

/// `Suppt(b) ⊆ Suppt(a)`, recomputed from the generator rows.
pub fn covers(code: &CodeSpec, a: usize, b: usize) -> bool {
    let (ca, cb) = (code.codeword(a), code.codeword(b));
    ca.iter().zip(&cb).all(|(&x, &y)| y == 0 || x != 0)
}

/// `Σ_{c ≠ 0} wt(a + cb) = (p-1) wt(a) - wt(b)`, recomputed from codewords.
pub fn sum_identity_holds(code: &CodeSpec, a: usize, b: usize) -> bool {
    let space = code.message_space();
    let wt = |msg: usize| code.codeword(msg).iter().filter(|&&v| v != 0).count() as i64;
    let lhs: i64 = (1..code.p).map(|c| wt(space.combine(a, c, b))).sum();
    lhs == (code.p as i64 - 1) * wt(a) - wt(b)
}

/// Whether `a` and `b` are linearly independent messages.
pub fn independent(code: &CodeSpec, a: usize, b: usize) -> bool {
    let space = code.message_space();
    a != 0 && b != 0 && (1..code.p).all(|c| space.scale(c, b) != a)
}

/// Exhaustive support-inclusion test over projective pairs.
pub fn is_minimal_oracle(code: &CodeSpec, budget: &Budget) -> Result<MinimalityVerdict> {
    budget.check_codewords(code.size())?;
    budget.check_pairs(code.size() * code.size() * code.n as u128)?;
    let wpc = code.words_per_codeword();
    let supports = code.support_table();
    let reps = code.projective_messages();
    let supp = |msg: usize| &supports[msg * wpc..(msg + 1) * wpc];
    let witness = reps.par_iter().find_map_first(|&a| {
        let sa = supp(a);
        reps.iter().find(|&&b| b != a && supp(b).iter().zip(sa).all(|(&y, &x)| y & !x == 0)).map(|&b| Witness {
            a,
            b,
            points: None,
        })
    });
    Ok(MinimalityVerdict::from_witness(Method::Oracle, witness))
}

/// The sum-of-weights criterion over projective pairs.
pub fn is_minimal_sumcheck(code: &CodeSpec, budget: &Budget) -> Result<MinimalityVerdict> {
    let weights = code.weight_table(budget)?;
    let p = code.p;
    let reps = code.projective_messages();
    budget.check_pairs(reps.len() as u128 * reps.len() as u128 * (p as u128 - 1))?;
    let space = code.message_space();
    let witness = reps.par_iter().find_map_first(|&a| {
        let target_a = (p as i64 - 1) * weights[a] as i64;
        reps.iter()
            .find(|&&b| {
                if b == a {
                    return false;
                }
                let lhs: i64 = (1..p).map(|c| weights[space.combine(a, c, b)] as i64).sum();
                lhs == target_a - weights[b] as i64
            })
            .map(|&b| Witness { a, b, points: None })
    });
    Ok(MinimalityVerdict::from_witness(Method::Sumcheck, witness))
}

/// Binary criterion: minimal iff no distinct h, l with `f̂(h) ± f̂(l) = q`.
///
/// On failure the witness codewords are, with `c_v = f + Tr(vx)` at message
/// `1 + 2v` and `t_v = Tr(vx)` at message `2v`: `c_l` covers `c_h` for a
/// difference hit, `t_{h+l}` covers `c_h` for a sum hit.
pub fn is_minimal_binary_walsh(f: &PFunction) -> Result<MinimalityVerdict> {
    if f.p() != 2 {
        return Err(Error::OddPrimeUnsupported);
    }
    if !f.satisfies_fp_condition() {
        return Err(Error::ConditionFpViolated);
    }
    let q = f.domain().size();
    let spec = f.walsh_spectrum(WalshAlgorithm::Fast);
    let vals: Vec<i64> = (0..q).map(|w| spec.int_value(w).unwrap()).collect();
    let mut by_value: HashMap<i64, Vec<usize>> = HashMap::new();
    for (w, &v) in vals.iter().enumerate() {
        by_value.entry(v).or_default().push(w);
    }
    let qi = q as i64;
    let first_other = |value: i64, h: usize| by_value.get(&value).and_then(|ls| ls.iter().copied().find(|&l| l != h));
    let witness = (0..q).find_map(|h| {
        if let Some(l) = first_other(vals[h] - qi, h) {
            return Some(Witness { a: 1 + 2 * l, b: 1 + 2 * h, points: Some((h, l)) });
        }
        first_other(qi - vals[h], h).map(|l| Witness { a: 2 * (h ^ l), b: 1 + 2 * h, points: Some((h, l)) })
    });
    Ok(MinimalityVerdict::from_witness(Method::BinaryWalsh, witness))
}

fn require_full_rank(d: &SubsetD) -> Result<()> {
    if d.is_empty() {
        return Err(Error::EmptyDefiningSet);
    }
    let (rank, m) = (d.rank(), d.domain().m());
    if rank < m {
        return Err(Error::DeficientRank { rank, m });
    }
    Ok(())
}

fn projective_points(space: VectorSpace) -> Vec<usize> {
    (1..space.size()).filter(|&x| space.digits(x).iter().find(|&&c| c != 0) == Some(&1)).collect()
}

/// Binary defining-set test on the spectrum of `f_D`, with `target` the
/// forbidden value of `s(β1) + s(β2) - s(β1 + β2)` where `s = sign * f̂_D`.
fn binary_defining_set(vals: &[i64], sign: i64, target: i64, size: usize) -> Option<Witness> {
    (1..size).into_par_iter().find_map_first(|b1| {
        (b1 + 1..size).find(|&b2| sign * (vals[b1] + vals[b2] - vals[b1 ^ b2]) == target).map(|b2| Witness {
            a: b1 ^ b2,
            b: b1,
            points: Some((b1, b2)),
        })
    })
}

/// Minimality of `C_D` decided on the Walsh spectrum of `f_D`.
///
/// For p = 2 the test is `f̂(β1+β2) - f̂(β1) - f̂(β2) ≠ 2|D|`, preceded by the
/// sufficient bound `3|f̂(β)| < 2|D|`. For odd p the Galois-sum identity is
/// checked exactly in Z[ζ_p]. A witness `(a, b)` means `c_a` covers `c_b`.
pub fn is_minimal_defining_set(d: &SubsetD) -> Result<MinimalityVerdict> {
    require_full_rank(d)?;
    let space = d.domain().space();
    let p = space.p;
    let spec = d.characteristic_function().walsh_spectrum(WalshAlgorithm::Fast);
    let size = space.size();
    let n = d.len() as i64;
    if p == 2 {
        let vals: Vec<i64> = (0..size).map(|w| spec.int_value(w).unwrap()).collect();
        if (1..size).all(|w| 3 * vals[w].abs() < 2 * n) {
            return Ok(MinimalityVerdict {
                minimal: true,
                method: Method::DefiningSet,
                witness: None,
                settled_by_bound: true,
            });
        }
        let witness = binary_defining_set(&vals, -1, 2 * n, size);
        return Ok(MinimalityVerdict::from_witness(Method::DefiningSet, witness));
    }
    let k = p as usize - 1;
    let sums = scaled_sums(&spec, space);
    let s = |beta: usize| &sums[beta * k..beta * k + k];
    let target = small_coeffs(&(CycInt::zeta(p) - CycInt::one(p)).scale((p as i64 - 1) * n));
    let reps = projective_points(space);
    let witness = reps.par_iter().find_map_first(|&b1| {
        reps.iter()
            .find(|&&b2| {
                if b2 == b1 {
                    return false;
                }
                let mut acc: Vec<i64> = s(b2).iter().zip(s(b1)).map(|(x, y)| x - (p as i64 - 1) * y).collect();
                for c in 1..p {
                    for (a, &v) in acc.iter_mut().zip(s(space.combine(b1, c, b2))) {
                        *a += v;
                    }
                }
                acc == target
            })
            .map(|&b2| Witness { a: b1, b: b2, points: Some((b1, b2)) })
    });
    Ok(MinimalityVerdict::from_witness(Method::DefiningSet, witness))
}

/// Minimality of `C_{D̄}`. For p = 2 it reads the spectrum of `f_D` through
/// `f̂_D(β1) + f̂_D(β2) - f̂_D(β1+β2) ≠ 2(2^m - |D|)`; for odd p it runs the
/// general test on the complement set.
pub fn is_minimal_defining_set_complement(d: &SubsetD) -> Result<MinimalityVerdict> {
    let comp = d.complement();
    if d.domain().p() != 2 {
        return is_minimal_defining_set(&comp);
    }
    require_full_rank(&comp)?;
    let size = d.domain().size();
    let spec = d.characteristic_function().walsh_spectrum(WalshAlgorithm::Fast);
    let vals: Vec<i64> = (0..size).map(|w| spec.int_value(w).unwrap()).collect();
    let witness = binary_defining_set(&vals, 1, 2 * (size as i64 - d.len() as i64), size);
    Ok(MinimalityVerdict::from_witness(Method::DefiningSet, witness))
}

/// `w_min / w_max` and whether it beats `(p-1)/p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AbRatio {
    pub ratio: Ratio<u64>,
    pub sufficient: bool,
}

pub fn ab_ratio(wd: &WeightDistribution, p: u32) -> Result<AbRatio> {
    let (lo, hi) = wd.w_min().zip(wd.w_max()).ok_or(Error::ZeroCode)?;
    let ratio = Ratio::new(lo as u64, hi as u64);
    Ok(AbRatio { ratio, sufficient: lo as u64 * p as u64 > hi as u64 * (p as u64 - 1) })
}
