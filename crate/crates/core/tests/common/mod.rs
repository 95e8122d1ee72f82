//! Shared fixtures for the integration suites and the acceptance report.
//!
//! Each `check_*` function returns a one-line summary on success and a
//! description of the first mismatch on failure.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use charcodes::code::{
    ab_ratio, build_defining_set_code, build_function_code, defining_set_weight, is_minimal_oracle,
    weight_distribution_enumerate, Budget, Variant, WeightDistribution,
};
use charcodes::constructions::{
    d12_codeword_weight, d12_set, mm_support_set, mm_support_spec, partial_spread, predicted_minimality,
    predicted_walsh_subspace_union, predicted_weight_table, subspace_union_set, table_params_for_family,
    weight_range_set, PredictionParams, SubsetD, SubspaceFamily, TableParams,
};
use charcodes::cyclotomic::CycInt;
use charcodes::pfunc::{binomial, krawtchouk, mm_function, Domain, PFunction, WalshAlgorithm};
use charcodes::report::{analyze_defining_set, analyze_function, replay, Checks, CodeReport};
use charcodes::{Error, Field, Form, Subspace, VectorSpace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Outcome = Result<String, String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The first primitive modulus in index order.
pub fn field(p: u32, m: usize) -> Arc<Field> {
    let space = VectorSpace::new(p, m).unwrap();
    (0..space.size())
        .find_map(|tail| {
            let mut modulus = space.digits(tail);
            modulus.push(1);
            Field::new(p, m, &modulus).ok()
        })
        .expect("a primitive polynomial exists")
}

pub fn random_subspace(space: VectorSpace, dim: usize, rng: &mut impl Rng) -> Subspace {
    let mut gens = Vec::new();
    let mut sub = Subspace::zero(space);
    while sub.dim() < dim {
        gens.push(rng.random_range(1..space.size()));
        sub = Subspace::span_indices(space, &gens);
        if sub.dim() < gens.len() {
            gens.pop();
        }
    }
    sub
}

pub fn domain_for(p: u32, m: usize, as_field: bool) -> Domain {
    if as_field {
        Domain::Field(field(p, m))
    } else {
        Domain::vector(p, m).unwrap()
    }
}

pub enum Instance {
    Function(PFunction),
    DefiningSet(SubsetD),
}

pub struct Case {
    pub label: String,
    pub instance: Instance,
}

fn random_set(domain: &Domain, density: f64, rng: &mut impl Rng) -> Vec<usize> {
    (1..domain.size()).filter(|_| rng.random_bool(density)).collect()
}

fn union_of_random_subspaces(domain: &Domain, count: usize, rng: &mut impl Rng) -> Vec<usize> {
    let space = domain.space();
    let mut out = BTreeSet::new();
    for _ in 0..count {
        let dim = rng.random_range(1..space.m);
        out.extend(random_subspace(space, dim, rng).element_indices().into_iter().filter(|&x| x != 0));
    }
    out.into_iter().collect()
}

/// A deterministic corpus of functions and defining sets with
/// p ∈ {2, 3, 5} and m ≤ 6, mixing dense random tables with sparse and
/// subspace-structured sets so that both verdicts occur.
pub fn corpus() -> Vec<Case> {
    let mut rng = rng(0x5eed);
    let mut out = Vec::new();
    let function_grid = [(2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3)];
    for (gi, &(p, m)) in function_grid.iter().enumerate() {
        let mut made = 0;
        while made < 30 {
            let domain = domain_for(p, m, made % 2 == 0);
            let f = match made % 5 {
                0 | 1 => {
                    let vals: Vec<u8> =
                        (0..domain.size()).map(|x| if x == 0 { 0 } else { rng.random_range(0..p) as u8 }).collect();
                    PFunction::new(domain, vals).unwrap()
                }
                2 => {
                    let d = random_set(&domain, [0.1, 0.3, 0.5][rng.random_range(0..3)], &mut rng);
                    SubsetD::new(domain, d).unwrap().characteristic_function()
                }
                _ => {
                    let d = union_of_random_subspaces(&domain, rng.random_range(1..4), &mut rng);
                    SubsetD::new(domain, d).unwrap().characteristic_function()
                }
            };
            if !f.satisfies_fp_condition() {
                continue;
            }
            out.push(Case { label: format!("f[{gi}.{made}] p={p} m={m}"), instance: Instance::Function(f) });
            made += 1;
        }
    }
    let ds_grid = [(2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (3, 4), (3, 5), (5, 2), (5, 3)];
    for (gi, &(p, m)) in ds_grid.iter().enumerate() {
        let mut made = 0;
        while made < 25 {
            let domain = domain_for(p, m, made % 2 == 1);
            let elements = match made % 4 {
                0 => random_set(&domain, 0.5, &mut rng),
                1 => random_set(&domain, 0.15, &mut rng),
                2 => {
                    let size = rng.random_range(m..=2 * m + 2).min(domain.size() - 1);
                    let mut all: Vec<usize> = (1..domain.size()).collect();
                    for i in 0..size {
                        let j = rng.random_range(i..all.len());
                        all.swap(i, j);
                    }
                    all.truncate(size);
                    all
                }
                _ => union_of_random_subspaces(&domain, rng.random_range(2..5), &mut rng),
            };
            let d = SubsetD::new(domain, elements).unwrap();
            if d.is_empty() || d.rank() < m {
                continue;
            }
            out.push(Case { label: format!("D[{gi}.{made}] p={p} m={m}"), instance: Instance::DefiningSet(d) });
            made += 1;
        }
    }
    out
}

fn analyze(case: &Case, variant: Variant) -> Result<Option<CodeReport>, String> {
    let r = match &case.instance {
        Instance::Function(f) => {
            if variant == Variant::Complement {
                let comp = PFunction::from_fn(f.domain().clone(), |x| (x != 0 && f.value(x) == 0) as u32);
                if !f.is_indicator() || !comp.satisfies_fp_condition() {
                    return Ok(None);
                }
            }
            analyze_function(f, variant, &Checks::default(), &Budget::default())
        }
        Instance::DefiningSet(d) => {
            if variant == Variant::Complement {
                let comp = d.complement();
                if comp.is_empty() || comp.rank() < d.domain().m() {
                    return Ok(None);
                }
            }
            analyze_defining_set(d, variant, &Checks::default(), &Budget::default())
        }
    };
    r.map(Some).map_err(|e| format!("{}: {e}", case.label))
}

/// Walsh-route distributions equal enumeration on every corpus code, and
/// per-β defining-set weights equal enumerated weights.
pub fn check_dual_routes(corpus: &[Case]) -> Outcome {
    let mut codes = 0;
    for case in corpus {
        for variant in [Variant::Direct, Variant::Complement] {
            let Some(r) = analyze(case, variant)? else { continue };
            if r.routes_agree != Some(true) {
                return Err(format!("{} {variant:?}: routes disagree or missing", case.label));
            }
            codes += 1;
        }
        if let Instance::DefiningSet(d) = &case.instance {
            let code = build_defining_set_code(d).map_err(|e| e.to_string())?;
            let table = code.weight_table(&Budget::default()).map_err(|e| e.to_string())?;
            for (beta, &actual) in table.iter().enumerate().skip(1) {
                let w = defining_set_weight(d, beta).map_err(|e| e.to_string())?;
                if w != actual as u64 {
                    return Err(format!("{}: weight of c_{beta} is {actual} but formula gives {w}", case.label));
                }
            }
        }
    }
    Ok(format!("{} instances, {codes} codes, exact agreement", corpus.len()))
}

/// All applicable criteria agree and every witness replays.
pub fn check_concordance(corpus: &[Case]) -> Outcome {
    let (mut minimal, mut non_minimal, mut witnesses) = (0, 0, 0);
    for case in corpus {
        for variant in [Variant::Direct, Variant::Complement] {
            let Some(r) = analyze(case, variant)? else { continue };
            if r.verdicts.len() < 2 {
                return Err(format!("{} {variant:?}: fewer than two criteria ran", case.label));
            }
            if !r.verdicts_agree {
                return Err(format!("{} {variant:?}: verdicts {:?}", case.label, r.verdicts));
            }
            if !r.witnesses_replay {
                return Err(format!("{} {variant:?}: a witness failed to replay", case.label));
            }
            witnesses += r.verdicts.iter().filter(|v| v.witness.is_some()).count();
            if r.minimal() == Some(true) {
                minimal += 1;
            } else {
                non_minimal += 1;
            }
        }
    }
    if minimal == 0 || non_minimal == 0 {
        return Err(format!("corpus is one-sided: {minimal} minimal, {non_minimal} not"));
    }
    Ok(format!("{minimal} minimal, {non_minimal} non-minimal, {witnesses} witnesses replayed"))
}

fn enumerate_function(f: &PFunction) -> WeightDistribution {
    weight_distribution_enumerate(&build_function_code(f), &Budget::default()).unwrap()
}

fn complement_function(d: &SubsetD) -> PFunction {
    d.complement().characteristic_function()
}

fn compare(label: &str, params: &TableParams, variant: Variant, d: &SubsetD) -> Result<(), String> {
    let table = predicted_weight_table(params, variant).map_err(|e| format!("{label}: {e}"))?;
    let f = match variant {
        Variant::Direct => d.characteristic_function(),
        Variant::Complement => complement_function(d),
    };
    let wd = enumerate_function(&f);
    if table.to_distribution() != wd || table.total() as u64 != wd.total() {
        return Err(format!("{label} {variant:?}: predicted {} enumerated {}", table.to_distribution(), wd));
    }
    Ok(())
}

/// Maiorana-McFarland support table at m = 7, and injection invariance.
pub fn check_mm_table() -> Outcome {
    let d = mm_support_set(7).map_err(|e| e.to_string())?;
    compare("mm m=7", &TableParams::Mm { m: 7 }, Variant::Complement, &d)?;
    let alt = mm_support_spec(7, &[7, 6, 5, 4, 3]).map_err(|e| e.to_string())?;
    let f = mm_function(&alt, 7).map_err(|e| e.to_string())?;
    let d_alt = SubsetD::new(f.domain().clone(), f.support()).unwrap();
    if enumerate_function(&complement_function(&d)) != enumerate_function(&complement_function(&d_alt)) {
        return Err("distribution depends on the injection".into());
    }
    if predicted_weight_table(&TableParams::Mm { m: 7 }, Variant::Direct).is_ok() {
        return Err("direct variant accepted".into());
    }
    Ok("m=7 matches; two injections agree".into())
}

/// Weight-range tables for m ∈ {4, 5, 6} and every k.
pub fn check_weight_range_tables() -> Outcome {
    let mut n = 0;
    for m in 4..=6 {
        for k in 1..=m {
            let d = weight_range_set(m, k).map_err(|e| e.to_string())?;
            let params = TableParams::WeightRange { m, k };
            if k == m {
                if !matches!(predicted_weight_table(&params, Variant::Complement), Err(Error::HypothesisViolated(_))) {
                    return Err(format!("k = m = {m} accepted"));
                }
                continue;
            }
            compare(&format!("weight-range m={m} k={k}"), &params, Variant::Complement, &d)?;
            n += 1;
        }
    }
    Ok(format!("{n} parameter sets match"))
}

/// A pair E1, E2 with complementary dimensions and trivial intersections
/// of both the spaces and their complements.
pub fn random_pair(f: &Arc<Field>, t1: usize, rng: &mut impl Rng) -> Vec<Subspace> {
    let space = f.space();
    loop {
        let e1 = random_subspace(space, t1, rng);
        let e2 = random_subspace(space, space.m - t1, rng);
        let fam = [e1, e2];
        let report = charcodes::field::check_space_conditions(&fam, Form::Trace(f)).unwrap();
        if report.satisfies_eq8 {
            return fam.to_vec();
        }
    }
}

/// Every admissible union family with p ∈ {2, 3}, m ≤ 6.
pub fn union_families() -> Vec<SubspaceFamily> {
    let mut rng = rng(7);
    let mut out = Vec::new();
    for p in [2, 3] {
        for m in 2..=6 {
            let f = field(p, m);
            let dom = Domain::Field(f.clone());
            for t in 1..m {
                let e = random_subspace(f.space(), t, &mut rng);
                out.push(SubspaceFamily::new(dom.clone(), vec![e]).unwrap());
            }
            for t1 in 1..=m / 2 {
                out.push(SubspaceFamily::new(dom.clone(), random_pair(&f, t1, &mut rng)).unwrap());
            }
            if m % 2 == 0 {
                let spread = partial_spread(&f).unwrap();
                for s in 3..=spread.len() {
                    out.push(SubspaceFamily::new(dom.clone(), spread[..s].to_vec()).unwrap());
                }
            }
        }
    }
    out
}

fn expected_union_rejection(p: u32, m: usize, dims: &[usize], variant: Variant) -> bool {
    let covered: i64 = dims.iter().map(|&t| (p as i64).pow(t as u32) - 1).sum();
    match variant {
        Variant::Direct => p == 2 && covered == 1 << (m - 1),
        Variant::Complement => {
            covered == (p as i64).pow(m as u32) - 1 || (p == 2 && dims.len() == 1 && dims[0] == m - 1)
        }
    }
}

/// Union tables on the admissible grid, plus the union size and the
/// predicted spectrum.
pub fn check_union_tables() -> Outcome {
    let (mut matched, mut rejected) = (0, 0);
    for fam in union_families() {
        let d = subspace_union_set(&fam).map_err(|e| e.to_string())?;
        let (p, m) = (fam.domain().p(), fam.domain().m());
        let dims = fam.dims();
        let label = format!("p={p} m={m} dims={dims:?}");
        let size: usize = dims.iter().map(|&t| (p as usize).pow(t as u32)).sum::<usize>() - dims.len();
        if d.len() != size {
            return Err(format!("{label}: |D| = {} expected {size}", d.len()));
        }
        let spec = d.characteristic_function().walsh_spectrum(WalshAlgorithm::Fast);
        for w in 0..fam.domain().size() {
            if predicted_walsh_subspace_union(&fam, w).unwrap() != spec.value(w) {
                return Err(format!("{label}: spectrum differs at {w}"));
            }
        }
        let params = table_params_for_family(&fam).map_err(|e| format!("{label}: {e}"))?;
        for variant in [Variant::Direct, Variant::Complement] {
            if expected_union_rejection(p, m, &dims, variant) {
                if !matches!(predicted_weight_table(&params, variant), Err(Error::HypothesisViolated(_))) {
                    return Err(format!("{label} {variant:?}: degenerate case accepted"));
                }
                rejected += 1;
                continue;
            }
            compare(&label, &params, variant, &d)?;
            matched += 1;
        }
    }
    Ok(format!("{matched} tables match, {rejected} degenerate cases rejected"))
}

/// Triples with t1 = t2 < t3 found by seeded search, plus the two worked
/// examples.
pub fn triple_catalogue() -> Vec<SubspaceFamily> {
    let mut out = Vec::new();
    for id in ["thm11-ex1", "thm11-ex2"] {
        out.push(charcodes::catalog::example(id).unwrap().family.unwrap());
    }
    let mut seen = BTreeSet::new();
    let mut rng = rng(11);
    for (p, m, t1, t3) in [(2, 5, 1, 3), (2, 5, 2, 3), (2, 6, 1, 4), (2, 6, 2, 3), (3, 4, 1, 2), (3, 5, 1, 3)] {
        let f = field(p, m);
        let dom = Domain::Field(f.clone());
        let mut found = 0;
        for _ in 0..400 {
            if found == 2 {
                break;
            }
            let spaces = vec![
                random_subspace(f.space(), t1, &mut rng),
                random_subspace(f.space(), t1, &mut rng),
                random_subspace(f.space(), t3, &mut rng),
            ];
            let fam = SubspaceFamily::new(dom.clone(), spaces).unwrap();
            let Ok(params) = table_params_for_family(&fam) else { continue };
            if !matches!(params, TableParams::Triple { .. })
                || predicted_weight_table(&params, Variant::Direct).is_err()
            {
                continue;
            }
            if seen.insert(format!("{params:?}")) {
                out.push(fam);
                found += 1;
            }
        }
    }
    out
}

pub fn check_triple_tables() -> Outcome {
    let cat = triple_catalogue();
    if cat.len() < 5 {
        return Err(format!("catalogue has only {} entries", cat.len()));
    }
    for fam in &cat {
        let d = subspace_union_set(fam).map_err(|e| e.to_string())?;
        let params = table_params_for_family(fam).map_err(|e| e.to_string())?;
        for variant in [Variant::Direct, Variant::Complement] {
            compare(&format!("{params:?}"), &params, variant, &d)?;
        }
    }
    Ok(format!("{} families, both variants match", cat.len()))
}

fn oracle_function(f: &PFunction) -> (bool, Option<charcodes::code::Witness>, charcodes::code::CodeSpec) {
    let code = build_function_code(f);
    let v = is_minimal_oracle(&code, &Budget::default()).unwrap();
    (v.minimal, v.witness, code)
}

fn check_prediction(
    label: &str,
    params: &PredictionParams,
    variant: Variant,
    f: &PFunction,
    p: u32,
) -> Result<bool, String> {
    let Some(pred) = predicted_minimality(params, variant) else { return Ok(false) };
    let (minimal, _, code) = oracle_function(f);
    if minimal != pred.minimal {
        return Err(format!("{label} {variant:?}: predicted {} oracle {minimal}", pred.minimal));
    }
    if pred.ratio_claim {
        let wd = weight_distribution_enumerate(&code, &Budget::default()).unwrap();
        if ab_ratio(&wd, p).unwrap().sufficient {
            return Err(format!("{label} {variant:?}: ratio exceeds (p-1)/p"));
        }
    }
    Ok(true)
}

fn variant_function(d: &SubsetD, variant: Variant) -> PFunction {
    match variant {
        Variant::Direct => d.characteristic_function(),
        Variant::Complement => complement_function(d),
    }
}

/// The binary spread boundary: s ∈ {2^t, 2^t + 1} not minimal with a
/// replayed witness, the neighbours minimal, for t ∈ {2, 3}.
pub fn check_binary_spread_boundary() -> Outcome {
    let mut checked = 0;
    for t in [2usize, 3] {
        let f = field(2, 2 * t);
        let spread = partial_spread(&f).unwrap();
        let full = 1usize << t;
        for s in 2..=full + 1 {
            let fam = SubspaceFamily::new(Domain::Field(f.clone()), spread[..s].to_vec()).unwrap();
            let d = subspace_union_set(&fam).unwrap();
            for variant in [Variant::Direct, Variant::Complement] {
                if variant == Variant::Complement && s == full + 1 {
                    continue;
                }
                let g = variant_function(&d, variant);
                let (minimal, witness, code) = oracle_function(&g);
                let expected = s != full && s != full + 1;
                if minimal != expected {
                    return Err(format!("t={t} s={s} {variant:?}: oracle says {minimal}"));
                }
                if !minimal {
                    let v = charcodes::code::MinimalityVerdict {
                        minimal,
                        method: charcodes::code::Method::Oracle,
                        witness,
                        settled_by_bound: false,
                    };
                    if witness.is_none() || !replay(&code, &v) {
                        return Err(format!("t={t} s={s}: witness does not replay"));
                    }
                }
                check_prediction(&format!("t={t} s={s}"), &PredictionParams::BinarySpread { t, s }, variant, &g, 2)?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} spread codes agree with the iff"))
}

/// Every closed-form minimality claim on the table grids agrees with the oracle.
pub fn check_predictions() -> Outcome {
    let mut compared = 0;
    // odd spreads
    for (p, t) in [(3u32, 1usize), (3, 2), (5, 1), (3, 3)] {
        let f = field(p, 2 * t);
        let spread = partial_spread(&f).unwrap();
        for s in 1..spread.len() {
            let fam = SubspaceFamily::new(Domain::Field(f.clone()), spread[..s].to_vec()).unwrap();
            let d = subspace_union_set(&fam).unwrap();
            for variant in [Variant::Direct, Variant::Complement] {
                let g = variant_function(&d, variant);
                let label = format!("odd spread p={p} t={t} s={s}");
                compared +=
                    check_prediction(&label, &PredictionParams::OddSpread { p, t, s }, variant, &g, p)? as usize;
            }
        }
    }
    // complementary pairs
    let mut rng = rng(3);
    for p in [2u32, 3] {
        for m in [5usize, 6] {
            let f = field(p, m);
            for t1 in 2..=(m - 1) / 2 {
                let fam = SubspaceFamily::new(Domain::Field(f.clone()), random_pair(&f, t1, &mut rng)).unwrap();
                let d = subspace_union_set(&fam).unwrap();
                let params = PredictionParams::Pair { p, m, t1, t2: m - t1 };
                for variant in [Variant::Direct, Variant::Complement] {
                    let g = variant_function(&d, variant);
                    compared +=
                        check_prediction(&format!("pair p={p} m={m} t1={t1}"), &params, variant, &g, p)? as usize;
                }
            }
        }
    }
    // triples
    for fam in triple_catalogue() {
        let d = subspace_union_set(&fam).unwrap();
        let Ok(TableParams::Triple { p, m, dims, tij }) = table_params_for_family(&fam) else {
            return Err("catalogue entry is not a triple".into());
        };
        let params = PredictionParams::Triple { p, m, dims, tij };
        compared += check_prediction("triple", &params, Variant::Direct, &d.characteristic_function(), p)? as usize;
    }
    // the weight-one-or-two defining sets
    for (p, m) in
        [(2u32, 2usize), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (3, 4), (3, 5), (3, 6), (5, 2), (5, 3), (5, 4)]
    {
        let d = d12_set(p, m).unwrap();
        let pred = predicted_minimality(&PredictionParams::D12 { p, m }, Variant::Direct).unwrap();
        let code = build_defining_set_code(&d).unwrap();
        let v = is_minimal_oracle(&code, &Budget::default()).unwrap();
        if v.minimal != pred.minimal {
            return Err(format!("d12 p={p} m={m}: oracle {}", v.minimal));
        }
        if pred.ratio_claim {
            let wd = weight_distribution_enumerate(&code, &Budget::default()).unwrap();
            if ab_ratio(&wd, p).unwrap().sufficient {
                return Err(format!("d12 p={p} m={m}: ratio exceeds (p-1)/p"));
            }
        }
        compared += 1;
    }
    Ok(format!("{compared} claims confirmed by the oracle"))
}

/// Complement identity and disjoint-union identity, all w, m ≤ 4.
pub fn check_complement_and_union_identities() -> Outcome {
    let mut rng = rng(5);
    let mut n = 0;
    for p in [2u32, 3] {
        for m in 2..=4 {
            for trial in 0..20 {
                let dom = domain_for(p, m, trial % 2 == 0);
                let q = dom.size() as i64;
                let d = SubsetD::new(dom.clone(), random_set(&dom, 0.4, &mut rng)).unwrap();
                let comp = d.complement();
                let (fd, fc) = (d.characteristic_function(), comp.characteristic_function());
                let (sd, sc) = (fd.walsh_spectrum(WalshAlgorithm::Naive), fc.walsh_spectrum(WalshAlgorithm::Naive));
                let zeta = CycInt::zeta(p);
                let at_zero = zeta.scale(q - 1) + CycInt::from_int(p, q + 1);
                let elsewhere = CycInt::one(p) - zeta;
                // split D into two disjoint halves
                let (d1, d2): (Vec<usize>, Vec<usize>) = d.elements().iter().partition(|_| rng.random_bool(0.5));
                let s1 = SubsetD::new(dom.clone(), d1)
                    .unwrap()
                    .characteristic_function()
                    .walsh_spectrum(WalshAlgorithm::Naive);
                let s2 = SubsetD::new(dom.clone(), d2)
                    .unwrap()
                    .characteristic_function()
                    .walsh_spectrum(WalshAlgorithm::Naive);
                for w in 0..dom.size() {
                    let sum = sd.value(w) + sc.value(w);
                    let expected = if w == 0 { at_zero.clone() } else { elsewhere.clone() };
                    if sum != expected {
                        return Err(format!("complement identity fails at p={p} m={m} w={w}"));
                    }
                    if p == 2 && w != 0 && !sum.equals_rational(2) {
                        return Err(format!("binary complement sum is not 2 at w={w}"));
                    }
                    let mut union = s1.value(w) + s2.value(w);
                    if w == 0 {
                        union = union - CycInt::from_int(p, q);
                    }
                    if union != sd.value(w) {
                        return Err(format!("disjoint union identity fails at p={p} m={m} w={w}"));
                    }
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} sets, every w"))
}

/// The Krawtchouk identities for every m ≤ 12, with the standard form of the
/// reflection identity; the sum over weight-k vectors is checked directly.
pub fn check_krawtchouk() -> Outcome {
    let p = |m: usize, k: usize, x: usize| krawtchouk(m, k as i64, x as i64).unwrap();
    for m in 1..=12usize {
        for k in 0..=m {
            if p(m, k, 0) != binomial(m as i64, k as i64) {
                return Err(format!("P_{k}(0) at m={m}"));
            }
            if m as i128 * p(m, k, 1) != (m as i128 - 2 * k as i128) * binomial(m as i64, k as i64) {
                return Err(format!("P_{k}(1) at m={m}"));
            }
            if p(m, m, k) != if k % 2 == 0 { 1 } else { -1 } {
                return Err(format!("P_m({k}) at m={m}"));
            }
            for i in 0..=m {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                if p(m, k, i) != sign * p(m, m - k, i) {
                    return Err(format!("P_{k}({i}) = (-1)^i P_(m-k)({i}) at m={m}"));
                }
                let ksign = if k % 2 == 0 { 1 } else { -1 };
                if p(m, k, i) != ksign * p(m, k, m - i) {
                    return Err(format!("P_{k}({i}) = (-1)^k P_k(m-{i}) at m={m}"));
                }
            }
        }
        for j in 0..=m {
            for x in 0..=m {
                let lhs: i128 = (0..=m).map(|k| binomial((m - k) as i64, (m - j) as i64) * p(m, k, x)).sum();
                if lhs != (1i128 << j) * binomial((m - x) as i64, j as i64) {
                    return Err(format!("binomial sum identity at m={m} j={j} x={x}"));
                }
            }
        }
        for i in 0..=m {
            let u = (1usize << i) - 1;
            let mut sums = vec![0i128; m + 1];
            for v in 0..1usize << m {
                let sign = if (u & v).count_ones().is_multiple_of(2) { 1 } else { -1 };
                sums[v.count_ones() as usize] += sign;
            }
            for (k, &s) in sums.iter().enumerate() {
                if s != p(m, k, i) {
                    return Err(format!("character sum over weight {k} at m={m}, wt(u)={i}"));
                }
            }
        }
    }
    Ok("all identities hold for m <= 12".into())
}

/// `Σ_w |f̂(w)|^2 = q^2` on 100 random functions per grid point.
pub fn check_parseval() -> Outcome {
    let mut rng = rng(9);
    let grid = [(2u32, 3usize), (2, 4), (2, 6), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3)];
    for &(p, m) in &grid {
        for trial in 0..100 {
            let dom = domain_for(p, m, trial % 2 == 0);
            let q = dom.size() as i64;
            let vals = (0..dom.size()).map(|_| rng.random_range(0..p) as u8).collect();
            let f = PFunction::new(dom, vals).unwrap();
            if !f.walsh_spectrum(WalshAlgorithm::Fast).parseval_sum().equals_rational(q * q) {
                return Err(format!("Parseval fails at p={p} m={m}"));
            }
        }
    }
    Ok(format!("{} grid points x 100 functions", grid.len()))
}

/// The closed-form weight of `c_β` in the weight-one-or-two code,
/// exhaustively for p ∈ {2, 3}, m ≤ 6 and sampled for p = 5, m = 4; also
/// the separating-vector step of the minimality argument.
pub fn check_d12() -> Outcome {
    let mut rng = rng(13);
    let mut grid: Vec<(u32, usize, bool)> = Vec::new();
    for p in [2u32, 3] {
        for m in 2..=6 {
            grid.push((p, m, true));
        }
    }
    grid.push((5, 4, false));
    for (p, m, exhaustive) in grid {
        let d = d12_set(p, m).unwrap();
        let space = d.domain().space();
        let betas: Vec<usize> = if exhaustive {
            (1..space.size()).collect()
        } else {
            (0..60).map(|_| rng.random_range(1..space.size())).collect()
        };
        let code = build_defining_set_code(&d).unwrap();
        let table = code.weight_table(&Budget::default()).unwrap();
        for beta in betas {
            let closed = d12_codeword_weight(p, m, space.weight(beta)).unwrap();
            let formula = defining_set_weight(&d, beta).unwrap();
            if closed != formula || closed != table[beta] as u64 {
                return Err(format!("p={p} m={m} beta={beta}: {closed} vs {formula} vs {}", table[beta]));
            }
        }
        // for independent b1, b2 some v in D has <b1, v> = 0 and <b2, v> != 0
        let reps: Vec<usize> = code.projective_messages();
        for &b1 in &reps {
            for &b2 in reps.iter().filter(|&&b| b != b1) {
                if !d.elements().iter().any(|&v| space.dot(b1, v) == 0 && space.dot(b2, v) != 0) {
                    return Err(format!("p={p} m={m}: no separating vector for {b1}, {b2}"));
                }
            }
        }
    }
    Ok("closed form and separating vectors confirmed".into())
}
