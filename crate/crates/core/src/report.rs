//! One-stop analysis of a function code or defining-set code: both weight
//! routes, the requested minimality tests, witness replay and the ratio test.

use serde::{Deserialize, Serialize};

use crate::code::{
    ab_ratio, build_defining_set_code, build_function_code, covers, defining_set_distribution_via_walsh,
    is_minimal_binary_walsh, is_minimal_defining_set, is_minimal_defining_set_complement, is_minimal_oracle,
    is_minimal_sumcheck, sum_identity_holds, weight_distribution_enumerate, weight_distribution_via_walsh, Budget,
    CodeSpec, Method, MinimalityVerdict, Variant, WeightDistribution,
};
use crate::constructions::SubsetD;
use crate::error::{Error, Result};
use crate::pfunc::PFunction;

/// Which minimality tests to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub oracle: bool,
    pub sumcheck: bool,
    pub walsh: bool,
    pub ds: bool,
}

impl Default for Checks {
    fn default() -> Self {
        Checks { oracle: true, sumcheck: true, walsh: true, ds: true }
    }
}

impl Checks {
    pub fn none() -> Self {
        Checks { oracle: false, sumcheck: false, walsh: false, ds: false }
    }

    /// Parses a comma list such as `oracle,walsh`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Checks::none();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item {
                "oracle" => out.oracle = true,
                "sumcheck" => out.sumcheck = true,
                "walsh" => out.walsh = true,
                "ds" => out.ds = true,
                "all" => out = Checks::default(),
                other => return Err(Error::Parse(format!("unknown check {other:?}"))),
            }
        }
        Ok(out)
    }
}

/// How an example's codes are built from its set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeKind {
    /// `C_{f_D}` and `C_{f_{D̄}}`.
    Function,
    /// `C_D` and `C_{D̄}`.
    DefiningSet,
}

/// Everything learned about one code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub parameters: String,
    pub enumerator: String,
    pub distribution: WeightDistribution,
    /// Whether the Walsh route matched enumeration; `None` when one route
    /// does not apply.
    pub routes_agree: Option<bool>,
    pub verdicts: Vec<MinimalityVerdict>,
    pub verdicts_agree: bool,
    pub witnesses_replay: bool,
    pub ab_ratio: Option<String>,
    pub ab_sufficient: Option<bool>,
}

impl CodeReport {
    pub fn minimal(&self) -> Option<bool> {
        self.verdicts.first().map(|v| v.minimal)
    }

    /// True when every cross-check that ran came out consistent.
    pub fn consistent(&self) -> bool {
        self.routes_agree != Some(false) && self.verdicts_agree && self.witnesses_replay
    }
}

/// Replays a witness against the generator rows.
pub fn replay(code: &CodeSpec, verdict: &MinimalityVerdict) -> bool {
    let Some(w) = verdict.witness else {
        return true;
    };
    match verdict.method {
        Method::Sumcheck => sum_identity_holds(code, w.a, w.b),
        _ => code.natural && covers(code, w.a, w.b) && crate::code::independent(code, w.a, w.b),
    }
}

fn finish(
    code: &CodeSpec,
    enumerated: Option<WeightDistribution>,
    walsh: Option<WeightDistribution>,
    verdicts: Vec<MinimalityVerdict>,
) -> Result<CodeReport> {
    let routes_agree = match (&enumerated, &walsh) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let distribution = enumerated.or(walsh).ok_or(Error::TooLargeToEnumerate { work: code.size(), budget: 0 })?;
    let verdicts_agree = verdicts.windows(2).all(|w| w[0].minimal == w[1].minimal);
    let witnesses_replay = verdicts.iter().all(|v| replay(code, v));
    let ab = ab_ratio(&distribution, code.p).ok();
    Ok(CodeReport {
        parameters: distribution.parameters(),
        enumerator: distribution.enumerator(),
        routes_agree,
        verdicts,
        verdicts_agree,
        witnesses_replay,
        ab_ratio: ab.map(|r| format!("{}/{}", r.ratio.numer(), r.ratio.denom())),
        ab_sufficient: ab.map(|r| r.sufficient),
        distribution,
    })
}

fn within<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::TooLargeToEnumerate { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn pairwise(code: &CodeSpec, checks: &Checks, budget: &Budget) -> Result<Vec<MinimalityVerdict>> {
    let mut out = Vec::new();
    if checks.oracle {
        out.extend(within(is_minimal_oracle(code, budget))?);
    }
    if checks.sumcheck {
        out.extend(within(is_minimal_sumcheck(code, budget))?);
    }
    Ok(out)
}

/// Analyzes `C_f`, or `C_{f_{D̄}}` when `variant` is the complement and f is
/// the indicator of D.
pub fn analyze_function(f: &PFunction, variant: Variant, checks: &Checks, budget: &Budget) -> Result<CodeReport> {
    let target = match variant {
        Variant::Direct => f.clone(),
        Variant::Complement => {
            if !f.is_indicator() || f.value(0) != 0 {
                return Err(Error::NonIndicatorComplement);
            }
            PFunction::from_fn(f.domain().clone(), |x| (x != 0 && f.value(x) == 0) as u32)
        }
    };
    let code = build_function_code(&target);
    let enumerated = within(weight_distribution_enumerate(&code, budget))?;
    let walsh = match weight_distribution_via_walsh(f, variant) {
        Ok(wd) => Some(wd),
        Err(Error::ConditionFpViolated) => None,
        Err(e) => return Err(e),
    };
    let mut verdicts = pairwise(&code, checks, budget)?;
    if checks.walsh && target.p() == 2 && target.satisfies_fp_condition() {
        verdicts.push(is_minimal_binary_walsh(&target)?);
    }
    finish(&code, enumerated, walsh, verdicts)
}

/// Analyzes `C_D`, or `C_{D̄}` for the complement variant.
pub fn analyze_defining_set(d: &SubsetD, variant: Variant, checks: &Checks, budget: &Budget) -> Result<CodeReport> {
    let target = match variant {
        Variant::Direct => d.clone(),
        Variant::Complement => d.complement(),
    };
    let code = build_defining_set_code(&target)?;
    let enumerated = within(weight_distribution_enumerate(&code, budget))?;
    let walsh = match defining_set_distribution_via_walsh(&target) {
        Ok(wd) => Some(wd),
        Err(Error::DeficientRank { .. }) => None,
        Err(e) => return Err(e),
    };
    let mut verdicts = pairwise(&code, checks, budget)?;
    if checks.ds && code.k == d.domain().m() {
        verdicts.push(match variant {
            Variant::Direct => is_minimal_defining_set(d)?,
            Variant::Complement => is_minimal_defining_set_complement(d)?,
        });
    }
    finish(&code, enumerated, walsh, verdicts)
}

/// A report tagged with the code it describes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub kind: CodeKind,
    pub variant: Variant,
    pub report: CodeReport,
}

/// Runs [`analyze_function`] on the indicator of D, or [`analyze_defining_set`].
pub fn analyze(d: &SubsetD, kind: CodeKind, variant: Variant, checks: &Checks, budget: &Budget) -> Result<Analysis> {
    let report = match kind {
        CodeKind::Function => analyze_function(&d.characteristic_function(), variant, checks, budget)?,
        CodeKind::DefiningSet => analyze_defining_set(d, variant, checks, budget)?,
    };
    Ok(Analysis { kind, variant, report })
}
