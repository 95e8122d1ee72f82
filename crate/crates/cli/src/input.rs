//! Turns `--field`, `--set`, `--function` and `--construct` into library values.

use std::path::Path;

use charcodes::constructions::{
    d12_set, mm_support_set, partial_spread, subspace_union_set, weight_range_set, weight_set, SubsetD, SubspaceFamily,
};
use charcodes::field::{Field, Form, Subspace};
use charcodes::pfunc::{Domain, ElementRepr, PFunction, SubspaceRepr};
use serde::Deserialize;

use crate::Failure;

/// What a command operates on.
pub enum Input {
    Set(SubsetD),
    Function(PFunction),
}

/// Parses `p,m` (the space F_p^m) or `p,m,modulus` (the field F_{p^m}).
pub fn parse_field(text: &str) -> Result<Domain, Failure> {
    let mut parts = text.splitn(3, ',').map(str::trim);
    let p =
        parts.next().unwrap_or("").parse::<u32>().map_err(|_| Failure::input(format!("bad p in --field {text:?}")))?;
    let m = parts
        .next()
        .ok_or_else(|| Failure::input("--field needs p,m or p,m,modulus"))?
        .parse::<usize>()
        .map_err(|_| Failure::input(format!("bad m in --field {text:?}")))?;
    match parts.next() {
        None => Ok(Domain::vector(p, m)?),
        Some(modulus) => {
            let coeffs = Field::parse_modulus(modulus, p)?;
            Ok(Domain::Field(Field::new(p, m, &coeffs)?))
        }
    }
}

/// Inline JSON is used as is; anything else names a file.
fn load(arg: &str) -> Result<String, Failure> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(Path::new(arg)).map_err(|e| Failure::input(format!("cannot read {arg}: {e}")))
}

fn json_err(e: serde_json::Error) -> Failure {
    Failure::input(format!("invalid JSON: {e}"))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SetDoc {
    #[serde(default)]
    field: Option<Domain>,
    #[serde(default)]
    elements: Option<Vec<ElementRepr>>,
    #[serde(default)]
    subspaces: Option<Vec<SubspaceRepr>>,
}

fn pick_domain(doc: Option<Domain>, flag: Option<&Domain>) -> Result<Domain, Failure> {
    match (doc, flag) {
        (Some(d), Some(f)) if &d != f => Err(Failure::input("--field disagrees with the field in --set")),
        (Some(d), _) => Ok(d),
        (None, Some(f)) => Ok(f.clone()),
        (None, None) => Err(Failure::input("no field given: add \"field\" to the set or pass --field")),
    }
}

/// Reads a set as `{"field", "elements"}`, `{"field", "subspaces"}` (the
/// union of the subspaces without 0) or a bare element array.
pub fn parse_set(arg: &str, field: Option<&Domain>) -> Result<SubsetD, Failure> {
    let text = load(arg)?;
    let doc: SetDoc = if text.trim_start().starts_with('[') {
        let elements = serde_json::from_str(&text).map_err(json_err)?;
        SetDoc { field: None, elements: Some(elements), subspaces: None }
    } else {
        serde_json::from_str(&text).map_err(json_err)?
    };
    let domain = pick_domain(doc.field, field)?;
    match (doc.elements, doc.subspaces) {
        (Some(elements), None) => {
            let idx = elements.iter().map(|e| domain.resolve(e)).collect::<Result<Vec<_>, _>>()?;
            Ok(SubsetD::new(domain, idx)?)
        }
        (None, Some(subspaces)) => {
            let spaces = subspaces.iter().map(|s| domain.subspace_from_repr(s)).collect::<Result<Vec<_>, _>>()?;
            Ok(subspace_union_set(&SubspaceFamily::new(domain, spaces)?)?)
        }
        _ => Err(Failure::input("a set needs exactly one of \"elements\" or \"subspaces\"")),
    }
}

/// Reads a function as `{"domain", "values"}` JSON or as a truth table with
/// one residue per line, which needs `--field`.
pub fn parse_function(arg: &str, field: Option<&Domain>) -> Result<PFunction, Failure> {
    let text = load(arg)?;
    if text.trim_start().starts_with('{') {
        let f: PFunction = serde_json::from_str(&text).map_err(json_err)?;
        pick_domain(Some(f.domain().clone()), field)?;
        return Ok(f);
    }
    let domain = field.ok_or_else(|| Failure::input("a truth table needs --field"))?;
    Ok(PFunction::from_truth_table(domain.clone(), &text)?)
}

fn numbers(text: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Failure::input(format!("bad number {t:?} in --construct"))))
        .collect()
}

fn one_number(text: &str) -> Result<usize, Failure> {
    match numbers(text)?.as_slice() {
        [n] if *n >= 0 => Ok(*n as usize),
        _ => Err(Failure::input(format!("expected one non-negative number, got {text:?}"))),
    }
}

fn need_field(field: Option<&Domain>) -> Result<&Domain, Failure> {
    field.ok_or_else(|| Failure::input("this construction needs --field"))
}

fn need_gf(field: Option<&Domain>) -> Result<&std::sync::Arc<Field>, Failure> {
    need_field(field)?.field().ok_or_else(|| Failure::input("this construction needs --field p,m,modulus"))
}

/// Named constructions:
///
/// * `d12`: nonzero vectors of weight 1 or 2
/// * `weights=1,2,5`: nonzero vectors with a listed weight
/// * `weight-range=K`: binary vectors of weight 1 to K
/// * `mm`: the Maiorana-McFarland support set on F_2^m, m odd
/// * `spread=S`: the first S members of the standard spread, without 0
/// * `pair=a,b,...`: E = <w^a, w^b, ...> together with its trace complement
pub fn construct(text: &str, field: Option<&Domain>) -> Result<SubsetD, Failure> {
    let (name, arg) = text.split_once('=').unwrap_or((text, ""));
    match name.trim() {
        "d12" => {
            let d = need_field(field)?;
            Ok(d12_set(d.p(), d.m())?)
        }
        "weights" => {
            let ws = numbers(arg)?;
            if ws.iter().any(|&w| w < 0) {
                return Err(Failure::input("weights must be non-negative"));
            }
            let ws: Vec<usize> = ws.into_iter().map(|w| w as usize).collect();
            Ok(weight_set(need_field(field)?, &ws)?)
        }
        "weight-range" => {
            let d = need_field(field)?;
            if d.p() != 2 {
                return Err(Failure::input("weight-range is binary"));
            }
            Ok(weight_range_set(d.m(), one_number(arg)?)?)
        }
        "mm" => {
            let d = need_field(field)?;
            if d.p() != 2 {
                return Err(Failure::input("mm is binary"));
            }
            Ok(mm_support_set(d.m())?)
        }
        "spread" => {
            let f = need_gf(field)?;
            let spread = partial_spread(f)?;
            let s = one_number(arg)?;
            if s == 0 || s > spread.len() {
                return Err(Failure::input(format!("spread size must be in 1..={}", spread.len())));
            }
            let family = SubspaceFamily::new(Domain::Field(f.clone()), spread[..s].to_vec())?;
            Ok(subspace_union_set(&family)?)
        }
        "pair" => {
            let f = need_gf(field)?;
            let gens: Vec<_> = numbers(arg)?.into_iter().map(|e| f.generator_power(e)).collect();
            let e1 = Subspace::span(f.space(), &gens)?;
            let e2 = e1.orthogonal_complement(Form::Trace(f));
            let family = SubspaceFamily::new(Domain::Field(f.clone()), vec![e1, e2])?;
            Ok(subspace_union_set(&family)?)
        }
        other => Err(Failure::input(format!("unknown construction {other:?}"))),
    }
}

/// Resolves the mutually exclusive input flags.
pub fn resolve(
    field: Option<&str>,
    set: Option<&str>,
    function: Option<&str>,
    construction: Option<&str>,
) -> Result<Input, Failure> {
    let domain = field.map(parse_field).transpose()?;
    let domain = domain.as_ref();
    match (set, function, construction) {
        (Some(s), None, None) => Ok(Input::Set(parse_set(s, domain)?)),
        (None, Some(f), None) => Ok(Input::Function(parse_function(f, domain)?)),
        (None, None, Some(c)) => Ok(Input::Set(construct(c, domain)?)),
        _ => Err(Failure::input("give exactly one of --set, --function or --construct")),
    }
}
