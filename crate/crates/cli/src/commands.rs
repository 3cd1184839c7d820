//! One handler per subcommand. Each returns the JSON document, the exit
//! code it implies, and an optional SVG.

use fewnomial::fewnomial::{
    certify_block_system, gen_block_system, gen_g_eps, lemma_tri_certificate, poonen_compare, poonen_report,
    verify_family, PoonenVariant, SparseSystem, Status,
};
use fewnomial::nonarch::{count_roots_by_valuation_phase, SystemJson, TypedSystem, ValuationPhaseCount};
use fewnomial::numeric::{format_rational, parse_rational, FieldElement, FieldKind, FieldSpec, LocalField, PAdic, Ring};
use fewnomial::polyhedra::mixed::describe_normal;
use fewnomial::polyhedra::svg::{subdivision_svg, triangulation_svg};
use fewnomial::polyhedra::{
    coherent_triangulation, induced_subdivision, is_mixed_tuple, mixed_cells, mixed_volume,
    LiftedInput, LiftedSupport, Support,
};
use fewnomial::slp::{certify_no_real_roots, count_slp_roots_padic, logistic_report};
use fewnomial::viro::{describe_cell, sturmfels_positive_count, viro_diagram_2d, viro_svg, Sign, SignDistribution};
use fewnomial::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::input::{default_eps, policy, read_json};

pub struct Outcome {
    pub json: Value,
    pub code: i32,
    pub svg: Option<String>,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Outcome { json, code: 0, svg: None }
    }

    fn status(json: Value, status: Status) -> Self {
        Outcome {
            json,
            code: status.exit_code(),
            svg: None,
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// Supports with liftings and one sign per point.
#[derive(Debug, Deserialize)]
pub struct SignedInput {
    #[serde(flatten)]
    pub lifted: LiftedInput,
    pub signs: Vec<Vec<Sign>>,
}

impl SignedInput {
    fn parse(&self) -> Result<(Vec<LiftedSupport>, Vec<SignDistribution>)> {
        let lifted = self.lifted.to_lifted()?;
        if self.signs.len() != lifted.len() {
            return Err(Error::InvalidInput(format!("{} sign lists for {} supports", self.signs.len(), lifted.len())));
        }
        let signs = lifted
            .iter()
            .zip(&self.signs)
            .map(|(l, s)| SignDistribution::new(&l.support, s.clone()))
            .collect::<Result<_>>()?;
        Ok((lifted, signs))
    }
}

fn supports(lifted: &[LiftedSupport]) -> Vec<Support> {
    lifted.iter().map(|l| l.support.clone()).collect()
}

fn single(lifted: Vec<LiftedSupport>) -> Result<LiftedSupport> {
    let mut it = lifted.into_iter();
    match (it.next(), it.next()) {
        (Some(l), None) => Ok(l),
        _ => Err(Error::InvalidInput("exactly one support is expected".into())),
    }
}

pub fn mixed_volume_cmd(input: Option<&str>) -> Result<Outcome> {
    let lifted = read_json::<LiftedInput>(input)?.to_lifted()?;
    let mv = mixed_volume(&lifted, true)?;
    let s = supports(&lifted);
    Ok(Outcome::ok(json!({
        "n": lifted[0].support.dim(),
        "mixed_volume": mv.value.to_string(),
        "perturbed": mv.perturbed,
        "cells": mv.cells.iter().map(|c| describe_cell(c, &s)).collect::<Vec<_>>(),
    })))
}

pub fn mixed_cells_cmd(input: Option<&str>, want_svg: bool) -> Result<Outcome> {
    let lifted = read_json::<LiftedInput>(input)?.to_lifted()?;
    let check = is_mixed_tuple(&lifted)?;
    let sub = induced_subdivision(&lifted)?;
    let s = supports(&lifted);
    let facets: Vec<Value> = sub
        .cells
        .iter()
        .map(|f| {
            let faces: Vec<Vec<_>> = f
                .faces
                .iter()
                .zip(&s)
                .map(|(face, sp)| face.iter().map(|&i| sp.points()[i].clone()).collect())
                .collect();
            json!({
                "normal": f.normal.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "functional": describe_normal(&f.v),
                "faces": faces,
                "dims": f.dims,
                "mixed": f.is_mixed,
            })
        })
        .collect();
    let (cells, total) = if check.mixed {
        let cells = mixed_cells(&sub)?;
        let total: num_bigint::BigInt = cells.iter().map(|c| c.volume.clone()).sum();
        (cells.iter().map(|c| describe_cell(c, &s)).collect::<Vec<_>>(), Some(total.to_string()))
    } else {
        (Vec::new(), None)
    };
    let svg = if want_svg { Some(subdivision_svg(&sub)?) } else { None };
    let mut out = Outcome::ok(json!({
        "n": sub.dim(),
        "mixed": check.mixed,
        "facets": facets,
        "mixed_cells": cells,
        "mixed_volume": total,
    }));
    out.svg = svg;
    Ok(out)
}

pub fn triangulate_cmd(input: Option<&str>, want_svg: bool) -> Result<Outcome> {
    let inp: LiftedInput = read_json(input)?;
    if inp.liftings.is_none() {
        return Err(Error::InvalidInput("triangulate needs a lifting".into()));
    }
    let lifted = single(inp.to_lifted()?)?;
    let t = coherent_triangulation(&lifted)?;
    let vols: Vec<String> = t.normalized_volumes().iter().map(|v| v.to_string()).collect();
    let svg = if want_svg { Some(triangulation_svg(&t)?) } else { None };
    let mut out = Outcome::ok(json!({
        "triangulation": to_value(&t),
        "normalized_volumes": vols,
        "total_normalized_volume": t.total_normalized_volume().to_string(),
    }));
    out.svg = svg;
    Ok(out)
}

pub fn sturmfels_cmd(input: Option<&str>) -> Result<Outcome> {
    let (lifted, signs) = read_json::<SignedInput>(input)?.parse()?;
    let a = sturmfels_positive_count(&lifted, &signs)?;
    let s = supports(&lifted);
    Ok(Outcome::ok(json!({
        "positive_roots": a.count,
        "mixed_cells": a.mixed_cells,
        "alternating_cells": a.cells.iter().map(|c| describe_cell(c, &s)).collect::<Vec<_>>(),
    })))
}

pub fn viro_cmd(input: Option<&str>, want_svg: bool, show_triangulation: bool) -> Result<Outcome> {
    let (lifted, signs) = read_json::<SignedInput>(input)?.parse()?;
    let lifted = single(lifted)?;
    let signs = signs.into_iter().next().expect("one sign list");
    let tri = coherent_triangulation(&lifted)?;
    let diagram = viro_diagram_2d(&lifted, &signs)?;
    let svg = viro_svg(&tri, &signs, &diagram, show_triangulation)?;
    let mut json = json!({
        "triangulation": to_value(&tri),
        "signs": to_value(&signs.signs),
        "diagram": to_value(&diagram),
    });
    let svg = if want_svg {
        Some(svg)
    } else {
        json["svg"] = Value::String(svg);
        None
    };
    let mut out = Outcome::ok(json);
    out.svg = svg;
    Ok(out)
}

fn count_status(c: &ValuationPhaseCount) -> Status {
    if c.inapplicable.is_empty() && c.collisions.is_empty() {
        Status::Certified
    } else {
        Status::Undecided
    }
}

pub fn padic_count_cmd(input: Option<&str>, theta: Option<&[u64]>, precision: Option<u32>) -> Result<Outcome> {
    let mut sys: SystemJson = read_json(input)?;
    if let Some(p) = precision {
        sys.field.precision = Some(p);
    }
    let theta: Vec<u64> = match theta {
        Some(t) => t.to_vec(),
        None => vec![1; sys.n],
    };
    let count = match sys.to_typed()? {
        TypedSystem::Real(_) => {
            return Err(Error::InvalidInput("padic-count needs a Qp or Fpt system".into()));
        }
        TypedSystem::PAdic(g) => count_roots_by_valuation_phase(&g, &theta)?,
        TypedSystem::Series(g) => count_roots_by_valuation_phase(&g, &theta)?,
    };
    let status = count_status(&count);
    let mut json = to_value(&count);
    json["field"] = to_value(&sys.field);
    json["theta"] = to_value(&theta);
    json["status"] = to_value(&status);
    Ok(Outcome::status(json, status))
}

fn system_json<K: Ring>(field: FieldSpec, sys: &SparseSystem<K>, lit: impl Fn(&K) -> String) -> SystemJson {
    SystemJson::from_polys(field, &sys.polys, lit)
}

pub fn gen_extremal_cmd(n: usize, k: Option<usize>, field: FieldSpec, eps: Option<&str>) -> Result<Outcome> {
    let eps = eps.map(str::to_string).unwrap_or_else(|| default_eps(&field));
    fn build<K: Ring>(n: usize, k: Option<usize>, e: &K) -> Result<SparseSystem<K>> {
        match k {
            Some(k) => Ok(gen_block_system(n, k, e)?.0),
            None => gen_g_eps(n, e),
        }
    }
    // a rational ε over Q_p gives a system with exact rational coefficients
    if field.field == FieldKind::Qp {
        if let Ok(e) = parse_rational(&eps) {
            let ctx = field.local_ctx()?;
            if PAdic::from_rational(ctx, &e).valuation().is_some() {
                let sys = system_json(field, &build(n, k, &e)?, format_rational);
                let mut json = to_value(&sys);
                json["eps"] = Value::String(eps);
                return Ok(Outcome::ok(json));
            }
        }
    }
    let sys = match field.parse_element(&eps)? {
        FieldElement::Real(e) => system_json(field, &build(n, k, &e)?, format_rational),
        FieldElement::PAdic(e) => system_json(field, &build(n, k, &e)?, |c| LocalField::literal(c)),
        FieldElement::Series(e) => system_json(field, &build(n, k, &e)?, |c| LocalField::literal(c)),
    };
    let mut json = to_value(&sys);
    json["eps"] = Value::String(eps);
    Ok(Outcome::ok(json))
}

/// Runs `job` for every `n` in the range on `jobs` threads; the reports
/// come back in order, so the output does not depend on `jobs`.
fn fan_out<T: Send>(range: (usize, usize), jobs: usize, job: impl Fn(usize) -> Result<T> + Sync) -> Result<Vec<T>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Guardrail(format!("thread pool: {e}")))?;
    pool.install(|| (range.0..=range.1).into_par_iter().map(&job).collect())
}

/// A single report for `n`, an array for a range; the exit code is the
/// largest over the range.
fn ranged<T: Serialize + Send>(
    range: (usize, usize),
    jobs: usize,
    status: impl Fn(&T) -> Status,
    job: impl Fn(usize) -> Result<T> + Sync,
) -> Result<Outcome> {
    let reports = fan_out(range, jobs, job)?;
    let code = reports.iter().map(|r| status(r).exit_code()).max().unwrap_or(0);
    let json = if range.0 == range.1 {
        to_value(&reports[0])
    } else {
        to_value(&reports)
    };
    Ok(Outcome { json, code, svg: None })
}

pub fn verify_family_cmd(
    range: (usize, usize),
    field: FieldSpec,
    eps: Option<&str>,
    precision: Option<u32>,
    jobs: usize,
) -> Result<Outcome> {
    let eps = eps.map(str::to_string).unwrap_or_else(|| default_eps(&field));
    let pol = policy(precision)?;
    ranged(range, jobs, |r: &fewnomial::fewnomial::VerificationReport| r.status, |n| {
        verify_family(n, field, &eps, pol)
    })
}

pub fn lemma_tri_cmd(range: (usize, usize), jobs: usize) -> Result<Outcome> {
    ranged(range, jobs, |r: &fewnomial::fewnomial::LemmaCertificate| r.status, lemma_tri_certificate)
}

pub fn block_system_cmd(
    n: usize,
    k: usize,
    field: FieldSpec,
    eps: Option<&str>,
    precision: Option<u32>,
) -> Result<Outcome> {
    let eps = eps.map(str::to_string).unwrap_or_else(|| default_eps(&field));
    let r = certify_block_system(n, k, field, &eps, policy(precision)?)?;
    Ok(Outcome::status(to_value(&r), r.status))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum VariantArg {
    Printed,
    DigitShifted,
    Both,
}

pub fn poonen_cmd(p: u64, k: usize, variant: VariantArg) -> Result<Outcome> {
    let one = |v: PoonenVariant| -> Result<Outcome> {
        let r = poonen_report(p, k, v)?;
        let status = if r.matches_target { Status::Certified } else { Status::Refuted };
        let mut json = to_value(&r);
        json["status"] = to_value(&status);
        Ok(Outcome::status(json, status))
    };
    match variant {
        VariantArg::Printed => one(PoonenVariant::Printed),
        VariantArg::DigitShifted => one(PoonenVariant::DigitShifted),
        VariantArg::Both => {
            let c = poonen_compare(p, k)?;
            Ok(Outcome::status(to_value(&c), c.status))
        }
    }
}

pub fn slp_roots_cmd(n: usize, k: usize, p: u64, precision: Option<u32>) -> Result<Outcome> {
    let r = count_slp_roots_padic(n, k, p, policy(precision)?)?;
    Ok(Outcome::status(to_value(&r), r.status))
}

pub fn slp_real_cmd(n: usize, k: usize, logistic: bool) -> Result<Outcome> {
    if logistic {
        return Ok(Outcome::ok(to_value(&logistic_report(n)?)));
    }
    let c = certify_no_real_roots(n, k)?;
    Ok(Outcome::status(to_value(&c), c.status))
}

/// The field flag accepts `R`, `Qp` and `Fpt`.
pub fn parse_field(s: &str) -> std::result::Result<FieldKind, String> {
    match s {
        "R" | "r" => Ok(FieldKind::R),
        "Qp" | "qp" | "QP" => Ok(FieldKind::Qp),
        "Fpt" | "fpt" | "FPT" => Ok(FieldKind::Fpt),
        _ => Err(format!("unknown field {s:?}; expected R, Qp or Fpt")),
    }
}
