//! The four subcommands.

use std::path::Path;

use serde::Serialize;
use sobolev_core::fourier::{
    forward_transform, random_band_limited, s_p_norm, AmplitudeLaw, FourierCoefficients,
    VectorFunction,
};
use sobolev_core::group::{make_group, Group};
use sobolev_core::sobolev::{
    embedding_constant_c, exponents, h_s_norm, l_p_norm, lq_bound_constant, summability_check,
    sup_norm, WeightSequence,
};
use sobolev_core::verify::{function_seed, InequalityRecord};
use sobolev_core::{run_suite, SuiteGroup, WeightChoice, C64};

use crate::formats::CoefficientFile;
use crate::output::{csv_bytes, fmt_f64, json_bytes, slug, write_atomic};
use crate::{CliError, Context, Source};

fn build(sg: &SuiteGroup) -> Result<(Group, WeightSequence), CliError> {
    let g = make_group(&sg.spec)?;
    let w = match &sg.weights {
        WeightChoice::Canonical => WeightSequence::canonical(&g),
        WeightChoice::Zero => WeightSequence::zero(g.window()),
        WeightChoice::Table(t) => {
            WeightSequence::from_table(g.window(), t.iter().map(|(k, v)| (k.as_str(), *v)))?
        }
    };
    Ok((g, w))
}

/// All configured groups with their weights, in configuration order.
pub fn configured_groups(ctx: &Context) -> Result<Vec<(Group, WeightSequence)>, CliError> {
    ctx.config.suite_groups()?.iter().map(build).collect()
}

fn find_group(ctx: &Context, name: &str) -> Result<(usize, Group, WeightSequence), CliError> {
    let groups = configured_groups(ctx)?;
    let names: Vec<String> = groups.iter().map(|(g, _)| g.name().to_string()).collect();
    groups
        .into_iter()
        .enumerate()
        .find(|(_, (g, _))| g.name() == name)
        .map(|(i, (g, w))| (i, g, w))
        .ok_or_else(|| {
            CliError::Config(format!(
                "group `{name}` is not in the configuration (configured: {})",
                names.join(", ")
            ))
        })
}

fn write_coefficients(ctx: &Context, g: &Group, c: &FourierCoefficients) -> Result<(), CliError> {
    let path = ctx.out_dir.join(format!("spectra_{}.json", slug(g.name())));
    write_atomic(
        &path,
        &json_bytes(&CoefficientFile::from_coefficients(g.name(), c)),
    )?;
    ctx.say(format!(
        "{}\ts_2\t{}\t{}",
        g.name(),
        fmt_f64(s_p_norm(c, 2.0)?),
        path.display()
    ));
    Ok(())
}

/// Writes `spectra_<group>.json` for each selected group and prints its `S_2` norm.
pub fn spectra(
    ctx: &Context,
    group: Option<&str>,
    source: Source,
    input: Option<&Path>,
) -> Result<(), CliError> {
    let e = ctx.config.e_norm()?;
    let m = ctx.config.m;
    if source == Source::File {
        let input = input.ok_or_else(|| CliError::Config("--source file needs --input".into()))?;
        let file = CoefficientFile::read(input)?;
        let (_, g, _) = find_group(ctx, &file.group)?;
        let c = file.to_coefficients(&g)?;
        return write_coefficients(ctx, &g, &c);
    }
    if input.is_some() {
        return Err(CliError::Config(
            "--input is only used with --source file".into(),
        ));
    }
    let groups = configured_groups(ctx)?;
    if let Some(name) = group {
        if !groups.iter().any(|(g, _)| g.name() == name) {
            find_group(ctx, name)?;
        }
    }
    for (i, (g, _)) in groups.iter().enumerate() {
        if group.is_some_and(|name| name != g.name()) {
            continue;
        }
        let c = match source {
            Source::Random => random_band_limited(
                function_seed(ctx.config.seed, i, 0),
                g,
                m,
                AmplitudeLaw::Gaussian,
            )
            .with_e_norm(e),
            _ => {
                let v: Vec<C64> = (1..=m).map(|k| C64::new(k as f64, 0.0)).collect();
                let f = VectorFunction::from_fn(g, m, e, |_| v.clone())?;
                forward_transform(&f, g)?
            }
        };
        write_coefficients(ctx, g, &c)?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormRow {
    pub group: String,
    pub quantity: &'static str,
    pub param: String,
    pub value: f64,
}

/// Norm table of a coefficient file.
pub fn norm_table(ctx: &Context, file: &CoefficientFile) -> Result<Vec<NormRow>, CliError> {
    let (_, g, gamma) = find_group(ctx, &file.group)?;
    let c = file.to_coefficients(&g)?;
    let row = |quantity, param: String, value| NormRow {
        group: g.name().to_string(),
        quantity,
        param,
        value,
    };
    let mut rows = Vec::new();
    for &p in &ctx.config.p_grid {
        rows.push(row("s_p", p.to_string(), s_p_norm(&c, p.0)?));
    }
    for &s in &ctx.config.s_grid {
        rows.push(row("h_s", fmt_f64(s), h_s_norm(&c, &gamma, s)?));
    }
    let f = VectorFunction::spectral(c);
    rows.push(row("l_p", "2".into(), l_p_norm(&f, &g, 2.0)?));
    let sup = sup_norm(&f, &g, ctx.config.extra_samples, ctx.config.seed)?;
    rows.push(row("sup", String::new(), sup));
    Ok(rows)
}

fn emit<T: Serialize>(ctx: &Context, stem: &str, rows: &[T]) -> Result<(), CliError> {
    if ctx.format.json() {
        write_atomic(&ctx.out_dir.join(format!("{stem}.json")), &json_bytes(rows))?;
    }
    if ctx.format.csv() {
        write_atomic(&ctx.out_dir.join(format!("{stem}.csv")), &csv_bytes(rows)?)?;
    }
    Ok(())
}

/// Writes `norms_<group>.{json,csv}` and prints the table.
pub fn norms(ctx: &Context, input: &Path) -> Result<(), CliError> {
    let file = CoefficientFile::read(input)?;
    let rows = norm_table(ctx, &file)?;
    for r in &rows {
        ctx.say(format!(
            "{}\t{}\t{}\t{}",
            r.group,
            r.quantity,
            r.param,
            fmt_f64(r.value)
        ));
    }
    emit(ctx, &format!("norms_{}", slug(&file.group)), &rows)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantRow {
    pub group: String,
    /// `C` (sup embedding) or `lq` (the `L^{alpha'}` embedding).
    pub quantity: &'static str,
    pub s: f64,
    pub t: Option<f64>,
    pub alpha_conj: Option<f64>,
    pub value: f64,
    /// Summability of `sum d^3 (1 + gamma^2)^(-x)` with `x = s` for `C`, `x = t` for `lq`.
    pub verdict: String,
}

/// Constants for every configured group and parameter.
pub fn constant_table(ctx: &Context) -> Result<Vec<ConstantRow>, CliError> {
    let mut rows = Vec::new();
    for (g, gamma) in configured_groups(ctx)? {
        let window = g.window();
        for &s in &ctx.config.s_grid {
            let est = embedding_constant_c(&gamma, s, window)?;
            rows.push(ConstantRow {
                group: g.name().to_string(),
                quantity: "C",
                s,
                t: None,
                alpha_conj: None,
                value: est.value,
                verdict: est.verdict.to_string(),
            });
        }
        for &(s, t) in &ctx.config.st_pairs {
            rows.push(ConstantRow {
                group: g.name().to_string(),
                quantity: "lq",
                s,
                t: Some(t),
                alpha_conj: Some(exponents(s, t)?.alpha_conj),
                value: lq_bound_constant(&gamma, t, s, window)?,
                verdict: summability_check(&gamma, t, window)?.verdict.to_string(),
            });
        }
    }
    Ok(rows)
}

/// Writes `constants.{json,csv}` and prints the table.
pub fn constants(ctx: &Context) -> Result<(), CliError> {
    let rows = constant_table(ctx)?;
    for r in &rows {
        let t = r.t.map(fmt_f64).unwrap_or_default();
        ctx.say(format!(
            "{}\t{}\ts={}\tt={}\t{}\t{}",
            r.group,
            r.quantity,
            fmt_f64(r.s),
            t,
            fmt_f64(r.value),
            r.verdict
        ));
    }
    emit(ctx, "constants", &rows)
}

#[derive(Serialize)]
struct CsvRecord<'a> {
    name: &'a str,
    group: &'a str,
    seed: u64,
    lhs: f64,
    rhs: f64,
    slack: f64,
    tol: f64,
    pass: bool,
    index: usize,
    params: &'a str,
    advisory: bool,
}

impl<'a> From<&'a InequalityRecord> for CsvRecord<'a> {
    fn from(r: &'a InequalityRecord) -> Self {
        CsvRecord {
            name: &r.name,
            group: &r.group,
            seed: r.seed,
            lhs: r.lhs,
            rhs: r.rhs,
            slack: r.slack,
            tol: r.tol,
            pass: r.pass,
            index: r.index,
            params: &r.params,
            advisory: r.advisory,
        }
    }
}

/// Runs the suite, writes `report.{json,csv}`; `Ok(false)` when a record fails.
pub fn verify(
    ctx: &Context,
    batch_size: Option<usize>,
    tamper: Option<f64>,
) -> Result<bool, CliError> {
    let mut suite = ctx.config.suite()?;
    if let Some(b) = batch_size {
        suite.batch_size = b;
    }
    suite.tamper_rhs_scale = tamper;
    let report = run_suite(&suite)?;
    if ctx.format.json() {
        write_atomic(&ctx.out_dir.join("report.json"), &json_bytes(&report))?;
    }
    if ctx.format.csv() {
        let rows: Vec<CsvRecord<'_>> = report.records.iter().map(CsvRecord::from).collect();
        write_atomic(&ctx.out_dir.join("report.csv"), &csv_bytes(&rows)?)?;
    }
    for (name, s) in &report.summary {
        ctx.say(format!(
            "{name:<24} records {:>6}  failures {:>5}  min slack {}",
            s.count,
            s.failures,
            fmt_f64(s.min_slack)
        ));
    }
    let passed = report.passed();
    if passed {
        ctx.say(format!("PASS ({} records)", report.records.len()));
    } else {
        let failed = report.failures().filter(|r| !r.advisory).count();
        eprintln!("FAIL: {failed} of {} records fail", report.records.len());
    }
    Ok(passed)
}
