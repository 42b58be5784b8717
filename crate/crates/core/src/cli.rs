//! Command-line front end. Every verb loads JSON documents, runs one
//! family of operations and renders a deterministic report.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::clutch::{
    clutch_iso, cuntz_equal_clutch, hemisphere_restrictions, label_from_map, sphere3_map, ClutchAnswer, ClutchClass,
    ClutchLabel,
};
use crate::cohomology::cohomology_of;
use crate::complex::{circle, sphere, telescope, FacePoset};
use crate::cuntz::{
    add, cuntz_leq, decide_embedding, decide_iso, embeds_by_gap, restrict_class, stabilized_iso_check,
    telescope_report, CuntzClass, Decision, IsoVerdict,
};
use crate::error::{Error, Result};
use crate::io::{read_json, CellsDoc, ClutchDoc, ComplexDoc, CoverDoc, CuntzDoc, FamilyDoc, K0Doc, ProfileDoc};
use crate::k0star::{elementary_normal_form, from_cuntz, k0_add};
use crate::rofp::{rof_from_eigenvalues, shrink_cover};
use crate::Int;

#[derive(Debug, Parser)]
#[command(name = "cuntzkit", version, about = "Exact invariants of Hilbert modules over finite simplicial complexes")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a complex, or summarize one; build classes from families,
    /// eigenvalue profiles or open covers.
    Build(BuildArgs),
    /// Integral cohomology of a complex or of a cell set in it.
    Cohomology {
        complex: PathBuf,
        #[arg(long)]
        cells: Option<PathBuf>,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Open, closed, locally closed or none of these.
    Classify { complex: PathBuf, cells: PathBuf },
    /// Compare two classes.
    Compare(CompareArgs),
    /// Sum of two classes.
    Add { a: PathBuf, b: PathBuf },
    /// Restriction of a class to a cell set.
    Restrict { class: PathBuf, cells: PathBuf },
    /// Images of classes in K_0^* with their sum and normal forms.
    K0star {
        #[arg(required = true)]
        classes: Vec<PathBuf>,
    },
    /// Compare two clutching classes.
    Clutch { a: PathBuf, b: PathBuf },
    /// Cohomology tower of the degree-two mapping telescope.
    Telescope {
        #[arg(long, default_value_t = 4)]
        stages: usize,
    },
    /// Worked examples.
    Examples(ExamplesArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct BuildSource {
    #[arg(long)]
    sphere: Option<usize>,
    #[arg(long)]
    circle: Option<usize>,
    #[arg(long)]
    telescope: Option<usize>,
    #[arg(long)]
    complex: Option<PathBuf>,
    #[arg(long)]
    family: Option<PathBuf>,
    #[arg(long)]
    profile: Option<PathBuf>,
    #[arg(long)]
    shrink: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    source: BuildSource,
}

#[derive(Debug, Args)]
#[group(id = "mode", required = true, multiple = false)]
pub struct CompareMode {
    #[arg(long)]
    iso: bool,
    #[arg(long)]
    embed: bool,
    #[arg(long)]
    cuntz: bool,
    #[arg(long)]
    gap: bool,
    #[arg(long)]
    stabilized: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    mode: CompareMode,
    a: PathBuf,
    b: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExamplesArgs {
    /// Clutching classes over the suspension of a 3-sphere.
    #[arg(long = "s4-clutch", required = true)]
    s4_clutch: bool,
    /// Range `a..b` (inclusive) or comma-separated list.
    #[arg(long, allow_hyphen_values = true, default_value = "-2..2")]
    labels: String,
}

/// A rendered result: JSON data plus its text form.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub data: Value,
    pub text: String,
}

impl Report {
    fn new(data: Value, lines: Vec<String>) -> Self {
        Report { data, text: lines.join("\n") + "\n" }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.data).expect("report serializes") + "\n",
        }
    }
}

/// Parses arguments, runs, writes the report, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(output) => match &cli.out {
            Some(path) => match std::fs::write(path, output) {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    1
                }
            },
            None => {
                print!("{output}");
                0
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> Result<String> {
    Ok(run(&cli.command)?.render(cli.format))
}

pub fn run(command: &Command) -> Result<Report> {
    match command {
        Command::Build(args) => build(&args.source),
        Command::Cohomology { complex, cells, degree } => cohomology(complex, cells.as_deref(), *degree),
        Command::Classify { complex, cells } => classify(complex, cells),
        Command::Compare(args) => compare(args),
        Command::Add { a, b } => {
            let (a, b) = load_pair(a, b)?;
            let sum = add(&a, &b)?;
            Ok(class_report("sum", &sum))
        }
        Command::Restrict { class, cells } => {
            let a = load_class(class)?;
            let s = read_json::<CellsDoc>(cells)?.build(a.complex())?;
            Ok(class_report("restriction", &restrict_class(&a, &s)?))
        }
        Command::K0star { classes } => k0star(classes),
        Command::Clutch { a, b } => clutch(a, b),
        Command::Telescope { stages } => telescope_verb(*stages),
        Command::Examples(args) => s4_clutch(&parse_labels(&args.labels)?),
    }
}

fn load_class(path: &Path) -> Result<CuntzClass> {
    read_json::<CuntzDoc>(path)?.build()
}

/// Loads two classes onto one shared complex.
fn load_pair(a: &Path, b: &Path) -> Result<(CuntzClass, CuntzClass)> {
    let (da, db) = (read_json::<CuntzDoc>(a)?, read_json::<CuntzDoc>(b)?);
    let x = Arc::new(da.complex.build()?);
    if db.complex.build()? != *x {
        return Err(Error::BaseMismatch("the two classes are on different complexes".into()));
    }
    Ok((da.build_on(&x)?, db.build_on(&x)?))
}

fn complex_summary(x: &FacePoset) -> (Value, Vec<String>) {
    let data = json!({
        "dim": x.dim(),
        "fVector": x.f_vector(),
        "eulerCharacteristic": x.euler_characteristic(),
        "complex": ComplexDoc::of(x),
    });
    let lines = vec![
        format!("dimension {}", x.dim()),
        format!("f-vector {:?}", x.f_vector()),
        format!("Euler characteristic {}", x.euler_characteristic()),
    ];
    (data, lines)
}

fn build(src: &BuildSource) -> Result<Report> {
    let generated = if let Some(n) = src.sphere {
        Some(sphere(n)?)
    } else if let Some(k) = src.circle {
        Some(circle(k)?)
    } else if let Some(n) = src.telescope {
        Some(telescope(n)?.complex)
    } else if let Some(p) = &src.complex {
        Some(read_json::<ComplexDoc>(p)?.build()?)
    } else {
        None
    };
    if let Some(x) = generated {
        let (data, lines) = complex_summary(&x);
        return Ok(Report::new(data, lines));
    }
    if let Some(p) = &src.family {
        let f = read_json::<FamilyDoc>(p)?.build()?;
        let report = f.validate();
        let mut lines = vec![format!("family: {report}")];
        let sup = if report.is_valid() {
            let s = f.sup()?;
            lines.push(format!("supremum rank function: {}", rank_text(&s)));
            Some(CuntzDoc::of(&s))
        } else {
            None
        };
        return Ok(Report::new(json!({ "validation": report, "sup": sup }), lines));
    }
    if let Some(p) = &src.profile {
        let (x, profile) = read_json::<ProfileDoc>(p)?.build()?;
        let fam = rof_from_eigenvalues(&x, &profile)?;
        let sets: Vec<Value> = fam.sets.iter().map(|(i, a)| json!({ "rank": i, "cells": x.cell_lists(a) })).collect();
        let mut lines: Vec<String> = fam.sets.iter().map(|(i, a)| format!("A_{i}: {:?}", x.cell_lists(a))).collect();
        let rank = rank_map(&x, fam.rank.values());
        lines.push(format!("rank: {}", rank_line(&rank)));
        return Ok(Report::new(json!({ "sets": sets, "rank": rank }), lines));
    }
    if let Some(p) = &src.shrink {
        let (x, opens) = read_json::<CoverDoc>(p)?.build()?;
        let a = shrink_cover(&x, &opens)?;
        let lists: Vec<_> = a.iter().map(|s| x.cell_lists(s)).collect();
        let lines = lists.iter().enumerate().map(|(i, l)| format!("A_{i}: {l:?}")).collect();
        return Ok(Report::new(json!({ "sets": lists }), lines));
    }
    Err(Error::Parse("nothing to build".into()))
}

fn rank_map<V: ToString>(
    x: &FacePoset,
    values: &std::collections::BTreeMap<usize, V>,
) -> std::collections::BTreeMap<String, String> {
    values.iter().map(|(&c, d)| (crate::io::cell_key(x.cell(c)), d.to_string())).collect()
}

fn rank_line(m: &std::collections::BTreeMap<String, String>) -> String {
    m.iter().map(|(k, v)| format!("[{k}]={v}")).collect::<Vec<_>>().join(" ")
}

fn rank_text(a: &CuntzClass) -> String {
    rank_line(&rank_map(a.complex(), a.r().values()))
}

fn cohomology(complex: &Path, cells: Option<&Path>, degree: Option<usize>) -> Result<Report> {
    let x = Arc::new(read_json::<ComplexDoc>(complex)?.build()?);
    let s = match cells {
        Some(p) => read_json::<CellsDoc>(p)?.build(&x)?,
        None => x.all_cells(),
    };
    let degrees: Vec<usize> = match degree {
        Some(k) => vec![k],
        None => (0..=x.dim_of(&s)).collect(),
    };
    let mut groups = serde_json::Map::new();
    let mut lines = Vec::new();
    for k in degrees {
        let h = cohomology_of(&x, &s, k)?;
        lines.push(format!("H^{k} = {}", h.group));
        groups.insert(
            k.to_string(),
            json!({ "group": h.group, "display": h.group.to_string(), "surrogate": h.surrogate }),
        );
    }
    Ok(Report::new(json!({ "cohomology": groups }), lines))
}

fn classify(complex: &Path, cells: &Path) -> Result<Report> {
    let x = read_json::<ComplexDoc>(complex)?.build()?;
    let s = read_json::<CellsDoc>(cells)?.build(&x)?;
    let kind = x.classify(&s)?;
    Ok(Report::new(json!({ "kind": kind }), vec![kind.to_string()]))
}

fn decision_value(d: &Decision) -> Value {
    json!({ "decision": d, "summary": d.to_string() })
}

fn compare(args: &CompareArgs) -> Result<Report> {
    let (a, b) = load_pair(&args.a, &args.b)?;
    let m = &args.mode;
    if m.cuntz {
        let (ab, ba) = (cuntz_leq(&a, &b)?, cuntz_leq(&b, &a)?);
        let lines = vec![format!("a <= b: {ab}"), format!("b <= a: {ba}")];
        return Ok(Report::new(json!({ "aLeqB": decision_value(&ab), "bLeqA": decision_value(&ba) }), lines));
    }
    let d = if m.iso {
        decide_iso(&a, &b)?
    } else if m.embed {
        decide_embedding(&a, &b)?
    } else if m.gap {
        embeds_by_gap(&a, &b)?
    } else {
        stabilized_iso_check(&a, &b)?
    };
    Ok(Report::new(decision_value(&d), vec![d.to_string()]))
}

fn class_report(name: &str, a: &CuntzClass) -> Report {
    let mut lines = vec![format!("{name} rank function: {}", rank_text(a))];
    for (i, b) in a.strata() {
        lines.push(format!("stratum {i}: c1 = {:?} in H^2 = {}", b.c1, b.h2().group));
    }
    Report::new(json!({ name: CuntzDoc::of(a) }), lines)
}

fn k0star(paths: &[PathBuf]) -> Result<Report> {
    let first = read_json::<CuntzDoc>(&paths[0])?;
    let x = Arc::new(first.complex.build()?);
    let mut elements = Vec::new();
    let mut lines = Vec::new();
    let mut sum = None;
    for (k, p) in paths.iter().enumerate() {
        let doc = read_json::<CuntzDoc>(p)?;
        if doc.complex.build()? != *x {
            return Err(Error::BaseMismatch("classes are on different complexes".into()));
        }
        let class = doc.build_on(&x)?;
        let f = from_cuntz(&class)?;
        let chain = elementary_normal_form(&x, class.r())?;
        let chain_lists: Vec<_> = chain.iter().map(|s| x.cell_lists(s)).collect();
        lines.push(format!("element {k}: {}", rank_line(&rank_map(&x, f.values()))));
        lines.push(format!("element {k} normal form: {chain_lists:?}"));
        elements.push(json!({ "element": K0Doc::of(&f).values, "normalForm": chain_lists }));
        sum = Some(match sum {
            None => f,
            Some(s) => k0_add(&s, &f)?,
        });
    }
    let sum = sum.expect("at least one class");
    lines.push(format!("sum: {}", rank_line(&rank_map(&x, sum.values()))));
    Ok(Report::new(json!({ "elements": elements, "sum": K0Doc::of(&sum).values }), lines))
}

fn clutch(a: &Path, b: &Path) -> Result<Report> {
    let a = read_json::<ClutchDoc>(a)?.build()?;
    let b = read_json::<ClutchDoc>(b)?.build()?;
    let iso = clutch_iso(&a, &b)?;
    let cuntz = match iso {
        ClutchAnswer::Unclassified => None,
        _ => Some(cuntz_equal_clutch(&a, &b)?),
    };
    let same_halves = hemisphere_restrictions(&a)? == hemisphere_restrictions(&b)?;
    let mut lines = vec![format!("labels {} and {}", a.label(), b.label()), format!("isomorphic: {iso}")];
    if let Some(c) = cuntz {
        lines.push(format!("Cuntz equal: {c}"));
    }
    lines.push(format!("hemisphere restrictions equal: {same_halves}"));
    Ok(Report::new(
        json!({
            "labels": [a.label().to_string(), b.label().to_string()],
            "isomorphic": iso,
            "cuntzEqual": cuntz,
            "hemisphereRestrictionsEqual": same_halves,
        }),
        lines,
    ))
}

fn telescope_verb(stages: usize) -> Result<Report> {
    let r = telescope_report(stages)?;
    let mut lines = Vec::new();
    for (j, (h1, h2)) in r.h1.iter().zip(&r.h2).enumerate() {
        lines.push(format!("stage {j}: H^1 = {h1}, H^2 = {h2}"));
    }
    for (j, m) in r.h1_maps.iter().enumerate() {
        lines.push(format!("H^1(K_{}) -> H^1(K_{j}): {:?}", j + 1, m));
    }
    lines.push(format!("Mittag-Leffler: {:?}", r.h1_tower.mittag_leffler).to_lowercase());
    let lim = r.h1_tower.lim.as_ref().map_or("unknown".to_string(), |g| g.to_string());
    lines.push(format!("lim H^1 = {lim}"));
    let lim1 = match r.h1_tower.lim1_vanishes {
        Some(true) => "zero",
        Some(false) => "nonzero",
        None => "undetermined",
    };
    lines.push(format!("lim^1 H^1: {lim1}"));
    let count = r.line_bundle_cuntz_classes.map_or("not determined".to_string(), |n| {
        if n == 1 {
            "one".into()
        } else {
            n.to_string()
        }
    });
    let iso = match &r.line_bundles.isomorphism {
        IsoVerdict::NotIsomorphic { stage } => format!("distinguished at stage {stage}"),
        IsoVerdict::Undecided { lim1_obstruction: true } => "not classified by stagewise data (lim^1 != 0)".to_string(),
        IsoVerdict::Undecided { lim1_obstruction: false } => "not decided by stagewise data".to_string(),
    };
    lines.push(format!("Cuntz classes of line bundles: {count}; isomorphism classes: {iso}"));
    Ok(Report::new(serde_json::to_value(&r).expect("report serializes"), lines))
}

/// Parses `a..b`, `a..=b` or `a,b,c`.
pub fn parse_labels(text: &str) -> Result<Vec<Int>> {
    let bad = || Error::Parse(format!("bad label range {text:?}"));
    if let Some((lo, hi)) = text.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let (lo, hi): (Int, Int) = (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?);
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect()
}

fn s4_clutch(labels: &[Int]) -> Result<Report> {
    let base = Arc::new(sphere(3)?);
    let mut classes = Vec::new();
    let mut lines = Vec::new();
    let mut entries = Vec::new();
    for &d in labels {
        let (label, source) = if d.abs() <= 2 {
            (label_from_map(&sphere3_map(d)?)?, "degree of double-suspended circle map")
        } else {
            (d, "given")
        };
        classes.push(ClutchClass::new(&base, 1, 2, ClutchLabel::Integer(label))?);
        lines.push(format!("label {label} ({source})"));
        entries.push(json!({ "requested": d, "label": label, "source": source }));
    }
    let mut pairwise_distinct = true;
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            pairwise_distinct &= clutch_iso(a, b)? == ClutchAnswer::No;
            pairwise_distinct &= !cuntz_equal_clutch(a, b)?;
        }
    }
    let halves = classes.iter().map(hemisphere_restrictions).collect::<Result<Vec<_>>>()?;
    let identical = halves.windows(2).all(|w| w[0] == w[1]);
    lines.push(format!("{} classes, pairwise non-isomorphic: {pairwise_distinct}", classes.len()));
    lines.push(format!("hemisphere restrictions identical: {identical}"));
    if let Some((low, high)) = halves.first() {
        lines.push(format!(
            "lower half rank {:?}, upper half rank {:?}",
            low.r().finite_values(),
            high.r().finite_values()
        ));
    }
    Ok(Report::new(
        json!({
            "classes": entries,
            "pairwiseNonIsomorphic": pairwise_distinct,
            "hemisphereRestrictionsIdentical": identical,
        }),
        lines,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_ranges() {
        assert_eq!(parse_labels("-2..2").unwrap(), vec![-2, -1, 0, 1, 2]);
        assert_eq!(parse_labels("1..=3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_labels("4, -1").unwrap(), vec![4, -1]);
        assert!(parse_labels("3..1").is_err());
        assert!(parse_labels("x").is_err());
    }

    #[test]
    fn argument_errors_exit_with_one() {
        assert_eq!(main_with_args(["cuntzkit", "frobnicate"]), 1);
        assert_eq!(main_with_args(["cuntzkit", "compare", "--iso", "--embed", "a", "b"]), 1);
    }

    #[test]
    fn telescope_text() {
        let r = run(&Command::Telescope { stages: 2 }).unwrap();
        assert!(r.text.contains("Cuntz classes of line bundles: one"));
        assert!(r.text.contains("mittag-leffler: fails"));
    }
}
