//! Subcommands.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use frechet_edit_core::continuous_edit::{
    continuous_delete_edit_two_sided_value, continuous_edit_value_with, shortcut_decide, EditResult,
};
use frechet_edit_core::discrete_edit::{edit_table, reconstruct_edits};
use frechet_edit_core::frechet::{
    decide_continuous, decide_discrete, decide_weak_continuous, decide_weak_discrete,
    render_free_space,
};
use frechet_edit_core::hardness::{
    brute_force_weak_edit, gen_reduction, lift_blueprint, EnumCaps, ReductionKind, BIG,
};
use frechet_edit_core::script::EditOps;
use frechet_edit_core::{frechet, Cost, Curve};
use serde::Serialize;

use crate::io::{curve_csv, read_cnf, read_curve, script_json, ScriptOp};

pub const ENUM_CAP_VAR: &str = "FRECHET_EDIT_ENUM_CAP";

#[derive(Parser, Debug)]
#[command(
    name = "frechet-edit",
    version,
    about = "Fréchet edit distances between polygonal curves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide or compute an edit distance between two curves.
    Decide(DecideArgs),
    /// Write a 3SAT reduction instance as curve files plus a manifest.
    GenHardness(GenArgs),
    /// Draw the free-space diagram as SVG.
    Render(RenderArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantArg {
    Discrete,
    Continuous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Strong,
    Weak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OpsArg {
    /// Plain Fréchet decision, no edits.
    None,
    Delete,
    Insert,
    Both,
    /// Free deletions keeping both endpoints of σ.
    Shortcut,
}

impl OpsArg {
    fn edit_ops(self) -> Option<EditOps> {
        match self {
            OpsArg::Delete => Some(EditOps::Delete),
            OpsArg::Insert => Some(EditOps::Insert),
            OpsArg::Both => Some(EditOps::Both),
            OpsArg::None | OpsArg::Shortcut => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    DeleteUnlimited,
    DeleteBudget,
    InsertBudget,
    EditBudget,
}

impl From<KindArg> for ReductionKind {
    fn from(k: KindArg) -> ReductionKind {
        match k {
            KindArg::DeleteUnlimited => ReductionKind::DeleteUnlimited,
            KindArg::DeleteBudget => ReductionKind::DeleteBudget,
            KindArg::InsertBudget => ReductionKind::InsertBudget,
            KindArg::EditBudget => ReductionKind::EditBudget,
        }
    }
}

#[derive(Args, Debug)]
pub struct DecideArgs {
    /// Reference curve π (CSV, or JSON by extension).
    pub pi: PathBuf,
    /// Curve σ to be edited.
    pub sigma: PathBuf,
    #[arg(long, value_enum, default_value = "discrete")]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value = "strong")]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value = "none")]
    pub ops: OpsArg,
    #[arg(long)]
    pub delta: f64,
    /// Edit budget; without it the answer is whether any finite cost exists.
    #[arg(long)]
    pub k: Option<usize>,
    /// Delete from both curves (continuous deletion only).
    #[arg(long)]
    pub two_sided: bool,
    /// Use the exhaustive weak-edit oracle (required for weak mode).
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// DIMACS CNF file with three literals per clause.
    pub cnf: PathBuf,
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Lift the R^1 instance into the plane.
    #[arg(long)]
    pub lift: bool,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    pub pi: PathBuf,
    pub sigma: PathBuf,
    #[arg(long)]
    pub delta: f64,
    #[arg(long, value_enum, default_value = "continuous")]
    pub variant: VariantArg,
    /// SVG destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Runs a subcommand. `Ok(false)` means a decided-infeasible instance.
pub fn run(cli: &Cli) -> anyhow::Result<bool> {
    match &cli.command {
        Command::Decide(a) => {
            let r = decide(a)?;
            let text = serde_json::to_string_pretty(&r)?;
            println!("{text}");
            if let Some(out) = &a.out {
                write(out, &(text + "\n"))?;
            }
            Ok(r.answer)
        }
        Command::GenHardness(a) => {
            gen_hardness(a)?;
            Ok(true)
        }
        Command::Render(a) => {
            let svg = render(a)?;
            match &a.out {
                Some(p) => write(p, &svg)?,
                None => print!("{svg}"),
            }
            Ok(true)
        }
    }
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub variant: VariantArg,
    pub mode: ModeArg,
    pub ops: OpsArg,
    pub delta: f64,
    pub k: Option<usize>,
    pub answer: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_sided: Option<bool>,
    /// Edit count, or the string "inf".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cost: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub script: Option<Vec<ScriptOp>>,
    /// Deletions from π in two-sided mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pi_script: Option<Vec<ScriptOp>>,
}

fn cost_json(c: Cost) -> serde_json::Value {
    match c.value() {
        Some(v) => v.into(),
        None => "inf".into(),
    }
}

fn within(c: Cost, k: Option<usize>) -> bool {
    match (c.value(), k) {
        (Some(v), Some(k)) => v as usize <= k,
        (Some(_), None) => true,
        (None, _) => false,
    }
}

/// Enumeration caps, with both overridden by the environment variable when set.
pub fn enum_caps() -> anyhow::Result<EnumCaps> {
    match std::env::var(ENUM_CAP_VAR) {
        Ok(s) => {
            let cap: u64 = s
                .trim()
                .parse()
                .with_context(|| format!("{ENUM_CAP_VAR}={s:?} is not a count"))?;
            Ok(EnumCaps {
                subsets: cap,
                insertions: cap,
            })
        }
        Err(_) => Ok(EnumCaps::default()),
    }
}

fn check_config(a: &DecideArgs) -> anyhow::Result<()> {
    if !(a.delta.is_finite() && a.delta >= 0.0) {
        bail!("--delta must be a finite nonnegative number");
    }
    if a.mode == ModeArg::Weak {
        if !a.oracle {
            bail!("weak mode has no polynomial solver; pass --oracle for exhaustive search");
        }
        if a.ops == OpsArg::Shortcut {
            bail!("--ops shortcut is a strong continuous notion");
        }
        if a.variant == VariantArg::Continuous && a.ops != OpsArg::None {
            bail!("the weak edit oracle covers the discrete variant only");
        }
    } else if a.oracle {
        bail!("--oracle applies to weak mode only");
    }
    if a.ops == OpsArg::Shortcut && a.variant == VariantArg::Discrete {
        bail!("--ops shortcut needs --variant continuous");
    }
    if a.two_sided
        && !(a.variant == VariantArg::Continuous
            && a.ops == OpsArg::Delete
            && a.mode == ModeArg::Strong)
    {
        bail!("--two-sided needs --variant continuous --ops delete");
    }
    Ok(())
}

/// Evaluates `decide` without printing.
pub fn decide(a: &DecideArgs) -> anyhow::Result<Report> {
    check_config(a)?;
    let pi = read_curve(&a.pi)?;
    let sigma = read_curve(&a.sigma)?;
    if pi.dim() != sigma.dim() {
        bail!(
            "{} has dimension {}, {} has dimension {}",
            a.pi.display(),
            pi.dim(),
            a.sigma.display(),
            sigma.dim()
        );
    }
    if a.variant == VariantArg::Continuous
        && matches!(a.ops, OpsArg::Insert | OpsArg::Both)
        && pi.dim() != 2
    {
        bail!(
            "continuous insertion needs planar curves, found dimension {}",
            pi.dim()
        );
    }
    let mut r = Report {
        variant: a.variant,
        mode: a.mode,
        ops: a.ops,
        delta: a.delta,
        k: a.k,
        answer: false,
        two_sided: a.two_sided.then_some(true),
        cost: None,
        script: None,
        pi_script: None,
    };
    let (d, variant, mode) = (a.delta, a.variant, a.mode);
    match a.ops.edit_ops() {
        None if a.ops == OpsArg::Shortcut => {
            r.answer = shortcut_decide(&pi, &sigma, d)?;
        }
        None => {
            r.answer = match (variant, mode) {
                (VariantArg::Discrete, ModeArg::Strong) => decide_discrete(&pi, &sigma, d)?,
                (VariantArg::Discrete, ModeArg::Weak) => decide_weak_discrete(&pi, &sigma, d)?,
                (VariantArg::Continuous, ModeArg::Strong) => decide_continuous(&pi, &sigma, d)?,
                (VariantArg::Continuous, ModeArg::Weak) => decide_weak_continuous(&pi, &sigma, d)?,
            };
        }
        Some(ops) if mode == ModeArg::Weak => {
            let cost = brute_force_weak_edit(&pi, &sigma, d, ops, a.k, &enum_caps()?)?;
            r.answer = within(cost, a.k);
            r.cost = Some(cost_json(cost));
        }
        Some(ops) if variant == VariantArg::Discrete => {
            let t = edit_table(&pi, &sigma, d, ops, a.seed)?;
            let cost = t.cost();
            r.answer = within(cost, a.k);
            r.cost = Some(cost_json(cost));
            if cost.is_finite() {
                r.script = Some(script_json(&reconstruct_edits(&t)?));
            }
        }
        Some(_) if a.two_sided => {
            let t = continuous_delete_edit_two_sided_value(&pi, &sigma, d)?;
            r.answer = within(t.cost, a.k);
            r.cost = Some(cost_json(t.cost));
            r.script = t.sigma_script.as_ref().map(script_json);
            r.pi_script = t.pi_script.as_ref().map(script_json);
        }
        Some(ops) => {
            let EditResult { cost, script } = continuous_edit_value_with(&pi, &sigma, d, ops)?;
            r.answer = within(cost, a.k);
            r.cost = Some(cost_json(cost));
            r.script = script.as_ref().map(script_json);
        }
    }
    Ok(r)
}

#[derive(Debug, Serialize)]
struct Layer<'a> {
    name: &'a str,
    values: &'a [i64],
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    kind: &'a str,
    vars: usize,
    clauses: &'a [[i32; 3]],
    encoded_clauses: &'a [[i32; 3]],
    delta: f64,
    budget: Option<usize>,
    copies: usize,
    sublayer_gap: Option<usize>,
    lift: Option<f64>,
    dim: usize,
    pi_file: &'a str,
    sigma_file: &'a str,
    pi_len: usize,
    sigma_len: usize,
    layers: Vec<Layer<'a>>,
}

pub const PI_FILE: &str = "pi.csv";
pub const SIGMA_FILE: &str = "sigma.csv";
pub const MANIFEST_FILE: &str = "manifest.json";

/// Writes the blueprint files into `a.out`.
pub fn gen_hardness(a: &GenArgs) -> anyhow::Result<()> {
    let sat = read_cnf(&a.cnf)?;
    let mut bp = gen_reduction(&sat, a.kind.into());
    if a.lift {
        bp = lift_blueprint(&bp, BIG)?;
    }
    std::fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    let m = Manifest {
        kind: bp.kind.name(),
        vars: sat.vars(),
        clauses: sat.clauses(),
        encoded_clauses: &bp.clauses,
        delta: bp.delta,
        budget: bp.budget,
        copies: bp.copies,
        sublayer_gap: bp.sublayer_gap,
        lift: bp.lift,
        dim: bp.pi.dim(),
        pi_file: PI_FILE,
        sigma_file: SIGMA_FILE,
        pi_len: bp.pi.len(),
        sigma_len: bp.sigma.len(),
        layers: bp
            .sequences
            .iter()
            .map(|(name, values)| Layer { name, values })
            .collect(),
    };
    write(&a.out.join(PI_FILE), &curve_csv(&bp.pi))?;
    write(&a.out.join(SIGMA_FILE), &curve_csv(&bp.sigma))?;
    write(
        &a.out.join(MANIFEST_FILE),
        &(serde_json::to_string_pretty(&m)? + "\n"),
    )?;
    Ok(())
}

pub fn render(a: &RenderArgs) -> anyhow::Result<String> {
    let pi: Curve = read_curve(&a.pi)?;
    let sigma = read_curve(&a.sigma)?;
    let v = match a.variant {
        VariantArg::Discrete => frechet::Variant::Discrete,
        VariantArg::Continuous => frechet::Variant::Continuous,
    };
    Ok(render_free_space(&pi, &sigma, a.delta, v)?)
}
