//! Command-line surface: configuration, dispatch, and table or JSON output.
//!
//! Output is assembled in sorted bidegree order, so identical configurations
//! give byte-identical output regardless of thread scheduling.

mod presentation;

pub use presentation::{load_algebra, load_presentation, parse_presentation};

use crate::approx::{verify_approximation, window_columns, ApproxOptions, ApproxReport};
use crate::cyclic::{HomologyTheory, PageEntry, Stability, Towers};
use crate::derham::DeRham;
use crate::ell::{EllContext, Flavor};
use crate::error::Result;
use crate::gralg::{Algebra, Weight};
use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;
use std::path::PathBuf;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Dimensions of one theory over the window.
    Compute,
    /// Isomorphism verdicts for ψ, ψ⁺ or ψ^per.
    VerifyApprox,
    /// Pages of the column-filtration spectral sequence.
    Spectral,
    /// Dimensions of every theory side by side.
    Tables,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TheorySelector {
    Hh,
    Hc,
    Hcminus,
    Hcper,
    Ell,
    Ellplus,
    Ellper,
    Derham,
}

impl TheorySelector {
    fn homology(self) -> Option<HomologyTheory> {
        match self {
            TheorySelector::Hh => Some(HomologyTheory::Hh),
            TheorySelector::Hc => Some(HomologyTheory::Hc),
            TheorySelector::Hcminus => Some(HomologyTheory::HcMinus),
            TheorySelector::Hcper => Some(HomologyTheory::HcPer),
            _ => None,
        }
    }

    fn flavor(self) -> Option<Flavor> {
        match self {
            TheorySelector::Ell => Some(Flavor::Ell),
            TheorySelector::Ellplus => Some(Flavor::EllPlus),
            TheorySelector::Ellper => Some(Flavor::EllPer),
            _ => None,
        }
    }

    /// Whether the theory vanishes in negative degrees.
    fn connective(self) -> bool {
        matches!(
            self,
            TheorySelector::Hh | TheorySelector::Hc | TheorySelector::Ellplus | TheorySelector::Derham
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Table,
    Json,
}

/// One invocation of the tool.
#[derive(Clone, Debug, Parser, Serialize)]
#[command(name = "cyclo2", version, about = "Hochschild and cyclic homology over F2 and their ℓ-approximations")]
pub struct RunConfig {
    /// Presentation file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "compute")]
    pub command: Command,
    #[arg(long, value_enum, default_value = "hcminus")]
    pub theory: TheorySelector,
    /// Largest internal degree D.
    #[arg(long = "max-internal", default_value_t = 4)]
    pub max_internal: u32,
    /// Largest homological degree N (degrees -N..=N are reported).
    #[arg(long = "max-homological", default_value_t = 4)]
    pub max_homological: u32,
    /// Tower columns S kept below column 0 when the grading does not bound
    /// them.
    #[arg(long, default_value_t = 4)]
    pub columns: u32,
    #[arg(long, value_enum, default_value = "table")]
    pub format: OutputFormat,
    /// Seed for the sampled checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of sampled pairs in product checks.
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    /// Spectral sequence page (1 or 2).
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub page: u8,
}

/// One dimension at one bidegree.
#[derive(Clone, Debug, Serialize)]
pub struct DimRow {
    pub n: i64,
    pub degree: u32,
    pub weight: Weight,
    pub dim: usize,
    pub stability: Stability,
}

/// Every theory at one bidegree.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub n: i64,
    pub degree: u32,
    pub weight: Weight,
    pub hh: usize,
    pub hc: usize,
    pub hcminus: usize,
    pub hcper: usize,
    pub ell: usize,
    pub ellplus: usize,
    pub ellper: usize,
    pub omega: usize,
    pub derham: usize,
    pub stability: Stability,
}

#[derive(Serialize)]
#[serde(untagged)]
enum Body {
    Dims(Vec<DimRow>),
    Table(Vec<TableRow>),
    Pages(Vec<PageEntry>),
    Approx(Box<ApproxReport>),
}

#[derive(Serialize)]
struct Output<'a> {
    schema: u32,
    algebra: &'a str,
    config: &'a RunConfig,
    result: Body,
}

fn weights_upto(alg: &Algebra, d: u32) -> Vec<Weight> {
    (0..=d).flat_map(|k| alg.weights_of_degree(k)).collect()
}

fn bidegrees(alg: &Algebra, cfg: &RunConfig, connective: bool) -> Vec<(i64, Weight)> {
    let nmax = cfg.max_homological as i64;
    let lo = if connective { 0 } else { -nmax };
    let mut out = Vec::new();
    for n in lo..=nmax {
        for w in weights_upto(alg, cfg.max_internal) {
            out.push((n, w));
        }
    }
    out
}

fn dim_of(
    towers: &Towers,
    ell: &EllContext,
    derham: &DeRham,
    sel: TheorySelector,
    n: i64,
    w: &Weight,
    columns: i32,
) -> Result<(usize, Stability)> {
    if let Some(t) = sel.homology() {
        let h = towers.homology(t.bounds(), n, w, columns)?;
        return Ok((h.dim(), h.stability));
    }
    if let Some(f) = sel.flavor() {
        return Ok((ell.space(f, n, w)?.dim(), Stability::Exact));
    }
    if n < 0 {
        return Ok((0, Stability::Exact));
    }
    Ok((derham.de_rham_cohomology(n as usize, w)?.dim(), Stability::Exact))
}

fn compute(alg: &Algebra, cfg: &RunConfig) -> Result<Vec<DimRow>> {
    let towers = Towers::new(alg);
    let ell = EllContext::new(alg);
    let nmax = cfg.max_homological as i64;
    bidegrees(alg, cfg, cfg.theory.connective())
        .par_iter()
        .map(|(n, w)| {
            let columns = window_columns(alg, w, -nmax, cfg.columns as i32);
            let (dim, stability) = dim_of(&towers, &ell, ell.derham(), cfg.theory, *n, w, columns)?;
            Ok(DimRow {
                n: *n,
                degree: alg.weight_degree(w),
                weight: w.clone(),
                dim,
                stability,
            })
        })
        .collect()
}

fn tables(alg: &Algebra, cfg: &RunConfig) -> Result<Vec<TableRow>> {
    let towers = Towers::new(alg);
    let ell = EllContext::new(alg);
    let nmax = cfg.max_homological as i64;
    bidegrees(alg, cfg, false)
        .par_iter()
        .map(|(n, w)| {
            let columns = window_columns(alg, w, -nmax, cfg.columns as i32);
            let mut stability = Stability::Exact;
            let mut d = |sel| -> Result<usize> {
                let (dim, s) = dim_of(&towers, &ell, ell.derham(), sel, *n, w, columns)?;
                stability = stability.worst(s);
                Ok(dim)
            };
            let hh = if *n >= 0 { d(TheorySelector::Hh)? } else { 0 };
            let hc = if *n >= 0 { d(TheorySelector::Hc)? } else { 0 };
            let row = TableRow {
                n: *n,
                degree: alg.weight_degree(w),
                weight: w.clone(),
                hh,
                hc,
                hcminus: d(TheorySelector::Hcminus)?,
                hcper: d(TheorySelector::Hcper)?,
                ell: d(TheorySelector::Ell)?,
                ellplus: d(TheorySelector::Ellplus)?,
                ellper: d(TheorySelector::Ellper)?,
                omega: 0,
                derham: d(TheorySelector::Derham)?,
                stability,
            };
            let omega = if *n >= 0 {
                ell.derham().omega_basis(*n as usize, w)?.dim()
            } else {
                0
            };
            Ok(TableRow { omega, ..row })
        })
        .collect()
}

fn spectral(alg: &Algebra, cfg: &RunConfig) -> Result<Vec<PageEntry>> {
    let towers = Towers::new(alg);
    let bounds = match cfg.theory.homology() {
        Some(t) => t.bounds(),
        None => return Err(crate::error::input("the spectral command needs one of hh, hc, hcminus, hcper")),
    };
    let nmax = cfg.max_homological as i64;
    let s_lo = bounds.lo.map_or(-nmax, |l| (l as i64).max(-nmax));
    let s_hi = bounds.hi.map_or(nmax, |h| (h as i64).min(nmax));
    let mut jobs = Vec::new();
    for s in s_lo..=s_hi {
        for m in 0..=nmax {
            for w in weights_upto(alg, cfg.max_internal) {
                jobs.push((s, s + m, w));
            }
        }
    }
    jobs.par_iter()
        .map(|(s, t, w)| match cfg.page {
            1 => towers.e1_page(bounds, *s, *t, w),
            _ => towers.e2_page(bounds, *s, *t, w),
        })
        .collect()
}

fn verify(alg: &Algebra, cfg: &RunConfig) -> Result<ApproxReport> {
    let theory = cfg
        .theory
        .homology()
        .ok_or_else(|| crate::error::input("verify-approx needs one of hc, hcminus, hcper"))?;
    let opts = ApproxOptions {
        max_internal: cfg.max_internal,
        max_homological: cfg.max_homological as i64,
        columns: cfg.columns as i32,
        seed: cfg.seed,
        samples: cfg.samples,
    };
    verify_approximation(alg, theory, &opts)
}

fn format_table(alg: &Algebra, cfg: &RunConfig, body: &Body) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# {} {:?} {:?}", alg.name(), cfg.command, cfg.theory);
    match body {
        Body::Dims(rows) => {
            let _ = writeln!(s, "{:>4} {:>4} {:>12} {:>6} stability", "n", "d", "weight", "dim");
            for r in rows {
                let _ = writeln!(s, "{:>4} {:>4} {:>12} {:>6} {}", r.n, r.degree, r.weight.to_string(), r.dim, r.stability.label());
            }
        }
        Body::Table(rows) => {
            let _ = writeln!(
                s,
                "{:>4} {:>4} {:>12} {:>5} {:>5} {:>5} {:>5} {:>5} {:>5} {:>5} {:>5} {:>5} stability",
                "n", "d", "weight", "hh", "hc", "hc-", "hcper", "ell", "ell+", "ellp", "omega", "h_dr"
            );
            for r in rows {
                let _ = writeln!(
                    s,
                    "{:>4} {:>4} {:>12} {:>5} {:>5} {:>5} {:>5} {:>5} {:>5} {:>5} {:>5} {:>5} {}",
                    r.n,
                    r.degree,
                    r.weight.to_string(),
                    r.hh,
                    r.hc,
                    r.hcminus,
                    r.hcper,
                    r.ell,
                    r.ellplus,
                    r.ellper,
                    r.omega,
                    r.derham,
                    r.stability.label()
                );
            }
        }
        Body::Pages(rows) => {
            let _ = writeln!(s, "{:>4} {:>4} {:>4} {:>12} {:>6}", "page", "s", "t", "weight", "dim");
            for r in rows.iter().filter(|r| r.dim > 0) {
                let _ = writeln!(s, "{:>4} {:>4} {:>4} {:>12} {:>6}", r.page, r.s, r.t, r.weight.to_string(), r.dim);
            }
        }
        Body::Approx(r) => {
            let _ = writeln!(s, "{:>4} {:>4} {:>12} {:>6} {:>6} {:>6} verdict stability", "n", "d", "weight", "source", "target", "rank");
            for x in &r.records {
                let _ = writeln!(
                    s,
                    "{:>4} {:>4} {:>12} {:>6} {:>6} {:>6} {} {}",
                    x.n,
                    x.degree,
                    x.weight.to_string(),
                    x.source_dim,
                    x.target_dim,
                    x.rank,
                    if x.verdict == crate::approx::Verdict::Iso { "iso" } else { "non-iso" },
                    x.stability.label()
                );
            }
            let _ = writeln!(s, "iso everywhere: {}", r.is_iso_everywhere());
            let _ = writeln!(s, "well defined: {}", r.well_defined());
            let _ = writeln!(s, "squares commute: {}", r.squares_vanish());
            let _ = writeln!(s, "spot checks pass: {}", r.spot_checks_pass());
            let _ = writeln!(s, "excluded bidegrees: {}", r.excluded.len());
        }
    }
    s
}

/// Runs one configuration against an already loaded algebra and renders the
/// output.
pub fn run_on(alg: &Algebra, cfg: &RunConfig) -> Result<String> {
    let body = match cfg.command {
        Command::Compute => Body::Dims(compute(alg, cfg)?),
        Command::Tables => Body::Table(tables(alg, cfg)?),
        Command::Spectral => Body::Pages(spectral(alg, cfg)?),
        Command::VerifyApprox => Body::Approx(Box::new(verify(alg, cfg)?)),
    };
    Ok(match cfg.format {
        OutputFormat::Table => format_table(alg, cfg, &body),
        OutputFormat::Json => {
            let out = Output {
                schema: SCHEMA,
                algebra: alg.name(),
                config: cfg,
                result: body,
            };
            let mut s = serde_json::to_string_pretty(&out).map_err(|e| crate::error::internal(e.to_string()))?;
            s.push('\n');
            s
        }
    })
}

/// Loads the presentation named in the configuration and runs it.
pub fn run(cfg: &RunConfig) -> Result<String> {
    let alg = load_algebra(&cfg.input)?;
    run_on(&alg, cfg)
}

/// Bounds the worker pool from `CYCLO2_THREADS` when set.
pub fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("CYCLO2_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| crate::error::input(format!("CYCLO2_THREADS must be a positive integer, got `{v}`")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| crate::error::internal(e.to_string()))?;
    }
    Ok(())
}
