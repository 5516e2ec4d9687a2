use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use cutproject::bdequiv::{
    bd_match, brs_test, decide_interval, decide_parallelogram, decide_union, decide_union_shift, discrepancy,
    BdDecision, TorusWindow,
};
use cutproject::config::{SchemeConfig, WindowConfig};
use cutproject::equidecomp::{greedy_decompose_1d, propose_shifts_1d, shear_decompose_2d, verify_1d, verify_2d};
use cutproject::exactnum::{parse_expr, parse_interval, Context};
use cutproject::hadwiger::{face_flags_1d, face_flags_2d, hadwiger_1d, hadwiger_2d};
use cutproject::modelset::{self, ModelSetSample};
use cutproject::scheme::{ExactBox, Scheme};
use cutproject::window::{IntervalUnion, Parallelogram, Window};
use cutproject::{ExactNumber, GeneratorContext};

mod demo;

const MAX_N: usize = 10_000_000;
const MAX_RANGE: f64 = 1e6;

#[derive(Parser)]
#[command(name = "cutproject", version, about = "Exact cut-and-project model sets and bounded distance tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SchemeArg {
    /// Scheme config (JSON file).
    #[arg(long)]
    scheme: PathBuf,
}

#[derive(Args, Clone, Default)]
struct WindowArg {
    /// Window config: a JSON file or inline JSON.
    #[arg(long)]
    window: Option<String>,
    /// Half-open interval "[a,b)"; repeat for a union.
    #[arg(long = "interval", allow_hyphen_values = true)]
    intervals: Vec<String>,
}

#[derive(Args, Clone)]
struct OutArg {
    /// Directory for output files.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Model set points in a physical range, as CSV.
    Generate {
        #[command(flatten)]
        scheme: SchemeArg,
        #[command(flatten)]
        window: WindowArg,
        /// Physical range "lo:hi", one per physical coordinate.
        #[arg(long = "range", allow_hyphen_values = true)]
        ranges: Vec<String>,
        /// Hecke blocks "n_lo:n_hi" instead of a physical range.
        #[arg(long, allow_hyphen_values = true)]
        n_range: Option<String>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Empirical against theoretical density.
    Density {
        #[command(flatten)]
        scheme: SchemeArg,
        #[command(flatten)]
        window: WindowArg,
        #[arg(long = "range", allow_hyphen_values = true)]
        ranges: Vec<String>,
    },
    /// Block sizes of a Hecke sample.
    Blocks {
        #[command(flatten)]
        scheme: SchemeArg,
        #[command(flatten)]
        window: WindowArg,
        #[arg(long, allow_hyphen_values = true)]
        n_range: String,
    },
    /// Discrepancy trace of an irrational rotation.
    Discrepancy {
        #[command(flatten)]
        rotation: RotationArg,
        #[arg(long = "x", allow_hyphen_values = true)]
        start: Vec<String>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Bounded remainder evidence from discrepancy growth.
    BrsTest {
        #[command(flatten)]
        rotation: RotationArg,
        /// Start points; defaults to k/7 for k = 0..6.
        #[arg(long = "x-sample", allow_hyphen_values = true)]
        samples: Vec<String>,
    },
    /// Block enumeration against the reference lattice.
    BdMatch {
        #[command(flatten)]
        scheme: SchemeArg,
        #[command(flatten)]
        window: WindowArg,
        #[arg(long, allow_hyphen_values = true)]
        n_range: String,
    },
    /// Bounded distance decision with certificate.
    DecideBd {
        #[command(flatten)]
        scheme: SchemeArg,
        #[command(flatten)]
        window: WindowArg,
        /// Compare the window with its translate by this shift.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
    },
    /// Face-aligned invariants of a window.
    Hadwiger {
        #[command(flatten)]
        scheme: SchemeArg,
        #[command(flatten)]
        window: WindowArg,
    },
    /// Equidecomposition of a window onto a target, with verification.
    Equidecompose {
        #[command(flatten)]
        scheme: SchemeArg,
        #[command(flatten)]
        window: WindowArg,
        /// Target window (JSON file or inline JSON).
        #[arg(long)]
        target: Option<String>,
        /// Target is the window translated by this shift.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
        /// Candidate shifts in order; proposed from endpoints when absent.
        #[arg(long = "try-shift", allow_hyphen_values = true)]
        shifts: Vec<String>,
        /// Shear parameter for a parallelogram window.
        #[arg(long, allow_hyphen_values = true)]
        shear: Option<String>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Every artifact of the half-Fibonacci example in one report.
    DemoHalffib {
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args, Clone)]
struct RotationArg {
    /// Scheme config whose generators give the number context (golden by default).
    #[arg(long)]
    scheme: Option<PathBuf>,
    #[command(flatten)]
    window: WindowArg,
    /// Window factor per torus coordinate, for products.
    #[arg(long = "factor", allow_hyphen_values = true)]
    factors: Vec<String>,
    /// Rotation vector, one expression per coordinate.
    #[arg(long = "alpha", allow_hyphen_values = true, required = true)]
    alpha: Vec<String>,
    #[arg(long)]
    n: usize,
}

enum Outcome {
    Done,
    Unknown,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Unknown) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load_scheme(path: &Path) -> Result<Scheme> {
    let cfg = SchemeConfig::load(path).with_context(|| format!("reading scheme {}", path.display()))?;
    Ok(cfg.build()?)
}

fn window_config(spec: &str) -> Result<WindowConfig> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        fs::read_to_string(spec).with_context(|| format!("reading window {spec}"))?
    };
    Ok(WindowConfig::from_json(&text)?)
}

fn interval_union(ctx: &Context, specs: &[String]) -> Result<IntervalUnion> {
    let ivs = specs
        .iter()
        .map(|s| parse_interval(ctx, s))
        .collect::<cutproject::Result<Vec<_>>>()?;
    Ok(IntervalUnion::new(ctx, ivs)?)
}

impl WindowArg {
    fn config(&self) -> Result<Option<WindowConfig>> {
        self.window.as_deref().map(window_config).transpose()
    }

    fn build(&self, ctx: &Context) -> Result<Window> {
        match (&self.window, self.intervals.is_empty()) {
            (Some(w), true) => Ok(window_config(w)?.build(ctx)?),
            (None, false) => Ok(Window::Intervals(interval_union(ctx, &self.intervals)?)),
            _ => bail!("give either --window or --interval"),
        }
    }

    fn union(&self, ctx: &Context) -> Result<IntervalUnion> {
        match self.build(ctx)? {
            Window::Intervals(u) => Ok(u),
            Window::Polygon(_) => bail!("this command needs an interval window"),
        }
    }
}

fn expr(ctx: &Context, s: &str) -> Result<ExactNumber> {
    parse_expr(ctx, s).with_context(|| format!("parsing {s:?}"))
}

fn split_range(s: &str) -> Result<(&str, &str)> {
    s.split_once(':').ok_or_else(|| anyhow!("range {s:?} is not lo:hi"))
}

fn physical_box(ctx: &Context, m: usize, ranges: &[String]) -> Result<ExactBox> {
    if ranges.len() != m {
        bail!("need {m} --range values, got {}", ranges.len());
    }
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for r in ranges {
        let (a, b) = split_range(r)?;
        let (a, b) = (expr(ctx, a)?, expr(ctx, b)?);
        if (b.to_f64() - a.to_f64()).abs() > MAX_RANGE {
            bail!("range {r} is wider than {MAX_RANGE}");
        }
        lo.push(a);
        hi.push(b);
    }
    Ok(ExactBox::new(lo, hi)?)
}

fn n_range(s: &str) -> Result<(i64, i64)> {
    let (a, b) = split_range(s)?;
    let (a, b): (i64, i64) = (a.trim().parse()?, b.trim().parse()?);
    if a > b || (b - a) as f64 > MAX_RANGE {
        bail!("bad block range {s}");
    }
    Ok((a, b))
}

fn emit<T: Serialize>(value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    let mut out = std::io::stdout().lock();
    writeln!(out, "{text}")?;
    Ok(())
}

fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), bytes).with_context(|| format!("writing {name}"))?;
    Ok(())
}

fn sample(scheme: &Scheme, window: &Window, ranges: &[String], blocks: Option<&str>) -> Result<ModelSetSample> {
    let ctx = scheme.context();
    Ok(match blocks {
        Some(r) => {
            let (a, b) = n_range(r)?;
            modelset::generate_blocks(scheme, window, a, b)?
        }
        None => modelset::generate(scheme, window, &physical_box(ctx, scheme.m(), ranges)?)?,
    })
}

fn rotation_context(path: &Option<PathBuf>) -> Result<Context> {
    match path {
        Some(p) => Ok(SchemeConfig::load(p)?.context()?),
        None => Ok(GeneratorContext::golden()),
    }
}

fn torus_window(ctx: &Context, r: &RotationArg) -> Result<TorusWindow> {
    let factors = if r.factors.is_empty() {
        vec![r.window.union(ctx)?]
    } else {
        r.factors
            .iter()
            .map(|f| {
                if f.trim_start().starts_with('[') {
                    interval_union(ctx, std::slice::from_ref(f))
                } else {
                    Ok(window_config(f)?.intervals(ctx)?)
                }
            })
            .collect::<Result<Vec<_>>>()?
    };
    Ok(TorusWindow::new(&factors)?)
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_N {
        bail!("N = {n} exceeds {MAX_N}");
    }
    Ok(())
}

fn decision(d: &BdDecision) -> Result<Outcome> {
    emit(d)?;
    Ok(if d.is_unknown() { Outcome::Unknown } else { Outcome::Done })
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Generate {
            scheme,
            window,
            ranges,
            n_range,
            out,
        } => {
            let s = load_scheme(&scheme.scheme)?;
            let w = window.build(s.context())?;
            let smp = sample(&s, &w, &ranges, n_range.as_deref())?;
            let mut csv = Vec::new();
            modelset::write_csv(&smp, &mut csv)?;
            match out.out {
                Some(dir) => {
                    let man = modelset::manifest(&smp);
                    write_file(&dir, "sample.csv", &csv)?;
                    write_file(&dir, "manifest.json", serde_json::to_string_pretty(&man)?.as_bytes())?;
                    emit(&man)?;
                }
                None => std::io::stdout().lock().write_all(&csv)?,
            }
        }
        Command::Density { scheme, window, ranges } => {
            let s = load_scheme(&scheme.scheme)?;
            let w = window.build(s.context())?;
            let smp = sample(&s, &w, &ranges, None)?;
            emit(&modelset::density_estimate(&smp)?)?;
        }
        Command::Blocks {
            scheme,
            window,
            n_range,
        } => {
            let s = load_scheme(&scheme.scheme)?;
            let w = window.build(s.context())?;
            let smp = sample(&s, &w, &[], Some(&n_range))?;
            let bd = modelset::blocks(&smp)?;
            let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
            for b in &bd.blocks {
                *sizes.entry(b.members.len()).or_default() += 1;
            }
            emit(&json!({
                "blocks": bd.blocks.len(),
                "nonempty": bd.nonempty(),
                "max_size": bd.max_size,
                "points": smp.len(),
                "size_histogram": sizes,
            }))?;
        }
        Command::Discrepancy { rotation, start, out } => {
            check_n(rotation.n)?;
            let ctx = rotation_context(&rotation.scheme)?;
            let s = torus_window(&ctx, &rotation)?;
            let alpha = rotation.alpha.iter().map(|a| expr(&ctx, a)).collect::<Result<Vec<_>>>()?;
            let x = if start.is_empty() {
                vec![ExactNumber::zero(&ctx); alpha.len()]
            } else {
                start.iter().map(|a| expr(&ctx, a)).collect::<Result<Vec<_>>>()?
            };
            let tr = discrepancy(&s, &alpha, &x, rotation.n)?;
            if let Some(dir) = out.out {
                let mut text = String::from("n,D_n,D_n_float\n");
                for n in 1..=tr.len() {
                    text.push_str(&format!("{n},{},{:.17}\n", tr.value(n), tr.value_f64(n)));
                }
                write_file(&dir, "trace.csv", text.as_bytes())?;
            }
            let (at, max) = tr.max_abs(tr.len());
            emit(&json!({
                "n": tr.len(),
                "measure": s.measure().to_string(),
                "max_abs": max,
                "max_at": at,
                "max_value": tr.value(at).to_string(),
                "final": tr.value(tr.len()).to_string(),
            }))?;
        }
        Command::BrsTest { rotation, samples } => {
            check_n(rotation.n)?;
            let ctx = rotation_context(&rotation.scheme)?;
            let s = torus_window(&ctx, &rotation)?;
            let alpha = rotation.alpha.iter().map(|a| expr(&ctx, a)).collect::<Result<Vec<_>>>()?;
            let xs: Vec<Vec<ExactNumber>> = if samples.is_empty() {
                (0..7)
                    .map(|k| vec![ExactNumber::ratio(&ctx, k, 7); alpha.len()])
                    .collect()
            } else {
                samples
                    .iter()
                    .map(|x| x.split(',').map(|c| expr(&ctx, c)).collect())
                    .collect::<Result<_>>()?
            };
            emit(&brs_test(&s, &alpha, rotation.n, &xs)?)?;
        }
        Command::BdMatch {
            scheme,
            window,
            n_range,
        } => {
            let s = load_scheme(&scheme.scheme)?;
            let w = window.build(s.context())?;
            let smp = sample(&s, &w, &[], Some(&n_range))?;
            emit(&bd_match(&smp)?)?;
        }
        Command::DecideBd { scheme, window, shift } => {
            let s = load_scheme(&scheme.scheme)?;
            let ctx = s.context().clone();
            let shift = shift.map(|t| expr(&ctx, &t)).transpose()?;
            if let Some(cfg) = window.config()? {
                if cfg.parallelogram.is_some() {
                    if shift.is_some() {
                        bail!("--shift is not used for parallelogram windows");
                    }
                    return decision(&decide_parallelogram(&s, &cfg.parallelogram(&ctx)?)?);
                }
            }
            let u = window.union(&ctx)?;
            let d = match (&shift, u.len()) {
                (Some(t), 1) => {
                    let (a, b) = &u.intervals()[0];
                    decide_interval(&s, a, b, t)?
                }
                (Some(t), _) => decide_union_shift(&s, &u, t)?,
                (None, _) => decide_union(&s, &u)?,
            };
            return decision(&d);
        }
        Command::Hadwiger { scheme, window } => {
            let s = load_scheme(&scheme.scheme)?;
            let g = s.p2_group();
            let rows: Vec<serde_json::Value> = match window.build(s.context())? {
                Window::Intervals(u) => face_flags_1d(&[&u])?
                    .iter()
                    .map(|f| {
                        let v = hadwiger_1d(&u, f, g)?;
                        Ok(json!({
                            "flag": {"point": f.point.to_string(), "positive_right": f.positive_right},
                            "value": v.value.to_string(),
                            "value_float": v.value.to_f64(),
                            "contributions": v.contributions,
                        }))
                    })
                    .collect::<cutproject::Result<_>>()?,
                Window::Polygon(p) => face_flags_2d(&[&p])?
                    .iter()
                    .map(|f| {
                        let v = hadwiger_2d(&p, f, g)?;
                        Ok(json!({
                            "flag": f.to_string(),
                            "rank": f.rank(),
                            "value": v.value.to_string(),
                            "value_float": v.value.to_f64(),
                            "contributions": v.contributions,
                        }))
                    })
                    .collect::<cutproject::Result<_>>()?,
            };
            emit(&json!({ "invariants": rows }))?;
        }
        Command::Equidecompose {
            scheme,
            window,
            target,
            shift,
            shifts,
            shear,
            out,
        } => {
            let s = load_scheme(&scheme.scheme)?;
            let ctx = s.context().clone();
            let g = s.p2_group();
            let (pieces, report) = if let Some(sh) = shear {
                let cfg = window.config()?.ok_or_else(|| anyhow!("--shear needs a parallelogram --window"))?;
                let p = cfg.parallelogram(&ctx)?;
                let sv = expr(&ctx, &sh)?;
                let pl = shear_decompose_2d(&p, &sv, g)?;
                let v2 = cutproject::vector::add(&p.v2, &cutproject::vector::scale_by(&p.v1, &sv)?)?;
                let q = Parallelogram::new(p.anchor.clone(), p.v1.clone(), v2)?;
                let report = verify_2d(&pl, &p.to_polygon()?, &q.to_polygon()?, g)?;
                (pl, report)
            } else {
                let w = window.union(&ctx)?;
                let w2 = match (&target, &shift) {
                    (Some(t), None) => window_config(t)?.intervals(&ctx)?,
                    (None, Some(t)) => w.translate(&expr(&ctx, t)?),
                    _ => bail!("give exactly one of --target or --shift"),
                };
                let candidates = if shifts.is_empty() {
                    propose_shifts_1d(&w, &w2, g)?
                } else {
                    shifts.iter().map(|t| expr(&ctx, t)).collect::<Result<_>>()?
                };
                let pl = greedy_decompose_1d(&w, &w2, &candidates, g)?;
                let report = verify_1d(&pl, &w, &w2, g)?;
                (pl, report)
            };
            let doc = json!({ "decomposition": pieces.to_json(), "verify": report });
            if let Some(dir) = out.out {
                write_file(&dir, "decomposition.json", serde_json::to_string_pretty(&doc)?.as_bytes())?;
            }
            emit(&doc)?;
            if !report.all_pass() {
                bail!("verification failed");
            }
        }
        Command::DemoHalffib { out } => {
            let report = demo::halffib_report()?;
            if let Some(dir) = out.out {
                write_file(&dir, "halffib_report.json", serde_json::to_string_pretty(&report)?.as_bytes())?;
            }
            emit(&report)?;
        }
    }
    Ok(Outcome::Done)
}
