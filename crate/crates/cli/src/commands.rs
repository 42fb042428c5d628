use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use rupert_core::catalog;
use rupert_core::geometry::ProjectionAngles;
use rupert_core::nieuwland::{improve, mu_of, ImproveConfig, DEFAULT_MU_ITERS};
use rupert_core::render::{render_solution, RenderSpec};
use rupert_core::rupertness::{estimate_rupertness_with, RupertnessRow};
use rupert_core::semialgebraic::{
    discover_silhouettes, emit_system, emit_system_algebraic, emit_system_integer, integerize, silhouette_of_strict,
    Silhouette,
};
use rupert_core::solver::{solve, solve_naive, verify, SearchConfig, SolutionSeptuple};
use rupert_core::{Polyhedron, SolutionRecord};

use crate::{Command, Failure, Format, OutArg, SolidArg};

/// Table μ values are given to six decimals.
const GOLDEN_MU_TOL: f64 = 5e-5;

pub fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Catalog { json } => cmd_catalog(json),
        Command::Solve {
            solid,
            seed,
            batch,
            max_batches,
            naive,
            samples,
            time_budget,
            out,
        } => {
            let mut cfg = SearchConfig {
                seed,
                batch_size: batch,
                max_batches,
                time_budget: time_budget.map(seconds).transpose()?,
                ..SearchConfig::default()
            };
            if let Some(s) = samples {
                cfg.rotation_samples = s;
                cfg.rotation_translation_samples = s;
            }
            cmd_solve(&solid, &cfg, naive, &out)
        }
        Command::Verify {
            solid,
            solution,
            all_goldens,
            goldens_dir,
            recenter,
        } => {
            if all_goldens {
                cmd_verify_goldens(&goldens_dir)
            } else {
                let path = solution.ok_or_else(|| Failure::usage("--solution is required"))?;
                cmd_verify(solid.as_deref(), &path, recenter)
            }
        }
        Command::Nieuwland {
            solid,
            solution,
            iters,
            recenter,
        } => cmd_nieuwland(solid.as_deref(), &solution, iters, recenter),
        Command::Improve {
            solid,
            solution,
            seed,
            starts,
            time_budget,
            rounds,
            target_mu,
            out,
        } => {
            let cfg = ImproveConfig {
                seed,
                rounds,
                time_budget: Some(seconds(time_budget)?),
                target_mu,
                ..ImproveConfig::default()
            };
            cmd_improve(&solid, solution.as_deref(), starts, &cfg, &out)
        }
        Command::Rupertness {
            solid,
            trials,
            alpha,
            seed,
            samples,
            format,
            out,
        } => cmd_rupertness(&solid, trials, alpha, seed, samples, format, &out),
        Command::EmitSystem {
            solid,
            silhouette,
            angles,
            integerize,
            algebraic,
            out,
        } => cmd_emit(solid.as_deref(), silhouette, angles, integerize, algebraic.as_deref(), &out),
        Command::DiscoverSilhouettes { solid, samples, seed } => cmd_discover(&solid, samples, seed),
        Command::Render {
            solid,
            solution,
            width,
            height,
            recenter,
            out,
        } => {
            let spec = RenderSpec {
                width_px: width,
                height_px: height,
                ..RenderSpec::default()
            };
            cmd_render(solid.as_deref(), &solution, recenter, &spec, &out)
        }
    }
}

fn seconds(s: f64) -> Result<Duration, Failure> {
    Duration::try_from_secs_f64(s).map_err(|_| Failure::usage(format!("bad time budget {s}")))
}

fn emit(out: &OutArg, text: &str) -> Result<(), Failure> {
    match &out.out {
        Some(path) => fs::write(path, text)?,
        None => match io::stdout().write_all(text.as_bytes()) {
            // A closed pipe (`| head`) is the reader's choice, not an error.
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
            other => other?,
        },
    }
    Ok(())
}

fn load_solid(solid: &SolidArg) -> Result<Polyhedron, Failure> {
    if solid.solid == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        return Ok(catalog::parse(&text, solid.recenter)?);
    }
    Ok(catalog::resolve(&solid.solid, solid.recenter)?)
}

/// Path to the polyhedron file if `solid` is not a catalog name.
fn file_reference(solid: &str) -> Option<String> {
    (solid != "-" && catalog::entry(solid).is_err()).then(|| solid.to_string())
}

/// The solid a record refers to: the explicit override, else the record's
/// polyhedron file (relative to the record), else its catalog name.
fn solid_for_record(
    explicit: Option<&str>,
    record: &SolutionRecord,
    record_path: &Path,
    recenter: bool,
) -> Result<Polyhedron, Failure> {
    if let Some(name) = explicit {
        return Ok(catalog::resolve(name, recenter)?);
    }
    if let Some(file) = &record.polyhedron_file {
        let beside = record_path.parent().unwrap_or(Path::new(".")).join(file);
        let path = if beside.is_file() { beside } else { PathBuf::from(file) };
        return Ok(catalog::load(path, recenter)?);
    }
    Ok(catalog::resolve(&record.solid, recenter)?)
}

fn timestamp() -> String {
    // Honour SOURCE_DATE_EPOCH so that seeded runs can be byte-identical.
    let at = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.parse::<i64>().ok())
        .and_then(|secs| chrono::DateTime::from_timestamp(secs, 0))
        .unwrap_or_else(chrono::Utc::now);
    at.to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

fn make_record(p: &Polyhedron, solid: &str, v: &SolutionSeptuple, seed: Option<u64>) -> SolutionRecord {
    let mu = mu_of(p, v, DEFAULT_MU_ITERS).map(|r| r.mu).unwrap_or(0.0);
    let mut record = SolutionRecord::new(p.name(), v, mu, verify(p, v));
    record.polyhedron_file = file_reference(solid);
    record.seed = seed;
    record.timestamp = Some(timestamp());
    record.tool_version = Some(env!("CARGO_PKG_VERSION").to_string());
    record
}

#[derive(Serialize)]
struct CatalogLine {
    name: &'static str,
    family: catalog::Family,
    vertices: usize,
    point_symmetric: bool,
    construction: &'static str,
}

fn cmd_catalog(json: bool) -> Result<(), Failure> {
    let lines: Vec<CatalogLine> = catalog::list()
        .iter()
        .map(|e| CatalogLine {
            name: e.name,
            family: e.family,
            vertices: e.vertices().len(),
            point_symmetric: e.point_symmetric,
            construction: e.construction,
        })
        .collect();
    let text = if json {
        serde_json::to_string_pretty(&lines).expect("plain data serializes") + "\n"
    } else {
        lines
            .iter()
            .map(|l| {
                format!(
                    "{:<30} {:<12} {:>4}  {}\n",
                    l.name,
                    format!("{:?}", l.family),
                    l.vertices,
                    if l.point_symmetric { "symmetric" } else { "-" }
                )
            })
            .collect()
    };
    emit(&OutArg { out: None }, &text)
}

fn cmd_solve(solid: &SolidArg, cfg: &SearchConfig, naive: bool, out: &OutArg) -> Result<(), Failure> {
    let p = load_solid(solid)?;
    let v = if naive { solve_naive(&p, cfg)? } else { solve(&p, cfg)? };
    let record = make_record(&p, &solid.solid, &v, Some(cfg.seed));
    emit(out, &(record.to_json() + "\n"))
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    solid: &'a str,
    margin: f64,
    valid: bool,
}

fn cmd_verify(solid: Option<&str>, path: &Path, recenter: bool) -> Result<(), Failure> {
    let record = SolutionRecord::load(path)?;
    let p = solid_for_record(solid, &record, path, recenter)?;
    let margin = verify(&p, &record.septuple());
    let report = VerifyReport {
        solid: p.name(),
        margin,
        valid: margin > 0.0,
    };
    println!("{}", serde_json::to_string(&report).expect("plain data serializes"));
    if report.valid {
        Ok(())
    } else {
        Err(Failure::negative(format!("not a solution: margin {margin:e}")))
    }
}

fn cmd_verify_goldens(dir: &Path) -> Result<(), Failure> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Failure::usage(format!("no solution files in {}", dir.display())));
    }
    let mut failed = 0;
    for path in &files {
        let record = SolutionRecord::load(path)?;
        let p = solid_for_record(None, &record, path, false)?;
        let v = record.septuple();
        let margin = verify(&p, &v);
        let mu = mu_of(&p, &v, DEFAULT_MU_ITERS).map(|r| r.mu).unwrap_or(f64::NAN);
        let ok = margin > 0.0 && (mu - record.mu).abs() <= GOLDEN_MU_TOL;
        if !ok {
            failed += 1;
        }
        println!(
            "{}  {:<30} margin={:+.3e}  mu={:.6}  expected={:.6}",
            if ok { "PASS" } else { "FAIL" },
            record.solid,
            margin,
            mu,
            record.mu
        );
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::negative(format!("{failed} of {} solutions failed", files.len())))
    }
}

#[derive(Serialize)]
struct NieuwlandReport<'a> {
    solid: &'a str,
    mu: f64,
    iterations: usize,
    margin_at_mu: f64,
}

fn cmd_nieuwland(solid: Option<&str>, path: &Path, iters: usize, recenter: bool) -> Result<(), Failure> {
    let record = SolutionRecord::load(path)?;
    let p = solid_for_record(solid, &record, path, recenter)?;
    let res = mu_of(&p, &record.septuple(), iters)?;
    let report = NieuwlandReport {
        solid: p.name(),
        mu: res.mu,
        iterations: res.iterations,
        margin_at_mu: res.margin_at_mu_minus,
    };
    println!("{}", serde_json::to_string(&report).expect("plain data serializes"));
    Ok(())
}

fn cmd_improve(
    solid: &SolidArg,
    solution: Option<&Path>,
    starts: usize,
    cfg: &ImproveConfig,
    out: &OutArg,
) -> Result<(), Failure> {
    if starts == 0 {
        return Err(Failure::usage("--starts must be at least 1"));
    }
    let p = load_solid(solid)?;
    let initial = solution.map(SolutionRecord::load).transpose()?.map(|r| r.septuple());
    let results: Vec<(SolutionSeptuple, f64)> = (0..starts as u64)
        .into_par_iter()
        .filter_map(|i| {
            let seed = cfg.seed.wrapping_add(i);
            let start = match initial {
                Some(v) => v,
                None => solve(
                    &p,
                    &SearchConfig {
                        seed,
                        time_budget: cfg.time_budget,
                        ..SearchConfig::default()
                    },
                )
                .ok()?,
            };
            let best = improve(&p, &start, &ImproveConfig { seed, ..cfg.clone() }).ok()?;
            let mu = mu_of(&p, &best, DEFAULT_MU_ITERS).ok()?.mu;
            Some((best, mu))
        })
        .collect();
    // Strictly greater keeps the lowest-numbered start on ties.
    let best = results
        .iter()
        .fold(None::<&(SolutionSeptuple, f64)>, |acc, r| match acc {
            Some(a) if a.1 >= r.1 => Some(a),
            _ => Some(r),
        })
        .ok_or(rupert_core::Error::NotFound)?;
    let record = make_record(&p, &solid.solid, &best.0, Some(cfg.seed));
    emit(out, &(record.to_json() + "\n"))
}

fn cmd_rupertness(
    solid: &SolidArg,
    n: u64,
    alpha: f64,
    seed: u64,
    samples: usize,
    format: Format,
    out: &OutArg,
) -> Result<(), Failure> {
    let p = load_solid(solid)?;
    let est = estimate_rupertness_with(&p, n, alpha, seed, samples)?;
    let row = RupertnessRow::new(p.name(), &est, alpha, seed, samples);
    let text = match format {
        Format::Csv => format!("{}\n{}\n", RupertnessRow::CSV_HEADER, row.to_csv()),
        Format::Json => serde_json::to_string_pretty(&row).expect("plain data serializes") + "\n",
    };
    emit(out, &text)
}

#[derive(Deserialize)]
struct AlgebraicInput {
    vertices: Vec<[String; 3]>,
    #[serde(default)]
    variables: Vec<String>,
    #[serde(default)]
    min_polys: Vec<String>,
}

fn parse_angles(text: &str) -> Result<ProjectionAngles, Failure> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::usage(format!("--angles expects 'theta,phi', got '{text}'")))?;
    match parts[..] {
        [theta, phi] => Ok(ProjectionAngles::new(theta, phi)),
        _ => Err(Failure::usage(format!("--angles expects 'theta,phi', got '{text}'"))),
    }
}

fn cmd_emit(
    solid: Option<&str>,
    silhouette: Option<String>,
    angles: Option<String>,
    max_den: Option<u64>,
    algebraic: Option<&Path>,
    out: &OutArg,
) -> Result<(), Failure> {
    let system = if let Some(path) = algebraic {
        let input: AlgebraicInput = serde_json::from_str(&fs::read_to_string(path)?)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        let s = match (&silhouette, &angles) {
            (Some(text), _) => Silhouette::parse_one_based(text)?,
            _ => return Err(Failure::usage("symbolic coordinates need an explicit --silhouette")),
        };
        emit_system_algebraic(&input.vertices, &input.variables, &input.min_polys, &s)?
    } else {
        let solid = solid.ok_or_else(|| Failure::usage("a solid, '-' or --algebraic is required"))?;
        let p = load_solid(&SolidArg {
            solid: solid.to_string(),
            recenter: false,
        })?;
        let s = match (silhouette, angles) {
            (Some(text), _) => Silhouette::parse_one_based(&text)?,
            (None, Some(text)) => silhouette_of_strict(&p, parse_angles(&text)?)?,
            (None, None) => return Err(Failure::usage("one of --silhouette or --angles is required")),
        };
        match max_den {
            Some(d) => emit_system_integer(&integerize(p.vertices(), d)?.0, &s)?,
            None => emit_system(&p, &s)?,
        }
    };
    emit(out, &system.to_polysys())
}

#[derive(Serialize)]
struct SilhouetteCount {
    silhouette: String,
    count: u64,
}

fn cmd_discover(solid: &SolidArg, samples: u64, seed: u64) -> Result<(), Failure> {
    let p = load_solid(solid)?;
    let mut counts: Vec<SilhouetteCount> = discover_silhouettes(&p, samples, seed)
        .into_iter()
        .map(|(s, count)| SilhouetteCount {
            silhouette: s.to_string(),
            count,
        })
        .collect();
    // Stable sort keeps the canonical order among equal counts.
    counts.sort_by_key(|c| std::cmp::Reverse(c.count));
    println!("{}", serde_json::to_string_pretty(&counts).expect("plain data serializes"));
    Ok(())
}

fn cmd_render(
    solid: Option<&str>,
    path: &Path,
    recenter: bool,
    spec: &RenderSpec,
    out: &OutArg,
) -> Result<(), Failure> {
    let record = SolutionRecord::load(path)?;
    let p = solid_for_record(solid, &record, path, recenter)?;
    emit(out, &render_solution(&p, &record.septuple(), spec)?)
}
