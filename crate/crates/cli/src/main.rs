use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use toric_mirror::cech::{graded_hom, Cech};
use toric_mirror::chains::{cohomology, CohomologyResult};
use toric_mirror::hms::{dg_axioms_check, DgSuite, Models};
use toric_mirror::lattice::{
    examples, parse_fan_json, BoundaryPattern, Fan, SupportFunction, ToricModel,
};
use toric_mirror::simp::local_model_check;
use toric_mirror::trees::{
    catalan, dexterity_table, enumerate_shapes, select_turn_convention, shrub_boundary_types,
    stasheff_facets, wall_crossing_check,
};
use toric_mirror::tropical::{amoeba_skeleton_2d, export_svg, fano_diagnostic, TropicalPolynomial};

/// Overrides the directory that `amoeba` writes into.
const OUT_DIR_VAR: &str = "TORIC_MIRROR_OUT_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "toric-mirror",
    version,
    about = "Line bundles, mirror cochains and tropical amoebas of smooth toric varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weight-graded cohomology of Hom(L0, L1).
    Cohomology {
        /// Fan file (JSON) or a named fan: p1, p2, p<n>, p1xp1, f<a>, blowup.
        #[arg(long)]
        fan: String,
        /// Support function values, comma separated; give twice for L0 then L1.
        #[arg(long, num_args = 1, allow_hyphen_values = true, required = true)]
        bundle: Vec<String>,
        /// Scan the box [-N, N]^n instead of the certified chamber enumeration.
        #[arg(long, value_name = "N")]
        r#box: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Tropical skeleton of the mirror superpotential with the polytope overlaid.
    Amoeba {
        #[arg(long)]
        fan: String,
        /// Valuation override, comma separated (defaults to the fan's own).
        #[arg(long, allow_hyphen_values = true)]
        psi: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
        /// File name inside the output directory.
        #[arg(long)]
        output: Option<String>,
    },
    /// Model comparison, DG axioms and local-model suites; exits 1 on failure.
    Verify {
        /// Needed for the bundle-level suites.
        #[arg(long)]
        fan: Option<String>,
        /// Only the model comparison and DG axiom suites.
        #[arg(long)]
        hms: bool,
        /// Only the local-model suites.
        #[arg(long)]
        model: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random instances for the bundle-level suites.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Bundle coefficients are drawn from [-range, range].
        #[arg(long, default_value_t = 2)]
        range: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Ribbon tree counts, Stasheff facets and orientation checks.
    Trees {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(2..=9))]
        d: u64,
        /// Add facet lists, wall checks, dexterity and boundary strata for d.
        #[arg(long)]
        report: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn load_fan(arg: &str) -> Result<(String, Fan, SupportFunction), CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{arg}: {e}")))?;
        let (fan, psi) =
            parse_fan_json(&text).map_err(|e| CliError::Usage(format!("{arg}: {e}")))?;
        return Ok((arg.to_string(), fan, psi));
    }
    match examples::by_name(arg) {
        Some((fan, psi)) => Ok((arg.to_string(), fan, psi)),
        None => Err(CliError::Usage(format!("{arg}: no such file or named fan"))),
    }
}

fn load_model(arg: &str) -> Result<(String, ToricModel), CliError> {
    let (name, fan, psi) = load_fan(arg)?;
    let model = ToricModel::new(fan, psi).map_err(|e| CliError::Usage(format!("{name}: {e}")))?;
    Ok((name, model))
}

fn parse_values(s: &str, rays: usize) -> Result<Vec<i64>, CliError> {
    let values = s
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("bad value list '{s}': {e}")))?;
    if values.len() != rays {
        return Err(CliError::Usage(format!(
            "'{s}' has {} values but the fan has {rays} rays",
            values.len()
        )));
    }
    Ok(values)
}

fn cohomology_json(c: &CohomologyResult) -> Value {
    Value::Array(
        c.support()
            .map(|g| json!({"degree": g.degree, "rank": g.rank, "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>()}))
            .collect(),
    )
}

fn render(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("json values serialize") + "\n"
}

fn run_cohomology(
    fan: &str,
    bundles: &[String],
    boxed: Option<i64>,
    format: Format,
) -> Result<String, CliError> {
    let (name, model) = load_model(fan)?;
    if bundles.len() != 2 {
        return Err(CliError::Usage(format!(
            "expected --bundle twice, got {}",
            bundles.len()
        )));
    }
    let rays = model.num_rays();
    let l0 = SupportFunction::new(parse_values(&bundles[0], rays)?);
    let l1 = SupportFunction::new(parse_values(&bundles[1], rays)?);
    let n = model.dim();
    if boxed.is_some_and(|b| b < 0) {
        return Err(CliError::Usage("--box needs a nonnegative size".into()));
    }
    let cech = Cech::new(model);
    let pieces: BTreeMap<Vec<i64>, CohomologyResult> = match boxed {
        None => graded_hom(&cech, &l0, &l1)?.pieces,
        Some(b) => {
            let mut out = BTreeMap::new();
            let mut u = vec![-b; n];
            loop {
                let h = cohomology(&cech.cech_complex(&l0, &l1, &u)?);
                if !h.is_zero() {
                    out.insert(u.clone(), h);
                }
                let Some(k) = (0..n).find(|&k| u[k] < b) else {
                    break;
                };
                u[k] += 1;
                for x in &mut u[..k] {
                    *x = -b;
                }
            }
            out
        }
    };
    let top = n as i32;
    let totals: Vec<(i32, usize)> = (0..=top)
        .map(|k| (k, pieces.values().map(|c| c.rank(k)).sum()))
        .collect();
    let chi: i64 = pieces
        .values()
        .map(CohomologyResult::euler_characteristic)
        .sum();
    if format == Format::Json {
        let rows: Vec<Value> = pieces
            .iter()
            .map(|(u, c)| json!({"weight": u, "groups": cohomology_json(c)}))
            .collect();
        return Ok(render(&json!({
            "schema": 1,
            "command": "cohomology",
            "fan": name,
            "source": l0.values(),
            "target": l1.values(),
            "certified": boxed.is_none(),
            "pieces": rows,
            "total_rank": totals.iter().map(|(k, r)| json!({"degree": k, "rank": r})).collect::<Vec<_>>(),
            "euler_characteristic": chi,
        })));
    }
    let mut s = String::new();
    if let Some(b) = boxed {
        writeln!(
            s,
            "NOT CERTIFIED: weights restricted to the box [-{b}, {b}]^{n}"
        )
        .unwrap();
    }
    writeln!(s, "Hom({:?}, {:?}) on {name}", l0.values(), l1.values()).unwrap();
    writeln!(s, "{:<16} {:>6} {:>6}  torsion", "weight", "degree", "rank").unwrap();
    for (u, c) in &pieces {
        for g in c.support() {
            let tors: Vec<String> = g.torsion.iter().map(|t| format!("Z/{t}")).collect();
            writeln!(
                s,
                "{:<16} {:>6} {:>6}  {}",
                format!("{u:?}"),
                g.degree,
                g.rank,
                tors.join(" ")
            )
            .unwrap();
        }
    }
    let summary: Vec<String> = totals
        .iter()
        .map(|(k, r)| format!("H^{k} rank {r}"))
        .collect();
    writeln!(s, "total: {}", summary.join(", ")).unwrap();
    writeln!(s, "euler characteristic: {chi}").unwrap();
    Ok(s)
}

fn out_dir() -> PathBuf {
    std::env::var_os(OUT_DIR_VAR)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("."))
}

fn run_amoeba(
    fan_spec: &str,
    psi: Option<&str>,
    format: Format,
    output: Option<&str>,
) -> Result<String, CliError> {
    let (name, fan, default_psi) = load_fan(fan_spec)?;
    let psi = match psi {
        Some(p) => SupportFunction::new(parse_values(p, fan.num_rays())?),
        None => default_psi,
    };
    let w = TropicalPolynomial::from_fan(&fan, &psi);
    let skeleton = amoeba_skeleton_2d(&w)?;
    let report = fano_diagnostic(&fan, &psi);
    let polytope = ToricModel::new(fan.clone(), psi.clone())
        .ok()
        .map(|m| m.polytope);
    let (body, default_name) = match format {
        Format::Svg => (export_svg(&skeleton, polytope.as_ref())?, "amoeba.svg"),
        Format::Json => (
            render(&json!({
                "schema": 1,
                "command": "amoeba",
                "fan": name,
                "psi": psi.values(),
                "skeleton": skeleton,
                "fano": report,
                "verdict": report.verdict(),
            })),
            "amoeba.json",
        ),
        Format::Text => return Err(CliError::Usage("amoeba writes svg or json".into())),
    };
    let dir = out_dir();
    std::fs::create_dir_all(&dir)
        .map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?;
    let path = dir.join(output.unwrap_or(default_name));
    std::fs::write(&path, body).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let mut s = String::new();
    writeln!(s, "wrote {}", path.display()).unwrap();
    writeln!(
        s,
        "skeleton: {} vertices, {} edges, {} rays",
        skeleton.vertices.len(),
        skeleton.edges.len(),
        skeleton.rays.len()
    )
    .unwrap();
    writeln!(s, "bounded regions: {}", report.bounded.len()).unwrap();
    for warning in &report.warnings {
        writeln!(s, "warning: {warning}").unwrap();
    }
    writeln!(s, "diagnostic: {}", report.verdict()).unwrap();
    Ok(s)
}

struct Suite {
    name: &'static str,
    checks: usize,
    failure: Option<String>,
}

struct VerifyConfig<'a> {
    fan: Option<&'a str>,
    hms: bool,
    model: bool,
    seed: u64,
    samples: usize,
    range: i64,
}

fn hms_suites(
    fan: &str,
    cfg: &VerifyConfig<'_>,
    suites: &mut Vec<Suite>,
) -> Result<String, CliError> {
    let (seed, samples, range) = (cfg.seed, cfg.samples, cfg.range);
    let (name, model) = load_model(fan)?;
    let rays = model.num_rays();
    let cech = Cech::new(model);
    let models = Models::new(cech.clone());

    let mut patterns = Suite {
        name: "model patterns",
        checks: 0,
        failure: None,
    };
    for mask in 0u64..(1 << rays) {
        let values = (0..rays)
            .map(|r| if mask >> r & 1 == 1 { 1 } else { 0 })
            .collect();
        let rep = models.compare_pattern(&BoundaryPattern { values });
        patterns.checks += rep.checks;
        patterns.failure = patterns.failure.or(rep.first_discrepancy);
    }
    suites.push(patterns);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bundles = Suite {
        name: "model morphisms",
        checks: 0,
        failure: None,
    };
    for _ in 0..samples {
        let mut draw =
            || SupportFunction::new((0..rays).map(|_| rng.gen_range(-range..=range)).collect());
        let (l0, l1) = (draw(), draw());
        for u in graded_hom(&cech, &l0, &l1)?.pieces.keys() {
            let rep = models.compare_models(&l0, &l1, u)?;
            bundles.checks += rep.checks;
            bundles.failure = bundles.failure.or(rep.first_discrepancy);
        }
    }
    suites.push(bundles);

    let dg = dg_axioms_check(
        &[cech],
        &DgSuite {
            samples,
            seed,
            coeff_range: range,
            ..DgSuite::default()
        },
    )?;
    suites.push(Suite {
        name: "dg axioms",
        checks: dg.instances,
        failure: dg.failures.first().cloned(),
    });
    Ok(name)
}

fn run_verify(cfg: VerifyConfig<'_>, format: Format) -> Result<(String, bool), CliError> {
    let seed = cfg.seed;
    let both = !cfg.hms && !cfg.model;
    let mut suites = Vec::new();
    let mut name = String::from("local model");
    if cfg.hms || both {
        let fan = cfg.fan.ok_or_else(|| {
            CliError::Usage("verify needs --fan unless only --model is given".into())
        })?;
        name = hms_suites(fan, &cfg, &mut suites)?;
    }
    if cfg.model || both {
        let local = local_model_check(3, 4);
        suites.push(Suite {
            name: "local model",
            checks: local.checks,
            failure: local.first_failure,
        });
    }

    let ok = suites.iter().all(|s| s.failure.is_none());
    if format == Format::Json {
        let rows: Vec<Value> = suites
            .iter()
            .map(|s| json!({"suite": s.name, "checks": s.checks, "pass": s.failure.is_none(), "failure": s.failure}))
            .collect();
        return Ok((
            render(
                &json!({"schema": 1, "command": "verify", "fan": name, "seed": seed, "suites": rows, "pass": ok}),
            ),
            ok,
        ));
    }
    let mut s = String::new();
    writeln!(s, "verify {name} (seed {seed})").unwrap();
    for suite in &suites {
        match &suite.failure {
            None => writeln!(s, "PASS {:<16} {} checks", suite.name, suite.checks).unwrap(),
            Some(f) => writeln!(s, "FAIL {:<16} {} checks: {f}", suite.name, suite.checks).unwrap(),
        }
    }
    writeln!(
        s,
        "{}",
        if ok {
            "all suites pass"
        } else {
            "verification failed"
        }
    )
    .unwrap();
    Ok((s, ok))
}

fn run_trees(d: usize, report: bool, format: Format) -> Result<String, CliError> {
    let mut counts = Vec::new();
    for k in 2..=d {
        counts.push((
            k,
            enumerate_shapes(k, true)?.len(),
            catalan(k as u32 - 1),
            enumerate_shapes(k, false)?.len(),
            stasheff_facets(k).len(),
        ));
    }
    let wall_max = d.min(6);
    let mut walls = Vec::new();
    let conventions = select_turn_convention(wall_max)?;
    let conv = conventions.first().copied();
    if let Some(c) = conv {
        for k in 3..=wall_max {
            walls.push((k, wall_crossing_check(k, c)?));
        }
    }
    let facets = stasheff_facets(d);
    let boundary = shrub_boundary_types(d);
    if format == Format::Json {
        let mut v = json!({
            "schema": 1,
            "command": "trees",
            "counts": counts.iter().map(|(k, t, c, a, f)| json!({"d": k, "trivalent": t, "catalan": c, "all": a, "facets": f})).collect::<Vec<_>>(),
            "turn_conventions": conventions,
            "walls": walls.iter().map(|(k, w)| json!({"d": k, "walls": w.len(), "pass": w.iter().filter(|x| x.pass).count()})).collect::<Vec<_>>(),
        });
        if report {
            v["facets"] = json!(facets);
            v["boundary"] = json!(boundary);
            v["wall_details"] = json!(walls
                .iter()
                .filter(|(k, _)| *k == d)
                .flat_map(|(_, w)| w.clone())
                .collect::<Vec<_>>());
        }
        return Ok(render(&v));
    }
    let mut s = String::new();
    writeln!(
        s,
        "{:>2} {:>9} {:>8} {:>5} {:>6}",
        "d", "trivalent", "catalan", "all", "facets"
    )
    .unwrap();
    for (k, t, c, a, f) in &counts {
        writeln!(s, "{k:>2} {t:>9} {c:>8} {a:>5} {f:>6}").unwrap();
    }
    match conv {
        Some(c) => writeln!(s, "turn convention: {c:?}").unwrap(),
        None => writeln!(s, "turn convention: none passes every wall").unwrap(),
    }
    for (k, w) in &walls {
        writeln!(
            s,
            "walls d={k}: {}/{} pass",
            w.iter().filter(|x| x.pass).count(),
            w.len()
        )
        .unwrap();
    }
    if report {
        writeln!(s, "facets d={d}:").unwrap();
        for f in &facets {
            writeln!(s, "  d1={} d2={} i={}", f.d1, f.d2, f.i).unwrap();
        }
        if let Some((_, w)) = walls.iter().find(|(k, _)| *k == d) {
            writeln!(s, "walls d={d}:").unwrap();
            for x in w {
                writeln!(
                    s,
                    "  {} -> {} {:+} | {} {:+} {}",
                    x.tree,
                    x.left_resolution,
                    x.left_sign,
                    x.right_resolution,
                    x.right_sign,
                    if x.pass { "ok" } else { "MISMATCH" }
                )
                .unwrap();
            }
        }
        if let Some(c) = conv {
            writeln!(s, "dexterity d={d}:").unwrap();
            for (shape, rows) in dexterity_table(d, c)? {
                let cells: Vec<String> = rows
                    .iter()
                    .map(|((lo, hi), r)| format!("[{lo},{hi}]:{r}"))
                    .collect();
                writeln!(s, "  {shape} {}", cells.join(" ")).unwrap();
            }
        }
        writeln!(s, "shrub boundary d={d}:").unwrap();
        writeln!(s, "  horizontal: {:?}", boundary.horizontal).unwrap();
        writeln!(s, "  vertical: {:?}", boundary.vertical).unwrap();
    }
    Ok(s)
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    match cli.command {
        Command::Cohomology {
            fan,
            bundle,
            r#box,
            format,
        } => Ok((run_cohomology(&fan, &bundle, r#box, format)?, true)),
        Command::Amoeba {
            fan,
            psi,
            format,
            output,
        } => Ok((
            run_amoeba(&fan, psi.as_deref(), format, output.as_deref())?,
            true,
        )),
        Command::Verify {
            fan,
            hms,
            model,
            seed,
            samples,
            range,
            format,
        } => {
            let cfg = VerifyConfig {
                fan: fan.as_deref(),
                hms,
                model,
                seed,
                samples,
                range,
            };
            run_verify(cfg, format)
        }
        Command::Trees { d, report, format } => Ok((run_trees(d as usize, report, format)?, true)),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
