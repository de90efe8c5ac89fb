//! `systolica`: systoles, fillings and fullness from the command line.

mod error;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use systolica::complex::EdgeLoop;
use systolica::geometry::{
    face_fullness_check, fullness, parse_simplex_blocks, perturbed_min_fullness, simplex_diameter,
    simplex_volume,
};
use systolica::harness::corpus::default_corpus;
use systolica::harness::generate::subdivide;
use systolica::harness::io::{parse_surface, write_surface, Format};
use systolica::harness::verify::{verify_corpus, VerifyOptions};
use systolica::harness::{fill_report, CorpusEntry};
use systolica::metric::{parse_path_block, project_to_skeleton};
use systolica::surgery::dehn_twist;
use systolica::systole::{homological_systole, homotopy_systole};
use systolica::{Generator, PolygonalPath, TriangulatedSurface};

use error::{io, loop_error, CliError};

#[derive(Parser, Debug)]
#[command(
    name = "systolica",
    version,
    about = "Discrete systoles, cut-and-cone fillings and simplex fullness"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Input file; standard input when omitted.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Surface format, inferred from the extension when omitted.
    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<Format>,
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Apply K rounds of 1-to-4 edge-midpoint subdivision to the input first.
    #[arg(long, global = true, value_name = "K", default_value_t = 0)]
    subdivide: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Counts, Euler characteristic, orientability and genus.
    Info,
    /// Shortest noncontractible edge loop.
    Systole,
    /// Shortest homologically nontrivial edge loop.
    Hsystole,
    /// Fill the surface by a triangulated 3-manifold and report the stages.
    Fill,
    /// Measure systole and filling ratios over a corpus.
    Verify {
        /// Skip the filling pipeline.
        #[arg(long)]
        no_fill: bool,
        /// Version string recorded in the report.
        #[arg(long, default_value = env!("CARGO_PKG_VERSION"))]
        report_version: String,
    },
    /// Write a generated surface, e.g. `subdivide(grid-torus(4),2)`.
    Generate { expression: String },
    /// Dehn twist along a loop (the homological systole by default).
    Twist {
        #[arg(long)]
        offset: usize,
        /// Loop as comma-separated vertex ids.
        #[arg(long = "loop", value_delimiter = ',')]
        cycle: Option<Vec<usize>>,
    },
    /// Project a closed polygonal path, given as a PATH block, onto the 1-skeleton.
    Straighten,
    /// Volume, diameter and fullness of SIMPLEX blocks.
    Fullness {
        /// Also report the minimum fullness under perturbations of this relative radius.
        #[arg(long)]
        perturb: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn read_input(path: Option<&Path>) -> Result<Vec<u8>, CliError> {
    match path {
        Some(p) => fs::read(p).map_err(|e| io(p, e)),
        None => {
            let mut buf = Vec::new();
            io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| io(Path::new("<stdin>"), e))?;
            Ok(buf)
        }
    }
}

fn read_text(path: Option<&Path>) -> Result<String, CliError> {
    String::from_utf8(read_input(path)?).map_err(|_| CliError::usage("input is not valid UTF-8"))
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| io(p, e)),
        None => io::stdout()
            .write_all(bytes)
            .map_err(|e| io(Path::new("<stdout>"), e)),
    }
}

fn format_for(common: &Common, path: Option<&Path>) -> Format {
    common
        .format
        .unwrap_or_else(|| path.map_or(Format::Tri, Format::from_path))
}

fn load_surface_at(common: &Common, path: Option<&Path>) -> Result<TriangulatedSurface, CliError> {
    let bytes = read_input(path)?;
    let mut s = parse_surface(&bytes, format_for(common, path), false)?;
    for _ in 0..common.subdivide {
        s = subdivide(&s);
    }
    Ok(s)
}

fn load_surface(common: &Common) -> Result<TriangulatedSurface, CliError> {
    load_surface_at(common, common.input.as_deref())
}

fn pretty(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON value serializes");
    text.push('\n');
    text
}

fn info(common: &Common) -> Result<String, CliError> {
    let s = load_surface(common)?;
    let inv = s.topology_invariants();
    let genus = inv.genus.map_or("N/A".to_string(), |g| g.to_string());
    Ok(if common.json {
        pretty(&json!({
            "schema": systolica::harness::SCHEMA,
            "vertices": inv.vertices,
            "edges": inv.edges,
            "facets": inv.facets,
            "euler_characteristic": inv.euler_characteristic,
            "orientable": inv.orientable,
            "genus": inv.genus,
            "subdivided": common.subdivide,
        }))
    } else if common.csv {
        format!(
            "V,E,F,chi,orientable,genus\n{},{},{},{},{},{genus}\n",
            inv.vertices, inv.edges, inv.facets, inv.euler_characteristic, inv.orientable
        )
    } else {
        let mut out = format!(
            "V {}\nE {}\nF {}\nchi {}\norientable {}\ngenus {genus}\n",
            inv.vertices, inv.edges, inv.facets, inv.euler_characteristic, inv.orientable
        );
        if common.subdivide > 0 {
            out.push_str(&format!("subdivided {} rounds\n", common.subdivide));
        }
        out
    })
}

fn systole(common: &Common, homological: bool) -> Result<String, CliError> {
    let s = load_surface(common)?;
    let found = if homological {
        homological_systole(&s)?
    } else {
        homotopy_systole(&s)?
    };
    let ratio = found.length as f64 / (s.triangle_count() as f64).sqrt();
    let cycle = found.cycle.vertices();
    Ok(if common.json {
        pretty(&json!({
            "schema": systolica::harness::SCHEMA,
            "kind": if homological { "homological" } else { "homotopy" },
            "length": found.length,
            "cycle": cycle,
            "facets": s.triangle_count(),
            "ratio1": ratio,
            "subdivided": common.subdivide,
        }))
    } else {
        let list: Vec<String> = cycle.iter().map(usize::to_string).collect();
        format!(
            "length {}\ncycle {}\nratio {ratio:.6}\n",
            found.length,
            list.join(" ")
        )
    })
}

fn fill(common: &Common) -> Result<String, CliError> {
    let s = load_surface(common)?;
    let (_, summary) = fill_report(&s)?;
    if !summary.identity_holds {
        return Err(CliError::invariant(format!(
            "{} tetrahedra, expected {}",
            summary.tets, summary.predicted_tets
        )));
    }
    Ok(if common.json {
        summary.to_json()
    } else {
        summary.to_table()
    })
}

/// Surface files to verify: the input file, or every `.tri`/`.off` file in
/// the input directory, sorted by name.
fn corpus_from(common: &Common, path: &Path) -> Result<Vec<CorpusEntry>, CliError> {
    let files = if path.is_dir() {
        let mut files: Vec<PathBuf> = fs::read_dir(path)
            .map_err(|e| io(path, e))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| {
                p.extension()
                    .and_then(|e| e.to_str())
                    .is_some_and(|e| e.eq_ignore_ascii_case("tri") || e.eq_ignore_ascii_case("off"))
            })
            .collect();
        files.sort();
        files
    } else {
        vec![path.to_path_buf()]
    };
    files
        .iter()
        .map(|f| {
            let surface = load_surface_at(common, Some(f)).map_err(|e| CliError {
                message: format!("{}: {}", f.display(), e.message),
                ..e
            })?;
            let name = f.file_stem().map_or_else(
                || f.display().to_string(),
                |n| n.to_string_lossy().into_owned(),
            );
            Ok(CorpusEntry {
                name,
                family: None,
                provenance: format!("file:{}", f.display()),
                surface,
            })
        })
        .collect()
}

fn verify(common: &Common, no_fill: bool, version: &str) -> Result<(String, bool), CliError> {
    let entries = match &common.input {
        Some(path) => corpus_from(common, path)?,
        None => default_corpus(common.seed)?,
    };
    let options = VerifyOptions {
        fill: !no_fill,
        seed: common.seed,
        version: version.to_string(),
    };
    let report = verify_corpus(&entries, &options);
    let text = if common.json {
        report.to_json()
    } else {
        report.to_csv()
    };
    for row in report.rows.iter().filter(|r| !r.is_ok()) {
        eprintln!(
            "failed: {}: {}",
            row.name,
            row.message.as_deref().unwrap_or("")
        );
    }
    Ok((text, report.all_ok()))
}

fn generate(common: &Common, expression: &str) -> Result<Vec<u8>, CliError> {
    let g = Generator::parse_with_seed(expression, common.seed)?;
    let mut s = g.generate()?;
    for _ in 0..common.subdivide {
        s = subdivide(&s);
    }
    Ok(write_surface(&s, Format::Tri)?)
}

fn twist(common: &Common, offset: usize, cycle: Option<&[usize]>) -> Result<Vec<u8>, CliError> {
    let s = load_surface(common)?;
    let p = match cycle {
        Some(vertices) => EdgeLoop::new(&s, vertices.to_vec()).map_err(loop_error)?,
        None => homological_systole(&s)?.cycle,
    };
    let twisted = dehn_twist(&s, &p, offset)?;
    Ok(write_surface(&twisted, Format::Tri)?)
}

fn straighten(common: &Common) -> Result<String, CliError> {
    if common.subdivide > 0 {
        return Err(CliError::usage(
            "--subdivide would renumber the triangles a PATH block refers to",
        ));
    }
    let text = read_text(common.input.as_deref())?;
    let spec = parse_path_block(&text)?;
    let surface_path = match &common.input {
        Some(input) => input
            .parent()
            .unwrap_or_else(|| Path::new("."))
            .join(&spec.surface_file),
        None => PathBuf::from(&spec.surface_file),
    };
    let s = load_surface_at(common, Some(&surface_path))?;
    let path = PolygonalPath::new(&s, spec.segments, spec.closed)?;
    let r = project_to_skeleton(&path)?;
    let output: Option<&[usize]> = r.output.as_ref().map(EdgeLoop::vertices);
    let nontrivial = r.signature.as_ref().map(|sig| !sig.is_zero());
    Ok(if common.json {
        pretty(&json!({
            "schema": systolica::harness::SCHEMA,
            "output": output,
            "basepoint": r.basepoint,
            "input_length": r.input_length,
            "output_length": r.output_length,
            "ratio": r.ratio,
            "kappa": r.kappa,
            "support": r.support,
            "perturbed": r.perturbed,
            "nontrivial": nontrivial,
        }))
    } else {
        let mut out = match output {
            Some(v) => {
                let list: Vec<String> = v.iter().map(usize::to_string).collect();
                format!("loop {}\n", list.join(" "))
            }
            None => format!(
                "point {}\n",
                r.basepoint.map_or("N/A".into(), |v| v.to_string())
            ),
        };
        out.push_str(&format!(
            "input length {:.6}\noutput length {}\nkappa {:.6}\nsupport {} triangles\n",
            r.input_length,
            r.output_length,
            r.kappa,
            r.support.len()
        ));
        if let Some(n) = nontrivial {
            out.push_str(&format!("nontrivial {n}\n"));
        }
        out
    })
}

fn fullness_report(
    common: &Common,
    perturb: Option<f64>,
    trials: usize,
) -> Result<String, CliError> {
    let text = read_text(common.input.as_deref())?;
    let simplices = parse_simplex_blocks(&text)?;
    let mut rows = Vec::with_capacity(simplices.len());
    for (i, s) in simplices.iter().enumerate() {
        let faces_hold = face_fullness_check(s)?.iter().all(|c| c.holds);
        let perturbed = perturb
            .map(|rho| perturbed_min_fullness(s, rho, trials, common.seed.wrapping_add(i as u64)))
            .transpose()?;
        rows.push(json!({
            "index": i,
            "ambient": s.ambient_dimension(),
            "dimension": s.dimension(),
            "volume": simplex_volume(s)?,
            "diameter": simplex_diameter(s),
            "fullness": fullness(s)?,
            "face_inequalities_hold": faces_hold,
            "perturbed_min_fullness": perturbed,
        }));
    }
    Ok(if common.json {
        pretty(&json!({ "schema": systolica::harness::SCHEMA, "simplices": rows }))
    } else {
        let mut out = String::from("index  m  k  volume  diameter  fullness  faces\n");
        for r in &rows {
            out.push_str(&format!(
                "{} {} {} {:.12e} {:.12e} {:.12e} {}",
                r["index"],
                r["ambient"],
                r["dimension"],
                r["volume"].as_f64().unwrap_or(f64::NAN),
                r["diameter"].as_f64().unwrap_or(f64::NAN),
                r["fullness"].as_f64().unwrap_or(f64::NAN),
                if r["face_inequalities_hold"] == true {
                    "ok"
                } else {
                    "violated"
                },
            ));
            if let Some(p) = r["perturbed_min_fullness"].as_f64() {
                out.push_str(&format!(" perturbed {p:.12e}"));
            }
            out.push('\n');
        }
        out
    })
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(text) = std::env::var("SYSTOLICA_THREADS") else {
        return Ok(());
    };
    let n: usize = text.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::usage(format!(
            "SYSTOLICA_THREADS must be a positive integer, got '{text}'"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::usage(e.to_string()))
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    configure_threads()?;
    let common = &cli.common;
    let out = common.output.as_deref();
    match &cli.command {
        Command::Info => write_output(out, info(common)?.as_bytes())?,
        Command::Systole => write_output(out, systole(common, false)?.as_bytes())?,
        Command::Hsystole => write_output(out, systole(common, true)?.as_bytes())?,
        Command::Fill => write_output(out, fill(common)?.as_bytes())?,
        Command::Verify {
            no_fill,
            report_version,
        } => {
            let (text, ok) = verify(common, *no_fill, report_version)?;
            write_output(out, text.as_bytes())?;
            return Ok(ok);
        }
        Command::Generate { expression } => write_output(out, &generate(common, expression)?)?,
        Command::Twist { offset, cycle } => {
            write_output(out, &twist(common, *offset, cycle.as_deref())?)?
        }
        Command::Straighten => write_output(out, straighten(common)?.as_bytes())?,
        Command::Fullness { perturb, trials } => {
            write_output(out, fullness_report(common, *perturb, *trials)?.as_bytes())?
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(error::PARSE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(error::INVARIANT),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
