//! `sphere-eta`: build inscribed polyhedra, measure their edge ratio and
//! check the lower bounds.
//!
//! Exit codes: 0 success, 1 validation or verification failure, 2 usage error.

mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use sphere_eta::bounds::{
    dk_upper_bound, f_eta, fixed_point_mu, half_sphere_contradiction_margin, lambda_constant, lambda_sine_ratio,
    half_sphere_constants, BoundChain,
};
use sphere_eta::clinton::{build_clinton, ClintonVariant, Matching};
use sphere_eta::kitrick::{build_kitrick, kitrick_eta_closed_form};
use sphere_eta::meshio::{read_obj_file, write_obj, write_report, ReportFormat};
use sphere_eta::report::round12;
use sphere_eta::scalar::two_sin36;
use sphere_eta::solids::{dodecahedron_fan, icosahedron};
use sphere_eta::{TriangleMesh, UniformityReport};

#[derive(Parser, Debug)]
#[command(name = "sphere-eta", version, about = "Edge-ratio tools for triangle-faced polyhedra inscribed in the unit sphere")]
struct Cli {
    /// Log progress to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a polyhedron and write it as OBJ.
    Gen {
        #[arg(long, value_enum)]
        construction: Construction,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=64))]
        n: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Measure and validate an OBJ mesh.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        /// Write the JSON report here (`-` for standard output).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the report as a CSV row here (`-` for standard output).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check the constructions and bounds for n = 1..=n-max.
    Verify {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=16))]
        n_max: u32,
    },
    /// Tabulate eta against the bounds as CSV.
    Table {
        /// Repeatable; defaults to kitrick, clinton1 and clinton2.
        #[arg(long, value_enum)]
        construction: Vec<Construction>,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=16))]
        n_max: u32,
        /// Output path; standard output when absent.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Evaluate the bound chain for m faces.
    Bounds {
        #[arg(long, value_parser = parse_face_count)]
        m: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Construction {
    Kitrick,
    Clinton1,
    Clinton2,
    Icosahedron,
    Dodecahedron,
}

impl Construction {
    fn is_family(self) -> bool {
        matches!(self, Construction::Kitrick | Construction::Clinton1 | Construction::Clinton2)
    }
}

fn parse_face_count(s: &str) -> Result<u64, String> {
    let m: u64 = s.parse().map_err(|e| format!("{e}"))?;
    if m < 4 || !m.is_multiple_of(2) {
        return Err(format!("m must be even and at least 4, got {m}"));
    }
    Ok(m)
}

fn build(c: Construction, n: u32) -> sphere_eta::Result<TriangleMesh> {
    match c {
        Construction::Kitrick => build_kitrick(n),
        Construction::Clinton1 => build_clinton(n, ClintonVariant::Centroid, Matching::Primary),
        Construction::Clinton2 => build_clinton(n, ClintonVariant::Incenter, Matching::Primary),
        Construction::Icosahedron => Ok(icosahedron()),
        Construction::Dodecahedron => Ok(dodecahedron_fan()),
    }
}

fn sink(path: &Path) -> Result<Box<dyn Write>> {
    if path.as_os_str() == "-" {
        Ok(Box::new(io::stdout().lock()))
    } else {
        let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
        Ok(Box::new(BufWriter::new(f)))
    }
}

fn run_gen(c: Construction, n: u32, out: &Path) -> Result<ExitCode> {
    log::info!("building {c:?} n={n}");
    let mesh = build(c, n).with_context(|| format!("building {c:?} n={n}"))?;
    log::info!("built {} faces, measuring", mesh.face_count());
    let r = UniformityReport::from_mesh(&mesh)?;
    write_obj(&mesh, sink(out)?).with_context(|| format!("writing {}", out.display()))?;
    let n = r.n.map_or("-".to_string(), |n| n.to_string());
    println!("{} n={} m={} V={} E={} eta={:.12}", r.construction, n, r.m, r.vertices, r.edges, r.eta);
    Ok(ExitCode::SUCCESS)
}

fn run_analyze(input: &Path, json: Option<&Path>, csv: Option<&Path>) -> Result<ExitCode> {
    let mesh: TriangleMesh = read_obj_file(input).with_context(|| format!("reading {}", input.display()))?;
    let r = UniformityReport::from_mesh(&mesh)?;
    print!("{}", r.summary());
    if let Some(p) = json {
        write_report(&r, ReportFormat::Json, sink(p)?)?;
    }
    if let Some(p) = csv {
        write_report(&r, ReportFormat::CsvRow, sink(p)?)?;
    }
    Ok(if r.valid { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run_table(constructions: &[Construction], n_max: u32, csv_out: Option<&Path>) -> Result<ExitCode> {
    let list = if constructions.is_empty() {
        vec![Construction::Kitrick, Construction::Clinton1, Construction::Clinton2]
    } else {
        constructions.to_vec()
    };
    let out: Box<dyn Write> = match csv_out {
        Some(p) => sink(p)?,
        None => Box::new(io::stdout().lock()),
    };
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["construction", "n", "m", "eta", "eta_closed_form", "lower_bound", "gap_to_2sin36"])?;
    let limit = two_sin36::<f64>();
    for c in list {
        let ns = if c.is_family() { 1..=n_max } else { 1..=1 };
        for n in ns {
            log::info!("table row {c:?} n={n}");
            let r = UniformityReport::from_mesh(&build(c, n)?)?;
            let num = |x: f64| round12(x).to_string();
            let closed = if c == Construction::Kitrick { num(kitrick_eta_closed_form(n)) } else { String::new() };
            let lb = r.lower_bound_simple.map(num).unwrap_or_default();
            w.write_record([r.construction.clone(), n.to_string(), r.m.to_string(), num(r.eta), closed, lb, num(limit - r.eta)])?;
        }
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn run_bounds(m: u64) -> Result<ExitCode> {
    let chain = BoundChain::<f64>::new(m)?;
    let mu = fixed_point_mu(chain.dk_bound)?;
    let residual = (f_eta(mu, chain.dk_bound)? - mu).abs();
    let half_sphere = half_sphere_constants();
    let (forced, half) = half_sphere_contradiction_margin::<f64>();
    println!("m = {}  k = {}", chain.m, chain.k);
    println!("d_k upper bound          {:.12}", chain.dk_bound);
    println!("refined bound            {:.12}", chain.refined);
    println!("simple bound             {:.12}", chain.simple);
    println!("2 sin 36                 {:.12}", two_sin36::<f64>());
    println!("fixed point mu           {:.12}  |f(mu) - mu| = {:.3e}", mu, residual);
    println!("d_12 upper bound         {:.12}", dk_upper_bound::<f64>(12)?);
    println!("lambda                   {:.12}", lambda_constant::<f64>());
    println!("sin(lambda c)/sin c      {:.12}", lambda_sine_ratio::<f64>());
    println!("half-sphere bound        {:.12}", half_sphere.derived);
    println!("half-sphere margin       {:.12} > {:.12}: {}", forced, half, forced > half);
    println!("note: {}", half_sphere.note());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    env_logger::Builder::new()
        .filter_level(if cli.verbose { log::LevelFilter::Info } else { log::LevelFilter::Warn })
        .init();

    let result = match &cli.command {
        Command::Gen { construction, n, out } => run_gen(*construction, *n, out),
        Command::Analyze { input, json, csv } => run_analyze(input, json.as_deref(), csv.as_deref()),
        Command::Verify { n_max } => verify::run(*n_max),
        Command::Table { construction, n_max, csv } => run_table(construction, *n_max, csv.as_deref()),
        Command::Bounds { m } => run_bounds(*m),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
