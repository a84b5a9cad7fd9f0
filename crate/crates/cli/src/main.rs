//! `simplex-spectra`: generators, homology, spectra and extremal search from the command line.
//!
//! Exit status is 0 on success, 1 when a checked contract fails, and 2 on
//! usage or input errors.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use simplex_spectra::acceptance::{evaluate, report, AcceptanceConfig, CRITERIA};
use simplex_spectra::complex::io::{read_facets_file, write_facets};
use simplex_spectra::extremal::{
    asymptotic_check, facet_bound, max_facets_search, max_spectral_search, perron_profile, proof_inspector,
    spectral_bound, SearchOptions,
};
use simplex_spectra::families::{Family, FamilySpec};
use simplex_spectra::homology::{betti_profile, check_basic_hole_properties, is_basic_hole};
use simplex_spectra::spectra::{spectral_radius, Method, Normalization};
use simplex_spectra::{Error, Face, SpectralOptions};

#[derive(Parser, Debug)]
#[command(name = "simplex-spectra", version, about = "Spectra, Betti numbers and extremal search for simplicial complexes")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Eigen-residual tolerance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Worker threads for the exhaustive search (default: logical cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Facets,
    Spectral,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Norm {
    UnitNorm,
    MaxBoundarySumOne,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a named complex as a .facets file.
    Gen {
        /// simplex-skeleton, tented, tent-plus-common-edge, tent-plus-faces, delta-sphere, rhombic, random-pure2
        family: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        /// Triangles added to T_n^2, as `a,b,c;d,e,f`.
        #[arg(long)]
        added: Option<String>,
    },
    /// Betti numbers and Euler characteristic.
    Betti { file: PathBuf },
    /// Spectral radius of Q_i^up.
    Spectra {
        file: PathBuf,
        #[arg(long)]
        dim: usize,
        /// Also write the eigenvector as `face value` lines.
        #[arg(long)]
        perron: bool,
        #[arg(long, value_enum, default_value_t = Norm::UnitNorm)]
        normalization: Norm,
        /// Use the dense eigensolver instead of power iteration.
        #[arg(long)]
        dense: bool,
    },
    /// Homology, basic-hole and extremal-bound checks on a pure complex.
    Check { file: PathBuf },
    /// Exhaustive search over pure 2-complexes with β_2 = t.
    Search {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        /// Only complexes containing every edge of [n].
        #[arg(long)]
        full_skeleton: bool,
    },
    /// Counting quantities around the maximal boundary face of the Perron vector.
    Inspect {
        file: PathBuf,
        /// Emit the Perron profile against its predictions instead.
        #[arg(long)]
        profile: bool,
    },
    /// g(n) for T_n^(2,t) along a list of n.
    Asymptotic {
        #[arg(long)]
        t: usize,
        #[arg(long, value_delimiter = ',', default_value = "60,120,240")]
        n: Vec<usize>,
        /// One tolerance per n.
        #[arg(long, value_delimiter = ',')]
        tol_schedule: Option<Vec<f64>>,
    },
    /// Run the acceptance suite and write acceptance_report.json.
    Acceptance {
        /// Subset of criteria to run.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<u8>>,
    },
}

enum Failure {
    /// Bad flags or unusable input.
    Usage(String),
    /// A checked contract does not hold; the output was still written.
    Contract(String),
    /// A computation failed.
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if is_input_error(&e) {
            Failure::Usage(format!("error {}: {e}", e.code()))
        } else {
            Failure::Compute(e)
        }
    }
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Empty
            | Error::RepeatedVertex(_)
            | Error::EmptyFace
            | Error::BadVertexId { .. }
            | Error::NotPure { .. }
            | Error::DimensionOutOfRange { .. }
            | Error::LengthMismatch { .. }
            | Error::TooLarge { .. }
            | Error::BadParams(_)
            | Error::FaceContainsApex(_)
            | Error::DuplicateFace(_)
            | Error::Parse { .. }
            | Error::Io(_)
    )
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Contract(msg)) => {
            eprintln!("contract failure: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error {}: {e}", e.code());
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let g = &cli.global;
    match cli.command {
        Command::Gen { family, n, r, t, added } => gen(g, &family, n, r, t, added.as_deref()),
        Command::Betti { file } => betti(g, &file),
        Command::Spectra { file, dim, perron, normalization, dense } => {
            spectra(g, &file, dim, perron, normalization, dense)
        }
        Command::Check { file } => check(g, &file),
        Command::Search { mode, n, t, full_skeleton } => search(g, mode, n, t, full_skeleton),
        Command::Inspect { file, profile } => inspect(g, &file, profile),
        Command::Asymptotic { t, n, tol_schedule } => asymptotic(g, t, &n, tol_schedule.as_deref()),
        Command::Acceptance { only } => acceptance(g, only),
    }
}

fn format_of(g: &Global, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = g.format.unwrap_or(default);
    if !allowed.contains(&f) {
        return Err(Failure::Usage(format!("format {f:?} is not supported by this command")));
    }
    Ok(f)
}

fn emit(g: &Global, body: &str) -> Outcome {
    match &g.output {
        Some(path) => std::fs::write(path, body).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).map_err(|e| Failure::Compute(e.into()))
        }
    }
}

fn spectral_options(g: &Global) -> SpectralOptions {
    SpectralOptions::default().with_tol(g.tol).with_seed(g.seed)
}

fn search_options(g: &Global, full_skeleton: bool) -> SearchOptions {
    let base = SearchOptions::default();
    SearchOptions { full_skeleton, workers: g.workers.unwrap_or(base.workers), tol: g.tol, seed: g.seed }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn parse_added(text: &str) -> Result<Vec<Face>, Failure> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|tri| {
            let vs: Result<Vec<u32>, _> = tri.split(',').map(|v| v.trim().parse::<u32>()).collect();
            let vs = vs.map_err(|e| Failure::Usage(format!("bad --added face `{tri}`: {e}")))?;
            Ok(Face::new(vs)?)
        })
        .collect()
}

fn gen(g: &Global, family: &str, n: Option<usize>, r: Option<usize>, t: Option<usize>, added: Option<&str>) -> Outcome {
    let family: Family = family.parse()?;
    let spec = FamilySpec {
        family,
        n,
        r,
        t,
        seed: Some(g.seed),
        added: added.map(parse_added).transpose()?.unwrap_or_default(),
    };
    let k = spec.build()?;
    emit(g, &write_facets(&k))
}

fn load(path: &Path, require_pure: bool) -> Result<simplex_spectra::SimplicialComplex, Failure> {
    Ok(read_facets_file(path, require_pure)?)
}

fn betti(g: &Global, file: &Path) -> Outcome {
    let k = load(file, false)?;
    let p = betti_profile(&k);
    let body = match format_of(g, Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => to_json(&p),
        _ => {
            let b: Vec<String> = p.betti.iter().map(usize::to_string).collect();
            format!("{}  chi={}\n", b.join(" "), p.euler)
        }
    };
    emit(g, &body)
}

fn spectra(g: &Global, file: &Path, dim: usize, perron: bool, norm: Norm, dense: bool) -> Outcome {
    let k = load(file, true)?;
    let normalization = match norm {
        Norm::UnitNorm => Normalization::UnitNorm,
        Norm::MaxBoundarySumOne => Normalization::MaxBoundarySumOne,
    };
    let method = if dense { Method::Dense } else { Method::Power };
    let opts = spectral_options(g).with_normalization(normalization).with_method(method);
    let res = spectral_radius(&k, dim, &opts)?;
    let body = match format_of(g, Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => {
            let mut v = serde_json::to_value(&res).expect("serializable");
            if !perron {
                v.as_object_mut().expect("object").remove("vector");
            }
            to_json(&v)
        }
        _ => {
            let mut s = format!("{:.12}\nresidual {:.3e}\niterations {}\n", res.value, res.residual, res.iterations);
            if perron {
                for (face, x) in k.faces(dim).iter().zip(&res.vector) {
                    s.push_str(&format!("{face} {x:.15e}\n"));
                }
            }
            s
        }
    };
    emit(g, &body)
}

fn check(g: &Global, file: &Path) -> Outcome {
    let k = load(file, true)?;
    let r = k.dim();
    if r == 0 {
        return Err(Failure::Usage("check needs a complex of dimension at least 1".into()));
    }
    let n = k.n_vertices();
    let p = betti_profile(&k);
    let t = p.betti[r];
    let facets = k.facets().len();
    let fb = facet_bound(n as u64, r as u64, t as u64) as usize;
    let q = spectral_radius(&k, r - 1, &spectral_options(g))?.value;
    let sb = spectral_bound(n as u64, r as u64, t as u64);
    let basic = is_basic_hole(&k)?;
    let report = basic.then(|| check_basic_hole_properties(&k)).transpose()?;

    let mut failures = Vec::new();
    if p.euler != p.euler_from_betti() {
        failures.push("euler characteristic differs from the alternating Betti sum".to_string());
    }
    if facets > fb {
        failures.push(format!("{facets} facets exceed C(n-1,r)+t = {fb}"));
    }
    if q > sb + 1e-7 {
        failures.push(format!("q_(r-1) = {q} exceeds rn-r^2+t+1 = {sb}"));
    }
    if report.as_ref().is_some_and(|rep| !rep.all_pass()) {
        failures.push("a basic-hole property fails".to_string());
    }

    let summary = serde_json::json!({
        "n": n, "dim": r, "betti": p.betti, "euler": p.euler, "facets": facets, "facet_bound": fb,
        "q": q, "spectral_bound": sb, "basic_hole": basic, "basic_hole_properties": report, "failures": failures,
    });
    let body = match format_of(g, Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => to_json(&summary),
        _ => {
            let b: Vec<String> = p.betti.iter().map(usize::to_string).collect();
            let mut s = format!(
                "betti {}  chi={}\nfacets {facets} <= {fb}\nq{} {q:.12} <= {sb}\nbasic_hole {basic}\n",
                b.join(" "),
                p.euler,
                r - 1
            );
            if let Some(rep) = &report {
                s.push_str(&format!(
                    "path_connected {}\nmin_degree {}\nconnected_after_removal {}\n",
                    rep.path_connected, rep.min_degree, rep.connected_after_removal
                ));
            }
            for f in &failures {
                s.push_str(&format!("FAIL {f}\n"));
            }
            s
        }
    };
    emit(g, &body)?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Contract(failures.join("; ")))
    }
}

fn search(g: &Global, mode: Mode, n: usize, t: usize, full_skeleton: bool) -> Outcome {
    format_of(g, Format::Json, &[Format::Json])?;
    let opts = search_options(g, full_skeleton);
    let report = match mode {
        Mode::Facets => max_facets_search(n, t, &opts)?,
        Mode::Spectral => max_spectral_search(n, t, &opts)?,
    };
    emit(g, &to_json(&report))?;
    if report.contract_holds() {
        Ok(())
    } else {
        Err(Failure::Contract(format!("search contract failed: {:?}", report.bound_violations)))
    }
}

fn inspect(g: &Global, file: &Path, profile: bool) -> Outcome {
    let k = load(file, true)?;
    let format = format_of(g, Format::Csv, &[Format::Csv, Format::Json])?;
    let body = if profile {
        let p = perron_profile(&k, &spectral_options(g))?;
        match format {
            Format::Json => to_json(&p),
            _ => csv_table(
                &["class", "face", "measured", "predicted", "relative_deviation"],
                p.rows.iter().map(|r| {
                    vec![
                        r.class.name().to_string(),
                        r.face.to_string(),
                        format!("{:.15e}", r.measured),
                        format!("{:.15e}", r.predicted),
                        format!("{:.6e}", r.relative_deviation()),
                    ]
                }),
            ),
        }
    } else {
        let rep = proof_inspector(&k, &spectral_options(g))?;
        match format {
            Format::Json => to_json(&rep),
            _ => csv_table(&["quantity", "value"], rep.rows().into_iter().map(|(q, v)| vec![q.to_string(), v])),
        }
    };
    emit(g, &body)
}

fn asymptotic(g: &Global, t: usize, ns: &[usize], schedule: Option<&[f64]>) -> Outcome {
    let format = format_of(g, Format::Csv, &[Format::Csv, Format::Json])?;
    let table = asymptotic_check(t, ns, schedule, &spectral_options(g))?;
    let body = match format {
        Format::Json => to_json(&table),
        _ => csv_table(
            &["n", "q1", "excess", "g", "residual", "iterations"],
            table.rows.iter().map(|r| {
                vec![
                    r.n.to_string(),
                    format!("{:.12}", r.q1),
                    format!("{:.6e}", r.excess),
                    format!("{:.6}", r.g),
                    format!("{:.3e}", r.residual),
                    r.iterations.to_string(),
                ]
            }),
        ),
    };
    emit(g, &body)?;
    if table.contract_holds() {
        Ok(())
    } else {
        Err(Failure::Contract("g(n) left the band or did not approach 1 along doublings".into()))
    }
}

fn acceptance(g: &Global, only: Option<Vec<u8>>) -> Outcome {
    format_of(g, Format::Text, &[Format::Text])?;
    let ids = only.unwrap_or_else(|| CRITERIA.to_vec());
    if let Some(bad) = ids.iter().find(|id| !CRITERIA.contains(id)) {
        return Err(Failure::Usage(format!("no acceptance criterion {bad}")));
    }
    let cfg = AcceptanceConfig {
        seed: g.seed,
        tol: g.tol,
        workers: g.workers.unwrap_or(AcceptanceConfig::default().workers),
    };
    let mut criteria = Vec::new();
    for id in ids {
        let r = evaluate(id, &cfg);
        println!("{}", r.line());
        criteria.push(r);
    }
    let report = report(&cfg, criteria);
    let path = g.output.clone().unwrap_or_else(|| PathBuf::from("acceptance_report.json"));
    std::fs::write(&path, to_json(&report))
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Contract("acceptance criteria failed".into()))
    }
}
