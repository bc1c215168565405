use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nsres::apery_resolution;
use nsres::assoc_graded;
use nsres::complex::BettiTable;
use nsres::emit;
use nsres::error::{Error, Result};
use nsres::field::{FieldChoice, PrimeField, Rationals};
use nsres::kunz;
use nsres::m4_special;
use nsres::oracle::{self, ModuleKind, RingKind};
use nsres::ring::toric_generators;
use nsres::semigroup::NumericalSemigroup;
use nsres::series_golod::{self, PiqSource, TruncatedSeries};
use nsres::symbolic::SymbolicMatrix;

#[derive(Parser, Debug)]
#[command(name = "nsres", version, about = "Free resolutions over numerical semigroup rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Homological steps D (default depends on the command).
    #[arg(long, global = true)]
    steps: Option<usize>,

    /// Degree bound N for brute-force and truncated computations.
    #[arg(long = "degree-bound", global = true)]
    degree_bound: Option<u64>,

    /// Coefficient field: `rat` or `fp:P`.
    #[arg(long, global = true, default_value = "rat")]
    field: FieldChoice,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Keep the `b_ij` symbolic in matrix output.
    #[arg(long, global = true)]
    symbolic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Tensor,
    Oracle,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apéry set with respect to the multiplicity.
    Apery {
        #[arg(required = true)]
        gens: Vec<u64>,
    },
    /// The binomials x_i x_j - y^{b_ij} x_{i+j} generating the toric ideal.
    Ideal {
        #[arg(required = true)]
        gens: Vec<u64>,
    },
    /// b_ij table, face signature and Kunz poset.
    Kunz {
        #[arg(required = true)]
        gens: Vec<u64>,
    },
    /// Whether two semigroups (comma separated generators) share a Kunz face.
    SameFace { first: String, second: String },
    /// Differentials of the infinite Apéry resolution (default 3 steps).
    Resolve {
        #[arg(required = true)]
        gens: Vec<u64>,
    },
    /// Betti numbers of the residue field (default 4 steps).
    Betti {
        #[arg(required = true)]
        gens: Vec<u64>,
        #[arg(long, value_enum, default_value_t = Method::Tensor)]
        method: Method,
    },
    /// Homology of the Apéry resolution, degree by degree (default 2 steps,
    /// bound (d+2) max Ap).
    Homology {
        #[arg(required = true)]
        gens: Vec<u64>,
    },
    /// Minimal resolution for multiplicity 4 (default 4 steps).
    M4 {
        #[arg(required = true)]
        gens: Vec<u64>,
    },
    /// Golod comparison of Poincaré series (default through degree 10).
    Golod {
        #[arg(required = true)]
        gens: Vec<u64>,
        /// Betti series of the defining ideal, comma separated.
        #[arg(long)]
        piq: Option<String>,
    },
    /// Initial ideal and Hilbert function of the associated graded ring
    /// (default degree bound 6).
    Grm {
        #[arg(required = true)]
        gens: Vec<u64>,
    },
    /// Bounded linearity check for the residue field over the associated
    /// graded ring (defaults: 3 steps, degree bound 6).
    Koszul {
        #[arg(required = true)]
        gens: Vec<u64>,
    },
}

macro_rules! with_field {
    ($choice:expr, |$f:ident| $body:expr) => {
        match $choice {
            FieldChoice::Rational => {
                let $f = Rationals;
                $body
            }
            FieldChoice::Prime(p) => {
                let $f = PrimeField::new(p)?;
                $body
            }
        }
    };
}

fn semigroup(gens: &[u64]) -> Result<NumericalSemigroup> {
    NumericalSemigroup::from_generators(gens)
}

fn parse_list(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("not a generator list: {text:?}")))
        })
        .collect()
}

fn joined<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn document(value: Value) -> Result<String> {
    emit::to_json_string(&value)
}

fn unsupported(cli: &Cli) -> Error {
    Error::InvalidArgument(format!("format {:?} is not available for this command", cli.format))
}

fn matrices_text(mats: &[SymbolicMatrix]) -> String {
    let mut out = String::new();
    for (k, mat) in mats.iter().enumerate() {
        out.push_str(&format!(
            "d_{}: {} x {}\n",
            k + 1,
            mat.target.len(),
            mat.source.len()
        ));
        for (c, col) in mat.columns.iter().enumerate() {
            for (r, e) in col {
                out.push_str(&format!("  [{}, {}] {}\n", mat.target[*r], mat.source[c], e));
            }
        }
    }
    out
}

fn matrices_latex(mats: &[SymbolicMatrix]) -> String {
    mats.iter().map(emit::latex_symbolic).collect::<Vec<_>>().join("\n")
}

/// Symbolic matrices, evaluated at `s` unless `--symbolic` was given.
fn shown(cli: &Cli, s: &NumericalSemigroup, mats: Vec<SymbolicMatrix>) -> Result<Vec<SymbolicMatrix>> {
    if cli.symbolic {
        return Ok(mats);
    }
    let b = kunz::b_matrix(s)?;
    Ok(mats.iter().map(|m| m.evaluate(&b)).collect())
}

fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Apery { gens } => {
            let s = semigroup(gens)?;
            match cli.format {
                Format::Json => document(json!({"m": s.m(), "apery": s.apery_set(), "med": s.is_med()})),
                Format::Text => Ok(format!(
                    "Ap({s}; {}) = {}\nmed: {}\n",
                    s.m(),
                    joined(s.apery_set(), " "),
                    s.is_med()
                )),
                _ => Err(unsupported(cli)),
            }
        }
        Command::Ideal { gens } => {
            let s = semigroup(gens)?;
            let bins = toric_generators(&s)?;
            let rendered: Vec<String> = bins.iter().map(|b| b.to_string()).collect();
            match cli.format {
                Format::Json => document(json!({"m": s.m(), "generators": rendered, "binomials": bins})),
                Format::Text => Ok(rendered.iter().map(|r| format!("{r}\n")).collect()),
                Format::Latex => Ok(format!("\\langle {} \\rangle\n", rendered.join(",\\ "))),
                Format::Dot => Err(unsupported(cli)),
            }
        }
        Command::Kunz { gens } => {
            let s = semigroup(gens)?;
            let b = kunz::b_matrix(&s)?;
            let sig = kunz::face_signature(&s)?;
            let poset = kunz::kunz_poset(&s)?;
            match cli.format {
                Format::Dot => Ok(emit::dot_poset(&poset)),
                Format::Json => {
                    let table: Vec<Vec<u64>> = (0..s.m()).map(|i| (0..s.m()).map(|j| b.get(i, j)).collect()).collect();
                    document(json!({
                        "m": s.m(),
                        "b": table,
                        "face": sig.to_string(),
                        "tight_pairs": sig.tight_pairs,
                        "covers": poset.covers(),
                    }))
                }
                Format::Text => {
                    let mut out = String::new();
                    for ((i, j), v) in b.upper() {
                        out.push_str(&format!("b_{i}{j} = {v}\n"));
                    }
                    out.push_str(&format!("face: {sig}\n"));
                    let covers: Vec<String> = poset.covers().iter().map(|(i, j)| format!("{i}<{j}")).collect();
                    out.push_str(&format!("covers: {}\n", covers.join(" ")));
                    Ok(out)
                }
                Format::Latex => Err(unsupported(cli)),
            }
        }
        Command::SameFace { first, second } => {
            let s = semigroup(&parse_list(first)?)?;
            let t = semigroup(&parse_list(second)?)?;
            let same = kunz::same_face(&s, &t)?;
            match cli.format {
                Format::Json => document(json!({
                    "same_face": same,
                    "faces": [kunz::face_signature(&s)?.to_string(), kunz::face_signature(&t)?.to_string()],
                })),
                Format::Text => Ok(format!("{same}\n")),
                _ => Err(unsupported(cli)),
            }
        }
        Command::Resolve { gens } => {
            let s = semigroup(gens)?;
            let steps = cli.steps.unwrap_or(3);
            match cli.format {
                Format::Json if !cli.symbolic => {
                    let c = apery_resolution::apery_complex(&s, steps)?;
                    document(json!({
                        "semigroup": s.minimal_generators(),
                        "ranks": c.ranks(),
                        "complex": c.is_complex()?,
                        "differentials": c.differentials,
                    }))
                }
                format => {
                    let mats = (1..=steps)
                        .map(|d| apery_resolution::symbolic_differential(s.m(), d))
                        .collect::<Result<Vec<_>>>()?;
                    let mats = shown(cli, &s, mats)?;
                    match format {
                        Format::Json => document(json!({"m": s.m(), "differentials": mats})),
                        Format::Latex => Ok(matrices_latex(&mats)),
                        Format::Text => Ok(matrices_text(&mats)),
                        Format::Dot => Err(unsupported(cli)),
                    }
                }
            }
        }
        Command::Betti { gens, method } => {
            let s = semigroup(gens)?;
            let steps = cli.steps.unwrap_or(4);
            let table: BettiTable = with_field!(cli.field, |f| match method {
                Method::Tensor => apery_resolution::betti_via_tensor(&f, &s, steps)?,
                Method::Oracle => {
                    let bound = cli.degree_bound.unwrap_or_else(|| oracle::default_bound_r(&s, steps));
                    oracle::betti_table(&f, &s, RingKind::R, ModuleKind::ResidueField, steps, bound)?.to_table()
                }
            });
            match cli.format {
                Format::Json => document(serde_json::to_value(&table).map_err(|e| Error::Document(e.to_string()))?),
                Format::Text => Ok(format!("{table}\n")),
                _ => Err(unsupported(cli)),
            }
        }
        Command::Homology { gens } => {
            let s = semigroup(gens)?;
            let steps = cli.steps.unwrap_or(2);
            let mut rows = Vec::new();
            for d in 0..=steps {
                let bound = cli
                    .degree_bound
                    .unwrap_or_else(|| apery_resolution::default_homology_bound(&s, d));
                let dims = with_field!(cli.field, |f| apery_resolution::truncated_homology(&f, &s, d, bound)?);
                let nonzero: Vec<(u64, usize)> = dims
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(n, &k)| (n as u64, k))
                    .collect();
                rows.push((d, bound, nonzero));
            }
            match cli.format {
                Format::Json => document(json!({
                    "homology": rows
                        .iter()
                        .map(|(d, bound, nz)| json!({"step": d, "degree_bound": bound, "nonzero": nz}))
                        .collect::<Vec<_>>(),
                })),
                Format::Text => Ok(rows
                    .iter()
                    .map(|(d, bound, nz)| {
                        let parts: Vec<String> = nz.iter().map(|(n, k)| format!("{k} in degree {n}")).collect();
                        let body = if parts.is_empty() { "0".to_string() } else { parts.join(", ") };
                        format!("H_{d} (degrees <= {bound}): {body}\n")
                    })
                    .collect()),
                _ => Err(unsupported(cli)),
            }
        }
        Command::M4 { gens } => {
            let s = semigroup(gens)?;
            let steps = cli.steps.unwrap_or(4);
            let class = m4_special::classify_face_m4(&s)?;
            let c = m4_special::minimal_resolution_m4(&s, steps + 1)?;
            let betti = with_field!(cli.field, |f| c.betti_via_tensor(&f)?);
            let mats = shown(cli, &s, m4_special::face_symbolic(&s, steps)?)?;
            match cli.format {
                Format::Json => document(json!({
                    "face": class.tag.name(),
                    "unit": class.unit,
                    "betti": betti.values,
                    "minimal": c.is_minimal(),
                    "complex": c.is_complex()?,
                    "differentials": mats,
                })),
                Format::Latex => Ok(matrices_latex(&mats)),
                Format::Text => Ok(format!(
                    "face: {} (u = {})\nbetti: {betti}\nminimal: {}\n{}",
                    class.tag,
                    class.unit,
                    c.is_minimal(),
                    matrices_text(&mats)
                )),
                Format::Dot => Err(unsupported(cli)),
            }
        }
        Command::Golod { gens, piq } => {
            let s = semigroup(gens)?;
            let steps = cli.steps.unwrap_or(10);
            let source = match piq {
                Some(text) => PiqSource::Supplied(TruncatedSeries::from_u64(&parse_list(text)?)),
                None => PiqSource::Auto,
            };
            let report = with_field!(cli.field, |f| series_golod::golod_check(&f, &s, steps, source)?);
            match cli.format {
                Format::Json => document(json!({
                    "lhs": report.lhs.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "rhs": report.rhs.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "piq": report.piq.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "equal_through": report.equal_through,
                    "golod": report.golod,
                })),
                Format::Text => Ok(format!("{report}\n")),
                _ => Err(unsupported(cli)),
            }
        }
        Command::Grm { gens } => {
            let s = semigroup(gens)?;
            let bound = cli.degree_bound.unwrap_or(6);
            let gr = assoc_graded::initial_ideal_truncated(&s, bound);
            let h = assoc_graded::gr_hilbert(&s, bound);
            let betti = match cli.steps {
                Some(i) => Some(with_field!(cli.field, |f| assoc_graded::gr_betti_k(&f, &s, i, bound)?)),
                None => None,
            };
            let quadratic = gr.minimal_generators.iter().all(|(d, _)| *d <= 2);
            match cli.format {
                Format::Json => document(json!({
                    "variables": gr.names,
                    "degree_bound": bound,
                    "generators": gr
                        .minimal_generators
                        .iter()
                        .map(|(d, p)| json!({"degree": d, "polynomial": gr.render(p), "terms": p}))
                        .collect::<Vec<_>>(),
                    "hilbert": h,
                    "quadratic": quadratic,
                    "betti": betti,
                })),
                Format::Text => {
                    let mut out = format!("variables: {}\nI* generators through degree {bound}:\n", gr.names.join(" "));
                    for (d, p) in &gr.minimal_generators {
                        out.push_str(&format!("  {d}: {}\n", gr.render(p)));
                    }
                    out.push_str(&format!("hilbert: {}\nquadratic through degree {bound}: {quadratic}\n", joined(&h, " ")));
                    if let Some(b) = betti {
                        for (i, row) in b.by_degree.iter().enumerate() {
                            let parts: Vec<String> = row.iter().map(|(j, v)| format!("{v} in degree {j}")).collect();
                            out.push_str(&format!("beta_{i}: {}\n", parts.join(", ")));
                        }
                    }
                    Ok(out)
                }
                _ => Err(unsupported(cli)),
            }
        }
        Command::Koszul { gens } => {
            let s = semigroup(gens)?;
            let steps = cli.steps.unwrap_or(3);
            let bound = cli.degree_bound.unwrap_or(6);
            let linear = with_field!(cli.field, |f| assoc_graded::koszul_up_to(&f, &s, steps, bound)?);
            match cli.format {
                Format::Json => document(json!({"steps": steps, "degree_bound": bound, "linear": linear})),
                Format::Text => Ok(format!(
                    "linear resolution through step {steps} and degree {bound}: {linear}\n"
                )),
                _ => Err(unsupported(cli)),
            }
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("NSRES_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second initialisation only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
