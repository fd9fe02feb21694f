//! `tropfactor`: JSON in, JSON (or CSV/SVG) out.
//!
//! Exit codes: 0 success, 1 mathematically negative answer (the error JSON
//! carries the witness), 2 malformed input.

mod plot;
mod selftest;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use tropfactor::coxeter::{self, RootType};
use tropfactor::io;
use tropfactor::minkowski;
use tropfactor::permutahedra;
use tropfactor::polyhedra::normal_fan;
use tropfactor::{division, Error, Polytope, Result, TropicalPolynomial};

#[derive(Parser)]
#[command(name = "tropfactor", version, about = "Exact tropical division and Minkowski factorization")]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Print a one-line summary to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// h with f = g ⊙ h, or the cell where the weights go negative.
    Divide { f: PathBuf, g: PathBuf },
    /// R with P = Q + R.
    Factor {
        p: PathBuf,
        q: Option<PathBuf>,
        /// List all maximal factorizations of P instead (capped by TROPFACTOR_MAX_CONES).
        #[arg(long, conflicts_with = "q")]
        maximal: bool,
    },
    /// Non-negative basis of balanced weights on the normal fan of P.
    Basis { p: PathBuf },
    /// Coefficients of Q in the basis of a fan (default: the normal fan of Q).
    Expand {
        q: PathBuf,
        /// Use the normal fan of this polytope; it must refine the normal fan of Q.
        #[arg(long)]
        fan_of: Option<PathBuf>,
    },
    /// Deformation cone of the n-permutahedron: facets, or membership of y.
    Defcone {
        #[arg(long)]
        n: usize,
        /// JSON object of subset keys, e.g. '{"12":2,"123":1,"-12":1}'.
        #[arg(long)]
        y: Option<String>,
    },
    /// The extended weight matrix W of the simplex faces.
    Wmatrix {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Coxeter fan of a root system.
    Coxeter {
        #[arg(long = "type")]
        kind: String,
        #[arg(long)]
        basis: bool,
        #[arg(long)]
        expand: Option<PathBuf>,
    },
    /// SVG of a 2-D tropical curve or of the normal fan of a polygon.
    Plot {
        input: PathBuf,
        /// Draw cells of the curve outside the variety of this polynomial dotted.
        #[arg(long)]
        divisor: Option<PathBuf>,
    },
    /// Run the worked examples and print a pass/fail table.
    Selftest,
}

enum Output {
    Json(Value),
    Text(String),
}

fn read(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    io::parse_json(&text)
}

fn read_polytope(path: &Path) -> Result<Polytope> {
    io::polytope_from_json(&read(path)?)
}

fn read_polynomial(path: &Path) -> Result<TropicalPolynomial> {
    io::polynomial_from_json(&read(path)?)
}

fn ints(v: &[BigInt]) -> Value {
    io::ints_to_json(v)
}

fn parse_y_arg(text: &str, n: usize) -> Result<permutahedra::SparseY> {
    let v = io::parse_json(text)?;
    let obj = v.as_object().ok_or_else(|| Error::Schema("y must be a JSON object".into()))?;
    let entries = obj
        .iter()
        .map(|(k, v)| {
            let x = match v {
                Value::Number(x) => x.as_i64().map(BigInt::from),
                Value::String(s) => s.parse().ok(),
                _ => None,
            }
            .ok_or_else(|| Error::Schema(format!("y[{k}] must be an integer")))?;
            Ok((k.clone(), x))
        })
        .collect::<Result<Vec<_>>>()?;
    permutahedra::parse_y(&entries, n)
}

fn run(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Divide { f, g } => {
            let h = division::divide(&read_polynomial(f)?, &read_polynomial(g)?)?;
            Ok(Output::Json(io::polynomial_to_json(&h)))
        }
        Command::Factor { p, q: Some(q), .. } => {
            let r = minkowski::factor(&read_polytope(p)?, &read_polytope(q)?)?;
            Ok(Output::Json(io::polytope_to_json(&r)))
        }
        Command::Factor { p, q: None, maximal } => {
            if !maximal {
                return Err(Error::Schema("factor needs Q or --maximal".into()));
            }
            let all = minkowski::maximal_factorizations(&read_polytope(p)?)?;
            let out: Vec<Value> = all
                .iter()
                .map(|fs| {
                    fs.iter()
                        .map(|(s, k)| json!({"summand": io::polytope_to_json(s), "multiplicity": k}))
                        .collect::<Vec<_>>()
                        .into()
                })
                .collect();
            Ok(Output::Json(json!({ "factorizations": out })))
        }
        Command::Basis { p } => {
            let p = read_polytope(p)?;
            let fan = normal_fan(&p)?;
            let b = minkowski::weight_cone_basis(&fan)?;
            let doc = io::WeightedFanDoc::from_complex(&fan, &fan.lattice_weights(), None);
            Ok(Output::Json(json!({
                "fan": doc.to_json(),
                "rank": b.rank(),
                "vectors": b.vectors.iter().map(|v| ints(v)).collect::<Vec<_>>(),
                "polytopes": b.polytopes.iter().map(io::polytope_to_json).collect::<Vec<_>>(),
            })))
        }
        Command::Expand { q, fan_of } => {
            let q = read_polytope(q)?;
            let base = match fan_of {
                Some(p) => read_polytope(p)?,
                None => q.clone(),
            };
            let b = minkowski::weight_cone_basis(&normal_fan(&base)?)?;
            let y = minkowski::expand_in_basis(&q, &b)?;
            Ok(Output::Json(json!({
                "coefficients": ints(&y),
                "basis": b.polytopes.iter().map(io::polytope_to_json).collect::<Vec<_>>(),
            })))
        }
        Command::Defcone { n, y: None } => {
            let facets = permutahedra::deformation_cone_facets(*n)?;
            let cols: Vec<String> = permutahedra::weight_subsets(*n).iter().map(|s| permutahedra::subset_label(s)).collect();
            Ok(Output::Json(json!({
                "n": n,
                "cols": cols,
                "facets": facets.iter().map(|f| ints(f)).collect::<Vec<_>>(),
            })))
        }
        Command::Defcone { n, y: Some(text) } => {
            let y = parse_y_arg(text, *n)?;
            let p = permutahedra::polymatroid_from_weights(&y, *n)?;
            Ok(Output::Json(json!({
                "inside": true,
                "y": ints(&permutahedra::dense_y(&y, *n)?),
                "polytope": io::polytope_to_json(&p),
            })))
        }
        Command::Wmatrix { n, format } => {
            let w = permutahedra::weight_matrix(*n)?;
            Ok(match format {
                Format::Csv => Output::Text(w.to_csv()),
                Format::Json => Output::Json(io::weight_matrix_to_json(&w)),
            })
        }
        Command::Coxeter { kind, basis, expand } => {
            let kind: RootType = kind.parse()?;
            let rs = coxeter::build_root_system(kind)?;
            let fan = coxeter::coxeter_fan(&rs)?;
            let mut out = json!({
                "type": kind.to_string(),
                "group_order": rs.group_order(),
                "labels": fan.labels,
                "points": fan.order.iter().map(|&c| io::vector_to_json(&fan.fan.cells[c].point)).collect::<Vec<_>>(),
                "rank": coxeter::phi_rank(&fan),
            });
            if *basis || expand.is_some() {
                let b = coxeter::phi_weight_cone_basis(&fan)?;
                out["basis"] = json!({
                    "vectors": b.vectors.iter().map(|v| io::vector_to_json(v)).collect::<Vec<_>>(),
                    "polytopes": b.polytopes.iter().map(io::polytope_to_json).collect::<Vec<_>>(),
                });
                if let Some(path) = expand {
                    let p = read_polytope(path)?;
                    out["weights"] = io::vector_to_json(&fan.phi_weights(&p)?);
                    out["coefficients"] = io::vector_to_json(&coxeter::phi_expand(&fan, &p, &b)?);
                }
            }
            Ok(Output::Json(out))
        }
        Command::Plot { input, divisor } => {
            let v = read(input)?;
            let g = divisor.as_deref().map(read_polynomial).transpose()?;
            let svg = if v.get("terms").is_some() {
                plot::curve(&io::polynomial_from_json(&v)?, g.as_ref())?
            } else {
                plot::polytope_fan(&io::polytope_from_json(&v)?)?
            };
            Ok(Output::Text(svg))
        }
        Command::Selftest => unreachable!("handled in main"),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Selftest = cli.command {
        let (table, ok) = selftest::run();
        if let Err(e) = emit(&cli.output, &table) {
            eprintln!("cannot write output: {e}");
            return ExitCode::from(2);
        }
        return ExitCode::from(if ok { 0 } else { 1 });
    }
    match run(&cli.command) {
        Ok(out) => {
            let text = match out {
                Output::Json(v) => io::to_pretty(&v),
                Output::Text(t) => t,
            };
            if cli.verbose {
                eprintln!("ok: {} bytes", text.len());
            }
            match emit(&cli.output, &text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("cannot write output: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(e) => {
            print!("{}", io::to_pretty(&io::error_to_json(&e)));
            if cli.verbose {
                eprintln!("{e}");
            }
            ExitCode::from(if e.is_negative_result() { 1 } else { 2 })
        }
    }
}
