//! `ribbon` — exact invariants and ribbon-disc counts for genus-1 knots.
//!
//! Inputs are Seifert matrices as JSON arrays of integer arrays
//! (`"[[3,2],[1,0]]"`), braid words as whitespace-separated signed generator
//! indices (`"-1 -1 -1"`), or `@path` referring to a file holding either.
//! Exit codes: 0 success, 1 invalid input, 2 certification failure.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;

use ribbon_core::{
    alexander_polynomial, bl_pair, blanchfield_matrix, braid_to_seifert, classify::classify_kn,
    classify::parse_derivative_option, classify_knot, genus1_metabolizers, kn_seifert,
    lagrangian_set, metabolizer_image, module_type, rho0, signature_function, BraidWord,
    DerivativeSpec, Error, IntMatrix, Matrix, SeifertMatrix, MAX_PRECISION_BITS,
};

#[derive(Parser)]
#[command(name = "ribbon", version, about = "Alexander modules, Blanchfield pairings, Levine-Tristram signatures and homotopy ribbon disc counts for genus-1 knots")]
struct Cli {
    /// Starting precision (fractional bits) for certified numerics.
    #[arg(long, global = true, default_value_t = 64)]
    precision_bits: u32,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Alexander polynomial of a Seifert matrix or braid closure.
    Alex {
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// Isomorphism type of the Alexander module.
    ModuleType { matrix: String },
    /// The lagrangians of the Blanchfield pairing, with generators.
    Lagrangians { matrix: String },
    /// The Blanchfield pairing matrix.
    Blanchfield { matrix: String },
    /// The Levine-Tristram signature function.
    Signature {
        #[arg(allow_hyphen_values = true)]
        input: String,
        /// Write plot-ready JSON (arcs and jump enclosures) to a file.
        #[arg(long)]
        plot_json: Option<std::path::PathBuf>,
    },
    /// Integral of the signature function over the circle.
    Rho0 {
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// Count homotopy ribbon discs of a genus-1 knot.
    Classify {
        /// Seifert matrix (omit when using --kn).
        matrix: Option<String>,
        /// Derivative data per lagrangian: P1=unknot | P2=braid:"-1 -1 -1" | P2=unknown.
        #[arg(long = "derivative")]
        derivatives: Vec<String>,
        /// Use the built-in twist-family member K_n with its known derivatives.
        #[arg(long)]
        kn: Option<i64>,
    },
    /// Print the Seifert matrix of the twist-family member K_n.
    Kn { n: i64 },
}

enum Input {
    Matrix(SeifertMatrix),
    Braid(BraidWord),
}

fn parse_input(text: &str) -> Result<Input, Error> {
    let body = if let Some(path) = text.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("reading {path}: {e}")))?
    } else {
        text.to_string()
    };
    let trimmed = body.trim();
    if trimmed.starts_with('[') {
        let rows: Vec<Vec<i64>> = serde_json::from_str(trimmed)
            .map_err(|e| Error::Parse(format!("Seifert matrix JSON: {e}")))?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("matrix rows have unequal lengths".into()));
        }
        let m = Matrix::from_fn(n, n, |i, j| BigInt::from(rows[i][j]));
        Ok(Input::Matrix(SeifertMatrix::new(m)?))
    } else {
        Ok(Input::Braid(BraidWord::parse(trimmed, None)?))
    }
}

fn seifert_of(input: &Input) -> Result<SeifertMatrix, Error> {
    match input {
        Input::Matrix(m) => Ok(m.clone()),
        Input::Braid(w) => braid_to_seifert(w),
    }
}

fn matrix_only(text: &str) -> Result<SeifertMatrix, Error> {
    match parse_input(text)? {
        Input::Matrix(m) => Ok(m),
        Input::Braid(_) => Err(Error::Parse("this subcommand takes a Seifert matrix".into())),
    }
}

fn matrix_json(m: &IntMatrix) -> serde_json::Value {
    serde_json::Value::Array(
        (0..m.rows())
            .map(|i| {
                serde_json::Value::Array(
                    (0..m.cols()).map(|j| serde_json::json!(m[(i, j)].to_string())).collect(),
                )
            })
            .collect(),
    )
}

fn run(cli: Cli) -> Result<(), Error> {
    if cli.precision_bits == 0 || cli.precision_bits > MAX_PRECISION_BITS {
        return Err(Error::Parse(format!(
            "--precision-bits must be in 1..={MAX_PRECISION_BITS}"
        )));
    }
    let start_bits = cli.precision_bits;
    let max_bits = MAX_PRECISION_BITS;
    match cli.command {
        Command::Alex { input } => {
            let v = seifert_of(&parse_input(&input)?)?;
            let delta = alexander_polynomial(&v);
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "alexander_polynomial": delta.to_text(),
                        "canonical": delta.unit_canonical().to_text(),
                    })
                );
            } else {
                println!("{}", delta.to_text());
            }
        }
        Command::ModuleType { matrix } => {
            let v = matrix_only(&matrix)?;
            let facts = module_type(&v)?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "alexander_polynomial": facts.delta.to_text(),
                        "kind": facts.kind,
                        "cyclic_generator": facts.cyclic_generator().map(|g| g.to_string()),
                        "split_generators": facts.split_generators().map(|(a, b)| [a.to_string(), b.to_string()]),
                    })
                );
            } else {
                println!("Alexander polynomial: {}", facts.delta.to_text());
                println!("module: {}", facts.kind);
                if let Some(g) = facts.cyclic_generator() {
                    println!("cyclic generator: {g}");
                }
                if let Some((a, b)) = facts.split_generators() {
                    println!("summand generators: {a} (killed by t-2), {b} (killed by 2t-1)");
                }
            }
        }
        Command::Lagrangians { matrix } => {
            let v = matrix_only(&matrix)?;
            let facts = module_type(&v)?;
            let lags = lagrangian_set(&facts);
            let mets = if v.size() == 2 { genus1_metabolizers(&v) } else { Vec::new() };
            let mut rows = Vec::new();
            for l in &lags {
                let met = mets
                    .iter()
                    .find(|m| {
                        metabolizer_image(&v, m, &facts)
                            .map(|x| x.factor == l.factor)
                            .unwrap_or(false)
                    })
                    .map(|m| m.to_string());
                rows.push((l.factor.label(), l.factor.factor_name(), l.generator.to_string(), met));
            }
            if cli.json {
                let arr: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|(label, factor, gen, met)| {
                        serde_json::json!({
                            "lagrangian": label, "factor": factor,
                            "generator": gen, "metabolizer": met,
                        })
                    })
                    .collect();
                println!("{}", serde_json::json!({ "count": rows.len(), "lagrangians": arr }));
            } else if rows.is_empty() {
                println!("no lagrangians: module is not of the classified form");
            } else {
                for (label, factor, gen, met) in rows {
                    match met {
                        Some(m) => println!("{label} = {factor} side: generator {gen}, metabolizer {m}"),
                        None => println!("{label} = {factor} side: generator {gen}"),
                    }
                }
            }
        }
        Command::Blanchfield { matrix } => {
            let v = matrix_only(&matrix)?;
            let b = blanchfield_matrix(&v);
            let n = b.size();
            if cli.json {
                let rows: Vec<Vec<String>> = (0..n)
                    .map(|i| (0..n).map(|j| b.entry(i, j).to_string()).collect())
                    .collect();
                println!(
                    "{}",
                    serde_json::json!({ "size": n, "hermitian": b.is_hermitian(), "entries": rows })
                );
            } else {
                if n == 0 {
                    println!("empty form (unknot)");
                }
                for i in 0..n {
                    for j in 0..n {
                        println!("B[{i}][{j}] = {}", b.entry(i, j));
                    }
                }
                // Pairing of the cyclic generator with itself, when available.
                if let Ok(facts) = module_type(&v) {
                    if let Some(g) = facts.cyclic_generator() {
                        println!("self-pairing of cyclic generator: {}", bl_pair(&b, g, g));
                    }
                }
            }
        }
        Command::Signature { input, plot_json } => {
            let v = seifert_of(&parse_input(&input)?)?;
            let sf = signature_function(&v, start_bits, max_bits)?;
            let plot = sf.to_plot_json();
            if let Some(path) = plot_json {
                std::fs::write(&path, serde_json::to_string_pretty(&plot).unwrap())
                    .map_err(|e| Error::Parse(format!("writing {}: {e}", path.display())))?;
            }
            if cli.json {
                println!("{plot}");
            } else {
                let jumps = sf.jumps();
                let values = sf.arc_values();
                if jumps.is_empty() {
                    println!("constant signature {}", values[0]);
                } else {
                    println!("{} jumps; arc values {:?}", jumps.len(), values);
                    for j in &jumps {
                        println!("jump in ({}, {}), multiplicity {}", j.s_lo, j.s_hi, j.multiplicity);
                    }
                }
            }
        }
        Command::Rho0 { input } => {
            let v = seifert_of(&parse_input(&input)?)?;
            let r = rho0(&v, start_bits, max_bits)?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "rho0_lo": r.enclosure.lo.to_string(),
                        "rho0_hi": r.enclosure.hi.to_string(),
                        "rho0_lo_float": float_of(&r.enclosure.lo),
                        "rho0_hi_float": float_of(&r.enclosure.hi),
                        "sign": r.sign,
                    })
                );
            } else {
                println!("{r}");
            }
        }
        Command::Classify { matrix, derivatives, kn } => {
            let report = match (matrix, kn) {
                (None, Some(n)) => {
                    if !derivatives.is_empty() {
                        return Err(Error::Parse("--kn carries built-in derivative data; drop --derivative".into()));
                    }
                    classify_kn(n, start_bits, max_bits)?
                }
                (Some(text), None) => {
                    let v = matrix_only(&text)?;
                    let mut spec = DerivativeSpec::unknown();
                    for d in &derivatives {
                        parse_derivative_option(&mut spec, d)?;
                    }
                    classify_knot(&v, &spec, start_bits, max_bits)?
                }
                _ => return Err(Error::Parse("give exactly one of <matrix> or --kn <n>".into())),
            };
            if cli.json {
                println!("{}", report.render_json());
            } else {
                print!("{}", report.render_text());
            }
        }
        Command::Kn { n } => {
            let v = kn_seifert(n);
            if cli.json {
                println!("{}", serde_json::json!({ "n": n, "seifert_matrix": matrix_json(v.matrix()) }));
            } else {
                println!("[[{}, 2], [1, 0]]", n);
            }
        }
    }
    Ok(())
}

fn float_of(r: &BigRational) -> f64 {
    ribbon_core::signature::rat_to_f64(r)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::CannotCertify | Error::SignUndetermined(_, _) | Error::AtJumpPoint => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}
