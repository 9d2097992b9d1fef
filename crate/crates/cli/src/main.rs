mod report;

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use schubert::linalg::MatrixJson;
use schubert::quad;
use schubert::rootsys::parse_rational;
use schubert::verify::{self, Suite, Sweep};
use schubert::{Cell, ReducedWord, Root, RootSystem, Weight};

use report::ReportDocument;

#[derive(Parser)]
#[command(name = "schubert", version, about = "Coordinates, densities and Kostant forms on Schubert cells of SL(n)")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Positive roots, Gram matrix and rho of A_rank.
    Roots {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8))]
        rank: u32,
    },
    /// Root sequences and densities of one cell, optionally evaluated at a point.
    Cell {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8))]
        rank: u32,
        /// Comma-separated 1-based simple-root indices; "" for the identity cell.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Comma-separated complex coordinates, e.g. "0.5+1i,2,-i".
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Run one property suite on a cell.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8))]
        rank: u32,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, value_parser = ["iwasawa", "equivariance", "identities", "kostant", "integrals"])]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        points: usize,
        /// Override every tolerance of the suite.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// The c-function of a cell by the product formula and by quadrature.
    Cfunction {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8))]
        rank: u32,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Coefficients of i*lambda on the simple roots, e.g. "2,2" or "1+3i,2".
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Print the JSON schema of the report documents.
    Schema,
}

/// Bad input: exit code 2.
struct Usage(String);

impl From<schubert::Error> for Usage {
    fn from(e: schubert::Error) -> Self {
        Usage(e.to_string())
    }
}

fn system(rank: u32) -> Result<RootSystem, Usage> {
    Ok(RootSystem::type_a(rank as usize + 1)?)
}

fn parse_word(sys: &RootSystem, s: &str) -> Result<ReducedWord, Usage> {
    let letters = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Usage(format!("not a simple-root index: {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ReducedWord::from_one_based(sys, &letters)?)
}

fn parse_complex(t: &str) -> Result<Complex64, Usage> {
    let t = t.trim();
    let t = match t {
        "i" | "+i" => "1i",
        "-i" => "-1i",
        _ => t,
    };
    Complex64::from_str(&t.replace(' ', "")).map_err(|_| Usage(format!("not a complex number: {t:?}")))
}

fn parse_complex_list(s: &str) -> Result<Vec<Complex64>, Usage> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(parse_complex).collect()
}

fn c2(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn roots_json(sys: &RootSystem, roots: &[Root]) -> Value {
    roots
        .iter()
        .map(|r| {
            let (a, b) = sys.matrix_position(r).expect("positive root");
            json!({ "coefficients": r.0, "entry": [a + 1, b + 1] })
        })
        .collect()
}

fn cmd_roots(rank: u32) -> Result<ReportDocument, Usage> {
    let sys = system(rank)?;
    let rec = sys.to_record();
    let results = json!({
        "positive_roots": roots_json(&sys, sys.positive_roots()),
        "gram": rec.gram,
        "rho": sys.rho().0.iter().map(schubert::rootsys::format_rational).collect::<Vec<_>>(),
    });
    Ok(ReportDocument::new("roots", json!({ "rank": rank }), results))
}

fn print_roots(sys: &RootSystem) {
    println!("A_{} (sl({}))", sys.rank(), sys.matrix_size());
    println!("positive roots:");
    for r in sys.positive_roots() {
        let (a, b) = sys.matrix_position(r).expect("positive root");
        println!("  {r}  height {}  entry ({},{})", r.height(), a + 1, b + 1);
    }
    println!("gram:");
    for row in sys.gram() {
        let cells: Vec<String> = row.iter().map(schubert::rootsys::format_rational).collect();
        println!("  {}", cells.join("  "));
    }
    println!("rho = {}", sys.rho());
}

fn cmd_cell(rank: u32, word: &str, at: Option<&str>, human: bool) -> Result<ReportDocument, Usage> {
    let sys = system(rank)?;
    let w = parse_word(&sys, word)?;
    let cell = Cell::new(&sys, &w)?;
    let densities = [
        ("dn", cell.haar_density()),
        ("dn1", cell.haar_density_dn1()),
        ("liouville", cell.liouville_density()),
        ("kostant", cell.kostant_density()),
    ];
    let mut results = json!({
        "length": cell.len(),
        "alphas": roots_json(&sys, cell.alphas()),
        "betas": roots_json(&sys, cell.betas()),
        "densities": densities.iter().map(|(k, d)| (k.to_string(), serde_json::to_value(d.to_record()).unwrap())).collect::<serde_json::Map<_, _>>(),
        "schubert_integral": quad::schubert_closed_form(&cell).to_string(),
    });
    if human {
        println!("cell {} in A_{}, length {}", w, sys.rank(), cell.len());
        for (j, (a, b)) in cell.alphas().iter().zip(cell.betas()).enumerate() {
            println!("  j={}  alpha {a}  beta {b}", j + 1);
        }
        for (k, d) in &densities {
            println!("{k:>10}: {d}");
        }
        println!("integral of s^w: {}", quad::schubert_closed_form(&cell));
    }
    if let Some(at) = at {
        let z = parse_complex_list(at)?;
        let n = cell.coordinate_map(&z)?;
        let aw = cell.a_w_closed(&z)?;
        let point = json!({
            "z": z.iter().map(|c| c2(*c)).collect::<Vec<_>>(),
            "n": MatrixJson::from(&n),
            "log_a_w": aw,
            "log_a_w_matrix": cell.a_w_numeric(&n)?,
            "moment_map": cell.moment_map(&z)?,
            "omega": cell.omega_w(&z)?.coeffs.iter().map(|c| c2(*c)).collect::<Vec<_>>(),
            "modular_hamiltonian": cell.modular_hamiltonian(&z)?,
            "density_values": densities.iter().map(|(k, d)| Ok((k.to_string(), json!(c2(d.evaluate(&z)?))))).collect::<Result<serde_json::Map<_, _>, schubert::Error>>()?,
        });
        if human {
            println!("at z = {at}:");
            println!("  log a_w = {:?}", aw.0);
            println!("  phi_w   = {:?}", cell.moment_map(&z)?.0);
            for (k, d) in &densities {
                println!("  {k:>10} = {}", d.evaluate(&z)?);
            }
        }
        results["point"] = point;
    }
    Ok(ReportDocument::new(
        "cell",
        json!({ "rank": rank, "word": w.one_based(), "at": at }),
        results,
    ))
}

fn cmd_verify(rank: u32, word: &str, suite: &str, sweep: Sweep) -> Result<ReportDocument, Usage> {
    let sys = system(rank)?;
    let w = parse_word(&sys, word)?;
    let cell = Cell::new(&sys, &w)?;
    let s = Suite::from_str(suite)?;
    let checks = match verify::run(s, &cell, &sweep) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("suite aborted: {e}");
            vec![verify::Check::boolean(format!("{suite} suite ran: {e}"), false)]
        }
    };
    let mut doc = ReportDocument::new(
        "verify",
        json!({ "rank": rank, "word": w.one_based(), "suite": suite, "points": sweep.points, "tol": sweep.tol }),
        json!({ "passed": checks.iter().all(|c| c.passed) }),
    );
    doc.checks = checks;
    doc.seed = Some(sweep.seed);
    Ok(doc)
}

fn cmd_cfunction(rank: u32, word: &str, lambda: &str) -> Result<ReportDocument, Usage> {
    let sys = system(rank)?;
    let w = parse_word(&sys, word)?;
    let cell = Cell::new(&sys, &w)?;
    let il = parse_complex_list(lambda)?;
    let c = quad::c_function(&cell, &il)?;
    // exact product formula when every coefficient is a real rational
    let exact = lambda
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>, _>>()
        .ok()
        .filter(|v| v.len() == sys.rank())
        .map(|v| quad::c_function_exact(&cell, &Weight(v)))
        .transpose()?;
    let dev = c.relative_deviation();
    let results = json!({
        "closed": c2(c.closed.value),
        "quadrature": c2(c.quadrature.value),
        "quadrature_error": c.quadrature.error_estimate,
        "relative_deviation": dev,
        "exact": exact.map(|e| e.to_string()),
    });
    let mut doc = ReportDocument::new("cfunction", json!({ "rank": rank, "word": w.one_based(), "lambda": lambda }), results);
    doc.checks.push(verify::Check::new("closed form vs quadrature", dev, 1e-6));
    Ok(doc)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let human = !cli.json;
    let doc = match &cli.command {
        Command::Schema => {
            print!("{}", report::SCHEMA);
            return ExitCode::SUCCESS;
        }
        Command::Roots { rank } => cmd_roots(*rank).inspect(|_| {
            if human {
                print_roots(&RootSystem::type_a(*rank as usize + 1).expect("checked"));
            }
        }),
        Command::Cell { rank, word, at } => cmd_cell(*rank, word, at.as_deref(), human),
        Command::Verify {
            rank,
            word,
            suite,
            seed,
            points,
            tol,
        } => cmd_verify(
            *rank,
            word,
            suite,
            Sweep {
                seed: *seed,
                points: *points,
                tol: *tol,
                ..Sweep::default()
            },
        )
        .inspect(|d| {
            if human {
                println!("suite {suite} on {} (seed {seed}, {points} points)", d.inputs["word"]);
            }
        }),
        Command::Cfunction { rank, word, lambda } => cmd_cfunction(*rank, word, lambda).inspect(|d| {
            if human {
                let r = &d.results;
                println!("closed form: {} {}", r["closed"][0], r["closed"][1]);
                println!("quadrature:  {} {}", r["quadrature"][0], r["quadrature"][1]);
                if let Some(e) = r["exact"].as_str() {
                    println!("exact:       {e}");
                }
            }
        }),
    };
    match doc {
        Ok(doc) => {
            if human {
                doc.print_checks();
            } else {
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            }
            if doc.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
