use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lcs_cohomology::budget::Budget;
use lcs_cohomology::extensions::{
    brace_to_lcs_cocycle, build_brace_extension, build_extension, check_cocycle, classify_extensions,
    extensions_equivalent, CocycleFile, ExtensionFile, Flavor, TwoCocycle,
};
use lcs_cohomology::full::{
    bicomplex_identity_check, dh_matrix, dv_matrix, full_cohomology, row_column_alignment, shuffle_constraint_matrix,
};
use lcs_cohomology::reduced::{cs_cohomology, reduced_cohomology, reduced_homology};
use lcs_cohomology::structure::{builtin_structure, validate_brace, validate_lcs, StructureFile, StructureKind};
use lcs_cohomology::verify::{verify_paper, VerifyOptions};
use lcs_cohomology::{Error, Execution, FiniteAbelianGroup, IntegerMatrix, LinearCycleSet, Structure};

/// Exact (co)homology and central extensions of finite linear cycle sets and braces.
///
/// Structure arguments are JSON files or `builtin:NAME` with NAME one of
/// trivial(n), z4-lcs, z4-brace.
#[derive(Parser, Debug)]
#[command(name = "lcscohom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Basis-size budget; overrides LCSCOHOM_BUDGET.
    #[arg(long, global = true)]
    budget: Option<u128>,

    /// Write the JSON result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Print a plain-text summary instead of JSON.
    #[arg(long, global = true)]
    human: bool,

    /// Run every search on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Theory {
    Reduced,
    Full,
    Cs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a structure file against the axioms.
    Validate { file: String },
    /// Convert between the brace and the linear cycle set presentation.
    Convert { file: String },
    /// Invariant factors of a cohomology group.
    Cohomology {
        file: String,
        #[arg(long, value_enum, default_value = "reduced")]
        theory: Theory,
        #[arg(long)]
        coeff: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        normalized: bool,
    },
    /// Invariant factors of a reduced homology group.
    Homology {
        file: String,
        #[arg(long)]
        coeff: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        normalized: bool,
    },
    /// Check a 2-cocycle file; brace inputs are translated to the cycle set first.
    CocycleCheck {
        file: String,
        #[arg(long)]
        cocycle: PathBuf,
        /// reduced (cycle-type) or full (general); inferred from the file by default.
        #[arg(long)]
        flavor: Option<String>,
    },
    /// Build the extension of a 2-cocycle.
    Extend {
        file: String,
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long)]
        flavor: Option<String>,
    },
    /// Decide whether two extension files are equivalent.
    Equivalent { first: PathBuf, second: PathBuf },
    /// One extension per second cohomology class.
    Classify {
        file: String,
        #[arg(long)]
        coeff: String,
        /// cycle-type (reduced) or general (full).
        #[arg(long, default_value = "cycle-type")]
        flavor: String,
    },
    /// Check the bicomplex identities up to a total degree.
    BicomplexCheck {
        file: String,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Dump the matrices of one block, `i,j`.
        #[arg(long)]
        bidegree: Option<String>,
    },
    /// Reproduce the worked examples and report pass/fail per claim.
    VerifyPaper {
        /// Machine-readable report (the default unless --human is given).
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Mutate one entry of the ℤ/4 dot table first.
        #[arg(long)]
        corrupt: bool,
        /// Random samples for the full-flavor sweep.
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
}

/// Result of one command: JSON payload, plain-text rendering and whether the
/// verification it performs succeeded.
struct Outcome {
    json: Value,
    human: String,
    ok: bool,
}

impl Outcome {
    fn ok(json: Value, human: String) -> Self {
        Outcome { json, human, ok: true }
    }
}

fn load(source: &str) -> Result<Structure, Error> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return builtin_structure(name);
    }
    let text = std::fs::read_to_string(Path::new(source))?;
    StructureFile::from_json(&text)?.into_structure_exact()
}

fn read_json_file(path: &Path) -> Result<String, Error> {
    Ok(std::fs::read_to_string(path)?)
}

fn load_cocycle(path: &Path, flavor: Option<&str>) -> Result<(FiniteAbelianGroup, TwoCocycle), Error> {
    let (coeffs, mut c) = CocycleFile::from_json(&read_json_file(path)?)?.parts()?;
    match flavor.map(str::parse::<Flavor>).transpose()? {
        Some(Flavor::Reduced) if c.g.is_some() => {
            return Err(Error::Parameter("a reduced cocycle file must not contain `g`".into()))
        }
        Some(Flavor::Full) if c.g.is_none() => c.g = Some(c.g_or_zero()),
        _ => {}
    }
    Ok((coeffs, c))
}

fn invariants_text(inv: &[u64]) -> String {
    if inv.is_empty() {
        return "0".into();
    }
    inv.iter().map(|m| format!("Z/{m}")).collect::<Vec<_>>().join(" + ")
}

fn matrix_json(m: &IntegerMatrix) -> Value {
    match m.to_i64_rows() {
        Some(rows) => json!(rows),
        None => json!(null),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let mut budget = Budget::from_env()?;
    if let Some(b) = cli.budget {
        budget = budget.with_basis_limit(b);
    }
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match &cli.command {
        Command::Validate { file } => {
            let f = match file.strip_prefix("builtin:") {
                Some(name) => StructureFile::from_structure(&builtin_structure(name)?),
                None => StructureFile::from_json(&read_json_file(Path::new(file))?)?,
            };
            let (a, b) = f.tables()?;
            let report = match f.kind {
                StructureKind::Lcs => validate_lcs(&a, &b)?,
                StructureKind::Brace => validate_brace(&a, &b)?,
            };
            let (kind, order) = (f.kind, f.order);
            Ok(Outcome {
                human: format!("{kind:?} of order {order}: {report}"),
                ok: report.is_valid(),
                json: json!({"kind": kind, "order": order, "valid": report.valid, "violations": report.violations}),
            })
        }
        Command::Convert { file } => {
            let converted = load(file)?.converted();
            let f = StructureFile::from_structure(&converted);
            Ok(Outcome::ok(serde_json::to_value(&f)?, format!("{:?} of order {}", f.kind, f.order)))
        }
        Command::Cohomology {
            file,
            theory,
            coeff,
            degree,
            normalized,
        } => {
            let lcs = load(file)?.to_lcs();
            let coeffs: FiniteAbelianGroup = coeff.parse()?;
            let inv = match theory {
                Theory::Reduced => reduced_cohomology(&lcs, &coeffs, *degree, *normalized, &budget)?,
                Theory::Full => full_cohomology(&lcs, &coeffs, *degree, *normalized, &budget)?,
                Theory::Cs => {
                    if *normalized {
                        return Err(Error::Parameter("the cycle-set complex has no normalized variant here".into()));
                    }
                    cs_cohomology(&lcs, &coeffs, *degree, &budget)?
                }
            };
            let name = format!("{theory:?}").to_lowercase();
            Ok(Outcome::ok(
                json!({"theory": name, "coeff": coeffs.to_string(), "degree": degree, "normalized": normalized, "invariants": inv}),
                format!("H^{degree} ({name}{}) = {}", if *normalized { ", normalized" } else { "" }, invariants_text(&inv)),
            ))
        }
        Command::Homology {
            file,
            coeff,
            degree,
            normalized,
        } => {
            let lcs = load(file)?.to_lcs();
            let coeffs: FiniteAbelianGroup = coeff.parse()?;
            let inv = reduced_homology(&lcs, &coeffs, *degree, *normalized, &budget)?;
            Ok(Outcome::ok(
                json!({"coeff": coeffs.to_string(), "degree": degree, "normalized": normalized, "invariants": inv}),
                format!("H_{degree} = {}", invariants_text(&inv)),
            ))
        }
        Command::CocycleCheck { file, cocycle, flavor } => {
            let structure = load(file)?;
            let (coeffs, c) = load_cocycle(cocycle, flavor.as_deref())?;
            let (lcs, c, translated) = lcs_view(&structure, &coeffs, c)?;
            let report = check_cocycle(&lcs, &coeffs, &c)?;
            let mut v = json!({"flavor": c.flavor(), "valid": report.valid, "normalized": report.normalized, "violations": report.violations});
            if translated {
                v["translated_f"] = serde_json::to_value(&c.f)?;
            }
            let label = if translated { "translated cocycle f̄" } else { "cocycle" };
            Ok(Outcome {
                human: format!("{label}: {report}"),
                ok: report.valid,
                json: v,
            })
        }
        Command::Extend { file, cocycle, flavor } => {
            let structure = load(file)?;
            let (coeffs, c) = load_cocycle(cocycle, flavor.as_deref())?;
            let original = c.clone();
            let (lcs, c, translated) = lcs_view(&structure, &coeffs, c)?;
            let report = check_cocycle(&lcs, &coeffs, &c)?;
            if !report.valid {
                let name = if translated { "translated cocycle f̄" } else { "cocycle" };
                return Ok(Outcome {
                    human: format!("{name} fails: {report}"),
                    ok: false,
                    json: json!({"valid": false, "violations": report.violations}),
                });
            }
            let triple = build_extension(&coeffs, &lcs, &c)?;
            let mut file_out = triple.to_file();
            if let Structure::Brace(b) = &structure {
                let brace = build_brace_extension(&coeffs, b, &original.f, original.g.as_ref())?;
                file_out.base = StructureFile::from_structure(&structure);
                file_out.total = StructureFile::from_structure(&Structure::Brace(brace));
            }
            Ok(Outcome::ok(
                serde_json::to_value(&file_out)?,
                format!("extension of order {} ({})", triple.total.order(), c.flavor()),
            ))
        }
        Command::Equivalent { first, second } => {
            let e1 = ExtensionFile::from_json(&read_json_file(first)?)?.into_triple()?;
            let e2 = ExtensionFile::from_json(&read_json_file(second)?)?.into_triple()?;
            let v = extensions_equivalent(&e1, &e2, &budget, exec)?;
            Ok(Outcome {
                human: if v.equivalent {
                    format!("equivalent (θ = {:?})", v.theta.as_ref().map(|t| &t.values).unwrap())
                } else {
                    "not equivalent".into()
                },
                ok: v.equivalent,
                json: serde_json::to_value(&v)?,
            })
        }
        Command::Classify { file, coeff, flavor } => {
            let lcs = load(file)?.to_lcs();
            let coeffs: FiniteAbelianGroup = coeff.parse()?;
            let flavor: Flavor = flavor.parse()?;
            let classes = classify_extensions(&lcs, &coeffs, flavor, &budget)?;
            let list: Vec<Value> = classes.iter().map(|c| c.to_json_value()).collect();
            Ok(Outcome::ok(
                Value::Array(list),
                format!("{} classes of {flavor} extensions by {coeffs}", classes.len()),
            ))
        }
        Command::BicomplexCheck {
            file,
            max_degree,
            bidegree,
        } => {
            let lcs = load(file)?.to_lcs();
            if let Some(spec) = bidegree {
                return dump_block(&lcs, spec);
            }
            let mut checks = bicomplex_identity_check(&lcs, *max_degree, &budget)?;
            checks.extend(row_column_alignment(&lcs, *max_degree)?);
            let failed: Vec<String> = checks
                .iter()
                .filter(|c| !c.holds)
                .map(|c| format!("{} at {}", c.name, c.position))
                .collect();
            Ok(Outcome {
                human: if failed.is_empty() {
                    format!("{} identities hold", checks.len())
                } else {
                    failed.join("\n")
                },
                ok: failed.is_empty(),
                json: json!({"max_degree": max_degree, "all_hold": failed.is_empty(), "checks": checks}),
            })
        }
        Command::VerifyPaper {
            json: _,
            seed,
            corrupt,
            samples,
        } => {
            let opts = VerifyOptions {
                seed: *seed,
                corrupt: *corrupt,
                samples: *samples,
                budget,
                exec,
            };
            let report = verify_paper(&opts)?;
            let mut human: Vec<String> = report
                .claims
                .iter()
                .map(|c| {
                    let tag = if c.passed { "PASS" } else { "FAIL" };
                    format!("[{tag}] {}: {} ({}; {} ms)", c.id, c.statement, c.detail, c.elapsed_ms)
                })
                .collect();
            if !report.z4_validation.is_valid() {
                human.insert(0, format!("ℤ/4 tables invalid:\n{}", report.z4_validation));
            }
            Ok(Outcome {
                ok: report.passed,
                human: human.join("\n"),
                json: serde_json::to_value(&report)?,
            })
        }
    }
}

/// The cycle-set view of a structure and cocycle; brace cocycles are
/// translated to `f̄(a,b) = −f(a, a·b) + g(a,b)`.
fn lcs_view(
    structure: &Structure,
    coeffs: &FiniteAbelianGroup,
    c: TwoCocycle,
) -> Result<(LinearCycleSet, TwoCocycle, bool), Error> {
    match structure {
        Structure::Lcs(l) => Ok((l.clone(), c, false)),
        Structure::Brace(b) => {
            let lcs = structure.to_lcs();
            c.check_shape(&lcs, coeffs)?;
            let fbar = brace_to_lcs_cocycle(b, coeffs, &c.f, c.g.as_ref());
            Ok((lcs, TwoCocycle { f: fbar, g: c.g }, true))
        }
    }
}

fn dump_block(lcs: &LinearCycleSet, spec: &str) -> Result<Outcome, Error> {
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::Parameter(format!("bidegree must be `i,j`, got `{spec}`")))
    };
    let (i, j) = match spec.split_once(',') {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => return Err(Error::Parameter(format!("bidegree must be `i,j`, got `{spec}`"))),
    };
    if j == 0 {
        return Err(Error::Degree("the vertical degree j starts at 1".into()));
    }
    let mut v = json!({"bidegree": [i, j]});
    if i >= 1 {
        v["dh"] = matrix_json(&dh_matrix(lcs, i, j)?);
    }
    if j >= 2 {
        v["dv"] = matrix_json(&dv_matrix(lcs, i, j)?);
    }
    v["shuffle_constraints"] = matrix_json(&shuffle_constraint_matrix(lcs, i, j, false)?);
    Ok(Outcome::ok(v, format!("matrices of block ({i},{j})")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = if cli.human {
                out.human
            } else {
                serde_json::to_string_pretty(&out.json).expect("json values serialize")
            };
            let written = match &cli.output {
                Some(path) => std::fs::write(path, text + "\n"),
                None => writeln!(std::io::stdout(), "{text}"),
            };
            if let Err(e) = written.or_else(|e| if e.kind() == std::io::ErrorKind::BrokenPipe { Ok(()) } else { Err(e) }) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
