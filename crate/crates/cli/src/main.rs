//! `algeq` — exact equivalence testing for finite-dimensional algebras.
//!
//! Exit codes: 0 success / equivalent, 1 not equivalent, 2 out of scope,
//! 3 input error, 4 resource cap hit. Internal invariant violations (which
//! indicate a bug, not bad input) exit with 70 and full diagnostics on
//! stderr. All reports are byte-deterministic for fixed inputs and flags.

mod file;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use algeq_core::frame::default_k_max;
use algeq_core::msc::act;
use algeq_core::normalize::normalize;
use algeq_core::oracle::{
    brute_force_equivalent_with_cap, random_algebra, BruteForceOutcome, RngSpec, GL_CAP,
};
use algeq_core::separate::{compare, invariants, rough_invariants, Verdict};
use algeq_core::{Error, FieldSpec, Msc};

use file::{load_algebra, AlgebraFile};

const EXIT_OK: u8 = 0;
const EXIT_NOT_EQUIVALENT: u8 = 1;
const EXIT_OUT_OF_SCOPE: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_CAP: u8 = 4;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(
    name = "algeq",
    version,
    about = "Decides equivalence of finite-dimensional algebras by exact rational invariants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the separating invariants of one algebra
    Invariants {
        file: PathBuf,
        /// Frame search depth (default: 3 for dim 2, 2 for dim >= 3)
        #[arg(long)]
        kmax: Option<usize>,
    },
    /// Decide equivalence of two algebras, printing a verified witness
    Compare {
        file_a: PathBuf,
        file_b: PathBuf,
        /// Frame search depth (default: 3 for dim 2, 2 for dim >= 3)
        #[arg(long)]
        kmax: Option<usize>,
    },
    /// Print rough classification invariants (trace-form rank, signature,
    /// discriminant class) for levels 1..=k
    Rough {
        file: PathBuf,
        /// Highest trace-form level
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Print the normalized representative and its diagonalizing data
    Normalize { file: PathBuf },
    /// Exhaustive GL(m,p) isomorphism search (prime fields only)
    BruteCompare {
        file_a: PathBuf,
        file_b: PathBuf,
        /// Cap on |GL(m,p)|
        #[arg(long, default_value_t = GL_CAP)]
        cap: u128,
    },
    /// Write a random algebra file (deterministic per seed)
    GenRandom {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// "rational" or "prime:<p>"
        #[arg(long, default_value = "rational")]
        field: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Entry bound over the rationals (ignored for prime fields)
        #[arg(long, default_value_t = 5)]
        bound: u64,
        /// Output path (stdout when absent)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Invariants { file, kmax } => cmd_invariants(&file, kmax),
        Command::Compare {
            file_a,
            file_b,
            kmax,
        } => cmd_compare(&file_a, &file_b, kmax),
        Command::Rough { file, k } => cmd_rough(&file, k),
        Command::Normalize { file } => cmd_normalize(&file),
        Command::BruteCompare {
            file_a,
            file_b,
            cap,
        } => cmd_brute_compare(&file_a, &file_b, cap),
        Command::GenRandom {
            dim,
            field,
            seed,
            bound,
            out,
        } => cmd_gen_random(dim, &field, seed, bound, out.as_deref()),
    };
    ExitCode::from(code)
}

fn input_error(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    EXIT_INPUT
}

fn load_or_exit(path: &Path) -> Result<Msc, u8> {
    load_algebra(path).map_err(|msg| input_error(&msg))
}

fn print_provenance(provenance: &[algeq_core::RowId]) {
    let items: Vec<String> = provenance
        .iter()
        .map(|id| format!("({},{})", id.side.index(), id.level))
        .collect();
    println!("provenance: {}", items.join(" "));
}

fn cmd_invariants(path: &Path, kmax: Option<usize>) -> u8 {
    let a = match load_or_exit(path) {
        Ok(a) => a,
        Err(code) => return code,
    };
    let kmax = kmax.unwrap_or_else(|| default_k_max(a.dim()));
    match invariants(&a, kmax) {
        Ok(pair) => {
            let norm = normalize(&a).expect("invariants imply genericity");
            print_provenance(&pair.provenance);
            println!("D:");
            print!("{}", norm.diagonal);
            println!("J1 (canonical representative):");
            print!("{}", pair.canonical.mat());
            println!("J2 (canonical trace form):");
            print!("{}", pair.gram);
            EXIT_OK
        }
        Err(e @ (Error::NotGeneric | Error::FrameDeficient { .. })) => {
            println!("out-of-scope: {e}");
            EXIT_OUT_OF_SCOPE
        }
        Err(e @ Error::CapExceeded { .. }) => {
            eprintln!("error: {e}");
            EXIT_CAP
        }
        Err(e) => input_error(&e.to_string()),
    }
}

fn cmd_compare(path_a: &Path, path_b: &Path, kmax: Option<usize>) -> u8 {
    let (a, b) = match (load_or_exit(path_a), load_or_exit(path_b)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(code), _) | (_, Err(code)) => return code,
    };
    if a.dim() != b.dim() {
        return input_error(&format!(
            "dimension mismatch: {} vs {}",
            a.dim(),
            b.dim()
        ));
    }
    if a.field() != b.field() {
        return input_error(&format!("field mismatch: {} vs {}", a.field(), b.field()));
    }
    let kmax = kmax.unwrap_or_else(|| default_k_max(a.dim()));
    match compare(&a, &b, kmax) {
        Ok(Verdict::Equivalent { witness }) => {
            println!("verdict: equivalent");
            println!("witness g:");
            print!("{witness}");
            // Re-derive the verification evidence in the report.
            let image = act(&witness, &a).expect("witness is nonsingular");
            println!("act(g, A):");
            print!("{}", image.mat());
            println!("act(g, A) = B: {}", image == b);
            EXIT_OK
        }
        Ok(Verdict::NotEquivalent { distinguisher }) => {
            println!("verdict: not-equivalent");
            println!("first differing entry: {distinguisher}");
            EXIT_NOT_EQUIVALENT
        }
        Ok(Verdict::OutOfScope { reason }) => {
            println!("verdict: out-of-scope");
            println!("reason: {reason}");
            EXIT_OUT_OF_SCOPE
        }
        Err(e @ Error::CapExceeded { .. }) => {
            eprintln!("error: {e}");
            EXIT_CAP
        }
        Err(e @ Error::InternalInconsistency(_)) => {
            eprintln!("error: {e}");
            EXIT_INTERNAL
        }
        Err(e) => input_error(&e.to_string()),
    }
}

fn cmd_rough(path: &Path, k: usize) -> u8 {
    let a = match load_or_exit(path) {
        Ok(a) => a,
        Err(code) => return code,
    };
    if k == 0 {
        return input_error("rough level must be at least 1");
    }
    for level in 1..=k {
        match rough_invariants(&a, level) {
            Ok(inv) => {
                let signature = match inv.signature {
                    Some((pos, neg, zero)) => format!("({pos},{neg},{zero})"),
                    None => "n/a".to_string(),
                };
                println!(
                    "level {level}: rank {}, signature {}, disc class {}",
                    inv.rank, signature, inv.disc_class
                );
            }
            Err(e @ Error::CapExceeded { .. }) => {
                eprintln!("error: {e}");
                return EXIT_CAP;
            }
            Err(e) => return input_error(&e.to_string()),
        }
    }
    EXIT_OK
}

fn cmd_normalize(path: &Path) -> u8 {
    let a = match load_or_exit(path) {
        Ok(a) => a,
        Err(code) => return code,
    };
    match normalize(&a) {
        Ok(n) => {
            println!("Q:");
            print!("{}", n.transform);
            println!("D:");
            print!("{}", n.diagonal);
            println!("normalized constants:");
            print!("{}", n.normalized.mat());
            EXIT_OK
        }
        Err(e @ Error::NotGeneric) => {
            println!("out-of-scope: {e}");
            EXIT_OUT_OF_SCOPE
        }
        Err(e) => input_error(&e.to_string()),
    }
}

fn cmd_brute_compare(path_a: &Path, path_b: &Path, cap: u128) -> u8 {
    let (a, b) = match (load_or_exit(path_a), load_or_exit(path_b)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(code), _) | (_, Err(code)) => return code,
    };
    match brute_force_equivalent_with_cap(&a, &b, cap) {
        Ok(BruteForceOutcome::Equivalent { witness }) => {
            println!("verdict: equivalent");
            println!("witness g:");
            print!("{witness}");
            EXIT_OK
        }
        Ok(BruteForceOutcome::NotEquivalent) => {
            println!("verdict: not-equivalent");
            EXIT_NOT_EQUIVALENT
        }
        Err(e @ Error::CapExceeded { .. }) => {
            eprintln!("error: {e}");
            EXIT_CAP
        }
        Err(e) => input_error(&e.to_string()),
    }
}

fn parse_field_flag(text: &str) -> Result<FieldSpec, String> {
    if text == "rational" || text == "q" {
        return Ok(FieldSpec::RATIONAL);
    }
    if let Some(p) = text.strip_prefix("prime:") {
        let p: u64 = p
            .parse()
            .map_err(|_| format!("invalid prime in field flag {text:?}"))?;
        return FieldSpec::prime(p).map_err(|e| e.to_string());
    }
    Err(format!(
        "invalid field {text:?}: expected \"rational\" or \"prime:<p>\""
    ))
}

fn cmd_gen_random(dim: usize, field: &str, seed: u64, bound: u64, out: Option<&Path>) -> u8 {
    if dim == 0 {
        return input_error("dim must be at least 1");
    }
    let field = match parse_field_flag(field) {
        Ok(f) => f,
        Err(msg) => return input_error(&msg),
    };
    let a = random_algebra(dim, field, &RngSpec::new(seed, bound));
    let text = AlgebraFile::from_msc(&a).to_canonical_json();
    match out {
        None => {
            print!("{text}");
            EXIT_OK
        }
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => EXIT_OK,
            Err(e) => input_error(&format!("cannot write {}: {e}", path.display())),
        },
    }
}
