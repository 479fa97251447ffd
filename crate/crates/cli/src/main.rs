use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sheaf_forge::Error;
use sheaf_forge_cli::commands::{self, Output};
use sheaf_forge_cli::golden;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "sheaf-forge", version, about = "Exact module and blow-up computations over ℚ")]
struct Cli {
    /// Also write the result as JSON to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Monomial order override: lex, degrevlex, weighted(w1 w2 ..), block(k, o1, o2).
    #[arg(long, global = true)]
    order: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Groebner basis of an ideal file.
    Gb { file: PathBuf },
    /// Ideal membership with the normal form.
    Member {
        file: PathBuf,
        #[arg(long)]
        poly: String,
    },
    /// Saturation `(I : f^∞)` and the exponent at which it stabilizes.
    Sat {
        file: PathBuf,
        #[arg(long)]
        by: String,
    },
    /// Rank, corank, singular locus, torsion-freeness and homological dimension.
    Classify {
        file: PathBuf,
        /// Comma-separated rational coordinates; the origin by default.
        #[arg(long)]
        at: Option<String>,
    },
    /// Torsion submodule with annihilator witnesses.
    Torsion { file: PathBuf },
    /// Linear fiber space ideal and its primary component.
    Linspace { file: PathBuf },
    /// Pullbacks and direct images under a blow-up.
    Blowup {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "origin")]
        center: String,
        /// Blow up the span of the first `s` coordinates (with `--center subspace`).
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        sheaf: PathBuf,
        /// pullback, pT, pushforward or chain.
        #[arg(long)]
        op: String,
        #[arg(long, default_value_t = golden::SECTION_DEGREE_BOUND)]
        degree_bound: u32,
    },
    /// Multiplicity of the exceptional divisor in the relative canonical divisor.
    Canonical {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "origin")]
        center: String,
        #[arg(long)]
        s: Option<usize>,
    },
    /// Recompute every anchored example and report PASS/FAIL per check.
    VerifyPaper {
        /// Run only checks whose id starts with this prefix.
        #[arg(long)]
        only: Option<String>,
        /// Also write the markdown report to this path.
        #[arg(long)]
        markdown: Option<PathBuf>,
    },
}

/// An error with the text it arose in, for positioned diagnostics.
struct Failure {
    error: Error,
    source: Option<String>,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { error, source: None }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::from(Error::InvalidArgument(format!("cannot read {}: {e}", path.display()))))
}

fn with_source<T>(source: &str, r: sheaf_forge::Result<T>) -> Result<T, Failure> {
    r.map_err(|error| Failure { error, source: Some(source.to_string()) })
}

fn diagnose(f: &Failure) -> String {
    let mut s = format!("error: {}", f.error);
    if let (Error::Parse(p), Some(src)) = (&f.error, &f.source) {
        if let Some(line) = src.lines().nth(p.line.saturating_sub(1)) {
            s.push_str(&format!("\n  {line}\n  {}^", " ".repeat(p.column.saturating_sub(1))));
        }
    }
    s
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| Failure::from(Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))))
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let order = cli.order.as_deref();
    let out: Output = match &cli.command {
        Command::Gb { file } => {
            let text = read(file)?;
            with_source(&text, commands::gb(&text, order))?
        }
        Command::Member { file, poly } => {
            let text = read(file)?;
            let ideal = with_source(&text, sheaf_forge::modules::parse_ideal_file(&text))?;
            with_source(poly, ideal.ring().parse_poly(poly))?;
            with_source(&text, commands::member(&text, poly, order))?
        }
        Command::Sat { file, by } => {
            let text = read(file)?;
            let ideal = with_source(&text, sheaf_forge::modules::parse_ideal_file(&text))?;
            with_source(by, ideal.ring().parse_poly(by))?;
            with_source(&text, commands::sat(&text, by, order))?
        }
        Command::Classify { file, at } => {
            let text = read(file)?;
            with_source(&text, commands::classify(&text, at.as_deref()))?
        }
        Command::Torsion { file } => {
            let text = read(file)?;
            with_source(&text, commands::torsion(&text))?
        }
        Command::Linspace { file } => {
            let text = read(file)?;
            with_source(&text, commands::linspace(&text))?
        }
        Command::Blowup { n, center, s, sheaf, op, degree_bound } => {
            let m = commands::modification(*n, center, *s)?;
            let text = read(sheaf)?;
            with_source(&text, commands::blowup(&m, &text, op, *degree_bound))?
        }
        Command::Canonical { n, center, s } => commands::canonical(&commands::modification(*n, center, *s)?)?,
        Command::VerifyPaper { only, markdown } => {
            let report = golden::verify(only.as_deref());
            let md = report.to_markdown();
            print!("{md}");
            for c in report.checks.iter().filter(|c| c.counterexample.is_some()) {
                eprintln!("{} [{}]: counterexample {}", c.id, c.status.label(), c.counterexample.as_deref().unwrap_or_default());
            }
            if let Some(path) = markdown {
                write_file(path, &md)?;
            }
            if let Some(path) = &cli.json {
                write_file(path, &report.to_json())?;
            }
            return Ok(report.passed());
        }
    };
    print!("{}", out.text);
    if let Some(path) = &cli.json {
        write_file(path, &serde_json::to_string_pretty(&out.json).expect("json value serializes"))?;
    }
    Ok(out.ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(f) => {
            eprintln!("{}", diagnose(&f));
            ExitCode::from(EXIT_USAGE)
        }
    }
}
