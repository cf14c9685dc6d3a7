use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use spreadcode::channel::{simulate, STATS_HEADER};
use spreadcode::decoder::{decode, DecodeOutcome};
use spreadcode::format;
use spreadcode::spread::SpreadCode;
use spreadcode::Error;

#[derive(Parser)]
#[command(name = "spreadcode", version, about = "Spread codes for random linear network coding")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the code header, cardinality and minimum distance.
    Params(CodeArgs),
    /// Encode a point file into a subspace file.
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Decode a subspace file (exit 0 decoded, 2 decoding failure).
    Decode(IoArgs),
    /// Run seeded channel simulations over an (errors, erasures) grid.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Error counts, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        errors: Vec<usize>,
        /// Erasure counts, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        erasures: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extension-field operation counts of decoding at e = ε = ⌊(k-1)/2⌋.
    Bench {
        #[arg(long)]
        q: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        r: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CodeArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: usize,
    /// Coefficients p_0,…,p_{k-1} of the monic modulus (default: smallest
    /// irreducible).
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<u32>>,
}

impl CodeArgs {
    fn build(&self) -> Result<SpreadCode, Error> {
        match &self.p {
            None => {
                if self.k < 2 {
                    return Err(Error::InvalidDegree(self.k));
                }
                SpreadCode::new(self.q, self.k, self.r)
            }
            Some(p) if p.len() != self.k => Err(Error::InvalidParams(format!(
                "--p has {} coefficients, expected k = {}",
                p.len(),
                self.k
            ))),
            Some(p) => {
                let mut full = p.clone();
                full.push(1);
                SpreadCode::with_modulus(self.q, self.r, &full)
            }
        }
    }
}

#[derive(Args)]
struct IoArgs {
    /// Input file (default: stdin).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Decode(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Params(args) => {
            let code = args.build()?;
            let size = match code.cardinality() {
                Some(n) => n.to_string(),
                None => "(q^n-1)/(q^k-1)".into(),
            };
            println!("{}", format::format_header(&code));
            println!("|S|={size} dmin={}", code.min_distance());
        }
        Command::Encode { code, io } => {
            let code = code.build()?;
            let point = format::parse_point(&code, &read_input(&io.input)?)?;
            let cw = code.encode(&point)?;
            write_output(&io.out, &format::format_subspace(&code, &cw.subspace))?;
        }
        Command::Decode(io) => {
            let (code, received) = format::parse_subspace(&read_input(&io.input)?)?;
            match decode(&code, &received) {
                DecodeOutcome::Decoded(cw) => write_output(&io.out, &format::format_subspace(&code, &cw.subspace))?,
                DecodeOutcome::Failure(reason) => return Err(Failure::Decode(reason.to_string())),
            }
        }
        Command::Simulate {
            code,
            trials,
            errors,
            erasures,
            seed,
            out,
        } => {
            let code = code.build()?;
            let cells: Vec<(usize, usize)> = errors
                .iter()
                .flat_map(|&e| erasures.iter().map(move |&eps| (e, eps)))
                .collect();
            let stats = simulate(&code, trials, &cells, seed)?;
            let mut text = format!("{STATS_HEADER}\n");
            for s in stats {
                text.push_str(&format!("{s}\n"));
            }
            write_output(&out, &text)?;
        }
        Command::Bench {
            q,
            k,
            r,
            trials,
            seed,
            out,
        } => {
            let mut text = String::from("q k r n errors erasures trials mean_ops max_ops\n");
            for &k in &k {
                for &r in &r {
                    let code = CodeArgs { q, k, r, p: None }.build()?;
                    let d = (k - 1) / 2;
                    let s = &simulate(&code, trials, &[(d, d)], seed)?[0];
                    text.push_str(&format!(
                        "{q} {k} {r} {} {d} {d} {trials} {:.2} {}\n",
                        code.n(),
                        s.mean_ops,
                        s.max_ops
                    ));
                }
            }
            write_output(&out, &text)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Decode(msg)) => {
            eprintln!("decoding failure: {msg}");
            ExitCode::from(2)
        }
    }
}
