// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ordpat::io::{
    code_table_csv, code_table_json, code_table_text, codes_lines, distribution_csv,
    distribution_json, opd_json, read_codes, read_series, CodesDocument, IoError, SeriesFile,
};
use ordpat::{
    code_table, opd, EncodingScheme, ExtractionConfig, Extractor, InversionPattern, Invert,
    PatternDistribution, PermutationPattern, RankPattern, TieStrategy,
};

const EXIT_USAGE: u8 = 2;
const EXIT_DATA: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ordpat",
    version,
    about = "Ordinal pattern tables, extraction and dependence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every pattern of length d with its inversion counts and codes.
    Table {
        #[arg(long)]
        d: usize,
        /// Order rows by this scheme's code.
        #[arg(long, value_enum, default_value_t = Scheme::Lehmer)]
        scheme: Scheme,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Extract one pattern code per window.
    Extract {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long, value_enum, default_value_t = CodesFormat::Lines)]
        format: CodesFormat,
    },
    /// Pattern frequencies of a series, or of a previously extracted code file.
    Freq {
        #[command(flatten)]
        input: OptionalInputArgs,
        /// Code file written by `extract` (JSON, or one code per line).
        #[arg(long, conflicts_with_all = ["input", "column", "no_header"])]
        from_codes: Option<PathBuf>,
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long, value_enum, default_value_t = FreqFormat::Csv)]
        format: FreqFormat,
    },
    /// Ordinal pattern dependence between two series, as JSON.
    Opd {
        #[arg(long)]
        input_x: PathBuf,
        #[arg(long)]
        input_y: PathBuf,
        /// Column used in both files unless overridden.
        #[arg(long, default_value = "0")]
        column: String,
        #[arg(long)]
        column_x: Option<String>,
        #[arg(long)]
        column_y: Option<String>,
        #[arg(long)]
        no_header: bool,
        #[command(flatten)]
        pattern: PatternArgs,
    },
    /// Invert a pattern tuple in space or time.
    Invert {
        /// Comma-separated tuple, e.g. "4,2,1,5,3".
        #[arg(long)]
        pattern: String,
        #[arg(long, value_enum)]
        rep: Rep,
        #[arg(long, value_enum)]
        mode: Mode,
    },
}

#[derive(Args)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    /// Column name, or zero-based index.
    #[arg(long, default_value = "0")]
    column: String,
    #[arg(long)]
    no_header: bool,
}

#[derive(Args)]
struct OptionalInputArgs {
    #[arg(long, required_unless_present = "from_codes")]
    input: Option<PathBuf>,
    #[arg(long)]
    column: Option<String>,
    #[arg(long)]
    no_header: bool,
}

#[derive(Args)]
struct PatternArgs {
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value_t = 1)]
    lag: usize,
    #[arg(long, value_enum, default_value_t = Ties::Stable)]
    ties: Ties,
    /// Required with `--ties perturb`.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Scheme::Lehmer)]
    scheme: Scheme,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scheme {
    Lehmer,
    Kse,
}

impl From<Scheme> for EncodingScheme {
    fn from(s: Scheme) -> Self {
        match s {
            Scheme::Lehmer => EncodingScheme::Lehmer,
            Scheme::Kse => EncodingScheme::Kse,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Ties {
    Skip,
    Perturb,
    Stable,
    Generalized,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CodesFormat {
    Lines,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FreqFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rep {
    Rank,
    Perm,
    Inv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Space,
    Time,
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Data(e.to_string())
    }
}

impl From<ordpat::PatternError> for Failure {
    fn from(e: ordpat::PatternError) -> Self {
        Failure::Data(e.to_string())
    }
}

impl PatternArgs {
    fn config(&self) -> Result<ExtractionConfig, Failure> {
        let d = self
            .d
            .ok_or_else(|| Failure::Usage("--d is required".into()))?;
        let strategy = match (self.ties, self.seed) {
            (Ties::Perturb, Some(seed)) => TieStrategy::Perturb { seed },
            (Ties::Perturb, None) => {
                return Err(Failure::Usage(
                    "--ties perturb needs an explicit --seed".into(),
                ))
            }
            (_, Some(_)) => {
                return Err(Failure::Usage(
                    "--seed only applies to --ties perturb".into(),
                ))
            }
            (Ties::Skip, None) => TieStrategy::Skip,
            (Ties::Stable, None) => TieStrategy::Stable,
            (Ties::Generalized, None) => TieStrategy::Generalized,
        };
        let cfg = ExtractionConfig {
            d,
            lag: self.lag,
            strategy,
            scheme: self.scheme.into(),
        };
        cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(cfg)
    }
}

fn series_file(path: &PathBuf, column: &str, no_header: bool) -> SeriesFile {
    SeriesFile::new(path)
        .with_column(column)
        .with_header(!no_header)
}

fn parse_tuple(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("`{s}` is not a non-negative integer")))
        })
        .collect()
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Table { d, scheme, format } => {
            let mut rows = code_table(d).map_err(|e| Failure::Usage(e.to_string()))?;
            if let Scheme::Kse = scheme {
                rows.sort_by_key(|r| r.kse);
            }
            Ok(match format {
                TableFormat::Text => code_table_text(&rows),
                TableFormat::Csv => code_table_csv(&rows)?,
                TableFormat::Json => code_table_json(&rows) + "\n",
            })
        }
        Command::Extract {
            input,
            pattern,
            format,
        } => {
            let cfg = pattern.config()?;
            let series = read_series(&series_file(&input.input, &input.column, input.no_header))?;
            let extractor = Extractor::new(cfg)?;
            let codes = extractor.extract(&series)?;
            Ok(match format {
                CodesFormat::Lines => codes_lines(&codes),
                CodesFormat::Json => {
                    CodesDocument::new(cfg.d, extractor.code_space(), &codes).to_json() + "\n"
                }
            })
        }
        Command::Freq {
            input,
            from_codes,
            pattern,
            format,
        } => {
            let dist = match from_codes {
                Some(path) => {
                    let fallback = pattern.d.map(|d| {
                        let cfg = ExtractionConfig {
                            d,
                            lag: 1,
                            strategy: if pattern.ties == Ties::Generalized {
                                TieStrategy::Generalized
                            } else {
                                TieStrategy::Stable
                            },
                            scheme: pattern.scheme.into(),
                        };
                        (d, cfg.code_space())
                    });
                    read_codes(&path, fallback)?.distribution()?
                }
                None => {
                    let cfg = pattern.config()?;
                    let path = input.input.expect("clap enforces --input");
                    let column = input.column.unwrap_or_else(|| "0".into());
                    let series = read_series(&series_file(&path, &column, input.no_header))?;
                    let extractor = Extractor::new(cfg)?;
                    let codes = extractor.extract(&series)?;
                    PatternDistribution::from_codes(&codes, cfg.d, extractor.code_space())?
                }
            };
            Ok(match format {
                FreqFormat::Csv => distribution_csv(&dist)?,
                FreqFormat::Json => distribution_json(&dist)? + "\n",
            })
        }
        Command::Opd {
            input_x,
            input_y,
            column,
            column_x,
            column_y,
            no_header,
            pattern,
        } => {
            let cfg = pattern.config()?;
            let x = read_series(&series_file(
                &input_x,
                column_x.as_deref().unwrap_or(&column),
                no_header,
            ))?;
            let y = read_series(&series_file(
                &input_y,
                column_y.as_deref().unwrap_or(&column),
                no_header,
            ))?;
            Ok(opd_json(&opd(&x, &y, &cfg)?) + "\n")
        }
        Command::Invert { pattern, rep, mode } => {
            let tuple = parse_tuple(&pattern)?;
            let bad = |e: ordpat::PatternError| Failure::Usage(e.to_string());
            let out = match rep {
                Rep::Rank => {
                    let p = RankPattern::new(tuple).map_err(bad)?;
                    invert(&p, mode).to_string()
                }
                Rep::Perm => {
                    let p = PermutationPattern::new(tuple).map_err(bad)?;
                    invert(&p, mode).to_string()
                }
                Rep::Inv => {
                    let p = InversionPattern::new(tuple).map_err(bad)?;
                    invert(&p, mode).to_string()
                }
            };
            Ok(out + "\n")
        }
    }
}

fn invert<P: Invert>(p: &P, mode: Mode) -> P {
    match mode {
        Mode::Space => p.invert_space(),
        Mode::Time => p.invert_time(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DATA)
        }
    }
}
