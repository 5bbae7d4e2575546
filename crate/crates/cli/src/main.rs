use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use radix_automata::check::run_checks;
use radix_automata::families::{family_smallest_lb, family_successor_lb};
use radix_automata::json::{dfa_to_json, parse_dfa, transducer_to_json};
use radix_automata::measure::{measure, Report};
use radix_automata::minimal::{largest_words_dfa, smallest_words_dfa_with, SmallestStrategy};
use radix_automata::successor::{successor_transducer, Enumeration};
use radix_automata::{Dfa, OrderedAlphabet};

/// Radix-order constructions on regular languages.
#[derive(Parser)]
#[command(name = "radix", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a DFA for the smallest word of each length.
    Smallest {
        input: PathBuf,
        #[arg(long, conflicts_with = "cover")]
        naive: bool,
        #[arg(long)]
        cover: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit a DFA for the largest word of each length.
    Largest {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the successor of a word, or MAXIMAL if there is none.
    Successor {
        input: PathBuf,
        word: String,
        #[command(flatten)]
        sep: Sep,
    },
    /// Print the first words of the language, one per line.
    Enumerate {
        input: PathBuf,
        #[arg(long)]
        count: usize,
        #[command(flatten)]
        sep: Sep,
    },
    /// Emit the successor transducer.
    Transducer {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Emit a DFA of one of the prime-period families.
    Family {
        which: FamilyKind,
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Report the sizes of all constructions.
    Measure {
        input: PathBuf,
        #[arg(long)]
        csv: bool,
    },
    /// Compare every construction with brute force; exit 1 on a mismatch.
    Check {
        input: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct Sep {
    /// Separator between symbols, for alphabets with multi-character symbols.
    #[arg(long)]
    sep: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    SmallestLb,
    SuccessorLb,
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn load(path: &Path) -> Result<Dfa, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })?;
    parse_dfa(&text).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, format!("{text}\n"))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn separator(alphabet: &OrderedAlphabet, sep: &Sep) -> Result<String, Failure> {
    match &sep.sep {
        Some(s) => Ok(s.clone()),
        None if alphabet.is_single_char() => Ok(String::new()),
        None => Err(Failure {
            code: 2,
            message: "alphabet has multi-character symbols; pass --sep".into(),
        }),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Smallest {
            input,
            naive,
            cover: _,
            output,
        } => {
            let strategy = if naive {
                SmallestStrategy::Naive
            } else {
                SmallestStrategy::Cover
            };
            let s = smallest_words_dfa_with(&load(&input)?, strategy);
            emit(&dfa_to_json(&s), output.as_deref())
        }
        Command::Largest { input, output } => {
            let b = largest_words_dfa(&load(&input)?);
            emit(&dfa_to_json(&b), output.as_deref())
        }
        Command::Successor { input, word, sep } => {
            let dfa = load(&input)?;
            let sep = separator(dfa.alphabet(), &sep)?;
            let w = dfa.alphabet().parse(&word, Some(&sep))?;
            let t = successor_transducer(&dfa);
            match t.apply(w.letters())? {
                Some(v) => println!("{}", dfa.alphabet().render(&v, &sep)),
                None => println!("MAXIMAL"),
            }
            Ok(())
        }
        Command::Enumerate { input, count, sep } => {
            let dfa = load(&input)?;
            let sep = separator(dfa.alphabet(), &sep)?;
            for w in Enumeration::new(&dfa).take(count) {
                println!("{}", dfa.alphabet().render(&w, &sep));
            }
            Ok(())
        }
        Command::Transducer { input, output } => {
            let t = successor_transducer(&load(&input)?);
            emit(&transducer_to_json(&t), Some(&output))
        }
        Command::Family { which, k, output } => {
            if k == 0 {
                return Err(Failure {
                    code: 2,
                    message: "--k must be positive".into(),
                });
            }
            let d = match which {
                FamilyKind::SmallestLb => family_smallest_lb(k),
                FamilyKind::SuccessorLb => family_successor_lb(k),
            };
            emit(&dfa_to_json(&d), output.as_deref())
        }
        Command::Measure { input, csv } => {
            let r = measure(&load(&input)?);
            if csv {
                println!("{}", Report::csv_header());
                println!("{}", r.csv_row());
            } else {
                println!("{}", r.to_json());
            }
            Ok(())
        }
        Command::Check {
            input,
            max_len,
            seed,
        } => {
            let report = run_checks(&load(&input)?, max_len, seed);
            print!("{report}");
            if report.passed() {
                Ok(())
            } else {
                Err(Failure {
                    code: 1,
                    message: "some checks failed".into(),
                })
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("radix: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
