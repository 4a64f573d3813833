//! `orbs`: normal forms, products, bases and consistency checks for free
//! Omega-Rota-Baxter systems from the command line.
//!
//! Exit status: 0 on success, 1 when a check finds an inconsistency, 2 on
//! usage, parse or evaluation errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use orbs::eds::check_eds;
use orbs::gsb::{check_gsb, contexts_up_to_depth, default_contexts, Coverage, GsbConfig};
use orbs::omega_file::OmegaDecl;
use orbs::rewrite::{basis_census, Reducer, Strategy, DEFAULT_BUDGET};
use orbs::syntax::{parse_polynomial, render_polynomial, render_trace, render_verdict};
use orbs::systems::{dendriform, eliminate_s, DendriformSide, RuleSystem, SystemKind};
use orbs::{GenId, Polynomial, Signature};

#[derive(Parser, Debug)]
#[command(name = "orbs", version, about = "Rewriting in free Omega-Rota-Baxter systems")]
struct Cli {
    /// System kind: orbs, orba0, rbs, rbsf, rbf, mrbs, mrba, orba-weighted.
    #[arg(long, default_value = "orbs", value_parser = parse_kind)]
    system: SystemKind,

    /// Omega-structure file; defaults to the one-element carrier `e`.
    #[arg(long, value_name = "FILE")]
    omega: Option<PathBuf>,

    /// Comma-separated generator names, in order.
    #[arg(long, default_value = "x,y,z", value_delimiter = ',')]
    alphabet: Vec<String>,

    /// max-monomial, leftmost-innermost or random.
    #[arg(long, default_value = "max-monomial")]
    strategy: String,

    /// Maximum number of rewriting steps per normalization.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,

    /// Seed for the random strategy.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Worker threads for composition checks.
    #[arg(long, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Side {
    Prec,
    Succ,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form of a polynomial.
    Nf { expr: String },
    /// Product of two polynomials in the quotient.
    Mul { left: String, right: String },
    /// Check the fifteen identities on the Omega-structure.
    CheckEds,
    /// Reduce every composition of the rule system.
    CheckGsb {
        /// Sample contexts up to this bracket depth instead of the default set.
        #[arg(long)]
        contexts_depth: Option<usize>,
        /// Skip inclusion compositions.
        #[arg(long)]
        intersection_only: bool,
    },
    /// Count irreducible words per degree.
    Basis {
        #[arg(long)]
        max_deg: usize,
        /// Also enumerate all words and filter them.
        #[arg(long)]
        cross_check: bool,
    },
    /// Normal form, optionally with every rewriting step.
    Reduce {
        #[arg(long)]
        trace: bool,
        expr: String,
    },
    /// Replace S-brackets using the weights from the Omega file.
    EliminateS { expr: String },
    /// The derived products `a S_ω(b)` (prec) and `R_ω(a) b` (succ).
    Dendriform {
        #[arg(long = "omega", value_name = "ELEMENT")]
        element: String,
        #[arg(long, value_enum)]
        side: Side,
        left: String,
        right: String,
    },
}

fn parse_kind(s: &str) -> Result<SystemKind, String> {
    s.parse()
}

struct Session {
    decl: OmegaDecl,
    sys: RuleSystem,
    sig: Signature,
    strategy: Strategy,
    budget: usize,
    jobs: usize,
}

impl Session {
    fn load(cli: &Cli) -> Result<Self, String> {
        let decl = match &cli.omega {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                OmegaDecl::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?
            }
            None => OmegaDecl::trivial(),
        };
        let sys = decl.system(cli.system).map_err(|e| e.to_string())?;
        let alphabet: Vec<String> = cli.alphabet.iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
        let sig = Signature::new(alphabet, decl.names.clone(), sys.tags().to_vec()).map_err(|e| e.to_string())?;
        let strategy = Strategy::from_name(&cli.strategy, cli.seed)?;
        if cli.system.expects_gsb() && !check_eds(sys.omega()).passed {
            eprintln!(
                "warning: Omega is not an extended diassociative semigroup; \
                 normal forms may depend on the strategy"
            );
        }
        Ok(Session {
            decl,
            sys,
            sig,
            strategy,
            budget: cli.budget,
            jobs: cli.jobs.max(1),
        })
    }

    fn reducer(&self) -> Reducer<'_> {
        Reducer::new(&self.sys).with_strategy(self.strategy).with_budget(self.budget)
    }

    fn parse(&self, text: &str) -> Result<Polynomial, String> {
        parse_polynomial(text, &self.sig).map_err(|e| format!("`{text}`: {e}"))
    }

    fn show(&self, p: &Polynomial) -> String {
        render_polynomial(p, &self.sig)
    }
}

enum Outcome {
    Done,
    Inconsistent,
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    let session = Session::load(cli)?;
    let s = &session;
    let err = |e: orbs::Error| e.to_string();
    match &cli.command {
        Command::Nf { expr } => {
            let nf = s.reducer().normal_form(&s.parse(expr)?).map_err(err)?;
            println!("{}", s.show(&nf));
        }
        Command::Mul { left, right } => {
            let p = s.reducer().product(&s.parse(left)?, &s.parse(right)?).map_err(err)?;
            println!("{}", s.show(&p));
        }
        Command::CheckEds => {
            let report = check_eds(s.sys.omega());
            print!("{}", report.render(s.sys.omega()));
            if !report.passed {
                return Ok(Outcome::Inconsistent);
            }
        }
        Command::CheckGsb {
            contexts_depth,
            intersection_only,
        } => {
            let x = (!s.sig.generators.is_empty()).then_some(GenId(0));
            let coverage = if *intersection_only {
                Coverage::IntersectionOnly
            } else {
                Coverage::WithContexts(match contexts_depth {
                    Some(d) => contexts_up_to_depth(&s.sys, x, *d),
                    None => default_contexts(&s.sys, x),
                })
            };
            let config = GsbConfig {
                coverage,
                strategy: s.strategy,
                budget: s.budget,
                parallel: s.jobs > 1,
            };
            let verdict = check_gsb(&s.sys, &s.sig, &config).map_err(err)?;
            println!("{}", render_verdict(&verdict, &s.sys));
            if !verdict.consistent {
                return Ok(Outcome::Inconsistent);
            }
        }
        Command::Basis { max_deg, cross_check } => {
            let census = basis_census(s.sig.generators.len() as u32, &s.sys, *max_deg, *cross_check).map_err(err)?;
            for (d, c) in census.counts.iter().enumerate() {
                match &census.enumerated {
                    Some(e) => println!("deg {d}: {c} (enumerated {})", e[d]),
                    None => println!("deg {d}: {c}"),
                }
            }
            if !census.agrees() {
                println!("census and enumeration disagree");
                return Ok(Outcome::Inconsistent);
            }
        }
        Command::Reduce { trace, expr } => {
            let p = s.parse(expr)?;
            if *trace {
                let t = s.reducer().normal_form_traced(&p).map_err(err)?;
                println!("{}", render_trace(&t, &s.sys, &s.sig));
            } else {
                println!("{}", s.show(&s.reducer().normal_form(&p).map_err(err)?));
            }
        }
        Command::EliminateS { expr } => {
            let img = eliminate_s(&s.parse(expr)?, &s.decl.elimination_weights()).map_err(err)?;
            println!("{}", s.show(&img));
        }
        Command::Dendriform {
            element,
            side,
            left,
            right,
        } => {
            let alpha = s.sig.omega_id(element).map_err(err)?;
            let side = match side {
                Side::Prec => DendriformSide::Prec,
                Side::Succ => DendriformSide::Succ,
            };
            let p = dendriform(&s.parse(left)?, &s.parse(right)?, alpha, side, &s.sys, s.strategy).map_err(err)?;
            println!("{}", s.show(&p));
        }
    }
    Ok(Outcome::Done)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 1 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
            eprintln!("warning: could not start {} worker threads: {e}", cli.jobs);
        }
    }
    match run(&cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Inconsistent) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
