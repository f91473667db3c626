mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use degen::genus2::{
    verify_all, verify_det_hi, verify_heisenberg_degeneration, verify_modular_identities, verify_structure,
    verify_theta_degeneration, z2_heisenberg, z2_module_pair, DegenerationReport, ModulePair,
};
use degen::rational::{self, Rational};
use degen::series::{eisenstein, eta_normalized, JsonCoeff};
use degen::sewing::{degenerate_tau, period_matrix};
use degen::virasoro::{beta_coefficients, lambda_vector, lambda_vector_direct, Partition};
use degen::zhu::one_point;

use config::{Format, Overrides, RunConfig};

/// Exact genus-two sewing data and torus degeneration checks.
#[derive(Parser, Debug)]
#[command(name = "degen", version)]
struct Cli {
    /// Truncation order in the sewing parameter eps.
    #[arg(long, global = true)]
    eps_order: Option<u32>,
    /// Truncation order in q (and q1, q2).
    #[arg(long, global = true)]
    q_order: Option<usize>,
    /// Largest Virasoro weight used.
    #[arg(long, global = true)]
    max_weight: Option<u32>,
    /// Size of the truncated sewing matrices (at least the eps order).
    #[arg(long, global = true)]
    matrix_size: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Flat key=value file using the long flag names as keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parameters of the exponential maps, beta_2 through beta_max.
    Beta {
        #[arg(long, default_value_t = 14)]
        max: u32,
    },
    /// Weight components of the vacuum vector lambda, up to --max-weight.
    Lambda,
    /// Print one exact object.
    Compute {
        #[arg(value_enum)]
        object: Object,
        /// Weight of the Eisenstein series.
        #[arg(long)]
        k: Option<u32>,
        /// Parts of a Virasoro descendant, e.g. 4,2,2.
        #[arg(long)]
        partition: Option<String>,
        #[arg(long, value_enum, default_value_t = BasisArg::Z)]
        basis: BasisArg,
        #[command(flatten)]
        module: ModuleArgs,
    },
    /// Run a verification suite; the exit status is 0 only if every check passes.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Largest l in the H_l check (defaults to eps order / 2).
        #[arg(long)]
        l_max: Option<u32>,
        #[command(flatten)]
        module: ModuleArgs,
    },
}

#[derive(Args, Debug)]
struct ModuleArgs {
    #[arg(long, default_value = "0")]
    alpha_sq: String,
    #[arg(long, default_value = "0")]
    beta_sq: String,
    #[arg(long, default_value = "0")]
    alpha_dot_beta: String,
    #[arg(long, default_value_t = 1)]
    rank: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Object {
    Eisenstein,
    Eta,
    TauDegen,
    Period,
    Z2Heisenberg,
    Z2Module,
    Onepoint,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    Z,
    Theta,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    All,
    #[value(name = "detHi")]
    DetHi,
    HeisenbergDegen,
    ThetaDegen,
    ModularIdentities,
    Structure,
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<degen::Error> for Failure {
    fn from(e: degen::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_rational(flag: &str, s: &str) -> Result<Rational, Failure> {
    rational::parse(s).map_err(|_| usage(format!("--{flag}: not a rational number: {s:?}")))
}

impl ModuleArgs {
    fn pair(&self) -> Result<ModulePair, Failure> {
        if self.rank == 0 {
            return Err(usage("--rank must be positive"));
        }
        Ok(ModulePair {
            rank: self.rank,
            alpha_sq: parse_rational("alpha-sq", &self.alpha_sq)?,
            beta_sq: parse_rational("beta-sq", &self.beta_sq)?,
            alpha_dot_beta: parse_rational("alpha-dot-beta", &self.alpha_dot_beta)?,
        })
    }
}

fn emit(cfg: &RunConfig, table: impl FnOnce() -> String, json: impl FnOnce() -> Value) {
    match cfg.format {
        Format::Table => println!("{}", table()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&json()).expect("json")),
    }
}

fn cmd_beta(cfg: &RunConfig, max: u32) -> Outcome {
    if max < 2 || max % 2 == 1 {
        return Err(usage(format!("--max must be even and at least 2, got {max}")));
    }
    let betas = beta_coefficients(max as usize)?;
    let rows: Vec<(u32, &Rational)> = (2..=max).step_by(2).map(|k| (k, &betas[k as usize - 1])).collect();
    emit(
        cfg,
        || {
            let mut out = String::from("k  beta_k");
            for (k, b) in &rows {
                out.push_str(&format!("\n{k:<2} {}", rational::format(b)));
            }
            out
        },
        || Value::Array(rows.iter().map(|(k, b)| json!({"k": k, "beta": rational::format(b)})).collect()),
    );
    Ok(())
}

fn cmd_lambda(cfg: &RunConfig) -> Outcome {
    let w = cfg.max_weight;
    if w % 2 == 1 {
        return Err(usage(format!("--max-weight must be even for lambda, got {w}")));
    }
    let product = lambda_vector(w)?;
    let agree = product == lambda_vector_direct(w);
    emit(
        cfg,
        || {
            let mut out = String::new();
            for (n, v) in product.iter().enumerate().step_by(2) {
                out.push_str(&format!("lambda^({n}) = {v}\n"));
            }
            out.push_str(&format!("constructions agree: {}", if agree { "yes" } else { "no" }));
            out
        },
        || {
            let weights: Vec<Value> = product
                .iter()
                .enumerate()
                .step_by(2)
                .map(|(n, v)| json!({"weight": n, "state": v}))
                .collect();
            json!({"weights": weights, "constructions_agree": agree})
        },
    );
    if agree {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_compute(cfg: &RunConfig, object: Object, k: Option<u32>, partition: Option<&str>, basis: BasisArg, module: &ModuleArgs) -> Outcome {
    let (q, e, size) = (cfg.q_order, cfg.eps_order, cfg.matrix_size);
    match object {
        Object::Eisenstein => {
            let k = k.ok_or_else(|| usage("compute eisenstein needs --k"))?;
            let s = eisenstein(k, q)?;
            emit(cfg, || s.to_string(), || s.to_json());
        }
        Object::Eta => {
            let s = eta_normalized(q);
            emit(cfg, || s.to_string(), || s.to_json());
        }
        Object::TauDegen => {
            let s = degenerate_tau(q, e, size)?;
            emit(cfg, || s.to_string(), || s.to_json().expect("even series"));
        }
        Object::Period => {
            let pd = period_matrix(q, q, e, size)?;
            emit(
                cfg,
                || format!("d11 = {}\nd22 = {}\nd12 = {}", pd.d11, pd.d22, pd.d12),
                || {
                    json!({
                        "d11": pd.d11.to_json().expect("even series"),
                        "d22": pd.d22.to_json().expect("even series"),
                        "d12": pd.d12.to_json().expect("even series"),
                    })
                },
            );
        }
        Object::Z2Heisenberg => {
            let z = z2_heisenberg(q, q, e, size)?;
            emit(cfg, || z.to_string(), || z.to_json().expect("even series"));
        }
        Object::Z2Module => {
            let p = module.pair()?;
            if !p.gram_ok() {
                eprintln!("warning: (alpha.beta)^2 exceeds (alpha.alpha)(beta.beta)");
            }
            let z = z2_module_pair(&p, q, q, e, size)?;
            emit(cfg, || z.to_string(), || z.to_json().expect("even series"));
        }
        Object::Onepoint => {
            let text = partition.ok_or_else(|| usage("compute onepoint needs --partition"))?;
            let p: Partition = text.parse().map_err(|e: degen::Error| usage(format!("--partition: {e}")))?;
            let op = one_point(&degen::virasoro::VirState::monomial(p, degen::virasoro::CPolynomial::one()), q);
            let op = match basis {
                BasisArg::Z => op,
                BasisArg::Theta => op.to_theta_basis()?,
            };
            emit(cfg, || op.to_string(), || serde_json::to_value(&op).expect("operator json"));
        }
    }
    Ok(())
}

fn cmd_verify(cfg: &RunConfig, suite: Suite, l_max: Option<u32>, module: &ModuleArgs) -> Outcome {
    let o = cfg.orders();
    match suite {
        Suite::DetHi if l_max.is_some_and(|l| 2 * l > o.eps_trunc) => {
            return Err(usage(format!("--l-max may be at most eps order / 2 = {}", o.eps_trunc / 2)));
        }
        Suite::ThetaDegen => {
            let p = module.pair()?;
            if p.beta_sq != rational::zero() || p.alpha_dot_beta != rational::zero() {
                return Err(usage("theta-degen needs --beta-sq 0 and --alpha-dot-beta 0"));
            }
            if o.max_weight < o.eps_trunc {
                return Err(usage("theta-degen needs --max-weight at least --eps-order"));
            }
        }
        Suite::All if o.max_weight < o.eps_trunc => {
            return Err(usage("verify all needs --max-weight at least --eps-order"));
        }
        _ => {}
    }
    let report: DegenerationReport = match suite {
        Suite::All => verify_all(&o),
        Suite::DetHi => verify_det_hi(&o, l_max.unwrap_or(o.eps_trunc / 2)),
        Suite::HeisenbergDegen => verify_heisenberg_degeneration(&o),
        Suite::ThetaDegen => verify_theta_degeneration(&module.pair()?, &o),
        Suite::ModularIdentities => verify_modular_identities(o.q_trunc),
        Suite::Structure => verify_structure(o.max_weight, o.q_trunc),
    };
    emit(cfg, || report.to_string(), || serde_json::to_value(&report).expect("report json"));
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn run(cli: Cli) -> Outcome {
    let flags = Overrides {
        eps_order: cli.eps_order,
        q_order: cli.q_order,
        max_weight: cli.max_weight,
        matrix_size: cli.matrix_size,
        format: cli.format,
    };
    let cfg = RunConfig::resolve(cli.config.as_deref(), &flags).map_err(Failure::Usage)?;
    match &cli.command {
        Command::Beta { max } => cmd_beta(&cfg, *max),
        Command::Lambda => cmd_lambda(&cfg),
        Command::Compute {
            object,
            k,
            partition,
            basis,
            module,
        } => cmd_compute(&cfg, *object, *k, partition.as_deref(), *basis, module),
        Command::Verify { suite, l_max, module } => cmd_verify(&cfg, *suite, *l_max, module),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
