//! `sp2n`: batch front end for center generators, characters, ladders and
//! operators on expansion files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sp2n::center::{center_generator_with, central_defect, SignRule};
use sp2n::nh::{char_projection, dk_operator, omega_op, FourierExpansion};
use sp2n::rep::{scalar_ladder, GlIrrep};
use sp2n::verify::{run_suite, Options, Suite};
use sp2n::weights::{dot_orbit, infinitesimal_character, Weight};
use sp2n::algebra::fmt_rat;
use sp2n::GenOrder;

#[derive(Parser)]
#[command(name = "sp2n", version, about = "Exact computations for sp(2n) and nearly holomorphic expansions")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the center generator D_2r.
    Center {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Block order for the normal form, e.g. hxypm or pmhxy.
        #[arg(long)]
        normal_form: Option<String>,
        #[arg(long)]
        check_central: bool,
        /// `transpose` (default) or `isolated`.
        #[arg(long, default_value = "transpose")]
        sign_rule: String,
    },
    /// Print chi_k(D_2r).
    Infchar {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        weight: String,
        #[arg(long)]
        r: usize,
    },
    /// Print the dot orbit of a weight.
    Dot {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        weight: String,
    },
    /// Compute and certify the scalar ladder element Y.
    Ladder {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        weight: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply Omega_2i or the ladder operator to an expansion file.
    Apply {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        n: Option<usize>,
        /// Required for `omega`.
        #[arg(long)]
        i: Option<usize>,
        /// Highest weight of the value space of the input.
        #[arg(long)]
        rep: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply the character projection for `weight` among `candidates`.
    Project {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        weight: String,
        /// Semicolon-separated weights, e.g. "5,3;4,2".
        #[arg(long)]
        candidates: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a property suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        long: bool,
        #[arg(long, default_value_t = Options::default().seed)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Omega,
    Dk,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Lie,
    Center,
    Chars,
    Verma,
    Nhcalc,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Lie => Suite::Lie,
            SuiteArg::Center => Suite::Center,
            SuiteArg::Chars => Suite::Chars,
            SuiteArg::Verma => Suite::Verma,
            SuiteArg::Nhcalc => Suite::NhCalc,
            SuiteArg::All => Suite::All,
        }
    }
}

/// A failure with its exit code: 2 flags, 3 verification, 4 computation.
struct Failure {
    code: u8,
    msg: String,
}

fn flag(msg: impl ToString) -> Failure {
    Failure { code: 2, msg: msg.to_string() }
}

fn computation(msg: impl ToString) -> Failure {
    Failure { code: 4, msg: msg.to_string() }
}

type Outcome = Result<String, Failure>;

fn weight_of_rank(text: &str, n: usize) -> Result<Weight, Failure> {
    let w: Weight = text.parse().map_err(flag)?;
    if w.rank() != n {
        return Err(flag(format!("weight {} does not have rank {}", w, n)));
    }
    Ok(w)
}

fn read_expansion(path: &Path, n: Option<usize>) -> Result<FourierExpansion, Failure> {
    let text = fs::read_to_string(path).map_err(|e| computation(format!("{}: {}", path.display(), e)))?;
    let f = FourierExpansion::from_json(&text).map_err(|e| computation(format!("{}: {}", path.display(), e)))?;
    if let Some(n) = n {
        if f.rank() != n {
            return Err(flag(format!("--n {} but {} has rank {}", n, path.display(), f.rank())));
        }
    }
    Ok(f)
}

fn emit(text: String, out: Option<&Path>) -> Outcome {
    match out {
        Some(p) => {
            fs::write(p, &text).map_err(|e| computation(format!("{}: {}", p.display(), e)))?;
            Ok(format!("wrote {}\n", p.display()))
        }
        None => Ok(text),
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Center { n, r, normal_form, check_central, sign_rule } => {
            if n == 0 || r == 0 {
                return Err(flag("--n and --r must be positive"));
            }
            let rule: SignRule = sign_rule.parse().map_err(flag)?;
            let ord = normal_form.map(|s| s.parse::<GenOrder>()).transpose().map_err(flag)?;
            let d = center_generator_with(r, n, rule);
            let mut out = match ord {
                Some(o) => d.normal_form(o).to_string(),
                None => d.to_string(),
            };
            if check_central {
                if let Some((g, c)) = central_defect(&d) {
                    let c = c.to_string().trim_end().replace('\n', "; ");
                    return Err(Failure { code: 3, msg: format!("D_{} does not commute with {}: {}", 2 * r, g, c) });
                }
                out.push_str("CENTRAL: yes\n");
            }
            Ok(out)
        }
        Command::Infchar { n, weight, r } => {
            let k = weight_of_rank(&weight, n)?;
            if r == 0 {
                return Err(flag("--r must be positive"));
            }
            let d = center_generator_with(r, n, SignRule::default());
            let chi = infinitesimal_character(&k, &d).map_err(computation)?;
            Ok(format!("{}\n", fmt_rat(&chi)))
        }
        Command::Dot { n, weight } => {
            let k = weight_of_rank(&weight, n)?;
            let orbit = dot_orbit(&k).map_err(flag)?;
            Ok(orbit.iter().map(|w| format!("{}\n", w)).collect())
        }
        Command::Ladder { n, weight, out } => {
            let k = weight_of_rank(&weight, n)?;
            let y = scalar_ladder(&k).map_err(computation)?;
            if !y.certify().map_err(computation)? {
                return Err(Failure { code: 3, msg: format!("ladder for {} fails its certificate", k) });
            }
            emit(y.to_text(), out.as_deref())
        }
        Command::Apply { op, n, i, rep, input, out } => {
            let f = read_expansion(&input, n)?;
            let k = weight_of_rank(&rep, f.rank())?;
            if &k != f.weight() {
                return Err(flag(format!("--rep {} but {} is valued in {}", k, input.display(), f.weight())));
            }
            let g = match op {
                Op::Omega => {
                    let i = i.ok_or_else(|| flag("--op omega needs --i"))?;
                    if i == 0 || i > f.rank() {
                        return Err(flag(format!("--i must lie in 1..={}", f.rank())));
                    }
                    let rho = GlIrrep::new(&k).map_err(computation)?;
                    omega_op(i, &f, &rho).map_err(computation)?
                }
                Op::Dk => {
                    if i.is_some() {
                        return Err(flag("--i only applies to --op omega"));
                    }
                    dk_operator(&k, &f).map_err(computation)?
                }
            };
            emit(g.to_json().map_err(computation)?, out.as_deref())
        }
        Command::Project { n, weight, candidates, input, out } => {
            let f = read_expansion(&input, n)?;
            let k = weight_of_rank(&weight, f.rank())?;
            let cands = candidates
                .split(';')
                .map(|s| weight_of_rank(s.trim(), f.rank()))
                .collect::<Result<Vec<_>, _>>()?;
            if !cands.contains(&k) {
                return Err(flag(format!("{} is not among the candidates", k)));
            }
            let rho = GlIrrep::new(f.weight()).map_err(computation)?;
            let g = char_projection(&k, &cands, &f, &rho).map_err(computation)?;
            emit(g.to_json().map_err(computation)?, out.as_deref())
        }
        Command::Verify { suite, n, long, seed } => {
            let opts = Options { n, long, seed };
            let report = run_suite(suite.into(), &opts).map_err(computation)?;
            if report.passed() {
                Ok(report.to_string())
            } else {
                Err(Failure { code: 3, msg: format!("verification failed\n{}", report) })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{}", e);
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e.to_string();
            let first = first.lines().next().unwrap_or("bad arguments").trim_start_matches("error: ");
            eprintln!("ERROR 2: {}", first);
            return ExitCode::from(2);
        }
    };
    match run(cli.cmd) {
        Ok(text) => {
            print!("{}", text);
            ExitCode::SUCCESS
        }
        Err(f) => {
            let mut lines = f.msg.lines();
            eprintln!("ERROR {}: {}", f.code, lines.next().unwrap_or(""));
            for l in lines {
                println!("{}", l);
            }
            ExitCode::from(f.code)
        }
    }
}
