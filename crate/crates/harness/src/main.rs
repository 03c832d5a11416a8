use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use wakkit::suite::{run_suite, SuiteOptions};
use wakkit::{limits_from_env, load};
use wakkit_core::choice::Chooser;

#[derive(Parser)]
#[command(name = "wakkit", about = "Cotorsion pairs, trivial extensions and stable functors over small prime fields", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an instance file and validate all of its objects.
    Validate { file: PathBuf },
    /// Compute the fixed special preenvelope of a named module.
    Preenv {
        file: PathBuf,
        #[arg(long)]
        module: String,
    },
    /// Apply the functor to a named pair and print its presentation.
    ApplyS {
        file: PathBuf,
        #[arg(long)]
        pair: String,
    },
    /// Build the triangle of a named short exact sequence of pairs.
    Triangle {
        file: PathBuf,
        #[arg(long)]
        ses: String,
    },
    /// Run the verification suite; one line per check, exit 0 iff all pass.
    Verify {
        file: PathBuf,
        #[arg(long)]
        checks: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the suite and emit the structured report.
    Report {
        file: PathBuf,
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        checks: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn print_mat(m: &wakkit_core::exactlin::Mat) {
    for r in 0..m.rows {
        let row: Vec<String> = (0..m.cols).map(|c| m.at(r, c).to_string()).collect();
        println!("    [{}]", row.join(" "));
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    let limits = limits_from_env();
    match cli.command {
        Command::Validate { file } => {
            let setup = load(&file, limits)?;
            println!(
                "{}: ok (A dim {}, B dim {}, T dim {}, {} modules, {} pairs, {} sequences)",
                setup.name,
                setup.functor.t.left_alg.dim(),
                setup.functor.t.right_alg.dim(),
                setup.functor.t.dim,
                setup.a_modules.len(),
                setup.pairs.len(),
                setup.ses.len() + setup.pair_ses.len(),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Preenv { file, module } => {
            let mut setup = load(&file, limits)?;
            let m = setup.a_module(&module)?;
            let pre = setup
                .functor
                .fixed_preenvelope(&m)
                .map_err(anyhow::Error::msg)?;
            println!(
                "special V-preenvelope of {} (dim {}): V dim {}, W dim {}, {} rounds",
                module, m.dim, pre.v.dim, pre.w.dim, pre.rounds
            );
            println!("  alpha:");
            print_mat(&pre.alpha);
            Ok(ExitCode::SUCCESS)
        }
        Command::ApplyS { file, pair } => {
            let mut setup = load(&file, limits)?;
            let x = setup.pair(&pair)?;
            let s = setup.functor.s_of(&x).map_err(anyhow::Error::msg)?;
            println!(
                "S({}) has dim {} over T(B); presentation: 0 → DT⊗X (dim {}) → L(V(X)) (dim {}) → S → 0",
                pair,
                s.module.dim,
                s.dt_pair.dim(),
                s.col.module.dim
            );
            println!("  embedding:");
            print_mat(&s.emb);
            let projective = setup
                .functor
                .stable_b
                .ctx
                .is_projective(&s.module)
                .map_err(anyhow::Error::msg)?;
            println!("  stably zero: {}", projective);
            Ok(ExitCode::SUCCESS)
        }
        Command::Triangle { file, ses } => {
            let mut setup = load(&file, limits)?;
            let ps = setup
                .pair_ses
                .get(&ses)
                .cloned()
                .ok_or_else(|| anyhow::anyhow!("unknown pair sequence {:?}", ses))?;
            let tri = setup
                .functor
                .s_triangle(&ps, &mut Chooser::First)
                .map_err(anyhow::Error::msg)?;
            println!(
                "triangle of {}: S(X1) dim {} → S'(X2) dim {} → S(X3) dim {} → Σ S(X1) dim {}",
                ses, tri.row.x.dim, tri.row.y.dim, tri.row.z.dim, tri.sigma_s1.dim
            );
            println!("  connecting morphism:");
            print_mat(&tri.connecting);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { file, checks, seed } => {
            let mut setup = load(&file, limits)?;
            let opts = SuiteOptions { seed, selection: checks };
            let report = run_suite(&mut setup, &opts);
            for c in &report.checks {
                let bound = c.bound.map(|b| format!(" [bound {}]", b)).unwrap_or_default();
                println!("{:<4} {}{}", c.status, c.name, bound);
            }
            println!(
                "{} passed, {} failed, {} skipped",
                report.passed, report.failed, report.skipped
            );
            Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Report { file, format, checks, seed } => {
            let mut setup = load(&file, limits)?;
            let opts = SuiteOptions { seed, selection: checks };
            let report = run_suite(&mut setup, &opts);
            match format.as_str() {
                "json" => println!("{}", report.to_json()),
                _ => print!("{}", report.to_text()),
            }
            Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}
