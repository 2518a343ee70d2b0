use clap::{Parser, Subcommand, ValueEnum};
use ctxlab::runner::{sweep_csv, write_scenario_report};
use ctxlab::{
    bounds_report, render_checks_json, render_checks_text, render_scenario_text, reproduce_report,
    scenario_report, sweep, threshold, write_sweep_csv, BoundExpr, BoundModel, ScenarioConfig,
    ScenarioKind, SweepParam,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ctxlab",
    version,
    about = "Sequential measurements on the Peres-Mermin square with distant parties: \
             exact simulation and classical bound oracles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute every published quantity and report pass/fail per check
    Reproduce {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exact classical bound, witness, and enumeration size for an expression
    Bounds {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long, value_enum)]
        expr: ExprArg,
    },
    /// Evaluate a scenario across an evenly spaced parameter grid
    Sweep {
        #[arg(long, value_enum)]
        scenario: ScenarioArg,
        #[arg(long, value_enum)]
        param: ParamArg,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: usize,
        /// Write CSV here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
        /// Ancilla angle in radians, fixed while another parameter sweeps
        #[arg(long, default_value_t = std::f64::consts::PI / 8.0)]
        chi: f64,
        /// Visibility, fixed while another parameter sweeps
        #[arg(long, default_value_t = 1.0)]
        visibility: f64,
        /// Entanglement angle for the nonmax scenario (defaults to pi/4
        /// when it is not the swept parameter)
        #[arg(long)]
        theta: Option<f64>,
    },
    /// Bisect for the parameter value where the total crosses the bound
    Threshold {
        #[arg(long, value_enum)]
        scenario: ScenarioArg,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 18.0)]
        target: f64,
        #[arg(long, default_value_t = std::f64::consts::PI / 8.0)]
        chi: f64,
    },
    /// Evaluate one scenario described by a JSON config file
    Scenario {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScenarioArg {
    Singlet,
    Nonmax,
    Ghz,
}

impl From<ScenarioArg> for ScenarioKind {
    fn from(value: ScenarioArg) -> Self {
        match value {
            ScenarioArg::Singlet => ScenarioKind::Singlet,
            ScenarioArg::Nonmax => ScenarioKind::Nonmax,
            ScenarioArg::Ghz => ScenarioKind::Ghz,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ParamArg {
    Visibility,
    Theta,
    #[value(name = "chi_angle")]
    ChiAngle,
}

impl From<ParamArg> for SweepParam {
    fn from(value: ParamArg) -> Self {
        match value {
            ParamArg::Visibility => SweepParam::Visibility,
            ParamArg::Theta => SweepParam::Theta,
            ParamArg::ChiAngle => SweepParam::ChiAngle,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Nchvt,
    Nclhvt,
    Lhvt,
    Table,
}

impl From<ModelArg> for BoundModel {
    fn from(value: ModelArg) -> Self {
        match value {
            ModelArg::Nchvt => BoundModel::Nchvt,
            ModelArg::Nclhvt => BoundModel::Nclhvt,
            ModelArg::Lhvt => BoundModel::Lhvt,
            ModelArg::Table => BoundModel::Table,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ExprArg {
    #[value(name = "T")]
    T,
    #[value(name = "S")]
    S,
    #[value(name = "TS")]
    TS,
    #[value(name = "Sprime")]
    Sprime,
    #[value(name = "TSprime")]
    TSprime,
    #[value(name = "chsh")]
    Chsh,
    #[value(name = "bellsum")]
    BellSum,
}

impl From<ExprArg> for BoundExpr {
    fn from(value: ExprArg) -> Self {
        match value {
            ExprArg::T => BoundExpr::T,
            ExprArg::S => BoundExpr::S,
            ExprArg::TS => BoundExpr::TS,
            ExprArg::Sprime => BoundExpr::Sprime,
            ExprArg::TSprime => BoundExpr::TSprime,
            ExprArg::Chsh => BoundExpr::Chsh,
            ExprArg::BellSum => BoundExpr::BellSum,
        }
    }
}

fn run(cli: Cli) -> ctxlab::Result<ExitCode> {
    match cli.command {
        Command::Reproduce { format } => {
            let report = reproduce_report()?;
            match format {
                Format::Text => print!("{}", render_checks_text(&report)),
                Format::Json => print!("{}", render_checks_json(&report)?),
            }
            Ok(if report.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Bounds { model, expr } => {
            print!("{}", bounds_report(model.into(), expr.into())?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            scenario,
            param,
            from,
            to,
            steps,
            out,
            chi,
            visibility,
            theta,
        } => {
            let rows = sweep(
                scenario.into(),
                param.into(),
                from,
                to,
                steps,
                chi,
                visibility,
                theta,
            )?;
            match out {
                Some(path) => {
                    write_sweep_csv(&path, &rows)?;
                    println!("wrote {} rows to {}", rows.len(), path.display());
                }
                None => print!("{}", sweep_csv(&rows)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Threshold {
            scenario,
            tol,
            target,
            chi,
        } => {
            let result = threshold(scenario.into(), chi, target, tol)?;
            match result.kind {
                ScenarioKind::Nonmax => {
                    println!("theta threshold = {:.6}", result.param);
                    println!(
                        "d1*d2 at the crossing = {:.6}",
                        result.d1d2.expect("nonmax reports d1d2")
                    );
                }
                _ => println!("visibility threshold = {:.6}", result.param),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Scenario { config } => {
            let config = ScenarioConfig::load(&config)?;
            let report = scenario_report(&config)?;
            print!("{}", render_scenario_text(&report));
            if let Some(path) = &config.output_path {
                write_scenario_report(path, &report)?;
                println!("wrote report to {}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 3 })
        }
    }
}
