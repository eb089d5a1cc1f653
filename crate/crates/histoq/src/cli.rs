//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use histoq_core::continuum::QuadratureSpec;
use histoq_core::hilbert::Tolerances;

use crate::commands::{self, EnsembleArgs, ParticleArgs, SpacetimeArgs, SpinArgs, TwoSlitArgs};
use crate::error::{CliError, CliResult};
use crate::format::parse_angle;
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "histoq",
    version,
    about = "Candidate probabilities and decoherence classification for histories of closed quantum systems",
    allow_negative_numbers = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Medium decoherence tolerance on |D(α,β)|, α ≠ β.
    #[arg(long = "tol-md", global = true, default_value_t = 1e-8)]
    pub tol_md: f64,
    /// Tolerance on |Im <Ψ|C_α|Ψ>|.
    #[arg(long = "tol-rlp", global = true, default_value_t = 1e-8)]
    pub tol_rlp: f64,
    /// Largest negative candidate probability still counted as positive.
    #[arg(long = "tol-lp", global = true, default_value_t = 1e-10)]
    pub tol_lp: f64,
    /// Absolute quadrature tolerance for the continuum models.
    #[arg(long = "quad-abs-tol", global = true, default_value_t = 1e-10)]
    pub quad_abs_tol: f64,
    /// Relative quadrature tolerance for the continuum models.
    #[arg(long = "quad-rel-tol", global = true, default_value_t = 1e-8)]
    pub quad_rel_tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Three-box model: both history sets, conditionals and verdicts.
    Threebox,
    /// Spin-1/2 positivity region over a (θ, φ) grid for each δ.
    Spin(SpinFlags),
    /// Two-slit screen bins and the bin-width positivity scan.
    Twoslit(TwoSlitFlags),
    /// Free-particle localization p_L(Δ) and D(L, L̄) sweep.
    Particle(ParticleFlags),
    /// Spacetime coarse graining p_R(X) and D(R, R̄) sweep.
    Spacetime(SpacetimeFlags),
    /// Ensemble candidate probabilities and the positivity horizon.
    Ensemble(EnsembleFlags),
    /// Classify the history set described by a JSON model file.
    Classify(ClassifyFlags),
}

/// Angles accept plain numbers or multiples of pi (`pi/4`, `3pi/8`).
#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SpinFlags {
    /// Angle between the two measurement directions; repeat for several
    /// panels. Default: pi/2, pi/4, pi/8.
    #[arg(long = "delta", value_parser = parse_angle, allow_hyphen_values = true)]
    pub deltas: Vec<f64>,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "0")]
    pub theta_min: f64,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "pi")]
    pub theta_max: f64,
    /// Points on the closed θ interval.
    #[arg(long, default_value_t = 51)]
    pub theta_points: usize,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "0")]
    pub phi_min: f64,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "pi")]
    pub phi_max: f64,
    /// Points strictly inside the φ interval.
    #[arg(long, default_value_t = 49)]
    pub phi_points: usize,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct TwoSlitFlags {
    #[arg(long, default_value_t = 60.0)]
    pub kd: f64,
    #[arg(long = "kD", default_value_t = 60.0)]
    pub k_big_d: f64,
    /// Number of equal screen bins.
    #[arg(long, default_value_t = 64)]
    pub bins: usize,
    /// Screen window; both ends default to ±D/2.
    #[arg(long, requires = "y_max")]
    pub y_min: Option<f64>,
    #[arg(long, requires = "y_min")]
    pub y_max: Option<f64>,
    /// Descending trial widths for the positivity scan, in fringe spacings.
    #[arg(long, value_delimiter = ',', default_value = "2,1,0.5,0.25,0.1")]
    pub scan_widths: Vec<f64>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ParticleFlags {
    #[arg(long, default_value_t = 1e-2)]
    pub lambda_over_sigma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    /// Largest half-width Δ, in units of σ; the grid starts at 0.
    #[arg(long, default_value_t = 10.0)]
    pub delta_max: f64,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SpacetimeFlags {
    /// K0 σ; negative means moving toward the wall.
    #[arg(long, default_value_t = -20.0)]
    pub k0_sigma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    /// Grid of final centres X, in units of σ.
    #[arg(long, default_value_t = -2.0)]
    pub x_min: f64,
    #[arg(long, default_value_t = 6.0)]
    pub x_max: f64,
    #[arg(long, default_value_t = 50)]
    pub points: usize,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct EnsembleFlags {
    /// A = |<Ψ|C₁|Ψ>|.
    #[arg(long, default_value_t = 0.5)]
    pub amplitude: f64,
    /// φ = arg <Ψ|C₁|Ψ>.
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "pi/4")]
    pub phase: f64,
    #[arg(long, default_value_t = 50)]
    pub n_max: usize,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ClassifyFlags {
    /// JSON model file.
    pub model: PathBuf,
}

impl Cli {
    pub fn tolerances(&self) -> CliResult<Tolerances> {
        for (name, v) in [("tol-md", self.tol_md), ("tol-rlp", self.tol_rlp), ("tol-lp", self.tol_lp)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(CliError::Config(format!("--{name} = {v} must be a non-negative number")));
            }
        }
        Ok(Tolerances { md: self.tol_md, rlp: self.tol_rlp, lp: self.tol_lp })
    }

    pub fn quadrature(&self) -> CliResult<QuadratureSpec> {
        let q = QuadratureSpec { abs_tol: self.quad_abs_tol, rel_tol: self.quad_rel_tol, ..QuadratureSpec::default() };
        q.validate()?;
        Ok(q)
    }

    /// Runs the selected subcommand.
    pub fn run(&self) -> CliResult<Report> {
        let tol = self.tolerances()?;
        let q = self.quadrature()?;
        let continuum = matches!(self.command, Command::Twoslit(_) | Command::Particle(_) | Command::Spacetime(_));
        let mut report = match &self.command {
            Command::Threebox => commands::cmd_threebox(&tol),
            Command::Spin(f) => {
                let deltas = if f.deltas.is_empty() { SpinArgs::default().deltas } else { f.deltas.clone() };
                commands::cmd_spin(
                    &SpinArgs {
                        deltas,
                        theta_min: f.theta_min,
                        theta_max: f.theta_max,
                        theta_points: f.theta_points,
                        phi_min: f.phi_min,
                        phi_max: f.phi_max,
                        phi_points: f.phi_points,
                    },
                    &tol,
                )
            }
            Command::Twoslit(f) => commands::cmd_twoslit(
                &TwoSlitArgs {
                    kd: f.kd,
                    k_big_d: f.k_big_d,
                    bins: f.bins,
                    y_range: f.y_min.zip(f.y_max),
                    scan_widths: f.scan_widths.clone(),
                },
                &q,
            ),
            Command::Particle(f) => commands::cmd_particle(
                &ParticleArgs {
                    lambda_over_sigma: f.lambda_over_sigma,
                    sigma: f.sigma,
                    mass: f.mass,
                    delta_max: f.delta_max,
                    points: f.points,
                },
                &q,
            ),
            Command::Spacetime(f) => commands::cmd_spacetime(
                &SpacetimeArgs {
                    k0_sigma: f.k0_sigma,
                    sigma: f.sigma,
                    mass: f.mass,
                    x_min: f.x_min,
                    x_max: f.x_max,
                    points: f.points,
                },
                &q,
            ),
            Command::Ensemble(f) => {
                commands::cmd_ensemble(&EnsembleArgs { amplitude: f.amplitude, phase: f.phase, n_max: f.n_max })
            }
            Command::Classify(f) => commands::cmd_classify(&f.model, &tol),
        }?;
        report.tolerances = Some(tol);
        if continuum {
            report.quadrature = Some(q);
        }
        Ok(report)
    }
}
