use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use nonlocal_core::config::{Problem, RunConfig, TrajectoryFormat};
use nonlocal_core::io::{write_trajectory_binary, write_trajectory_csv};
use nonlocal_core::kernels::SIGN_TOLERANCE;
use nonlocal_core::report::{InitialNorms, RunStatus, SolveReport};
use nonlocal_core::{
    compute_certificate, global_iterate, h2_norm, l2_slice, validate_kernels, w122_norm, Certificate,
    DuhamelMap, Error, PicardReport, Trajectory, ValidationReport,
};
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::CommonArgs;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failure,
    Usage,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::Failure => 1,
            Outcome::Usage => 2,
        }
    }
}

fn classify(error: &Error) -> Outcome {
    match error {
        Error::Config(_)
        | Error::Parse { .. }
        | Error::Io(_)
        | Error::InvalidGrid(_)
        | Error::InvalidParameter(_) => Outcome::Usage,
        _ => Outcome::Failure,
    }
}

/// Residual history carried by a solver diagnostic, as a non-converged report.
fn failed_picard(error: &Error) -> Option<PicardReport> {
    let (residuals, kappa) = match error {
        Error::Window { source, .. } => return failed_picard(source),
        Error::MaxIterations { residuals, .. } => (residuals.clone(), None),
        Error::RatioExceeded { residuals, kappa, .. } => (residuals.clone(), Some(*kappa)),
        _ => return None,
    };
    Some(PicardReport {
        iterations: residuals.len(),
        measured_ratios: residuals.windows(2).map(|w| w[1] / w[0]).collect(),
        converged: false,
        final_residual: residuals.last().copied().unwrap_or(f64::NAN),
        residuals,
        kappa,
    })
}

pub fn run(command: &str, args: &CommonArgs, windows: Option<usize>) -> Outcome {
    let started = Instant::now();
    let (config, base) = match RunConfig::load(&args.config) {
        Ok(loaded) => loaded,
        Err(e) => {
            eprintln!("error: {e}");
            return Outcome::Usage;
        }
    };
    let out_dir = args.out.clone().unwrap_or_else(|| base.join(&config.output.dir));
    let mut report = SolveReport::new(command, config.clone());
    let mut ctx = Run {
        config: &config,
        base: &base,
        args,
        out_dir: &out_dir,
        report: &mut report,
        started,
    };
    let outcome = match ctx.execute(command, windows) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e}");
            ctx.report.status = RunStatus::Failed;
            ctx.report.message = Some(e.to_string());
            if let Some(picard) = failed_picard(&e) {
                ctx.report.picard.push(picard);
            }
            classify(&e)
        }
    };
    match write_report(&out_dir, &config.output.report, &report) {
        Ok(path) => {
            println!("report: {}", path.display());
            outcome
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            Outcome::Usage
        }
    }
}

fn write_report(dir: &Path, name: &str, report: &SolveReport) -> anyhow::Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, render_report(report)?).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(path)
}

/// Pretty JSON with every float written to 17 significant digits.
fn render_report(report: &SolveReport) -> anyhow::Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FullPrecision(PrettyFormatter::new()));
    report.serialize(&mut ser).context("cannot serialize report")?;
    out.push(b'\n');
    Ok(String::from_utf8(out)?)
}

struct FullPrecision<'a>(PrettyFormatter<'a>);

impl Formatter for FullPrecision<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

struct Run<'a> {
    config: &'a RunConfig,
    base: &'a Path,
    args: &'a CommonArgs,
    out_dir: &'a Path,
    report: &'a mut SolveReport,
    started: Instant,
}

impl Run<'_> {
    fn execute(&mut self, command: &str, windows: Option<usize>) -> Result<Outcome, Error> {
        let problem = Problem::build(self.config, self.base)?;
        self.report.timings.setup_seconds = self.started.elapsed().as_secs_f64();
        match command {
            "validate-kernels" => Ok(self.validate_kernels(&problem)),
            "certify" => self.certify(&problem),
            "norms" => self.norms(&problem),
            "solve" => self.solve(&problem, 1),
            "global" => self.solve(&problem, windows.unwrap_or(self.config.solver.n_windows)),
            other => unreachable!("unknown command {other}"),
        }
    }

    fn validate_kernels(&mut self, p: &Problem) -> Outcome {
        let kernels = validate_kernels(&p.grid, &p.j, &p.g, SIGN_TOLERANCE);
        print_kernels(&kernels);
        let outcome = if kernels.passes {
            self.report.status = RunStatus::Certified;
            Outcome::Success
        } else {
            self.report.status = RunStatus::Uncertified;
            self.report.message = Some("kernel hypotheses fail".into());
            Outcome::Failure
        };
        self.report.kernels = Some(kernels);
        outcome
    }

    fn certificate(&mut self, p: &Problem, n_windows: usize) -> Result<Certificate, Error> {
        let params = p.window_params(n_windows)?;
        let s = &self.config.solver;
        let cert = compute_certificate(&p.grid, &params, &p.j, &p.g, &p.f, s.margin, s.support_threshold)?;
        print_certificate(&cert);
        self.report.kernels = Some(cert.kernels.clone());
        self.report.certificate = Some(cert.clone());
        Ok(cert)
    }

    fn certify(&mut self, p: &Problem) -> Result<Outcome, Error> {
        let cert = self.certificate(p, 1)?;
        self.report.timings.solve_seconds = self.started.elapsed().as_secs_f64();
        if cert.holds() {
            self.report.status = RunStatus::Certified;
            Ok(Outcome::Success)
        } else {
            self.report.status = RunStatus::Uncertified;
            self.report.message = Some(uncertified_reason(&cert));
            Ok(Outcome::Failure)
        }
    }

    fn norms(&mut self, p: &Problem) -> Result<Outcome, Error> {
        let initial = InitialNorms {
            l2: l2_slice(&p.grid, &p.u0),
            h2: h2_norm(&p.grid, &p.u0, &p.tail)?,
        };
        println!("u0_l2 = {:.16e}", initial.l2);
        println!("u0_h2 = {:.16e}", initial.h2);
        let map = DuhamelMap::new(&p.grid, p.params, &p.j, &p.g, &p.f, &p.u0)?;
        let norms = w122_norm(&p.grid, &map.free_evolution())?;
        println!("free_evolution_w122 = {:.16e}", norms.w122);
        self.report.initial = Some(initial);
        self.report.norms = Some(norms);
        self.report.status = RunStatus::Certified;
        self.report.timings.solve_seconds = self.started.elapsed().as_secs_f64();
        Ok(Outcome::Success)
    }

    fn solve(&mut self, p: &Problem, n_windows: usize) -> Result<Outcome, Error> {
        let cert = self.certificate(p, n_windows)?;
        let forced = !cert.holds();
        if forced && !self.args.force {
            self.report.status = RunStatus::Uncertified;
            self.report.message = Some(format!(
                "{}; refusing to solve without --force",
                uncertified_reason(&cert)
            ));
            eprintln!("error: {}", self.report.message.as_deref().unwrap_or_default());
            return Ok(Outcome::Failure);
        }
        let mut opts = self.config.picard_options();
        opts.kappa = Some(cert.kappa);
        opts.force = self.args.force;

        let solve_start = Instant::now();
        let params = p.window_params(n_windows)?;
        let map = DuhamelMap::new(&p.grid, params, &p.j, &p.g, &p.f, &p.u0)?;
        let (traj, reports) = global_iterate(&map, n_windows, &opts)?;
        for (i, r) in reports.iter().enumerate() {
            println!(
                "window {i}: {} iterations, residual {:.16e}",
                r.iterations, r.final_residual
            );
        }
        let norms = w122_norm(&p.grid, &traj)?;
        println!("w122 = {:.16e}", norms.w122);
        self.report.picard = reports;
        self.report.norms = Some(norms);
        self.report.timings.solve_seconds = solve_start.elapsed().as_secs_f64();

        let output_start = Instant::now();
        self.write_trajectory(p, &traj)?;
        self.report.timings.output_seconds = output_start.elapsed().as_secs_f64();
        self.report.status = if forced {
            self.report.message = Some(format!("forced run: {}", uncertified_reason(&cert)));
            RunStatus::Uncertified
        } else {
            RunStatus::Certified
        };
        Ok(Outcome::Success)
    }

    fn write_trajectory(&mut self, p: &Problem, traj: &Trajectory) -> Result<(), Error> {
        fs::create_dir_all(self.out_dir)?;
        let stem = &self.config.output.trajectory_stem;
        for format in &self.config.output.formats {
            let name = match format {
                TrajectoryFormat::Csv => format!("{stem}.csv"),
                TrajectoryFormat::Binary => format!("{stem}.bin"),
            };
            let path = self.out_dir.join(&name);
            match format {
                TrajectoryFormat::Csv => write_trajectory_csv(&path, &p.grid, traj)?,
                TrajectoryFormat::Binary => write_trajectory_binary(&path, &p.grid, traj)?,
            }
            println!("trajectory: {}", path.display());
            self.report.outputs.push(name);
        }
        Ok(())
    }
}

fn uncertified_reason(cert: &Certificate) -> String {
    if !cert.kernels.passes {
        match cert.kernels.violating_frequency {
            Some(p) => format!("Re J_hat > 0 at p = {p:.16e}"),
            None => "kernel hypotheses fail".into(),
        }
    } else {
        format!("kappa = {:.11e} >= 1", cert.kappa)
    }
}

fn print_kernels(k: &ValidationReport) {
    println!(
        "max_re_j_symbol = {:.16e} at p = {:.16e}",
        k.max_re_j_symbol, k.max_re_j_symbol_at
    );
    if let Some(p) = k.violating_frequency {
        println!("violating_frequency = {p:.16e}");
    }
    println!("j_l1 = {:.16e}", k.j_l1);
    println!("g_l1 = {:.16e}", k.g_l1);
    match k.g_second_derivative_l1 {
        Some(v) => println!("g_second_derivative_l1 = {v:.16e}"),
        None => println!("g_second_derivative_l1 = none"),
    }
    println!("kernels = {}", if k.passes { "PASS" } else { "FAIL" });
}

fn print_certificate(c: &Certificate) {
    print_kernels(&c.kernels);
    println!("nu = {:.16e}", c.nu);
    println!("l = {:.16e}", c.l);
    println!("kappa = {:.11e}", c.kappa);
    match (c.t_max, c.t_max_unbounded) {
        (_, true) => println!("t_max = unbounded"),
        (Some(t), _) => println!("t_max = {t:.16e}"),
        (None, _) => println!("t_max = none"),
    }
    println!(
        "nontrivial_support = {} (overlap {:.16e})",
        c.nontrivial_support, c.overlap_measure
    );
    println!("certificate = {}", if c.holds() { "PASS" } else { "FAIL" });
}
