use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use pwlcenter_core::analysis::{center_classify, AnalysisOptions, Verdict};
use pwlcenter_core::decompose::{construct_from_witness, find_common_witness, OutcomeKind};
use pwlcenter_core::flow::{integrate, PwlOde};
use pwlcenter_core::Error as CoreError;

use crate::error::CliError;
use crate::formats::{
    displacement_csv, read_coefficients, read_witness, to_json, trace_csv, write_file,
    CoefficientFile,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Construct,
    Decompose,
    Analyze,
}

/// Everything one invocation needs; built by the binary from its flags.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input: PathBuf,
    pub quad_tol: f64,
    /// Crossing-time tolerance of the flow.
    pub root_tol: f64,
    pub center_tol: f64,
    /// Interior scan points per finite band.
    pub grid: usize,
    pub x_range: Option<(f64, f64)>,
    pub out_dir: PathBuf,
    /// Echo the displacement CSV on stdout.
    pub csv: bool,
    /// Initial value of a solution to export as `trace.csv`.
    pub trace: Option<f64>,
}

impl RunConfig {
    pub fn new(command: Command, input: PathBuf) -> Self {
        let a = AnalysisOptions::default();
        RunConfig {
            command,
            input,
            quad_tol: a.flow.quad_tol,
            root_tol: a.flow.crossing_tol,
            center_tol: a.center_tol,
            grid: a.band_points,
            x_range: None,
            out_dir: PathBuf::from("."),
            csv: false,
            trace: None,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        for (name, v) in [
            ("quad-tol", self.quad_tol),
            ("root-tol", self.root_tol),
            ("center-tol", self.center_tol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Invalid(format!("--{name} must be positive, got {v}")));
            }
        }
        if self.grid < 3 {
            return Err(CliError::Invalid(format!("--grid must be at least 3, got {}", self.grid)));
        }
        if let Some((lo, hi)) = self.x_range {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(CliError::Invalid(format!("--x-range needs LO < HI, got {lo}:{hi}")));
            }
        }
        if self.trace.is_some_and(|x| !x.is_finite()) {
            return Err(CliError::Invalid("--trace needs a finite value".into()));
        }
        Ok(())
    }

    pub fn analysis_options(&self) -> AnalysisOptions {
        let mut o = AnalysisOptions::default();
        o.flow.quad_tol = self.quad_tol;
        o.flow.crossing_tol = self.root_tol;
        o.center_tol = self.center_tol;
        o.band_points = self.grid;
        o.x_range = self.x_range;
        o
    }

    pub fn run(&self) -> Result<String, CliError> {
        self.validate()?;
        match self.command {
            Command::Construct => cmd_construct(self),
            Command::Decompose => cmd_decompose(self),
            Command::Analyze => cmd_analyze(self),
        }
    }
}

fn prepare_out_dir(cfg: &RunConfig) -> Result<(), CliError> {
    fs::create_dir_all(&cfg.out_dir)
        .map_err(|source| CliError::Write { path: cfg.out_dir.clone(), source })
}

/// Writes `coefficients.json` from a witness file.
///
/// A non-simple zero of `b` still produces the file, then fails with `NonSimpleB`.
pub fn cmd_construct(cfg: &RunConfig) -> Result<String, CliError> {
    let w = read_witness(&cfg.input)?;
    let (a, b) = construct_from_witness(&w.p, &w.q, &w.h)?;
    let zeros = b.zeros()?;
    prepare_out_dir(cfg)?;
    let path = cfg.out_dir.join("coefficients.json");
    write_file(&path, &to_json(&CoefficientFile { a: a.clone(), b: b.clone() }))?;

    let mut msg = String::new();
    let _ = writeln!(msg, "wrote {}", path.display());
    let _ = writeln!(msg, "deg a = {}, deg b = {}", a.degree(), b.degree());
    let _ = writeln!(
        msg,
        "b has {} zeros on [0, 2pi), {}",
        zeros.len(),
        if zeros.all_simple() { "all simple" } else { "not all simple" }
    );
    match zeros.first_non_simple() {
        Some(t) => Err(CoreError::NonSimpleB { t }.into()),
        None => Ok(msg),
    }
}

/// Writes `report.json` with the decomposition outcome.
pub fn cmd_decompose(cfg: &RunConfig) -> Result<String, CliError> {
    let c = read_coefficients(&cfg.input)?;
    let outcome = find_common_witness(&c.a, &c.b)?;
    prepare_out_dir(cfg)?;
    let path = cfg.out_dir.join("report.json");
    write_file(&path, &to_json(&outcome))?;

    let kind = match &outcome.kind {
        OutcomeKind::Witness { witness } => format!("witness (deg h = {})", witness.h.degree()),
        OutcomeKind::FrequencyFactor { k } => format!("frequency_factor {k}"),
        OutcomeKind::None => "none".to_owned(),
    };
    Ok(format!(
        "wrote {}\nkind: {kind}, residual {:e}, frequency factor {}\n",
        path.display(),
        outcome.residual,
        outcome.frequency_factor
    ))
}

/// Writes `report.json` and `displacement.csv`, plus `trace.csv` when requested.
pub fn cmd_analyze(cfg: &RunConfig) -> Result<String, CliError> {
    let c = read_coefficients(&cfg.input)?;
    let ode = PwlOde::new(c.a, c.b)?;
    let opts = cfg.analysis_options();
    let report = center_classify(&ode, &opts)?;

    let trace = match cfg.trace {
        Some(x) => {
            let canon = ode.canonical()?;
            Some(integrate(&canon, 0.0, x, core::f64::consts::TAU, &opts.flow)?)
        }
        None => None,
    };

    prepare_out_dir(cfg)?;
    let report_path = cfg.out_dir.join("report.json");
    let csv_path = cfg.out_dir.join("displacement.csv");
    let csv = displacement_csv(&report.numeric.samples);
    write_file(&report_path, &to_json(&report))?;
    write_file(&csv_path, &csv)?;
    let mut msg = String::new();
    if let Some(trace) = &trace {
        let trace_path = cfg.out_dir.join("trace.csv");
        write_file(&trace_path, &trace_csv(trace))?;
        let _ = writeln!(msg, "wrote {}", trace_path.display());
    }

    if cfg.csv {
        return Ok(csv);
    }
    let verdict = match report.verdict {
        Verdict::GlobalCenter => "global_center",
        Verdict::NotGlobalCenter => "not_global_center",
        Verdict::Inconclusive => "inconclusive",
    };
    let _ = writeln!(msg, "wrote {}", report_path.display());
    let _ = writeln!(msg, "wrote {}", csv_path.display());
    let _ = writeln!(
        msg,
        "verdict: {verdict}, max |delta| {:e}, {} limit cycles, hypothesis {}, consistency {}",
        report.numeric.max_abs_displacement,
        report.numeric.limit_cycles.len(),
        if report.hypothesis.holds { "holds" } else { "fails" },
        report.consistency
    );
    Ok(msg)
}
