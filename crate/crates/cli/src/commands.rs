use std::path::{Path, PathBuf};

use cutjump_core::exact::rationalize;
use cutjump_core::forward::{
    builtin_pair, hardy_norm, jump_bound_check, mellin_coefficients, plancherel_check, AnalyticPair, Interpolant,
    JumpBoundReport, JumpFunction, PlancherelReport, Provenance,
};
use cutjump_core::hausdorff::{hausdorff_report, hausdorff_report_exact, HausdorffReport, RationalSequence, RealSequence};
use cutjump_core::quadrature::DoubleExponential;
use cutjump_core::transform::{
    add_noise, coefficient_integral_quadrature, pollaczek_coefficients, pollaczek_coefficients_integral, reconstruct,
    reconstruct_at, reconstructed_interpolant, truncation_sweep, Geometry, MomentSequence, PollaczekCoefficients,
    ReconstructionConfig, PHASE_CONVENTION,
};
use cutjump_core::Complex64;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::files::{csv_header, emit, grid_points, samples_csv, CoefficientFile, DegreeRange, GridSpec, SCHEMA_VERSION};

/// Label attached to outputs whose input fails the moment check.
pub const UNVERIFIED_HYPOTHESIS: &str = "unverified moment hypothesis";

fn warn(message: &str) {
    eprintln!("warning: {message}");
}

pub struct ForwardArgs {
    pub pair: String,
    pub beta: f64,
    pub last_index: usize,
    pub quadrature: bool,
    pub noise: f64,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

pub fn forward(args: &ForwardArgs) -> CliResult<()> {
    let pair = builtin_pair(&args.pair, args.beta)?;
    let (coefficients, mut provenance) = if args.quadrature {
        let q = mellin_coefficients(pair.jump(), args.last_index, &DoubleExponential::default())?;
        let note = format!(
            "{}: Mellin quadrature, max error estimate {:e}",
            pair.label(),
            q.max_error_estimate()
        );
        (q.sequence, note)
    } else {
        let note = match pair.name() {
            "log-power" => format!("{}: closed form a_n = 1/(n+beta)^2", pair.label()),
            _ => format!("{}: closed form a_n = 1/(n+beta)", pair.label()),
        };
        (pair.coefficients(args.last_index), note)
    };
    let (coefficients, epsilon) = if args.noise > 0.0 {
        provenance.push_str(&format!("; uniform noise in [-{0}, {0}], seed {1}", args.noise, args.seed));
        (add_noise(&coefficients, args.noise, args.seed)?, Some(args.noise))
    } else {
        (coefficients, None)
    };
    let file = CoefficientFile {
        schema_version: SCHEMA_VERSION.into(),
        label: pair.label(),
        coefficients: coefficients.values().to_vec(),
        epsilon,
        provenance,
    };
    emit(args.output.as_ref(), &file.to_json())
}

/// Moment check on the input; prints a warning and returns false on failure.
fn moment_hypothesis_holds(file: &CoefficientFile, exact: bool) -> CliResult<bool> {
    let report = hausdorff_check(&file.coefficients, exact)?;
    if !report.is_consistent() {
        warn(&format!("{UNVERIFIED_HYPOTHESIS}: {}", report.verdict));
    }
    Ok(report.is_consistent())
}

fn hausdorff_check(values: &[f64], exact: bool) -> CliResult<HausdorffReport> {
    let seq = RealSequence::new(values.to_vec())?;
    if exact {
        Ok(hausdorff_report_exact(&rationalized(values)?))
    } else {
        Ok(hausdorff_report(&seq)?)
    }
}

fn rationalized(values: &[f64]) -> CliResult<RationalSequence> {
    let exact = values
        .iter()
        .map(|v| rationalize(*v).ok_or_else(|| CliError::Input(format!("coefficient {v} is not finite"))))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(RationalSequence::new(exact)?)
}

fn truncate_input(a: MomentSequence, last_index: Option<usize>) -> CliResult<MomentSequence> {
    match last_index {
        Some(n) => Ok(a.truncated(n + 1)?),
        None => Ok(a),
    }
}

pub struct ReconstructArgs {
    pub input: PathBuf,
    pub degree: usize,
    pub last_index: Option<usize>,
    pub geometry: Geometry,
    pub grid: Option<GridSpec>,
    pub exact: bool,
    pub output: Option<PathBuf>,
}

pub fn reconstruct_cmd(args: &ReconstructArgs) -> CliResult<()> {
    let file = CoefficientFile::read(&args.input)?;
    let hypothesis = moment_hypothesis_holds(&file, args.exact)?;
    let a = truncate_input(file.moments()?, args.last_index)?;
    let series = pollaczek_coefficients(&a, args.degree)?;
    for w in &series.warnings {
        warn(w);
    }
    let cfg = ReconstructionConfig::new(args.geometry, args.degree).with_grid(grid_points(args.grid, args.geometry)?);
    let samples = reconstruct(&series.coefficients, &cfg)?;
    let mut fields = vec![
        ("label", file.label.clone()),
        ("N", a.last_index().to_string()),
        ("M", args.degree.to_string()),
        ("geometry", args.geometry.name().to_string()),
    ];
    if !hypothesis {
        fields.push(("status", UNVERIFIED_HYPOTHESIS.to_string()));
    }
    fields.push(("convention", PHASE_CONVENTION.to_string()));
    emit(args.output.as_ref(), &samples_csv(&csv_header(&fields), &samples))
}

pub struct SweepArgs {
    pub input: PathBuf,
    pub noise: f64,
    pub seed: u64,
    pub degrees: DegreeRange,
    pub last_index: Option<usize>,
    pub pair: String,
    pub beta: f64,
    pub geometry: Geometry,
    pub grid: Option<GridSpec>,
    pub output: Option<PathBuf>,
}

pub fn sweep(args: &SweepArgs) -> CliResult<()> {
    let file = CoefficientFile::read(&args.input)?;
    let reference_pair = builtin_pair(&args.pair, args.beta)?;
    let a = truncate_input(file.moments()?, args.last_index)?;
    let noisy = add_noise(&a, args.noise, args.seed)?;
    let grid = grid_points(args.grid, args.geometry)?;
    let reference = reference_pair.jump().sample(args.geometry, &grid)?;
    let degrees = args.degrees.degrees();
    let cfg = ReconstructionConfig::new(args.geometry, degrees.last().copied().unwrap_or(0)).with_grid(grid);
    let clean = truncation_sweep(&a, &reference, &degrees, &cfg)?;
    let perturbed = truncation_sweep(&noisy, &reference, &degrees, &cfg)?;
    let mut out = csv_header(&[
        ("label", file.label.clone()),
        ("N", a.last_index().to_string()),
        ("reference", reference_pair.label()),
        ("geometry", args.geometry.name().to_string()),
        ("epsilon", args.noise.to_string()),
        ("seed", args.seed.to_string()),
        ("convention", PHASE_CONVENTION.to_string()),
    ]);
    out.push_str("M,l2_error_noiseless,l2_error_noisy\n");
    for (c, n) in clean.points.iter().zip(&perturbed.points) {
        out.push_str(&format!("{},{},{}\n", c.degree, c.l2_error, n.l2_error));
    }
    emit(args.output.as_ref(), &out)
}

#[derive(Serialize)]
struct HausdorffOutput<'a> {
    label: &'a str,
    mode: &'static str,
    #[serde(flatten)]
    report: HausdorffReport,
}

pub fn check_hausdorff(input: &Path, exact: bool) -> CliResult<()> {
    let file = CoefficientFile::read(input)?;
    let report = hausdorff_check(&file.coefficients, exact)?;
    let out = HausdorffOutput {
        label: &file.label,
        mode: if exact { "exact" } else { "float" },
        report,
    };
    let mut json = serde_json::to_string_pretty(&out).expect("report serializes");
    json.push('\n');
    emit(None, &json)
}

pub struct DiagnoseArgs {
    pub input: Option<PathBuf>,
    pub pair: Option<String>,
    pub beta: f64,
    pub sigmas: Vec<f64>,
    pub degree: usize,
    pub last_index: usize,
    pub exact: bool,
}

#[derive(Serialize)]
struct HardyRow {
    sigma: f64,
    value: f64,
}

#[derive(Serialize)]
struct DualRouteRow {
    m: usize,
    series: Complex64,
    integral: Complex64,
    difference: f64,
}

#[derive(Serialize)]
struct DualRoute {
    max_difference: f64,
    degrees: Vec<DualRouteRow>,
}

#[derive(Serialize)]
struct Diagnosis {
    source: String,
    interpolant: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    status: Option<&'static str>,
    hardy_norm: Vec<HardyRow>,
    hardy_norm_non_increasing: bool,
    plancherel: Vec<PlancherelReport>,
    jump_bound: Vec<JumpBoundReport>,
    dual_route: DualRoute,
}

/// Degrees compared between the series and integral coefficient routes.
const DUAL_ROUTE_MAX_DEGREE: usize = 10;

struct Subject {
    source: String,
    interpolant: Interpolant,
    jump: JumpFunction,
    amplitudes: PollaczekCoefficients,
    hypothesis: bool,
}

fn pair_subject(pair: &AnalyticPair, last_index: usize, degree: usize) -> CliResult<Subject> {
    let series = pollaczek_coefficients(&pair.coefficients(last_index), degree)?;
    Ok(Subject {
        source: pair.label(),
        interpolant: pair.interpolant().clone(),
        jump: pair.jump().clone(),
        amplitudes: series.coefficients,
        hypothesis: true,
    })
}

fn file_subject(path: &Path, degree: usize, exact: bool) -> CliResult<Subject> {
    let file = CoefficientFile::read(path)?;
    let hypothesis = moment_hypothesis_holds(&file, exact)?;
    let series = pollaczek_coefficients(&file.moments()?, degree)?;
    for w in &series.warnings {
        warn(w);
    }
    let coeffs = series.coefficients.clone();
    Ok(Subject {
        source: file.label,
        interpolant: reconstructed_interpolant(&series.coefficients),
        jump: JumpFunction::bilateral(move |v| reconstruct_at(&coeffs, Geometry::VLine, v)),
        amplitudes: series.coefficients,
        hypothesis,
    })
}

pub fn diagnose(args: &DiagnoseArgs) -> CliResult<()> {
    let subject = match (&args.input, &args.pair) {
        (Some(path), None) => file_subject(path, args.degree, args.exact)?,
        (None, Some(name)) => pair_subject(&builtin_pair(name, args.beta)?, args.last_index, args.degree)?,
        _ => return Err(CliError::Input("diagnose needs exactly one of an input file or --pair".into())),
    };
    let de = DoubleExponential::default();
    let mut sigmas = args.sigmas.clone();
    sigmas.sort_by(f64::total_cmp);
    sigmas.dedup();

    let mut hardy = Vec::new();
    let mut plancherel = Vec::new();
    let mut bounds = Vec::new();
    let grid = subject.jump.geometry().default_grid();
    for &sigma in &sigmas {
        hardy.push(HardyRow {
            sigma,
            value: hardy_norm(&subject.interpolant, sigma, &de)?,
        });
        plancherel.push(plancherel_check(&subject.interpolant, &subject.jump, sigma, &de)?);
        bounds.push(jump_bound_check(&subject.interpolant, &subject.jump, sigma, &grid, &de)?);
    }
    let non_increasing = hardy.windows(2).all(|w| w[1].value <= w[0].value);

    let quad = coefficient_integral_quadrature();
    let mut rows = Vec::new();
    for m in 0..=subject.amplitudes.degree().min(DUAL_ROUTE_MAX_DEGREE) {
        let series = subject.amplitudes.d(m);
        let integral = pollaczek_coefficients_integral(&subject.interpolant, m, quad)?;
        rows.push(DualRouteRow {
            m,
            series,
            integral,
            difference: (series - integral).norm(),
        });
    }
    let report = Diagnosis {
        source: subject.source,
        interpolant: subject.interpolant.provenance(),
        status: (!subject.hypothesis).then_some(UNVERIFIED_HYPOTHESIS),
        hardy_norm: hardy,
        hardy_norm_non_increasing: non_increasing,
        plancherel,
        jump_bound: bounds,
        dual_route: DualRoute {
            max_difference: rows.iter().map(|r| r.difference).fold(0.0, f64::max),
            degrees: rows,
        },
    };
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    emit(None, &json)
}
