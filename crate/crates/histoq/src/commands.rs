//! One function per subcommand. Each returns a [`Report`]; sweeps evaluate
//! grid points in parallel and emit them in grid order.

use std::f64::consts::PI;
use std::path::Path;

use histoq_core::continuum::{
    default_screen_range, localization_decoherence, localization_probability, min_lp_binwidth, packet_reaching,
    spacetime_decoherence, spacetime_regime, spacetime_remain_probability, spacetime_remain_probability_images,
    two_slit_bin_probability, two_slit_total_probability, GaussianPacket, QuadratureSpec, Slit, TwoSlitGeometry,
};
use histoq_core::discrete::spin::{
    spin_candidate_probabilities, spin_classification, SpinGeometry, SpinState, GRID_THRESHOLD,
};
use histoq_core::discrete::three_box::ThreeBox;
use histoq_core::hilbert::{classify_set, full_chain_set, Classification, HistorySet, Tolerances};
use histoq_core::histories::{
    conditional_probability, ensemble_positivity_horizon, ensemble_table, NEGATIVITY_THRESHOLD,
};
use histoq_core::C64;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::model::load_model;
use crate::report::{json_number, Cell, Report, Table};

/// `n` evenly spaced points from `lo` to `hi` inclusive; `[lo]` when `n = 1`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|i| if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 }).collect(),
    }
}

/// `n` evenly spaced points strictly inside `(lo, hi)`.
pub fn interior(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|j| lo + (hi - lo) * j as f64 / (n + 1) as f64).collect()
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> CliResult<()> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Config(msg()))
    }
}

fn verdict_cell(c: &Classification) -> Cell {
    Cell::text(c.verdict.as_str())
}

// ---------- three boxes ----------

const THREE_BOX_COARSE: &str = "Eq. 4.20";
const THREE_BOX_FINE: &str = "Eq. 4.22";
const THREE_BOX_CONDITIONAL: &str = "Eq. 4.26";
const THREE_BOX_SINGLE: &str = "Eq. 4.23";

/// `label` of a final-`Φ` member `(Φ,x,y)` rewritten as `(x,y|Φ)`.
fn conditional_label(label: &str) -> String {
    let inner = label.trim_start_matches('(').trim_end_matches(')');
    let mut parts = inner.split(',');
    let cond = parts.next().unwrap_or("");
    let rest: Vec<&str> = parts.collect();
    format!("({}|{})", rest.join(","), cond)
}

pub fn cmd_threebox(tol: &Tolerances) -> CliResult<Report> {
    let m = ThreeBox::new();
    let mut table = Table::new(&["table", "history", "value", "set_verdict"]);
    let coarse = m.box_a_set()?;
    let fine = m.box_ab_set()?;
    let cc = classify_set(&m.psi, &coarse, tol)?;
    let cf = classify_set(&m.psi, &fine, tol)?;
    for (label, p) in coarse.labels().iter().zip(&cc.probabilities) {
        table.push(vec!["box_a".into(), label.as_str().into(), (*p).into(), verdict_cell(&cc)], THREE_BOX_COARSE);
    }
    for (label, p) in fine.labels().iter().zip(&cf.probabilities) {
        table.push(vec!["box_ab".into(), label.as_str().into(), (*p).into(), verdict_cell(&cf)], THREE_BOX_FINE);
    }
    let cond = ThreeBox::operator(&m.p_phi);
    // Members with Φ at the final time come first in both sets.
    for set in [&coarse, &single_box_set(&m, 'B')?] {
        let c = classify_set(&m.psi, set, tol)?;
        let value = conditional_probability(&m.psi, &set.members()[0], &cond)?;
        table.push(
            vec!["conditional".into(), conditional_label(&set.labels()[0]).into(), value.into(), verdict_cell(&c)],
            THREE_BOX_SINGLE,
        );
    }
    for i in 0..4 {
        let value = conditional_probability(&m.psi, &fine.members()[i], &cond)?;
        table.push(
            vec!["conditional".into(), conditional_label(&fine.labels()[i]).into(), value.into(), verdict_cell(&cf)],
            THREE_BOX_CONDITIONAL,
        );
    }
    let mut r = Report::new("threebox", table);
    r.tolerances = Some(*tol);
    r.summarize("box_a_verdict", verdict_cell(&cc), "Eq. 4.20");
    r.summarize("box_ab_verdict", verdict_cell(&cf), "Eq. 4.22");
    r.summarize("box_ab_lp_violation", cf.lp_violation, "Eq. 4.22");
    r.summarize("box_ab_lp_witness", fine.labels()[cf.lp_witness].as_str(), "Eq. 4.22");
    r.detail = Some(json!({ "box_a": classification_json(&coarse, &cc), "box_ab": classification_json(&fine, &cf) }));
    Ok(r)
}

/// `{(Φ,X), (Φ,X̄), (Φ̄,X), (Φ̄,X̄)}` for box `X`.
fn single_box_set(m: &ThreeBox, which: char) -> CliResult<HistorySet> {
    Ok(full_chain_set(&[(m.box_decomposition(which), 1.0), (m.final_decomposition(), 2.0)], &m.hamiltonian)?)
}

// ---------- spin ----------

#[derive(Clone, Debug, PartialEq)]
pub struct SpinArgs {
    pub deltas: Vec<f64>,
    /// Inclusive grid over `[theta_min, theta_max]`.
    pub theta_min: f64,
    pub theta_max: f64,
    pub theta_points: usize,
    /// Interior grid of `(phi_min, phi_max)`.
    pub phi_min: f64,
    pub phi_max: f64,
    pub phi_points: usize,
}

impl Default for SpinArgs {
    fn default() -> Self {
        SpinArgs {
            deltas: vec![PI / 2.0, PI / 4.0, PI / 8.0],
            theta_min: 0.0,
            theta_max: PI,
            theta_points: 51,
            phi_min: 0.0,
            phi_max: PI,
            phi_points: 49,
        }
    }
}

const SPIN: &str = "Eq. 4.14, Eq. 4.15";

pub fn cmd_spin(a: &SpinArgs, tol: &Tolerances) -> CliResult<Report> {
    require(!a.deltas.is_empty(), || "at least one delta is required".into())?;
    require(a.theta_points > 0 && a.phi_points > 0, || "grids must be non-empty".into())?;
    for v in [a.theta_min, a.theta_max, a.phi_min, a.phi_max] {
        require(v.is_finite(), || format!("non-finite grid bound {v}"))?;
    }
    let geometries = a.deltas.iter().map(|&d| SpinGeometry::new(d)).collect::<Result<Vec<_>, _>>()?;
    let thetas = linspace(a.theta_min, a.theta_max, a.theta_points);
    let phis = interior(a.phi_min, a.phi_max, a.phi_points);
    let cells: Vec<(usize, usize, usize)> = (0..geometries.len())
        .flat_map(|d| (0..thetas.len()).flat_map(move |i| (0..a.phi_points).map(move |j| (d, i, j))))
        .collect();
    let rows: Vec<([f64; 4], f64)> = cells
        .par_iter()
        .map(|&(d, i, j)| {
            let s = SpinState { theta: thetas[i], phi: phis[j] };
            let p = spin_candidate_probabilities(&s, &geometries[d]);
            (p, spin_classification(&s, &geometries[d], tol).md_residual)
        })
        .collect();

    let mut table =
        Table::new(&["delta", "theta", "phi", "p_pp", "p_pm", "p_mp", "p_mm", "lp_flag", "md_residual"]);
    let mut negative = vec![0usize; geometries.len()];
    for (&(d, i, j), (p, md)) in cells.iter().zip(&rows) {
        let lp = p.iter().all(|v| *v >= GRID_THRESHOLD);
        if !lp {
            negative[d] += 1;
        }
        let mut row: Vec<Cell> = vec![a.deltas[d].into(), thetas[i].into(), phis[j].into()];
        row.extend(p.iter().map(|v| Cell::Num(*v)));
        row.push(lp.into());
        row.push((*md).into());
        table.push(row, SPIN);
    }
    let mut r = Report::new("spin", table);
    r.tolerances = Some(*tol);
    r.param("theta_points", a.theta_points);
    r.param("phi_points", a.phi_points);
    r.param("theta_range", format!("[{}, {}]", a.theta_min, a.theta_max));
    r.param("phi_range", format!("({}, {})", a.phi_min, a.phi_max));
    for (d, n) in a.deltas.iter().zip(&negative) {
        r.summarize(format!("negative_cells[delta={}]", crate::format::number(*d)), *n, "Fig. 3");
    }
    r.summarize("cells_per_delta", thetas.len() * phis.len(), "Fig. 3");
    Ok(r)
}

// ---------- two slits ----------

#[derive(Clone, Debug, PartialEq)]
pub struct TwoSlitArgs {
    pub kd: f64,
    pub k_big_d: f64,
    pub bins: usize,
    /// Defaults to `[-D/2, D/2]`.
    pub y_range: Option<(f64, f64)>,
    /// Trial widths for the positivity scan, in units of the fringe
    /// spacing, descending.
    pub scan_widths: Vec<f64>,
}

impl Default for TwoSlitArgs {
    fn default() -> Self {
        TwoSlitArgs { kd: 60.0, k_big_d: 60.0, bins: 64, y_range: None, scan_widths: vec![2.0, 1.0, 0.5, 0.25, 0.1] }
    }
}

const TWO_SLIT: &str = "Eq. 4.7, Eq. 4.8";

pub fn cmd_twoslit(a: &TwoSlitArgs, q: &QuadratureSpec) -> CliResult<Report> {
    require(a.bins > 0, || "bins must be positive".into())?;
    let g = TwoSlitGeometry::from_products(a.kd, a.k_big_d)?;
    let (lo, hi) = a.y_range.unwrap_or_else(|| default_screen_range(&g));
    require(lo.is_finite() && hi.is_finite() && lo < hi, || format!("screen range [{lo}, {hi}] is empty"))?;
    let edges = linspace(lo, hi, a.bins + 1);
    let probs: Vec<(f64, f64)> = (0..a.bins)
        .into_par_iter()
        .map(|i| {
            let bin = (edges[i], edges[i + 1]);
            Ok((two_slit_bin_probability(bin, Slit::Upper, &g, q)?, two_slit_bin_probability(bin, Slit::Lower, &g, q)?))
        })
        .collect::<CliResult<_>>()?;
    let mut table = Table::new(&["bin", "y_lo", "y_hi", "p_upper", "p_lower", "p_bin", "lp_flag"]);
    for (i, (pu, pl)) in probs.iter().enumerate() {
        let lp = *pu >= 0.0 && *pl >= 0.0;
        table.push(
            vec![i.into(), edges[i].into(), edges[i + 1].into(), (*pu).into(), (*pl).into(), (pu + pl).into(), lp.into()],
            TWO_SLIT,
        );
    }
    let fringe = g.fringe_spacing();
    let widths: Vec<f64> = a.scan_widths.iter().map(|w| w * fringe).collect();
    let scan = min_lp_binwidth(&g, (lo, hi), &widths, q)?;
    let total = two_slit_total_probability(&g, q)?;

    let mut r = Report::new("twoslit", table);
    r.param("kd", a.kd);
    r.param("kD", a.k_big_d);
    r.param("bins", a.bins);
    r.param("y_min", lo);
    r.param("y_max", hi);
    r.summarize("fringe_spacing", fringe, "Eq. 4.7");
    r.summarize("screen_total_probability", total, "Eq. 4.8");
    r.summarize("window_probability", probs.iter().map(|(u, l)| u + l).sum::<f64>(), "Eq. 4.8");
    r.summarize(
        "smallest_passing_width",
        scan.smallest_passing.map(Cell::Num).unwrap_or_else(|| Cell::text("none")),
        "Eq. 4.8",
    );
    r.detail = Some(json!({
        "binwidth_scan": scan.trials.iter().map(|t| json!({
            "width": json_number(t.width),
            "width_over_fringe": json_number(t.width / fringe),
            "min_probability": json_number(t.min_probability),
            "passes": t.passes,
        })).collect::<Vec<_>>()
    }));
    Ok(r)
}

// ---------- free particle ----------

#[derive(Clone, Debug, PartialEq)]
pub struct ParticleArgs {
    pub lambda_over_sigma: f64,
    pub sigma: f64,
    pub mass: f64,
    /// Largest half-width, in units of `σ`.
    pub delta_max: f64,
    pub points: usize,
}

impl Default for ParticleArgs {
    fn default() -> Self {
        ParticleArgs { lambda_over_sigma: 1e-2, sigma: 1.0, mass: 1.0, delta_max: 10.0, points: 100 }
    }
}

const PARTICLE: &str = "Eq. 4.38, Eq. 4.39";

pub fn cmd_particle(a: &ParticleArgs, q: &QuadratureSpec) -> CliResult<Report> {
    require(a.points > 0, || "points must be positive".into())?;
    require(a.delta_max >= 0.0 && a.delta_max.is_finite(), || format!("delta_max = {} must be >= 0", a.delta_max))?;
    require(a.lambda_over_sigma > 0.0 && a.lambda_over_sigma.is_finite(), || {
        format!("lambda/sigma = {} must be positive", a.lambda_over_sigma)
    })?;
    let p = GaussianPacket::centred(a.sigma, a.mass)?;
    let lambda = a.lambda_over_sigma * a.sigma;
    let tau = p.time_for_wavelength(lambda);
    let deltas = linspace(0.0, a.delta_max * a.sigma, a.points);
    let values: Vec<(f64, C64)> = deltas
        .par_iter()
        .map(|&h| Ok((localization_probability(h, &p, lambda, q)?, localization_decoherence(h, &p, tau, q)?)))
        .collect::<CliResult<_>>()?;
    let mut table = Table::new(&["delta", "p_l", "p_lbar", "re_d", "im_d"]);
    for (h, (pl, d)) in deltas.iter().zip(&values) {
        table.push(vec![(*h).into(), (*pl).into(), (1.0 - pl).into(), d.re.into(), d.im.into()], PARTICLE);
    }
    let mut r = Report::new("particle", table);
    r.param("lambda_over_sigma", a.lambda_over_sigma);
    r.param("sigma", a.sigma);
    r.param("mass", a.mass);
    r.param("delta_max_over_sigma", a.delta_max);
    r.param("points", a.points);
    r.summarize("tau", tau, "Eq. 4.37");
    r.summarize("lambda", lambda, "Eq. 4.37");
    r.summarize("short_time_regime", tau <= 0.1 * p.spreading_time(), "Eq. 4.34");
    Ok(r)
}

// ---------- spacetime ----------

#[derive(Clone, Debug, PartialEq)]
pub struct SpacetimeArgs {
    pub k0_sigma: f64,
    pub sigma: f64,
    pub mass: f64,
    /// Grid of final centres `X`, in units of `σ`.
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
}

impl Default for SpacetimeArgs {
    fn default() -> Self {
        SpacetimeArgs { k0_sigma: -20.0, sigma: 1.0, mass: 1.0, x_min: -2.0, x_max: 6.0, points: 50 }
    }
}

const SPACETIME: &str = "Eq. 4.56, Eq. 4.60";
const SPACETIME_EXACT: &str = "Eq. 4.44, Eq. 4.46";

pub fn cmd_spacetime(a: &SpacetimeArgs, q: &QuadratureSpec) -> CliResult<Report> {
    require(a.points > 0, || "points must be positive".into())?;
    require(a.k0_sigma < 0.0, || format!("K0 sigma = {} must be negative (packet moving toward the wall)", a.k0_sigma))?;
    require(a.x_min.is_finite() && a.x_max.is_finite() && a.x_min <= a.x_max, || {
        format!("X range [{}, {}] is empty", a.x_min, a.x_max)
    })?;
    let k0 = a.k0_sigma / a.sigma;
    let xs = linspace(a.x_min * a.sigma, a.x_max * a.sigma, a.points);
    let values = xs
        .par_iter()
        .map(|&x| {
            let (p, t) = packet_reaching(x, a.sigma, a.mass, k0)?;
            let pr = spacetime_remain_probability(&p, t, q)?;
            let exact = spacetime_remain_probability_images(&p, t, q)?;
            let d = spacetime_decoherence(&p, t, q)?;
            Ok((t, pr, exact, d, spacetime_regime(&p, t).holds()))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut table = Table::new(&["x", "t", "p_r", "p_rbar", "re_d", "im_d", "in_regime"]);
    let mut exact_table = Vec::with_capacity(xs.len());
    for (x, (t, pr, exact, d, ok)) in xs.iter().zip(&values) {
        table.push(
            vec![(*x).into(), (*t).into(), (*pr).into(), (1.0 - pr).into(), d.re.into(), d.im.into(), (*ok).into()],
            SPACETIME,
        );
        exact_table.push(json!({ "x": json_number(*x), "p_r": json_number(*exact), "provenance": SPACETIME_EXACT }));
    }
    let mut r = Report::new("spacetime", table);
    r.param("k0_sigma", a.k0_sigma);
    r.param("sigma", a.sigma);
    r.param("mass", a.mass);
    r.param("x_min_over_sigma", a.x_min);
    r.param("x_max_over_sigma", a.x_max);
    r.param("points", a.points);
    r.detail = Some(json!({ "exact_evolution": exact_table }));
    Ok(r)
}

// ---------- ensembles ----------

#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleArgs {
    pub amplitude: f64,
    pub phase: f64,
    pub n_max: usize,
}

impl Default for EnsembleArgs {
    fn default() -> Self {
        EnsembleArgs { amplitude: 0.5, phase: PI / 4.0, n_max: 50 }
    }
}

const ENSEMBLE: &str = "Eq. insert1";

pub fn cmd_ensemble(a: &EnsembleArgs) -> CliResult<Report> {
    require((0.0..=1.0).contains(&a.amplitude), || format!("amplitude {} outside [0, 1]", a.amplitude))?;
    require(a.phase.is_finite(), || "phase must be finite".into())?;
    require(a.n_max > 0, || "n_max must be positive".into())?;
    let z = C64::from_polar(a.amplitude, a.phase);
    let horizon = ensemble_positivity_horizon(z, a.n_max)?;
    let last = horizon.map(|w| w.n).unwrap_or(a.n_max);
    let w = C64::new(1.0, 0.0) - z;
    let mut table = Table::new(&["n", "n_c", "p", "negative"]);
    for n in 1..=last {
        for (n_c, p) in ensemble_table(z, n).into_iter().enumerate() {
            let magnitude = z.norm().powi(n_c as i32) * w.norm().powi((n - n_c) as i32);
            let negative = magnitude > 0.0 && p < NEGATIVITY_THRESHOLD * magnitude;
            table.push(vec![n.into(), n_c.into(), p.into(), negative.into()], ENSEMBLE);
        }
    }
    let mut r = Report::new("ensemble", table);
    r.param("amplitude", a.amplitude);
    r.param("phase", a.phase);
    r.param("n_max", a.n_max);
    match horizon {
        Some(h) => {
            r.summarize("horizon", h.n, "Sec. III.D");
            r.summarize("witness_n_c", h.n_c, ENSEMBLE);
            r.summarize("witness_p", h.value, ENSEMBLE);
        }
        None => r.summarize("horizon", "none", "Sec. III.D"),
    }
    Ok(r)
}

// ---------- classification of a model file ----------

const CLASSIFY: &str = "Eq. 3.1";

fn complex_pair(c: C64) -> Value {
    json!([json_number(c.re), json_number(c.im)])
}

/// Residuals, witnesses and the full decoherence functional.
pub fn classification_json(set: &HistorySet, c: &Classification) -> Value {
    let label = |i: usize| set.labels()[i].clone();
    json!({
        "verdict": c.verdict.as_str(),
        "md_residual": json_number(c.md_residual),
        "md_witness": c.md_witness.map(|(a, b)| json!([label(a), label(b)])),
        "rlp_residual": json_number(c.rlp_residual),
        "rlp_witness": label(c.rlp_witness),
        "lp_violation": json_number(c.lp_violation),
        "lp_witness": label(c.lp_witness),
        "sum_residual": json_number(c.sum_residual),
        "md_offenders": c.md_offenders.iter().map(|&(a, b)| json!([label(a), label(b)])).collect::<Vec<_>>(),
        "rlp_offenders": c.rlp_offenders.iter().map(|&a| label(a)).collect::<Vec<_>>(),
        "lp_offenders": c.lp_offenders.iter().map(|&a| label(a)).collect::<Vec<_>>(),
        "functional": (0..c.len()).map(|a| (0..c.len()).map(|b| complex_pair(c.d(a, b))).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn cmd_classify(path: &Path, tol: &Tolerances) -> CliResult<Report> {
    let model = load_model(path)?;
    let c = classify_set(&model.psi, &model.set, tol)?;
    let mut table = Table::new(&["index", "history", "p", "im_amplitude", "branch_norm_sqr", "lp_flag"]);
    for (i, label) in model.set.labels().iter().enumerate() {
        let p = c.probabilities[i];
        table.push(
            vec![
                i.into(),
                label.as_str().into(),
                p.into(),
                c.imaginary_parts[i].into(),
                c.d(i, i).re.into(),
                (p >= -tol.lp).into(),
            ],
            CLASSIFY,
        );
    }
    let mut r = Report::new("classify", table);
    r.tolerances = Some(*tol);
    r.param("model", path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default());
    if let Some(name) = &model.name {
        r.param("name", name.as_str());
    }
    r.param("dimension", model.psi.dim());
    r.param("histories", model.set.len());
    r.summarize("verdict", verdict_cell(&c), "Sec. VI");
    r.summarize("md_residual", c.md_residual, "Eq. 3.4");
    r.summarize("rlp_residual", c.rlp_residual, "Eq. 3.18");
    r.summarize("lp_violation", c.lp_violation, "Eq. 1.6");
    r.summarize("sum_residual", c.sum_residual, "Eq. 3.1");
    r.detail = Some(json!({ "classification": classification_json(&model.set, &c) }));
    Ok(r)
}
