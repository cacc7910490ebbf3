//! Figure-curve data: every command returns a numeric table computed from
//! the closed forms of the other modules (no arithmetic of its own beyond
//! grid generation), serialized as diff-stable CSV.

use crate::coherent;
use crate::comparison::{compare_avg_success, compare_prob_pure, ComparisonConfig};
use crate::{Error, Result};

/// A labeled numeric table.
#[derive(Debug, Clone)]
pub struct FigureTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl FigureTable {
    /// CSV with 12 significant digits, '.' decimal separator, ',' field
    /// separator and LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.11e}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Parameters of a figure command; unset fields fall back to the figure's
/// defaults.
#[derive(Debug, Clone, Default)]
pub struct FigureParams {
    /// Grid start:end:step for the x axis.
    pub range: Option<(f64, f64, f64)>,
    /// Round counts (recovery / splitting figures).
    pub rounds: Option<Vec<usize>>,
    /// Technical-noise dispersion.
    pub sigma: Option<f64>,
    /// Detector efficiency.
    pub efficiency: Option<f64>,
    /// Mean photon number |α|² of the prepared states.
    pub intensity: Option<f64>,
}

fn grid(range: (f64, f64, f64)) -> Result<Vec<f64>> {
    let (start, end, step) = range;
    if step <= 0.0 || end < start {
        return Err(Error::InvalidArgument(format!(
            "bad range {start}:{end}:{step}"
        )));
    }
    let n = ((end - start) / step).round() as usize;
    Ok((0..=n).map(|i| start + step * i as f64).collect())
}

/// Figure identifiers follow the source numbering ("4.3", "4.8", "C.4", …).
pub fn figure(id: &str, params: &FigureParams) -> Result<FigureTable> {
    match id {
        "4.3" => fig_comparison_pairs(params),
        "4.4" => fig_comparison_average(params),
        "4.8" => fig_ui_strategies(params),
        "4.15" => fig_recovery_rounds(params),
        "4.16" => fig_recovery_vs_splitting(params),
        "4.17" => fig_reliability(params),
        "4.18" => fig_noisy_averages(params),
        "C.2" => fig_phase_curves(params),
        "C.4" => fig_intensity_curves(params),
        "C.5" => fig_ratio_curves(params),
        other => Err(Error::InvalidArgument(format!("unknown figure id {other}"))),
    }
}

pub const FIGURE_IDS: &[&str] = &[
    "4.3", "4.4", "4.8", "4.15", "4.16", "4.17", "4.18", "C.2", "C.4", "C.5",
];

/// Difference-detection probability against the squared overlap, for k = l
/// copy counts, pure-state optimal vs coherent-restricted comparison.
fn fig_comparison_pairs(params: &FigureParams) -> Result<FigureTable> {
    let xs = grid(params.range.unwrap_or((0.0, 1.0, 0.01)))?;
    let mut columns = vec!["overlap_sq (dimensionless)".to_string()];
    for k in 1..=4 {
        columns.push(format!("P_pure_k{k}_l{k} (probability)"));
    }
    for k in 1..=4 {
        columns.push(format!("P_coherent_k{k}_l{k} (probability)"));
    }
    let rows = xs
        .iter()
        .map(|&x| {
            let mut row = vec![x];
            for k in 1..=4usize {
                row.push(compare_prob_pure(k, k, x));
            }
            for k in 1..=4usize {
                // |<α1|α2>|² = x maps to P = 1 − x^{kl/(k+l)}
                row.push(1.0 - x.powf(k as f64 / 2.0));
            }
            row
        })
        .collect();
    Ok(FigureTable { columns, rows })
}

/// Haar-average difference detection against the dimension for k = l.
fn fig_comparison_average(params: &FigureParams) -> Result<FigureTable> {
    let range = params.range.unwrap_or((2.0, 20.0, 1.0));
    let ds = grid(range)?;
    let mut columns = vec!["dimension (levels)".to_string()];
    for k in 1..=4 {
        columns.push(format!("P_avg_k{k}_l{k} (probability)"));
    }
    let rows = ds
        .iter()
        .map(|&df| {
            let d = df.round() as usize;
            let mut row = vec![d as f64];
            for k in 1..=4usize {
                let cfg = ComparisonConfig {
                    d,
                    k,
                    l: k,
                    eta_diff: 1.0,
                };
                row.push(compare_avg_success(&cfg));
            }
            row
        })
        .collect();
    Ok(FigureTable { columns, rows })
}

/// The three identification strategies plus the known-states curve.
fn fig_ui_strategies(params: &FigureParams) -> Result<FigureTable> {
    let deltas = grid(params.range.unwrap_or((0.0, 3.0, 0.05)))?;
    let columns = vec![
        "delta (|alpha1-alpha2|, amplitude)".to_string(),
        "P_sb (probability)".to_string(),
        "P_opt (probability)".to_string(),
        "P_bs (probability)".to_string(),
        "P_known (probability)".to_string(),
    ];
    let rows = deltas
        .iter()
        .map(|&delta| {
            let (p_sb, p_opt, p_bs) = coherent::strategy_probabilities(delta);
            let p_known = 1.0 - (-delta * delta).exp();
            vec![delta, p_sb, p_opt, p_bs, p_known]
        })
        .collect();
    Ok(FigureTable { columns, rows })
}

/// Cumulative recovery-round success curves.
fn fig_recovery_rounds(params: &FigureParams) -> Result<FigureTable> {
    let deltas = grid(params.range.unwrap_or((0.0, 6.0, 0.05)))?;
    let rounds = params.rounds.clone().unwrap_or(vec![1, 20, 40, 60, 80]);
    let max_round = *rounds.iter().max().unwrap_or(&1);
    let mut columns = vec!["delta (|alpha1-alpha2|, amplitude)".to_string()];
    for r in &rounds {
        columns.push(format!("P_round_{r} (probability)"));
    }
    let mut rows = Vec::with_capacity(deltas.len());
    for &delta in &deltas {
        let all = coherent::multi_round_success(
            max_round,
            crate::linalg::cr(0.0),
            crate::linalg::cr(delta),
        )?;
        let mut row = vec![delta];
        for &r in &rounds {
            row.push(all[r - 1]);
        }
        rows.push(row);
    }
    Ok(FigureTable {
        columns,
        rows,
    })
}

/// Recovery-minus-splitting advantage for several round counts.
fn fig_recovery_vs_splitting(params: &FigureParams) -> Result<FigureTable> {
    let deltas = grid(params.range.unwrap_or((0.0, 6.0, 0.05)))?;
    let rounds = params.rounds.clone().unwrap_or(vec![2, 4, 6, 8, 10]);
    let mut columns = vec!["delta (|alpha1-alpha2|, amplitude)".to_string()];
    for r in &rounds {
        columns.push(format!("recovery_minus_splitting_N{r} (probability)"));
    }
    let mut rows = Vec::with_capacity(deltas.len());
    for &delta in &deltas {
        let mut row = vec![delta];
        for &r in &rounds {
            let rec = coherent::multi_round_success(
                r,
                crate::linalg::cr(0.0),
                crate::linalg::cr(delta),
            )?[r - 1];
            let split =
                coherent::splitting_strategy(r, crate::linalg::cr(0.0), crate::linalg::cr(delta))?;
            row.push(rec - split);
        }
        rows.push(row);
    }
    Ok(FigureTable { columns, rows })
}

/// Reliability of the noisy identification against the signal dispersion.
fn fig_reliability(params: &FigureParams) -> Result<FigureTable> {
    let xis = grid(params.range.unwrap_or((0.05, 3.0, 0.05)))?;
    let sigmas = match params.sigma {
        Some(s) => vec![s],
        None => vec![0.1, 0.25, 0.5],
    };
    let mut columns = vec!["xi (signal dispersion, amplitude)".to_string()];
    for s in &sigmas {
        columns.push(format!("R_sigma_{s} (probability)"));
    }
    let mut rows = Vec::with_capacity(xis.len());
    for &xi in &xis {
        let mut row = vec![xi];
        for &s in &sigmas {
            row.push(coherent::reliability(1, 1, s, xi)?);
        }
        rows.push(row);
    }
    Ok(FigureTable { columns, rows })
}

/// Averaged success / error / failure probabilities of the noisy setup.
fn fig_noisy_averages(params: &FigureParams) -> Result<FigureTable> {
    let xis = grid(params.range.unwrap_or((0.05, 3.0, 0.05)))?;
    let sigma = params.sigma.unwrap_or(0.25);
    let columns = vec![
        "xi (signal dispersion, amplitude)".to_string(),
        "P_success (probability)".to_string(),
        "P_error (probability)".to_string(),
        "P_failure (probability)".to_string(),
    ];
    let mut rows = Vec::with_capacity(xis.len());
    for &xi in &xis {
        let (p, pe, pf) = coherent::noisy_averages(1, 1, sigma, xi)?;
        rows.push(vec![xi, p, pe, pf]);
    }
    Ok(FigureTable { columns, rows })
}

/// Correct-identification probabilities against the phase difference of
/// equal-intensity reference states.
fn fig_phase_curves(params: &FigureParams) -> Result<FigureTable> {
    let phases = grid(params.range.unwrap_or((0.0, 360.0, 5.0)))?;
    let gamma = params.efficiency.unwrap_or(1.0);
    let intensity = params.intensity.unwrap_or(1.0);
    let columns = vec![
        "phase (degrees)".to_string(),
        "p1 (probability)".to_string(),
        "p2 (probability)".to_string(),
    ];
    let mut rows = Vec::with_capacity(phases.len());
    for &deg in &phases {
        let phi = deg.to_radians();
        let a1 = crate::linalg::cr(intensity.sqrt());
        let a2 = crate::linalg::c(intensity.sqrt() * phi.cos(), intensity.sqrt() * phi.sin());
        let (p1, p2) = coherent::detector_curves(0.5, gamma, a1, a2)?;
        rows.push(vec![deg, p1, p2]);
    }
    Ok(FigureTable { columns, rows })
}

/// Conclusive probability against intensity at opposite phases, for the
/// measured detector efficiency and for ideal detectors.
fn fig_intensity_curves(params: &FigureParams) -> Result<FigureTable> {
    let intensities = grid(params.range.unwrap_or((0.0, 4.0, 0.05)))?;
    let gamma = params.efficiency.unwrap_or(0.53);
    let columns = vec![
        "intensity (photons per pulse)".to_string(),
        format!("p_conclusive_eff_{gamma} (probability)"),
        "p_conclusive_ideal (probability)".to_string(),
    ];
    let mut rows = Vec::with_capacity(intensities.len());
    for &intensity in &intensities {
        // phase difference 180°: |Δ|² = 4|α|²
        let a1 = crate::linalg::cr(intensity.sqrt());
        let a2 = -a1;
        let (p_eff, _) = coherent::detector_curves(0.5, gamma, a1, a2)?;
        let (p_ideal, _) = coherent::detector_curves(0.5, 1.0, a1, a2)?;
        rows.push(vec![intensity, p_eff, p_ideal]);
    }
    Ok(FigureTable { columns, rows })
}

/// Conclusive probability against the intensity ratio of the two states.
fn fig_ratio_curves(params: &FigureParams) -> Result<FigureTable> {
    let ratios = grid(params.range.unwrap_or((0.0, 4.0, 0.05)))?;
    let gamma = params.efficiency.unwrap_or(0.53);
    let i1 = params.intensity.unwrap_or(1.33);
    let columns = vec![
        "intensity_ratio (dimensionless)".to_string(),
        "p_phase180 (probability)".to_string(),
        "p_phase0 (probability)".to_string(),
    ];
    let mut rows = Vec::with_capacity(ratios.len());
    for &r in &ratios {
        let a1 = crate::linalg::cr(i1.sqrt());
        let mag2 = (i1 * r).sqrt();
        let (p_opp, _) = coherent::detector_curves(0.5, gamma, a1, crate::linalg::cr(-mag2))?;
        let (p_same, _) = coherent::detector_curves(0.5, gamma, a1, crate::linalg::cr(mag2))?;
        rows.push(vec![r, p_opp, p_same]);
    }
    Ok(FigureTable { columns, rows })
}
