//! CSV files. Numbers use Rust's shortest round-trip formatting, so a file
//! is a deterministic function of its inputs and re-reads to the same bits.

use std::io;

use penalty_core::consent::{ConsentObjective, LinearConsent};
use penalty_core::{
    consent_value, expected_social_welfare, expected_welfare_man, expected_welfare_woman, pareto_probabilities,
    private_pareto_probabilities, welfare_curve_point, ModelParams, Penalty, RegionMap,
};

pub const REGION_MAP_HEADER: [&str; 3] = ["theta_m", "theta_w", "class"];
pub const WELFARE_HEADER: [&str; 4] = ["lambda", "pi_w", "pi_m", "pi_social"];
pub const CONSENT_HEADER: [&str; 4] = ["lambda", "phi_pi", "phi_pc", "consent_value"];
pub const PRIVATE_HEADER: [&str; 7] = ["lambda", "e_pi_w", "e_pi_m", "e_pi_social", "phi_pi", "phi_pc", "consent_value"];
pub const OPTIMAL_HEADER: [&str; 3] = ["regime", "approach", "value"];

fn num(x: f64) -> String {
    format!("{x}")
}

fn write_rows<W: io::Write>(out: W, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()
}

pub fn write_region_map<W: io::Write>(out: W, map: &RegionMap) -> io::Result<()> {
    let rows = map.cells.iter().map(|c| vec![num(c.man), num(c.woman), c.class.code().to_string()]);
    write_rows(out, &REGION_MAP_HEADER, rows)
}

pub fn write_welfare_curve<W: io::Write>(out: W, params: &ModelParams, lambdas: &[f64]) -> io::Result<()> {
    let rows = lambdas.iter().map(|&l| {
        let pt = welfare_curve_point(params, Penalty::new(l));
        vec![num(pt.lambda), num(pt.pi_w), num(pt.pi_m), num(pt.pi_social)]
    });
    write_rows(out, &WELFARE_HEADER, rows)
}

pub fn write_consent_curve<W: io::Write>(out: W, params: &ModelParams, lambdas: &[f64]) -> io::Result<()> {
    let objective = LinearConsent::new(params.alpha);
    let rows = lambdas.iter().map(|&l| {
        let pen = Penalty::new(l);
        let q = pareto_probabilities(params, pen);
        vec![num(l), num(q.improving), num(q.conflicting), num(consent_value(params, pen, &objective))]
    });
    write_rows(out, &CONSENT_HEADER, rows)
}

pub fn write_private_curves<W: io::Write>(out: W, params: &ModelParams, lambdas: &[f64]) -> io::Result<()> {
    let objective = LinearConsent::new(params.alpha);
    let rows = lambdas.iter().map(|&l| {
        let pen = Penalty::new(l);
        let q = private_pareto_probabilities(params, pen);
        vec![
            num(l),
            num(expected_welfare_woman(params, pen)),
            num(expected_welfare_man(params, pen)),
            num(expected_social_welfare(params, pen)),
            num(q.improving),
            num(q.conflicting),
            num(objective.evaluate(&q)),
        ]
    });
    write_rows(out, &PRIVATE_HEADER, rows)
}

/// One row of the optimal-penalty table. `None` marks a quantity that is
/// undefined for the given parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct OptimalRow {
    pub regime: &'static str,
    pub approach: &'static str,
    pub value: Option<f64>,
}

pub fn write_optimal<W: io::Write>(out: W, rows: &[OptimalRow]) -> io::Result<()> {
    let rows = rows.iter().map(|r| {
        vec![r.regime.to_string(), r.approach.to_string(), r.value.map_or_else(|| "n/a".to_string(), num)]
    });
    write_rows(out, &OPTIMAL_HEADER, rows)
}
