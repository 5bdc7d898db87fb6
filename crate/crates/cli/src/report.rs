//! `report.csv`: one row of diagnostics per experiment.

use lle_core::DiagnosticsReport;

use crate::config::ExperimentConfig;

/// Bumped whenever columns are added, removed or reordered.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

pub const REPORT_COLUMNS: [&str; 17] = [
    "schema_version",
    "embedding",
    "mode",
    "eps_ratio",
    "n_points",
    "k",
    "d",
    "d_out",
    "seed",
    "affine_fit_residual",
    "procrustes_to_pattern",
    "param_recovery",
    "null_multiplicity",
    "constant_vector_found",
    "max_weight_residual",
    "pattern_cost",
    "projection_detected",
];

/// Everything one report row needs besides the config.
#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub report: DiagnosticsReport,
    pub pattern_cost: f64,
    pub n_points: usize,
    pub d_out: usize,
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn header() -> String {
    REPORT_COLUMNS.join(",")
}

pub fn row(config: &ExperimentConfig, outcome: &ExperimentOutcome) -> String {
    let r = &outcome.report;
    let eps = config.weight_mode().eps_ratio().map(num).unwrap_or_default();
    let fields = [
        REPORT_SCHEMA_VERSION.to_string(),
        config.embedding.name().to_string(),
        config.mode.name().to_string(),
        eps,
        outcome.n_points.to_string(),
        config.k.to_string(),
        config.d.to_string(),
        outcome.d_out.to_string(),
        config.seed.to_string(),
        num(r.affine_fit_residual),
        num(r.procrustes_to_pattern),
        r.param_recovery.map(num).unwrap_or_default(),
        r.null_multiplicity.to_string(),
        r.constant_vector_found.to_string(),
        num(r.max_weight_residual),
        num(outcome.pattern_cost),
        r.projection_detected().to_string(),
    ];
    fields.join(",")
}

/// Header plus rows, newline-terminated.
pub fn table<'a>(rows: impl IntoIterator<Item = &'a str>) -> String {
    let mut out = header();
    out.push('\n');
    for r in rows {
        out.push_str(r);
        out.push('\n');
    }
    out
}

/// Parses a report file into `(column, value)` maps, one per row.
pub fn parse(text: &str) -> Vec<Vec<(String, String)>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let Some(head) = lines.next() else { return Vec::new() };
    let cols: Vec<&str> = head.split(',').collect();
    lines
        .map(|l| cols.iter().zip(l.split(',')).map(|(c, v)| (c.to_string(), v.to_string())).collect())
        .collect()
}

/// Looks up one column of a parsed row.
pub fn field<'a>(row: &'a [(String, String)], column: &str) -> Option<&'a str> {
    row.iter().find(|(c, _)| c == column).map(|(_, v)| v.as_str())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_has_one_field_per_column() {
        let outcome = ExperimentOutcome {
            report: DiagnosticsReport {
                affine_fit_residual: 0.5,
                procrustes_to_pattern: 0.1,
                param_recovery: None,
                null_multiplicity: 1,
                constant_vector_found: true,
                max_weight_residual: 0.0,
            },
            pattern_cost: 0.0,
            n_points: 10,
            d_out: 3,
        };
        let r = row(&ExperimentConfig::default(), &outcome);
        assert_eq!(r.split(',').count(), REPORT_COLUMNS.len());
        let parsed = parse(&table([r.as_str()]));
        assert_eq!(field(&parsed[0], "param_recovery"), Some(""));
        assert_eq!(field(&parsed[0], "mode"), Some("reg"));
        assert_eq!(field(&parsed[0], "projection_detected"), Some("false"));
    }
}
