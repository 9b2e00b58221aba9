pub mod bubbles;
pub mod calibrate;
pub mod convergence;
pub mod evaluate;
pub mod metrics;
pub mod simulate;

/// Formats an optional metric for CSV: undefined renders as an empty cell.
pub fn opt_cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}
