use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::sweep::SweepResult;
use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "variable,value,regime,p_spectrum,p_topological,p_connection,\
p_spectrum_hat,p_topological_hat,p_connection_hat,stderr,omega,seed";

/// Ten significant digits in scientific notation.
fn num(x: f64) -> String {
    format!("{x:.9e}")
}

/// Renders the sweep as CSV. Simulation columns are empty for analytic-only
/// rows; `stderr` is the standard error of the connection estimate.
pub fn to_csv_string(result: &SweepResult) -> String {
    let mut out = String::with_capacity(64 * (result.rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in &result.rows {
        let a = &row.analytic;
        let _ = write!(
            out,
            "{},{},{},{},{},{},",
            result.variable,
            num(row.value),
            row.regime,
            num(a.p_spectrum),
            num(a.p_topological),
            num(a.p_connection)
        );
        match (&row.simulated, &result.sim) {
            (Some(e), Some(sim)) => {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    num(e.p_spectrum_hat),
                    num(e.p_topological_hat),
                    num(e.p_connection_hat),
                    num(e.standard_error.connection),
                    e.realizations_used,
                    sim.seed
                );
            }
            _ => out.push_str(",,,,,\n"),
        }
    }
    out
}

pub fn emit_csv(result: &SweepResult, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    fs::write(path, to_csv_string(result)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::sweep::{run_sweep, SweepSpec, SweepVariable};
    use crate::params::{AntennaRegime, NetworkParams};
    use crate::simulator::{SimulationConfig, Window};

    fn six_rows() -> SweepResult {
        let spec = SweepSpec::analytic(
            SweepVariable::R,
            (1..=6).map(f64::from).collect(),
            NetworkParams::reference(),
            vec![AntennaRegime::Dir],
        );
        run_sweep(&spec).unwrap()
    }

    #[test]
    fn header_and_one_line_per_row() {
        let s = to_csv_string(&six_rows());
        let lines: Vec<_> = s.lines().collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[0].split(',').count(), 12);
        for l in &lines[1..] {
            let cells: Vec<_> = l.split(',').collect();
            assert_eq!(cells.len(), 12);
            assert_eq!(cells[0], "r");
            assert_eq!(cells[2], "dir");
            // absent simulation columns are empty
            assert!(cells[6..].iter().all(|c| c.is_empty()));
        }
    }

    #[test]
    fn ten_significant_digits() {
        assert_eq!(num(0.123456789012), "1.234567890e-1");
        assert_eq!(num(1.0), "1.000000000e0");
        assert_eq!(num(0.0), "0.000000000e0");
        let s = to_csv_string(&six_rows());
        let p: f64 = s.lines().nth(1).unwrap().split(',').nth(5).unwrap().parse().unwrap();
        let exact = six_rows().rows[0].analytic.p_connection;
        assert!(((p - exact) / exact).abs() < 1e-9);
    }

    #[test]
    fn simulated_columns_are_filled() {
        let sim = SimulationConfig {
            outer_window: Window::new(300.0, 300.0),
            inner_window: Window::new(200.0, 200.0),
            ..SimulationConfig::default().with_realizations(20).with_seed(5)
        };
        let spec = SweepSpec::analytic(SweepVariable::R, vec![2.0], NetworkParams::reference(), vec![AntennaRegime::Omn])
            .with_sim(sim);
        let s = to_csv_string(&run_sweep(&spec).unwrap());
        let cells: Vec<_> = s.lines().nth(1).unwrap().split(',').collect();
        assert!(cells[6..].iter().all(|c| !c.is_empty()));
        assert_eq!(cells[10], "20");
        assert_eq!(cells[11], "5");
    }

    #[test]
    fn rewrite_is_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nested/out.csv");
        emit_csv(&six_rows(), &path).unwrap();
        let first = fs::read(&path).unwrap();
        emit_csv(&six_rows(), &path).unwrap();
        assert_eq!(first, fs::read(&path).unwrap());
    }

    #[test]
    fn io_error_names_the_path() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("file");
        fs::write(&blocker, "x").unwrap();
        let path = blocker.join("out.csv");
        let err = emit_csv(&six_rows(), &path).unwrap_err().to_string();
        assert!(err.contains("file"), "{err}");
    }
}
