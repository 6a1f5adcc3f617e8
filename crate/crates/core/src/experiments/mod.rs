//! Parameter sweeps, figure presets, the verification report and CSV output.

mod csv;
mod presets;
mod sweep;
mod verify;

pub use csv::{emit_csv, to_csv_string, CSV_HEADER};
pub use presets::{NamedSweep, Preset, QUICK_REALIZATIONS};
pub use sweep::{run_sweep, run_sweep_with_workers, SweepResult, SweepRow, SweepSpec, SweepVariable};
pub use verify::{
    check_connection_simulation, check_laplace_forms, check_monotonicity, check_ordering, check_printed_omni_variant,
    check_reductions, check_spectrum_simulation, check_union_area, omni_variant_support, verify_all, CheckEntry,
    CheckGroup, CheckStatus, ConnectionGrid, GridPoint, VerifyReport, VerifySettings, CONNECTION_SLACK,
    PRINTED_UNION_COEFFICIENT, QUADRATURE_REL_TOL, SPECTRUM_SLACK,
};
