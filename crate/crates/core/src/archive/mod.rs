//! Evaluation records, point sets, non-dominated filtering, the best-set
//! merge and the analysis filters.

mod io;
mod nd;
mod record;
mod set;

pub use io::{
    format_log_row, import_pri_file, log_header, read_log_csv, read_point_set, read_pri_file,
    write_log_csv, write_point_set, write_pri_file, PriUnit,
};
pub use nd::{nd_filter, nd_filter_divide, nd_filter_scan};
pub use record::{EvaluationRecord, Provenance};
pub use set::{
    closest_point, dwell_window_filter, merge_best, realistic_filter, PointSet, PointSetMeta,
    TICK_UNIT,
};
