//! Run configuration, norm series as CSV, and binary field snapshots.

mod config;
mod series_csv;
mod snapshot;

pub use config::{load_config, parse_config};
pub use series_csv::{format_f64, read_series, series_from_reader, series_to_writer, write_series, write_table};
pub use snapshot::{read_snapshot, write_snapshot, Snapshot, MAGIC, VERSION};
