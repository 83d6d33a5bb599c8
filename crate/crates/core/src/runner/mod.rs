//! Configuration, experiment execution, and file output for the command-line
//! front end.

mod config;
mod json;
mod plot;
mod report;

pub use config::{Measurements, PlantConfig, RunConfig};
pub use json::{to_json_string, write_json};
pub use plot::{export_plot, CONES_FILE, CONES_HEADER, SETS_FILE, SETS_HEADER};
pub use report::{run, ConeRecord, RunReport, RunStatus, StepRecord};
