use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::report::RunReport;
use crate::error::Result;

/// File names and headers of the CSV export, in column order.
pub const SETS_FILE: &str = "sets.csv";
pub const SETS_HEADER: &str = "k,index,x1,x2";
pub const CONES_FILE: &str = "cones.csv";
pub const CONES_HEADER: &str = "k,point,ray,base_x1,base_x2,dir_x1,dir_x2";

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn coords(p: &[f64]) -> String {
    match p {
        [a] => format!("{},", num(*a)),
        [a, b, ..] => format!("{},{}", num(*a), num(*b)),
        [] => ",".to_string(),
    }
}

/// Write `sets.csv` and `cones.csv` for a run report.
///
/// `sets.csv` lists each `S_k`: for planar sets the vertex loop in
/// counter-clockwise order with the first vertex repeated at the end; for
/// intervals the two endpoints (a segment) with `x2` left empty. `cones.csv`
/// lists one row per generator of each stored boundary cone.
pub fn export_plot(report: &RunReport, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut sets = format!("{SETS_HEADER}\n");
    let mut cones = format!("{CONES_HEADER}\n");
    for step in &report.steps {
        let mut loop_pts: Vec<&Vec<f64>> = step.vertices.iter().collect();
        if report.order == 2 && loop_pts.len() > 1 {
            loop_pts.push(&step.vertices[0]);
        }
        for (i, p) in loop_pts.iter().enumerate() {
            writeln!(sets, "{},{},{}", step.k, i, coords(p)).unwrap();
        }
        for (i, b) in step.boundary_points.iter().enumerate() {
            for (j, g) in b.generators.iter().enumerate() {
                writeln!(cones, "{},{},{},{},{}", step.k, i, j, coords(&b.point), coords(g)).unwrap();
            }
        }
    }
    let a = dir.join(SETS_FILE);
    let b = dir.join(CONES_FILE);
    std::fs::write(&a, sets)?;
    std::fs::write(&b, cones)?;
    Ok(vec![a, b])
}
