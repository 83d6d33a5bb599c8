use serde::{Deserialize, Serialize};

/// Configurable numerical tolerances for propagation and the LP programs.
/// Hull construction (1e-10) and cone-generator merging (1e-9 rad) use fixed
/// relative tolerances in the geometry module.
///
/// Every field can be overridden through an environment variable
/// (`SETMEMBER_TOL_<FIELD>` in upper case, e.g. `SETMEMBER_TOL_ALIGN=1e-8`)
/// via [`Tolerances::from_env`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Equality slack for alignment and saturation tests.
    pub align: f64,
    /// LP feasibility tolerance.
    pub feasibility: f64,
    /// LP optimality tolerance on reduced costs.
    pub optimality: f64,
    /// Boundary membership tolerance.
    pub boundary: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            align: 1e-9,
            feasibility: 1e-8,
            optimality: 1e-9,
            boundary: 1e-9,
        }
    }
}

impl Tolerances {
    /// Defaults, overridden by any `SETMEMBER_TOL_*` variables that parse as
    /// positive floats. Unparseable values are logged and ignored.
    pub fn from_env() -> Self {
        let mut t = Self::default();
        t.apply_env();
        t
    }

    pub fn apply_env(&mut self) {
        let fields: [(&str, &mut f64); 4] = [
            ("ALIGN", &mut self.align),
            ("FEASIBILITY", &mut self.feasibility),
            ("OPTIMALITY", &mut self.optimality),
            ("BOUNDARY", &mut self.boundary),
        ];
        for (name, slot) in fields {
            let key = format!("SETMEMBER_TOL_{name}");
            let Ok(text) = std::env::var(&key) else { continue };
            match text.trim().parse::<f64>() {
                Ok(v) if v.is_finite() && v > 0.0 => *slot = v,
                _ => log::warn!("ignoring {key}={text:?}: expected a positive number"),
            }
        }
    }
}
