use std::path::{Path, PathBuf};

use toml::{Table, Value};

use crate::error::{Error, Result};
use crate::experiments::{ExperimentConfig, SweepAxes, TEnd};
use crate::profiles::make_h;

const SECTIONS: [(&str, &[&str]); 4] = [
    ("model", &["alpha", "beta", "mu", "nu", "epsilon", "lambda", "n_osc"]),
    ("grid", &["grid_n", "half_width"]),
    ("control", &["cfl_safety", "dt_max", "filter_enabled"]),
    (
        "experiment",
        &[
            "t_end_mode", "t_end", "s_list", "observer_stride", "sweep_lambda", "sweep_n_osc",
            "sweep_epsilon", "out_dir", "seed_note",
        ],
    ),
];

/// Collects type errors while reading one section.
struct Reader<'a> {
    section: &'a str,
    table: Option<&'a Table>,
    errors: &'a mut Vec<String>,
}

impl Reader<'_> {
    fn get(&self, key: &str) -> Option<&Value> {
        self.table.and_then(|t| t.get(key))
    }

    fn complain(&mut self, key: &str, want: &str, got: &Value) {
        self.errors.push(format!("[{}] {key}: expected {want}, found {got}", self.section));
    }

    fn float(&mut self, key: &str) -> Option<f64> {
        let v = self.get(key)?.clone();
        match v {
            Value::Float(x) => Some(x),
            Value::Integer(i) => Some(i as f64),
            other => {
                self.complain(key, "a number", &other);
                None
            }
        }
    }

    fn uint(&mut self, key: &str) -> Option<u64> {
        let v = self.get(key)?.clone();
        match v {
            Value::Integer(i) if i >= 0 => Some(i as u64),
            other => {
                self.complain(key, "a nonnegative integer", &other);
                None
            }
        }
    }

    fn boolean(&mut self, key: &str) -> Option<bool> {
        let v = self.get(key)?.clone();
        match v {
            Value::Boolean(b) => Some(b),
            other => {
                self.complain(key, "true or false", &other);
                None
            }
        }
    }

    fn string(&mut self, key: &str) -> Option<String> {
        let v = self.get(key)?.clone();
        match v {
            Value::String(s) => Some(s),
            other => {
                self.complain(key, "a string", &other);
                None
            }
        }
    }

    /// A number, or `None` for the string "auto" (and for a missing key).
    fn auto_float(&mut self, key: &str) -> Option<Option<f64>> {
        match self.get(key)?.clone() {
            Value::String(s) if s == "auto" => Some(None),
            Value::Float(x) => Some(Some(x)),
            Value::Integer(i) => Some(Some(i as f64)),
            other => {
                self.complain(key, "a number or \"auto\"", &other);
                None
            }
        }
    }

    fn auto_uint(&mut self, key: &str) -> Option<Option<u64>> {
        match self.get(key)?.clone() {
            Value::String(s) if s == "auto" => Some(None),
            Value::Integer(i) if i >= 0 => Some(Some(i as u64)),
            other => {
                self.complain(key, "a nonnegative integer or \"auto\"", &other);
                None
            }
        }
    }

    fn floats(&mut self, key: &str) -> Option<Vec<f64>> {
        let v = self.get(key)?.clone();
        let items = match &v {
            Value::Array(a) => a
                .iter()
                .map(|x| match x {
                    Value::Float(f) => Some(*f),
                    Value::Integer(i) => Some(*i as f64),
                    _ => None,
                })
                .collect::<Option<Vec<f64>>>(),
            _ => None,
        };
        if items.is_none() {
            self.complain(key, "an array of numbers", &v);
        }
        items
    }

    fn uints(&mut self, key: &str) -> Option<Vec<u32>> {
        let v = self.get(key)?.clone();
        let items = match &v {
            Value::Array(a) => a
                .iter()
                .map(|x| match x {
                    Value::Integer(i) => u32::try_from(*i).ok(),
                    _ => None,
                })
                .collect::<Option<Vec<u32>>>(),
            _ => None,
        };
        if items.is_none() {
            self.complain(key, "an array of nonnegative integers", &v);
        }
        items
    }
}

/// Parses and validates a run configuration. Every problem found is
/// reported, not just the first.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let root: Table = text.parse().map_err(|e: toml::de::Error| Error::Config(vec![e.message().to_string()]))?;
    let mut errors = Vec::new();
    for (name, value) in &root {
        match SECTIONS.iter().find(|(s, _)| s == name) {
            None => errors.push(format!("unknown section [{name}]")),
            Some((_, keys)) => match value {
                Value::Table(t) => {
                    for key in t.keys() {
                        if !keys.contains(&key.as_str()) {
                            errors.push(format!("[{name}] unknown key `{key}`"));
                        }
                    }
                }
                _ => errors.push(format!("`{name}` must be a section")),
            },
        }
    }
    let section = |name: &str| root.get(name).and_then(|v| v.as_table());

    let mut cfg = ExperimentConfig::default();
    {
        let mut r = Reader { section: "model", table: section("model"), errors: &mut errors };
        let p = &mut cfg.params;
        if let Some(v) = r.float("alpha") {
            p.alpha = v;
        }
        if let Some(v) = r.float("beta") {
            p.beta = v;
        }
        if let Some(v) = r.float("mu") {
            p.mu = v;
        }
        if let Some(v) = r.float("nu") {
            p.nu = v;
        }
        if let Some(v) = r.float("epsilon") {
            p.eps = v;
        }
        if let Some(v) = r.float("lambda") {
            p.lambda = v;
        }
        if let Some(v) = r.uint("n_osc") {
            match u32::try_from(v) {
                Ok(n) => p.n_osc = n,
                Err(_) => r.errors.push(format!("[model] n_osc = {v}: too large")),
            }
        }
    }
    {
        let mut r = Reader { section: "grid", table: section("grid"), errors: &mut errors };
        if let Some(v) = r.auto_uint("grid_n") {
            cfg.grid_n = v.map(|n| n as usize);
        }
        if let Some(v) = r.auto_float("half_width") {
            cfg.half_width = v;
        }
    }
    {
        let mut r = Reader { section: "control", table: section("control"), errors: &mut errors };
        if let Some(v) = r.float("cfl_safety") {
            cfg.ctrl.cfl_safety = v;
        }
        if let Some(v) = r.auto_float("dt_max") {
            cfg.dt_max = v;
        }
        if let Some(v) = r.boolean("filter_enabled") {
            cfg.ctrl.filter_enabled = v;
        }
    }
    {
        let mut r = Reader { section: "experiment", table: section("experiment"), errors: &mut errors };
        let t_end = r.float("t_end");
        match r.string("t_end_mode").as_deref() {
            None | Some("tstar") => {
                if t_end.is_some() {
                    r.errors.push("[experiment] t_end is only allowed with t_end_mode = \"explicit\"".into());
                }
            }
            Some("explicit") => match t_end {
                Some(t) => cfg.t_end = TEnd::Explicit(t),
                None => r.errors.push("[experiment] t_end_mode = \"explicit\" requires t_end".into()),
            },
            Some(other) => {
                r.errors.push(format!("[experiment] t_end_mode = {other:?}: must be \"tstar\" or \"explicit\""))
            }
        }
        if let Some(v) = r.floats("s_list") {
            cfg.s_list = v;
        }
        if let Some(v) = r.uint("observer_stride") {
            cfg.observer_stride = v as usize;
        }
        cfg.sweep = SweepAxes { lambda: r.floats("sweep_lambda"), n_osc: r.uints("sweep_n_osc"), epsilon: r.floats("sweep_epsilon") };
        cfg.out_dir = r.string("out_dir").map(PathBuf::from);
        if let Some(v) = r.string("seed_note") {
            cfg.seed_note = v;
        }
    }
    if errors.is_empty() {
        errors = cfg.violations(&make_h()?);
    } else {
        errors.extend(cfg.range_violations());
    }
    if errors.is_empty() {
        Ok(cfg)
    } else {
        Err(Error::Config(errors))
    }
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Format {
        path: path.display().to_string(),
        detail: e.to_string(),
    })?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file_accepted() {
        let cfg = parse_config("[model]\nbeta = 3.2\nalpha = 0.25\n").unwrap();
        assert_eq!(cfg.params.beta, 3.2);
        assert_eq!(cfg.grid_n, None);
    }

    #[test]
    fn every_violation_listed() {
        let text = "[model]\nbeta = 3.6\nalpha = 0.25\nbogus = 1\n[grid]\ngrid_n = 7\n[extra]\n";
        let Err(Error::Config(v)) = parse_config(text) else { panic!() };
        let joined = v.join("\n");
        assert!(joined.contains("bogus"), "{joined}");
        assert!(joined.contains("[extra]"), "{joined}");
        assert!(joined.contains("3 < beta < 4 - 2*alpha = 3.5"), "{joined}");
        assert!(joined.contains("grid_n = 7"), "{joined}");
    }

    #[test]
    fn underresolved_grid_names_minimum() {
        let Err(Error::Config(v)) = parse_config("[grid]\ngrid_n = 64\n") else { panic!() };
        assert!(v.iter().any(|m| m.contains("requires n >=")), "{v:?}");
    }

    #[test]
    fn type_errors_reported() {
        let Err(Error::Config(v)) = parse_config("[model]\nlambda = \"big\"\n[experiment]\nt_end_mode = \"explicit\"\n") else {
            panic!()
        };
        assert_eq!(v.len(), 2, "{v:?}");
    }
}
