//! Parameter sweeps: a base problem, integer axes addressed by dotted
//! paths, and optional derived parameters (`value = scale·from + offset`).

use std::io::Write;
use std::path::Path;

use anyhow::Context;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::output::{error_cells, result_cells, RESULT_COLUMNS};
use crate::problem::ProblemFile;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    /// Dotted path into the problem, e.g. `divisor.d` or `singularities.0.count`.
    pub path: String,
    pub start: i64,
    /// Inclusive.
    pub end: i64,
    #[serde(default = "one")]
    pub step: i64,
}

fn one() -> i64 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Derived {
    pub path: String,
    pub from: String,
    #[serde(default = "one")]
    pub scale: i64,
    #[serde(default)]
    pub offset: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub base: Value,
    pub axes: Vec<Axis>,
    #[serde(default)]
    pub derived: Vec<Derived>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SweepError {
    #[error("sweep needs at least one axis")]
    NoAxes,
    #[error("axis `{0}` has a non-positive step")]
    BadStep(String),
    #[error("`{0}` does not name an integer parameter of the base problem")]
    NotAnInteger(String),
    #[error("derived parameter `{path}` refers to `{from}`, which is not an axis")]
    UnknownSource { path: String, from: String },
    #[error("parameter `{0}` is set twice")]
    Duplicate(String),
}

/// One evaluated grid point: parameter values then result cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub params: Vec<i64>,
    pub cells: Vec<String>,
}

fn lookup<'a>(root: &'a mut Value, path: &str) -> Option<&'a mut Value> {
    path.split('.').try_fold(root, |v, key| match v {
        Value::Object(map) => map.get_mut(key),
        Value::Array(items) => key.parse::<usize>().ok().and_then(|i| items.get_mut(i)),
        _ => None,
    })
}

impl SweepSpec {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("invalid sweep file {}", path.display()))
    }

    fn validate(&self) -> Result<(), SweepError> {
        if self.axes.is_empty() {
            return Err(SweepError::NoAxes);
        }
        let mut base = self.base.clone();
        let mut seen = Vec::new();
        for axis in &self.axes {
            if axis.step <= 0 {
                return Err(SweepError::BadStep(axis.path.clone()));
            }
            if seen.contains(&axis.path) {
                return Err(SweepError::Duplicate(axis.path.clone()));
            }
            seen.push(axis.path.clone());
        }
        for d in &self.derived {
            if !self.axes.iter().any(|a| a.path == d.from) {
                return Err(SweepError::UnknownSource {
                    path: d.path.clone(),
                    from: d.from.clone(),
                });
            }
            if seen.contains(&d.path) {
                return Err(SweepError::Duplicate(d.path.clone()));
            }
            seen.push(d.path.clone());
        }
        for path in &seen {
            match lookup(&mut base, path) {
                Some(v) if v.is_i64() => {}
                _ => return Err(SweepError::NotAnInteger(path.clone())),
            }
        }
        Ok(())
    }

    /// Column names: axes, derived parameters, then the result columns.
    pub fn header(&self) -> Vec<String> {
        self.axes
            .iter()
            .map(|a| a.path.clone())
            .chain(self.derived.iter().map(|d| d.path.clone()))
            .chain(RESULT_COLUMNS.iter().map(|c| c.to_string()))
            .collect()
    }

    /// Grid points in lexicographic order of the axes (first axis slowest).
    pub fn points(&self) -> Vec<Vec<i64>> {
        let mut points = vec![Vec::new()];
        for axis in &self.axes {
            let values: Vec<i64> = (axis.start..=axis.end).step_by(axis.step as usize).collect();
            points = points
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        points
    }

    fn instantiate(&self, point: &[i64]) -> (Vec<i64>, anyhow::Result<ProblemFile>) {
        let mut value = self.base.clone();
        let mut params = point.to_vec();
        for (axis, v) in self.axes.iter().zip(point) {
            *lookup(&mut value, &axis.path).expect("validated path") = (*v).into();
        }
        for d in &self.derived {
            let src = self
                .axes
                .iter()
                .position(|a| a.path == d.from)
                .expect("validated source");
            let v = d.scale * point[src] + d.offset;
            params.push(v);
            *lookup(&mut value, &d.path).expect("validated path") = v.into();
        }
        let problem = serde_json::from_value(value).map_err(anyhow::Error::from);
        (params, problem)
    }

    /// Evaluates every grid point (in parallel) and returns the rows in
    /// grid order.
    pub fn run(&self) -> Result<Vec<SweepRow>, SweepError> {
        self.validate()?;
        let rows = self
            .points()
            .par_iter()
            .map(|point| {
                let (params, problem) = self.instantiate(point);
                let cells = match problem.and_then(|p| p.evaluate().map_err(anyhow::Error::from)) {
                    Ok(report) => result_cells(&report),
                    Err(e) => error_cells(&format!("{e:#}")),
                };
                SweepRow { params, cells }
            })
            .collect();
        Ok(rows)
    }

    pub fn write_csv<W: Write>(&self, rows: &[SweepRow], out: W) -> anyhow::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.header())?;
        for row in rows {
            let record: Vec<String> = row
                .params
                .iter()
                .map(i64::to_string)
                .chain(row.cells.iter().cloned())
                .collect();
            w.write_record(record)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(axes: &str) -> SweepSpec {
        let text = format!(
            r#"{{"base": {{"surface": {{"type": "projective_plane"}}, "divisor": {{"d": 3}},
                 "singularities": [{{"germ": {{"type": "A", "k": 2}}, "count": 1}}]}},
                "axes": {axes}}}"#
        );
        serde_json::from_str(&text).unwrap()
    }

    #[test]
    fn lexicographic_points() {
        let s = spec(
            r#"[{"path": "divisor.d", "start": 3, "end": 4}, {"path": "singularities.0.count", "start": 1, "end": 3, "step": 2}]"#,
        );
        assert_eq!(s.points(), vec![vec![3, 1], vec![3, 3], vec![4, 1], vec![4, 3]]);
    }

    #[test]
    fn empty_range_has_no_points() {
        let s = spec(r#"[{"path": "divisor.d", "start": 5, "end": 4}]"#);
        assert!(s.run().unwrap().is_empty());
    }

    #[test]
    fn invalid_axes() {
        assert_eq!(spec("[]").run(), Err(SweepError::NoAxes));
        let s = spec(r#"[{"path": "divisor.x", "start": 1, "end": 2}]"#);
        assert_eq!(s.run(), Err(SweepError::NotAnInteger("divisor.x".into())));
        let s = spec(r#"[{"path": "surface.type", "start": 1, "end": 2}]"#);
        assert!(matches!(s.run(), Err(SweepError::NotAnInteger(_))));
        let s = spec(r#"[{"path": "divisor.d", "start": 1, "end": 2, "step": 0}]"#);
        assert!(matches!(s.run(), Err(SweepError::BadStep(_))));
    }

    #[test]
    fn rejected_points_are_reported_not_fatal() {
        let s = spec(r#"[{"path": "singularities.0.count", "start": 0, "end": 1}]"#);
        let rows = s.run().unwrap();
        assert_eq!(rows[0].cells[4], "INVALID_INPUT");
        assert_eq!(rows[1].cells[4], "TSMOOTH_OR_EMPTY");
    }
}
