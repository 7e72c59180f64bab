use crate::error::{Error, Result};

/// Column holding `‖a‖_2`, audited for conservation.
pub const COL_A_L2: &str = "a_L2";
/// Column holding `‖∇a‖²_2 + ‖b‖²_2`, audited for conservation.
pub const COL_ENERGY: &str = "energy";

/// Time series of tracked norms with a fixed column order.
#[derive(Clone, Debug, PartialEq)]
pub struct NormSeries {
    columns: Vec<String>,
    times: Vec<f64>,
    rows: Vec<Vec<f64>>,
    /// Set when the run became unstable; the rows stop at the last valid state.
    pub truncated: bool,
}

impl NormSeries {
    pub fn new(columns: Vec<String>) -> Self {
        Self { columns, times: Vec::new(), rows: Vec::new(), truncated: false }
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn push(&mut self, time: f64, values: Vec<f64>) -> Result<()> {
        if values.len() != self.columns.len() {
            return Err(Error::param(
                "values",
                format!("{} values for {} columns", values.len(), self.columns.len()),
            ));
        }
        if let Some(&last) = self.times.last() {
            if !(time > last) {
                return Err(Error::param("time", format!("{time} does not follow {last}")));
            }
        }
        self.times.push(time);
        self.rows.push(values);
        Ok(())
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn last_row(&self) -> Option<&[f64]> {
        self.rows.last().map(|r| r.as_slice())
    }

    /// Rows whose time is also present in `other`, for comparing recordings.
    pub fn value_at(&self, time: f64) -> Option<&[f64]> {
        self.times.iter().position(|&t| t == time).map(|k| self.rows[k].as_slice())
    }
}
