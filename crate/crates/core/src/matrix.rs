use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Evaluation results with one labelled column per distribution and one row
/// per evaluation point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationMatrix {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl EvaluationMatrix {
    /// Builds a matrix from column vectors of equal length.
    pub fn from_columns(labels: Vec<String>, columns: Vec<Vec<f64>>) -> Result<Self> {
        if labels.len() != columns.len() {
            return Err(Error::InvalidArgument(format!(
                "{} labels for {} columns",
                labels.len(),
                columns.len()
            )));
        }
        let m = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != m) {
            return Err(Error::InvalidArgument(
                "evaluation columns have unequal lengths".into(),
            ));
        }
        let rows = (0..m)
            .map(|j| columns.iter().map(|c| c[j]).collect())
            .collect();
        Ok(EvaluationMatrix {
            columns: labels,
            rows,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    /// Entry at row `j`, column `i`.
    pub fn get(&self, j: usize, i: usize) -> f64 {
        self.rows[j][i]
    }

    pub fn column(&self, i: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[i]).collect()
    }

    pub fn column_by_label(&self, label: &str) -> Option<Vec<f64>> {
        self.columns
            .iter()
            .position(|c| c == label)
            .map(|i| self.column(i))
    }

    /// Row-wise reduction into a single labelled column.
    pub fn reduce(&self, label: &str, f: impl Fn(&[f64]) -> f64) -> EvaluationMatrix {
        EvaluationMatrix {
            columns: vec![label.to_string()],
            rows: self.rows.iter().map(|r| vec![f(r)]).collect(),
        }
    }
}

impl fmt::Display for EvaluationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.columns.join("\t"))?;
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|v| format!("{v:.7}")).collect();
            writeln!(f, "{}", cells.join("\t"))?;
        }
        Ok(())
    }
}
