//! Tabular results of completeness and cyclicity experiments.

/// One (family size, target) cell of an experiment.
#[derive(Debug, Clone)]
pub struct ReportRow {
    /// Number of family elements used.
    pub n: usize,
    pub target: String,
    /// H(b) distance from the target to the span.
    pub residual: f64,
    pub gram_condition: f64,
    /// Diagnostic markers, e.g. "ill_conditioned" or "capped".
    pub flags: Vec<String>,
}

/// Full result table of one experiment, ordered by n, then target.
#[derive(Debug, Clone)]
pub struct CompletenessReport {
    pub label: String,
    /// Cap radius applied to the point sequence.
    pub cap: f64,
    pub rows: Vec<ReportRow>,
    /// Partial sums of sum (1 - |lambda_k|) for the point sequence used.
    pub blaschke_sums: Vec<f64>,
    /// One human-readable line per target summarizing the decay.
    pub verdicts: Vec<String>,
}

impl CompletenessReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,target,residual,gram_condition,flags\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{:.12e},{:.12e},{}\n",
                row.n,
                row.target,
                row.residual,
                row.gram_condition,
                row.flags.join(";")
            ));
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut out = format!("{}\n", self.label);
        out.push_str(&format!("point cap: {}\n", self.cap));
        if let Some(last) = self.blaschke_sums.last() {
            out.push_str(&format!(
                "blaschke partial sum after {} points: {:.6} (finite data; divergence is not certified)\n",
                self.blaschke_sums.len(),
                last
            ));
        }
        for v in &self.verdicts {
            out.push_str(v);
            out.push('\n');
        }
        out
    }

    /// Residuals of one target in row order (i.e. by increasing n).
    pub fn residual_curve(&self, target: &str) -> Vec<f64> {
        self.rows
            .iter()
            .filter(|r| r.target == target)
            .map(|r| r.residual)
            .collect()
    }
}
