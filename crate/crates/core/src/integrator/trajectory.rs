use std::io::{Read, Write};

use super::StepperConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub state: Vec<f64>,
}

/// Time-ordered samples of a flat state, tagged with the equation label,
/// the column names of the flat layout and the stepper that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub label: String,
    pub columns: Vec<String>,
    pub stepper: Option<StepperConfig>,
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn new(label: impl Into<String>, columns: Vec<String>, stepper: Option<StepperConfig>) -> Self {
        Trajectory {
            label: label.into(),
            columns,
            stepper,
            samples: Vec::new(),
        }
    }

    pub fn push(&mut self, t: f64, state: Vec<f64>) {
        debug_assert_eq!(state.len(), self.columns.len());
        debug_assert!(self.samples.last().is_none_or(|s| s.t < t));
        self.samples.push(Sample { t, state });
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    pub fn first(&self) -> &Sample {
        &self.samples[0]
    }

    pub fn last(&self) -> &Sample {
        self.samples.last().expect("empty trajectory")
    }

    /// Common spacing if every interval matches the mean spacing to
    /// within `rel_tol`.
    pub fn uniform_step(&self, rel_tol: f64) -> Option<f64> {
        if self.samples.len() < 2 {
            return None;
        }
        let n = self.samples.len() - 1;
        let h = (self.last().t - self.first().t) / n as f64;
        self.samples
            .windows(2)
            .all(|w| ((w[1].t - w[0].t) - h).abs() <= rel_tol * h)
            .then_some(h)
    }

    /// Writes `t,<columns...>` then one row per sample.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(std::iter::once("t").chain(self.columns.iter().map(String::as_str)))?;
        for s in &self.samples {
            w.write_record(std::iter::once(s.t.to_string()).chain(s.state.iter().map(|x| x.to_string())))?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a CSV written by [`write_csv`](Self::write_csv). The label is
    /// left empty for the caller to fill in.
    pub fn read_csv<R: Read>(input: R) -> Result<Self, csv::Error> {
        let mut r = csv::Reader::from_reader(input);
        let headers = r.headers()?.clone();
        let columns: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
        let mut traj = Trajectory::new("", columns, None);
        for record in r.records() {
            let record = record?;
            let mut values = Vec::with_capacity(record.len());
            for (i, field) in record.iter().enumerate() {
                let v: f64 = field.trim().parse().map_err(|_| {
                    csv::Error::from(std::io::Error::new(
                        std::io::ErrorKind::InvalidData,
                        format!("column {i}: `{field}` is not a number"),
                    ))
                })?;
                values.push(v);
            }
            let t = values.remove(0);
            traj.samples.push(Sample { t, state: values });
        }
        Ok(traj)
    }
}
