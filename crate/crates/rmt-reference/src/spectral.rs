use std::io::Write;

use crate::error::RmtError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    McSampling,
    HermiteProjection,
    ContourFredholm,
    AiryFredholm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::McSampling => "mc_sampling",
            Method::HermiteProjection => "hermite_projection",
            Method::ContourFredholm => "contour_fredholm",
            Method::AiryFredholm => "airy_fredholm",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub s: f64,
    pub f: f64,
    pub error: f64,
}

/// A tabulated distribution function.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCdf {
    pub method: Method,
    pub params: String,
    pub evaluations: Vec<Evaluation>,
}

impl SpectralCdf {
    pub fn tabulate(
        method: Method,
        params: impl Into<String>,
        grid: &[f64],
        mut f: impl FnMut(f64) -> Result<(f64, f64), RmtError>,
    ) -> Result<Self, RmtError> {
        let evaluations = grid
            .iter()
            .map(|&s| f(s).map(|(v, e)| Evaluation { s, f: v, error: e }))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { method, params: params.into(), evaluations })
    }

    pub fn is_monotone(&self) -> bool {
        self.evaluations.windows(2).all(|w| w[1].s >= w[0].s && w[1].f >= w[0].f)
    }

    /// Linear interpolation in the table, clamped to the end values.
    pub fn interpolate(&self, s: f64) -> f64 {
        let e = &self.evaluations;
        let i = e.partition_point(|v| v.s <= s);
        if i == 0 {
            return e[0].f;
        }
        if i == e.len() {
            return e[e.len() - 1].f;
        }
        let (a, b) = (e[i - 1], e[i]);
        a.f + (b.f - a.f) * (s - a.s) / (b.s - a.s)
    }

    pub fn in_unit_interval(&self) -> bool {
        self.evaluations.iter().all(|e| (0.0..=1.0).contains(&e.f))
    }

    /// Columns s, F, method, params, error_estimate.
    pub fn write_csv<W: Write>(&self, out: W, header: bool) -> csv::Result<()> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
        if header {
            w.write_record(["s", "F", "method", "params", "error_estimate"])?;
        }
        for e in &self.evaluations {
            w.write_record([e.s.to_string(), e.f.to_string(), self.method.as_str().to_string(), self.params.clone(), e.error.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}
