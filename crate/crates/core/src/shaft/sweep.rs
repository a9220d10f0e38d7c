use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{all_roots_with, OracleConfig};
use crate::routh::hurwitz_verdict_with;
use crate::scalar::{robust_sign, Scalar, SignClass, Tolerance};
use crate::shaft::model::{characteristic_polynomial, shaft_conditions, ShaftParams};
use crate::verdict::StabilityVerdict;

/// Closed interval `[start, end]` of gain values.
#[derive(Clone, Debug, PartialEq)]
pub struct AxisRange {
    pub start: Scalar,
    pub end: Scalar,
}

impl AxisRange {
    pub fn new(start: Scalar, end: Scalar) -> Result<Self> {
        if start.to_f64() > end.to_f64() {
            return Err(Error::InvalidArgument(format!("range {start}:{end} is reversed")));
        }
        Ok(AxisRange { start, end })
    }

    /// `count` evenly spaced samples including both ends; a zero-width range
    /// collapses to the single point.
    pub fn samples(&self, count: usize) -> Result<Vec<Scalar>> {
        if count < 2 {
            return Err(Error::InvalidArgument(format!("resolution must be at least 2, got {count}")));
        }
        if self.start == self.end {
            return Ok(vec![self.start.clone()]);
        }
        let width = &self.end - &self.start;
        let steps = Scalar::from_integer(count as i64 - 1);
        Ok((0..count)
            .map(|i| {
                if i + 1 == count {
                    self.end.clone()
                } else {
                    &self.start + &(&(&width * &Scalar::from_integer(i as i64)) / &steps)
                }
            })
            .collect())
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub base: ShaftParams,
    pub ki_range: AxisRange,
    pub kp_range: AxisRange,
    /// Samples along `(k_I, k_p)`.
    pub resolution: (usize, usize),
    /// Cells with `|abscissa| ≤ margin` are boundary cells.
    pub margin: f64,
    pub tolerance: Tolerance,
    pub oracle: OracleConfig,
}

impl SweepConfig {
    /// `k_I ∈ [−5, 0]`, `k_p ∈ [−20, 5]` at 200×200.
    pub fn default_window(base: ShaftParams) -> Self {
        SweepConfig {
            base,
            ki_range: AxisRange {
                start: Scalar::from_integer(-5),
                end: Scalar::zero(),
            },
            kp_range: AxisRange {
                start: Scalar::from_integer(-20),
                end: Scalar::from_integer(5),
            },
            resolution: (200, 200),
            margin: 1e-6,
            tolerance: Tolerance::default(),
            oracle: OracleConfig::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellClass {
    Stable,
    Unstable,
    Boundary,
}

impl CellClass {
    pub fn as_str(self) -> &'static str {
        match self {
            CellClass::Stable => "stable",
            CellClass::Unstable => "unstable",
            CellClass::Boundary => "boundary",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GainCell {
    pub ki: Scalar,
    pub kp: Scalar,
    pub conditions: [Scalar; 3],
    pub verdict: StabilityVerdict,
    /// `None` when the root finder did not converge.
    pub abscissa: Option<f64>,
    pub class: CellClass,
}

impl GainCell {
    /// All three conditions strictly positive.
    pub fn conditions_hold(&self, tol: Tolerance) -> bool {
        self.conditions.iter().all(|c| robust_sign(c, 0.0, tol) == SignClass::Positive)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub cells: usize,
    pub stable: usize,
    pub unstable: usize,
    pub boundary: usize,
    /// Cells where the conditions and the sign of the abscissa disagree
    /// outside the margin.
    pub disagreements: usize,
}

#[derive(Clone, Debug)]
pub struct GainGrid {
    pub ki_axis: Vec<Scalar>,
    pub kp_axis: Vec<Scalar>,
    /// Row-major with `k_p` fastest.
    pub cells: Vec<GainCell>,
    pub margin: f64,
    pub tolerance: Tolerance,
}

fn evaluate_cell(config: &SweepConfig, ki: &Scalar, kp: &Scalar) -> GainCell {
    let params = config.base.with_gains(ki.clone(), kp.clone());
    let poly = characteristic_polynomial(&params);
    let conditions = shaft_conditions(&params);
    let verdict = hurwitz_verdict_with(&poly, config.tolerance);
    let abscissa = all_roots_with(&poly, &config.oracle).abscissa();
    let signs = conditions.clone().map(|c| robust_sign(&c, 0.0, config.tolerance));
    let class = match abscissa {
        None => CellClass::Boundary,
        Some(x) if x.abs() <= config.margin => CellClass::Boundary,
        _ if !signs.contains(&SignClass::Negative) && signs.contains(&SignClass::ZeroOrUncertain) => {
            CellClass::Boundary
        }
        _ if signs.iter().all(|s| *s == SignClass::Positive) => CellClass::Stable,
        _ => CellClass::Unstable,
    };
    GainCell {
        ki: ki.clone(),
        kp: kp.clone(),
        conditions,
        verdict,
        abscissa,
        class,
    }
}

pub fn sweep_grid(config: &SweepConfig) -> Result<GainGrid> {
    let ki_axis = config.ki_range.samples(config.resolution.0)?;
    let kp_axis = config.kp_range.samples(config.resolution.1)?;
    let pairs: Vec<(&Scalar, &Scalar)> = ki_axis
        .iter()
        .flat_map(|ki| kp_axis.iter().map(move |kp| (ki, kp)))
        .collect();
    let cells = pairs
        .par_iter()
        .map(|(ki, kp)| evaluate_cell(config, ki, kp))
        .collect();
    Ok(GainGrid {
        ki_axis: ki_axis.clone(),
        kp_axis: kp_axis.clone(),
        cells,
        margin: config.margin,
        tolerance: config.tolerance,
    })
}

impl GainGrid {
    pub fn cell(&self, ki_index: usize, kp_index: usize) -> &GainCell {
        &self.cells[ki_index * self.kp_axis.len() + kp_index]
    }

    pub fn is_disagreement(&self, cell: &GainCell) -> bool {
        match cell.abscissa {
            Some(x) if x.abs() > self.margin => cell.conditions_hold(self.tolerance) != (x < 0.0),
            _ => false,
        }
    }

    pub fn summary(&self) -> SweepSummary {
        let mut s = SweepSummary {
            cells: self.cells.len(),
            ..SweepSummary::default()
        };
        for cell in &self.cells {
            match cell.class {
                CellClass::Stable => s.stable += 1,
                CellClass::Unstable => s.unstable += 1,
                CellClass::Boundary => s.boundary += 1,
            }
            if self.is_disagreement(cell) {
                s.disagreements += 1;
            }
        }
        s
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "ki,kp,cond1,cond2,cond3,verdict,abscissa")?;
        for c in &self.cells {
            let abscissa = c.abscissa.map_or("nan".to_string(), |x| x.to_string());
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                c.ki.to_f64(),
                c.kp.to_f64(),
                c.conditions[0].to_f64(),
                c.conditions[1].to_f64(),
                c.conditions[2].to_f64(),
                c.class.as_str(),
                abscissa
            )?;
        }
        Ok(())
    }

    /// Heatmap with `k_I` on the horizontal axis and `k_p` increasing upward.
    pub fn write_svg<W: Write>(&self, mut out: W) -> Result<()> {
        let (nx, ny) = (self.ki_axis.len(), self.kp_axis.len());
        let cell = (600 / nx.max(ny)).clamp(1, 60);
        let (pad, width, height) = (40, nx * cell, ny * cell);
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" shape-rendering="crispEdges">"#,
            width + 2 * pad,
            height + 2 * pad
        )?;
        writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#)?;
        for i in 0..nx {
            for j in 0..ny {
                let color = match self.cell(i, j).class {
                    CellClass::Stable => "#fde725",
                    CellClass::Unstable => "#440154",
                    CellClass::Boundary => "#21918c",
                };
                writeln!(
                    out,
                    r#"<rect x="{}" y="{}" width="{cell}" height="{cell}" fill="{color}"/>"#,
                    pad + i * cell,
                    pad + (ny - 1 - j) * cell
                )?;
            }
        }
        let label = |s: &Scalar| s.to_f64().to_string();
        let (ki0, ki1) = (&self.ki_axis[0], &self.ki_axis[nx - 1]);
        let (kp0, kp1) = (&self.kp_axis[0], &self.kp_axis[ny - 1]);
        writeln!(
            out,
            r#"<g font-family="sans-serif" font-size="11"><text x="{pad}" y="{}">{}</text><text x="{}" y="{}" text-anchor="end">{}</text><text x="{}" y="{}" text-anchor="middle">k_I</text><text x="4" y="{}">{}</text><text x="4" y="{}">{}</text><text x="4" y="{}">k_p</text></g>"#,
            pad + height + 14,
            label(ki0),
            pad + width,
            pad + height + 14,
            label(ki1),
            pad + width / 2,
            pad + height + 28,
            pad + height,
            label(kp0),
            pad + 10,
            label(kp1),
            pad + height / 2,
        )?;
        writeln!(out, "</svg>")?;
        Ok(())
    }
}
