use std::io::Write;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::shaft::model::{ClosedLoopModel, ShaftParams};

type State = [Complex64; 3];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub t: f64,
    /// `(x₁, x₂, ℓ)`
    pub state: State,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    /// `dt · ρ(A)`; explicit RK4 is comfortable below 1.
    pub step_ratio: f64,
}

fn norm(x: &State) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

impl Trajectory {
    pub fn final_state(&self) -> &Sample {
        self.samples.last().expect("trajectory always holds the initial state")
    }

    pub fn max_norm(&self) -> f64 {
        self.samples.iter().map(|s| norm(&s.state)).fold(0.0, f64::max)
    }

    pub fn first_time_norm_exceeds(&self, threshold: f64) -> Option<f64> {
        self.samples.iter().find(|s| norm(&s.state) > threshold).map(|s| s.t)
    }

    /// Writes every `stride`-th sample and always the last one.
    pub fn write_csv<W: Write>(&self, mut out: W, stride: usize) -> Result<()> {
        let stride = stride.max(1);
        writeln!(out, "t,x1_re,x1_im,x2_re,x2_im,l_re,l_im")?;
        let last = self.samples.len() - 1;
        for (i, s) in self.samples.iter().enumerate() {
            if i % stride != 0 && i != last {
                continue;
            }
            let [x1, x2, l] = s.state;
            writeln!(out, "{},{},{},{},{},{},{}", s.t, x1.re, x1.im, x2.re, x2.im, l.re, l.im)?;
        }
        Ok(())
    }
}

fn field(a: &[[Complex64; 3]; 3], forcing: &State, x: &State) -> State {
    std::array::from_fn(|i| (0..3).map(|j| a[i][j] * x[j]).sum::<Complex64>() - forcing[i])
}

fn axpy(x: &State, h: f64, k: &State) -> State {
    std::array::from_fn(|i| x[i] + k[i] * h)
}

/// Eigenvalue magnitudes of `A` are the roots of its characteristic polynomial.
fn spectral_radius(params: &ShaftParams) -> f64 {
    let p = crate::shaft::model::characteristic_polynomial(params);
    crate::oracle::all_roots(&p, 1e-13)
        .roots
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Classical RK4 on the affine system from `(x0, v0, l0)` over `[0, horizon]`.
pub fn simulate_closed_loop(
    params: &ShaftParams,
    x0: Complex64,
    v0: Complex64,
    l0: Complex64,
    horizon: f64,
    dt: f64,
) -> Result<Trajectory> {
    if !(horizon.is_finite() && horizon > 0.0) {
        return Err(Error::InvalidArgument(format!("horizon must be positive, got {horizon}")));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidArgument(format!("dt must be positive, got {dt}")));
    }
    let model = ClosedLoopModel::new(params);
    let a = model.matrix_f64();
    let forcing = model.forcing_f64();
    let step_ratio = dt * spectral_radius(params);
    if step_ratio > 1.0 {
        log::warn!("dt * spectral radius = {step_ratio:.3} exceeds 1; RK4 may be inaccurate or unstable");
    }

    let steps = (horizon / dt).ceil() as usize;
    let mut samples = Vec::with_capacity(steps + 1);
    let mut x: State = [x0, v0, l0];
    let mut t = 0.0;
    samples.push(Sample { t, state: x });
    for n in 0..steps {
        let h = dt.min(horizon - t);
        let k1 = field(&a, &forcing, &x);
        let k2 = field(&a, &forcing, &axpy(&x, h / 2.0, &k1));
        let k3 = field(&a, &forcing, &axpy(&x, h / 2.0, &k2));
        let k4 = field(&a, &forcing, &axpy(&x, h, &k3));
        x = std::array::from_fn(|i| x[i] + (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0));
        t = if n + 1 == steps { horizon } else { (n + 1) as f64 * dt };
        if !x.iter().all(|z| z.is_finite()) {
            return Err(Error::Divergence { time: t });
        }
        samples.push(Sample { t, state: x });
    }
    Ok(Trajectory { samples, step_ratio })
}
