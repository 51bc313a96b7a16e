//! The kernel transform: a test profile on one side of the summation
//! identity becomes, on the other side, the vertical line integral
//!
//! `F(x) = sg(x)^eta |x|^{1-sigma} / (4 pi) * int A(t) e^{-i t ln|x|} dt`
//!
//! with `A(t)` the product of two gamma factors and the continued profile
//! transform at `s = sigma + i t`. The integral is a Fourier transform in
//! `ln|x|`, so one pass of samples `A(kh)` and one FFT tabulate `F` on a
//! logarithmic grid dense enough for cubic interpolation at every queried
//! argument; grids are memoized per family and line.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::coefficients::EmbeddingParams;
use crate::error::{Error, Result};
use crate::parity::Parity;
use crate::special::g_delta;

use super::grid::UniformGridComplex;
use super::{PhiMellin, TestFunctionFamily};

// The tabulated window in ln|x|. Queries below exp(L0_ABS) fail loudly;
// nothing in the summation identities reaches above exp(L_TOP).
const L0_ABS: f64 = -6.5;
const L_TOP: f64 = 15.0;
// Log-grid resolution cap. The tabulated values oscillate at the saddle
// rate of the assembled line, which reaches ~1e3 per log unit where the
// envelope peaks; cubic interpolation then keeps the induced error to a few
// parts in 1e7 there and far below everywhere else the identities read.
const DL_MAX: f64 = 1.25e-4;
// The line integral is cut where the integrand has dropped this far below
// its peak.
const TAIL_DROP: f64 = 1e-10;
const HEIGHT_CAP: f64 = 40_000.0;
// Maximal phase advance per sample of the twisted integrand.
const PHASE_BUDGET: f64 = 2.2;
// Every tabulated value shares one ladder of integrand samples, so each
// carries absolute junk scaled to the largest tabulated magnitude: sample
// errors granted by the assembly slack plus transform roundoff.  Measured
// junk stays below a tenth of this fraction of the peak; the factor covers
// family-to-family variation.
const FLOOR_COEFF: f64 = 3e-13;

/// Vertical integration line `Re s = sigma`, sampled with the given step up
/// to at least the given height (the builder extends the height until the
/// integrand has died).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerticalLineSpec {
    pub sigma: f64,
    pub step: f64,
    pub height: f64,
}

impl Default for VerticalLineSpec {
    fn default() -> Self {
        VerticalLineSpec {
            sigma: 0.75,
            step: 0.05,
            height: 400.0,
        }
    }
}

impl VerticalLineSpec {
    fn validate(&self) -> Result<()> {
        if !self.sigma.is_finite() || !self.step.is_finite() || !self.height.is_finite() {
            return Err(Error::Domain("line parameters must be finite".into()));
        }
        if self.step <= 0.0 || self.height < self.step {
            return Err(Error::Domain(
                "line needs a positive step no larger than its height".into(),
            ));
        }
        let ratio = self.height / self.step;
        if (ratio - ratio.round()).abs() > 1e-6 * ratio.max(1.0) {
            return Err(Error::Domain(
                "line height must be an integer number of steps".into(),
            ));
        }
        Ok(())
    }
}

/// One evaluation of the kernel transform: the value, a bound-grade estimate
/// of the absolute error it may carry (neglected line-integral tail plus the
/// shared ladder's dynamic-range floor), and a warning when the builder had
/// to stop at its height cap.
#[derive(Clone, Debug)]
pub struct FValue {
    pub value: Complex64,
    pub truncation: f64,
    pub warning: Option<String>,
}

/// Tabulated transform along one line for one family.
pub(crate) struct FGrid {
    table: UniformGridComplex,
    sigma: f64,
    eta_sign: f64,
    p_tail: f64,
    p_floor: f64,
    hit_cap: bool,
    trivial: bool,
}

impl FGrid {
    fn trivial(sigma: f64, eta_sign: f64) -> FGrid {
        FGrid {
            table: UniformGridComplex {
                x0: L0_ABS,
                step: 1.0,
                values: vec![Complex64::new(0.0, 0.0); 8],
            },
            sigma,
            eta_sign,
            p_tail: 0.0,
            p_floor: 0.0,
            hit_cap: false,
            trivial: true,
        }
    }

    pub(crate) fn eval(&self, x: f64) -> Result<FValue> {
        if self.trivial {
            return Ok(FValue {
                value: Complex64::new(0.0, 0.0),
                truncation: 0.0,
                warning: None,
            });
        }
        let ax = x.abs();
        if !ax.is_finite() || ax == 0.0 {
            return Err(Error::Domain(
                "transform argument must be finite and nonzero".into(),
            ));
        }
        let l = ax.ln();
        if !self.table.covers(l) {
            return Err(Error::Domain(format!(
                "|x| = {ax:e} lies outside the tabulated window"
            )));
        }
        let p = self.table.interp(l);
        let sign = if x < 0.0 { self.eta_sign } else { 1.0 };
        let amp = ax.powf(1.0 - self.sigma);
        Ok(FValue {
            value: sign * amp * p,
            truncation: (self.p_tail + self.p_floor) * amp,
            warning: self
                .hit_cap
                .then(|| "line integral stopped at the height cap".to_string()),
        })
    }
}

/// Which profile coordinates feed the line integrand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Route {
    /// Unit-scale coordinates for modulation at least one, plain otherwise.
    Auto,
    /// Force the profile in original coordinates.
    PlainProfile,
    /// Force unit-scale coordinates (needs modulation at least one).
    UnitProfile,
}

#[derive(PartialEq, Eq, Hash)]
struct GridKey {
    lambda: [(u64, u64); 3],
    delta: [u8; 3],
    eta: u8,
    omega: u8,
    y: u64,
    sigma: u64,
    step: u64,
    height: u64,
    unit: bool,
}

fn cache() -> &'static Mutex<HashMap<GridKey, Arc<FGrid>>> {
    static GRIDS: OnceLock<Mutex<HashMap<GridKey, Arc<FGrid>>>> = OnceLock::new();
    GRIDS.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Memoized transform grid for the family on the given line.
pub(crate) fn transform_grid(
    params: &EmbeddingParams,
    fam: &TestFunctionFamily,
    line: &VerticalLineSpec,
    route: Route,
) -> Result<Arc<FGrid>> {
    line.validate()?;
    if line.sigma < 0.5 {
        return Err(Error::Domain(
            "the transform line must sit at Re s >= 1/2".into(),
        ));
    }
    params.validate()?;
    if !fam.admissible_for(params) {
        return Err(Error::Domain(
            "family was built for a different embedding".into(),
        ));
    }
    let unit = match route {
        Route::Auto => fam.y >= 1.0,
        Route::PlainProfile => false,
        Route::UnitProfile => {
            if fam.y < 1.0 {
                return Err(Error::Domain(
                    "unit-scale route needs modulation at least one".into(),
                ));
            }
            true
        }
    };
    let key = GridKey {
        lambda: [
            (params.lambda[0].re.to_bits(), params.lambda[0].im.to_bits()),
            (params.lambda[1].re.to_bits(), params.lambda[1].im.to_bits()),
            (params.lambda[2].re.to_bits(), params.lambda[2].im.to_bits()),
        ],
        delta: [
            params.delta[0].index(),
            params.delta[1].index(),
            params.delta[2].index(),
        ],
        eta: fam.eta.index(),
        omega: fam.omega.index(),
        y: fam.y.to_bits(),
        sigma: line.sigma.to_bits(),
        step: line.step.to_bits(),
        height: line.height.to_bits(),
        unit,
    };
    if let Some(found) = cache().lock().unwrap().get(&key) {
        return Ok(found.clone());
    }
    let built = Arc::new(build_grid(params, fam, line, unit)?);
    Ok(cache().lock().unwrap().entry(key).or_insert(built).clone())
}

/// The kernel transform at a single argument. `tol` only grades the
/// truncation report: the value itself always uses the full grid.
pub fn voronoi_transform_f(
    params: &EmbeddingParams,
    fam: &TestFunctionFamily,
    x: f64,
    line: &VerticalLineSpec,
    tol: f64,
) -> Result<FValue> {
    let grid = transform_grid(params, fam, line, Route::Auto)?;
    let mut out = grid.eval(x)?;
    if out.warning.is_none() && tol > 0.0 && out.truncation > tol * (1.0 + out.value.norm()) {
        out.warning = Some("tail estimate exceeds the requested tolerance".into());
    }
    Ok(out)
}

fn build_grid(
    params: &EmbeddingParams,
    fam: &TestFunctionFamily,
    line: &VerticalLineSpec,
    unit: bool,
) -> Result<FGrid> {
    let engine = PhiMellin::new(fam, unit);
    let eta_sign = fam.eta.sign();
    if engine.is_trivial() {
        return Ok(FGrid::trivial(line.sigma, eta_sign));
    }
    // With every spectral parameter real the integrand divided by the piece
    // coefficient obeys B(-t) = conj B(t), halving the sampling work.
    let symmetric = params.lambda.iter().all(|l| l.im == 0.0);
    let kappa = fam.kappa();
    let shift = if unit { fam.y.ln() } else { 0.0 };
    let mut fold = if unit {
        ((Complex64::new(line.sigma, 0.0) - fam.lambda3) * fam.y.ln()).exp()
    } else {
        Complex64::new(1.0, 0.0)
    };
    if symmetric {
        fold *= kappa;
    }
    let sigma = line.sigma;
    let p = *params;
    let eta = fam.eta;
    let integrand = move |t: f64, abs_tol: f64| -> Result<Complex64> {
        let s = Complex64::new(sigma, t);
        let g1 = g_delta(p.delta[0].add(eta), s - p.lambda[0])?;
        let g2 = g_delta(p.delta[1].add(eta), s - p.lambda[1])?;
        // The gamma factors amplify the profile transform; whatever slack
        // the assembler grants the sample shrinks accordingly.
        let m_tol = abs_tol / (g1.norm() * g2.norm()).max(f64::MIN_POSITIVE);
        let m = engine.eval_tol(s - p.lambda[2], m_tol)?;
        let v = g1 * g2 * m;
        Ok(if symmetric { v / kappa } else { v })
    };
    assemble_line_grid(
        &integrand,
        line,
        fold,
        symmetric,
        shift,
        eta_sign,
        HEIGHT_CAP,
    )
}

/// Tabulate `|x|^{sigma-1} F-like(x)` for an arbitrary line integrand. The
/// symmetric flag asserts Schwarz symmetry of the integrand; `fold` is a
/// constant factor and `shift` a displacement of the log grid, both applied
/// during assembly. The integrand receives the absolute error its value may
/// carry without disturbing the assembled table (zero while the envelope
/// peak is still unknown).
#[allow(clippy::too_many_arguments)]
pub(crate) fn assemble_line_grid(
    eval: &(dyn Fn(f64, f64) -> Result<Complex64> + Sync),
    line: &VerticalLineSpec,
    fold: Complex64,
    symmetric: bool,
    shift: f64,
    eta_sign: f64,
    cap: f64,
) -> Result<FGrid> {
    let magnitude = |t: f64, slack: f64| -> Result<f64> {
        let fwd = eval(t, slack)?.norm();
        if symmetric {
            Ok(fwd)
        } else {
            Ok(fwd.max(eval(-t, slack)?.norm()))
        }
    };
    // Locate the envelope peak on a coarse logarithmic sweep, then push the
    // cut height dyadically until the integrand is dead relative to it.
    let mut peak = eval(0.0, 0.0)?.norm();
    for k in 1..=24 {
        peak = peak.max(magnitude(2f64.powf(0.5 * k as f64), 1e-13 * peak)?);
    }
    let slack = 1e-13 * peak;
    let mut height = line.height.max(line.step);
    let mut hit_cap = false;
    loop {
        if peak == 0.0 || magnitude(height, slack)? <= TAIL_DROP * peak {
            break;
        }
        if height >= cap {
            hit_cap = true;
            break;
        }
        height = (2.0 * height).min(cap);
    }
    // Sample step: the twisted integrand advances its phase at most at the
    // gamma-factor rate plus the extreme log-argument, per unit of t.
    let speed = 2.0 * (height.max(16.0) / (2.0 * PI)).ln() + L_TOP.max(-L0_ABS) + shift.abs() + 2.0;
    let h = line.step.min(PHASE_BUDGET / speed);
    let k_max = (height / h).ceil() as usize;
    let mut samples: Vec<Complex64> = if symmetric {
        (0..=k_max)
            .into_par_iter()
            .map(|k| eval(k as f64 * h, slack))
            .collect::<Result<_>>()?
    } else {
        (-(k_max as i64)..=k_max as i64)
            .into_par_iter()
            .map(|k| eval(k as f64 * h, slack))
            .collect::<Result<_>>()?
    };
    let tail_sample = samples.last().map(|v| v.norm()).unwrap_or(0.0);
    // Roll the top half of the ladder off smoothly.  A hard cutoff rings:
    // the drop criterion is relative to the envelope peak, but off-peak
    // log-arguments read values far below that scale and the broadband
    // leakage of a step lands on them.  A C^2 taper buys three extra
    // integration-by-parts orders against the non-stationary phase, which
    // pushes the leakage below everything we tabulate.
    let t_roll = 0.5 * k_max as f64 * h;
    for (m, v) in samples.iter_mut().enumerate() {
        let k = if symmetric { m as i64 } else { m as i64 - k_max as i64 };
        let t = (k as f64 * h).abs();
        if t > t_roll {
            let u = ((2.0 * t_roll - t) / t_roll).clamp(0.0, 1.0);
            *v *= u * u * u * (10.0 - 15.0 * u + 6.0 * u * u);
        }
    }
    let n_min = samples.len() + 64;
    let n_res = (2.0 * PI / (h * DL_MAX)).ceil() as usize;
    let n = n_min.max(n_res).next_power_of_two();
    let dl = 2.0 * PI / (n as f64 * h);
    let l0_pre = L0_ABS - shift;
    // Pre-twist by sample index; the general route restores the k = m - K
    // offset through its per-entry twiddle after the transform.  The
    // rotation advances recursively: reducing the angle m*h*l0 directly
    // costs |angle|*eps of independent phase noise per sample, which lands
    // broadband junk scaled to the ladder peak on every slot, while the
    // running product errs only by a sqrt(m)*eps random walk plus a
    // coherent axis scaling far below the tabulation step.
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    let step_rot = Complex64::from_polar(1.0, -h * l0_pre);
    let mut rot = Complex64::new(1.0, 0.0);
    for (m, &v) in samples.iter().enumerate() {
        buf[m] = v * rot;
        rot *= step_rot;
        if m & 1023 == 1023 {
            rot = rot / rot.norm();
        }
    }
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let len = (((L_TOP - L0_ABS) / dl).ceil() as usize + 4).min(n);
    let scale = fold * (h / (4.0 * PI));
    let mut values = Vec::with_capacity(len);
    if symmetric {
        // sum over both half lines = twice the real part of the one-sided
        // sum, minus the doubly counted center sample
        let b0 = samples[0].re;
        for item in buf.iter().take(len) {
            values.push(scale * (2.0 * item.re - b0));
        }
    } else {
        // Same recursive advance as the pre-twist, for the same reason.
        let mut twiddle = Complex64::from_polar(1.0, k_max as f64 * h * l0_pre);
        let step_tw = Complex64::from_polar(1.0, k_max as f64 * h * dl);
        for (j, item) in buf.iter().take(len).enumerate() {
            values.push(scale * twiddle * item);
            twiddle *= step_tw;
            if j & 1023 == 1023 {
                twiddle = twiddle / twiddle.norm();
            }
        }
    }
    let p_floor = FLOOR_COEFF * values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    Ok(FGrid {
        table: UniformGridComplex {
            x0: L0_ABS,
            step: dl,
            values,
        },
        sigma: line.sigma,
        eta_sign,
        p_tail: tail_sample * h * fold.norm() / (4.0 * PI) * 10.0,
        p_floor,
        hit_cap,
        trivial: false,
    })
}
