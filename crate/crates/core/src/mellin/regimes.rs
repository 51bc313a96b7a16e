//! Decay-window classification for the kernel transform: which envelope
//! applies at a given argument, the exponent it predicts, and the measured
//! magnitude to hold against it.

use num_complex::Complex64;

use super::contour::{voronoi_transform_f, VerticalLineSpec};
use super::family::TestFunctionFamily;
use crate::coefficients::EmbeddingParams;
use crate::error::Result;

/// Which decay window the argument falls in, given the modulation scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegimeKind {
    /// Modulation at most one: superpolynomial decay at every argument.
    SmallModulation,
    /// Argument below the modulation scale: square-root growth window.
    SmallArgument,
    /// Argument between the scale and its cube: power-law envelope.
    PowerWindow,
    /// Argument beyond the cubed scale: superpolynomial decay resumes.
    RapidDecay,
}

/// One measured point held against its window's envelope.  The envelope
/// carries unit constant; `exponent` is the predicted local log-log slope
/// in the argument.  `overlapping_poles` warns that two gamma-factor pole
/// lattices coincide, where the envelope constant may absorb an extra
/// logarithm.
#[derive(Clone, Debug)]
pub struct RegimeReport {
    pub kind: RegimeKind,
    pub measured: f64,
    pub envelope: f64,
    pub exponent: f64,
    pub overlapping_poles: bool,
}

fn classify(y: f64, ax: f64) -> RegimeKind {
    if y <= 1.0 {
        RegimeKind::SmallModulation
    } else if ax <= y {
        RegimeKind::SmallArgument
    } else if ax <= y * y * y {
        RegimeKind::PowerWindow
    } else {
        RegimeKind::RapidDecay
    }
}

// Two pole lattices coincide when a spectral difference is an integer whose
// parity matches the sign-character difference; each lattice runs down in
// steps of two from its character's offset.
fn lattices_overlap(params: &EmbeddingParams) -> bool {
    for i in 0..3 {
        for j in (i + 1)..3 {
            let d = params.lambda[i] - params.lambda[j];
            if d.im.abs() > 1e-9 {
                continue;
            }
            let k = d.re.round();
            if (d.re - k).abs() > 1e-9 {
                continue;
            }
            let step = (k.abs() as i64 % 2) as u8;
            if step == (params.delta[i].index() + params.delta[j].index()) % 2 {
                return true;
            }
        }
    }
    false
}

/// Classifies the argument and measures the transform against the
/// applicable envelope at unit constant.  `n` selects the envelope order in
/// the two superpolynomial windows and is ignored elsewhere.
pub fn regime_report(
    params: &EmbeddingParams,
    fam: &TestFunctionFamily,
    x: f64,
    n: u32,
) -> Result<RegimeReport> {
    let value = voronoi_transform_f(params, fam, x, &VerticalLineSpec::default(), 0.0)?;
    let y = fam.y;
    let ax = x.abs();
    let rl3 = fam.lambda3.re;
    let kind = classify(y, ax);
    let nf = f64::from(n);
    let (envelope, exponent) = match kind {
        RegimeKind::SmallModulation => (ax.powf(-nf), -nf),
        RegimeKind::SmallArgument => (ax.sqrt() * y.powf(-0.5 - rl3), 0.5),
        RegimeKind::PowerWindow => {
            let e = 0.75 + 0.5 * rl3;
            (y.powf(-rl3) * (ax / y).powf(e), e)
        }
        RegimeKind::RapidDecay => (y.powf(1.5) * (ax / (y * y * y)).powf(-nf), -nf),
    };
    Ok(RegimeReport {
        kind,
        measured: value.value.norm(),
        envelope,
        exponent,
        overlapping_poles: lattices_overlap(params),
    })
}
