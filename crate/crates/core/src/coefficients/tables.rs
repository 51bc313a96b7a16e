//! Form descriptors, first-row tables, and the bi-index recursion.

use num_complex::Complex64;

use super::sym2::sym2_coefficients;
use super::tau::gl2_normalized;
use crate::error::{Error, Result};
use crate::parity::Parity;
use crate::rational::{divisors, gcd, mobius};

/// Archimedean data of a degree-3 family: spectral parameters and sign
/// characters, in the order they enter the gamma factors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmbeddingParams {
    pub lambda: [Complex64; 3],
    pub delta: [Parity; 3],
}

impl EmbeddingParams {
    /// Discrete-series shape at odd parameter k:
    /// lambda = (-2it, -(k-1)/2 + it, (k-1)/2 + it), signs (odd, even, odd).
    pub fn discrete_series(k: u32, t: f64) -> Result<Self> {
        if k < 3 || k % 2 == 0 {
            return Err(Error::Domain(format!(
                "discrete-series parameter must be odd and >= 3, got {k}"
            )));
        }
        let a = f64::from((k - 1) / 2);
        let it = Complex64::new(0.0, t);
        Ok(EmbeddingParams {
            lambda: [-2.0 * it, -a + it, a + it],
            delta: [Parity::Odd, Parity::Even, Parity::Odd],
        })
    }

    /// Minimal shape: all spectral parameters and signs vanish.
    pub fn trivial() -> Self {
        EmbeddingParams {
            lambda: [Complex64::new(0.0, 0.0); 3],
            delta: [Parity::Even; 3],
        }
    }

    /// Checks the normalization and ordering constraints: spectral
    /// parameters sum to zero, sign characters sum to even, the third slot
    /// carries the maximal, nonnegative real part, and the first two real
    /// parts stay below 1/2.
    pub fn validate(&self) -> Result<()> {
        let sum: Complex64 = self.lambda.iter().sum();
        if sum.norm() > 1e-9 {
            return Err(Error::Domain(format!(
                "spectral parameters must sum to zero, got {sum}"
            )));
        }
        if (self.delta[0].index() + self.delta[1].index() + self.delta[2].index()) % 2 != 0 {
            return Err(Error::Domain(
                "sign characters must sum to an even parity".into(),
            ));
        }
        let (r1, r2, r3) = (self.lambda[0].re, self.lambda[1].re, self.lambda[2].re);
        if r3 < -1e-12 || r1 > r3 + 1e-12 || r2 > r3 + 1e-12 {
            return Err(Error::Domain(format!(
                "third spectral slot must carry the maximal, nonnegative real part; got ({r1}, {r2}, {r3})"
            )));
        }
        if r1 >= 0.5 || r2 >= 0.5 {
            return Err(Error::Domain(format!(
                "first two spectral real parts must stay below 1/2, got ({r1}, {r2})"
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    Gl2Holomorphic { weight: u32 },
    Gl3Sym2,
    Gl3EisensteinD3,
}

impl FormKind {
    pub fn name(&self) -> &'static str {
        match self {
            FormKind::Gl2Holomorphic { .. } => "gl2_holomorphic",
            FormKind::Gl3Sym2 => "gl3_sym2",
            FormKind::Gl3EisensteinD3 => "gl3_eisenstein_d3",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FormDescriptor {
    pub kind: FormKind,
    pub degree: u32,
    /// Present for the degree-3 kinds only.
    pub embedding: Option<EmbeddingParams>,
    pub conductor: u32,
}

impl FormDescriptor {
    pub fn gl2() -> Self {
        FormDescriptor {
            kind: FormKind::Gl2Holomorphic { weight: 12 },
            degree: 2,
            embedding: None,
            conductor: 1,
        }
    }

    /// Symmetric square of the weight-12 form; its discrete-series parameter
    /// is 2*12 - 1 and it is self-dual (spectral parameter t = 0).
    pub fn sym2() -> Self {
        FormDescriptor {
            kind: FormKind::Gl3Sym2,
            degree: 3,
            embedding: Some(EmbeddingParams::discrete_series(23, 0.0).expect("odd parameter")),
            conductor: 1,
        }
    }

    pub fn d3() -> Self {
        FormDescriptor {
            kind: FormKind::Gl3EisensteinD3,
            degree: 3,
            embedding: Some(EmbeddingParams::trivial()),
            conductor: 1,
        }
    }
}

/// First-row coefficient table with the bi-index recursion on top.
///
/// Immutable after construction; shared references are safe to read from any
/// number of threads.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    descriptor: FormDescriptor,
    /// Index n holds a_{1,n}; slot 0 is unused.
    first_row: Vec<f64>,
}

impl CoefficientTable {
    pub fn new(descriptor: FormDescriptor, first_row: Vec<f64>) -> Result<Self> {
        if first_row.len() < 2 || first_row[1] != 1.0 {
            return Err(Error::Domain(
                "first row must contain a_{1,1} = 1".into(),
            ));
        }
        Ok(CoefficientTable {
            descriptor,
            first_row,
        })
    }

    pub fn descriptor(&self) -> &FormDescriptor {
        &self.descriptor
    }

    pub fn n_max(&self) -> usize {
        self.first_row.len() - 1
    }

    /// Index n holds a_{1,n}; slot 0 is unused.
    pub fn first_row(&self) -> &[f64] {
        &self.first_row
    }

    /// a_{1,n}.
    pub fn a(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::Domain("coefficient index must be positive".into()));
        }
        if n > self.n_max() as u64 {
            return Err(Error::InsufficientTable {
                needed: n,
                available: self.n_max() as u64,
            });
        }
        Ok(self.first_row[n as usize])
    }

    /// a_{n,m} = sum over d | (n,m) of mu(d) a_{1,n/d} a_{1,m/d}; self-dual
    /// tables supply a_{n,1} = a_{1,n}.
    pub fn bi_index(&self, n: u64, m: u64) -> Result<f64> {
        if n == 0 || m == 0 {
            return Err(Error::Domain("coefficient index must be positive".into()));
        }
        let g = gcd(n as i64, m as i64) as u64;
        let mut total = 0.0;
        for d in divisors(g) {
            let mu = mobius(d);
            if mu == 0 {
                continue;
            }
            total += f64::from(mu) * self.a(n / d)? * self.a(m / d)?;
        }
        Ok(total)
    }
}

pub fn gl2_table(n_max: usize) -> Result<CoefficientTable> {
    CoefficientTable::new(FormDescriptor::gl2(), gl2_normalized(n_max)?)
}

pub fn sym2_table(n_max: usize) -> Result<CoefficientTable> {
    CoefficientTable::new(FormDescriptor::sym2(), sym2_coefficients(n_max)?)
}

pub fn d3_table(n_max: usize) -> Result<CoefficientTable> {
    let row = d3_coefficients(n_max).iter().map(|&v| v as f64).collect();
    CoefficientTable::new(FormDescriptor::d3(), row)
}

/// d3(n) = #{(a,b,c) : abc = n} for n <= n_max by two divisor-sum sieves;
/// index n holds d3(n), slot 0 is unused.
pub fn d3_coefficients(n_max: usize) -> Vec<i64> {
    let mut d2 = vec![0i64; n_max + 1];
    for a in 1..=n_max {
        for m in (a..=n_max).step_by(a) {
            d2[m] += 1;
        }
    }
    let mut d3 = vec![0i64; n_max + 1];
    for a in 1..=n_max {
        for m in (a..=n_max).step_by(a) {
            d3[m] += d2[m / a];
        }
    }
    d3
}

/// Least-squares slope of log sum_{n<=T} a_{1,n}^2 against log T.
///
/// The grid must span at least two decades so the fit sees genuine growth
/// rather than local fluctuation.
pub fn rankin_selberg_slope(table: &CoefficientTable, t_grid: &[f64]) -> Result<f64> {
    if t_grid.len() < 2 {
        return Err(Error::Domain("need at least two grid points".into()));
    }
    let lo = t_grid.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = t_grid.iter().cloned().fold(0.0f64, f64::max);
    if !(lo >= 1.0) {
        return Err(Error::Domain("grid points must be >= 1".into()));
    }
    if hi / lo < 100.0 {
        return Err(Error::Domain(
            "grid must span at least two decades".into(),
        ));
    }
    if hi > table.n_max() as f64 {
        return Err(Error::InsufficientTable {
            needed: hi as u64,
            available: table.n_max() as u64,
        });
    }
    let mut cuts: Vec<usize> = t_grid.iter().map(|&t| t.floor() as usize).collect();
    cuts.sort_unstable();
    let row = table.first_row();
    let mut pts = Vec::with_capacity(cuts.len());
    let mut sum = 0.0;
    let mut n = 1usize;
    for &cut in &cuts {
        while n <= cut {
            sum += row[n] * row[n];
            n += 1;
        }
        pts.push(((cut as f64).ln(), sum.ln()));
    }
    Ok(least_squares_slope(&pts))
}

pub(crate) fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for &(x, y) in pts {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    num / den
}
