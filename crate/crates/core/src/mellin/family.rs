//! The two-bump test-function family: a compactly supported profile pair
//! at +-Y on one side of the summation identity, and the oscillating
//! weight f it induces on the other side.

use num_complex::Complex64;

use super::bump::{
    bump_hat, bump_hat_sine, bump_profile, bump_profile_complex, bump_profile_prime,
    bump_profile_prime_complex, BumpSpec,
};
use crate::coefficients::EmbeddingParams;
use crate::error::{Error, Result};
use crate::parity::Parity;

const TAU: f64 = std::f64::consts::TAU;

/// One translated, dilated copy of the base profile (or its derivative)
/// with a complex coefficient. The test function phi is the sum of its
/// pieces, and the contour machinery integrates each piece separately.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PhiPiece {
    pub coeff: Complex64,
    pub center: f64,
    pub halfwidth: f64,
    pub prime: bool,
    pub parity: Parity,
}

impl PhiPiece {
    pub fn support(&self) -> (f64, f64) {
        (self.center - self.halfwidth, self.center + self.halfwidth)
    }

    /// Real-axis value, exactly zero outside the support.
    pub fn eval(&self, x: f64) -> Complex64 {
        let u = (x - self.center) / self.halfwidth;
        let v = if self.prime {
            bump_profile_prime(self.parity, u)
        } else {
            bump_profile(self.parity, u)
        };
        self.coeff * v
    }

    /// Analytic branch of the piece, valid away from the essential
    /// singularities at the support endpoints; it does not vanish off the
    /// real support, so only path-deformation arguments may use it.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeff * self.body_complex(z)
    }

    /// The analytic branch without the coefficient: real on the real
    /// axis, which is what Schwarz-reflection arguments need.
    pub fn body_complex(&self, z: Complex64) -> Complex64 {
        let u = (z - self.center) / self.halfwidth;
        if self.prime {
            bump_profile_prime_complex(self.parity, u)
        } else {
            bump_profile_complex(self.parity, u)
        }
    }
}

/// Modulated test-function family at modulation Y: the compact side
/// phi(x) = phi0(x-Y) + (-1)^omega phi0(x+Y) (with a normalized derivative
/// variant when the third sign character is odd), the rescaled copy
/// phi1(x) = phi(Yx), and the oscillating weight
/// f(x) = |x|^{lambda3+delta3} (2cos(2 pi Y x) or -2i sin(2 pi Y x))
/// phihat0(x) on the other side. The profile parity is eta+omega, which
/// makes phi's parity eta+delta3 and f's parity eta.
#[derive(Debug, Clone, Copy)]
pub struct TestFunctionFamily {
    pub y: f64,
    pub omega: Parity,
    pub eta: Parity,
    pub delta3: Parity,
    pub lambda3: Complex64,
    pub phi0: BumpSpec,
}

/// Builds the family at modulation `y >= 0` from validated embedding data.
/// The combination can vanish identically (y = 0 with odd omega); that is
/// a degenerate family, not an error, and is reported by
/// [`TestFunctionFamily::degenerate`].
pub fn build_test_function(
    y: f64,
    omega: Parity,
    eta: Parity,
    params: &EmbeddingParams,
) -> Result<TestFunctionFamily> {
    if !y.is_finite() || y < 0.0 {
        return Err(Error::Domain(format!(
            "modulation must be finite and nonnegative, got {y}"
        )));
    }
    params.validate()?;
    Ok(TestFunctionFamily {
        y,
        omega,
        eta,
        delta3: params.delta[2],
        lambda3: params.lambda[2],
        phi0: BumpSpec::centered(eta.add(omega)),
    })
}

impl TestFunctionFamily {
    /// Parity of the base profile.
    pub fn rho(&self) -> Parity {
        self.phi0.parity
    }

    /// Parity of phi itself, which is also the sign character its signed
    /// Mellin transform carries.
    pub fn phi_parity(&self) -> Parity {
        self.eta.add(self.delta3)
    }

    /// True when the combination collapses to the zero function
    /// (y = 0 with odd omega). All transforms of a degenerate family
    /// vanish identically.
    pub fn degenerate(&self) -> bool {
        self.y == 0.0 && self.omega == Parity::Odd
    }

    /// Admissibility check against the embedding this family was built
    /// from: the copied third-slot data must match.
    pub fn admissible_for(&self, params: &EmbeddingParams) -> bool {
        self.delta3 == params.delta[2] && (self.lambda3 - params.lambda[2]).norm() < 1e-12
    }

    /// Coefficient carried by each bump copy: 1 in the plain variant,
    /// 1/(2 pi i) in the derivative variant.
    pub(crate) fn kappa(&self) -> Complex64 {
        match self.delta3 {
            Parity::Even => Complex64::new(1.0, 0.0),
            Parity::Odd => Complex64::new(0.0, -1.0 / TAU),
        }
    }

    /// The bump copies making up phi (or, in rescaled coordinates, phi1).
    /// Copies sharing a center merge; a degenerate family has no pieces.
    /// Rescaled coordinates are only meaningful for y > 0.
    pub(crate) fn pieces(&self, rescaled: bool) -> Vec<PhiPiece> {
        let prime = self.delta3 == Parity::Odd;
        let (centers, halfwidth) = if rescaled {
            debug_assert!(self.y > 0.0, "rescaled pieces need positive modulation");
            ((1.0, -1.0), 1.0 / self.y)
        } else {
            ((self.y, -self.y), 1.0)
        };
        let a = self.kappa();
        let b = self.omega.sign() * self.kappa();
        if centers.0 == centers.1 {
            let coeff = a + b;
            if coeff.norm() == 0.0 {
                return Vec::new();
            }
            return vec![PhiPiece {
                coeff,
                center: centers.0,
                halfwidth,
                prime,
                parity: self.rho(),
            }];
        }
        vec![
            PhiPiece {
                coeff: a,
                center: centers.0,
                halfwidth,
                prime,
                parity: self.rho(),
            },
            PhiPiece {
                coeff: b,
                center: centers.1,
                halfwidth,
                prime,
                parity: self.rho(),
            },
        ]
    }

    /// The compact-side test function.
    pub fn phi(&self, x: f64) -> Complex64 {
        self.pieces(false).iter().map(|p| p.eval(x)).sum()
    }

    /// The rescaled copy phi1(x) = phi(y x).
    pub fn phi1(&self, x: f64) -> Complex64 {
        if self.y >= 1.0 {
            self.pieces(true).iter().map(|p| p.eval(x)).sum()
        } else {
            self.phi(self.y * x)
        }
    }

    /// Fourier transform of the base profile: real and even for an even
    /// profile, -i times the (odd) sine transform for an odd one.
    pub fn phi0_hat(&self, r: f64) -> Complex64 {
        match self.rho() {
            Parity::Even => Complex64::new(bump_hat(r), 0.0),
            Parity::Odd => Complex64::new(0.0, -bump_hat_sine(r)),
        }
    }

    /// The oscillating weight on the summation side of the identity.
    pub fn f(&self, x: f64) -> Complex64 {
        if self.degenerate() {
            return Complex64::new(0.0, 0.0);
        }
        let exponent = self.lambda3 + f64::from(self.delta3.index());
        let power = if x == 0.0 {
            if exponent.norm() == 0.0 {
                Complex64::new(1.0, 0.0)
            } else if exponent.re > 0.0 {
                return Complex64::new(0.0, 0.0);
            } else {
                Complex64::new(f64::NAN, f64::NAN)
            }
        } else {
            (exponent * x.abs().ln()).exp()
        };
        let osc = match self.omega {
            Parity::Even => Complex64::new(2.0 * (TAU * self.y * x).cos(), 0.0),
            Parity::Odd => Complex64::new(0.0, -2.0 * (TAU * self.y * x).sin()),
        };
        power * osc * self.phi0_hat(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::FormDescriptor;

    fn sym2_params() -> EmbeddingParams {
        FormDescriptor::sym2().embedding.unwrap()
    }

    #[test]
    fn zero_modulation_doubles_the_centered_bump() {
        let fam =
            build_test_function(0.0, Parity::Even, Parity::Even, &EmbeddingParams::trivial())
                .unwrap();
        assert!(!fam.degenerate());
        let pieces = fam.pieces(false);
        assert_eq!(pieces.len(), 1);
        assert!((pieces[0].coeff - Complex64::new(2.0, 0.0)).norm() < 1e-15);
        for x in [-0.8, -0.2, 0.0, 0.5, 0.97] {
            let want = 2.0 * bump_profile(Parity::Even, x);
            assert!((fam.phi(x) - Complex64::new(want, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn modulation_two_supports_the_shifted_intervals() {
        let fam =
            build_test_function(2.0, Parity::Even, Parity::Even, &EmbeddingParams::trivial())
                .unwrap();
        for x in [-0.99, -0.5, 0.0, 0.5, 0.99, 3.2, -3.2] {
            assert_eq!(fam.phi(x).norm(), 0.0, "x = {x} should be outside");
        }
        for x in [1.5, 2.0, 2.5, -1.5, -2.7] {
            assert!(fam.phi(x).norm() > 0.0, "x = {x} should be inside");
        }
    }

    #[test]
    fn degenerate_combination_vanishes_and_is_flagged() {
        let fam =
            build_test_function(0.0, Parity::Odd, Parity::Even, &EmbeddingParams::trivial())
                .unwrap();
        assert!(fam.degenerate());
        assert!(fam.pieces(false).is_empty());
        for x in [-1.3, 0.0, 0.4, 2.0] {
            assert_eq!(fam.phi(x).norm(), 0.0);
            assert_eq!(fam.f(x).norm(), 0.0);
        }
        let alive =
            build_test_function(0.0, Parity::Even, Parity::Odd, &EmbeddingParams::trivial())
                .unwrap();
        assert!(!alive.degenerate());
    }

    #[test]
    fn phi_carries_parity_eta_plus_delta3() {
        for params in [EmbeddingParams::trivial(), sym2_params()] {
            for eta in [Parity::Even, Parity::Odd] {
                for omega in [Parity::Even, Parity::Odd] {
                    let fam = build_test_function(1.3, omega, eta, &params).unwrap();
                    let sign = fam.phi_parity().sign();
                    for x in [0.5, 1.1, 1.9, 2.2] {
                        let diff = (fam.phi(-x) - sign * fam.phi(x)).norm();
                        assert!(diff < 1e-14, "{eta} {omega} x={x}: {diff}");
                    }
                }
            }
        }
    }

    #[test]
    fn f_carries_parity_eta_for_all_four_choices() {
        for params in [EmbeddingParams::trivial(), sym2_params()] {
            for eta in [Parity::Even, Parity::Odd] {
                for omega in [Parity::Even, Parity::Odd] {
                    let fam = build_test_function(1.3, omega, eta, &params).unwrap();
                    for x in [0.3, 0.9, 1.7, 4.1] {
                        let plus = fam.f(x);
                        let minus = fam.f(-x);
                        let diff = (minus - eta.sign() * plus).norm();
                        let scale = plus.norm().max(1e-30);
                        assert!(diff <= 1e-10 * scale, "{eta} {omega} x={x}: {diff:e}");
                    }
                }
            }
        }
    }

    #[test]
    fn rescaled_copy_agrees_with_substitution() {
        for params in [EmbeddingParams::trivial(), sym2_params()] {
            let fam = build_test_function(2.5, Parity::Odd, Parity::Even, &params).unwrap();
            for x in [0.61, 0.8, 1.0, 1.2, 1.39, -0.9] {
                let via_pieces = fam.phi1(x);
                let direct = fam.phi(fam.y * x);
                assert!((via_pieces - direct).norm() < 1e-13, "x = {x}");
            }
        }
    }

    #[test]
    fn derivative_variant_matches_a_finite_difference_of_the_plain_sum() {
        // With the odd third sign character, phi is 1/(2 pi i) times the
        // derivative of the plain two-bump combination.
        let params = sym2_params();
        assert_eq!(params.delta[2], Parity::Odd);
        let fam = build_test_function(1.5, Parity::Even, Parity::Even, &params).unwrap();
        let rho = fam.rho();
        let plain = |x: f64| {
            bump_profile(rho, x - 1.5) + fam.omega.sign() * bump_profile(rho, x + 1.5)
        };
        let h = 1e-5;
        for x in [0.8, 1.5, 2.3] {
            let fd = (plain(x + h) - plain(x - h)) / (2.0 * h);
            let want = Complex64::new(0.0, -fd / TAU);
            assert!((fam.phi(x) - want).norm() < 1e-8, "x = {x}");
        }
    }

    #[test]
    fn weight_combines_power_oscillation_and_transform() {
        let fam = build_test_function(1.3, Parity::Even, Parity::Odd, &sym2_params()).unwrap();
        // eta odd, omega even: profile parity odd, so the transform factor
        // is -i * sine table; exponent is lambda3 + 1 = 12.
        let x: f64 = 1.7;
        let want = x.powi(12)
            * Complex64::new(2.0 * (TAU * 1.3 * x).cos(), 0.0)
            * Complex64::new(0.0, -bump_hat_sine(x));
        assert!((fam.f(x) - want).norm() < 1e-10 * want.norm());
        assert_eq!(fam.f(0.0).norm(), 0.0);
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(build_test_function(-0.5, Parity::Even, Parity::Even, &sym2_params()).is_err());
        assert!(build_test_function(f64::NAN, Parity::Even, Parity::Even, &sym2_params()).is_err());
        let bad = EmbeddingParams {
            lambda: [Complex64::new(0.3, 0.0); 3],
            delta: [Parity::Even; 3],
        };
        assert!(build_test_function(1.0, Parity::Even, Parity::Even, &bad).is_err());
    }

    #[test]
    fn admissibility_tracks_the_source_embedding() {
        let fam = build_test_function(1.0, Parity::Even, Parity::Even, &sym2_params()).unwrap();
        assert!(fam.admissible_for(&sym2_params()));
        assert!(!fam.admissible_for(&EmbeddingParams::trivial()));
    }
}
