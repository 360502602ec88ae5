//! Closed-form results for two atoms (j = 1), used as an oracle for the
//! numerical stack.
//!
//! The variance and mean-spin formulas are kept as tables of integer
//! polynomial coefficients in ξ multiplying fixed trigonometric factors of
//! 4η and 8η, in the order they are usually printed.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Amplitudes of |1,+1⟩, |1,0⟩, |1,−1⟩ after squeezing a coherent state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoAtomCoefficients {
    pub c1: Complex64,
    pub c2: Complex64,
    pub c3: Complex64,
}

impl TwoAtomCoefficients {
    pub fn as_array(&self) -> [Complex64; 3] {
        [self.c1, self.c2, self.c3]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c1.norm_sqr() + self.c2.norm_sqr() + self.c3.norm_sqr()
    }
}

/// C₁ = [cos 2|η| + e^{i arg η} ξ² sin 2|η|]/(1+|ξ|²), C₂ = √2 ξ/(1+|ξ|²),
/// C₃ = [ξ² cos 2|η| − e^{−i arg η} sin 2|η|]/(1+|ξ|²).
pub fn analytic_coefficients(xi: Complex64, eta: Complex64) -> TwoAtomCoefficients {
    let magnitude = eta.norm();
    // at η = 0 the phase multiplies sin 0 = 0
    let phase = if magnitude == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        eta / magnitude
    };
    let (s, c) = (2.0 * magnitude).sin_cos();
    let xi2 = xi * xi;
    let denom = 1.0 + xi.norm_sqr();
    TwoAtomCoefficients {
        c1: (phase * xi2 * s + c) / denom,
        c2: xi * (2f64.sqrt() / denom),
        c3: (xi2 * c - phase.conj() * s) / denom,
    }
}

/// Trigonometric factor multiplying one polynomial in ξ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Trig {
    One,
    Cos4,
    Cos4Sq,
    Cos4Cube,
    Sin4,
    Sin4Sq,
    Sin4Cube,
    Sin8,
}

impl Trig {
    fn eval(self, eta: f64) -> f64 {
        let (s4, c4) = (4.0 * eta).sin_cos();
        match self {
            Trig::One => 1.0,
            Trig::Cos4 => c4,
            Trig::Cos4Sq => c4 * c4,
            Trig::Cos4Cube => c4 * c4 * c4,
            Trig::Sin4 => s4,
            Trig::Sin4Sq => s4 * s4,
            Trig::Sin4Cube => s4 * s4 * s4,
            Trig::Sin8 => (8.0 * eta).sin(),
        }
    }
}

/// (Σ_k coeffs[k] ξ^k) / divisor × trig(η).
#[derive(Clone, Copy, Debug)]
pub(crate) struct Term {
    pub coeffs: &'static [i64],
    pub divisor: i64,
    pub trig: Trig,
}

impl Term {
    const fn new(coeffs: &'static [i64], trig: Trig) -> Self {
        Self {
            coeffs,
            divisor: 1,
            trig,
        }
    }

    const fn halved(coeffs: &'static [i64], trig: Trig) -> Self {
        Self {
            coeffs,
            divisor: 2,
            trig,
        }
    }

    fn eval(&self, xi: f64, eta: f64) -> f64 {
        let poly = self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * xi + c as f64);
        poly / self.divisor as f64 * self.trig.eval(eta)
    }
}

fn sum_terms(terms: &[Term], xi: f64, eta: f64) -> f64 {
    terms.iter().map(|t| t.eval(xi, eta)).sum()
}

/// |⟨J⟩|² × (1+ξ²)⁴.
pub(crate) const MEAN_SPIN_SQ_TERMS: &[Term] = &[
    // 4ξ²{1 + ξ⁴ + 2ξ² cos4η − (1 − ξ⁴) sin4η}
    Term::new(&[0, 0, 4, 0, 0, 0, 4], Trig::One),
    Term::new(&[0, 0, 0, 0, 8], Trig::Cos4),
    Term::new(&[0, 0, -4, 0, 0, 0, 4], Trig::Sin4),
    // (1 − ξ⁴)² cos²4η
    Term::new(&[1, 0, 0, 0, -2, 0, 0, 0, 1], Trig::Cos4Sq),
    // 4ξ⁴ sin²4η
    Term::new(&[0, 0, 0, 0, 4], Trig::Sin4Sq),
    // −2ξ²(ξ⁴ − 1) sin8η
    Term::new(&[0, 0, 2, 0, 0, 0, -2], Trig::Sin8),
];

/// First brace of (ΔJ_x′)² |⟨J⟩|², over 2(1+ξ²)⁴.
pub(crate) const VAR_X_TERMS_A: &[Term] = &[
    // (ξ⁸ − 2ξ⁴ + 1) cos²4η
    Term::new(&[1, 0, 0, 0, -2, 0, 0, 0, 1], Trig::Cos4Sq),
    // −2ξ²(ξ⁴ − 1) sin8η
    Term::new(&[0, 0, 2, 0, 0, 0, -2], Trig::Sin8),
    // 4ξ⁴ sin²4η
    Term::new(&[0, 0, 0, 0, 4], Trig::Sin4Sq),
];

/// Second brace of (ΔJ_x′)² |⟨J⟩|², over (1+ξ²)⁶.
pub(crate) const VAR_X_TERMS_B: &[Term] = &[
    // (3ξ¹⁰ − 10ξ⁶ + 3ξ²) cos³4η
    Term::new(&[0, 0, 3, 0, 0, 0, -10, 0, 0, 0, 3], Trig::Cos4Cube),
    // −3(ξ¹⁰ − 2ξ⁶ + ξ²) cos²4η
    Term::new(&[0, 0, -3, 0, 0, 0, 6, 0, 0, 0, -3], Trig::Cos4Sq),
    // −2(ξ¹⁰ − 4ξ⁸ − 4ξ⁶ − 4ξ⁴ + ξ²) cos4η
    Term::new(&[0, 0, -2, 0, 8, 0, 8, 0, 8, 0, -2], Trig::Cos4),
    // −½(ξ¹² − 15ξ⁸ + 15ξ⁴ − 1) sin³4η
    Term::halved(&[1, 0, 0, 0, -15, 0, 0, 0, 15, 0, 0, 0, -1], Trig::Sin4Cube),
    // −12ξ⁶ sin²4η
    Term::new(&[0, 0, 0, 0, 0, 0, -12], Trig::Sin4Sq),
    // ½(ξ¹² + 8ξ¹⁰ − 11ξ⁸ + 11ξ⁴ − 8ξ² − 1) sin4η
    Term::halved(&[-1, 0, -8, 0, 11, 0, 0, 0, -11, 0, 8, 0, 1], Trig::Sin4),
    // 6ξ⁴(ξ⁴ − 1) sin8η
    Term::new(&[0, 0, 0, 0, -6, 0, 0, 0, 6], Trig::Sin8),
    // 4ξ¹⁰ + 8ξ⁶ + 4ξ²
    Term::new(&[0, 0, 4, 0, 0, 0, 8, 0, 0, 0, 4], Trig::One),
];

/// (2(ΔJ_y′)² − 1)(1+ξ²)².
pub(crate) const VAR_Y_TERMS: &[Term] = &[
    // 2ξ²(1 − cos4η)
    Term::new(&[0, 0, 2], Trig::One),
    Term::new(&[0, 0, -2], Trig::Cos4),
    // (1 − ξ⁴) sin4η
    Term::new(&[1, 0, 0, 0, -1], Trig::Sin4),
];

/// Closed-form quadrature variances and squared mean spin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalyticVariances {
    pub var_x: f64,
    pub var_y: f64,
    pub mean_spin_sq: f64,
}

/// Smallest |cos 4η| for which the closed forms are evaluated.
pub const POLE_TOLERANCE: f64 = 1e-8;

/// Variances for real ξ ≥ 0 and real η, in the spherical mean-spin frame.
pub fn analytic_variances(xi: f64, eta: f64) -> Result<AnalyticVariances> {
    if !xi.is_finite() || xi < 0.0 || !eta.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "closed forms need finite real xi >= 0 and real eta (xi = {xi}, eta = {eta})"
        )));
    }
    let cos4eta = (4.0 * eta).cos();
    if cos4eta.abs() < POLE_TOLERANCE {
        return Err(Error::PoleAtVanishingMeanSpin { cos4eta });
    }
    let n = 1.0 + xi * xi;
    let mean_spin_sq = sum_terms(MEAN_SPIN_SQ_TERMS, xi, eta) / n.powi(4);
    let bracket =
        sum_terms(VAR_X_TERMS_A, xi, eta) / (2.0 * n.powi(4)) + sum_terms(VAR_X_TERMS_B, xi, eta) / n.powi(6);
    let var_x = bracket / mean_spin_sq;
    let var_y = 0.5 * (1.0 + sum_terms(VAR_Y_TERMS, xi, eta) / (n * n));
    Ok(AnalyticVariances {
        var_x,
        var_y,
        mean_spin_sq,
    })
}

/// The θ = 0 squeezing pair (S_a, S_b) = (√((1+sin4η)/cos4η), √((1−sin4η)/cos4η)).
///
/// Which of the two is S_x′ depends on labelling: in the spherical frame
/// S_x′ = S_b at θ = 0, and θ = π swaps the two. Callers should compare as
/// an unordered pair.
pub fn analytic_s_theta0_pi(eta: f64) -> Result<(f64, f64)> {
    if !eta.is_finite() {
        return Err(Error::InvalidParameter("eta must be finite".into()));
    }
    let (s4, c4) = (4.0 * eta).sin_cos();
    if c4 <= POLE_TOLERANCE {
        return Err(Error::PoleAtVanishingMeanSpin { cos4eta: c4 });
    }
    Ok((((1.0 + s4) / c4).sqrt(), ((1.0 - s4) / c4).sqrt()))
}
