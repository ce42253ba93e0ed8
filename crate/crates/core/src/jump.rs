//! Slip discontinuities in the inviscid problem.
//!
//! A candidate weak solution has θ = 0 at an interior point σ, a θ²/2 profile
//! built from φ on each side, and constant swirl on each side. The jump
//! conditions fix the ratio k₊/k₋; the requirement θ² ≥ 0 on both pieces
//! fixes the signs of k₋ and k₊. Certification checks whether the two are
//! compatible at each σ of a grid.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::EulerClosedForm;
use crate::similarity::{phi, phi_prime};

/// Where the flow lives: ξ ≥ 0 or the cone ξ ≥ ξ₀.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Domain {
    HalfSpace,
    Conical { xi0: f64 },
}

impl Domain {
    pub fn xi0(&self) -> f64 {
        match *self {
            Domain::HalfSpace => 0.0,
            Domain::Conical { xi0 } => xi0,
        }
    }
}

fn check_sigma(sigma: f64, xi0: f64) -> Result<()> {
    if !sigma.is_finite() || !xi0.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "sigma and xi0 must be finite, got sigma = {sigma}, xi0 = {xi0}"
        )));
    }
    if sigma <= xi0 {
        return Err(Error::InvalidParameter(format!(
            "sigma must exceed xi0 (sigma = {sigma}, xi0 = {xi0})"
        )));
    }
    if xi0 * xi0 == sigma * sigma {
        return Err(Error::Singular(format!(
            "xi0^2 = sigma^2 at sigma = {sigma}: the inner-piece coefficient is undefined"
        )));
    }
    Ok(())
}

/// Quadratic coefficient of the inner piece, (φ(ξ₀) − φ(σ))/(ξ₀² − σ²).
pub fn inner_coefficient(sigma: f64, xi0: f64) -> Result<f64> {
    check_sigma(sigma, xi0)?;
    Ok((phi(xi0) - phi(sigma)) / ((xi0 - sigma) * (xi0 + sigma)))
}

/// J(ξ; σ) = φ(ξ) − φ(σ) − (φ(σ)/σ²)(ξ² − σ²).
pub fn sign_function_j(xi: f64, sigma: f64) -> Result<f64> {
    sign_function_j_con(xi, sigma, 0.0)
}

/// J_con(ξ; σ, ξ₀) = φ(ξ) − φ(σ) − c(ξ² − σ²) with c the inner coefficient.
pub fn sign_function_j_con(xi: f64, sigma: f64, xi0: f64) -> Result<f64> {
    let c = inner_coefficient(sigma, xi0)?;
    Ok(j_con_with(xi, sigma, c))
}

fn j_con_with(xi: f64, sigma: f64, c: f64) -> f64 {
    phi(xi) - phi(sigma) - c * (xi - sigma) * (xi + sigma)
}

/// F(ξ; σ) = (φ(ξ) − φ(σ))/(ξ² − σ²).
///
/// At ξ = σ the removable singularity is filled with φ′(σ)/(2σ). At ξ = −σ
/// (σ ≠ 0) F has a genuine pole and an error is returned.
pub fn sign_function_f(xi: f64, sigma: f64) -> Result<f64> {
    if xi == sigma {
        if sigma == 0.0 {
            return Err(Error::Singular("F(0; 0) is a pole".into()));
        }
        return Ok(phi_prime(sigma) / (2.0 * sigma));
    }
    if xi == -sigma {
        return Err(Error::Singular(format!("F has a pole at xi = -sigma = {xi}")));
    }
    Ok((phi(xi) - phi(sigma)) / ((xi - sigma) * (xi + sigma)))
}

/// k₊/k₋ demanded by the jump conditions, with its sign.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JumpRatio {
    pub value: f64,
}

impl JumpRatio {
    pub fn is_negative(&self) -> bool {
        self.value < 0.0
    }

    pub fn sign(&self) -> i8 {
        sign_of(self.value)
    }
}

fn sign_of(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// 1 − 2φ(σ)/(σφ′(σ)).
pub fn jump_ratio_half_space(sigma: f64) -> Result<JumpRatio> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
    }
    Ok(JumpRatio {
        value: 1.0 - 2.0 * phi(sigma) / (sigma * phi_prime(sigma)),
    })
}

/// 1 − 2cσ/φ′(σ) with c = (φ(ξ₀) − φ(σ))/(ξ₀² − σ²).
pub fn jump_ratio_conical(sigma: f64, xi0: f64) -> Result<JumpRatio> {
    let c = inner_coefficient(sigma, xi0)?;
    Ok(JumpRatio {
        value: 1.0 - 2.0 * c * sigma / phi_prime(sigma),
    })
}

/// One-sided limits at a candidate discontinuity.
///
/// `theta_theta_prime` is (θ²/2)′, which stays finite where θ vanishes like a
/// square root even though θ′ itself does not.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OneSidedState {
    pub theta: f64,
    pub theta_theta_prime: f64,
    pub v: f64,
    pub p: f64,
}

impl OneSidedState {
    /// Builds the state from θ and a finite θ′.
    pub fn from_derivative(theta: f64, theta_prime: f64, v: f64, p: f64) -> Self {
        Self {
            theta,
            theta_theta_prime: theta * theta_prime,
            v,
            p,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JumpBrackets {
    /// [P]
    pub pressure: f64,
    /// [θV]
    pub theta_v: f64,
    /// [θ² − ξθθ′]
    pub bernoulli: f64,
    /// [θ]
    pub theta: f64,
}

impl JumpBrackets {
    pub fn max_abs(&self) -> f64 {
        self.pressure
            .abs()
            .max(self.theta_v.abs())
            .max(self.bernoulli.abs())
            .max(self.theta.abs())
    }
}

/// Right minus left for each conserved combination at ξ = σ.
pub fn jump_brackets(left: &OneSidedState, right: &OneSidedState, sigma: f64) -> JumpBrackets {
    let b = |s: &OneSidedState| s.theta * s.theta - sigma * s.theta_theta_prime;
    JumpBrackets {
        pressure: right.p - left.p,
        theta_v: right.theta * right.v - left.theta * left.v,
        bernoulli: b(right) - b(left),
        theta: right.theta - left.theta,
    }
}

/// Two-piece ansatz with θ(σ) = 0 and piecewise-constant swirl.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PiecewiseEulerSolution {
    pub sigma: f64,
    pub k_minus: f64,
    pub k_plus: f64,
    pub v_minus: f64,
    pub v_plus: f64,
    pub xi0: f64,
    coefficient: f64,
}

impl PiecewiseEulerSolution {
    pub fn new(
        sigma: f64,
        k_minus: f64,
        k_plus: f64,
        v_minus: f64,
        v_plus: f64,
        xi0: f64,
    ) -> Result<Self> {
        let coefficient = inner_coefficient(sigma, xi0)?;
        Ok(Self {
            sigma,
            k_minus,
            k_plus,
            v_minus,
            v_plus,
            xi0,
            coefficient,
        })
    }

    /// θ²/2 on the piece containing ξ (the inner piece for ξ < σ).
    pub fn half_theta_sq(&self, xi: f64) -> f64 {
        if xi < self.sigma {
            self.k_minus * j_con_with(xi, self.sigma, self.coefficient)
        } else {
            self.k_plus * (phi(xi) - phi(self.sigma))
        }
    }

    pub fn v(&self, xi: f64) -> f64 {
        if xi < self.sigma {
            self.v_minus
        } else {
            self.v_plus
        }
    }

    /// True when θ² ≥ 0 at every `xi` supplied.
    pub fn is_real_on(&self, xi: &[f64]) -> bool {
        xi.iter().all(|&x| self.half_theta_sq(x) >= 0.0)
    }

    /// One-sided states at σ, with a common pressure `p_sigma`.
    pub fn one_sided_states(&self, p_sigma: f64) -> (OneSidedState, OneSidedState) {
        let s = self.sigma;
        let left = OneSidedState {
            theta: 0.0,
            theta_theta_prime: self.k_minus * (phi_prime(s) - 2.0 * self.coefficient * s),
            v: self.v_minus,
            p: p_sigma,
        };
        let right = OneSidedState {
            theta: 0.0,
            theta_theta_prime: self.k_plus * phi_prime(s),
            v: self.v_plus,
            p: p_sigma,
        };
        (left, right)
    }
}

impl EulerClosedForm {
    /// Limit of the continuous solution at ξ (identical from both sides).
    pub fn state_at(&self, xi: f64) -> OneSidedState {
        OneSidedState {
            theta: self.theta(xi),
            theta_theta_prime: self.theta_theta_prime(xi),
            v: self.v0,
            p: self.pressure(xi),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Contradiction,
    Admissible,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContradictionType {
    /// The ratio is negative but θ² ≥ 0 on the inner piece forces k₋ > 0.
    RatioNegativeKMinusPositive,
    /// The ratio is positive but θ² ≥ 0 on the inner piece forces k₋ < 0.
    RatioPositiveKMinusNegative,
    /// The ratio vanishes, so k₊ = 0 and the outer piece is trivial.
    RatioZero,
    /// φ(ξ) − φ(σ) changes sign beyond σ, so k₊ has no consistent sign.
    OuterPieceSignChange,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JumpReport {
    pub sigma: f64,
    pub ratio: f64,
    pub ratio_sign: i8,
    /// Sign of k₋ forced by θ² ≥ 0 on the inner piece; 0 when the sampled
    /// sign function is not of one sign.
    pub k_minus_forced_sign: i8,
    pub k_plus_positive: bool,
    /// Brackets of the ansatz with k₋ = forced sign and k₊ = ratio·k₋.
    pub brackets: JumpBrackets,
    pub admissible: bool,
    pub verdict: Verdict,
    pub contradiction_type: Option<ContradictionType>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertifyOptions {
    /// Interior samples of the sign function per σ.
    pub samples: usize,
    /// Absolute tolerance for a vanishing bracket.
    pub bracket_tol: f64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            samples: 512,
            bracket_tol: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificationSummary {
    pub n_tested: usize,
    pub n_admissible: usize,
    pub n_inconclusive: usize,
    pub n_ratio_negative_k_minus_positive: usize,
    pub n_ratio_positive_k_minus_negative: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certification {
    pub domain: Domain,
    pub samples_per_sigma: usize,
    pub bracket_tol: f64,
    pub records: Vec<JumpReport>,
    pub summary: CertificationSummary,
}

impl Certification {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// True when no σ was admissible or inconclusive.
    pub fn is_clean(&self) -> bool {
        self.summary.n_admissible == 0 && self.summary.n_inconclusive == 0
    }
}

fn sampled_sign<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, samples: usize) -> i8 {
    let mut sign = 0i8;
    for j in 1..=samples {
        let t = j as f64 / (samples + 1) as f64;
        let s = sign_of(f(lo + (hi - lo) * t));
        if s == 0 || (sign != 0 && s != sign) {
            return 0;
        }
        sign = s;
    }
    sign
}

// φ(ξ) − φ(σ) > 0 beyond σ, sampled on a geometric ladder out to 1e6·(1+|σ|).
fn outer_positive(sigma: f64, samples: usize) -> bool {
    let span = 1e6 * (1.0 + sigma.abs());
    let ratio = (1.0 + span).ln();
    (1..=samples).all(|j| {
        let t = (ratio * j as f64 / samples as f64).exp() - 1.0;
        phi(sigma + t) - phi(sigma) > 0.0
    })
}

/// Jump analysis at a single σ.
pub fn analyse_sigma(domain: Domain, sigma: f64, opts: &CertifyOptions) -> Result<JumpReport> {
    let xi0 = domain.xi0();
    let ratio = match domain {
        Domain::HalfSpace => jump_ratio_half_space(sigma)?,
        Domain::Conical { xi0 } => jump_ratio_conical(sigma, xi0)?,
    };
    let c = inner_coefficient(sigma, xi0)?;
    let forced = sampled_sign(|xi| j_con_with(xi, sigma, c), xi0, sigma, opts.samples.max(1));
    let k_plus_positive = outer_positive(sigma, opts.samples.max(1));

    let k_minus = forced as f64;
    let ansatz = PiecewiseEulerSolution::new(sigma, k_minus, ratio.value * k_minus, 0.0, 0.0, xi0)?;
    let (l, r) = ansatz.one_sided_states(0.0);
    let brackets = jump_brackets(&l, &r, sigma);

    let (verdict, contradiction_type) = if forced == 0 {
        (Verdict::Inconclusive, None)
    } else if !k_plus_positive {
        (Verdict::Contradiction, Some(ContradictionType::OuterPieceSignChange))
    } else if ratio.value == 0.0 {
        (Verdict::Contradiction, Some(ContradictionType::RatioZero))
    } else if ratio.sign() == forced && brackets.max_abs() < opts.bracket_tol {
        (Verdict::Admissible, None)
    } else if ratio.is_negative() {
        (Verdict::Contradiction, Some(ContradictionType::RatioNegativeKMinusPositive))
    } else {
        (Verdict::Contradiction, Some(ContradictionType::RatioPositiveKMinusNegative))
    };
    Ok(JumpReport {
        sigma,
        ratio: ratio.value,
        ratio_sign: ratio.sign(),
        k_minus_forced_sign: forced,
        k_plus_positive,
        brackets,
        admissible: verdict == Verdict::Admissible,
        verdict,
        contradiction_type,
    })
}

/// Runs [`analyse_sigma`] over a σ-grid (in parallel) and tallies verdicts.
/// Records come back sorted by σ.
pub fn certify_nonexistence(
    domain: Domain,
    sigma_grid: &[f64],
    opts: &CertifyOptions,
) -> Result<Certification> {
    let mut records = sigma_grid
        .par_iter()
        .map(|&s| analyse_sigma(domain, s, opts))
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(|a, b| a.sigma.total_cmp(&b.sigma));
    let count = |pred: &dyn Fn(&JumpReport) -> bool| records.iter().filter(|r| pred(r)).count();
    let summary = CertificationSummary {
        n_tested: records.len(),
        n_admissible: count(&|r| r.verdict == Verdict::Admissible),
        n_inconclusive: count(&|r| r.verdict == Verdict::Inconclusive),
        n_ratio_negative_k_minus_positive: count(&|r| {
            r.contradiction_type == Some(ContradictionType::RatioNegativeKMinusPositive)
        }),
        n_ratio_positive_k_minus_negative: count(&|r| {
            r.contradiction_type == Some(ContradictionType::RatioPositiveKMinusNegative)
        }),
    };
    Ok(Certification {
        domain,
        samples_per_sigma: opts.samples,
        bracket_tol: opts.bracket_tol,
        records,
        summary,
    })
}

#[cfg(test)]
#[allow(clippy::approx_constant, clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::euler::EulerFamily;
    use crate::similarity::{Branch, FlowParameters};

    #[test]
    fn ansatz_examples() {
        let a = PiecewiseEulerSolution::new(1.0, 1.0, 2.0, 0.0, 0.0, 0.0).unwrap();
        assert!((a.half_theta_sq(0.5) - 0.205_463_603_781_673_66).abs() < 5e-9);
        assert_eq!(a.half_theta_sq(1.0), 0.0);
        assert!((a.half_theta_sq(2.0) - 0.115_844_785_252_968_69).abs() < 5e-9);
        assert!(PiecewiseEulerSolution::new(0.5, 1.0, 1.0, 0.0, 0.0, 0.5).is_err());
        assert!(PiecewiseEulerSolution::new(2.0, 1.0, 1.0, 0.0, 0.0, -2.0).is_err());
        // inner piece at sigma is zero from the left as well
        assert!(a.half_theta_sq(1.0 - 1e-12).abs() < 1e-12);
    }

    #[test]
    fn ratio_examples() {
        assert!((jump_ratio_half_space(1.0).unwrap().value + 5.82842712).abs() < 1e-8);
        assert!((jump_ratio_half_space(2.0).unwrap().value + 17.94427191).abs() < 1e-8);
        assert!((jump_ratio_half_space(1e-6).unwrap().value + 1.0).abs() < 1e-5);
        assert!(jump_ratio_half_space(0.0).is_err());
        // 40-digit reference: 49.831324061239219465...
        assert!((jump_ratio_conical(1.0, -2.0).unwrap().value - 49.831_324_061_239_22).abs() < 1e-7);
        assert!(jump_ratio_conical(1.0, 0.5).unwrap().is_negative());
        assert!(jump_ratio_conical(2.0, -2.0).is_err());
        for &s in &[0.01, 0.3, 1.0, 7.0, 900.0] {
            let a = jump_ratio_half_space(s).unwrap().value;
            let b = jump_ratio_conical(s, 0.0).unwrap().value;
            assert!((a - b).abs() <= 1e-12 * a.abs());
        }
    }

    #[test]
    fn sign_function_examples() {
        assert_eq!(sign_function_j(0.0, 1.3).unwrap(), 0.0);
        assert!(sign_function_j(1.3, 1.3).unwrap().abs() < 1e-16);
        assert!((sign_function_j(0.5, 1.0).unwrap() - 0.205_463_603_781_673_66).abs() < 5e-9);
        assert!((sign_function_j_con(0.0, 1.0, -2.0).unwrap() + 3.376_330_068_163_986_5).abs() < 1e-8);
        let f1 = sign_function_f(0.5, 1.0).unwrap();
        let f2 = sign_function_f(2.0, 1.0).unwrap();
        assert!((f1 - 0.140_262_090_664_196_83).abs() < 5e-9);
        assert!((f2 - 0.019_307_464_208_828_115).abs() < 5e-9);
        assert!(f1 > f2);
        assert!(sign_function_f(-1.0, 1.0).is_err());
        let lim = sign_function_f(1.0, 1.0).unwrap();
        let near = sign_function_f(1.0 + 1e-7, 1.0).unwrap();
        assert!((lim - near).abs() < 1e-7);
    }

    #[test]
    fn bracket_examples() {
        let f = EulerClosedForm::new(&FlowParameters::inviscid(1.0, 1.0, Branch::Positive), EulerFamily::HalfSpace)
            .unwrap();
        let s = f.state_at(1.0);
        assert_eq!(jump_brackets(&s, &s, 1.0).max_abs(), 0.0);

        let l = OneSidedState::from_derivative(0.0, 0.0, 1.0, 0.0);
        let r = OneSidedState::from_derivative(0.0, 0.0, 5.0, 0.0);
        assert_eq!(jump_brackets(&l, &r, 1.0).theta_v, 0.0);

        let l = OneSidedState::from_derivative(0.0, 1.0, 0.0, 0.0);
        let r = OneSidedState::from_derivative(0.0, 3.0, 0.0, 0.0);
        assert_eq!(jump_brackets(&l, &r, 1.0).bernoulli, 0.0);
    }

    #[test]
    fn ratio_makes_third_bracket_vanish() {
        for &(s, xi0) in &[(1.0, 0.0), (0.4, -2.0), (3.0, 0.5)] {
            let r = jump_ratio_conical(s, xi0).unwrap().value;
            let a = PiecewiseEulerSolution::new(s, 1.0, r, 1.0, 2.0, xi0).unwrap();
            let (l, rt) = a.one_sided_states(0.3);
            assert!(jump_brackets(&l, &rt, s).max_abs() < 1e-12);
            let wrong = PiecewiseEulerSolution::new(s, 1.0, r + 1.0, 1.0, 2.0, xi0).unwrap();
            let (l, rt) = wrong.one_sided_states(0.3);
            assert!(jump_brackets(&l, &rt, s).bernoulli.abs() > 1e-6);
        }
    }

    #[test]
    fn certification_half_space_and_reduction() {
        let grid: Vec<f64> = (0..200).map(|i| 0.01 + 0.25 * i as f64).collect();
        let opts = CertifyOptions::default();
        let h = certify_nonexistence(Domain::HalfSpace, &grid, &opts).unwrap();
        assert!(h.is_clean());
        assert_eq!(h.summary.n_ratio_negative_k_minus_positive, 200);
        let c = certify_nonexistence(Domain::Conical { xi0: 0.0 }, &grid, &opts).unwrap();
        let pattern = |c: &Certification| {
            c.records
                .iter()
                .map(|r| (r.verdict, r.contradiction_type, r.k_minus_forced_sign, r.ratio_sign))
                .collect::<Vec<_>>()
        };
        assert_eq!(pattern(&h), pattern(&c));
    }

    #[test]
    fn certification_rejects_bad_sigma() {
        let opts = CertifyOptions::default();
        assert!(certify_nonexistence(Domain::Conical { xi0: -2.0 }, &[1.0, 2.0], &opts).is_err());
        assert!(certify_nonexistence(Domain::HalfSpace, &[0.0], &opts).is_err());
    }

    #[test]
    fn report_json_shape() {
        let c = certify_nonexistence(Domain::Conical { xi0: -2.0 }, &[1.0], &CertifyOptions::default()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&c.to_json().unwrap()).unwrap();
        let rec = &v["records"][0];
        for key in ["sigma", "ratio", "ratio_sign", "k_minus_forced_sign", "verdict", "contradiction_type"] {
            assert!(rec.get(key).is_some(), "{key}");
        }
        assert_eq!(rec["contradiction_type"], "ratio_positive_k_minus_negative");
        assert_eq!(v["summary"]["n_tested"], 1);
        assert_eq!(v["domain"]["kind"], "conical");
    }
}
