//! The q-deformed hyperbolic modified Pöschl-Teller potential family
//! V(r) = −D/cosh²_q(αr) and its special cases.
//!
//! The coordinate lives on the full line r ∈ (−∞, ∞): the closed-form
//! normalization integral and the q-shift identity
//! V(D, q, α; r) = V(D/q, 1, α; r − ln(q)/(2α)) are only consistent there.
//! For q ≥ 1 the well bottoms out at r₀ = ln(q)/(2α) with depth −D/q.

use crate::special::{
    deformed_hyperbolic_complex, sech_q_sq_raw, ComplexDeformedArg, DeformedKind, SpecialError,
};
use num_complex::Complex64;
use thiserror::Error;

/// A parameter invariant was violated; the failed predicate is spelled out.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("parameter invariant violated: {predicate} (got {value})")]
pub struct ParamError {
    pub predicate: &'static str,
    pub value: f64,
}

pub(crate) fn require(ok: bool, predicate: &'static str, value: f64) -> Result<(), ParamError> {
    if ok {
        Ok(())
    } else {
        Err(ParamError { predicate, value })
    }
}

/// Physical inputs defining one real-family potential problem.
///
/// Natural units ℏ = c = 1 are the default; both constants stay explicit so
/// dimensional checks remain possible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Rest mass μ (energy/c²).
    pub mu: f64,
    /// Inverse length scale α of the well.
    pub alpha: f64,
    /// Well depth D (energy), ≥ 0 for the real bound-state branch.
    pub d: f64,
    /// Real deformation parameter q > 0.
    pub q: f64,
    /// Action constant ℏ.
    pub hbar: f64,
    /// Speed constant c.
    pub c: f64,
}

impl ModelParams {
    /// Natural-unit constructor (ℏ = c = 1).
    pub fn new(mu: f64, alpha: f64, d: f64, q: f64) -> Result<ModelParams, ParamError> {
        ModelParams::with_constants(mu, alpha, d, q, 1.0, 1.0)
    }

    pub fn with_constants(
        mu: f64,
        alpha: f64,
        d: f64,
        q: f64,
        hbar: f64,
        c: f64,
    ) -> Result<ModelParams, ParamError> {
        require(mu.is_finite() && mu > 0.0, "mu > 0", mu)?;
        require(alpha.is_finite() && alpha > 0.0, "alpha > 0", alpha)?;
        require(d.is_finite() && d >= 0.0, "D >= 0", d)?;
        require(q.is_finite() && q > 0.0, "q > 0", q)?;
        require(hbar.is_finite() && hbar > 0.0, "hbar > 0", hbar)?;
        require(c.is_finite() && c > 0.0, "c > 0", c)?;
        Ok(ModelParams {
            mu,
            alpha,
            d,
            q,
            hbar,
            c,
        })
    }

    /// Rest energy μc².
    pub fn mu_c2(&self) -> f64 {
        self.mu * self.c * self.c
    }

    /// ℏ²c², the conversion between curvature and energy² in the radial equation.
    pub(crate) fn hbar2_c2(&self) -> f64 {
        self.hbar * self.hbar * self.c * self.c
    }
}

/// PT-symmetric parameter record: V(r) = D·q_c·csch²_{q_c}(αr) with
/// q_c = e^{2iαε}, D > 0, |ε| > π/4.
///
/// The spectrum is real: the complex deformation cancels out of the
/// quantization condition (k depends on D and q_c only through D), so the
/// levels coincide with the real family at the same D and q = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtParams {
    pub mu: f64,
    pub alpha: f64,
    pub d: f64,
    /// Deformation phase ε with |ε| > π/4.
    pub epsilon: f64,
    pub hbar: f64,
    pub c: f64,
}

impl PtParams {
    pub fn new(mu: f64, alpha: f64, d: f64, epsilon: f64) -> Result<PtParams, ParamError> {
        require(mu.is_finite() && mu > 0.0, "mu > 0", mu)?;
        require(alpha.is_finite() && alpha > 0.0, "alpha > 0", alpha)?;
        require(d.is_finite() && d > 0.0, "D > 0", d)?;
        require(
            epsilon.is_finite() && epsilon.abs() > std::f64::consts::FRAC_PI_4,
            "|epsilon| > pi/4",
            epsilon,
        )?;
        Ok(PtParams {
            mu,
            alpha,
            d,
            epsilon,
            hbar: 1.0,
            c: 1.0,
        })
    }

    /// The complex deformation q_c = e^{2iαε}.
    pub fn q_c(&self) -> Complex64 {
        let phase = 2.0 * self.alpha * self.epsilon;
        Complex64::new(phase.cos(), phase.sin())
    }

    /// The real-family parameters sharing this potential's spectrum (q = 1).
    pub fn spectral_twin(&self) -> ModelParams {
        ModelParams {
            mu: self.mu,
            alpha: self.alpha,
            d: self.d,
            q: 1.0,
            hbar: self.hbar,
            c: self.c,
        }
    }

    pub fn mu_c2(&self) -> f64 {
        self.mu * self.c * self.c
    }
}

/// The four special cases the potential family degenerates to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpecialCase {
    /// Reflectionless-type well: q = 1, α = 1, D = ½λ(λ+1) with integer λ ≥ 1.
    Reflectionless { lambda: u32 },
    /// q-deformed symmetric well: α = 1, D = λ² − ¼, deformation q free.
    QSymmetric { lambda: f64, q: f64 },
    /// Symmetric well: q = 1, α = 1, D = λ² − ¼.
    Symmetric { lambda: f64 },
    /// PT-symmetric complex deformation q_c = e^{2iαε}.
    PtSymmetric { d: f64, alpha: f64, epsilon: f64 },
}

/// Parameters resolved from a [SpecialCase]: the first three variants are
/// ordinary real-family problems; the PT variant carries its own record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ResolvedCase {
    Real(ModelParams),
    Pt(PtParams),
}

/// Resolve a special case to concrete parameters (μ = ℏ = c = 1; callers that
/// need another rest mass can override the field afterwards).
pub fn from_special_case(case: &SpecialCase) -> Result<ResolvedCase, ParamError> {
    match *case {
        SpecialCase::Reflectionless { lambda } => {
            require(lambda >= 1, "lambda >= 1 (integer)", f64::from(lambda))?;
            let lam = f64::from(lambda);
            let d = 0.5 * lam * (lam + 1.0);
            Ok(ResolvedCase::Real(ModelParams::new(1.0, 1.0, d, 1.0)?))
        }
        SpecialCase::QSymmetric { lambda, q } => {
            require(
                lambda.is_finite() && lambda * lambda > 0.25,
                "lambda^2 > 1/4",
                lambda,
            )?;
            Ok(ResolvedCase::Real(ModelParams::new(
                1.0,
                1.0,
                lambda * lambda - 0.25,
                q,
            )?))
        }
        SpecialCase::Symmetric { lambda } => {
            require(
                lambda.is_finite() && lambda * lambda > 0.25,
                "lambda^2 > 1/4",
                lambda,
            )?;
            Ok(ResolvedCase::Real(ModelParams::new(
                1.0,
                1.0,
                lambda * lambda - 0.25,
                1.0,
            )?))
        }
        SpecialCase::PtSymmetric { d, alpha, epsilon } => {
            Ok(ResolvedCase::Pt(PtParams::new(1.0, alpha, d, epsilon)?))
        }
    }
}

/// V(r) = −D/cosh²_q(αr). Strictly negative for D > 0 and vanishing as |r| → ∞.
pub fn potential_value(params: &ModelParams, r: f64) -> f64 {
    -params.d * sech_q_sq_raw(params.alpha * r, params.q)
}

/// The PT-symmetric potential V(r) = D·q_c·csch²_{q_c}(αr).
///
/// Fails at the csch pole (possible when q_c approaches the positive real
/// axis, i.e. αε near a multiple of π).
pub fn pt_potential_value(params: &PtParams, r: f64) -> Result<Complex64, SpecialError> {
    let arg = ComplexDeformedArg::new(params.alpha * r, params.q_c())?;
    let csch = deformed_hyperbolic_complex(DeformedKind::Csch, arg)?;
    Ok(params.d * params.q_c() * csch * csch)
}

/// The stationary point of cosh_q: r₀ = ln(q)/(2α), where V = −D/q.
///
/// This is the global minimum over the full line. (For scans restricted to
/// r ≥ 0 with q < 1 the half-line minimum sits at r = 0 instead, with value
/// −4D/(1+q)².)
pub fn potential_minimum(params: &ModelParams) -> (f64, f64) {
    let r0 = params.q.ln() / (2.0 * params.alpha);
    (r0, -params.d / params.q)
}

/// One sampled point of a potential curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSample {
    pub r: f64,
    pub v: f64,
}

/// One deformation's curve in a scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanCurve {
    pub q: f64,
    pub samples: Vec<PotentialSample>,
}

/// Tabulate V on a uniform r-grid for each deformation in `q_list`.
pub fn potential_scan(
    q_list: &[f64],
    d: f64,
    alpha: f64,
    r_min: f64,
    r_max: f64,
    n_points: usize,
) -> Result<Vec<ScanCurve>, ParamError> {
    require(d.is_finite() && d >= 0.0, "D >= 0", d)?;
    require(alpha.is_finite() && alpha > 0.0, "alpha > 0", alpha)?;
    require(
        r_min.is_finite() && r_max.is_finite() && r_min < r_max,
        "r_min < r_max",
        r_min,
    )?;
    require(n_points >= 2, "n_points >= 2", n_points as f64)?;
    let step = (r_max - r_min) / (n_points - 1) as f64;
    q_list
        .iter()
        .map(|&q| {
            require(q.is_finite() && q > 0.0, "q > 0", q)?;
            let samples = (0..n_points)
                .map(|i| {
                    let r = r_min + step * i as f64;
                    PotentialSample {
                        r,
                        v: -d * sech_q_sq_raw(alpha * r, q),
                    }
                })
                .collect();
            Ok(ScanCurve { q, samples })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(mu: f64, alpha: f64, d: f64, q: f64) -> ModelParams {
        ModelParams::new(mu, alpha, d, q).expect("valid test params")
    }

    #[test]
    fn special_cases_resolve_to_the_stated_parameters() {
        let ResolvedCase::Real(m) =
            from_special_case(&SpecialCase::Reflectionless { lambda: 1 }).unwrap()
        else {
            panic!("reflectionless resolves to real parameters")
        };
        assert_eq!((m.d, m.q, m.alpha), (1.0, 1.0, 1.0));

        let ResolvedCase::Real(m) =
            from_special_case(&SpecialCase::Symmetric { lambda: 1.5 }).unwrap()
        else {
            panic!("symmetric resolves to real parameters")
        };
        assert_eq!((m.d, m.q, m.alpha), (2.0, 1.0, 1.0));

        let ResolvedCase::Real(m) = from_special_case(&SpecialCase::QSymmetric {
            lambda: 1.5,
            q: 3.0,
        })
        .unwrap() else {
            panic!("q-symmetric resolves to real parameters")
        };
        assert_eq!((m.d, m.q), (2.0, 3.0));

        let ResolvedCase::Pt(pt) = from_special_case(&SpecialCase::PtSymmetric {
            d: 1.0,
            alpha: 1.0,
            epsilon: std::f64::consts::FRAC_PI_2,
        })
        .unwrap() else {
            panic!("pt resolves to a PT record")
        };
        // q_c = e^{iπ} = −1 up to the f64 representation of π.
        assert!((pt.q_c() - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn special_case_invariants_name_the_failed_predicate() {
        let err = from_special_case(&SpecialCase::Reflectionless { lambda: 0 }).unwrap_err();
        assert_eq!(err.predicate, "lambda >= 1 (integer)");
        let err = from_special_case(&SpecialCase::Symmetric { lambda: 0.5 }).unwrap_err();
        assert_eq!(err.predicate, "lambda^2 > 1/4");
        let err = from_special_case(&SpecialCase::PtSymmetric {
            d: 1.0,
            alpha: 1.0,
            epsilon: 0.7,
        })
        .unwrap_err();
        assert_eq!(err.predicate, "|epsilon| > pi/4");
        let err = from_special_case(&SpecialCase::PtSymmetric {
            d: 0.0,
            alpha: 1.0,
            epsilon: 2.0,
        })
        .unwrap_err();
        assert_eq!(err.predicate, "D > 0");
        assert!(ModelParams::new(1.0, 1.0, 1.0, -2.0).is_err());
    }

    #[test]
    fn potential_values_at_closed_form_points() {
        assert_eq!(potential_value(&p(1.0, 1.0, 1.0, 1.0), 0.0), -1.0);
        // V(0) = −4D/(1+q)²: D = 4, q = 3 → −1.
        let v = potential_value(&p(1.0, 1.0, 4.0, 3.0), 0.0);
        assert!((v - (-1.0)).abs() < 1e-15, "got {v}");
        // Far field: negative and vanishing.
        let v = potential_value(&p(1.0, 1.0, 2.0, 4.0), 40.0);
        assert!(v < 0.0 && v > -1e-30);
    }

    #[test]
    fn minimum_matches_the_stationary_point() {
        let (r0, vmin) = potential_minimum(&p(1.0, 1.0, 2.0, 4.0));
        assert!((r0 - 0.5 * 4.0f64.ln()).abs() < 1e-15);
        assert_eq!(vmin, -0.5);
        let (r0, vmin) = potential_minimum(&p(1.0, 2.0, 1.0, 1.0));
        assert_eq!((r0, vmin), (0.0, -1.0));
        let (_, vmin) = potential_minimum(&p(1.0, 1.0, 3.0, 1.0));
        assert_eq!(vmin, -3.0);
    }

    #[test]
    fn minimum_agrees_with_a_dense_grid_scan() {
        let params = p(1.0, 1.0, 2.0, 4.0);
        let (r0, vmin) = potential_minimum(&params);
        let n = 1_000_001usize;
        let mut best = (f64::NAN, f64::INFINITY);
        for i in 0..n {
            let r = -5.0 + 10.0 * i as f64 / (n - 1) as f64;
            let v = potential_value(&params, r);
            if v < best.1 {
                best = (r, v);
            }
        }
        assert!((best.0 - r0).abs() < 1e-5, "argmin {} vs {}", best.0, r0);
        assert!((best.1 - vmin).abs() < 1e-9, "min {} vs {}", best.1, vmin);
    }

    #[test]
    fn scan_has_the_documented_shape() {
        let curves = potential_scan(&[1.0, 2.0], 1.0, 1.0, 0.0, 5.0, 2).unwrap();
        assert_eq!(curves.len(), 2);
        assert!(curves.iter().all(|c| c.samples.len() == 2));
        assert_eq!(curves[0].samples[0].r, 0.0);
        assert_eq!(curves[0].samples[1].r, 5.0);

        // q = 1 over a symmetric window: even in r.
        let sym = potential_scan(&[1.0], 3.0, 1.0, -2.0, 2.0, 41).unwrap();
        let s = &sym[0].samples;
        for i in 0..s.len() {
            let j = s.len() - 1 - i;
            assert!((s[i].v - s[j].v).abs() < 1e-14);
        }

        // Figure-level check: each q ≥ 1 curve over r ∈ [0, 5] reaches −D/q at
        // r = ln(q)/2 up to grid resolution.
        let fig = potential_scan(&[1.0, 2.0, 4.0], 1.0, 1.0, 0.0, 5.0, 5001).unwrap();
        for curve in &fig {
            let min = curve.samples.iter().cloned().fold(
                PotentialSample {
                    r: 0.0,
                    v: f64::INFINITY,
                },
                |a, b| {
                    if b.v < a.v {
                        b
                    } else {
                        a
                    }
                },
            );
            assert!((min.v - (-1.0 / curve.q)).abs() < 1e-6);
            assert!((min.r - curve.q.ln() / 2.0).abs() < 1e-3);
        }

        assert!(potential_scan(&[1.0], 1.0, 1.0, 3.0, 1.0, 10).is_err());
        assert!(potential_scan(&[1.0], 1.0, 1.0, 0.0, 5.0, 1).is_err());
        assert!(potential_scan(&[-1.0], 1.0, 1.0, 0.0, 5.0, 10).is_err());
    }

    #[test]
    fn pt_potential_recovers_the_real_well_at_epsilon_pi_over_2() {
        // q_c = −1: csch_{−1} = sech, so V = −D·sech²(αr), real.
        let pt = PtParams::new(1.0, 1.0, 1.5, std::f64::consts::FRAC_PI_2).unwrap();
        let real = p(1.0, 1.0, 1.5, 1.0);
        for &r in &[0.0, 0.3, -1.2, 2.5] {
            let vc = pt_potential_value(&pt, r).unwrap();
            let vr = potential_value(&real, r);
            assert!(
                (vc - Complex64::new(vr, 0.0)).norm() <= 1e-12 * vr.abs(),
                "r = {r}: {vc} vs {vr}"
            );
        }
    }

    #[test]
    fn pt_potential_pole_is_surfaced() {
        // ε = π gives q_c = e^{2πi} on the positive real axis: csch pole at r = 0.
        let pt = PtParams::new(1.0, 1.0, 1.0, std::f64::consts::PI).unwrap();
        assert!(matches!(
            pt_potential_value(&pt, 0.0),
            Err(SpecialError::Pole { .. })
        ));
    }

    proptest! {
        #[test]
        fn shift_identity(
            d in 0.1..10.0f64,
            q in 1e-2..10.0f64,
            alpha in 0.2..4.0f64,
            r in -8.0..8.0f64,
        ) {
            let lhs = potential_value(&p(1.0, alpha, d, q), r);
            let rhs = potential_value(
                &p(1.0, alpha, d / q, 1.0),
                r - q.ln() / (2.0 * alpha),
            );
            prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(rhs.abs()));
        }

        #[test]
        fn attractive_everywhere(d in 0.1..10.0f64, q in 1e-2..10.0f64, r in -30.0..30.0f64) {
            let v = potential_value(&p(1.0, 1.0, d, q), r);
            prop_assert!(v < 0.0);
        }
    }
}
