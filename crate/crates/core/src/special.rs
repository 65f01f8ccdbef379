//! Sine and cosine integrals and the auxiliary functions built from them.
//!
//! `Si(x) = int_0^x sin t / t dt`,
//! `Ci(x) = gamma + ln x + int_0^x (cos t - 1)/t dt`, and the auxiliary
//! pair
//!
//! ```text
//! f(z) =  Ci(z) sin z - si(z) cos z        si(z) = Si(z) - pi/2
//! g(z) = -Ci(z) cos z - si(z) sin z
//! ```
//!
//! `f` is the kernel of the distance suppression of virtual intermediate
//! states: it equals `int_0^inf sin u / (u + z) du` and behaves as `1/z`
//! for large arguments.
//!
//! Power series are used for `x <= 6`; above that the pair `(f, g)` is
//! evaluated directly from a continued fraction for the exponential
//! integral of imaginary argument, which avoids the trigonometric
//! cancellation that `Ci sin - si cos` suffers at large `x`.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SERIES_CUTOVER: f64 = 6.0;

/// Power series for Si and Ci, accurate to ~1e-15 for `x <= 6`.
fn si_ci_series(x: f64) -> (f64, f64) {
    let x2 = x * x;
    // Si: sum of (-1)^n x^(2n+1) / ((2n+1) (2n+1)!)
    let mut pow = x; // (-1)^n x^(2n+1) / (2n+1)!
    let mut si = x;
    let mut n = 0usize;
    loop {
        pow *= -x2 / ((2 * n + 2) as f64 * (2 * n + 3) as f64);
        let term = pow / (2 * n + 3) as f64;
        si += term;
        n += 1;
        if term.abs() < 1e-17 * si.abs().max(1.0) || n > 60 {
            break;
        }
    }
    // Ci: gamma + ln x + sum of (-1)^n x^(2n) / ((2n) (2n)!)
    let mut q = -x2 / 2.0; // (-1)^n x^(2n) / (2n)! starting at n = 1
    let mut cin = q / 2.0;
    let mut m = 1usize;
    loop {
        q *= -x2 / ((2 * m + 1) as f64 * (2 * m + 2) as f64);
        let term = q / (2 * m + 2) as f64;
        cin += term;
        m += 1;
        if term.abs() < 1e-18 * cin.abs().max(1.0) || m > 60 {
            break;
        }
    }
    (si, EULER_GAMMA + x.ln() + cin)
}

/// Auxiliary pair (f, g) from the continued fraction
/// `e^{ix} E_1(ix) = g(x) - i f(x)` (modified Lentz evaluation).
fn aux_pair_cf(x: f64) -> Result<(f64, f64)> {
    let z = Complex64::new(0.0, x);
    let tiny = Complex64::new(1e-290, 0.0);
    let mut b = z + 1.0;
    let mut c = Complex64::new(1e290, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for j in 1..400 {
        let a = -((j * j) as f64);
        b = z + (2 * j + 1) as f64;
        d = b + a * d;
        if d.norm() < 1e-290 {
            d = tiny;
        }
        c = b + a / c;
        if c.norm() < 1e-290 {
            c = tiny;
        }
        d = d.inv();
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            return Ok((-h.im, h.re));
        }
    }
    Err(Error::Internal(format!(
        "auxiliary-function continued fraction did not settle at x = {x:e}"
    )))
}

/// Sine and cosine integrals `(Si(x), Ci(x))` for `x > 0`.
///
/// Absolute accuracy is better than 1e-12 over the full domain.
pub fn sine_cosine_integrals(x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("Ci requires x > 0, got {x:e}")));
    }
    if x <= SERIES_CUTOVER {
        Ok(si_ci_series(x))
    } else {
        let (f, g) = aux_pair_cf(x)?;
        let (sin, cos) = x.sin_cos();
        let si_small = -(f * cos + g * sin);
        Ok((si_small + FRAC_PI_2, f * sin - g * cos))
    }
}

/// The auxiliary pair `(f(z), g(z))` for `z > 0`.
pub fn aux_pair(z: f64) -> Result<(f64, f64)> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("auxiliary functions require z > 0, got {z:e}")));
    }
    if z <= SERIES_CUTOVER {
        let (si, ci) = si_ci_series(z);
        let (sin, cos) = z.sin_cos();
        let sm = si - FRAC_PI_2;
        Ok((ci * sin - sm * cos, -ci * cos - sm * sin))
    } else {
        aux_pair_cf(z)
    }
}

/// Auxiliary function `f(z) = Ci(z) sin z - si(z) cos z` for `z > 0`.
///
/// Positive and monotone decreasing at large argument, `f(z) ~ 1/z`.
pub fn f_aux(z: f64) -> Result<f64> {
    Ok(aux_pair(z)?.0)
}

/// Companion auxiliary function `g(z) = -Ci(z) cos z - si(z) sin z`,
/// `g(z) ~ 1/z^2` at large argument.
pub fn g_aux(z: f64) -> Result<f64> {
    Ok(aux_pair(z)?.1)
}

/// Relative weight of virtual vs real one-photon intermediate states at
/// pair separation `r` and resonant wavenumber `k0`.
#[derive(Debug, Clone, Copy)]
pub struct IntermediateStateIntegrals {
    /// `f(k0 r) / r`, the virtual-state contribution.
    pub virtual_part: f64,
    /// `f(k0 r)/r - pi cos(k0 r)/r`, the real-state contribution.
    pub real_part: f64,
    /// `|virtual/real|`; `None` when `cos(k0 r)` passes through zero and
    /// the comparison is not meaningful.
    pub ratio: Option<f64>,
}

const COS_ZERO_GUARD: f64 = 1e-6;

/// Evaluate the virtual- and real-state distance integrals and their ratio.
///
/// For `k0 r >> 1` the ratio falls off as `1/(pi k0 r |cos k0 r|)`,
/// which is what justifies dropping the virtual states at long range.
pub fn intermediate_state_integrals(k0: f64, r: f64) -> Result<IntermediateStateIntegrals> {
    if !(k0 > 0.0 && r > 0.0) {
        return Err(Error::Domain(format!("k0 and r must be positive, got k0={k0:e}, r={r:e}")));
    }
    let z = k0 * r;
    let f = f_aux(z)?;
    let virtual_part = f / r;
    let real_part = (f - PI * z.cos()) / r;
    let ratio = if z.cos().abs() < COS_ZERO_GUARD {
        None
    } else {
        Some((virtual_part / real_part).abs())
    };
    Ok(IntermediateStateIntegrals { virtual_part, real_part, ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{pv_quadrature, PvProblem, UpperLimit};
    use approx::assert_abs_diff_eq;

    /// Independent oracle for `int_0^inf sin u/(u+z) du`: period-aligned
    /// panel sums plus an analytic integration-by-parts tail.
    fn oscillatory_oracle(z: f64) -> f64 {
        let n_seg = 10_000usize;
        let x_cut = 2.0 * PI * n_seg as f64;
        let mut total = 0.0;
        for n in 0..n_seg {
            let a = 2.0 * PI * n as f64;
            total += crate::quad::adaptive(&|u: f64| u.sin() / (u + z), a, a + 2.0 * PI, 1e-12, 1e-13)
                .unwrap()
                .value;
        }
        let d = x_cut + z;
        total + x_cut.cos() / d + x_cut.sin() / (d * d) - 2.0 * x_cut.cos() / (d * d * d)
    }

    #[test]
    fn si_ci_frozen_table() {
        // (x, Si, Ci) reference values
        let table = [
            (0.1, 0.099_944_461_108_276_95, -1.727_868_386_657_296_6),
            (0.5, 0.493_107_418_043_066_69, -0.177_784_078_806_612_9),
            (1.0, 0.946_083_070_367_183_0, 0.337_403_922_900_968_13),
            (2.0, 1.605_412_976_802_694_8, 0.422_980_828_774_865_0),
            (5.0, 1.549_931_244_944_674_1, -0.190_029_749_656_643_88),
            (5.9, 1.430_184_334_109_366_2, -0.083_932_674_118_556_49),
            (6.0, 1.424_687_551_280_506_5, -0.068_057_243_893_247_13),
            (6.1, 1.420_867_373_424_620_2, -0.051_982_528_980_021_97),
            (6.5, 1.421_794_274_435_881_7, 0.011_101_519_514_930_109),
            (8.0, 1.574_186_821_706_942_0, 0.122_433_882_532_009_56),
            (10.0, 1.658_347_594_218_874_0, -0.045_456_433_004_455_37),
            (20.0, 1.548_241_701_043_439_8, 0.044_419_820_845_353_32),
            (50.0, 1.551_617_072_485_935_9, -0.005_628_386_324_116_305),
            (100.0, 1.562_225_466_889_056_3, -0.005_148_825_142_610_492),
            (1000.0, 1.570_233_121_968_771_2, 0.000_826_315_511_090_682_3),
        ];
        for (x, si, ci) in table {
            let (s, c) = sine_cosine_integrals(x).unwrap();
            assert_abs_diff_eq!(s, si, epsilon = 1e-12);
            assert_abs_diff_eq!(c, ci, epsilon = 1e-12);
        }
    }

    #[test]
    fn si_approaches_half_pi() {
        let (s, _) = sine_cosine_integrals(1e4).unwrap();
        assert!((s - FRAC_PI_2).abs() < 1e-4);
    }

    #[test]
    fn si_pi_matches_quadrature_oracle() {
        let oracle = crate::quad::adaptive(
            &|t: f64| if t == 0.0 { 1.0 } else { t.sin() / t },
            0.0,
            PI,
            1e-13,
            1e-15,
        )
        .unwrap()
        .value;
        assert_abs_diff_eq!(oracle, 1.851_937_051_982_466_2, epsilon = 1e-12);
        let (s, _) = sine_cosine_integrals(PI).unwrap();
        assert_abs_diff_eq!(s, oracle, epsilon = 1e-12);
    }

    #[test]
    fn ci_one_matches_series_oracle() {
        // brute-force summation of the defining series
        let x: f64 = 1.0;
        let mut acc = 0.0;
        let mut term = 1.0f64;
        for n in 1..40 {
            term *= -x * x / ((2 * n - 1) as f64 * (2 * n) as f64);
            acc += term / (2 * n) as f64;
        }
        let oracle = EULER_GAMMA + x.ln() + acc;
        assert_abs_diff_eq!(oracle, 0.337_403_922_900_968_13, epsilon = 1e-14);
        let (_, c) = sine_cosine_integrals(1.0).unwrap();
        assert_abs_diff_eq!(c, oracle, epsilon = 1e-13);
    }

    #[test]
    fn ci_rejects_nonpositive() {
        assert!(matches!(sine_cosine_integrals(0.0), Err(Error::Domain(_))));
        assert!(matches!(sine_cosine_integrals(-1.0), Err(Error::Domain(_))));
        assert!(matches!(f_aux(0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn f_small_argument_limit() {
        assert!((f_aux(1e-8).unwrap() - FRAC_PI_2).abs() < 1e-6);
    }

    #[test]
    fn f_large_argument_decay() {
        let f100 = f_aux(100.0).unwrap();
        assert!((f100 * 100.0 - 1.0).abs() < 0.01);
        assert_abs_diff_eq!(f100, 0.009_998_002_392_839_962, epsilon = 1e-14);
        // monotone decreasing at large argument
        assert!(f_aux(50.0).unwrap() > f100);
        assert!(f100 > f_aux(200.0).unwrap());
    }

    #[test]
    fn f_matches_integral_representation() {
        // f(z) = int_0^inf sin u / (u + z) du
        for z in [0.5, 1.0, 5.0, 20.0, 100.0] {
            let f = f_aux(z).unwrap();
            let oracle = oscillatory_oracle(z);
            assert_abs_diff_eq!(f, oracle, epsilon = 1e-10);
        }
    }

    #[test]
    fn real_state_pole_identity() {
        // (1/r) PV int_0^inf sin(k r)/(k0 - k) dk = f(k0 r)/r - pi cos(k0 r)/r
        let k0 = 1.0;
        let r = 20.0;
        let p = PvProblem {
            integrand: |k: f64| (k * r).sin() / (k0 - k),
            pole: Some(k0),
            lower: 0.0,
            upper: UpperLimit::Infinite,
            rel_tol: 1e-11,
            abs_tol: 1e-13,
            oscillation_half_period: Some(PI / r),
            tail_start_hint: Some(10.0),
        };
        let engine = pv_quadrature(&p).unwrap().value / r;
        let analytic = (f_aux(k0 * r).unwrap() - PI * (k0 * r).cos()) / r;
        assert_abs_diff_eq!(analytic, -1.232_270_604_795_706_9 / r, epsilon = 1e-12);
        assert_abs_diff_eq!(engine, analytic, epsilon = 1e-8);
    }

    #[test]
    fn intermediate_states_far_zone_suppression() {
        let k0 = 1e7;
        let r = 1e-5; // k0 r = 100
        let ii = intermediate_state_integrals(k0, r).unwrap();
        let ratio = ii.ratio.expect("cos(100) is far from zero");
        assert!(ratio < 5e-3, "ratio = {ratio}");
        assert!(ratio > 2e-3);
    }

    #[test]
    fn intermediate_states_short_range_order_unity() {
        let ii = intermediate_state_integrals(1.0, 1.0).unwrap();
        let ratio = ii.ratio.unwrap();
        assert!((0.2..5.0).contains(&ratio), "ratio = {ratio}");
    }

    #[test]
    fn intermediate_states_cos_zero_guard() {
        // k0 r = pi/2 puts the real part through its cosine zero
        let ii = intermediate_state_integrals(FRAC_PI_2, 1.0).unwrap();
        assert!(ii.ratio.is_none());
    }

    #[test]
    fn virtual_part_asymptote() {
        // virtual * r * (k0 r) -> 1
        for k0r in [100.0, 300.0, 1000.0] {
            let r = 2.0;
            let ii = intermediate_state_integrals(k0r / r, r).unwrap();
            assert!((ii.virtual_part * r * k0r - 1.0).abs() < 0.01);
        }
    }
}
