//! The fast-decreasing even kernels whose Fourier cosine transforms are the
//! Xi functions: the Riemann kernel and the character kernels built from
//! theta series.

use crate::characters::RealPrimitiveCharacter;
use crate::extf::ExtF;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub enum KernelKind {
    Riemann,
    Character(RealPrimitiveCharacter),
}

/// Selects a kernel and its series-truncation policy.
#[derive(Debug, Clone)]
pub struct KernelDescriptor {
    pub kind: KernelKind,
    /// Relative tail bound: summation stops once the term magnitude falls
    /// below this fraction of the largest retained term.
    pub truncation_floor: f64,
}

impl KernelDescriptor {
    pub fn riemann() -> Self {
        KernelDescriptor { kind: KernelKind::Riemann, truncation_floor: 1e-18 }
    }

    pub fn character(chi: RealPrimitiveCharacter) -> Self {
        KernelDescriptor { kind: KernelKind::Character(chi), truncation_floor: 1e-18 }
    }

    pub fn for_discriminant(d: i64) -> Result<Self> {
        Ok(Self::character(RealPrimitiveCharacter::new(d)?))
    }

    /// Upper integration limit T such that kernel(T) < 1e-18 * kernel(0):
    /// 2.5 for the Riemann kernel, stretched with the modulus for character
    /// kernels (the theta decay rate is pi e^(2t) / m).
    pub fn default_truncation_t(&self) -> f64 {
        match &self.kind {
            KernelKind::Riemann => 2.5,
            KernelKind::Character(chi) => {
                let m = chi.modulus() as f64;
                (0.5 * (45.0 * m / std::f64::consts::PI).ln()).max(2.5)
            }
        }
    }

    pub fn label(&self) -> String {
        match &self.kind {
            KernelKind::Riemann => "riemann".to_string(),
            KernelKind::Character(chi) => format!("character(d={})", chi.discriminant()),
        }
    }
}

/// Kernel value together with an underflow flag.
#[derive(Debug, Clone, Copy)]
pub struct PhiEval {
    pub value: f64,
    pub underflowed: bool,
}

/// Kernel value at t. Negative t is folded to |t| by evenness; the direct
/// two-sided evaluation used by the evenness test is `phi_direct`.
pub fn phi(descriptor: &KernelDescriptor, t: f64) -> f64 {
    phi_eval(descriptor, t).value
}

pub fn phi_eval(descriptor: &KernelDescriptor, t: f64) -> PhiEval {
    phi_direct(descriptor, t.abs())
}

/// Kernel evaluated literally at t, without the evenness fold.
pub fn phi_direct(descriptor: &KernelDescriptor, t: f64) -> PhiEval {
    match &descriptor.kind {
        KernelKind::Riemann => phi_riemann(t, descriptor.truncation_floor),
        KernelKind::Character(chi) => phi_character(chi, t),
    }
}

/// 4 pi sum_{n>=1} (2 pi n^4 e^(9t/2) - 3 n^2 e^(5t/2)) exp(-n^2 pi e^(2t)),
/// summed in increasing n with compensated summation; the first omitted
/// term is certified below `floor` times the largest retained magnitude.
fn phi_riemann(t: f64, floor: f64) -> PhiEval {
    let e2t = (2.0 * t).exp();
    let a = (4.5 * t).exp();
    let b = (2.5 * t).exp();
    let pi = std::f64::consts::PI;
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut max_term = 0.0f64;
    for n in 1..=1000u64 {
        let nf = n as f64;
        let n2 = nf * nf;
        let expo = -n2 * pi * e2t;
        let term = if expo < -745.0 {
            0.0
        } else {
            (2.0 * pi * n2 * n2 * a - 3.0 * n2 * b) * expo.exp()
        };
        let y = term - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        max_term = max_term.max(term.abs());
        if term.abs() < floor * max_term.max(f64::MIN_POSITIVE) {
            break;
        }
    }
    let value = 4.0 * pi * sum;
    PhiEval { value, underflowed: value == 0.0 }
}

/// Kernel value at |t| as an extended-exponent number. Past t ~ 2.7 the
/// Riemann kernel drops below the f64 underflow threshold while remaining
/// strictly positive; the positivity scan needs the sign there, so each term
/// is assembled from its logarithm. The character kernels only underflow at
/// much larger t (the sum is damped by e^(2t)/m, not n^2 pi e^(2t) alone for
/// n = 1), and fall back to the f64 path wrapped into an `ExtF`.
pub fn phi_ext(descriptor: &KernelDescriptor, t: f64) -> ExtF {
    let t = t.abs();
    match &descriptor.kind {
        KernelKind::Riemann => phi_riemann_ext(t, descriptor.truncation_floor),
        KernelKind::Character(chi) => ExtF::new(phi_character(chi, t).value),
    }
}

fn phi_riemann_ext(t: f64, floor: f64) -> ExtF {
    let e2t = (2.0 * t).exp();
    let pi = std::f64::consts::PI;
    let mut sum = ExtF::ZERO;
    let mut max_ln = f64::NEG_INFINITY;
    for n in 1..=1000u64 {
        let nf = n as f64;
        let n2 = nf * nf;
        // 2 pi n^4 e^(9t/2) - 3 n^2 e^(5t/2) = n^2 e^(5t/2) (2 pi n^2 e^(2t) - 3):
        // the polynomial factor fits f64 comfortably for t <= 100
        let poly = n2 * (2.5 * t).exp() * (2.0 * pi * n2 * e2t - 3.0);
        let term = ExtF::exp_of_ln(-n2 * pi * e2t).mul_f64(poly);
        sum = sum.add(term);
        max_ln = max_ln.max(term.ln_abs());
        if term.ln_abs() < max_ln + floor.ln() {
            break;
        }
    }
    sum.mul_f64(4.0 * pi)
}

/// 2 e^((1/2 + a) t) theta_a(chi, e^(2t)).
fn phi_character(chi: &RealPrimitiveCharacter, t: f64) -> PhiEval {
    let x = (2.0 * t).exp();
    let prefactor_log = (0.5 + chi.parity_a() as f64) * t;
    // theta only fails for x <= 0, which e^(2t) never is
    let theta = crate::characters::theta(chi, x).expect("x = e^(2t) > 0");
    let value = 2.0 * prefactor_log.exp() * theta;
    PhiEval { value, underflowed: value == 0.0 && theta == 0.0 }
}

/// Grid scan of the kernel over [0, t_max]: minimum, its location, and any
/// sign changes. Reports findings; never asserts positivity.
#[derive(Debug, Clone)]
pub struct ScanReport {
    pub kernel: String,
    pub t_max: f64,
    pub step: f64,
    pub points: usize,
    /// Minimum collapsed to f64; 0.0 when the true minimum is positive but
    /// below the f64 underflow threshold (see `min_ln` / `min_sign`).
    pub min_value: f64,
    /// ln |minimum|, finite even where f64 underflows; -inf for exact zero.
    pub min_ln: f64,
    /// Sign of the minimum: +1, -1, or 0.
    pub min_sign: f64,
    pub argmin: f64,
    pub sign_changes: Vec<f64>,
}

pub fn positivity_scan(descriptor: &KernelDescriptor, t_max: f64, step: f64) -> Result<ScanReport> {
    if !(t_max > 0.0) || !(step > 0.0) {
        return Err(Error::domain(format!(
            "positivity_scan requires t_max > 0 and step > 0, got {t_max}, {step}"
        )));
    }
    let mut min: Option<ExtF> = None;
    let mut argmin = 0.0;
    let mut sign_changes = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    let mut points = 0usize;
    let mut i = 0u64;
    loop {
        let t = i as f64 * step;
        if t > t_max + 1e-12 {
            break;
        }
        let v = phi_ext(descriptor, t);
        points += 1;
        let smaller = match min {
            None => true,
            // v < min  <=>  v - min < 0
            Some(m) => v.sub(m).sign() < 0.0,
        };
        if smaller {
            min = Some(v);
            argmin = t;
        }
        if let Some((tp, sp)) = prev {
            if sp != 0.0 && v.sign() != 0.0 && sp != v.sign() {
                sign_changes.push(0.5 * (tp + t));
            }
        }
        prev = Some((t, v.sign()));
        i += 1;
    }
    let min = min.expect("loop runs at least once for t_max > 0");
    Ok(ScanReport {
        kernel: descriptor.label(),
        t_max,
        step,
        points,
        min_value: min.to_f64(),
        min_ln: min.ln_abs(),
        min_sign: min.sign(),
        argmin,
        sign_changes,
    })
}

/// One grid point of the decay-trend report: log|Phi^(k)(t)| / t, with
/// -inf marking derivative magnitudes below the underflow floor.
#[derive(Debug, Clone)]
pub struct DecayReport {
    pub kernel: String,
    pub derivative_order: u32,
    pub t_grid: Vec<f64>,
    pub log_ratio: Vec<f64>,
    /// Strict decrease over the sub-grid inside [0.5, 2.0].
    pub decreasing_on_window: bool,
}

/// Central finite difference of order k (0..2) with one Richardson halving.
fn derivative(descriptor: &KernelDescriptor, t: f64, k: u32, h: f64) -> f64 {
    let f = |x: f64| phi(descriptor, x);
    let d = |h: f64| match k {
        0 => f(t),
        1 => (f(t + h) - f(t - h)) / (2.0 * h),
        2 => (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h),
        _ => unreachable!(),
    };
    if k == 0 {
        return d(h);
    }
    let coarse = d(h);
    let fine = d(h / 2.0);
    // Richardson on the O(h^2) central stencils
    (4.0 * fine - coarse) / 3.0
}

pub fn decay_check(
    descriptor: &KernelDescriptor,
    derivative_order: u32,
    t_grid: &[f64],
) -> Result<DecayReport> {
    if derivative_order > 2 {
        return Err(Error::capability(format!(
            "derivative order capped at 2, got {derivative_order}"
        )));
    }
    if t_grid.windows(2).any(|w| w[1] <= w[0]) || t_grid.iter().any(|&t| t <= 0.0) {
        return Err(Error::domain("t_grid must be increasing and positive"));
    }
    let log_ratio: Vec<f64> = t_grid
        .iter()
        .map(|&t| {
            let d = derivative(descriptor, t, derivative_order, 1e-4).abs();
            if d < f64::MIN_POSITIVE {
                f64::NEG_INFINITY
            } else {
                d.ln() / t
            }
        })
        .collect();
    let window: Vec<f64> = t_grid
        .iter()
        .zip(&log_ratio)
        .filter(|(t, _)| **t >= 0.5 && **t <= 2.0)
        .map(|(_, r)| *r)
        .collect();
    // -inf counts as decreasing (the sequence is diverging to -inf)
    let decreasing_on_window = window.windows(2).all(|w| w[1] < w[0] || w[1] == f64::NEG_INFINITY);
    Ok(DecayReport {
        kernel: descriptor.label(),
        derivative_order,
        t_grid: t_grid.to_vec(),
        log_ratio,
        decreasing_on_window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // frozen from 40-digit summation of the kernel series
    const PHI_AT_0: f64 = 1.786_787_601_868_493_8;
    const PHI_AT_1: f64 = 5.511_255_762_542_535e-7;

    #[test]
    fn riemann_kernel_values() {
        let k = KernelDescriptor::riemann();
        assert!((phi(&k, 0.0) - PHI_AT_0).abs() < 1e-13);
        assert!((phi(&k, 1.0) - PHI_AT_1).abs() < 1e-18);
    }

    #[test]
    fn character_kernel_at_zero_matches_folded_theta() {
        // odd character: Phi(0) = 4 sum_{n>=1} n chi(n) exp(-n^2 pi / m)
        let k = KernelDescriptor::for_discriminant(-4).unwrap();
        let chi = RealPrimitiveCharacter::new(-4).unwrap();
        let mut direct = 0.0;
        for n in 1..60i64 {
            direct += (n * chi.eval(n)) as f64
                * (-(n * n) as f64 * std::f64::consts::PI / 4.0).exp();
        }
        assert!((phi(&k, 0.0) - 4.0 * direct).abs() < 1e-14);
        // frozen from 40-digit arithmetic
        assert!((phi(&k, 0.0) - 1.813_535_310_335_462_4).abs() < 1e-13);
    }

    #[test]
    fn evenness_both_kinds() {
        let kernels = [
            KernelDescriptor::riemann(),
            KernelDescriptor::for_discriminant(5).unwrap(),
            KernelDescriptor::for_discriminant(-4).unwrap(),
            KernelDescriptor::for_discriminant(-23).unwrap(),
        ];
        for k in &kernels {
            let mut t = 0.0;
            while t <= 2.0 {
                let plus = phi_direct(k, t).value;
                let minus = phi_direct(k, -t).value;
                assert!(
                    (plus - minus).abs() <= 1e-12,
                    "{} evenness residual {:e} at t = {t}",
                    k.label(),
                    (plus - minus).abs()
                );
                t += 0.05;
            }
        }
    }

    #[test]
    fn riemann_positivity_and_monotone_decay() {
        let k = KernelDescriptor::riemann();
        // past t ~ 2.73 the f64 image underflows to 0, but the extended-path
        // sign and log-magnitude stay resolved
        let report = positivity_scan(&k, 3.0, 0.005).unwrap();
        assert!(report.min_sign > 0.0, "min sign {} at {}", report.min_sign, report.argmin);
        assert!(report.min_ln.is_finite());
        assert!(report.sign_changes.is_empty());
        // strictly decreasing on [0.2, 2]
        let mut prev = phi(&k, 0.2);
        let mut t = 0.25;
        while t <= 2.0 {
            let v = phi(&k, t);
            assert!(v < prev, "not decreasing at t = {t}");
            prev = v;
            t += 0.05;
        }
    }

    #[test]
    fn single_point_scan() {
        let k = KernelDescriptor::riemann();
        let report = positivity_scan(&k, 1e-9, 1.0).unwrap();
        assert_eq!(report.points, 1);
        assert_eq!(report.min_value, phi(&k, 0.0));
        assert!(positivity_scan(&k, -1.0, 0.1).is_err());
    }

    #[test]
    fn truncation_is_certified() {
        // tightening the floor by four orders must not move the value
        let loose = KernelDescriptor { truncation_floor: 1e-14, ..KernelDescriptor::riemann() };
        let tight = KernelDescriptor { truncation_floor: 1e-18, ..KernelDescriptor::riemann() };
        for &t in &[0.0, 0.3, 1.0, 2.0] {
            let a = phi(&loose, t);
            let b = phi(&tight, t);
            assert!((a - b).abs() <= 1e-13 * b.abs().max(f64::MIN_POSITIVE));
        }
    }

    #[test]
    fn decay_trend_reports() {
        let k = KernelDescriptor::riemann();
        let grid = [0.5, 1.0, 1.5];
        for order in 0..=2 {
            let rep = decay_check(&k, order, &grid).unwrap();
            assert!(rep.decreasing_on_window, "order {order}: {:?}", rep.log_ratio);
        }
        let chi = KernelDescriptor::for_discriminant(-3).unwrap();
        assert!(decay_check(&chi, 1, &grid).unwrap().decreasing_on_window);
        // underflow region maps to the -inf sentinel
        let rep = decay_check(&k, 0, &[3.5, 4.0]).unwrap();
        assert!(rep.log_ratio.iter().all(|r| *r == f64::NEG_INFINITY));
        assert!(decay_check(&k, 3, &grid).is_err());
        assert!(decay_check(&k, 0, &[1.0, 0.5]).is_err());
    }
}
