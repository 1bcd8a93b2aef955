//! Fourier-cosine quadrature of fast-decaying kernels, Xi evaluation and
//! real-zero location.
//!
//! Composite Gauss–Legendre panels with oscillation-aware widths; panel
//! halving supplies the error estimate.

use crate::characters::RealPrimitiveCharacter;
use crate::kernels::{phi, KernelDescriptor};
use crate::{Error, Result};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

/// Gauss–Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

static RULE_CACHE: Lazy<Mutex<HashMap<usize, GaussRule>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Newton iteration on the Legendre polynomial; standard construction.
fn build_rule(order: usize) -> GaussRule {
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and P'_n(x)
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    GaussRule { nodes, weights }
}

pub fn gauss_legendre(order: usize) -> GaussRule {
    let mut cache = RULE_CACHE.lock().unwrap();
    cache.entry(order).or_insert_with(|| build_rule(order)).clone()
}

/// Composite Gauss–Legendre over [a, b] with uniform panels of width <= max_width.
pub fn integrate_panels<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    max_width: f64,
    rule: &GaussRule,
) -> f64 {
    if b <= a {
        return 0.0;
    }
    let n_panels = ((b - a) / max_width).ceil().max(1.0) as usize;
    let width = (b - a) / n_panels as f64;
    let mut total = 0.0;
    for p in 0..n_panels {
        let lo = a + p as f64 * width;
        let half = 0.5 * width;
        let mid = lo + half;
        let mut panel = 0.0;
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            panel += w * f(mid + half * x);
        }
        total += half * panel;
    }
    total
}

/// Panel-halving refinement: integrate with width w, w/2, w/4 ... until two
/// successive estimates agree to tol/4, at most `max_halvings` halvings.
pub fn integrate_refined<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    initial_width: f64,
    rule: &GaussRule,
    tol: f64,
    max_halvings: u32,
) -> Result<(f64, f64)> {
    let mut width = initial_width;
    let mut prev = integrate_panels(f, a, b, width, rule);
    for _ in 0..max_halvings {
        width *= 0.5;
        let next = integrate_panels(f, a, b, width, rule);
        let diff = (next - prev).abs();
        if diff < tol / 4.0 {
            return Ok((next, diff));
        }
        prev = next;
    }
    Err(Error::Accuracy {
        message: format!("panel refinement did not converge to {tol:e} over [{a}, {b}]"),
        best_estimate: prev,
    })
}

/// Quadrature policy for the cosine transforms.
#[derive(Debug, Clone)]
pub struct QuadratureSpec {
    /// Upper limit replacing infinity; defaults to the kernel's own
    /// underflow-certified truncation.
    pub truncation_t: Option<f64>,
    /// Minimum panels per cosine half-period in z.
    pub panels_per_halfperiod: u32,
    /// Gauss–Legendre order per panel.
    pub gauss_order: usize,
    /// Target absolute error.
    pub tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            truncation_t: None,
            panels_per_halfperiod: 2,
            gauss_order: 16,
            tolerance: 1e-9,
        }
    }
}

impl QuadratureSpec {
    pub fn panel_width(&self, z: f64) -> f64 {
        let osc = std::f64::consts::PI / (self.panels_per_halfperiod as f64 * z.abs().max(1.0));
        osc.min(0.25)
    }

    pub fn truncation_for(&self, descriptor: &KernelDescriptor) -> f64 {
        self.truncation_t.unwrap_or_else(|| descriptor.default_truncation_t())
    }
}

const Z_GUARD: f64 = 200.0;

fn check_z(z: f64) -> Result<()> {
    if z.abs() > Z_GUARD {
        return Err(Error::capability(format!(
            "|z| <= {Z_GUARD} (oscillation guard), got {z}"
        )));
    }
    Ok(())
}

/// Integral of kernel(t) cos(z t) over [0, T], with the panel-halving error
/// estimate attached.
pub fn cosine_transform_with_err(
    descriptor: &KernelDescriptor,
    z: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    check_z(z)?;
    let t_max = spec.truncation_for(descriptor);
    let rule = gauss_legendre(spec.gauss_order);
    let f = |t: f64| phi(descriptor, t) * (z * t).cos();
    integrate_refined(&f, 0.0, t_max, spec.panel_width(z), &rule, spec.tolerance, 12)
}

/// Integral of kernel(t) cos(z t) over [0, T].
pub fn cosine_transform(
    descriptor: &KernelDescriptor,
    z: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    cosine_transform_with_err(descriptor, z, spec).map(|(v, _)| v)
}

/// Xi(z) for the Riemann kernel.
pub fn xi_riemann(z: f64, spec: &QuadratureSpec) -> Result<f64> {
    cosine_transform(&KernelDescriptor::riemann(), z, spec)
}

/// Xi(z) for a character kernel.
pub fn xi_character(z: f64, chi: &RealPrimitiveCharacter, spec: &QuadratureSpec) -> Result<f64> {
    cosine_transform(&KernelDescriptor::character(chi.clone()), z, spec)
}

/// k-th derivative of F(x) = 2 * cosine_transform(x), by differentiating
/// under the integral: F^(k)(x) = 2 int kernel(t) t^k cos(x t + k pi/2) dt.
pub fn moment_transform(
    descriptor: &KernelDescriptor,
    z: f64,
    k: u32,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if k > 8 {
        return Err(Error::capability(format!("moment order capped at 8, got {k}")));
    }
    check_z(z)?;
    let t_max = spec.truncation_for(descriptor);
    let rule = gauss_legendre(spec.gauss_order);
    let phase = k as f64 * std::f64::consts::FRAC_PI_2;
    let f = |t: f64| 2.0 * phi(descriptor, t) * t.powi(k as i32) * (z * t + phase).cos();
    integrate_refined(&f, 0.0, t_max, spec.panel_width(z), &rule, spec.tolerance, 12)
        .map(|(v, _)| v)
}

/// A refined sign-change bracket of the transform.
#[derive(Debug, Clone)]
pub struct ZeroBracket {
    pub lo: f64,
    pub hi: f64,
    pub root: f64,
    pub residual: f64,
}

/// Sign-change scan of the transform on [0, z_max] followed by bisection to
/// bracket width 1e-10.
pub fn find_real_zeros(
    descriptor: &KernelDescriptor,
    z_max: f64,
    scan_step: f64,
    spec: &QuadratureSpec,
) -> Result<Vec<ZeroBracket>> {
    if !(scan_step > 0.0 && scan_step <= 0.25) {
        return Err(Error::domain(format!(
            "scan_step must lie in (0, 0.25] (first zero gap safety), got {scan_step}"
        )));
    }
    let eval = |z: f64| cosine_transform(descriptor, z, spec);
    let mut brackets = Vec::new();
    let mut z = 0.0;
    let mut prev = eval(z)?;
    while z + scan_step <= z_max + 1e-12 {
        let z_next = z + scan_step;
        let next = eval(z_next)?;
        if prev != 0.0 && next != 0.0 && prev.signum() != next.signum() {
            brackets.push(bisect(&eval, z, z_next, prev)?);
        }
        z = z_next;
        prev = next;
    }
    Ok(brackets)
}

fn bisect<F: Fn(f64) -> Result<f64>>(f: &F, lo: f64, hi: f64, f_lo: f64) -> Result<ZeroBracket> {
    let mut lo = lo;
    let mut hi = hi;
    let mut f_lo = f_lo;
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    let residual = f(root)?.abs();
    Ok(ZeroBracket { lo, hi, root, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    // frozen: xi(1/2) from 40-digit arithmetic
    const XI_AT_0: f64 = 0.497_120_778_188_314_1;

    #[test]
    fn gauss_rule_integrates_polynomials_exactly() {
        let rule = gauss_legendre(16);
        // degree 31 is exact for a 16-point rule
        let f = |x: f64| x.powi(31) + 3.0 * x.powi(10) + 1.0;
        let got = integrate_panels(&f, -1.0, 1.0, 2.0, &rule);
        let want = 2.0 * (3.0 / 11.0 + 1.0);
        assert!((got - want).abs() < 1e-13);
    }

    #[test]
    fn xi_at_zero_matches_oracle() {
        let spec = QuadratureSpec::default();
        let v = xi_riemann(0.0, &spec).unwrap();
        assert!((v - XI_AT_0).abs() < 1e-9, "got {v}");
    }

    #[test]
    fn transform_is_even_in_z() {
        let spec = QuadratureSpec::default();
        let k = KernelDescriptor::riemann();
        for &z in &[0.5, 3.0, 14.0, 50.0] {
            let plus = cosine_transform(&k, z, &spec).unwrap();
            let minus = cosine_transform(&k, -z, &spec).unwrap();
            assert!((plus - minus).abs() <= 1e-12);
        }
    }

    #[test]
    fn oscillation_guard() {
        let spec = QuadratureSpec::default();
        assert!(xi_riemann(500.0, &spec).is_err());
    }

    #[test]
    fn character_transform_self_refines() {
        // z = 0 value against a 10x finer reference
        let k = KernelDescriptor::for_discriminant(-4).unwrap();
        let coarse = QuadratureSpec::default();
        let fine = QuadratureSpec { tolerance: 1e-12, panels_per_halfperiod: 8, ..coarse.clone() };
        let a = cosine_transform(&k, 0.0, &coarse).unwrap();
        let b = cosine_transform(&k, 0.0, &fine).unwrap();
        assert!((a - b).abs() < 1e-8);
    }

    #[test]
    fn tail_certificate() {
        let spec = QuadratureSpec::default();
        let k = KernelDescriptor::riemann();
        let t_max = spec.truncation_for(&k);
        for &z in &[0.0_f64, 5.0, 14.0] {
            let tail = phi(&k, t_max) * (1.0 / z.abs().max(1.0) + spec.panel_width(z));
            assert!(tail < spec.tolerance / 10.0);
        }
    }

    #[test]
    fn first_zeros_of_xi() {
        let spec = QuadratureSpec::default();
        let k = KernelDescriptor::riemann();
        let roots = find_real_zeros(&k, 16.0, 0.25, &spec).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0].root - 14.134_725_14).abs() < 1e-6);
        assert!(roots[0].residual < 1e-9);
        assert!(roots[0].lo < roots[0].root && roots[0].root < roots[0].hi + 1e-15);

        let none = find_real_zeros(&k, 10.0, 0.25, &spec).unwrap();
        assert!(none.is_empty());
        let tiny = find_real_zeros(&k, 0.1, 0.25, &spec).unwrap();
        assert!(tiny.is_empty());
        assert!(find_real_zeros(&k, 10.0, 0.3, &spec).is_err());
    }

    #[test]
    fn moment_transform_basics() {
        let spec = QuadratureSpec::default();
        let k = KernelDescriptor::riemann();
        let f0 = moment_transform(&k, 0.0, 0, &spec).unwrap();
        assert!((f0 - 2.0 * XI_AT_0).abs() < 2e-6);
        let f1 = moment_transform(&k, 0.0, 1, &spec).unwrap();
        assert!(f1.abs() < 1e-9, "odd moment at 0 should vanish, got {f1}");
        let f2 = moment_transform(&k, 0.0, 2, &spec).unwrap();
        assert!(f2 < 0.0);
        // finite-difference cross-check of F''
        let h = 1e-3;
        let fd = (moment_transform(&k, h, 0, &spec).unwrap() - 2.0 * f0
            + moment_transform(&k, -h, 0, &spec).unwrap())
            / (h * h);
        assert!((f2 - fd).abs() < 1e-5, "{f2} vs {fd}");
        assert!(moment_transform(&k, 0.0, 9, &spec).is_err());
    }

    #[test]
    fn moment_first_derivative_matches_central_difference() {
        let spec = QuadratureSpec::default();
        let k = KernelDescriptor::riemann();
        let h = 1e-3;
        for &z in &[0.0_f64, 5.0, 14.0] {
            let d1 = moment_transform(&k, z, 1, &spec).unwrap();
            let fd = (moment_transform(&k, z + h, 0, &spec).unwrap()
                - moment_transform(&k, z - h, 0, &spec).unwrap())
                / (2.0 * h);
            assert!((d1 - fd).abs() < 1e-5, "z = {z}: {d1} vs {fd}");
        }
    }

    #[test]
    fn refinement_is_contracting() {
        // successive halvings form a rapidly converging sequence
        let k = KernelDescriptor::riemann();
        let rule = gauss_legendre(16);
        let z = 14.0;
        let f = |t: f64| phi(&k, t) * (z * t).cos();
        let w0 = 0.25;
        let i0 = integrate_panels(&f, 0.0, 2.5, w0, &rule);
        let i1 = integrate_panels(&f, 0.0, 2.5, w0 / 2.0, &rule);
        let i2 = integrate_panels(&f, 0.0, 2.5, w0 / 4.0, &rule);
        let i3 = integrate_panels(&f, 0.0, 2.5, w0 / 8.0, &rule);
        let d1 = (i1 - i0).abs();
        let d2 = (i2 - i1).abs();
        let d3 = (i3 - i2).abs();
        if d2 > 1e-15 {
            assert!(d2 <= 0.25 * d1.max(1e-30));
        }
        assert!(d3 <= d2.max(1e-15));
    }
}
