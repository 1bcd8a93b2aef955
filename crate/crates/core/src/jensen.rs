//! Jensen's positivity functionals f_n(x) by three independent routes, and
//! the finite-degree ultraspherical surrogate g_N with its I1/I2 split.
//!
//! Route map:
//! * `f_n_direct`  — 2-D tensor quadrature of the double integral with the
//!   (s-t)^(2n) weight.
//! * `f_n_reduced` — the u = s+t, v = s-t change of variables: an outer
//!   cosine integral against the convolution moment h_n(u).
//! * `f_n_oracle`  — binomial expansion into products of transform
//!   derivatives F^(k)(x).
//!
//! The surrogate replaces cos(ux) by the normalized ultraspherical
//! polynomial c_{4N}(ux). For u x > 1 that polynomial reaches magnitudes far
//! beyond f64 range, so the I2 leg and the full-range cross-check run in
//! extended-exponent arithmetic.

use crate::extf::ExtF;
use crate::kernels::{phi, KernelDescriptor};
use crate::specfun::{gegenbauer_norm, gegenbauer_norm_ext};
use crate::transform::{
    gauss_legendre, integrate_refined, moment_transform, GaussRule, QuadratureSpec,
};
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::Mutex;

/// Shared evaluation context. The convolution moments h_n(u) are expensive
/// and independent of x and N, so they are memoized per (n, u).
pub struct JensenContext {
    descriptor: KernelDescriptor,
    spec: QuadratureSpec,
    t_max: f64,
    rule: GaussRule,
    h_cache: Mutex<HashMap<(u32, u64), f64>>,
}

const MAX_MOMENT_ORDER: u32 = 6;
const MAX_DIRECT_ORDER: u32 = 4;

impl JensenContext {
    pub fn new(descriptor: KernelDescriptor, spec: QuadratureSpec) -> Self {
        let t_max = spec.truncation_for(&descriptor);
        let rule = gauss_legendre(spec.gauss_order);
        JensenContext { descriptor, spec, t_max, rule, h_cache: Mutex::new(HashMap::new()) }
    }

    pub fn descriptor(&self) -> &KernelDescriptor {
        &self.descriptor
    }

    pub fn spec(&self) -> &QuadratureSpec {
        &self.spec
    }

    /// Upper limit of the u integrals: both kernel factors are beyond their
    /// decay range once u exceeds twice the kernel truncation.
    pub fn u_max(&self) -> f64 {
        2.0 * self.t_max
    }

    /// h_n(u) = int_0^V kernel((u+v)/2) kernel((u-v)/2) v^(2n) dv, with V
    /// chosen so both factors underflow past it.
    pub fn convolution_moment(&self, u: f64, n: u32) -> Result<f64> {
        if u < 0.0 {
            return Err(Error::domain(format!("convolution_moment requires u >= 0, got {u}")));
        }
        if n > MAX_MOMENT_ORDER {
            return Err(Error::capability(format!(
                "moment order capped at {MAX_MOMENT_ORDER}, got {n}"
            )));
        }
        let key = (n, u.to_bits());
        if let Some(v) = self.h_cache.lock().unwrap().get(&key) {
            return Ok(*v);
        }
        let v_max = self.u_max() - u;
        let value = if v_max <= 0.0 {
            0.0
        } else {
            let p2n = 2 * n as i32;
            let f = |v: f64| {
                phi(&self.descriptor, (u + v) / 2.0) * phi(&self.descriptor, (u - v) / 2.0)
                    * v.powi(p2n)
            };
            // smooth non-oscillatory integrand: converge in relative terms
            let mut width = 0.25f64;
            let mut prev = crate::transform::integrate_panels(&f, 0.0, v_max, width, &self.rule);
            let mut value = prev;
            for _ in 0..10 {
                width *= 0.5;
                let next = crate::transform::integrate_panels(&f, 0.0, v_max, width, &self.rule);
                let diff = (next - prev).abs();
                value = next;
                if diff <= 1e-11 * next.abs().max(1e-300) || diff <= 1e-14 {
                    break;
                }
                prev = next;
            }
            value
        };
        self.h_cache.lock().unwrap().insert(key, value);
        Ok(value)
    }

    /// f_n(x) through the change-of-variables route:
    /// 2 int_0^inf cos(ux) h_n(u) du. Even in x by construction.
    pub fn f_n_reduced(&self, x: f64, n: u32) -> Result<f64> {
        let x = x.abs();
        if n > MAX_MOMENT_ORDER {
            return Err(Error::capability(format!(
                "moment order capped at {MAX_MOMENT_ORDER}, got {n}"
            )));
        }
        let f = |u: f64| -> f64 {
            (u * x).cos() * self.convolution_moment(u, n).expect("u >= 0, n checked")
        };
        let (v, _) = integrate_refined(
            &f,
            0.0,
            self.u_max(),
            self.spec.panel_width(x),
            &self.rule,
            self.spec.tolerance,
            12,
        )?;
        Ok(2.0 * v)
    }

    /// f_n(x) by direct 2-D tensor quadrature of the double integral.
    pub fn f_n_direct(&self, x: f64, n: u32) -> Result<f64> {
        if n > MAX_DIRECT_ORDER {
            return Err(Error::capability(format!(
                "direct tensor route capped at n = {MAX_DIRECT_ORDER}, got {n}"
            )));
        }
        let kernel = |t: f64| phi(&self.descriptor, t);
        self.f_n_direct_with(&kernel, x, n)
    }

    /// Tensor route against an arbitrary even kernel closure (test hook for
    /// degenerate kernels).
    pub fn f_n_direct_with<K: Fn(f64) -> f64 + Sync>(
        &self,
        kernel: &K,
        x: f64,
        n: u32,
    ) -> Result<f64> {
        // Folding the four quadrants of the plane onto [0,T]^2:
        // f = 2 int int kernel(s) kernel(t) [cos((s+t)x)(s-t)^(2n)
        //                                  + cos((s-t)x)(s+t)^(2n)] ds dt
        let p2n = 2 * n as i32;
        let mut width = self.spec.panel_width(x);
        let mut prev: Option<f64> = None;
        for _ in 0..5 {
            let (pts, wts) = self.line_nodes(width);
            let kv: Vec<f64> = pts.iter().map(|&t| kernel(t)).collect();
            let mut total = 0.0;
            for i in 0..pts.len() {
                if kv[i] == 0.0 {
                    continue;
                }
                let s = pts[i];
                let mut row = 0.0;
                for j in 0..pts.len() {
                    if kv[j] == 0.0 {
                        continue;
                    }
                    let t = pts[j];
                    row += wts[j]
                        * kv[j]
                        * (((s + t) * x).cos() * (s - t).powi(p2n)
                            + ((s - t) * x).cos() * (s + t).powi(p2n));
                }
                total += wts[i] * kv[i] * row;
            }
            let value = 2.0 * total;
            if let Some(p) = prev {
                if (value - p).abs() < self.spec.tolerance.max(1e-8) {
                    return Ok(value);
                }
            }
            prev = Some(value);
            width *= 0.5;
        }
        Err(Error::Accuracy {
            message: "tensor quadrature did not converge".into(),
            best_estimate: prev.unwrap_or(0.0),
        })
    }

    /// Composite Gauss nodes and weights over [0, T] at the given width.
    fn line_nodes(&self, width: f64) -> (Vec<f64>, Vec<f64>) {
        let n_panels = (self.t_max / width).ceil().max(1.0) as usize;
        let w = self.t_max / n_panels as f64;
        let mut pts = Vec::with_capacity(n_panels * self.rule.nodes.len());
        let mut wts = Vec::with_capacity(pts.capacity());
        for p in 0..n_panels {
            let mid = (p as f64 + 0.5) * w;
            let half = 0.5 * w;
            for (x, wt) in self.rule.nodes.iter().zip(&self.rule.weights) {
                pts.push(mid + half * x);
                wts.push(half * wt);
            }
        }
        (pts, wts)
    }

    /// f_n(x) by the binomial-expansion route:
    /// (-1)^n sum_k (-1)^k C(2n, k) F^(k)(x) F^(2n-k)(x).
    /// For n = 1 this is the Laguerre combination 2(F'^2 - F F'').
    pub fn f_n_oracle(&self, x: f64, n: u32) -> Result<f64> {
        if n > MAX_DIRECT_ORDER {
            return Err(Error::capability(format!(
                "oracle route capped at n = {MAX_DIRECT_ORDER}, got {n}"
            )));
        }
        let derivs: Vec<f64> = (0..=2 * n)
            .map(|k| moment_transform(&self.descriptor, x, k, &self.spec))
            .collect::<Result<_>>()?;
        let mut sum = 0.0;
        let mut binom = 1.0f64;
        for k in 0..=2 * n {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * binom * derivs[k as usize] * derivs[(2 * n - k) as usize];
            binom *= (2 * n - k) as f64 / (k + 1) as f64;
        }
        let outer = if n % 2 == 0 { 1.0 } else { -1.0 };
        Ok(outer * sum)
    }
}

/// f_n(x) by all applicable routes.
#[derive(Debug, Clone)]
pub struct JensenReport {
    pub n: u32,
    pub x: f64,
    pub f_direct: Option<f64>,
    pub f_reduced: f64,
    pub f_oracle: Option<f64>,
}

pub fn routes(ctx: &JensenContext, x: f64, n: u32) -> Result<JensenReport> {
    let f_reduced = ctx.f_n_reduced(x, n)?;
    let f_direct = if n <= MAX_DIRECT_ORDER { Some(ctx.f_n_direct(x, n)?) } else { None };
    let f_oracle = if n <= MAX_DIRECT_ORDER { Some(ctx.f_n_oracle(x, n)?) } else { None };
    Ok(JensenReport { n, x, f_direct, f_reduced, f_oracle })
}

/// Grid sweep of f_n_reduced with per-order minima.
#[derive(Debug, Clone)]
pub struct PositivityCertificate {
    pub grid: Vec<f64>,
    pub rows: Vec<(u32, f64, f64)>, // (n, x, f_n_reduced)
    pub min_per_order: Vec<(u32, f64, f64)>, // (n, min, argmin)
    /// Values below -10 * tolerance.
    pub flagged: Vec<(u32, f64, f64)>,
}

pub fn positivity_certificate(
    ctx: &JensenContext,
    n_max: u32,
    x_grid: &[f64],
) -> Result<PositivityCertificate> {
    if n_max > MAX_DIRECT_ORDER {
        return Err(Error::capability(format!(
            "certificate order capped at {MAX_DIRECT_ORDER}, got {n_max}"
        )));
    }
    let tasks: Vec<(u32, f64)> =
        (0..=n_max).flat_map(|n| x_grid.iter().map(move |&x| (n, x))).collect();
    let rows: Vec<(u32, f64, f64)> = tasks
        .par_iter()
        .map(|&(n, x)| ctx.f_n_reduced(x, n).map(|f| (n, x, f)))
        .collect::<Result<_>>()?;
    let mut min_per_order = Vec::new();
    for n in 0..=n_max {
        let mut best = (f64::INFINITY, f64::NAN);
        for &(rn, x, f) in &rows {
            if rn == n && f < best.0 {
                best = (f, x);
            }
        }
        if best.0.is_finite() {
            min_per_order.push((n, best.0, best.1));
        }
    }
    let threshold = -10.0 * ctx.spec().tolerance;
    let flagged = rows.iter().copied().filter(|&(_, _, f)| f < threshold).collect();
    Ok(PositivityCertificate { grid: x_grid.to_vec(), rows, min_per_order, flagged })
}

/// One rung of the surrogate ladder.
#[derive(Debug, Clone)]
pub struct SurrogatePoint {
    /// N; the polynomial degree is 4N.
    pub n_poly: u32,
    /// Oscillatory leg over u in [0, 1/x] (theta substitution).
    pub i1: f64,
    /// The majorant (a(x)/x) int |c_{4N}(cos theta)| sin theta d theta —
    /// the quantity carrying the N^(-beta-1/2) decay rate.
    pub i1_envelope: f64,
    /// Tail leg over [1/x, U]; may exceed f64 range, hence ln and saturated
    /// f64 forms.
    pub i2: f64,
    pub i2_ln: f64,
    /// Full-range integral computed by an independent panelization.
    pub g_n: f64,
    pub g_n_ln: f64,
    /// |g - (I1 + I2)| / max(1, |g|).
    pub split_residual: f64,
    pub g_n_positive: bool,
}

/// Surrogate ladder diagnostics at fixed (x, n, beta).
#[derive(Debug, Clone)]
pub struct SurrogateReport {
    pub beta: f64,
    pub x: f64,
    pub n: u32,
    /// int_{1/x}^U h_n(u) du, the positivity floor for I2.
    pub i2_lower_bound: f64,
    /// sup over the theta grid of the inner moment (finite by decay).
    pub a_sup: f64,
    pub points: Vec<SurrogatePoint>,
    /// log-log slope of the I1 majorant vs N.
    pub fitted_slope: f64,
    /// log-log slope of raw |I1| vs N (decays at least as fast; reported,
    /// not contracted).
    pub fitted_slope_raw: f64,
    /// Least tested N from which on |I1| <= (1/2) i2_lower_bound.
    pub n0_empirical: Option<u32>,
}

const MAX_SURROGATE_N: u32 = 512;

fn check_surrogate_params(x: f64, beta: f64, big_n: u32) -> Result<()> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("surrogate requires x > 0, got {x}")));
    }
    if !(beta > -0.5 && beta < 0.5) {
        return Err(Error::domain(format!("beta must lie in (-1/2, 1/2), got {beta}")));
    }
    if big_n == 0 || big_n > MAX_SURROGATE_N {
        return Err(Error::capability(format!(
            "N must lie in [1, {MAX_SURROGATE_N}], got {big_n}"
        )));
    }
    Ok(())
}

/// Extended-exponent composite Gauss quadrature with one-shot halving check.
fn integrate_ext<F: Fn(f64) -> ExtF>(
    f: &F,
    a: f64,
    b: f64,
    initial_width: f64,
    rule: &GaussRule,
) -> ExtF {
    let run = |width: f64| -> ExtF {
        let n_panels = ((b - a) / width).ceil().max(1.0) as usize;
        let w = (b - a) / n_panels as f64;
        let mut total = ExtF::ZERO;
        for p in 0..n_panels {
            let mid = a + (p as f64 + 0.5) * w;
            let half = 0.5 * w;
            let mut panel = ExtF::ZERO;
            for (x, wt) in rule.nodes.iter().zip(&rule.weights) {
                panel = panel.add(f(mid + half * x).mul_f64(*wt));
            }
            total = total.add(panel.mul_f64(half));
        }
        total
    };
    let mut width = initial_width;
    let mut prev = run(width);
    for _ in 0..6 {
        width *= 0.5;
        let next = run(width);
        let diff = next.sub(prev);
        if diff.is_zero() || diff.abs_ratio(&next) <= 1e-10 {
            return next;
        }
        prev = next;
    }
    prev
}

impl JensenContext {
    /// int_{1/x}^U h_n(u) du — the Eq-independent positivity floor of I2.
    pub fn i2_lower_bound(&self, x: f64, n: u32) -> Result<f64> {
        let lo = 1.0 / x;
        let hi = self.u_max();
        if lo >= hi {
            return Ok(0.0);
        }
        let f = |u: f64| self.convolution_moment(u, n).expect("checked");
        let (v, _) = integrate_refined(&f, lo, hi, 0.125, &self.rule, 1e-12, 10)?;
        Ok(v)
    }

    /// sup of h_n over [0, 1/x], probed on a uniform grid.
    pub fn inner_moment_sup(&self, x: f64, n: u32) -> Result<f64> {
        let hi = (1.0 / x).min(self.u_max());
        let mut sup = 0.0f64;
        for i in 0..=128 {
            let u = hi * i as f64 / 128.0;
            sup = sup.max(self.convolution_moment(u, n)?);
        }
        Ok(sup)
    }

    /// One surrogate rung: I1 by the theta substitution, I2 by a cosh
    /// substitution in extended arithmetic, and the full-range integral by a
    /// third, direct panelization for the split identity check.
    pub fn surrogate_point(
        &self,
        x: f64,
        n: u32,
        beta: f64,
        big_n: u32,
        a_sup: f64,
    ) -> Result<SurrogatePoint> {
        check_surrogate_params(x, beta, big_n)?;
        let lambda = beta + 0.5;
        let deg = 4 * big_n;
        let degf = deg as f64;
        let u_hi = self.u_max();

        // I1 = (1/x) int_0^(pi/2) c_deg(cos t) sin t h_n(cos t / x) dt
        let i1_f = |theta: f64| -> f64 {
            let ct = theta.cos();
            gegenbauer_norm(deg, lambda, ct).expect("|cos| <= 1")
                * theta.sin()
                * self.convolution_moment(ct / x, n).expect("u >= 0")
        };
        let w_theta = (std::f64::consts::PI / degf).min(0.1);
        let (i1_raw, _) = integrate_refined(
            &i1_f,
            0.0,
            std::f64::consts::FRAC_PI_2,
            w_theta,
            &self.rule,
            1e-12,
            8,
        )?;
        let i1 = i1_raw / x;

        // majorant integral int |c_deg(cos t)| sin t dt: kinked at the
        // polynomial roots, so a fixed fine panelization instead of halving
        let env_f = |theta: f64| -> f64 {
            gegenbauer_norm(deg, lambda, theta.cos()).expect("|cos| <= 1").abs() * theta.sin()
        };
        let env_int = crate::transform::integrate_panels(
            &env_f,
            0.0,
            std::f64::consts::FRAC_PI_2,
            (std::f64::consts::PI / (2.0 * degf)).min(0.05),
            &self.rule,
        );
        let i1_envelope = a_sup / x * env_int;

        // I2 via u = cosh(phi)/x: log-linear growth, extended exponents
        let i2_ext = if 1.0 / x >= u_hi {
            ExtF::ZERO
        } else {
            let phi_max = (u_hi * x).acosh();
            let f = |p: f64| -> ExtF {
                let u = p.cosh() / x;
                let h = self.convolution_moment(u, n).expect("u >= 0");
                gegenbauer_norm_ext(deg, lambda, p.cosh())
                    .expect("lambda > 0")
                    .mul_f64(h * p.sinh() / x)
            };
            integrate_ext(&f, 0.0, phi_max, (6.0 / degf).min(0.05), &self.rule)
        };

        // full-range integral by direct u panels, independent of the split
        let g_ext = {
            let f = |u: f64| -> ExtF {
                let h = self.convolution_moment(u, n).expect("u >= 0");
                if h == 0.0 {
                    return ExtF::ZERO;
                }
                gegenbauer_norm_ext(deg, lambda, u * x).expect("lambda > 0").mul_f64(h)
            };
            let w_u = (std::f64::consts::PI / (2.0 * degf * x)).min(0.05);
            integrate_ext(&f, 0.0, u_hi, w_u, &self.rule)
        };

        let split_sum = ExtF::new(i1).add(i2_ext);
        let diff = g_ext.sub(split_sum);
        let split_residual = if g_ext.ln_abs() > 0.0 {
            diff.abs_ratio(&g_ext)
        } else {
            diff.to_f64().abs()
        };

        Ok(SurrogatePoint {
            n_poly: big_n,
            i1,
            i1_envelope,
            i2: i2_ext.to_f64(),
            i2_ln: i2_ext.ln_abs(),
            g_n: g_ext.to_f64(),
            g_n_ln: g_ext.ln_abs(),
            split_residual,
            g_n_positive: g_ext.sign() > 0.0,
        })
    }

    /// Run the surrogate over a ladder of N values and fit the decay
    /// diagnostics.
    pub fn surrogate_ladder(
        &self,
        x: f64,
        n: u32,
        beta: f64,
        ladder: &[u32],
    ) -> Result<SurrogateReport> {
        if ladder.is_empty() {
            return Err(Error::domain("surrogate ladder must be non-empty"));
        }
        for &big_n in ladder {
            check_surrogate_params(x, beta, big_n)?;
        }
        let i2_lower_bound = self.i2_lower_bound(x, n)?;
        let a_sup = self.inner_moment_sup(x, n)?;
        let points: Vec<SurrogatePoint> = ladder
            .iter()
            .map(|&big_n| self.surrogate_point(x, n, beta, big_n, a_sup))
            .collect::<Result<_>>()?;
        let fitted_slope = loglog_slope(
            &points.iter().map(|p| (p.n_poly as f64, p.i1_envelope.abs())).collect::<Vec<_>>(),
        );
        let fitted_slope_raw =
            loglog_slope(&points.iter().map(|p| (p.n_poly as f64, p.i1.abs())).collect::<Vec<_>>());
        // least tested N from which on |I1| stays within half the bound
        let mut n0_empirical = None;
        for (i, p) in points.iter().enumerate() {
            if points[i..].iter().all(|q| q.i1.abs() <= 0.5 * i2_lower_bound) {
                n0_empirical = Some(p.n_poly);
                break;
            }
        }
        Ok(SurrogateReport {
            beta,
            x,
            n,
            i2_lower_bound,
            a_sup,
            points,
            fitted_slope,
            fitted_slope_raw,
            n0_empirical,
        })
    }

    /// The scaled variant: argument u x / (4N) with the Gamma/(2N)^(beta-1/2)
    /// prefactor; by the uniform polynomial-to-cosine limit it converges to
    /// f_n_reduced(x)/2 as N grows.
    pub fn surrogate_scaled(&self, x: f64, n: u32, beta: f64, big_n: u32) -> Result<f64> {
        check_surrogate_params(x, beta, big_n)?;
        let lambda = beta + 0.5;
        let deg = 4 * big_n;
        let degf = deg as f64;
        let prefactor = crate::specfun::gamma(lambda)? * (2.0 * big_n as f64).powf(0.5 - beta);
        let f = |u: f64| -> f64 {
            crate::specfun::gegenbauer_c(deg, lambda, u * x / degf).expect("small argument")
                * self.convolution_moment(u, n).expect("u >= 0")
        };
        let (v, _) = integrate_refined(
            &f,
            0.0,
            self.u_max(),
            self.spec.panel_width(x),
            &self.rule,
            1e-12,
            10,
        )?;
        Ok(prefactor * v)
    }
}

fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> =
        points.iter().filter(|(_, y)| *y > 0.0).map(|&(x, y)| (x.ln(), y.ln())).collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> JensenContext {
        JensenContext::new(KernelDescriptor::riemann(), QuadratureSpec::default())
    }

    const XI_AT_0: f64 = 0.497_120_778_188_314_1;

    #[test]
    fn moment_at_origin_is_square_integral() {
        let c = ctx();
        // h_0(0) = int kernel(v/2)^2 dv > 0
        let h = c.convolution_moment(0.0, 0).unwrap();
        assert!(h > 0.0);
        // beyond the decay range everything underflows
        assert_eq!(c.convolution_moment(2.0 * c.u_max(), 1).unwrap(), 0.0);
        assert!(c.convolution_moment(0.5, 7).is_err());
    }

    #[test]
    fn moment_self_refines() {
        let c = ctx();
        let a = c.convolution_moment(0.5, 1).unwrap();
        // 10x finer reference
        let fine = {
            let f = |v: f64| {
                let k = KernelDescriptor::riemann();
                phi(&k, (0.5 + v) / 2.0) * phi(&k, (0.5 - v) / 2.0) * v * v
            };
            crate::transform::integrate_panels(
                &f,
                0.0,
                c.u_max() - 0.5,
                0.01,
                &gauss_legendre(16),
            )
        };
        assert!((a - fine).abs() < 1e-9 * fine.abs().max(1e-12), "{a} vs {fine}");
    }

    #[test]
    fn f0_is_squared_transform() {
        let c = ctx();
        let f0 = c.f_n_reduced(0.0, 0).unwrap();
        let want = 4.0 * XI_AT_0 * XI_AT_0;
        assert!((f0 - want).abs() < 1e-5, "{f0} vs {want}");
        // symmetric by construction
        assert_eq!(c.f_n_reduced(-1.3, 2).unwrap(), c.f_n_reduced(1.3, 2).unwrap());
    }

    #[test]
    fn f0_vanishes_at_first_zero() {
        let c = ctx();
        let f = c.f_n_reduced(14.134_725_1, 0).unwrap();
        assert!(f.abs() < 1e-6, "got {f}");
    }

    #[test]
    fn route_agreement_low_orders() {
        let c = ctx();
        for &(n, x) in &[(0u32, 0.0f64), (1, 1.0), (2, 5.0)] {
            let r = routes(&c, x, n).unwrap();
            let d = r.f_direct.unwrap();
            let o = r.f_oracle.unwrap();
            assert!((d - r.f_reduced).abs() <= 1e-6, "n={n} x={x}: {d} vs {}", r.f_reduced);
            assert!((r.f_reduced - o).abs() <= 1e-5, "n={n} x={x}: {} vs {o}", r.f_reduced);
        }
    }

    #[test]
    fn oracle_is_laguerre_combination_at_origin() {
        let c = ctx();
        // F'(0) = 0, so f_1(0) = -2 F(0) F''(0)
        let spec = QuadratureSpec::default();
        let k = KernelDescriptor::riemann();
        let f0 = moment_transform(&k, 0.0, 0, &spec).unwrap();
        let f2 = moment_transform(&k, 0.0, 2, &spec).unwrap();
        let o = c.f_n_oracle(0.0, 1).unwrap();
        assert!((o - (-2.0 * f0 * f2)).abs() < 1e-8, "{o} vs {}", -2.0 * f0 * f2);
        assert!(o > 0.0);
    }

    #[test]
    fn degenerate_kernel_gives_zero() {
        let c = ctx();
        let zero = |_: f64| 0.0;
        assert_eq!(c.f_n_direct_with(&zero, 1.0, 1).unwrap(), 0.0);
    }

    #[test]
    fn direct_route_even_in_x() {
        let c = ctx();
        let plus = c.f_n_direct(2.0, 1).unwrap();
        let minus = c.f_n_direct(-2.0, 1).unwrap();
        assert!((plus - minus).abs() <= 1e-9);
    }

    #[test]
    fn certificate_shapes() {
        let c = ctx();
        let grid: Vec<f64> = (0..=6).map(|i| i as f64 * 0.5).collect();
        let cert = positivity_certificate(&c, 1, &grid).unwrap();
        assert_eq!(cert.rows.len(), 2 * grid.len());
        assert_eq!(cert.min_per_order.len(), 2);
        // n = 0 rows are squares of the transform
        for &(n, x, f) in &cert.rows {
            if n == 0 {
                assert!(f >= -1e-8, "f_0({x}) = {f}");
            }
        }
        let empty = positivity_certificate(&c, 2, &[]).unwrap();
        assert!(empty.rows.is_empty());
    }

    #[test]
    fn surrogate_split_identity_small_n() {
        let c = ctx();
        let lb = c.i2_lower_bound(1.0, 1).unwrap();
        let sup = c.inner_moment_sup(1.0, 1).unwrap();
        assert!(lb > 0.0 && sup > 0.0);
        let p = c.surrogate_point(1.0, 1, 0.0, 8, sup).unwrap();
        assert!(p.split_residual <= 1e-8, "split residual {:e}", p.split_residual);
        assert!(p.i2_ln >= lb.ln() - 1e-6, "I2 below its positivity floor");
        assert!(p.g_n_positive);
    }

    #[test]
    fn surrogate_parameter_guards() {
        let c = ctx();
        assert!(c.surrogate_point(-1.0, 1, 0.0, 8, 0.0).is_err());
        assert!(c.surrogate_point(1.0, 1, 0.7, 8, 0.0).is_err());
        assert!(c.surrogate_point(1.0, 1, 0.0, 1000, 0.0).is_err());
        assert!(c.surrogate_ladder(1.0, 1, 0.0, &[]).is_err());
    }

    #[test]
    fn scaled_mode_tracks_reduced_route() {
        let c = ctx();
        // prefactor * integral -> f_n_reduced(x)/2 as N grows
        let target = c.f_n_reduced(1.0, 1).unwrap() / 2.0;
        let coarse = c.surrogate_scaled(1.0, 1, 0.0, 16).unwrap();
        let fine = c.surrogate_scaled(1.0, 1, 0.0, 64).unwrap();
        assert!(
            (fine - target).abs() < (coarse - target).abs() + 1e-12,
            "no improvement: {coarse} -> {fine} vs {target}"
        );
    }
}
