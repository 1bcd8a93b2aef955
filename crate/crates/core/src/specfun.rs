//! Core special functions: Gamma, shifted factorials, Jacobi and
//! ultraspherical polynomials, Bessel J and I.
//!
//! Polynomials are evaluated by three-term recurrences; the explicit
//! hypergeometric sums are kept as oracles (`jacobi_p_series`) for moderate
//! degree. Bessel functions are power-series only, guarded to the moderate
//! argument range the rest of the crate needs.

use crate::extf::ExtF;
use crate::{Error, Result};

/// Lanczos coefficients, g = 7, 9 terms.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// sin(pi x) with argument reduction, exact at integers and half-integers.
fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    (std::f64::consts::PI * r).sin()
}

fn lanczos_series(z: f64) -> f64 {
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    a
}

/// ln Gamma(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    if x < 0.5 {
        // reflection keeps the Lanczos argument away from 0
        let lg = ln_gamma(1.0 - x)?;
        return Ok((std::f64::consts::PI / sin_pi(x)).ln() - lg);
    }
    let z = x - 1.0;
    let base = z + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * base.ln() - base
        + lanczos_series(z).ln())
}

/// Gamma(x) for real non-pole x.
pub fn gamma(x: f64) -> Result<f64> {
    if is_nonpositive_integer(x) {
        return Err(Error::domain(format!("gamma pole at x = {x}")));
    }
    if x < 0.5 {
        // reflection formula
        let g = gamma(1.0 - x)?;
        return Ok(std::f64::consts::PI / (sin_pi(x) * g));
    }
    if x > 140.0 {
        // direct Lanczos would overflow the base^(z+1/2) factor
        return Ok(ln_gamma(x)?.exp());
    }
    let z = x - 1.0;
    let base = z + LANCZOS_G + 0.5;
    Ok((2.0 * std::f64::consts::PI).sqrt()
        * base.powf(z + 0.5)
        * (-base).exp()
        * lanczos_series(z))
}

/// Shifted factorial (a)_k = Gamma(a+k)/Gamma(a), integer k of either sign.
///
/// Computed by direct product: exact structure for integer k and immune to
/// the cancellation a Gamma-ratio suffers at large k.
pub fn pochhammer(a: f64, k: i64) -> Result<f64> {
    if k >= 0 {
        let mut p = 1.0;
        for j in 0..k {
            p *= a + j as f64;
        }
        Ok(p)
    } else {
        // (a)_{-m} = 1 / ((a-1)(a-2)...(a-m))
        let mut q = 1.0;
        for j in 1..=(-k) {
            let factor = a - j as f64;
            if factor == 0.0 {
                return Err(Error::domain(format!(
                    "pochhammer({a}, {k}) undefined: pole in the numerator"
                )));
            }
            q *= factor;
        }
        Ok(1.0 / q)
    }
}

/// ln |(a)_k| for a > 0, k >= 0, via log-Gamma. Used by the bound checks
/// where the product itself would overflow.
pub fn ln_pochhammer(a: f64, k: i64) -> Result<f64> {
    if k < 0 {
        return Err(Error::capability("ln_pochhammer requires k >= 0"));
    }
    Ok(ln_gamma(a + k as f64)? - ln_gamma(a)?)
}

pub fn factorial(n: u64) -> f64 {
    let mut p = 1.0;
    for j in 2..=n {
        p *= j as f64;
    }
    p
}

fn check_jacobi_params(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha > -1.0) || !(beta > -1.0) {
        return Err(Error::domain(format!(
            "Jacobi parameters must exceed -1, got alpha={alpha}, beta={beta}"
        )));
    }
    Ok(())
}

/// Jacobi polynomial P_n^(alpha,beta)(x) by the three-term recurrence.
pub fn jacobi_p(n: u32, alpha: f64, beta: f64, x: f64) -> Result<f64> {
    check_jacobi_params(alpha, beta)?;
    if n == 0 {
        return Ok(1.0);
    }
    let mut pm1 = 1.0;
    let mut p = (alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) / 2.0;
    for m in 2..=n {
        let m = m as f64;
        let c = 2.0 * m + alpha + beta;
        let a1 = 2.0 * m * (m + alpha + beta) * (c - 2.0);
        let a2 = (c - 1.0) * (alpha * alpha - beta * beta);
        let a3 = (c - 2.0) * (c - 1.0) * c;
        let a4 = 2.0 * (m + alpha - 1.0) * (m + beta - 1.0) * c;
        let next = ((a2 + a3 * x) * p - a4 * pm1) / a1;
        pm1 = p;
        p = next;
    }
    Ok(p)
}

/// Jacobi polynomial by term-by-term evaluation of the explicit
/// hypergeometric sum, with compensated summation. Oracle route.
pub fn jacobi_p_series(n: u32, alpha: f64, beta: f64, x: f64) -> Result<f64> {
    check_jacobi_params(alpha, beta)?;
    if n > 60 {
        return Err(Error::capability(format!(
            "jacobi_p_series capped at n = 60 (factorial growth), got n = {n}"
        )));
    }
    let nf = n as f64;
    let y = (1.0 - x) / 2.0;
    // term_k = (-n)_k (n+alpha+beta+1)_k / ((alpha+1)_k k!) * y^k, built iteratively
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut comp = 0.0;
    for k in 0..n {
        let kf = k as f64;
        term *= (kf - nf) * (nf + alpha + beta + 1.0 + kf) * y
            / ((alpha + 1.0 + kf) * (kf + 1.0));
        // Kahan step
        let yv = term - comp;
        let t = sum + yv;
        comp = (t - sum) - yv;
        sum = t;
    }
    Ok(sum * pochhammer(alpha + 1.0, n as i64)? / factorial(n as u64))
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0) {
        return Err(Error::domain(format!("ultraspherical parameter must be > 0, got {lambda}")));
    }
    Ok(())
}

/// Ultraspherical polynomial C_n^(lambda)(x) by recurrence.
pub fn gegenbauer_c(n: u32, lambda: f64, x: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if n == 0 {
        return Ok(1.0);
    }
    let mut cm1 = 1.0;
    let mut c = 2.0 * lambda * x;
    for m in 2..=n {
        let m = m as f64;
        let next = (2.0 * (m + lambda - 1.0) * x * c - (m + 2.0 * lambda - 2.0) * cm1) / m;
        cm1 = c;
        c = next;
    }
    if !c.is_finite() {
        return Err(Error::range(format!(
            "gegenbauer_c overflowed at n = {n}; use the normalized variant gegenbauer_norm"
        )));
    }
    Ok(c)
}

/// Normalized ultraspherical polynomial c_n^(lambda)(x) = C_n(x)/C_n(1),
/// by a recurrence on the normalized sequence. Stable to n ~ 1e4 for
/// |x| <= 1; overflows only when the value itself does.
pub fn gegenbauer_norm(n: u32, lambda: f64, x: f64) -> Result<f64> {
    let v = gegenbauer_norm_ext(n, lambda, x)?;
    let out = v.to_f64();
    if out.is_infinite() {
        return Err(Error::range(format!(
            "normalized ultraspherical value exceeds f64 range at n = {n}, x = {x}"
        )));
    }
    Ok(out)
}

/// Extended-exponent normalized ultraspherical value; never overflows.
///
/// Recurrence: c_n = (2(n+lambda-1) x c_{n-1} - (n-1) c_{n-2}) / (n + 2 lambda - 1).
pub fn gegenbauer_norm_ext(n: u32, lambda: f64, x: f64) -> Result<ExtF> {
    check_lambda(lambda)?;
    if n == 0 {
        return Ok(ExtF::new(1.0));
    }
    let mut cm1 = ExtF::new(1.0);
    let mut c = ExtF::new(x);
    for m in 2..=n {
        let m = m as f64;
        let next = c
            .mul_f64(2.0 * (m + lambda - 1.0) * x)
            .sub(cm1.mul_f64(m - 1.0))
            .div_f64(m + 2.0 * lambda - 1.0);
        cm1 = c;
        c = next;
    }
    Ok(c)
}

const BESSEL_ARG_GUARD: f64 = 60.0;

/// Unevaluated double-double value hi + lo, |lo| <= ulp(hi)/2. The Bessel
/// power series alternates with terms up to ~e^|x| while the sum stays O(1),
/// so plain f64 accumulation loses ~|x|/ln(10) digits; double-double keeps
/// the full f64 result accurate across the guarded argument range.
#[derive(Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> Dd {
    let hi = a + b;
    let bb = hi - a;
    let lo = (a - (hi - bb)) + (b - bb);
    Dd { hi, lo }
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let hi = a + b;
    let lo = b - (hi - a);
    Dd { hi, lo }
}

fn two_prod(a: f64, b: f64) -> Dd {
    let hi = a * b;
    let lo = a.mul_add(b, -hi);
    Dd { hi, lo }
}

impl Dd {
    fn from_f64(a: f64) -> Self {
        Dd { hi: a, lo: 0.0 }
    }

    fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        let t = two_sum(self.lo, o.lo);
        let mid = quick_two_sum(s.hi, s.lo + t.hi);
        quick_two_sum(mid.hi, mid.lo + t.lo)
    }

    fn mul(self, o: Dd) -> Dd {
        let p = two_prod(self.hi, o.hi);
        quick_two_sum(p.hi, p.lo + self.hi * o.lo + self.lo * o.hi)
    }

    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.add(o.mul(Dd::from_f64(-q1)));
        let q2 = r.hi / o.hi;
        quick_two_sum(q1, q2)
    }

    fn scale(self, a: f64) -> Dd {
        self.mul(Dd::from_f64(a))
    }

    fn abs_hi(self) -> f64 {
        self.hi.abs()
    }
}

fn bessel_series(alpha: f64, x: f64, signed: bool) -> Result<f64> {
    if !(alpha > -1.0) {
        return Err(Error::domain(format!("Bessel order must exceed -1, got {alpha}")));
    }
    if x.abs() > BESSEL_ARG_GUARD {
        return Err(Error::capability(format!(
            "Bessel argument |x| <= {BESSEL_ARG_GUARD} (power-series regime), got {x}"
        )));
    }
    if x < 0.0 {
        return Err(Error::domain(format!(
            "Bessel of negative argument with real order is not defined here, got x = {x}"
        )));
    }
    if x == 0.0 {
        return if alpha > 0.0 {
            Ok(0.0)
        } else if alpha == 0.0 {
            Ok(1.0)
        } else {
            Err(Error::domain("Bessel at x = 0 diverges for negative order"))
        };
    }
    // (x/2)^alpha * sum_k s^k (x/2)^{2k} / (k! Gamma(alpha+k+1)),
    // accumulated in double-double to survive the alternating-series
    // cancellation (the overall (x/2)^alpha / Gamma factor is applied last,
    // so its f64 rounding stays a relative error of the final value)
    let q = x / 2.0;
    let q2 = two_prod(q, q);
    let sign = if signed { -1.0 } else { 1.0 };
    let mut term = Dd::from_f64(1.0);
    let mut sum = term;
    let mut max_abs = 1.0f64;
    for k in 1..400 {
        let kf = k as f64;
        let denom = two_prod(kf, alpha + kf);
        term = term.mul(q2).div(denom).scale(sign);
        sum = sum.add(term);
        max_abs = max_abs.max(term.abs_hi());
        if term.abs_hi() < 1e-34 * max_abs {
            break;
        }
    }
    let factor = q.powf(alpha) / gamma(alpha + 1.0)?;
    Ok((sum.hi + sum.lo) * factor)
}

/// Bessel function of the first kind J_alpha(x), power series.
pub fn bessel_j(alpha: f64, x: f64) -> Result<f64> {
    bessel_series(alpha, x, true)
}

/// Modified Bessel function I_alpha(x), power series.
pub fn bessel_i(alpha: f64, x: f64) -> Result<f64> {
    bessel_series(alpha, x, false)
}

/// (z/2)^(-alpha) J_alpha(z) — entire in z, finite at z = 0 where it equals
/// 1/Gamma(alpha+1). The scaled form the polynomial limit checks compare to.
pub fn bessel_j_scaled(alpha: f64, z: f64) -> Result<f64> {
    if !(alpha > -1.0) {
        return Err(Error::domain(format!("Bessel order must exceed -1, got {alpha}")));
    }
    if z.abs() > BESSEL_ARG_GUARD {
        return Err(Error::capability(format!(
            "Bessel argument |z| <= {BESSEL_ARG_GUARD}, got {z}"
        )));
    }
    let q2 = two_prod(z / 2.0, z / 2.0);
    let mut term = Dd::from_f64(1.0);
    let mut sum = term;
    let mut max_abs = 1.0f64;
    for k in 1..400 {
        let kf = k as f64;
        let denom = two_prod(kf, alpha + kf);
        term = term.mul(q2).div(denom).scale(-1.0);
        sum = sum.add(term);
        max_abs = max_abs.max(term.abs_hi());
        if term.abs_hi() < 1e-34 * max_abs {
            break;
        }
    }
    Ok((sum.hi + sum.lo) / gamma(alpha + 1.0)?)
}

/// |LHS - RHS| of the quadratic transformation linking C_{2n}^(beta+1/2)(x)
/// to P_n^(-1/2,beta)(1-2x^2), both sides by independent routes.
pub fn quadratic_transform_residual(n: u32, beta: f64, x: f64) -> Result<f64> {
    if !(beta > -1.0 && beta < 1.0) {
        return Err(Error::domain(format!("beta must lie in (-1, 1), got {beta}")));
    }
    if x.abs() > 1.0 {
        return Err(Error::domain(format!("|x| <= 1 required, got {x}")));
    }
    if n > 30 {
        return Err(Error::capability(format!("degree capped at n = 30, got {n}")));
    }
    let lhs = gegenbauer_c(2 * n, beta + 0.5, x)?;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let coeff = sign * factorial(n as u64) / pochhammer(beta + 1.0, n as i64)?
        * pochhammer(2.0 * beta + 1.0, 2 * n as i64)?
        / factorial(2 * n as u64);
    let rhs = coeff * jacobi_p(n, -0.5, beta, 1.0 - 2.0 * x * x)?;
    Ok((lhs - rhs).abs())
}
