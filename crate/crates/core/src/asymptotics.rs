//! Empirical verification of the polynomial-to-Bessel limits and the growth
//! bounds, along doubling degree ladders.
//!
//! Limits are checked by requiring the sup residual over a compact set to
//! decrease at every ladder doubling. Bounds are checked by measuring the
//! defining ratio and requiring it to stay stable (bounded) along the
//! ladder; the constants involved are measured, never assumed.

use crate::specfun::{
    bessel_i, bessel_j_scaled, gamma, gegenbauer_c, jacobi_p, ln_gamma,
    ln_pochhammer,
};
use crate::{Error, Result};

/// Outcome of one ladder check.
#[derive(Debug, Clone)]
pub struct AsymptoticsReport {
    pub check_id: String,
    pub n_ladder: Vec<u32>,
    /// Per-rung sup residual (limit checks) or measured constant (bounds).
    pub sup_residual: Vec<f64>,
    /// Max over the tested ladder of the defining ratio.
    pub empirical_constant: f64,
    pub pass: bool,
}

const LADDER_CAP: u32 = 4096;

fn check_ladder(ladder: &[u32]) -> Result<()> {
    if ladder.is_empty() {
        return Err(Error::domain("degree ladder must be non-empty"));
    }
    if ladder.iter().any(|&n| n == 0 || n > LADDER_CAP) {
        return Err(Error::capability(format!("ladder degrees must lie in [1, {LADDER_CAP}]")));
    }
    if ladder.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("ladder must be strictly increasing"));
    }
    Ok(())
}

/// Scaled Jacobi-to-Bessel limit:
/// n^(-alpha) P_n^(alpha,beta)(1 - z^2/(2n^2)) -> (z/2)^(-alpha) J_alpha(z).
/// Residual must shrink at every ladder doubling.
pub fn bessel_limit_check(
    alpha: f64,
    beta: f64,
    z_set: &[f64],
    n_ladder: &[u32],
) -> Result<AsymptoticsReport> {
    check_ladder(n_ladder)?;
    if z_set.iter().any(|z| z.abs() > 10.0) {
        return Err(Error::domain("compact set restricted to |z| <= 10"));
    }
    let mut sup_residual = Vec::with_capacity(n_ladder.len());
    for &n in n_ladder {
        let nf = n as f64;
        let mut sup = 0.0f64;
        for &z in z_set {
            let lhs = nf.powf(-alpha) * jacobi_p(n, alpha, beta, 1.0 - z * z / (2.0 * nf * nf))?;
            let rhs = bessel_j_scaled(alpha, z)?;
            sup = sup.max((lhs - rhs).abs());
        }
        sup_residual.push(sup);
    }
    let pass = sup_residual.windows(2).all(|w| w[1] < w[0]);
    let empirical_constant = sup_residual.iter().cloned().fold(0.0, f64::max);
    Ok(AsymptoticsReport {
        check_id: format!("jacobi_bessel_limit(alpha={alpha},beta={beta})"),
        n_ladder: n_ladder.to_vec(),
        sup_residual,
        empirical_constant,
        pass,
    })
}

/// Two sub-reports for the scaled ultraspherical-to-cosine limit:
/// (i) sup |(2n)^(1/2-beta) Gamma(beta+1/2) C_{4n}^(beta+1/2)(z/(4n)) - cos z|
///     decreasing along the ladder;
/// (ii) empirical D = max of n^(1/2-beta)|C_{4n}(z/(4n))| / cosh(2|z|),
///      reported with its stability across the top rungs.
pub fn lemma31_check(beta: f64, z_set: &[f64], n_ladder: &[u32]) -> Result<AsymptoticsReport> {
    check_ladder(n_ladder)?;
    if !(beta > -0.5 && beta < 0.5) {
        return Err(Error::domain(format!("beta must lie in (-1/2, 1/2), got {beta}")));
    }
    if z_set.iter().any(|z| z.abs() > 5.0) {
        return Err(Error::domain("compact set restricted to |z| <= 5"));
    }
    let lambda = beta + 0.5;
    let gamma_l = gamma(lambda)?;
    let mut sup_residual = Vec::with_capacity(n_ladder.len());
    let mut d_per_rung = Vec::with_capacity(n_ladder.len());
    for &n in n_ladder {
        let nf = n as f64;
        let deg = 4 * n;
        let mut sup = 0.0f64;
        let mut d_max = 0.0f64;
        for &z in z_set {
            let c = gegenbauer_c(deg, lambda, z / (4.0 * nf))?;
            let scaled = (2.0 * nf).powf(0.5 - beta) * gamma_l * c;
            sup = sup.max((scaled - z.cos()).abs());
            d_max = d_max.max(nf.powf(0.5 - beta) * c.abs() / (2.0 * z.abs()).cosh());
        }
        sup_residual.push(sup);
        d_per_rung.push(d_max);
    }
    let decreasing = sup_residual.windows(2).all(|w| w[1] < w[0]);
    let empirical_constant = d_per_rung.iter().cloned().fold(0.0, f64::max);
    // stability of D across the top two rungs
    let stable = if d_per_rung.len() >= 2 {
        let a = d_per_rung[d_per_rung.len() - 2];
        let b = d_per_rung[d_per_rung.len() - 1];
        (a - b).abs() <= 0.05 * a.abs().max(b.abs())
    } else {
        true
    };
    Ok(AsymptoticsReport {
        check_id: format!("gegenbauer_cosine_limit(beta={beta})"),
        n_ladder: n_ladder.to_vec(),
        sup_residual,
        empirical_constant,
        pass: decreasing && stable,
    })
}

/// Oscillatory-range and endpoint growth of C_n^(lambda)(cos theta):
/// K1 = max over [c/n, pi/2] of |C_n(cos theta)| theta^lambda n^(1-lambda),
/// K2 = max over [0, c/n] of |C_n(cos theta)| n^(1-2 lambda);
/// both must stay bounded (stable) along the ladder.
pub fn growth_bound_check(lambda: f64, n_ladder: &[u32], c: f64) -> Result<AsymptoticsReport> {
    check_ladder(n_ladder)?;
    if !(lambda > 0.0) || !(c > 0.0) {
        return Err(Error::domain("lambda > 0 and c > 0 required"));
    }
    let mut k1_per_rung = Vec::new();
    let mut k2_per_rung = Vec::new();
    for &n in n_ladder {
        let nf = n as f64;
        let theta_split = c / nf;
        // oscillatory range, a few samples per oscillation
        let mut k1 = 0.0f64;
        let samples = (4 * n).max(64);
        for i in 0..=samples {
            let theta = theta_split
                + (std::f64::consts::FRAC_PI_2 - theta_split) * i as f64 / samples as f64;
            if theta <= 0.0 {
                continue;
            }
            let v = gegenbauer_c(n, lambda, theta.cos())?;
            k1 = k1.max(v.abs() * theta.powf(lambda) * nf.powf(1.0 - lambda));
        }
        // endpoint range
        let mut k2 = 0.0f64;
        for i in 0..=32 {
            let theta = theta_split * i as f64 / 32.0;
            let v = gegenbauer_c(n, lambda, theta.cos())?;
            k2 = k2.max(v.abs() * nf.powf(1.0 - 2.0 * lambda));
        }
        k1_per_rung.push(k1);
        k2_per_rung.push(k2);
    }
    let stable = |v: &[f64]| -> bool {
        if v.len() < 2 {
            return true;
        }
        let top = &v[v.len().saturating_sub(3)..];
        let hi = top.iter().cloned().fold(f64::MIN, f64::max);
        let lo = top.iter().cloned().fold(f64::MAX, f64::min);
        hi <= 1.2 * lo
    };
    let pass = stable(&k1_per_rung) && stable(&k2_per_rung);
    let empirical_constant = k1_per_rung.iter().cloned().fold(0.0, f64::max);
    Ok(AsymptoticsReport {
        check_id: format!("ultraspherical_growth(lambda={lambda},c={c})"),
        n_ladder: n_ladder.to_vec(),
        sup_residual: k1_per_rung,
        empirical_constant,
        pass,
    })
}

/// Termwise coefficient bound behind the dominated-convergence step:
/// |n^(-alpha)/(k!(n-k)!) (n+alpha+beta+1)_k (alpha+1)_n / (4^k n^(2k) (alpha+1)_k)|
/// <= C / (k! Gamma(alpha+k+1)); measured C must be stable in n.
pub fn coefficient_bound_check(
    alpha: f64,
    beta: f64,
    n_set: &[u32],
    k_max_per_n: bool,
) -> Result<AsymptoticsReport> {
    if n_set.is_empty() {
        return Err(Error::domain("n_set must be non-empty"));
    }
    let mut c_per_n = Vec::new();
    for &n in n_set {
        let nf = n as f64;
        if nf < (alpha + beta) / 2.0 {
            return Err(Error::domain(format!("n >= (alpha+beta)/2 required, got n = {n}")));
        }
        let k_hi = if k_max_per_n { n } else { n.min(40) };
        let mut c_max = 0.0f64;
        for k in 0..=k_hi {
            let kf = k as f64;
            // everything in log space; all pochhammer bases positive here
            let ln_lhs = -alpha * nf.ln() - ln_gamma(kf + 1.0)? - ln_gamma(nf - kf + 1.0)?
                + ln_pochhammer(nf + alpha + beta + 1.0, k as i64)?
                + ln_pochhammer(alpha + 1.0, n as i64)?
                - 2.0 * kf * (2.0f64).ln()
                - 2.0 * kf * nf.ln()
                - ln_pochhammer(alpha + 1.0, k as i64)?;
            let ln_rhs_inv = ln_gamma(kf + 1.0)? + ln_gamma(alpha + kf + 1.0)?;
            c_max = c_max.max((ln_lhs + ln_rhs_inv).exp());
        }
        c_per_n.push(c_max);
    }
    let stable = if c_per_n.len() >= 2 {
        let a = c_per_n[c_per_n.len() - 2];
        let b = c_per_n[c_per_n.len() - 1];
        (a - b).abs() <= 0.10 * a.abs().max(b.abs())
    } else {
        true
    };
    let empirical_constant = c_per_n.iter().cloned().fold(0.0, f64::max);
    Ok(AsymptoticsReport {
        check_id: format!("jacobi_coefficient_bound(alpha={alpha},beta={beta})"),
        n_ladder: n_set.to_vec(),
        sup_residual: c_per_n,
        empirical_constant,
        pass: stable,
    })
}

/// Empirical constant for the scaled-polynomial envelope:
/// |n^(-alpha) P_n(1 - z^2/(2n^2))| <= C |z|^(-alpha) I_alpha(2|z|).
pub fn scaled_polynomial_envelope_check(
    alpha: f64,
    beta: f64,
    z_set: &[f64],
    n_set: &[u32],
) -> Result<AsymptoticsReport> {
    check_ladder(n_set)?;
    let mut c_per_n = Vec::new();
    for &n in n_set {
        let nf = n as f64;
        let mut c_max = 0.0f64;
        for &z in z_set {
            if z == 0.0 {
                continue;
            }
            let lhs = (nf.powf(-alpha)
                * jacobi_p(n, alpha, beta, 1.0 - z * z / (2.0 * nf * nf))?)
            .abs();
            let rhs = z.abs().powf(-alpha) * bessel_i(alpha, 2.0 * z.abs())?;
            c_max = c_max.max(lhs / rhs);
        }
        c_per_n.push(c_max);
    }
    let stable = if c_per_n.len() >= 2 {
        let a = c_per_n[c_per_n.len() - 2];
        let b = c_per_n[c_per_n.len() - 1];
        (a - b).abs() <= 0.10 * a.abs().max(b.abs())
    } else {
        true
    };
    let empirical_constant = c_per_n.iter().cloned().fold(0.0, f64::max);
    Ok(AsymptoticsReport {
        check_id: format!("scaled_polynomial_envelope(alpha={alpha},beta={beta})"),
        n_ladder: n_set.to_vec(),
        sup_residual: c_per_n,
        empirical_constant,
        pass: stable,
    })
}

/// Hard inequality with explicit constant 1:
/// |I_alpha(z)| <= e^|z| (|z|/2)^alpha / Gamma(alpha+1), tolerance 1e-12.
pub fn i_bound_check(alpha: f64, z_set: &[f64]) -> Result<AsymptoticsReport> {
    if z_set.is_empty() {
        return Err(Error::domain("z_set must be non-empty"));
    }
    let g = gamma(alpha + 1.0)?;
    let mut worst_ratio = 0.0f64;
    let mut ratios = Vec::with_capacity(z_set.len());
    for &z in z_set {
        if !(z > 0.0) {
            return Err(Error::domain("z_set must be positive"));
        }
        let lhs = bessel_i(alpha, z)?.abs();
        let rhs = z.exp() * (z / 2.0).powf(alpha) / g;
        let ratio = lhs / rhs;
        ratios.push(ratio);
        worst_ratio = worst_ratio.max(ratio);
    }
    Ok(AsymptoticsReport {
        check_id: format!("modified_bessel_exponential_bound(alpha={alpha})"),
        n_ladder: vec![],
        sup_residual: ratios,
        empirical_constant: worst_ratio,
        pass: worst_ratio <= 1.0 + 1e-12,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_grid(max: f64, n: usize) -> Vec<f64> {
        (0..=n).map(|i| max * i as f64 / n as f64).collect()
    }

    #[test]
    fn bessel_limit_shrinks_and_matches_cosine_case() {
        let zs = z_grid(10.0, 40);
        let ladder = [64, 128, 256, 512, 1024, 2048];
        let rep = bessel_limit_check(-0.5, 0.0, &zs, &ladder).unwrap();
        assert!(rep.pass, "residuals {:?}", rep.sup_residual);
        // alpha = -1/2 instance: sqrt(n pi) P_n vs cos(z)
        let n = 1024u32;
        let nf = n as f64;
        let z = 2.0;
        let lhs = (nf * std::f64::consts::PI).sqrt()
            * jacobi_p(n, -0.5, 0.0, 1.0 - z * z / (2.0 * nf * nf)).unwrap();
        assert!((lhs - z.cos()).abs() < 0.01);
        // z = 0: both sides tend to 1/Gamma(alpha+1), with an O(1/n) gap
        let rep0 = bessel_limit_check(0.5, 0.25, &[0.0], &[1024, 2048]).unwrap();
        assert!(rep0.sup_residual.iter().all(|r| *r < 1e-3), "{:?}", rep0.sup_residual);
    }

    #[test]
    fn bessel_limit_guards() {
        assert!(bessel_limit_check(0.5, 0.0, &[20.0], &[16, 32]).is_err());
        assert!(bessel_limit_check(0.5, 0.0, &[1.0], &[]).is_err());
        assert!(bessel_limit_check(0.5, 0.0, &[1.0], &[32, 16]).is_err());
    }

    #[test]
    fn lemma31_converges_to_cosine() {
        let zs = z_grid(5.0, 20);
        let rep = lemma31_check(0.0, &zs, &[64, 128, 256, 512]).unwrap();
        assert!(rep.pass, "residuals {:?}", rep.sup_residual);
        assert!(rep.sup_residual[2] < 0.02, "n = 256 residual {}", rep.sup_residual[2]);
        // Legendre case near z = 0
        let n = 256u32;
        let v = (2.0 * n as f64).sqrt()
            * std::f64::consts::PI.sqrt()
            * gegenbauer_c(4 * n, 0.5, 0.0).unwrap();
        assert!((v - 1.0).abs() < 0.02, "got {v}");
    }

    #[test]
    fn lemma31_rung_monotone_for_nonzero_beta() {
        let rep = lemma31_check(0.25, &[3.0], &[64, 128]).unwrap();
        assert!(rep.sup_residual[1] < rep.sup_residual[0]);
    }

    #[test]
    fn growth_bounds_stable() {
        let rep = growth_bound_check(0.5, &[64, 128, 256, 512, 1024], 1.0).unwrap();
        assert!(rep.pass, "K1 per rung {:?}", rep.sup_residual);
        // endpoint: C_n(1) n^(1-2 lambda) -> 1/Gamma(2 lambda); for lambda = 1/2 that is 1
        let n = 1024u32;
        let v = gegenbauer_c(n, 0.5, 1.0).unwrap() * (n as f64).powf(0.0);
        assert!((v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn coefficient_bound_stable() {
        let rep = coefficient_bound_check(-0.5, 0.0, &[40, 80], true).unwrap();
        assert!(rep.pass, "C per n {:?}", rep.sup_residual);
        assert!(rep.empirical_constant.is_finite());
    }

    #[test]
    fn envelope_constant_stable() {
        let zs: Vec<f64> = (1..=20).map(|i| i as f64 * 0.5).collect();
        let rep = scaled_polynomial_envelope_check(-0.5, 0.0, &zs, &[64, 128, 256]).unwrap();
        assert!(rep.pass, "{:?}", rep.sup_residual);
    }

    #[test]
    fn modified_bessel_bound_is_strict() {
        let zs: Vec<f64> = (1..=40).map(|i| i as f64 * 0.5).collect();
        for &alpha in &[-0.4, 0.0, 0.5, 2.0] {
            let rep = i_bound_check(alpha, &zs).unwrap();
            assert!(rep.pass, "alpha = {alpha}: worst ratio {}", rep.empirical_constant);
        }
        // spot value: I_0(3) = 4.8808... <= e^3 = 20.0855
        let i0 = bessel_i(0.0, 3.0).unwrap();
        assert!((i0 - 4.880_792_585_865_024).abs() < 1e-11);
        assert!(i0 <= 3.0f64.exp());
    }
}
