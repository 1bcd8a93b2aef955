//! `verify all`: a condensed pass over every module's headline checks,
//! reported as flat check records. Reference values were computed ahead of
//! time with independent high-precision arithmetic.

use jpl_core::characters::{
    enumerate_fundamental_discriminants, functional_equation_residual, RealPrimitiveCharacter,
};
use jpl_core::jensen::JensenContext;
use jpl_core::kernels::{phi, phi_direct, positivity_scan, KernelDescriptor};
use jpl_core::report::{checks_to_table, CheckRecord};
use jpl_core::specfun;
use jpl_core::transform::{xi_riemann, QuadratureSpec};
use jpl_core::Result;

use crate::Outcome;

const PHI_AT_0: f64 = 1.786_787_601_868_493_8;
const PHI_AT_1: f64 = 5.511_255_762_542_535e-7;
const XI_AT_0: f64 = 0.497_120_778_188_314_1;
const F0_AT_0: f64 = 0.988_516_272_426_22; // 4 Xi(0)^2

fn record(
    checks: &mut Vec<CheckRecord>,
    id: &str,
    value: f64,
    tolerance: f64,
    contract: &str,
) {
    checks.push(CheckRecord::new(id, value, contract, value <= tolerance));
}

pub fn all() -> Result<Outcome> {
    let mut checks = Vec::new();
    specfun_checks(&mut checks)?;
    character_checks(&mut checks)?;
    kernel_checks(&mut checks)?;
    transform_checks(&mut checks)?;
    jensen_checks(&mut checks)?;
    asymptotics_checks(&mut checks)?;
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(Outcome { table: checks_to_table(&checks), all_pass })
}

fn specfun_checks(checks: &mut Vec<CheckRecord>) -> Result<()> {
    let sqrt_pi = std::f64::consts::PI.sqrt();
    record(
        checks,
        "specfun.gamma_half",
        (specfun::gamma(0.5)? - sqrt_pi).abs(),
        1e-14,
        "|Gamma(1/2) - sqrt(pi)| <= 1e-14",
    );

    let mut dup = 0.0f64;
    for &x in &[0.25, 0.75, 1.5, 3.2, 6.8] {
        let lhs = specfun::gamma(x)? * specfun::gamma(x + 0.5)?;
        let rhs = 2.0f64.powf(1.0 - 2.0 * x) * sqrt_pi * specfun::gamma(2.0 * x)?;
        dup = dup.max((lhs - rhs).abs() / rhs.abs());
    }
    record(checks, "specfun.duplication", dup, 1e-11, "relative residual <= 1e-11 on 5 points");

    let mut quad = 0.0f64;
    for n in 0..=10u32 {
        for &x in &[-0.9, -0.3, 0.0, 0.4, 1.0] {
            quad = quad.max(specfun::quadratic_transform_residual(n, 0.25, x)?);
        }
    }
    record(checks, "specfun.quadratic_transform", quad, 1e-9, "residual <= 1e-9, n <= 10");

    let mut cosrel = 0.0f64;
    let mut z = 0.25;
    while z <= 20.0 {
        let rhs = (std::f64::consts::PI * z / 2.0).sqrt() * specfun::bessel_j(-0.5, z)?;
        cosrel = cosrel.max((z.cos() - rhs).abs());
        z += 0.25;
    }
    record(checks, "specfun.cos_relation", cosrel, 1e-10, "|cos z - sqrt(pi z/2) J_{-1/2}(z)| <= 1e-10 on (0, 20]");

    let mut min_norm = f64::INFINITY;
    for &n in &[10u32, 50, 200] {
        for &lambda in &[0.3, 0.5, 1.0] {
            let mut x = 1.0;
            while x <= 3.0 + 1e-12 {
                min_norm = min_norm.min(specfun::gegenbauer_norm(n, lambda, x)?);
                x += 0.25;
            }
        }
    }
    // record 1 - min so the "value <= tolerance" convention still applies;
    // the recurrence evaluates c_n(1) as 1 up to a few ulps, hence the slack
    record(checks, "specfun.normalized_min", 1.0 - min_norm, 1e-12, "c_n^(lambda)(x) >= 1 - 1e-12 on x >= 1");
    Ok(())
}

fn character_checks(checks: &mut Vec<CheckRecord>) -> Result<()> {
    let want: &[i64] = &[-3, -4, 5, -7, -8, 8];
    let got = enumerate_fundamental_discriminants(8)?;
    checks.push(CheckRecord::new(
        "characters.enumeration",
        got.len() as f64,
        "bound 8 lists exactly {-3, -4, 5, -7, -8, 8}",
        got == want,
    ));

    let mut residual = 0.0f64;
    for d in enumerate_fundamental_discriminants(24)? {
        let chi = RealPrimitiveCharacter::new(d)?;
        for &x in &[0.3, 0.5, 1.0, 2.0, 3.0] {
            residual = residual.max(functional_equation_residual(&chi, x)?);
        }
    }
    record(checks, "characters.theta_fe", residual, 1e-10, "functional-equation residual <= 1e-10, |d| <= 24");
    Ok(())
}

fn kernel_checks(checks: &mut Vec<CheckRecord>) -> Result<()> {
    let k = KernelDescriptor::riemann();
    record(checks, "kernel.value_at_0", (phi(&k, 0.0) - PHI_AT_0).abs(), 1e-4, "Phi(0) = 1.78688 +- 1e-4");
    record(checks, "kernel.value_at_1", (phi(&k, 1.0) - PHI_AT_1).abs(), 1e-9, "Phi(1) = 5.51e-7 +- 1e-9");

    let mut even = 0.0f64;
    let mut t = 0.0;
    while t <= 2.0 + 1e-12 {
        even = even.max((phi_direct(&k, t).value - phi_direct(&k, -t).value).abs());
        t += 0.05;
    }
    record(checks, "kernel.evenness", even, 1e-12, "|Phi(t) - Phi(-t)| <= 1e-12 on [0, 2]");

    let scan = positivity_scan(&k, 3.0, 0.005)?;
    checks.push(CheckRecord::new(
        "kernel.scan_min_positive",
        scan.min_sign,
        "positivity scan on [0, 3] finds min > 0",
        scan.min_sign > 0.0 && scan.sign_changes.is_empty(),
    ));
    Ok(())
}

fn transform_checks(checks: &mut Vec<CheckRecord>) -> Result<()> {
    let spec = QuadratureSpec::default();
    record(checks, "xi.value_at_0", (xi_riemann(0.0, &spec)? - XI_AT_0).abs(), 1e-6, "Xi(0) = 0.4971208 +- 1e-6");
    record(
        checks,
        "xi.evenness",
        (xi_riemann(1.3, &spec)? - xi_riemann(-1.3, &spec)?).abs(),
        1e-12,
        "|Xi(z) - Xi(-z)| <= 1e-12",
    );
    Ok(())
}

fn jensen_checks(checks: &mut Vec<CheckRecord>) -> Result<()> {
    let ctx = JensenContext::new(KernelDescriptor::riemann(), QuadratureSpec::default());
    record(
        checks,
        "jensen.f0_at_0",
        (ctx.f_n_reduced(0.0, 0)? - F0_AT_0).abs(),
        1e-5,
        "f_0(0) = 4 Xi(0)^2 +- 1e-5",
    );
    let r = jpl_core::jensen::routes(&ctx, 1.0, 1)?;
    record(
        checks,
        "jensen.direct_vs_reduced",
        (r.f_direct.expect("n = 1 has a direct route") - r.f_reduced).abs(),
        1e-6,
        "|f_direct - f_reduced| <= 1e-6 at (n, x) = (1, 1)",
    );
    record(
        checks,
        "jensen.reduced_vs_oracle",
        (r.f_reduced - r.f_oracle.expect("n = 1 has an oracle route")).abs(),
        1e-5,
        "|f_reduced - f_oracle| <= 1e-5 at (n, x) = (1, 1)",
    );
    let surrogate = ctx.surrogate_ladder(1.0, 1, 0.0, &[4, 8])?;
    let split =
        surrogate.points.iter().map(|p| p.split_residual).fold(0.0f64, f64::max);
    record(checks, "jensen.surrogate_split", split, 1e-8, "g_N = I1 + I2 to 1e-8 on N in {4, 8}");
    Ok(())
}

fn asymptotics_checks(checks: &mut Vec<CheckRecord>) -> Result<()> {
    let zs: Vec<f64> = (0..=20).map(|i| 5.0 * i as f64 / 20.0).collect();
    let lemma = jpl_core::asymptotics::lemma31_check(0.0, &zs, &[64, 128, 256])?;
    checks.push(CheckRecord::new(
        "asymp.scaled_cosine_limit",
        *lemma.sup_residual.last().expect("non-empty ladder"),
        "sup residual strictly decreasing along the ladder",
        lemma.pass,
    ));
    let zs20: Vec<f64> = (1..=40).map(|i| 20.0 * i as f64 / 40.0).collect();
    let bound = jpl_core::asymptotics::i_bound_check(0.0, &zs20)?;
    checks.push(CheckRecord::new(
        "asymp.modified_bessel_bound",
        bound.empirical_constant,
        "|J_alpha(z)| <= I_alpha(|z|) strictly, constant 1",
        bound.pass,
    ));
    Ok(())
}
