//! One function per subcommand; each returns a flat report table plus a
//! pass/fail verdict for its contracted checks.

use jpl_core::asymptotics::AsymptoticsReport;
use jpl_core::characters::{
    enumerate_fundamental_discriminants, functional_equation_residual, RealPrimitiveCharacter,
};
use jpl_core::jensen::JensenContext;
use jpl_core::kernels::{phi_eval as kernel_eval, positivity_scan, KernelDescriptor};
use jpl_core::report::{Cell, Table};
use jpl_core::transform::{cosine_transform_with_err, find_real_zeros, QuadratureSpec};
use jpl_core::Result;
use rayon::prelude::*;

use crate::{Bound, Outcome};

/// Residual contract for the theta functional equation.
const THETA_RESIDUAL_TOL: f64 = 1e-10;

fn kernel_for(d: Option<i64>) -> Result<KernelDescriptor> {
    match d {
        None => Ok(KernelDescriptor::riemann()),
        Some(d) => KernelDescriptor::for_discriminant(d),
    }
}

pub fn xi_eval(z: f64, d: Option<i64>) -> Result<Outcome> {
    let descriptor = kernel_for(d)?;
    let spec = QuadratureSpec::default();
    let (value, err_estimate) = cosine_transform_with_err(&descriptor, z, &spec)?;
    let mut table = Table::new(&["kernel", "z", "value", "err_estimate"]);
    table.push(vec![
        Cell::from(descriptor.label()),
        Cell::from(z),
        Cell::from(value),
        Cell::from(err_estimate),
    ]);
    Ok(Outcome { table, all_pass: true })
}

pub fn xi_zeros(z_max: f64, step: f64, d: Option<i64>) -> Result<Outcome> {
    let descriptor = kernel_for(d)?;
    let spec = QuadratureSpec::default();
    let brackets = find_real_zeros(&descriptor, z_max, step, &spec)?;
    let mut table = Table::new(&["kernel", "lo", "hi", "root", "residual"]);
    for b in &brackets {
        table.push(vec![
            Cell::from(descriptor.label()),
            Cell::from(b.lo),
            Cell::from(b.hi),
            Cell::from(b.root),
            Cell::from(b.residual),
        ]);
    }
    Ok(Outcome { table, all_pass: true })
}

pub fn phi_eval(descriptor: KernelDescriptor, t: f64) -> Result<Outcome> {
    let eval = kernel_eval(&descriptor, t);
    let mut table = Table::new(&["kernel", "t", "value", "underflowed"]);
    table.push(vec![
        Cell::from(descriptor.label()),
        Cell::from(t),
        Cell::from(eval.value),
        Cell::from(eval.underflowed),
    ]);
    Ok(Outcome { table, all_pass: true })
}

const SCAN_COLUMNS: [&str; 9] = [
    "kernel",
    "t_max",
    "step",
    "points",
    "min_value",
    "min_ln",
    "min_sign",
    "argmin",
    "sign_changes",
];

fn scan_row(descriptor: &KernelDescriptor, t_max: f64, step: f64) -> Result<Vec<Cell>> {
    let report = positivity_scan(descriptor, t_max, step)?;
    let changes = report
        .sign_changes
        .iter()
        .map(|t| jpl_core::report::fmt_f64(*t))
        .collect::<Vec<_>>()
        .join(";");
    Ok(vec![
        Cell::from(report.kernel.clone()),
        Cell::from(report.t_max),
        Cell::from(report.step),
        Cell::Int(report.points as i64),
        Cell::from(report.min_value),
        Cell::from(report.min_ln),
        Cell::from(report.min_sign),
        Cell::from(report.argmin),
        Cell::from(changes),
    ])
}

pub fn phi_scan(descriptor: KernelDescriptor, t_max: f64, step: f64) -> Result<Outcome> {
    let mut table = Table::new(&SCAN_COLUMNS);
    table.push(scan_row(&descriptor, t_max, step)?);
    Ok(Outcome { table, all_pass: true })
}

/// Positivity scan over every fundamental |d| <= bound, one row per
/// discriminant, streamed through `sink` as the rows are produced so partial
/// results survive interruption on long sweeps.
pub fn phi_scan_sweep_stream(
    bound: u64,
    t_max: f64,
    step: f64,
    mut sink: impl FnMut(&Table) -> std::io::Result<()>,
) -> Result<Outcome> {
    let mut table = Table::new(&SCAN_COLUMNS);
    for d in enumerate_fundamental_discriminants(bound)? {
        let descriptor = KernelDescriptor::for_discriminant(d)?;
        table.push(scan_row(&descriptor, t_max, step)?);
        sink(&table).map_err(|e| jpl_core::Error::capability(format!("stream write: {e}")))?;
    }
    Ok(Outcome { table, all_pass: true })
}

pub fn char_list(bound: u64) -> Result<Outcome> {
    let mut table = Table::new(&["discriminant", "modulus", "parity"]);
    for d in enumerate_fundamental_discriminants(bound)? {
        let chi = RealPrimitiveCharacter::new(d)?;
        table.push(vec![
            Cell::Int(d),
            Cell::Int(chi.modulus() as i64),
            Cell::Int(chi.parity_a() as i64),
        ]);
    }
    Ok(Outcome { table, all_pass: true })
}

pub fn char_theta_check(d: i64) -> Result<Outcome> {
    let chi = RealPrimitiveCharacter::new(d)?;
    let mut table = Table::new(&["discriminant", "x", "residual", "tolerance", "pass"]);
    let mut all_pass = true;
    for &x in &[0.3, 0.5, 1.0, 2.0, 3.0] {
        let residual = functional_equation_residual(&chi, x)?;
        let pass = residual <= THETA_RESIDUAL_TOL;
        all_pass &= pass;
        table.push(vec![
            Cell::Int(d),
            Cell::from(x),
            Cell::from(residual),
            Cell::from(THETA_RESIDUAL_TOL),
            Cell::from(pass),
        ]);
    }
    Ok(Outcome { table, all_pass })
}

pub fn jensen_fn(n: u32, x_grid: &[f64], d: Option<i64>) -> Result<Outcome> {
    let ctx = JensenContext::new(kernel_for(d)?, QuadratureSpec::default());
    let reports: Vec<_> = x_grid
        .par_iter()
        .map(|&x| jpl_core::jensen::routes(&ctx, x, n))
        .collect::<Result<_>>()?;
    let mut table = Table::new(&["n", "x", "f_direct", "f_reduced", "f_oracle"]);
    for r in &reports {
        table.push(vec![
            Cell::from(r.n),
            Cell::from(r.x),
            Cell::from(r.f_direct.unwrap_or(f64::NAN)),
            Cell::from(r.f_reduced),
            Cell::from(r.f_oracle.unwrap_or(f64::NAN)),
        ]);
    }
    Ok(Outcome { table, all_pass: true })
}

pub fn jensen_surrogate(beta: f64, ladder: &[u32], x: f64, n: u32) -> Result<Outcome> {
    let ctx = JensenContext::new(KernelDescriptor::riemann(), QuadratureSpec::default());
    let report = ctx.surrogate_ladder(x, n, beta, ladder)?;
    let mut table = Table::new(&[
        "beta",
        "x",
        "n",
        "N",
        "i1",
        "i1_envelope",
        "i2",
        "i2_ln",
        "g_N",
        "g_N_ln",
        "split_residual",
        "g_N_positive",
        "i2_lower_bound",
        "a_sup",
        "fitted_slope",
        "fitted_slope_raw",
        "n0_empirical",
    ]);
    for p in &report.points {
        table.push(vec![
            Cell::from(report.beta),
            Cell::from(report.x),
            Cell::from(report.n),
            Cell::from(p.n_poly),
            Cell::from(p.i1),
            Cell::from(p.i1_envelope),
            Cell::from(p.i2),
            Cell::from(p.i2_ln),
            Cell::from(p.g_n),
            Cell::from(p.g_n_ln),
            Cell::from(p.split_residual),
            Cell::from(p.g_n_positive),
            Cell::from(report.i2_lower_bound),
            Cell::from(report.a_sup),
            Cell::from(report.fitted_slope),
            Cell::from(report.fitted_slope_raw),
            match report.n0_empirical {
                Some(n0) => Cell::from(n0),
                None => Cell::from("none"),
            },
        ]);
    }
    Ok(Outcome { table, all_pass: true })
}

pub fn jensen_surrogate_scaled(beta: f64, ladder: &[u32], x: f64, n: u32) -> Result<Outcome> {
    let ctx = JensenContext::new(KernelDescriptor::riemann(), QuadratureSpec::default());
    let half_f = 0.5 * ctx.f_n_reduced(x, n)?;
    let mut table =
        Table::new(&["beta", "x", "n", "N", "g_scaled", "half_f_reduced", "abs_diff"]);
    for &big_n in ladder {
        let g = ctx.surrogate_scaled(x, n, beta, big_n)?;
        table.push(vec![
            Cell::from(beta),
            Cell::from(x),
            Cell::from(n),
            Cell::from(big_n),
            Cell::from(g),
            Cell::from(half_f),
            Cell::from((g - half_f).abs()),
        ]);
    }
    Ok(Outcome { table, all_pass: true })
}

fn push_asymp(table: &mut Table, report: &AsymptoticsReport) {
    for (rung, residual) in report.n_ladder.iter().zip(&report.sup_residual) {
        table.push(vec![
            Cell::from(report.check_id.clone()),
            Cell::from(*rung),
            Cell::from(*residual),
            Cell::from(report.empirical_constant),
            Cell::from(report.pass),
        ]);
    }
}

const ASYMP_COLUMNS: [&str; 5] = ["check_id", "rung", "sup_residual", "empirical_constant", "pass"];

pub fn asymp_limits(beta: f64, ladder: &[u32]) -> Result<Outcome> {
    let zs: Vec<f64> = (0..=40).map(|i| 5.0 * i as f64 / 40.0).collect();
    let lemma = jpl_core::asymptotics::lemma31_check(beta, &zs, ladder)?;
    let zs10: Vec<f64> = (0..=40).map(|i| 10.0 * i as f64 / 40.0).collect();
    let bessel = jpl_core::asymptotics::bessel_limit_check(beta + 0.5, beta, &zs10, ladder)?;
    let mut table = Table::new(&ASYMP_COLUMNS);
    push_asymp(&mut table, &lemma);
    push_asymp(&mut table, &bessel);
    Ok(Outcome { table, all_pass: lemma.pass && bessel.pass })
}

pub fn asymp_bounds(which: Bound) -> Result<Outcome> {
    let mut reports: Vec<AsymptoticsReport> = Vec::new();
    let ladder = [64u32, 128, 256, 512];
    let zs: Vec<f64> = (1..=80).map(|i| 20.0 * i as f64 / 80.0).collect();
    if matches!(which, Bound::BesselBound | Bound::All) {
        for &alpha in &[-0.4, 0.0, 0.5, 2.0] {
            reports.push(jpl_core::asymptotics::i_bound_check(alpha, &zs)?);
        }
    }
    if matches!(which, Bound::Growth | Bound::All) {
        for &lambda in &[0.5, 0.8, 1.0] {
            reports.push(jpl_core::asymptotics::growth_bound_check(lambda, &ladder, 1.0)?);
        }
    }
    if matches!(which, Bound::Coefficient | Bound::All) {
        reports.push(jpl_core::asymptotics::coefficient_bound_check(
            0.5,
            0.25,
            &[8, 16, 32],
            true,
        )?);
    }
    if matches!(which, Bound::Envelope | Bound::All) {
        let zs5: Vec<f64> = (1..=25).map(|i| 5.0 * i as f64 / 25.0).collect();
        reports.push(jpl_core::asymptotics::scaled_polynomial_envelope_check(
            0.5, 0.25, &zs5, &ladder,
        )?);
    }
    let mut table = Table::new(&ASYMP_COLUMNS);
    let mut all_pass = true;
    for r in &reports {
        all_pass &= r.pass;
        push_asymp(&mut table, r);
    }
    Ok(Outcome { table, all_pass })
}
