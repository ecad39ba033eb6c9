//! The `evolve`, `signature`, and `sweep` commands.

use crate::config::{RunConfig, Spacetime};
use crate::output::{fmt, write_output, Table};
use crate::CliError;
use fermsig_core::desitter::{self, DeSitterMode};
use fermsig_core::signature::{assemble_signature_rtol, spectral_split, SignatureMatrix};
use fermsig_core::ultrastatic;
use fermsig_core::{mode_scalar_product, Mat2, SpinorPair};
use rayon::prelude::*;
use std::path::Path;

/// The (lambda, m) grid in output order.
fn grid(config: &RunConfig) -> Vec<(f64, f64)> {
    let mut g = Vec::new();
    for l in config.sorted_lambdas() {
        for m in config.sorted_masses() {
            g.push((l, m));
        }
    }
    g
}

fn check_finite(rows: &[Vec<String>]) -> Result<(), CliError> {
    for row in rows {
        if row.iter().any(|c| c.contains("NaN") || c.contains("inf")) {
            return Err(CliError::runtime("non-finite value in output"));
        }
    }
    Ok(())
}

/// Trajectory of one mode at the configured sample times.
fn trajectory(config: &RunConfig, lambda: f64, m: f64) -> Result<Vec<Vec<String>>, CliError> {
    let times = config.time_grid.times();
    let u0 = config.cauchy();
    let states: Vec<SpinorPair> = match config.spacetime {
        Spacetime::Ultrastatic => times
            .iter()
            .map(|&t| Ok(ultrastatic::evolution_matrix(lambda, m, t)?.mul_vec(&u0)))
            .collect::<Result<_, CliError>>()?,
        Spacetime::Desitter => {
            let mode = DeSitterMode::new(config.half_integer(lambda)?, m)?;
            let neg: Vec<f64> = times.iter().rev().copied().filter(|&t| t < 0.0).collect();
            let pos: Vec<f64> = times.iter().copied().filter(|&t| t >= 0.0).collect();
            let mut back = desitter::evolve_mode_path(&u0, &mode, 0.0, &neg, config.rtol)?;
            let fwd = desitter::evolve_mode_path(&u0, &mode, 0.0, &pos, config.rtol)?;
            back.reverse();
            back.extend(fwd);
            back
        }
    };
    let mut rows = Vec::with_capacity(times.len());
    for (t, u) in times.iter().zip(&states) {
        rows.push(vec![
            fmt(lambda),
            fmt(m),
            fmt(*t),
            fmt(u.u1.re),
            fmt(u.u1.im),
            fmt(u.u2.re),
            fmt(u.u2.im),
            fmt(u.norm()),
            fmt(u.u1.arg()),
            fmt(mode_scalar_product(u, u).re),
        ]);
    }
    Ok(rows)
}

pub fn cmd_evolve(config: &RunConfig, out: Option<&Path>) -> Result<i32, CliError> {
    let mut table = Table::new(vec![
        "lambda", "m", "t", "u1_re", "u1_im", "u2_re", "u2_im", "norm", "phase_u1", "current",
    ]);
    let chunks: Vec<_> = grid(config)
        .par_iter()
        .map(|&(l, m)| trajectory(config, l, m))
        .collect::<Result<_, CliError>>()?;
    for chunk in chunks {
        check_finite(&chunk)?;
        table.rows.extend(chunk);
    }
    write_output(config, out, &table.render(config, "evolve"))?;
    Ok(0)
}

/// One `signature` row: spectral data of S and distances to the two
/// asymptotic frequency splittings.
fn signature_row(config: &RunConfig, lambda: f64, m: f64) -> Result<Vec<String>, CliError> {
    let (s, dist_plus, dist_minus): (SignatureMatrix, f64, f64) = match config.spacetime {
        Spacetime::Ultrastatic => {
            // the splitting is exact: S coincides with both comparisons
            (ultrastatic::ultrastatic_signature(lambda, m)?, 0.0, 0.0)
        }
        Spacetime::Desitter => {
            let lam = config.half_integer(lambda)?;
            let s = assemble_signature_rtol(lam, m, config.eps, config.rtol)?;
            let mode = DeSitterMode::new(lam, m)?;
            let sc = desitter::scattering_matrices_rtol(&mode, config.eps, config.rtol)?;
            let s3 = Mat2::sigma3();
            let plus = sc.w_plus.adjoint().mul(&s3).mul(&sc.w_plus);
            let minus = sc.w_minus.adjoint().mul(&s3).mul(&sc.w_minus);
            let dp = s.matrix().sub(&plus).operator_norm();
            let dm = s.matrix().sub(&minus).operator_norm();
            (s, dp, dm)
        }
    };
    let ([mu1, mu2], _) = s.matrix().hermitian_eigen();
    let split = spectral_split(&s, config.zero_tol);
    let e = &s.matrix().e;
    let p = &split.p_plus.e;
    Ok(vec![
        fmt(lambda),
        fmt(m),
        fmt(split.nu),
        fmt(mu1),
        fmt(mu2),
        fmt(e[0][0].re),
        fmt(e[0][1].re),
        fmt(e[0][1].im),
        fmt(e[1][1].re),
        fmt(p[0][0].re),
        fmt(p[0][1].re),
        fmt(p[0][1].im),
        fmt(p[1][1].re),
        fmt(dist_plus),
        fmt(dist_minus),
    ])
}

pub fn cmd_signature(config: &RunConfig, out: Option<&Path>) -> Result<i32, CliError> {
    let mut table = Table::new(vec![
        "lambda",
        "m",
        "nu",
        "mu_plus",
        "mu_minus",
        "s11_re",
        "s12_re",
        "s12_im",
        "s22_re",
        "pplus11_re",
        "pplus12_re",
        "pplus12_im",
        "pplus22_re",
        "dist_plus",
        "dist_minus",
    ]);
    let rows: Vec<_> = grid(config)
        .par_iter()
        .map(|&(l, m)| signature_row(config, l, m))
        .collect::<Result<_, CliError>>()?;
    check_finite(&rows)?;
    table.rows = rows;
    write_output(config, out, &table.render(config, "signature"))?;
    Ok(0)
}

fn sweep_row(config: &RunConfig, lambda: f64, m: f64) -> Result<Vec<String>, CliError> {
    let mode = DeSitterMode::new(config.half_integer(lambda)?, m)?;
    let sc = desitter::scattering_matrices_rtol(&mode, config.eps, config.rtol)?;
    let mut row = vec![fmt(lambda), fmt(m)];
    for w in [&sc.w_plus, &sc.w_minus] {
        for i in 0..2 {
            for j in 0..2 {
                row.push(fmt(w.e[i][j].re));
                row.push(fmt(w.e[i][j].im));
            }
        }
    }
    row.push(fmt(sc.w_plus.unitarity_defect()));
    row.push(fmt(sc.w_minus.unitarity_defect()));
    Ok(row)
}

/// Scattering-data sweep: in/out matrices `W+-` per (lambda, m).
pub fn cmd_sweep(config: &RunConfig, out: Option<&Path>) -> Result<i32, CliError> {
    if config.spacetime != Spacetime::Desitter {
        return Err(CliError::config(
            "sweep tabulates de Sitter scattering data; set spacetime to \"desitter\"",
        ));
    }
    let mut table = Table::new(vec![
        "lambda", "m", //
        "wp11_re", "wp11_im", "wp12_re", "wp12_im", "wp21_re", "wp21_im", "wp22_re", "wp22_im",
        "wm11_re", "wm11_im", "wm12_re", "wm12_im", "wm21_re", "wm21_im", "wm22_re", "wm22_im",
        "defect_plus", "defect_minus",
    ]);
    let rows: Vec<_> = grid(config)
        .par_iter()
        .map(|&(l, m)| sweep_row(config, l, m))
        .collect::<Result<_, CliError>>()?;
    check_finite(&rows)?;
    table.rows = rows;
    write_output(config, out, &table.render(config, "sweep"))?;
    Ok(0)
}
