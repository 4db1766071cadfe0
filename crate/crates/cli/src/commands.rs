use std::cmp::Ordering;

use rayon::prelude::*;
use serde_json::json;

use hhv_core::inequalities::{self, InequalityId, VerificationReport};
use hhv_core::params::{default_lambda_grid, DEFAULT_P_GRID};
use hhv_core::sequences::{generate, SeqSpec, Sequence};
use hhv_core::weights::{
    bound_24, bound_25, check_negativity_chain, check_weight_bounds, DualBoundForm,
};
use hhv_core::{weights, zeta, EmSettings, HolderParams};

use crate::report::{Cell, Report};
use crate::{CliError, EmArgs, GridArgs};

type Outcome = Result<(Report, bool), CliError>;

pub fn zeta(rho: f64, em: &EmArgs, ulps: u32) -> Outcome {
    let settings = EmSettings::new(em.m, em.l)?.with_slack_ulps(ulps);
    let z = zeta::zeta_em(rho, settings)?;
    let mut r = Report::new("zeta", &["rho", "m", "l", "lo", "hi", "width"]);
    r.push(vec![
        rho.into(),
        em.m.into(),
        u64::from(em.l).into(),
        z.lo().into(),
        z.hi().into(),
        z.width().into(),
    ]);
    Ok((r, true))
}

pub fn weight(p: f64, lambda: f64, m: u64, ulps: u32) -> Outcome {
    let h = HolderParams::new(p, lambda)?;
    if m == 0 {
        return Err(CliError::Input("--m must be >= 1".into()));
    }
    let settings = EmSettings::default().with_slack_ulps(ulps);
    let mut r = Report::new(
        "weight",
        &[
            "p", "q", "lambda", "m", "kind", "omega_lo", "omega_hi", "bound", "margin",
        ],
    );
    let primal = weights::weight_omega(m, &h, settings)?;
    let dual = weights::weight_omega_dual(m, &h, settings)?;
    let mut ok = true;
    for (kind, w, bound) in [
        ("primal", primal, bound_24(m, &h)),
        ("dual", dual, bound_25(m, &h, DualBoundForm::Symmetric)),
        (
            "dual_literal",
            dual,
            bound_25(m, &h, DualBoundForm::Literal),
        ),
    ] {
        let margin = bound - w.hi();
        if kind != "dual_literal" {
            ok &= margin > -w.width();
        }
        r.push(vec![
            h.p().into(),
            h.q().into(),
            h.lambda().into(),
            m.into(),
            kind.into(),
            w.lo().into(),
            w.hi().into(),
            bound.into(),
            margin.into(),
        ]);
    }
    Ok((r, ok))
}

/// Admissible cells of the grid, sorted by `(p, lambda)`, and the skipped ones.
fn grid_cells(grid: &GridArgs) -> (Vec<HolderParams>, Vec<(f64, f64, String)>) {
    let ps: Vec<f64> = if grid.p.is_empty() {
        DEFAULT_P_GRID.to_vec()
    } else {
        grid.p.clone()
    };
    let mut cells = Vec::new();
    let mut skipped = Vec::new();
    for &p in &ps {
        let lambdas = if !grid.lambda.is_empty() {
            grid.lambda.clone()
        } else if p > 1.0 && p.is_finite() {
            default_lambda_grid(p)
        } else {
            skipped.push((p, f64::NAN, format!("p = {p} must be a finite value > 1")));
            continue;
        };
        for l in lambdas {
            match HolderParams::new(p, l) {
                Ok(h) => cells.push(h),
                Err(e) => skipped.push((p, l, e.to_string())),
            }
        }
    }
    cells.sort_by(|a, b| {
        a.p()
            .total_cmp(&b.p())
            .then(a.lambda().total_cmp(&b.lambda()))
    });
    cells.dedup();
    (cells, skipped)
}

fn record_skips(report: &mut Report, skipped: &[(f64, f64, String)]) {
    for (p, l, why) in skipped {
        eprintln!("skip p={p} lambda={l}: {why}");
    }
    let list: Vec<_> = skipped
        .iter()
        .map(|(p, l, why)| json!({ "p": p, "lambda": if l.is_nan() { None } else { Some(l) }, "reason": why }))
        .collect();
    report.extra.insert("skipped".into(), json!(list));
}

pub const CHECK_WEIGHT_COLUMNS: [&str; 11] = [
    "p",
    "q",
    "lambda",
    "m",
    "omega_lo",
    "omega_hi",
    "bound24",
    "margin24",
    "bound25_sym",
    "margin25",
    "negativity_gap",
];

pub fn check_weights(grid: &GridArgs, m_max: u64, ulps: u32) -> Outcome {
    if m_max == 0 {
        return Err(CliError::Input("--m-max must be >= 1".into()));
    }
    let (cells, skipped) = grid_cells(grid);
    if cells.is_empty() {
        return Err(CliError::Input("every grid cell was skipped".into()));
    }
    let settings = EmSettings::default().with_slack_ulps(ulps);
    let per_cell: Vec<_> = cells
        .par_iter()
        .map(|h| -> Result<_, hhv_core::Error> {
            Ok((
                *h,
                check_weight_bounds(h, m_max, settings)?,
                check_negativity_chain(h, m_max, settings)?,
            ))
        })
        .collect::<Result<_, _>>()?;

    let mut report = Report::new("check-weights", &CHECK_WEIGHT_COLUMNS);
    let mut violations = 0u64;
    for (h, rows, gaps) in per_cell {
        for (w, g) in rows.iter().zip(&gaps) {
            if !(w.confirmed() && g.holds()) {
                violations += 1;
            }
            report.push(vec![
                h.p().into(),
                h.q().into(),
                h.lambda().into(),
                w.m.into(),
                w.primal.value.lo().into(),
                w.primal.value.hi().into(),
                w.primal.bound.into(),
                w.primal.margin.into(),
                w.dual.bound.into(),
                w.dual.margin.into(),
                g.gap.into(),
            ]);
        }
    }
    record_skips(&mut report, &skipped);
    report.extra.insert("violations".into(), json!(violations));
    Ok((report, violations == 0))
}

fn parse_sequence(spec: &str) -> Result<Sequence, CliError> {
    let spec: SeqSpec = spec.parse()?;
    Ok(generate(&spec)?)
}

pub const VERIFY_COLUMNS: [&str; 12] = [
    "inequality",
    "p",
    "q",
    "lambda",
    "a",
    "b",
    "n_max",
    "lhs",
    "rhs",
    "rhs_baseline",
    "improvement",
    "holds",
];

fn report_row(r: &VerificationReport) -> Vec<Cell> {
    vec![
        r.inequality.label().into(),
        r.params.p().into(),
        r.params.q().into(),
        r.params.lambda().into(),
        r.a.clone().into(),
        r.b.clone().into(),
        r.n_max.into(),
        r.lhs.into(),
        r.rhs.into(),
        r.rhs_baseline.into(),
        r.improvement.into(),
        r.holds.into(),
    ]
}

pub fn verify(ineq: &str, a: &str, b: Option<&str>, p: f64, lambda: f64, nmax: usize) -> Outcome {
    let id: InequalityId = ineq.parse()?;
    let h = HolderParams::new(p, lambda)?;
    id.check_params(&h)?;
    let a = parse_sequence(a)?;
    let b = match b {
        Some(spec) => parse_sequence(spec)?,
        None => a.clone(),
    };
    let rep = inequalities::verify(id, &a, Some(&b), &h, nmax)?;
    let mut report = Report::new("verify", &VERIFY_COLUMNS);
    report.push(report_row(&rep));
    Ok((report, rep.holds))
}

fn report_order(x: &VerificationReport, y: &VerificationReport) -> Ordering {
    x.inequality
        .cmp(&y.inequality)
        .then(x.params.p().total_cmp(&y.params.p()))
        .then(x.params.lambda().total_cmp(&y.params.lambda()))
        .then_with(|| x.a.cmp(&y.a))
        .then_with(|| x.b.cmp(&y.b))
}

pub fn sweep(grid: &GridArgs, a_specs: &[String], b_specs: &[String], nmax: usize) -> Outcome {
    let (cells, skipped) = grid_cells(grid);
    if cells.is_empty() {
        return Err(CliError::Input("every grid cell was skipped".into()));
    }
    let a_seqs = a_specs
        .iter()
        .map(|s| parse_sequence(s))
        .collect::<Result<Vec<_>, _>>()?;
    let b_seqs = b_specs
        .iter()
        .map(|s| parse_sequence(s))
        .collect::<Result<Vec<_>, _>>()?;
    let pairs: Vec<(&Sequence, &Sequence)> = a_seqs
        .iter()
        .flat_map(|a| b_seqs.iter().map(move |b| (a, b)))
        .collect();

    let mut reports: Vec<VerificationReport> = cells
        .par_iter()
        .map(|h| -> Result<Vec<_>, hhv_core::Error> {
            let mut out = Vec::new();
            for &(a, b) in &pairs {
                out.push(inequalities::verify_31(a, b, h)?);
                out.push(inequalities::verify_32(a, h, nmax)?);
                out.extend(inequalities::verify_corollaries(a, b, h, nmax)?);
                out.push(inequalities::verify(
                    InequalityId::Yang13,
                    a,
                    Some(b),
                    h,
                    nmax,
                )?);
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    reports.sort_by(report_order);

    let mut report = Report::new("sweep", &VERIFY_COLUMNS);
    let failures = reports.iter().filter(|r| !r.holds).count();
    for r in &reports {
        report.push(report_row(r));
    }
    record_skips(&mut report, &skipped);
    report.extra.insert("failures".into(), json!(failures));
    Ok((report, failures == 0))
}

pub fn probe(p: f64, lambda: f64, eps: &[f64], n_terms: usize) -> Outcome {
    let h = HolderParams::new(p, lambda)?;
    let mut report = Report::new(
        "probe",
        &[
            "p", "q", "lambda", "eps", "n_terms", "ratio", "k_lambda", "gap",
        ],
    );
    let mut ok = true;
    for &e in eps {
        let r = inequalities::sharpness_probe(&h, e, n_terms)?;
        ok &= r.ratio < r.constant;
        report.push(vec![
            h.p().into(),
            h.q().into(),
            h.lambda().into(),
            e.into(),
            (n_terms as u64).into(),
            r.ratio.into(),
            r.constant.into(),
            r.gap().into(),
        ]);
    }
    Ok((report, ok))
}
