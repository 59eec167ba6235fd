//! `verify`: the catalog against its expectations, fanned out over a thread pool.

use std::collections::HashSet;

use rayon::prelude::*;

use grassmin_core::catalog::{all_cases, find_case, verify_case, CatalogCase, VerificationOutcome};
use grassmin_core::{Error, ReportOptions};

use crate::args::VerifyArgs;
use crate::json::{self, CaseJson, SummaryJson, VerifyJson};
use crate::table::{render, yes_no};
use crate::{fault_injection, write_output, CliError, Exit};

/// The requested cases in catalog order, without repeats.
pub fn select_cases(ids: &[String]) -> Result<Vec<CatalogCase>, CliError> {
    if ids.is_empty() {
        return Ok(all_cases());
    }
    let mut wanted = HashSet::new();
    for id in ids {
        match find_case(id) {
            Ok(c) => {
                wanted.insert(c.id);
            }
            Err(Error::UnknownCase(_)) => {
                return Err(CliError::usage(format!(
                    "unknown case '{id}'; `grassmin catalog list` shows the valid ids"
                )))
            }
            Err(e) => return Err(CliError::internal(e.to_string())),
        }
    }
    Ok(all_cases().into_iter().filter(|c| wanted.contains(c.id)).collect())
}

/// Runs every case on a pool of `jobs` threads; results come back in input order.
pub fn run_cases(
    cases: &[CatalogCase],
    opts: &ReportOptions,
    jobs: Option<usize>,
) -> Result<Vec<VerificationOutcome>, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::internal(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| {
        cases
            .par_iter()
            .map(|c| {
                fault_injection("verify");
                verify_case(c, opts)
            })
            .collect()
    }))
}

fn invariant_cell(rep: Option<&grassmin_core::Invariant>) -> String {
    match rep {
        None => "-".into(),
        Some(i) if i.constant => i.value.to_string(),
        Some(_) => "non-constant".into(),
    }
}

pub fn render_outcomes(cases: &[CatalogCase], outs: &[VerificationOutcome]) -> String {
    let rows: Vec<Vec<String>> = cases
        .iter()
        .zip(outs)
        .map(|(c, o)| {
            let r = o.report.as_ref();
            let flag = |f: fn(&grassmin_core::GeometryReport) -> bool| r.map_or("-".into(), |r| yes_no(f(r)));
            vec![
                o.id.clone(),
                c.n.to_string(),
                invariant_cell(r.map(|r| &r.k)),
                invariant_cell(r.map(|r| &r.b2)),
                r.map_or("-".into(), |r| format!("({},{})", r.ranks.0, r.ranks.1)),
                flag(|r| r.harmonic_residual_zero),
                flag(|r| r.eq31_first_zero && r.eq31_second_zero),
                flag(|r| r.eq32_zero),
                r.map_or("-".into(), |r| r.kahler.flag.as_str().to_string()),
                r.map_or("-".into(), |r| r.isotropy.order.label()),
                if o.pass { "PASS" } else { "FAIL" }.to_string(),
            ]
        })
        .collect();
    let mut out = render(
        &[
            "ID", "N", "K", "|B|^2", "RANKS", "HARMONIC", "EQ31", "EQ32", "KAHLER", "ISOTROPY", "RESULT",
        ],
        &rows,
    );
    for o in outs {
        for m in &o.mismatches {
            out.push_str(&format!(
                "{}: {} expected {}, got {}\n",
                o.id, m.field, m.expected, m.actual
            ));
        }
        if let Some(r) = &o.report {
            for w in &r.witnesses {
                let entry = w.entry.map_or(String::new(), |(a, b)| format!("[{a},{b}]"));
                out.push_str(&format!(
                    "{}: {}{} is nonzero at z = {} (value {})\n",
                    o.id, w.residual, entry, w.point, w.value
                ));
            }
        }
    }
    let passed = outs.iter().filter(|o| o.pass).count();
    out.push_str(&format!(
        "{} cases: {} passed, {} failed\n",
        outs.len(),
        passed,
        outs.len() - passed
    ));
    out
}

pub fn verify_json(cases: &[CatalogCase], outs: &[VerificationOutcome]) -> String {
    let passed = outs.iter().filter(|o| o.pass).count();
    json::to_text(&VerifyJson {
        cases: cases.iter().zip(outs).map(|(c, o)| CaseJson::new(c, o)).collect(),
        summary: SummaryJson {
            total: outs.len(),
            passed,
            failed: outs.len() - passed,
        },
    })
}

pub fn run(a: &VerifyArgs) -> Result<Exit, CliError> {
    let ids = if a.all { Vec::new() } else { a.cases.clone() };
    let cases = select_cases(&ids)?;
    let opts = ReportOptions {
        isotropy_bound: a.report.isotropy_bound as usize,
    };
    let outs = run_cases(&cases, &opts, a.jobs.map(|j| j as usize))?;
    print!("{}", render_outcomes(&cases, &outs));
    if let Some(p) = &a.json {
        write_output(p, &verify_json(&cases, &outs))?;
    }
    Ok(if outs.iter().all(|o| o.pass) {
        Exit::Success
    } else {
        Exit::Failure
    })
}
