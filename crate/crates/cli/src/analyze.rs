//! `analyze`: the full report for a user script, optionally asserting constants.

use grassmin_core::algebra::rational_to_string;
use grassmin_core::{geometry_report_with, GeometryReport, Invariant, ReportOptions};

use crate::args::{AnalyzeArgs, Expectation, InvariantKey};
use crate::json::{self, AnalyzeJson, ExpectationJson, GeometryJson};
use crate::{geometry_error, load_script, write_output, CliError, Exit};

fn invariant_line(name: &str, i: &Invariant) -> String {
    let tag = if i.constant { "constant" } else { "non-constant" };
    format!("{name} = {} ({tag})\n", i.value)
}

pub fn check_expectations(rep: &GeometryReport, expect: &[Expectation]) -> Vec<ExpectationJson> {
    expect
        .iter()
        .map(|e| {
            let inv = match e.key {
                InvariantKey::K => &rep.k,
                InvariantKey::B2 => &rep.b2,
            };
            let got = inv.rational();
            ExpectationJson {
                key: e.key.as_str(),
                expected: rational_to_string(&e.value),
                actual: got.as_ref().map_or_else(|| inv.value.to_string(), rational_to_string),
                ok: got.as_ref() == Some(&e.value),
            }
        })
        .collect()
}

pub fn render_report(name: &str, n: usize, weights: &[String], rep: &GeometryReport) -> String {
    let mut s = format!("map {name} in C^{n}, weights ({})\n", weights.join(", "));
    s.push_str(&format!("lambda2 = {}\n", rep.lambda2));
    s.push_str(&invariant_line("K", &rep.k));
    s.push_str(&invariant_line("B2", &rep.b2));
    s.push_str(&format!(
        "ranks (dprime, dsecond) = ({}, {})\n",
        rep.ranks.0, rep.ranks.1
    ));
    s.push_str(&format!("harmonic_residual_zero: {}\n", rep.harmonic_residual_zero));
    s.push_str(&format!("eq31_first_zero: {}\n", rep.eq31_first_zero));
    s.push_str(&format!("eq31_second_zero: {}\n", rep.eq31_second_zero));
    s.push_str(&format!("eq32_zero: {}\n", rep.eq32_zero));
    s.push_str(&format!("kahler: {}\n", rep.kahler.flag.as_str()));
    s.push_str(&format!("isotropy: {}\n", rep.isotropy.order.label()));
    if let Some(i) = rep.isotropy.rank_drop {
        s.push_str(&format!("isotropy rank drop at step {i}\n"));
    }
    s.push_str(&format!("l_in = {}\n", rep.l_in));
    s.push_str(&format!("l_out = {}\n", rep.l_out));
    for w in &rep.witnesses {
        let entry = w.entry.map_or(String::new(), |(a, b)| format!("[{a},{b}]"));
        s.push_str(&format!(
            "witness: {}{} is nonzero at z = {} (value {})\n",
            w.residual, entry, w.point, w.value
        ));
    }
    s
}

pub fn run(a: &AnalyzeArgs) -> Result<Exit, CliError> {
    let spec = load_script(&a.file, a.theta.as_ref())?;
    let opts = ReportOptions {
        isotropy_bound: a.report.isotropy_bound as usize,
    };
    let rep = geometry_report_with(&spec.bundle, &opts).map_err(|e| geometry_error(&a.file, e))?;
    let geometry = GeometryJson::new(Some(&spec.space), Some(&rep));
    let weights = geometry.weights.clone().unwrap_or_default();
    let mut out = render_report(&spec.name, spec.space.dim(), &weights, &rep);
    let checks = check_expectations(&rep, &a.expect);
    for c in &checks {
        let verdict = if c.ok {
            "ok".to_string()
        } else {
            format!("FAILED, got {}", c.actual)
        };
        out.push_str(&format!("expect {} = {}: {verdict}\n", c.key, c.expected));
    }
    print!("{out}");
    let pass = checks.iter().all(|c| c.ok);
    if let Some(p) = &a.json {
        let doc = AnalyzeJson {
            name: spec.name.clone(),
            n: spec.space.dim(),
            geometry,
            l_in: rep.l_in.to_string(),
            l_out: rep.l_out.to_string(),
            eq32_residual: rep.eq32_residual.to_string(),
            expectations: checks,
            pass,
        };
        write_output(p, &json::to_text(&doc))?;
    }
    Ok(if pass { Exit::Success } else { Exit::Failure })
}
