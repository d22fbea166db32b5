//! Plain-text rendering. JSON output serializes the same values directly.

use std::fmt::Write;

use serde_json::Value;
use weierstrass::catalog::EntryResult;
use weierstrass::criteria::{Classification, NormalizationCheck};
use weierstrass::inequalities::FuzzSummary;
use weierstrass::special::Constants;

pub fn normalization(n: &NormalizationCheck) -> String {
    let mut s = format!(
        "f(1) = {} ({}), positive on box: {}",
        n.f1,
        if (n.f1 - 1.0).abs() <= NormalizationCheck::F1_TOLERANCE {
            "ok"
        } else {
            "expected 1"
        },
        n.positive_on_box
    );
    if let Some(d) = &n.detail {
        write!(s, " ({d})").unwrap();
    }
    s
}

pub fn classification(c: &Classification) -> String {
    let mut s = format!("f(x) = {} on {}\n", c.expression, c.domain);
    writeln!(s, "normalization: {}", normalization(&c.normalization)).unwrap();
    for v in &c.verdicts {
        writeln!(s, "{v}").unwrap();
    }
    s
}

pub fn constants(c: &Constants) -> String {
    format!(
        "euler_gamma  {:.16}  |gamma + psi(1)| = {:e}\n\
         x_min        {:.16}  psi(x_min) = {:e}\n\
         x1           {:.16}  x_min - 1\n\
         xi           {:.16}  +/- {:e} ({} series terms, residual {:e})\n",
        c.euler_gamma,
        c.gamma_crosscheck,
        c.x_min,
        c.digamma_at_x_min,
        c.x1,
        c.xi,
        c.xi_error_bound,
        c.series_terms,
        c.xi_residual
    )
}

pub fn catalog(entries: &[EntryResult]) -> String {
    let mut s = String::new();
    for e in entries {
        writeln!(
            s,
            "{} [{}] {}",
            e.id,
            if e.matched { "match" } else { "MISMATCH" },
            e.provenance
        )
        .unwrap();
        for c in &e.cases {
            writeln!(s, "  {}: f(x) = {}", c.label, c.expression).unwrap();
            if let Some(err) = &c.error {
                writeln!(s, "    error: {err}").unwrap();
            }
            for k in &c.checks {
                writeln!(
                    s,
                    "    {} {}",
                    if k.matched { "ok  " } else { "MISS" },
                    k.actual
                )
                .unwrap();
            }
        }
    }
    let matched = entries.iter().filter(|e| e.matched).count();
    writeln!(s, "{matched}/{} entries match", entries.len()).unwrap();
    s
}

fn num(v: &Value, key: &str) -> String {
    v.get(key)
        .and_then(Value::as_f64)
        .map_or_else(|| "-".into(), |x| x.to_string())
}

pub fn ineq(r: &Value) -> String {
    let inputs: Vec<String> = r["inputs"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|x| x.to_string())
        .collect();
    let holds = r["holds"].as_bool().unwrap_or(false);
    let mut s = format!(
        "{}({}): {}\n",
        r["name"].as_str().unwrap_or("?"),
        inputs.join(", "),
        if holds { "holds" } else { "FAILS" }
    );
    for key in ["lhs", "rhs", "slack"] {
        writeln!(s, "  {key:<6}{}", num(r, key)).unwrap();
    }
    for note in r["notes"].as_array().into_iter().flatten() {
        writeln!(s, "  note: {}", note.as_str().unwrap_or_default()).unwrap();
    }
    s
}

pub fn fuzz(f: &FuzzSummary) -> String {
    format!(
        "{}: {} samples (seed {}), {} violations, min slack {:e} at {:?}\n",
        f.name, f.samples, f.seed, f.violations, f.min_slack, f.worst_inputs
    )
}
