use std::time::Instant;

use clap::ValueEnum;
use hooksum_core::identities::{
    abel_sides, bijection_check, fresh_pair, hurwitz_check, psi_recursion_check, recursion_check,
    strehl_convolution_check, theorem11_check, IdentityError,
};
use hooksum_core::json::var_to_json;
use hooksum_core::matrixtree::{matrix_tree_check, MatrixTreeMismatch};
use hooksum_core::LabelSet;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::render_poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Thm11,
    Recursion,
    Strehl,
    Abel,
    Hurwitz,
    Psi,
    Matrixtree,
    Bijection,
    All,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Thm11 => "thm11",
            Check::Recursion => "recursion",
            Check::Strehl => "strehl",
            Check::Abel => "abel",
            Check::Hurwitz => "hurwitz",
            Check::Psi => "psi",
            Check::Matrixtree => "matrixtree",
            Check::Bijection => "bijection",
            Check::All => "all",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Params {
    pub labels: Option<LabelSet>,
    pub a: Option<u32>,
    pub n: Option<u32>,
    pub u: Option<BigInt>,
    pub v: Option<BigInt>,
    pub labels_max: u32,
}

impl Params {
    fn labels(&self) -> Result<&LabelSet, String> {
        self.labels
            .as_ref()
            .ok_or_else(|| "--labels is required".into())
    }

    fn n(&self) -> Result<u32, String> {
        self.n.ok_or_else(|| "--n is required".into())
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        if let Some(l) = &self.labels {
            m.insert("labels".into(), json!(l.as_slice()));
        }
        if let Some(a) = self.a {
            m.insert("a".into(), json!(a));
        }
        if let Some(n) = self.n {
            m.insert("n".into(), json!(n));
        }
        if let Some(u) = &self.u {
            m.insert("u".into(), json!(u.to_string()));
        }
        if let Some(v) = &self.v {
            m.insert("v".into(), json!(v.to_string()));
        }
        Value::Object(m)
    }
}

pub struct Outcome {
    pub report: Value,
    /// 0 on pass, 1 on a failed identity
    pub code: u8,
}

/// Runs one check, or the whole suite for [`Check::All`]. `Err` is a usage
/// error (missing or invalid parameters).
pub fn run(check: Check, params: &Params, pretty: bool) -> Result<Outcome, String> {
    if check == Check::All {
        return run_all(params.labels_max, pretty);
    }
    let started = Instant::now();
    let mut report = run_one(check, params, pretty)?;
    let elapsed = started.elapsed().as_millis() as u64;
    report["elapsed_ms"] = json!(elapsed);
    let code = if report["pass"] == json!(true) { 0 } else { 1 };
    Ok(Outcome { report, code })
}

/// Report without timing, so that identical runs give identical bytes.
fn run_one(check: Check, params: &Params, pretty: bool) -> Result<Value, String> {
    let mut report = json!({
        "check": check.name(),
        "params": params.to_json(),
        "pass": true,
    });
    let result: Result<(), IdentityError> = match check {
        Check::Thm11 => theorem11_check(params.labels()?),
        Check::Recursion => {
            let labels = params.labels()?;
            match params.a {
                Some(a) => recursion_check(labels, a),
                None if labels.len() < 2 => {
                    return Err(format!("recursion needs at least two labels, got {labels}"))
                }
                None => labels
                    .iter()
                    .skip(1)
                    .try_for_each(|a| recursion_check(labels, a)),
            }
        }
        Check::Strehl | Check::Hurwitz => {
            let labels = params.labels()?;
            let (u, v) = fresh_pair(labels);
            report["fresh"] = json!({"u": var_to_json(u), "v": var_to_json(v)});
            if check == Check::Strehl {
                strehl_convolution_check(labels)
            } else {
                hurwitz_check(labels)
            }
        }
        Check::Abel => {
            let n = params.n()?;
            let (u, v) = match (&params.u, &params.v) {
                (Some(u), Some(v)) => (u, v),
                _ => return Err("abel needs --u and --v".into()),
            };
            if n == 0 {
                return Err("n must be at least 1".into());
            }
            let (left, right) = abel_sides(n, u, v);
            report["left"] = json!(left.to_string());
            report["right"] = json!(right.to_string());
            if left != right {
                report["pass"] = json!(false);
            }
            Ok(())
        }
        Check::Psi => psi_recursion_check(params.n()?),
        Check::Matrixtree => match matrix_tree_check(params.labels()?) {
            Ok(routes) => {
                report["exact_divisions"] = json!(routes.stats.exact_divisions);
                report["cofactor_fallback"] = json!(routes.stats.cofactor_fallback);
                Ok(())
            }
            Err(e) => Err(e.into()),
        },
        Check::Bijection => bijection_check(params.labels()?).map(|s| {
            let grades: Vec<Value> = s
                .grades
                .iter()
                .map(|(g, count)| json!({"i": g.decreasing, "j": g.displaced, "count": count}))
                .collect();
            report["grades"] = Value::Array(grades);
            report["unsort_steps"] = json!(s.unsort_steps);
        }),
        Check::All => unreachable!("handled by run_all"),
    };
    match result {
        Ok(()) => Ok(report),
        Err(IdentityError::InvalidParameter(msg)) => Err(msg),
        Err(IdentityError::MatrixTree(MatrixTreeMismatch::Input(e))) => Err(e.to_string()),
        Err(e) => {
            report["pass"] = json!(false);
            report["error"] = json!(e.to_string());
            if let Some((left, right)) = e.sides() {
                report["left"] = render_poly(left, pretty);
                report["right"] = render_poly(right, pretty);
            }
            Ok(report)
        }
    }
}

const ABEL_PAIRS: [(i64, i64); 3] = [(2, 1), (-3, 5), (7, -2)];

fn suite(labels_max: u32) -> Vec<(Check, Params)> {
    let mut jobs = Vec::new();
    for k in 1..=labels_max {
        let labels = Some(LabelSet::range(k));
        let with = |check| {
            (
                check,
                Params {
                    labels: labels.clone(),
                    ..Params::default()
                },
            )
        };
        jobs.push(with(Check::Thm11));
        if k >= 2 {
            jobs.push(with(Check::Matrixtree));
            jobs.push(with(Check::Recursion));
        }
        jobs.push(with(Check::Bijection));
        jobs.push(with(Check::Strehl));
        jobs.push(with(Check::Hurwitz));
    }
    for n in 1..=labels_max {
        jobs.push((
            Check::Psi,
            Params {
                n: Some(n),
                ..Params::default()
            },
        ));
        for (u, v) in ABEL_PAIRS {
            jobs.push((
                Check::Abel,
                Params {
                    n: Some(n),
                    u: Some(u.into()),
                    v: Some(v.into()),
                    ..Params::default()
                },
            ));
        }
    }
    jobs
}

/// Every check over `{1..k}` for `k <= labels_max`. Checks run in parallel;
/// results keep the order of [`suite`].
fn run_all(labels_max: u32, pretty: bool) -> Result<Outcome, String> {
    if labels_max == 0 {
        return Err("--labels-max must be at least 1".into());
    }
    let results = suite(labels_max)
        .par_iter()
        .map(|(check, params)| run_one(*check, params, pretty))
        .collect::<Result<Vec<_>, _>>()?;
    let pass = results.iter().all(|r| r["pass"] == json!(true));
    Ok(Outcome {
        report: json!({
            "check": "all",
            "params": {"labels_max": labels_max},
            "pass": pass,
            "results": results,
        }),
        code: if pass { 0 } else { 1 },
    })
}
