use holonomy_core::bbw::spencer_cross_check;
use holonomy_core::curvature::{
    bianchi_failures, curvature_space_bruteforce, prolongation, spencer_boundary, stacked_rank,
    CheckResult,
};
use holonomy_core::rep::oracle_rep;
use holonomy_core::{Caps, Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

pub const DEFAULT_ORACLES: &str = "sl2-sym1,sl2-sym2,sl2-sym3,so3,so4";

#[derive(Debug, Clone, Serialize)]
pub struct OracleEntry {
    pub name: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refusal: Option<String>,
    pub checks: Vec<CheckResult>,
    pub data: Value,
}

/// Brute force versus cohomology on the rational normal curve.
fn spencer(k: usize, caps: &Caps) -> Result<(Vec<CheckResult>, Value)> {
    let r = spencer_cross_check(k, caps)?;
    let checks = vec![
        CheckResult::new("g1 equals H0", r.prolongation_matches),
        CheckResult::new("K minus boundary bounded by H1", r.curvature_bounded),
    ];
    Ok((checks, serde_json::to_value(&r)?))
}

fn bruteforce(name: &str, caps: &Caps) -> Result<(Vec<CheckResult>, Value)> {
    let rep = oracle_rep(name)?;
    let g1 = prolongation(&rep, caps)?;
    let k = curvature_space_bruteforce(&rep, caps)?;
    let boundary = spencer_boundary(&rep, &g1);
    let checks = vec![
        CheckResult::new(
            "K satisfies bianchi",
            k.iter().all(|r| bianchi_failures(&rep, r) == 0),
        ),
        CheckResult::new(
            "boundary of g1 lies in K",
            boundary.iter().all(|r| bianchi_failures(&rep, r) == 0),
        ),
    ];
    let data = json!({
        "dim_g": rep.algebra_dim(),
        "dim_v": rep.dim(),
        "prolongation_dim": g1.dim(),
        "curvature_dim": k.len(),
        "boundary_dim": stacked_rank(&boundary),
    });
    Ok((checks, data))
}

pub fn run(name: &str, caps: &Caps) -> Result<OracleEntry> {
    let outcome = match name.strip_prefix("sl2-sym").map(str::parse::<usize>) {
        Some(Ok(k)) => spencer(k, caps),
        Some(Err(_)) => Err(Error::Invalid(format!("bad oracle size in {name:?}"))),
        None => bruteforce(name, caps),
    };
    match outcome {
        Ok((checks, data)) => Ok(OracleEntry {
            name: name.to_string(),
            status: if checks.iter().all(|c| c.pass) {
                "pass"
            } else {
                "fail"
            },
            refusal: None,
            checks,
            data,
        }),
        Err(e @ Error::CapExceeded { .. }) => Ok(OracleEntry {
            name: name.to_string(),
            status: "refused",
            refusal: Some(e.to_string()),
            checks: Vec::new(),
            data: Value::Null,
        }),
        Err(e) => Err(e),
    }
}
