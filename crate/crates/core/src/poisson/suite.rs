use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::jet::{jet_verify, regular_semisimple_covector, JetReport};
use super::phi::{WPoint, WVector};
use super::structure::Poisson;
use crate::arith::{random_vector, QJson, Q};
use crate::curvature::{bianchi_failures, k0_membership, CheckResult};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PoissonCheck {
    Jacobi,
    Admissible,
    Rank,
    U0,
    Jet,
}

impl PoissonCheck {
    pub const ALL: [PoissonCheck; 5] = [
        PoissonCheck::Jacobi,
        PoissonCheck::Admissible,
        PoissonCheck::Rank,
        PoissonCheck::U0,
        PoissonCheck::Jet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PoissonCheck::Jacobi => "jacobi",
            PoissonCheck::Admissible => "admissible",
            PoissonCheck::Rank => "rank",
            PoissonCheck::U0 => "u0",
            PoissonCheck::Jet => "jet",
        }
    }
}

impl fmt::Display for PoissonCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PoissonCheck {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PoissonCheck::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown check {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct PoissonOptions {
    pub seed: u64,
    pub points: usize,
    pub triples: usize,
    /// Support size of each random linear observable, per summand of `W`.
    pub support: usize,
    /// Leading sample points used by the admissibility, rank and `U0` checks.
    pub admissible_points: usize,
    pub rank_points: usize,
    pub u0_points: usize,
    pub jet_directions: usize,
    pub checks: Vec<PoissonCheck>,
}

impl Default for PoissonOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            points: 100,
            triples: 20,
            support: 2,
            admissible_points: 3,
            rank_points: 20,
            u0_points: 20,
            jet_directions: 6,
            checks: PoissonCheck::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub check: PoissonCheck,
    pub point: WPoint,
}

#[derive(Debug, Clone, Serialize)]
pub struct PoissonReport {
    pub seed: u64,
    pub points: usize,
    pub triples: usize,
    pub admissible_points: usize,
    pub rank_points: usize,
    pub u0_points: usize,
    pub tau: QJson,
    pub checks: Vec<CheckResult>,
    pub jacobi_evaluations: usize,
    pub generic_rank: Option<usize>,
    pub symmetry_dim: Option<usize>,
    /// Observed rank -> number of points.
    pub ranks: BTreeMap<usize, usize>,
    pub u0_hits: Option<usize>,
    pub jet: Option<JetReport>,
    pub witness_points: Vec<Witness>,
}

impl PoissonReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Random observable with `support` algebra and `support` module coordinates.
fn mixed_observable(rng: &mut ChaCha8Rng, dg: usize, n: usize, support: usize) -> WVector {
    let a = WVector::random(rng, dg, 0, support);
    let x = WVector::random(rng, n, 0, support);
    WVector::new(a.a, x.a)
}

/// Seeded sample of points; the same seed gives the same points for every check.
pub fn sample_points(seed: u64, count: usize, dim_g: usize, n: usize) -> Vec<WPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| WPoint::random(&mut rng, dim_g, n))
        .collect()
}

/// Jet center: `p` dual to a regular semisimple element, `nu` seeded.
pub fn jet_center(poisson: &Poisson, seed: u64) -> Result<WPoint> {
    let m = poisson.model();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6a65_7400);
    Ok(WPoint {
        p: regular_semisimple_covector(m)?,
        nu: random_vector(&mut rng, m.dim_v()),
    })
}

/// Seeded choice of `count` jet directions, split between `g` and `V`.
pub fn jet_directions(seed: u64, dim_g: usize, n: usize, count: usize) -> Vec<usize> {
    use rand::seq::index::sample;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6469_7200);
    let kg = (count / 2).min(dim_g);
    let kv = (count - kg).min(n);
    let mut out: Vec<usize> = sample(&mut rng, dim_g, kg).into_iter().collect();
    out.extend(sample(&mut rng, n, kv).into_iter().map(|i| dim_g + i));
    out.sort_unstable();
    out
}

pub fn run_poisson_suite(poisson: &Poisson, opts: &PoissonOptions) -> Result<PoissonReport> {
    let m = poisson.model();
    let (dg, n) = (m.dim_g(), m.dim_v());
    let pts = sample_points(opts.seed, opts.points, dg, n);
    let mut report = PoissonReport {
        seed: opts.seed,
        points: opts.points,
        triples: opts.triples,
        admissible_points: opts.admissible_points.min(opts.points),
        rank_points: opts.rank_points.min(opts.points),
        u0_points: opts.u0_points.min(opts.points),
        tau: QJson::from(poisson.phi().tau()),
        checks: Vec::new(),
        jacobi_evaluations: 0,
        generic_rank: None,
        symmetry_dim: None,
        ranks: BTreeMap::new(),
        u0_hits: None,
        jet: None,
        witness_points: Vec::new(),
    };
    let mut checks: Vec<PoissonCheck> = opts.checks.clone();
    checks.sort_unstable();
    checks.dedup();
    for check in checks {
        match check {
            PoissonCheck::Jacobi => {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x6a61_6300);
                let mut witness = None;
                for pt in &pts {
                    for _ in 0..opts.triples {
                        let t: Vec<WVector> = (0..3)
                            .map(|_| mixed_observable(&mut rng, dg, n, opts.support))
                            .collect();
                        report.jacobi_evaluations += 1;
                        if witness.is_none()
                            && poisson.jacobi_residual(pt, [&t[0], &t[1], &t[2]]) != Q::from(0)
                        {
                            witness = Some(pt.clone());
                        }
                    }
                }
                report
                    .checks
                    .push(CheckResult::new("jacobi", witness.is_none()));
                if let Some(point) = witness {
                    report.witness_points.push(Witness { check, point });
                }
            }
            PoissonCheck::Admissible => {
                let mut bad = None;
                for pt in pts.iter().take(opts.admissible_points) {
                    let d = poisson.phi().dual_differential_element(&pt.p);
                    if bianchi_failures(&m.rep, &d) != 0 {
                        bad = Some(pt.clone());
                        break;
                    }
                }
                report
                    .checks
                    .push(CheckResult::new("admissible", bad.is_none()));
                if let Some(point) = bad {
                    report.witness_points.push(Witness { check, point });
                }
            }
            PoissonCheck::Rank => {
                let dim = dg + n;
                let mut even = true;
                for pt in pts.iter().take(opts.rank_points) {
                    let r = poisson.rank(pt);
                    even &= r % 2 == 0;
                    *report.ranks.entry(r).or_default() += 1;
                }
                let generic = report.ranks.keys().next_back().copied();
                report.generic_rank = generic;
                report.symmetry_dim = generic.map(|r| dim - r);
                report.checks.push(CheckResult::new("rank even", even));
                report.checks.push(CheckResult::new(
                    "symmetry dimension positive",
                    generic.is_none_or(|r| r < dim),
                ));
            }
            PoissonCheck::U0 => {
                let mut hits = 0;
                let mut witness = None;
                for pt in pts.iter().take(opts.u0_points) {
                    if k0_membership(&poisson.phi().dual_differential_element(&pt.p)) {
                        hits += 1;
                        if witness.is_none() {
                            witness = Some(pt.clone());
                        }
                    }
                }
                report.u0_hits = Some(hits);
                report
                    .checks
                    .push(CheckResult::new("u0 nonempty", witness.is_some()));
                if let Some(point) = witness {
                    report.witness_points.push(Witness { check, point });
                }
            }
            PoissonCheck::Jet => {
                let center = jet_center(poisson, opts.seed)?;
                let dirs = jet_directions(opts.seed, dg, n, opts.jet_directions);
                match jet_verify(poisson, &center, &dirs) {
                    Ok((_, jet)) => {
                        report
                            .checks
                            .push(CheckResult::new("jet structure equations", jet.passed()));
                        report.checks.push(CheckResult::new(
                            "jet curvature spans g",
                            jet.curvature_span_rank == dg,
                        ));
                        report.jet = Some(jet);
                    }
                    Err(Error::Inconsistent(_)) => {
                        report
                            .checks
                            .push(CheckResult::new("jet structure equations", false));
                    }
                    Err(e) => return Err(e),
                }
                report.witness_points.push(Witness {
                    check,
                    point: center,
                });
            }
        }
    }
    Ok(report)
}
