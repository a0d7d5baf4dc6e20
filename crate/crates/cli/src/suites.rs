use std::collections::HashSet;
use std::str::FromStr;

use clap::ValueEnum;
use holonomy_core::arith::{q, QJson, Q};
use holonomy_core::bbw::{
    exact_sequence_checks, parabolic_from_node, twisted_conormal_cohomology, FiberModel,
};
use holonomy_core::curvature::*;
use holonomy_core::lie::Weight;
use holonomy_core::poisson::{
    phi_from_model, run_poisson_suite, PhiMap, Poisson, PoissonCheck, PoissonOptions,
};
use holonomy_core::rep::{
    check_homomorphism, check_weight_basis, invariant_symplectic, quartic_random, quartic_sweep,
    CircProduct, SymplecticModel,
};
use holonomy_core::sparse::SparseVec;
use holonomy_core::{Caps, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Invariants,
    Curvature,
    Bbw,
    Poisson,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Invariants => "invariants",
            Suite::Curvature => "curvature",
            Suite::Bbw => "bbw",
            Suite::Poisson => "poisson",
        }
    }
}

pub struct SuiteOutput {
    pub checks: Vec<CheckResult>,
    pub data: Value,
}

fn check(out: &mut Vec<CheckResult>, name: &str, pass: bool) {
    out.push(CheckResult::new(name, pass));
}

pub fn invariants(m: &SymplecticModel, seed: u64, samples: usize) -> SuiteOutput {
    let mut c = Vec::new();
    let rs = m.algebra.root_system();
    check(
        &mut c,
        "root count",
        rs.num_roots() + rs.rank() == m.dim_g(),
    );
    check(
        &mut c,
        "structure constants satisfy jacobi",
        m.algebra.check_jacobi().is_ok(),
    );
    check(&mut c, "adjoint dimension", m.adjoint.dim() == m.dim_g());
    check(
        &mut c,
        "module is a representation",
        check_homomorphism(&m.algebra, &m.rep).is_ok(),
    );
    check(
        &mut c,
        "module basis is a weight basis",
        check_weight_basis(&m.algebra, &m.rep),
    );
    let distinct = m
        .rep
        .weights()
        .map(|w| w.iter().collect::<HashSet<_>>().len());
    check(
        &mut c,
        "weights have multiplicity one",
        distinct == Some(m.dim_v()),
    );
    check(
        &mut c,
        "invariant skew forms are one-dimensional",
        invariant_symplectic(&m.rep).is_ok(),
    );
    check(
        &mut c,
        "pairing invariant",
        m.pairing.invariance_failures(&m.rep) == 0,
    );
    check(
        &mut c,
        "pairing nondegenerate",
        m.pairing.is_nondegenerate(),
    );
    check(
        &mut c,
        "circ symmetric",
        CircProduct::symmetry_failures(&m.rep, &m.pairing) == 0,
    );
    check(
        &mut c,
        "circ equivariant",
        m.circ.equivariance_failures(&m.rep, &m.adjoint) == 0,
    );
    check(&mut c, "mu nonzero", m.mu != q(0));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = quartic_random(&m.pairing, &m.circ, &m.mu, &mut rng, samples);
    check(
        &mut c,
        "quartic identity on random quadruples",
        random.passed(),
    );
    let sweep = quartic_sweep(&m.pairing, &m.circ, &m.mu, m.rep.weights());
    check(&mut c, "quartic identity on weight sweep", sweep.passed());
    let perturbed =
        perturbed_circ(m).map(|bad| quartic_sweep(&m.pairing, &bad, &m.mu, m.rep.weights()));
    check(
        &mut c,
        "perturbed circ violates quartic identity",
        perturbed.is_some_and(|r| !r.passed()),
    );
    SuiteOutput {
        checks: c,
        data: json!({
            "roots": rs.num_roots(),
            "dim_g": m.dim_g(),
            "dim_v": m.dim_v(),
            "mu": QJson::from(&m.mu),
            "quartic_random": random.checked,
            "quartic_sweep": sweep.checked,
        }),
    }
}

fn perturbed_circ(m: &SymplecticModel) -> Option<CircProduct> {
    let n = m.dim_v();
    (0..n)
        .flat_map(|a| (a..n).map(move |b| (a, b)))
        .find_map(|(a, b)| {
            let k = m.circ.get(a, b).entries().first()?.0;
            Some(m.circ.perturbed(a, b, k, &q(1)))
        })
}

pub fn curvature(m: &SymplecticModel) -> SuiteOutput {
    let mut c = Vec::new();
    let (dg, n) = (m.dim_g(), m.dim_v());
    let all: Vec<usize> = (0..dg).collect();
    let table = curvature_table(m);
    check(
        &mut c,
        "first bianchi for every R_A",
        bianchi_failures_table(m, &table).is_empty(),
    );
    let k_rank = stacked_rank(&table);
    check(&mut c, "R_A linearly independent", k_rank == dg);
    check(
        &mut c,
        "R_A equivariant",
        equivariance_failures(m, &table, &all).is_empty(),
    );
    let second_ok = (0..n).all(|w| second_bianchi_failures_basis(m, &table, w) == 0);
    check(&mut c, "second bianchi for every K1 element", second_ok);
    let k1: Vec<_> = (0..n)
        .map(|w| second_curvature_element(m, &table, &SparseVec::unit(w)))
        .collect();
    let k1_rank = second_stacked_rank(&k1);
    drop(k1);
    check(&mut c, "K1 elements linearly independent", k1_rank == n);
    let phi = phi2_element(m, &table);
    check(&mut c, "phi2 symmetric", phi.symmetry_failures() == 0);
    check(
        &mut c,
        "curvature values skew",
        skew_failures(m, &table) == 0,
    );
    check(
        &mut c,
        "phi2 invariant",
        phi_invariance_failures(m, &phi, &all) == 0,
    );
    let p1_unique = p1_invariant_solve(m, &m.algebra.simple_generators()).is_ok();
    check(&mut c, "invariant element of P1 unique", p1_unique);
    let d1 = stacked_rank(phi.slices());
    check(&mut c, "phi2' isomorphism", d1 == dg);
    let d2 = second_stacked_rank(&phi2_double_prime(m, &phi));
    check(&mut c, "phi2'' isomorphism", d2 == n);
    SuiteOutput {
        checks: c,
        data: json!({
            "K": {"method": "formula", "computed_dim": k_rank},
            "K1": {"method": "formula", "computed_dim": k1_rank},
            "phi2_prime_rank": d1,
            "phi2_double_prime_rank": d2,
        }),
    }
}

pub fn bbw(m: &SymplecticModel, caps: &Caps) -> Result<SuiteOutput> {
    let mut c = Vec::new();
    let rs = m.algebra.root_system();
    let par = parabolic_from_node(rs, m.node)?;
    let fiber = FiberModel::from_model(m)?;
    let dg = m.dim_g() as u64;
    let (first, second) = exact_sequence_checks(&par, caps)?;
    check(&mut c, "first conormal sequence", first);
    check(&mut c, "second conormal sequence", second);
    let mut tables = Vec::new();
    for k in 1..=3 {
        let r = twisted_conormal_cohomology(&par, k, caps, Some(&fiber))?;
        check(
            &mut c,
            &format!("k={k} euler characteristic"),
            r.euler_matches,
        );
        let Some(t) = &r.table else {
            check(&mut c, &format!("k={k} cohomology determined"), false);
            continue;
        };
        let dims: Vec<u64> = (0..=par.dim_x())
            .map(|i| t.dim(rs, i))
            .collect::<Result<_>>()?;
        let expected = match k {
            1 => (dg + 1, 0),
            2 => (0, 0),
            _ => (0, dg),
        };
        let higher_vanish = dims.iter().skip(2).all(|&d| d == 0);
        check(&mut c, &format!("k={k} h0"), dims[0] == expected.0);
        check(&mut c, &format!("k={k} h1"), dims[1] == expected.1);
        check(
            &mut c,
            &format!("k={k} higher cohomology vanishes"),
            higher_vanish,
        );
        if k == 1 {
            let h0 = t.degree(0);
            let split = h0.multiplicity(&Weight::zero(rs.rank())) == 1;
            check(&mut c, "k=1 center splits off", split);
        }
        tables.push(json!({"k": k, "rank": r.rank, "resolved_trivial": r.resolved_trivial, "table": t.report(rs)?}));
    }
    Ok(SuiteOutput {
        checks: c,
        data: Value::Array(tables),
    })
}

/// Adds `p_0 p_1` to the coefficient of every pair `(a, a+1)`.
pub fn corrupt(phi: &PhiMap) -> PhiMap {
    let mut out = phi.clone();
    for a in 0..phi.dim_v().saturating_sub(1) {
        out = out.perturbed(a, a + 1, 0, 1.min(phi.dim_g() - 1), q(1));
    }
    out
}

pub const EXTRA_TAUS: [&str; 3] = ["1", "-2", "1/3"];

pub fn poisson(m: &SymplecticModel, opts: &PoissonOptions, corrupted: bool) -> Result<SuiteOutput> {
    let mut c = Vec::new();
    let base = phi_from_model(m, q(0));
    let prepare = |phi: PhiMap| if corrupted { corrupt(&phi) } else { phi };
    let pois = Poisson::new(m, prepare(base.clone()));
    let main = run_poisson_suite(&pois, opts)?;
    c.extend(
        main.checks
            .iter()
            .map(|r| CheckResult::new(format!("tau=0 {}", r.name), r.pass)),
    );
    let mut extra = Vec::new();
    if opts.checks.contains(&PoissonCheck::Jacobi) {
        for t in EXTRA_TAUS {
            let tau = Q::from_str(t).expect("literal rational");
            let pois = Poisson::new(m, prepare(base.with_tau(tau)));
            let jac = PoissonOptions {
                checks: vec![PoissonCheck::Jacobi],
                ..opts.clone()
            };
            let r = run_poisson_suite(&pois, &jac)?;
            c.extend(
                r.checks
                    .iter()
                    .map(|x| CheckResult::new(format!("tau={t} {}", x.name), x.pass)),
            );
            extra.push(r);
        }
    }
    Ok(SuiteOutput {
        checks: c,
        data: json!({"corrupted_phi": corrupted, "tau0": main, "jacobi_tau": extra}),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupt_touches_every_adjacent_pair() {
        let m = SymplecticModel::build("C2", 1).unwrap();
        let phi = phi_from_model(&m, q(0));
        let bad = corrupt(&phi);
        let ones = vec![q(1); m.dim_g()];
        for a in 0..m.dim_v() - 1 {
            let shift = bad.quadratic_basis(&ones, &ones, a, a + 1)
                - phi.quadratic_basis(&ones, &ones, a, a + 1);
            assert_ne!(shift, q(0));
        }
    }
}
