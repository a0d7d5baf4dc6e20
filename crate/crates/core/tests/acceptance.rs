//! Acceptance criteria for E7 on its 56-dimensional module. Prints one
//! PASS/FAIL line per criterion and exits nonzero if any fails.

use std::collections::HashSet;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::{Duration, Instant};

use holonomy_core::arith::{q, Q};
use holonomy_core::bbw::{
    parabolic_from_node, spencer_cross_check, twisted_conormal_cohomology, FiberModel,
};
use holonomy_core::curvature::*;
use holonomy_core::lie::{RootSystem, Weight};
use holonomy_core::poisson::{
    jet_center, jet_directions, jet_verify, run_poisson_suite, schur_solver, PhiMap, Poisson,
    PoissonCheck, PoissonOptions,
};
use holonomy_core::rep::{
    check_homomorphism, check_weight_basis, invariant_symplectic, quartic_random, quartic_sweep,
    sl2_symmetric_power, so_n, zero_algebra, SymplecticModel,
};
use holonomy_core::sparse::SparseVec;
use holonomy_core::Caps;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240607;

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

struct Context {
    model: SymplecticModel,
    build_time: Duration,
    table: Vec<CurvatureElement>,
    phi: TwoSlotCurvature,
}

fn structure_build(cx: &Context) -> Outcome {
    let m = &cx.model;
    let rs = RootSystem::from_dynkin("E7").map_err(|e| e.to_string())?;
    ensure(rs.num_roots() == 126, format!("{} roots", rs.num_roots()))?;
    ensure(
        m.dim_g() == 133 && m.adjoint.dim() == 133,
        "adjoint dimension",
    )?;
    ensure(m.dim_v() == 56, "module dimension")?;
    let weights = m.rep.weights().ok_or("module has no weights")?;
    let distinct: HashSet<&Weight> = weights.iter().collect();
    ensure(distinct.len() == 56, "weight multiplicities")?;
    ensure(check_weight_basis(&m.algebra, &m.rep), "weight basis")?;
    m.algebra.check_jacobi().map_err(|e| e.to_string())?;
    check_homomorphism(&m.algebra, &m.rep).map_err(|e| e.to_string())?;
    ensure(
        cx.build_time < Duration::from_secs(120),
        format!("build took {:.1?}", cx.build_time),
    )?;
    Ok(format!(
        "126 roots, dims 133/56, all brackets exact, built in {:.1?}",
        cx.build_time
    ))
}

fn invariant_pairing(cx: &Context) -> Outcome {
    let m = &cx.model;
    let solved = invariant_symplectic(&m.rep).map_err(|e| e.to_string())?;
    let (a, b) = (0..56)
        .flat_map(|a| (0..56).map(move |b| (a, b)))
        .find(|&(a, b)| solved.get(a, b) != q(0))
        .ok_or("zero form")?;
    let scale = m.pairing.get(a, b) / solved.get(a, b);
    let proportional = solved.matrix().scale(&scale) == *m.pairing.matrix();
    ensure(proportional, "solved form differs from the model pairing")?;
    ensure(
        m.pairing.invariance_failures(&m.rep) == 0,
        "invariance residual",
    )?;
    ensure(m.pairing.is_nondegenerate(), "degenerate")?;
    Ok("invariant skew forms 1-dimensional, residual 0 on 133 generators x all pairs".into())
}

fn constants(cx: &Context) -> Outcome {
    let m = &cx.model;
    ensure(m.mu != q(0), "mu is zero")?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let random = quartic_random(&m.pairing, &m.circ, &m.mu, &mut rng, 100);
    ensure(
        random.passed() && random.checked == 100,
        format!("{random:?}"),
    )?;
    let sweep = quartic_sweep(&m.pairing, &m.circ, &m.mu, m.rep.weights());
    ensure(sweep.passed(), format!("{sweep:?}"))?;
    let (a, b, k) = (0..56)
        .flat_map(|a| (a..56).map(move |b| (a, b)))
        .find_map(|(a, b)| Some((a, b, m.circ.get(a, b).entries().first()?.0)))
        .ok_or("circ vanishes")?;
    let bad = m.circ.perturbed(a, b, k, &q(1));
    let control = quartic_sweep(&m.pairing, &bad, &m.mu, m.rep.weights());
    ensure(
        !control.passed(),
        "perturbed circ still satisfies the identity",
    )?;
    Ok(format!(
        "mu = {}, 100 random + {} swept quadruples exact, perturbed control fails {} times",
        m.mu, sweep.checked, control.failures
    ))
}

fn curvature_k(cx: &Context) -> Outcome {
    let m = &cx.model;
    let bad = bianchi_failures_table(m, &cx.table);
    ensure(bad.is_empty(), format!("bianchi fails for {bad:?}"))?;
    let r = stacked_rank(&cx.table);
    ensure(r == 133, format!("rank {r}"))?;
    let all: Vec<usize> = (0..133).collect();
    let eq = equivariance_failures(m, &cx.table, &all);
    ensure(eq.is_empty(), format!("{} equivariance failures", eq.len()))?;
    Ok("133 R_A in ker i1, rank 133, equivariance residual 0".into())
}

fn curvature_k1(cx: &Context) -> Outcome {
    let m = &cx.model;
    let bad: usize = (0..56)
        .map(|w| second_bianchi_failures_basis(m, &cx.table, w))
        .sum();
    ensure(bad == 0, format!("{bad} second Bianchi failures"))?;
    let all: Vec<_> = (0..56)
        .map(|w| second_curvature_element(m, &cx.table, &SparseVec::unit(w)))
        .collect();
    let r = second_stacked_rank(&all);
    ensure(r == 56, format!("rank {r}"))?;
    Ok("56 elements in ker i2, rank 56".into())
}

fn phi2(cx: &Context) -> Outcome {
    let m = &cx.model;
    ensure(cx.phi.symmetry_failures() == 0, "phi2 not symmetric")?;
    ensure(skew_failures(m, &cx.table) == 0, "values not skew")?;
    let all: Vec<usize> = (0..133).collect();
    ensure(
        phi_invariance_failures(m, &cx.phi, &all) == 0,
        "phi2 not invariant",
    )?;
    let d1 = stacked_rank(cx.phi.slices());
    ensure(d1 == 133, format!("phi2' rank {d1}"))?;
    let d2 = second_stacked_rank(&phi2_double_prime(m, &cx.phi));
    ensure(d2 == 56, format!("phi2'' rank {d2}"))?;
    Ok("residuals 0, phi2' rank 133, phi2'' rank 56".into())
}

fn bbw(cx: &Context) -> Outcome {
    let err = |e: holonomy_core::Error| e.to_string();
    let rs = cx.model.algebra.root_system();
    let par = parabolic_from_node(rs, 7).map_err(err)?;
    let fiber = FiberModel::from_model(&cx.model).map_err(err)?;
    let caps = Caps::default();
    let start = Instant::now();
    let mut dims = Vec::new();
    for k in 1..=3 {
        let r = twisted_conormal_cohomology(&par, k, &caps, Some(&fiber)).map_err(err)?;
        ensure(r.euler_matches, format!("k={k} Euler mismatch"))?;
        let t = r.table.ok_or(format!("k={k} undetermined"))?;
        let d: Vec<u64> = (0..=27)
            .map(|i| t.dim(rs, i))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        ensure(
            d.iter().skip(2).all(|&x| x == 0),
            format!("k={k} higher cohomology"),
        )?;
        if k == 3 {
            let h1 = t.degree(1);
            ensure(
                h1.multiplicity(&Weight::fundamental(7, 1)) == 1,
                "k=3 H1 is not the adjoint",
            )?;
        }
        dims.push((d[0], d[1]));
    }
    ensure(
        dims == [(134, 0), (0, 0), (0, 133)],
        format!("(H0, H1) = {dims:?}"),
    )?;
    ensure(start.elapsed() < Duration::from_secs(600), "too slow")?;
    Ok(format!(
        "(H0, H1) for k=1,2,3: {dims:?} in {:.1?}",
        start.elapsed()
    ))
}

fn oracle_equivalence(_: &Context) -> Outcome {
    let mut out = Vec::new();
    for k in [2, 3] {
        let r = spencer_cross_check(k, &Caps::default()).map_err(|e| e.to_string())?;
        ensure(
            r.prolongation_matches,
            format!("k={k}: g1 {} vs H0 {}", r.prolongation_dim, r.h0_sym2),
        )?;
        ensure(
            r.curvature_bounded,
            format!(
                "k={k}: {} - {} > {}",
                r.curvature_dim, r.boundary_dim, r.h1_sym3
            ),
        )?;
        out.push(format!(
            "k={k}: g1 = H0 = {}, {} - {} <= {}",
            r.prolongation_dim, r.curvature_dim, r.boundary_dim, r.h1_sym3
        ));
    }
    Ok(out.join("; "))
}

fn poisson(cx: &Context) -> Outcome {
    let m = &cx.model;
    let base = PhiMap::from_two_slot(&cx.phi, &m.pairing, q(0));
    let full = PoissonOptions {
        seed: SEED,
        points: 100,
        triples: 20,
        rank_points: 100,
        u0_points: 5,
        checks: vec![PoissonCheck::Jacobi, PoissonCheck::Rank, PoissonCheck::U0],
        ..PoissonOptions::default()
    };
    let r = run_poisson_suite(&Poisson::new(m, base.clone()), &full).map_err(|e| e.to_string())?;
    let failed: Vec<&str> = r
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.as_str())
        .collect();
    ensure(failed.is_empty(), format!("tau=0 failures {failed:?}"))?;
    ensure(r.jacobi_evaluations == 2000, "jacobi sample size")?;
    ensure(r.ranks.values().sum::<usize>() == 100, "rank sample size")?;
    ensure(
        r.ranks.keys().all(|&k| k % 2 == 0 && k < 189),
        format!("ranks {:?}", r.ranks),
    )?;
    ensure(r.u0_hits.unwrap_or(0) >= 1, "no point in U0")?;
    for t in ["1", "-2", "1/3"] {
        let tau = Q::from_str(t).unwrap();
        let jac = PoissonOptions {
            checks: vec![PoissonCheck::Jacobi],
            ..full.clone()
        };
        let rt = run_poisson_suite(&Poisson::new(m, base.with_tau(tau)), &jac)
            .map_err(|e| e.to_string())?;
        ensure(
            rt.passed() && rt.jacobi_evaluations == 2000,
            format!("jacobi fails for tau={t}"),
        )?;
    }
    Ok(format!(
        "jacobi 0 on 100 x 20 for tau in {{0, 1, -2, 1/3}}; ranks {:?}; symmetry_dim {:?}; U0 hits {}/5",
        r.ranks,
        r.symmetry_dim,
        r.u0_hits.unwrap_or(0)
    ))
}

fn jet(cx: &Context) -> Outcome {
    let m = &cx.model;
    let pois = Poisson::new(m, PhiMap::from_two_slot(&cx.phi, &m.pairing, q(0)));
    let center = jet_center(&pois, SEED).map_err(|e| e.to_string())?;
    let dirs = jet_directions(SEED, 133, 56, 6);
    let (_, report) = jet_verify(&pois, &center, &dirs).map_err(|e| e.to_string())?;
    let failed: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.as_str())
        .collect();
    ensure(failed.is_empty(), format!("failed {failed:?}"))?;
    let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
    for needed in [
        "torsion vanishes to order 2",
        "curvature at center equals phi2'(p)",
    ] {
        ensure(names.contains(&needed), format!("missing {needed}"))?;
    }
    ensure(report.center_in_u0, "center not in U0")?;
    ensure(
        report.curvature_span_rank == 133,
        format!("span {}", report.curvature_span_rank),
    )?;
    Ok(format!(
        "{} order-2 checks exact over {} directions; curvature spans g",
        names.len(),
        report.directions
    ))
}

fn schur(_: &Context) -> Outcome {
    let caps = Caps::default();
    let sym = |k| sl2_symmetric_power(k, false);
    let pairs = [
        (sym(1), sym(1)),
        (sym(1), sym(2)),
        (sym(2), sym(3)),
        (sym(3), sym(3)),
        (so_n(3), so_n(3)),
    ];
    for (i, (v, w)) in pairs.iter().enumerate() {
        let s = schur_solver(v, w, &caps).map_err(|e| e.to_string())?;
        ensure(
            s.nontrivial && s.space.dim() == 0,
            format!("pair {i}: dimension {}", s.space.dim()),
        )?;
    }
    let trivial = zero_algebra(1);
    let control = schur_solver(&trivial, &trivial, &caps).map_err(|e| e.to_string())?;
    ensure(
        !control.nontrivial && control.space.dim() == 1,
        "trivial control",
    )?;
    Ok(format!(
        "{} irreducible nontrivial pairs give 0; trivial action gives 1",
        pairs.len()
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let model = SymplecticModel::build("E7", 7).expect("E7 model");
    let build_time = start.elapsed();
    let table = curvature_table(&model);
    let phi = phi2_element(&model, &table);
    let cx = Context {
        model,
        build_time,
        table,
        phi,
    };
    let criteria: [(&str, fn(&Context) -> Outcome); 11] = [
        ("structure build", structure_build),
        ("invariant pairing", invariant_pairing),
        ("quartic constants", constants),
        ("curvature space K", curvature_k),
        ("second curvature space K1", curvature_k1),
        ("phi2 normal form", phi2),
        ("bbw cohomology", bbw),
        ("oracle equivalence", oracle_equivalence),
        ("poisson suite", poisson),
        ("jet suite", jet),
        ("schur vanishing", schur),
    ];
    let mut failures = 0;
    let mut err = std::io::stderr();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(|| f(&cx))).unwrap_or_else(|_| Err("panicked".into()));
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        let _ = writeln!(
            err,
            "{tag} {:>2} {name}: {detail} [{:.1?}]",
            i + 1,
            t.elapsed()
        );
    }
    let _ = writeln!(
        err,
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
