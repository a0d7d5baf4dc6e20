use malachite_base::num::basic::traits::Zero;
use serde::Serialize;

use super::phi::{act_vec, WPoint, WVector};
use super::structure::Poisson;
use crate::arith::Q;
use crate::curvature::{curvature_element, k0_membership, CheckResult, CurvatureElement};
use crate::error::{Error, Result};
use crate::rep::SymplecticModel;
use crate::sparse::SparseVec;

/// `A_p`, the algebra element identified with `p` by the Killing form.
pub fn killing_dual(m: &SymplecticModel, p: &[Q]) -> SparseVec {
    m.killing_inv.transpose().apply(&SparseVec::from_dense(p))
}

/// `B(H, .)` for the regular semisimple `H = sum_i 16^i h_i`.
pub fn regular_semisimple_covector(m: &SymplecticModel) -> Result<Vec<Q>> {
    let cb = &m.algebra;
    let coeffs: Vec<i64> = (0..cb.rank()).map(|i| 16i64.pow(i as u32)).collect();
    for b in 0..cb.dim() {
        let w = &cb.weight(b).0;
        if w.iter().all(|x| *x == 0) {
            continue;
        }
        if w.iter().zip(&coeffs).map(|(x, c)| x * c).sum::<i64>() == 0 {
            return Err(Error::Inconsistent("Cartan element is not regular".into()));
        }
    }
    let h = SparseVec::from_pairs(
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (cb.cartan_basis_index(i), Q::from(*c)))
            .collect(),
    );
    Ok(m.killing.transpose().apply(&h).to_dense(cb.dim()))
}

/// Values of `h` at `w + t delta` for `t = 1, -1, 2, -2`.
fn at4<T>(h: impl Fn(&WPoint) -> T, w: &WPoint, delta: &WPoint) -> [T; 4] {
    let at = |t: i64| h(&w.shifted(delta, &Q::from(t)));
    [at(1), at(-1), at(2), at(-2)]
}

/// Five-point central difference; exact for polynomials of degree at most 4.
fn stencil(v: [Q; 4]) -> Q {
    let [p1, m1, p2, m2] = v;
    (Q::from(8) * (p1 - m1) - (p2 - m2)) / Q::from(12)
}

fn stencil_vec(v: [SparseVec; 4]) -> SparseVec {
    let [p1, m1, p2, m2] = v;
    p1.add_scaled(&m1, &Q::from(-1))
        .scale(&Q::from(8))
        .add_scaled(&p2, &Q::from(-1))
        .add_scaled(&m2, &Q::from(1))
        .scale(&(Q::from(1) / Q::from(12)))
}

fn stencil_all<T>(v: [Vec<T>; 4], f: impl Fn([T; 4]) -> T) -> Vec<T> {
    let [a, b, c, d] = v;
    a.into_iter()
        .zip(b)
        .zip(c)
        .zip(d)
        .map(|(((a, b), c), d)| f([a, b, c, d]))
        .collect()
}

fn derivative_all<T>(
    h: impl Fn(&WPoint) -> Vec<T>,
    w: &WPoint,
    delta: &WPoint,
    f: impl Fn([T; 4]) -> T,
) -> Vec<T> {
    stencil_all(at4(h, w, delta), f)
}

/// Order-2 Taylor data of the coframe `theta + omega` and of `a`, `b`, `c`
/// at a center, along the frame vectors `xi_w` for the chosen directions.
#[derive(Debug, Clone)]
pub struct JetConnection {
    pub center: WPoint,
    /// Basis indices of `W = g + V` (algebra first).
    pub directions: Vec<usize>,
    /// Curvature `R(x, y)` at the center, read off the frame brackets.
    pub curvature: CurvatureElement,
    /// `xi_w a` and `xi_w b` for each direction.
    pub da: Vec<Vec<Q>>,
    pub db: Vec<Vec<Q>>,
    /// `xi_z xi_w a` and `xi_z xi_w b`, indexed `[z][w]`.
    pub d2a: Vec<Vec<Vec<Q>>>,
    pub d2b: Vec<Vec<Vec<Q>>>,
    /// `c(x, y) = (xi_x b)(y) - phi2(a, a)(x, y)` at the center.
    pub c: Vec<Vec<Q>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct JetReport {
    pub checks: Vec<CheckResult>,
    pub center_in_u0: bool,
    pub curvature_span_rank: usize,
    pub directions: usize,
}

impl JetReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

struct Frame<'a, 'b> {
    poisson: &'b Poisson<'a>,
    dg: usize,
}

impl Frame<'_, '_> {
    fn w(&self, i: usize) -> WVector {
        WVector::basis(self.dg, i)
    }

    /// `xi_z f` for the coordinate `f = e_t` at `pt`.
    fn first(&self, pt: &WPoint, z: usize, t: usize) -> Q {
        self.poisson.pi(pt, &self.w(z), &self.w(t))
    }

    fn curvature_field(&self, pt: &WPoint, x: usize, y: usize) -> SparseVec {
        let g = self
            .poisson
            .bracket_gradient(pt, &self.w(self.dg + x), &self.w(self.dg + y));
        g.a.scale(&(Q::from(1) / Q::from(2)))
    }

    fn torsion(&self, pt: &WPoint, u: usize, v: usize) -> SparseVec {
        let m = self.poisson.model();
        let (wu, wv) = (self.w(u), self.w(v));
        let g = self.poisson.bracket_gradient(pt, &wu, &wv);
        let expected =
            act_vec(&m.rep, &wu.a, &wv.x).add_scaled(&act_vec(&m.rep, &wv.a, &wu.x), &Q::from(-1));
        expected.add_scaled(&g.x, &Q::from(-1))
    }
}

/// Builds the 2-jet at `center` and checks it against the structure equations:
/// torsion-free first structure equation, curvature `phi2'(a)`, the
/// derivatives of `a` and `b`, and constancy and skewness of `c`.
///
/// Fails if the second derivatives do not commute with the frame brackets,
/// i.e. if the jet system is inconsistent.
pub fn jet_verify(
    poisson: &Poisson,
    center: &WPoint,
    directions: &[usize],
) -> Result<(JetConnection, JetReport)> {
    let m = poisson.model();
    let (dg, n) = (m.dim_g(), m.dim_v());
    if directions.is_empty() || directions.iter().any(|&i| i >= dg + n) {
        return Err(Error::Invalid(
            "jet directions must be nonempty and in range".into(),
        ));
    }
    let f = Frame { poisson, dg };
    let (p, nu) = (&center.p, &center.nu);
    let tau = poisson.phi().tau().clone();
    let ap = killing_dual(m, p);
    let rp = curvature_element(m, &ap);
    let mut checks = Vec::new();

    // frame brackets at the center
    let curvature = {
        let half = Q::from(1) / Q::from(2);
        let d = poisson.phi().dual_differential_element(p);
        CurvatureElement::from_fn(dg, n, |x, y| d.value(x, y).scale(&half))
    };
    checks.push(CheckResult::new(
        "curvature at center equals phi2'(p)",
        curvature == rp,
    ));

    // first-order data from the brackets and from the structure equations
    let ham: Vec<WPoint> = directions
        .iter()
        .map(|&z| poisson.hamiltonian(center, &f.w(z)))
        .collect();
    let da: Vec<Vec<Q>> = ham.iter().map(|h| h.p.clone()).collect();
    let db: Vec<Vec<Q>> = ham.iter().map(|h| h.nu.clone()).collect();
    let mut a1 = Vec::new();
    let mut b1 = Vec::new();
    for &z in directions {
        let wz = f.w(z);
        // -A.a + j(b (x) x), with j(nu (x) x)(C) = -nu(C x)
        let a_rhs: Vec<Q> = (0..dg)
            .map(|c| {
                let br = m.algebra.bracket(&wz.a, &SparseVec::unit(c)).dot_dense(p);
                br - act_vec(&m.rep, &SparseVec::unit(c), &wz.x).dot_dense(nu)
            })
            .collect();
        // -A.b + (a^2 -| phi2 + tau) o theta
        let b_rhs: Vec<Q> = (0..n)
            .map(|y| {
                let ey = SparseVec::unit(y);
                let mut s = act_vec(&m.rep, &wz.a, &ey).dot_dense(nu);
                for (x, cx) in wz.x.entries() {
                    s += cx * (rp.value(*x, y).dot_dense(p) + &tau * m.pairing.get(*x, y));
                }
                s
            })
            .collect();
        a1.push(a_rhs);
        b1.push(b_rhs);
    }
    checks.push(CheckResult::new("first derivative of a", da == a1));
    checks.push(CheckResult::new("first derivative of b", db == b1));

    // second-order data
    let k = directions.len();
    let mut d2a = vec![vec![Vec::new(); k]; k];
    let mut d2b = vec![vec![Vec::new(); k]; k];
    let mut a2_ok = true;
    let mut b2_ok = true;
    for i in 0..k {
        for (j, &z) in directions.iter().enumerate() {
            let wz = f.w(z);
            let row = derivative_all(
                |w| (0..dg + n).map(|t| f.first(w, z, t)).collect(),
                center,
                &ham[i],
                stencil,
            );
            d2a[i][j] = row[..dg].to_vec();
            d2b[i][j] = row[dg..].to_vec();
            let a_rhs: Vec<Q> = (0..dg)
                .map(|c| {
                    let ec = SparseVec::unit(c);
                    m.algebra.bracket(&wz.a, &ec).dot_dense(&a1[i])
                        - act_vec(&m.rep, &ec, &wz.x).dot_dense(&b1[i])
                })
                .collect();
            let b_rhs: Vec<Q> = (0..n)
                .map(|y| {
                    let ey = SparseVec::unit(y);
                    let mut s = act_vec(&m.rep, &wz.a, &ey).dot_dense(&b1[i]);
                    for (x, cx) in wz.x.entries() {
                        s += Q::from(2) * cx * rp.value(*x, y).dot_dense(&a1[i]);
                    }
                    s
                })
                .collect();
            a2_ok &= d2a[i][j] == a_rhs;
            b2_ok &= d2b[i][j] == b_rhs;
        }
    }
    // xi_z xi_w - xi_w xi_z = xi_[z,w]; this is where an inadmissible phi shows up
    for i in 0..k {
        for j in i + 1..k {
            let br = poisson.bracket_gradient(center, &f.w(directions[i]), &f.w(directions[j]));
            for t in 0..dg + n {
                let lhs = if t < dg {
                    &d2a[i][j][t] - &d2a[j][i][t]
                } else {
                    &d2b[i][j][t - dg] - &d2b[j][i][t - dg]
                };
                if lhs != poisson.pi(center, &br, &f.w(t)) {
                    return Err(Error::Inconsistent(format!(
                        "second derivatives along directions {} and {} do not commute with the frame bracket",
                        directions[i], directions[j]
                    )));
                }
            }
        }
    }
    checks.push(CheckResult::new("second derivative of a", a2_ok));
    checks.push(CheckResult::new("second derivative of b", b2_ok));

    // torsion: value on all pairs, derivatives of order 1 and 2 along the directions
    let pairs: Vec<(usize, usize)> = directions
        .iter()
        .flat_map(|&u| directions.iter().map(move |&v| (u, v)))
        .collect();
    let torsion_at =
        |w: &WPoint| -> Vec<SparseVec> { pairs.iter().map(|&(u, v)| f.torsion(w, u, v)).collect() };
    let mut torsion_ok = directions
        .iter()
        .all(|&u| (0..dg + n).all(|v| f.torsion(center, u, v).is_zero()));
    // frame-transported second derivative of a field `h`: xi_z2 xi_z1 h
    let second =
        |h: &dyn Fn(&WPoint) -> Vec<SparseVec>, z1: usize, h2: &WPoint| -> Vec<SparseVec> {
            derivative_all(
                |w| {
                    let hz = poisson.hamiltonian(w, &f.w(z1));
                    derivative_all(h, w, &hz, stencil_vec)
                },
                center,
                h2,
                stencil_vec,
            )
        };
    for (i, h) in ham.iter().enumerate() {
        torsion_ok &= derivative_all(torsion_at, center, h, stencil_vec)
            .iter()
            .all(SparseVec::is_zero);
        torsion_ok &= second(&torsion_at, directions[i], &ham[(i + 1) % k])
            .iter()
            .all(SparseVec::is_zero);
    }
    checks.push(CheckResult::new("torsion vanishes to order 2", torsion_ok));

    // curvature derivatives along module directions
    let vdirs: Vec<usize> = directions
        .iter()
        .filter(|&&i| i >= dg)
        .map(|i| i - dg)
        .collect();
    let vpairs: Vec<(usize, usize)> = vdirs
        .iter()
        .flat_map(|&x| (0..n).map(move |y| (x, y)))
        .collect();
    let curv_at = |w: &WPoint| -> Vec<SparseVec> {
        vpairs
            .iter()
            .map(|&(x, y)| f.curvature_field(w, x, y))
            .collect()
    };
    let mut curv_ok = true;
    for i in 0..k {
        let r1 = curvature_element(m, &killing_dual(m, &a1[i]));
        let d1 = derivative_all(curv_at, center, &ham[i], stencil_vec);
        curv_ok &= vpairs
            .iter()
            .zip(&d1)
            .all(|(&(x, y), v)| *v == r1.value(x, y));
        let j = (i + 1) % k;
        let r2 = curvature_element(m, &killing_dual(m, &d2a[i][j]));
        let d2 = second(&curv_at, directions[j], &ham[i]);
        curv_ok &= vpairs
            .iter()
            .zip(&d2)
            .all(|(&(x, y), v)| *v == r2.value(x, y));
    }
    checks.push(CheckResult::new(
        "curvature derivatives follow phi2'",
        curv_ok,
    ));

    // c = tau, skew, invariant, constant
    let c_at = |w: &WPoint, xs: &[usize]| -> Vec<Vec<Q>> {
        let r = curvature_element(m, &killing_dual(m, &w.p));
        xs.iter()
            .map(|&x| {
                (0..n)
                    .map(|y| f.first(w, dg + x, dg + y) - r.value(x, y).dot_dense(&w.p))
                    .collect()
            })
            .collect()
    };
    let all_v: Vec<usize> = (0..n).collect();
    let c = c_at(center, &all_v);
    let c_tau = (0..n).all(|x| (0..n).all(|y| c[x][y] == &tau * m.pairing.get(x, y)));
    let c_skew = (0..n).all(|x| (0..n).all(|y| c[x][y] == -c[y][x].clone()));
    let c_of = |x: &SparseVec, y: &SparseVec| -> Q {
        let mut s = Q::ZERO;
        for (a, u) in x.entries() {
            for (b, v) in y.entries() {
                s += u * v * &c[*a][*b];
            }
        }
        s
    };
    let mut c_inv = true;
    for gen in 0..dg {
        let a = SparseVec::unit(gen);
        for x in 0..n {
            for y in x..n {
                let (ex, ey) = (SparseVec::unit(x), SparseVec::unit(y));
                c_inv &=
                    c_of(&ex, &act_vec(&m.rep, &a, &ey)) == c_of(&ey, &act_vec(&m.rep, &a, &ex));
            }
        }
    }
    let mut c_const = true;
    for h in &ham {
        let d = derivative_all(|w| c_at(w, &vdirs).concat(), center, h, stencil);
        c_const &= d.iter().all(|x| *x == Q::ZERO);
    }
    checks.push(CheckResult::new("c equals tau", c_tau));
    checks.push(CheckResult::new("c skew", c_skew));
    checks.push(CheckResult::new("c invariant", c_inv));
    checks.push(CheckResult::new("c constant", c_const));

    let span = curvature.span_rank();
    let report = JetReport {
        checks,
        center_in_u0: k0_membership(&curvature),
        curvature_span_rank: span,
        directions: directions.len(),
    };
    let jet = JetConnection {
        center: center.clone(),
        directions: directions.to_vec(),
        curvature,
        da,
        db,
        d2a,
        d2b,
        c,
    };
    Ok((jet, report))
}
