//! Exact kernels for small representations.

use std::collections::BTreeMap;

use crate::arith::Q;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::rep::MatrixRep;
use crate::sparse::{kernel, pair_index, Accumulator, SparseVec};

use super::tensor::{
    CurvatureElement, SecondCurvature, SparseTensor, SubspaceBasis, TwoSlotCurvature,
};

fn check_independent(rep: &MatrixRep) -> Result<()> {
    if rep.span_rank() != rep.algebra_dim() {
        return Err(Error::Invalid(
            "generator matrices are linearly dependent".into(),
        ));
    }
    Ok(())
}

/// `rho(x) e_c` added into `acc` with factor `sign`.
fn act_into(rep: &MatrixRep, x: &SparseVec, c: usize, sign: &Q, acc: &mut Accumulator) {
    for (k, y) in x.entries() {
        acc.add_scaled(rep.matrix(*k).col(c), &(y * sign));
    }
}

/// `R(a,b) e_c + R(b,c) e_a + R(c,a) e_b`.
pub fn bianchi_residual(
    rep: &MatrixRep,
    r: &CurvatureElement,
    a: usize,
    b: usize,
    c: usize,
) -> SparseVec {
    let mut acc = Accumulator::new(rep.dim());
    let one = Q::from(1);
    act_into(rep, &r.value(a, b), c, &one, &mut acc);
    act_into(rep, &r.value(b, c), a, &one, &mut acc);
    act_into(rep, &r.value(c, a), b, &one, &mut acc);
    acc.take()
}

/// Number of triples `a < b < c` with a nonzero first Bianchi residual.
pub fn bianchi_failures(rep: &MatrixRep, r: &CurvatureElement) -> usize {
    let n = rep.dim();
    let one = Q::from(1);
    let minus = Q::from(-1);
    let mut acc = Accumulator::new(n);
    let pairs = r.pair_values();
    let mut bad = 0;
    for a in 0..n {
        for b in a + 1..n {
            let ab = &pairs[pair_index(n, a, b)];
            for c in b + 1..n {
                act_into(rep, ab, c, &one, &mut acc);
                act_into(rep, &pairs[pair_index(n, b, c)], a, &one, &mut acc);
                act_into(rep, &pairs[pair_index(n, a, c)], b, &minus, &mut acc);
                if !acc.take().is_zero() {
                    bad += 1;
                }
            }
        }
    }
    bad
}

/// First prolongation `g(1)`: maps `T: V -> g` with `T(u)v = T(v)u`.
///
/// Elements have shape `[dim_g, n]`, entry `(k, a)` the `x_k` component of `T(e_a)`.
pub fn prolongation(rep: &MatrixRep, caps: &Caps) -> Result<SubspaceBasis> {
    let (n, dg) = (rep.dim(), rep.algebra_dim());
    caps.check_bruteforce("prolongation ambient dimension", dg * n)?;
    check_independent(rep)?;
    let mut rows = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let mut eqs: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
            for k in 0..dg {
                for (d, x) in rep.matrix(k).col(b).entries() {
                    eqs.entry(*d).or_default().push((k * n + a, x.clone()));
                }
                for (d, x) in rep.matrix(k).col(a).entries() {
                    eqs.entry(*d).or_default().push((k * n + b, -x));
                }
            }
            rows.extend(eqs.into_values().map(SparseVec::from_pairs));
        }
    }
    let shape = vec![dg, n];
    let elems = kernel(&rows, dg * n)
        .into_iter()
        .map(|v| SparseTensor::from_flat(shape.clone(), v))
        .collect();
    SubspaceBasis::new(shape, elems)
}

/// Kernel of the first Bianchi map on `g (x) Lambda^2 V*`.
pub fn curvature_space_bruteforce(rep: &MatrixRep, caps: &Caps) -> Result<Vec<CurvatureElement>> {
    let (n, dg) = (rep.dim(), rep.algebra_dim());
    let npairs = n * n.saturating_sub(1) / 2;
    caps.check_bruteforce("curvature space ambient dimension", dg * npairs)?;
    check_independent(rep)?;
    let mut rows = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let mut eqs: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
                let terms = [
                    (pair_index(n, a, b), c, Q::from(1)),
                    (pair_index(n, b, c), a, Q::from(1)),
                    (pair_index(n, a, c), b, Q::from(-1)),
                ];
                for (p, col, sign) in &terms {
                    for k in 0..dg {
                        for (d, x) in rep.matrix(k).col(*col).entries() {
                            eqs.entry(*d).or_default().push((p * dg + k, x * sign));
                        }
                    }
                }
                rows.extend(eqs.into_values().map(SparseVec::from_pairs));
            }
        }
    }
    Ok(kernel(&rows, dg * npairs)
        .iter()
        .map(|v| CurvatureElement::from_flat(dg, n, v))
        .collect())
}

/// Kernel of the second Bianchi map on `K (x) V*`, for a basis of `K`.
pub fn second_curvature_bruteforce(
    rep: &MatrixRep,
    k_basis: &[CurvatureElement],
    caps: &Caps,
) -> Result<Vec<SecondCurvature>> {
    let (n, dg, m) = (rep.dim(), rep.algebra_dim(), k_basis.len());
    caps.check_bruteforce("second curvature ambient dimension", m * n)?;
    if m == 0 {
        return Ok(Vec::new());
    }
    let mut rows = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let mut eqs: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
                for (j, kj) in k_basis.iter().enumerate() {
                    for (s, (u, v)) in [(a, (b, c)), (b, (c, a)), (c, (a, b))] {
                        for (i, x) in kj.value(u, v).entries() {
                            eqs.entry(*i).or_default().push((j * n + s, x.clone()));
                        }
                    }
                }
                rows.extend(eqs.into_values().map(SparseVec::from_pairs));
            }
        }
    }
    Ok(kernel(&rows, m * n)
        .iter()
        .map(|v| {
            let slices = (0..n)
                .map(|s| {
                    let c = SparseVec::from_pairs(
                        v.entries()
                            .iter()
                            .filter(|(i, _)| i % n == s)
                            .map(|(i, x)| (i / n, x.clone()))
                            .collect(),
                    );
                    if c.is_zero() {
                        CurvatureElement::zero(dg, n)
                    } else {
                        CurvatureElement::combination(k_basis, &c)
                    }
                })
                .collect();
            SecondCurvature::new(slices)
        })
        .collect())
}

/// Index of `k <= l` among symmetric pairs of `0..d`.
fn sym_index(d: usize, k: usize, l: usize) -> usize {
    let (k, l) = if k <= l { (k, l) } else { (l, k) };
    k * d - k * k.saturating_sub(1) / 2 + l - k
}

/// Elements of `Sym^2 g (x) Lambda^2 V*` whose slices all satisfy the first
/// Bianchi identity.
pub fn p1_bruteforce(rep: &MatrixRep, caps: &Caps) -> Result<Vec<TwoSlotCurvature>> {
    let (n, dg) = (rep.dim(), rep.algebra_dim());
    let npairs = n * n.saturating_sub(1) / 2;
    let nsym = dg * (dg + 1) / 2;
    caps.check_bruteforce("symmetric curvature ambient dimension", nsym * npairs)?;
    check_independent(rep)?;
    let mut rows = Vec::new();
    for k in 0..dg {
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let mut eqs: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
                    let terms = [
                        (pair_index(n, a, b), c, Q::from(1)),
                        (pair_index(n, b, c), a, Q::from(1)),
                        (pair_index(n, a, c), b, Q::from(-1)),
                    ];
                    for (p, col, sign) in &terms {
                        for l in 0..dg {
                            let u = sym_index(dg, k, l) * npairs + p;
                            for (d, x) in rep.matrix(l).col(*col).entries() {
                                eqs.entry(*d).or_default().push((u, x * sign));
                            }
                        }
                    }
                    rows.extend(eqs.into_values().map(SparseVec::from_pairs));
                }
            }
        }
    }
    Ok(kernel(&rows, nsym * npairs)
        .iter()
        .map(|v| {
            let slices = (0..dg)
                .map(|k| {
                    let pairs = (0..npairs)
                        .map(|p| {
                            SparseVec::from_pairs(
                                (0..dg)
                                    .map(|l| (l, v.get(sym_index(dg, k, l) * npairs + p)))
                                    .collect(),
                            )
                        })
                        .collect();
                    CurvatureElement::from_pairs(dg, n, pairs)
                })
                .collect();
            TwoSlotCurvature::new(slices)
        })
        .collect())
}

/// `d(T (x) e^s)(u, v) = e^s(u) T(v) - e^s(v) T(u)` for every basis element `T`
/// of `g(1)` and every `s`.
pub fn spencer_boundary(rep: &MatrixRep, g1: &SubspaceBasis) -> Vec<CurvatureElement> {
    let (n, dg) = (rep.dim(), rep.algebra_dim());
    let mut out = Vec::new();
    for t in g1.elements() {
        let column =
            |a: usize| SparseVec::from_pairs((0..dg).map(|k| (k, t.get(&[k, a]))).collect());
        for s in 0..n {
            out.push(CurvatureElement::from_fn(dg, n, |u, v| {
                if u == s {
                    column(v)
                } else if v == s {
                    column(u).scale(&Q::from(-1))
                } else {
                    SparseVec::new()
                }
            }));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_index_is_dense() {
        let d = 5;
        let mut seen = Vec::new();
        for k in 0..d {
            for l in k..d {
                seen.push(sym_index(d, k, l));
                assert_eq!(sym_index(d, k, l), sym_index(d, l, k));
            }
        }
        seen.sort_unstable();
        assert_eq!(seen, (0..d * (d + 1) / 2).collect::<Vec<_>>());
    }
}
