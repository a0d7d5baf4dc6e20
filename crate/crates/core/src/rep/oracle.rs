//! Small explicit representations used as independent oracles.

use crate::arith::{q, Q};
use crate::error::{Error, Result};

use super::matrix::{MatrixRep, SparseMatrix};

fn elementary(n: usize, i: usize, j: usize, x: Q) -> SparseMatrix {
    SparseMatrix::from_triplets(n, n, vec![(i, j, x)])
}

/// `gl(n)` on `C^n`, basis `E_ij` in row-major order.
pub fn gl_n(n: usize) -> MatrixRep {
    let gens = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| elementary(n, i, j, q(1)))
        .collect();
    MatrixRep::new(n, gens, None)
}

/// `so(n)` on `C^n`, basis `E_ij - E_ji` for `i < j`.
pub fn so_n(n: usize) -> MatrixRep {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            gens.push(SparseMatrix::from_triplets(
                n,
                n,
                vec![(i, j, q(1)), (j, i, q(-1))],
            ));
        }
    }
    MatrixRep::new(n, gens, None)
}

/// The zero algebra acting on `C^n`.
pub fn zero_algebra(n: usize) -> MatrixRep {
    MatrixRep::new(n, Vec::new(), None)
}

/// `sl2` on `Sym^k C^2` with basis `x^(k-j) y^j`, generators `e, f, h`;
/// with `center` the identity is appended as a fourth generator.
pub fn sl2_symmetric_power(k: usize, center: bool) -> MatrixRep {
    let n = k + 1;
    let mut e = Vec::new();
    let mut f = Vec::new();
    let mut h = Vec::new();
    for j in 0..n {
        if j > 0 {
            e.push((j - 1, j, q(j as i64)));
        }
        if j < k {
            f.push((j + 1, j, q((k - j) as i64)));
        }
        h.push((j, j, q(k as i64 - 2 * j as i64)));
    }
    let mut gens = vec![
        SparseMatrix::from_triplets(n, n, e),
        SparseMatrix::from_triplets(n, n, f),
        SparseMatrix::from_triplets(n, n, h),
    ];
    if center {
        gens.push(SparseMatrix::identity(n));
    }
    MatrixRep::new(n, gens, None)
}

/// Oracle representation by name: `gl<n>`, `so<n>`, `zero<n>`, `sl2-sym<k>`
/// or `sl2c-sym<k>` (with the center).
pub fn oracle_rep(name: &str) -> Result<MatrixRep> {
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::Invalid(format!("bad oracle size in {name:?}")))
    };
    let rep = if let Some(k) = name.strip_prefix("sl2c-sym") {
        sl2_symmetric_power(parse(k)?, true)
    } else if let Some(k) = name.strip_prefix("sl2-sym") {
        sl2_symmetric_power(parse(k)?, false)
    } else if let Some(n) = name.strip_prefix("gl") {
        gl_n(parse(n)?)
    } else if let Some(n) = name.strip_prefix("so") {
        so_n(parse(n)?)
    } else if let Some(n) = name.strip_prefix("zero") {
        zero_algebra(parse(n)?)
    } else {
        return Err(Error::Invalid(format!(
            "unknown oracle representation {name:?}"
        )));
    };
    if rep.dim() == 0 {
        return Err(Error::Invalid(
            "oracle representation must be nonzero".into(),
        ));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_power_brackets() {
        for k in 1..5 {
            let r = sl2_symmetric_power(k, false);
            let (e, f, h) = (r.matrix(0), r.matrix(1), r.matrix(2));
            assert_eq!(e.commutator(f), *h);
            assert_eq!(h.commutator(e), e.scale(&q(2)));
            assert_eq!(h.commutator(f), f.scale(&q(-2)));
        }
    }

    #[test]
    fn names() {
        assert_eq!(oracle_rep("so4").unwrap().algebra_dim(), 6);
        assert_eq!(oracle_rep("sl2c-sym3").unwrap().algebra_dim(), 4);
        assert!(oracle_rep("su3").is_err());
        assert!(oracle_rep("gl0").is_err());
    }
}
