//! Exact integer linear algebra: ranks over the rationals, kernel bases of
//! the incidence matrix, a floating eigenvalue cross-check, and permanents.
//!
//! Nothing of record here depends on floating arithmetic; the eigensolver is
//! a cross-check only.

mod matrix;
mod permanent;
mod rank;

pub use matrix::{bigint_string, bigint_string_opt, IntMatrix};
pub use permanent::{
    block_permanent, block_permanent_with_cap, permanent, permanent_with_cap, PermanentError,
    PERMANENT_CAP,
};
pub use rank::{
    exact_rank, fraction_free_rank, is_prime_u64, kernel_vectors_for_free_columns, modular_rank,
    modular_pivot_columns, random_prime_above_2_60, RankMethod, RankResult,
};

use std::collections::VecDeque;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::lattice::{Axis, CubicTorus, EdgeId, VertexId};

#[derive(Debug, Error, PartialEq)]
pub enum ExactAlgError {
    #[error("symmetric eigensolver failed to converge")]
    EigenFailed,
    #[error("matrix is not positive semidefinite: min eigenvalue {0} < -tol {1}")]
    NotPsd(f64, f64),
}

/// Dimension of `kern B` computed as `|E| − rank(B)`.
///
/// For the connected bipartite torus this always equals `|E| − |V| + 1`.
pub fn kernel_dimension(torus: &CubicTorus, seed: u64) -> usize {
    let b = torus.incidence_matrix();
    torus.edge_count() - exact_rank(&b, seed).rank
}

/// Exact integer basis of `kern B` from fundamental cycles of a BFS tree.
///
/// Every edge is oriented from its even-parity endpoint to its odd-parity
/// endpoint; each non-tree edge closes a cycle, and the alternating-sign
/// vector on that cycle is annihilated by the unsigned incidence matrix.
/// Columns have entries in {-1, 0, 1}; there are `|E| − |V| + 1` of them.
pub fn kernel_basis(torus: &CubicTorus) -> IntMatrix {
    let nv = torus.vertex_count();
    let ne = torus.edge_count();

    // BFS spanning tree with deterministic neighbor order (+X,+Y,+Z,-X,-Y,-Z)
    let mut parent: Vec<Option<(EdgeId, VertexId)>> = vec![None; nv];
    let mut depth = vec![0usize; nv];
    let mut seen = vec![false; nv];
    let mut in_tree = vec![false; ne];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for step in [1isize, -1] {
            for axis in Axis::ALL {
                let w = torus.shift(v, axis, step);
                if !seen[w] {
                    seen[w] = true;
                    let e = if step == 1 {
                        torus.edge_id(v, axis)
                    } else {
                        torus.edge_id(w, axis)
                    };
                    parent[w] = Some((e, v));
                    depth[w] = depth[v] + 1;
                    in_tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    // orientation of an edge: from the even-parity endpoint
    let oriented = |e: EdgeId| -> (VertexId, VertexId) {
        let (a, b) = torus.edge_endpoints(e);
        if torus.parity(a) == 0 {
            (a, b)
        } else {
            (b, a)
        }
    };

    let dim = ne - nv + 1;
    let mut basis = IntMatrix::zeros(ne, dim);
    let mut col = 0;
    for e in 0..ne {
        if in_tree[e] {
            continue;
        }
        let (tail, head) = oriented(e);
        basis.set_i64(e, col, 1);
        // return the unit of flow from head back to tail through the tree
        let mut up: Vec<(EdgeId, VertexId, VertexId)> = Vec::new(); // traversed child -> parent
        let mut down: Vec<(EdgeId, VertexId, VertexId)> = Vec::new();
        let (mut u, mut w) = (head, tail);
        while u != w {
            if depth[u] >= depth[w] {
                let (te, par) = parent[u].expect("non-root has a parent");
                up.push((te, u, par));
                u = par;
            } else {
                let (te, par) = parent[w].expect("non-root has a parent");
                down.push((te, w, par));
                w = par;
            }
        }
        let flow = up
            .into_iter()
            .chain(down.into_iter().rev().map(|(te, a, b)| (te, b, a)));
        for (te, from, to) in flow {
            let sign = if oriented(te) == (from, to) { 1 } else { -1 };
            basis.set_i64(te, col, sign);
        }
        col += 1;
    }
    debug_assert_eq!(col, dim);
    basis
}

/// Exact rank of the `3|V|` face-state vectors. Strictly less than `3|V|`
/// and at most the kernel dimension; the faces are never independent in 3D.
pub fn face_span_rank(torus: &CubicTorus, seed: u64) -> usize {
    face_span_rank_result(torus, seed).rank
}

pub fn face_span_rank_result(torus: &CubicTorus, seed: u64) -> RankResult {
    exact_rank(&face_state_matrix(torus), seed)
}

/// Matrix whose rows are the signed face states (`3|V| × |E|`).
pub fn face_state_matrix(torus: &CubicTorus) -> IntMatrix {
    let mut m = IntMatrix::zeros(torus.face_count(), torus.edge_count());
    for f in 0..torus.face_count() {
        for (e, s) in torus.face_state(f).entries {
            m.set_i64(f, e, s);
        }
    }
    m
}

/// Floating-point cross-check of the flat band: the number of eigenvalues of
/// `T = BᵗB` inside `[-tol, tol]`. Fails if any eigenvalue drops below `-tol`
/// (T is PSD by construction).
pub fn flat_band_multiplicity(torus: &CubicTorus, tol: f64) -> Result<usize, ExactAlgError> {
    let eigenvalues = hopping_spectrum(torus)?;
    let min = eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if min < -tol {
        return Err(ExactAlgError::NotPsd(min, tol));
    }
    Ok(eigenvalues.iter().filter(|&&l| l.abs() <= tol).count())
}

/// All eigenvalues of `T`, ascending.
pub fn hopping_spectrum(torus: &CubicTorus) -> Result<Vec<f64>, ExactAlgError> {
    let ne = torus.edge_count();
    let t = torus.hopping_matrix();
    let m = DMatrix::from_fn(ne, ne, |r, c| t.get_i64(r, c) as f64);
    let eig = m
        .try_symmetric_eigen(1e-13, 10_000)
        .ok_or(ExactAlgError::EigenFailed)?;
    let mut vals: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(vals)
}

/// Exact binomial coefficient.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Natural log of a positive big integer, usable far beyond f64 range.
pub fn ln_big(v: &BigInt) -> f64 {
    assert!(v.is_positive(), "ln of non-positive value");
    let bits = v.bits();
    if bits <= 52 {
        use num_traits::ToPrimitive;
        return v.to_f64().unwrap().ln();
    }
    // keep the top 52 bits as mantissa: v ≈ m · 2^(bits-52)
    use num_traits::ToPrimitive;
    let shift = bits - 52;
    let m = (v >> shift).to_f64().unwrap();
    m.ln() + (shift as f64) * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::CubicTorus;

    #[test]
    fn incidence_rank_and_kernel_dimension_444() {
        let t = CubicTorus::new(4, 4, 4).unwrap();
        let b = t.incidence_matrix();
        // connected bipartite graph: rank |V| - 1, checked by both backends
        assert_eq!(exact_rank(&b, 0).rank, 63);
        assert_eq!(fraction_free_rank(&b), 63);
        assert_eq!(kernel_dimension(&t, 0), 129);
    }

    #[test]
    fn kernel_dimension_matches_formula_on_larger_tori() {
        for (l1, l2, l3, expect) in [(4, 4, 6, 193), (4, 6, 6, 289)] {
            let t = CubicTorus::new(l1, l2, l3).unwrap();
            assert_eq!(kernel_dimension(&t, 0), expect);
            assert_eq!(t.edge_count() - t.vertex_count() + 1, expect);
        }
    }

    #[test]
    fn kernel_basis_is_annihilated_and_has_full_rank() {
        let t = CubicTorus::new(4, 4, 4).unwrap();
        let u = kernel_basis(&t);
        assert_eq!((u.rows(), u.cols()), (192, 129));
        let b = t.incidence_matrix();
        assert!(b.mul(&u).is_zero(), "B·U must vanish exactly");
        assert_eq!(exact_rank(&u, 0).rank, 129);
    }

    #[test]
    fn appending_a_face_state_does_not_raise_the_kernel_rank() {
        let t = CubicTorus::new(4, 4, 4).unwrap();
        let u = kernel_basis(&t);
        for f in [0usize, 77, 191] {
            let st = t.face_state(f);
            let col = IntMatrix::from_fn(t.edge_count(), 1, |r, _| {
                BigInt::from(st.sign(r))
            });
            let extended = u.hstack(&col);
            assert_eq!(exact_rank(&extended, f as u64).rank, 129);
        }
    }

    #[test]
    fn face_span_rank_444_is_126_under_both_backends() {
        let t = CubicTorus::new(4, 4, 4).unwrap();
        let m = face_state_matrix(&t);
        let modular = exact_rank(&m, 42);
        let ff = fraction_free_rank(&m);
        assert_eq!(modular.rank, ff);
        assert_eq!(modular.rank, 126); // kernel dim minus the three torus windings
        assert!(modular.rank < 192 && modular.rank <= 129);
    }

    #[test]
    fn face_span_rank_survives_a_global_sign_flip() {
        let t = CubicTorus::new(4, 4, 4).unwrap();
        let mut m = face_state_matrix(&t);
        for c in 0..m.cols() {
            let v = -m.get(17, c);
            m.set(17, c, v);
        }
        assert_eq!(exact_rank(&m, 0).rank, 126);
    }

    #[test]
    fn flat_band_multiplicity_matches_kernel_dimension() {
        let t = CubicTorus::new(4, 4, 4).unwrap();
        assert_eq!(flat_band_multiplicity(&t, 1e-9).unwrap(), 129);
    }

    #[test]
    fn hopping_spectrum_top_eigenvalue_is_twelve() {
        let t = CubicTorus::new(4, 4, 4).unwrap();
        // the all-ones vector is an exact eigenvector with eigenvalue 12
        let h = t.hopping_matrix();
        for e in 0..t.edge_count() {
            let row_sum: i64 = (0..t.edge_count()).map(|c| h.get_i64(e, c)).sum();
            assert_eq!(row_sum, 12);
        }
        let spectrum = hopping_spectrum(&t).unwrap();
        let max = spectrum.last().unwrap();
        assert!((max - 12.0).abs() < 1e-9, "max eigenvalue {max}");
        assert!(spectrum[0] >= -1e-9);
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(48, 0), BigInt::from(1));
        assert_eq!(binomial(48, 48), BigInt::from(1));
        assert_eq!(binomial(4, 7), BigInt::zero());
    }

    #[test]
    fn binomial_matches_pascal_recurrence() {
        // independent oracle: Pascal's triangle
        let n = 48;
        let mut row = vec![BigInt::from(1)];
        for _ in 0..n {
            let mut next = vec![BigInt::from(1)];
            for w in row.windows(2) {
                next.push(&w[0] + &w[1]);
            }
            next.push(BigInt::from(1));
            row = next;
        }
        assert_eq!(binomial(48, 24), row[24]);
        assert_eq!(
            binomial(48, 24),
            "32247603683100".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn ln_big_agrees_with_f64_for_moderate_values() {
        let v = BigInt::from(1_000_000u64);
        assert!((ln_big(&v) - (1e6f64).ln()).abs() < 1e-12);
        let huge = BigInt::from(2u8).pow(10_000);
        assert!((ln_big(&huge) - 10_000.0 * std::f64::consts::LN_2).abs() < 1e-6);
    }
}
