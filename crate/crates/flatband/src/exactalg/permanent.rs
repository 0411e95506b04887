//! Exact matrix permanents: Ryser's inclusion-exclusion with Gray-code row-sum
//! updates, plus a block factorization over the connected components of the
//! nonzero support. The permanent realizes the sum over full Wick contractions
//! of bosonic product-state overlaps, so these routines sit underneath every
//! Gram-matrix computation in the crate.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::matrix::IntMatrix;

/// Default cap on the Ryser side length. Ryser is Θ(2ⁿ·n); callers hitting
/// this cap are asked to fail loudly rather than hang.
pub const PERMANENT_CAP: usize = 30;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermanentError {
    #[error("permanent requires a square matrix ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("permanent side {side} exceeds cap {cap}")]
    SideExceedsCap { side: usize, cap: usize },
}

/// Exact permanent by Ryser's formula with the default cap.
pub fn permanent(m: &IntMatrix) -> Result<BigInt, PermanentError> {
    permanent_with_cap(m, PERMANENT_CAP)
}

pub fn permanent_with_cap(m: &IntMatrix, cap: usize) -> Result<BigInt, PermanentError> {
    if m.rows() != m.cols() {
        return Err(PermanentError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n > cap {
        return Err(PermanentError::SideExceedsCap { side: n, cap });
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    if let Some(fast) = try_ryser_i128(m) {
        return Ok(BigInt::from(fast));
    }
    Ok(ryser_bigint(m))
}

/// Permanent factored over the connected components of the bipartite support
/// graph (row i — column j when the entry is nonzero). A component with
/// unequal row and column counts forces the result to 0; this is what makes
/// overlap matrices of rotation-related states tractable.
pub fn block_permanent(m: &IntMatrix) -> Result<BigInt, PermanentError> {
    block_permanent_with_cap(m, PERMANENT_CAP)
}

pub fn block_permanent_with_cap(m: &IntMatrix, cap: usize) -> Result<BigInt, PermanentError> {
    if m.rows() != m.cols() {
        return Err(PermanentError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut uf = UnionFind::new(2 * n);
    for i in 0..n {
        for j in 0..n {
            if !m.get(i, j).is_zero() {
                uf.union(i, n + j);
            }
        }
    }
    let mut components: std::collections::HashMap<usize, (Vec<usize>, Vec<usize>)> =
        std::collections::HashMap::new();
    for i in 0..n {
        components.entry(uf.find(i)).or_default().0.push(i);
    }
    for j in 0..n {
        components.entry(uf.find(n + j)).or_default().1.push(j);
    }
    let mut result = BigInt::one();
    // deterministic component order: by smallest row index, then column
    let mut comps: Vec<_> = components.into_values().collect();
    comps.sort_by_key(|(rows, cols)| (rows.first().copied(), cols.first().copied()));
    for (rows, cols) in comps {
        if rows.len() != cols.len() {
            return Ok(BigInt::zero());
        }
        if rows.is_empty() {
            continue;
        }
        let sub = IntMatrix::from_fn(rows.len(), cols.len(), |r, c| {
            m.get(rows[r], cols[c]).clone()
        });
        result *= permanent_with_cap(&sub, cap)?;
        if result.is_zero() {
            return Ok(result);
        }
    }
    Ok(result)
}

/// i128 fast path: valid when every partial product provably fits.
/// The Gray-code row sums are bounded by the row absolute sums, so
/// 2ⁿ · Π_i (Σ_j |a_ij|) bounds the accumulator.
fn try_ryser_i128(m: &IntMatrix) -> Option<i128> {
    let n = m.rows();
    if n >= 127 {
        return None;
    }
    let mut a = vec![vec![0i128; n]; n];
    let mut bound = BigInt::one();
    for i in 0..n {
        let mut row_abs = BigInt::zero();
        for j in 0..n {
            let v = m.get(i, j);
            a[i][j] = v.to_i128()?;
            row_abs += v.abs();
        }
        if row_abs.is_zero() {
            return Some(0);
        }
        bound *= row_abs;
    }
    bound <<= n;
    if bound >= BigInt::from(i128::MAX / 2) {
        return None;
    }
    Some(ryser_i128(&a))
}

fn ryser_i128(a: &[Vec<i128>]) -> i128 {
    let n = a.len();
    let mut row_sums = vec![0i128; n];
    let mut total = 0i128;
    let mut prev_gray = 0u64;
    for k in 1u64..(1 << n) {
        let gray = k ^ (k >> 1);
        let j = (gray ^ prev_gray).trailing_zeros() as usize;
        if gray > prev_gray {
            for i in 0..n {
                row_sums[i] += a[i][j];
            }
        } else {
            for i in 0..n {
                row_sums[i] -= a[i][j];
            }
        }
        prev_gray = gray;
        let mut prod = 1i128;
        for &s in &row_sums {
            if s == 0 {
                prod = 0;
                break;
            }
            prod *= s;
        }
        if gray.count_ones() % 2 == 0 {
            total -= prod;
        } else {
            total += prod;
        }
    }
    if n % 2 == 0 {
        -total
    } else {
        total
    }
}

fn ryser_bigint(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    let mut row_sums = vec![BigInt::zero(); n];
    let mut total = BigInt::zero();
    let mut prev_gray = 0u64;
    for k in 1u64..(1 << n) {
        let gray = k ^ (k >> 1);
        let j = (gray ^ prev_gray).trailing_zeros() as usize;
        if gray > prev_gray {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s += m.get(i, j);
            }
        } else {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s -= m.get(i, j);
            }
        }
        prev_gray = gray;
        let mut prod = BigInt::one();
        for s in &row_sums {
            if s.is_zero() {
                prod = BigInt::zero();
                break;
            }
            prod *= s;
        }
        if gray.count_ones() % 2 == 0 {
            total -= prod;
        } else {
            total += prod;
        }
    }
    if n % 2 == 0 {
        -total
    } else {
        total
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Independent oracle: Leibniz-style sum over all n! permutations.
    pub fn permanent_bruteforce(m: &IntMatrix) -> BigInt {
        let n = m.rows();
        assert_eq!(n, m.cols());
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = BigInt::zero();
        permute(&mut perm, 0, &mut |p| {
            let mut prod = BigInt::one();
            for (i, &j) in p.iter().enumerate() {
                prod *= m.get(i, j);
            }
            total += prod;
        });
        total
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn tiny_cases() {
        assert_eq!(
            permanent(&IntMatrix::from_i64_rows(&[vec![4]])).unwrap(),
            BigInt::from(4)
        );
        // permanent of [[a,b],[c,d]] is ad + bc
        assert_eq!(
            permanent(&IntMatrix::from_i64_rows(&[vec![4, -1], vec![-1, 4]])).unwrap(),
            BigInt::from(17)
        );
        assert_eq!(permanent(&IntMatrix::zeros(0, 0)).unwrap(), BigInt::one());
    }

    #[test]
    fn ryser_matches_bruteforce_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0DE);
        for _ in 0..100 {
            let n = rng.random_range(1..=6);
            let m = IntMatrix::from_fn(n, n, |_, _| BigInt::from(rng.random_range(-5i64..=5)));
            assert_eq!(permanent(&m).unwrap(), permanent_bruteforce(&m));
        }
    }

    #[test]
    fn bigint_path_agrees_with_fast_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xBEEF);
        for _ in 0..20 {
            let n = rng.random_range(1..=7);
            let m = IntMatrix::from_fn(n, n, |_, _| BigInt::from(rng.random_range(-4i64..=4)));
            assert_eq!(ryser_bigint(&m), permanent_bruteforce(&m));
        }
    }

    #[test]
    fn block_permanent_on_block_diagonal() {
        let m = IntMatrix::from_i64_rows(&[vec![4, 0], vec![0, 4]]);
        assert_eq!(block_permanent(&m).unwrap(), BigInt::from(16));
    }

    #[test]
    fn zero_row_forces_zero() {
        let m = IntMatrix::from_i64_rows(&[vec![0, 0], vec![1, 2]]);
        assert_eq!(block_permanent(&m).unwrap(), BigInt::zero());
        assert_eq!(permanent(&m).unwrap(), BigInt::zero());
    }

    #[test]
    fn block_permanent_matches_plain_ryser_on_structured_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xB10C);
        for _ in 0..50 {
            // build a matrix of up to 12x12 out of 2-4 random blocks, then
            // shuffle rows and columns so the structure is hidden
            let nblocks = rng.random_range(2..=4);
            let sizes: Vec<usize> = (0..nblocks).map(|_| rng.random_range(1..=4)).collect();
            let n: usize = sizes.iter().sum();
            let mut m = IntMatrix::zeros(n, n);
            let mut off = 0;
            for &s in &sizes {
                for i in 0..s {
                    for j in 0..s {
                        m.set_i64(off + i, off + j, rng.random_range(-3i64..=3));
                    }
                }
                off += s;
            }
            let mut rows: Vec<usize> = (0..n).collect();
            let mut cols: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                rows.swap(i, rng.random_range(0..=i));
                cols.swap(i, rng.random_range(0..=i));
            }
            let shuffled =
                IntMatrix::from_fn(n, n, |r, c| m.get(rows[r], cols[c]).clone());
            assert_eq!(
                block_permanent(&shuffled).unwrap(),
                permanent(&shuffled).unwrap()
            );
        }
    }

    #[test]
    fn permanent_is_invariant_under_row_and_column_permutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
        let n = 5;
        let m = IntMatrix::from_fn(n, n, |_, _| BigInt::from(rng.random_range(-4i64..=4)));
        let reference = permanent(&m).unwrap();
        for _ in 0..10 {
            let mut rows: Vec<usize> = (0..n).collect();
            let mut cols: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                rows.swap(i, rng.random_range(0..=i));
                cols.swap(i, rng.random_range(0..=i));
            }
            let p = IntMatrix::from_fn(n, n, |r, c| m.get(rows[r], cols[c]).clone());
            assert_eq!(permanent(&p).unwrap(), reference);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let m = IntMatrix::identity(31);
        assert_eq!(
            permanent(&m).unwrap_err(),
            PermanentError::SideExceedsCap { side: 31, cap: 30 }
        );
        // identity factorizes into 1x1 blocks, so the block route still works
        assert_eq!(block_permanent(&m).unwrap(), BigInt::one());
        assert!(permanent_with_cap(&IntMatrix::identity(8), 8).is_ok());
    }

    #[test]
    fn non_square_is_rejected() {
        let m = IntMatrix::zeros(2, 3);
        assert!(matches!(
            permanent(&m).unwrap_err(),
            PermanentError::NotSquare { .. }
        ));
    }
}
