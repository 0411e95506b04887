//! Exact rank of integer matrices: modular elimination over two random
//! 61-bit primes with a fraction-free (Bareiss) fallback, plus the rational
//! kernel-vector solver used by the two-boson zero-mode analysis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum RankMethod {
    Modular,
    FractionFree,
}

/// Outcome of an exact rank computation.
///
/// A modular result is backed by at least two independent primes that agreed;
/// a fraction-free result is exact by construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RankResult {
    pub rank: usize,
    pub method: RankMethod,
    pub primes: Vec<u64>,
}

/// Rank over the rationals. Two random primes above 2⁶⁰ must agree, otherwise
/// the computation escalates to fraction-free elimination.
pub fn exact_rank(m: &IntMatrix, seed: u64) -> RankResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p1 = random_prime_above_2_60(&mut rng);
    let mut p2 = random_prime_above_2_60(&mut rng);
    while p2 == p1 {
        p2 = random_prime_above_2_60(&mut rng);
    }
    let r1 = modular_rank(m, p1);
    let r2 = modular_rank(m, p2);
    if r1 == r2 {
        RankResult {
            rank: r1,
            method: RankMethod::Modular,
            primes: vec![p1, p2],
        }
    } else {
        RankResult {
            rank: fraction_free_rank(m),
            method: RankMethod::FractionFree,
            primes: vec![p1, p2],
        }
    }
}

/// Rank by Gaussian elimination over GF(p). Never exceeds the rational rank.
pub fn modular_rank(m: &IntMatrix, p: u64) -> usize {
    let rows = reduce_mod(m, p);
    gf_echelon(rows, m.cols(), p, None).0
}

/// Rank plus the pivot column set of the GF(p) row echelon form.
pub fn modular_pivot_columns(m: &IntMatrix, p: u64) -> (usize, Vec<usize>) {
    let rows = reduce_mod(m, p);
    let mut pivots = Vec::new();
    let rank = gf_echelon(rows, m.cols(), p, Some(&mut pivots)).0;
    (rank, pivots)
}

fn reduce_mod(m: &IntMatrix, p: u64) -> Vec<Vec<u64>> {
    let bp = BigInt::from(p);
    (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .map(|v| v.mod_floor(&bp).to_u64().expect("reduced entry fits u64"))
                .collect()
        })
        .collect()
}

fn gf_echelon(
    mut rows: Vec<Vec<u64>>,
    ncols: usize,
    p: u64,
    mut pivots: Option<&mut Vec<usize>>,
) -> (usize, Vec<Vec<u64>>) {
    let nrows = rows.len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = mod_inv(rows[rank][col], p);
        for c in col..ncols {
            rows[rank][c] = mul_mod(rows[rank][c], inv, p);
        }
        for r in 0..nrows {
            if r != rank && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in col..ncols {
                    let sub = mul_mod(factor, rows[rank][c], p);
                    rows[r][c] = (rows[r][c] + p - sub) % p;
                }
            }
        }
        if let Some(pv) = pivots.as_deref_mut() {
            pv.push(col);
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    (rank, rows)
}

/// Fraction-free (Bareiss) elimination over the integers; exact rank.
pub fn fraction_free_rank(m: &IntMatrix) -> usize {
    let nrows = m.rows();
    let ncols = m.cols();
    let mut a: Vec<Vec<BigInt>> = (0..nrows).map(|r| m.row(r).to_vec()).collect();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let pivot = a[rank][col].clone();
        for r in (rank + 1)..nrows {
            let lead = a[r][col].clone();
            for c in (col + 1)..ncols {
                let num = &pivot * &a[r][c] - &lead * &a[rank][c];
                a[r][c] = num / &prev; // exact by the Bareiss identity
            }
            a[r][col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Exact integer kernel vectors for the requested free columns.
///
/// `pivot_cols` must be the pivot set of a row echelon form of `m` (typically
/// from [`modular_pivot_columns`]); for each free column `f` the returned
/// vector `x` satisfies `m·x = 0` with `x[f] > 0` and zero entries on all
/// other free columns. Entries are denominators-cleared integers. The caller
/// is expected to verify `m·x = 0`, which guards against an unlucky modular
/// pivot choice.
pub fn kernel_vectors_for_free_columns(
    m: &IntMatrix,
    pivot_cols: &[usize],
    free_cols: &[usize],
) -> Vec<Vec<BigInt>> {
    let r = pivot_cols.len();
    let nrows = m.rows();
    // rational Gauss-Jordan on [pivot columns | requested free columns]
    let sel: Vec<usize> = pivot_cols.iter().chain(free_cols.iter()).copied().collect();
    let mut a: Vec<Vec<BigRational>> = (0..nrows)
        .map(|row| {
            sel.iter()
                .map(|&c| BigRational::from_integer(m.get(row, c).clone()))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..r {
        let piv = (rank..nrows)
            .find(|&row| !a[row][col].is_zero())
            .expect("pivot column lost its pivot");
        a.swap(rank, piv);
        let inv = a[rank][col].recip();
        for c in col..sel.len() {
            a[rank][c] = &a[rank][c] * &inv;
        }
        for row in 0..nrows {
            if row != rank && !a[row][col].is_zero() {
                let f = a[row][col].clone();
                for c in col..sel.len() {
                    let sub = &f * &a[rank][c];
                    a[row][c] = &a[row][c] - sub;
                }
            }
        }
        rank += 1;
    }
    // after reduction, pivot rows read  x_pivot[i] = -a[i][r + k]  when the
    // free variable k is set to 1
    free_cols
        .iter()
        .enumerate()
        .map(|(k, &f)| {
            let mut x = vec![BigRational::zero(); m.cols()];
            x[f] = BigRational::one();
            for i in 0..r {
                x[pivot_cols[i]] = -a[i][r + k].clone();
            }
            clear_denominators(&x)
        })
        .collect()
}

fn clear_denominators(x: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for v in x {
        if !v.is_zero() {
            lcm = lcm.lcm(v.denom());
        }
    }
    x.iter()
        .map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer())
        .collect()
}

// ---------------------------------------------------------------------------
// 61-bit prime sampling
// ---------------------------------------------------------------------------

/// A uniformly random prime in (2⁶⁰, 2⁶¹).
pub fn random_prime_above_2_60(rng: &mut impl Rng) -> u64 {
    loop {
        let candidate = rng.random_range((1u64 << 60) + 1..1u64 << 61) | 1;
        if is_prime_u64(candidate) {
            return candidate;
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin; the witness set covers all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
