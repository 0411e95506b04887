//! Many-boson state algebra on the flat band: product states of face states,
//! overlaps via Wick permanents, exact Gram ranks, the rotated-tower families,
//! two-boson zero-mode certification and the dilution entropy bound.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomp::{
    enumerate_decompositions, rotatable_tower_columns, rotate_column, tower_decomposition,
    Decomposition,
};
use crate::exactalg::{
    self, binomial, block_permanent_with_cap, exact_rank, kernel_basis,
    kernel_vectors_for_free_columns, modular_pivot_columns, random_prime_above_2_60, IntMatrix,
    PermanentError, RankResult, PERMANENT_CAP,
};
use crate::lattice::{Axis, CubicTorus, FaceId};

#[derive(Debug, Error, PartialEq)]
pub enum ManybodyError {
    #[error("particle numbers differ: {0} vs {1}")]
    ParticleNumberMismatch(usize, usize),
    #[error("overlap of states {pair:?} needs a permanent block of side {side}, cap {cap}")]
    OverlapCapExceeded {
        pair: (usize, usize),
        side: usize,
        cap: usize,
    },
    #[error("column length must be even \u{2265} 4 (got {0})")]
    InvalidColumnLength(usize),
    #[error("cannot remove {particles} particles from {available} faces")]
    TooManyParticles { particles: usize, available: usize },
    #[error("zero-mode basis vector {index} is not annihilated by the Hamiltonian")]
    SoundnessFailure { index: usize },
    #[error(transparent)]
    Permanent(#[from] PermanentError),
}

/// A multi-boson state: one boson in each face state of the set.
///
/// At critical filling the face set is a decomposition, so the bosons are
/// edge-disjoint and the interaction energy vanishes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FaceProductState {
    faces: Vec<FaceId>,
}

impl FaceProductState {
    pub fn new(mut faces: Vec<FaceId>) -> Self {
        faces.sort_unstable();
        FaceProductState { faces }
    }

    pub fn faces(&self) -> &[FaceId] {
        &self.faces
    }

    pub fn particle_count(&self) -> usize {
        self.faces.len()
    }
}

impl From<Decomposition> for FaceProductState {
    fn from(d: Decomposition) -> Self {
        FaceProductState::new(d.faces().to_vec())
    }
}

/// `Σ_e s_{e,f}·s_{e,g}`: 4 for equal faces, ±1 when exactly one edge is
/// shared, 0 otherwise.
pub fn single_particle_overlap(torus: &CubicTorus, f: FaceId, g: FaceId) -> i64 {
    if f == g {
        return 4;
    }
    let sf = torus.face_state(f);
    let sg = torus.face_state(g);
    let mut acc = 0;
    for &(e, s) in &sf.entries {
        acc += s * sg.sign(e);
    }
    acc
}

/// Bosonic overlap `⟨A|B⟩`: the permanent of the single-particle overlap
/// matrix, computed blockwise over the components of the shares-an-edge
/// graph. Exact.
pub fn state_overlap(
    torus: &CubicTorus,
    a: &FaceProductState,
    b: &FaceProductState,
) -> Result<BigInt, ManybodyError> {
    state_overlap_with_cap(torus, a, b, PERMANENT_CAP)
}

pub fn state_overlap_with_cap(
    torus: &CubicTorus,
    a: &FaceProductState,
    b: &FaceProductState,
    cap: usize,
) -> Result<BigInt, ManybodyError> {
    if a.particle_count() != b.particle_count() {
        return Err(ManybodyError::ParticleNumberMismatch(
            a.particle_count(),
            b.particle_count(),
        ));
    }
    let n = a.particle_count();
    let m = IntMatrix::from_fn(n, n, |i, j| {
        BigInt::from(single_particle_overlap(torus, a.faces[i], b.faces[j]))
    });
    Ok(block_permanent_with_cap(&m, cap)?)
}

/// Exact Gram matrix of pairwise state overlaps. Symmetric PSD with diagonal
/// `4^N` for edge-disjoint N-face states.
pub struct GramMatrix {
    matrix: IntMatrix,
}

impl GramMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn rank(&self, seed: u64) -> RankResult {
        exact_rank(&self.matrix, seed)
    }

    /// Floating Cholesky-style cross-check: after scaling by the largest
    /// entry, the minimum eigenvalue must not drop below `-tol`.
    pub fn psd_check(&self, tol: f64) -> bool {
        let n = self.size();
        if n == 0 {
            return true;
        }
        let scale = self.matrix.max_abs();
        if scale.is_zero() {
            return true;
        }
        let scale_f = exactalg::ln_big(&scale).exp();
        let m = nalgebra::DMatrix::from_fn(n, n, |r, c| {
            big_to_f64(self.matrix.get(r, c)) / scale_f
        });
        match m.try_symmetric_eigen(1e-13, 10_000) {
            Some(eig) => eig.eigenvalues.iter().all(|&l| l >= -tol),
            None => false,
        }
    }
}

fn big_to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or_else(|| {
        let ln = exactalg::ln_big(&v.abs());
        let mag = ln.exp();
        if v.is_negative() {
            -mag
        } else {
            mag
        }
    })
}

/// Assemble the Gram matrix of the given states; overlaps are computed in
/// parallel and the result is independent of the worker count.
pub fn gram_matrix(
    torus: &CubicTorus,
    states: &[FaceProductState],
) -> Result<GramMatrix, ManybodyError> {
    let n = states.len();
    for s in states {
        if s.particle_count() != states[0].particle_count() {
            return Err(ManybodyError::ParticleNumberMismatch(
                states[0].particle_count(),
                s.particle_count(),
            ));
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .collect();
    // collect preserves the pair order, so the first error is deterministic
    // regardless of the worker count
    let entries: Vec<Result<BigInt, ManybodyError>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            state_overlap(torus, &states[i], &states[j]).map_err(|e| match e {
                ManybodyError::Permanent(PermanentError::SideExceedsCap { side, cap }) => {
                    ManybodyError::OverlapCapExceeded {
                        pair: (i, j),
                        side,
                        cap,
                    }
                }
                other => other,
            })
        })
        .collect();
    let mut matrix = IntMatrix::zeros(n, n);
    for (&(i, j), entry) in pairs.iter().zip(entries) {
        let v = entry?;
        matrix.set(i, j, v.clone());
        matrix.set(j, i, v);
    }
    Ok(GramMatrix { matrix })
}

/// Exact rank of the span of the given product states.
pub fn gram_rank(
    torus: &CubicTorus,
    states: &[FaceProductState],
    seed: u64,
) -> Result<usize, ManybodyError> {
    Ok(gram_matrix(torus, states)?.rank(seed).rank)
}

/// The `2^{L₂L₃/4}` states obtained from the tower decomposition by rotating
/// the edge-disjoint columns along the shortest axis independently. Every
/// face set is a valid decomposition.
pub fn rotated_family(torus: &CubicTorus) -> Vec<FaceProductState> {
    let towers = tower_decomposition(torus);
    let columns = rotatable_tower_columns(torus, Axis::X);
    let mut family = Vec::with_capacity(1 << columns.len());
    for bits in 0u64..(1 << columns.len()) {
        let mut d = towers.clone();
        for (i, col) in columns.iter().enumerate() {
            if bits >> i & 1 == 1 {
                d = rotate_column(torus, &d, col).expect("tower columns are rotatable");
            }
        }
        family.push(FaceProductState::from(d));
    }
    family
}

/// Number of independently rotatable columns backing [`rotated_family`].
pub fn rotated_family_log2_size(torus: &CubicTorus) -> usize {
    torus.spec().l2() * torus.spec().l3() / 4
}

// ---------------------------------------------------------------------------
// Column Gram check
// ---------------------------------------------------------------------------

/// Exact report on the two rotations of a single column of length `l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ColumnGramReport {
    pub length: usize,
    #[serde(with = "crate::exactalg::bigint_string")]
    pub self_overlap: BigInt,
    #[serde(with = "crate::exactalg::bigint_string")]
    pub cross_overlap: BigInt,
    #[serde(with = "crate::exactalg::bigint_string")]
    pub det: BigInt,
}

impl ColumnGramReport {
    pub fn det_positive(&self) -> bool {
        self.det.is_positive()
    }
}

/// Build the 4·l face ring of one column, compute the 2×2 Gram of its two
/// rotation states exactly, and check `⟨↑|↑⟩ = 4^{2l}`, `|⟨↑|↓⟩| < 4^{2l}`
/// and `det > 0`.
pub fn column_gram_check(l: usize) -> Result<ColumnGramReport, ManybodyError> {
    if l < 4 || l % 2 != 0 {
        return Err(ManybodyError::InvalidColumnLength(l));
    }
    let torus = CubicTorus::new(4, 4, l).expect("valid host torus");
    let column = crate::decomp::Column::new(Axis::Z, (1, 1));
    let (up, down) = column.patterns(&torus);
    let up = FaceProductState::new(up);
    let down = FaceProductState::new(down);
    let self_overlap = state_overlap(&torus, &up, &up)?;
    let down_self = state_overlap(&torus, &down, &down)?;
    debug_assert_eq!(self_overlap, down_self);
    let cross_overlap = state_overlap(&torus, &up, &down)?;
    let det = &self_overlap * &down_self - &cross_overlap * &cross_overlap;
    Ok(ColumnGramReport {
        length: l,
        self_overlap,
        cross_overlap,
        det,
    })
}

// ---------------------------------------------------------------------------
// Span rank over enumerated decompositions
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SpanRankReport {
    pub spec: [usize; 3],
    pub states: usize,
    pub rank: usize,
}

/// Gram rank over the first `limit` enumerated decompositions' product
/// states: a certified lower bound on the ground-state degeneracy at critical
/// filling, monotone nondecreasing in `limit`.
pub fn decomposition_span_rank(
    torus: &CubicTorus,
    limit: usize,
    seed: u64,
) -> Result<SpanRankReport, ManybodyError> {
    let states: Vec<FaceProductState> = enumerate_decompositions(torus, limit)
        .into_iter()
        .map(FaceProductState::from)
        .collect();
    let rank = gram_rank(torus, &states, seed)?;
    Ok(SpanRankReport {
        spec: torus.spec().extents(),
        states: states.len(),
        rank,
    })
}

// ---------------------------------------------------------------------------
// Two-boson zero modes
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TwoBosonReport {
    pub spec: [usize; 3],
    pub kernel_dim: usize,
    pub pair_count: usize,
    pub constraint_rows: usize,
    pub constraint_rank: usize,
    pub zero_mode_dim: usize,
    pub soundness_vectors: usize,
}

/// Dimension of the exact two-boson ground space: symmetric pairs of hopping
/// kernel vectors whose wavefunction vanishes on every doubly occupied site.
///
/// The dimension is `C(d₀+1, 2) − rank` of the per-site constraint matrix;
/// `soundness` random basis vectors are reconstructed exactly and pushed
/// through the full Hamiltonian (hopping plus on-site repulsion) in integer
/// arithmetic.
pub fn two_boson_zero_dim(
    torus: &CubicTorus,
    soundness: usize,
    seed: u64,
) -> Result<TwoBosonReport, ManybodyError> {
    let basis = kernel_basis(torus);
    let d0 = basis.cols();
    let ne = torus.edge_count();
    let pairs: Vec<(usize, usize)> = (0..d0)
        .flat_map(|i| (i..d0).map(move |j| (i, j)))
        .collect();

    // constraint row per site e: Σ_{i≤j} c_ij · u_i(e)u_j(e) · (2 − δ_ij) = 0
    let constraint = IntMatrix::from_fn(ne, pairs.len(), |e, k| {
        let (i, j) = pairs[k];
        let v = basis.get(e, i) * basis.get(e, j);
        if i == j {
            v
        } else {
            v * 2
        }
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p1 = random_prime_above_2_60(&mut rng);
    let mut p2 = random_prime_above_2_60(&mut rng);
    while p2 == p1 {
        p2 = random_prime_above_2_60(&mut rng);
    }
    let (r1, pivots) = modular_pivot_columns(&constraint, p1);
    let (r2, _) = modular_pivot_columns(&constraint, p2);
    let constraint_rank = if r1 == r2 {
        r1
    } else {
        exactalg::fraction_free_rank(&constraint)
    };
    let zero_mode_dim = pairs.len() - constraint_rank;

    // sample random free columns, lift exact kernel vectors, and verify
    // H·ψ = 0 by direct sparse application
    let mut free: Vec<usize> = (0..pairs.len()).filter(|c| !pivots.contains(c)).collect();
    free.shuffle(&mut rng);
    free.truncate(soundness.min(free.len()));
    free.sort_unstable();
    let vectors = kernel_vectors_for_free_columns(&constraint, &pivots, &free);
    for (index, x) in vectors.iter().enumerate() {
        if !hamiltonian_annihilates(torus, &basis, &pairs, x) {
            return Err(ManybodyError::SoundnessFailure { index });
        }
    }

    Ok(TwoBosonReport {
        spec: torus.spec().extents(),
        kernel_dim: d0,
        pair_count: pairs.len(),
        constraint_rows: ne,
        constraint_rank,
        zero_mode_dim,
        soundness_vectors: vectors.len(),
    })
}

/// Exact check that the two-boson state with pair coefficients `x` is
/// annihilated by hopping and by every on-site repulsion term.
fn hamiltonian_annihilates(
    torus: &CubicTorus,
    basis: &IntMatrix,
    pairs: &[(usize, usize)],
    x: &[BigInt],
) -> bool {
    let d0 = basis.cols();
    let ne = torus.edge_count();
    // symmetric coefficient matrix C with c_ii = x_ii, c_ij = c_ji = x_ij
    let mut coeff = IntMatrix::zeros(d0, d0);
    for (k, &(i, j)) in pairs.iter().enumerate() {
        coeff.set(i, j, x[k].clone());
        if i != j {
            coeff.set(j, i, x[k].clone());
        }
    }
    // site-basis amplitudes Ψ = U·C·Uᵗ (symmetric)
    let psi = basis.mul(&coeff).mul(&basis.transpose());
    // repulsion: every doubly occupied amplitude must vanish
    for e in 0..ne {
        if !psi.get(e, e).is_zero() {
            return false;
        }
    }
    // hopping: (T ⊗ 1 + 1 ⊗ T)Ψ = TΨ + ΨT must vanish entrywise; apply T
    // sparsely (diagonal 2 plus the ten line-graph neighbors)
    let neighbors: Vec<Vec<usize>> = (0..ne).map(|e| torus.line_graph_neighbors(e)).collect();
    for e in 0..ne {
        for f in 0..ne {
            let mut acc: BigInt = psi.get(e, f) * 2 + psi.get(f, e) * 2;
            for &g in &neighbors[e] {
                acc += psi.get(g, f);
            }
            for &g in &neighbors[f] {
                acc += psi.get(e, g);
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Dilution entropy
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EntropyReport {
    pub n_c: usize,
    pub particles: usize,
    /// Exact `C(N_c, N)`.
    #[serde(with = "crate::exactalg::bigint_string")]
    pub count: BigInt,
    /// `ρ = N / |E|` with `|E| = 4·N_c`.
    pub density: f64,
    pub critical_density: f64,
    /// Per-site entropy lower bound `h_b(4ρ)/4` in natural log.
    pub entropy_bound: f64,
}

impl EntropyReport {
    pub fn csv_header() -> &'static str {
        "nc,particles,count,density,bound"
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.n_c, self.particles, self.count, self.density, self.entropy_bound
        )
    }
}

/// Binary entropy in natural log, with `h_b(0) = h_b(1) = 0`.
pub fn binary_entropy(rho: f64) -> f64 {
    if rho <= 0.0 || rho >= 1.0 {
        return 0.0;
    }
    -rho * rho.ln() - (1.0 - rho) * (1.0 - rho).ln()
}

/// Diluting `N ≤ N_c` bosons over the faces of one decomposition: the exact
/// binomial count and the per-site entropy bound `h_b(4ρ)/4`.
pub fn dilution_entropy(n_c: usize, particles: usize) -> Result<EntropyReport, ManybodyError> {
    if particles > n_c {
        return Err(ManybodyError::TooManyParticles {
            particles,
            available: n_c,
        });
    }
    let density = particles as f64 / (4.0 * n_c as f64);
    Ok(EntropyReport {
        n_c,
        particles,
        count: binomial(n_c, particles),
        density,
        critical_density: 0.25,
        entropy_bound: binary_entropy(4.0 * density) / 4.0,
    })
}
