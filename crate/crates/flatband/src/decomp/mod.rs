//! 4-cycle decompositions: the periodic tower construction, column rotations,
//! exact counting and enumeration via exact cover, per-vertex profiles, and
//! 2D plane slices.

mod cover;
mod packing;

pub use cover::{CountOutcome, ExactCover, SearchBudget};
pub use packing::{
    classify_2d_packing, enumerate_2d_packings, Packing2D, PackingClass, PackingError,
};

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{Axis, CubicTorus, EdgeId, Face, FaceId, Plane, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecompError {
    #[error("face id {0} out of range (face count {1})")]
    FaceOutOfRange(FaceId, usize),
    #[error("duplicate face id {0}")]
    DuplicateFace(FaceId),
    #[error("column at {axis:?} {transverse:?} is not in a rotatable state")]
    ColumnNotRotatable {
        axis: Axis,
        transverse: (usize, usize),
    },
    #[error("layer {layer} exceeds extent {extent} of the slicing direction")]
    LayerOutOfRange { layer: usize, extent: usize },
}

/// A set of faces covering every edge of the torus exactly once.
///
/// Identity is the face-id set; orientation of the underlying states plays no
/// role in counting.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Decomposition {
    /// Sorted, duplicate-free face ids.
    faces: Vec<FaceId>,
}

impl Decomposition {
    pub fn from_faces(
        torus: &CubicTorus,
        mut faces: Vec<FaceId>,
    ) -> Result<Self, DecompError> {
        faces.sort_unstable();
        for w in faces.windows(2) {
            if w[0] == w[1] {
                return Err(DecompError::DuplicateFace(w[0]));
            }
        }
        if let Some(&f) = faces.iter().find(|&&f| f >= torus.face_count()) {
            return Err(DecompError::FaceOutOfRange(f, torus.face_count()));
        }
        Ok(Decomposition { faces })
    }

    pub fn faces(&self) -> &[FaceId] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, f: FaceId) -> bool {
        self.faces.binary_search(&f).is_ok()
    }
}

/// Edge-coverage report: valid iff both violation lists are empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CoverReport {
    pub uncovered_edges: Vec<EdgeId>,
    /// `(edge, multiplicity)` for every edge covered more than once.
    pub overcovered_edges: Vec<(EdgeId, usize)>,
}

impl CoverReport {
    pub fn is_valid(&self) -> bool {
        self.uncovered_edges.is_empty() && self.overcovered_edges.is_empty()
    }
}

/// Accepts iff every edge of the torus is covered exactly once.
pub fn verify_decomposition(torus: &CubicTorus, d: &Decomposition) -> CoverReport {
    let mut multiplicity = vec![0usize; torus.edge_count()];
    for &f in d.faces() {
        for e in torus.face_edges(f) {
            multiplicity[e] += 1;
        }
    }
    CoverReport {
        uncovered_edges: (0..torus.edge_count())
            .filter(|&e| multiplicity[e] == 0)
            .collect(),
        overcovered_edges: (0..torus.edge_count())
            .filter(|&e| multiplicity[e] > 1)
            .map(|e| (e, multiplicity[e]))
            .collect(),
    }
}

/// Per-vertex face membership, broken down by orientation plane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProfileViolation {
    pub vertex: VertexId,
    /// Face counts per plane (XY, YZ, ZX); a valid decomposition has [1,1,1].
    pub plane_counts: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProfileReport {
    pub violations: Vec<ProfileViolation>,
}

impl ProfileReport {
    pub fn all_pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every vertex lies in exactly three faces of the set, one per
/// orientation plane. Works on arbitrary face sets so that broken inputs can
/// be diagnosed.
pub fn vertex_axis_profile(torus: &CubicTorus, faces: &[FaceId]) -> ProfileReport {
    let mut counts = vec![[0usize; 3]; torus.vertex_count()];
    for &f in faces {
        let plane = torus.face(f).plane.index();
        for v in torus.face_corners(f) {
            counts[v][plane] += 1;
        }
    }
    ProfileReport {
        violations: (0..torus.vertex_count())
            .filter(|&v| counts[v] != [1, 1, 1])
            .map(|v| ProfileViolation {
                vertex: v,
                plane_counts: counts[v],
            })
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// Towers
// ---------------------------------------------------------------------------

/// The canonical periodic decomposition built from three interwoven sets of
/// towers (period two in every direction):
///
/// * XY faces wherever `x` and `y` are even (stacked along z),
/// * YZ faces wherever `y` is odd and `z` even (stacked along x),
/// * ZX faces wherever `z` is odd and `x` odd (stacked along y).
///
/// Each orientation contributes `|V|/4` faces, `|E|/4` in total, and every
/// edge is covered exactly once.
pub fn tower_decomposition(torus: &CubicTorus) -> Decomposition {
    let mut faces = Vec::with_capacity(torus.edge_count() / 4);
    for anchor in 0..torus.vertex_count() {
        let [x, y, z] = torus.coords(anchor);
        if x % 2 == 0 && y % 2 == 0 {
            faces.push(torus.face_id(Face {
                anchor,
                plane: Plane::XY,
            }));
        }
        if y % 2 == 1 && z % 2 == 0 {
            faces.push(torus.face_id(Face {
                anchor,
                plane: Plane::YZ,
            }));
        }
        if z % 2 == 1 && x % 2 == 1 {
            faces.push(torus.face_id(Face {
                anchor,
                plane: Plane::ZX,
            }));
        }
    }
    faces.sort_unstable();
    Decomposition { faces }
}

// ---------------------------------------------------------------------------
// Columns and rotations
// ---------------------------------------------------------------------------

/// A 1×1 column of cubes running the full length of one axis.
///
/// `transverse` are the coordinates on the two remaining axes in cyclic order
/// (X → (y,z), Y → (z,x), Z → (x,y)). Each cube level is ringed by four side
/// faces; the two opposite pairs alternate along the column in the patterns
/// swapped by a rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Column {
    pub axis: Axis,
    pub transverse: (usize, usize),
}

impl Column {
    pub fn new(axis: Axis, transverse: (usize, usize)) -> Self {
        Column { axis, transverse }
    }

    /// Length of the column (the extent of its axis).
    pub fn length(&self, torus: &CubicTorus) -> usize {
        torus.spec().extent(self.axis)
    }

    fn anchor_at_level(&self, torus: &CubicTorus, level: usize) -> VertexId {
        let (t1, t2) = self.axis.transverse();
        let mut coords = [0usize; 3];
        coords[self.axis.index()] = level;
        coords[t1.index()] = self.transverse.0;
        coords[t2.index()] = self.transverse.1;
        torus.vertex_id(coords)
    }

    /// The four ring faces at a level: the opposite pair perpendicular to the
    /// second transverse axis, then the pair perpendicular to the first.
    pub fn ring_faces(&self, torus: &CubicTorus, level: usize) -> [FaceId; 4] {
        let (t1, t2) = self.axis.transverse();
        let a = self.anchor_at_level(torus, level);
        let p1 = Plane::spanned_by(self.axis, t1); // perpendicular to t2
        let p2 = Plane::spanned_by(self.axis, t2); // perpendicular to t1
        [
            torus.face_id(Face { anchor: a, plane: p1 }),
            torus.face_id(Face {
                anchor: torus.shift(a, t2, 1),
                plane: p1,
            }),
            torus.face_id(Face { anchor: a, plane: p2 }),
            torus.face_id(Face {
                anchor: torus.shift(a, t1, 1),
                plane: p2,
            }),
        ]
    }

    /// The two alternating face patterns of the column. Every level uses one
    /// opposite pair; the other pattern uses the complementary pair.
    pub fn patterns(&self, torus: &CubicTorus) -> (Vec<FaceId>, Vec<FaceId>) {
        let mut a = Vec::with_capacity(2 * self.length(torus));
        let mut b = Vec::with_capacity(2 * self.length(torus));
        for level in 0..self.length(torus) {
            let ring = self.ring_faces(torus, level);
            let (first, second) = (&ring[0..2], &ring[2..4]);
            if level % 2 == 0 {
                a.extend_from_slice(first);
                b.extend_from_slice(second);
            } else {
                a.extend_from_slice(second);
                b.extend_from_slice(first);
            }
        }
        a.sort_unstable();
        b.sort_unstable();
        (a, b)
    }
}

/// Swap the column's alternating pattern for the complementary one.
///
/// The two patterns cover exactly the same edge set, so validity is
/// preserved; applying the rotation twice restores the input.
pub fn rotate_column(
    torus: &CubicTorus,
    d: &Decomposition,
    col: &Column,
) -> Result<Decomposition, DecompError> {
    let (pat_a, pat_b) = col.patterns(torus);
    let has = |pattern: &[FaceId]| pattern.iter().all(|&f| d.contains(f));
    let (remove, insert) = if has(&pat_a) {
        (pat_a, pat_b)
    } else if has(&pat_b) {
        (pat_b, pat_a)
    } else {
        return Err(DecompError::ColumnNotRotatable {
            axis: col.axis,
            transverse: col.transverse,
        });
    };
    let mut faces: BTreeSet<FaceId> = d.faces().iter().copied().collect();
    for f in remove {
        faces.remove(&f);
    }
    for f in insert {
        faces.insert(f);
    }
    Ok(Decomposition {
        faces: faces.into_iter().collect(),
    })
}

/// The columns along `axis` that are rotatable in the tower decomposition.
/// They are pairwise edge-disjoint, so rotations commute.
pub fn rotatable_tower_columns(torus: &CubicTorus, axis: Axis) -> Vec<Column> {
    let (t1, t2) = axis.transverse();
    let (l1, l2) = (torus.spec().extent(t1), torus.spec().extent(t2));
    // parity classes where the canonical towers form full rings:
    //   X: (y even, z odd)   Y: (z even, x even)   Z: (x odd, y odd)
    let (p1, p2) = match axis {
        Axis::X => (0, 1),
        Axis::Y => (0, 0),
        Axis::Z => (1, 1),
    };
    let mut out = Vec::with_capacity(l1 * l2 / 4);
    for c1 in 0..l1 {
        for c2 in 0..l2 {
            if c1 % 2 == p1 && c2 % 2 == p2 {
                out.push(Column::new(axis, (c1, c2)));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Counting and enumeration
// ---------------------------------------------------------------------------

/// Exact count of a counting search, with search statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CountResult {
    pub spec: [usize; 3],
    #[serde(with = "crate::exactalg::bigint_string")]
    pub count: BigInt,
    pub nodes: u64,
    pub seconds: f64,
    pub completed: bool,
}

impl CountResult {
    pub fn csv_header() -> &'static str {
        "spec,count,nodes,seconds,completed"
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{}x{}x{},{},{},{:.3},{}",
            self.spec[0], self.spec[1], self.spec[2], self.count, self.nodes, self.seconds,
            self.completed
        )
    }
}

fn cover_instance(torus: &CubicTorus) -> ExactCover {
    let mut ec = ExactCover::new(torus.edge_count());
    for f in 0..torus.face_count() {
        let mut edges = torus.face_edges(f).to_vec();
        edges.sort_unstable();
        ec.add_option(&edges);
    }
    ec
}

/// Exact cover count of all 4-cycle decompositions (items = edges, options =
/// faces). If the budget runs out the partial count is reported with
/// `completed = false`; a partial count is still a valid lower witness.
pub fn count_decompositions(torus: &CubicTorus, budget: &SearchBudget) -> CountResult {
    let outcome = cover_instance(torus).count(budget);
    CountResult {
        spec: torus.spec().extents(),
        count: BigInt::from(outcome.count),
        nodes: outcome.nodes,
        seconds: outcome.seconds,
        completed: outcome.completed,
    }
}

/// First `limit` decompositions in deterministic search order. Exact cover
/// never emits the same face set twice.
pub fn enumerate_decompositions(torus: &CubicTorus, limit: usize) -> Vec<Decomposition> {
    let mut out = Vec::new();
    if limit == 0 {
        return out;
    }
    cover_instance(torus).enumerate(&mut |options| {
        // option ids coincide with face ids by construction
        let mut faces = options.to_vec();
        faces.sort_unstable();
        out.push(Decomposition { faces });
        if out.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out
}

// ---------------------------------------------------------------------------
// Plane slices
// ---------------------------------------------------------------------------

/// The faces of `d` parallel to `plane` at the given layer of its normal
/// axis, reinterpreted as 2×2 squares on the corresponding 2D torus.
pub fn plane_slice(
    torus: &CubicTorus,
    d: &Decomposition,
    plane: Plane,
    layer: usize,
) -> Result<Packing2D, DecompError> {
    let normal = plane.normal();
    let extent = torus.spec().extent(normal);
    if layer >= extent {
        return Err(DecompError::LayerOutOfRange { layer, extent });
    }
    let (u, v) = plane.axes();
    let anchors = d
        .faces()
        .iter()
        .map(|&f| torus.face(f))
        .filter(|face| face.plane == plane)
        .filter(|face| torus.coords(face.anchor)[normal.index()] == layer)
        .map(|face| {
            let c = torus.coords(face.anchor);
            (c[u.index()], c[v.index()])
        })
        .collect();
    Ok(Packing2D::new(
        (torus.spec().extent(u), torus.spec().extent(v)),
        anchors,
    ))
}
