//! The cubic torus `Q³(L₁,L₂,L₃)`, its line graph, faces and signed face states.
//!
//! Vertices live on a 3-torus with even extents; every vertex has degree 6, so
//! the line graph is a 10-regular assembly of `K₆`s. Each unit square (face)
//! carries a signed vector supported on its four edges which lies in the kernel
//! of the unsigned incidence matrix — the localized single-particle states this
//! whole crate is built around.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::IntMatrix;

/// Vertex index, `0..vertex_count()`.
pub type VertexId = usize;
/// Edge index, `3 * base_vertex + axis`.
pub type EdgeId = usize;
/// Face index, `3 * anchor_vertex + plane`.
pub type FaceId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("extent must be even \u{2265} 4 (got {0})")]
    InvalidExtent(usize),
    #[error("face {0} does not belong to this torus (face count {1})")]
    UnknownFace(FaceId, usize),
}

/// Coordinate axis of the torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Axis {
        Self::ALL[i]
    }

    /// The two other axes, in cyclic order (X → (Y,Z), Y → (Z,X), Z → (X,Y)).
    pub fn transverse(self) -> (Axis, Axis) {
        match self {
            Axis::X => (Axis::Y, Axis::Z),
            Axis::Y => (Axis::Z, Axis::X),
            Axis::Z => (Axis::X, Axis::Y),
        }
    }
}

/// Orientation plane of a face; the name lists the two spanning axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Plane {
    XY,
    YZ,
    ZX,
}

impl Plane {
    pub const ALL: [Plane; 3] = [Plane::XY, Plane::YZ, Plane::ZX];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Plane {
        Self::ALL[i]
    }

    /// Spanning axes in traversal order.
    pub fn axes(self) -> (Axis, Axis) {
        match self {
            Plane::XY => (Axis::X, Axis::Y),
            Plane::YZ => (Axis::Y, Axis::Z),
            Plane::ZX => (Axis::Z, Axis::X),
        }
    }

    /// The unique plane spanned by two distinct axes.
    pub fn spanned_by(a: Axis, b: Axis) -> Plane {
        match (a.min(b), a.max(b)) {
            (Axis::X, Axis::Y) => Plane::XY,
            (Axis::Y, Axis::Z) => Plane::YZ,
            (Axis::X, Axis::Z) => Plane::ZX,
            _ => unreachable!("axes must be distinct"),
        }
    }

    /// The axis perpendicular to the plane.
    pub fn normal(self) -> Axis {
        match self {
            Plane::XY => Axis::Z,
            Plane::YZ => Axis::X,
            Plane::ZX => Axis::Y,
        }
    }
}

/// Validated extents of the torus, stored sorted so `l1 ≤ l2 ≤ l3`.
///
/// The bound formulas downstream assume this ordering; every extent must be
/// even and at least 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusSpec {
    extents: [usize; 3],
}

impl TorusSpec {
    pub fn new(l1: usize, l2: usize, l3: usize) -> Result<Self, LatticeError> {
        let mut extents = [l1, l2, l3];
        for &l in &extents {
            if l < 4 || l % 2 != 0 {
                return Err(LatticeError::InvalidExtent(l));
            }
        }
        extents.sort_unstable();
        Ok(TorusSpec { extents })
    }

    pub fn extents(&self) -> [usize; 3] {
        self.extents
    }

    pub fn extent(&self, axis: Axis) -> usize {
        self.extents[axis.index()]
    }

    pub fn l1(&self) -> usize {
        self.extents[0]
    }

    pub fn l2(&self) -> usize {
        self.extents[1]
    }

    pub fn l3(&self) -> usize {
        self.extents[2]
    }

    pub fn vertex_count(&self) -> usize {
        self.extents.iter().product()
    }

    /// Compact `4x4x6`-style label used in CSV output.
    pub fn label(&self) -> String {
        format!("{}x{}x{}", self.extents[0], self.extents[1], self.extents[2])
    }
}

/// A unit square of the torus: minimal-corner anchor plus orientation plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Face {
    pub anchor: VertexId,
    pub plane: Plane,
}

/// The signed kernel vector supported on the four edges of one face.
///
/// Signs alternate around the cyclic traversal, so the unsigned incidence
/// matrix annihilates it exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceState {
    pub face: Face,
    /// `(edge, sign)` in traversal order; signs are ±1 and alternate.
    pub entries: [(EdgeId, i64); 4],
}

impl FaceState {
    /// Sign on `edge`, or 0 if the edge is not on the face.
    pub fn sign(&self, edge: EdgeId) -> i64 {
        self.entries
            .iter()
            .find(|(e, _)| *e == edge)
            .map_or(0, |(_, s)| *s)
    }

    /// Dense vector of length `edge_count` with the four signed entries.
    pub fn to_vector(&self, edge_count: usize) -> Vec<i64> {
        let mut v = vec![0i64; edge_count];
        for &(e, s) in &self.entries {
            v[e] = s;
        }
        v
    }

    /// `Σ_e s_e²`, always 4.
    pub fn self_inner_product(&self) -> i64 {
        self.entries.iter().map(|(_, s)| s * s).sum()
    }
}

/// The torus graph `G` with canonical vertex, edge and face numbering.
///
/// Everything is immutable after construction and derived from the ids:
/// `vertex = x + L₁·(y + L₂·z)`, `edge = 3·base + axis`,
/// `face = 3·anchor + plane`.
#[derive(Debug, Clone)]
pub struct CubicTorus {
    spec: TorusSpec,
}

/// `build_torus`: validate the spec and fix the canonical numbering.
pub fn build_torus(spec: TorusSpec) -> CubicTorus {
    CubicTorus { spec }
}

impl CubicTorus {
    pub fn new(l1: usize, l2: usize, l3: usize) -> Result<Self, LatticeError> {
        Ok(build_torus(TorusSpec::new(l1, l2, l3)?))
    }

    pub fn spec(&self) -> &TorusSpec {
        &self.spec
    }

    pub fn vertex_count(&self) -> usize {
        self.spec.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        3 * self.vertex_count()
    }

    pub fn face_count(&self) -> usize {
        3 * self.vertex_count()
    }

    pub fn vertex_id(&self, coords: [usize; 3]) -> VertexId {
        let [l1, l2, _] = self.spec.extents();
        let [x, y, z] = coords;
        x + l1 * (y + l2 * z)
    }

    pub fn coords(&self, v: VertexId) -> [usize; 3] {
        let [l1, l2, _] = self.spec.extents();
        [v % l1, (v / l1) % l2, v / (l1 * l2)]
    }

    /// Neighbor of `v` along `axis`, `steps` may be negative; wraps modularly.
    pub fn shift(&self, v: VertexId, axis: Axis, steps: isize) -> VertexId {
        let mut c = self.coords(v);
        let l = self.spec.extent(axis) as isize;
        let i = axis.index();
        c[i] = (c[i] as isize + steps).rem_euclid(l) as usize;
        self.vertex_id(c)
    }

    /// Bipartition color of `v`: `(x + y + z) mod 2`.
    pub fn parity(&self, v: VertexId) -> u8 {
        let [x, y, z] = self.coords(v);
        ((x + y + z) % 2) as u8
    }

    pub fn edge_id(&self, base: VertexId, axis: Axis) -> EdgeId {
        3 * base + axis.index()
    }

    pub fn edge_base_axis(&self, e: EdgeId) -> (VertexId, Axis) {
        (e / 3, Axis::from_index(e % 3))
    }

    pub fn edge_endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let (base, axis) = self.edge_base_axis(e);
        (base, self.shift(base, axis, 1))
    }

    /// The six edges incident to `v` (three outgoing, three incoming).
    pub fn edges_at(&self, v: VertexId) -> [EdgeId; 6] {
        let mut out = [0; 6];
        for (i, axis) in Axis::ALL.into_iter().enumerate() {
            out[i] = self.edge_id(v, axis);
            out[i + 3] = self.edge_id(self.shift(v, axis, -1), axis);
        }
        out
    }

    pub fn face_id(&self, face: Face) -> FaceId {
        3 * face.anchor + face.plane.index()
    }

    pub fn face(&self, f: FaceId) -> Face {
        Face {
            anchor: f / 3,
            plane: Plane::from_index(f % 3),
        }
    }

    /// The four corner vertices of a face in traversal order
    /// `a → a+u → a+u+v → a+v` where `(u, v)` are the spanning axes.
    pub fn face_corners(&self, f: FaceId) -> [VertexId; 4] {
        let face = self.face(f);
        let (u, v) = face.plane.axes();
        let a = face.anchor;
        let au = self.shift(a, u, 1);
        let av = self.shift(a, v, 1);
        let auv = self.shift(au, v, 1);
        [a, au, auv, av]
    }

    /// The four edges of a face in canonical cyclic traversal order.
    pub fn face_edges(&self, f: FaceId) -> [EdgeId; 4] {
        let face = self.face(f);
        let (u, v) = face.plane.axes();
        let a = face.anchor;
        let au = self.shift(a, u, 1);
        let av = self.shift(a, v, 1);
        [
            self.edge_id(a, u),
            self.edge_id(au, v),
            self.edge_id(av, u),
            self.edge_id(a, v),
        ]
    }

    /// All faces in id order (`3 |V|` of them).
    pub fn enumerate_faces(&self) -> Vec<Face> {
        (0..self.face_count()).map(|f| self.face(f)).collect()
    }

    /// The four faces containing `edge`: two per plane that contains its axis.
    pub fn faces_containing_edge(&self, edge: EdgeId) -> [FaceId; 4] {
        let (base, axis) = self.edge_base_axis(edge);
        let mut out = [0; 4];
        let mut k = 0;
        for other in Axis::ALL {
            if other == axis {
                continue;
            }
            let plane = Plane::spanned_by(axis, other);
            // anchored at the edge base, or one step back along the other axis
            out[k] = self.face_id(Face {
                anchor: base,
                plane,
            });
            out[k + 1] = self.face_id(Face {
                anchor: self.shift(base, other, -1),
                plane,
            });
            k += 2;
        }
        out
    }

    /// The twelve faces containing `v`: four per orientation plane.
    pub fn faces_containing_vertex(&self, v: VertexId) -> Vec<FaceId> {
        let mut out = Vec::with_capacity(12);
        for plane in Plane::ALL {
            let (u, w) = plane.axes();
            for du in 0..2isize {
                for dw in 0..2isize {
                    let anchor = self.shift(self.shift(v, u, -du), w, -dw);
                    out.push(self.face_id(Face { anchor, plane }));
                }
            }
        }
        out
    }

    /// Signed kernel state of a face.
    ///
    /// Every edge is oriented from its even-parity to its odd-parity endpoint;
    /// the sign is +1 when that orientation agrees with the face traversal.
    /// Flipping any face's global sign never changes a rank downstream, so the
    /// convention is only required to be deterministic.
    pub fn face_state(&self, f: FaceId) -> FaceState {
        let corners = self.face_corners(f);
        let edges = self.face_edges(f);
        let mut entries = [(0, 0); 4];
        for i in 0..4 {
            // edge i is traversed from corners[i] to corners[(i+1) % 4]; the
            // bipartite orientation starts at the even endpoint, so they agree
            // exactly when the traversal starts on the even corner
            let sign = if self.parity(corners[i]) == 0 { 1 } else { -1 };
            entries[i] = (edges[i], sign);
        }
        FaceState {
            face: self.face(f),
            entries,
        }
    }

    pub fn face_state_checked(&self, f: FaceId) -> Result<FaceState, LatticeError> {
        if f >= self.face_count() {
            return Err(LatticeError::UnknownFace(f, self.face_count()));
        }
        Ok(self.face_state(f))
    }

    /// Unsigned incidence matrix `B` (`|V| × |E|`, every column has two ones).
    pub fn incidence_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.vertex_count(), self.edge_count());
        for e in 0..self.edge_count() {
            let (a, b) = self.edge_endpoints(e);
            m.set_i64(a, e, 1);
            m.set_i64(b, e, 1);
        }
        m
    }

    /// Hopping matrix `T = BᵗB` (`|E| × |E|`, diagonal 2, PSD).
    pub fn hopping_matrix(&self) -> IntMatrix {
        let ne = self.edge_count();
        let mut m = IntMatrix::zeros(ne, ne);
        for e in 0..ne {
            m.set_i64(e, e, 2);
            let (a, b) = self.edge_endpoints(e);
            for v in [a, b] {
                for other in self.edges_at(v) {
                    if other != e {
                        m.set_i64(e, other, 1);
                    }
                }
            }
        }
        m
    }

    /// Adjacency matrix of the line graph, `T − 2·I`.
    pub fn line_graph_adjacency(&self) -> IntMatrix {
        let mut m = self.hopping_matrix();
        for e in 0..self.edge_count() {
            m.set_i64(e, e, 0);
        }
        m
    }

    /// Neighbors of an edge in the line graph (the 10 edges sharing a vertex).
    pub fn line_graph_neighbors(&self, e: EdgeId) -> Vec<EdgeId> {
        let (a, b) = self.edge_endpoints(e);
        let mut out = Vec::with_capacity(10);
        for v in [a, b] {
            for other in self.edges_at(v) {
                if other != e {
                    out.push(other);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

/// DOT rendering of `G`.
pub fn torus_to_dot(torus: &CubicTorus) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..torus.vertex_count() {
        let [x, y, z] = torus.coords(v);
        s.push_str(&format!("  v{v} [label=\"({x},{y},{z})\"];\n"));
    }
    for e in 0..torus.edge_count() {
        let (a, b) = torus.edge_endpoints(e);
        s.push_str(&format!("  v{a} -- v{b};\n"));
    }
    s.push_str("}\n");
    s
}

/// DOT rendering of the line graph `L(G)`.
pub fn line_graph_to_dot(torus: &CubicTorus) -> String {
    let mut s = String::from("graph LG {\n");
    for e in 0..torus.edge_count() {
        s.push_str(&format!("  e{e};\n"));
    }
    for e in 0..torus.edge_count() {
        for other in torus.line_graph_neighbors(e) {
            if e < other {
                s.push_str(&format!("  e{e} -- e{other};\n"));
            }
        }
    }
    s.push_str("}\n");
    s
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VertexRecord {
    pub id: VertexId,
    pub coords: [usize; 3],
    pub parity: u8,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EdgeRecord {
    pub id: EdgeId,
    pub base: VertexId,
    pub axis: Axis,
    pub endpoints: (VertexId, VertexId),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FaceRecord {
    pub id: FaceId,
    pub anchor: VertexId,
    pub plane: Plane,
    pub edges: [EdgeId; 4],
}

/// JSON dump of vertices, edges and faces with stable ids.
#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LatticeDump {
    pub spec: [usize; 3],
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
    pub faces: Vec<FaceRecord>,
}

pub fn lattice_dump(torus: &CubicTorus) -> LatticeDump {
    LatticeDump {
        spec: torus.spec().extents(),
        vertices: (0..torus.vertex_count())
            .map(|id| VertexRecord {
                id,
                coords: torus.coords(id),
                parity: torus.parity(id),
            })
            .collect(),
        edges: (0..torus.edge_count())
            .map(|id| {
                let (base, axis) = torus.edge_base_axis(id);
                EdgeRecord {
                    id,
                    base,
                    axis,
                    endpoints: torus.edge_endpoints(id),
                }
            })
            .collect(),
        faces: (0..torus.face_count())
            .map(|id| {
                let face = torus.face(id);
                FaceRecord {
                    id,
                    anchor: face.anchor,
                    plane: face.plane,
                    edges: torus.face_edges(id),
                }
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_rejects_odd_or_small_extents() {
        assert_eq!(
            TorusSpec::new(4, 3, 4).unwrap_err(),
            LatticeError::InvalidExtent(3)
        );
        assert_eq!(
            TorusSpec::new(2, 4, 4).unwrap_err(),
            LatticeError::InvalidExtent(2)
        );
        let msg = TorusSpec::new(4, 3, 4).unwrap_err().to_string();
        assert!(msg.contains("extent must be even \u{2265} 4"), "{msg}");
    }

    #[test]
    fn spec_is_stored_sorted() {
        let s = TorusSpec::new(8, 4, 6).unwrap();
        assert_eq!(s.extents(), [4, 6, 8]);
    }

    #[test]
    fn counts_444_and_446() {
        let t = CubicTorus::new(4, 4, 4).unwrap();
        assert_eq!(t.vertex_count(), 64);
        assert_eq!(t.edge_count(), 192);
        assert_eq!(t.face_count(), 192);
        let t = CubicTorus::new(4, 4, 6).unwrap();
        assert_eq!(t.vertex_count(), 96);
        assert_eq!(t.edge_count(), 288);
    }

    #[test]
    fn parity_is_a_proper_two_coloring() {
        let t = CubicTorus::new(4, 6, 8).unwrap();
        for e in 0..t.edge_count() {
            let (a, b) = t.edge_endpoints(e);
            assert_ne!(t.parity(a), t.parity(b), "edge {e} joins equal parities");
        }
    }

    #[test]
    fn every_vertex_has_degree_six() {
        let t = CubicTorus::new(4, 4, 6).unwrap();
        for v in 0..t.vertex_count() {
            let edges = t.edges_at(v);
            let mut uniq = edges.to_vec();
            uniq.sort_unstable();
            uniq.dedup();
            assert_eq!(uniq.len(), 6);
        }
    }

    #[test]
    fn incidence_matrix_has_column_sums_two_and_row_sums_six() {
        let t = CubicTorus::new(4, 4, 4).unwrap();
        let b = t.incidence_matrix();
        assert_eq!((b.rows(), b.cols()), (64, 192));
        for c in 0..b.cols() {
            let sum: i64 = (0..b.rows()).map(|r| b.get_i64(r, c)).sum();
            assert_eq!(sum, 2);
        }
        for r in 0..b.rows() {
            let sum: i64 = (0..b.cols()).map(|c| b.get_i64(r, c)).sum();
            assert_eq!(sum, 6);
        }
    }

    #[test]
    fn hopping_matrix_diagonal_two_and_ten_neighbors() {
        let t = CubicTorus::new(4, 4, 4).unwrap();
        let h = t.hopping_matrix();
        for e in 0..t.edge_count() {
            assert_eq!(h.get_i64(e, e), 2);
            let ones = (0..t.edge_count())
                .filter(|&o| o != e && h.get_i64(e, o) != 0)
                .count();
            assert_eq!(ones, 10, "edge {e} should meet exactly 10 edges");
            assert_eq!(t.line_graph_neighbors(e).len(), 10);
        }
    }

    #[test]
    fn hopping_matrix_is_b_transpose_b() {
        let t = CubicTorus::new(4, 4, 4).unwrap();
        let b = t.incidence_matrix();
        let bt_b = b.transpose().mul(&b);
        assert_eq!(bt_b, t.hopping_matrix());
    }

    #[test]
    fn edges_at_one_vertex_induce_a_k6_in_the_line_graph() {
        let t = CubicTorus::new(4, 4, 4).unwrap();
        let h = t.hopping_matrix();
        for v in [0, 13, 63] {
            let edges = t.edges_at(v);
            for i in 0..6 {
                for j in (i + 1)..6 {
                    assert_eq!(
                        h.get_i64(edges[i], edges[j]),
                        1,
                        "edges at vertex {v} must be pairwise adjacent"
                    );
                }
            }
        }
    }

    #[test]
    fn face_count_and_edge_membership() {
        let t = CubicTorus::new(4, 4, 4).unwrap();
        assert_eq!(t.enumerate_faces().len(), 192);
        // each edge belongs to exactly 4 faces — count by brute force
        let mut counts = vec![0usize; t.edge_count()];
        for f in 0..t.face_count() {
            for e in t.face_edges(f) {
                counts[e] += 1;
            }
        }
        assert!(counts.iter().all(|&c| c == 4));
        // cross-check the direct lookup
        for e in 0..t.edge_count() {
            let faces = t.faces_containing_edge(e);
            for f in faces {
                assert!(t.face_edges(f).contains(&e));
            }
            let mut uniq = faces.to_vec();
            uniq.sort_unstable();
            uniq.dedup();
            assert_eq!(uniq.len(), 4);
        }
    }

    #[test]
    fn distinct_faces_share_at_most_one_edge() {
        let t = CubicTorus::new(4, 4, 4).unwrap();
        let edge_sets: Vec<[EdgeId; 4]> =
            (0..t.face_count()).map(|f| t.face_edges(f)).collect();
        for f in 0..t.face_count() {
            for g in (f + 1)..t.face_count() {
                let shared = edge_sets[f]
                    .iter()
                    .filter(|e| edge_sets[g].contains(e))
                    .count();
                assert!(shared <= 1, "faces {f},{g} share {shared} edges");
            }
        }
    }

    #[test]
    fn face_states_alternate_and_lie_in_the_incidence_kernel() {
        let t = CubicTorus::new(4, 4, 4).unwrap();
        for f in 0..t.face_count() {
            let st = t.face_state(f);
            let signs: Vec<i64> = st.entries.iter().map(|&(_, s)| s).collect();
            assert_eq!(signs[0], -signs[1]);
            assert_eq!(signs[1], -signs[2]);
            assert_eq!(signs[2], -signs[3]);
            assert_eq!(signs.iter().sum::<i64>(), 0);
            assert_eq!(st.self_inner_product(), 4);
            // B·s = 0: at every corner the two incident signed edges cancel
            let mut per_vertex = std::collections::HashMap::new();
            for &(e, s) in &st.entries {
                let (a, b) = t.edge_endpoints(e);
                *per_vertex.entry(a).or_insert(0i64) += s;
                *per_vertex.entry(b).or_insert(0i64) += s;
            }
            assert!(per_vertex.values().all(|&v| v == 0), "face {f}");
        }
    }

    #[test]
    fn face_state_rejects_foreign_face() {
        let t = CubicTorus::new(4, 4, 4).unwrap();
        assert!(t.face_state_checked(192).is_err());
        assert!(t.face_state_checked(191).is_ok());
    }

    #[test]
    fn faces_containing_vertex_covers_all_planes() {
        let t = CubicTorus::new(4, 6, 8).unwrap();
        for v in [0, 17, 100] {
            let faces = t.faces_containing_vertex(v);
            assert_eq!(faces.len(), 12);
            for plane in Plane::ALL {
                let n = faces
                    .iter()
                    .filter(|&&f| t.face(f).plane == plane)
                    .count();
                assert_eq!(n, 4);
            }
            for &f in &faces {
                assert!(t.face_corners(f).contains(&v));
            }
        }
    }

    #[test]
    fn dot_export_has_expected_node_and_edge_lines() {
        let t = CubicTorus::new(4, 4, 4).unwrap();
        let dot = torus_to_dot(&t);
        assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), 64);
        assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 192);
        let lg = line_graph_to_dot(&t);
        assert_eq!(lg.lines().filter(|l| l.contains(" -- ")).count(), 960);
    }
}
