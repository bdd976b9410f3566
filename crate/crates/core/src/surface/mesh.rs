//! The intrinsic triangle mesh: closed oriented surface given by face
//! combinatorics and per-edge lengths. All metric quantities downstream
//! (angles, areas, cotangent weights) are functions of the lengths alone.

use std::collections::HashMap;

use super::MeshError;

/// A closed, connected, consistently oriented triangle mesh with a discrete
/// metric. Vertex positions are optional; when present the edge lengths are
/// derived from them.
///
/// Immutable after construction; cheap to share behind an `Arc`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMesh {
    vertex_count: usize,
    faces: Vec<[usize; 3]>,
    /// Undirected edges as sorted vertex pairs, in first-discovery order
    /// (faces scanned in order, corners in order).
    edges: Vec<[usize; 2]>,
    edge_lengths: Vec<f64>,
    /// For face `f` and corner `c`, `face_edges[f][c]` is the edge opposite
    /// corner `c` (the edge between the other two corners).
    face_edges: Vec<[usize; 3]>,
    /// The two faces incident to each edge, in discovery order.
    edge_faces: Vec<[usize; 2]>,
    vertex_positions: Option<Vec<[f64; 3]>>,
}

/// Accumulates faces and lengths, then validates everything in `build`.
#[derive(Debug, Default)]
pub struct MeshBuilder {
    vertex_count: usize,
    faces: Vec<[usize; 3]>,
    lengths: HashMap<(usize, usize), f64>,
    positions: Option<Vec<[f64; 3]>>,
}

fn edge_key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl MeshBuilder {
    pub fn new(vertex_count: usize) -> Self {
        Self { vertex_count, ..Self::default() }
    }

    pub fn push_face(&mut self, a: usize, b: usize, c: usize) {
        self.faces.push([a, b, c]);
    }

    /// Records the length of undirected edge (u, v). Later calls win; callers
    /// that need first-wins semantics should use `set_length_if_absent`.
    pub fn set_length(&mut self, u: usize, v: usize, length: f64) {
        self.lengths.insert(edge_key(u, v), length);
    }

    pub fn set_length_if_absent(&mut self, u: usize, v: usize, length: f64) {
        self.lengths.entry(edge_key(u, v)).or_insert(length);
    }

    /// Supplies embedded positions; edge lengths are then derived.
    pub fn set_positions(&mut self, positions: Vec<[f64; 3]>) {
        self.positions = Some(positions);
    }

    pub fn build(mut self) -> Result<TriangleMesh, MeshError> {
        if let Some(pos) = &self.positions {
            if pos.len() != self.vertex_count {
                return Err(MeshError::InvalidParameter(format!(
                    "{} positions for {} vertices",
                    pos.len(),
                    self.vertex_count
                )));
            }
            let derived: Vec<([usize; 2], f64)> = self
                .faces
                .iter()
                .flat_map(|f| [[f[0], f[1]], [f[1], f[2]], [f[2], f[0]]])
                .map(|[u, v]| {
                    let d = dist3(pos[u], pos[v]);
                    ([u, v], d)
                })
                .collect();
            for ([u, v], d) in derived {
                if let Some(&stored) = self.lengths.get(&edge_key(u, v)) {
                    let scale = stored.abs().max(d.abs()).max(f64::MIN_POSITIVE);
                    if (stored - d).abs() > 1e-12 * scale {
                        return Err(MeshError::EmbeddingMismatch {
                            u: u.min(v),
                            v: u.max(v),
                            stored,
                            derived: d,
                        });
                    }
                } else {
                    self.lengths.insert(edge_key(u, v), d);
                }
            }
        }
        TriangleMesh::from_parts(self.vertex_count, self.faces, &self.lengths, self.positions)
    }
}

fn dist3(p: [f64; 3], q: [f64; 3]) -> f64 {
    let dx = p[0] - q[0];
    let dy = p[1] - q[1];
    let dz = p[2] - q[2];
    (dx * dx + dy * dy + dz * dz).sqrt()
}

impl TriangleMesh {
    fn from_parts(
        vertex_count: usize,
        faces: Vec<[usize; 3]>,
        lengths: &HashMap<(usize, usize), f64>,
        positions: Option<Vec<[f64; 3]>>,
    ) -> Result<Self, MeshError> {
        if vertex_count < 3 || faces.is_empty() {
            return Err(MeshError::InvalidParameter(
                "need at least 3 vertices and one face".into(),
            ));
        }
        for (fi, f) in faces.iter().enumerate() {
            for &v in f {
                if v >= vertex_count {
                    return Err(MeshError::VertexOutOfRange { face: fi, vertex: v, count: vertex_count });
                }
            }
            if f[0] == f[1] || f[1] == f[2] || f[2] == f[0] {
                return Err(MeshError::DegenerateFace { face: fi, a: f[0], b: f[1], c: f[2] });
            }
        }

        // Discover undirected edges in deterministic order and count
        // incidences. Manifoldness is diagnosed before orientation: a 3-fold
        // edge always carries a duplicated directed edge too, and the
        // non-manifold report is the useful one.
        let mut edge_index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut edges: Vec<[usize; 2]> = Vec::new();
        let mut incident: Vec<Vec<usize>> = Vec::new();
        let mut face_edges = vec![[usize::MAX; 3]; faces.len()];
        for (fi, f) in faces.iter().enumerate() {
            for corner in 0..3 {
                let u = f[(corner + 1) % 3];
                let v = f[(corner + 2) % 3];
                let key = edge_key(u, v);
                let idx = *edge_index.entry(key).or_insert_with(|| {
                    edges.push([key.0, key.1]);
                    incident.push(Vec::new());
                    edges.len() - 1
                });
                incident[idx].push(fi);
                face_edges[fi][corner] = idx;
            }
        }
        for (ei, inc) in incident.iter().enumerate() {
            if inc.len() > 2 {
                let [u, v] = edges[ei];
                return Err(MeshError::NonManifoldEdge { u, v, count: inc.len() });
            }
        }
        let mut edge_faces = Vec::with_capacity(edges.len());
        for (ei, inc) in incident.iter().enumerate() {
            let [u, v] = edges[ei];
            match inc.len() {
                2 => edge_faces.push([inc[0], inc[1]]),
                _ => return Err(MeshError::OpenSurface { u, v }),
            }
        }
        let mut directed_seen: HashMap<(usize, usize), ()> = HashMap::new();
        for f in &faces {
            for corner in 0..3 {
                let u = f[(corner + 1) % 3];
                let v = f[(corner + 2) % 3];
                if directed_seen.insert((u, v), ()).is_some() {
                    return Err(MeshError::InconsistentOrientation { u, v });
                }
            }
        }

        let mut edge_lengths = Vec::with_capacity(edges.len());
        for &[u, v] in &edges {
            let len = *lengths
                .get(&(u, v))
                .ok_or(MeshError::MissingLength { u, v })?;
            if !len.is_finite() || len <= 0.0 {
                return Err(MeshError::InvalidLength { u, v, length: len });
            }
            edge_lengths.push(len);
        }

        for (fi, fe) in face_edges.iter().enumerate() {
            let a = edge_lengths[fe[0]];
            let b = edge_lengths[fe[1]];
            let c = edge_lengths[fe[2]];
            if !(a < b + c && b < a + c && c < a + b) {
                return Err(MeshError::TriangleInequality { face: fi, a, b, c });
            }
        }

        // Connectivity over face adjacency.
        let mut seen = vec![false; faces.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reachable = 1usize;
        while let Some(f) = stack.pop() {
            for &e in &face_edges[f] {
                for &g in &edge_faces[e] {
                    if !seen[g] {
                        seen[g] = true;
                        reachable += 1;
                        stack.push(g);
                    }
                }
            }
        }
        if reachable != faces.len() {
            return Err(MeshError::Disconnected { reachable, total: faces.len() });
        }

        Ok(Self {
            vertex_count,
            faces,
            edges,
            edge_lengths,
            face_edges,
            edge_faces,
            vertex_positions: positions,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn edge_lengths(&self) -> &[f64] {
        &self.edge_lengths
    }

    pub fn face_edges(&self) -> &[[usize; 3]] {
        &self.face_edges
    }

    pub fn edge_faces(&self) -> &[[usize; 2]] {
        &self.edge_faces
    }

    pub fn positions(&self) -> Option<&[[f64; 3]]> {
        self.vertex_positions.as_deref()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Euler characteristic V - E + F.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Side lengths of face `f` ordered so that entry `c` is opposite corner `c`.
    pub fn face_lengths(&self, f: usize) -> [f64; 3] {
        let fe = self.face_edges[f];
        [self.edge_lengths[fe[0]], self.edge_lengths[fe[1]], self.edge_lengths[fe[2]]]
    }

    /// Heron area from the side lengths, in the numerically stable sorted form.
    pub fn face_area(&self, f: usize) -> f64 {
        let [a, b, c] = self.face_lengths(f);
        heron_area(a, b, c)
    }

    pub fn face_areas(&self) -> Vec<f64> {
        (0..self.faces.len()).map(|f| self.face_area(f)).collect()
    }

    pub fn area(&self) -> f64 {
        (0..self.faces.len()).map(|f| self.face_area(f)).sum()
    }

    /// Interior angles of face `f`; entry `c` is the angle at corner `c`.
    /// Cosines are clamped to [-1, 1] before `acos`.
    pub fn face_angles(&self, f: usize) -> [f64; 3] {
        let [a, b, c] = self.face_lengths(f);
        [corner_angle(a, b, c), corner_angle(b, c, a), corner_angle(c, a, b)]
    }

    /// Isometric planar layout of face `f`: corner 0 at the origin, corner 1
    /// on the positive x-axis, corner 2 in the upper half plane.
    pub fn face_layout(&self, f: usize) -> FaceLayout {
        let [a, b, c] = self.face_lengths(f);
        // side c = |v0 v1| (opposite corner 2), b = |v0 v2|, a = |v1 v2|
        let x2 = (c * c + b * b - a * a) / (2.0 * c);
        let y2 = (b * b - x2 * x2).max(0.0).sqrt();
        FaceLayout { points: [[0.0, 0.0], [c, 0.0], [x2, y2]] }
    }

    /// Faces incident to each vertex, in cyclic (counterclockwise) order, as
    /// `(face, corner)` pairs. The cycle starts at the incident face with the
    /// smallest index.
    pub fn oriented_vertex_stars(&self) -> Vec<Vec<(usize, usize)>> {
        // directed edge (u, v) -> (face containing it, corner of u in it)
        let mut dir: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        let mut first_face: Vec<Option<(usize, usize)>> = vec![None; self.vertex_count];
        for (fi, f) in self.faces.iter().enumerate() {
            for corner in 0..3 {
                let u = f[corner];
                let v = f[(corner + 1) % 3];
                dir.insert((u, v), (fi, corner));
                match first_face[u] {
                    Some((best, _)) if best <= fi => {}
                    _ => first_face[u] = Some((fi, corner)),
                }
            }
        }
        let mut stars = Vec::with_capacity(self.vertex_count);
        for v in 0..self.vertex_count {
            let (f0, c0) = first_face[v].expect("validated mesh covers every vertex");
            let mut star = Vec::new();
            let (mut f, mut c) = (f0, c0);
            loop {
                star.push((f, c));
                // leave across the edge v -> previous corner vertex; the
                // neighbor contains the reversed directed edge.
                let exit_to = self.faces[f][(c + 2) % 3];
                let (nf, nc) = dir[&(v, exit_to)];
                debug_assert_eq!(self.faces[nf][nc], v);
                if (nf, nc) == (f0, c0) {
                    break;
                }
                f = nf;
                c = nc;
            }
            stars.push(star);
        }
        stars
    }
}

/// Planar isometric embedding of one face.
#[derive(Debug, Clone, Copy)]
pub struct FaceLayout {
    pub points: [[f64; 2]; 3],
}

impl FaceLayout {
    /// Gradient of the piecewise-linear interpolant of `values` over the face.
    pub fn gradient(&self, values: [f64; 3]) -> [f64; 2] {
        let [p0, p1, p2] = self.points;
        let rot90 = |p: [f64; 2], q: [f64; 2]| [-(q[1] - p[1]), q[0] - p[0]];
        let e0 = rot90(p1, p2);
        let e1 = rot90(p2, p0);
        let e2 = rot90(p0, p1);
        let twice_area = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
        [
            (values[0] * e0[0] + values[1] * e1[0] + values[2] * e2[0]) / twice_area,
            (values[0] * e0[1] + values[1] * e1[1] + values[2] * e2[1]) / twice_area,
        ]
    }
}

/// Angle opposite side `a` in a triangle with sides (a, b, c).
pub(crate) fn corner_angle(a: f64, b: f64, c: f64) -> f64 {
    let cos = ((b * b + c * c - a * a) / (2.0 * b * c)).clamp(-1.0, 1.0);
    cos.acos()
}

/// Cotangent of the angle opposite side `a`, computed from lengths and the
/// (stable) Heron area.
pub(crate) fn corner_cotangent(a: f64, b: f64, c: f64) -> f64 {
    (b * b + c * c - a * a) / (4.0 * heron_area(a, b, c))
}

/// Kahan's numerically stable Heron formula.
pub(crate) fn heron_area(a: f64, b: f64, c: f64) -> f64 {
    let mut s = [a, b, c];
    s.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let [a, b, c] = s; // a >= b >= c
    let t = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    0.25 * t.max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetrahedron() -> MeshBuilder {
        // regular tetrahedron, unit edges, outward orientation
        let mut b = MeshBuilder::new(4);
        for f in [[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]] {
            b.push_face(f[0], f[1], f[2]);
        }
        for u in 0..4 {
            for v in (u + 1)..4 {
                b.set_length(u, v, 1.0);
            }
        }
        b
    }

    #[test]
    fn tetrahedron_counts() {
        let m = tetrahedron().build().unwrap();
        assert_eq!(m.vertex_count(), 4);
        assert_eq!(m.edge_count(), 6);
        assert_eq!(m.face_count(), 4);
        assert_eq!(m.euler_characteristic(), 2);
        let total: f64 = m.area();
        assert!((total - 4.0 * (3.0f64.sqrt() / 4.0)).abs() < 1e-14);
    }

    #[test]
    fn open_surface_rejected() {
        let mut b = MeshBuilder::new(3);
        b.push_face(0, 1, 2);
        for (u, v) in [(0, 1), (1, 2), (0, 2)] {
            b.set_length(u, v, 1.0);
        }
        match b.build() {
            Err(MeshError::OpenSurface { .. }) => {}
            other => panic!("expected OpenSurface, got {other:?}"),
        }
    }

    #[test]
    fn flipped_face_rejected() {
        let mut b = tetrahedron();
        b.faces[3] = [1, 2, 3]; // reversed orientation
        match b.build() {
            Err(MeshError::InconsistentOrientation { .. }) => {}
            other => panic!("expected InconsistentOrientation, got {other:?}"),
        }
    }

    #[test]
    fn triangle_inequality_rejected() {
        let mut b = tetrahedron();
        b.set_length(0, 1, 2.5);
        match b.build() {
            Err(MeshError::TriangleInequality { .. }) => {}
            other => panic!("expected TriangleInequality, got {other:?}"),
        }
    }

    #[test]
    fn layout_matches_lengths() {
        let m = tetrahedron().build().unwrap();
        let lay = m.face_layout(0);
        let [p0, p1, p2] = lay.points;
        let d = |p: [f64; 2], q: [f64; 2]| ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt();
        assert!((d(p0, p1) - 1.0).abs() < 1e-15);
        assert!((d(p1, p2) - 1.0).abs() < 1e-15);
        assert!((d(p0, p2) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pl_gradient_of_linear_function_is_exact() {
        let lay = FaceLayout { points: [[0.0, 0.0], [2.0, 0.0], [0.5, 1.5]] };
        // f(x, y) = 3x - 2y + 1
        let vals = [1.0, 7.0, 1.0 + 1.5 - 3.0];
        let g = lay.gradient(vals);
        assert!((g[0] - 3.0).abs() < 1e-13);
        assert!((g[1] + 2.0).abs() < 1e-13);
    }

    #[test]
    fn vertex_stars_are_full_cycles() {
        let m = tetrahedron().build().unwrap();
        let stars = m.oriented_vertex_stars();
        for (v, star) in stars.iter().enumerate() {
            assert_eq!(star.len(), 3, "vertex {v}");
            for &(f, c) in star {
                assert_eq!(m.faces()[f][c], v);
            }
        }
    }
}
