//! Builders for the model surfaces: flat tori, icospheres and the closed
//! hyperbolic genus-2 surface from the regular octagon.

use std::collections::HashMap;

use super::mesh::MeshBuilder;
use super::{MeshError, TriangleMesh};

/// Periodic nx-by-ny grid torus with cell size (lx/nx, ly/ny), each cell split
/// into two triangles along the (+x, +y) diagonal. Intrinsic only: a flat
/// torus has no isometric embedding in 3-space.
pub fn build_flat_torus(nx: usize, ny: usize, lx: f64, ly: f64) -> Result<TriangleMesh, MeshError> {
    if nx < 3 || ny < 3 {
        return Err(MeshError::InvalidParameter(format!(
            "flat torus needs nx >= 3 and ny >= 3, got {nx} x {ny}"
        )));
    }
    if !(lx > 0.0 && lx.is_finite() && ly > 0.0 && ly.is_finite()) {
        return Err(MeshError::InvalidParameter(format!(
            "flat torus needs positive periods, got {lx} x {ly}"
        )));
    }
    let dx = lx / nx as f64;
    let dy = ly / ny as f64;
    let diag = dx.hypot(dy);
    let v = |i: usize, j: usize| (j % ny) * nx + (i % nx);

    let mut b = MeshBuilder::new(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let a = v(i, j);
            let bb = v(i + 1, j);
            let c = v(i + 1, j + 1);
            let d = v(i, j + 1);
            b.push_face(a, bb, c);
            b.push_face(a, c, d);
            b.set_length(a, bb, dx);
            b.set_length(d, c, dx);
            b.set_length(a, d, dy);
            b.set_length(bb, c, dy);
            b.set_length(a, c, diag);
        }
    }
    b.build()
}

/// Parametric (i, j) grid coordinates of flat-torus vertex `v`, for layout
/// purposes. Inverse of the builder's vertex numbering.
pub fn flat_torus_vertex_coords(v: usize, nx: usize) -> (usize, usize) {
    (v % nx, v / nx)
}

const GOLDEN: f64 = 1.618033988749894848204586834365638118;

/// Icosahedron subdivided `subdivisions` times, each ring of new vertices
/// projected to the unit sphere. Positions are stored; lengths derive from
/// them.
pub fn build_icosphere(subdivisions: usize) -> Result<TriangleMesh, MeshError> {
    let mut positions: Vec<[f64; 3]> = ICOSAHEDRON_VERTICES.iter().map(|&p| normalize(p)).collect();
    let mut faces: Vec<[usize; 3]> = ICOSAHEDRON_FACES.to_vec();

    for _ in 0..subdivisions {
        let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();
        let mut next_faces = Vec::with_capacity(faces.len() * 4);
        for f in &faces {
            let mid = |positions: &mut Vec<[f64; 3]>,
                       midpoint: &mut HashMap<(usize, usize), usize>,
                       u: usize,
                       v: usize| {
                let key = (u.min(v), u.max(v));
                *midpoint.entry(key).or_insert_with(|| {
                    let p = positions[u];
                    let q = positions[v];
                    positions.push(normalize([p[0] + q[0], p[1] + q[1], p[2] + q[2]]));
                    positions.len() - 1
                })
            };
            let [a, b, c] = *f;
            let ab = mid(&mut positions, &mut midpoint, a, b);
            let bc = mid(&mut positions, &mut midpoint, b, c);
            let ca = mid(&mut positions, &mut midpoint, c, a);
            next_faces.push([a, ab, ca]);
            next_faces.push([b, bc, ab]);
            next_faces.push([c, ca, bc]);
            next_faces.push([ab, bc, ca]);
        }
        faces = next_faces;
    }

    let mut b = MeshBuilder::new(positions.len());
    for f in faces {
        b.push_face(f[0], f[1], f[2]);
    }
    b.set_positions(positions);
    b.build()
}

fn normalize(p: [f64; 3]) -> [f64; 3] {
    let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    [p[0] / n, p[1] / n, p[2] / n]
}

#[rustfmt::skip]
const ICOSAHEDRON_VERTICES: [[f64; 3]; 12] = [
    [-1.0,  GOLDEN, 0.0], [ 1.0,  GOLDEN, 0.0], [-1.0, -GOLDEN, 0.0], [ 1.0, -GOLDEN, 0.0],
    [0.0, -1.0,  GOLDEN], [0.0,  1.0,  GOLDEN], [0.0, -1.0, -GOLDEN], [0.0,  1.0, -GOLDEN],
    [ GOLDEN, 0.0, -1.0], [ GOLDEN, 0.0,  1.0], [-GOLDEN, 0.0, -1.0], [-GOLDEN, 0.0,  1.0],
];

#[rustfmt::skip]
const ICOSAHEDRON_FACES: [[usize; 3]; 20] = [
    [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
    [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
    [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
    [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
];

// ---------------------------------------------------------------------------
// Hyperbolic genus-2 surface
// ---------------------------------------------------------------------------

/// Minkowski bilinear form on the hyperboloid model (z-positive sheet of
/// z^2 - x^2 - y^2 = 1).
fn mink(p: [f64; 3], q: [f64; 3]) -> f64 {
    p[2] * q[2] - p[0] * q[0] - p[1] * q[1]
}

/// Hyperbolic distance, written through the Minkowski norm of the difference
/// so that nearby points lose no precision.
fn hyp_dist(p: [f64; 3], q: [f64; 3]) -> f64 {
    let d = [p[0] - q[0], p[1] - q[1], p[2] - q[2]];
    let s = (d[0] * d[0] + d[1] * d[1] - d[2] * d[2]).max(0.0);
    2.0 * (0.5 * s.sqrt()).asinh()
}

/// Geodesic midpoint on the hyperboloid: normalize the Euclidean midpoint
/// back onto the sheet.
fn hyp_midpoint(p: [f64; 3], q: [f64; 3]) -> [f64; 3] {
    let s = [p[0] + q[0], p[1] + q[1], p[2] + q[2]];
    let n = mink(s, s).sqrt();
    [s[0] / n, s[1] / n, s[2] / n]
}

/// Where a planar-complex vertex sits relative to the octagon boundary.
/// Side points carry the side index and the dyadic position numerator in
/// units of 1/segments.
#[derive(Debug, Clone, Copy, PartialEq)]
enum BoundaryTag {
    Interior,
    Corner,
    Side { side: u8, num: u32 },
}

/// Closed genus-2 surface: the regular hyperbolic octagon with vertex angle
/// pi/4, cone-triangulated from its center, midpoint-subdivided on the
/// hyperboloid and then glued along the identification word
/// a b a' b' c d c' d'. All eight corners map to a single vertex.
///
/// `refinement` adds subdivision rounds on top of the base resolution; the
/// base already splits every octagon side into 16 segments, which keeps the
/// glued complex simplicial and the chordal metric close to hyperbolic.
/// Intrinsic only: edge lengths are hyperbolic distances, no positions.
pub fn build_hyperbolic_genus2(refinement: usize) -> Result<TriangleMesh, MeshError> {
    const BASE_ROUNDS: usize = 4;
    let rounds = BASE_ROUNDS + refinement;
    if rounds > 9 {
        return Err(MeshError::InvalidParameter(format!(
            "refinement {refinement} exceeds the supported range (<= {})",
            9 - BASE_ROUNDS
        )));
    }
    let segments: u32 = 1 << rounds;

    // Circumradius of the {8,8} octagon: cosh R = cot^2(pi/8).
    let cot = 1.0 / (std::f64::consts::PI / 8.0).tan();
    let cosh_r = cot * cot;
    let sinh_r = (cosh_r * cosh_r - 1.0).sqrt();

    let mut points: Vec<[f64; 3]> = Vec::new();
    let mut tags: Vec<BoundaryTag> = Vec::new();
    points.push([0.0, 0.0, 1.0]);
    tags.push(BoundaryTag::Interior);
    for k in 0..8 {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / 8.0;
        points.push([sinh_r * theta.cos(), sinh_r * theta.sin(), cosh_r]);
        tags.push(BoundaryTag::Corner);
    }
    let mut faces: Vec<[usize; 3]> = (0..8).map(|k| [0, 1 + k, 1 + (k + 1) % 8]).collect();
    // corner k is the start of side k at position 0 and the end of side k-1
    // at position `segments`; midpoint tags only ever combine points that
    // share a side, so corners resolve by context below.

    let side_of = |a: BoundaryTag, b: BoundaryTag, fallback: (usize, usize)| -> BoundaryTag {
        use BoundaryTag::*;
        match (a, b) {
            (Interior, _) | (_, Interior) => Interior,
            (Side { side: s1, num: n1 }, Side { side: s2, num: n2 }) => {
                // a chord between two different sides cuts into the interior
                if s1 == s2 {
                    Side { side: s1, num: (n1 + n2) / 2 }
                } else {
                    Interior
                }
            }
            (Corner, Side { side, num }) | (Side { side, num }, Corner) => {
                // corners (point indices 1..=8) sort below side points, so
                // the corner is always fallback.0
                let corner_k = (fallback.0 - 1) as u8;
                if corner_k == side {
                    Side { side, num: num / 2 }
                } else if (side + 1) % 8 == corner_k {
                    Side { side, num: (segments + num) / 2 }
                } else {
                    Interior
                }
            }
            (Corner, Corner) => {
                // only happens on the first round, splitting side k between
                // corners k and k+1
                let (ci, cj) = fallback;
                let (k1, k2) = ((ci - 1) as u8, (cj - 1) as u8);
                let side = if (k1 + 1) % 8 == k2 { k1 } else { k2 };
                Side { side, num: segments / 2 }
            }
        }
    };

    for round in 0..rounds {
        let _ = round;
        let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();
        let mut next_faces = Vec::with_capacity(faces.len() * 4);
        for f in &faces {
            let mut mid = |u: usize, v: usize| -> usize {
                let key = (u.min(v), u.max(v));
                *midpoint.entry(key).or_insert_with(|| {
                    points.push(hyp_midpoint(points[u], points[v]));
                    tags.push(side_of(tags[u], tags[v], (u.min(v), u.max(v))));
                    points.len() - 1
                })
            };
            let [a, b, c] = *f;
            let ab = mid(a, b);
            let bc = mid(b, c);
            let ca = mid(c, a);
            next_faces.push([a, ab, ca]);
            next_faces.push([b, bc, ab]);
            next_faces.push([c, ca, bc]);
            next_faces.push([ab, bc, ca]);
        }
        faces = next_faces;
    }

    // Identification word a b a' b' c d c' d': side s in {2, 3, 6, 7} glues
    // reversed onto partner(s), corners collapse to one vertex.
    let partner = |s: u8| -> Option<u8> {
        match s {
            2 => Some(0),
            3 => Some(1),
            6 => Some(4),
            7 => Some(5),
            _ => None,
        }
    };
    let canonical_tag = |t: BoundaryTag| -> BoundaryTag {
        match t {
            BoundaryTag::Side { side, num } => match partner(side) {
                Some(p) => BoundaryTag::Side { side: p, num: segments - num },
                None => t,
            },
            other => other,
        }
    };

    // index canonical side points for lookup
    let mut canon_lookup: HashMap<(u8, u32), usize> = HashMap::new();
    for (i, &t) in tags.iter().enumerate() {
        if let BoundaryTag::Side { side, num } = t {
            if partner(side).is_none() {
                canon_lookup.insert((side, num), i);
            }
        }
    }

    let mut remap = vec![usize::MAX; points.len()];
    let mut new_count = 0usize;
    let mut corner_id: Option<usize> = None;
    for i in 0..points.len() {
        match canonical_tag(tags[i]) {
            BoundaryTag::Corner => {
                if let Some(id) = corner_id {
                    remap[i] = id;
                } else {
                    remap[i] = new_count;
                    corner_id = Some(new_count);
                    new_count += 1;
                }
            }
            BoundaryTag::Side { side, num } => {
                let canon = canon_lookup[&(side, num)];
                if remap[canon] == usize::MAX {
                    remap[canon] = new_count;
                    new_count += 1;
                }
                remap[i] = remap[canon];
            }
            BoundaryTag::Interior => {
                remap[i] = new_count;
                new_count += 1;
            }
        }
    }

    let mut b = MeshBuilder::new(new_count);
    for f in &faces {
        let [a0, a1, a2] = *f;
        b.push_face(remap[a0], remap[a1], remap[a2]);
        for (u, v) in [(a0, a1), (a1, a2), (a2, a0)] {
            b.set_length_if_absent(remap[u], remap[v], hyp_dist(points[u], points[v]));
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn flat_torus_counts_4x4() {
        let m = build_flat_torus(4, 4, 2.0 * PI, 2.0 * PI).unwrap();
        assert_eq!(m.vertex_count(), 16);
        assert_eq!(m.edge_count(), 48);
        assert_eq!(m.face_count(), 32);
        assert_eq!(m.euler_characteristic(), 0);
    }

    #[test]
    fn flat_torus_area_exact() {
        let m = build_flat_torus(64, 64, 10.0, 1.0).unwrap();
        assert!((m.area() - 10.0).abs() < 1e-12);
    }

    #[test]
    fn flat_torus_rejects_bad_params() {
        assert!(build_flat_torus(2, 4, 1.0, 1.0).is_err());
        assert!(build_flat_torus(4, 4, 0.0, 1.0).is_err());
        assert!(build_flat_torus(4, 4, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn icosahedron_counts() {
        let m = build_icosphere(0).unwrap();
        assert_eq!(m.vertex_count(), 12);
        assert_eq!(m.edge_count(), 30);
        assert_eq!(m.face_count(), 20);
        assert_eq!(m.euler_characteristic(), 2);
    }

    #[test]
    fn icosphere_area_converges_to_sphere() {
        let m = build_icosphere(4).unwrap();
        let rel = (m.area() - 4.0 * PI).abs() / (4.0 * PI);
        assert!(rel < 0.002, "subdivision-4 area off by {rel}");
    }

    #[test]
    fn icosphere_subdivision_counts() {
        let m = build_icosphere(2).unwrap();
        assert_eq!(m.vertex_count(), 162); // 10 * 4^s + 2
        assert_eq!(m.face_count(), 320);
        assert_eq!(m.euler_characteristic(), 2);
    }

    #[test]
    fn genus2_characteristic() {
        for r in [0, 1] {
            let m = build_hyperbolic_genus2(r).unwrap();
            assert_eq!(m.euler_characteristic(), -2, "refinement {r}");
        }
    }

    #[test]
    fn genus2_area_near_gauss_bonnet_value() {
        let m0 = build_hyperbolic_genus2(0).unwrap();
        let m3 = build_hyperbolic_genus2(3).unwrap();
        let a0 = m0.area();
        let a3 = m3.area();
        assert!((a3 - 4.0 * PI).abs() / (4.0 * PI) < 0.01, "r=3 area {a3}");
        assert!((a0 - a3).abs() / a3 < 0.01, "r0 {a0} vs r3 {a3}");
    }

    #[test]
    fn builders_are_deterministic() {
        let a = build_hyperbolic_genus2(0).unwrap();
        let b = build_hyperbolic_genus2(0).unwrap();
        assert_eq!(a, b);
        let c = build_icosphere(2).unwrap();
        let d = build_icosphere(2).unwrap();
        assert_eq!(c, d);
    }
}
