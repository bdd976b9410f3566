//! Mesh file formats.
//!
//! Embedded meshes use OFF. Intrinsic meshes use the "IOFF" text format:
//!
//! ```text
//! IOFF
//! V F E
//! i j k        (F face lines, counterclockwise vertex indices)
//! i j length   (E edge lines, whitespace separated, ASCII decimal)
//! ```

use std::fmt::Write as _;
use std::path::Path;

use super::mesh::MeshBuilder;
use super::{MeshError, TriangleMesh};

/// Loads a mesh from OFF or IOFF, detected by the header line. Validation
/// failures surface as the same errors the builders raise.
pub fn load_mesh(path: impl AsRef<Path>) -> Result<TriangleMesh, MeshError> {
    let text = std::fs::read_to_string(path)?;
    parse_mesh(&text)
}

/// Writes OFF when the mesh carries positions, IOFF otherwise.
pub fn save_mesh(mesh: &TriangleMesh, path: impl AsRef<Path>) -> Result<(), MeshError> {
    let body = if mesh.positions().is_some() { write_off(mesh) } else { write_ioff(mesh) };
    std::fs::write(path, body)?;
    Ok(())
}

pub(crate) fn parse_mesh(text: &str) -> Result<TriangleMesh, MeshError> {
    // line-number bookkeeping counts physical lines; blank lines and
    // '#' comments are skipped
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = lines.next().ok_or(MeshError::Parse { line: 0, message: "empty file".into() })?;
    match header {
        "OFF" => parse_off_body(lines),
        "IOFF" => parse_ioff_body(lines),
        other => Err(MeshError::Parse {
            line: line_no,
            message: format!("unknown header {other:?}, expected OFF or IOFF"),
        }),
    }
}

fn split_counts(line_no: usize, line: &str) -> Result<(usize, usize, usize), MeshError> {
    let mut it = line.split_whitespace();
    let mut next = |name: &str| -> Result<usize, MeshError> {
        it.next()
            .ok_or(MeshError::Parse { line: line_no, message: format!("missing {name} count") })?
            .parse()
            .map_err(|e| MeshError::Parse { line: line_no, message: format!("bad {name} count: {e}") })
    };
    Ok((next("vertex")?, next("face")?, next("edge")?))
}

fn parse_off_body<'a>(
    mut lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<TriangleMesh, MeshError> {
    let (line_no, counts) =
        lines.next().ok_or(MeshError::Parse { line: 0, message: "missing counts line".into() })?;
    let (nv, nf, _ne) = split_counts(line_no, counts)?;

    let mut positions = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (ln, l) = lines
            .next()
            .ok_or(MeshError::Parse { line: 0, message: "unexpected end of vertex list".into() })?;
        let mut it = l.split_whitespace();
        let mut coord = || -> Result<f64, MeshError> {
            it.next()
                .ok_or(MeshError::Parse { line: ln, message: "expected 3 coordinates".into() })?
                .parse()
                .map_err(|e| MeshError::Parse { line: ln, message: format!("bad coordinate: {e}") })
        };
        positions.push([coord()?, coord()?, coord()?]);
    }

    let mut builder = MeshBuilder::new(nv);
    builder.set_positions(positions);
    for _ in 0..nf {
        let (ln, l) = lines
            .next()
            .ok_or(MeshError::Parse { line: 0, message: "unexpected end of face list".into() })?;
        let nums: Result<Vec<usize>, _> = l.split_whitespace().map(str::parse).collect();
        let nums =
            nums.map_err(|e| MeshError::Parse { line: ln, message: format!("bad face line: {e}") })?;
        match nums.as_slice() {
            [3, a, b, c] => builder.push_face(*a, *b, *c),
            _ => {
                return Err(MeshError::Parse {
                    line: ln,
                    message: "expected `3 i j k` (triangles only)".into(),
                })
            }
        }
    }
    builder.build()
}

fn parse_ioff_body<'a>(
    mut lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<TriangleMesh, MeshError> {
    let (line_no, counts) =
        lines.next().ok_or(MeshError::Parse { line: 0, message: "missing counts line".into() })?;
    let (nv, nf, ne) = split_counts(line_no, counts)?;

    let mut builder = MeshBuilder::new(nv);
    for _ in 0..nf {
        let (ln, l) = lines
            .next()
            .ok_or(MeshError::Parse { line: 0, message: "unexpected end of face list".into() })?;
        let nums: Result<Vec<usize>, _> = l.split_whitespace().map(str::parse).collect();
        let nums =
            nums.map_err(|e| MeshError::Parse { line: ln, message: format!("bad face line: {e}") })?;
        match nums.as_slice() {
            [a, b, c] => builder.push_face(*a, *b, *c),
            _ => return Err(MeshError::Parse { line: ln, message: "expected `i j k`".into() }),
        }
    }
    for _ in 0..ne {
        let (ln, l) = lines
            .next()
            .ok_or(MeshError::Parse { line: 0, message: "unexpected end of edge list".into() })?;
        let mut it = l.split_whitespace();
        let mut idx = || -> Result<usize, MeshError> {
            it.next()
                .ok_or(MeshError::Parse { line: ln, message: "expected `i j length`".into() })?
                .parse()
                .map_err(|e| MeshError::Parse { line: ln, message: format!("bad index: {e}") })
        };
        let (u, v) = (idx()?, idx()?);
        let len: f64 = it
            .next()
            .ok_or(MeshError::Parse { line: ln, message: "expected `i j length`".into() })?
            .parse()
            .map_err(|e| MeshError::Parse { line: ln, message: format!("bad length: {e}") })?;
        builder.set_length(u, v, len);
    }
    builder.build()
}

fn write_off(mesh: &TriangleMesh) -> String {
    let positions = mesh.positions().expect("caller checked positions");
    let mut out = String::new();
    out.push_str("OFF\n");
    let _ = writeln!(out, "{} {} {}", mesh.vertex_count(), mesh.face_count(), mesh.edge_count());
    for p in positions {
        // {:?} prints the shortest decimal that round-trips the f64
        let _ = writeln!(out, "{:?} {:?} {:?}", p[0], p[1], p[2]);
    }
    for f in mesh.faces() {
        let _ = writeln!(out, "3 {} {} {}", f[0], f[1], f[2]);
    }
    out
}

fn write_ioff(mesh: &TriangleMesh) -> String {
    let mut out = String::new();
    out.push_str("IOFF\n");
    let _ = writeln!(out, "{} {} {}", mesh.vertex_count(), mesh.face_count(), mesh.edge_count());
    for f in mesh.faces() {
        let _ = writeln!(out, "{} {} {}", f[0], f[1], f[2]);
    }
    for (e, &len) in mesh.edges().iter().zip(mesh.edge_lengths()) {
        let _ = writeln!(out, "{} {} {:?}", e[0], e[1], len);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{build_flat_torus, build_hyperbolic_genus2, build_icosphere};

    const ICOSAHEDRON_OFF: &str = "\
OFF
4 4 6
0.0 0.0 0.0
1.0 0.0 0.0
0.5 0.8660254037844386 0.0
0.5 0.28867513459481287 0.816496580927726
3 0 1 2
3 0 2 3
3 0 3 1
3 1 3 2
";

    #[test]
    fn off_round_trip_preserves_lengths_exactly() {
        let sphere = build_icosphere(1).unwrap();
        let dir = std::env::temp_dir().join("tightcert-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("sphere.off");
        save_mesh(&sphere, &path).unwrap();
        let back = load_mesh(&path).unwrap();
        assert_eq!(back.faces(), sphere.faces());
        assert_eq!(back.edges(), sphere.edges());
        for (a, b) in back.edge_lengths().iter().zip(sphere.edge_lengths()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn ioff_round_trip_on_intrinsic_meshes() {
        for mesh in [
            build_flat_torus(5, 4, 2.0, 3.0).unwrap(),
            build_hyperbolic_genus2(0).unwrap(),
        ] {
            let dir = std::env::temp_dir().join("tightcert-io-test");
            std::fs::create_dir_all(&dir).unwrap();
            let path = dir.join("mesh.ioff");
            save_mesh(&mesh, &path).unwrap();
            let back = load_mesh(&path).unwrap();
            assert_eq!(back.faces(), mesh.faces());
            for (a, b) in back.edge_lengths().iter().zip(mesh.edge_lengths()) {
                assert!((a - b).abs() <= 1e-15 * b.abs());
            }
        }
    }

    #[test]
    fn off_tetrahedron_parses() {
        let m = parse_mesh(ICOSAHEDRON_OFF).unwrap();
        assert_eq!(m.euler_characteristic(), 2);
    }

    #[test]
    fn non_manifold_input_rejected_with_location() {
        // a "book" of three triangles sharing edge (0,1)
        let text = "\
IOFF
5 3 7
0 1 2
1 0 3
0 1 4
0 1 1.0
0 2 1.0
1 2 1.0
0 3 1.0
1 3 1.0
0 4 1.0
1 4 1.0
";
        match parse_mesh(text) {
            Err(MeshError::NonManifoldEdge { u: 0, v: 1, count: 3 }) => {}
            other => panic!("expected NonManifoldEdge(0,1,3), got {other:?}"),
        }
    }

    #[test]
    fn garbage_rejected() {
        assert!(matches!(parse_mesh("PLY\n"), Err(MeshError::Parse { .. })));
        assert!(matches!(parse_mesh("IOFF\n1 2\n"), Err(MeshError::Parse { .. })));
    }
}
