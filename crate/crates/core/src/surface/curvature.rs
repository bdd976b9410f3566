//! Angle-defect curvature on intrinsic meshes.
//!
//! For a closed mesh the defect sum equals 2*pi*chi identically (each
//! Euclidean corner triple sums to pi), so the Gauss-Bonnet check below only
//! measures floating-point drift.

use serde::Serialize;

use super::TriangleMesh;

/// Per-vertex discrete curvature data: angle defect (radians), lumped
/// barycentric area, and their ratio as a pointwise curvature estimate.
#[derive(Debug, Clone, Serialize)]
pub struct CurvatureField {
    pub vertex_defect: Vec<f64>,
    pub vertex_lumped_area: Vec<f64>,
    pub pointwise_curvature: Vec<f64>,
}

impl CurvatureField {
    pub fn defect_sum(&self) -> f64 {
        self.vertex_defect.iter().sum()
    }

    /// |sum of defects - 2*pi*chi|, the floating-point Gauss-Bonnet residual.
    pub fn gauss_bonnet_residual(&self, chi: i64) -> f64 {
        (self.defect_sum() - 2.0 * std::f64::consts::PI * chi as f64).abs()
    }
}

/// Angle defect 2*pi minus the incident corner angles, with lumped
/// (one-third) vertex areas. Lumped areas stay positive on obtuse triangles,
/// unlike Voronoi weights.
pub fn discrete_curvature(mesh: &TriangleMesh) -> CurvatureField {
    let n = mesh.vertex_count();
    let mut angle_sum = vec![0.0; n];
    let mut lumped = vec![0.0; n];
    for (fi, face) in mesh.faces().iter().enumerate() {
        let angles = mesh.face_angles(fi);
        let third = mesh.face_area(fi) / 3.0;
        for corner in 0..3 {
            angle_sum[face[corner]] += angles[corner];
            lumped[face[corner]] += third;
        }
    }
    let defect: Vec<f64> = angle_sum.iter().map(|&s| 2.0 * std::f64::consts::PI - s).collect();
    let pointwise = defect.iter().zip(&lumped).map(|(&d, &a)| d / a).collect();
    CurvatureField { vertex_defect: defect, vertex_lumped_area: lumped, pointwise_curvature: pointwise }
}

/// Verdict of the pointwise K <= tol check, with the worst offender.
#[derive(Debug, Clone, Serialize)]
pub struct CurvatureReport {
    pub nonpositive: bool,
    pub max_curvature: f64,
    pub worst_vertex: usize,
}

/// True iff every pointwise curvature value is at most `tol`.
pub fn curvature_nonpositive(curvature: &CurvatureField, tol: f64) -> CurvatureReport {
    let (worst_vertex, max_curvature) = curvature
        .pointwise_curvature
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, k)| if k > acc.1 { (i, k) } else { acc });
    CurvatureReport { nonpositive: max_curvature <= tol, max_curvature, worst_vertex }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{build_flat_torus, build_hyperbolic_genus2, build_icosphere};
    use std::f64::consts::PI;

    #[test]
    fn flat_torus_defects_vanish() {
        let m = build_flat_torus(16, 12, 3.0, 2.0).unwrap();
        let c = discrete_curvature(&m);
        for (v, &d) in c.vertex_defect.iter().enumerate() {
            assert!(d.abs() < 1e-12, "vertex {v} defect {d}");
        }
    }

    #[test]
    fn icosahedron_defect_is_pi_over_3() {
        let m = build_icosphere(0).unwrap();
        let c = discrete_curvature(&m);
        for &d in &c.vertex_defect {
            assert!((d - PI / 3.0).abs() < 1e-12);
        }
        assert!(c.gauss_bonnet_residual(2) < 1e-12);
    }

    #[test]
    fn gauss_bonnet_on_all_builders() {
        let cases: [(TriangleMeshCase, i64); 3] = [
            (TriangleMeshCase::Torus, 0),
            (TriangleMeshCase::Sphere, 2),
            (TriangleMeshCase::Genus2, -2),
        ];
        for (case, chi) in cases {
            let m = case.build();
            assert_eq!(m.euler_characteristic(), chi);
            let c = discrete_curvature(&m);
            let tol = 1e-9 * (1.0 + chi.unsigned_abs() as f64);
            assert!(c.gauss_bonnet_residual(chi) < tol, "{case:?}");
        }
    }

    #[derive(Debug)]
    enum TriangleMeshCase {
        Torus,
        Sphere,
        Genus2,
    }

    impl TriangleMeshCase {
        fn build(&self) -> crate::surface::TriangleMesh {
            match self {
                Self::Torus => build_flat_torus(32, 32, 2.0 * PI, 2.0 * PI).unwrap(),
                Self::Sphere => build_icosphere(3).unwrap(),
                Self::Genus2 => build_hyperbolic_genus2(1).unwrap(),
            }
        }
    }

    #[test]
    fn sphere_curvature_positive_torus_flat() {
        let sphere = build_icosphere(4).unwrap();
        let report = curvature_nonpositive(&discrete_curvature(&sphere), 1e-8);
        assert!(!report.nonpositive);
        assert!(
            (report.max_curvature - 1.0).abs() < 0.35,
            "unit-sphere curvature estimate {}",
            report.max_curvature
        );

        let torus = build_flat_torus(12, 12, 1.0, 1.0).unwrap();
        let report = curvature_nonpositive(&discrete_curvature(&torus), 1e-8);
        assert!(report.nonpositive);
    }

    #[test]
    fn genus2_defects_all_negative() {
        let m = build_hyperbolic_genus2(1).unwrap();
        let c = discrete_curvature(&m);
        let max_abs = c.pointwise_curvature.iter().fold(0.0f64, |a, k| a.max(k.abs()));
        let report = curvature_nonpositive(&c, 1e-2 * max_abs);
        assert!(report.nonpositive, "max curvature {}", report.max_curvature);
        for &d in &c.vertex_defect {
            assert!(d < 0.0, "defect {d} not negative");
        }
    }
}
