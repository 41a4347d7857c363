//! Sampled meshes and their OBJ / CSV serializations.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::lorentz::Vec3R;
use crate::surface::{EvalError, Grid, SurfacePatch};
use crate::verify;

/// Vertices in grid order (`v` outer, `u` inner), quads between neighbours,
/// and a per-vertex flag for nodes where the surface is not spacelike.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshOutput {
    pub grid: Grid,
    pub params: Vec<(f64, f64)>,
    pub vertices: Vec<Vec3R>,
    /// Zero-based vertex indices, counterclockwise in `(u, v)`.
    pub faces: Vec<[usize; 4]>,
    pub branch: Vec<bool>,
}

pub fn sample(p: &SurfacePatch, grid: &Grid, branch_tol: f64) -> Result<MeshOutput, EvalError> {
    let params = grid.nodes();
    let rows: Vec<Result<Vec<Vec3R>, EvalError>> = (0..grid.nv)
        .into_par_iter()
        .map(|j| (0..grid.nu).map(|i| p.point(params[j * grid.nu + i].0, params[j * grid.nu + i].1)).collect())
        .collect();
    let mut vertices = Vec::with_capacity(grid.len());
    for r in rows {
        vertices.extend(r?);
    }
    let mut faces = Vec::with_capacity((grid.nu - 1) * (grid.nv - 1));
    for j in 0..grid.nv - 1 {
        for i in 0..grid.nu - 1 {
            let k = j * grid.nu + i;
            faces.push([k, k + 1, k + 1 + grid.nu, k + grid.nu]);
        }
    }
    let branch = verify::spacelike_region(p, grid, branch_tol).mask.into_iter().map(|s| !s).collect();
    Ok(MeshOutput { grid: *grid, params, vertices, faces, branch })
}

impl MeshOutput {
    /// Wavefront OBJ: `v` records with 17 significant digits, 1-based `f`
    /// quads, and one `# branch <index>` comment per flagged vertex.
    pub fn to_obj(&self, header: &str) -> String {
        let mut s = String::with_capacity(self.vertices.len() * 72);
        for line in header.lines() {
            let _ = writeln!(s, "# {line}");
        }
        let _ = writeln!(s, "# vertices {} faces {}", self.vertices.len(), self.faces.len());
        for v in &self.vertices {
            let _ = writeln!(s, "v {:.16e} {:.16e} {:.16e}", v.x, v.y, v.z);
        }
        for (k, _) in self.branch.iter().enumerate().filter(|(_, &b)| b) {
            let _ = writeln!(s, "# branch {}", k + 1);
        }
        for f in &self.faces {
            let _ = writeln!(s, "f {} {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1, f[3] + 1);
        }
        s
    }

    /// `u,v,x,y,z,branch` rows.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("u,v,x,y,z,branch\n");
        for ((p, v), b) in self.params.iter().zip(&self.vertices).zip(&self.branch) {
            let _ = writeln!(s, "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}", p.0, p.1, v.x, v.y, v.z, u8::from(*b));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::Vec3;
    use crate::surface::Domain;

    #[test]
    fn counts_and_indices() {
        let g = Grid::new(Domain::square(1.0), 4, 3);
        let p = SurfacePatch::from_fn("plane", Domain::square(1.0), |u, v| Vec3::new(u, v, 0.0));
        let m = sample(&p, &g, crate::verify::BRANCH_TOL).unwrap();
        assert_eq!(m.vertices.len(), 12);
        assert_eq!(m.faces.len(), 6);
        assert!(m.faces.iter().flatten().all(|&k| k < 12));
        assert!(m.branch.iter().all(|&b| !b));
        let obj = m.to_obj("t");
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 12);
        assert!(obj.contains("f 1 2 6 5"));
        assert_eq!(m.to_csv().lines().count(), 13);
    }

    #[test]
    fn round_trip_precision() {
        let x = std::f64::consts::PI / 7.0;
        let s = format!("{x:.16e}");
        assert_eq!(s.parse::<f64>().unwrap(), x);
    }
}
