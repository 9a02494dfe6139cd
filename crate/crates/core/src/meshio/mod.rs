//! Sampling of `α∗ω` into R⁴ quad meshes, coordinate 3-space projections
//! and OBJ / PLY / CSV export.
//!
//! R⁴ coordinates are ordered `(Re z1, Im z1, Re z2, Im z2)`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::classify::linspace;
use crate::error::{Error, Result};
use crate::star::{position_from, StarSurface, SINGULAR_EPS};

/// Largest periodicity mismatch tolerated when stitching a wrapped axis.
pub const STITCH_TOL: f64 = 1e-6;

/// Sampled surface in R⁴, row-major in `(t, s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshGrid {
    pub nt: usize,
    pub ns: usize,
    pub t_values: Vec<f64>,
    pub s_values: Vec<f64>,
    pub points: Vec<[f64; 4]>,
    /// `true` where `α(t) = 0 = ω(s)`.
    pub mask: Vec<bool>,
    pub wrap_t: bool,
    pub wrap_s: bool,
}

/// Mesh in a coordinate 3-space.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh3 {
    pub points: Vec<[f64; 3]>,
    /// 0-based quads, counter-clockwise in `(t, s)`.
    pub faces: Vec<[usize; 4]>,
    /// Index of the R⁴ coordinate that was removed.
    pub dropped: usize,
}

/// Uniform closed grid over `t_range × s_range`.
pub fn sample(surf: &StarSurface, t_range: (f64, f64), s_range: (f64, f64), nt: usize, ns: usize) -> Result<MeshGrid> {
    sample_wrapped(surf, t_range, s_range, nt, ns, false, false)
}

/// Like [`sample`], but a wrapped axis is sampled half-open over exactly one
/// period and its last row connects back to the first, after checking that
/// `Φ` closes up to [`STITCH_TOL`].
pub fn sample_wrapped(
    surf: &StarSurface,
    t_range: (f64, f64),
    s_range: (f64, f64),
    nt: usize,
    ns: usize,
    wrap_t: bool,
    wrap_s: bool,
) -> Result<MeshGrid> {
    if nt < 2 || ns < 2 {
        return Err(Error::Invalid(format!("mesh needs at least 2×2 nodes, got {nt}×{ns}")));
    }
    for (name, (a, b)) in [("t", t_range), ("s", s_range)] {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::Invalid(format!("empty or non-finite {name} range [{a}, {b}]")));
        }
    }
    let axis = |range: (f64, f64), n: usize, wrap: bool, period: Option<f64>, name: &str| -> Result<Vec<f64>> {
        if !wrap {
            return Ok(linspace(range, n));
        }
        let p = period.ok_or(Error::MissingPeriod)?;
        if ((range.1 - range.0) - p).abs() > 1e-9 * p {
            return Err(Error::Invalid(format!(
                "wrapped {name} range must span one period {p}, got [{}, {}]",
                range.0, range.1
            )));
        }
        Ok((0..n).map(|k| range.0 + p * k as f64 / n as f64).collect())
    };
    let t_values = axis(t_range, nt, wrap_t, surf.alpha().period(), "t")?;
    let s_values = axis(s_range, ns, wrap_s, surf.omega().period(), "s")?;
    let ft = t_values.iter().map(|&t| surf.fiber_t(t)).collect::<Result<Vec<_>>>()?;
    let fs = s_values.iter().map(|&s| surf.fiber_s(s)).collect::<Result<Vec<_>>>()?;

    if wrap_t {
        let p = surf.alpha().period().ok_or(Error::MissingPeriod)?;
        let (a, b) = (surf.fiber_t(t_values[0])?, surf.fiber_t(t_values[0] + p)?);
        let gap = fs
            .iter()
            .map(|w| (position_from(&a, w) - position_from(&b, w)).norm())
            .fold(0.0, f64::max);
        if gap >= STITCH_TOL {
            return Err(Error::Invalid(format!("t-axis does not close: periodicity gap {gap:e}")));
        }
    }
    if wrap_s {
        let p = surf.omega().period().ok_or(Error::MissingPeriod)?;
        let (a, b) = (surf.fiber_s(s_values[0])?, surf.fiber_s(s_values[0] + p)?);
        let gap = ft
            .iter()
            .map(|f| (position_from(f, &a) - position_from(f, &b)).norm())
            .fold(0.0, f64::max);
        if gap >= STITCH_TOL {
            return Err(Error::Invalid(format!("s-axis does not close: periodicity gap {gap:e}")));
        }
    }

    let mut points = Vec::with_capacity(nt * ns);
    let mut mask = Vec::with_capacity(nt * ns);
    for a in &ft {
        for w in &fs {
            let p = position_from(a, w);
            if !p.is_finite() {
                return Err(Error::Invalid(format!(
                    "non-finite position at (t, s) = ({}, {})",
                    a.param, w.param
                )));
            }
            points.push(p.to_r4());
            mask.push(a.jet.pos.norm() < SINGULAR_EPS && w.jet.pos.norm() < SINGULAR_EPS);
        }
    }
    Ok(MeshGrid {
        nt,
        ns,
        t_values,
        s_values,
        points,
        mask,
        wrap_t,
        wrap_s,
    })
}

impl MeshGrid {
    fn idx(&self, i: usize, j: usize) -> usize {
        (i % self.nt) * self.ns + (j % self.ns)
    }

    /// Quads whose four corners are unmasked, including the seam quads of
    /// wrapped axes.
    pub fn faces(&self) -> Vec<[usize; 4]> {
        let it = if self.wrap_t { self.nt } else { self.nt - 1 };
        let js = if self.wrap_s { self.ns } else { self.ns - 1 };
        let mut out = Vec::with_capacity(it * js);
        for i in 0..it {
            for j in 0..js {
                let q = [
                    self.idx(i, j),
                    self.idx(i + 1, j),
                    self.idx(i + 1, j + 1),
                    self.idx(i, j + 1),
                ];
                if q.iter().all(|&k| !self.mask[k]) {
                    out.push(q);
                }
            }
        }
        out
    }

    pub fn masked_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }
}

/// Drops R⁴ coordinate `drop_axis` (0..=3).
pub fn project(mesh: &MeshGrid, drop_axis: usize) -> Result<Mesh3> {
    if drop_axis > 3 {
        return Err(Error::Invalid(format!("projection axis must be 0..=3, got {drop_axis}")));
    }
    let points = mesh
        .points
        .iter()
        .map(|p| {
            let mut q = [0.0; 3];
            let mut k = 0;
            for (a, v) in p.iter().enumerate() {
                if a != drop_axis {
                    q[k] = *v;
                    k += 1;
                }
            }
            q
        })
        .collect();
    Ok(Mesh3 {
        points,
        faces: mesh.faces(),
        dropped: drop_axis,
    })
}

impl Mesh3 {
    /// Inverse of [`project`] given the removed column.
    pub fn reinsert(&self, column: &[f64]) -> Result<Vec<[f64; 4]>> {
        if column.len() != self.points.len() {
            return Err(Error::Invalid(format!(
                "column has {} values for {} points",
                column.len(),
                self.points.len()
            )));
        }
        Ok(self
            .points
            .iter()
            .zip(column)
            .map(|(p, &c)| {
                let mut out = [0.0; 4];
                let mut k = 0;
                for (a, slot) in out.iter_mut().enumerate() {
                    if a == self.dropped {
                        *slot = c;
                    } else {
                        *slot = p[k];
                        k += 1;
                    }
                }
                out
            })
            .collect())
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Wavefront OBJ: `v x y z` lines, then 1-indexed quad faces.
pub fn obj_string(mesh: &Mesh3) -> String {
    let mut out = String::with_capacity(40 * (mesh.points.len() + mesh.faces.len()));
    for p in &mesh.points {
        let _ = writeln!(out, "v {} {} {}", p[0], p[1], p[2]);
    }
    for f in &mesh.faces {
        let _ = writeln!(out, "f {} {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1, f[3] + 1);
    }
    out
}

pub fn write_obj(mesh: &Mesh3, path: &Path) -> Result<()> {
    write_file(path, &obj_string(mesh))
}

/// ASCII PLY 1.0 with vertex and face elements.
pub fn ply_string(mesh: &Mesh3) -> String {
    let mut out = String::new();
    out.push_str("ply\nformat ascii 1.0\n");
    let _ = writeln!(out, "element vertex {}", mesh.points.len());
    out.push_str("property double x\nproperty double y\nproperty double z\n");
    let _ = writeln!(out, "element face {}", mesh.faces.len());
    out.push_str("property list uchar int vertex_indices\nend_header\n");
    for p in &mesh.points {
        let _ = writeln!(out, "{} {} {}", p[0], p[1], p[2]);
    }
    for f in &mesh.faces {
        let _ = writeln!(out, "4 {} {} {} {}", f[0], f[1], f[2], f[3]);
    }
    out
}

pub fn write_ply(mesh: &Mesh3, path: &Path) -> Result<()> {
    write_file(path, &ply_string(mesh))
}

/// CSV with header `t,s,x1,y1,x2,y2,mask`, 17 significant digits.
pub fn csv_string(mesh: &MeshGrid) -> String {
    let mut out = String::from("t,s,x1,y1,x2,y2,mask\n");
    for (i, t) in mesh.t_values.iter().enumerate() {
        for (j, s) in mesh.s_values.iter().enumerate() {
            let k = i * mesh.ns + j;
            let p = mesh.points[k];
            let _ = writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}",
                t,
                s,
                p[0],
                p[1],
                p[2],
                p[3],
                u8::from(mesh.mask[k])
            );
        }
    }
    out
}

pub fn write_csv(mesh: &MeshGrid, path: &Path) -> Result<()> {
    write_file(path, &csv_string(mesh))
}
