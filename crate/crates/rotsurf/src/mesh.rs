//! Grid sampling of surface patches and exporters (CSV, JSON, OBJ).
//!
//! Sampling is total over the grid: points where the induced metric or the
//! adapted frame degenerates are kept as vertices with the affected fields
//! empty, so a grid crossing a degeneracy stays rectangular and exporters
//! can emit placeholders instead of tearing the topology.

use crate::curve::Interval;
use crate::surface::{oracle_curvatures, surface_point, SurfaceError, SurfaceSpec};
use serde::{Deserialize, Serialize};
use std::io::{self, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeshError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("i/o failure: {0}")]
    Io(#[from] io::Error),
    #[error("grid must be at least 2x2, got {nt}x{ns}")]
    GridTooSmall { nt: usize, ns: usize },
    #[error("{axis} range needs finite lo < hi, got {lo}:{hi}")]
    BadRange { axis: char, lo: f64, hi: f64 },
    #[error("s range [{lo}, {hi}] leaves the curve domain {domain}")]
    SRangeOutsideDomain { lo: f64, hi: f64, domain: Interval },
    #[error("OBJ projection needs three distinct axes from 1..=4, got {0}, {1}, {2}", .indices[0], .indices[1], .indices[2])]
    BadProjection { indices: [usize; 3] },
}

/// Inclusive rectangular sampling grid in the `(t, s)` parameter plane.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct GridSpec {
    pub nt: usize,
    pub ns: usize,
    pub t_lo: f64,
    pub t_hi: f64,
    pub s_lo: f64,
    pub s_hi: f64,
}

impl GridSpec {
    pub fn new(
        nt: usize,
        ns: usize,
        trange: (f64, f64),
        srange: (f64, f64),
    ) -> Result<Self, MeshError> {
        if nt < 2 || ns < 2 {
            return Err(MeshError::GridTooSmall { nt, ns });
        }
        for (axis, (lo, hi)) in [('t', trange), ('s', srange)] {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(MeshError::BadRange { axis, lo, hi });
            }
        }
        Ok(GridSpec {
            nt,
            ns,
            t_lo: trange.0,
            t_hi: trange.1,
            s_lo: srange.0,
            s_hi: srange.1,
        })
    }

    /// `i`-th t line, endpoints inclusive.
    pub fn t_value(&self, i: usize) -> f64 {
        lerp(self.t_lo, self.t_hi, i, self.nt)
    }

    /// `j`-th s line, endpoints inclusive.
    pub fn s_value(&self, j: usize) -> f64 {
        lerp(self.s_lo, self.s_hi, j, self.ns)
    }
}

fn lerp(lo: f64, hi: f64, k: usize, n: usize) -> f64 {
    // n >= 2 enforced at construction; k = n-1 lands exactly on hi
    let w = k as f64 / (n - 1) as f64;
    lo + (hi - lo) * w
}

/// One sampled grid point. Fields are `None` where the patch degenerates.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct MeshVertex {
    pub t: f64,
    pub s: f64,
    pub position: Option<[f64; 4]>,
    pub gauss: Option<f64>,
    pub mean_norm_sq: Option<f64>,
}

/// A sampled patch with enough metadata to reproduce it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeshGrid {
    pub pair: String,
    pub curve: String,
    pub reparams: [String; 2],
    pub restricted: bool,
    pub grid: GridSpec,
    /// Row major, t outermost: vertex `(i, j)` sits at `i * ns + j`.
    pub vertices: Vec<MeshVertex>,
}

impl MeshGrid {
    pub fn vertex(&self, i: usize, j: usize) -> &MeshVertex {
        &self.vertices[i * self.grid.ns + j]
    }
}

fn curvature_fields(
    spec: &SurfaceSpec,
    t: f64,
    s: f64,
) -> Result<(Option<f64>, Option<f64>), SurfaceError> {
    match oracle_curvatures(spec, t, s) {
        Ok(c) => Ok((Some(c.gauss), Some(c.mean_norm_sq))),
        Err(
            SurfaceError::DegenerateMetric { .. }
            | SurfaceError::DegenerateFrame { .. }
            | SurfaceError::NonFinitePoint { .. },
        ) => Ok((None, None)),
        Err(e) => Err(e),
    }
}

/// Sample a patch over `grid`. With `with_curvature` the projection-road
/// curvature data is attached to every nondegenerate vertex.
pub fn sample_grid(
    spec: &SurfaceSpec,
    grid: &GridSpec,
    with_curvature: bool,
) -> Result<MeshGrid, MeshError> {
    let dom = spec.curve.domain;
    if !(dom.contains(grid.s_lo) && dom.contains(grid.s_hi)) {
        return Err(MeshError::SRangeOutsideDomain {
            lo: grid.s_lo,
            hi: grid.s_hi,
            domain: dom,
        });
    }
    let mut vertices = Vec::with_capacity(grid.nt * grid.ns);
    for i in 0..grid.nt {
        let t = grid.t_value(i);
        for j in 0..grid.ns {
            let s = grid.s_value(j);
            let position = match surface_point(spec, t, s) {
                Ok(p) => Some(p.0),
                Err(SurfaceError::NonFinitePoint { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            let (gauss, mean_norm_sq) = if with_curvature {
                curvature_fields(spec, t, s)?
            } else {
                (None, None)
            };
            vertices.push(MeshVertex {
                t,
                s,
                position,
                gauss,
                mean_norm_sq,
            });
        }
    }
    Ok(MeshGrid {
        pair: spec.pair.to_string(),
        curve: spec.curve.name.clone(),
        reparams: [spec.reparam1.describe(), spec.reparam2.describe()],
        restricted: spec.restricted,
        grid: *grid,
        vertices,
    })
}

fn write_opt(out: &mut String, v: Option<f64>) {
    if let Some(x) = v {
        out.push_str(&format!("{x:.16e}"));
    }
}

/// CSV with one row per vertex; missing fields stay empty.
pub fn export_csv(mesh: &MeshGrid, w: &mut dyn Write) -> Result<(), MeshError> {
    writeln!(w, "t,s,x1,x2,x3,x4,K,H2")?;
    for v in &mesh.vertices {
        let mut line = format!("{:.16e},{:.16e}", v.t, v.s);
        for k in 0..4 {
            line.push(',');
            write_opt(&mut line, v.position.map(|p| p[k]));
        }
        line.push(',');
        write_opt(&mut line, v.gauss);
        line.push(',');
        write_opt(&mut line, v.mean_norm_sq);
        writeln!(w, "{line}")?;
    }
    Ok(())
}

/// Pretty JSON of the whole [`MeshGrid`]; round-trips bitwise through serde.
pub fn export_json(mesh: &MeshGrid, w: &mut dyn Write) -> Result<(), MeshError> {
    serde_json::to_writer_pretty(&mut *w, mesh).map_err(io::Error::other)?;
    writeln!(w)?;
    Ok(())
}

/// Wavefront OBJ of the grid, projecting the chosen three coordinate axes
/// (1-based). Vertices with no position are kept as placeholders at the
/// origin so face indexing stays grid-aligned; faces touching them are
/// dropped.
pub fn export_obj(
    mesh: &MeshGrid,
    w: &mut dyn Write,
    projection: [usize; 3],
) -> Result<(), MeshError> {
    let distinct = projection[0] != projection[1]
        && projection[0] != projection[2]
        && projection[1] != projection[2];
    if !distinct || projection.iter().any(|&k| !(1..=4).contains(&k)) {
        return Err(MeshError::BadProjection {
            indices: projection,
        });
    }
    writeln!(
        w,
        "# pair {} orbit of {}, axes ({}, {}, {})",
        mesh.pair, mesh.curve, projection[0], projection[1], projection[2]
    )?;
    for v in &mesh.vertices {
        match v.position {
            Some(p) => writeln!(
                w,
                "v {:.12e} {:.12e} {:.12e}",
                p[projection[0] - 1],
                p[projection[1] - 1],
                p[projection[2] - 1]
            )?,
            None => writeln!(w, "v 0 0 0")?,
        }
    }
    let ns = mesh.grid.ns;
    for i in 0..mesh.grid.nt - 1 {
        for j in 0..ns - 1 {
            let corners = [
                i * ns + j,
                (i + 1) * ns + j,
                (i + 1) * ns + j + 1,
                i * ns + j + 1,
            ];
            if corners.iter().any(|&k| mesh.vertices[k].position.is_none()) {
                continue;
            }
            writeln!(
                w,
                "f {} {} {} {}",
                corners[0] + 1,
                corners[1] + 1,
                corners[2] + 1,
                corners[3] + 1
            )?;
        }
    }
    Ok(())
}

/// Default OBJ projection: drop the second coordinate.
pub const DEFAULT_PROJECTION: [usize; 3] = [1, 3, 4];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Curve4;
    use crate::groups::RotationPair;

    fn flat_spec() -> SurfaceSpec {
        SurfaceSpec::standard(RotationPair::Pair14, Curve4::builtin("lin14").unwrap()).unwrap()
    }

    #[test]
    fn grid_endpoints_are_inclusive() {
        let g = GridSpec::new(3, 5, (-1.0, 1.0), (0.5, 2.5)).unwrap();
        assert_eq!(g.t_value(0), -1.0);
        assert_eq!(g.t_value(2), 1.0);
        assert_eq!(g.s_value(0), 0.5);
        assert_eq!(g.s_value(4), 2.5);
        assert!((g.s_value(2) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn grid_validation() {
        assert!(matches!(
            GridSpec::new(1, 5, (0.0, 1.0), (0.0, 1.0)),
            Err(MeshError::GridTooSmall { .. })
        ));
        assert!(matches!(
            GridSpec::new(2, 2, (1.0, 0.0), (0.0, 1.0)),
            Err(MeshError::BadRange { axis: 't', .. })
        ));
        assert!(matches!(
            GridSpec::new(2, 2, (0.0, 1.0), (f64::NAN, 1.0)),
            Err(MeshError::BadRange { axis: 's', .. })
        ));
    }

    #[test]
    fn degenerate_line_leaves_empty_fields() {
        // s = 0 is a metric degeneracy of this patch; the position is still
        // fine (the orbit map itself has no singularity there)
        let g = GridSpec::new(3, 3, (-0.5, 0.5), (-1.0, 1.0)).unwrap();
        let mesh = sample_grid(&flat_spec(), &g, true).unwrap();
        assert_eq!(mesh.vertices.len(), 9);
        for i in 0..3 {
            let v = mesh.vertex(i, 1);
            assert_eq!(v.s, 0.0);
            assert!(v.position.is_some());
            assert!(v.gauss.is_none());
            assert!(v.mean_norm_sq.is_none());
            let good = mesh.vertex(i, 0);
            assert!(good.gauss.is_some());
            assert!(good.gauss.unwrap().abs() < 1e-9);
        }
    }

    #[test]
    fn srange_must_sit_inside_domain() {
        let curve = Curve4::parse(
            "band",
            "s, 0, 0, 2*s",
            None,
            Some(Interval::new(0.5, 2.0).unwrap()),
        )
        .unwrap();
        let spec = SurfaceSpec::standard(RotationPair::Pair14, curve).unwrap();
        let g = GridSpec::new(2, 2, (0.0, 1.0), (0.0, 1.0)).unwrap();
        assert!(matches!(
            sample_grid(&spec, &g, false),
            Err(MeshError::SRangeOutsideDomain { .. })
        ));
    }

    #[test]
    fn csv_shape_and_empties() {
        let g = GridSpec::new(3, 3, (-0.5, 0.5), (-1.0, 1.0)).unwrap();
        let mesh = sample_grid(&flat_spec(), &g, true).unwrap();
        let mut buf = Vec::new();
        export_csv(&mesh, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "t,s,x1,x2,x3,x4,K,H2");
        assert_eq!(lines.len(), 1 + 9);
        for line in &lines[1..] {
            assert_eq!(line.split(',').count(), 8);
        }
        // middle column of each t row is the degenerate s = 0 line
        let row = lines[1 + 1];
        assert!(row.ends_with(",,"));
    }

    #[test]
    fn json_round_trips_bitwise() {
        let g = GridSpec::new(2, 3, (-0.25, 0.5), (0.3, 1.7)).unwrap();
        let mesh = sample_grid(&flat_spec(), &g, true).unwrap();
        let mut buf = Vec::new();
        export_json(&mesh, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let back: MeshGrid = serde_json::from_str(&text).unwrap();
        let mut buf2 = Vec::new();
        export_json(&back, &mut buf2).unwrap();
        assert_eq!(text, String::from_utf8(buf2).unwrap());
        assert_eq!(back.vertices.len(), 6);
        assert_eq!(back.pair, "14");
    }

    #[test]
    fn obj_faces_skip_degenerate_corners() {
        let g = GridSpec::new(3, 3, (-0.5, 0.5), (0.2, 2.0)).unwrap();
        let mesh = sample_grid(&flat_spec(), &g, false).unwrap();
        let mut buf = Vec::new();
        export_obj(&mesh, &mut buf, DEFAULT_PROJECTION).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 9);
        // all positions exist on this grid, so all four quads survive
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 4);

        let bad = export_obj(&mesh, &mut Vec::new(), [1, 1, 2]);
        assert!(matches!(bad, Err(MeshError::BadProjection { .. })));
        let bad = export_obj(&mesh, &mut Vec::new(), [0, 2, 3]);
        assert!(matches!(bad, Err(MeshError::BadProjection { .. })));
        let bad = export_obj(&mesh, &mut Vec::new(), [2, 3, 5]);
        assert!(matches!(bad, Err(MeshError::BadProjection { .. })));
    }
}
