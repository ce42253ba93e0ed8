//! Physical fields u = U/r, v = V/r, w = W/r, p = P/r² on an (r, z) rectangle.
//!
//! # File layouts
//!
//! CSV: header `r,z,u,v,w,p`, one row per point, z varying fastest, numbers
//! written with 17 significant digits.
//!
//! VTK: legacy ASCII `STRUCTURED_GRID` with `DIMENSIONS nr 1 nz`. Points are
//! `(r, 0, z)` with r varying fastest. Point data holds the vectors
//! `meridional = (u, 0, w)` and `velocity = (u, v, w)` (the azimuthal
//! component points along y, normal to the plane) and the scalars `p` and
//! `v`.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::MonotoneCubic;
use crate::profile::SimilarityProfile;

#[derive(Clone, Debug, PartialEq)]
pub struct PhysicalField {
    pub r_grid: Vec<f64>,
    pub z_grid: Vec<f64>,
    /// Samples indexed `ir * nz + iz`.
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub w: Vec<f64>,
    pub p: Vec<f64>,
}

impl PhysicalField {
    pub fn nr(&self) -> usize {
        self.r_grid.len()
    }

    pub fn nz(&self) -> usize {
        self.z_grid.len()
    }

    pub fn index(&self, ir: usize, iz: usize) -> usize {
        ir * self.nz() + iz
    }
}

/// `n` cell centres of the uniform partition of [lo, hi].
pub fn cell_centres(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) || n == 0 {
        return Err(Error::InvalidParameter(format!(
            "window [{lo}, {hi}] with {n} cells is empty"
        )));
    }
    let h = (hi - lo) / n as f64;
    Ok((0..n).map(|i| lo + h * (i as f64 + 0.5)).collect())
}

fn check_axis(name: &str, g: &[f64]) -> Result<()> {
    if g.is_empty() {
        return Err(Error::InvalidParameter(format!("{name} grid is empty")));
    }
    if g.iter().any(|x| !x.is_finite()) || g.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(format!(
            "{name} grid must be finite and strictly increasing"
        )));
    }
    Ok(())
}

/// Samples the profile at ξ = z/r by monotone cubic interpolation and scales
/// by 1/r (velocities) and 1/r² (pressure). Every ξ must lie inside the
/// profile's grid.
pub fn reconstruct(
    profile: &SimilarityProfile,
    r_grid: &[f64],
    z_grid: &[f64],
) -> Result<PhysicalField> {
    check_axis("r", r_grid)?;
    check_axis("z", z_grid)?;
    if r_grid[0] <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "r must be positive (the axis r = 0 is singular), got {}",
            r_grid[0]
        )));
    }
    let (lo, hi) = profile.xi_range();
    let mut outside = Vec::new();
    for &r in r_grid {
        for &z in z_grid {
            let xi = z / r;
            if !(xi >= lo && xi <= hi) {
                outside.push((r, z));
            }
        }
    }
    if let Some(&(first_r, first_z)) = outside.first() {
        return Err(Error::OutOfDomain {
            count: outside.len(),
            first_r,
            first_z,
            lo,
            hi,
            points: outside,
        });
    }
    let g = profile.grid();
    let iu = MonotoneCubic::new(g, &profile.u())?;
    let iv = MonotoneCubic::new(g, profile.v())?;
    let iw = MonotoneCubic::new(g, &profile.w())?;
    let ip = MonotoneCubic::new(g, profile.p())?;
    let rows: Vec<Vec<[f64; 4]>> = r_grid
        .par_iter()
        .map(|&r| {
            z_grid
                .iter()
                .map(|&z| {
                    let xi = z / r;
                    // domain checked above
                    let at = |m: &MonotoneCubic| m.eval(xi).unwrap_or(f64::NAN);
                    [at(&iu) / r, at(&iv) / r, at(&iw) / r, at(&ip) / (r * r)]
                })
                .collect()
        })
        .collect();
    let total = r_grid.len() * z_grid.len();
    let mut field = PhysicalField {
        r_grid: r_grid.to_vec(),
        z_grid: z_grid.to_vec(),
        u: Vec::with_capacity(total),
        v: Vec::with_capacity(total),
        w: Vec::with_capacity(total),
        p: Vec::with_capacity(total),
    };
    for row in rows {
        for s in row {
            field.u.push(s[0]);
            field.v.push(s[1]);
            field.w.push(s[2]);
            field.p.push(s[3]);
        }
    }
    Ok(field)
}

pub fn write_csv<W: Write>(field: &PhysicalField, mut out: W) -> std::io::Result<()> {
    writeln!(out, "r,z,u,v,w,p")?;
    for (ir, &r) in field.r_grid.iter().enumerate() {
        for (iz, &z) in field.z_grid.iter().enumerate() {
            let k = field.index(ir, iz);
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                r, z, field.u[k], field.v[k], field.w[k], field.p[k]
            )?;
        }
    }
    out.flush()
}

pub fn write_vtk<W: Write>(field: &PhysicalField, mut out: W) -> std::io::Result<()> {
    let (nr, nz) = (field.nr(), field.nz());
    let n = nr * nz;
    writeln!(out, "# vtk DataFile Version 3.0")?;
    writeln!(out, "swirling similarity flow field")?;
    writeln!(out, "ASCII")?;
    writeln!(out, "DATASET STRUCTURED_GRID")?;
    writeln!(out, "DIMENSIONS {nr} 1 {nz}")?;
    writeln!(out, "POINTS {n} double")?;
    for &z in &field.z_grid {
        for &r in &field.r_grid {
            writeln!(out, "{r:.16e} 0 {z:.16e}")?;
        }
    }
    writeln!(out, "POINT_DATA {n}")?;
    let each = |out: &mut W, f: &dyn Fn(usize) -> String| -> std::io::Result<()> {
        for iz in 0..nz {
            for ir in 0..nr {
                writeln!(out, "{}", f(field.index(ir, iz)))?;
            }
        }
        Ok(())
    };
    writeln!(out, "VECTORS meridional double")?;
    each(&mut out, &|k| format!("{:.16e} 0 {:.16e}", field.u[k], field.w[k]))?;
    writeln!(out, "VECTORS velocity double")?;
    each(&mut out, &|k| {
        format!("{:.16e} {:.16e} {:.16e}", field.u[k], field.v[k], field.w[k])
    })?;
    writeln!(out, "SCALARS p double 1")?;
    writeln!(out, "LOOKUP_TABLE default")?;
    each(&mut out, &|k| format!("{:.16e}", field.p[k]))?;
    writeln!(out, "SCALARS v double 1")?;
    writeln!(out, "LOOKUP_TABLE default")?;
    each(&mut out, &|k| format!("{:.16e}", field.v[k]))?;
    out.flush()
}

pub fn export_csv(field: &PhysicalField, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv(field, std::io::BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

pub fn export_vtk(field: &PhysicalField, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_vtk(field, std::io::BufWriter::new(file)).map_err(|e| Error::io(path, e))
}
