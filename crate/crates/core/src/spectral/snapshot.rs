//! Binary snapshot files.
//!
//! Layout (all little-endian):
//!
//! ```text
//! "MPS1" | u32 version (=1) | u32 n | f64 L | f64 time | f64 nu chi mu kappa
//! then u_x, u_y, u_z, ω_x, ω_y, ω_z, each as n³ (re, im) f64 pairs
//! ```
//!
//! Coefficients are written row-major in ascending mode order
//! `k = −n/2, …, n/2 − 1` along every axis (axis 0 slowest).

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use super::field::{SpectralField, State, VectorField, Viscosities};
use super::grid::Grid3;
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"MPS1";
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub state: State,
    pub visc: Viscosities,
}

/// Flat storage index for the `m`-th entry in ascending k-order.
fn storage_for_ordered(grid: &Grid3, m: usize) -> usize {
    let n = grid.n();
    let h = (n / 2) as i64;
    let a = (m / (n * n)) as i64 - h;
    let b = ((m / n) % n) as i64 - h;
    let c = (m % n) as i64 - h;
    grid.index_of_mode([a, b, c])
}

pub fn save_snapshot(state: &State, visc: &Viscosities, path: impl AsRef<Path>) -> Result<()> {
    let grid = state.grid();
    let mut w = BufWriter::new(File::create(path.as_ref())?);
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(grid.n() as u32).to_le_bytes())?;
    w.write_all(&grid.length().to_le_bytes())?;
    w.write_all(&state.time.to_le_bytes())?;
    for v in [visc.nu, visc.chi, visc.mu, visc.kappa] {
        w.write_all(&v.to_le_bytes())?;
    }
    for field in state.u.comps.iter().chain(state.omega.comps.iter()) {
        for m in 0..grid.len() {
            let c = field.coeffs[storage_for_ordered(&grid, m)];
            w.write_all(&c.re.to_le_bytes())?;
            w.write_all(&c.im.to_le_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

struct Reader<'a, R: Read> {
    inner: R,
    path: &'a Path,
}

impl<R: Read> Reader<'_, R> {
    fn bytes<const N: usize>(&mut self) -> Result<[u8; N]> {
        let mut buf = [0u8; N];
        self.inner.read_exact(&mut buf).map_err(|e| match e.kind() {
            std::io::ErrorKind::UnexpectedEof => Error::Truncated {
                path: self.path.to_path_buf(),
            },
            _ => Error::Io(e),
        })?;
        Ok(buf)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.bytes()?))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.bytes()?))
    }
}

pub fn load_snapshot(path: impl AsRef<Path>) -> Result<Snapshot> {
    let path = path.as_ref();
    let mut r = Reader {
        inner: BufReader::new(File::open(path)?),
        path,
    };
    if &r.bytes::<4>()? != MAGIC {
        return Err(Error::BadMagic {
            path: path.to_path_buf(),
        });
    }
    let version = r.u32()?;
    if version != VERSION {
        return Err(Error::UnsupportedVersion {
            path: path.to_path_buf(),
            version,
        });
    }
    let n = r.u32()? as usize;
    let length = r.f64()?;
    let grid = Grid3::new(n, length)?;
    let time = r.f64()?;
    let visc = Viscosities {
        nu: r.f64()?,
        chi: r.f64()?,
        mu: r.f64()?,
        kappa: r.f64()?,
    };
    let mut comps = Vec::with_capacity(6);
    for _ in 0..6 {
        let mut f = SpectralField::zeros(grid);
        for m in 0..grid.len() {
            let re = r.f64()?;
            let im = r.f64()?;
            f.coeffs[storage_for_ordered(&grid, m)] = Complex64::new(re, im);
        }
        if !f.is_finite() {
            return Err(Error::NonFinite("snapshot coefficients"));
        }
        comps.push(f);
    }
    let mut it = comps.into_iter();
    let mut next3 = || -> Result<VectorField> {
        VectorField::new([it.next().unwrap(), it.next().unwrap(), it.next().unwrap()])
    };
    let u = next3()?;
    let omega = next3()?;
    Ok(Snapshot {
        state: State::new(u, omega, time)?,
        visc,
    })
}
