//! Two-column text input and trajectory output.
//!
//! Binary trajectories start with a 64-byte little-endian header
//!
//! | offset | size | field                         |
//! |--------|------|-------------------------------|
//! | 0      | 8    | magic `NLRDTRJ1`              |
//! | 8      | 8    | `N` (u64), points per slice   |
//! | 16     | 8    | `M` (u64), time steps         |
//! | 24     | 8    | `L` (f64), half length        |
//! | 32     | 8    | `T` (f64), final time         |
//! | 40     | 24   | zero padding                  |
//!
//! followed by `(M + 1) * N` f64 samples, slice by slice.

use std::fs;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::SpectralGrid;
use crate::propagation::Trajectory;

pub const TRAJECTORY_MAGIC: &[u8; 8] = b"NLRDTRJ1";
pub const HEADER_LEN: usize = 64;

/// Reads `x value` pairs separated by whitespace or commas; `#` starts a
/// comment line.
pub fn read_two_column(path: &Path) -> Result<(Vec<f64>, Vec<f64>)> {
    let text = fs::read_to_string(path)?;
    parse_two_column(&text, &path.display().to_string())
}

pub fn parse_two_column(text: &str, origin: &str) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            path: origin.to_string(),
            line: i + 1,
            message,
        };
        let fields: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        if fields.len() != 2 {
            return Err(parse_err(format!("expected 2 columns, found {}", fields.len())));
        }
        let parse = |s: &str| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| parse_err(format!("not a finite number: {s:?}")))
        };
        xs.push(parse(fields[0])?);
        ys.push(parse(fields[1])?);
    }
    Ok((xs, ys))
}

/// Checks that tabulated abscissae coincide with the grid points.
pub fn samples_on_grid(grid: &SpectralGrid, xs: &[f64], values: Vec<f64>, origin: &str) -> Result<Vec<f64>> {
    if xs.len() != grid.len() {
        return Err(Error::Config(format!(
            "{origin}: {} rows, grid has {} points",
            xs.len(),
            grid.len()
        )));
    }
    let tol = 1e-9 * grid.dx();
    for (j, (x, p)) in xs.iter().zip(grid.points()).enumerate() {
        if (x - p).abs() > tol {
            return Err(Error::Config(format!(
                "{origin}: x[{j}] = {x} does not match grid point {p}"
            )));
        }
    }
    Ok(values)
}

pub fn write_trajectory_csv(path: &Path, grid: &SpectralGrid, traj: &Trajectory) -> Result<()> {
    let mut out = BufWriter::new(fs::File::create(path)?);
    writeln!(out, "t,x,u")?;
    for (t, slice) in traj.times.iter().zip(&traj.slices) {
        for (x, u) in grid.points().iter().zip(&slice.values) {
            writeln!(out, "{t:.16e},{x:.16e},{u:.16e}")?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn write_trajectory_binary(path: &Path, grid: &SpectralGrid, traj: &Trajectory) -> Result<()> {
    let mut out = BufWriter::new(fs::File::create(path)?);
    let mut header = [0u8; HEADER_LEN];
    header[..8].copy_from_slice(TRAJECTORY_MAGIC);
    header[8..16].copy_from_slice(&(grid.len() as u64).to_le_bytes());
    header[16..24].copy_from_slice(&((traj.len() - 1) as u64).to_le_bytes());
    header[24..32].copy_from_slice(&grid.half_length().to_le_bytes());
    header[32..40].copy_from_slice(&traj.times.last().copied().unwrap_or(0.0).to_le_bytes());
    out.write_all(&header)?;
    for slice in &traj.slices {
        for v in &slice.values {
            out.write_all(&v.to_le_bytes())?;
        }
    }
    out.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BinaryTrajectory {
    pub n_points: usize,
    pub n_steps: usize,
    pub half_length: f64,
    pub final_time: f64,
    pub slices: Vec<Vec<f64>>,
}

pub fn read_trajectory_binary(path: &Path) -> Result<BinaryTrajectory> {
    let mut bytes = Vec::new();
    fs::File::open(path)?.read_to_end(&mut bytes)?;
    let bad = |message: &str| Error::Parse {
        path: path.display().to_string(),
        line: 0,
        message: message.to_string(),
    };
    if bytes.len() < HEADER_LEN || &bytes[..8] != TRAJECTORY_MAGIC {
        return Err(bad("missing trajectory header"));
    }
    let word = |i: usize| <[u8; 8]>::try_from(&bytes[i..i + 8]).expect("8 bytes");
    let n_points = u64::from_le_bytes(word(8)) as usize;
    let n_steps = u64::from_le_bytes(word(16)) as usize;
    let half_length = f64::from_le_bytes(word(24));
    let final_time = f64::from_le_bytes(word(32));
    let expected = HEADER_LEN + 8 * n_points * (n_steps + 1);
    if bytes.len() != expected {
        return Err(bad("payload length does not match header"));
    }
    let slices = (0..=n_steps)
        .map(|m| {
            (0..n_points)
                .map(|j| f64::from_le_bytes(word(HEADER_LEN + 8 * (m * n_points + j))))
                .collect()
        })
        .collect();
    Ok(BinaryTrajectory {
        n_points,
        n_steps,
        half_length,
        final_time,
        slices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_separators() {
        let text = "# x value\n-1.0 2.0\n\n0.5,  -3e-2\n# trailing\n";
        let (x, y) = parse_two_column(text, "mem").unwrap();
        assert_eq!(x, vec![-1.0, 0.5]);
        assert_eq!(y, vec![2.0, -0.03]);
    }

    #[test]
    fn reports_bad_lines() {
        match parse_two_column("1 2\n3\n", "mem") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_two_column("1 nan\n", "mem").is_err());
    }

    #[test]
    fn grid_mismatch_is_reported() {
        let grid = SpectralGrid::new(1.0, 8).unwrap();
        let xs: Vec<f64> = grid.points().iter().map(|x| x + 0.01).collect();
        assert!(samples_on_grid(&grid, &xs, vec![0.0; 8], "k.txt").is_err());
        assert!(samples_on_grid(&grid, &grid.points()[..4], vec![0.0; 4], "k.txt").is_err());
        assert!(samples_on_grid(&grid, grid.points(), vec![0.0; 8], "k.txt").is_ok());
    }
}
