//! The CMAT1 binary matrix format.
//!
//! A 16-byte header (`b"CMAT1\0\0\0"`, then `rows` and `cols` as little-endian
//! `u32`) followed by `rows·cols` complex entries in row-major order, each
//! stored as two little-endian `f64` (real, imaginary).

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix};

pub const MAGIC: &[u8; 8] = b"CMAT1\0\0\0";
pub const HEADER_LEN: usize = 16;

pub fn encode(matrix: &ComplexMatrix) -> Vec<u8> {
    let (rows, cols) = (matrix.rows(), matrix.cols());
    let mut out = Vec::with_capacity(HEADER_LEN + rows * cols * 16);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(rows as u32).to_le_bytes());
    out.extend_from_slice(&(cols as u32).to_le_bytes());
    for z in matrix.to_row_major() {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    out
}

pub fn decode(bytes: &[u8]) -> Result<ComplexMatrix> {
    if bytes.len() < HEADER_LEN || &bytes[..8] != MAGIC {
        return Err(Error::Format("missing CMAT1 header".into()));
    }
    let word = |at: usize| u32::from_le_bytes(bytes[at..at + 4].try_into().expect("4 bytes")) as usize;
    let (rows, cols) = (word(8), word(12));
    let body = &bytes[HEADER_LEN..];
    if body.len() != rows * cols * 16 {
        return Err(Error::Format(format!(
            "CMAT1 body has {} bytes, expected {} for {rows}x{cols}",
            body.len(),
            rows * cols * 16
        )));
    }
    let float = |at: usize| f64::from_le_bytes(body[at..at + 8].try_into().expect("8 bytes"));
    let entries: Vec<c64> = (0..rows * cols).map(|k| c64::new(float(16 * k), float(16 * k + 8))).collect();
    let matrix = ComplexMatrix::from_row_major(rows, cols, &entries);
    if !matrix.is_finite() {
        return Err(Error::Format("CMAT1 contains non-finite entries".into()));
    }
    Ok(matrix)
}

pub fn write(path: &Path, matrix: &ComplexMatrix) -> Result<()> {
    let mut file = fs::File::create(path)?;
    file.write_all(&encode(matrix))?;
    Ok(())
}

pub fn read(path: &Path) -> Result<ComplexMatrix> {
    let mut bytes = Vec::new();
    fs::File::open(path)?.read_to_end(&mut bytes)?;
    decode(&bytes)
}
