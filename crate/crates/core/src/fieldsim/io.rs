//! Field-sample export formats: a flat CSV `(tau, s, value)` and a compact
//! little-endian binary column dump.
//!
//! Binary layout (all integers and floats little-endian):
//!
//! ```text
//! magic   8 bytes  "SHEPFLD1"
//! n_tau   u32
//! n_s     u32
//! a       f64
//! b       f64
//! horizon f64
//! seed    u64
//! id_len  u16      followed by id_len bytes of UTF-8 model id
//! values  n_tau·n_s f64, row-major (τ outer, s inner)
//! ```
//!
//! Decoders treat the input as untrusted: magic, dimensions, grid
//! parameters and lengths are all validated before any allocation sized
//! from the header.

use super::field::FieldSample;
use super::grid::SheppGrid;
use crate::error::{Error, Result};
use std::io::{Read, Write};

pub const FIELD_MAGIC: &[u8; 8] = b"SHEPFLD1";

/// Upper bound on the decoded value count (guards allocations from forged
/// headers).
const MAX_DECODE_VALUES: usize = 1 << 26;

/// One row of the CSV export.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct FieldCsvRow {
    pub tau: f64,
    pub s: f64,
    pub value: f64,
}

/// Write the flat CSV `(tau, s, value)` export.
pub fn write_field_csv<W: Write>(sample: &FieldSample, w: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    let g = &sample.grid;
    for j in 0..g.n_tau() {
        for l in 0..g.n_s() {
            wtr.serialize(FieldCsvRow {
                tau: g.tau(j),
                s: g.s(l),
                value: sample.value(j, l),
            })?;
        }
    }
    wtr.flush()?;
    Ok(())
}

/// Read back the flat CSV export (values round-trip bit-exactly; the grid
/// itself is not reconstructed from CSV).
pub fn read_field_csv<R: Read>(r: R) -> Result<Vec<FieldCsvRow>> {
    let mut rdr = csv::Reader::from_reader(r);
    let mut out = Vec::new();
    for row in rdr.deserialize() {
        out.push(row?);
    }
    Ok(out)
}

/// Write the binary column dump.
pub fn write_field_binary<W: Write>(sample: &FieldSample, mut w: W) -> Result<()> {
    let g = &sample.grid;
    w.write_all(FIELD_MAGIC)?;
    w.write_all(&(g.n_tau() as u32).to_le_bytes())?;
    w.write_all(&(g.n_s() as u32).to_le_bytes())?;
    w.write_all(&g.a().to_le_bytes())?;
    w.write_all(&g.b().to_le_bytes())?;
    w.write_all(&g.horizon().to_le_bytes())?;
    w.write_all(&sample.seed.to_le_bytes())?;
    let id = sample.model_id.as_bytes();
    if id.len() > u16::MAX as usize {
        return Err(Error::validation("model id too long for binary header"));
    }
    w.write_all(&(id.len() as u16).to_le_bytes())?;
    w.write_all(id)?;
    for v in sample.values() {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.buf.len() - self.pos < n {
            return Err(Error::Decode(format!(
                "truncated input: need {n} bytes at offset {}",
                self.pos
            )));
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }
    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }
    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

/// Decode a binary column dump produced by [`write_field_binary`].
pub fn decode_field_binary(bytes: &[u8]) -> Result<FieldSample> {
    let mut c = Cursor { buf: bytes, pos: 0 };
    if c.take(8)? != FIELD_MAGIC {
        return Err(Error::Decode("bad magic".into()));
    }
    let n_tau = c.u32()? as usize;
    let n_s = c.u32()? as usize;
    let count = n_tau
        .checked_mul(n_s)
        .filter(|&c| c <= MAX_DECODE_VALUES)
        .ok_or_else(|| Error::Decode(format!("dims {n_tau}x{n_s} out of range")))?;
    let a = c.f64()?;
    let b = c.f64()?;
    let horizon = c.f64()?;
    let seed = c.u64()?;
    let id_len = c.u16()? as usize;
    let model_id = std::str::from_utf8(c.take(id_len)?)
        .map_err(|e| Error::Decode(format!("model id not UTF-8: {e}")))?
        .to_owned();
    // validate the remaining length before building anything sized by it
    if bytes.len() - c.pos != count * 8 {
        return Err(Error::Decode(format!(
            "value section has {} bytes, expected {}",
            bytes.len() - c.pos,
            count * 8
        )));
    }
    let grid = SheppGrid::new(a, b, horizon, n_tau, n_s)
        .map_err(|e| Error::Decode(format!("invalid grid header: {e}")))?;
    let mut values = Vec::with_capacity(count);
    for _ in 0..count {
        values.push(c.f64()?);
    }
    FieldSample::from_parts(grid, values, seed, model_id)
}

/// Read a binary column dump from a reader.
pub fn read_field_binary<R: Read>(mut r: R) -> Result<FieldSample> {
    let mut buf = Vec::new();
    r.read_to_end(&mut buf)?;
    decode_field_binary(&buf)
}
