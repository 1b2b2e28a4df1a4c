//! Binary codebook files and their JSON sidecars.
//!
//! Layout, all little-endian:
//!
//! ```text
//! "PUCB" | version u16 | kind u8 | m u8 | param u16 | count u64 | quantum f64
//! count × n² × (re f64, im f64)      row-major canonical representatives
//! crc32 u32                           over the body only
//! ```

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::{Codebook, DedupIndex, Kind};
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::pu::UnitaryMatrix;

pub const MAGIC: &[u8; 4] = b"PUCB";
pub const FORMAT_VERSION: u16 = 1;
pub const HEADER_LEN: usize = 26;

/// Decoded file header.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub version: u16,
    pub kind: Kind,
    pub m: u8,
    pub param: u16,
    pub count: u64,
    pub quantum: f64,
}

/// Contents of `<file>.meta.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub magic: String,
    pub version: u16,
    pub kind: Kind,
    pub m: u8,
    pub param: u16,
    pub count: u64,
    pub quantum: f64,
    pub builder_version: String,
}

impl Header {
    pub fn of(cb: &Codebook) -> Result<Self> {
        let m = u8::try_from(cb.m).map_err(|_| Error::Format(format!("m={} too large", cb.m)))?;
        let param = match cb.param {
            None => 0,
            Some(p) => u16::try_from(p)
                .map_err(|_| Error::Format(format!("param {p} does not fit u16")))?,
        };
        Ok(Self {
            version: FORMAT_VERSION,
            kind: cb.kind,
            m,
            param,
            count: cb.len() as u64,
            quantum: cb.quantum,
        })
    }

    fn encode(&self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[0..4].copy_from_slice(MAGIC);
        out[4..6].copy_from_slice(&self.version.to_le_bytes());
        out[6] = self.kind.code();
        out[7] = self.m;
        out[8..10].copy_from_slice(&self.param.to_le_bytes());
        out[10..18].copy_from_slice(&self.count.to_le_bytes());
        out[18..26].copy_from_slice(&self.quantum.to_le_bytes());
        out
    }

    fn decode(buf: &[u8]) -> Result<Self> {
        if buf.len() < HEADER_LEN {
            return Err(Error::Format("truncated header".into()));
        }
        if &buf[0..4] != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let version = u16::from_le_bytes([buf[4], buf[5]]);
        if version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let kind = Kind::from_code(buf[6])
            .ok_or_else(|| Error::Format(format!("unknown kind code {}", buf[6])))?;
        Ok(Self {
            version,
            kind,
            m: buf[7],
            param: u16::from_le_bytes([buf[8], buf[9]]),
            count: u64::from_le_bytes(buf[10..18].try_into().unwrap()),
            quantum: f64::from_le_bytes(buf[18..26].try_into().unwrap()),
        })
    }

    /// `param` as the in-memory option; families without one store 0.
    fn param_option(&self) -> Option<u32> {
        match self.kind {
            Kind::Pauli | Kind::Clifford => None,
            Kind::Custom if self.param == 0 => None,
            _ => Some(self.param as u32),
        }
    }
}

/// Serializes a codebook to the binary layout.
pub fn encode(cb: &Codebook) -> Result<Vec<u8>> {
    let header = Header::of(cb)?;
    let n = cb.n();
    let mut body = Vec::with_capacity(cb.len() * n * n * 16);
    for e in cb.elements() {
        for z in e.matrix().as_slice() {
            body.extend_from_slice(&z.re.to_le_bytes());
            body.extend_from_slice(&z.im.to_le_bytes());
        }
    }
    let crc = crc32fast::hash(&body);
    let mut out = Vec::with_capacity(HEADER_LEN + body.len() + 4);
    out.extend_from_slice(&header.encode());
    out.extend_from_slice(&body);
    out.extend_from_slice(&crc.to_le_bytes());
    Ok(out)
}

/// Parses the binary layout, checking the CRC and every representative.
pub fn decode(buf: &[u8]) -> Result<Codebook> {
    let header = Header::decode(buf)?;
    if header.m == 0 || header.m > 8 {
        return Err(Error::Format(format!("m={} out of range", header.m)));
    }
    let n = 1usize << header.m;
    let entry_bytes = n * n * 16;
    let body_len = usize::try_from(header.count)
        .ok()
        .and_then(|c| c.checked_mul(entry_bytes))
        .ok_or_else(|| Error::Format("count overflows".into()))?;
    if buf.len() != HEADER_LEN + body_len + 4 {
        return Err(Error::Format(format!(
            "expected {} bytes, found {}",
            HEADER_LEN + body_len + 4,
            buf.len()
        )));
    }
    let body = &buf[HEADER_LEN..HEADER_LEN + body_len];
    let stored = u32::from_le_bytes(buf[HEADER_LEN + body_len..].try_into().unwrap());
    if crc32fast::hash(body) != stored {
        return Err(Error::Format("CRC mismatch".into()));
    }
    let mut index = DedupIndex::new(header.quantum);
    for chunk in body.chunks_exact(entry_bytes) {
        let entries: Vec<C64> = chunk
            .chunks_exact(16)
            .map(|b| {
                C64::new(
                    f64::from_le_bytes(b[0..8].try_into().unwrap()),
                    f64::from_le_bytes(b[8..16].try_into().unwrap()),
                )
            })
            .collect();
        let u = UnitaryMatrix::new(CMatrix::from_row_major(entries)?)?;
        if !index.insert_unitary(&u).0 {
            return Err(Error::Format("duplicate class in body".into()));
        }
    }
    let param = header.param_option();
    let is_group = match header.kind {
        Kind::Pauli | Kind::Clifford | Kind::DiagHierarchy => true,
        Kind::SemiClifford => param == Some(2),
        Kind::CliffordT | Kind::CliffordS => param == Some(0),
        Kind::Custom => false,
    };
    Codebook::from_index(header.kind, header.m as usize, param, index, is_group)
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

/// Writes `path` and `<path>.meta.json`.
pub fn write_codebook(path: &Path, cb: &Codebook) -> Result<()> {
    let bytes = encode(cb)?;
    fs::File::create(path)?.write_all(&bytes)?;
    let h = Header::of(cb)?;
    let meta = Sidecar {
        magic: String::from_utf8_lossy(MAGIC).into_owned(),
        version: h.version,
        kind: h.kind,
        m: h.m,
        param: h.param,
        count: h.count,
        quantum: h.quantum,
        builder_version: format!("pucodes {}", env!("CARGO_PKG_VERSION")),
    };
    fs::write(
        sidecar_path(path),
        serde_json::to_string_pretty(&meta)? + "\n",
    )?;
    Ok(())
}

pub fn read_codebook(path: &Path) -> Result<Codebook> {
    let mut buf = Vec::new();
    fs::File::open(path)?.read_to_end(&mut buf)?;
    decode(&buf)
}

pub fn read_header(path: &Path) -> Result<Header> {
    let mut buf = [0u8; HEADER_LEN];
    fs::File::open(path)?.read_exact(&mut buf)?;
    Header::decode(&buf)
}
