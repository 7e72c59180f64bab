use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub const MAGIC: &[u8; 8] = b"EMHD25D1";
pub const VERSION: u32 = 1;
const HEADER_LEN: usize = 8 + 4 + 4 + 8 + 8 + 4;

/// Real-space fields at one time, in the order `(a, b[, A])`.
#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub grid_n: u32,
    pub half_width: f64,
    pub time: f64,
    pub fields: Vec<Vec<f64>>,
}

impl Snapshot {
    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let cells = self.grid_n as usize * self.grid_n as usize;
        if let Some(f) = self.fields.iter().find(|f| f.len() != cells) {
            return Err(Error::param("fields", format!("{} values for a {}^2 grid", f.len(), self.grid_n)));
        }
        let mut out = Vec::with_capacity(HEADER_LEN + 8 * cells * self.fields.len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.extend_from_slice(&self.grid_n.to_le_bytes());
        out.extend_from_slice(&self.half_width.to_le_bytes());
        out.extend_from_slice(&self.time.to_le_bytes());
        out.extend_from_slice(&(self.fields.len() as u32).to_le_bytes());
        for f in &self.fields {
            for v in f {
                out.extend_from_slice(&v.to_le_bytes());
            }
        }
        Ok(out)
    }

    pub fn from_bytes(bytes: &[u8], origin: &str) -> Result<Self> {
        let bad = |detail: String| Error::Format { path: origin.to_string(), detail };
        if bytes.len() < HEADER_LEN {
            return Err(bad(format!("{} bytes, shorter than the header", bytes.len())));
        }
        if &bytes[..8] != MAGIC {
            return Err(bad("bad magic".into()));
        }
        let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
        let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
        let version = u32_at(8);
        if version != VERSION {
            return Err(bad(format!("unsupported version {version}")));
        }
        let grid_n = u32_at(12);
        let half_width = f64_at(16);
        let time = f64_at(24);
        let count = u32_at(32) as usize;
        let cells = grid_n as usize * grid_n as usize;
        let expect = count
            .checked_mul(cells)
            .and_then(|c| c.checked_mul(8))
            .ok_or_else(|| bad("payload size overflows".into()))?;
        if bytes.len() - HEADER_LEN != expect {
            return Err(bad(format!("payload of {} bytes, expected {expect}", bytes.len() - HEADER_LEN)));
        }
        let fields = (0..count)
            .map(|f| {
                let base = HEADER_LEN + f * cells * 8;
                (0..cells).map(|m| f64_at(base + 8 * m)).collect()
            })
            .collect();
        Ok(Self { grid_n, half_width, time, fields })
    }
}

pub fn write_snapshot(snap: &Snapshot, path: &Path) -> Result<()> {
    fs::write(path, snap.to_bytes()?)?;
    Ok(())
}

pub fn read_snapshot(path: &Path) -> Result<Snapshot> {
    Snapshot::from_bytes(&fs::read(path)?, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_layout() {
        let s = Snapshot { grid_n: 16, half_width: 0.5, time: 2.0, fields: vec![vec![1.5; 256]] };
        let b = s.to_bytes().unwrap();
        assert_eq!(&b[..8], b"EMHD25D1");
        assert_eq!(&b[8..12], &[1, 0, 0, 0]);
        assert_eq!(&b[12..16], &[16, 0, 0, 0]);
        assert_eq!(f64::from_le_bytes(b[16..24].try_into().unwrap()), 0.5);
        assert_eq!(&b[32..36], &[1, 0, 0, 0]);
        assert_eq!(b.len(), 36 + 256 * 8);
        assert_eq!(Snapshot::from_bytes(&b, "mem").unwrap(), s);
    }

    #[test]
    fn corrupt_input_rejected() {
        let s = Snapshot { grid_n: 16, half_width: 0.5, time: 0.0, fields: vec![vec![0.0; 256]; 2] };
        let mut b = s.to_bytes().unwrap();
        assert!(Snapshot::from_bytes(&b[..b.len() - 1], "mem").is_err());
        b[0] = b'X';
        assert!(Snapshot::from_bytes(&b, "mem").is_err());
        let mut v = s.to_bytes().unwrap();
        v[8] = 2;
        assert!(Snapshot::from_bytes(&v, "mem").is_err());
    }
}
