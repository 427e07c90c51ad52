//! `SPC1` graph files: magic, little-endian u32 vertex count, packed
//! upper triangle.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

use super::graph::SignedGraph;

pub const MAGIC: &[u8; 4] = b"SPC1";

pub fn encode(g: &SignedGraph) -> Vec<u8> {
    let n = u32::try_from(g.n()).expect("vertex count exceeds u32");
    let mut out = Vec::with_capacity(8 + SignedGraph::packed_len(g.n()));
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&n.to_le_bytes());
    out.extend_from_slice(&g.packed_upper_triangle());
    out
}

pub fn decode(bytes: &[u8]) -> Result<SignedGraph> {
    if bytes.len() < 8 {
        return Err(Error::Format(format!("file too short ({} bytes)", bytes.len())));
    }
    if &bytes[..4] != MAGIC {
        return Err(Error::Format(format!("bad magic {:?}", &bytes[..4])));
    }
    let n = u32::from_le_bytes(bytes[4..8].try_into().expect("4 bytes")) as usize;
    SignedGraph::from_packed_upper_triangle(n, &bytes[8..])
}

pub fn write(g: &SignedGraph, path: &Path) -> Result<()> {
    fs::write(path, encode(g)).map_err(|e| Error::io(path, e))
}

pub fn read(path: &Path) -> Result<SignedGraph> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode(&bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::GraphBuilder;

    #[test]
    fn header_layout() {
        let mut b = GraphBuilder::new(4);
        b.set_edge(0, 1, true);
        b.set_edge(2, 3, true);
        let bytes = encode(&b.build());
        assert_eq!(&bytes[..4], b"SPC1");
        assert_eq!(&bytes[4..8], &[4, 0, 0, 0]);
        // pairs: 01 02 03 12 13 23 -> bits 0 and 5
        assert_eq!(&bytes[8..], &[0b10_0001]);
    }

    #[test]
    fn truncated_and_corrupt_inputs() {
        let bytes = encode(&SignedGraph::complete(9));
        assert!(matches!(decode(&bytes[..bytes.len() - 1]), Err(Error::Format(_))));
        assert!(matches!(decode(&bytes[..3]), Err(Error::Format(_))));
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(matches!(decode(&bad), Err(Error::Format(_))));
        let mut padded = bytes;
        let last = padded.len() - 1;
        padded[last] |= 0x80;
        assert!(matches!(decode(&padded), Err(Error::Format(_))));
    }

    #[test]
    fn degenerate_sizes() {
        for n in [0, 1, 2] {
            let g = SignedGraph::complete(n);
            assert_eq!(decode(&encode(&g)).unwrap(), g);
        }
    }
}
