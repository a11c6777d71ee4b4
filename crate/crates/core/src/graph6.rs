//! The printable graph6 interchange format.
//!
//! graph6 encodes a labelled graph as ASCII in `'?'..='~'`: first the
//! order (one byte `n + 63` for `n <= 62`, otherwise `'~'` followed by
//! three bytes carrying `n` in 18 bits, most significant 6-bit group
//! first), then the upper triangle of the adjacency matrix in column-major
//! order — bit `(i, j)` for `j = 1..n`, `i = 0..j` — packed into 6-bit
//! groups, zero-padded at the end, each group emitted as `value + 63`.
//!
//! Encoding is strict (short form is mandatory for `n <= 62`); decoding
//! accepts either order form but rejects out-of-range bytes, truncated or
//! overlong strings, and nonzero padding bits.

use crate::graph::Graph;
use crate::Error;

/// Encode a labelled graph as a graph6 string.
pub fn g6_encode(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut group = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            group <<= 1;
            if g.has_edge(i, j) {
                group |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        group <<= 6 - filled;
        out.push(group + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decode a graph6 string produced by [`g6_encode`] or any standard tool.
pub fn g6_decode(text: &str) -> Result<Graph, Error> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty input".into()));
    }
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6(format!(
                "byte 0x{b:02x} outside the printable graph6 range"
            )));
        }
    }
    let (n, mut pos) = if bytes[0] == b'~' {
        if bytes.len() < 4 {
            return Err(Error::Graph6("truncated long-form order".into()));
        }
        let n = (((bytes[1] - 63) as usize) << 12)
            | (((bytes[2] - 63) as usize) << 6)
            | ((bytes[3] - 63) as usize);
        (n, 4)
    } else {
        ((bytes[0] - 63) as usize, 1)
    };
    if n > crate::bitset::MAX_ORDER {
        return Err(Error::OrderOutOfRange {
            n,
            max: crate::bitset::MAX_ORDER,
        });
    }
    let nbits = if n < 2 { 0 } else { n * (n - 1) / 2 };
    let expect_groups = nbits.div_ceil(6);
    if bytes.len() - pos != expect_groups {
        return Err(Error::Graph6(format!(
            "expected {} data bytes for order {}, found {}",
            expect_groups,
            n,
            bytes.len() - pos
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut group = 0u8;
    let mut avail = 0u8;
    for j in 1..n {
        for i in 0..j {
            if avail == 0 {
                group = bytes[pos] - 63;
                pos += 1;
                avail = 6;
            }
            if (group >> 5) & 1 == 1 {
                g.add_edge(i, j);
            }
            group = (group << 1) & 0x3F;
            avail -= 1;
        }
    }
    // Whatever is left in the final group must be zero padding.
    if avail > 0 && group != 0 {
        return Err(Error::Graph6("nonzero padding bits".into()));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::GraphSpec;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    /// Test-only reference encoder that builds the bit string the naive
    /// way, as an explicit vector of 0/1 bytes, then chunks it. Used to
    /// cross-check the word-at-a-time production encoder.
    fn reference_encode(g: &Graph) -> String {
        let n = g.order();
        let mut head: Vec<u8> = if n <= 62 {
            vec![n as u8 + 63]
        } else {
            vec![
                b'~',
                ((n >> 12) & 63) as u8 + 63,
                ((n >> 6) & 63) as u8 + 63,
                (n & 63) as u8 + 63,
            ]
        };
        let mut bits: Vec<u8> = Vec::new();
        for j in 1..n {
            for i in 0..j {
                bits.push(u8::from(g.has_edge(i, j)));
            }
        }
        while bits.len() % 6 != 0 {
            bits.push(0);
        }
        for chunk in bits.chunks(6) {
            let v = chunk.iter().fold(0u8, |acc, &b| (acc << 1) | b);
            head.push(v + 63);
        }
        String::from_utf8(head).unwrap()
    }

    #[test]
    fn frozen_reference_vectors() {
        // Independently published vector: the 5-vertex graph with edges
        // {02, 04, 13, 34} encodes as "DQc".
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(g6_encode(&g), "DQc");
        // K4 packs a full first group: "C~".
        assert_eq!(g6_encode(&GraphSpec::Kn(4).build().unwrap()), "C~");
        // The 0-vertex graph is the single byte for n = 0.
        assert_eq!(g6_encode(&Graph::empty(0).unwrap()), "?");
        // C5 in cycle order.
        assert_eq!(g6_encode(&GraphSpec::Cn(5).build().unwrap()), "Dhc");
    }

    #[test]
    fn decode_inverts_encode_on_reference_vectors() {
        let g = g6_decode("DQc").unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.edges(), vec![(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(g6_decode("?").unwrap().order(), 0);
        assert_eq!(g6_decode("C~").unwrap().edge_count(), 6);
    }

    #[test]
    fn round_trip_matches_reference_on_random_graphs() {
        let mut rng = StdRng::seed_from_u64(0x5eed_6006);
        for trial in 0..100 {
            let n = rng.gen_range(0..=12);
            let mut g = Graph::empty(n).unwrap();
            for j in 1..n {
                for i in 0..j {
                    if rng.gen_bool(0.5) {
                        g.add_edge(i, j);
                    }
                }
            }
            let enc = g6_encode(&g);
            assert_eq!(enc, reference_encode(&g), "trial {trial}");
            assert_eq!(g6_decode(&enc).unwrap(), g, "trial {trial}");
        }
    }

    #[test]
    fn long_form_orders() {
        for n in [63usize, 64, 100, 157] {
            let mut g = Graph::empty(n).unwrap();
            // A sparse deterministic pattern.
            for v in 1..n {
                g.add_edge(v - 1, v);
                if v * 3 < n {
                    g.add_edge(v, v * 3);
                }
            }
            let enc = g6_encode(&g);
            assert!(enc.starts_with('~'));
            assert_eq!(enc, reference_encode(&g));
            assert_eq!(g6_decode(&enc).unwrap(), g);
        }
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        // Truncated data section.
        assert!(matches!(g6_decode("DQ"), Err(Error::Graph6(_))));
        // Extra data.
        assert!(matches!(g6_decode("DQcc"), Err(Error::Graph6(_))));
        // Byte outside the printable range.
        assert!(matches!(g6_decode("D\x1fc"), Err(Error::Graph6(_))));
        // Nonzero padding: K2 is "A_" (bit 1 then five zero pads); "A`"
        // sets a padding bit.
        assert_eq!(g6_encode(&GraphSpec::Kn(2).build().unwrap()), "A_");
        assert!(matches!(g6_decode("A`"), Err(Error::Graph6(_))));
        // Empty string.
        assert!(matches!(g6_decode(""), Err(Error::Graph6(_))));
        // Order beyond the representation cap.
        let too_big = format!("~{}{}{}", '?', (63 + 5) as u8 as char, '?');
        assert!(matches!(
            g6_decode(&too_big),
            Err(Error::OrderOutOfRange { .. })
        ));
    }

    #[test]
    fn trailing_newline_tolerated() {
        assert_eq!(g6_decode("DQc\n").unwrap().order(), 5);
    }
}
