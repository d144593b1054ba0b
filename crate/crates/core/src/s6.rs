//! The `s6` record format: graph6 encoding of the ambient graph.
//!
//! Header byte `n + 63`, then the upper-triangle sign bits in column-major
//! order, packed six to a byte (most significant first) with value `+63`.

use crate::error::{Error, Result};
use crate::matrix::SeidelMatrix;

/// Largest order accepted by the single-byte graph6 header.
pub const MAX_S6_ORDER: usize = 62;

/// Encodes `s` without a trailing newline.
pub fn encode(s: &SeidelMatrix) -> Result<Vec<u8>> {
    let n = s.order();
    if n == 0 || n > MAX_S6_ORDER {
        return Err(Error::OrderOutOfRange(n, MAX_S6_ORDER));
    }
    let nbits = n * (n - 1) / 2;
    let mut out = Vec::with_capacity(1 + nbits.div_ceil(6));
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut filled = 0;
    for bit in s.sign_bits() {
        acc = acc << 1 | bit as u8;
        filled += 1;
        if filled == 6 {
            out.push(acc + 63);
            acc = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(out)
}

/// Encodes `s` as a `String` (always ASCII).
pub fn encode_string(s: &SeidelMatrix) -> Result<String> {
    Ok(String::from_utf8(encode(s)?).expect("s6 output is ASCII"))
}

/// Decodes one record; a single trailing `\n` (or `\r\n`) is tolerated.
pub fn decode(bytes: &[u8]) -> Result<SeidelMatrix> {
    let bytes = bytes
        .strip_suffix(b"\n")
        .map(|b| b.strip_suffix(b"\r").unwrap_or(b))
        .unwrap_or(bytes);
    let (&head, body) = bytes
        .split_first()
        .ok_or_else(|| Error::MalformedRecord("empty record".into()))?;
    if !(63..=126).contains(&head) {
        return Err(Error::MalformedRecord(format!("bad header byte {head}")));
    }
    let n = (head - 63) as usize;
    if n == 0 || n > MAX_S6_ORDER {
        return Err(Error::OrderOutOfRange(n, MAX_S6_ORDER));
    }
    let nbits = n * (n - 1) / 2;
    let need = nbits.div_ceil(6);
    if body.len() != need {
        return Err(Error::MalformedRecord(format!(
            "order {n} needs {need} data bytes, found {}",
            body.len()
        )));
    }
    let mut bits = Vec::with_capacity(need * 6);
    for &b in body {
        if !(63..=126).contains(&b) {
            return Err(Error::MalformedRecord(format!("non-printable byte {b}")));
        }
        let v = b - 63;
        for k in (0..6).rev() {
            bits.push(v >> k & 1 == 1);
        }
    }
    if bits[nbits..].iter().any(|&b| b) {
        return Err(Error::MalformedRecord("nonzero padding bits".into()));
    }
    let mut k = 0;
    let mut rows = vec![0u64; n];
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Ok(SeidelMatrix::from_rows_unchecked(n, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two_vectors() {
        let pos = SeidelMatrix::all_positive(2).unwrap();
        assert_eq!(encode(&pos).unwrap(), vec![65, 63]);
        assert_eq!(encode_string(&pos).unwrap(), "A?");
        let neg = pos.negated();
        assert_eq!(encode(&neg).unwrap(), vec![65, 95]);
        assert_eq!(encode_string(&neg).unwrap(), "A_");
    }

    #[test]
    fn order_one_has_no_data_bytes() {
        let s = SeidelMatrix::all_positive(1).unwrap();
        assert_eq!(encode(&s).unwrap(), vec![64]);
        assert_eq!(decode(b"@\n").unwrap(), s);
    }

    #[test]
    fn matches_graph6_of_a_known_graph() {
        // graph6 "DQc" is the 5-vertex graph with edges 0-2, 0-4, 1-3, 3-4.
        let s = SeidelMatrix::from_fn(5, |i, j| {
            matches!((i, j), (0, 2) | (0, 4) | (1, 3) | (3, 4))
        })
        .unwrap();
        assert_eq!(encode_string(&s).unwrap(), "DQc");
    }

    #[test]
    fn exhaustive_round_trip_order_five() {
        for mask in 0u32..1 << 10 {
            let s = SeidelMatrix::from_fn(5, |i, j| {
                let k = j * (j - 1) / 2 + i;
                mask >> k & 1 == 1
            })
            .unwrap();
            let bytes = encode(&s).unwrap();
            assert_eq!(decode(&bytes).unwrap(), s);
        }
    }

    #[test]
    fn rejects_malformed_records() {
        assert!(decode(b"").is_err());
        assert!(decode(b"D").is_err()); // truncated
        assert!(decode(b"DQcc").is_err()); // too long
        assert!(decode(b"D\x01\x01").is_err()); // non-printable
        assert!(decode(b"A`").is_err()); // padding bit set
        assert!(encode(&SeidelMatrix::all_positive(63).unwrap()).is_err());
    }
}
